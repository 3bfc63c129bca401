//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use paired_egress::{Network, SwitchState, SwitchStates};

/// Line occupancy after applying the switches in list order.
pub fn simulate(net: &Network, states: &SwitchStates) -> Vec<usize> {
    let mut occ: Vec<usize> = (0..net.ports).collect();
    let mut order: Vec<_> = net.switches.iter().collect();
    order.sort_by_key(|s| s.id);
    for s in order {
        if states.0[s.id] == SwitchState::Cross {
            occ.swap(s.line, s.line + 1);
        }
    }
    occ
}

/// Per-photon count of switches entered.
pub fn depths(net: &Network, states: &SwitchStates) -> Vec<usize> {
    let mut occ: Vec<usize> = (0..net.ports).collect();
    let mut depth = vec![0; net.ports];
    for s in &net.switches {
        depth[occ[s.line]] += 1;
        depth[occ[s.line + 1]] += 1;
        if states.0[s.id] == SwitchState::Cross {
            occ.swap(s.line, s.line + 1);
        }
    }
    depth
}

/// All perfect matchings of 0..n as partner tables.
pub fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &[usize], partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(partner.clone());
            return;
        }
        let a = rest[0];
        for k in 1..rest.len() {
            let b = rest[k];
            partner[a] = b;
            partner[b] = a;
            let remaining: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != b).collect();
            rec(&remaining, partner, out);
        }
    }
    let mut out = Vec::new();
    let all: Vec<usize> = (0..n).collect();
    rec(&all, &mut vec![usize::MAX; n], &mut out);
    out
}

pub fn pairs_ok(occ: &[usize], partner: &[usize]) -> bool {
    occ.chunks(2).all(|p| partner[p[0]] == p[1])
}

pub fn double_factorial(n: u64) -> u64 {
    if n <= 1 {
        1
    } else {
        n * double_factorial(n - 2)
    }
}

type Matching = BTreeSet<(usize, usize)>;

/// Every input matching some state assignment can deliver onto the output
/// pairs (2j, 2j+1). Built backwards from the outputs, one switch at a time.
pub fn reachable_matchings(net: &Network) -> HashSet<Matching> {
    let start: Matching = (0..net.ports / 2).map(|j| (2 * j, 2 * j + 1)).collect();
    let mut cur: HashSet<Matching> = HashSet::from([start]);
    let mut order: Vec<_> = net.switches.iter().collect();
    order.sort_by_key(|s| std::cmp::Reverse(s.id));
    for s in order {
        let x = s.line;
        let relabel = |v: usize| if v == x { x + 1 } else if v == x + 1 { x } else { v };
        let mut next = HashSet::with_capacity(cur.len() * 2);
        for m in &cur {
            let swapped: Matching = m
                .iter()
                .map(|&(a, b)| {
                    let (a, b) = (relabel(a), relabel(b));
                    (a.min(b), a.max(b))
                })
                .collect();
            next.insert(m.clone());
            next.insert(swapped);
        }
        cur = next;
    }
    cur
}

pub fn matching_of(partner: &[usize]) -> Matching {
    partner.iter().enumerate().filter(|&(a, &b)| a < b).map(|(a, &b)| (a, b)).collect()
}

/// Switch count as the sum of the per-layer transposition counts.
pub fn transposition_sum(n: usize) -> usize {
    (1..n / 2).map(|k| n - 2 * k).sum()
}
