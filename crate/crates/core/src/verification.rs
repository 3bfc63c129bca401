//! Exhaustive and sampled checks of the routing claims, plus single-switch
//! minimality.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::routing::{self, brute_force_route, PairList};
use crate::simulation::{check_pairing, propagate, traversal_depths};
use crate::topology::{build_network, check_ports, DesignKind, Network};

/// Largest port count verified exhaustively unless raised explicitly.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 12;

/// Largest damaged network (in switches) searched by [`verify_minimality`].
/// Admits N <= 8.
pub const DEFAULT_MINIMALITY_BUDGET: usize = 16;

/// Every perfect matching of `0..N`, in lexicographic order of pair lists.
///
/// The smallest unpaired photon is matched with each remaining photon in
/// ascending order, recursively.
#[derive(Debug, Clone)]
pub struct PairLists {
    ports: usize,
    choice: Vec<usize>,
    remaining: u128,
}

impl Iterator for PairLists {
    type Item = PairList;

    fn next(&mut self) -> Option<PairList> {
        if self.remaining == 0 {
            return None;
        }
        let mut rest: Vec<usize> = (0..self.ports).collect();
        let mut pairs = Vec::with_capacity(self.ports / 2);
        for &c in &self.choice {
            let a = rest.remove(0);
            let b = rest.remove(c);
            pairs.push((a, b));
        }
        // mixed-radix increment, last level fastest
        for level in (0..self.choice.len()).rev() {
            let radix = self.ports - 2 * level - 1;
            if self.choice[level] + 1 < radix {
                self.choice[level] += 1;
                self.choice[level + 1..].fill(0);
                break;
            }
        }
        self.remaining -= 1;
        Some(PairList::new(self.ports, &pairs).expect("enumerated lists are perfect matchings"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

/// (n)!! = n (n-2) (n-4) ... down to 1 or 2.
pub fn double_factorial(n: usize) -> u128 {
    (1..=n).rev().step_by(2).map(|k| k as u128).product()
}

pub fn enumerate_pair_lists(ports: usize) -> Result<PairLists> {
    check_ports(ports)?;
    Ok(PairLists { ports, choice: vec![0; ports / 2], remaining: double_factorial(ports - 1) })
}

pub fn worst_case_pair_list(ports: usize) -> Result<PairList> {
    check_ports(ports)?;
    PairList::worst_case(ports)
}

/// Minimum number of adjacent transpositions needed for the worst case:
/// the sum of (N - 2k) for k = 1..N/2-1.
pub fn lower_bound(ports: usize) -> Result<usize> {
    check_ports(ports)?;
    Ok((1..ports / 2).map(|k| ports - 2 * k).sum())
}

/// Uniform perfect matching: shuffle `0..N` and pair neighbours.
pub fn random_pair_list(ports: usize, rng: &mut impl rand::Rng) -> Result<PairList> {
    check_ports(ports)?;
    let mut order: Vec<usize> = (0..ports).collect();
    order.shuffle(rng);
    let pairs: Vec<(usize, usize)> = order.chunks(2).map(|p| (p[0], p[1])).collect();
    PairList::new(ports, &pairs)
}

/// `samples` matchings drawn from a ChaCha8 stream seeded with `seed`.
pub fn sample_pair_lists(ports: usize, samples: usize, seed: u64) -> Result<Vec<PairList>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| random_pair_list(ports, &mut rng)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub demand: String,
    pub diagnostic: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub design: DesignKind,
    pub ports: usize,
    pub mode: Mode,
    pub demands_checked: u64,
    pub passed: bool,
    /// Sorted by the demand's text form.
    pub failures: Vec<Failure>,
    /// Extremes of per-photon depth over every checked routing.
    pub empirical_max_depth: Option<usize>,
    pub empirical_min_depth: Option<usize>,
    pub max_cross_count: usize,
    /// Demands whose routing set every switch to Cross.
    pub all_cross_demands: Vec<String>,
}

struct Outcome {
    failure: Option<String>,
    cross: usize,
    depth: Option<(usize, usize)>,
}

fn check_demand(design: DesignKind, net: &Network, demand: &PairList) -> Outcome {
    let fail = |msg: String| Outcome { failure: Some(msg), cross: 0, depth: None };
    let plan = match routing::route(design, net.ports, demand) {
        Ok(plan) => plan,
        Err(e) => return fail(format!("router error: {e}")),
    };
    let perm = match propagate(net, &plan.states) {
        Ok(p) => p,
        Err(e) => return fail(format!("simulation error: {e}")),
    };
    if perm.0 != plan.permuted {
        return fail(format!("router predicted {:?}, simulation gave {:?}", plan.permuted, perm.0));
    }
    match check_pairing(&perm, demand) {
        Ok(r) if r.ok => {}
        Ok(r) => return fail(format!("BSAs {:?} received pairs not in the demand", r.mismatches)),
        Err(e) => return fail(format!("pairing check error: {e}")),
    }
    let depth = traversal_depths(net, &plan.states).ok().map(|d| (d.min(), d.max()));
    Outcome { failure: None, cross: plan.states.cross_count(), depth }
}

pub fn verify_design(design: DesignKind, ports: usize, mode: &Mode) -> Result<VerificationReport> {
    verify_design_capped(design, ports, mode, DEFAULT_EXHAUSTIVE_CAP)
}

/// Routes, simulates and pair-checks every demand selected by `mode`.
pub fn verify_design_capped(
    design: DesignKind,
    ports: usize,
    mode: &Mode,
    exhaustive_cap: usize,
) -> Result<VerificationReport> {
    let net = build_network(design, ports)?;
    let demands: Vec<PairList> = match *mode {
        Mode::Exhaustive => {
            if ports > exhaustive_cap {
                return Err(Error::BoundExceeded(format!(
                    "exhaustive verification capped at {exhaustive_cap} ports, asked for {ports}"
                )));
            }
            enumerate_pair_lists(ports)?.collect()
        }
        Mode::Random { samples, seed } => sample_pair_lists(ports, samples, seed)?,
    };

    let outcomes: Vec<Outcome> = demands.par_iter().map(|d| check_demand(design, &net, d)).collect();

    let mut failures = Vec::new();
    let mut all_cross_demands = Vec::new();
    let mut depth: Option<(usize, usize)> = None;
    let mut max_cross_count = 0;
    for (demand, o) in demands.iter().zip(&outcomes) {
        if let Some(msg) = &o.failure {
            failures.push(Failure { demand: demand.to_string(), diagnostic: msg.clone() });
            continue;
        }
        max_cross_count = max_cross_count.max(o.cross);
        if o.cross == net.len() && !net.is_empty() {
            all_cross_demands.push(demand.to_string());
        }
        if let Some((lo, hi)) = o.depth {
            depth = Some(match depth {
                None => (lo, hi),
                Some((a, b)) => (a.min(lo), b.max(hi)),
            });
        }
    }
    failures.sort_by(|a, b| a.demand.cmp(&b.demand));
    all_cross_demands.sort();
    all_cross_demands.dedup();

    Ok(VerificationReport {
        design,
        ports,
        mode: *mode,
        demands_checked: demands.len() as u64,
        passed: failures.is_empty(),
        failures,
        empirical_max_depth: depth.map(|d| d.1),
        empirical_min_depth: depth.map(|d| d.0),
        max_cross_count,
        all_cross_demands,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Routability {
    Routable,
    Unroutable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionOutcome {
    pub switch_id: usize,
    pub layer: usize,
    pub line: usize,
    pub outcome: Routability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub design: DesignKind,
    pub ports: usize,
    pub passed: bool,
    pub deletions: Vec<DeletionOutcome>,
}

pub fn verify_minimality(design: DesignKind, ports: usize) -> Result<MinimalityReport> {
    verify_minimality_with_budget(design, ports, DEFAULT_MINIMALITY_BUDGET)
}

/// Deletes each switch in turn and brute-forces the worst-case demand on
/// what is left.
pub fn verify_minimality_with_budget(design: DesignKind, ports: usize, budget: usize) -> Result<MinimalityReport> {
    let net = build_network(design, ports)?;
    let demand = worst_case_pair_list(ports)?;
    if net.len().saturating_sub(1) > budget {
        return Err(Error::BoundExceeded(format!(
            "{design} with {ports} ports leaves {} switches per deletion, budget is {budget}",
            net.len() - 1
        )));
    }
    let mut deletions = Vec::with_capacity(net.len());
    for s in &net.switches {
        let damaged = net.without_switch(s.id);
        let outcome = if brute_force_route(&damaged, &demand, budget)?.is_routable() {
            Routability::Routable
        } else {
            Routability::Unroutable
        };
        deletions.push(DeletionOutcome { switch_id: s.id, layer: s.layer, line: s.line, outcome });
    }
    let passed = deletions.iter().all(|d| d.outcome == Routability::Unroutable);
    Ok(MinimalityReport { design, ports, passed, deletions })
}
