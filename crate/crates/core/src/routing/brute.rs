//! Exhaustive reference router.

use rayon::prelude::*;

use super::{PairList, RoutingPlan};
use crate::error::{Error, Result};
use crate::topology::{Network, SwitchState, SwitchStates};

/// Largest network (in switches) searched unless the caller says otherwise.
pub const DEFAULT_BRUTE_FORCE_BUDGET: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForce {
    Routed(RoutingPlan),
    NotRoutable,
}

impl BruteForce {
    pub fn is_routable(&self) -> bool {
        matches!(self, BruteForce::Routed(_))
    }
}

/// Tries every state assignment of `net` and returns the first one that
/// pairs `demand`.
///
/// Assignments are visited as a binary counter whose most significant bit is
/// switch 0 (Bar = 0), so the answer is the lexicographically first state
/// vector. The search is split across threads but the result does not depend
/// on scheduling.
pub fn brute_force_route(net: &Network, demand: &PairList, max_switches: usize) -> Result<BruteForce> {
    if demand.ports() != net.ports {
        return Err(Error::InvalidDemand(format!(
            "demand covers {} ports, network has {}",
            demand.ports(),
            net.ports
        )));
    }
    let s = net.len();
    if s > max_switches.min(63) {
        return Err(Error::BoundExceeded(format!(
            "2^{s} assignments exceed the budget of 2^{}",
            max_switches.min(63)
        )));
    }
    if let Some(bad) = net.switches.iter().find(|sw| sw.line + 1 >= net.ports) {
        return Err(Error::InvalidInput(format!("switch {} couples a line outside the network", bad.id)));
    }
    let lines: Vec<usize> = net.switches.iter().map(|sw| sw.line).collect();
    let partner = demand.partners();

    let pairs_up = |counter: u64| -> bool {
        let mut occ: Vec<usize> = (0..net.ports).collect();
        for (k, &line) in lines.iter().enumerate() {
            if counter >> (s - 1 - k) & 1 == 1 {
                occ.swap(line, line + 1);
            }
        }
        occ.chunks(2).all(|p| partner[p[0]] == p[1])
    };

    let found = (0..1u64 << s).into_par_iter().find_first(|&c| pairs_up(c));
    Ok(match found {
        None => BruteForce::NotRoutable,
        Some(counter) => {
            let states: Vec<SwitchState> = (0..s)
                .map(|k| if counter >> (s - 1 - k) & 1 == 1 { SwitchState::Cross } else { SwitchState::Bar })
                .collect();
            let states = SwitchStates(states);
            let perm = crate::simulation::propagate(net, &states)?;
            BruteForce::Routed(RoutingPlan::new(states, perm.0))
        }
    })
}
