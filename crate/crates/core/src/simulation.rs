//! Photon propagation through a configured network.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::routing::PairList;
use crate::topology::{Network, SwitchState, SwitchStates};

/// Output line -> photon (input line) occupancy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &p in &self.0 {
            if p >= seen.len() || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        true
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (line, &photon) in self.0.iter().enumerate() {
            inv[photon] = line;
        }
        Permutation(inv)
    }
}

/// Photon -> number of switch points traversed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthVector(pub Vec<usize>);

impl DepthVector {
    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn min(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    pub ok: bool,
    /// (BSA index, photons arriving on it) for every demanded pair that met.
    pub matched: Vec<(usize, (usize, usize))>,
    /// BSAs that received a pair not in the demand.
    pub mismatches: Vec<usize>,
}

fn check_states(net: &Network, states: &SwitchStates) -> Result<()> {
    if states.len() != net.len() {
        return Err(Error::IncompleteStates(format!(
            "{} states for a network of {} switches",
            states.len(),
            net.len()
        )));
    }
    Ok(())
}

/// Walks the switches in id order, calling `visit` with the line occupancy
/// before each switch acts.
fn walk(net: &Network, states: &SwitchStates, mut visit: impl FnMut(&[usize], usize)) -> Result<Vec<usize>> {
    check_states(net, states)?;
    let mut lines: Vec<usize> = (0..net.ports).collect();
    for s in &net.switches {
        if s.line + 1 >= net.ports {
            return Err(Error::InvalidInput(format!("switch {} couples a line outside the network", s.id)));
        }
        visit(&lines, s.line);
        if states.get(s.id) == SwitchState::Cross {
            lines.swap(s.line, s.line + 1);
        }
    }
    Ok(lines)
}

pub fn propagate(net: &Network, states: &SwitchStates) -> Result<Permutation> {
    let perm = Permutation(walk(net, states, |_, _| {})?);
    debug_assert!(perm.is_bijection());
    Ok(perm)
}

/// Switch points each photon passes through. Bar and Cross both count.
pub fn traversal_depths(net: &Network, states: &SwitchStates) -> Result<DepthVector> {
    let mut depth = vec![0; net.ports];
    walk(net, states, |lines, line| {
        depth[lines[line]] += 1;
        depth[lines[line + 1]] += 1;
    })?;
    Ok(DepthVector(depth))
}

pub fn check_pairing(perm: &Permutation, demand: &PairList) -> Result<PairingReport> {
    if perm.len() != demand.ports() {
        return Err(Error::InvalidInput(format!(
            "permutation over {} lines, demand over {} ports",
            perm.len(),
            demand.ports()
        )));
    }
    let mut matched = Vec::new();
    let mut mismatches = Vec::new();
    for (j, pair) in perm.as_slice().chunks(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if a < demand.ports() && demand.partner(a) == b {
            matched.push((j, (a, b)));
        } else {
            mismatches.push(j);
        }
    }
    Ok(PairingReport { ok: mismatches.is_empty(), matched, mismatches })
}

/// Linear loss model: `insertion_db + depth * per_switch_db` for each photon.
pub fn estimate_loss(depths: &DepthVector, per_switch_db: f64, insertion_db: f64) -> Result<Vec<f64>> {
    if !(per_switch_db >= 0.0) || !(insertion_db >= 0.0) {
        return Err(Error::InvalidInput("loss parameters must be non-negative".into()));
    }
    Ok(depths.0.iter().map(|&d| insertion_db + d as f64 * per_switch_db).collect())
}
