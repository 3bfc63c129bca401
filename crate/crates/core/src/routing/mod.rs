//! Routers for the three designs plus a brute-force reference.
//!
//! Every router returns the state of each switch and the photon order it
//! expects at the outputs. Photons `permuted[2j]` and `permuted[2j + 1]` meet
//! at BSA `j`.

mod brickwork;
mod brute;
mod chevron;
mod pairs;
mod triangular;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{build_network, check_ports, DesignKind, Network, SwitchState, SwitchStates};

pub use brickwork::{route_brickwork, route_brickwork_traced, BrickworkStep, TracedSwitch};
pub use brute::{brute_force_route, BruteForce, DEFAULT_BRUTE_FORCE_BUDGET};
pub use chevron::route_chevron;
pub use pairs::PairList;
pub use triangular::route_triangular;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingPlan {
    pub states: SwitchStates,
    pub permuted: Vec<usize>,
    #[serde(rename = "bsa")]
    pub bsa_assignment: BTreeMap<usize, (usize, usize)>,
}

impl RoutingPlan {
    pub fn new(states: SwitchStates, permuted: Vec<usize>) -> Self {
        let bsa_assignment = permuted.chunks(2).enumerate().map(|(j, p)| (j, (p[0], p[1]))).collect();
        RoutingPlan { states, permuted, bsa_assignment }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("routing plan json: {e}")))
    }
}

/// Elementary-operation counter used to check the quadratic running time.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Ops(pub u64);

impl Ops {
    #[inline]
    pub fn add(&mut self, n: usize) {
        self.0 += n as u64;
    }
}

/// States under construction. Each switch may be written once.
pub(crate) struct StateTable {
    states: Vec<Option<SwitchState>>,
}

impl StateTable {
    pub fn new(len: usize) -> Self {
        StateTable { states: vec![None; len] }
    }

    pub fn set(&mut self, id: usize, state: SwitchState) {
        assert!(self.states[id].is_none(), "switch {id} assigned twice");
        self.states[id] = Some(state);
    }

    pub fn finish(self) -> SwitchStates {
        SwitchStates(
            self.states
                .into_iter()
                .enumerate()
                .map(|(id, s)| s.unwrap_or_else(|| panic!("switch {id} left unassigned")))
                .collect(),
        )
    }
}

fn check_demand(ports: usize, demand: &PairList) -> Result<()> {
    check_ports(ports)?;
    if demand.ports() != ports {
        return Err(Error::InvalidDemand(format!(
            "demand covers {} ports, network has {ports}",
            demand.ports()
        )));
    }
    Ok(())
}

pub(crate) fn route_counted(design: DesignKind, ports: usize, demand: &PairList, ops: &mut Ops) -> Result<RoutingPlan> {
    check_demand(ports, demand)?;
    let net = build_network(design, ports)?;
    Ok(match design {
        DesignKind::Triangular => triangular::route(&net, demand, ops),
        DesignKind::Chevron => chevron::route(&net, demand, ops),
        DesignKind::Brickwork => brickwork::route(&net, demand, ops, None),
    })
}

/// Routes `demand` through `build_network(design, ports)`.
pub fn route(design: DesignKind, ports: usize, demand: &PairList) -> Result<RoutingPlan> {
    route_counted(design, ports, demand, &mut Ops::default())
}

/// Like [`route`], also returning the number of elementary operations spent.
pub fn route_instrumented(design: DesignKind, ports: usize, demand: &PairList) -> Result<(RoutingPlan, u64)> {
    let mut ops = Ops::default();
    let plan = route_counted(design, ports, demand, &mut ops)?;
    Ok((plan, ops.0))
}

/// Switch id lookup, indexed `[layer][line]`.
pub(crate) struct IdTable {
    ids: Vec<Vec<usize>>,
}

impl IdTable {
    pub fn new(net: &Network) -> Self {
        let layers = net.switches.iter().map(|s| s.layer + 1).max().unwrap_or(0);
        let mut ids = vec![vec![usize::MAX; net.ports]; layers];
        for s in &net.switches {
            ids[s.layer][s.line] = s.id;
        }
        IdTable { ids }
    }

    pub fn get(&self, layer: usize, line: usize) -> usize {
        let id = self.ids[layer][line];
        assert!(id != usize::MAX, "no switch at layer {layer}, line {line}");
        id
    }
}
