//! Bubble-sort style routing for the triangular design.
//!
//! Each layer carries the partner of the bottom photon down to the line just
//! above it: Bar until the partner is reached, Cross from there on.

use super::{IdTable, Ops, PairList, RoutingPlan, StateTable};
use crate::error::Result;
use crate::topology::{DesignKind, Network, SwitchState};

pub fn route_triangular(ports: usize, demand: &PairList) -> Result<RoutingPlan> {
    super::route(DesignKind::Triangular, ports, demand)
}

pub(super) fn route(net: &Network, demand: &PairList, ops: &mut Ops) -> RoutingPlan {
    let ids = IdTable::new(net);
    let mut table = StateTable::new(net.len());
    let mut photons: Vec<usize> = (0..net.ports).collect();
    let mut size = net.ports;
    while size > 2 {
        let layer = size / 2 - 1;
        let want = demand.partner(photons[size - 1]);
        let i = photons[..size].iter().position(|&x| x == want).expect("partner present");
        ops.add(i + 1);
        for j in 0..size - 2 {
            let state = if j < i { SwitchState::Bar } else { SwitchState::Cross };
            table.set(ids.get(layer, j), state);
        }
        ops.add(size - 2);
        let x = photons.remove(i);
        photons.insert(size - 2, x);
        ops.add(size);
        size -= 2;
    }
    RoutingPlan::new(table.finish(), photons)
}
