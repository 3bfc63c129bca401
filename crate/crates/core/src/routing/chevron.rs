//! Recursive routing for the chevron design.
//!
//! The outermost layer only touches the top and bottom photons. If they are
//! partners the whole layer is Cross and they meet in the middle. Otherwise
//! their partners are treated as a virtual pair, the inner network is routed
//! first, and one or two Bar switches in the outer layer steer the top and
//! bottom photons onto the lines next to the virtual pair.

use super::{IdTable, Ops, PairList, RoutingPlan, StateTable};
use crate::error::Result;
use crate::topology::{DesignKind, Network, SwitchState};

pub fn route_chevron(ports: usize, demand: &PairList) -> Result<RoutingPlan> {
    super::route(DesignKind::Chevron, ports, demand)
}

pub(super) fn route(net: &Network, demand: &PairList, ops: &mut Ops) -> RoutingPlan {
    let mut router = Router {
        ids: IdTable::new(net),
        table: StateTable::new(net.len()),
        partner: demand.partners().to_vec(),
        ops,
    };
    let photons: Vec<usize> = (0..net.ports).collect();
    let out = router.solve(&photons, 0);
    RoutingPlan::new(router.table.finish(), out)
}

/// Lines of layer `l` in a chevron of `n` lines, relative to its top line.
fn local_lines(l: usize, n: usize) -> Vec<usize> {
    let half = n / 2;
    let mut lines: Vec<usize> = (0..half - 1).collect();
    if l % 2 == 0 {
        lines.extend((half..n - 1).rev());
    } else {
        lines.extend((half + 1..n - 1).rev());
        lines.push(half - 1);
    }
    lines
}

struct Router<'a> {
    ids: IdTable,
    table: StateTable,
    partner: Vec<usize>,
    ops: &'a mut Ops,
}

impl Router<'_> {
    /// Routes `photons`, which sit on lines `left..left + photons.len()`,
    /// and returns their output order.
    fn solve(&mut self, photons: &[usize], left: usize) -> Vec<usize> {
        let n = photons.len();
        if n <= 2 {
            return photons.to_vec();
        }
        let l = n / 2 - 1;
        let half = n / 2;
        let (top, bot) = (photons[0], photons[n - 1]);
        let inner = &photons[1..n - 1];
        self.ops.add(n);

        let mut bar_line = None;
        let mut tip_bar = false;
        let out = if self.partner[top] == bot {
            self.solve(inner, left + 1)
        } else {
            let (tp, bp) = (self.partner[top], self.partner[bot]);
            self.partner[tp] = bp;
            self.partner[bp] = tp;
            let out = self.solve(inner, left + 1);
            self.partner[tp] = top;
            self.partner[bp] = bot;

            let p = out.iter().position(|&x| x == tp).expect("virtual partner routed");
            let q = out.iter().position(|&x| x == bp).expect("virtual partner routed");
            self.ops.add(out.len());
            debug_assert!(p.abs_diff(q) == 1 && p.min(q) % 2 == 0);
            let m = p.min(q);
            let top_first = p < q;
            if m + 1 < l {
                // pair sits in the upper half
                bar_line = Some(if top_first { m + 1 } else { m });
            } else if l % 2 == 1 && m + 1 == l {
                // pair straddles the middle; the tip decides the orientation
                bar_line = Some(half - 2);
                tip_bar = top_first;
            } else {
                bar_line = Some(if top_first { m + 1 } else { m + 2 });
            }
            out
        };

        let mut cur = Vec::with_capacity(n);
        cur.push(top);
        cur.extend_from_slice(&out);
        cur.push(bot);
        let lines = local_lines(l, n);
        let tip = if l % 2 == 1 { Some(lines.len() - 1) } else { None };
        for (k, &x) in lines.iter().enumerate() {
            let bar = if Some(k) == tip { tip_bar } else { bar_line == Some(x) };
            let state = if bar { SwitchState::Bar } else { SwitchState::Cross };
            self.table.set(self.ids.get(l, left + x), state);
            if !bar {
                cur.swap(x, x + 1);
            }
        }
        self.ops.add(lines.len());
        cur
    }
}
