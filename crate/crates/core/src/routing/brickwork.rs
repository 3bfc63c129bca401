//! Routing for the brickwork design.
//!
//! Each iteration pairs the bottom photon `X_b` with its partner `X_i`. The
//! partner moves down as soon as possible along a diagonal of Cross switches.
//! If it stops short of line `n - 2`, the bottom photon climbs to meet it as
//! late as possible. Switches the two paths pass without using are set to
//! Bar, and so are the few leftovers at the input edge that would not belong
//! to a brickwork two lines smaller. What remains is such a brickwork, so the
//! same step repeats on `n - 2` photons.
//!
//! The residual switches are tracked in canonical coordinates: stage `t`
//! (0 at the input) and line `x` of a brickwork of the current size. A
//! canonical switch maps to a global one through its diagonal `x - t` and
//! anti-diagonal `x + t`. Each committed path removes one diagonal and one
//! anti-diagonal; the survivors keep their order, so the maps are re-ranked
//! in O(n) per iteration.

use serde::{Deserialize, Serialize};

use super::{Ops, PairList, RoutingPlan, StateTable};
use crate::error::{Error, Result};
use crate::topology::{build_network, DesignKind, Network, SwitchState};

/// One switch assignment recorded by [`route_brickwork_traced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracedSwitch {
    pub id: usize,
    pub layer: usize,
    pub line: usize,
    pub state: SwitchState,
}

/// What one iteration of the brickwork router did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrickworkStep {
    /// The bottom photon of the working list.
    pub last: usize,
    /// Its partner.
    pub partner: usize,
    /// Output line of the upper photon of the pair.
    pub meeting_line: usize,
    pub bsa: usize,
    /// Switches on the two photons' paths, including ones they pass in Bar.
    pub path: Vec<TracedSwitch>,
    /// Leftover switches forced to Bar.
    pub extras: Vec<TracedSwitch>,
}

pub fn route_brickwork(ports: usize, demand: &PairList) -> Result<RoutingPlan> {
    super::route(DesignKind::Brickwork, ports, demand)
}

/// Routes and also returns a record of every iteration.
pub fn route_brickwork_traced(ports: usize, demand: &PairList) -> Result<(RoutingPlan, Vec<BrickworkStep>)> {
    if demand.ports() != ports {
        return Err(Error::InvalidDemand(format!(
            "demand covers {} ports, network has {ports}",
            demand.ports()
        )));
    }
    let net = build_network(DesignKind::Brickwork, ports)?;
    let mut steps = Vec::new();
    let plan = route(&net, demand, &mut Ops::default(), Some(&mut steps));
    Ok((plan, steps))
}

/// Index ranges of the diagonals and anti-diagonals of a brickwork of `n`
/// lines: (dmin, dmax, amin, amax).
fn diagonal_ranges(n: i64) -> (i64, i64, i64, i64) {
    let m = n / 2;
    let dmax = if m % 2 == 1 { n - 3 } else { n - 4 };
    (2 - m, dmax, m % 2, n + m - 4)
}

/// Dense map from a canonical index range to global indices.
struct RankMap {
    lo: i64,
    vals: Vec<Option<i64>>,
}

impl RankMap {
    fn identity(lo: i64, hi: i64) -> Self {
        RankMap { lo, vals: (lo..=hi).map(Some).collect() }
    }

    fn get(&self, k: i64) -> i64 {
        self.vals[(k - self.lo) as usize].expect("canonical index mapped")
    }

    /// Drops `removed` and re-ranks the survivors: `shift_lo` below it,
    /// `shift_hi` above it. Anything outside `lo..=hi` is discarded.
    fn rerank(&self, removed: Option<i64>, shift_lo: i64, shift_hi: i64, lo: i64, hi: i64, ops: &mut Ops) -> Self {
        let mut vals = vec![None; (hi - lo + 1).max(0) as usize];
        for (k, &v) in (self.lo..).zip(&self.vals) {
            if Some(k) == removed {
                continue;
            }
            let below = removed.map_or(true, |r| k < r);
            let k2 = if below { k + shift_lo } else { k + shift_hi };
            if (lo..=hi).contains(&k2) {
                vals[(k2 - lo) as usize] = v;
            }
        }
        ops.add(self.vals.len());
        RankMap { lo, vals }
    }
}

/// Canonical brickwork of `n` lines.
#[derive(Clone, Copy)]
struct Shape {
    n: i64,
    stages: i64,
    first_limit: i64,
}

impl Shape {
    fn new(n: i64) -> Self {
        let stages = n / 2;
        Shape { n, stages, first_limit: stages % 2 + 2 * (n / 4 - 1) }
    }

    fn exists(&self, t: i64, x: i64) -> bool {
        (0..self.stages).contains(&t)
            && (0..=self.n - 2).contains(&x)
            && (x + t) % 2 == self.stages % 2
            && (t > 0 || x <= self.first_limit)
    }
}

/// Up to two cells committed per stage in one iteration.
struct Marks(Vec<[i64; 2]>);

impl Marks {
    fn new(stages: i64) -> Self {
        Marks(vec![[-1, -1]; stages as usize])
    }

    fn mark(&mut self, t: i64, x: i64) {
        let slot = &mut self.0[t as usize];
        if slot[0] < 0 {
            slot[0] = x;
        } else {
            assert!(slot[1] < 0, "stage {t} committed three times");
            slot[1] = x;
        }
    }

    fn has(&self, t: i64, x: i64) -> bool {
        self.0[t as usize].contains(&x)
    }
}

struct Grid<'a> {
    net: &'a Network,
    /// Global (stage, line) -> switch id.
    ids: Vec<Vec<usize>>,
}

impl<'a> Grid<'a> {
    fn new(net: &'a Network) -> Self {
        let stages = (net.ports / 2) as i64;
        let mut ids = vec![vec![usize::MAX; net.ports.max(1)]; stages as usize];
        for s in &net.switches {
            ids[(stages - s.layer as i64) as usize][s.line] = s.id;
        }
        Grid { net, ids }
    }

    fn id(&self, t: i64, x: i64) -> usize {
        let id = self.ids[t as usize][x as usize];
        assert!(id != usize::MAX, "no switch at stage {t}, line {x}");
        id
    }

    fn traced(&self, id: usize, state: SwitchState) -> TracedSwitch {
        let s = &self.net.switches[id];
        TracedSwitch { id, layer: s.layer, line: s.line, state }
    }
}

pub(super) fn route(
    net: &Network,
    demand: &PairList,
    ops: &mut Ops,
    mut trace: Option<&mut Vec<BrickworkStep>>,
) -> RoutingPlan {
    let ports = net.ports;
    let grid = Grid::new(net);
    let mut table = StateTable::new(net.len());

    let (dmin, dmax, amin, amax) = diagonal_ranges(ports as i64);
    let mut dmap = RankMap::identity(dmin, dmax);
    let mut amap = RankMap::identity(amin, amax);

    let mut photons: Vec<usize> = (0..ports).collect();
    let mut free: Vec<usize> = (0..ports).collect();
    let mut out = vec![usize::MAX; ports];
    let mut n = ports as i64;

    while n > 2 {
        let shape = Shape::new(n);
        let stages = shape.stages;
        let mut marks = Marks::new(stages);
        let mut path = Vec::new();
        let mut extras = Vec::new();
        let mut commit = |t: i64, x: i64, state: SwitchState, into: &mut Vec<TracedSwitch>| {
            let a = amap.get(x + t);
            let d = dmap.get(x - t);
            debug_assert!((a - d) % 2 == 0);
            let id = grid.id((a - d) / 2, (a + d) / 2);
            table.set(id, state);
            into.push(grid.traced(id, state));
        };

        let last = photons[n as usize - 1];
        let i = photons.iter().position(|&p| p == demand.partner(last)).expect("partner present") as i64;
        ops.add(n as usize);

        // partner: down as soon as possible
        let mut y = i;
        let mut starts = Vec::with_capacity(stages as usize);
        let mut first_move = None;
        for t in 0..stages {
            starts.push(y);
            if y < n - 2 && shape.exists(t, y) {
                commit(t, y, SwitchState::Cross, &mut path);
                marks.mark(t, y);
                first_move.get_or_insert(t);
                y += 1;
            } else if shape.exists(t, y) {
                commit(t, y, SwitchState::Bar, &mut path);
                marks.mark(t, y);
            } else if y >= 1 && shape.exists(t, y - 1) {
                commit(t, y - 1, SwitchState::Bar, &mut path);
                marks.mark(t, y - 1);
            }
        }
        let j = y;

        // bottom photon: up as late as possible, finishing on j + 1
        let climb = n - 2 - j;
        let climb_from = stages - climb;
        let mut yb = n - 1;
        for t in 0..stages {
            if climb > 0 && t >= climb_from {
                debug_assert!(shape.exists(t, yb - 1));
                commit(t, yb - 1, SwitchState::Cross, &mut path);
                marks.mark(t, yb - 1);
                yb -= 1;
            } else if shape.exists(t, yb - 1) && !marks.has(t, yb - 1) {
                commit(t, yb - 1, SwitchState::Bar, &mut path);
                marks.mark(t, yb - 1);
            }
        }
        debug_assert_eq!(yb, j + 1);
        ops.add(2 * stages as usize);

        // leftovers above the partner's path in the first two stages that
        // the next, smaller brickwork does not contain
        let next = Shape::new(n - 2);
        for t in 0..stages.min(2) {
            for x in 0..=n - 2 {
                if shape.exists(t, x)
                    && !marks.has(t, x)
                    && x <= starts[t as usize] - 2
                    && (t == 0 || x > next.first_limit)
                {
                    commit(t, x, SwitchState::Bar, &mut extras);
                }
            }
        }
        ops.add(2 * n as usize);
        assert_eq!(path.len() + extras.len(), n as usize - 2, "iteration must fix n - 2 switches");

        let j = j as usize;
        out[free[j]] = photons[i as usize];
        out[free[j + 1]] = last;
        if let Some(steps) = trace.as_deref_mut() {
            steps.push(BrickworkStep {
                last,
                partner: photons[i as usize],
                meeting_line: free[j],
                bsa: free[j] / 2,
                path,
                extras,
            });
        }
        free.drain(j..j + 2);
        ops.add(n as usize);

        let (nd_lo, nd_hi, na_lo, na_hi) = diagonal_ranges(n - 2);
        let gone_diag = first_move.map(|t0| i - t0);
        let gone_anti = if climb > 0 { Some(n - 2 + climb_from) } else { None };
        dmap = dmap.rerank(gone_diag, 1, -1, nd_lo, nd_hi, ops);
        amap = amap.rerank(gone_anti, -1, -3, na_lo, na_hi, ops);

        photons.remove(n as usize - 1);
        photons.remove(i as usize);
        ops.add(n as usize);
        n -= 2;
    }
    if n == 2 {
        out[free[0]] = photons[0];
        out[free[1]] = photons[1];
    }
    RoutingPlan::new(table.finish(), out)
}
