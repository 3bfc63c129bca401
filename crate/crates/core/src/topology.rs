//! Construction and validation of the three planar switch-network designs.
//!
//! A network is an ordered list of 2x2 switch points over `N` lines. The
//! position of a switch in that list is its id, and ids give the single-pass
//! traversal order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignKind {
    Triangular,
    Chevron,
    Brickwork,
}

impl DesignKind {
    pub const ALL: [DesignKind; 3] = [DesignKind::Triangular, DesignKind::Chevron, DesignKind::Brickwork];

    pub fn name(self) -> &'static str {
        match self {
            DesignKind::Triangular => "triangular",
            DesignKind::Chevron => "chevron",
            DesignKind::Brickwork => "brickwork",
        }
    }
}

impl fmt::Display for DesignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DesignKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "triangular" => Ok(DesignKind::Triangular),
            "chevron" => Ok(DesignKind::Chevron),
            "brickwork" => Ok(DesignKind::Brickwork),
            other => Err(Error::InvalidInput(format!("unknown design `{other}`"))),
        }
    }
}

/// One 2x2 element coupling `line` and `line + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwitchPoint {
    pub id: usize,
    /// 1-based layer index.
    pub layer: usize,
    pub line: usize,
    /// Rendering column.
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Network {
    pub design: DesignKind,
    pub ports: usize,
    pub reversed: bool,
    /// Switches in traversal order.
    pub switches: Vec<SwitchPoint>,
}

impl Network {
    pub fn len(&self) -> usize {
        self.switches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.switches.is_empty()
    }

    /// Number of rendering columns.
    pub fn columns(&self) -> usize {
        self.switches.iter().map(|s| s.col + 1).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network serializes")
    }

    pub fn from_json(text: &str) -> Result<Network> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("network json: {e}")))
    }

    /// Drops one switch and renumbers the rest densely. Used to build damaged
    /// networks for minimality checks.
    pub fn without_switch(&self, id: usize) -> Network {
        let switches = self
            .switches
            .iter()
            .filter(|s| s.id != id)
            .enumerate()
            .map(|(k, s)| SwitchPoint { id: k, ..*s })
            .collect();
        Network { switches, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwitchState {
    /// Photons pass straight through.
    Bar,
    /// Photons on the two lines are exchanged.
    Cross,
}

impl SwitchState {
    pub fn is_cross(self) -> bool {
        self == SwitchState::Cross
    }
}

/// A state for every switch, indexed by switch id.
///
/// Serialized as a JSON object keyed by the decimal id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SwitchStates(pub Vec<SwitchState>);

impl SwitchStates {
    pub fn uniform(len: usize, state: SwitchState) -> Self {
        SwitchStates(vec![state; len])
    }

    /// Builds states from an id-keyed map. Keys must be exactly `0..expected`.
    pub fn from_map(map: &BTreeMap<usize, SwitchState>, expected: usize) -> Result<Self> {
        if let Some(extra) = map.keys().find(|&&k| k >= expected) {
            return Err(Error::IncompleteStates(format!("state for unknown switch id {extra}")));
        }
        if map.len() != expected {
            let missing = (0..expected).find(|k| !map.contains_key(k)).unwrap_or(0);
            return Err(Error::IncompleteStates(format!("no state for switch id {missing}")));
        }
        Ok(SwitchStates(map.values().copied().collect()))
    }

    pub fn to_map(&self) -> BTreeMap<usize, SwitchState> {
        self.0.iter().copied().enumerate().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, id: usize) -> SwitchState {
        self.0[id]
    }

    pub fn cross_count(&self) -> usize {
        self.0.iter().filter(|s| s.is_cross()).count()
    }

    pub fn all_cross(&self) -> bool {
        self.0.iter().all(|s| s.is_cross())
    }
}

impl Serialize for SwitchStates {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_map().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SwitchStates {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<usize, SwitchState>::deserialize(deserializer)?;
        let len = map.len();
        SwitchStates::from_map(&map, len).map_err(serde::de::Error::custom)
    }
}

/// N(N-2)/4, the switch count shared by all three designs.
pub fn optimal_switch_count(ports: usize) -> usize {
    ports * ports.saturating_sub(2) / 4
}

pub fn check_ports(ports: usize) -> Result<()> {
    if ports < 2 || ports % 2 != 0 {
        return Err(Error::InvalidPorts(ports));
    }
    Ok(())
}

/// Layer indices in traversal order (input side first).
pub fn layer_order(design: DesignKind, ports: usize) -> Vec<usize> {
    let half = ports / 2;
    match design {
        DesignKind::Triangular => (1..half).rev().collect(),
        DesignKind::Chevron => (1..half).collect(),
        DesignKind::Brickwork => (1..=half).rev().collect(),
    }
}

/// Lines of the switches in `layer`, in intra-layer traversal order.
pub fn layer_lines(design: DesignKind, ports: usize, layer: usize) -> Vec<usize> {
    let half = ports / 2;
    match design {
        DesignKind::Triangular => (0..2 * layer).collect(),
        DesignKind::Chevron => {
            // upper cascade runs down towards the middle, lower cascade runs up
            let mut lines: Vec<usize> = (half - layer - 1..half - 1).collect();
            let lower = (half..half + layer).rev();
            if layer % 2 == 0 {
                lines.extend(lower);
            } else {
                lines.extend(lower.filter(|&x| x != half));
                lines.push(half - 1);
            }
            lines
        }
        DesignKind::Brickwork => {
            let parity = layer % 2;
            let pattern = (0..ports - 1).filter(move |x| x % 2 == parity);
            if layer == half {
                // the first-traversed layer is truncated, top-aligned
                pattern.take(ports / 4).collect()
            } else {
                pattern.collect()
            }
        }
    }
}

/// Number of switches each layer of `design` must hold.
pub fn expected_layer_size(design: DesignKind, ports: usize, layer: usize) -> usize {
    let half = ports / 2;
    match design {
        DesignKind::Triangular | DesignKind::Chevron => 2 * layer,
        DesignKind::Brickwork if layer == half => ports / 4,
        DesignKind::Brickwork if layer % 2 == 1 => half - 1,
        DesignKind::Brickwork => half,
    }
}

pub fn build_network(design: DesignKind, ports: usize) -> Result<Network> {
    check_ports(ports)?;
    let mut switches = Vec::with_capacity(optimal_switch_count(ports));
    let mut base = 0;
    for layer in layer_order(design, ports) {
        // within a layer, a switch goes in the first column after anything
        // already placed on either of its lines
        let mut next = vec![0usize; ports];
        let mut width = 0;
        for line in layer_lines(design, ports, layer) {
            let c = next[line].max(next[line + 1]);
            next[line] = c + 1;
            next[line + 1] = c + 1;
            width = width.max(c + 1);
            switches.push(SwitchPoint { id: switches.len(), layer, line, col: base + c });
        }
        base += width;
    }
    Ok(Network { design, ports, reversed: false, switches })
}

/// The same switches traversed back to front.
pub fn reverse_network(net: &Network) -> Network {
    let last_col = net.columns().saturating_sub(1);
    let switches = net
        .switches
        .iter()
        .rev()
        .enumerate()
        .map(|(id, s)| SwitchPoint { id, layer: s.layer, line: s.line, col: last_col - s.col })
        .collect();
    Network { design: net.design, ports: net.ports, reversed: !net.reversed, switches }
}

/// Reindexes states for `reverse_network`: switch `id` becomes `S - 1 - id`.
pub fn reverse_states(states: &SwitchStates) -> SwitchStates {
    SwitchStates(states.0.iter().rev().copied().collect())
}

/// Where a violation was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    Network,
    Switch(usize),
    Layer(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub subject: Subject,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

pub fn validate_network(net: &Network) -> ValidationReport {
    let mut violations = Vec::new();
    let mut flag = |rule: &str, subject: Subject, message: String| {
        violations.push(Violation { rule: rule.to_string(), subject, message });
    };
    let n = net.ports;

    if check_ports(n).is_err() {
        flag("ports", Subject::Network, format!("port count {n} is not an even number >= 2"));
    }
    for s in &net.switches {
        if s.line + 1 >= n {
            flag("planarity", Subject::Switch(s.id), format!("line {} has no neighbour below it", s.line));
        }
    }
    let want = optimal_switch_count(n);
    if net.switches.len() != want {
        flag(
            "count",
            Subject::Network,
            format!("count {} != N(N-2)/4 = {want}", net.switches.len()),
        );
    }
    for (k, s) in net.switches.iter().enumerate() {
        if s.id != k {
            flag("id-density", Subject::Switch(s.id), format!("switch at position {k} carries id {}", s.id));
        }
    }
    let mut seen = BTreeSet::new();
    for s in &net.switches {
        if !seen.insert((s.layer, s.line)) {
            flag(
                "duplicate",
                Subject::Switch(s.id),
                format!("layer {} already has a switch on line {}", s.layer, s.line),
            );
        }
    }

    if n >= 2 && n % 2 == 0 {
        let mut by_layer: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in &net.switches {
            by_layer.entry(s.layer).or_default().push(s.line);
        }
        let layers = layer_order(net.design, n);
        for (&layer, _) in by_layer.iter().filter(|(l, _)| !layers.contains(l)) {
            flag("layer-size", Subject::Layer(layer), format!("{} has no layer {layer}", net.design));
        }
        for layer in layers {
            let mut got = by_layer.remove(&layer).unwrap_or_default();
            let size = expected_layer_size(net.design, n, layer);
            if got.len() != size {
                flag(
                    "layer-size",
                    Subject::Layer(layer),
                    format!("layer {layer} holds {} switches, expected {size}", got.len()),
                );
            }
            let mut expected = layer_lines(net.design, n, layer);
            got.sort_unstable();
            expected.sort_unstable();
            if got != expected {
                flag(
                    "layer-placement",
                    Subject::Layer(layer),
                    format!("layer {layer} uses lines {got:?}, expected {expected:?}"),
                );
            }
        }
    }

    ValidationReport { ok: violations.is_empty(), violations }
}
