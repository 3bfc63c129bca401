//! Depth statistics and resource comparison with other switch designs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{check_ports, optimal_switch_count, DesignKind};
use crate::verification::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthStats {
    pub design: DesignKind,
    pub ports: usize,
    pub formula_max: usize,
    pub formula_min: usize,
    pub formula_delta: usize,
    pub empirical_max: Option<usize>,
    pub empirical_min: Option<usize>,
    pub empirical_delta: Option<usize>,
}

/// Closed-form (max, min, delta) depth for a design.
pub fn formula_depths(design: DesignKind, ports: usize) -> (usize, usize, usize) {
    let n = ports;
    let half = n / 2;
    match design {
        DesignKind::Triangular => (n - 2, 0, n - 2),
        DesignKind::Chevron if half % 2 == 0 => (n - 2, half - 2, half),
        DesignKind::Chevron => (n - 3, half.saturating_sub(3), half),
        // ceil(N/4 - 1) and floor(N/4 + 1)
        DesignKind::Brickwork => (half, n.div_ceil(4) - 1, n / 4 + 1),
    }
}

pub fn depth_stats(design: DesignKind, ports: usize, report: Option<&VerificationReport>) -> Result<DepthStats> {
    check_ports(ports)?;
    if ports < 4 {
        return Err(Error::InvalidPorts(ports));
    }
    let (formula_max, formula_min, formula_delta) = formula_depths(design, ports);
    let (empirical_max, empirical_min) = match report {
        Some(r) if r.design == design && r.ports == ports => (r.empirical_max_depth, r.empirical_min_depth),
        Some(r) => {
            return Err(Error::InvalidInput(format!(
                "report is for {} with {} ports, not {design} with {ports}",
                r.design, r.ports
            )))
        }
        None => (None, None),
    };
    let empirical_delta = match (empirical_max, empirical_min) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    Ok(DepthStats {
        design,
        ports,
        formula_max,
        formula_min,
        formula_delta,
        empirical_max,
        empirical_min,
        empirical_delta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Ours,
    SpankeBenes,
    Benes,
    Waksman,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Ours => "ours",
            Scheme::SpankeBenes => "spanke_benes",
            Scheme::Benes => "benes",
            Scheme::Waksman => "waksman",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub scheme: Scheme,
    pub ports: usize,
    pub planar: bool,
    pub switches: usize,
    pub crosspoints: usize,
    pub coupling_stages: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    /// (N, ours / spanke_benes)
    pub ratios: Vec<(usize, f64)>,
}

impl ComparisonTable {
    pub fn row(&self, scheme: Scheme, ports: usize) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.scheme == scheme && r.ports == ports)
    }
}

fn log2_exact(n: usize) -> Option<usize> {
    n.is_power_of_two().then(|| n.trailing_zeros() as usize)
}

pub fn spanke_benes_switches(ports: usize) -> usize {
    ports * (ports - 1) / 2
}

/// N log2 N - N/2.
pub fn benes_switches(ports: usize) -> Option<usize> {
    log2_exact(ports).map(|k| ports * k - ports / 2)
}

/// N log2 N - N + 1.
pub fn waksman_switches(ports: usize) -> Option<usize> {
    log2_exact(ports).map(|k| ports * k - ports + 1)
}

/// N (N - log2 N - 1) / 2, shared by the two non-planar designs.
pub fn nonplanar_crosspoints(ports: usize) -> Option<usize> {
    log2_exact(ports).map(|k| ports * (ports - k - 1) / 2)
}

pub fn count_table(ports_list: &[usize]) -> Result<ComparisonTable> {
    let mut rows = Vec::new();
    let mut ratios = Vec::new();
    for &n in ports_list {
        check_ports(n)?;
        let ours = optimal_switch_count(n);
        let sb = spanke_benes_switches(n);
        let planar_row = |scheme, switches| ComparisonRow {
            scheme,
            ports: n,
            planar: true,
            switches,
            crosspoints: 0,
            coupling_stages: 2,
        };
        rows.push(planar_row(Scheme::Ours, ours));
        rows.push(planar_row(Scheme::SpankeBenes, sb));
        if let (Some(k), Some(cp)) = (log2_exact(n), nonplanar_crosspoints(n)) {
            for (scheme, switches) in [(Scheme::Benes, benes_switches(n)), (Scheme::Waksman, waksman_switches(n))] {
                rows.push(ComparisonRow {
                    scheme,
                    ports: n,
                    planar: false,
                    switches: switches.expect("power of two"),
                    crosspoints: cp,
                    coupling_stages: 4 * k - 2,
                });
            }
        }
        ratios.push((n, ours as f64 / sb as f64));
    }
    Ok(ComparisonTable { rows, ratios })
}

/// One (scheme, N) point of the depth and count figures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub scheme: String,
    pub ports: usize,
    pub switches: usize,
    pub crosspoints: usize,
    pub max_depth: usize,
}

/// Rows for each design and each reference scheme. Beneš and Waksman rows
/// appear only for powers of two.
pub fn figure_series(ports_list: &[usize]) -> Result<Vec<SeriesRow>> {
    let mut rows = Vec::new();
    for &n in ports_list {
        check_ports(n)?;
        if n < 4 {
            return Err(Error::InvalidPorts(n));
        }
        for d in DesignKind::ALL {
            rows.push(SeriesRow {
                scheme: d.name().to_string(),
                ports: n,
                switches: optimal_switch_count(n),
                crosspoints: 0,
                max_depth: formula_depths(d, n).0,
            });
        }
        rows.push(SeriesRow {
            scheme: Scheme::SpankeBenes.name().to_string(),
            ports: n,
            switches: spanke_benes_switches(n),
            crosspoints: 0,
            max_depth: n - 1,
        });
        if let Some(k) = log2_exact(n) {
            let cp = nonplanar_crosspoints(n).expect("power of two");
            // one switch per stage on every path, 2 log2 N - 1 stages
            for (scheme, switches) in [(Scheme::Benes, benes_switches(n)), (Scheme::Waksman, waksman_switches(n))] {
                rows.push(SeriesRow {
                    scheme: scheme.name().to_string(),
                    ports: n,
                    switches: switches.expect("power of two"),
                    crosspoints: cp,
                    max_depth: 2 * k - 1,
                });
            }
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "scheme,N,switches,crosspoints,max_depth";

pub fn emit_csv(rows: &[SeriesRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.scheme, r.ports, r.switches, r.crosspoints, r.max_depth);
    }
    out
}

/// Left-aligned first column, right-aligned numbers.
fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(k, (c, &w))| if k == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn format_comparison(table: &ComparisonTable) -> String {
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| {
            vec![
                r.scheme.name().to_string(),
                r.ports.to_string(),
                if r.planar { "planar" } else { "non-planar" }.to_string(),
                r.switches.to_string(),
                r.crosspoints.to_string(),
                r.coupling_stages.to_string(),
            ]
        })
        .collect();
    let mut out = aligned(&["scheme", "N", "layout", "switches", "crosspoints", "stages"], &rows);
    out.push('\n');
    let ratio_rows: Vec<Vec<String>> =
        table.ratios.iter().map(|(n, r)| vec![n.to_string(), format!("{r:.4}")]).collect();
    out.push_str(&aligned(&["N", "ours/spanke_benes"], &ratio_rows));
    out
}

pub fn format_depths(stats: &[DepthStats]) -> String {
    let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    let rows: Vec<Vec<String>> = stats
        .iter()
        .map(|s| {
            vec![
                s.design.name().to_string(),
                s.ports.to_string(),
                s.formula_max.to_string(),
                s.formula_min.to_string(),
                s.formula_delta.to_string(),
                opt(s.empirical_max),
                opt(s.empirical_min),
                opt(s.empirical_delta),
            ]
        })
        .collect();
    aligned(&["design", "N", "max", "min", "delta", "emp_max", "emp_min", "emp_delta"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_formulas_at_twelve() {
        let t = depth_stats(DesignKind::Triangular, 12, None).unwrap();
        assert_eq!((t.formula_max, t.formula_min, t.formula_delta), (10, 0, 10));
        let c = depth_stats(DesignKind::Chevron, 12, None).unwrap();
        assert_eq!((c.formula_max, c.formula_min, c.formula_delta), (10, 4, 6));
        let b = depth_stats(DesignKind::Brickwork, 12, None).unwrap();
        assert_eq!((b.formula_max, b.formula_min, b.formula_delta), (6, 2, 4));
        assert!(b.empirical_max.is_none());
    }

    #[test]
    fn chevron_odd_half() {
        // N = 10: max N-3, min N/2-3
        assert_eq!(formula_depths(DesignKind::Chevron, 10), (7, 2, 5));
    }

    #[test]
    fn delta_is_max_minus_min() {
        for d in DesignKind::ALL {
            for n in (4..=64).step_by(2) {
                let (mx, mn, delta) = formula_depths(d, n);
                assert_eq!(mx - mn, delta, "{d} {n}");
            }
        }
    }

    #[test]
    fn table_values() {
        let t = count_table(&[8, 12, 16]).unwrap();
        assert_eq!(t.row(Scheme::Ours, 12).unwrap().switches, 30);
        assert_eq!(t.row(Scheme::SpankeBenes, 12).unwrap().switches, 66);
        assert!(t.row(Scheme::Benes, 12).is_none());
        assert_eq!(t.row(Scheme::Benes, 8).unwrap().switches, 20);
        assert_eq!(t.row(Scheme::Waksman, 8).unwrap().switches, 17);
        assert_eq!(t.row(Scheme::Benes, 8).unwrap().crosspoints, 16);
        assert_eq!(t.row(Scheme::Waksman, 8).unwrap().crosspoints, 16);
        assert_eq!(t.row(Scheme::Benes, 8).unwrap().coupling_stages, 10);
        assert_eq!(t.row(Scheme::Ours, 16).unwrap().switches, 56);
        assert_eq!(t.row(Scheme::SpankeBenes, 16).unwrap().switches, 120);
        let (_, r) = t.ratios[1];
        assert!((r - 30.0 / 66.0).abs() < 1e-12 && r < 0.5);
    }

    #[test]
    fn csv_layout() {
        assert_eq!(emit_csv(&[]), "scheme,N,switches,crosspoints,max_depth\n");
        let rows = figure_series(&[4]).unwrap();
        let csv = emit_csv(&rows);
        assert_eq!(csv.lines().nth(1), Some("triangular,4,2,0,2"));
        assert!(csv.contains("spanke_benes,4,6,0,3\n"));
        assert!(csv.contains("benes,4,6,2,3\n"));
        assert!(csv.contains("waksman,4,5,2,3\n"));
    }

    #[test]
    fn text_tables_render() {
        let text = format_comparison(&count_table(&[8]).unwrap());
        assert!(text.starts_with("scheme"));
        assert!(text.contains("non-planar"));
        let stats = vec![depth_stats(DesignKind::Brickwork, 8, None).unwrap()];
        assert!(format_depths(&stats).contains("brickwork"));
    }
}
