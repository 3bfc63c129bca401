//! ASCII and SVG drawings of a network.

use std::fmt::Write as _;

use crate::topology::{Network, SwitchState, SwitchStates};

/// Fill colours for layers, reused cyclically.
pub const DEFAULT_PALETTE: [&str; 8] =
    ["#f4c542", "#4a90d9", "#e8743b", "#59a14f", "#b07aa1", "#76b7b2", "#e15759", "#9c755f"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    /// Mark switches with their state and stroke photon paths.
    pub show_states: bool,
    /// Photons whose paths are drawn. `None` draws all of them.
    pub highlight: Option<Vec<usize>>,
    /// Pixels per grid cell, at least 1.
    pub scale: u32,
    pub palette: Vec<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            show_states: true,
            highlight: None,
            scale: 20,
            palette: DEFAULT_PALETTE.iter().map(|c| c.to_string()).collect(),
        }
    }
}

fn state_of(states: Option<&SwitchStates>, id: usize) -> Option<SwitchState> {
    states.and_then(|s| s.0.get(id).copied())
}

const CELL: usize = 4;

/// Text diagram: one row per line, switch glyphs between the two lines they
/// couple, BSA brackets on the right.
pub fn render_ascii(net: &Network, states: Option<&SwitchStates>) -> String {
    let n = net.ports;
    if n == 0 {
        return String::new();
    }
    let digits = (n - 1).to_string().len();
    let label_w = digits + 1;
    let right = label_w + CELL * net.columns() + 2;
    let width = right + 1;
    let mut rows: Vec<Vec<char>> = vec![vec![' '; width]; 2 * n - 1];
    for line in 0..n {
        let row = &mut rows[2 * line];
        for (k, ch) in format!("{line:>digits$} ").chars().enumerate() {
            row[k] = ch;
        }
        for cell in row.iter_mut().take(right).skip(label_w) {
            *cell = '-';
        }
    }
    for s in &net.switches {
        let x = label_w + CELL * s.col + CELL / 2;
        rows[2 * s.line][x] = '+';
        rows[2 * s.line + 2][x] = '+';
        rows[2 * s.line + 1][x] = match state_of(states, s.id) {
            Some(SwitchState::Cross) => 'X',
            Some(SwitchState::Bar) => '=',
            None => '?',
        };
    }
    let mut out = String::new();
    for (r, row) in rows.iter_mut().enumerate() {
        let line = r / 2;
        if r % 2 == 0 {
            row[right] = '+';
        } else if line % 2 == 0 {
            row[right] = '|';
        }
        let mut text: String = row.iter().collect();
        if r % 2 == 0 && line % 2 == 0 {
            let _ = write!(text, " BSA{}", line / 2);
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

/// Photon path vertices (x, y) in grid units scaled by `u`.
fn photon_paths(net: &Network, states: &SwitchStates, u: f64, x_of: impl Fn(usize) -> f64, y_of: impl Fn(usize) -> f64, x_end: f64) -> Vec<Vec<(f64, f64)>> {
    let mut lines: Vec<usize> = (0..net.ports).collect();
    let mut pts: Vec<Vec<(f64, f64)>> = (0..net.ports).map(|p| vec![(x_of(0) - u, y_of(p))]).collect();
    for s in &net.switches {
        let x = x_of(s.col);
        let (a, b) = (lines[s.line], lines[s.line + 1]);
        let cross = state_of(Some(states), s.id) == Some(SwitchState::Cross);
        let (ya, yb) = (y_of(s.line), y_of(s.line + 1));
        if cross {
            pts[a].extend([(x - u / 2.0, ya), (x + u / 2.0, yb)]);
            pts[b].extend([(x - u / 2.0, yb), (x + u / 2.0, ya)]);
            lines.swap(s.line, s.line + 1);
        } else {
            pts[a].extend([(x - u / 2.0, ya), (x + u / 2.0, ya)]);
            pts[b].extend([(x - u / 2.0, yb), (x + u / 2.0, yb)]);
        }
    }
    for (line, &p) in lines.iter().enumerate() {
        pts[p].push((x_end, y_of(line)));
    }
    pts
}

/// SVG 1.1 document. Lines are horizontal paths, switches are rectangles
/// coloured by layer, BSAs are semicircles on the right edge.
pub fn render_svg(net: &Network, states: Option<&SwitchStates>, options: &RenderOptions) -> String {
    let u = options.scale.max(1) as f64;
    let n = net.ports;
    let cols = net.columns();
    let label_w = 2.0 * u;
    let x_of = |col: usize| label_w + u * (2.0 * col as f64 + 1.5);
    let y_of = |line: usize| u * (line as f64 + 1.0);
    let x_end = label_w + u * (2.0 * cols as f64 + 1.0);
    let width = x_end + 2.0 * u;
    let height = u * (n as f64 + 1.0);
    let palette: Vec<&str> = if options.palette.is_empty() {
        DEFAULT_PALETTE.to_vec()
    } else {
        options.palette.iter().map(String::as_str).collect()
    };
    let show = options.show_states && states.is_some();

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        "<title>{} network, {} ports{}</title>",
        net.design,
        n,
        if net.reversed { ", reversed" } else { "" }
    );
    let font = (u * 0.6).max(1.0);
    for line in 0..n {
        let y = y_of(line);
        let _ = writeln!(
            svg,
            r#"<text class="label" x="{}" y="{}" font-size="{font}" font-family="monospace" text-anchor="end">{line}</text>"#,
            label_w - u * 0.25,
            y + font * 0.35
        );
        let _ = writeln!(
            svg,
            r##"<path class="line" d="M {label_w} {y} H {x_end}" stroke="#555555" stroke-width="1" fill="none"/>"##
        );
    }
    for s in &net.switches {
        let x = x_of(s.col);
        let color = palette[(s.layer.max(1) - 1) % palette.len()];
        let state_class = match (show, state_of(states, s.id)) {
            (true, Some(SwitchState::Bar)) => " bar",
            (true, Some(SwitchState::Cross)) => " cross",
            _ => "",
        };
        let _ = writeln!(
            svg,
            r##"<rect class="switch layer-{}{state_class}" data-id="{}" x="{}" y="{}" width="{u}" height="{}" fill="{color}" stroke="#333333" stroke-width="1"/>"##,
            s.layer,
            s.id,
            x - u / 2.0,
            y_of(s.line) - u / 4.0,
            u * 1.5
        );
    }
    for j in 0..n / 2 {
        let (y1, y2) = (y_of(2 * j), y_of(2 * j + 1));
        let r = (y2 - y1) / 2.0;
        let _ = writeln!(
            svg,
            r##"<path class="bsa" d="M {x_end} {y1} A {r} {r} 0 0 1 {x_end} {y2} Z" fill="#dddddd" stroke="#333333" stroke-width="1"/>"##
        );
    }
    if let (true, Some(states)) = (show, states) {
        if states.len() == net.len() {
            let paths = photon_paths(net, states, u, x_of, y_of, x_end);
            for (p, pts) in paths.iter().enumerate() {
                if options.highlight.as_ref().is_some_and(|h| !h.contains(&p)) {
                    continue;
                }
                let color = palette[p % palette.len()];
                let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
                let _ = writeln!(
                    svg,
                    r#"<polyline class="photon" data-photon="{p}" points="{}" fill="none" stroke="{color}" stroke-width="2" stroke-opacity="0.8"/>"#,
                    coords.join(" ")
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}
