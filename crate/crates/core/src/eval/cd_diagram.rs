//! Critical-difference diagram as a standalone SVG document.

use std::fmt::Write;

/// Groups of methods whose mean ranks all lie within `cd` of each other.
///
/// Methods are taken in rank order; each group is the longest run starting
/// at some method whose span is at most `cd`, dropping runs contained in an
/// earlier one and single-method runs. Returned groups hold method indices
/// sorted by rank.
pub fn cd_groups(mean_ranks: &[f64], cd: f64) -> Vec<Vec<usize>> {
    let order = rank_order(mean_ranks);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut covered_to = 0;
    for i in 0..order.len() {
        let mut j = i;
        while j + 1 < order.len() && mean_ranks[order[j + 1]] - mean_ranks[order[i]] <= cd {
            j += 1;
        }
        if j > i && j + 1 > covered_to {
            groups.push(order[i..=j].to_vec());
            covered_to = j + 1;
        }
    }
    groups
}

fn rank_order(mean_ranks: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..mean_ranks.len()).collect();
    order.sort_by(|&a, &b| mean_ranks[a].total_cmp(&mean_ranks[b]).then(a.cmp(&b)));
    order
}

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 120.0;
const AXIS_Y: f64 = 60.0;
const ROW: f64 = 22.0;

/// Renders the diagram. The axis runs from rank 1 (left) to rank k (right);
/// better-ranked methods are labelled on the left, the rest on the right,
/// and thick bars join methods that are not significantly different.
pub fn render_cd_diagram(mean_ranks: &[f64], cd: f64, method_names: &[String]) -> String {
    let k = mean_ranks.len().max(2);
    let order = rank_order(mean_ranks);
    let groups = cd_groups(mean_ranks, cd);
    let scale = (WIDTH - 2.0 * MARGIN) / (k as f64 - 1.0);
    let x_of = |rank: f64| MARGIN + (rank - 1.0) * scale;
    let left = order.len().div_ceil(2);
    let label_rows = left.max(order.len() - left);
    let bars_y = AXIS_Y + 14.0;
    let labels_y = bars_y + groups.len() as f64 * 8.0 + 16.0;
    let height = labels_y + label_rows as f64 * ROW + 10.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // critical difference marker
    let _ = writeln!(
        svg,
        r#"<line class="cd" x1="{:.2}" y1="20" x2="{:.2}" y2="20" stroke="black" stroke-width="2"/>"#,
        x_of(1.0),
        x_of(1.0 + cd)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="14" text-anchor="middle">CD = {cd:.3}</text>"#,
        x_of(1.0 + cd / 2.0)
    );

    // axis and integer ticks
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{:.2}" y1="{AXIS_Y}" x2="{:.2}" y2="{AXIS_Y}" stroke="black"/>"#,
        x_of(1.0),
        x_of(k as f64)
    );
    for r in 1..=k {
        let x = x_of(r as f64);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{:.0}" x2="{x:.2}" y2="{AXIS_Y}" stroke="black"/><text x="{x:.2}" y="{:.0}" text-anchor="middle">{r}</text>"#,
            AXIS_Y - 6.0,
            AXIS_Y - 10.0
        );
    }

    // one tick and label per method
    for (pos, &m) in order.iter().enumerate() {
        let name = method_names.get(m).map(String::as_str).unwrap_or("?");
        let x = x_of(mean_ranks[m]);
        let (row, label_x, anchor) = if pos < left {
            (pos, MARGIN - 10.0, "end")
        } else {
            (order.len() - 1 - pos, WIDTH - MARGIN + 10.0, "start")
        };
        let y = labels_y + row as f64 * ROW;
        let _ = writeln!(
            svg,
            r#"<g class="method"><polyline points="{x:.2},{AXIS_Y} {x:.2},{y:.2} {label_x:.2},{y:.2}" fill="none" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{} ({:.3})</text></g>"#,
            if anchor == "end" {
                label_x - 4.0
            } else {
                label_x + 4.0
            },
            y + 4.0,
            escape(name),
            mean_ranks[m]
        );
    }

    for (g, members) in groups.iter().enumerate() {
        let lo = mean_ranks[members[0]];
        let hi = mean_ranks[*members.last().unwrap()];
        let y = bars_y + g as f64 * 8.0;
        let _ = writeln!(
            svg,
            r#"<line class="group" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-width="4"/>"#,
            x_of(lo) - 3.0,
            x_of(hi) + 3.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
