//! Arc-diagram rendering of decorated sequences.
//!
//! Vertices sit on a baseline at even spacing. A closed arc is a semicircle
//! joining its two endpoints; an open arc is a quarter-circle stub rising to
//! the right of its vertex. Output depends only on the input sequence and
//! [`FORMAT_VERSION`].

use std::fmt::Write as _;

use skolemgen::{Entry, OpenState};

pub const FORMAT_VERSION: u32 = 1;

const SPACING: usize = 40;
const MARGIN: usize = 30;
const LABEL_GAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arc {
    /// 1-based left endpoint and length.
    Closed { start: usize, span: usize },
    /// 1-based vertex and star value.
    Open { start: usize, star: u32 },
}

impl Arc {
    pub fn start(self) -> usize {
        match self {
            Arc::Closed { start, .. } | Arc::Open { start, .. } => start,
        }
    }
}

/// Arcs ordered by left endpoint.
pub fn arcs(state: &OpenState) -> Vec<Arc> {
    let entries = state.entries();
    entries
        .iter()
        .enumerate()
        .filter_map(|(i, e)| match *e {
            Entry::Open(star) => Some(Arc::Open { start: i + 1, star }),
            Entry::Closed(k) => {
                let partner = i + k as usize;
                (partner < entries.len() && entries[partner] == Entry::Closed(k)).then_some(
                    Arc::Closed {
                        start: i + 1,
                        span: k as usize,
                    },
                )
            }
        })
        .collect()
}

/// One header row of entry labels, then one row per arc: `+` at endpoints,
/// `-` along a closed arc, `+->` for an open stub.
pub fn render_ascii(state: &OpenState) -> String {
    let labels: Vec<String> = state.entries().iter().map(ToString::to_string).collect();
    let cell = labels.iter().map(String::len).max().unwrap_or(1) + 1;
    let width = cell * labels.len();
    let col = |pos: usize| pos * cell - 1;

    let mut out = String::new();
    for label in &labels {
        let _ = write!(out, "{label:>cell$}");
    }
    out.push('\n');
    for arc in arcs(state) {
        let mut row = vec![b' '; width + 2];
        let tag = match arc {
            Arc::Closed { start, span } => {
                let (a, b) = (col(start), col(start + span));
                row[a..=b].fill(b'-');
                row[a] = b'+';
                row[b] = b'+';
                format!("len={span}")
            }
            Arc::Open { start, star } => {
                let a = col(start);
                row[a..a + 3].copy_from_slice(b"+->");
                format!("open *{star}")
            }
        };
        let line = String::from_utf8(row).expect("ascii");
        let _ = writeln!(out, "{}  {tag}", line.trim_end());
    }
    out
}

/// SVG 1.1 document.
pub fn render_svg(state: &OpenState) -> String {
    let n = state.order();
    let all = arcs(state);
    let half = SPACING / 2;
    let tallest = all
        .iter()
        .map(|a| match *a {
            Arc::Closed { span, .. } => span * half,
            Arc::Open { .. } => half,
        })
        .max()
        .unwrap_or(0);
    let baseline = MARGIN + tallest;
    let width = 2 * MARGIN + SPACING * n.saturating_sub(1);
    let height = baseline + LABEL_GAP + MARGIN;
    let x = |pos: usize| MARGIN + SPACING * (pos - 1);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" data-format-version="{FORMAT_VERSION}">"#
    );
    let _ = writeln!(svg, r#"  <title>{state}</title>"#);
    if n > 0 {
        let _ = writeln!(
            svg,
            r#"  <line class="baseline" x1="{}" y1="{baseline}" x2="{}" y2="{baseline}" stroke="silver" stroke-width="1"/>"#,
            x(1),
            x(n)
        );
    }
    for arc in &all {
        match *arc {
            Arc::Closed { start, span } => {
                let r = span * half;
                let _ = writeln!(
                    svg,
                    r#"  <path class="arc" data-start="{start}" data-span="{span}" d="M {} {baseline} A {r} {r} 0 0 1 {} {baseline}" fill="none" stroke="black" stroke-width="2"/>"#,
                    x(start),
                    x(start + span)
                );
            }
            Arc::Open { start, star } => {
                let x0 = x(start);
                let _ = writeln!(
                    svg,
                    r#"  <path class="stub" data-start="{start}" data-star="{star}" d="M {x0} {baseline} A {half} {half} 0 0 1 {} {}" fill="none" stroke="black" stroke-width="2" stroke-dasharray="4 3"/>"#,
                    x0 + half,
                    baseline - half
                );
            }
        }
    }
    for (i, entry) in state.entries().iter().enumerate() {
        let cx = x(i + 1);
        let _ = writeln!(svg, r#"  <circle class="vertex" cx="{cx}" cy="{baseline}" r="4" fill="black"/>"#);
        let _ = writeln!(
            svg,
            r#"  <text x="{cx}" y="{}" text-anchor="middle" font-family="monospace" font-size="14">{entry}</text>"#,
            baseline + LABEL_GAP
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(text: &str) -> OpenState {
        text.parse().unwrap()
    }

    #[test]
    fn arcs_of_skolem_example() {
        let spans: Vec<usize> = arcs(&st("3,4,2,3,2,4,1,1"))
            .into_iter()
            .map(|a| match a {
                Arc::Closed { span, .. } => span,
                Arc::Open { .. } => panic!("no open arcs"),
            })
            .collect();
        assert_eq!(spans, vec![3, 4, 2, 1]);
    }

    #[test]
    fn arcs_of_open_example() {
        let all = arcs(&st("*7,4,1,1,*3,4,*1"));
        let closed = all.iter().filter(|a| matches!(a, Arc::Closed { .. })).count();
        let open = all.iter().filter(|a| matches!(a, Arc::Open { .. })).count();
        assert_eq!((closed, open), (2, 3));
        assert_eq!(all[0], Arc::Open { start: 1, star: 7 });
    }

    #[test]
    fn ascii_unit_arc() {
        assert_eq!(render_ascii(&st("1,1")), " 1 1\n +-+  len=1\n");
    }

    #[test]
    fn ascii_open_stub() {
        let text = render_ascii(&st("*2,*1"));
        assert_eq!(text, " *2 *1\n  +->  open *2\n     +->  open *1\n");
    }

    #[test]
    fn svg_counts_shapes() {
        let svg = render_svg(&st("*7,4,1,1,*3,4,*1"));
        assert_eq!(svg.matches(r#"class="arc""#).count(), 2);
        assert_eq!(svg.matches(r#"class="stub""#).count(), 3);
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 7);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn svg_unit_arc_geometry() {
        let svg = render_svg(&st("1,1"));
        assert!(svg.contains(r#"d="M 30 50 A 20 20 0 0 1 70 50""#), "{svg}");
    }

    #[test]
    fn rendering_is_deterministic() {
        let s = st("3,4,2,3,2,4,1,1");
        assert_eq!(render_svg(&s), render_svg(&s));
        assert_eq!(render_ascii(&s), render_ascii(&s));
    }
}
