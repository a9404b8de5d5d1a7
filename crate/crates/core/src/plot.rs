//! Deterministic SVG scatter plots of a term stream.
//!
//! Up to [`DOWNSAMPLE_THRESHOLD`] points are drawn one mark each. Larger
//! inputs collapse to a min/max envelope per pixel column, which keeps the
//! file size bounded while preserving the visible shape.

use std::io::{self, Write};

use crate::generator::Term;

pub const DOWNSAMPLE_THRESHOLD: u64 = 100_000;

const CANVAS_W: f64 = 960.0;
const CANVAS_H: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const PLOT_W: f64 = CANVAS_W - LEFT - RIGHT;
const PLOT_H: f64 = CANVAS_H - TOP - BOTTOM;
const COLUMNS: usize = PLOT_W as usize;
const TICKS: u32 = 5;

struct Frame {
    max_x: u64,
    max_y: u128,
}

impl Frame {
    fn px(&self, n: u64) -> f64 {
        let span = (self.max_x.max(2) - 1) as f64;
        LEFT + (n.saturating_sub(1)) as f64 / span * PLOT_W
    }

    fn py(&self, v: u128) -> f64 {
        let top = self.max_y.max(1) as f64;
        TOP + PLOT_H - v as f64 / top * PLOT_H
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders `terms` (indices `1..=max_x`, ascending) as an SVG 1.1 scatter plot.
pub fn render_scatter<I, W>(terms: I, max_x: u64, title: &str, out: &mut W) -> io::Result<()>
where
    I: IntoIterator<Item = Term>,
    W: Write,
{
    if max_x <= DOWNSAMPLE_THRESHOLD {
        let points: Vec<Term> = terms.into_iter().collect();
        let max_y = points.iter().map(|&(_, v)| v).max().unwrap_or(0);
        let frame = Frame { max_x, max_y };
        write_frame(out, &frame, title)?;
        writeln!(out, r##"<g fill="#1f4e9a" stroke="none">"##)?;
        for (n, v) in points {
            writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="0.8"/>"#, frame.px(n), frame.py(v))?;
        }
    } else {
        let mut columns: Vec<Option<(u128, u128)>> = vec![None; COLUMNS];
        let mut max_y = 0;
        for (n, v) in terms {
            let col = ((u128::from(n.saturating_sub(1)) * COLUMNS as u128) / u128::from(max_x)) as usize;
            let slot = &mut columns[col.min(COLUMNS - 1)];
            *slot = Some(match *slot {
                Some((lo, hi)) => (lo.min(v), hi.max(v)),
                None => (v, v),
            });
            max_y = max_y.max(v);
        }
        let frame = Frame { max_x, max_y };
        write_frame(out, &frame, title)?;
        writeln!(out, r##"<g stroke="#1f4e9a" stroke-width="1" fill="none">"##)?;
        for (col, slot) in columns.iter().enumerate() {
            let Some((lo, hi)) = *slot else { continue };
            let x = LEFT + col as f64 + 0.5;
            // Degenerate columns still get a one-pixel mark.
            let (y1, y2) = (frame.py(lo) + 0.5, frame.py(hi) - 0.5);
            writeln!(out, r#"<line x1="{x:.2}" y1="{y1:.2}" x2="{x:.2}" y2="{y2:.2}"/>"#)?;
        }
    }
    writeln!(out, "</g>")?;
    writeln!(out, "</svg>")
}

fn write_frame<W: Write>(out: &mut W, frame: &Frame, title: &str) -> io::Result<()> {
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#)?;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS_W}" height="{CANVAS_H}" viewBox="0 0 {CANVAS_W} {CANVAS_H}">"#
    )?;
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        out,
        r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        LEFT + PLOT_W / 2.0,
        escape(title)
    )?;
    writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{PLOT_W}" height="{PLOT_H}" fill="none" stroke="black"/>"#
    )?;
    writeln!(out, r#"<g font-family="sans-serif" font-size="11" fill="black">"#)?;
    for k in 0..=TICKS {
        let xv = 1 + (frame.max_x.saturating_sub(1)) * u64::from(k) / u64::from(TICKS);
        let x = frame.px(xv);
        writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{xv}</text>"#,
            TOP + PLOT_H,
            TOP + PLOT_H + 5.0,
            TOP + PLOT_H + 20.0
        )?;
        let yv = frame.max_y * u128::from(k) / u128::from(TICKS);
        let y = frame.py(yv);
        writeln!(
            out,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{yv}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        )?;
    }
    writeln!(out, "</g>")
}
