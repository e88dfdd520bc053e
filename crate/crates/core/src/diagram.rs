//! SVG picture of the critical core on the `(x, y)` grid of `G_{2^n+1,2}`.
//!
//! Grid coordinates: column `X = x`, row `Y = N - y + 1` counted upward, so a
//! cell `(x, y)` spans `[x, x+1] × [N-y+1, N-y+2]`. Region `l` is the staircase
//! of pairs inside `I_l`; its lower-left corner is `(2^l, 2^(n-l))`, which
//! lies on the hyperbola `X·Y = 2^n`.
//!
//! Elements carry `data-*` attributes so the output can be checked by parsing:
//! member cells are `<rect class="cell core" data-x=.. data-y=..>` and regions
//! are `<polygon class="region" data-level=.. data-corner-x=.. data-corner-y=..>`
//! whose first point is the corner. The root carries `data-cell`,
//! `data-margin` and `data-top` (= N) to map pixels back to the grid:
//! `X = 1 + (px - margin) / cell`, `Y = top - (py - margin) / cell`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::shift::critical_core;

pub const MIN_DIAGRAM_N: u32 = 2;
pub const MAX_DIAGRAM_N: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramSpec {
    pub n: u32,
    /// Side of one grid cell in pixels.
    pub cell: u32,
    /// One fill color per region `I_0..I_n`.
    pub palette: Vec<String>,
    pub hyperbola: bool,
}

impl DiagramSpec {
    pub fn new(n: u32) -> Result<Self> {
        if !(MIN_DIAGRAM_N..=MAX_DIAGRAM_N).contains(&n) {
            return Err(Error::InvalidParameter(format!(
                "diagram needs {MIN_DIAGRAM_N} <= n <= {MAX_DIAGRAM_N}, got {n}"
            )));
        }
        let cell = match n {
            2..=4 => 24,
            5 => 14,
            6 => 8,
            _ => 4,
        };
        Ok(DiagramSpec {
            n,
            cell,
            palette: even_hue_palette(n + 1),
            hyperbola: true,
        })
    }
}

/// `count` colors at evenly spaced hues, fixed saturation and lightness.
pub fn even_hue_palette(count: u32) -> Vec<String> {
    (0..count)
        .map(|i| {
            let hue = 360.0 * i as f64 / count as f64;
            hsl_to_hex(hue, 0.65, 0.55)
        })
        .collect()
}

fn hsl_to_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

struct Frame {
    top: u32,
    cell: f64,
    margin: f64,
}

impl Frame {
    fn px(&self, gx: f64) -> f64 {
        self.margin + (gx - 1.0) * self.cell
    }

    fn py(&self, gy: f64) -> f64 {
        self.margin + (self.top as f64 - gy) * self.cell
    }

    fn point(&self, gx: f64, gy: f64) -> String {
        format!("{:.2},{:.2}", self.px(gx), self.py(gy))
    }
}

pub fn render_svg(spec: &DiagramSpec) -> Result<String> {
    let core = critical_core(spec.n)?;
    if spec.palette.len() < core.intervals().len() {
        return Err(Error::InvalidParameter(format!(
            "palette has {} colors, {} regions need coloring",
            spec.palette.len(),
            core.intervals().len()
        )));
    }
    let top = core.n_points();
    let frame = Frame {
        top,
        cell: spec.cell as f64,
        margin: (2.5 * spec.cell as f64).max(28.0),
    };
    let side = 2.0 * frame.margin + (top - 1) as f64 * frame.cell;
    let font = (0.55 * frame.cell).clamp(4.0, 12.0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side:.0}" height="{side:.0}" viewBox="0 0 {side:.0} {side:.0}" data-n="{}" data-cell="{}" data-margin="{:.2}" data-top="{top}">"#,
        spec.n, spec.cell, frame.margin
    );
    let _ = writeln!(
        out,
        r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
    );

    // grid of all vertices
    let _ = writeln!(
        out,
        r##"<g class="grid" fill="none" stroke="#cccccc" stroke-width="0.5">"##
    );
    for v in core.graph().vertices() {
        if core.contains(v) {
            continue;
        }
        let (x, y) = (v.x as f64, v.y as f64);
        let _ = writeln!(
            out,
            r#"<rect class="cell" data-x="{}" data-y="{}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
            v.x,
            v.y,
            frame.px(x),
            frame.py(top as f64 - y + 2.0),
            frame.cell,
            frame.cell
        );
    }
    let _ = writeln!(out, "</g>");

    // one staircase per interval
    let _ = writeln!(
        out,
        r#"<g class="regions" style="mix-blend-mode:multiply">"#
    );
    for (level, iv) in core.intervals().iter().enumerate() {
        let (cx, cy) = core.region_corner(level as u32);
        let (lo, hi) = (iv.lo as f64, iv.hi as f64);
        let bottom = top as f64 - hi + 1.0;
        let mut pts = vec![frame.point(lo, bottom), frame.point(hi, bottom)];
        // column x spans rows [bottom, N - x + 1]
        for x in (iv.lo..iv.hi).rev() {
            let xr = x as f64;
            let col_top = top as f64 - xr + 1.0;
            pts.push(frame.point(xr + 1.0, col_top));
            pts.push(frame.point(xr, col_top));
        }
        let _ = writeln!(
            out,
            r#"<polygon class="region" data-level="{level}" data-lo="{}" data-hi="{}" data-corner-x="{cx}" data-corner-y="{cy}" points="{}" fill="{}" fill-opacity="0.6" stroke="none"/>"#,
            iv.lo,
            iv.hi,
            pts.join(" "),
            spec.palette[level]
        );
    }
    let _ = writeln!(out, "</g>");

    // shaded cells: exactly the members of W
    let _ = writeln!(
        out,
        r##"<g class="core" fill="none" stroke="#555555" stroke-width="0.5">"##
    );
    for &v in core.members() {
        let levels: Vec<String> = core
            .intervals()
            .iter()
            .enumerate()
            .filter(|(_, iv)| iv.contains(v.x) && iv.contains(v.y))
            .map(|(l, _)| l.to_string())
            .collect();
        let _ = writeln!(
            out,
            r#"<rect class="cell core" data-x="{}" data-y="{}" data-levels="{}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
            v.x,
            v.y,
            levels.join(" "),
            frame.px(v.x as f64),
            frame.py(top as f64 - v.y as f64 + 2.0),
            frame.cell,
            frame.cell
        );
    }
    let _ = writeln!(out, "</g>");

    if spec.hyperbola {
        let scale = (1u32 << spec.n) as f64;
        let samples = 256;
        let pts: Vec<String> = (0..=samples)
            .map(|i| {
                let gx = 1.0 + (scale - 1.0) * i as f64 / samples as f64;
                frame.point(gx, scale / gx)
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polyline class="hyperbola" data-product="{}" points="{}" fill="none" stroke="#d62728" stroke-width="{:.2}" stroke-linecap="round" stroke-dasharray="0.01 {:.2}"/>"##,
            1u32 << spec.n,
            pts.join(" "),
            (0.25 * frame.cell).max(1.5),
            (0.6 * frame.cell).max(4.0)
        );
    }

    // axis labels: x along the bottom, y down the left side
    let _ = writeln!(
        out,
        r##"<g class="labels" font-family="sans-serif" font-size="{font:.1}" fill="#000000">"##
    );
    let base = frame.py(1.0) + font + 2.0;
    for x in 1..top {
        let _ = writeln!(
            out,
            r#"<text class="x-label" x="{:.2}" y="{:.2}" text-anchor="middle">{x}</text>"#,
            frame.px(x as f64 + 0.5),
            base
        );
    }
    for y in 2..=top {
        let _ = writeln!(
            out,
            r#"<text class="y-label" x="{:.2}" y="{:.2}" text-anchor="end" dominant-baseline="middle">{y}</text>"#,
            frame.px(1.0) - 4.0,
            frame.py(top as f64 - y as f64 + 1.5)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_is_enforced() {
        assert!(DiagramSpec::new(1).is_err());
        assert!(DiagramSpec::new(9).is_err());
        assert!(DiagramSpec::new(8).is_ok());
    }

    #[test]
    fn palette_is_fixed_and_distinct() {
        let p = even_hue_palette(5);
        assert_eq!(p.len(), 5);
        assert_eq!(p[0], "#d74242");
        let mut q = p.clone();
        q.dedup();
        assert_eq!(q.len(), 5);
    }

    #[test]
    fn rendering_is_deterministic() {
        let spec = DiagramSpec::new(3).unwrap();
        assert_eq!(render_svg(&spec).unwrap(), render_svg(&spec).unwrap());
    }

    #[test]
    fn counts_at_two() {
        let svg = render_svg(&DiagramSpec::new(2).unwrap()).unwrap();
        assert_eq!(svg.matches(r#"class="cell core""#).count(), 5);
        assert_eq!(svg.matches(r#"class="region""#).count(), 3);
        assert_eq!(svg.matches(r#"class="cell""#).count(), 5);
    }
}
