//! Deterministic SVG output. Coordinates follow the projection with `t`
//! horizontal and `h` vertical (up).

use std::fmt::Write;

use schur_process::asympt::{Grid, LevelSet, ShapeRow};
use schur_process::combin::PlanePartition;

const SCALE: f64 = 60.0;
const MARGIN: f64 = 20.0;

struct Canvas {
    x0: f64,
    y1: f64,
    scale: f64,
    body: String,
}

impl Canvas {
    fn new(x0: f64, x1: f64, y0: f64, y1: f64, scale: f64) -> (Self, f64, f64) {
        let w = (x1 - x0) * scale + 2.0 * MARGIN;
        let h = (y1 - y0) * scale + 2.0 * MARGIN;
        (Canvas { x0, y1, scale, body: String::new() }, w, h)
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.x0) * self.scale, MARGIN + (self.y1 - y) * self.scale)
    }

    fn polyline(&mut self, pts: &[(f64, f64)], style: &str) {
        let mut d = String::new();
        for &(x, y) in pts {
            let (a, b) = self.px(x, y);
            let _ = write!(d, "{a:.3},{b:.3} ");
        }
        let _ = writeln!(self.body, r#"<polyline points="{}" {style}/>"#, d.trim_end());
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str) {
        let mut d = String::new();
        for &(x, y) in pts {
            let (a, b) = self.px(x, y);
            let _ = write!(d, "{a:.3},{b:.3} ");
        }
        let _ = writeln!(self.body, r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="0.5"/>"#, d.trim_end());
    }
}

fn document(header: &str, w: f64, h: f64, body: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- schurproc {} -->\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.3} {h:.3}\">\n{body}</svg>\n",
        header.replace("--", "- -")
    )
}

/// Level lines `θ* = kπ/8` over the `(τ, χ)` window of the grid.
pub fn density_svg(grid: &Grid, sets: &[LevelSet], header: &str) -> String {
    let (mut c, w, h) = Canvas::new(grid.tau_min, grid.tau_max, grid.chi_min, grid.chi_max, SCALE);
    let frame = [
        (grid.tau_min, grid.chi_min),
        (grid.tau_max, grid.chi_min),
        (grid.tau_max, grid.chi_max),
        (grid.tau_min, grid.chi_max),
        (grid.tau_min, grid.chi_min),
    ];
    c.polyline(&frame, r#"fill="none" stroke="gray""#);
    for s in sets {
        let width = if s.k == 0 || s.k == 8 { 2.0 } else { 1.0 };
        let shade = 30 + 25 * s.k;
        for line in &s.lines {
            let style = format!(r#"fill="none" stroke="rgb({shade},60,{})" stroke-width="{width}" data-k="{}""#, 255 - shade, s.k);
            c.polyline(line, &style);
        }
    }
    document(header, w, h, &c.body)
}

/// The limit-shape mesh seen from an oblique direction, one polyline per grid row and column.
pub fn shape_svg(grid: &Grid, rows: &[ShapeRow], header: &str) -> String {
    let view = |r: &ShapeRow| (0.87 * (r.y - r.x), r.z - 0.35 * r.x - 0.65 * r.y);
    let pts: Vec<(f64, f64)> = rows.iter().map(view).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let scale = 600.0 / (x1 - x0).max(y1 - y0).max(1e-9);
    let (mut c, w, h) = Canvas::new(x0, x1, y0, y1, scale);
    let style = r#"fill="none" stroke="steelblue" stroke-width="0.7""#;
    for i in 0..grid.nt {
        let line: Vec<_> = (0..grid.nc).map(|j| pts[i * grid.nc + j]).collect();
        c.polyline(&line, style);
    }
    for j in 0..grid.nc {
        let line: Vec<_> = (0..grid.nt).map(|i| pts[i * grid.nc + j]).collect();
        c.polyline(&line, style);
    }
    document(header, w, h, &c.body)
}

/// `(t, h) = (y - x, z - (x + y)/2)`.
fn project(x: f64, y: f64, z: f64) -> (f64, f64) {
    (y - x, z - (x + y) / 2.0)
}

/// Lozenge tiling of the visible surface of `pi` inside an `a × b` floor.
/// Horizontal tiles are drawn in one colour, the two wall orientations in two others.
pub fn tiling_svg(pi: &PlanePartition, a: usize, b: usize, header: &str) -> String {
    let hgt = |i: usize, j: usize| if i < a && j < b { pi.entry(i + 1, j + 1) as f64 } else { 0.0 };
    let mut faces: Vec<([(f64, f64); 4], &str)> = Vec::new();
    for i in 0..a {
        for j in 0..b {
            let (x, y, z) = (i as f64, j as f64, hgt(i, j));
            faces.push(([project(x, y, z), project(x + 1.0, y, z), project(x + 1.0, y + 1.0, z), project(x, y + 1.0, z)], "#f2d16b"));
            // wall facing +x, between this column and the next row
            let lower = if i + 1 < a { hgt(i + 1, j) } else { 0.0 };
            let mut k = lower;
            while k < z {
                let xf = x + 1.0;
                faces.push(([project(xf, y, k), project(xf, y + 1.0, k), project(xf, y + 1.0, k + 1.0), project(xf, y, k + 1.0)], "#5b8cc4"));
                k += 1.0;
            }
            let lower = if j + 1 < b { hgt(i, j + 1) } else { 0.0 };
            let mut k = lower;
            while k < z {
                let yf = y + 1.0;
                faces.push(([project(x, yf, k), project(x + 1.0, yf, k), project(x + 1.0, yf, k + 1.0), project(x, yf, k + 1.0)], "#c4584f"));
                k += 1.0;
            }
        }
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (f, _) in &faces {
        for &(x, y) in f {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    let scale = (800.0 / (x1 - x0).max(y1 - y0)).clamp(2.0, 40.0);
    let (mut c, w, h) = Canvas::new(x0, x1, y0, y1, scale);
    for (f, fill) in &faces {
        c.polygon(f, fill);
    }
    document(header, w, h, &c.body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiling_counts_faces() {
        let pi = PlanePartition::new(vec![vec![2, 1], vec![1]]).unwrap();
        let s = tiling_svg(&pi, 2, 2, "{}");
        assert_eq!(s.matches("#f2d16b").count(), 4);
        // each wall orientation shows the first row or column of heights
        assert_eq!(s.matches("#5b8cc4").count(), 2 + 1);
        assert_eq!(s.matches("#c4584f").count(), 2 + 1);
        assert!(s.starts_with("<?xml"));
    }

    #[test]
    fn header_is_comment_safe() {
        let s = document("a--b", 1.0, 1.0, "");
        assert!(!s.contains("a--b"));
    }
}
