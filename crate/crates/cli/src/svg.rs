//! Static SVG rendering of channel images and the admissible region.

use rebit::cp::{admissible_pentagon, working_frame};
use rebit::linalg::rotation_matrix;
use rebit::{image_ellipse, AffineChannel, Vec2};
use std::fmt::Write;

pub const SIZE: f64 = 512.0;
pub const RADIUS: f64 = 200.0;
const CENTER: f64 = SIZE / 2.0;

const STYLE: &str = "  <style>
    .disk { fill: none; stroke: #222; stroke-width: 1.5; }
    .axis { stroke: #999; stroke-width: 1; }
    .image { fill: #4a7ab5; fill-opacity: 0.25; stroke: #4a7ab5; stroke-width: 2; }
    .image.violation { fill: #c0392b; stroke: #c0392b; }
    .marker-0 { fill: #d62728; }
    .marker-1 { fill: #2ca02c; }
    .marker-2 { fill: #1f77b4; }
    .marker-3 { fill: #ff7f0e; }
    .region { fill: #4a7ab5; fill-opacity: 0.25; stroke: #4a7ab5; stroke-width: 2; }
    .frame { fill: none; stroke: #222; stroke-width: 1; }
    text { font-family: sans-serif; font-size: 14px; fill: #222; }
  </style>
";

fn px(x: f64) -> f64 {
    CENTER + RADIUS * x
}

fn py(y: f64) -> f64 {
    CENTER - RADIUS * y
}

// Fixed precision; -0.000 is printed as 0.000.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn header(out: &mut String, title: &str) {
    let _ = write!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n\
         <title>{title}</title>\n{STYLE}"
    );
}

fn axes(out: &mut String) {
    let (lo, hi) = (px(-1.15), px(1.15));
    let _ = writeln!(
        out,
        "  <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        num(lo),
        num(CENTER),
        num(hi),
        num(CENTER)
    );
    let _ = writeln!(
        out,
        "  <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        num(CENTER),
        num(lo),
        num(CENTER),
        num(hi)
    );
}

/// Bloch disk with the image of `c` drawn over it.
pub fn render_image(c: &AffineChannel, is_cp: bool) -> String {
    let mut out = String::new();
    header(&mut out, "Bloch disk image");
    axes(&mut out);
    let _ = writeln!(
        out,
        "  <circle class=\"disk\" cx=\"256\" cy=\"256\" r=\"200\"/>"
    );

    let e = image_ellipse(c);
    let class = if is_cp { "image" } else { "image violation" };
    let (a1, a2) = e.semi_axes;
    let (cx, cy) = (px(e.center.x), py(e.center.y));
    const EPS: f64 = 1e-12;
    if a1 <= EPS && a2 <= EPS {
        let _ = writeln!(
            out,
            "  <circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"4\"/>",
            num(cx),
            num(cy)
        );
    } else if a1 <= EPS || a2 <= EPS {
        let half = if a1 > EPS {
            Vec2::new(a1, 0.0)
        } else {
            Vec2::new(0.0, a2)
        };
        let d = rotation_matrix(e.tilt) * half;
        let (p, q) = (e.center + d, e.center - d);
        let _ = writeln!(
            out,
            "  <line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            num(px(p.x)),
            num(py(p.y)),
            num(px(q.x)),
            num(py(q.y))
        );
    } else {
        // SVG's y axis points down, so the tilt is negated
        let _ = writeln!(
            out,
            "  <ellipse class=\"{class}\" cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" transform=\"rotate({} {} {})\"/>",
            num(cx),
            num(cy),
            num(RADIUS * a1),
            num(RADIUS * a2),
            num(-e.tilt.to_degrees()),
            num(cx),
            num(cy)
        );
    }

    for k in 0..4 {
        let v = Vec2::from_polar(1.0, k as f64 * std::f64::consts::FRAC_PI_2);
        let _ = writeln!(
            out,
            "  <circle class=\"marker-{k}\" cx=\"{}\" cy=\"{}\" r=\"6\"/>",
            num(px(v.x)),
            num(py(v.y))
        );
    }

    let f = working_frame(c);
    let _ = writeln!(
        out,
        "  <text x=\"12\" y=\"24\">λ = ({}, {})</text>\n  <text x=\"12\" y=\"44\">w = ({}, {})</text>\n  <text x=\"12\" y=\"64\">{}</text>",
        num(f.lambda.0),
        num(f.lambda.1),
        num(c.w.x),
        num(c.w.y),
        if is_cp { "completely positive" } else { "not completely positive" }
    );
    out.push_str("</svg>\n");
    out
}

/// The admissible `(λ₁, λ₂)` pentagon inside the square `[−1, 1]²`.
pub fn render_region() -> String {
    let mut out = String::new();
    header(&mut out, "Admissible scale region");
    axes(&mut out);
    let _ = writeln!(
        out,
        "  <rect class=\"frame\" x=\"{}\" y=\"{}\" width=\"400\" height=\"400\"/>",
        num(px(-1.0)),
        num(py(1.0))
    );
    let vertices = admissible_pentagon();
    let points: Vec<String> = vertices
        .iter()
        .map(|&(x, y)| format!("{},{}", num(px(x)), num(py(y))))
        .collect();
    let _ = writeln!(
        out,
        "  <polygon class=\"region\" points=\"{}\"/>",
        points.join(" ")
    );
    for (x, y) in vertices {
        // push labels outward from the origin
        let dx = if x == 0.0 { 0.0 } else { x.signum() * 8.0 };
        let dy = -y.signum() * 8.0;
        let anchor = match x.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Less) => "end",
            Some(std::cmp::Ordering::Greater) => "start",
            _ => "middle",
        };
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\">({}, {})</text>",
            num(px(x) + dx),
            num(py(y) + dy + if y < 0.0 { 12.0 } else { 0.0 }),
            x as i32,
            y as i32
        );
    }
    let _ = writeln!(
        out,
        "  <text x=\"{}\" y=\"{}\">λ₁</text>\n  <text x=\"{}\" y=\"{}\">λ₂</text>",
        num(px(1.18)),
        num(CENTER + 5.0),
        num(CENTER + 6.0),
        num(py(1.18))
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(-0.0), "0.000");
        assert_eq!(num(-1e-9), "0.000");
        assert_eq!(num(-0.5), "-0.500");
        assert_eq!(num(456.0), "456.000");
    }

    #[test]
    fn identity_image_matches_disk() {
        let s = render_image(&AffineChannel::IDENTITY, true);
        assert!(s.contains(
            "<ellipse class=\"image\" cx=\"256.000\" cy=\"256.000\" rx=\"200.000\" ry=\"200.000\""
        ));
        for k in 0..4 {
            assert!(s.contains(&format!("class=\"marker-{k}\"")));
        }
    }

    #[test]
    fn degenerate_images() {
        let s = render_image(&AffineChannel::diagonal(0.0, 1.0, Vec2::ZERO), true);
        assert!(s.contains(
            "<line class=\"image\" x1=\"256.000\" y1=\"56.000\" x2=\"256.000\" y2=\"456.000\"/>"
        ));
        let s = render_image(&AffineChannel::diagonal(0.0, 0.0, Vec2::ZERO), true);
        assert!(s.contains("<circle class=\"image\" cx=\"256.000\" cy=\"256.000\" r=\"4\"/>"));
    }

    #[test]
    fn region_polygon() {
        let s = render_region();
        assert!(s.contains(
            "points=\"56.000,256.000 256.000,456.000 456.000,256.000 456.000,56.000 256.000,56.000\""
        ));
        assert_eq!(s, render_region());
    }
}
