//! Deterministic SVG rendering of the polytope construction.
//!
//! Four panels, left to right: the traced loop on the integer grid, its
//! convex hull, the hull with a unit square planted on every vertex of the
//! eroded polytope (a picture of the Minkowski decomposition), and the
//! final polytope with its vertices marked by `ft-vertex` circles.

use crate::polytope::{
    convex_hull, erode_unit_square, ft_polytope, trace_loop, LatticePoint, LatticePolytope,
    PolytopeClass, PolytopeError,
};
use crate::word::Word;
use std::fmt::Write as _;

/// Pixels per lattice unit.
const SCALE: i64 = 20;
/// Margin around each panel's content, in lattice units.
const MARGIN: i64 = 1;
/// Vertical room reserved for panel captions, in pixels.
const CAPTION: i64 = 24;
/// Horizontal gap between panels, in pixels.
const GAP: i64 = 16;

struct Panel {
    caption: &'static str,
    min: LatticePoint,
    max: LatticePoint,
    body: String,
}

impl Panel {
    fn width_px(&self) -> i64 {
        (self.max.x - self.min.x + 2 * MARGIN) * SCALE
    }

    fn height_px(&self) -> i64 {
        (self.max.y - self.min.y + 2 * MARGIN) * SCALE
    }

    /// Lattice point to pixel coordinates; the y axis is flipped so the
    /// lattice y grows upward on screen.
    fn px(&self, p: LatticePoint) -> (i64, i64) {
        (
            (p.x - self.min.x + MARGIN) * SCALE,
            (self.max.y - p.y + MARGIN) * SCALE,
        )
    }
}

fn bounds(points: &[LatticePoint]) -> (LatticePoint, LatticePoint) {
    let min_x = points.iter().map(|p| p.x).min().unwrap();
    let max_x = points.iter().map(|p| p.x).max().unwrap();
    let min_y = points.iter().map(|p| p.y).min().unwrap();
    let max_y = points.iter().map(|p| p.y).max().unwrap();
    (
        LatticePoint::new(min_x, min_y),
        LatticePoint::new(max_x, max_y),
    )
}

fn new_panel(caption: &'static str, points: &[LatticePoint]) -> Panel {
    let (min, max) = bounds(points);
    Panel {
        caption,
        min,
        max,
        body: String::new(),
    }
}

fn draw_grid(panel: &mut Panel) {
    let w = panel.width_px();
    let h = panel.height_px();
    let _ = write!(
        panel.body,
        r##"<rect x="0" y="0" width="{w}" height="{h}" fill="white" stroke="#cccccc"/>"##
    );
    for gx in (panel.min.x - MARGIN)..=(panel.max.x + MARGIN) {
        let (x, _) = panel.px(LatticePoint::new(gx, 0));
        let _ = write!(
            panel.body,
            r##"<line x1="{x}" y1="0" x2="{x}" y2="{h}" stroke="#eeeeee"/>"##
        );
    }
    for gy in (panel.min.y - MARGIN)..=(panel.max.y + MARGIN) {
        let (_, y) = panel.px(LatticePoint::new(0, gy));
        let _ = write!(
            panel.body,
            r##"<line x1="0" y1="{y}" x2="{w}" y2="{y}" stroke="#eeeeee"/>"##
        );
    }
}

fn point_list(panel: &Panel, points: &[LatticePoint]) -> String {
    let mut s = String::new();
    for (i, &p) in points.iter().enumerate() {
        let (x, y) = panel.px(p);
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x},{y}");
    }
    s
}

fn draw_loop(panel: &mut Panel, loop_points: &[LatticePoint]) {
    let pts = point_list(panel, loop_points);
    let _ = write!(
        panel.body,
        r##"<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##
    );
    let mut seen = std::collections::BTreeSet::new();
    for &p in loop_points {
        if seen.insert(p) {
            let (x, y) = panel.px(p);
            let _ = write!(
                panel.body,
                r##"<circle cx="{x}" cy="{y}" r="3" fill="#1f77b4"/>"##
            );
        }
    }
    let (x, y) = panel.px(loop_points[0]);
    let _ = write!(
        panel.body,
        r##"<circle cx="{x}" cy="{y}" r="5" fill="none" stroke="#1f77b4" stroke-width="2"/>"##
    );
}

fn draw_polytope(panel: &mut Panel, poly: &LatticePolytope, color: &str, vertex_class: &str) {
    let verts = poly.vertices();
    match poly.classify() {
        PolytopeClass::Point => {}
        PolytopeClass::Segment => {
            let (x1, y1) = panel.px(verts[0]);
            let (x2, y2) = panel.px(verts[1]);
            let _ = write!(
                panel.body,
                r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="2"/>"##
            );
        }
        PolytopeClass::TwoDimensional => {
            let pts = point_list(panel, verts);
            let _ = write!(
                panel.body,
                r##"<polygon points="{pts}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="2"/>"##
            );
        }
    }
    for &v in verts {
        let (x, y) = panel.px(v);
        let class_attr = if vertex_class.is_empty() {
            String::new()
        } else {
            format!(r#" class="{vertex_class}""#)
        };
        let _ = write!(
            panel.body,
            r##"<circle{class_attr} cx="{x}" cy="{y}" r="4" fill="{color}"/>"##
        );
    }
}

fn draw_unit_square_at(panel: &mut Panel, v: LatticePoint) {
    // The square spans [v.x, v.x+1] x [v.y, v.y+1]; its top-left pixel
    // corner is the flipped (v.x, v.y+1).
    let (x, y) = panel.px(LatticePoint::new(v.x, v.y + 1));
    let s = SCALE;
    let _ = write!(
        panel.body,
        r##"<rect x="{x}" y="{y}" width="{s}" height="{s}" fill="#2ca02c" fill-opacity="0.25" stroke="#2ca02c"/>"##
    );
}

/// Render the full construction for `w` as a standalone SVG document.
///
/// Fails exactly when [`ft_polytope`] does. The final panel marks each
/// vertex of the polytope with a `<circle class="ft-vertex">`.
pub fn render_svg(w: &Word) -> Result<String, PolytopeError> {
    // Validate and compute the end result first so errors surface before
    // any drawing work.
    let final_poly = ft_polytope(w)?;
    let (root, _) = w.max_root()?;
    let (_, core) = root.cyclic_reduce();
    let loop_points = trace_loop(&core.as_word());
    let hull = convex_hull(&loop_points)?;
    let eroded = erode_unit_square(&hull)?;

    let mut trace_panel = new_panel("trace", &loop_points);
    draw_grid(&mut trace_panel);
    draw_loop(&mut trace_panel, &loop_points);

    let mut hull_panel = new_panel("hull", &loop_points);
    draw_grid(&mut hull_panel);
    draw_polytope(&mut hull_panel, &hull, "#ff7f0e", "");

    let mut summand_panel = new_panel("summand", &loop_points);
    draw_grid(&mut summand_panel);
    draw_polytope(&mut summand_panel, &hull, "#ff7f0e", "");
    for &v in eroded.vertices() {
        draw_unit_square_at(&mut summand_panel, v);
    }

    let mut poly_panel = new_panel("polytope", final_poly.vertices());
    draw_grid(&mut poly_panel);
    draw_polytope(&mut poly_panel, &final_poly, "#d62728", "ft-vertex");

    let panels = [trace_panel, hull_panel, summand_panel, poly_panel];
    let total_w: i64 =
        panels.iter().map(Panel::width_px).sum::<i64>() + GAP * (panels.len() as i64 - 1);
    let total_h: i64 = panels.iter().map(Panel::height_px).max().unwrap() + CAPTION;

    let mut svg = String::new();
    svg.push_str(r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    svg.push('\n');
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{total_h}" viewBox="0 0 {total_w} {total_h}">"#
    );
    let _ = write!(svg, "<title>polytope of {w}</title>");
    let mut ox = 0;
    for panel in &panels {
        let _ = write!(
            svg,
            r##"<text x="{ox}" y="16" font-family="sans-serif" font-size="12" fill="#333333">{}</text>"##,
            panel.caption
        );
        let _ = write!(svg, r#"<g transform="translate({ox},{CAPTION})">"#);
        svg.push_str(&panel.body);
        svg.push_str("</g>");
        ox += panel.width_px() + GAP;
    }
    svg.push_str("</svg>");
    svg.push('\n');
    Ok(svg)
}
