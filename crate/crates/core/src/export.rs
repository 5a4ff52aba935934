//! SVG and OBJ renderings of framework patches. Output is byte-stable:
//! element order follows the patch and numbers use fixed decimals.

use std::fmt::Write as _;

use crate::model::FrameworkPatch;
use crate::{Error, Result};

/// Fill colors for vertex orbits, cycled.
const ORBIT_COLORS: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Svg,
    Obj,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(ExportFormat::Svg),
            "obj" => Ok(ExportFormat::Obj),
            other => Err(Error::usage(format!("unknown export format {other:?}; use svg or obj"))),
        }
    }
}

/// Drawing options in framework length units, except `scale`.
#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Pixels per length unit.
    pub scale: f64,
    pub stroke_width: f64,
    pub vertex_radius: f64,
    pub margin: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            scale: 100.0,
            stroke_width: 0.03,
            vertex_radius: 0.06,
            margin: 0.5,
        }
    }
}

pub fn export_patch(patch: &FrameworkPatch, format: ExportFormat, options: &SvgOptions) -> Result<String> {
    match format {
        ExportFormat::Svg => patch_to_svg(patch, options),
        ExportFormat::Obj => patch_to_obj(patch),
    }
}

/// Bars as segments, vertices as circles colored by orbit, periodicity
/// generators as red arrows from the origin.
pub fn patch_to_svg(patch: &FrameworkPatch, o: &SvgOptions) -> Result<String> {
    if patch.dim != 2 {
        return Err(Error::usage("SVG export needs a planar patch; use obj for d = 3"));
    }
    if patch.vertices.is_empty() {
        return Err(Error::usage("patch is empty"));
    }
    let xs = patch.vertices.iter().map(|v| v.position[0]).chain(patch.generators.iter().map(|g| g[0])).chain([0.0]);
    let ys = patch.vertices.iter().map(|v| v.position[1]).chain(patch.generators.iter().map(|g| g[1])).chain([0.0]);
    let (min_x, max_x) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let (min_y, max_y) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    // SVG's y axis points down.
    let px = |x: f64| (x - min_x + o.margin) * o.scale;
    let py = |y: f64| (max_y - y + o.margin) * o.scale;
    let width = (max_x - min_x + 2.0 * o.margin) * o.scale;
    let height = (max_y - min_y + 2.0 * o.margin) * o.scale;
    let stroke = o.stroke_width * o.scale;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(
        s,
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#d62728"/></marker></defs>"##
    );
    let _ = writeln!(s, r##"<g id="bars" stroke="#222222" stroke-width="{stroke:.3}" stroke-linecap="round">"##);
    for bar in &patch.bars {
        let (a, b) = (&patch.vertices[bar.a].position, &patch.vertices[bar.b].position);
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" data-orbit="{}"/>"#,
            px(a[0]),
            py(a[1]),
            px(b[0]),
            py(b[1]),
            bar.orbit
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g id="vertices">"#);
    for v in &patch.vertices {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="{}" data-orbit="{}"/>"#,
            px(v.position[0]),
            py(v.position[1]),
            o.vertex_radius * o.scale,
            ORBIT_COLORS[v.orbit % ORBIT_COLORS.len()],
            v.orbit
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r##"<g id="generators" stroke="#d62728" stroke-width="{:.3}" marker-end="url(#arrow)">"##,
        stroke * 1.5
    );
    for g in &patch.generators {
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            px(0.0),
            py(0.0),
            px(g[0]),
            py(g[1])
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

/// Wavefront OBJ with one `v` per vertex (`z = 0` for planar patches) and
/// one `l` line element per bar, 1-based.
pub fn patch_to_obj(patch: &FrameworkPatch) -> Result<String> {
    if patch.vertices.is_empty() {
        return Err(Error::usage("patch is empty"));
    }
    if !(2..=3).contains(&patch.dim) {
        return Err(Error::usage("OBJ export needs d = 2 or 3"));
    }
    let mut s = String::new();
    let _ = writeln!(s, "# periodic framework patch: {} vertices, {} bars", patch.vertices.len(), patch.bars.len());
    for v in &patch.vertices {
        let z = v.position.get(2).copied().unwrap_or(0.0);
        let _ = writeln!(s, "v {:.9} {:.9} {:.9}", v.position[0], v.position[1], z);
    }
    for b in &patch.bars {
        let _ = writeln!(s, "l {} {}", b.a + 1, b.b + 1);
    }
    Ok(s)
}
