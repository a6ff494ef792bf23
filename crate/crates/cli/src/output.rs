//! Report schemas and figure emission. Everything written here is a pure
//! function of (spec, config, seed): no timestamps, no machine identifiers,
//! fixed number formatting.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use polyham::polytope::SectionPolytope;
use polyham::rational::rat_to_f64;
use polyham::smoothing::LevelSetSample;

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Format a level value for file names: trailing zeros trimmed.
pub fn format_delta(delta: f64) -> String {
    let mut s = format!("{delta:.6}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

#[derive(Serialize)]
pub struct InfoReport {
    pub schema: &'static str,
    pub dim: usize,
    pub n_rays: usize,
    pub complete: bool,
    pub strictly_concave: bool,
    pub r: u64,
    pub vertices: Vec<Vec<String>>,
    pub lattice_point_count: usize,
    pub average_lattice_point: Vec<String>,
    pub warnings: Vec<String>,
}

/// Level-set CSV: one row per direction, empty radius/point fields when the
/// level is not reached along that direction.
pub fn write_levelset_csv(path: &Path, sample: &LevelSetSample) -> Result<()> {
    let n = sample
        .directions
        .first()
        .map(|v| v.len())
        .unwrap_or_default();
    let mut file = std::fs::File::create(path)?;
    let mut header = String::from("direction_index");
    for k in 1..=n {
        header.push_str(&format!(",v_{k}"));
    }
    header.push_str(",t");
    for k in 1..=n {
        header.push_str(&format!(",m_{k}"));
    }
    writeln!(file, "{header}")?;
    for (i, v) in sample.directions.iter().enumerate() {
        let mut row = format!("{i}");
        for c in v {
            row.push_str(&format!(",{c}"));
        }
        match (&sample.radii[i], &sample.points[i]) {
            (Some(t), Some(m)) => {
                row.push_str(&format!(",{t}"));
                for c in m {
                    row.push_str(&format!(",{c}"));
                }
            }
            _ => {
                row.push(',');
                for _ in 0..n {
                    row.push(',');
                }
            }
        }
        writeln!(file, "{row}")?;
    }
    Ok(())
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Two-dimensional figure: the polytope outline with one level curve per δ,
/// the δ ≥ 1 curves dashed. Coordinates are written with fixed precision so
/// identical inputs give identical bytes.
pub fn write_levelset_svg(
    path: &Path,
    p: &SectionPolytope,
    samples: &[LevelSetSample],
) -> Result<()> {
    assert_eq!(p.dim(), 2, "SVG emission is two-dimensional only");
    // ordered outline: vertices sorted by angle around the centroid
    let verts: Vec<(f64, f64)> = p
        .vertices()
        .iter()
        .map(|v| (rat_to_f64(&v[0]), rat_to_f64(&v[1])))
        .collect();
    let cx = verts.iter().map(|v| v.0).sum::<f64>() / verts.len() as f64;
    let cy = verts.iter().map(|v| v.1).sum::<f64>() / verts.len() as f64;
    let mut outline = verts.clone();
    outline.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.partial_cmp(&tb).unwrap()
    });

    let min_x = verts.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
    let max_x = verts.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = verts.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let max_y = verts.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let margin = 0.1 * (max_x - min_x).max(max_y - min_y);
    let scale = 400.0 / (max_x - min_x).max(max_y - min_y);
    // SVG y-axis points down; flip it
    let tx = |x: f64| (x - min_x + margin) * scale;
    let ty = |y: f64| (max_y - y + margin) * scale;
    let width = (max_x - min_x + 2.0 * margin) * scale;
    let height = (max_y - min_y + 2.0 * margin) * scale;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    ));
    let pts: Vec<String> = outline
        .iter()
        .map(|&(x, y)| format!("{:.4},{:.4}", tx(x), ty(y)))
        .collect();
    svg.push_str(&format!(
        "  <polygon points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
        pts.join(" ")
    ));

    for (idx, sample) in samples.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let dash = if sample.delta >= 1.0 {
            " stroke-dasharray=\"8 5\""
        } else {
            ""
        };
        // split the curve at Absent directions; close it when there are none
        let mut segments: Vec<Vec<String>> = vec![Vec::new()];
        for point in &sample.points {
            match point {
                Some(m) => segments
                    .last_mut()
                    .unwrap()
                    .push(format!("{:.4},{:.4}", tx(m[0]), ty(m[1]))),
                None => {
                    if !segments.last().unwrap().is_empty() {
                        segments.push(Vec::new());
                    }
                }
            }
        }
        let closed = sample.points.iter().all(|p| p.is_some());
        for seg in segments.iter().filter(|s| s.len() > 1) {
            let mut pts = seg.clone();
            if closed {
                pts.push(seg[0].clone());
            }
            svg.push_str(&format!(
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{dash}/>\n",
                pts.join(" ")
            ));
        }
    }
    svg.push_str("</svg>\n");
    std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
