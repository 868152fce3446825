//! Static SVG heatmaps for phase grids.
//!
//! One panel per grid: grayscale cells (black = rate 0, white = rate 1)
//! over the (m, k) plane with m horizontal and k vertical, threshold
//! curves in red, reference lines in green. The output is
//! self-contained SVG 1.1 markup with one `<rect>` per cell and one
//! `<polyline>` per curve.

use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::phase::PhaseGrid;

/// A data-space curve overlaid on a panel: points are (m, k).
#[derive(Clone, Debug)]
pub struct Curve {
    pub points: Vec<(f64, f64)>,
    /// Stroke color, e.g. "#FF0000".
    pub color: String,
    pub dashed: bool,
    pub label: String,
}

impl Curve {
    /// Threshold curve styling (red; dashed for the baseline overlay).
    pub fn threshold(points: Vec<(f64, f64)>, dashed: bool, label: impl Into<String>) -> Curve {
        Curve { points, color: "#FF0000".to_string(), dashed, label: label.into() }
    }

    /// Reference-line styling (dashed green).
    pub fn reference(points: Vec<(f64, f64)>, label: impl Into<String>) -> Curve {
        Curve { points, color: "#008000".to_string(), dashed: true, label: label.into() }
    }
}

const CELL: f64 = 18.0;
const MARGIN_LEFT: f64 = 56.0;
const MARGIN_BOTTOM: f64 = 44.0;
const MARGIN_TOP: f64 = 28.0;
const MARGIN_RIGHT: f64 = 16.0;
const PANEL_GAP: f64 = 24.0;

/// Grayscale fill for a rate in [0, 1]: #000000 at 0, #FFFFFF at 1.
pub fn rate_color(rate: f64) -> String {
    let v = (rate.clamp(0.0, 1.0) * 255.0).round() as u8;
    format!("#{v:02X}{v:02X}{v:02X}")
}

struct PanelGeometry {
    m_slots: Vec<usize>,
    k_min: f64,
    k_max: f64,
    width: f64,
    height: f64,
}

impl PanelGeometry {
    fn new(grid: &PhaseGrid) -> Self {
        let m_slots = grid.m_values.clone();
        let all_k: Vec<usize> = grid.k_grids.iter().flatten().copied().collect();
        let k_min = all_k.iter().min().copied().unwrap_or(0) as f64 - 1.0;
        let k_max = all_k.iter().max().copied().unwrap_or(1) as f64 + 1.0;
        let width = m_slots.len() as f64 * CELL;
        let height = (k_max - k_min) * CELL * 0.6;
        PanelGeometry { m_slots, k_min, k_max, width, height }
    }

    /// Horizontal center of the column for measurement count m, by slot.
    fn x_of_m(&self, m: f64) -> f64 {
        // Interpolate between slot centers so curves at intermediate m
        // stay aligned with the columns.
        let slots = &self.m_slots;
        if slots.len() == 1 {
            return CELL / 2.0;
        }
        let first = slots[0] as f64;
        let last = *slots.last().expect("nonempty") as f64;
        let t = ((m - first) / (last - first)).clamp(0.0, 1.0);
        CELL / 2.0 + t * (self.width - CELL)
    }

    /// Vertical position for sparsity k (larger k is higher; SVG y axis
    /// points down, so invert).
    fn y_of_k(&self, k: f64) -> f64 {
        let t = (k - self.k_min) / (self.k_max - self.k_min);
        self.height * (1.0 - t)
    }
}

fn render_panel(out: &mut String, grid: &PhaseGrid, curves: &[Curve], x0: f64, y0: f64) {
    let geo = PanelGeometry::new(grid);
    let title = match grid.alpha {
        Some(a) => format!("{} alpha={} w={}", grid.method, a, grid.weight),
        None => grid.method.clone(),
    };
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" font-family=\"sans-serif\">{}</text>\n",
        x0 + MARGIN_LEFT,
        y0 + MARGIN_TOP - 10.0,
        title
    ));

    // Cells.
    for (mi, _) in grid.m_values.iter().enumerate() {
        let step = if grid.k_grids[mi].len() >= 2 {
            (grid.k_grids[mi][1] - grid.k_grids[mi][0]) as f64
        } else {
            1.0
        };
        for (ki, &k) in grid.k_grids[mi].iter().enumerate() {
            let rate = grid.rates[mi][ki];
            let cx = x0 + MARGIN_LEFT + mi as f64 * CELL;
            let half = step / 2.0;
            let y_top = y0 + MARGIN_TOP + geo.y_of_k(k as f64 + half);
            let y_bot = y0 + MARGIN_TOP + geo.y_of_k(k as f64 - half);
            out.push_str(&format!(
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>\n",
                cx,
                y_top,
                CELL,
                (y_bot - y_top).max(0.5),
                rate_color(rate)
            ));
        }
    }

    // Axes.
    let axis_y = y0 + MARGIN_TOP + geo.height + 2.0;
    out.push_str(&format!(
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#000000\"/>\n",
        x0 + MARGIN_LEFT,
        axis_y,
        x0 + MARGIN_LEFT + geo.width,
        axis_y
    ));
    out.push_str(&format!(
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#000000\"/>\n",
        x0 + MARGIN_LEFT - 2.0,
        y0 + MARGIN_TOP,
        x0 + MARGIN_LEFT - 2.0,
        axis_y
    ));
    for (mi, &m) in grid.m_values.iter().enumerate() {
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"9\" font-family=\"sans-serif\" text-anchor=\"middle\">{}</text>\n",
            x0 + MARGIN_LEFT + mi as f64 * CELL + CELL / 2.0,
            axis_y + 12.0,
            m
        ));
    }
    for k in [geo.k_min + 1.0, ((geo.k_min + geo.k_max) / 2.0).round(), geo.k_max - 1.0] {
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"9\" font-family=\"sans-serif\" text-anchor=\"end\">{}</text>\n",
            x0 + MARGIN_LEFT - 6.0,
            y0 + MARGIN_TOP + geo.y_of_k(k) + 3.0,
            k
        ));
    }
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"middle\">m</text>\n",
        x0 + MARGIN_LEFT + geo.width / 2.0,
        axis_y + 28.0
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" font-family=\"sans-serif\">k</text>\n",
        x0 + 10.0,
        y0 + MARGIN_TOP + geo.height / 2.0
    ));

    // Curves in data coordinates.
    for curve in curves {
        if curve.points.is_empty() {
            continue;
        }
        let pts: Vec<String> = curve
            .points
            .iter()
            .map(|&(m, k)| {
                format!(
                    "{:.2},{:.2}",
                    x0 + MARGIN_LEFT + geo.x_of_m(m),
                    y0 + MARGIN_TOP + geo.y_of_k(k)
                )
            })
            .collect();
        let dash = if curve.dashed { " stroke-dasharray=\"6 3\"" } else { "" };
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{}><title>{}</title></polyline>\n",
            pts.join(" "),
            curve.color,
            dash,
            curve.label
        ));
    }
}

/// Renders panels side by side; `curves_per_grid` must be empty or have
/// one entry per grid.
pub fn render_svg(grids: &[PhaseGrid], curves_per_grid: &[Vec<Curve>]) -> String {
    let no_curves: Vec<Curve> = Vec::new();
    let mut panel_sizes = Vec::new();
    for g in grids {
        let geo = PanelGeometry::new(g);
        panel_sizes.push((
            MARGIN_LEFT + geo.width + MARGIN_RIGHT,
            MARGIN_TOP + geo.height + MARGIN_BOTTOM,
        ));
    }
    let total_w: f64 = panel_sizes.iter().map(|p| p.0).sum::<f64>()
        + PANEL_GAP * grids.len().saturating_sub(1) as f64;
    let total_h: f64 = panel_sizes.iter().map(|p| p.1).fold(0.0, f64::max);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n",
        total_w.max(1.0),
        total_h.max(1.0),
        total_w.max(1.0),
        total_h.max(1.0)
    );
    let mut x = 0.0;
    for (i, g) in grids.iter().enumerate() {
        let curves = curves_per_grid.get(i).unwrap_or(&no_curves);
        render_panel(&mut out, g, curves, x, 0.0);
        x += panel_sizes[i].0 + PANEL_GAP;
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(path: &Path, grids: &[PhaseGrid], curves_per_grid: &[Vec<Curve>]) -> Result<()> {
    fs::write(path, render_svg(grids, curves_per_grid))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two_grid() -> PhaseGrid {
        PhaseGrid {
            method: "l1".to_string(),
            alpha: None,
            weight: 1.0,
            m_values: vec![10, 20],
            k_grids: vec![vec![1, 2], vec![1, 2]],
            successes: vec![vec![0, 2], vec![2, 0]],
            degenerate: vec![vec![0, 0], vec![0, 0]],
            trials_run: vec![vec![2, 2], vec![2, 2]],
            rates: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        }
    }

    #[test]
    fn color_endpoints_exact() {
        assert_eq!(rate_color(0.0), "#000000");
        assert_eq!(rate_color(1.0), "#FFFFFF");
        assert_eq!(rate_color(0.5), "#808080");
    }

    #[test]
    fn four_cells_with_exact_fills() {
        let svg = render_svg(&[two_by_two_grid()], &[]);
        assert_eq!(svg.matches("<rect").count(), 4);
        assert_eq!(svg.matches("fill=\"#000000\"").count(), 2);
        assert_eq!(svg.matches("fill=\"#FFFFFF\"").count(), 2);
        assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""));
        assert!(svg.trim_end().ends_with("</svg>"));
        // Axis labels present.
        assert!(svg.contains(">m</text>"));
        assert!(svg.contains(">k</text>"));
    }

    #[test]
    fn curves_rendered_with_styles() {
        let grid = two_by_two_grid();
        let curves = vec![vec![
            Curve::threshold(vec![(10.0, 1.0), (20.0, 2.0)], false, "threshold"),
            Curve::reference(vec![(10.0, 1.5), (20.0, 1.5)], "reference"),
        ]];
        let svg = render_svg(&[grid], &curves);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("stroke=\"#FF0000\""));
        assert!(svg.contains("stroke=\"#008000\""));
        assert!(svg.contains("stroke-dasharray"));
    }

    #[test]
    fn empty_input_is_well_formed() {
        let svg = render_svg(&[], &[]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
