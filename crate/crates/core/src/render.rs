//! SVG pictures of layouts and CSV tables comparing solver runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::model::{validate, Layout};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub pixels_per_unit: f64,
    pub label_densities: bool,
    pub bins_per_row: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            pixels_per_unit: 10.0,
            label_densities: true,
            bins_per_row: 4,
        }
    }
}

/// Screen placement of one bin: world `(x, y)` maps to
/// `((origin_x + x) * s, (origin_y + L - y) * s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinFrame {
    pub origin_x: f64,
    pub origin_y: f64,
    pub bin_side: f64,
    pub scale: f64,
}

impl BinFrame {
    pub fn to_screen(&self, x: f64, y: f64) -> (f64, f64) {
        (
            (self.origin_x + x) * self.scale,
            (self.origin_y + self.bin_side - y) * self.scale,
        )
    }
}

/// Frame of the `index`-th (0-based) used bin.
pub fn bin_frame(index: usize, bin_side: f64, options: &RenderOptions) -> BinFrame {
    let gap = 0.1 * bin_side;
    let per_row = options.bins_per_row.max(1);
    let (row, col) = (index / per_row, index % per_row);
    BinFrame {
        origin_x: gap + col as f64 * (bin_side + gap),
        origin_y: gap + row as f64 * (bin_side + 2.0 * gap),
        bin_side,
        scale: options.pixels_per_unit,
    }
}

/// Screen coordinate rounded to a thousandth of a pixel.
fn px(v: f64) -> String {
    let text = format!("{v:.3}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    if text == "-0" {
        "0".into()
    } else {
        text.into()
    }
}

/// Draws every used bin as a square with its circles to scale. Infeasible
/// layouts are refused.
pub fn render_svg(layout: &Layout, options: &RenderOptions) -> Result<String> {
    if !(options.pixels_per_unit > 0.0) || options.bins_per_row == 0 {
        return Err(Error::InvalidArgument(
            "render scale and bins per row must be positive".into(),
        ));
    }
    let report = validate(layout, layout.instance().default_tolerance());
    if !report.is_ok() {
        return Err(Error::Infeasible(report));
    }
    let layout = layout.compacted();
    let side = layout.bin_side();
    let s = options.pixels_per_unit;
    let bins = layout.bins_used();
    let cols = bins.min(options.bins_per_row);
    let rows = bins.div_ceil(options.bins_per_row);
    let gap = 0.1 * side;
    let width = (gap + cols as f64 * (side + gap)) * s;
    let height = (gap + rows as f64 * (side + 2.0 * gap)) * s;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\">",
        px(width),
        px(height)
    );
    for (index, bin) in layout.used_bins().into_iter().enumerate() {
        let frame = bin_frame(index, side, options);
        let (x, y) = frame.to_screen(0.0, side);
        let _ = writeln!(
            svg,
            "<rect id=\"bin{bin}\" x=\"{}\" y=\"{}\" width=\"{w}\" height=\"{w}\" fill=\"none\" stroke=\"black\"/>",
            px(x),
            px(y),
            w = px(side * s)
        );
        for c in layout.bin(bin) {
            let (cx, cy) = frame.to_screen(c.center.x, c.center.y);
            let _ = writeln!(
                svg,
                "<circle id=\"c{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#9ecae1\" stroke=\"#3182bd\"/>",
                c.id,
                px(cx),
                px(cy),
                px(c.radius * s)
            );
        }
        if options.label_densities {
            let density = layout.bin_density(bin)?;
            let (tx, ty) = frame.to_screen(0.0, -0.7 * gap);
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" font-size=\"{}\">bin {bin}: {density:.4}</text>",
                px(tx),
                px(ty),
                px(0.5 * gap * s)
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// One solver run in a comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRecord {
    pub instance: String,
    pub algorithm: String,
    pub seed: Option<u64>,
    pub objective: f64,
    pub bins_used: usize,
    pub bin_densities: Vec<f64>,
    pub wall_time: Duration,
}

const BASELINE: &str = "gacoa";

fn baselines(results: &[ComparisonRecord]) -> BTreeMap<&str, &ComparisonRecord> {
    let mut map = BTreeMap::new();
    for r in results {
        if r.algorithm.eq_ignore_ascii_case(BASELINE) {
            map.entry(r.instance.as_str()).or_insert(r);
        }
    }
    map
}

/// `f - f_gacoa` for a non-baseline row whose instance has a baseline row.
pub fn improvement_over_baseline(
    record: &ComparisonRecord,
    results: &[ComparisonRecord],
) -> Option<f64> {
    if record.algorithm.eq_ignore_ascii_case(BASELINE) {
        return None;
    }
    baselines(results)
        .get(record.instance.as_str())
        .map(|g| record.objective - g.objective)
}

/// RFC 4180 table with one row per run. Density columns are padded to the
/// largest bin count; the improvement column is filled for non-baseline rows
/// whose instance also has a greedy row.
pub fn emit_comparison_csv(results: &[ComparisonRecord]) -> Result<String> {
    let max_bins = results
        .iter()
        .map(|r| r.bin_densities.len())
        .max()
        .unwrap_or(0);
    let base = baselines(results);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = [
        "instance",
        "algorithm",
        "seed",
        "bins_used",
        "objective",
        "f_a_minus_f_g",
        "bin_reduction",
        "wall_time_s",
    ]
    .map(String::from)
    .to_vec();
    header.extend((1..=max_bins).map(|k| format!("bin_{k}")));
    w.write_record(&header)?;
    for r in results {
        let baseline = (!r.algorithm.eq_ignore_ascii_case(BASELINE))
            .then(|| base.get(r.instance.as_str()))
            .flatten();
        let mut row = vec![
            r.instance.clone(),
            r.algorithm.clone(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.bins_used.to_string(),
            r.objective.to_string(),
            baseline
                .map(|g| (r.objective - g.objective).to_string())
                .unwrap_or_default(),
            baseline
                .map(|g| {
                    if r.bins_used < g.bins_used {
                        "yes"
                    } else {
                        "no"
                    }
                })
                .unwrap_or_default()
                .to_string(),
            r.wall_time.as_secs_f64().to_string(),
        ];
        row.extend((0..max_bins).map(|k| {
            r.bin_densities
                .get(k)
                .map(|d| d.to_string())
                .unwrap_or_default()
        }));
        w.write_record(&row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io("<comparison csv>", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Aggregates over a comparison table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComparisonSummary {
    /// Mean `f - f_gacoa` per non-baseline algorithm.
    pub mean_improvement: BTreeMap<String, f64>,
    /// `(instance, algorithm)` pairs that use fewer bins than the greedy row.
    pub bin_reductions: Vec<(String, String)>,
}

pub fn summarize(results: &[ComparisonRecord]) -> ComparisonSummary {
    let base = baselines(results);
    let mut sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    let mut summary = ComparisonSummary::default();
    for r in results {
        if r.algorithm.eq_ignore_ascii_case(BASELINE) {
            continue;
        }
        let Some(g) = base.get(r.instance.as_str()) else {
            continue;
        };
        let e = sums.entry(r.algorithm.clone()).or_insert((0.0, 0));
        e.0 += r.objective - g.objective;
        e.1 += 1;
        if r.bins_used < g.bins_used {
            summary
                .bin_reductions
                .push((r.instance.clone(), r.algorithm.clone()));
        }
    }
    summary.mean_improvement = sums
        .into_iter()
        .map(|(alg, (sum, n))| (alg, sum / n as f64))
        .collect();
    summary
}
