//! Packs a benchmark instance and draws the result as SVG.
//!
//! ```text
//! cargo run --example render_svg -- [output.svg]
//! ```

use std::sync::Arc;

use cbpp::benchgen::{generate, BenchmarkSpec, CopyMode, RadiusLaw};
use cbpp::gacoa_solve;
use cbpp::render::{render_svg, RenderOptions};

fn main() -> cbpp::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("cbpp-layout.svg"));
    let spec = BenchmarkSpec {
        n0: 8,
        law: RadiusLaw::Linear,
        mode: CopyMode::Fixed,
        bin_side: 28.0,
        seed: 0,
    };
    let instance = Arc::new(generate(&spec)?);
    let layout = gacoa_solve(&instance);

    let options = RenderOptions {
        pixels_per_unit: 8.0,
        bins_per_row: 3,
        ..RenderOptions::default()
    };
    let svg = render_svg(&layout, &options)?;
    std::fs::write(&out, svg).map_err(|e| cbpp::Error::InvalidArgument(e.to_string()))?;
    println!("{} bins drawn to {}", layout.bins_used(), out.display());
    Ok(())
}
