//! Builds the four benchmark families for one base size and writes them as
//! instance files.
//!
//! ```text
//! cargo run --example generate_benchmarks -- [n0] [out_dir]
//! ```

use std::path::PathBuf;

use cbpp::benchgen::{generate, write_instance, BenchmarkSpec, BinSideTable, CopyMode, RadiusLaw};

fn main() -> cbpp::Result<()> {
    let mut args = std::env::args().skip(1);
    let n0: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let out: PathBuf = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("cbpp-benchmarks"));
    std::fs::create_dir_all(&out).map_err(|e| cbpp::Error::InvalidArgument(e.to_string()))?;

    // Bin sides normally come from a table of record single-bin packings.
    // These are placeholders, a little over twice the largest radius.
    let table = BinSideTable::from_toml_str(&format!(
        "[linear]\n{n0} = {}\n[sqrt]\n{n0} = {}\n",
        2.5 * n0 as f64,
        2.5 * (n0 as f64).sqrt()
    ))?;

    for law in [RadiusLaw::Linear, RadiusLaw::Sqrt] {
        for mode in [CopyMode::Fixed, CopyMode::Random] {
            let spec = BenchmarkSpec {
                n0,
                law,
                mode,
                bin_side: table.lookup(law, n0).expect("table has this n0"),
                seed: 42,
            };
            let instance = generate(&spec)?;
            let path = out.join(format!("{}.json", spec.label()));
            write_instance(&instance, &path)?;
            println!(
                "{:32} {:3} circles, L = {}",
                spec.label(),
                instance.len(),
                spec.bin_side
            );
        }
    }
    println!("written to {}", out.display());
    Ok(())
}
