//! Runs the greedy packer and both searches on a few instances in parallel
//! and prints the comparison table with its summary.

use std::sync::Arc;

use rayon::prelude::*;

use cbpp::benchgen::{generate, BenchmarkSpec, CopyMode, RadiusLaw};
use cbpp::cli::{run_algorithm, Algorithm};
use cbpp::render::{emit_comparison_csv, summarize, ComparisonRecord};
use cbpp::SolverConfig;

fn main() -> cbpp::Result<()> {
    let specs: Vec<BenchmarkSpec> = (8..=10)
        .map(|n0| BenchmarkSpec {
            n0,
            law: RadiusLaw::Linear,
            mode: CopyMode::Fixed,
            bin_side: 2.0 * n0 as f64 + 6.0,
            seed: 0,
        })
        .collect();
    let mut jobs = Vec::new();
    for spec in &specs {
        let instance = Arc::new(generate(spec)?);
        for alg in [Algorithm::Gacoa, Algorithm::Lns, Algorithm::Alns] {
            jobs.push((spec.label(), Arc::clone(&instance), alg));
        }
    }
    let config = SolverConfig {
        iterations: 3_000,
        seed: 5,
        ..SolverConfig::default()
    };
    let records = jobs
        .par_iter()
        .map(|(label, instance, alg)| {
            let (layout, _, elapsed) = run_algorithm(instance, *alg, &config)?;
            let m = layout.metrics();
            Ok(ComparisonRecord {
                instance: label.clone(),
                algorithm: format!("{alg:?}").to_lowercase(),
                seed: (*alg != Algorithm::Gacoa).then_some(config.seed),
                objective: m.objective,
                bins_used: m.bins_used,
                bin_densities: m.bin_densities,
                wall_time: elapsed,
            })
        })
        .collect::<cbpp::Result<Vec<_>>>()?;

    print!("{}", emit_comparison_csv(&records)?);
    let summary = summarize(&records);
    for (alg, mean) in &summary.mean_improvement {
        println!("mean f_{alg} - f_gacoa: {mean:.6}");
    }
    for (instance, alg) in &summary.bin_reductions {
        println!("bin reduction: {instance} ({alg})");
    }
    Ok(())
}
