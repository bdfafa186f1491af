//! Improves a greedy layout with the annealing search, watching progress
//! through an observer, then runs the improvement-only variant for contrast.
//!
//! ```text
//! cargo run --release --example annealing_search -- [iterations] [seed]
//! ```

use std::sync::Arc;

use cbpp::alns::{self, IterationEvent, SearchMode};
use cbpp::benchgen::{generate, BenchmarkSpec, CopyMode, RadiusLaw};
use cbpp::{gacoa_solve, SolverConfig};

fn main() -> cbpp::Result<()> {
    let mut args = std::env::args().skip(1);
    let iterations = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let spec = BenchmarkSpec {
        n0: 10,
        law: RadiusLaw::Sqrt,
        mode: CopyMode::Random,
        bin_side: 7.0,
        seed: 3,
    };
    let instance = Arc::new(generate(&spec)?);
    let greedy = gacoa_solve(&instance);
    println!("{}: {} circles", spec.label(), instance.len());
    println!(
        "greedy: K = {}, f = {:.6}",
        greedy.bins_used(),
        greedy.objective()
    );

    let config = SolverConfig {
        iterations,
        seed,
        ..SolverConfig::default()
    };
    let report_every = (iterations / 10).max(1);
    let mut observer = |e: &IterationEvent<'_>| {
        if e.new_best || e.iteration.is_multiple_of(report_every) {
            println!(
                "  iter {:6}  theta {:.4}  candidate f {:.6}{}",
                e.iteration,
                e.temperature.unwrap_or(0.0),
                e.candidate_objective,
                if e.new_best { "  new best" } else { "" }
            );
        }
    };
    let (best, stats) = alns::solve(&instance, &config, SearchMode::Alns, &mut observer)?;
    println!(
        "annealing: K = {}, f = {:.6}, {} accepted, {} rejected, {:.2} s",
        best.bins_used(),
        best.objective(),
        stats.acceptances,
        stats.rejections,
        stats.wall_time.as_secs_f64()
    );

    let (lns_best, _) = alns::solve(&instance, &config, SearchMode::Lns, &mut ())?;
    println!(
        "improvement only: K = {}, f = {:.6}",
        lns_best.bins_used(),
        lns_best.objective()
    );
    Ok(())
}
