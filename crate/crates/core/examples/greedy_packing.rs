//! Packs a small instance with the greedy constructor and prints where each
//! circle went, in the order they were placed.

use std::sync::Arc;

use cbpp::{Gacoa, Instance};

fn main() -> cbpp::Result<()> {
    let instance = Arc::new(Instance::new(
        10.0,
        [3.0, 2.5, 2.5, 2.0, 2.0, 1.5, 1.5, 1.0, 1.0, 1.0, 4.0],
    )?);
    let (layout, log) = Gacoa::default().solve_traced(&instance);

    for p in &log {
        println!(
            "circle {:2} (r = {}) -> bin {} at ({:.4}, {:.4})",
            p.id,
            instance.radius(p.id),
            p.bin,
            p.center.x,
            p.center.y
        );
    }
    let m = layout.metrics();
    println!("bins used: {}", m.bins_used);
    println!("densities: {:?}", m.bin_densities);
    println!("objective: {:.6}", m.objective);
    Ok(())
}
