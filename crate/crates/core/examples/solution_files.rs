//! Writes an instance and its solution to disk, reads both back and checks
//! that the layout survives the round trip bit for bit.

use std::sync::Arc;

use cbpp::io::{instance_hash, read_instance, read_solution, write_instance, write_solution};
use cbpp::{gacoa_solve, validate, Instance};

fn main() -> cbpp::Result<()> {
    let dir = std::env::temp_dir().join("cbpp-files");
    std::fs::create_dir_all(&dir).map_err(|e| cbpp::Error::InvalidArgument(e.to_string()))?;
    let instance_path = dir.join("instance.json");
    let solution_path = dir.join("solution.json");

    let radii = (1..=12).map(|i| (i as f64).sqrt() / 3.0);
    let instance = Arc::new(Instance::new(2.4, radii)?);
    write_instance(&instance, &instance_path)?;
    let layout = gacoa_solve(&instance);
    write_solution(&layout, &solution_path)?;

    let reread = Arc::new(read_instance(&instance_path)?);
    let solution = read_solution(&solution_path)?;
    let restored = solution.to_layout(Some(Arc::clone(&reread)))?;

    println!("instance hash  {}", instance_hash(&reread));
    println!("solution names {}", solution.instance_hash);
    println!(
        "placements identical: {}",
        restored.placements() == layout.placements()
    );
    println!(
        "objective identical: {}",
        restored.objective() == layout.objective()
    );
    println!("valid: {}", validate(&restored, reread.default_tolerance()));
    println!("files in {}", dir.display());
    Ok(())
}
