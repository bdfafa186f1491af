//! Checks hand-built layouts against the packing constraints and prints
//! what is wrong with the broken ones.

use std::sync::Arc;

use cbpp::{validate, Instance, Layout, Placement, Point};

fn layout(instance: &Arc<Instance>, centers: &[(usize, f64, f64)]) -> cbpp::Result<Layout> {
    Layout::from_placements(
        Arc::clone(instance),
        centers
            .iter()
            .enumerate()
            .map(|(id, &(bin, x, y))| Placement {
                id,
                bin,
                center: Point::new(x, y),
            }),
    )
}

fn main() -> cbpp::Result<()> {
    let instance = Arc::new(Instance::new(4.0, [1.0, 1.0, 1.0])?);
    let tol = instance.default_tolerance();

    let cases = [
        (
            "feasible",
            vec![(1, 1.0, 1.0), (1, 3.0, 1.0), (2, 1.0, 3.0)],
        ),
        ("overlap", vec![(1, 1.0, 1.0), (1, 2.5, 1.0), (2, 1.0, 3.0)]),
        ("outside", vec![(1, 1.0, 1.0), (1, 3.0, 1.0), (2, 3.4, 0.8)]),
        ("missing", vec![(1, 1.0, 1.0), (1, 3.0, 1.0)]),
    ];
    for (name, centers) in cases {
        let report = validate(&layout(&instance, &centers)?, tol);
        println!("{name}:");
        for line in report.to_string().lines() {
            println!("  {line}");
        }
    }
    Ok(())
}
