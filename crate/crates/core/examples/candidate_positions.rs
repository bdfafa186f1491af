//! Lists every corner-occupying position for a new circle in a partly
//! filled bin, best first, together with what each position touches.

use cbpp::gacoa::{candidate_actions, Provenance};
use cbpp::geometry::corner_positions;
use cbpp::{PlacedCircle, Point};

fn main() -> cbpp::Result<()> {
    let side = 10.0;
    let placed = [
        PlacedCircle {
            id: 0,
            radius: 3.0,
            center: Point::new(3.0, 3.0),
            bin: 1,
        },
        PlacedCircle {
            id: 1,
            radius: 2.0,
            center: Point::new(8.0, 2.0),
            bin: 1,
        },
    ];
    let radius = 1.5;

    println!(
        "corners for r = {radius}: {:?}",
        corner_positions(radius, side)?
    );
    println!("{:>8} {:>8}  {:>17}  touches", "x", "y", "quality");
    for c in candidate_actions(radius, &placed, side) {
        let touches = match c.provenance {
            Provenance::Corner => "two walls".to_string(),
            Provenance::CircleWall { circle, wall } => format!("circle {circle} and {wall:?} wall"),
            Provenance::CircleCircle { a, b } => format!("circles {a} and {b}"),
        };
        println!(
            "{:8.4} {:8.4}  ({:6.4}, {:6.4})  {touches}",
            c.position.x, c.position.y, c.quality.primary, c.quality.secondary
        );
    }
    Ok(())
}
