//! Planar primitives for placing circles in a square bin `[0, L] x [0, L]`.
//!
//! Candidate positions come in three families: tangent to two perpendicular
//! walls (a corner), tangent to a placed circle and one wall, and tangent to
//! two placed circles. All generators return their points sorted ascending by
//! `(x, y)` so that downstream tie-breaking is reproducible.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack under which a discriminant is treated as zero, collapsing
/// two nearly coincident tangency solutions into one.
const TANGENT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Total order on `(x, y)`.
    pub fn cmp_xy(&self, other: &Point) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }
}

/// A circle that has been assigned a bin and a center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacedCircle {
    pub id: usize,
    pub radius: f64,
    pub center: Point,
    /// 1-based bin index.
    pub bin: usize,
}

/// Axis-aligned rectangle given by its bottom-left corner and extent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub bottom_left: Point,
    pub width: f64,
    pub height: f64,
}

impl Rect {
    pub fn new(bottom_left: Point, width: f64, height: f64) -> Result<Self> {
        if !(width > 0.0 && height > 0.0) || !bottom_left.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "rectangle needs positive extent, got {width} x {height}"
            )));
        }
        Ok(Rect {
            bottom_left,
            width,
            height,
        })
    }

    pub fn top_right(&self) -> Point {
        Point::new(
            self.bottom_left.x + self.width,
            self.bottom_left.y + self.height,
        )
    }
}

/// One of the four sides of the bin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Wall {
    Left,
    Right,
    Bottom,
    Top,
}

impl Wall {
    pub const ALL: [Wall; 4] = [Wall::Left, Wall::Right, Wall::Bottom, Wall::Top];

    /// Signed distance from `p` to this wall, positive inside the bin.
    pub fn distance(&self, p: &Point, bin_side: f64) -> f64 {
        match self {
            Wall::Left => p.x,
            Wall::Right => bin_side - p.x,
            Wall::Bottom => p.y,
            Wall::Top => bin_side - p.y,
        }
    }
}

fn sort_points(points: &mut [Point]) {
    points.sort_by(Point::cmp_xy);
}

fn check_radius(radius: f64, bin_side: f64) -> Result<()> {
    if !(radius > 0.0 && 2.0 * radius <= bin_side && bin_side.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "radius {radius} does not fit a bin of side {bin_side}"
        )));
    }
    Ok(())
}

/// The four centers placing a circle against two perpendicular walls.
///
/// When `2 * radius == bin_side` all four coincide; they are still returned.
pub fn corner_positions(radius: f64, bin_side: f64) -> Result<[Point; 4]> {
    check_radius(radius, bin_side)?;
    let lo = radius;
    let hi = bin_side - radius;
    Ok([
        Point::new(lo, lo),
        Point::new(lo, hi),
        Point::new(hi, lo),
        Point::new(hi, hi),
    ])
}

/// Centers at distance `radius` from `wall` that touch `placed` externally.
pub fn circle_wall_tangent_positions(
    placed: &PlacedCircle,
    wall: Wall,
    radius: f64,
    bin_side: f64,
) -> Vec<Point> {
    let reach = placed.radius + radius;
    // Coordinate of the new center perpendicular to the wall, and the placed
    // center's coordinates (across, along) in the same frame.
    let (fixed, across, along) = match wall {
        Wall::Left => (radius, placed.center.x, placed.center.y),
        Wall::Right => (bin_side - radius, placed.center.x, placed.center.y),
        Wall::Bottom => (radius, placed.center.y, placed.center.x),
        Wall::Top => (bin_side - radius, placed.center.y, placed.center.x),
    };
    let gap = fixed - across;
    let disc = reach * reach - gap * gap;
    let slack = TANGENT_EPS * reach * reach;
    let offsets: Vec<f64> = if disc < -slack {
        Vec::new()
    } else if disc <= slack {
        vec![0.0]
    } else {
        let s = disc.sqrt();
        vec![-s, s]
    };
    let mut points: Vec<Point> = offsets
        .into_iter()
        .map(|off| match wall {
            Wall::Left | Wall::Right => Point::new(fixed, along + off),
            Wall::Bottom | Wall::Top => Point::new(along + off, fixed),
        })
        .collect();
    sort_points(&mut points);
    points
}

/// Centers of a circle of `radius` touching both `a` and `b` externally.
///
/// Fails only for coincident centers with equal expanded radii, where the
/// solution set is a whole circle.
pub fn circle_circle_tangency(
    a: &PlacedCircle,
    b: &PlacedCircle,
    radius: f64,
) -> Result<Vec<Point>> {
    let ra = a.radius + radius;
    let rb = b.radius + radius;
    let dx = b.center.x - a.center.x;
    let dy = b.center.y - a.center.y;
    let d = dx.hypot(dy);
    if d == 0.0 {
        if ra == rb {
            return Err(Error::Degenerate(format!(
                "circles {} and {} share center ({}, {}) and radius",
                a.id, b.id, a.center.x, a.center.y
            )));
        }
        return Ok(Vec::new());
    }
    let along = (ra * ra - rb * rb + d * d) / (2.0 * d);
    let h2 = ra * ra - along * along;
    let slack = TANGENT_EPS * ra * ra;
    let (ux, uy) = (dx / d, dy / d);
    let base = Point::new(a.center.x + along * ux, a.center.y + along * uy);
    let mut points = if h2 < -slack {
        Vec::new()
    } else if h2 <= slack {
        vec![base]
    } else {
        let h = h2.sqrt();
        vec![
            Point::new(base.x - h * uy, base.y + h * ux),
            Point::new(base.x + h * uy, base.y - h * ux),
        ]
    };
    sort_points(&mut points);
    Ok(points)
}

/// Like [`circle_circle_tangency`], but degenerate pairs yield an empty list
/// and a logged diagnostic.
pub fn circle_circle_tangent_positions(
    a: &PlacedCircle,
    b: &PlacedCircle,
    radius: f64,
) -> Vec<Point> {
    circle_circle_tangency(a, b, radius).unwrap_or_else(|err| {
        log::warn!("{err}");
        Vec::new()
    })
}

/// Whether a circle of `radius` centered at `candidate` lies inside the bin and
/// clear of every circle in `others`, each test relaxed by `tolerance`.
pub fn is_feasible_position(
    candidate: Point,
    radius: f64,
    others: &[PlacedCircle],
    bin_side: f64,
    tolerance: f64,
) -> bool {
    fits_in_bin(candidate, radius, bin_side, tolerance)
        && others
            .iter()
            .all(|other| clear_of(candidate, radius, other, tolerance))
}

#[inline]
pub(crate) fn fits_in_bin(p: Point, radius: f64, bin_side: f64, tolerance: f64) -> bool {
    let lo = radius - tolerance;
    let hi = bin_side - radius + tolerance;
    p.x >= lo && p.x <= hi && p.y >= lo && p.y <= hi
}

#[inline]
pub(crate) fn clear_of(p: Point, radius: f64, other: &PlacedCircle, tolerance: f64) -> bool {
    let dx = p.x - other.center.x;
    let dy = p.y - other.center.y;
    let sum = radius + other.radius;
    let d2 = dx * dx + dy * dy;
    if d2 >= sum * sum {
        return true;
    }
    d2.sqrt() >= sum - tolerance
}

/// Envelope test of a circle against a rectangle. Touching edges do not count
/// as intersecting.
pub fn circle_rect_intersects(circle: &PlacedCircle, rect: &Rect) -> bool {
    let (cx, cy, r) = (circle.center.x, circle.center.y, circle.radius);
    let (lx, ly) = (rect.bottom_left.x, rect.bottom_left.y);
    if cx - r >= lx + rect.width {
        return false;
    }
    if cy - r >= ly + rect.height {
        return false;
    }
    if cx + r <= lx {
        return false;
    }
    if cy + r <= ly {
        return false;
    }
    true
}
