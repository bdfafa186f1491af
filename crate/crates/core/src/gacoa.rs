//! Greedy construction with corner-occupying actions.
//!
//! Circles are packed one at a time in decreasing radius order. For each
//! circle the bins are tried in a fixed order; within a bin every position
//! tangent to two entities (two circles, a circle and a wall, or two walls) is
//! a candidate, and the feasible candidate with the best [`Quality`] wins. A
//! circle that fits no listed bin opens a fresh one.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    circle_circle_tangent_positions, circle_wall_tangent_positions, clear_of, corner_positions,
    fits_in_bin, is_feasible_position, PlacedCircle, Point, Wall,
};
use crate::model::{Instance, Layout, PartialLayout, Placement, RELATIVE_TOLERANCE};

/// Distance of a center to the nearest vertical and horizontal walls, as the
/// pair `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quality {
    pub primary: f64,
    pub secondary: f64,
}

impl Quality {
    pub fn of(position: Point, bin_side: f64) -> Self {
        let dx = position.x.min(bin_side - position.x);
        let dy = position.y.min(bin_side - position.y);
        Quality {
            primary: dx.min(dy),
            secondary: dx.max(dy),
        }
    }

    fn lex_cmp(&self, other: &Quality) -> Ordering {
        self.primary
            .total_cmp(&other.primary)
            .then_with(|| self.secondary.total_cmp(&other.secondary))
    }
}

/// Lexicographic `a < b`; under the default direction the smaller quality is
/// the preferred one.
pub fn quality_less(a: &Quality, b: &Quality) -> bool {
    a.lex_cmp(b) == Ordering::Less
}

/// Which end of the quality order is preferred.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QualityDirection {
    /// Smallest quality first: hug the walls.
    #[default]
    BorderHugging,
    /// Largest quality first.
    AwayFromBorder,
}

impl QualityDirection {
    /// Ranking of two candidates: `Less` means `a` is picked before `b`.
    /// Ties in quality fall back to ascending `(x, y)`.
    pub fn rank(&self, a: (&Quality, &Point), b: (&Quality, &Point)) -> Ordering {
        let q = match self {
            QualityDirection::BorderHugging => a.0.lex_cmp(b.0),
            QualityDirection::AwayFromBorder => b.0.lex_cmp(a.0),
        };
        q.then_with(|| a.1.cmp_xy(b.1))
    }
}

/// What a candidate position is tangent to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Corner,
    CircleWall { circle: usize, wall: Wall },
    CircleCircle { a: usize, b: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateAction {
    pub position: Point,
    pub quality: Quality,
    pub provenance: Provenance,
}

/// Greedy packer settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gacoa {
    /// Absolute feasibility tolerance; `None` uses `1e-9 * L`.
    pub tolerance: Option<f64>,
    pub direction: QualityDirection,
}

impl Default for Gacoa {
    fn default() -> Self {
        Gacoa {
            tolerance: None,
            direction: QualityDirection::BorderHugging,
        }
    }
}

fn for_each_candidate(
    radius: f64,
    contents: &[PlacedCircle],
    bin_side: f64,
    mut visit: impl FnMut(Point, Provenance),
) {
    // Corners only fail when the radius is oversized, which instances rule out.
    if let Ok(corners) = corner_positions(radius, bin_side) {
        for p in corners {
            visit(p, Provenance::Corner);
        }
    }
    for c in contents {
        for wall in Wall::ALL {
            for p in circle_wall_tangent_positions(c, wall, radius, bin_side) {
                visit(p, Provenance::CircleWall { circle: c.id, wall });
            }
        }
    }
    for (i, a) in contents.iter().enumerate() {
        for b in &contents[i + 1..] {
            let reach = a.radius + b.radius + 2.0 * radius;
            let dx = a.center.x - b.center.x;
            let dy = a.center.y - b.center.y;
            if dx * dx + dy * dy > reach * reach * (1.0 + 1e-12) {
                continue;
            }
            for p in circle_circle_tangent_positions(a, b, radius) {
                visit(p, Provenance::CircleCircle { a: a.id, b: b.id });
            }
        }
    }
}

impl Gacoa {
    fn tolerance_for(&self, bin_side: f64) -> f64 {
        self.tolerance.unwrap_or(RELATIVE_TOLERANCE * bin_side)
    }

    /// All feasible corner-occupying positions for a circle of `radius` in a
    /// bin holding `contents`, best first.
    pub fn candidate_actions(
        &self,
        radius: f64,
        contents: &[PlacedCircle],
        bin_side: f64,
    ) -> Vec<CandidateAction> {
        let tol = self.tolerance_for(bin_side);
        let mut all = Vec::new();
        for_each_candidate(radius, contents, bin_side, |position, provenance| {
            if is_feasible_position(position, radius, contents, bin_side, tol) {
                all.push(CandidateAction {
                    position,
                    quality: Quality::of(position, bin_side),
                    provenance,
                });
            }
        });
        all.sort_by(|a, b| {
            self.direction
                .rank((&a.quality, &a.position), (&b.quality, &b.position))
        });
        let dedup = 1e-12 * bin_side;
        let mut kept: Vec<CandidateAction> = Vec::with_capacity(all.len());
        for c in all {
            if kept
                .iter()
                .all(|k| k.position.distance(&c.position) > dedup)
            {
                kept.push(c);
            }
        }
        kept
    }

    /// Best feasible position in one bin, without materializing the full
    /// candidate list. Agrees with the head of [`Gacoa::candidate_actions`].
    pub fn best_position(
        &self,
        radius: f64,
        contents: &[PlacedCircle],
        bin_side: f64,
    ) -> Option<Point> {
        let tol = self.tolerance_for(bin_side);
        let mut best: Option<(Quality, Point)> = None;
        for_each_candidate(radius, contents, bin_side, |p, _| {
            if !fits_in_bin(p, radius, bin_side, tol) {
                return;
            }
            let q = Quality::of(p, bin_side);
            if let Some((bq, bp)) = &best {
                if self.direction.rank((&q, &p), (bq, bp)) != Ordering::Less {
                    return;
                }
            }
            if contents.iter().all(|c| clear_of(p, radius, c, tol)) {
                best = Some((q, p));
            }
        });
        best.map(|(_, p)| p)
    }

    /// Chooses a bin and center for one circle. Bins are tried in `bin_order`;
    /// if none admits the circle a fresh bin past every existing one is used.
    pub fn pack_one(&self, radius: f64, current: &Layout, bin_order: &[usize]) -> (usize, Point) {
        let side = current.bin_side();
        for &bin in bin_order {
            if let Some(p) = self.best_position(radius, current.bin(bin), side) {
                return (bin, p);
            }
        }
        let fresh = bin_order
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
            .max(current.bin_slots())
            + 1;
        let p = self
            .best_position(radius, &[], side)
            .expect("an empty bin admits any circle with 2r <= L");
        (fresh, p)
    }

    /// Packs every circle of `instance` from scratch.
    pub fn solve(&self, instance: &Arc<Instance>) -> Layout {
        self.solve_traced(instance).0
    }

    /// Like [`Gacoa::solve`], also returning placements in the order made.
    pub fn solve_traced(&self, instance: &Arc<Instance>) -> (Layout, Vec<Placement>) {
        let mut layout = Layout::empty(Arc::clone(instance));
        let mut log = Vec::with_capacity(instance.len());
        let mut order = Vec::new();
        for id in instance.packing_order() {
            order.clear();
            order.extend(1..=layout.bin_slots());
            let radius = instance.radius(id);
            let (bin, center) = self.pack_one(radius, &layout, &order);
            layout.insert(PlacedCircle {
                id,
                radius,
                center,
                bin,
            });
            log.push(Placement { id, bin, center });
        }
        (layout, log)
    }

    /// Repacks the unassigned circles of `partial`, trying the two perturbed
    /// bins first, then every other bin ascending, then fresh bins.
    pub fn complete(&self, partial: PartialLayout) -> Layout {
        let PartialLayout {
            mut layout,
            unassigned,
            perturbed_bins: (k1, k2),
        } = partial;
        if unassigned.is_empty() {
            return layout;
        }
        let instance = Arc::clone(layout.instance());
        let mut ids = unassigned;
        ids.sort_by(|&a, &b| {
            instance
                .radius(b)
                .total_cmp(&instance.radius(a))
                .then_with(|| a.cmp(&b))
        });
        let mut order = Vec::new();
        for id in ids {
            order.clear();
            order.push(k1);
            if k2 != k1 {
                order.push(k2);
            }
            order.extend((1..=layout.bin_slots()).filter(|&k| k != k1 && k != k2));
            let radius = instance.radius(id);
            let (bin, center) = self.pack_one(radius, &layout, &order);
            layout.insert(PlacedCircle {
                id,
                radius,
                center,
                bin,
            });
        }
        layout
    }
}

/// [`Gacoa::candidate_actions`] with default settings.
pub fn candidate_actions(
    radius: f64,
    bin_contents: &[PlacedCircle],
    bin_side: f64,
) -> Vec<CandidateAction> {
    Gacoa::default().candidate_actions(radius, bin_contents, bin_side)
}

/// [`Gacoa::pack_one`] with default settings.
pub fn pack_one(radius: f64, current: &Layout, bin_order: &[usize]) -> (usize, Point) {
    Gacoa::default().pack_one(radius, current, bin_order)
}

/// [`Gacoa::solve`] with default settings.
pub fn gacoa_solve(instance: &Arc<Instance>) -> Layout {
    Gacoa::default().solve(instance)
}

/// [`Gacoa::complete`] with default settings.
pub fn gacoa_complete(partial: PartialLayout) -> Layout {
    Gacoa::default().complete(partial)
}
