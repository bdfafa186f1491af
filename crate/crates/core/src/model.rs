//! Instances, layouts and the quantities used to score them.
//!
//! A bin's density is the fraction of its area covered by circles. A layout
//! using `K` non-empty bins scores `f = -K + d_max - d_min`, so fewer bins
//! always wins and, at equal `K`, a wider spread between the fullest and the
//! emptiest bin is preferred.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{PlacedCircle, Point, Wall};

/// Relative feasibility tolerance; the absolute value is this times the bin side.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleSpec {
    pub id: usize,
    pub radius: f64,
}

/// A bin side length together with the circles to pack.
///
/// Circle ids are `0..n`, every circle fits a bin on its own.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    bin_side: f64,
    circles: Vec<CircleSpec>,
}

impl Instance {
    /// Builds an instance whose ids follow the order of `radii`.
    pub fn new(bin_side: f64, radii: impl IntoIterator<Item = f64>) -> Result<Self> {
        let circles = radii
            .into_iter()
            .enumerate()
            .map(|(id, radius)| CircleSpec { id, radius })
            .collect();
        Self::from_circles(bin_side, circles)
    }

    /// Builds an instance from explicit `(id, radius)` records in any order.
    pub fn from_circles(bin_side: f64, mut circles: Vec<CircleSpec>) -> Result<Self> {
        if !(bin_side > 0.0 && bin_side.is_finite()) {
            return Err(Error::InvalidInstance(format!(
                "bin_side must be positive and finite, got {bin_side}"
            )));
        }
        if circles.is_empty() {
            return Err(Error::InvalidInstance("instance has no circles".into()));
        }
        circles.sort_by_key(|c| c.id);
        for (expected, c) in circles.iter().enumerate() {
            if c.id != expected {
                let msg = if expected > 0 && circles[expected - 1].id == c.id {
                    format!("duplicate circle id {}", c.id)
                } else {
                    format!(
                        "circle ids must be 0..{}, missing id {expected}",
                        circles.len()
                    )
                };
                return Err(Error::InvalidInstance(msg));
            }
            if !(c.radius > 0.0 && c.radius.is_finite()) {
                return Err(Error::InvalidInstance(format!(
                    "circle {} has non-positive radius {}",
                    c.id, c.radius
                )));
            }
            if 2.0 * c.radius > bin_side {
                return Err(Error::InvalidInstance(format!(
                    "circle {} violates 2*r <= L: diameter {} exceeds bin side {bin_side}",
                    c.id,
                    2.0 * c.radius
                )));
            }
        }
        Ok(Instance { bin_side, circles })
    }

    pub fn bin_side(&self) -> f64 {
        self.bin_side
    }

    /// Circles ordered by id.
    pub fn circles(&self) -> &[CircleSpec] {
        &self.circles
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn radius(&self, id: usize) -> f64 {
        self.circles[id].radius
    }

    pub fn max_radius(&self) -> f64 {
        self.circles.iter().map(|c| c.radius).fold(0.0, f64::max)
    }

    /// Default absolute feasibility tolerance for this instance.
    pub fn default_tolerance(&self) -> f64 {
        RELATIVE_TOLERANCE * self.bin_side
    }

    /// Circle ids in decreasing radius order, equal radii by ascending id.
    pub fn packing_order(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.len()).collect();
        ids.sort_by(|&a, &b| {
            self.radius(b)
                .total_cmp(&self.radius(a))
                .then_with(|| a.cmp(&b))
        });
        ids
    }
}

/// A circle's assignment as stored in solution files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub id: usize,
    /// 1-based bin index.
    pub bin: usize,
    pub center: Point,
}

/// Circles assigned to bins.
///
/// A layout may be partial while a search is repairing it; completed layouts
/// hold every circle exactly once. Bin indices are 1-based and may leave gaps;
/// only non-empty bins count as used.
#[derive(Debug, Clone)]
pub struct Layout {
    instance: Arc<Instance>,
    // bins[k - 1] holds bin k, sorted by circle id.
    bins: Vec<Vec<PlacedCircle>>,
}

impl Layout {
    pub fn empty(instance: Arc<Instance>) -> Self {
        Layout {
            instance,
            bins: Vec::new(),
        }
    }

    /// Builds a complete layout; every circle must appear exactly once.
    pub fn new(
        instance: Arc<Instance>,
        placements: impl IntoIterator<Item = Placement>,
    ) -> Result<Self> {
        let layout = Self::from_placements(instance, placements)?;
        let report = validate_assignment(&layout);
        if let Some(v) = report.first() {
            return Err(Error::InvalidArgument(format!("incomplete layout: {v}")));
        }
        Ok(layout)
    }

    /// Builds a layout from raw records without checking that each circle
    /// appears exactly once; use [`validate`] to inspect the result.
    pub fn from_placements(
        instance: Arc<Instance>,
        placements: impl IntoIterator<Item = Placement>,
    ) -> Result<Self> {
        let mut layout = Layout::empty(instance);
        for p in placements {
            if p.id >= layout.instance.len() {
                return Err(Error::InvalidArgument(format!(
                    "placement refers to unknown circle id {}",
                    p.id
                )));
            }
            if p.bin == 0 {
                return Err(Error::InvalidArgument(format!(
                    "circle {} assigned to bin 0; bins are numbered from 1",
                    p.id
                )));
            }
            if !p.center.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "circle {} has a non-finite center",
                    p.id
                )));
            }
            let radius = layout.instance.radius(p.id);
            layout.insert(PlacedCircle {
                id: p.id,
                radius,
                center: p.center,
                bin: p.bin,
            });
        }
        Ok(layout)
    }

    pub fn instance(&self) -> &Arc<Instance> {
        &self.instance
    }

    pub fn bin_side(&self) -> f64 {
        self.instance.bin_side
    }

    /// Number of bin slots, including empty ones.
    pub fn bin_slots(&self) -> usize {
        self.bins.len()
    }

    /// Contents of 1-based bin `bin`; empty for unknown bins.
    pub fn bin(&self, bin: usize) -> &[PlacedCircle] {
        bin.checked_sub(1)
            .and_then(|k| self.bins.get(k))
            .map_or(&[], Vec::as_slice)
    }

    /// Indices of non-empty bins, ascending.
    pub fn used_bins(&self) -> Vec<usize> {
        self.bins
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_empty())
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn placed(&self) -> impl Iterator<Item = &PlacedCircle> {
        self.bins.iter().flatten()
    }

    pub fn placed_count(&self) -> usize {
        self.bins.iter().map(Vec::len).sum()
    }

    pub fn find(&self, id: usize) -> Option<&PlacedCircle> {
        self.placed().find(|c| c.id == id)
    }

    /// Placements sorted by circle id.
    pub fn placements(&self) -> Vec<Placement> {
        let mut out: Vec<Placement> = self
            .placed()
            .map(|c| Placement {
                id: c.id,
                bin: c.bin,
                center: c.center,
            })
            .collect();
        out.sort_by_key(|p| (p.id, p.bin));
        out
    }

    pub fn is_complete(&self) -> bool {
        validate_assignment(self).is_empty()
    }

    /// Number of non-empty bins.
    pub fn bins_used(&self) -> usize {
        self.bins.iter().filter(|b| !b.is_empty()).count()
    }

    /// Fraction of bin `bin`'s area covered by its circles.
    pub fn bin_density(&self, bin: usize) -> Result<f64> {
        let contents = self.bin(bin);
        if contents.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "bin {bin} is empty or unknown"
            )));
        }
        Ok(density_of(contents, self.bin_side()))
    }

    pub fn metrics(&self) -> Metrics {
        let densities: Vec<f64> = self
            .bins
            .iter()
            .filter(|b| !b.is_empty())
            .map(|b| density_of(b, self.bin_side()))
            .collect();
        Metrics::from_densities(densities)
    }

    /// `-K + d_max - d_min`; larger is better.
    pub fn objective(&self) -> f64 {
        self.metrics().objective
    }

    /// Copy with bins renumbered `1..=K` in their current order.
    pub fn compacted(&self) -> Layout {
        let bins = self
            .bins
            .iter()
            .filter(|b| !b.is_empty())
            .enumerate()
            .map(|(k, b)| {
                b.iter()
                    .map(|c| PlacedCircle { bin: k + 1, ..*c })
                    .collect()
            })
            .collect();
        Layout {
            instance: Arc::clone(&self.instance),
            bins,
        }
    }

    pub(crate) fn insert(&mut self, circle: PlacedCircle) {
        debug_assert!(circle.bin >= 1);
        if self.bins.len() < circle.bin {
            self.bins.resize_with(circle.bin, Vec::new);
        }
        let bin = &mut self.bins[circle.bin - 1];
        let at = bin.partition_point(|c| c.id <= circle.id);
        bin.insert(at, circle);
    }

    /// Removes the circles of `bin` matching `pred`, returning their ids.
    pub(crate) fn remove_where(
        &mut self,
        bin: usize,
        mut pred: impl FnMut(&PlacedCircle) -> bool,
    ) -> Vec<usize> {
        let Some(contents) = bin.checked_sub(1).and_then(|k| self.bins.get_mut(k)) else {
            return Vec::new();
        };
        let mut removed = Vec::new();
        contents.retain(|c| {
            if pred(c) {
                removed.push(c.id);
                false
            } else {
                true
            }
        });
        removed
    }
}

fn density_of(contents: &[PlacedCircle], bin_side: f64) -> f64 {
    let area: f64 = contents.iter().map(|c| PI * c.radius * c.radius).sum();
    area / (bin_side * bin_side)
}

/// Per-bin densities of the used bins and the derived objective.
#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    /// Densities of non-empty bins in ascending bin order.
    pub bin_densities: Vec<f64>,
    pub bins_used: usize,
    pub d_min: f64,
    pub d_max: f64,
    pub objective: f64,
}

impl Metrics {
    pub fn from_densities(bin_densities: Vec<f64>) -> Self {
        let bins_used = bin_densities.len();
        let (d_min, d_max) = if bin_densities.is_empty() {
            (0.0, 0.0)
        } else {
            bin_densities
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &d| {
                    (lo.min(d), hi.max(d))
                })
        };
        Metrics {
            objective: objective_value(bins_used, d_max, d_min),
            bin_densities,
            bins_used,
            d_min,
            d_max,
        }
    }
}

/// `-K + d_max - d_min`.
pub fn objective_value(bins_used: usize, d_max: f64, d_min: f64) -> f64 {
    -(bins_used as f64) + d_max - d_min
}

/// Orders two layouts of the same instance by objective; `Greater` means
/// `a` is the better layout.
pub fn compare(a: &Layout, b: &Layout) -> Result<Ordering> {
    if !Arc::ptr_eq(a.instance(), b.instance()) && a.instance() != b.instance() {
        return Err(Error::InvalidArgument(
            "cannot compare layouts of different instances".into(),
        ));
    }
    Ok(a.objective().total_cmp(&b.objective()))
}

/// A layout with some circles taken out, awaiting repair.
#[derive(Debug, Clone)]
pub struct PartialLayout {
    pub(crate) layout: Layout,
    pub(crate) unassigned: Vec<usize>,
    pub(crate) perturbed_bins: (usize, usize),
}

impl PartialLayout {
    /// `unassigned` must be exactly the circles missing from `layout`.
    pub fn new(
        layout: Layout,
        unassigned: impl IntoIterator<Item = usize>,
        perturbed_bins: (usize, usize),
    ) -> Result<Self> {
        let unassigned: BTreeSet<usize> = unassigned.into_iter().collect();
        let mut seen = vec![false; layout.instance().len()];
        for c in layout.placed() {
            if seen[c.id] {
                return Err(Error::InvalidArgument(format!(
                    "circle {} placed twice",
                    c.id
                )));
            }
            if unassigned.contains(&c.id) {
                return Err(Error::InvalidArgument(format!(
                    "circle {} is both placed and unassigned",
                    c.id
                )));
            }
            seen[c.id] = true;
        }
        for &id in &unassigned {
            if id >= seen.len() {
                return Err(Error::InvalidArgument(format!("unknown circle id {id}")));
            }
            seen[id] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "circle {missing} is neither placed nor unassigned"
            )));
        }
        if perturbed_bins.0 == 0 || perturbed_bins.1 == 0 {
            return Err(Error::InvalidArgument("bins are numbered from 1".into()));
        }
        Ok(PartialLayout {
            layout,
            unassigned: unassigned.into_iter().collect(),
            perturbed_bins,
        })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Ids awaiting repair, ascending.
    pub fn unassigned(&self) -> &[usize] {
        &self.unassigned
    }

    pub fn perturbed_bins(&self) -> (usize, usize) {
        self.perturbed_bins
    }
}

/// A single broken constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Missing {
        id: usize,
    },
    Duplicate {
        id: usize,
        count: usize,
    },
    /// The circle crosses `wall` by `excess`.
    OutOfBin {
        id: usize,
        bin: usize,
        wall: Wall,
        excess: f64,
    },
    /// Centers are `distance` apart but need `required`.
    Overlap {
        a: usize,
        b: usize,
        bin: usize,
        distance: f64,
        required: f64,
    },
}

impl Violation {
    pub fn magnitude(&self) -> f64 {
        match *self {
            Violation::Missing { .. } | Violation::Duplicate { .. } => f64::INFINITY,
            Violation::OutOfBin { excess, .. } => excess,
            Violation::Overlap {
                distance, required, ..
            } => required - distance,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Missing { id } => write!(f, "circle {id} is not placed"),
            Violation::Duplicate { id, count } => {
                write!(f, "circle {id} is placed {count} times")
            }
            Violation::OutOfBin {
                id,
                bin,
                wall,
                excess,
            } => {
                let bound = match wall {
                    Wall::Left => "x - r >= 0",
                    Wall::Right => "x + r <= L",
                    Wall::Bottom => "y - r >= 0",
                    Wall::Top => "y + r <= L",
                };
                write!(
                    f,
                    "circle {id} in bin {bin} violates containment bound {bound} by {excess}"
                )
            }
            Violation::Overlap {
                a,
                b,
                bin,
                distance,
                required,
            } => write!(
                f,
                "circles {a} and {b} overlap in bin {bin}: distance {distance} < {required} by {}",
                required - distance
            ),
        }
    }
}

/// Outcome of [`validate`]; empty means feasible.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "OK");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn validate_assignment(layout: &Layout) -> Vec<Violation> {
    let mut counts = vec![0usize; layout.instance().len()];
    for c in layout.placed() {
        counts[c.id] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .filter_map(|(id, count)| match count {
            1 => None,
            0 => Some(Violation::Missing { id }),
            count => Some(Violation::Duplicate { id, count }),
        })
        .collect()
}

/// Checks assignment, containment and pairwise non-overlap within each bin.
pub fn validate(layout: &Layout, tolerance: f64) -> ValidationReport {
    let mut violations = validate_assignment(layout);
    let side = layout.bin_side();
    for bin in layout.used_bins() {
        let contents = layout.bin(bin);
        for c in contents {
            for wall in Wall::ALL {
                let excess = c.radius - wall.distance(&c.center, side);
                if excess > tolerance {
                    violations.push(Violation::OutOfBin {
                        id: c.id,
                        bin,
                        wall,
                        excess,
                    });
                }
            }
        }
        for (i, a) in contents.iter().enumerate() {
            for b in &contents[i + 1..] {
                let distance = a.center.distance(&b.center);
                let required = a.radius + b.radius;
                if distance < required - tolerance {
                    violations.push(Violation::Overlap {
                        a: a.id,
                        b: b.id,
                        bin,
                        distance,
                        required,
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}
