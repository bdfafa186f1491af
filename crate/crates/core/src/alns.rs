//! Destroy/repair search over complete layouts.
//!
//! Each iteration picks two used bins, samples a random rectangle around a
//! random circle in each, and takes out every circle whose bounding box meets
//! its bin's rectangle. The greedy packer then repacks the removed circles,
//! trying the two perturbed bins first. The repaired layout replaces the
//! current one under simulated-annealing acceptance with a linearly falling
//! temperature (or, in LNS mode, only when it strictly improves).
//!
//! # Random draw order
//!
//! For a fixed seed the run is reproducible. Each iteration consumes draws
//! from [`SearchRng`] in this order:
//!
//! 1. bin pair: `index(K)` then `index(K - 1)` (skipped when `K == 1`);
//! 2. first rectangle: width, height, then the seeding circle (skipped when
//!    the bin is empty);
//! 3. second rectangle: same three draws;
//! 4. acceptance: one `(0, 1]` draw, ALNS mode only, taken even when the
//!    candidate improves.

use std::fmt;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gacoa::{Gacoa, QualityDirection};
use crate::geometry::{circle_rect_intersects, Point, Rect};
use crate::model::{validate, Instance, Layout, PartialLayout};
use crate::rng::SearchRng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub iterations: u64,
    pub initial_temperature: f64,
    pub seed: u64,
    /// Absolute feasibility tolerance; `None` uses `1e-9 * L`.
    pub tolerance: Option<f64>,
    pub quality_direction: QualityDirection,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            iterations: 2_000_000,
            initial_temperature: 1.0,
            seed: 0,
            tolerance: None,
            quality_direction: QualityDirection::BorderHugging,
        }
    }
}

impl SolverConfig {
    pub fn check(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidArgument(
                "iterations must be at least 1".into(),
            ));
        }
        if !(self.initial_temperature > 0.0 && self.initial_temperature.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "initial temperature must be positive, got {}",
                self.initial_temperature
            )));
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0) {
                return Err(Error::InvalidArgument(format!("negative tolerance {t}")));
            }
        }
        Ok(())
    }

    fn packer(&self) -> Gacoa {
        Gacoa {
            tolerance: self.tolerance,
            direction: self.quality_direction,
        }
    }

    /// Temperature used by the acceptance test of 1-based iteration `i`.
    pub fn temperature_at(&self, i: u64) -> f64 {
        self.initial_temperature * (1.0 - (i - 1) as f64 / self.iterations as f64)
    }
}

/// How candidates replace the current layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Simulated-annealing acceptance.
    Alns,
    /// Strict improvement only.
    Lns,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Alns => "alns",
            SearchMode::Lns => "lns",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: u64,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub iterations_run: u64,
    pub acceptances: u64,
    pub rejections: u64,
    /// Candidates strictly better than the layout they were built from.
    pub improvements: u64,
    /// Best objective so far, recorded at iteration 0 and whenever it rises.
    pub best_objective_trace: Vec<TracePoint>,
    #[serde(with = "duration_secs")]
    pub wall_time: Duration,
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        f64::deserialize(d).map(Duration::from_secs_f64)
    }
}

impl SearchStats {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes the best-objective trace as `iteration,objective` CSV.
    pub fn write_trace_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["iteration", "objective"])?;
        for p in &self.best_objective_trace {
            w.write_record([p.iteration.to_string(), p.objective.to_string()])?;
        }
        w.flush().map_err(|e| Error::io("<trace>", e))?;
        Ok(())
    }
}

/// What happened in one iteration, passed to a [`SearchObserver`].
#[derive(Debug)]
pub struct IterationEvent<'a> {
    pub iteration: u64,
    /// `None` in LNS mode.
    pub temperature: Option<f64>,
    pub candidate: &'a Layout,
    pub candidate_objective: f64,
    pub current_objective: f64,
    pub accepted: bool,
    pub new_best: bool,
}

pub trait SearchObserver {
    fn on_iteration(&mut self, event: &IterationEvent<'_>);
}

impl SearchObserver for () {
    fn on_iteration(&mut self, _: &IterationEvent<'_>) {}
}

impl<F: FnMut(&IterationEvent<'_>)> SearchObserver for F {
    fn on_iteration(&mut self, event: &IterationEvent<'_>) {
        self(event)
    }
}

/// A rectangle of uniform random size on `(0, L]^2`, centered on a random
/// circle of `bin`, or anchored at the origin when the bin is empty.
pub fn sample_rect(bin: usize, layout: &Layout, rng: &mut SearchRng) -> Rect {
    let side = layout.bin_side();
    let width = rng.real_up_to(side);
    let height = rng.real_up_to(side);
    let contents = layout.bin(bin);
    let bottom_left = if contents.is_empty() {
        Point::new(0.0, 0.0)
    } else {
        let c = &contents[rng.index(contents.len())];
        Point::new(c.center.x - 0.5 * width, c.center.y - 0.5 * height)
    };
    Rect {
        bottom_left,
        width,
        height,
    }
}

/// Removes the circles hit by one random rectangle in each of two random
/// used bins. With a single used bin both rectangles are drawn in it.
pub fn generate_partial(layout: &Layout, rng: &mut SearchRng) -> PartialLayout {
    let used = layout.used_bins();
    let (k1, k2) = match used.len() {
        0 => (1, 1),
        1 => (used[0], used[0]),
        n => {
            let (i, j) = rng.distinct_pair(n);
            (used[i], used[j])
        }
    };
    let rect1 = sample_rect(k1, layout, rng);
    let rect2 = sample_rect(k2, layout, rng);
    let mut partial = layout.clone();
    let mut unassigned = partial.remove_where(k1, |c| circle_rect_intersects(c, &rect1));
    unassigned.extend(partial.remove_where(k2, |c| circle_rect_intersects(c, &rect2)));
    unassigned.sort_unstable();
    PartialLayout {
        layout: partial,
        unassigned,
        perturbed_bins: (k1, k2),
    }
}

/// Simulated-annealing acceptance: always for a strict improvement, else with
/// probability `exp((f_new - f_old) / temperature)`. A non-positive
/// temperature accepts strict improvements only. Consumes one draw either way.
pub fn accept_move(f_new: f64, f_old: f64, temperature: f64, rng: &mut SearchRng) -> bool {
    let u = rng.real_up_to(1.0);
    if f_new > f_old {
        return true;
    }
    if !(temperature > 0.0) {
        return false;
    }
    u <= ((f_new - f_old) / temperature).exp()
}

/// Runs the search from the greedy layout and returns the best layout seen.
pub fn solve(
    instance: &Arc<Instance>,
    config: &SolverConfig,
    mode: SearchMode,
    observer: &mut dyn SearchObserver,
) -> Result<(Layout, SearchStats)> {
    config.check()?;
    let started = Instant::now();
    let packer = config.packer();
    let tolerance = config
        .tolerance
        .unwrap_or_else(|| instance.default_tolerance());
    let mut rng = SearchRng::seed_from_u64(config.seed);

    let mut current = packer.solve(instance);
    let mut current_f = current.objective();
    let mut best = current.clone();
    let mut best_f = current_f;
    let mut stats = SearchStats {
        iterations_run: 0,
        acceptances: 0,
        rejections: 0,
        improvements: 0,
        best_objective_trace: vec![TracePoint {
            iteration: 0,
            objective: best_f,
        }],
        wall_time: Duration::ZERO,
    };

    for i in 1..=config.iterations {
        let temperature = match mode {
            SearchMode::Alns => Some(config.temperature_at(i)),
            SearchMode::Lns => None,
        };
        let partial = generate_partial(&current, &mut rng);
        let candidate = packer.complete(partial);
        debug_assert!(validate(&candidate, tolerance).is_ok());
        let candidate_f = candidate.objective();

        let accepted = match temperature {
            Some(t) => accept_move(candidate_f, current_f, t, &mut rng),
            None => candidate_f > current_f,
        };
        if candidate_f > current_f {
            stats.improvements += 1;
        }
        let new_best = candidate_f > best_f;
        if new_best {
            best = candidate.clone();
            best_f = candidate_f;
            stats.best_objective_trace.push(TracePoint {
                iteration: i,
                objective: best_f,
            });
        }
        observer.on_iteration(&IterationEvent {
            iteration: i,
            temperature,
            candidate: &candidate,
            candidate_objective: candidate_f,
            current_objective: current_f,
            accepted,
            new_best,
        });
        if accepted {
            stats.acceptances += 1;
            current = candidate;
            current_f = candidate_f;
        } else {
            stats.rejections += 1;
        }
        stats.iterations_run = i;
    }
    stats.wall_time = started.elapsed();
    Ok((best, stats))
}

/// Simulated-annealing search.
pub fn alns_solve(
    instance: &Arc<Instance>,
    config: &SolverConfig,
) -> Result<(Layout, SearchStats)> {
    solve(instance, config, SearchMode::Alns, &mut ())
}

/// Improvement-only search.
pub fn lns_solve(instance: &Arc<Instance>, config: &SolverConfig) -> Result<(Layout, SearchStats)> {
    solve(instance, config, SearchMode::Lns, &mut ())
}
