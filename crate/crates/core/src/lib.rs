//! Circle bin packing: pack circles of given radii into as few identical
//! square bins as possible.
//!
//! The crate provides a deterministic greedy constructor ([`gacoa`]), a
//! destroy/repair search with simulated-annealing acceptance on top of it
//! ([`alns`]), benchmark generation ([`benchgen`]), a constraint validator
//! ([`model::validate`]), SVG/CSV output ([`render`]) and the `cbpp` command
//! line ([`cli`]).
//!
//! ```
//! use std::sync::Arc;
//! use cbpp::{alns_solve, gacoa_solve, Instance, SolverConfig};
//!
//! let instance = Arc::new(Instance::new(4.0, [1.0; 8]).unwrap());
//! let greedy = gacoa_solve(&instance);
//! assert_eq!(greedy.bins_used(), 2);
//!
//! let config = SolverConfig { iterations: 200, seed: 7, ..SolverConfig::default() };
//! let (best, stats) = alns_solve(&instance, &config).unwrap();
//! assert!(best.objective() >= greedy.objective());
//! assert_eq!(stats.iterations_run, 200);
//! ```

// `!(x > 0.0)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alns;
pub mod benchgen;
pub mod cli;
pub mod error;
pub mod gacoa;
pub mod geometry;
pub mod io;
pub mod model;
pub mod render;
pub mod rng;

pub use alns::{alns_solve, lns_solve, SearchMode, SearchStats, SolverConfig};
pub use error::{Error, Result};
pub use gacoa::{gacoa_complete, gacoa_solve, Gacoa, QualityDirection};
pub use geometry::{PlacedCircle, Point, Rect};
pub use model::{validate, Instance, Layout, Metrics, PartialLayout, Placement, ValidationReport};
