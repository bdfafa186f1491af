//! Benchmark families built from a base set of `n0` circles with radius
//! `law(i)`, `i = 1..=n0`, each replicated either five times or a random
//! 2 to 5 times.
//!
//! The bin side is always an input. Published benchmarks take it from the
//! best known single-square packing of the base set; [`BinSideTable`] reads a
//! user-maintained file of such values.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::rng::SearchRng;

pub use crate::io::{read_instance, write_instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusLaw {
    /// `r_i = i`
    Linear,
    /// `r_i = sqrt(i)`
    Sqrt,
}

impl RadiusLaw {
    pub fn radius(&self, i: usize) -> f64 {
        match self {
            RadiusLaw::Linear => i as f64,
            RadiusLaw::Sqrt => (i as f64).sqrt(),
        }
    }
}

impl fmt::Display for RadiusLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RadiusLaw::Linear => "linear",
            RadiusLaw::Sqrt => "sqrt",
        })
    }
}

impl FromStr for RadiusLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(RadiusLaw::Linear),
            "sqrt" => Ok(RadiusLaw::Sqrt),
            _ => Err(Error::InvalidArgument(format!("unknown radius law {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CopyMode {
    /// Five copies of every base circle.
    Fixed,
    /// Two to five copies, drawn uniformly per base circle.
    Random,
}

impl fmt::Display for CopyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CopyMode::Fixed => "fixed",
            CopyMode::Random => "random",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkSpec {
    pub n0: usize,
    pub law: RadiusLaw,
    pub mode: CopyMode,
    pub bin_side: f64,
    #[serde(default)]
    pub seed: u64,
}

impl BenchmarkSpec {
    /// Reads a spec from TOML, or JSON when `path` ends in `.json`.
    pub fn from_config_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let parsed = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        } else {
            toml::from_str(&text).map_err(|e| e.to_string())
        };
        parsed.map_err(|message| Error::Parse {
            path: path.to_path_buf(),
            message,
        })
    }

    /// A short name such as `linear-fixed-n0_8`.
    pub fn label(&self) -> String {
        match self.mode {
            CopyMode::Fixed => format!("{}-fixed-n0_{}", self.law, self.n0),
            CopyMode::Random => format!("{}-random-n0_{}-seed_{}", self.law, self.n0, self.seed),
        }
    }
}

/// Builds the instance described by `spec`. Ids follow `(i, copy)` order.
pub fn generate(spec: &BenchmarkSpec) -> Result<Instance> {
    if spec.n0 == 0 {
        return Err(Error::InvalidArgument("n0 must be at least 1".into()));
    }
    let largest = spec.law.radius(spec.n0);
    if !(spec.bin_side >= 2.0 * largest) {
        return Err(Error::InvalidArgument(format!(
            "bin side {} is smaller than the largest diameter {}",
            spec.bin_side,
            2.0 * largest
        )));
    }
    let mut rng = SearchRng::seed_from_u64(spec.seed);
    let mut radii = Vec::new();
    for i in 1..=spec.n0 {
        let copies = match spec.mode {
            CopyMode::Fixed => 5,
            CopyMode::Random => 2 + rng.index(4),
        };
        radii.extend(std::iter::repeat_n(spec.law.radius(i), copies));
    }
    Instance::new(spec.bin_side, radii)
}

/// Bin sides per `(law, n0)`, read from TOML of the form
///
/// ```toml
/// [linear]
/// 8 = 12.5
/// [sqrt]
/// 8 = 4.75
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BinSideTable {
    #[serde(default)]
    pub linear: BTreeMap<String, f64>,
    #[serde(default)]
    pub sqrt: BTreeMap<String, f64>,
}

impl BinSideTable {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: BinSideTable = toml::from_str(text).map_err(|e| Error::Parse {
            path: "<bin sides>".into(),
            message: e.to_string(),
        })?;
        for (key, value) in table.linear.iter().chain(&table.sqrt) {
            if key.parse::<usize>().is_err() || !(*value > 0.0) {
                return Err(Error::Parse {
                    path: "<bin sides>".into(),
                    message: format!("bad entry {key} = {value}"),
                });
            }
        }
        Ok(table)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    pub fn lookup(&self, law: RadiusLaw, n0: usize) -> Option<f64> {
        let map = match law {
            RadiusLaw::Linear => &self.linear,
            RadiusLaw::Sqrt => &self.sqrt,
        };
        map.get(&n0.to_string()).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n0: usize, law: RadiusLaw, mode: CopyMode, bin_side: f64, seed: u64) -> BenchmarkSpec {
        BenchmarkSpec {
            n0,
            law,
            mode,
            bin_side,
            seed,
        }
    }

    #[test]
    fn fixed_linear_has_five_copies() {
        let inst = generate(&spec(8, RadiusLaw::Linear, CopyMode::Fixed, 20.0, 0)).unwrap();
        assert_eq!(inst.len(), 40);
        for i in 1..=8 {
            let count = inst
                .circles()
                .iter()
                .filter(|c| c.radius == i as f64)
                .count();
            assert_eq!(count, 5);
        }
        assert_eq!(inst.radius(0), 1.0);
        assert_eq!(inst.radius(39), 8.0);
    }

    #[test]
    fn fixed_sqrt_radii() {
        let inst = generate(&spec(8, RadiusLaw::Sqrt, CopyMode::Fixed, 6.0, 0)).unwrap();
        assert_eq!(inst.len(), 40);
        assert_eq!(inst.radius(5), 2f64.sqrt());
        assert_eq!(inst.radius(39), 8f64.sqrt());
    }

    #[test]
    fn fixed_sizes_span_forty_to_one_hundred() {
        for n0 in 8..=20 {
            let inst = generate(&spec(
                n0,
                RadiusLaw::Linear,
                CopyMode::Fixed,
                2.0 * n0 as f64,
                0,
            ))
            .unwrap();
            assert_eq!(inst.len(), 5 * n0);
        }
    }

    #[test]
    fn random_mode_golden() {
        let s = spec(9, RadiusLaw::Linear, CopyMode::Random, 30.0, 2024);
        let inst = generate(&s).unwrap();
        assert!((18..=45).contains(&inst.len()));
        assert_eq!(inst.len(), RANDOM_GOLDEN_LEN);
        assert_eq!(generate(&s).unwrap(), inst);
    }

    const RANDOM_GOLDEN_LEN: usize = 31;

    #[test]
    fn random_sizes_in_range() {
        for seed in 0..200 {
            let n0 = 1 + (seed as usize % 12);
            let inst = generate(&spec(n0, RadiusLaw::Sqrt, CopyMode::Random, 10.0, seed)).unwrap();
            assert!((2 * n0..=5 * n0).contains(&inst.len()));
        }
    }

    #[test]
    fn small_bin_rejected() {
        assert!(generate(&spec(8, RadiusLaw::Linear, CopyMode::Fixed, 15.9, 0)).is_err());
        assert!(generate(&spec(8, RadiusLaw::Linear, CopyMode::Fixed, 16.0, 0)).is_ok());
        assert!(generate(&spec(0, RadiusLaw::Linear, CopyMode::Fixed, 16.0, 0)).is_err());
    }

    #[test]
    fn bin_side_table() {
        let t = BinSideTable::from_toml_str("[linear]\n8 = 21.5\n[sqrt]\n").unwrap();
        assert_eq!(t.lookup(RadiusLaw::Linear, 8), Some(21.5));
        assert_eq!(t.lookup(RadiusLaw::Sqrt, 8), None);
        assert!(BinSideTable::from_toml_str("[linear]\nx = 1.0\n").is_err());
        let shipped = include_str!("../data/bin_sides.toml");
        assert!(BinSideTable::from_toml_str(shipped).is_ok());
    }

    #[test]
    fn spec_from_toml() {
        let s: BenchmarkSpec = toml::from_str(
            "n0 = 9\nlaw = \"sqrt\"\nmode = \"random\"\nbin_side = 12.0\nseed = 4\n",
        )
        .unwrap();
        assert_eq!(s, spec(9, RadiusLaw::Sqrt, CopyMode::Random, 12.0, 4));
        assert_eq!(s.label(), "sqrt-random-n0_9-seed_4");
    }
}
