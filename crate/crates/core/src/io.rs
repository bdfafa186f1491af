//! JSON file formats for instances and solutions.
//!
//! Floats are written in their shortest round-trip representation, so reading
//! a file back reproduces every value bit for bit.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::model::{CircleSpec, Instance, Layout, Placement};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleRecord {
    pub id: usize,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub bin_side: f64,
    pub circles: Vec<CircleRecord>,
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile {
            bin_side: inst.bin_side(),
            circles: inst
                .circles()
                .iter()
                .map(|c| CircleRecord {
                    id: c.id,
                    radius: c.radius,
                })
                .collect(),
        }
    }
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        Instance::from_circles(
            self.bin_side,
            self.circles
                .into_iter()
                .map(|c| CircleSpec {
                    id: c.id,
                    radius: c.radius,
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementRecord {
    pub id: usize,
    pub bin: usize,
    pub x: f64,
    pub y: f64,
}

/// Solution file. The instance is embedded so the file can be validated and
/// rendered on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub instance_hash: String,
    pub bins_used: usize,
    pub objective: f64,
    pub bin_densities: Vec<f64>,
    pub placements: Vec<PlacementRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceFile>,
}

/// Hex SHA-256 of the compact JSON encoding of the instance.
pub fn instance_hash(instance: &Instance) -> String {
    let canonical =
        serde_json::to_string(&InstanceFile::from(instance)).expect("instance encodes as JSON");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn instance_to_json(instance: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from(instance))
        .expect("instance encodes as JSON");
    s.push('\n');
    s
}

pub fn instance_from_json(text: &str, origin: &Path) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| parse_error(origin, &e))?;
    file.into_instance().map_err(|e| Error::Parse {
        path: origin.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    instance_from_json(&text, path)
}

pub fn write_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, instance_to_json(instance)).map_err(|e| Error::io(path, e))
}

fn parse_error(path: &Path, e: &serde_json::Error) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: format!("line {}, column {}: {e}", e.line(), e.column()),
    }
}

impl SolutionFile {
    /// Describes `layout` with bins renumbered `1..=K`.
    pub fn from_layout(layout: &Layout) -> Self {
        let compact = layout.compacted();
        let metrics = compact.metrics();
        let instance = compact.instance();
        SolutionFile {
            instance_hash: instance_hash(instance),
            bins_used: metrics.bins_used,
            objective: metrics.objective,
            bin_densities: metrics.bin_densities,
            placements: compact
                .placements()
                .into_iter()
                .map(|p| PlacementRecord {
                    id: p.id,
                    bin: p.bin,
                    x: p.center.x,
                    y: p.center.y,
                })
                .collect(),
            instance: Some(InstanceFile::from(instance.as_ref())),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("solution encodes as JSON");
        s.push('\n');
        s
    }

    /// Rebuilds the layout. Placements are taken as recorded, so duplicated
    /// or missing circles surface through validation rather than here.
    /// `instance` overrides the embedded one; the hash must match either way.
    pub fn to_layout(&self, instance: Option<Arc<Instance>>) -> Result<Layout> {
        let instance = match (instance, &self.instance) {
            (Some(inst), _) => inst,
            (None, Some(file)) => Arc::new(file.clone().into_instance()?),
            (None, None) => {
                return Err(Error::InvalidArgument(
                    "solution has no embedded instance; supply one".into(),
                ))
            }
        };
        let hash = instance_hash(&instance);
        if hash != self.instance_hash {
            return Err(Error::InvalidArgument(format!(
                "instance hash mismatch: solution names {}, instance is {hash}",
                self.instance_hash
            )));
        }
        Layout::from_placements(
            instance,
            self.placements.iter().map(|p| Placement {
                id: p.id,
                bin: p.bin,
                center: Point::new(p.x, p.y),
            }),
        )
    }
}

pub fn read_solution(path: impl AsRef<Path>) -> Result<SolutionFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| parse_error(path, &e))
}

pub fn write_solution(layout: &Layout, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, SolutionFile::from_layout(layout).to_json()).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gacoa::gacoa_solve;
    use proptest::prelude::*;

    #[test]
    fn parse_errors_carry_location() {
        let err = instance_from_json("{\"bin_side\": 10,\n \"circles\": [}", Path::new("x.json"))
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("x.json") && msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn oversized_and_duplicate_circles_rejected() {
        let err = instance_from_json(
            r#"{"bin_side": 4, "circles": [{"id": 0, "radius": 2.5}]}"#,
            Path::new("big.json"),
        )
        .unwrap_err();
        assert!(err.to_string().contains("2*r <= L"), "{err}");
        let err = instance_from_json(
            r#"{"bin_side": 4, "circles": [{"id": 0, "radius": 1}, {"id": 0, "radius": 1}]}"#,
            Path::new("dup.json"),
        )
        .unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn solution_compacts_and_embeds_instance() {
        let inst = Arc::new(Instance::new(4.0, [2.0, 1.0, 1.0]).unwrap());
        let layout = gacoa_solve(&inst);
        let sol = SolutionFile::from_layout(&layout);
        assert_eq!(sol.bins_used, 2);
        assert_eq!(
            sol.placements.iter().map(|p| p.id).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        let back: SolutionFile = serde_json::from_str(&sol.to_json()).unwrap();
        assert_eq!(back, sol);
        let rebuilt = back.to_layout(None).unwrap();
        assert_eq!(rebuilt.placements(), layout.compacted().placements());

        let other = Arc::new(Instance::new(4.0, [2.0, 1.0]).unwrap());
        assert!(back.to_layout(Some(other)).is_err());
    }

    proptest! {
        #[test]
        fn instance_json_round_trips(
            side in 1.0f64..1e6,
            fractions in prop::collection::vec(1e-9f64..=0.5, 1..20),
        ) {
            let inst = Instance::new(side, fractions.iter().map(|f| f * side)).unwrap();
            let text = instance_to_json(&inst);
            let back = instance_from_json(&text, Path::new("mem")).unwrap();
            prop_assert_eq!(&back, &inst);
            prop_assert_eq!(instance_hash(&back), instance_hash(&inst));
        }
    }
}
