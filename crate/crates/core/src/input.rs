//! JSON input formats: a fan spec (rays, maximal cones, ray values, optional
//! scale) or an H-representation (primitive inward normals plus offsets).
//! Rationals travel as "p/q" strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{BuildWarning, Fan};
use crate::polytope::{pl_from_hrep, PlData};
use crate::rational::{parse_rat, Rat};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
    pub phi: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HrepSpec {
    pub normals: Vec<Vec<i64>>,
    pub offsets: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum InputSpec {
    Fan(FanSpec),
    Hrep(HrepSpec),
}

/// Parse a JSON string into PL data, reporting ray-normalization warnings.
pub fn parse_spec(json: &str) -> Result<(PlData, Vec<BuildWarning>)> {
    let spec: InputSpec = serde_json::from_str(json)?;
    match spec {
        InputSpec::Fan(fs) => {
            let values: Vec<Rat> = fs.phi.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
            let build = Fan::build(fs.dim, fs.rays, &fs.maximal_cones)?;
            let pl = PlData::from_ray_values(build.fan, &values, fs.r)?;
            Ok((pl, build.warnings))
        }
        InputSpec::Hrep(hs) => {
            let offsets: Vec<Rat> = hs
                .offsets
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<_>>()?;
            let pl = pl_from_hrep(hs.normals, offsets)?;
            Ok((pl, vec![]))
        }
    }
}

/// Load PL data from a JSON file.
pub fn load_spec(path: &std::path::Path) -> Result<(PlData, Vec<BuildWarning>)> {
    let text = std::fs::read_to_string(path)?;
    parse_spec(&text).map_err(|e| match e {
        Error::Json(je) => Error::InvalidInput(format!(
            "{}: line {}, column {}: {je}",
            path.display(),
            je.line(),
            je.column()
        )),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parse_fan_spec() {
        let json = r#"{
            "dim": 2,
            "rays": [[1,0],[0,1],[-1,-1]],
            "maximal_cones": [[0,1],[1,2],[2,0]],
            "phi": ["-1","-1","-1"]
        }"#;
        let (pl, warnings) = parse_spec(json).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(pl.scale(), &BigInt::from(1));
        let p = pl.section_polytope().unwrap();
        assert_eq!(p.lattice_points().len(), 10);
    }

    #[test]
    fn parse_fan_spec_with_scale_and_fractions() {
        let json = r#"{
            "dim": 1,
            "rays": [[1],[-1]],
            "maximal_cones": [[0],[1]],
            "phi": ["-1/2","-1"],
            "r": 4
        }"#;
        let (pl, _) = parse_spec(json).unwrap();
        assert_eq!(pl.scale(), &BigInt::from(4));
    }

    #[test]
    fn parse_hrep_spec() {
        let json = r#"{
            "normals": [[1,0],[0,1],[-1,0],[0,-1]],
            "offsets": ["-1","-1","-1","-1"]
        }"#;
        let (pl, _) = parse_spec(json).unwrap();
        let p = pl.section_polytope().unwrap();
        assert_eq!(p.lattice_points().len(), 9);
    }

    #[test]
    fn bad_rational_reported() {
        let json = r#"{
            "dim": 1,
            "rays": [[1],[-1]],
            "maximal_cones": [[0],[1]],
            "phi": ["-1","1/0"]
        }"#;
        assert!(matches!(parse_spec(json), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn warnings_surface_from_fan_build() {
        let json = r#"{
            "dim": 1,
            "rays": [[2],[-1]],
            "maximal_cones": [[0],[1]],
            "phi": ["-1","-1"]
        }"#;
        let (_, warnings) = parse_spec(json).unwrap();
        assert_eq!(warnings.len(), 1);
    }
}
