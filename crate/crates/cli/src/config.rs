//! JSON run-configuration file and the scalar-or-grid value type shared with
//! the command-line flags. Flags override file values; the merge happens in
//! each command's resolver.

use std::path::PathBuf;
use std::str::FromStr;

use serde::Deserialize;

/// A single value or a uniform grid, `{"min": a, "max": b, "count": n}` in
/// JSON or `min:max:count` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum FloatOrGrid {
    Value(f64),
    Grid { min: f64, max: f64, count: usize },
}

impl FloatOrGrid {
    pub fn points(&self) -> Result<Vec<f64>, String> {
        match *self {
            FloatOrGrid::Value(v) => Ok(vec![v]),
            FloatOrGrid::Grid { min, max, count } => {
                if count < 1 {
                    return Err("grid count must be >= 1".into());
                }
                if min > max {
                    return Err(format!("grid min {min} exceeds max {max}"));
                }
                if count == 1 {
                    return Ok(vec![min]);
                }
                Ok((0..count)
                    .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
                    .collect())
            }
        }
    }

    pub fn scalar(&self) -> Result<f64, String> {
        match *self {
            FloatOrGrid::Value(v) => Ok(v),
            FloatOrGrid::Grid { min, count: 1, .. } => Ok(min),
            FloatOrGrid::Grid { .. } => Err("expected a single value, found a grid".into()),
        }
    }
}

impl FromStr for FloatOrGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<f64>() {
            return Ok(FloatOrGrid::Value(v));
        }
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected a number or min:max:count, got `{s}`"));
        }
        let min = parts[0]
            .parse::<f64>()
            .map_err(|e| format!("bad grid min `{}`: {e}", parts[0]))?;
        let max = parts[1]
            .parse::<f64>()
            .map_err(|e| format!("bad grid max `{}`: {e}", parts[1]))?;
        let count = parts[2]
            .parse::<usize>()
            .map_err(|e| format!("bad grid count `{}`: {e}", parts[2]))?;
        Ok(FloatOrGrid::Grid { min, max, count })
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub kind: Option<String>,
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    pub n_sites: Option<usize>,
    pub boundary: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransmonConfig {
    pub ej_max_ghz: Option<f64>,
    pub ec_ghz: Option<f64>,
    pub flux_over_phi0: Option<f64>,
}

/// The JSON run configuration. Every key is optional; command-line flags
/// take precedence over file values.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub command: Option<String>,
    pub n: Option<usize>,
    pub omega_r_ghz: Option<f64>,
    pub omega_a_ghz: Option<FloatOrGrid>,
    pub f_ghz: Option<FloatOrGrid>,
    pub target_j_ghz: Option<f64>,
    pub lattice: Option<LatticeConfig>,
    pub transmon: Option<TransmonConfig>,
    pub times_ns: Option<FloatOrGrid>,
    pub psi0_site: Option<usize>,
    pub compare: Option<bool>,
    pub flavor: Option<String>,
    pub k1_count: Option<usize>,
    pub k2_count: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Option<String>,
    pub precision: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    pub fn lattice(&self) -> LatticeConfig {
        self.lattice.clone().unwrap_or_default()
    }

    pub fn transmon(&self) -> TransmonConfig {
        self.transmon.clone().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scalar_and_grid_strings() {
        assert_eq!(
            "0.25".parse::<FloatOrGrid>().unwrap(),
            FloatOrGrid::Value(0.25)
        );
        assert_eq!(
            "0:0.3:31".parse::<FloatOrGrid>().unwrap(),
            FloatOrGrid::Grid {
                min: 0.0,
                max: 0.3,
                count: 31
            }
        );
        assert!("1:2".parse::<FloatOrGrid>().is_err());
    }

    #[test]
    fn grid_points_are_inclusive_and_uniform() {
        let g = FloatOrGrid::Grid {
            min: 1.0,
            max: 2.0,
            count: 5,
        };
        assert_eq!(g.points().unwrap(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        assert_eq!(FloatOrGrid::Value(3.0).points().unwrap(), vec![3.0]);
        assert!(FloatOrGrid::Grid {
            min: 2.0,
            max: 1.0,
            count: 3
        }
        .points()
        .is_err());
        assert!(FloatOrGrid::Grid {
            min: 0.0,
            max: 1.0,
            count: 0
        }
        .points()
        .is_err());
    }

    #[test]
    fn config_json_round_trip() {
        let cfg: FileConfig = serde_json::from_str(
            r#"{
                "command": "coupling-sweep",
                "n": 3,
                "omega_r_ghz": 5.0,
                "omega_a_ghz": {"min": 5.0, "max": 7.0, "count": 41},
                "f_ghz": 0.1,
                "lattice": {"kind": "kagome", "l1": 4, "l2": 4, "boundary": "periodic"},
                "transmon": {"ej_max_ghz": 50.0, "ec_ghz": 0.25},
                "precision": 9
            }"#,
        )
        .unwrap();
        assert_eq!(cfg.command.as_deref(), Some("coupling-sweep"));
        assert_eq!(cfg.n, Some(3));
        assert_eq!(cfg.f_ghz, Some(FloatOrGrid::Value(0.1)));
        assert_eq!(cfg.lattice().l1, Some(4));
        assert_eq!(cfg.precision, Some(9));
        assert!(serde_json::from_str::<FileConfig>(r#"{"bogus": 1}"#).is_err());
    }
}
