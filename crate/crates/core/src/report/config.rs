use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{RunError, SUITES};
use crate::algebra::LieAlgebra;
use crate::group::TracePairing;
use crate::path::Splitting;

/// The splitting function `f`: a named choice or polynomial coefficients
/// in `u = θ/2π`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SplittingSpec {
    Named(String),
    Coefficients(Vec<f64>),
}

impl Default for SplittingSpec {
    fn default() -> Self {
        SplittingSpec::Named("linear".into())
    }
}

impl std::str::FromStr for SplittingSpec {
    type Err = RunError;

    /// `linear`, `smoothstep`, or comma-separated coefficients.
    fn from_str(s: &str) -> Result<Self, RunError> {
        let s = s.trim();
        if s.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Ok(SplittingSpec::Named(s.to_string()));
        }
        s.split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map(SplittingSpec::Coefficients)
            .map_err(|e| RunError::Config(format!("splitting coefficients {s:?}: {e}")))
    }
}

impl SplittingSpec {
    pub fn resolve(&self) -> Result<Splitting, RunError> {
        match self {
            SplittingSpec::Named(name) => match name.as_str() {
                "linear" => Ok(Splitting::linear()),
                "smoothstep" => Ok(Splitting::smoothstep()),
                other => Err(RunError::Config(format!(
                    "unknown splitting {other:?}; use linear, smoothstep or coefficients"
                ))),
            },
            SplittingSpec::Coefficients(c) => Splitting::new(c.clone()).map_err(RunError::Splitting),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nt: usize,
    pub ntheta: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self { nt: 128, ntheta: 128 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bound for algebraic identities that hold exactly up to roundoff.
    pub exact: f64,
    /// Overrides the per-suite thresholds of the grid-based checks.
    pub quadrature: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            exact: 1e-10,
            quadrature: None,
        }
    }
}

/// Everything that determines a report. Serialized verbatim into it so a
/// report can be replayed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// A bundled algebra name (`su2`, `so3`, `sl2`) or a path to a JSON
    /// presentation.
    pub algebra: String,
    pub k: f64,
    pub degree: usize,
    pub splitting: SplittingSpec,
    pub grid: Grid,
    pub seed: u64,
    pub trials: usize,
    pub tolerances: Tolerances,
    /// Scale linking the matrix trace form to the algebra's form.
    pub pairing: TracePairing,
    /// Suite names, or `["all"]`.
    pub suites: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            algebra: "su2".into(),
            k: 1.0,
            degree: 4,
            splitting: SplittingSpec::default(),
            grid: Grid::default(),
            seed: 0,
            trials: 200,
            tolerances: Tolerances::default(),
            pairing: TracePairing::default(),
            suites: vec!["all".into()],
        }
    }
}

impl RunConfig {
    /// Suite names in registry order, with `all` expanded and duplicates
    /// removed.
    pub fn suite_names(&self) -> Result<Vec<&'static str>, RunError> {
        if self.suites.is_empty() {
            return Err(RunError::Config("no suites selected".into()));
        }
        for name in &self.suites {
            if name != "all" && !SUITES.iter().any(|s| s.name == name) {
                return Err(RunError::UnknownSuite(name.clone()));
            }
        }
        let all = self.suites.iter().any(|s| s == "all");
        Ok(SUITES
            .iter()
            .filter(|s| all || self.suites.iter().any(|n| n == s.name))
            .map(|s| s.name)
            .collect())
    }

    pub fn load_algebra(&self) -> Result<Arc<LieAlgebra>, RunError> {
        if let Some(a) = LieAlgebra::bundled(&self.algebra) {
            return Ok(Arc::new(a));
        }
        LieAlgebra::from_file(&self.algebra)
            .map(Arc::new)
            .map_err(|source| RunError::AlgebraFile {
                path: self.algebra.clone(),
                source,
            })
    }

    /// Checks the numeric invariants; suite names, the algebra and the
    /// splitting are checked when they are resolved.
    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |m: String| Err(RunError::Config(m));
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        if self.degree < 2 {
            return bad(format!("degree must be at least 2, got {}", self.degree));
        }
        if !self.k.is_finite() {
            return bad(format!("level k must be finite, got {}", self.k));
        }
        if !(self.tolerances.exact > 0.0) {
            return bad(format!("exact tolerance must be positive, got {}", self.tolerances.exact));
        }
        if let Some(q) = self.tolerances.quadrature {
            if !(q > 0.0) {
                return bad(format!("quadrature tolerance must be positive, got {q}"));
            }
        }
        if self.grid.nt < 8 || self.grid.ntheta < 8 {
            return bad(format!("grid must be at least 8 x 8, got {} x {}", self.grid.nt, self.grid.ntheta));
        }
        if !(self.pairing.scale.is_finite() && self.pairing.scale != 0.0) {
            return bad(format!("pairing scale must be finite and nonzero, got {}", self.pairing.scale));
        }
        Ok(())
    }

    /// `k` as an integer, for the group-level suites where `κ` is only
    /// well defined at integer level.
    pub fn integer_level(&self) -> Option<i64> {
        (self.k.fract() == 0.0 && self.k.abs() < 1e15).then_some(self.k as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_spec_parsing() {
        assert_eq!("linear".parse::<SplittingSpec>().unwrap(), SplittingSpec::Named("linear".into()));
        assert_eq!(
            "0, 0,3,-2".parse::<SplittingSpec>().unwrap(),
            SplittingSpec::Coefficients(vec![0.0, 0.0, 3.0, -2.0])
        );
        assert!("0,x".parse::<SplittingSpec>().is_err());
        assert!(matches!(
            SplittingSpec::Coefficients(vec![0.0, 2.0]).resolve(),
            Err(RunError::Splitting(_))
        ));
        assert!(SplittingSpec::Named("cubic".into()).resolve().is_err());
    }

    #[test]
    fn suite_selection() {
        let mut c = RunConfig::default();
        assert_eq!(c.suite_names().unwrap().len(), SUITES.len());
        c.suites = vec!["pkg-jacobi".into(), "gk-jacobi".into(), "gk-jacobi".into()];
        assert_eq!(c.suite_names().unwrap(), vec!["gk-jacobi", "pkg-jacobi"]);
        c.suites = vec!["nonesuch".into()];
        assert!(matches!(c.suite_names(), Err(RunError::UnknownSuite(_))));
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let c = RunConfig {
            degree: 1,
            ..RunConfig::default()
        };
        assert!(matches!(c.validate(), Err(RunError::Config(_))));
        let c = RunConfig {
            trials: 0,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
        assert_eq!(RunConfig { k: -2.0, ..RunConfig::default() }.integer_level(), Some(-2));
        assert_eq!(RunConfig { k: 0.5, ..RunConfig::default() }.integer_level(), None);
    }

    #[test]
    fn round_trips_through_json() {
        let c = RunConfig {
            splitting: SplittingSpec::Coefficients(vec![0.0, 0.0, 3.0, -2.0]),
            tolerances: Tolerances {
                exact: 1e-11,
                quadrature: Some(1e-3),
            },
            ..RunConfig::default()
        };
        let back: RunConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
