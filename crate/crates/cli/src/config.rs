//! TOML run configuration.
//!
//! ```toml
//! operator = "caputo"      # or "cf"
//! alpha = 0.98
//! horizon = 50.0
//! step = 0.01
//! cf_mode = "standard"     # or "corrected"; optional
//! normalization = 1.0      # optional
//!
//! [params]
//! a1 = 3.0
//! # ... a2 to a7
//!
//! [initial]
//! x = 0.5
//! y = 0.9
//! z = 0.1
//! ```
//!
//! Only `params` is needed by every subcommand. Unknown keys are errors.

use std::fmt;
use std::ops::Range;
use std::path::{Path, PathBuf};

use lvfrac::{CfMode, FractionalOrder, ModelParams, SolverConfig, StateVector};
use serde::{Deserialize, Serialize};
use toml::Spanned;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorChoice {
    Caputo,
    Cf,
}

/// A validated configuration, echoed verbatim into run manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub params: ModelParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<StateVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default)]
    pub cf_mode: CfMode,
    #[serde(default = "unit")]
    pub normalization: f64,
}

fn unit() -> f64 {
    1.0
}

/// The same document with source positions for diagnostics.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    operator: Option<OperatorChoice>,
    alpha: Option<Spanned<f64>>,
    params: ModelParams,
    initial: Option<StateVector>,
    horizon: Option<Spanned<f64>>,
    step: Option<Spanned<f64>>,
    #[serde(default)]
    cf_mode: CfMode,
    normalization: Option<Spanned<f64>>,
}

#[derive(Debug)]
pub struct ConfigError {
    pub path: PathBuf,
    pub line: Option<usize>,
    pub field: Option<&'static str>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.path.display())?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if let Some(field) = self.field {
            write!(f, ": field `{field}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

fn line_of(source: &str, span: Range<usize>) -> usize {
    source[..span.start.min(source.len())].matches('\n').count() + 1
}

/// A run's solver inputs, all present and validated.
#[derive(Debug, Clone, Copy)]
pub struct Simulation {
    pub operator: OperatorChoice,
    pub order: FractionalOrder,
    pub initial: StateVector,
    pub solver: SolverConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let source = std::fs::read_to_string(path).map_err(|e| ConfigError {
            path: path.to_path_buf(),
            line: None,
            field: None,
            message: e.to_string(),
        })?;
        Self::parse(&source, path)
    }

    pub fn parse(source: &str, path: &Path) -> Result<Self, ConfigError> {
        let error = |span: Option<Range<usize>>, field, message: String| ConfigError {
            path: path.to_path_buf(),
            line: span.map(|s| line_of(source, s)),
            field,
            message,
        };
        let raw: RawConfig = toml::from_str(source)
            .map_err(|e| error(e.span(), None, e.message().trim().to_string()))?;

        let positive = |value: &Option<Spanned<f64>>,
                        field: &'static str|
         -> Result<Option<f64>, ConfigError> {
            match value {
                Some(v) if !(v.get_ref().is_finite() && *v.get_ref() > 0.0) => Err(error(
                    Some(v.span()),
                    Some(field),
                    format!("must be finite and > 0, got {}", v.get_ref()),
                )),
                Some(v) => Ok(Some(*v.get_ref())),
                None => Ok(None),
            }
        };
        let horizon = positive(&raw.horizon, "horizon")?;
        let step = positive(&raw.step, "step")?;
        let normalization = positive(&raw.normalization, "normalization")?.unwrap_or(1.0);
        if let (Some(h), Some(t), Some(span)) =
            (step, horizon, raw.horizon.as_ref().map(|s| s.span()))
        {
            if t < h {
                return Err(error(
                    Some(span),
                    Some("horizon"),
                    format!("must be at least one step ({h}), got {t}"),
                ));
            }
        }
        if let Some(a) = &raw.alpha {
            FractionalOrder::new(*a.get_ref())
                .map_err(|e| error(Some(a.span()), Some("alpha"), e.to_string()))?;
        }

        Ok(RunConfig {
            operator: raw.operator,
            alpha: raw.alpha.map(|a| a.into_inner()),
            params: raw.params,
            initial: raw.initial,
            horizon,
            step,
            cf_mode: raw.cf_mode,
            normalization,
        })
    }

    pub fn order(&self) -> Result<FractionalOrder, String> {
        let alpha = self
            .alpha
            .ok_or("`alpha` is required (in the config or via --alpha)")?;
        FractionalOrder::new(alpha).map_err(|e| e.to_string())
    }

    /// Everything `simulate` needs, or the first missing or invalid field.
    pub fn simulation(&self) -> Result<Simulation, String> {
        let missing = |name: &str| format!("`{name}` is required for simulate");
        let operator = self.operator.ok_or_else(|| missing("operator"))?;
        let initial = self.initial.ok_or_else(|| missing("initial"))?;
        let horizon = self.horizon.ok_or_else(|| missing("horizon"))?;
        let step = self.step.ok_or_else(|| missing("step"))?;
        let solver = SolverConfig::with_options(step, horizon, self.normalization, self.cf_mode)
            .map_err(|e| e.to_string())?;
        Ok(Simulation {
            operator,
            order: self.order()?,
            initial,
            solver,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
operator = "caputo"
alpha = 0.98
horizon = 50.0
step = 0.01

[params]
a1 = 3.0
a2 = 0.5
a3 = 4.0
a4 = 3.0
a5 = 4.0
a6 = 9.0
a7 = 4.0

[initial]
x = 0.5
y = 0.9
z = 0.1
"#;

    fn parse(s: &str) -> Result<RunConfig, ConfigError> {
        RunConfig::parse(s, Path::new("run.toml"))
    }

    #[test]
    fn parses_full_config() {
        let c = parse(EXAMPLE).unwrap();
        assert_eq!(c.operator, Some(OperatorChoice::Caputo));
        assert_eq!(c.cf_mode, CfMode::Standard);
        assert_eq!(c.normalization, 1.0);
        let sim = c.simulation().unwrap();
        assert_eq!(sim.solver.num_steps(), 5000);
    }

    #[test]
    fn unknown_key_reports_line() {
        let e = parse(&EXAMPLE.replace("step = 0.01", "step = 0.01\nstpe = 1")).unwrap_err();
        assert_eq!(e.line, Some(6));
        assert!(e.message.contains("stpe"), "{e}");
    }

    #[test]
    fn zero_horizon_names_field() {
        let e = parse(&EXAMPLE.replace("horizon = 50.0", "horizon = 0.0")).unwrap_err();
        assert_eq!((e.line, e.field), (Some(4), Some("horizon")));
    }

    #[test]
    fn bad_alpha_and_params() {
        let e = parse(&EXAMPLE.replace("alpha = 0.98", "alpha = 1.5")).unwrap_err();
        assert_eq!(e.field, Some("alpha"));
        let e = parse(&EXAMPLE.replace("a3 = 4.0", "a3 = -4.0")).unwrap_err();
        assert!(e.message.contains("a3"), "{e}");
        assert!(e.line.is_some());
    }

    #[test]
    fn params_only_is_enough_for_analysis() {
        let start = EXAMPLE.find("[params]").unwrap();
        let end = EXAMPLE.find("[initial]").unwrap();
        let c = parse(&EXAMPLE[start..end]).unwrap();
        assert!(c.simulation().is_err());
        assert!(c.order().is_err());
    }

    #[test]
    fn echo_round_trips_through_json_and_toml() {
        let c = parse(EXAMPLE).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        assert_eq!(parse(&toml::to_string(&back).unwrap()).unwrap(), c);
    }
}
