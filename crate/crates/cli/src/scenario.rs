//! JSON scenario files.
//!
//! Angles are radians and lengths are in minimum turn radii.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use dubins_intercept_core::{Configuration, SolverSettings, TargetTrajectory, WindField, WindModel};
use serde::{Deserialize, Deserializer};

pub const DEFAULT_HORIZON: f64 = 8.0 * std::f64::consts::PI;

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub description: String,
    #[serde(default, deserialize_with = "positive_opt")]
    pub horizon: Option<f64>,
    #[serde(default)]
    pub settings: SettingsOverrides,
    pub target: TargetSpec,
}

#[derive(Debug, Default, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettingsOverrides {
    #[serde(default, deserialize_with = "positive_opt")]
    pub scan_step: Option<f64>,
    #[serde(default, deserialize_with = "positive_opt")]
    pub root_tol: Option<f64>,
    #[serde(default, deserialize_with = "positive_opt")]
    pub value_tol: Option<f64>,
    /// Interception (certification) tolerance.
    #[serde(default, deserialize_with = "positive_opt")]
    pub tol: Option<f64>,
}

impl SettingsOverrides {
    pub fn apply(&self, mut s: SolverSettings) -> SolverSettings {
        if let Some(v) = self.scan_step {
            s.roots.scan_step = v;
        }
        if let Some(v) = self.root_tol {
            s.roots.root_tol = v;
        }
        if let Some(v) = self.value_tol {
            s.roots.value_tol = v;
        }
        if let Some(v) = self.tol {
            s.certify_tol = v;
        }
        s
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
}

impl From<Pose> for Configuration {
    fn from(p: Pose) -> Self {
        Configuration::new(p.x, p.y, p.phi)
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetSpec {
    Static {
        x: f64,
        y: f64,
        phi: f64,
    },
    RotatingPoint {
        x0: f64,
        y0: f64,
        alpha: f64,
    },
    Linear {
        x: f64,
        y: f64,
        phi: f64,
        vx: f64,
        vy: f64,
    },
    Circular {
        cx: f64,
        cy: f64,
        #[serde(deserialize_with = "positive")]
        r: f64,
        omega: f64,
        #[serde(default)]
        phase: f64,
        #[serde(default = "tangential")]
        heading_offset: f64,
    },
    Wind {
        goal: Pose,
        wind: WindSpec,
    },
    Track {
        /// CSV `t,x,y,phi`, relative to the scenario file.
        path: PathBuf,
    },
}

fn tangential() -> f64 {
    std::f64::consts::FRAC_PI_2
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum WindSpec {
    Constant {
        wx: f64,
        wy: f64,
    },
    /// `w(t) = mean + amplitude · sin(ω t + phase)`.
    Sinusoidal {
        mean: [f64; 2],
        amplitude: [f64; 2],
        omega: f64,
        #[serde(default)]
        phase: f64,
    },
}

fn positive<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    let v = f64::deserialize(d)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(serde::de::Error::custom(format!("expected a positive number, got {v}")))
    }
}

fn positive_opt<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
    positive(d).map(Some)
}

/// A parsed scenario and the target it describes.
pub struct Loaded {
    pub scenario: Scenario,
    pub target: TargetTrajectory,
}

pub fn load(path: &Path) -> Result<Loaded, InputError> {
    let name = path.display();
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{name}: {e}")))?;
    let scenario: Scenario = serde_json::from_str(&text).map_err(|e| {
        // serde_json appends " at line L column C"; move it to the front.
        let msg = e.to_string();
        let bare = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m);
        InputError(format!("{name}:{}:{}: {bare}", e.line(), e.column()))
    })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let target = build_target(&scenario.target, base).map_err(|e| match e {
        TargetBuildError::Track(msg) => InputError(msg),
        TargetBuildError::Other(msg) => InputError(format!("{name}: {msg}")),
    })?;
    Ok(Loaded { scenario, target })
}

enum TargetBuildError {
    Track(String),
    Other(String),
}

fn build_target(spec: &TargetSpec, base: &Path) -> Result<TargetTrajectory, TargetBuildError> {
    Ok(match *spec {
        TargetSpec::Static { x, y, phi } => TargetTrajectory::static_target(Configuration::new(x, y, phi)),
        TargetSpec::RotatingPoint { x0, y0, alpha } => TargetTrajectory::rotating_point(x0, y0, alpha),
        TargetSpec::Linear { x, y, phi, vx, vy } => TargetTrajectory::linear_uniform(Configuration::new(x, y, phi), vx, vy),
        TargetSpec::Circular { cx, cy, r, omega, phase, heading_offset } => {
            TargetTrajectory::circular(cx, cy, r, omega, phase, heading_offset)
                .map_err(|e| TargetBuildError::Other(e.to_string()))?
        }
        TargetSpec::Wind { goal, wind } => {
            let model = match wind {
                WindSpec::Constant { wx, wy } => WindModel::Constant { wx, wy },
                WindSpec::Sinusoidal { mean, amplitude, omega, phase } => WindModel::Sinusoidal {
                    mean: (mean[0], mean[1]),
                    amplitude: (amplitude[0], amplitude[1]),
                    omega,
                    phase,
                },
            };
            TargetTrajectory::wind_goal(WindField { model, goal: goal.into() })
        }
        TargetSpec::Track { ref path } => load_track(&base.join(path)).map_err(TargetBuildError::Track)?,
    })
}

#[derive(Debug, Deserialize)]
struct TrackRow {
    t: f64,
    x: f64,
    y: f64,
    phi: f64,
}

/// Reads a `t,x,y,phi` track file into a sampled target.
pub fn load_track(path: &Path) -> Result<TargetTrajectory, String> {
    let name = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| format!("{name}: {e}"))?;
    let headers = reader.headers().map_err(|e| format!("{name}:1: {e}"))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["t", "x", "y", "phi"] {
        return Err(format!("{name}:1: expected header `t,x,y,phi`"));
    }
    let mut samples = Vec::new();
    let mut lines = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            format!("{name}:{line}: {e}")
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row: TrackRow = record.deserialize(Some(&headers)).map_err(|e| format!("{name}:{line}: {e}"))?;
        if ![row.t, row.x, row.y, row.phi].iter().all(|v| v.is_finite()) {
            return Err(format!("{name}:{line}: non-finite value"));
        }
        samples.push((row.t, Configuration::new(row.x, row.y, row.phi)));
        lines.push(line);
    }
    TargetTrajectory::sampled(samples).map_err(|e| match e {
        dubins_intercept_core::TargetError::NonMonotoneTimes(i) => format!("{name}:{}: {e}", lines[i]),
        _ => format!("{name}: {e}"),
    })
}
