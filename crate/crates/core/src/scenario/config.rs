use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::{InitialState, SystemParams};

use super::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    SpontaneousEmission,
    ResonanceFluorescence,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// File stem; the extension follows the format.
    #[serde(default = "default_stem")]
    pub path: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_stem() -> PathBuf {
    PathBuf::from("spectrum")
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            path: default_stem(),
            format: OutputFormat::Csv,
        }
    }
}

/// Uniform frequency axis `nu_min, nu_min + nu_step, ..., nu_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuRange {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl NuRange {
    pub fn len(&self) -> usize {
        ((self.max - self.min) / self.step).round() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid points computed as `min + i * step`, so no error accumulates.
    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.min + i as f64 * self.step).collect()
    }
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub params: SystemParams,
    pub bandwidth: f64,
    pub nu: NuRange,
    pub times: Vec<f64>,
    pub initial: InitialState,
    pub output: OutputSpec,
}

impl ScenarioConfig {
    pub fn nus(&self) -> Vec<f64> {
        self.nu.points()
    }

    pub fn to_document(&self) -> ConfigDocument {
        let initial = match self.initial {
            InitialState::Explicit(q) => InitialSpec::Complex(q.map(|z| [z.re, z.im]).to_vec()),
            other => InitialSpec::Tag(other.tag().to_string()),
        };
        ConfigDocument {
            kind: Some(self.kind),
            omega: Some(self.params.rabi),
            laser_detuning: Some(self.params.laser_detuning),
            delta: Some(self.params.zeeman_diff),
            gamma: Some(self.params.gamma),
            filter: Some(self.bandwidth),
            nu_min: Some(self.nu.min),
            nu_max: Some(self.nu.max),
            nu_step: Some(self.nu.step),
            times: Some(self.times.clone()),
            initial: Some(initial),
            output: Some(self.output.clone()),
        }
    }

    /// Full TOML form, with every default spelled out.
    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_document()).expect("config document is always serializable")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialSpec {
    Tag(String),
    Real(Vec<f64>),
    Complex(Vec<[f64; 2]>),
}

/// The configuration file as written, before defaults and validation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<ScenarioKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(rename = "Delta", skip_serializing_if = "Option::is_none")]
    pub laser_detuning: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

fn err(path: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError {
        path: path.to_string(),
        reason: reason.into(),
    }
}

/// Default axes for free decay: a doublet at 0 and 2, watched up to t = 14.
pub(crate) fn se_default_axes() -> (NuRange, Vec<f64>) {
    let nu = NuRange {
        min: -6.0,
        max: 4.0,
        step: 0.025,
    };
    let times = (1..=28).map(|k| 0.5 * k as f64).collect();
    (nu, times)
}

/// Default axes for the driven emitter: both sidebands out to 18.
pub(crate) fn rf_default_axes() -> (NuRange, Vec<f64>) {
    let nu = NuRange {
        min: -18.0,
        max: 18.0,
        step: 0.05,
    };
    let times = vec![1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 10.0, 15.0, 20.0];
    (nu, times)
}

fn parse_initial(spec: &InitialSpec) -> Result<InitialState, ConfigError> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    match spec {
        InitialSpec::Tag(tag) => match tag.as_str() {
            "excited-superposition" => Ok(InitialState::ExcitedSuperposition),
            "ground-superposition" => Ok(InitialState::GroundSuperposition),
            other => Err(err(
                "initial",
                format!("unknown state `{other}`, expected excited-superposition, ground-superposition or an 8-vector"),
            )),
        },
        InitialSpec::Real(v) => {
            let q: [f64; 8] = v
                .as_slice()
                .try_into()
                .map_err(|_| err("initial", format!("expected 8 components, got {}", v.len())))?;
            Ok(InitialState::Explicit(q.map(|x| c(x, 0.0))))
        }
        InitialSpec::Complex(v) => {
            let q: [[f64; 2]; 8] = v
                .as_slice()
                .try_into()
                .map_err(|_| err("initial", format!("expected 8 components, got {}", v.len())))?;
            Ok(InitialState::Explicit(q.map(|[re, im]| c(re, im))))
        }
    }
}

fn check_finite(path: &str, x: f64) -> Result<f64, ConfigError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(err(path, format!("must be finite, got {x}")))
    }
}

/// Parses and validates a TOML scenario document.
///
/// Missing keys take the defaults of the scenario kind; `kind` itself
/// defaults to `resonance-fluorescence`.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let doc: ConfigDocument = toml::from_str(text).map_err(|e| {
        let path = e
            .message()
            .split('`')
            .nth(1)
            .filter(|_| e.message().starts_with("unknown field"))
            .unwrap_or("")
            .to_string();
        ConfigError {
            path,
            reason: e.message().trim().to_string(),
        }
    })?;
    from_document(doc)
}

pub fn from_document(doc: ConfigDocument) -> Result<ScenarioConfig, ConfigError> {
    let kind = doc.kind.unwrap_or(ScenarioKind::ResonanceFluorescence);
    let se = kind == ScenarioKind::SpontaneousEmission;

    let omega = check_finite("omega", doc.omega.unwrap_or(0.0))?;
    let laser_detuning = check_finite("Delta", doc.laser_detuning.unwrap_or(0.0))?;
    let delta = check_finite("delta", doc.delta.unwrap_or(0.0))?;
    let gamma = check_finite("gamma", doc.gamma.unwrap_or(1.0))?;
    let bandwidth = check_finite("filter", doc.filter.unwrap_or(0.5))?;

    if se && omega != 0.0 {
        return Err(err("omega", "spontaneous-emission requires omega = 0"));
    }
    if se && laser_detuning != 0.0 {
        return Err(err("Delta", "spontaneous-emission requires Delta = 0"));
    }
    if omega < 0.0 {
        return Err(err("omega", "must be non-negative"));
    }
    if gamma <= 0.0 {
        return Err(err("gamma", "must be positive"));
    }
    if bandwidth <= 0.0 {
        return Err(err("filter", "filter bandwidth must be positive"));
    }
    let params = SystemParams::from_branching(omega, laser_detuning, delta, gamma)
        .map_err(|e| err("gamma", e.to_string()))?;

    let initial = match &doc.initial {
        Some(spec) => parse_initial(spec)?,
        None if kind == ScenarioKind::ResonanceFluorescence => InitialState::GroundSuperposition,
        None if se => InitialState::ExcitedSuperposition,
        None => InitialState::GroundSuperposition,
    };
    if se && initial != InitialState::ExcitedSuperposition {
        return Err(err(
            "initial",
            "spontaneous-emission starts from excited-superposition",
        ));
    }
    if let InitialState::Explicit(q) = initial {
        if q.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(err("initial", "components must be finite"));
        }
    }

    let (default_nu, default_times) = if se { se_default_axes() } else { rf_default_axes() };
    let nu = NuRange {
        min: check_finite("nu_min", doc.nu_min.unwrap_or(default_nu.min))?,
        max: check_finite("nu_max", doc.nu_max.unwrap_or(default_nu.max))?,
        step: check_finite("nu_step", doc.nu_step.unwrap_or(default_nu.step))?,
    };
    if nu.step <= 0.0 {
        return Err(err("nu_step", "must be positive"));
    }
    if nu.max < nu.min {
        return Err(err("nu_max", "must not be below nu_min"));
    }
    let spans = (nu.max - nu.min) / nu.step;
    if (spans - spans.round()).abs() > 1e-9 * spans.max(1.0) {
        return Err(err("nu_step", "nu_max - nu_min must be a whole number of steps"));
    }
    if spans.round() > 1e7 {
        return Err(err("nu_step", "more than 1e7 frequency points"));
    }

    let times = doc.times.clone().unwrap_or(default_times);
    if times.is_empty() {
        return Err(err("times", "time grid is empty"));
    }
    for (i, &t) in times.iter().enumerate() {
        if !t.is_finite() || t < 0.0 {
            return Err(err(&format!("times[{i}]"), format!("must be finite and non-negative, got {t}")));
        }
        if i > 0 && t <= times[i - 1] {
            return Err(err(&format!("times[{i}]"), "time grid must be strictly increasing"));
        }
    }

    Ok(ScenarioConfig {
        kind,
        params,
        bandwidth,
        nu,
        times,
        initial,
        output: doc.output.unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_se_document_gets_doublet_axes() {
        let cfg = parse_config("kind = \"spontaneous-emission\"\ndelta = -2\nfilter = 0.5\n").unwrap();
        assert_eq!(cfg.params, SystemParams::spontaneous_emission(-2.0).unwrap());
        assert_eq!(cfg.bandwidth, 0.5);
        assert_eq!(cfg.initial, InitialState::ExcitedSuperposition);
        let nus = cfg.nus();
        assert_eq!(nus.len(), 401);
        assert_eq!((nus[0], nus[400]), (-6.0, 4.0));
        assert_eq!(cfg.times.len(), 28);
        assert_eq!((cfg.times[0], cfg.times[27]), (0.5, 14.0));
    }

    #[test]
    fn rf_document_gets_sideband_axes() {
        let cfg = parse_config("omega = 6\ndelta = -7\nDelta = 0\nfilter = 0.5\n").unwrap();
        assert_eq!(cfg.kind, ScenarioKind::ResonanceFluorescence);
        assert_eq!(cfg.params, SystemParams::new(6.0, 0.0, -7.0).unwrap());
        assert_eq!(cfg.initial, InitialState::GroundSuperposition);
        assert_eq!(cfg.nus().len(), 721);
        assert_eq!(cfg.times, vec![1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 10.0, 15.0, 20.0]);
    }

    #[test]
    fn se_constraints() {
        let e = parse_config("kind = \"spontaneous-emission\"\nomega = 1\n").unwrap_err();
        assert_eq!(e.path, "omega");
        let e = parse_config("kind = \"spontaneous-emission\"\nDelta = 1\n").unwrap_err();
        assert_eq!(e.path, "Delta");
        let e = parse_config("kind = \"spontaneous-emission\"\ninitial = \"ground-superposition\"\n").unwrap_err();
        assert_eq!(e.path, "initial");
    }

    #[test]
    fn grid_errors() {
        assert_eq!(parse_config("times = []").unwrap_err().path, "times");
        assert_eq!(parse_config("times = [1, 1]").unwrap_err().path, "times[1]");
        assert_eq!(parse_config("times = [-1]").unwrap_err().path, "times[0]");
        assert_eq!(parse_config("nu_step = 0").unwrap_err().path, "nu_step");
        assert_eq!(parse_config("nu_min = 0\nnu_max = 1\nnu_step = 0.3").unwrap_err().path, "nu_step");
        assert_eq!(parse_config("nu_min = 1\nnu_max = 0").unwrap_err().path, "nu_max");
        let single = parse_config("nu_min = 3\nnu_max = 3\nnu_step = 1\ntimes = [2]").unwrap();
        assert_eq!(single.nus(), vec![3.0]);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = parse_config("omega = 6\nrabi = 6\n").unwrap_err();
        assert_eq!(e.path, "rabi");
        assert!(parse_config("filter = -1").is_err());
        assert!(parse_config("initial = \"dark\"").is_err());
        assert!(parse_config("initial = [1, 0]").is_err());
    }

    #[test]
    fn explicit_initial_states() {
        let cfg = parse_config("initial = [0, 0, 0, 0, 0, 1, 0, 0]").unwrap();
        let InitialState::Explicit(q) = cfg.initial else { panic!() };
        assert_eq!(q[5], Complex64::new(1.0, 0.0));
        let cfg = parse_config("initial = [[0.5,0],[0,0.1],[0.5,0],[0,0],[0,-0.1],[0,0],[0,0],[0,0]]").unwrap();
        let InitialState::Explicit(q) = cfg.initial else { panic!() };
        assert_eq!(q[1], Complex64::new(0.0, 0.1));
    }

    #[test]
    fn toml_round_trip() {
        let text = "kind = \"custom\"\nomega = 2.5\ndelta = -1\ngamma = 1\nnu_min = -4\nnu_max = 4\nnu_step = 0.1\n\
                    times = [0.5, 3]\ninitial = [[0.5,0],[0,0.1],[0.5,0],[0,0],[0,-0.1],[0,0],[0,0],[0,0]]\n\
                    [output]\npath = \"out/custom\"\nformat = \"json\"\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(parse_config(&cfg.to_toml()).unwrap(), cfg);
    }
}
