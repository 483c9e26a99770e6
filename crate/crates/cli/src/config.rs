//! TOML scenario files.
//!
//! ```toml
//! engine = "both"
//! outputs = ["report"]
//!
//! [input_state]
//! s = 0.28
//! eta = 0.80
//! epsilon = 0.013
//!
//! [teleporter]
//! r = 0.795          # or "infinite"
//! noise = 0.0        # optional classical-channel noise amplitude
//! ```
//!
//! A broadband teleporter replaces `r` with a `[teleporter.broadband]` table;
//! sampled spectra are referenced as CSV files relative to the config file.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use cvtele::multimode::{
    lorentzian_mode, opo_squeezing_spectrum, read_complex_samples, read_real_samples, Normalization,
};
use cvtele::phase_space::{DEFAULT_HALF_WIDTH, DEFAULT_POINTS};
use cvtele::{
    FrequencyGrid, GridSpec, InputStateParams, ModeFunction, NoiseSpectrum, SqueezingSpectrum,
    TransferFunction,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Overrides the default number of grid nodes per axis.
pub const GRID_ENV: &str = "CVT_DEFAULT_GRID";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Analytic,
    Grid,
    Both,
}

impl Engine {
    pub fn uses_grid(self) -> bool {
        matches!(self, Engine::Grid | Engine::Both)
    }

    pub fn name(self) -> &'static str {
        match self {
            Engine::Analytic => "analytic",
            Engine::Grid => "grid",
            Engine::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Artifact {
    Report,
    InputWigner,
    OutputWigner,
    Comparison,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub input_state: InputStateConfig,
    pub teleporter: TeleporterConfig,
    #[serde(default)]
    pub engine: Engine,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<Artifact>,
}

fn default_outputs() -> Vec<Artifact> {
    vec![Artifact::Report]
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputStateConfig {
    pub s: f64,
    pub eta: f64,
    #[serde(default)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TeleporterConfig {
    pub r: Option<EprValue>,
    pub noise: Option<f64>,
    pub broadband: Option<BroadbandConfig>,
}

/// A number or the word `"infinite"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum EprValue {
    Finite(f64),
    Word(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub half_width: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BroadbandConfig {
    pub omega: OmegaConfig,
    pub mode: ModeSource,
    pub squeezing: SqueezingSource,
    pub noise: Option<NoiseSource>,
    pub transfer: Option<TransferSource>,
    /// Interpolate file spectra onto `omega`; otherwise their grids must match.
    #[serde(default)]
    pub resample: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaConfig {
    pub half_span: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSource {
    Lorentzian {
        gamma: f64,
    },
    /// `omega,value` samples.
    File(PathBuf),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SqueezingSource {
    Opo {
        x_pump: f64,
        kappa_cav: f64,
    },
    /// Constant `r`.
    Flat(f64),
    /// `omega,value` samples of `S₋`.
    File(PathBuf),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseSource {
    Flat(f64),
    File(PathBuf),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferSource {
    Unity,
    LowPass {
        cutoff: f64,
    },
    Delay {
        dt: f64,
    },
    /// `omega,re,im` or `omega,value` samples.
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub enum Teleporter {
    Scalar { r: f64, noise: f64 },
    Broadband(Box<Broadband>),
}

#[derive(Debug, Clone)]
pub struct Broadband {
    pub mode: ModeFunction,
    pub squeezing: SqueezingSpectrum,
    pub noise: Option<NoiseSpectrum>,
    pub transfer: Option<TransferFunction>,
}

/// Validated scenario with every referenced file loaded.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub params: InputStateParams,
    pub teleporter: Teleporter,
    pub engine: Engine,
    pub half_width: f64,
    pub points: usize,
    pub outputs: Vec<Artifact>,
    /// SHA-256 of the config bytes followed by each referenced file.
    pub config_sha256: String,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|source| CliError::Read {
            path: path.to_owned(),
            source,
        })?;
        let text = String::from_utf8(bytes)
            .map_err(|_| CliError::Config(format!("{} is not UTF-8", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base)
    }

    /// Parses `text`, resolving file references against `base_dir`.
    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self> {
        let config: ScenarioConfig = toml::from_str(text)
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string().trim_end().to_owned()))?;
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        let mut loader = Loader { base_dir, hasher };
        let scenario = Self::resolve(config, &mut loader)?;
        Ok(Self {
            config_sha256: format!("{:x}", loader.hasher.finalize()),
            ..scenario
        })
    }

    /// Pinned back-test scenario.
    pub fn backtest() -> Self {
        Self {
            params: InputStateParams::new(0.28, 0.80, 0.013).expect("valid back-test parameters"),
            teleporter: Teleporter::Scalar {
                r: 0.795,
                noise: 0.0,
            },
            engine: Engine::Both,
            half_width: DEFAULT_HALF_WIDTH,
            points: default_points().unwrap_or(DEFAULT_POINTS),
            outputs: default_outputs(),
            config_sha256: String::from("builtin:backtest"),
        }
    }

    pub fn with_engine(mut self, engine: Option<Engine>) -> Self {
        if let Some(e) = engine {
            self.engine = e;
        }
        self
    }

    pub fn with_grid_size(mut self, points: Option<usize>) -> Self {
        if let Some(n) = points {
            self.points = n;
        }
        self
    }

    pub fn grid_spec(&self) -> Result<GridSpec> {
        GridSpec::square(self.half_width, self.points)
            .map_err(|e| CliError::field("grid", e.to_string()))
    }

    fn resolve(config: ScenarioConfig, loader: &mut Loader) -> Result<Self> {
        let ScenarioConfig {
            input_state,
            teleporter,
            engine,
            grid,
            outputs,
        } = config;
        let params = InputStateParams::new(input_state.s, input_state.eta, input_state.epsilon)
            .map_err(|e| CliError::from_core("input_state", e))?;
        let teleporter = match (teleporter.r, teleporter.broadband) {
            (Some(_), Some(_)) => {
                return Err(CliError::field(
                    "teleporter",
                    "give either `r` or `broadband`, not both",
                ))
            }
            (None, None) => {
                return Err(CliError::field("teleporter", "missing `r` or `broadband`"))
            }
            (Some(r), None) => {
                let noise = teleporter.noise.unwrap_or(0.0);
                if !(noise.is_finite() && noise >= 0.0) {
                    return Err(CliError::field(
                        "teleporter.noise",
                        "must be finite and >= 0",
                    ));
                }
                Teleporter::Scalar {
                    r: parse_epr(&r)?,
                    noise,
                }
            }
            (None, Some(b)) => {
                if teleporter.noise.is_some() {
                    return Err(CliError::field(
                        "teleporter.noise",
                        "a broadband teleporter takes its noise from `broadband.noise`",
                    ));
                }
                Teleporter::Broadband(Box::new(loader.broadband(b)?))
            }
        };
        let points = match grid.points {
            Some(n) => n,
            None => default_points()?,
        };
        let half_width = grid.half_width.unwrap_or(DEFAULT_HALF_WIDTH);
        GridSpec::square(half_width, points).map_err(|e| CliError::field("grid", e.to_string()))?;
        if outputs.is_empty() {
            return Err(CliError::field("outputs", "list at least one artifact"));
        }
        let needs_grid = outputs.iter().any(|a| *a != Artifact::Report);
        if needs_grid && !engine.uses_grid() {
            return Err(CliError::field(
                "outputs",
                "grid artifacts need engine = \"grid\" or \"both\"",
            ));
        }
        Ok(Self {
            params,
            teleporter,
            engine,
            half_width,
            points,
            outputs,
            config_sha256: String::new(),
        })
    }
}

/// Grid size from [`GRID_ENV`], or the library default.
pub fn default_points() -> Result<usize> {
    match std::env::var(GRID_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::field(GRID_ENV, format!("`{v}` is not a node count"))),
        Err(_) => Ok(DEFAULT_POINTS),
    }
}

fn parse_epr(v: &EprValue) -> Result<f64> {
    match v {
        EprValue::Finite(r) if r.is_finite() && *r >= 0.0 => Ok(*r),
        EprValue::Word(w) if w == "infinite" => Ok(f64::INFINITY),
        _ => Err(CliError::field(
            "teleporter.r",
            "expected a number >= 0 or \"infinite\"",
        )),
    }
}

struct Loader<'a> {
    base_dir: &'a Path,
    hasher: Sha256,
}

impl Loader<'_> {
    fn read(&mut self, field: &str, rel: &Path) -> Result<Vec<u8>> {
        let path = self.base_dir.join(rel);
        let bytes = fs::read(&path)
            .map_err(|e| CliError::field(field, format!("cannot read {}: {e}", path.display())))?;
        self.hasher.update(&bytes);
        Ok(bytes)
    }

    fn real_samples(
        &mut self,
        field: &str,
        rel: &Path,
        grid: &FrequencyGrid,
        resample: bool,
    ) -> Result<Vec<f64>> {
        let bytes = self.read(field, rel)?;
        let (omega, values) = read_real_samples::<f64, _>(bytes.as_slice())
            .map_err(|e| CliError::from_core(field, e))?;
        if resample {
            omega
                .interpolate(&values, grid)
                .map_err(|e| CliError::from_core(field, e))
        } else {
            omega
                .ensure_same(grid)
                .map_err(|e| CliError::from_core(field, e))?;
            Ok(values)
        }
    }

    fn broadband(&mut self, b: BroadbandConfig) -> Result<Broadband> {
        let field = |name: &str| format!("teleporter.broadband.{name}");
        let grid = FrequencyGrid::symmetric(b.omega.half_span, b.omega.step)
            .map_err(|e| CliError::from_core(field("omega"), e))?;
        let mode = match &b.mode {
            ModeSource::Lorentzian { gamma } => {
                lorentzian_mode(*gamma, grid.clone(), Normalization::L1)
            }
            ModeSource::File(p) => {
                let w = self.real_samples(&field("mode"), p, &grid, b.resample)?;
                ModeFunction::from_real(grid.clone(), &w, Normalization::L1)
            }
        }
        .map_err(|e| CliError::from_core(field("mode"), e))?;
        let squeezing = match &b.squeezing {
            SqueezingSource::Opo { x_pump, kappa_cav } => {
                opo_squeezing_spectrum(*x_pump, *kappa_cav, grid.clone())
            }
            SqueezingSource::Flat(r) => SqueezingSpectrum::flat(grid.clone(), *r),
            SqueezingSource::File(p) => {
                let s = self.real_samples(&field("squeezing"), p, &grid, b.resample)?;
                SqueezingSpectrum::from_s_minus(grid.clone(), &s)
            }
        }
        .map_err(|e| CliError::from_core(field("squeezing"), e))?;
        let noise = match &b.noise {
            None => None,
            Some(NoiseSource::Flat(n)) => Some(NoiseSpectrum::flat(grid.clone(), *n)),
            Some(NoiseSource::File(p)) => {
                let n = self.real_samples(&field("noise"), p, &grid, b.resample)?;
                Some(NoiseSpectrum::new(grid.clone(), n))
            }
        }
        .transpose()
        .map_err(|e| CliError::from_core(field("noise"), e))?;
        let transfer = match &b.transfer {
            None => None,
            Some(TransferSource::Unity) => Some(TransferFunction::unity(grid.clone())),
            Some(TransferSource::LowPass { cutoff }) => {
                Some(TransferFunction::low_pass(grid.clone(), *cutoff))
            }
            Some(TransferSource::Delay { dt }) => Some(TransferFunction::delay(grid.clone(), *dt)),
            Some(TransferSource::File(p)) => {
                let bytes = self.read(&field("transfer"), p)?;
                let (omega, g) = read_complex_samples::<f64, _>(bytes.as_slice())
                    .map_err(|e| CliError::from_core(field("transfer"), e))?;
                let g = if b.resample {
                    omega.interpolate(&g, &grid)
                } else {
                    omega.ensure_same(&grid).map(|_| g)
                }
                .map_err(|e| CliError::from_core(field("transfer"), e))?;
                Some(TransferFunction::new(grid.clone(), g))
            }
        }
        .transpose()
        .map_err(|e| CliError::from_core(field("transfer"), e))?;
        Ok(Broadband {
            mode,
            squeezing,
            noise,
            transfer,
        })
    }
}
