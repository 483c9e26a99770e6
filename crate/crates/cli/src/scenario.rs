//! End-to-end scenario evaluation: input model, channel reduction, output
//! prediction by one or both engines.

use cvtele::analytic::{input_negativity, output_negativity, output_wigner_value, threshold_r};
use cvtele::metrics::{vacuum_fidelity, FidelityConvention};
use cvtele::multimode::{effective_epr, effective_noise, gain_moments, output_mode_function};
use cvtele::noise::{noisy_r, NoiseLevel};
use cvtele::phase_space::{input_state, origin_value, teleport};
use cvtele::{ComparisonReport, GridSpec, InputStateParams, ScalarTeleporter, WignerGrid};
use serde::{Serialize, Serializer};

use crate::config::{Engine, Scenario, Teleporter};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub input_negativity: f64,
    pub output_negativity: f64,
    /// `None` when no finite `r` reaches the zero crossing.
    pub threshold_r: Option<f64>,
    #[serde(serialize_with = "epr")]
    pub r_eff: f64,
    pub n_eff: f64,
    #[serde(serialize_with = "epr")]
    pub r_prime: f64,
    pub fidelities: Fidelities,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine_discrepancy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gain: Option<GainSummary>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fidelities {
    pub quoted: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSummary {
    pub points: usize,
    pub half_width: f64,
    pub input_negativity: f64,
    pub output_negativity: f64,
}

/// Nonunity-gain moments `g±` as `[re, im]` and the modal transmission.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GainSummary {
    pub g_plus: [f64; 2],
    pub g_minus: [f64; 2],
    pub transmission: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub config_sha256: String,
    pub version: String,
    pub engine: &'static str,
}

fn epr<S: Serializer>(r: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if *r == f64::INFINITY {
        s.serialize_str("infinite")
    } else {
        s.serialize_f64(*r)
    }
}

/// Broadband channel reduced to single-mode quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub r_eff: f64,
    pub n_eff: f64,
    pub r_prime: f64,
    pub gain: Option<GainSummary>,
}

impl Channel {
    pub fn scalar(r: f64, noise: f64) -> Result<Self> {
        ScalarTeleporter::new(r).map_err(|e| CliError::from_core("teleporter.r", e))?;
        let level =
            NoiseLevel::new(noise).map_err(|e| CliError::from_core("teleporter.noise", e))?;
        Ok(Self {
            r_eff: r,
            n_eff: noise,
            r_prime: noisy_r(r, level),
            gain: None,
        })
    }
}

pub fn reduce_channel(teleporter: &Teleporter) -> Result<Channel> {
    let b = match teleporter {
        Teleporter::Scalar { r, noise } => return Channel::scalar(*r, *noise),
        Teleporter::Broadband(b) => b,
    };
    let ctx = "teleporter.broadband";
    let r_eff = effective_epr(&b.mode, &b.squeezing).map_err(|e| CliError::from_core(ctx, e))?;
    let n_eff = match &b.noise {
        Some(n) => effective_noise(&b.mode, n).map_err(|e| CliError::from_core(ctx, e))?,
        None => 0.0,
    };
    let gain = match &b.transfer {
        Some(g) => {
            let m = gain_moments(&b.mode, g, &b.squeezing, r_eff)
                .map_err(|e| CliError::from_core(ctx, e))?;
            let out = output_mode_function(&b.mode, g).map_err(|e| CliError::from_core(ctx, e))?;
            Some(GainSummary {
                g_plus: [m.g_plus.re, m.g_plus.im],
                g_minus: [m.g_minus.re, m.g_minus.im],
                transmission: out.transmission,
            })
        }
        None => None,
    };
    Ok(Channel {
        gain,
        ..Channel::scalar(r_eff, n_eff)?
    })
}

/// Report plus the sampled states when the grid engine ran.
#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub report: ScenarioReport,
    pub input_grid: Option<WignerGrid>,
    pub output_grid: Option<WignerGrid>,
}

impl ScenarioRun {
    /// Closed-form output state against the grid pipeline; needs the grid engine.
    pub fn comparison(&self, params: &InputStateParams) -> Result<Option<ComparisonReport>> {
        let Some(grid) = &self.output_grid else {
            return Ok(None);
        };
        let r = self.report.r_prime;
        let closed = WignerGrid::from_fn(*grid.spec(), |x, p| output_wigner_value(params, r, x, p))
            .map_err(|e| CliError::from_core("comparison", e))?;
        ComparisonReport::compare(&closed, grid)
            .map(Some)
            .map_err(|e| CliError::from_core("comparison", e))
    }
}

pub fn run_scenario(scenario: &Scenario) -> Result<ScenarioRun> {
    let channel = reduce_channel(&scenario.teleporter)?;
    let spec = if scenario.engine.uses_grid() {
        Some(scenario.grid_spec()?)
    } else {
        None
    };
    let mut run = evaluate(&scenario.params, &channel, scenario.engine, spec)?;
    run.report.provenance.config_sha256 = scenario.config_sha256.clone();
    Ok(run)
}

/// One model evaluation; `spec` is required when `engine` uses the grid.
pub fn evaluate(
    params: &InputStateParams,
    channel: &Channel,
    engine: Engine,
    spec: Option<GridSpec>,
) -> Result<ScenarioRun> {
    let r = channel.r_prime;
    let analytic_in = input_negativity(params);
    let analytic_out = output_negativity(params, r);
    let (grid, input_grid, output_grid) = match (engine.uses_grid(), spec) {
        (false, _) => (None, None, None),
        (true, None) => return Err(CliError::field("grid", "grid engine needs a grid")),
        (true, Some(spec)) => {
            let numeric = |e| CliError::from_core("grid engine", e);
            let w_in = input_state(params, spec).map_err(numeric)?;
            let w_out = teleport(&w_in, r).map_err(numeric)?;
            let summary = GridSummary {
                points: spec.n_x,
                half_width: spec.x_max,
                input_negativity: origin_value(&w_in).map_err(numeric)?,
                output_negativity: origin_value(&w_out).map_err(numeric)?,
            };
            (Some(summary), Some(w_in), Some(w_out))
        }
    };
    let (input_neg, output_neg) = match (engine, &grid) {
        (Engine::Grid, Some(g)) => (g.input_negativity, g.output_negativity),
        _ => (analytic_in, analytic_out),
    };
    let report = ScenarioReport {
        input_negativity: input_neg,
        output_negativity: output_neg,
        threshold_r: threshold_r(params.eta, params.s, params.epsilon).ok(),
        r_eff: channel.r_eff,
        n_eff: channel.n_eff,
        r_prime: r,
        fidelities: Fidelities {
            quoted: vacuum_fidelity(r, FidelityConvention::Quoted),
            amplitude: vacuum_fidelity(r, FidelityConvention::Amplitude),
        },
        engine_discrepancy: match (engine, &grid) {
            (Engine::Both, Some(g)) => Some((analytic_out - g.output_negativity).abs()),
            _ => None,
        },
        grid,
        gain: channel.gain,
        provenance: Provenance {
            config_sha256: String::new(),
            version: cvtele::VERSION.to_owned(),
            engine: engine.name(),
        },
    };
    Ok(ScenarioRun {
        report,
        input_grid,
        output_grid,
    })
}

/// `field,value` rows for CSV output; non-finite values use `inf` and `""`.
pub fn report_fields(report: &ScenarioReport) -> Vec<(String, String)> {
    let mut rows = vec![
        (
            "input_negativity".into(),
            crate::table::format_number(report.input_negativity),
        ),
        (
            "output_negativity".into(),
            crate::table::format_number(report.output_negativity),
        ),
        (
            "threshold_r".into(),
            report
                .threshold_r
                .map(crate::table::format_number)
                .unwrap_or_default(),
        ),
        ("r_eff".into(), crate::table::format_number(report.r_eff)),
        ("n_eff".into(), crate::table::format_number(report.n_eff)),
        (
            "r_prime".into(),
            crate::table::format_number(report.r_prime),
        ),
        (
            "fidelity_quoted".into(),
            crate::table::format_number(report.fidelities.quoted),
        ),
        (
            "fidelity_amplitude".into(),
            crate::table::format_number(report.fidelities.amplitude),
        ),
    ];
    if let Some(d) = report.engine_discrepancy {
        rows.push(("engine_discrepancy".into(), crate::table::format_number(d)));
    }
    if let Some(g) = &report.grid {
        rows.push(("grid_points".into(), g.points.to_string()));
        rows.push((
            "grid_half_width".into(),
            crate::table::format_number(g.half_width),
        ));
        rows.push((
            "grid_input_negativity".into(),
            crate::table::format_number(g.input_negativity),
        ));
        rows.push((
            "grid_output_negativity".into(),
            crate::table::format_number(g.output_negativity),
        ));
    }
    if let Some(g) = &report.gain {
        for (name, v) in [
            ("g_plus_re", g.g_plus[0]),
            ("g_plus_im", g.g_plus[1]),
            ("g_minus_re", g.g_minus[0]),
            ("g_minus_im", g.g_minus[1]),
            ("transmission", g.transmission),
        ] {
            rows.push((name.into(), crate::table::format_number(v)));
        }
    }
    rows.push((
        "config_sha256".into(),
        report.provenance.config_sha256.clone(),
    ));
    rows.push(("version".into(), report.provenance.version.clone()));
    rows.push(("engine".into(), report.provenance.engine.to_owned()));
    rows
}
