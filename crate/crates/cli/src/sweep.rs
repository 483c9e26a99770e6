//! Cartesian parameter sweeps over a scenario template.

use std::io::Write;

use rayon::prelude::*;

use crate::axis::AxisSpec;
use crate::config::{Scenario, Teleporter};
use crate::error::{CliError, Result};
use crate::figure::point_at;
use crate::scenario::{evaluate, reduce_channel, Channel, ScenarioReport};
use crate::table::{Format, Table, TableWriter};

pub const MAX_AXES: usize = 3;
pub const ANALYTIC_BUDGET: usize = 1_000_000;
pub const GRID_BUDGET: usize = 1_000;
/// Points evaluated in parallel before a chunk is written out.
const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Key {
    S,
    Eta,
    Epsilon,
    R,
    Noise,
}

impl Key {
    fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "s" => Key::S,
            "eta" => Key::Eta,
            "epsilon" => Key::Epsilon,
            "r" => Key::R,
            "noise" => Key::Noise,
            other => {
                return Err(CliError::field(
                    format!("axis `{other}`"),
                    "expected one of s, eta, epsilon, r, noise",
                ))
            }
        })
    }
}

/// Report columns appended after the axis columns.
fn report_columns(scenario: &Scenario) -> Vec<&'static str> {
    let mut cols = vec![
        "input_negativity",
        "output_negativity",
        "threshold_r",
        "r_eff",
        "n_eff",
        "r_prime",
        "fidelity_quoted",
        "fidelity_amplitude",
    ];
    if scenario.engine.uses_grid() {
        cols.push("grid_output_negativity");
    }
    if scenario.engine == crate::config::Engine::Both {
        cols.push("engine_discrepancy");
    }
    cols
}

/// Row form of a report, matching [`report_columns`].
pub fn report_row(report: &ScenarioReport, scenario: &Scenario) -> Vec<f64> {
    let mut row = vec![
        report.input_negativity,
        report.output_negativity,
        report.threshold_r.unwrap_or(f64::NAN),
        report.r_eff,
        report.n_eff,
        report.r_prime,
        report.fidelities.quoted,
        report.fidelities.amplitude,
    ];
    if scenario.engine.uses_grid() {
        row.push(report.grid.map_or(f64::NAN, |g| g.output_negativity));
    }
    if scenario.engine == crate::config::Engine::Both {
        row.push(report.engine_discrepancy.unwrap_or(f64::NAN));
    }
    row
}

struct Plan<'a> {
    scenario: &'a Scenario,
    axes: &'a [AxisSpec],
    keys: Vec<Key>,
    channel: Option<Channel>,
    total: usize,
}

impl<'a> Plan<'a> {
    fn new(scenario: &'a Scenario, axes: &'a [AxisSpec]) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_AXES {
            return Err(CliError::field(
                "axis",
                format!("give between 1 and {MAX_AXES} axes"),
            ));
        }
        let keys = axes
            .iter()
            .map(|a| Key::parse(&a.key))
            .collect::<Result<Vec<_>>>()?;
        for (i, k) in keys.iter().enumerate() {
            if keys[..i].contains(k) {
                return Err(CliError::field(
                    format!("axis `{}`", axes[i].key),
                    "repeated",
                ));
            }
            if axes[i].values.is_empty() {
                return Err(CliError::field(
                    format!("axis `{}`", axes[i].key),
                    "no values",
                ));
            }
        }
        let touches_channel = keys.iter().any(|k| matches!(k, Key::R | Key::Noise));
        if touches_channel && matches!(scenario.teleporter, Teleporter::Broadband(_)) {
            return Err(CliError::field(
                "axis",
                "r and noise axes need a scalar teleporter",
            ));
        }
        let total = axes
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.values.len()))
            .unwrap_or(usize::MAX);
        let (limit, engine) = if scenario.engine.uses_grid() {
            (GRID_BUDGET, "grid")
        } else {
            (ANALYTIC_BUDGET, "analytic")
        };
        if total > limit {
            return Err(CliError::BudgetExceeded {
                points: total,
                limit,
                engine,
            });
        }
        // The broadband reduction does not depend on any sweepable key.
        let channel = if touches_channel {
            None
        } else {
            Some(reduce_channel(&scenario.teleporter)?)
        };
        Ok(Self {
            scenario,
            axes,
            keys,
            channel,
            total,
        })
    }

    fn columns(&self) -> Vec<String> {
        self.axes
            .iter()
            .map(|a| a.key.clone())
            .chain(report_columns(self.scenario).into_iter().map(String::from))
            .collect()
    }

    fn point(&self, index: usize) -> Result<Vec<f64>> {
        let coords = point_at(self.axes, index);
        let mut p = self.scenario.params;
        let (mut r, mut noise) = match self.scenario.teleporter {
            Teleporter::Scalar { r, noise } => (r, noise),
            Teleporter::Broadband(_) => (f64::NAN, f64::NAN),
        };
        for (k, &v) in self.keys.iter().zip(&coords) {
            match k {
                Key::S => p.s = v,
                Key::Eta => p.eta = v,
                Key::Epsilon => p.epsilon = v,
                Key::R => r = v,
                Key::Noise => noise = v,
            }
        }
        let at = || format!("sweep point {coords:?}");
        p.validate().map_err(|e| CliError::from_core(at(), e))?;
        let channel = match self.channel {
            Some(c) => c,
            None => Channel::scalar(r, noise)?,
        };
        let spec = if self.scenario.engine.uses_grid() {
            Some(self.scenario.grid_spec()?)
        } else {
            None
        };
        let run = evaluate(&p, &channel, self.scenario.engine, spec).map_err(|e| match e {
            CliError::Numerical { source, .. } => CliError::Numerical {
                context: at(),
                source,
            },
            other => other,
        })?;
        let mut row = coords;
        row.extend(report_row(&run.report, self.scenario));
        Ok(row)
    }
}

/// Streams the sweep to `out`; rows follow the Cartesian order with the
/// first axis outermost, independent of worker scheduling.
pub fn sweep<W: Write>(
    scenario: &Scenario,
    axes: &[AxisSpec],
    format: Format,
    out: W,
) -> Result<usize> {
    let plan = Plan::new(scenario, axes)?;
    let mut writer = TableWriter::new(out, format, &plan.columns())?;
    let mut start = 0;
    while start < plan.total {
        let end = (start + CHUNK).min(plan.total);
        let rows = (start..end)
            .into_par_iter()
            .map(|k| plan.point(k))
            .collect::<Result<Vec<_>>>()?;
        writer.rows(&rows)?;
        start = end;
    }
    writer.finish()?;
    Ok(plan.total)
}

/// In-memory variant of [`sweep`].
pub fn sweep_table(scenario: &Scenario, axes: &[AxisSpec]) -> Result<Table> {
    let plan = Plan::new(scenario, axes)?;
    let rows = (0..plan.total)
        .into_par_iter()
        .map(|k| plan.point(k))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        columns: plan.columns(),
        rows,
    })
}
