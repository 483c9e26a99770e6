//! Data behind the negativity, threshold and noise figures. Every curve comes
//! from the closed forms; no grid work happens here.

use std::str::FromStr;

use cvtele::analytic::{input_negativity, input_threshold_epsilon, output_negativity, threshold_r};
use cvtele::noise::{noisy_r, NoiseLevel};
use cvtele::InputStateParams;

use crate::axis::{linspace, AxisSpec};
use crate::error::{CliError, Result};
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    InputNegativity,
    OutputNegativity,
    Threshold,
    MixedInput,
    MixedThreshold,
    NoiseRatio,
}

impl FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| CliError::UnknownFigure(s.to_owned()))
    }
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::InputNegativity,
        Figure::OutputNegativity,
        Figure::Threshold,
        Figure::MixedInput,
        Figure::MixedThreshold,
        Figure::NoiseRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::InputNegativity => "input-negativity",
            Figure::OutputNegativity => "output-negativity",
            Figure::Threshold => "threshold",
            Figure::MixedInput => "mixed-input",
            Figure::MixedThreshold => "mixed-threshold",
            Figure::NoiseRatio => "noise-ratio",
        }
    }

    /// Default axes; the last one is the abscissa, the others label curves.
    pub fn default_axes(self) -> Vec<AxisSpec> {
        let list = |k: &str, v: &[f64]| AxisSpec::new(k, v.to_vec());
        let range = |k: &str, a, b, n| AxisSpec::new(k, linspace(a, b, n));
        match self {
            Figure::InputNegativity => {
                vec![list("s", &[0.0, 0.28, 0.6]), range("eta", 0.3, 1.0, 71)]
            }
            Figure::OutputNegativity => vec![
                list("eta", &[0.7, 0.8, 0.9, 1.0]),
                list("s", &[0.0, 0.28, 0.6]),
                range("r", 0.0, 2.0, 201),
            ],
            Figure::Threshold => vec![list("s", &[0.0, 0.28, 1.0]), range("eta", 0.51, 1.0, 50)],
            Figure::MixedInput => vec![
                list("s", &[0.0, 0.28, 0.6]),
                list("epsilon", &[0.0, 0.05, 0.1, 0.2]),
                range("eta", 0.3, 1.0, 71),
            ],
            Figure::MixedThreshold => vec![
                list("s", &[0.28, 0.6, 1.0]),
                list("epsilon", &[0.0, 0.013, 0.05, 0.1]),
                range("eta", 0.51, 1.0, 50),
            ],
            Figure::NoiseRatio => vec![
                list("r", &[0.35, 0.795, 1.0, 2.0]),
                range("noise", 0.0, 1.0, 101),
            ],
        }
    }

    fn outputs(self) -> &'static [&'static str] {
        match self {
            Figure::InputNegativity => &["w_in"],
            Figure::OutputNegativity => &["w_out"],
            Figure::Threshold => &["threshold_r"],
            Figure::MixedInput => &["w_in", "epsilon_threshold"],
            Figure::MixedThreshold => &["threshold_r"],
            Figure::NoiseRatio => &["r_prime", "ratio"],
        }
    }

    /// Column plotted on the vertical axis.
    pub fn y_column(self) -> &'static str {
        match self {
            Figure::NoiseRatio => "ratio",
            f => f.outputs()[0],
        }
    }

    fn point(self, v: &[f64]) -> Result<Vec<f64>> {
        let params = |s, eta, eps| {
            InputStateParams::new(s, eta, eps).map_err(|e| CliError::from_core(self.name(), e))
        };
        let nan_if_none = |r: cvtele::Result<f64>| r.unwrap_or(f64::NAN);
        Ok(match self {
            Figure::InputNegativity => vec![input_negativity(&params(v[0], v[1], 0.0)?)],
            Figure::OutputNegativity => vec![output_negativity(&params(v[1], v[0], 0.0)?, v[2])],
            Figure::Threshold => {
                params(v[0], v[1], 0.0)?;
                vec![nan_if_none(threshold_r(v[1], v[0], 0.0))]
            }
            Figure::MixedInput => {
                let p = params(v[0], v[2], v[1])?;
                vec![input_negativity(&p), input_threshold_epsilon(v[2], v[0])]
            }
            Figure::MixedThreshold => {
                params(v[0], v[2], v[1])?;
                vec![nan_if_none(threshold_r(v[2], v[0], v[1]))]
            }
            Figure::NoiseRatio => {
                let n = NoiseLevel::new(v[1]).map_err(|e| CliError::from_core("noise", e))?;
                let r_prime = noisy_r(v[0], n);
                vec![r_prime, r_prime / v[0]]
            }
        })
    }
}

/// Dataset for `figure`, with `overrides` replacing default axes by key.
pub fn figure(fig: Figure, overrides: &[AxisSpec]) -> Result<Table> {
    let mut axes = fig.default_axes();
    let keys: Vec<String> = axes.iter().map(|a| a.key.clone()).collect();
    for o in overrides {
        let slot = axes.iter_mut().find(|a| a.key == o.key).ok_or_else(|| {
            CliError::field(
                format!("range `{}`", o.key),
                format!("{} takes {}", fig.name(), keys.join(", ")),
            )
        })?;
        if o.values.is_empty() {
            return Err(CliError::field(format!("range `{}`", o.key), "no values"));
        }
        *slot = o.clone();
    }
    let mut columns: Vec<&str> = axes.iter().map(|a| a.key.as_str()).collect();
    columns.extend_from_slice(fig.outputs());
    let mut table = Table::new(&columns);
    for coords in cartesian(&axes) {
        let mut row = coords.clone();
        row.extend(fig.point(&coords)?);
        table.rows.push(row);
    }
    Ok(table)
}

/// All coordinate tuples, first axis outermost.
pub fn cartesian(axes: &[AxisSpec]) -> Vec<Vec<f64>> {
    let total: usize = axes.iter().map(|a| a.values.len()).product();
    (0..total).map(|k| point_at(axes, k)).collect()
}

/// Coordinates of the `k`-th point in [`cartesian`] order.
pub fn point_at(axes: &[AxisSpec], mut k: usize) -> Vec<f64> {
    let mut out = vec![0.0; axes.len()];
    for (slot, axis) in out.iter_mut().zip(axes).rev() {
        let n = axis.values.len();
        *slot = axis.values[k % n];
        k /= n;
    }
    out
}
