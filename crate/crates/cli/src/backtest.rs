//! The pinned experimental back-test and its limiting cases.

use std::f64::consts::FRAC_1_PI;

use cvtele::InputStateParams;
use serde::Serialize;

use crate::config::{Engine, Scenario, Teleporter};
use crate::error::Result;
use crate::scenario::{run_scenario, ScenarioReport};

pub const TARGET: f64 = -0.0243;
pub const TOLERANCE: f64 = 5e-4;
/// Same configuration without false heralds.
pub const PURE_TARGET: f64 = -0.0275;
pub const ENGINE_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &'static str, value: f64, target: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            target,
            tolerance,
            pass: (value - target).abs() <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BacktestReport {
    pub pinned: ScenarioReport,
    pub pure: ScenarioReport,
    pub identity: ScenarioReport,
    pub checks: Vec<Check>,
}

impl BacktestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn backtest(engine: Option<Engine>, points: Option<usize>) -> Result<BacktestReport> {
    let pinned_scenario = Scenario::backtest()
        .with_engine(engine)
        .with_grid_size(points);
    let variant = |params: InputStateParams, r: f64| Scenario {
        params,
        teleporter: Teleporter::Scalar { r, noise: 0.0 },
        ..pinned_scenario.clone()
    };
    let base = pinned_scenario.params;
    let pinned = run_scenario(&pinned_scenario)?.report;
    let pure = run_scenario(&variant(
        InputStateParams {
            epsilon: 0.0,
            ..base
        },
        0.795,
    ))?
    .report;
    let identity = run_scenario(&variant(InputStateParams::pure(base.s), f64::INFINITY))?.report;

    let mut checks = vec![
        Check::new(
            "back-test output negativity",
            pinned.output_negativity,
            TARGET,
            TOLERANCE,
        ),
        Check::new(
            "epsilon = 0 output negativity",
            pure.output_negativity,
            PURE_TARGET,
            ENGINE_TOLERANCE,
        ),
        Check::new(
            "identity output negativity",
            identity.output_negativity,
            -FRAC_1_PI,
            1e-9,
        ),
        Check::new(
            "identity output equals input",
            identity.output_negativity - identity.input_negativity,
            0.0,
            1e-12,
        ),
    ];
    if let Some(g) = pinned.grid {
        checks.push(Check::new(
            "back-test grid output negativity",
            g.output_negativity,
            TARGET,
            TOLERANCE,
        ));
    }
    for (name, report) in [
        ("back-test engine discrepancy", &pinned),
        ("epsilon = 0 engine discrepancy", &pure),
        ("identity engine discrepancy", &identity),
    ] {
        if let Some(d) = report.engine_discrepancy {
            checks.push(Check::new(name, d, 0.0, ENGINE_TOLERANCE));
        }
    }
    Ok(BacktestReport {
        pinned,
        pure,
        identity,
        checks,
    })
}
