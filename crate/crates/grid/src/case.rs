//! Case document: buses, generators, lines, loads and the load forecast.
//!
//! The native format is a single JSON document with top-level keys
//! `base_mva`, `buses`, `generators`, `lines`, `loads`, `forecast`,
//! `horizon`, `contingencies`. All powers are MW, impedances per-unit,
//! ramp limits MW per dispatch interval. Line ids are 1-based positions
//! in the `lines` array.

use crate::{GridError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub bus: usize,
    /// Quadratic cost coefficient, $/MWh^2.
    pub a: f64,
    /// Linear cost coefficient, $/MWh.
    pub b: f64,
    /// No-load cost, $/h.
    pub c: f64,
    pub p_max: f64,
    pub p_min: f64,
    /// Maximum ramp-up, MW per interval (>= 0).
    pub r_up: f64,
    /// Maximum ramp-down, MW per interval (<= 0 by convention).
    pub r_down: f64,
    /// Current-interval dispatch P^(0), MW.
    pub sched_mw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub from_bus: usize,
    pub to_bus: usize,
    /// Series resistance, pu (unused by the DC model, retained from the data).
    pub resistance: f64,
    /// Series reactance, pu (> 0).
    pub reactance: f64,
    /// Thermal limit, MW (> 0).
    pub flow_limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Load {
    pub bus: usize,
    /// Current-interval (τ=0) demand, MW.
    pub mw: f64,
}

/// Per-interval demand rows, intervals 1..=horizon in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Forecast {
    rows: Vec<Vec<Load>>,
}

impl Forecast {
    pub fn new(rows: Vec<Vec<Load>>) -> Self {
        Forecast { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Load>] {
        &self.rows
    }

    /// Demand at `bus` in interval `tau` (1-based); 0.0 for buses without load.
    pub fn demand(&self, tau: usize, bus: usize) -> f64 {
        self.rows[tau - 1]
            .iter()
            .find(|l| l.bus == bus)
            .map_or(0.0, |l| l.mw)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub base_mva: f64,
    pub buses: Vec<usize>,
    pub generators: Vec<Generator>,
    pub lines: Vec<Line>,
    pub loads: Vec<Load>,
    pub forecast: Forecast,
    pub horizon: usize,
    /// 1-based line ids marked for N-1 analysis.
    pub contingencies: Vec<usize>,
}

impl CaseSpec {
    /// Checks every structural invariant; returns the offending record on failure.
    pub fn validate(&self) -> Result<()> {
        if self.generators.is_empty() {
            return Err(GridError::Validation {
                record: "generators".into(),
                message: "no generators".into(),
            });
        }
        if self.base_mva <= 0.0 {
            return Err(GridError::Validation {
                record: "base_mva".into(),
                message: format!("must be positive, got {}", self.base_mva),
            });
        }
        for (i, g) in self.generators.iter().enumerate() {
            let rec = format!("generator {} (bus {})", i + 1, g.bus);
            if g.p_min > g.p_max {
                return Err(GridError::Validation {
                    record: rec,
                    message: format!("p_min {} > p_max {}", g.p_min, g.p_max),
                });
            }
            if g.sched_mw < g.p_min || g.sched_mw > g.p_max {
                return Err(GridError::Validation {
                    record: rec,
                    message: format!(
                        "sched_mw {} outside [{}, {}]",
                        g.sched_mw, g.p_min, g.p_max
                    ),
                });
            }
            if g.r_up < 0.0 || g.r_down > 0.0 {
                return Err(GridError::Validation {
                    record: rec,
                    message: format!("ramp limits must satisfy r_down <= 0 <= r_up, got [{}, {}]", g.r_down, g.r_up),
                });
            }
        }
        for (i, l) in self.lines.iter().enumerate() {
            let rec = format!("line {} ({}-{})", i + 1, l.from_bus, l.to_bus);
            if l.reactance <= 0.0 {
                return Err(GridError::Validation {
                    record: rec,
                    message: format!("reactance must be > 0, got {}", l.reactance),
                });
            }
            if l.flow_limit <= 0.0 {
                return Err(GridError::Validation {
                    record: rec,
                    message: format!("flow_limit must be > 0, got {}", l.flow_limit),
                });
            }
        }
        if self.forecast.len() < self.horizon {
            return Err(GridError::Validation {
                record: "forecast".into(),
                message: format!(
                    "horizon is {} but forecast has {} rows",
                    self.horizon,
                    self.forecast.len()
                ),
            });
        }
        for tau in 1..=self.horizon {
            for load in &self.loads {
                let covered = self.forecast.rows()[tau - 1]
                    .iter()
                    .any(|l| l.bus == load.bus);
                if !covered {
                    return Err(GridError::Validation {
                        record: format!("forecast interval {tau}"),
                        message: format!("no entry for load bus {}", load.bus),
                    });
                }
            }
        }
        for id in &self.contingencies {
            if *id == 0 || *id > self.lines.len() {
                return Err(GridError::Validation {
                    record: format!("contingency line {id}"),
                    message: format!("line id out of range 1..={}", self.lines.len()),
                });
            }
        }
        Ok(())
    }

    /// Load row for interval `tau` (1-based). Interval 0 (the current running
    /// interval) is fixed history and not part of the forecast.
    pub fn forecast_at(&self, tau: usize) -> Result<&[Load]> {
        if tau == 0 || tau > self.horizon {
            return Err(GridError::IntervalOutOfRange(tau, self.horizon));
        }
        Ok(&self.forecast.rows()[tau - 1])
    }

    pub fn serialize(&self) -> String {
        serde_json::to_string_pretty(self).expect("CaseSpec is always serializable")
    }
}

/// Parses the native JSON case format (or, when the text starts with
/// `function mpc` / contains `mpc.baseMVA`, the MATPOWER-style subset).
pub fn parse_case_file(text: &str) -> Result<CaseSpec> {
    let trimmed = text.trim_start();
    let case = if trimmed.starts_with('{') {
        serde_json::from_str::<CaseSpec>(text).map_err(|e| GridError::Parse {
            context: format!("line {}", e.line()),
            message: e.to_string(),
        })?
    } else {
        crate::matpower::parse(text)?
    };
    case.validate()?;
    Ok(case)
}
