//! MATPOWER-style case reader (subset).
//!
//! Understands `mpc.baseMVA` and the `mpc.bus`, `mpc.gen`, `mpc.branch`,
//! `mpc.gencost` matrices of the common `.m` case files. Only what the DC
//! model needs is read: bus ids and Pd, generator bus/Pg/Pmax/Pmin,
//! branch endpoints/x/rateA, and polynomial (model 2) cost coefficients.
//! The forecast is a single interval equal to the bus table loads; ramp
//! limits default to the full box width. Everything else in the file is
//! ignored.

use crate::case::{CaseSpec, Forecast, Generator, Line, Load};
use crate::{GridError, Result};

fn parse_err(context: &str, message: impl Into<String>) -> GridError {
    GridError::Parse {
        context: context.to_string(),
        message: message.into(),
    }
}

/// Extracts the rows of `mpc.<name> = [ ... ];` as numeric vectors.
fn matrix(text: &str, name: &str) -> Result<Vec<Vec<f64>>> {
    let key = format!("mpc.{name}");
    let start = text
        .find(&key)
        .ok_or_else(|| parse_err(&key, "section not found"))?;
    let open = text[start..]
        .find('[')
        .ok_or_else(|| parse_err(&key, "missing ["))?
        + start;
    let close = text[open..]
        .find(']')
        .ok_or_else(|| parse_err(&key, "missing ]"))?
        + open;
    let body = &text[open + 1..close];
    let mut rows = Vec::new();
    for raw in body.split(|ch| ch == ';' || ch == '\n') {
        let line = raw.split('%').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split([' ', '\t', ',']).filter(|t| !t.is_empty()) {
            row.push(
                tok.parse::<f64>()
                    .map_err(|_| parse_err(&key, format!("bad number {tok:?}")))?,
            );
        }
        rows.push(row);
    }
    Ok(rows)
}

fn scalar(text: &str, name: &str) -> Result<f64> {
    let key = format!("mpc.{name}");
    let start = text
        .find(&key)
        .ok_or_else(|| parse_err(&key, "not found"))?;
    let rest = &text[start + key.len()..];
    let eq = rest.find('=').ok_or_else(|| parse_err(&key, "missing ="))?;
    let val = rest[eq + 1..]
        .split(';')
        .next()
        .unwrap_or("")
        .trim();
    val.parse::<f64>()
        .map_err(|_| parse_err(&key, format!("bad number {val:?}")))
}

pub fn parse(text: &str) -> Result<CaseSpec> {
    let base_mva = scalar(text, "baseMVA")?;
    let bus = matrix(text, "bus")?;
    let gen = matrix(text, "gen")?;
    let branch = matrix(text, "branch")?;
    let gencost = matrix(text, "gencost").ok();

    let mut buses = Vec::new();
    let mut loads = Vec::new();
    for row in &bus {
        if row.len() < 3 {
            return Err(parse_err("mpc.bus", "row too short"));
        }
        let id = row[0] as usize;
        buses.push(id);
        let pd = row[2];
        if pd != 0.0 {
            loads.push(Load { bus: id, mw: pd });
        }
    }

    let mut generators = Vec::new();
    for (i, row) in gen.iter().enumerate() {
        if row.len() < 10 {
            return Err(parse_err("mpc.gen", "row too short"));
        }
        let (bus, pg, p_max, p_min) = (row[0] as usize, row[1], row[8], row[9]);
        let (a, b, c) = match &gencost {
            Some(costs) => {
                let row = costs
                    .get(i)
                    .ok_or_else(|| parse_err("mpc.gencost", "fewer rows than mpc.gen"))?;
                if row.first() != Some(&2.0) || row.len() < 7 {
                    return Err(parse_err(
                        "mpc.gencost",
                        "only polynomial (model 2, n=3) costs are supported",
                    ));
                }
                (row[4], row[5], row[6])
            }
            None => (0.0, 1.0, 0.0),
        };
        let width = p_max - p_min;
        generators.push(Generator {
            bus,
            a,
            b,
            c,
            p_max,
            p_min,
            r_up: width,
            r_down: -width,
            sched_mw: pg.clamp(p_min, p_max),
        });
    }

    let mut lines = Vec::new();
    for row in &branch {
        if row.len() < 6 {
            return Err(parse_err("mpc.branch", "row too short"));
        }
        let rate_a = row[5];
        lines.push(Line {
            from_bus: row[0] as usize,
            to_bus: row[1] as usize,
            resistance: row[2],
            reactance: row[3],
            // rateA of 0 means unlimited in MATPOWER files
            flow_limit: if rate_a > 0.0 { rate_a } else { 1e6 },
        });
    }

    Ok(CaseSpec {
        base_mva,
        buses,
        generators,
        lines,
        forecast: Forecast::new(vec![loads.clone()]),
        loads,
        horizon: 1,
        contingencies: Vec::new(),
    })
}
