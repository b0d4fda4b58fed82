//! CSV schemas of the result files, writers and readers.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use trirelax::experiment::{ProfileCurve, RegressionSeries, WorstCaseRow};
use trirelax::{DifferenceRow, RegressionResult, Relaxation, WidthRecord};

use crate::output::{csv_text, fmt_num};

pub const WIDTHS: &str = "widths.csv";
pub const DIFFERENCES: &str = "differences.csv";
pub const PROFILE: &str = "profile.csv";
pub const VOLUMES: &str = "volumes.csv";
pub const REGRESSION: &str = "regression.csv";
pub const WORST_CASE: &str = "worstcase.csv";

pub const WIDTHS_HEADER: [&str; 4] = ["bound_set_id", "relaxation", "omega", "std_error"];
pub const DIFFERENCES_HEADER: [&str; 5] = ["bound_set_id", "d_h3", "d_23", "d_13", "sort_key"];
pub const PROFILE_HEADER: [&str; 4] = ["tau", "frac_1", "frac_2", "frac_3"];
pub const VOLUMES_HEADER: [&str; 6] = ["bound_set_id", "edge_id", "vol_h", "vol_1", "vol_2", "vol_3"];
pub const REGRESSION_HEADER: [&str; 4] = ["series", "slope", "intercept", "r2"];
pub const WORST_CASE_HEADER: [&str; 11] =
    ["b3", "a3", "omega_1", "omega_2", "omega_3", "d_23", "d_21", "vol_h", "vol_1", "vol_2", "vol_3"];

/// Written in place of R² when the response is constant, and in place of
/// every fit column when the points do not determine a line.
pub const UNDEFINED: &str = "undefined";

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

pub fn widths_csv(records: &[WidthRecord]) -> Result<String> {
    csv_text(
        &WIDTHS_HEADER,
        records.iter().map(|r| {
            vec![r.bound_set_id.to_string(), r.relaxation.label().to_string(), fmt_num(r.omega), fmt_num(r.std_error)]
        }),
    )
}

pub fn differences_csv(rows: &[DifferenceRow]) -> Result<String> {
    csv_text(
        &DIFFERENCES_HEADER,
        rows.iter().map(|r| {
            vec![r.bound_set_id.to_string(), fmt_num(r.d_h3), fmt_num(r.d_23), fmt_num(r.d_13), fmt_num(r.sort_key)]
        }),
    )
}

pub fn profile_csv(p: &ProfileCurve) -> Result<String> {
    csv_text(
        &PROFILE_HEADER,
        p.tau.iter().enumerate().map(|(i, &t)| {
            let mut row = vec![fmt_num(t)];
            row.extend(p.fractions.iter().map(|f| fmt_num(f[i])));
            row
        }),
    )
}

pub fn volumes_csv(volumes: &[Vec<[f64; 4]>]) -> Result<String> {
    csv_text(
        &VOLUMES_HEADER,
        volumes.iter().enumerate().flat_map(|(s, edges)| {
            edges.iter().enumerate().map(move |(e, v)| {
                let mut row = vec![s.to_string(), e.to_string()];
                row.extend(v.iter().map(|&x| fmt_num(x)));
                row
            })
        }),
    )
}

pub fn regression_csv(series: &[RegressionSeries]) -> Result<String> {
    csv_text(
        &REGRESSION_HEADER,
        series.iter().map(|s| {
            let undefined = || UNDEFINED.to_string();
            match &s.fit {
                Some(fit) => vec![
                    s.series.clone(),
                    fmt_num(fit.slope),
                    fmt_num(fit.intercept),
                    fit.r_squared.map_or_else(undefined, fmt_num),
                ],
                None => vec![s.series.clone(), undefined(), undefined(), undefined()],
            }
        }),
    )
}

pub fn worst_case_csv<'a>(rows: impl IntoIterator<Item = &'a WorstCaseRow>) -> Result<String> {
    csv_text(
        &WORST_CASE_HEADER,
        rows.into_iter().map(|r| {
            let mut row = vec![r.b3.to_string(), r.a3.to_string()];
            row.extend(r.omega.iter().map(|&x| fmt_num(x)));
            row.push(fmt_num(r.d_23));
            row.push(fmt_num(r.d_21));
            row.extend(r.edge_volumes.iter().map(|&x| fmt_num(x)));
            row
        }),
    )
}

/// Data rows of a CSV file whose header must equal `header`.
fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let name = path.display();
    if !path.is_file() {
        bail!("missing {name}");
    }
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("cannot read {name}"))?;
    let found = reader.headers().with_context(|| format!("corrupt {name}"))?.clone();
    if found.iter().ne(header.iter().copied()) {
        bail!("corrupt {name}: expected columns {}", header.join(","));
    }
    let rows = reader.records().collect::<Result<Vec<_>, _>>().with_context(|| format!("corrupt {name}"))?;
    if rows.is_empty() {
        bail!("corrupt {name}: no data rows");
    }
    Ok(rows)
}

fn field<T: std::str::FromStr>(path: &Path, row: &csv::StringRecord, i: usize) -> Result<T> {
    let s = &row[i];
    s.parse().map_err(|_| {
        let line = row.position().map_or(0, |p| p.line());
        anyhow!("corrupt {}: line {line}: cannot parse {s:?}", path.display())
    })
}

pub fn read_widths(path: &Path) -> Result<Vec<WidthRecord>> {
    read_rows(path, &WIDTHS_HEADER)?
        .iter()
        .map(|r| {
            Ok(WidthRecord {
                bound_set_id: field(path, r, 0)?,
                relaxation: Relaxation::from_label(&r[1]).with_context(|| format!("corrupt {}", path.display()))?,
                omega: field(path, r, 2)?,
                std_error: field(path, r, 3)?,
                widths: None,
            })
        })
        .collect()
}

pub fn read_differences(path: &Path) -> Result<Vec<DifferenceRow>> {
    read_rows(path, &DIFFERENCES_HEADER)?
        .iter()
        .map(|r| {
            Ok(DifferenceRow {
                bound_set_id: field(path, r, 0)?,
                d_h3: field(path, r, 1)?,
                d_23: field(path, r, 2)?,
                d_13: field(path, r, 3)?,
                sort_key: field(path, r, 4)?,
            })
        })
        .collect()
}

pub fn read_profile(path: &Path) -> Result<ProfileCurve> {
    let rows = read_rows(path, &PROFILE_HEADER)?;
    let mut curve = ProfileCurve { tau: Vec::new(), fractions: Default::default() };
    for r in &rows {
        curve.tau.push(field(path, r, 0)?);
        for (s, f) in curve.fractions.iter_mut().enumerate() {
            f.push(field(path, r, s + 1)?);
        }
    }
    Ok(curve)
}

/// Per bound set, per edge volumes; bound sets must appear as 0, 1, 2, ….
pub fn read_volumes(path: &Path) -> Result<Vec<Vec<[f64; 4]>>> {
    let mut out: Vec<Vec<[f64; 4]>> = Vec::new();
    for r in &read_rows(path, &VOLUMES_HEADER)? {
        let set: usize = field(path, r, 0)?;
        let edge: usize = field(path, r, 1)?;
        if set == out.len() {
            out.push(Vec::new());
        }
        if set + 1 != out.len() || edge != out[set].len() {
            bail!("corrupt {}: rows out of order at bound set {set}, edge {edge}", path.display());
        }
        out[set].push([field(path, r, 2)?, field(path, r, 3)?, field(path, r, 4)?, field(path, r, 5)?]);
    }
    Ok(out)
}

pub fn read_regression(path: &Path) -> Result<Vec<RegressionSeries>> {
    read_rows(path, &REGRESSION_HEADER)?
        .iter()
        .map(|r| {
            let fit = if &r[1] == UNDEFINED {
                None
            } else {
                let r_squared = if &r[3] == UNDEFINED { None } else { Some(field(path, r, 3)?) };
                Some(RegressionResult { slope: field(path, r, 1)?, intercept: field(path, r, 2)?, r_squared })
            };
            Ok(RegressionSeries { series: r[0].to_string(), fit })
        })
        .collect()
}

pub fn read_worst_case(path: &Path) -> Result<Vec<WorstCaseRow>> {
    read_rows(path, &WORST_CASE_HEADER)?
        .iter()
        .map(|r| {
            let f = |i| field::<f64>(path, r, i);
            Ok(WorstCaseRow {
                b3: field(path, r, 0)?,
                a3: field(path, r, 1)?,
                omega: [f(2)?, f(3)?, f(4)?],
                d_23: f(5)?,
                d_21: f(6)?,
                edge_volumes: [f(7)?, f(8)?, f(9)?, f(10)?],
            })
        })
        .collect()
}
