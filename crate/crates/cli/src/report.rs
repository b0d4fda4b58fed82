//! Plain-text summary of a results directory.

use std::fmt::Write;
use std::path::Path;

use anyhow::Result;
use trirelax::experiment::WorstCaseRow;

use crate::output::fmt_num;
use crate::tables::{self, DIFFERENCES, PROFILE, REGRESSION, VOLUMES, WIDTHS, WORST_CASE};

/// Width differences within this are not counted as violations.
pub const WIDTH_SLACK: f64 = 1e-6;
/// Relative slack for the per-edge volume chain.
pub const VOLUME_SLACK: f64 = 1e-12;

/// Reads the result files (worstcase.csv is optional) and renders the
/// summary. Files are only read.
pub fn summarize(dir: &Path) -> Result<String> {
    let widths = tables::read_widths(&dir.join(WIDTHS))?;
    let differences = tables::read_differences(&dir.join(DIFFERENCES))?;
    let profile = tables::read_profile(&dir.join(PROFILE))?;
    let volumes = tables::read_volumes(&dir.join(VOLUMES))?;
    let regression = tables::read_regression(&dir.join(REGRESSION))?;
    let worst_path = dir.join(WORST_CASE);
    let worst = if worst_path.exists() { Some(tables::read_worst_case(&worst_path)?) } else { None };

    let mut s = String::new();
    writeln!(s, "results: {}", dir.display())?;
    writeln!(
        s,
        "bound sets: {}, width records: {}, tau points: {}",
        differences.len(),
        widths.len(),
        profile.tau.len()
    )?;

    writeln!(s, "ordering violations:")?;
    let count = |pred: &dyn Fn(&trirelax::DifferenceRow) -> bool| differences.iter().filter(|r| pred(r)).count();
    let n = differences.len();
    writeln!(s, "  omega_h > omega_3: {} of {n}", count(&|r| r.d_h3 > WIDTH_SLACK))?;
    writeln!(s, "  omega_2 < omega_3: {} of {n}", count(&|r| r.d_23 < -WIDTH_SLACK))?;
    writeln!(s, "  omega_1 < omega_2: {} of {n}", count(&|r| r.d_13 < r.d_23 - WIDTH_SLACK))?;
    let edges: Vec<&[f64; 4]> = volumes.iter().flatten().collect();
    let chain_broken = edges
        .iter()
        .filter(|[h, v1, v2, v3]| {
            [(h, v3), (v3, v2), (v2, v1)].iter().any(|(lo, hi)| **hi - **lo < -VOLUME_SLACK * hi.abs().max(1.0))
        })
        .count();
    writeln!(s, "  vol_h <= vol_3 <= vol_2 <= vol_1 broken: {chain_broken} of {} edges", edges.len())?;

    writeln!(s, "R^2:")?;
    for r in &regression {
        let r2 = r.fit.and_then(|f| f.r_squared).map_or_else(|| tables::UNDEFINED.to_string(), fmt_num);
        writeln!(s, "  {}: {r2}", r.series)?;
    }

    if let Some(rows) = worst {
        writeln!(s, "worst case:")?;
        for line in worst_case_peaks(&rows) {
            writeln!(s, "  {line}")?;
        }
    }
    Ok(s)
}

fn worst_case_peaks(rows: &[WorstCaseRow]) -> Vec<String> {
    let mut b3s: Vec<u32> = rows.iter().map(|r| r.b3).collect();
    b3s.dedup();
    b3s.into_iter()
        .filter_map(|b3| {
            let block: Vec<&WorstCaseRow> = rows.iter().filter(|r| r.b3 == b3).collect();
            let peak = block.iter().copied().reduce(|best, r| if r.d_23 > best.d_23 { r } else { best })?;
            let d21 = block.iter().map(|r| r.d_21.abs()).fold(0.0, f64::max);
            Some(format!(
                "b3 = {b3}: peak omega_2 - omega_3 = {} at a3 = {} (b3/3 = {}), max |omega_2 - omega_1| = {}",
                fmt_num(peak.d_23),
                peak.a3,
                fmt_num(f64::from(b3) / 3.0),
                fmt_num(d21)
            ))
        })
        .collect()
}
