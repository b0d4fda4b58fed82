//! Number formatting and all-or-nothing file output.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`: shortest of fixed or exponent notation, trailing zeros removed.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Renders rows as CSV text.
pub fn csv_text<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)?)
}

/// Files are collected in memory and written together by [`commit`](Self::commit).
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(String, String)>,
}

impl Outputs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: &str, contents: String) {
        self.files.push((name.to_string(), contents));
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    /// Writes every file through a temporary name and renames them into
    /// place. On failure nothing written by this call is left behind.
    pub fn commit(self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
        let mut staged = Vec::new();
        let mut placed = Vec::new();
        let result = (|| -> Result<()> {
            for (name, contents) in &self.files {
                let tmp = dir.join(format!(".{name}.partial"));
                staged.push(tmp.clone());
                fs::write(&tmp, contents).with_context(|| format!("cannot write {}", tmp.display()))?;
            }
            for ((name, _), tmp) in self.files.iter().zip(&staged) {
                let path = dir.join(name);
                fs::rename(tmp, &path).with_context(|| format!("cannot write {}", path.display()))?;
                placed.push(path);
            }
            Ok(())
        })();
        match result {
            Ok(()) => Ok(placed),
            Err(e) => {
                for p in staged.iter().chain(&placed) {
                    let _ = fs::remove_file(p);
                }
                Err(e)
            }
        }
    }
}
