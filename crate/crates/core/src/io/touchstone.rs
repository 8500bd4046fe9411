//! Touchstone v1 two-port files, real/imaginary format.

use crate::analysis::{SParameterSweep, SweepPoint};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt::Write as _;
use std::path::Path;

fn fixed(v: f64) -> String {
    let s = format!("{v:.9}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Renders a sweep as Touchstone text (columns S11 S21 S12 S22).
pub fn touchstone(sweep: &SParameterSweep) -> Result<String> {
    if sweep.is_empty() {
        return Err(Error::InvalidArgument("cannot write an empty sweep".into()));
    }
    let mut out = String::new();
    writeln!(out, "! {}", super::tool_banner()).unwrap();
    writeln!(out, "# HZ S RI R {}", sweep.z_ref).unwrap();
    for e in &sweep.entries {
        write!(out, "{}", e.f).unwrap();
        for s in [e.s11, e.s21, e.s12, e.s22] {
            write!(out, " {} {}", fixed(s.re), fixed(s.im)).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_touchstone(sweep: &SParameterSweep, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, touchstone(sweep)?)?;
    Ok(())
}

/// Reads two-port Touchstone v1 text in RI, MA or DB format.
pub fn parse_touchstone(text: &str) -> Result<SParameterSweep> {
    let mut unit = 1e9;
    let mut format = "MA".to_string();
    let mut z_ref = 50.0;
    let mut seen_options = false;
    let mut entries = Vec::new();
    let bad = |line: usize, msg: &str| Error::Parse(format!("line {line}: {msg}"));

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('!').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(opts) = line.strip_prefix('#') {
            if seen_options {
                return Err(bad(lineno, "repeated option line"));
            }
            seen_options = true;
            let mut toks = opts.split_whitespace().map(str::to_ascii_uppercase);
            while let Some(t) = toks.next() {
                match t.as_str() {
                    "HZ" => unit = 1.0,
                    "KHZ" => unit = 1e3,
                    "MHZ" => unit = 1e6,
                    "GHZ" => unit = 1e9,
                    "S" => {}
                    "Y" | "Z" | "H" | "G" => return Err(bad(lineno, "only S parameters are supported")),
                    "RI" | "MA" | "DB" => format = t,
                    "R" => {
                        z_ref = toks
                            .next()
                            .and_then(|v| v.parse().ok())
                            .ok_or_else(|| bad(lineno, "missing reference impedance"))?
                    }
                    other => return Err(bad(lineno, &format!("unknown option `{other}`"))),
                }
            }
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| bad(lineno, &format!("bad number `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if nums.len() != 9 {
            return Err(bad(lineno, &format!("expected 9 columns, found {}", nums.len())));
        }
        let pair = |a: f64, b: f64| match format.as_str() {
            "RI" => Complex64::new(a, b),
            "MA" => Complex64::from_polar(a, b.to_radians()),
            _ => Complex64::from_polar(10f64.powf(a / 20.0), b.to_radians()),
        };
        entries.push(SweepPoint {
            f: nums[0] * unit,
            s11: pair(nums[1], nums[2]),
            s21: pair(nums[3], nums[4]),
            s12: pair(nums[5], nums[6]),
            s22: pair(nums[7], nums[8]),
        });
    }
    if entries.is_empty() {
        return Err(Error::Parse("no data lines".into()));
    }
    if entries.windows(2).any(|w| w[1].f <= w[0].f) {
        return Err(Error::Parse("frequencies must be strictly increasing".into()));
    }
    Ok(SParameterSweep { z_ref, entries })
}
