//! Lowpass mask, error function and constraint margins.
//!
//! Band membership follows the mask inequalities: `f <= f_p` is passband,
//! `f >= f_s` is stopband, everything strictly between is transition band.

use crate::analysis::SParameterSweep;
use crate::error::{Error, Result};
use crate::microstrip::{width_for_impedance, Substrate};
use crate::profile::FourierWidthProfile;
use serde::{Deserialize, Serialize};

/// Default number of z samples for the width-bound check.
pub const DEFAULT_Z_SAMPLES: usize = 1001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterSpec {
    #[serde(rename = "f_p_hz")]
    pub f_p: f64,
    #[serde(rename = "f_s_hz")]
    pub f_s: f64,
    #[serde(rename = "f_max_hz")]
    pub f_max: f64,
    #[serde(rename = "alpha_p_db")]
    pub alpha_p: f64,
    #[serde(rename = "alpha_s_db")]
    pub alpha_s: f64,
    pub wh_min: f64,
    pub wh_max: f64,
    #[serde(rename = "d_m")]
    pub d: f64,
    #[serde(rename = "z0_ohms")]
    pub z0: f64,
}

impl FilterSpec {
    /// Checks the mask ordering and, given a substrate, that the port width
    /// lies strictly inside the width bounds.
    pub fn validate(&self, substrate: &Substrate) -> Result<()> {
        let ordered = |lo: f64, lo_name: &str, hi: f64, hi_name: &str, strict: bool| {
            let ok = if strict { lo < hi } else { lo <= hi };
            if ok {
                Ok(())
            } else {
                let op = if strict { "<" } else { "<=" };
                Err(Error::Validation(format!(
                    "{lo_name} {op} {hi_name} violated ({lo_name} = {lo}, {hi_name} = {hi})"
                )))
            }
        };
        ordered(0.0, "0", self.f_p, "f_p", true)?;
        ordered(self.f_p, "f_p", self.f_s, "f_s", true)?;
        ordered(self.f_s, "f_s", self.f_max, "f_max", false)?;
        ordered(0.0, "0", self.alpha_p, "alpha_p", true)?;
        ordered(self.alpha_p, "alpha_p", self.alpha_s, "alpha_s", true)?;
        ordered(0.0, "0", self.wh_min, "wh_min", true)?;
        ordered(self.wh_min, "wh_min", self.wh_max, "wh_max", true)?;
        ordered(0.0, "0", self.d, "d", true)?;
        ordered(0.0, "0", self.z0, "z0", true)?;
        let w0 = self.end_width(substrate)?;
        if !(self.wh_min < w0 && w0 < self.wh_max) {
            return Err(Error::Validation(format!(
                "port width w0/h = {w0} for z0 = {} ohm is not inside ({}, {})",
                self.z0, self.wh_min, self.wh_max
            )));
        }
        Ok(())
    }

    /// Port width `w0/h` matching `z0` on this substrate.
    pub fn end_width(&self, substrate: &Substrate) -> Result<f64> {
        width_for_impedance(self.z0, substrate.eps_r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub passband_margin_db: f64,
    pub stopband_margin_db: f64,
    pub transition_margin_db: f64,
    pub width_margin: f64,
    pub passband_pass: bool,
    pub stopband_pass: bool,
    pub transition_pass: bool,
    pub width_pass: bool,
    pub pass: bool,
}

impl ConstraintReport {
    pub fn new(passband: f64, stopband: f64, transition: f64, width: f64) -> Self {
        let (p, s, t, w) = (passband >= 0.0, stopband >= 0.0, transition >= 0.0, width >= 0.0);
        Self {
            passband_margin_db: passband,
            stopband_margin_db: stopband,
            transition_margin_db: transition,
            width_margin: width,
            passband_pass: p,
            stopband_pass: s,
            transition_pass: t,
            width_pass: w,
            pass: p && s && t && w,
        }
    }

    /// Margins in the order passband, stopband, transition, width.
    pub fn margins(&self) -> [f64; 4] {
        [self.passband_margin_db, self.stopband_margin_db, self.transition_margin_db, self.width_margin]
    }
}

fn check_sweep(sweep: &SParameterSweep, spec: &FilterSpec) -> Result<()> {
    if sweep.is_empty() {
        return Err(Error::InvalidArgument("empty sweep".into()));
    }
    let top = spec.f_max * (1.0 + 1e-12);
    if sweep.entries.iter().any(|e| !(e.f > 0.0 && e.f <= top)) {
        return Err(Error::InvalidArgument(format!("sweep leaves (0, {}] Hz", spec.f_max)));
    }
    Ok(())
}

/// RMS of |s11| over the passband and |s21| over everything above `f_p`,
/// normalized by the total number of grid points.
pub fn error_function(sweep: &SParameterSweep, spec: &FilterSpec) -> Result<f64> {
    check_sweep(sweep, spec)?;
    let sum: f64 = sweep
        .entries
        .iter()
        .map(|e| if e.f <= spec.f_p { e.s11.norm_sqr() } else { e.s21.norm_sqr() })
        .sum();
    Ok((sum / sweep.len() as f64).sqrt())
}

/// Upper limit on `20 log10 |s21|` inside the transition band (dB).
pub fn transition_bound_db(f: f64, spec: &FilterSpec) -> Result<f64> {
    if !(spec.f_p < f && f < spec.f_s) {
        return Err(Error::InvalidArgument(format!(
            "f = {f} is outside the transition band ({}, {})",
            spec.f_p, spec.f_s
        )));
    }
    Ok(transition_line(f, spec))
}

fn transition_line(f: f64, spec: &FilterSpec) -> f64 {
    -spec.alpha_p - (spec.alpha_s - spec.alpha_p) * (f - spec.f_p) / (spec.f_s - spec.f_p)
}

/// Smallest distance of the sampled width from either bound (negative when violated).
pub fn width_margin(profile: &FourierWidthProfile, spec: &FilterSpec, z_samples: usize) -> f64 {
    profile
        .sample(z_samples.max(2))
        .into_iter()
        .map(|(_, wh)| (wh - spec.wh_min).min(spec.wh_max - wh))
        .fold(f64::INFINITY, f64::min)
}

pub fn constraint_report(
    sweep: &SParameterSweep,
    profile: &FourierWidthProfile,
    spec: &FilterSpec,
    z_samples: usize,
) -> Result<ConstraintReport> {
    check_sweep(sweep, spec)?;
    let mut passband = None::<f64>;
    let mut stopband = None::<f64>;
    let mut transition = None::<f64>;
    let lower = |slot: &mut Option<f64>, v: f64| *slot = Some(slot.map_or(v, |m| m.min(v)));
    for e in &sweep.entries {
        let db = e.s21_db();
        if e.f <= spec.f_p {
            lower(&mut passband, db + spec.alpha_p);
        } else if e.f >= spec.f_s {
            lower(&mut stopband, -spec.alpha_s - db);
        } else {
            lower(&mut transition, transition_line(e.f, spec) - db);
        }
    }
    Ok(ConstraintReport::new(
        passband.ok_or(Error::InsufficientGrid("passband"))?,
        stopband.ok_or(Error::InsufficientGrid("stopband"))?,
        transition.ok_or(Error::InsufficientGrid("transition band"))?,
        width_margin(profile, spec, z_samples),
    ))
}

/// Builds a profile from the free coefficients `[c_1..c_N, s_1..s_N]` with
/// `c_0` chosen so both ends have width `end_wh`.
pub fn profile_with_end_width(free: &[f64], end_wh: f64, d: f64) -> Result<FourierWidthProfile> {
    if !free.len().is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "free coefficient vector must have even length, got {}",
            free.len()
        )));
    }
    let n = free.len() / 2;
    let (cos, sin) = free.split_at(n);
    let mut c = Vec::with_capacity(n + 1);
    c.push(end_wh.ln() - cos.iter().sum::<f64>());
    c.extend_from_slice(cos);
    FourierWidthProfile::new(d, c, sin.to_vec())
}

pub fn enforce_end_width(
    free: &[f64],
    spec: &FilterSpec,
    substrate: &Substrate,
) -> Result<FourierWidthProfile> {
    profile_with_end_width(free, spec.end_width(substrate)?, spec.d)
}
