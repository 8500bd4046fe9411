//! Quasi-TEM microstrip model: zero-thickness strip, no dispersion, lossless.
//!
//! The closed forms are the Hammerstad expressions. The `w/h < 1` branch is used
//! strictly below one and the wide-strip branch at and above one, so the maps are
//! single valued. Effective permittivity is continuous at the branch point; the
//! impedance has a small (~0.4 %) step there.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Default validity window for the normalized width w/h.
pub const WH_MIN: f64 = 0.05;
pub const WH_MAX: f64 = 20.0;

const FREE_SPACE_IMPEDANCE: f64 = 120.0 * PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Substrate {
    pub eps_r: f64,
    /// Thickness in meters.
    pub h: f64,
}

impl Substrate {
    pub fn new(eps_r: f64, h: f64) -> Result<Self> {
        if !(eps_r >= 1.0) {
            return Err(Error::InvalidArgument(format!("eps_r = {eps_r} must be >= 1")));
        }
        if !(h > 0.0) {
            return Err(Error::InvalidArgument(format!("h = {h} must be > 0")));
        }
        Ok(Self { eps_r, h })
    }

    pub fn section(&self, wh: f64) -> Result<LineSection> {
        LineSection::from_width(wh, self.eps_r)
    }
}

/// Electrical state of one uniform piece of line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSection {
    pub z0: f64,
    pub eps_eff: f64,
}

impl LineSection {
    pub fn new(z0: f64, eps_eff: f64) -> Result<Self> {
        if !(z0 > 0.0) || !(eps_eff >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "line section needs z0 > 0 and eps_eff >= 1 (got {z0}, {eps_eff})"
            )));
        }
        Ok(Self { z0, eps_eff })
    }

    pub fn from_width(wh: f64, eps_r: f64) -> Result<Self> {
        Ok(Self {
            z0: characteristic_impedance(wh, eps_r)?,
            eps_eff: effective_permittivity(wh, eps_r)?,
        })
    }
}

fn check_eps(eps_r: f64) -> Result<()> {
    if !(eps_r >= 1.0) {
        return Err(Error::InvalidArgument(format!("eps_r = {eps_r} must be >= 1")));
    }
    Ok(())
}

pub fn effective_permittivity(wh: f64, eps_r: f64) -> Result<f64> {
    if !(wh > 0.0) || !wh.is_finite() {
        return Err(Error::InvalidArgument(format!("w/h = {wh} must be positive")));
    }
    check_eps(eps_r)?;
    Ok(eps_eff_unchecked(wh, eps_r))
}

fn eps_eff_unchecked(wh: f64, eps_r: f64) -> f64 {
    let mut fill = (1.0 + 12.0 / wh).powf(-0.5);
    if wh < 1.0 {
        fill += 0.04 * (1.0 - wh).powi(2);
    }
    (eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 * fill
}

fn impedance_unchecked(wh: f64, eps_r: f64) -> f64 {
    let eps_eff = eps_eff_unchecked(wh, eps_r);
    if wh < 1.0 {
        60.0 / eps_eff.sqrt() * (8.0 / wh + wh / 4.0).ln()
    } else {
        FREE_SPACE_IMPEDANCE / eps_eff.sqrt() / (wh + 1.393 + 0.667 * (wh + 1.444).ln())
    }
}

/// Characteristic impedance in ohms. Errors outside `[WH_MIN, WH_MAX]`.
pub fn characteristic_impedance(wh: f64, eps_r: f64) -> Result<f64> {
    check_eps(eps_r)?;
    if !(WH_MIN..=WH_MAX).contains(&wh) {
        return Err(Error::OutOfRange { wh, min: WH_MIN, max: WH_MAX });
    }
    Ok(impedance_unchecked(wh, eps_r))
}

/// Inverts [`characteristic_impedance`] by bisection on w/h.
///
/// Targets that fall inside the impedance step at w/h = 1 have no exact
/// preimage and are reported as unreachable.
pub fn width_for_impedance(z_target: f64, eps_r: f64) -> Result<f64> {
    check_eps(eps_r)?;
    let z_hi = impedance_unchecked(WH_MIN, eps_r);
    let z_lo = impedance_unchecked(WH_MAX, eps_r);
    let unreachable = || Error::UnreachableImpedance { target: z_target, min: z_lo, max: z_hi };
    if !(z_lo..=z_hi).contains(&z_target) {
        return Err(unreachable());
    }

    // Z(lo) >= target >= Z(hi) throughout
    let (mut lo, mut hi) = (WH_MIN, WH_MAX);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if impedance_unchecked(mid, eps_r) >= z_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let err_lo = (impedance_unchecked(lo, eps_r) - z_target).abs();
    let err_hi = (impedance_unchecked(hi, eps_r) - z_target).abs();
    let (wh, err) = if err_lo <= err_hi { (lo, err_lo) } else { (hi, err_hi) };
    if err > 1e-6 * z_target {
        return Err(unreachable());
    }
    Ok(wh)
}
