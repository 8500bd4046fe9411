use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Strip width as a truncated Fourier series in log space:
/// `ln(w(z)/h) = sum_{n=0..N} c_n cos(2 pi n z / d) + sum_{n=1..N} s_n sin(2 pi n z / d)`.
///
/// `c[0]` is the constant term; `s[k]` multiplies harmonic `k + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierWidthProfile {
    #[serde(rename = "d_m")]
    pub d: f64,
    pub c: Vec<f64>,
    pub s: Vec<f64>,
}

impl FourierWidthProfile {
    pub fn new(d: f64, c: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        let p = Self { d, c, s };
        p.validate()?;
        Ok(p)
    }

    /// A uniform line of normalized width `wh`.
    pub fn uniform(d: f64, wh: f64) -> Result<Self> {
        if !(wh > 0.0) {
            return Err(Error::InvalidArgument(format!("w/h = {wh} must be positive")));
        }
        Self::new(d, vec![wh.ln()], Vec::new())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d > 0.0) || !self.d.is_finite() {
            return Err(Error::InvalidArgument(format!("line length d = {} must be > 0", self.d)));
        }
        if self.c.is_empty() || self.c.len() != self.s.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected N+1 cosine and N sine coefficients, got {} and {}",
                self.c.len(),
                self.s.len()
            )));
        }
        if self.c.iter().chain(&self.s).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.s.len()
    }

    /// Mirror about `z = d/2` (negates the sine coefficients).
    pub fn mirrored(&self) -> Self {
        Self { d: self.d, c: self.c.clone(), s: self.s.iter().map(|v| -v).collect() }
    }

    /// `ln(w(z)/h)` without the domain check.
    pub fn log_width(&self, z: f64) -> f64 {
        let (sin1, cos1) = (TAU * z / self.d).sin_cos();
        // (cos n theta, sin n theta) by repeated rotation
        let (mut cos_n, mut sin_n) = (1.0, 0.0);
        let mut acc = self.c[0];
        for n in 1..self.c.len() {
            (cos_n, sin_n) = (cos_n * cos1 - sin_n * sin1, sin_n * cos1 + cos_n * sin1);
            acc += self.c[n] * cos_n + self.s[n - 1] * sin_n;
        }
        acc
    }

    /// Normalized width at the ports, `exp(sum c_n)`.
    pub fn end_width(&self) -> f64 {
        self.c.iter().sum::<f64>().exp()
    }

    /// `w(z)/h` sampled at `count` uniformly spaced points including both ends.
    pub fn sample(&self, count: usize) -> Vec<(f64, f64)> {
        let last = count.saturating_sub(1).max(1) as f64;
        (0..count)
            .map(|i| {
                let z = self.d * i as f64 / last;
                (z, self.log_width(z).exp())
            })
            .collect()
    }
}

pub fn evaluate_profile(profile: &FourierWidthProfile, z: f64) -> Result<f64> {
    if !(0.0..=profile.d).contains(&z) {
        return Err(Error::InvalidArgument(format!("z = {z} outside [0, {}]", profile.d)));
    }
    Ok(profile.log_width(z).exp())
}
