//! Short-section cascade analysis of a nonuniform line.
//!
//! The line is cut into `M` uniform sections whose width is sampled at each
//! section midpoint. Section chain matrices are multiplied from the source end
//! (z = 0) towards the load end (z = d).

use crate::error::{Error, Result};
use crate::microstrip::{LineSection, Substrate};
use crate::network::{AbcdMatrix, SMatrix, C0};
use crate::profile::FourierWidthProfile;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::TAU;

/// Default number of sections per shortest in-medium wavelength.
pub const DEFAULT_SECTIONS_PER_WAVELENGTH: f64 = 300.0;

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
}

impl FrequencyGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("frequency grid is empty".into()));
        }
        if !(points[0] > 0.0) || points.iter().any(|f| !f.is_finite()) {
            return Err(Error::InvalidArgument("grid frequencies must be finite and > 0".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("grid frequencies must be strictly increasing".into()));
        }
        Ok(Self { points })
    }

    /// `n` points `f_k = k * f_max / n`, `k = 1..=n`.
    pub fn uniform(f_max: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("grid needs at least one point".into()));
        }
        Self::new((1..=n).map(|k| k as f64 * f_max / n as f64).collect())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn f_max(&self) -> f64 {
        *self.points.last().unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub f: f64,
    pub s11: Complex64,
    pub s21: Complex64,
    pub s12: Complex64,
    pub s22: Complex64,
}

impl SweepPoint {
    pub fn from_s(f: f64, s: SMatrix) -> Self {
        Self { f, s11: s.s11, s21: s.s21, s12: s.s12, s22: s.s22 }
    }

    pub fn s21_db(&self) -> f64 {
        20.0 * self.s21.norm().log10()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SParameterSweep {
    pub z_ref: f64,
    pub entries: Vec<SweepPoint>,
}

impl SParameterSweep {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Section count so that each section is at most `lambda_min / safety` long,
/// with `lambda_min = c / (f_max sqrt(eps_r))`.
pub fn choose_num_sections(d: f64, f_max: f64, eps_r: f64, safety: f64) -> Result<usize> {
    if !(d > 0.0 && f_max > 0.0 && eps_r >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "need d > 0, f_max > 0, eps_r >= 1 (got {d}, {f_max}, {eps_r})"
        )));
    }
    if !(safety >= 10.0) {
        return Err(Error::InvalidArgument(format!("safety divisor {safety} must be >= 10")));
    }
    let lambda_min = C0 / (f_max * eps_r.sqrt());
    let sections = d * safety / lambda_min;
    // absorb rounding when d is an exact multiple of the section length
    Ok(((sections - 1e-9).ceil() as usize).max(1))
}

/// A profile cut into uniform sections, independent of frequency.
#[derive(Debug, Clone)]
pub struct DiscretizedLine {
    pub dz: f64,
    pub sections: Vec<LineSection>,
}

impl DiscretizedLine {
    pub fn new(profile: &FourierWidthProfile, substrate: &Substrate, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("section count must be >= 1".into()));
        }
        let dz = profile.d / m as f64;
        let sections = (0..m)
            .map(|k| substrate.section(profile.log_width((k as f64 + 0.5) * dz).exp()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dz, sections })
    }

    pub fn abcd(&self, f: f64) -> AbcdMatrix {
        let k = TAU * f * self.dz / C0;
        self.sections.iter().fold(AbcdMatrix::IDENTITY, |acc, s| {
            then_lossless(acc, s.z0, k * s.eps_eff.sqrt())
        })
    }

    pub fn sweep(&self, grid: &FrequencyGrid, z0: f64) -> Result<SParameterSweep> {
        let points = grid.points();
        let matrices: Vec<AbcdMatrix> = match uniform_step(points) {
            Some(step) => points
                .par_chunks(RESYNC_BLOCK)
                .flat_map_iter(|block| self.stepped_block(block[0], step, block.len()))
                .collect(),
            None => points.par_iter().map(|&f| self.abcd(f)).collect(),
        };
        let entries = points
            .iter()
            .zip(matrices)
            .map(|(&f, m)| Ok(SweepPoint::from_s(f, m.to_s(z0)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SParameterSweep { z_ref: z0, entries })
    }

    /// Chain matrices at `f0, f0 + step, ...`, advancing each section's phase
    /// by a fixed rotation instead of re-evaluating sin/cos.
    fn stepped_block(&self, f0: f64, step: f64, count: usize) -> Vec<AbcdMatrix> {
        let k = TAU * self.dz / C0;
        let mut phasors: Vec<(f64, f64)> = Vec::with_capacity(self.sections.len());
        let mut rotations: Vec<(f64, f64)> = Vec::with_capacity(self.sections.len());
        for s in &self.sections {
            let per_hz = k * s.eps_eff.sqrt();
            let (sin, cos) = (per_hz * f0).sin_cos();
            phasors.push((cos, sin));
            let (sin, cos) = (per_hz * step).sin_cos();
            rotations.push((cos, sin));
        }
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            let mut acc = AbcdMatrix::IDENTITY;
            for (s, &(cos, sin)) in self.sections.iter().zip(&phasors) {
                acc = then_rotated(acc, s.z0, cos, sin);
            }
            out.push(acc);
            if i + 1 < count {
                for (p, r) in phasors.iter_mut().zip(&rotations) {
                    *p = (p.0 * r.0 - p.1 * r.1, p.1 * r.0 + p.0 * r.1);
                }
            }
        }
        out
    }
}

/// Frequencies per block in the stepped sweep; each block restarts from exact phases.
const RESYNC_BLOCK: usize = 16;

fn uniform_step(points: &[f64]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let step = points[1] - points[0];
    points
        .windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() <= 1e-9 * step)
        .then_some(step)
}

// acc * lossless_line(z, theta), written out to skip the zero products
#[inline]
fn then_lossless(acc: AbcdMatrix, z: f64, theta: f64) -> AbcdMatrix {
    let (sin, cos) = theta.sin_cos();
    then_rotated(acc, z, cos, sin)
}

#[inline]
fn then_rotated(acc: AbcdMatrix, z: f64, cos: f64, sin: f64) -> AbcdMatrix {
    let jzs = Complex64::new(0.0, z * sin);
    let jsz = Complex64::new(0.0, sin / z);
    AbcdMatrix {
        a: acc.a * cos + acc.b * jsz,
        b: acc.a * jzs + acc.b * cos,
        c: acc.c * cos + acc.d * jsz,
        d: acc.c * jzs + acc.d * cos,
    }
}

pub fn cascade_abcd(
    profile: &FourierWidthProfile,
    substrate: &Substrate,
    f: f64,
    m: usize,
) -> Result<AbcdMatrix> {
    Ok(DiscretizedLine::new(profile, substrate, m)?.abcd(f))
}

pub fn analyze(
    profile: &FourierWidthProfile,
    substrate: &Substrate,
    grid: &FrequencyGrid,
    z0: f64,
    m: usize,
) -> Result<SParameterSweep> {
    if !(z0 > 0.0) {
        return Err(Error::InvalidArgument(format!("reference impedance {z0} must be > 0")));
    }
    DiscretizedLine::new(profile, substrate, m)?.sweep(grid, z0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::microstrip::characteristic_impedance;
    use crate::network::{section_abcd, s_parameters};
    use proptest::prelude::*;

    fn substrate() -> Substrate {
        Substrate::new(3.5, 762e-6).unwrap()
    }

    fn lpf1() -> FourierWidthProfile {
        FourierWidthProfile::new(
            0.1,
            vec![0.3805, 0.2716, -0.0143, -0.1071, -0.4725, 0.7393],
            vec![-0.1593, -0.0968, -0.1729, -0.8906, 1.1364],
        )
        .unwrap()
    }

    fn close(a: &AbcdMatrix, b: &AbcdMatrix, tol: f64) -> bool {
        [(a.a, b.a), (a.b, b.b), (a.c, b.c), (a.d, b.d)]
            .iter()
            .all(|(x, y)| (x - y).norm() <= tol * y.norm().max(1e-300))
    }

    #[test]
    fn section_count_examples() {
        assert_eq!(choose_num_sections(0.10, 6e9, 3.5, 50.0).unwrap(), 188);
        let lambda = C0 / (6e9 * 3.5_f64.sqrt());
        assert!((lambda - 0.026707).abs() < 1e-6);
        assert_eq!(choose_num_sections(lambda, 6e9, 3.5, 50.0).unwrap(), 50);
        let m1 = choose_num_sections(0.1, 6e9, 3.5, 50.0).unwrap();
        let m2 = choose_num_sections(0.1, 6e9, 3.5, 100.0).unwrap();
        assert!(m2 == 2 * m1 || m2 == 2 * m1 - 1);
        assert!(choose_num_sections(0.1, 6e9, 3.5, 5.0).is_err());
    }

    #[test]
    fn section_length_meets_criterion() {
        for (d, k) in [(0.1, 50.0), (0.037, 73.0), (0.5, 300.0)] {
            let m = choose_num_sections(d, 6e9, 3.5, k).unwrap();
            assert!(d / m as f64 <= C0 / (6e9 * 3.5_f64.sqrt()) / k * (1.0 + 1e-12));
        }
    }

    #[test]
    fn grid_validation() {
        assert!(FrequencyGrid::new(vec![]).is_err());
        assert!(FrequencyGrid::new(vec![0.0, 1.0]).is_err());
        assert!(FrequencyGrid::new(vec![2.0, 1.0]).is_err());
        let g = FrequencyGrid::uniform(6e9, 120).unwrap();
        assert_eq!(g.len(), 120);
        assert_eq!(g.points()[0], 5e7);
        assert_eq!(g.f_max(), 6e9);
    }

    #[test]
    fn uniform_profile_matches_single_section() {
        let sub = substrate();
        let p = FourierWidthProfile::uniform(0.1, 1.7).unwrap();
        let single = section_abcd(&sub.section(1.7).unwrap(), 0.1, 4.2e9);
        for m in [1, 7, 188] {
            let casc = cascade_abcd(&p, &sub, 4.2e9, m).unwrap();
            assert!(close(&casc, &single, 1e-9), "m = {m}");
        }
    }

    #[test]
    fn dc_is_identity() {
        let m = cascade_abcd(&lpf1(), &substrate(), 0.0, 188).unwrap();
        assert_eq!(m, AbcdMatrix::IDENTITY);
    }

    #[test]
    fn out_of_window_width_propagates() {
        let p = FourierWidthProfile::uniform(0.1, 40.0).unwrap();
        assert!(cascade_abcd(&p, &substrate(), 1e9, 10).is_err());
        assert!(cascade_abcd(&lpf1(), &substrate(), 1e9, 0).is_err());
    }

    #[test]
    fn matched_uniform_line() {
        let sub = substrate();
        let wh = crate::microstrip::width_for_impedance(50.0, sub.eps_r).unwrap();
        let p = FourierWidthProfile::uniform(0.1, wh).unwrap();
        let z = characteristic_impedance(wh, sub.eps_r).unwrap();
        let grid = FrequencyGrid::uniform(6e9, 60).unwrap();
        let sweep = analyze(&p, &sub, &grid, z, 188).unwrap();
        for e in &sweep.entries {
            assert!(e.s11.norm() < 1e-9);
            assert!((e.s21.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_matches_pointwise_evaluation() {
        let sub = substrate();
        let grid = FrequencyGrid::uniform(6e9, 12).unwrap();
        let sweep = analyze(&lpf1(), &sub, &grid, 50.0, 188).unwrap();
        for (e, &f) in sweep.entries.iter().zip(grid.points()) {
            let (s11, s21) = s_parameters(&cascade_abcd(&lpf1(), &sub, f, 188).unwrap(), 50.0).unwrap();
            assert_eq!(e.f, f);
            assert!((e.s11 - s11).norm() < 1e-12 && (e.s21 - s21).norm() < 1e-12);
        }
    }

    #[test]
    fn stepped_and_direct_sweeps_agree() {
        let sub = substrate();
        let uniform = FrequencyGrid::uniform(6e9, 120).unwrap();
        // nudging one point disables the stepped path
        let mut pts = uniform.points().to_vec();
        pts[0] *= 1.0 + 1e-6;
        let irregular = FrequencyGrid::new(pts).unwrap();
        assert!(uniform_step(uniform.points()).is_some());
        assert!(uniform_step(irregular.points()).is_none());
        let a = analyze(&lpf1(), &sub, &uniform, 50.0, 1124).unwrap();
        let b = analyze(&lpf1(), &sub, &irregular, 50.0, 1124).unwrap();
        for (x, y) in a.entries.iter().zip(&b.entries).skip(1) {
            assert!((x.s11 - y.s11).norm() < 1e-11 && (x.s21 - y.s21).norm() < 1e-11);
        }
    }

    #[test]
    fn mirrored_profile_transmits_identically() {
        let sub = substrate();
        let grid = FrequencyGrid::uniform(6e9, 120).unwrap();
        let a = analyze(&lpf1(), &sub, &grid, 50.0, 188).unwrap();
        let b = analyze(&lpf1().mirrored(), &sub, &grid, 50.0, 188).unwrap();
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert!((x.s21.norm() - y.s21.norm()).abs() < 1e-9);
            assert!((x.s11 - y.s22).norm() < 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn lossless_and_reciprocal(
            c in proptest::collection::vec(-0.4f64..0.4, 4),
            s in proptest::collection::vec(-0.4f64..0.4, 3),
            f in 1e6f64..8e9,
        ) {
            let p = FourierWidthProfile::new(0.08, c, s).unwrap();
            let m = cascade_abcd(&p, &substrate(), f, 150).unwrap();
            prop_assert!((m.determinant() - 1.0).norm() < 1e-9);
            let (s11, s21) = s_parameters(&m, 50.0).unwrap();
            prop_assert!((s11.norm_sqr() + s21.norm_sqr() - 1.0).abs() < 1e-6);
        }
    }
}
