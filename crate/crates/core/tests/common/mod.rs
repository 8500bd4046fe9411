#![allow(dead_code)]

use ntlf::{AbcdMatrix, FilterSpec, FourierWidthProfile, Substrate};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const C0: f64 = 2.997_924_58e8;

pub const LPF1_C: [f64; 6] = [0.3805, 0.2716, -0.0143, -0.1071, -0.4725, 0.7393];
pub const LPF1_S: [f64; 5] = [-0.1593, -0.0968, -0.1729, -0.8906, 1.1364];
pub const LPF2_C: [f64; 6] = [0.2333, 0.3900, -0.0637, -0.0078, -0.6005, 0.8461];
pub const LPF2_S: [f64; 5] = [-0.2200, 0.0929, 0.0569, -1.0636, 0.5341];

pub fn substrate() -> Substrate {
    Substrate::new(3.5, 762e-6).unwrap()
}

pub fn lpf1() -> FourierWidthProfile {
    FourierWidthProfile::new(0.1, LPF1_C.to_vec(), LPF1_S.to_vec()).unwrap()
}

pub fn lpf2() -> FourierWidthProfile {
    FourierWidthProfile::new(0.1, LPF2_C.to_vec(), LPF2_S.to_vec()).unwrap()
}

pub fn spec1() -> FilterSpec {
    FilterSpec {
        f_p: 2e9,
        f_s: 3e9,
        f_max: 6e9,
        alpha_p: 0.1,
        alpha_s: 20.0,
        wh_min: 0.13,
        wh_max: 10.0,
        d: 0.1,
        z0: 50.0,
    }
}

pub fn spec2() -> FilterSpec {
    FilterSpec { alpha_p: 0.3, wh_min: 0.1, wh_max: 7.0, ..spec1() }
}

/// w(z)/h straight from the series, independent of the library's evaluator.
pub fn width_at(c: &[f64], s: &[f64], d: f64, z: f64) -> f64 {
    let mut acc = 0.0;
    for (n, cn) in c.iter().enumerate() {
        acc += cn * (2.0 * PI * n as f64 * z / d).cos();
    }
    for (k, sn) in s.iter().enumerate() {
        acc += sn * (2.0 * PI * (k + 1) as f64 * z / d).sin();
    }
    acc.exp()
}

/// Chain matrix from RK4 integration of the lossless telegrapher equations
/// `dV/dz = -j w L I`, `dI/dz = -j w C V`, integrated from the load end back
/// to the source end for the two unit initial conditions.
pub fn telegrapher_abcd(c: &[f64], s: &[f64], d: f64, sub: &Substrate, f: f64, steps: usize) -> AbcdMatrix {
    let omega = 2.0 * PI * f;
    let per_length = |z: f64| {
        let wh = width_at(c, s, d, z);
        let zc = ntlf::characteristic_impedance(wh, sub.eps_r).unwrap();
        let ee = ntlf::effective_permittivity(wh, sub.eps_r).unwrap();
        (zc * ee.sqrt() / C0, ee.sqrt() / (zc * C0))
    };
    let rhs = |z: f64, y: [Complex64; 2]| {
        let (l, cap) = per_length(z);
        let j = Complex64::i();
        [-j * omega * l * y[1], -j * omega * cap * y[0]]
    };
    let integrate = |v0: Complex64, i0: Complex64| {
        let h = -d / steps as f64;
        let mut y = [v0, i0];
        let mut z = d;
        let add = |y: [Complex64; 2], k: [Complex64; 2], t: f64| [y[0] + k[0] * t, y[1] + k[1] * t];
        for _ in 0..steps {
            let k1 = rhs(z, y);
            let k2 = rhs(z + h / 2.0, add(y, k1, h / 2.0));
            let k3 = rhs(z + h / 2.0, add(y, k2, h / 2.0));
            let k4 = rhs(z + h, add(y, k3, h));
            for n in 0..2 {
                y[n] += (k1[n] + k2[n] * 2.0 + k3[n] * 2.0 + k4[n]) * (h / 6.0);
            }
            z += h;
        }
        y
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let [a, cc] = integrate(one, zero);
    let [b, dd] = integrate(zero, one);
    AbcdMatrix { a, b, c: cc, d: dd }
}

pub fn max_relative_entry_error(x: &AbcdMatrix, reference: &AbcdMatrix) -> f64 {
    [(x.a, reference.a), (x.b, reference.b), (x.c, reference.c), (x.d, reference.d)]
        .iter()
        .map(|(u, v)| (u - v).norm() / v.norm())
        .fold(0.0, f64::max)
}
