use crate::error::{Error, Result};
use crate::microstrip::LineSection;
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::ops::Mul;

/// Speed of light in vacuum, m/s.
pub const C0: f64 = 2.997_924_58e8;

/// Chain (ABCD) matrix of a two-port.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbcdMatrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl AbcdMatrix {
    pub const IDENTITY: Self = Self {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
        d: Complex64::new(1.0, 0.0),
    };

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Scattering matrix referenced to `z0` at both ports.
    pub fn to_s(&self, z0: f64) -> Result<SMatrix> {
        if !(z0 > 0.0) {
            return Err(Error::InvalidArgument(format!("reference impedance {z0} must be > 0")));
        }
        let az = self.a * z0;
        let cz2 = self.c * z0 * z0;
        let dz = self.d * z0;
        let den = az + self.b + cz2 + dz;
        if den.norm() == 0.0 || !den.is_finite() {
            return Err(Error::SingularNetwork);
        }
        let s21 = Complex64::new(2.0 * z0, 0.0) / den;
        Ok(SMatrix {
            s11: (az + self.b - cz2 - dz) / den,
            s21,
            s12: 2.0 * z0 * self.determinant() / den,
            s22: (-az + self.b - cz2 + dz) / den,
        })
    }
}

impl Mul for AbcdMatrix {
    type Output = AbcdMatrix;

    fn mul(self, rhs: AbcdMatrix) -> AbcdMatrix {
        AbcdMatrix {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMatrix {
    pub s11: Complex64,
    pub s12: Complex64,
    pub s21: Complex64,
    pub s22: Complex64,
}

/// Eqs. for S11 and S21 of a two-port terminated in `z0` at both ends.
pub fn s_parameters(abcd: &AbcdMatrix, z0: f64) -> Result<(Complex64, Complex64)> {
    let s = abcd.to_s(z0)?;
    Ok((s.s11, s.s21))
}

/// Lossless uniform section of length `dz` at frequency `f`.
pub fn section_abcd(section: &LineSection, dz: f64, f: f64) -> AbcdMatrix {
    let beta = TAU * f * section.eps_eff.sqrt() / C0;
    lossless_line(section.z0, beta * dz)
}

/// Uniform lossless line with impedance `z` and electrical length `theta` (radians).
pub fn lossless_line(z: f64, theta: f64) -> AbcdMatrix {
    let (sin, cos) = theta.sin_cos();
    AbcdMatrix {
        a: Complex64::new(cos, 0.0),
        b: Complex64::new(0.0, z * sin),
        c: Complex64::new(0.0, sin / z),
        d: Complex64::new(cos, 0.0),
    }
}
