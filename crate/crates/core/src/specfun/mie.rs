//! Analytic series solution for plane-wave scattering by a sound-hard disk.
//!
//! For a disk of radius `a` centered at the origin and incident field
//! `e^{ikx·d}` with `d = (cos α, sin α)`, the scattered field is
//!
//! ```text
//! u^s(r, θ) = -Σ_{n≥0} ε_n i^n (J_n'(ka)/H_n'(ka)) H_n(kr) cos(n(θ-α)),
//! ```
//!
//! `ε_0 = 1`, `ε_n = 2`, with far field
//!
//! ```text
//! u_∞(θ) = -sqrt(2/(πk)) e^{-iπ/4} Σ ε_n (J_n'(ka)/H_n'(ka)) cos(n(θ-α)).
//! ```
//!
//! This is the validation oracle for the finite-element pipeline; it shares
//! only the Bessel kernels with the solver, never its discretization.

use super::{bessel_jy_upto, C64, SpecFunError};

/// Precomputed series for one `(k, a)` pair.
#[derive(Debug, Clone)]
pub struct MieSeries {
    wavenumber: f64,
    radius: f64,
    incidence_angle: f64,
    /// `ε_n i^n J_n'(ka)/H_n'(ka)` for `n = 0..=n_max`.
    coeffs: Vec<C64>,
}

impl MieSeries {
    /// Builds the series with `n_max` terms; 60 is ample for `ka ≤ 20`.
    pub fn new(wavenumber: f64, radius: f64, incidence_angle: f64, n_max: usize) -> Result<Self, SpecFunError> {
        let fam = bessel_jy_upto(n_max as i32, wavenumber * radius)?;
        let mut coeffs = Vec::with_capacity(n_max + 1);
        for (n, e) in fam.iter().enumerate() {
            let eps = if n == 0 { 1.0 } else { 2.0 };
            let i_pow_n = match n % 4 {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(0.0, 1.0),
                2 => C64::new(-1.0, 0.0),
                _ => C64::new(0.0, -1.0),
            };
            let (_, hp) = e.hankel1();
            coeffs.push(eps * i_pow_n * (e.jp / hp));
        }
        Ok(Self {
            wavenumber,
            radius,
            incidence_angle,
            coeffs,
        })
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Scattered field at polar `(r, θ)`, `r ≥ a`.
    pub fn scattered_field(&self, r: f64, theta: f64) -> Result<C64, SpecFunError> {
        let fam = bessel_jy_upto((self.coeffs.len() - 1) as i32, self.wavenumber * r)?;
        let mut sum = C64::new(0.0, 0.0);
        let rel = theta - self.incidence_angle;
        for (n, c) in self.coeffs.iter().enumerate() {
            let (h, _) = fam[n].hankel1();
            sum += c * h * (n as f64 * rel).cos();
        }
        Ok(-sum)
    }

    /// Scattered field at a Cartesian point.
    pub fn scattered_field_xy(&self, x: f64, y: f64) -> Result<C64, SpecFunError> {
        self.scattered_field(x.hypot(y), y.atan2(x))
    }

    /// Far-field pattern `u_∞(θ)` in the `e^{ikr}/sqrt(r)` normalization.
    pub fn far_field(&self, theta: f64) -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        let rel = theta - self.incidence_angle;
        for (n, c) in self.coeffs.iter().enumerate() {
            // strip the i^n factor: far field uses ε_n J'/H' directly
            let i_pow_n_conj = match n % 4 {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(0.0, -1.0),
                2 => C64::new(-1.0, 0.0),
                _ => C64::new(0.0, 1.0),
            };
            sum += c * i_pow_n_conj * (n as f64 * rel).cos();
        }
        let amp = (2.0 / (std::f64::consts::PI * self.wavenumber)).sqrt();
        let phase = C64::new(0.0, -std::f64::consts::FRAC_PI_4).exp();
        -amp * phase * sum
    }
}
