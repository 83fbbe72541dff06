//! Linearized quantum-noise analysis: diffusion matrix, stationary
//! spectrum matrix of the fluctuation system, and phase/frequency
//! optimized squeezing spectra for either mode.
//!
//! Spectra are reported in vacuum noise units (vacuum = 1) and only make
//! sense below the Hopf bifurcation, where the drift matrix is Hurwitz.

use nalgebra::Matrix4;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{self, FixedPoint, Stability};

/// Output-coupling constant for the fundamental mode in
/// `S = 1 + c * (Re U -+ |V|)`.  Fixed once by the vacuum and pure-SHG
/// calibration limits; see the regression tests.
pub const C_FUNDAMENTAL: f64 = 4.0;
/// Output-coupling constant for the harmonic mode.  The harmonic scaled
/// amplitude absorbs one less factor of the loss-rate asymmetry, which
/// halves the constant.
pub const C_HARMONIC: f64 = 2.0;

/// Which output field the spectrum refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Fundamental,
    Harmonic,
}

impl Mode {
    fn coupling(self) -> f64 {
        match self {
            Mode::Fundamental => C_FUNDAMENTAL,
            Mode::Harmonic => C_HARMONIC,
        }
    }

    /// Index of the mode's annihilation-like component in the fluctuation
    /// basis `(da, da+, db, db+)`.
    fn index(self) -> usize {
        match self {
            Mode::Fundamental => 0,
            Mode::Harmonic => 2,
        }
    }
}

/// Drift and diffusion of the linear fluctuation system, with the drift
/// eigenvalues cached for stability checks.
#[derive(Debug, Clone)]
pub struct LinearizedSystem {
    /// 4x4 drift matrix in the basis `(da, da+, db, db+)`.
    pub a: Matrix4<Complex64>,
    /// 4x4 diffusion matrix; nonzero only in the two fundamental-mode
    /// self entries, which are complex conjugates of each other.
    pub d: Matrix4<Complex64>,
    eigenvalues: [Complex64; 4],
}

impl LinearizedSystem {
    /// Builds the fluctuation system around a fixed point.
    pub fn from_fixed_point(fp: &FixedPoint, r: f64, lambda_kerr: f64) -> Self {
        Self {
            a: model::jacobian(fp, r, lambda_kerr),
            d: diffusion_matrix(fp, lambda_kerr),
            eigenvalues: fp.eigenvalues,
        }
    }

    /// Builds a system from explicit matrices, computing the drift
    /// eigenvalues numerically.  Used by tests and the oracle.
    pub fn from_parts(a: Matrix4<Complex64>, d: Matrix4<Complex64>) -> Self {
        let eig = a.schur().eigenvalues().expect("complex Schur always yields eigenvalues");
        Self { a, d, eigenvalues: [eig[0], eig[1], eig[2], eig[3]] }
    }

    pub fn eigenvalues(&self) -> &[Complex64; 4] {
        &self.eigenvalues
    }

    pub fn max_re_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|k| k.re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|k| k.norm()).fold(0.0, f64::max)
    }

    fn ensure_stable(&self) -> Result<()> {
        let max_re = self.max_re_eigenvalue();
        if max_re >= 0.0 {
            Err(Error::UnstableSystem { max_re })
        } else {
            Ok(())
        }
    }
}

/// Diffusion matrix of the fluctuation equations.  Only the fundamental
/// mode carries noise; the entry is the same combination that appears in
/// the drift's anomalous coupling.
pub fn diffusion_matrix(fp: &FixedPoint, lambda_kerr: f64) -> Matrix4<Complex64> {
    let d00 = fp.beta_f - Complex64::i() * lambda_kerr * fp.alpha_f * fp.alpha_f;
    let mut d = Matrix4::zeros();
    d[(0, 0)] = d00;
    d[(1, 1)] = d00.conj();
    d
}

/// Stationary two-sided spectrum matrix of the linear system,
/// `F(omega) = (i omega I - A)^-1 D (-i omega I - A^T)^-1`.
pub fn spectrum_matrix(sys: &LinearizedSystem, omega: f64) -> Result<Matrix4<Complex64>> {
    sys.ensure_stable()?;
    let iw = Complex64::new(0.0, omega);
    let m_plus = Matrix4::from_diagonal_element(iw) - sys.a;
    let m_minus = Matrix4::from_diagonal_element(-iw) - sys.a.transpose();
    let inv_plus = m_plus.try_inverse().ok_or(Error::SingularMatrix { omega })?;
    let inv_minus = m_minus.try_inverse().ok_or(Error::SingularMatrix { omega })?;
    Ok(inv_plus * sys.d * inv_minus)
}

/// One evaluated point of the phase-optimized squeezing spectrum.
#[derive(Debug, Clone, Copy)]
pub struct SqueezePoint {
    /// Frequency, in units of the fundamental loss rate.
    pub omega: f64,
    /// Optimally squeezed quadrature noise (vacuum = 1).
    pub s_minus: f64,
    /// Conjugate quadrature noise.
    pub s_plus: f64,
    /// Optimal quadrature phase, in `[0, pi)`.
    pub theta_opt: f64,
    pub mode: Mode,
}

/// Normal (`U`) and anomalous (`V`) correlation spectra of the selected
/// mode, read off the spectrum matrix.  `U` is Hermitian-symmetrized.
fn mode_correlations(
    fp: &FixedPoint,
    r: f64,
    lambda_kerr: f64,
    omega: f64,
    mode: Mode,
) -> Result<(Complex64, Complex64)> {
    let sys = LinearizedSystem::from_fixed_point(fp, r, lambda_kerr);
    let f = spectrum_matrix(&sys, omega)?;
    let i = mode.index();
    let u = 0.5 * (f[(i + 1, i)] + f[(i, i + 1)]);
    let v = f[(i, i)];
    Ok((u, v))
}

/// Phase-optimized squeezing spectrum of one mode at one frequency.
pub fn quadrature_spectra(
    fp: &FixedPoint,
    r: f64,
    lambda_kerr: f64,
    omega: f64,
    mode: Mode,
) -> Result<SqueezePoint> {
    let (u, v) = mode_correlations(fp, r, lambda_kerr, omega, mode)?;
    debug_assert!(u.im.abs() < 1e-8, "symmetrized U not real: {u}");
    let c = mode.coupling();
    let s_minus = 1.0 + c * (u.re - v.norm());
    let s_plus = 1.0 + c * (u.re + v.norm());
    let theta_opt = ((std::f64::consts::PI - v.arg()) / 2.0).rem_euclid(std::f64::consts::PI);
    Ok(SqueezePoint { omega, s_minus, s_plus, theta_opt, mode })
}

/// Noise of the quadrature at an explicit phase `theta`; used to verify
/// that the analytic phase optimization brackets every fixed-phase
/// spectrum.
pub fn quadrature_spectrum_at_phase(
    fp: &FixedPoint,
    r: f64,
    lambda_kerr: f64,
    omega: f64,
    theta: f64,
    mode: Mode,
) -> Result<f64> {
    let (u, v) = mode_correlations(fp, r, lambda_kerr, omega, mode)?;
    let rot = (Complex64::i() * 2.0 * theta).exp();
    Ok(1.0 + mode.coupling() * (u.re + (rot * v).re))
}

/// Frequency of maximum squeezing and the spectrum there.  The spectra
/// are even in frequency, so only the non-negative half line is searched:
/// a bracketing scan followed by golden-section refinement.
pub fn optimal_frequency(
    fp: &FixedPoint,
    r: f64,
    lambda_kerr: f64,
    mode: Mode,
) -> Result<(f64, SqueezePoint)> {
    // Resonances sit near the eigenfrequencies, not only near the Kerr detuning.
    let max_im = fp
        .eigenvalues
        .iter()
        .map(|k| k.im.abs())
        .fold(0.0f64, f64::max);
    let scan_max = 10f64
        .max(3.0 * lambda_kerr * fp.n)
        .max(1.5 * max_im);
    let step = (scan_max / 400.0).max(0.05);
    let eval = |omega: f64| -> Result<f64> {
        Ok(quadrature_spectra(fp, r, lambda_kerr, omega, mode)?.s_minus)
    };

    let mut best_omega = 0.0;
    let mut best = eval(0.0)?;
    let steps = (scan_max / step).ceil() as usize;
    for i in 1..=steps {
        let omega = i as f64 * step;
        let s = eval(omega)?;
        if s < best {
            best = s;
            best_omega = omega;
        }
    }

    // Golden-section refinement inside the bracketing interval.
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut lo = (best_omega - step).max(0.0);
    let mut hi = best_omega + step;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while hi - lo > 1e-6 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval(x2)?;
        }
    }
    let omega_m = 0.5 * (lo + hi);
    let point = quadrature_spectra(fp, r, lambda_kerr, omega_m, mode)?;
    Ok((omega_m, point))
}

/// One row of a photon-number sweep.  Unstable points carry no spectrum.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub n: f64,
    pub omega_m: Option<f64>,
    pub s_minus: Option<f64>,
    pub s_plus: Option<f64>,
    pub eta_a: f64,
    pub eta_b: f64,
    pub stability: Stability,
}

/// Evaluates the optimized spectrum, efficiencies and stability over a
/// photon-number grid.  Points are independent and evaluated in parallel;
/// the output preserves grid order.
pub fn sweep(n_grid: &[f64], r: f64, lambda_kerr: f64, mode: Mode) -> Result<Vec<SweepRow>> {
    n_grid
        .par_iter()
        .map(|&n| {
            let fp = FixedPoint::for_photon_number(n, r, lambda_kerr)?;
            let (eta_a, eta_b) = model::efficiencies(n, lambda_kerr)?;
            let row = match fp.stability {
                Stability::Stable => {
                    let (omega_m, pt) = optimal_frequency(&fp, r, lambda_kerr, mode)?;
                    SweepRow {
                        n,
                        omega_m: Some(omega_m),
                        s_minus: Some(pt.s_minus),
                        s_plus: Some(pt.s_plus),
                        eta_a,
                        eta_b,
                        stability: fp.stability,
                    }
                }
                _ => SweepRow {
                    n,
                    omega_m: None,
                    s_minus: None,
                    s_plus: None,
                    eta_a,
                    eta_b,
                    stability: fp.stability,
                },
            };
            Ok(row)
        })
        .collect()
}

/// Noise power in decibels relative to vacuum.
pub fn to_db(s: f64) -> f64 {
    10.0 * s.log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn diffusion_examples() {
        let fp = FixedPoint::for_photon_number(0.0, 0.15, 0.3).unwrap();
        assert_eq!(diffusion_matrix(&fp, 0.3), Matrix4::zeros());

        // beta_f = -alpha_f^2 = -1 at alpha_f = 1, no Kerr.
        let fp = FixedPoint::for_photon_number(1.0, 0.15, 0.0).unwrap();
        assert!((fp.alpha_f - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let d = diffusion_matrix(&fp, 0.0);
        assert!((d[(0, 0)] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);

        // alpha_f = sqrt(10) real, lambda = 0.75.
        let fp = FixedPoint {
            alpha_f: Complex64::new(10f64.sqrt(), 0.0),
            beta_f: Complex64::new(-10.0, 0.0),
            n: 10.0,
            eigenvalues: model::eigenvalues_closed_form(10.0, 0.15, 0.75).k,
            stability: Stability::Stable,
        };
        let d = diffusion_matrix(&fp, 0.75);
        assert!((d[(0, 0)] - Complex64::new(-10.0, -7.5)).norm() < 1e-12);
        assert_eq!(d[(1, 1)], d[(0, 0)].conj());
        let nonzero = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| d[(i, j)] != Complex64::new(0.0, 0.0))
            .count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn spectrum_matrix_scalar_lorentzian() {
        let a = Matrix4::from_diagonal_element(Complex64::new(-1.0, 0.0));
        let d = Matrix4::from_diagonal_element(Complex64::new(2.0, 0.0));
        let sys = LinearizedSystem::from_parts(a, d);
        for omega in [0.0, 0.5, 3.0] {
            let f = spectrum_matrix(&sys, omega).unwrap();
            let expected = 2.0 / (1.0 + omega * omega);
            for i in 0..4 {
                for j in 0..4 {
                    let want = if i == j { expected } else { 0.0 };
                    assert!((f[(i, j)] - Complex64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn spectrum_matrix_zero_diffusion() {
        let fp = FixedPoint::for_photon_number(0.0, 0.15, 0.0).unwrap();
        let sys = LinearizedSystem::from_fixed_point(&fp, 0.15, 0.0);
        for omega in [0.0, 1.7, 12.0] {
            assert_eq!(spectrum_matrix(&sys, omega).unwrap(), Matrix4::zeros());
        }
    }

    #[test]
    fn spectrum_rejects_unstable_point() {
        let fp = FixedPoint::for_photon_number(5.0, 0.15, 0.0).unwrap();
        assert_eq!(fp.stability, Stability::Unstable);
        let sys = LinearizedSystem::from_fixed_point(&fp, 0.15, 0.0);
        assert!(matches!(
            spectrum_matrix(&sys, 0.0),
            Err(Error::UnstableSystem { .. })
        ));
        assert!(matches!(
            quadrature_spectra(&fp, 0.15, 0.0, 0.0, Mode::Fundamental),
            Err(Error::UnstableSystem { .. })
        ));
    }

    #[test]
    fn vacuum_spectra_are_unity() {
        let fp = FixedPoint::for_photon_number(0.0, 0.15, 0.3).unwrap();
        for mode in [Mode::Fundamental, Mode::Harmonic] {
            for omega in [0.0, 0.8, 4.0] {
                let pt = quadrature_spectra(&fp, 0.15, 0.3, omega, mode).unwrap();
                assert_relative_eq!(pt.s_minus, 1.0);
                assert_relative_eq!(pt.s_plus, 1.0);
            }
        }
    }

    #[test]
    fn subcritical_pure_shg_minimum_sits_at_zero_frequency() {
        let fp = FixedPoint::for_photon_number(0.5, 1e-6, 0.0).unwrap();
        // The spectrum is flat to machine precision around zero at this
        // loss asymmetry; "zero" means below the scan resolution.
        let (omega_m, _) = optimal_frequency(&fp, 1e-6, 0.0, Mode::Fundamental).unwrap();
        assert!(omega_m < 0.05, "omega_m = {omega_m}");
    }

    #[test]
    fn kerr_detuning_shifts_the_optimal_frequency() {
        let (r, lam, n) = (0.15, 0.75, 30.0);
        let fp = FixedPoint::for_photon_number(n, r, lam).unwrap();
        let (omega_m, _) = optimal_frequency(&fp, r, lam, Mode::Fundamental).unwrap();
        let detuning = lam * n;
        assert!(
            (omega_m - detuning).abs() < 0.15 * detuning,
            "omega_m = {omega_m}, expected about {detuning}"
        );
    }

    #[test]
    fn sweep_vacuum_row() {
        let rows = sweep(&[0.0], 0.15, 0.3, Mode::Fundamental).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_relative_eq!(row.s_minus.unwrap(), 1.0);
        assert_relative_eq!(row.s_plus.unwrap(), 1.0);
        assert_relative_eq!(row.eta_a, 1.0);
        assert_eq!(row.stability, Stability::Stable);
    }

    #[test]
    fn sweep_flags_unstable_rows() {
        let rows = sweep(&[0.5, 5.0], 0.15, 0.0, Mode::Fundamental).unwrap();
        assert!(rows[0].s_minus.is_some());
        assert_eq!(rows[1].stability, Stability::Unstable);
        assert!(rows[1].s_minus.is_none());
        assert!(rows[1].omega_m.is_none());
    }
}
