//! Scaled deterministic dynamics of the two-mode cavity.
//!
//! Everything here is expressed in the dimensionless variables: time in
//! units of the fundamental loss rate, `r` the loss-rate ratio of the
//! harmonic to the fundamental mode, `lambda_kerr` the scaled Kerr
//! strength, `drive` the scaled pump amplitude.  The phase of the drive is
//! a gauge freedom: it rotates the fundamental amplitude and leaves every
//! reported scalar (photon number, eigenvalues, efficiencies) unchanged.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance separating `Stable`/`Marginal`/`Unstable`.
pub const EPS_STAB_DEFAULT: f64 = 1e-9;

/// Scaled system parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    /// Loss-rate ratio of harmonic to fundamental mode, > 0.
    pub r: f64,
    /// Scaled Kerr strength, >= 0.
    pub lambda_kerr: f64,
    /// Scaled pump amplitude.
    pub drive: Complex64,
}

impl CavityParams {
    pub fn new(r: f64, lambda_kerr: f64, drive: Complex64) -> Result<Self> {
        check_r_lambda(r, lambda_kerr)?;
        if !drive.re.is_finite() || !drive.im.is_finite() {
            return Err(Error::Domain("drive must be finite".into()));
        }
        Ok(Self { r, lambda_kerr, drive })
    }
}

fn check_r_lambda(r: f64, lambda_kerr: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("loss ratio r must be positive, got {r}")));
    }
    if !(lambda_kerr >= 0.0) || !lambda_kerr.is_finite() {
        return Err(Error::Domain(format!(
            "Kerr strength must be non-negative, got {lambda_kerr}"
        )));
    }
    Ok(())
}

/// Stability classification of a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Marginal,
    Unstable,
}

/// A steady state of the deterministic equations, with its linear
/// stability attached.
#[derive(Debug, Clone, Copy)]
pub struct FixedPoint {
    /// Scaled fundamental amplitude.
    pub alpha_f: Complex64,
    /// Scaled harmonic amplitude; always exactly `-alpha_f^2`.
    pub beta_f: Complex64,
    /// Photon number `|alpha_f|^2`.
    pub n: f64,
    /// The four drift eigenvalues, in units of the fundamental loss rate.
    pub eigenvalues: [Complex64; 4],
    pub stability: Stability,
}

impl FixedPoint {
    /// Builds the fixed point holding a given photon number, using the
    /// convention of a real non-negative drive.
    pub fn for_photon_number(n: f64, r: f64, lambda_kerr: f64) -> Result<Self> {
        check_r_lambda(r, lambda_kerr)?;
        let drive = Complex64::new(drive_for_photon_number(n, lambda_kerr)?, 0.0);
        Ok(Self::from_root(n, r, lambda_kerr, drive))
    }

    /// Expands a root `n` of the steady-state relation into a full fixed
    /// point for the given drive.
    fn from_root(n: f64, r: f64, lambda_kerr: f64, drive: Complex64) -> Self {
        let alpha_f = if n == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            drive / Complex64::new(1.0 + n, lambda_kerr * n)
        };
        let beta_f = -alpha_f * alpha_f;
        let eigen = eigenvalues_closed_form(n, r, lambda_kerr);
        let stability = classify_stability(&eigen.k, EPS_STAB_DEFAULT);
        Self { alpha_f, beta_f, n, eigenvalues: eigen.k, stability }
    }

    /// The most slowly decaying (or fastest growing) rate.
    pub fn max_re_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|k| k.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// The four closed-form drift eigenvalues together with the auxiliary
/// quantity `g`; `g` is kept complex so the formula stays valid past the
/// stabilization threshold `3 lambda^2 = 1`.
#[derive(Debug, Clone, Copy)]
pub struct EigenSet {
    pub k: [Complex64; 4],
    pub g: Complex64,
}

impl EigenSet {
    pub fn max_re(&self) -> f64 {
        self.k.iter().map(|k| k.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Photon number at which the fixed point loses stability through the
/// Hopf bifurcation; `f64::INFINITY` once the Kerr term has stabilized
/// the system (`3 lambda^2 >= 1`).
pub fn critical_photon_number(r: f64, lambda_kerr: f64) -> Result<f64> {
    check_r_lambda(r, lambda_kerr)?;
    let disc = 1.0 - 3.0 * lambda_kerr * lambda_kerr;
    if disc <= 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok((r + 1.0) / disc.sqrt())
    }
}

/// Magnitude of the drive holding a photon number `n` in steady state.
pub fn drive_for_photon_number(n: f64, lambda_kerr: f64) -> Result<f64> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::Domain(format!("photon number must be non-negative, got {n}")));
    }
    Ok((n * steady_state_factor(n, lambda_kerr)).sqrt())
}

/// `(1+n)^2 + lambda^2 n^2`; the steady-state relation reads
/// `n * steady_state_factor(n) = |drive|^2`.
fn steady_state_factor(n: f64, lambda_kerr: f64) -> f64 {
    (1.0 + n) * (1.0 + n) + lambda_kerr * lambda_kerr * n * n
}

/// All steady states of the deterministic equations for the given
/// parameters.  The steady-state relation is a cubic in the photon number
/// which is strictly increasing on `n >= 0`, so exactly one fixed point is
/// returned for any drive.
pub fn steady_states(params: &CavityParams) -> Vec<FixedPoint> {
    let lam = params.lambda_kerr;
    let drive_sq = params.drive.norm_sqr();
    if drive_sq == 0.0 {
        return vec![FixedPoint::from_root(0.0, params.r, lam, params.drive)];
    }

    // Monic cubic in n: n^3 + a2 n^2 + a1 n + a0 = 0.
    let lead = 1.0 + lam * lam;
    let a2 = 2.0 / lead;
    let a1 = 1.0 / lead;
    let a0 = -drive_sq / lead;

    let mut roots: Vec<f64> = companion_roots_cubic(a2, a1, a0)
        .into_iter()
        .filter(|k| k.im.abs() < 1e-8 * (1.0 + k.re.abs()) && k.re > -1e-9)
        .map(|k| k.re.max(0.0))
        .collect();

    // Newton polish on the residual of the steady-state relation.
    for n in roots.iter_mut() {
        for _ in 0..50 {
            let f = *n * steady_state_factor(*n, lam) - drive_sq;
            let df = (1.0 + *n) * (1.0 + *n)
                + 2.0 * *n * (1.0 + *n)
                + 3.0 * lam * lam * *n * *n;
            let step = f / df;
            *n -= step;
            if step.abs() < 1e-16 * (1.0 + n.abs()) {
                break;
            }
        }
        if *n < 0.0 {
            *n = 0.0;
        }
    }

    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * (1.0 + b.abs()));
    roots
        .into_iter()
        .map(|n| FixedPoint::from_root(n, params.r, lam, params.drive))
        .collect()
}

/// Eigenvalues of the real cubic `x^3 + a2 x^2 + a1 x + a0` via its
/// companion matrix.
fn companion_roots_cubic(a2: f64, a1: f64, a0: f64) -> Vec<Complex64> {
    let companion = nalgebra::Matrix3::new(
        0.0, 0.0, -a0, //
        1.0, 0.0, -a1, //
        0.0, 1.0, -a2,
    );
    companion.complex_eigenvalues().iter().copied().collect()
}

/// Drift matrix of the linearized fluctuation equations in the basis
/// `(da, da+, db, db+)`.
pub fn jacobian(fp: &FixedPoint, r: f64, lambda_kerr: f64) -> Matrix4<Complex64> {
    let i = Complex64::i();
    let lam = lambda_kerr;
    let n = fp.n;
    let a = fp.alpha_f;
    let b = fp.beta_f;
    let zero = Complex64::new(0.0, 0.0);
    let rc = Complex64::new(r, 0.0);
    Matrix4::new(
        Complex64::new(-1.0, -2.0 * lam * n), b - i * lam * a * a, a.conj(), zero, //
        (b - i * lam * a * a).conj(), Complex64::new(-1.0, 2.0 * lam * n), zero, a, //
        -2.0 * rc * a, zero, -rc, zero, //
        zero, -2.0 * rc * a.conj(), zero, -rc,
    )
}

/// Closed-form eigenvalues of the drift matrix as a function of the
/// photon number alone.
pub fn eigenvalues_closed_form(n: f64, r: f64, lambda_kerr: f64) -> EigenSet {
    let g = Complex64::new(1.0 - 3.0 * lambda_kerr * lambda_kerr, 0.0).sqrt() * n;
    let half = Complex64::new(0.5, 0.0);
    let rn8 = Complex64::new(8.0 * r * n, 0.0);
    let base_plus = Complex64::new(-r - 1.0, 0.0) + g;
    let base_minus = Complex64::new(-r - 1.0, 0.0) - g;
    let rad_plus = ((Complex64::new(-r + 1.0, 0.0) - g).powi(2) - rn8).sqrt();
    let rad_minus = ((Complex64::new(-r + 1.0, 0.0) + g).powi(2) - rn8).sqrt();
    EigenSet {
        k: [
            (base_plus - rad_plus) * half,
            (base_plus + rad_plus) * half,
            (base_minus - rad_minus) * half,
            (base_minus + rad_minus) * half,
        ],
        g,
    }
}

/// Classifies a spectrum by the sign of its largest real part, with a
/// tolerance band for marginality.
pub fn classify_stability(eigenvalues: &[Complex64; 4], eps_stab: f64) -> Stability {
    let max_re = eigenvalues.iter().map(|k| k.re).fold(f64::NEG_INFINITY, f64::max);
    if max_re < -eps_stab {
        Stability::Stable
    } else if max_re > eps_stab {
        Stability::Unstable
    } else {
        Stability::Marginal
    }
}

/// Conversion efficiencies `(eta_a, eta_b)` of the fundamental and
/// harmonic mode; they sum to one identically.
pub fn efficiencies(n: f64, lambda_kerr: f64) -> Result<(f64, f64)> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::Domain(format!("photon number must be non-negative, got {n}")));
    }
    let denom = steady_state_factor(n, lambda_kerr);
    let eta_a = ((1.0 - n) * (1.0 - n) + n * n * lambda_kerr * lambda_kerr) / denom;
    let eta_b = 4.0 * n / denom;
    Ok((eta_a, eta_b))
}

/// Residual of the two deterministic steady-state equations at a point.
pub fn steady_state_residual(fp: &FixedPoint, lambda_kerr: f64, drive: Complex64) -> f64 {
    let i = Complex64::i();
    let a = fp.alpha_f;
    let b = fp.beta_f;
    let res_a = -a + b * a.conj() - i * lambda_kerr * a.conj() * a * a + drive;
    let res_b = -b - a * a;
    res_a.norm().max(res_b.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn critical_photon_number_matches_reported_values() {
        assert_relative_eq!(
            critical_photon_number(0.15, 0.562).unwrap(),
            5.02,
            max_relative = 1e-2
        );
        assert!(critical_photon_number(0.15, 0.578).unwrap().is_infinite());
        assert_relative_eq!(
            critical_photon_number(1e-6, 0.566).unwrap(),
            5.07,
            max_relative = 1e-2
        );
        // Both limits together: r -> 0, no Kerr.
        assert_relative_eq!(critical_photon_number(1e-300, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn critical_photon_number_rejects_bad_domain() {
        assert!(critical_photon_number(0.0, 0.5).is_err());
        assert!(critical_photon_number(-1.0, 0.5).is_err());
        assert!(critical_photon_number(0.15, -0.1).is_err());
    }

    #[test]
    fn drive_examples() {
        assert_eq!(drive_for_photon_number(0.0, 0.3).unwrap(), 0.0);
        assert_relative_eq!(drive_for_photon_number(1.0, 0.0).unwrap(), 2.0);
        let d = drive_for_photon_number(5.0, 0.566).unwrap();
        assert_relative_eq!(d, 14.83, max_relative = 1e-3);
        assert!(drive_for_photon_number(-0.5, 0.0).is_err());

        // The produced fixed point satisfies the deterministic equations.
        let fp = FixedPoint::for_photon_number(5.0, 0.15, 0.566).unwrap();
        let residual = steady_state_residual(&fp, 0.566, Complex64::new(d, 0.0));
        assert!(residual < 1e-12, "residual {residual}");
    }

    #[test]
    fn steady_states_trivial_and_inverse() {
        let p = CavityParams::new(0.15, 0.0, Complex64::new(0.0, 0.0)).unwrap();
        let fps = steady_states(&p);
        assert_eq!(fps.len(), 1);
        assert_eq!(fps[0].n, 0.0);
        assert_eq!(fps[0].stability, Stability::Stable);

        let p = CavityParams::new(0.15, 0.0, Complex64::new(2.0, 0.0)).unwrap();
        let fps = steady_states(&p);
        assert_eq!(fps.len(), 1);
        assert_relative_eq!(fps[0].n, 1.0, max_relative = 1e-12);
        assert_eq!(fps[0].beta_f, -fps[0].alpha_f * fps[0].alpha_f);
        assert!(steady_state_residual(&fps[0], 0.0, p.drive) < 1e-10);
    }

    #[test]
    fn steady_state_relation_is_strictly_increasing() {
        for lam in [0.0, 0.3, 0.75, 1.0] {
            for i in 0..2000 {
                let n = i as f64 * 0.05;
                let df = (1.0 + n) * (1.0 + n) + 2.0 * n * (1.0 + n) + 3.0 * lam * lam * n * n;
                assert!(df > 0.0);
            }
        }
    }

    #[test]
    fn jacobian_empty_cavity_is_diagonal() {
        let fp = FixedPoint::for_photon_number(0.0, 0.3, 0.5).unwrap();
        let a = jacobian(&fp, 0.3, 0.5);
        let expected = Matrix4::from_diagonal(&nalgebra::Vector4::new(
            Complex64::new(-1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(-0.3, 0.0),
            Complex64::new(-0.3, 0.0),
        ));
        assert_eq!(a, expected);
    }

    #[test]
    fn jacobian_block_decouples_without_kerr() {
        // For lambda = 0 and real alpha_f the sum/difference combinations
        // (da +- da+, db +- db+) evolve independently, with 2x2 traces
        // -(1+n)-r and (n-1)-r.
        let (n, r) = (2.3, 0.4);
        let fp = FixedPoint::for_photon_number(n, r, 0.0).unwrap();
        assert!(fp.alpha_f.im.abs() < 1e-14);
        let a = jacobian(&fp, r, 0.0);
        // Transform T maps (da, da+, db, db+) to the +/- combinations.
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let t = Matrix4::new(
            s, s, zero, zero, //
            s, -s, zero, zero, //
            zero, zero, s, s, //
            zero, zero, s, -s,
        );
        let m = t * a * t; // T is its own inverse
        // Plus sector: rows/cols {0, 2}; minus sector: {1, 3}.
        for (i, j) in [(0, 1), (0, 3), (2, 1), (2, 3), (1, 0), (1, 2), (3, 0), (3, 2)] {
            assert!(m[(i, j)].norm() < 1e-12, "coupling at ({i},{j}): {}", m[(i, j)]);
        }
        let trace_plus = (m[(0, 0)] + m[(2, 2)]).re;
        let trace_minus = (m[(1, 1)] + m[(3, 3)]).re;
        assert_relative_eq!(trace_plus, -(1.0 + n) - r, max_relative = 1e-12);
        assert_relative_eq!(trace_minus, n - 1.0 - r, max_relative = 1e-12);
    }

    #[test]
    fn closed_form_eigenvalues_collapse_at_empty_cavity() {
        let e = eigenvalues_closed_form(0.0, 0.3, 0.9);
        let mut res: Vec<f64> = e.k.iter().map(|k| k.re).collect();
        res.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_relative_eq!(res[0], -1.0);
        assert_relative_eq!(res[1], -1.0);
        assert_relative_eq!(res[2], -0.3);
        assert_relative_eq!(res[3], -0.3);
        for k in e.k {
            assert_eq!(k.im, 0.0);
        }
    }

    #[test]
    fn hopf_pair_is_purely_imaginary_at_threshold() {
        let r = 0.15;
        let e = eigenvalues_closed_form(r + 1.0, r, 0.0);
        assert!(e.k[0].re.abs() < 1e-10);
        assert!(e.k[1].re.abs() < 1e-10);
        assert!(e.k[0].im.abs() > 1e-3);
        assert_relative_eq!(e.k[0].im, -e.k[1].im, max_relative = 1e-10);
    }

    #[test]
    fn strong_kerr_is_always_stable() {
        for n in [0.1, 1.0, 10.0, 1e3] {
            let e = eigenvalues_closed_form(n, 0.15, 0.75);
            assert!(e.max_re() < 0.0, "n = {n}: max Re = {}", e.max_re());
        }
    }

    #[test]
    fn stability_classification_examples() {
        let nc = critical_photon_number(0.15, 0.562).unwrap();
        let below = FixedPoint::for_photon_number(0.5 * nc, 0.15, 0.562).unwrap();
        assert_eq!(below.stability, Stability::Stable);

        let above = FixedPoint::for_photon_number(2.0 * 1.15, 0.15, 0.0).unwrap();
        assert_eq!(above.stability, Stability::Unstable);

        for n in [0.5, 5.0, 50.0] {
            let fp = FixedPoint::for_photon_number(n, 0.15, 0.578).unwrap();
            assert_eq!(fp.stability, Stability::Stable);
        }
    }

    #[test]
    fn efficiency_examples_and_identity() {
        let (ea, eb) = efficiencies(1.0, 0.0).unwrap();
        assert_relative_eq!(ea, 0.0);
        assert_relative_eq!(eb, 1.0);

        let (ea, eb) = efficiencies(10.0, 0.75).unwrap();
        assert_relative_eq!(ea, 0.774, max_relative = 1e-3);
        assert_relative_eq!(eb, 0.226, max_relative = 1e-2);

        for i in 0..200 {
            let n = i as f64 * 0.37;
            for lam in [0.0, 0.33, 0.75, 1.4] {
                let (ea, eb) = efficiencies(n, lam).unwrap();
                assert!((ea + eb - 1.0).abs() < 1e-12);
            }
        }
        assert!(efficiencies(-1.0, 0.0).is_err());
    }

    #[test]
    fn hopf_locus_matches_critical_photon_number() {
        // Bisection on the sign of the leading real part.
        for (r, lam) in [(0.15, 0.0), (0.15, 0.3), (1.0, 0.5), (10.0, 0.45)] {
            let nc = critical_photon_number(r, lam).unwrap();
            let (mut lo, mut hi) = (0.5 * nc, 1.5 * nc);
            assert!(eigenvalues_closed_form(lo, r, lam).max_re() < 0.0);
            assert!(eigenvalues_closed_form(hi, r, lam).max_re() > 0.0);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if eigenvalues_closed_form(mid, r, lam).max_re() < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            assert!((0.5 * (lo + hi) - nc).abs() < 1e-6, "r={r} lam={lam}");
        }
    }
}
