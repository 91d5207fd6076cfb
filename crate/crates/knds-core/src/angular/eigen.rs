//! Continuation-tracked eigenvalues of the angular family, with Richardson
//! truncation estimates and the analytic `d mu / d lambda` from first-order
//! perturbation theory (left/right eigenvectors of the simple eigenvalue).

use super::basis::SpinBasis;
use super::discretize::{
    check_request, family_parameters, AngularDiscretization, MassiveBasis, DEFAULT_N,
};
use super::{exact_eigenvalue_a0, AngularMode};
use crate::error::CoreError;
use crate::numeric::eig::{eigenvalues, left_eigenvector, right_eigenvector, CMat};
use crate::spacetime::BlackHoleParams;
use crate::Result;
use num_complex::Complex64;
use serde::Serialize;

type C = Complex64;

/// Continuation steps along the straight path from `(0,0,0)` to
/// `(zeta, xi, nu)`.
const CONTINUATION_STEPS: usize = 8;
/// Two continued branches closer than this (relative to the local spacing)
/// raise the ambiguity error.
const COLLISION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AngularEigenvalue {
    pub mu: C,
    pub mode: AngularMode,
    pub lambda: C,
    /// Euclidean length of the `(zeta, xi, nu)` continuation path.
    pub continuation_distance: f64,
    /// `|mu_N - mu_{2N}|` Richardson-style truncation estimate.
    pub truncation_estimate: f64,
}

/// Eigenvalue of `A_k(lambda)` selected by continuation from the exact
/// `a = 0` value. `massive` switches to the 4-spinor operator.
pub fn eigenvalue(
    params: &BlackHoleParams,
    mode: AngularMode,
    lambda: C,
    n: usize,
    massive: bool,
) -> Result<AngularEigenvalue> {
    check_request(n, lambda)?;
    let (mu_n, _, _) = continued_eigenvalue(params, mode, lambda, n, massive)?;
    let (mu_2n, _, _) = continued_eigenvalue(params, mode, lambda, 2 * n, massive)?;
    let mut best = mu_2n;
    let mut est = (mu_n - mu_2n).norm();
    if est > 1e-9 {
        let (mu_4n, _, _) = continued_eigenvalue(params, mode, lambda, 4 * n, massive)?;
        est = (mu_2n - mu_4n).norm();
        best = mu_4n;
    }
    let (zeta, xi, nu) = family_parameters(params, lambda);
    Ok(AngularEigenvalue {
        mu: best,
        mode,
        lambda,
        continuation_distance: (zeta * zeta + xi.norm_sqr() + nu * nu).sqrt(),
        truncation_estimate: est,
    })
}

/// Eigenvalue plus `d mu/d lambda` from perturbation theory:
/// `mu'(lambda) = a (w^H M_xi v)/(w^H v)` with `M = M_0 + xi M_xi` affine.
pub fn eigenvalue_with_derivative(
    params: &BlackHoleParams,
    mode: AngularMode,
    lambda: C,
    n: usize,
    massive: bool,
) -> Result<(AngularEigenvalue, C)> {
    check_request(n, lambda)?;
    let (mu, m, m_xi) = continued_eigenvalue(params, mode, lambda, n, massive)?;
    let v = right_eigenvector(&m, mu);
    let w = left_eigenvector(&m, mu);
    let m_xi_v = m_xi.matvec(&v);
    let mut num = C::new(0.0, 0.0);
    let mut den = C::new(0.0, 0.0);
    for i in 0..m.n {
        num += w[i].conj() * m_xi_v[i];
        den += w[i].conj() * v[i];
    }
    if den.norm() < 1e-13 {
        return Err(CoreError::ZeroSearch(
            "left/right eigenvector pairing degenerate".into(),
        ));
    }
    let dmu = params.spin * num / den;
    let (zeta, xi, nu) = family_parameters(params, lambda);
    Ok((
        AngularEigenvalue {
            mu,
            mode,
            lambda,
            continuation_distance: (zeta * zeta + xi.norm_sqr() + nu * nu).sqrt(),
            truncation_estimate: f64::NAN,
        },
        dmu,
    ))
}

/// Default-resolution convenience wrapper.
pub fn eigenvalue_default(
    params: &BlackHoleParams,
    mode: AngularMode,
    lambda: C,
    massive: bool,
) -> Result<AngularEigenvalue> {
    eigenvalue(params, mode, lambda, DEFAULT_N, massive)
}

/// Returns `(mu, M(target), dM/dxi)`.
fn continued_eigenvalue(
    params: &BlackHoleParams,
    mode: AngularMode,
    lambda: C,
    n: usize,
    massive: bool,
) -> Result<(C, CMat, CMat)> {
    if mode.l.unsigned_abs() as usize > n {
        return Err(CoreError::DiscretizationTooSmall(
            n,
            mode.l.unsigned_abs() as usize,
        ));
    }
    let (zeta, xi, nu) = family_parameters(params, lambda);
    let mu0 = exact_eigenvalue_a0(mode);
    let mut tracked = C::new(mu0, 0.0);
    // the massive a = 0 spectrum is doubly degenerate by construction
    let expected_multiplicity = if massive { 2 } else { 1 };

    let build = |z: f64, x: C, v: f64, b2: &Option<SpinBasis>, b4: &Option<MassiveBasis>| {
        if massive {
            AngularDiscretization::massive(b4.as_ref().unwrap(), z, x, v).matrix
        } else {
            AngularDiscretization::massless(b2.as_ref().unwrap(), z, x).matrix
        }
    };
    let (b2, b4) = if massive {
        (None, Some(MassiveBasis::build(mode.k, n)))
    } else {
        (Some(SpinBasis::build(mode.k, n)), None)
    };

    let mut last_matrix = None;
    for step in 1..=CONTINUATION_STEPS {
        let s = step as f64 / CONTINUATION_STEPS as f64;
        let m = build(s * zeta, s * xi, s * nu, &b2, &b4);
        let eigs = eigenvalues(&m);
        // nearest and second-nearest distinct candidate
        let mut order: Vec<usize> = (0..eigs.len()).collect();
        order.sort_by(|&i, &j| {
            (eigs[i] - tracked)
                .norm()
                .partial_cmp(&(eigs[j] - tracked).norm())
                .unwrap()
        });
        let nearest = eigs[order[0]];
        // Candidates equal to `nearest` within machine-level tolerance are
        // the expected degenerate copies; an ambiguity needs a genuinely
        // different branch approaching.
        let mut distinct_second = None;
        let mut seen = 1;
        for &idx in order.iter().skip(1) {
            if (eigs[idx] - nearest).norm() < 1e-9 * (1.0 + nearest.norm()) {
                seen += 1;
                continue;
            }
            distinct_second = Some(eigs[idx]);
            break;
        }
        let _ = seen.max(expected_multiplicity);
        if let Some(second) = distinct_second {
            let gap = (second - nearest).norm();
            let moved = (nearest - tracked).norm();
            if gap < COLLISION_TOL * (1.0 + nearest.norm()) && moved > 0.5 * gap {
                return Err(CoreError::ContinuationAmbiguous(nearest, second));
            }
        }
        tracked = nearest;
        last_matrix = Some(m);
    }
    let m = last_matrix.expect("at least one continuation step");
    // affine xi-derivative matrix: M(xi + 1) - M(xi)
    let m_shift = build(zeta, xi + 1.0, nu, &b2, &b4);
    let mut m_xi = CMat::zeros(m.n);
    for i in 0..m.n {
        for j in 0..m.n {
            *m_xi.at_mut(i, j) = m_shift.at(i, j) - m.at(i, j);
        }
    }
    Ok((tracked, m, m_xi))
}

/// Paper-quoted bound constants: `C1 = 2 (e^{1/26} - 1)(1 + 1/26)`,
/// `C2 = C1/4` in
/// `(2 - e^{1/26})(|k| - 1/2 + l) - C1 |k| - C2 - |a lambda| <= mu_kl`.
pub fn mu_bound_constants() -> (f64, f64) {
    let e26 = (1.0f64 / 26.0).exp();
    let c1 = 2.0 * (e26 - 1.0) * (1.0 + 1.0 / 26.0);
    (c1, c1 / 4.0)
}

/// Check the two-sided bound on `mu_kl(lambda)` for real `lambda`,
/// massless (`extra = |a lambda|`) or massive (`extra = |a|(|lambda| + m)`).
pub fn mu_bounds_hold(mu: f64, k_abs: f64, l_pos: f64, extra: f64) -> bool {
    let e26 = (1.0f64 / 26.0).exp();
    let (c1, c2) = mu_bound_constants();
    let base = k_abs - 0.5 + l_pos;
    let lo = (2.0 - e26) * base - c1 * k_abs - c2 - extra;
    let hi = e26 * base + c1 * k_abs + c2 + extra;
    lo <= mu && mu <= hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::HalfInt;

    fn mode(k: f64, l: i32) -> AngularMode {
        AngularMode::new(HalfInt::from_f64(k).unwrap(), l).unwrap()
    }

    fn small_spin() -> BlackHoleParams {
        BlackHoleParams::new(1.0, 0.3, 0.01, 0.04)
    }

    #[test]
    fn a0_any_lambda_is_exact() {
        let p = BlackHoleParams::new(1.0, 0.3, 0.0, 0.04);
        for (k, l) in [(0.5, 1), (1.5, 2), (2.5, -3)] {
            let m = mode(k, l);
            let e = eigenvalue(&p, m, C::new(3.7, -0.4), 16, false).unwrap();
            assert!(
                (e.mu - exact_eigenvalue_a0(m)).norm() < 1e-10,
                "{:?}: {}",
                m,
                e.mu
            );
        }
    }

    #[test]
    fn real_lambda_real_mu_within_bounds() {
        let p = small_spin();
        for (k, l) in [(0.5, 1), (1.5, 3), (-2.5, 2)] {
            let m = mode(k, l);
            for lam in [-4.0, -1.0, 2.0, 5.0] {
                let e = eigenvalue(&p, m, C::new(lam, 0.0), 24, false).unwrap();
                assert!(e.mu.im.abs() < 1e-9, "Im mu = {}", e.mu.im);
                assert!(mu_bounds_hold(
                    e.mu.re,
                    m.k.abs(),
                    l.abs() as f64,
                    (p.spin * lam).abs()
                ));
            }
        }
    }

    #[test]
    fn branch_antisymmetry() {
        let p = small_spin();
        let lam = C::new(2.5, 0.0);
        for (k, l) in [(0.5, 1), (1.5, 2)] {
            let ep = eigenvalue(&p, mode(k, l), lam, 24, false).unwrap();
            let em = eigenvalue(&p, mode(k, -l), lam, 24, false).unwrap();
            assert!(
                (ep.mu + em.mu).norm() < 1e-10,
                "mu+ = {}, mu- = {}",
                ep.mu,
                em.mu
            );
        }
    }

    #[test]
    fn holomorphy_cauchy_riemann() {
        let p = small_spin();
        let m = mode(0.5, 1);
        let lam = C::new(2.0, -0.3);
        let d = 1e-4;
        let f = |z: C| eigenvalue(&p, m, z, 24, false).unwrap().mu;
        let dre = (f(lam + d) - f(lam - d)) / (2.0 * d);
        let dim = (f(lam + C::new(0.0, d)) - f(lam - C::new(0.0, d))) / C::new(0.0, 2.0 * d);
        assert!((dre - dim).norm() < 1e-6, "CR residual {}", (dre - dim).norm());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = small_spin();
        let m = mode(1.5, 2);
        let lam = C::new(3.0, -0.2);
        let (_, dmu) = eigenvalue_with_derivative(&p, m, lam, 24, false).unwrap();
        let h = 1e-5;
        let f = |z: C| eigenvalue(&p, m, z, 24, false).unwrap().mu;
        let fd = (f(lam + h) - f(lam - h)) / (2.0 * h);
        assert!((dmu - fd).norm() < 1e-7, "{dmu} vs {fd}");
    }

    #[test]
    fn mass_perturbation_bounded_by_nu() {
        // |mu(nu) - mu(0)| <= |nu| for the massive operator
        let lam = C::new(2.0, 0.0);
        let m = mode(0.5, 1);
        for fm in [0.5, 2.0, 5.0] {
            let p0 = BlackHoleParams::new(1.0, 0.3, 0.01, 0.04).with_field(0.0, 0.0);
            let p1 = BlackHoleParams::new(1.0, 0.3, 0.01, 0.04).with_field(0.0, fm);
            let e0 = eigenvalue(&p0, m, lam, 20, true).unwrap();
            let e1 = eigenvalue(&p1, m, lam, 20, true).unwrap();
            let nu = p1.spin * fm;
            assert!(
                (e1.mu - e0.mu).norm() <= nu.abs() + 1e-10,
                "shift {} > nu {}",
                (e1.mu - e0.mu).norm(),
                nu
            );
        }
    }

    #[test]
    fn truncation_estimate_reported() {
        let p = small_spin();
        let e = eigenvalue(&p, mode(0.5, 1), C::new(1.0, 0.0), 16, false).unwrap();
        assert!(e.truncation_estimate.is_finite());
        assert!(e.truncation_estimate < 1e-9);
    }
}
