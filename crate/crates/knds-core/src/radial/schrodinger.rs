//! The supersymmetric-style reduction identity connecting the radial Dirac
//! factors to diagonal Schroedinger operators:
//!
//! `D_{h,+} D_{h,-} = U^{-1} diag(P_h^-, P_h^+) U + i h c'(x) sigma_3`
//!
//! with `D_{h,+-} = -D_{h,0} +- (c - lambda) I`,
//! `D_{h,0} = -i h sigma_3 d/dx + q sigma_1`, `q = omega a(x)`,
//! `P_h^{+-} = -h^2 d^2/dx^2 + q^2 - (c - lambda)^2 +- h q'`, and
//! `U = (i/sqrt 2) [[1, i], [1, -i]]`.
//!
//! The check applies both sides to analytic test spinors (Gaussian bumps
//! times polynomials, differentiated in closed form) on a grid, so there is
//! no discretization error beyond arithmetic; it also exposes the scalar
//! barrier potentials `W_h^{+-}(x) = q^2 - (c-lambda)^2 +- h q'` used by the
//! semiclassical analysis.

use super::RadialProblem;
use crate::Result;
use num_complex::Complex64;

type C = Complex64;

/// Value, first and second derivative of a scalar test function.
#[derive(Clone, Copy)]
struct Jet2 {
    f: C,
    f1: C,
    f2: C,
    f3: C,
}

/// Gaussian-bump test function `exp(-(x-x0)^2/(2 s^2)) (p0 + p1 x + p2 x^2)`
/// with up to third derivatives in closed form (the product of two
/// first-order factors needs three x-derivatives of the test spinor).
fn bump(x: f64, x0: f64, s: f64, p: [f64; 3]) -> Jet2 {
    let u = (x - x0) / s;
    let g = (-0.5 * u * u).exp();
    let g1 = -u / s * g;
    let g2 = (u * u - 1.0) / (s * s) * g;
    let g3 = u * (3.0 - u * u) / (s * s * s) * g;
    let q = p[0] + p[1] * x + p[2] * x * x;
    let q1 = p[1] + 2.0 * p[2] * x;
    let q2 = 2.0 * p[2];
    Jet2 {
        f: C::new(g * q, 0.0),
        f1: C::new(g1 * q + g * q1, 0.0),
        f2: C::new(g2 * q + 2.0 * g1 * q1 + g * q2, 0.0),
        f3: C::new(g3 * q + 3.0 * g2 * q1 + 3.0 * g1 * q2, 0.0),
    }
}

/// Coefficient values and x-derivatives at radius r.
struct CoeffJet {
    q: f64,
    q1: f64,
    c: f64,
    c1: f64,
}

/// Max discrepancy of the reduction identity applied to `n_spinors` random
/// smooth test spinors sampled at `n_grid` points, at semiclassical scale
/// `h`. `omega` must be real here (the identity extends to complex `q` but
/// the test potentials are the physical ones).
pub fn schrodinger_reduction_check(
    prob: &RadialProblem,
    h: f64,
    n_grid: usize,
    n_spinors: usize,
) -> Result<f64> {
    assert!(!prob.massive, "reduction check is the massless route");
    let ctx = &prob.context;
    let x0 = ctx.x0;
    let lam = prob.lambda;
    let om = prob.omega;
    // deterministic pseudo-random test-function parameters
    let mut seed = 0x2545f4914f6cdd1du64;
    let mut rng = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let xs: Vec<f64> = (0..n_grid)
        .map(|i| -x0 + 2.0 * x0 * (i as f64 + 0.5) / n_grid as f64)
        .collect();
    // precompute coefficient jets along the grid
    let p = ctx.coeffs.params();
    let jets: Vec<CoeffJet> = xs
        .iter()
        .map(|&x| {
            let r = ctx.coeffs.map.r(x)?;
            Ok(CoeffJet {
                q: ctx.coeffs.a_of_r(r),
                q1: ctx.coeffs.da_dx_at_r(r),
                c: ctx.coeffs.c_of_r(r, prob.k),
                c1: ctx.coeffs.dc_dx_at_r(r, prob.k),
            })
        })
        .collect::<Result<_>>()?;
    let _ = p;

    let mut worst: f64 = 0.0;
    for _ in 0..n_spinors {
        let params: Vec<(f64, f64, [f64; 3])> = (0..2)
            .map(|_| {
                (
                    rng() * 0.5 * x0,
                    0.5 + 0.4 * (rng() + 1.0),
                    [rng(), rng(), 0.3 * rng()],
                )
            })
            .collect();
        for (i, &x) in xs.iter().enumerate() {
            let cj = &jets[i];
            let j1 = bump(x, params[0].0, params[0].1, params[0].2);
            let j2 = bump(x, params[1].0, params[1].1, params[1].2);
            let lhs = apply_product(prob, cj, h, lam, om, x, &j1, &j2);
            let rhs = apply_diag_form(cj, h, lam, om, &j1, &j2);
            let d = (lhs[0] - rhs[0]).norm().max((lhs[1] - rhs[1]).norm());
            let scale = lhs[0].norm().max(lhs[1].norm()).max(1.0);
            worst = worst.max(d / scale);
        }
    }
    Ok(worst)
}

/// Barrier potentials `W_h^{+-}(x)` at the problem parameters (real
/// omega represented by `s + i mu~` handled upstream).
pub fn barrier_potentials(prob: &RadialProblem, h: f64, x: f64) -> Result<(C, C)> {
    let ctx = &prob.context;
    let r = ctx.coeffs.map.r(x)?;
    let q = prob.omega * ctx.coeffs.a_of_r(r);
    let qp = prob.omega * ctx.coeffs.da_dx_at_r(r);
    let cl = C::new(ctx.coeffs.c_of_r(r, prob.k), 0.0) - prob.lambda;
    Ok((q * q - cl * cl + h * qp, q * q - cl * cl - h * qp))
}

// D_{h,+} D_{h,-} f where f = (j1, j2) as analytic jets:
// D_{h,0} f = (-i h f1' + q f2, i h f2' + q f1)
// D_{h,-} f = -D_{h,0} f - (c-lam) f;  D_{h,+} g = -D_{h,0} g + (c-lam) g.
// The outer application needs first derivatives of g, i.e. second/third
// derivatives of f together with q', c'.
fn apply_product(
    prob: &RadialProblem,
    cj: &CoeffJet,
    h: f64,
    lam: C,
    om: C,
    x: f64,
    j1: &Jet2,
    j2: &Jet2,
) -> [C; 2] {
    let ctx = &prob.context;
    let i = C::new(0.0, 1.0);
    let q = om * cj.q;
    let qp = om * cj.q1;
    let cl = C::new(cj.c, 0.0) - lam;
    let clp = C::new(cj.c1, 0.0);
    // g = D_{h,-} f = -D_{h,0} f - cl f, with value and derivative
    let g1 = i * h * j1.f1 - q * j2.f - cl * j1.f;
    let g2 = -i * h * j2.f1 - q * j1.f - cl * j2.f;
    let g1p = i * h * j1.f2 - qp * j2.f - q * j2.f1 - clp * j1.f - cl * j1.f1;
    let g2p = -i * h * j2.f2 - qp * j1.f - q * j1.f1 - clp * j2.f - cl * j2.f1;
    let _ = (ctx, x, j1.f3, j2.f3);
    // D_{h,+} g = -D_{h,0} g + cl g
    [
        i * h * g1p - q * g2 + cl * g1,
        -i * h * g2p - q * g1 + cl * g2,
    ]
}

// U^{-1} diag(P^-, P^+) U f + i h c' sigma_3 f with
// U = (i/sqrt2) [[1, i],[1,-i]], U^{-1} = (-i/sqrt2) [[1,1],[-i,i]].
fn apply_diag_form(cj: &CoeffJet, h: f64, lam: C, om: C, j1: &Jet2, j2: &Jet2) -> [C; 2] {
    let i = C::new(0.0, 1.0);
    let s = 1.0 / 2.0f64.sqrt();
    let q = om * cj.q;
    let qp = om * cj.q1;
    let cl = C::new(cj.c, 0.0) - lam;
    // (U f) components with their second derivatives
    let u1 = |a: &Jet2, b: &Jet2| (i * s * (a.f + i * b.f), i * s * (a.f2 + i * b.f2));
    let u2 = |a: &Jet2, b: &Jet2| (i * s * (a.f - i * b.f), i * s * (a.f2 - i * b.f2));
    let (uf1, uf1_2) = u1(j1, j2);
    let (uf2, uf2_2) = u2(j1, j2);
    // P^{-+} (note diag(P^-, P^+))
    let pm = |f: C, f2: C, sign: f64| -h * h * f2 + (q * q - cl * cl + sign * h * qp) * f;
    let p1 = pm(uf1, uf1_2, -1.0);
    let p2 = pm(uf2, uf2_2, 1.0);
    // U^{-1} (p1, p2)
    let r1 = -i * s * (p1 + p2);
    let r2 = -i * s * (-i * p1 + i * p2);
    // + i h c' sigma_3 f
    let clp = C::new(cj.c1, 0.0);
    [r1 + i * h * clp * j1.f, r2 - i * h * clp * j2.f]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::build_context;
    use crate::spacetime::BlackHoleParams;

    #[test]
    fn identity_holds_on_physical_coefficients() {
        let p = BlackHoleParams::new(1.0, 0.3, 0.0, 0.04);
        let prob = RadialProblem::massless(
            build_context(&p).unwrap(),
            C::new(1.5, 0.0),
            C::new(9.5, 0.0),
            0.5,
        );
        let res = schrodinger_reduction_check(&prob, 0.2, 512, 5).unwrap();
        assert!(res < 1e-9, "residual {res}");
    }

    #[test]
    fn constant_c_exact() {
        // with c' = 0 the commutator term vanishes; the identity is exact
        // algebra. Use a chargeless, non-rotating field (c == 0).
        let p = BlackHoleParams::new(1.0, 0.3, 0.0, 0.04).with_field(0.0, 0.0);
        let prob = RadialProblem::massless(
            build_context(&p).unwrap(),
            C::new(1.1, -0.2),
            C::new(4.0, 0.0),
            1.5,
        );
        let res = schrodinger_reduction_check(&prob, 0.15, 256, 5).unwrap();
        assert!(res < 1e-12, "residual {res}");
    }

    #[test]
    fn barrier_potentials_limit_to_omega_shift() {
        // W_h^{+-}(x) -> -(Omega_pm(k) - lambda)^2 as x -> +- infinity
        let p = BlackHoleParams::new(1.0, 0.3, 0.02, 0.04).with_field(0.3, 0.0);
        let ctx = build_context(&p).unwrap();
        let lam = C::new(1.2, 0.0);
        let prob = RadialProblem::massless(ctx.clone(), lam, C::new(3.0, 0.0), 1.5);
        let h = ctx.coeffs.horizons().clone();
        for side in [
            crate::spacetime::HorizonSide::Cosmological,
            crate::spacetime::HorizonSide::Event,
        ] {
            // depth with e^{2 kappa x} suppressed below 1e-8
            let x = side.sign() * (ctx.x0 + 10.0 / h.kappa(side).abs());
            let om_h = h.omega(side, 1.5);
            let target = -(C::new(om_h, 0.0) - lam) * (C::new(om_h, 0.0) - lam);
            let (wp, wm) = barrier_potentials(&prob, 0.1, x).unwrap();
            assert!((wp - target).norm() < 1e-6, "{side:?}: {wp} vs {target}");
            assert!((wm - target).norm() < 1e-6);
        }
    }
}
