//! Galerkin matrices of `A_k(zeta, xi)` (massless, `2N`) and
//! `A_k(zeta, xi, nu)` (massive, `4N`) in the `a = 0` eigenbasis.
//!
//! Massless: `A_k = A(zeta) D_k + B(zeta, xi)` with
//! `A = sqrt(1 + zeta cos^2 t)`,
//! `B = i sigma_1 zeta sin(2t)/(4A) - sigma_2 (zeta k - xi) sin(t)/A`.
//!
//! Massive (Gamma representation of the 4-spinor reduction):
//! `B4 = i Gamma^2 zeta sin(2t)/(4A) + Gamma^3 (zeta k - xi) sin(t)/A
//!       - nu cos(t) Gamma^5`.

use super::{basis::SpinBasis, HalfInt};
use crate::error::CoreError;
use crate::numeric::eig::CMat;
use crate::spacetime::BlackHoleParams;
use crate::Result;
use num_complex::Complex64;

type C = Complex64;

/// Minimum accepted truncation.
pub const MIN_N: usize = 16;
/// Default truncation.
pub const DEFAULT_N: usize = 64;
/// Strip half-width for complex `lambda` (`|Im lambda| <= NU0`).
pub const NU0: f64 = 2.0;

/// Dense matrix representation plus the parameters it was built at.
#[derive(Debug, Clone)]
pub struct AngularDiscretization {
    pub k: HalfInt,
    pub n_pos: usize,
    pub zeta: f64,
    pub xi: C,
    pub nu: f64,
    pub massive: bool,
    pub matrix: CMat,
}

impl AngularDiscretization {
    /// Matrix of the massless family at `(zeta, xi)`; size `2N`.
    pub fn massless(basis: &SpinBasis, zeta: f64, xi: C) -> Self {
        let dim = basis.dim();
        let nodes = &basis.nodes;
        let nq = nodes.len();
        // scalar profiles
        let mut a_fn = vec![0.0; nq];
        let mut g1 = vec![0.0; nq];
        let mut g2s = vec![0.0; nq];
        for (q, &t) in nodes.iter().enumerate() {
            let aa = (1.0 + zeta * t.cos().powi(2)).sqrt();
            a_fn[q] = aa;
            g1[q] = zeta * (2.0 * t).sin() / (4.0 * aa);
            g2s[q] = t.sin() / aa;
        }
        let kv = basis.k.value();
        let coef2 = C::new(zeta * kv, 0.0) - xi; // (zeta k - xi)
        let mut m = CMat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut adk = C::new(0.0, 0.0);
                let mut b = C::new(0.0, 0.0);
                for q in 0..nq {
                    let w = basis.weights[q];
                    let c11 = basis.u1[i][q].conj() * basis.u1[j][q];
                    let c22 = basis.u2[i][q].conj() * basis.u2[j][q];
                    let c12 = basis.u1[i][q].conj() * basis.u2[j][q];
                    let c21 = basis.u2[i][q].conj() * basis.u1[j][q];
                    adk += w * a_fn[q] * (c11 + c22);
                    // i sigma_1 g1: sigma_1 (u1,u2) = (u2,u1)
                    b += C::new(0.0, g1[q] * w) * (c12 + c21);
                    // -sigma_2 g2: sigma_2 (u1,u2) = (-i u2, i u1)
                    b += coef2 * w * g2s[q] * (C::new(0.0, 1.0) * c12 - C::new(0.0, 1.0) * c21);
                }
                *m.at_mut(i, j) = basis.mu0[j] * adk + b;
            }
        }
        Self {
            k: basis.k,
            n_pos: basis.n_pos,
            zeta,
            xi,
            nu: 0.0,
            massive: false,
            matrix: m,
        }
    }

    /// Matrix of the massive 4-spinor family at `(zeta, xi, nu)`; size `4N`.
    ///
    /// Basis per positive 2-spinor pair `(u1, u2)` with eigenvalue `mu0`:
    /// `+mu0`: `(u2, 0, 0, u1)` and `(0, u1, -u2, 0)`;
    /// `-mu0`: `(-u2, 0, 0, u1)` and `(0, u1, u2, 0)`;
    /// for `k < 0` the four components are reversed.
    pub fn massive(basis4: &MassiveBasis, zeta: f64, xi: C, nu: f64) -> Self {
        let dim = basis4.psi.len();
        let nodes = &basis4.nodes;
        let nq = nodes.len();
        let mut a_fn = vec![0.0; nq];
        let mut g1 = vec![0.0; nq];
        let mut g2s = vec![0.0; nq];
        let mut g5 = vec![0.0; nq];
        for (q, &t) in nodes.iter().enumerate() {
            let aa = (1.0 + zeta * t.cos().powi(2)).sqrt();
            a_fn[q] = aa;
            g1[q] = zeta * (2.0 * t).sin() / (4.0 * aa);
            g2s[q] = t.sin() / aa;
            g5[q] = t.cos();
        }
        let kv = basis4.k.value();
        let coef3 = C::new(zeta * kv, 0.0) - xi;
        let mut m = CMat::zeros(dim);
        let i_unit = C::new(0.0, 1.0);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = C::new(0.0, 0.0);
                for q in 0..nq {
                    let w = basis4.weights[q];
                    let pi_ = &basis4.psi[i];
                    let pj = &basis4.psi[j];
                    let dot =
                        |x: &[Vec<C>; 4], y: [C; 4]| -> C {
                            x[0][q].conj() * y[0]
                                + x[1][q].conj() * y[1]
                                + x[2][q].conj() * y[2]
                                + x[3][q].conj() * y[3]
                        };
                    let pj_at = [pj[0][q], pj[1][q], pj[2][q], pj[3][q]];
                    // A(zeta) D4 part: D4 psi_j = mu0_j psi_j
                    acc += w * a_fn[q] * basis4.mu0[j] * dot(pi_, pj_at);
                    // i Gamma^2 g1: Gamma^2 psi = (p4, -p3, -p2, p1)
                    let gam2 = [pj_at[3], -pj_at[2], -pj_at[1], pj_at[0]];
                    acc += i_unit * g1[q] * w * dot(pi_, gam2);
                    // Gamma^3 coef3 g2: Gamma^3 psi = (-i p4, -i p3, i p2, i p1)
                    let gam3 = [
                        -i_unit * pj_at[3],
                        -i_unit * pj_at[2],
                        i_unit * pj_at[1],
                        i_unit * pj_at[0],
                    ];
                    acc += coef3 * g2s[q] * w * dot(pi_, gam3);
                    // -nu cos t Gamma^5: Gamma^5 psi = (p3, p4, p1, p2)
                    let gam5 = [pj_at[2], pj_at[3], pj_at[0], pj_at[1]];
                    acc -= nu * g5[q] * w * dot(pi_, gam5);
                }
                *m.at_mut(i, j) = acc;
            }
        }
        Self {
            k: basis4.k,
            n_pos: basis4.n_pos,
            zeta,
            xi,
            nu,
            massive: true,
            matrix: m,
        }
    }
}

/// 4-spinor basis built from the 2-spinor one.
#[derive(Debug, Clone)]
pub struct MassiveBasis {
    pub k: HalfInt,
    pub n_pos: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub psi: Vec<[Vec<C>; 4]>,
    pub mu0: Vec<f64>,
    /// signed label and spin-copy tag (0/1) per basis vector
    pub labels: Vec<(i32, u8)>,
}

impl MassiveBasis {
    pub fn build(k: HalfInt, n_pos: usize) -> Self {
        // 2-spinor pieces are built for |k|; component reversal handles k<0.
        let b2 = SpinBasis::build(HalfInt::from_f64(k.abs()).unwrap_or(k), n_pos);
        let nq = b2.nodes.len();
        let mut psi = Vec::with_capacity(4 * n_pos);
        let mut mu0 = Vec::with_capacity(4 * n_pos);
        let mut labels = Vec::with_capacity(4 * n_pos);
        let zero = vec![C::new(0.0, 0.0); nq];
        for l in 1..=n_pos as i32 {
            let idx = b2.index_of(l).unwrap();
            let (u1, u2) = (&b2.u1[idx], &b2.u2[idx]);
            let mu = b2.mu0[idx];
            let neg_u2: Vec<C> = u2.iter().map(|z| -z).collect();
            // +mu copies
            let v_a_plus = [u2.clone(), zero.clone(), zero.clone(), u1.clone()];
            let v_b_plus = [zero.clone(), u1.clone(), neg_u2.clone(), zero.clone()];
            // -mu copies
            let v_a_minus = [neg_u2.clone(), zero.clone(), zero.clone(), u1.clone()];
            let v_b_minus = [zero.clone(), u1.clone(), u2.clone(), zero.clone()];
            for (v, m, lab) in [
                (v_a_plus, mu, (l, 0u8)),
                (v_b_plus, mu, (l, 1u8)),
                (v_a_minus, -mu, (-l, 0u8)),
                (v_b_minus, -mu, (-l, 1u8)),
            ] {
                let mut v = v;
                if k.value() < 0.0 {
                    v.reverse();
                }
                // normalize (u1,u2 each unit-pair => norm^2 = 1 already since
                // |u1|^2+|u2|^2 integrates to 1)
                psi.push(v);
                mu0.push(m);
                labels.push(lab);
            }
        }
        Self {
            k,
            n_pos,
            nodes: b2.nodes,
            weights: b2.weights,
            psi,
            mu0,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.psi.len()
    }
}

/// Parameter bundle `(zeta, xi, nu)` for a physical setup at frequency
/// `lambda`.
pub fn family_parameters(params: &BlackHoleParams, lambda: C) -> (f64, C, f64) {
    (
        params.spin * params.spin * params.lambda / 3.0,
        params.spin * lambda,
        params.spin * params.field_mass,
    )
}

/// Guard for the strip `|Im lambda| <= NU0` and minimum size.
pub fn check_request(n: usize, lambda: C) -> Result<()> {
    if n < MIN_N {
        return Err(CoreError::DiscretizationTooSmall(n, MIN_N));
    }
    if lambda.im.abs() > NU0 {
        return Err(CoreError::Domain(format!(
            "Im lambda = {} outside strip |Im| <= {NU0}",
            lambda.im
        )));
    }
    Ok(())
}
