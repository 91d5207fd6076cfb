//! Exact eigenspinors of the `a = 0` angular Dirac operator
//! `D_k = sigma_1 D_theta - sigma_2 k/sin(theta)` on `(0, pi)`.
//!
//! For `k > 0` and `l = n + 1 >= 1` the eigenpair with
//! `mu0 = k - 1/2 + l` is
//!
//! `u1 = N (sin t/2)^{k+1} (cos t/2)^{k} P_n^{(k+1/2, k-1/2)}(cos t)`,
//! `u2 = (-i/mu0) (u1' + (k/sin t) u1)`,
//!
//! with `u2` purely imaginary for real `u1`. Negative `l` applies
//! `sigma_3`, negative `k` applies `sigma_1`. The half-angle power factors
//! carry the exact endpoint behaviour, so products of two basis spinors are
//! trigonometric polynomials and the Galerkin quadrature is spectrally
//! exact.

use super::HalfInt;
use crate::numeric::jacobi::{jacobi, jacobi_deriv};
use crate::numeric::quadrature::gauss_legendre_on;
use num_complex::Complex64;

/// Basis data sampled on a Gauss-Legendre grid of `(0, pi)`.
#[derive(Debug, Clone)]
pub struct SpinBasis {
    pub k: HalfInt,
    /// Number of positive-l labels; total massless dimension is `2n_pos`.
    pub n_pos: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `u1[l_idx][q]`, `u2[l_idx][q]` for the signed label list `labels`.
    pub u1: Vec<Vec<Complex64>>,
    pub u2: Vec<Vec<Complex64>>,
    /// `mu0` per signed label.
    pub mu0: Vec<f64>,
    /// Signed l labels in storage order: `+1, -1, +2, -2, ...`
    pub labels: Vec<i32>,
}

impl SpinBasis {
    /// Build the basis for `|l| <= n_pos`. Quadrature size is chosen to
    /// resolve products of the two highest basis elements times analytic
    /// weights.
    pub fn build(k: HalfInt, n_pos: usize) -> Self {
        let ka = k.abs();
        let quad = 2 * n_pos + (2.0 * ka) as usize + 48;
        let (nodes, weights) = gauss_legendre_on(quad, 0.0, std::f64::consts::PI);
        let mut u1 = Vec::with_capacity(2 * n_pos);
        let mut u2 = Vec::with_capacity(2 * n_pos);
        let mut mu0 = Vec::with_capacity(2 * n_pos);
        let mut labels = Vec::with_capacity(2 * n_pos);
        for l in 1..=n_pos {
            let n = l - 1;
            let mu = ka - 0.5 + l as f64;
            let (mut v1, mut v2) = eig_pair(ka, n, mu, &nodes);
            // normalize in L^2((0,pi), dtheta; C^2)
            let norm2: f64 = nodes
                .iter()
                .enumerate()
                .map(|(q, _)| weights[q] * (v1[q].norm_sqr() + v2[q].norm_sqr()))
                .sum();
            let s = norm2.sqrt();
            for q in 0..nodes.len() {
                v1[q] /= s;
                v2[q] /= s;
            }
            // positive l
            let (mut w1p, mut w2p) = (v1.clone(), v2.clone());
            // negative l: sigma_3 flip, mu -> -mu
            let (mut w1m, mut w2m) = (v1, v2.iter().map(|z| -z).collect::<Vec<_>>());
            if k.value() < 0.0 {
                // D_{-k} = sigma_1 D_k sigma_1: swap components
                std::mem::swap(&mut w1p, &mut w2p);
                std::mem::swap(&mut w1m, &mut w2m);
            }
            u1.push(w1p);
            u2.push(w2p);
            mu0.push(mu);
            labels.push(l as i32);
            u1.push(w1m);
            u2.push(w2m);
            mu0.push(-mu);
            labels.push(-(l as i32));
        }
        Self {
            k,
            n_pos,
            nodes,
            weights,
            u1,
            u2,
            mu0,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.u1.len()
    }

    /// Storage index of the signed label `l`.
    pub fn index_of(&self, l: i32) -> Option<usize> {
        self.labels.iter().position(|&x| x == l)
    }
}

/// Un-normalized eigenpair values at the nodes for `k > 0`.
fn eig_pair(ka: f64, n: usize, mu: f64, nodes: &[f64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let a = ka + 0.5;
    let b = ka - 0.5;
    let mut u1 = Vec::with_capacity(nodes.len());
    let mut u2 = Vec::with_capacity(nodes.len());
    for &t in nodes {
        let (s, c) = ((0.5 * t).sin(), (0.5 * t).cos());
        let x = t.cos();
        let p = jacobi(n, a, b, x);
        let dp = jacobi_deriv(n, a, b, x);
        let pref = s.powf(ka + 1.0) * c.powf(ka);
        let v1 = pref * p;
        // d/dt [ s^{ka+1} c^{ka} P(cos t) ]
        let dlog = 0.5 * (ka + 1.0) * (c / s) - 0.5 * ka * (s / c);
        let dv1 = pref * (dlog * p - t.sin() * dp);
        let lp = dv1 + ka / t.sin() * v1;
        u1.push(Complex64::new(v1, 0.0));
        u2.push(Complex64::new(0.0, -1.0) / mu * lp);
    }
    (u1, u2)
}
