//! Dense complex linear algebra: eigenvalues of a general complex matrix by
//! Hessenberg reduction + implicitly shifted QR, LU solves, and inverse
//! iteration for eigenvectors of (near) known eigenvalues.

use num_complex::Complex64;

type C = Complex64;

/// Row-major dense complex matrix.
#[derive(Debug, Clone)]
pub struct CMat {
    pub n: usize,
    pub data: Vec<C>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C::new(0.0, 0.0); n * n],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut C {
        &mut self.data[i * self.n + j]
    }

    pub fn matvec(&self, v: &[C]) -> Vec<C> {
        let n = self.n;
        let mut out = vec![C::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = C::new(0.0, 0.0);
            let row = &self.data[i * n..(i + 1) * n];
            for (a, b) in row.iter().zip(v) {
                s += a * b;
            }
            out[i] = s;
        }
        out
    }

    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n;
        let mut d: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                d = d.max((self.at(i, j) - self.at(j, i).conj()).norm());
            }
        }
        d
    }

    /// Max |a_ij|.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// All eigenvalues of a general complex matrix.
pub fn eigenvalues(m: &CMat) -> Vec<C> {
    let mut h = m.clone();
    hessenberg(&mut h);
    qr_eigenvalues(&mut h)
}

fn hessenberg(a: &mut CMat) {
    let n = a.n;
    for k in 0..n.saturating_sub(2) {
        // Householder on column k, rows k+1..n
        let mut norm = 0.0f64;
        for i in k + 1..n {
            norm = norm.hypot(a.at(i, k).norm());
        }
        if norm <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = a.at(k + 1, k);
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * norm
        } else {
            C::new(-norm, 0.0)
        };
        let mut v: Vec<C> = (k + 1..n).map(|i| a.at(i, k)).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        // A <- (I - 2 v v^H / |v|^2) A
        for j in k..n {
            let mut s = C::new(0.0, 0.0);
            for (idx, i) in (k + 1..n).enumerate() {
                s += v[idx].conj() * a.at(i, j);
            }
            s *= 2.0 / vnorm2;
            for (idx, i) in (k + 1..n).enumerate() {
                let d = v[idx] * s;
                *a.at_mut(i, j) -= d;
            }
        }
        // A <- A (I - 2 v v^H / |v|^2)
        for i in 0..n {
            let mut s = C::new(0.0, 0.0);
            for (idx, j) in (k + 1..n).enumerate() {
                s += a.at(i, j) * v[idx];
            }
            s *= 2.0 / vnorm2;
            for (idx, j) in (k + 1..n).enumerate() {
                let d = s * v[idx].conj();
                *a.at_mut(i, j) -= d;
            }
        }
        // clean the explicitly zeroed entries
        *a.at_mut(k + 1, k) = alpha;
        for i in k + 2..n {
            *a.at_mut(i, k) = C::new(0.0, 0.0);
        }
    }
}

fn qr_eigenvalues(h: &mut CMat) -> Vec<C> {
    let n = h.n;
    let mut eigs = vec![C::new(0.0, 0.0); n];
    if n == 0 {
        return eigs;
    }
    if n == 1 {
        eigs[0] = h.at(0, 0);
        return eigs;
    }
    let eps = f64::EPSILON;
    let mut hi = n - 1; // active block is rows/cols lo..=hi
    let mut iter_since_deflate = 0usize;
    let mut total_iter = 0usize;
    let max_total = 80 * n;
    loop {
        // find lo: smallest index such that subdiagonals lo..hi are non-negligible
        let mut lo = hi;
        while lo > 0 {
            let s = h.at(lo - 1, lo - 1).norm() + h.at(lo, lo).norm();
            let s = if s == 0.0 { 1.0 } else { s };
            if h.at(lo, lo - 1).norm() <= eps * s {
                *h.at_mut(lo, lo - 1) = C::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            // 1x1 block deflated
            eigs[hi] = h.at(hi, hi);
            if hi == 0 {
                break;
            }
            hi -= 1;
            iter_since_deflate = 0;
            continue;
        }
        total_iter += 1;
        iter_since_deflate += 1;
        if total_iter > max_total {
            // give up on remaining block; return diagonal (best effort)
            for i in 0..=hi {
                eigs[i] = h.at(i, i);
            }
            break;
        }
        // shift
        let shift = if iter_since_deflate % 12 == 0 {
            // exceptional shift to break limit cycles
            let m = h.at(hi, hi - 1).norm() + if hi >= 2 { h.at(hi - 1, hi - 2).norm() } else { 0.0 };
            h.at(hi, hi) + C::new(1.5 * m, 0.5 * m)
        } else {
            wilkinson_shift(
                h.at(hi - 1, hi - 1),
                h.at(hi - 1, hi),
                h.at(hi, hi - 1),
                h.at(hi, hi),
            )
        };
        // implicit single-shift QR sweep on lo..=hi via Givens chasing
        let mut x = h.at(lo, lo) - shift;
        let mut y = h.at(lo + 1, lo);
        for k in lo..hi {
            let (c, s) = givens(x, y);
            apply_givens_left(h, k, k + 1, c, s, lo.saturating_sub(1));
            apply_givens_right(h, k, k + 1, c, s, (k + 2).min(hi) + 1);
            if k + 1 < hi {
                x = h.at(k + 1, k);
                y = h.at(k + 2, k);
            }
        }
    }
    eigs
}

fn wilkinson_shift(a: C, b: C, c: C, d: C) -> C {
    // eigenvalue of [[a,b],[c,d]] closest to d
    let tr2 = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (tr2 * tr2 - det).sqrt();
    let e1 = tr2 + disc;
    let e2 = tr2 - disc;
    if (e1 - d).norm() < (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// Givens rotation zeroing y against x: G [x; y] = [r; 0] with
/// G = [[c, s],[-conj(s), c]] and real c.
fn givens(x: C, y: C) -> (f64, C) {
    let xn = x.norm();
    let yn = y.norm();
    if yn == 0.0 {
        return (1.0, C::new(0.0, 0.0));
    }
    let r = xn.hypot(yn);
    if xn == 0.0 {
        (0.0, y.conj() / yn)
    } else {
        let c = xn / r;
        let s = (x / xn) * y.conj() / r;
        (c, s)
    }
}

fn apply_givens_left(h: &mut CMat, i: usize, j: usize, c: f64, s: C, col_from: usize) {
    let n = h.n;
    for k in col_from..n {
        let a = h.at(i, k);
        let b = h.at(j, k);
        *h.at_mut(i, k) = c * a + s * b;
        *h.at_mut(j, k) = -s.conj() * a + c * b;
    }
}

fn apply_givens_right(h: &mut CMat, i: usize, j: usize, c: f64, s: C, row_to: usize) {
    let row_to = row_to.min(h.n);
    for k in 0..row_to {
        let a = h.at(k, i);
        let b = h.at(k, j);
        *h.at_mut(k, i) = c * a + s.conj() * b;
        *h.at_mut(k, j) = -s * a + c * b;
    }
}

/// LU decomposition with partial pivoting; panics on exactly singular input.
pub struct Lu {
    n: usize,
    lu: Vec<C>,
    piv: Vec<usize>,
}

impl Lu {
    pub fn new(m: &CMat) -> Option<Self> {
        let n = m.n;
        let mut lu = m.data.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                piv.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    let d = f * lu[k * n + j];
                    lu[i * n + j] -= d;
                }
            }
        }
        Some(Self { n, lu, piv })
    }

    pub fn solve(&self, b: &[C]) -> Vec<C> {
        let n = self.n;
        let mut x: Vec<C> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }
}

/// Right eigenvector for eigenvalue `mu` by inverse iteration on a slightly
/// shifted matrix. Returns a unit vector.
pub fn right_eigenvector(m: &CMat, mu: C) -> Vec<C> {
    inverse_iteration(m, mu, false)
}

/// Left eigenvector (eigenvector of `M^H` for `conj(mu)`), unit norm.
pub fn left_eigenvector(m: &CMat, mu: C) -> Vec<C> {
    inverse_iteration(m, mu, true)
}

fn inverse_iteration(m: &CMat, mu: C, adjoint: bool) -> Vec<C> {
    let n = m.n;
    let scale = m.max_norm().max(1.0);
    let mut shifted = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            *shifted.at_mut(i, j) = if adjoint {
                m.at(j, i).conj()
            } else {
                m.at(i, j)
            };
        }
    }
    let mu_eff = if adjoint { mu.conj() } else { mu };
    // regularize: shift slightly off the exact eigenvalue so LU stays finite
    let mut eps_shift = 1e-13 * scale;
    loop {
        let mut a = shifted.clone();
        for i in 0..n {
            *a.at_mut(i, i) -= mu_eff + C::new(eps_shift, eps_shift);
        }
        if let Some(lu) = Lu::new(&a) {
            let mut v = vec![C::new(1.0, 0.0); n];
            for (i, vi) in v.iter_mut().enumerate() {
                *vi += C::new(0.0, 0.3 + 0.1 * i as f64); // deterministic non-degenerate start
            }
            normalize(&mut v);
            for _ in 0..4 {
                v = lu.solve(&v);
                normalize(&mut v);
            }
            return v;
        }
        eps_shift *= 10.0;
    }
}

fn normalize(v: &mut [C]) {
    let n2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let s = n2.sqrt();
    if s > 0.0 {
        for z in v.iter_mut() {
            *z /= s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sort_key(z: &C) -> (i64, i64) {
        ((z.re * 1e9) as i64, (z.im * 1e9) as i64)
    }

    #[test]
    fn diagonal_and_triangular() {
        let mut m = CMat::zeros(3);
        *m.at_mut(0, 0) = C::new(1.0, 2.0);
        *m.at_mut(1, 1) = C::new(-3.0, 0.5);
        *m.at_mut(2, 2) = C::new(0.0, -1.0);
        *m.at_mut(0, 2) = C::new(5.0, 5.0);
        let mut e = eigenvalues(&m);
        e.sort_by_key(sort_key);
        let mut want = [C::new(1.0, 2.0), C::new(-3.0, 0.5), C::new(0.0, -1.0)];
        want.sort_by_key(sort_key);
        for (a, b) in e.iter().zip(want.iter()) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn known_2x2_complex() {
        // [[0, 1], [-1, 0]] has eigenvalues +-i
        let mut m = CMat::zeros(2);
        *m.at_mut(0, 1) = C::new(1.0, 0.0);
        *m.at_mut(1, 0) = C::new(-1.0, 0.0);
        let mut e = eigenvalues(&m);
        e.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((e[0] - C::new(0.0, -1.0)).norm() < 1e-13);
        assert!((e[1] - C::new(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn random_matrix_char_poly_residual() {
        // deterministic pseudo-random complex matrix; check each eigenvalue
        // by smallest-singular-value proxy: |det(A - mu I)| via LU product.
        let n = 12;
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed as f64 / u64::MAX as f64) * 2.0 - 1.0
        };
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = C::new(rng(), rng());
            }
        }
        let eigs = eigenvalues(&m);
        assert_eq!(eigs.len(), n);
        // trace check: sum of eigenvalues == trace
        let tr: C = (0..n).map(|i| m.at(i, i)).sum();
        let se: C = eigs.iter().sum();
        assert!((tr - se).norm() < 1e-9 * m.max_norm(), "{tr} vs {se}");
        // eigenvector residual for a few eigenvalues
        for &mu in eigs.iter().take(4) {
            let v = right_eigenvector(&m, mu);
            let av = m.matvec(&v);
            let mut res: f64 = 0.0;
            for i in 0..n {
                res = res.max((av[i] - mu * v[i]).norm());
            }
            assert!(res < 1e-8, "residual {res} for mu {mu}");
        }
    }

    #[test]
    fn hermitian_real_spectrum() {
        let n = 10;
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = C::new((i * j + 1) as f64 / 7.0, (i as f64 - j as f64) / 5.0);
                *m.at_mut(i, j) = v;
                *m.at_mut(j, i) = v.conj();
            }
        }
        let eigs = eigenvalues(&m);
        for e in &eigs {
            assert!(e.im.abs() < 1e-10, "non-real eigenvalue {e} of Hermitian");
        }
    }

    #[test]
    fn lu_solves() {
        let n = 6;
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = C::new((i + 2 * j) as f64, (i as f64) - (j as f64) * 0.5);
            }
            *m.at_mut(i, i) += C::new(10.0, 1.0);
        }
        let b: Vec<C> = (0..n).map(|i| C::new(i as f64, 1.0)).collect();
        let lu = Lu::new(&m).unwrap();
        let x = lu.solve(&b);
        let ax = m.matvec(&x);
        for i in 0..n {
            assert!((ax[i] - b[i]).norm() < 1e-10);
        }
    }
}
