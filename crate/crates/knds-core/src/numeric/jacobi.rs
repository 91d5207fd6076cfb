//! Jacobi polynomials `P_n^{(alpha,beta)}` by the three-term recurrence,
//! plus first derivatives. Only non-negative integer `alpha`, `beta` arise
//! here (alpha, beta = k -+ 1/2 for half-integer k) but the recurrence is
//! written for general real parameters.

/// Evaluate `P_n^{(a,b)}(x)`.
pub fn jacobi(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b + (a + b + 2.0) * x);
    for k in 2..=n {
        let kf = k as f64;
        let c1 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
        let c2 = (2.0 * kf + a + b - 1.0) * (a * a - b * b);
        let c3 = (2.0 * kf + a + b - 2.0) * (2.0 * kf + a + b - 1.0) * (2.0 * kf + a + b);
        let c4 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
        let p2 = ((c2 + c3 * x) * p1 - c4 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `d/dx P_n^{(a,b)}(x) = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)}(x)`.
pub fn jacobi_deriv(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    0.5 * (n as f64 + a + b + 1.0) * jacobi(n - 1, a + 1.0, b + 1.0, x)
}
