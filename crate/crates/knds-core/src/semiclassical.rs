//! Closed-form semiclassical data: photon-sphere quantities, the leading
//! pseudolattice formula, radial and angular quantization symbols, trapped
//! frequencies, the barrier-top coefficient `beta_0`, and the combined
//! quantization with its Zeeman splitting slope.
//!
//! Scaled variables: `lambda~ = h Re lambda`, `k~ = h k`, `omega~ = h Re omega`
//! with `h` supplied by the caller (use `h = 1/Re lambda` to compare with the
//! unscaled spectrum). Angular-symbol formulas use `lambda_breve = lambda~/E`
//! internally.

use crate::error::CoreError;
use crate::spacetime::{BlackHoleParams, CoeffFunctions, HorizonSet, ReggeWheelerMap};
use crate::Result;
use num_complex::Complex64;
use serde::Serialize;

/// Photon-sphere data at `a = 0`: the trapping radius and the two constants
/// controlling the real spacing (`z_0`) and overtone spacing (`alpha/z_0`).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhotonSphere {
    pub params: BlackHoleParams,
    /// `r_0 = 3M/2 + sqrt((3M/2)^2 - 2 Q^2)`, root of `F'(r) r - 2 F(r) = 0`.
    pub r0: f64,
    /// `z_0 = (M/r_0^3 - Q^2/r_0^4 - Lambda/3)^{1/2} = sqrt(F(r_0))/r_0`.
    pub z0: f64,
    /// `alpha = (3M/r_0 - 4Q^2/r_0^2)^{1/2} z_0^2`.
    pub alpha: f64,
    pub f_r0: f64,
    pub f_prime_r0: f64,
}

impl PhotonSphere {
    pub fn compute(params: &BlackHoleParams) -> Result<Self> {
        let m = params.mass;
        let q2 = params.charge * params.charge;
        let half = 1.5 * m;
        if 2.0 * q2 >= half * half {
            return Err(CoreError::NoPhotonSphere(2.0 * q2, half * half));
        }
        let r0 = half + (half * half - 2.0 * q2).sqrt();
        let z0_sq = m / r0.powi(3) - q2 / r0.powi(4) - params.lambda / 3.0;
        if z0_sq <= 0.0 {
            return Err(CoreError::Inadmissible(format!(
                "z_0^2 = {z0_sq} <= 0: no trapping for these parameters"
            )));
        }
        let z0 = z0_sq.sqrt();
        let alpha = (3.0 * m / r0 - 4.0 * q2 / (r0 * r0)).sqrt() * z0 * z0;
        Ok(Self {
            params: *params,
            r0,
            z0,
            alpha,
            f_r0: params.lapse_f(r0),
            f_prime_r0: params.lapse_f_prime(r0),
        })
    }

    /// `H(k~) = k~ 4 F^{1/2}(r_0) r_0^2 / (8 Q^2 - 6 M r_0)`.
    pub fn h_coefficient(&self, k_tilde: f64) -> f64 {
        let q2 = self.params.charge * self.params.charge;
        k_tilde * 4.0 * self.f_r0.sqrt() * self.r0 * self.r0
            / (8.0 * q2 - 6.0 * self.params.mass * self.r0)
    }

    /// `1 - r_0 F^{-1}(r_0) F'(r_0) / 2`; vanishes at `Q = 0`.
    pub fn bracket(&self) -> f64 {
        1.0 - 0.5 * self.r0 * self.f_prime_r0 / self.f_r0
    }

    /// Leading pseudolattice frequency at `a = 0`:
    /// `z_0 (l + 1/2) - i (alpha/z_0)(m + 1/2)`, `l` the Theorem-index with
    /// `l + 1/2 = |k| - 1/2 + l_angular`. Error is `O((l+1/2)^{-1})`.
    pub fn leading_qnm(&self, l_plus_half: f64, overtone: u32) -> Result<Complex64> {
        if self.params.spin != 0.0 {
            return Err(CoreError::Refused(
                "leading closed form is the a = 0 limit; use continuation for a != 0".into(),
            ));
        }
        Ok(Complex64::new(
            self.z0 * l_plus_half,
            -(self.alpha / self.z0) * (overtone as f64 + 0.5),
        ))
    }
}

/// Radial quantization symbol
/// `F^{r,+}_0(l~, k~) = l~ r_0 F^{-1/2} + (a/r_0)[H (1 - r_0 F^{-1} F'/2) - F^{-1/2} k~]`
/// and `F^{r,-}_0 = -F^{r,+}_0`.
pub fn radial_symbol(
    ps: &PhotonSphere,
    lambda_tilde: f64,
    k_tilde: f64,
    branch_plus: bool,
) -> f64 {
    let sq = ps.f_r0.sqrt();
    let plus = lambda_tilde * ps.r0 / sq
        + ps.params.spin / ps.r0 * (ps.h_coefficient(k_tilde) * ps.bracket() - k_tilde / sq);
    if branch_plus {
        plus
    } else {
        -plus
    }
}

/// Angular edge symbol `F^theta_0(+-k~, l~, k~) = (E k~ - a l~)^2` together
/// with the edge derivative `d/dl~ F^theta_0 = +-2 k~ + O(a^2)` and
/// `d/dk~ F^theta_0 = -2 a l~ + O(a^2)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AngularSymbol {
    pub value: f64,
    pub dl_edge: f64,
    pub dk_edge: f64,
}

pub fn angular_symbol(params: &BlackHoleParams, lambda_tilde: f64, k_tilde: f64, edge_plus: bool) -> AngularSymbol {
    let e = params.big_e();
    let v = e * k_tilde - params.spin * lambda_tilde;
    AngularSymbol {
        value: v * v,
        dl_edge: if edge_plus { 2.0 * k_tilde } else { -2.0 * k_tilde },
        dk_edge: -2.0 * params.spin * lambda_tilde,
    }
}

/// Bottom-of-well curvature `U_0(0) = k~^2 - (a Re lb)^2 - (E-1)(a Re lb - k~)^2`
/// with `lb = lambda~/E`, and the second-order eigenvalue display
/// `(omega~ + i h mu~)^2 = E^2 (k~ - a lb)^2 + (2m+1) h sqrt(U_0(0))`.
pub fn angular_well(
    params: &BlackHoleParams,
    k_tilde: f64,
    lambda_breve: f64,
    overtone: u32,
    h: f64,
) -> (f64, f64) {
    let e = params.big_e();
    let alb = params.spin * lambda_breve;
    let u0 = k_tilde * k_tilde - alb * alb - (e - 1.0) * (alb - k_tilde) * (alb - k_tilde);
    let omega_sq =
        e * e * (k_tilde - alb) * (k_tilde - alb) + (2.0 * overtone as f64 + 1.0) * h * u0.sqrt();
    (u0, omega_sq)
}

/// Trapped frequency: `omega~_0^{-2}` is the interior maximum of
/// `F_V(r) = Delta_r / [l~ (r^2 + a^2) - a E k~]^2` over `(r_-, r_+)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrappedFrequency {
    pub omega0: f64,
    pub r_max: f64,
}

pub fn trapped_frequency(
    horizons: &HorizonSet,
    lambda_tilde: f64,
    k_tilde: f64,
) -> Result<TrappedFrequency> {
    let p = &horizons.params;
    let denom = |r: f64| lambda_tilde * (r * r + p.spin * p.spin) - p.spin * p.big_e() * k_tilde;
    let f_v = |r: f64| {
        let d = denom(r);
        p.delta_r(r) / (d * d)
    };
    // bracket with a 64-point scan, then golden-section + Newton polish on
    // the derivative of F_V.
    let (lo, hi) = (horizons.r_event, horizons.r_cosmo);
    let mut best = (0.0f64, f64::NEG_INFINITY);
    for i in 1..64 {
        let r = lo + (hi - lo) * i as f64 / 64.0;
        if denom(r).abs() < 1e-12 {
            return Err(CoreError::NoTrapping(format!(
                "denominator vanishes at r = {r}"
            )));
        }
        let v = f_v(r);
        if v > best.1 {
            best = (r, v);
        }
    }
    let step = (hi - lo) / 64.0;
    let (mut a_br, mut b_br) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    // golden-section
    let phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let (mut c1, mut c2) = (b_br - phi * (b_br - a_br), a_br + phi * (b_br - a_br));
    let (mut f1, mut f2) = (f_v(c1), f_v(c2));
    for _ in 0..200 {
        if f1 > f2 {
            b_br = c2;
            c2 = c1;
            f2 = f1;
            c1 = b_br - phi * (b_br - a_br);
            f1 = f_v(c1);
        } else {
            a_br = c1;
            c1 = c2;
            f1 = f2;
            c2 = a_br + phi * (b_br - a_br);
            f2 = f_v(c2);
        }
        if b_br - a_br < 1e-13 * (1.0 + best.0.abs()) {
            break;
        }
    }
    let mut r_max = 0.5 * (a_br + b_br);
    // Newton on d/dr F_V = 0 (finite-difference second derivative)
    for _ in 0..60 {
        let dr = 1e-6 * (1.0 + r_max.abs());
        let d1 = (f_v(r_max + dr) - f_v(r_max - dr)) / (2.0 * dr);
        let d2 = (f_v(r_max + dr) - 2.0 * f_v(r_max) + f_v(r_max - dr)) / (dr * dr);
        if d2.abs() < 1e-300 {
            break;
        }
        let step = d1 / d2;
        r_max -= step;
        if step.abs() < 1e-14 * (1.0 + r_max.abs()) {
            break;
        }
    }
    if !(lo + 1e-6 * (hi - lo) < r_max && r_max < hi - 1e-6 * (hi - lo)) {
        return Err(CoreError::NoTrapping(format!(
            "maximizer {r_max} at exterior boundary"
        )));
    }
    let omega0 = 1.0 / f_v(r_max).sqrt();
    Ok(TrappedFrequency { omega0, r_max })
}

/// Barrier-top coefficient
/// `beta_{0,+} = -(c_0(x_+) - l~ + w~ a(x_+)) sqrt(|w~| a(x_+)) / sqrt(|(c_0 + |w~| a)''(x_+)|)`
/// with `x_+` the critical point of `c_0 + |w~| a`; the minus branch uses the
/// critical point of `c_0 - |w~| a`. Satisfies
/// `beta_{0,-}(l~, w~, k~) = beta_{0,+}(-l~, w~, -k~)`.
pub fn beta0(
    coeffs: &CoeffFunctions,
    lambda_tilde: f64,
    omega_tilde: f64,
    k_tilde: f64,
    branch_plus: bool,
) -> Result<f64> {
    let p = *coeffs.params();
    let h = coeffs.horizons().clone();
    let sgn = if branch_plus { 1.0 } else { -1.0 };
    let aw = omega_tilde.abs();
    // c_0(x, k~) = a E k~ / (r^2 + a^2): the leading (h = 0) part of c.
    let c0 = |r: f64| p.spin * p.big_e() * k_tilde / (r * r + p.spin * p.spin);
    // critical point of g = c_0 + sgn |w| a along x; since dx/dr > 0 a zero
    // of dg/dx in r is the critical point.
    let dg_dx = |r: f64| {
        let dc0_dr = -2.0 * r * p.spin * p.big_e() * k_tilde
            / (r * r + p.spin * p.spin).powi(2);
        dc0_dr * p.delta_r(r) / (r * r + p.spin * p.spin) + sgn * aw * coeffs.da_dx_at_r(r)
    };
    // scan + bisection on dg/dx
    let (lo, hi) = (h.r_event, h.r_cosmo);
    let mut bracket = None;
    let mut prev_r = lo + (hi - lo) * 1e-3;
    let mut prev = dg_dx(prev_r);
    for i in 2..512 {
        let r = lo + (hi - lo) * i as f64 / 512.0;
        let v = dg_dx(r);
        if prev.signum() != v.signum() {
            bracket = Some((prev_r, r));
            break;
        }
        prev_r = r;
        prev = v;
    }
    let Some((mut ra, mut rb)) = bracket else {
        return Err(CoreError::NoTrapping(
            "no critical point of c_0 +- |w| a in the exterior".into(),
        ));
    };
    for _ in 0..200 {
        let rm = 0.5 * (ra + rb);
        if dg_dx(ra).signum() == dg_dx(rm).signum() {
            ra = rm;
        } else {
            rb = rm;
        }
        if rb - ra < 1e-14 * (1.0 + rm.abs()) {
            break;
        }
    }
    let r_crit = 0.5 * (ra + rb);
    let x_crit = coeffs.map.x(r_crit)?;
    // second x-derivative of g by centered difference of the analytic dg/dx
    let dx = 1e-5 * (1.0 + x_crit.abs());
    let rp_ = coeffs.map.r(x_crit + dx)?;
    let rm_ = coeffs.map.r(x_crit - dx)?;
    let g2 = (dg_dx(rp_) - dg_dx(rm_)) / (2.0 * dx);
    if g2.abs() < 1e-10 {
        return Err(CoreError::DegenerateTrapping(g2.abs()));
    }
    let a_crit = coeffs.a_of_r(r_crit);
    let numer = (c0(r_crit) - lambda_tilde + sgn * aw * a_crit) * (aw * a_crit).sqrt();
    Ok(-sgn * numer / g2.abs().sqrt())
}

/// Zeeman slope of the combined quantization along the edge `l~ = sigma k~`:
/// `d lambda~/d k~ = -(a/r_0^2)[X - 1] - sigma a z_0 F^{1/2}(r_0)/r_0` with
/// `X = 4 F(r_0) r_0^2/(8Q^2 - 6 M r_0) (1 - r_0 F^{-1} F'/2)`.
pub fn zeeman_slope(ps: &PhotonSphere, edge_plus: bool) -> f64 {
    let q2 = ps.params.charge * ps.params.charge;
    let x = 4.0 * ps.f_r0 * ps.r0 * ps.r0 / (8.0 * q2 - 6.0 * ps.params.mass * ps.r0)
        * ps.bracket();
    let sigma = if edge_plus { 1.0 } else { -1.0 };
    -(ps.params.spin / (ps.r0 * ps.r0)) * (x - 1.0)
        - sigma * ps.params.spin * ps.z0 * ps.f_r0.sqrt() / ps.r0
}

/// Combined quantization output.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CombinedQuantization {
    /// Leading-order real scaled frequency, if inside the admissible window.
    pub lambda_tilde: Option<f64>,
    pub slope: f64,
}

/// Solve `F^{r,+}_0(lambda~, k~) = sqrt(F^theta_0)` for `lambda~` at the
/// edge `l~ = sigma k~` (closed form, the right side is `|E k~ - a lambda~|`),
/// reporting the Zeeman slope of that edge. General interior `l~` uses the
/// interpolant `F^theta_0 ~ (E l~ - a lambda~ k~/l~)^2` which matches both
/// edge values and the edge derivative.
pub fn combined_quantization(
    ps: &PhotonSphere,
    k_tilde: f64,
    l_tilde: f64,
    window: (f64, f64),
) -> CombinedQuantization {
    let p = &ps.params;
    let e = p.big_e();
    let sq = ps.f_r0.sqrt();
    let edge = (l_tilde - k_tilde).abs() < 1e-14 || (l_tilde + k_tilde).abs() < 1e-14;
    let slope = zeeman_slope(ps, l_tilde * k_tilde >= 0.0);
    // F^{r,+}_0 = A lam + B, with
    let a_coef = ps.r0 / sq;
    let b_coef = p.spin / ps.r0 * (ps.h_coefficient(k_tilde) * ps.bracket() - k_tilde / sq);
    // sqrt(F^theta_0) = |E l~ - a lam (k/l)| ; solve the linear equation in
    // the branch where the modulus argument is positive (l~ > 0 window).
    let ratio = if edge { k_tilde.signum() * l_tilde.signum() } else { k_tilde / l_tilde };
    // A lam + B = E |l~| - a lam * ratio * sign(l)  (for small a the rhs
    // argument E l~ - a lam k/l is positive when l~ > 0)
    let lam = (e * l_tilde.abs() - b_coef) / (a_coef + p.spin * ratio * l_tilde.signum());
    let lambda_tilde = if window.0 < lam && lam < window.1 {
        Some(lam)
    } else {
        None
    };
    CombinedQuantization { lambda_tilde, slope }
}

/// The two Kerr-de Sitter (`Q = 0`) consistency constants appearing in
/// `F^r_0(lambda~,k~)^2 = 27 M^2 lambda~^2/(1-9M^2 Lambda) - 6 a lambda~ k~/(1-9M^2 Lambda) + O(a^2)`
/// plus the radial-symbol splitting coefficient `-1/(M sqrt(3) sqrt(1-9M^2 Lambda))`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KerrDsCheck {
    pub lambda_sq_coefficient: f64,
    pub cross_coefficient: f64,
    pub radial_splitting: f64,
}

pub fn kerr_ds_limit(ps: &PhotonSphere) -> Result<KerrDsCheck> {
    if ps.params.charge != 0.0 {
        return Err(CoreError::Refused("Kerr-dS limit requires Q = 0".into()));
    }
    // from the implemented symbol, not from the target constants:
    // F^{r,+}_0 = lam * r0/sqrt(F) + (a/r0)[H(k~)(bracket) - k~/sqrt(F)]
    let sq = ps.f_r0.sqrt();
    let c_lam = ps.r0 / sq; // coefficient of lambda~
    let per_ak = (ps.h_coefficient(1.0) * ps.bracket() - 1.0 / sq) / ps.r0; // coeff of a k~
    Ok(KerrDsCheck {
        lambda_sq_coefficient: c_lam * c_lam,
        cross_coefficient: -2.0 * c_lam * per_ak,
        radial_splitting: per_ak,
    })
}

/// Everything the `asymptotics` CLI subcommand emits.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    pub r0: f64,
    pub z0: f64,
    pub alpha: f64,
    pub h_per_ktilde: f64,
    pub fr0_plus: f64,
    pub ftheta0: f64,
    pub zeeman_slope_minus: f64,
    pub zeeman_slope_plus: f64,
    pub kerr_ds_check: Option<KerrDsCheck>,
}

pub fn asymptotics_report(
    params: &BlackHoleParams,
    lambda_tilde: f64,
    k_tilde: f64,
) -> Result<AsymptoticsReport> {
    let ps = PhotonSphere::compute(params)?;
    Ok(AsymptoticsReport {
        r0: ps.r0,
        z0: ps.z0,
        alpha: ps.alpha,
        h_per_ktilde: ps.h_coefficient(1.0),
        fr0_plus: radial_symbol(&ps, lambda_tilde, k_tilde, true),
        ftheta0: angular_symbol(params, lambda_tilde, k_tilde, true).value,
        zeeman_slope_minus: zeeman_slope(&ps, false),
        zeeman_slope_plus: zeeman_slope(&ps, true),
        kerr_ds_check: if params.charge == 0.0 {
            Some(kerr_ds_limit(&ps)?)
        } else {
            None
        },
    })
}

/// Build the coefficient evaluators (map anchored at the photon sphere).
pub fn build_coeffs(params: &BlackHoleParams) -> Result<CoeffFunctions> {
    let h = HorizonSet::compute(params)?;
    let ps = PhotonSphere::compute(params)?;
    Ok(CoeffFunctions::new(ReggeWheelerMap::new(h, ps.r0)?))
}
