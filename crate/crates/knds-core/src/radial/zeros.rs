//! Complex zeros of the Wronskian by argument-principle winding counts on
//! rectangle boundaries (adaptive phase tracking of `d log W`) followed by
//! Newton polish with the exact parameter derivatives.

use super::wronskian::wronskian;
use super::RadialProblem;
use crate::error::CoreError;
use crate::Result;
use num_complex::Complex64;
use serde::Serialize;

type C = Complex64;

/// Which frequency variable is swept; the other one is held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SweepVariable {
    /// zeros in `lambda` at fixed `omega`
    Lambda,
    /// zeros in `omega` at fixed `lambda`
    Omega,
}

/// Axis-aligned search rectangle in the swept variable.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SearchBox {
    pub lo: C,
    pub hi: C,
}

impl SearchBox {
    pub fn center(&self) -> C {
        0.5 * (self.lo + self.hi)
    }

    pub fn scale(&self) -> f64 {
        (self.hi - self.lo).norm()
    }

    fn corners(&self) -> [C; 4] {
        [
            self.lo,
            C::new(self.hi.re, self.lo.im),
            self.hi,
            C::new(self.lo.re, self.hi.im),
        ]
    }

    fn quadrants(&self) -> [SearchBox; 4] {
        let c = self.center();
        [
            SearchBox { lo: self.lo, hi: c },
            SearchBox {
                lo: C::new(c.re, self.lo.im),
                hi: C::new(self.hi.re, c.im),
            },
            SearchBox { lo: c, hi: self.hi },
            SearchBox {
                lo: C::new(self.lo.re, c.im),
                hi: C::new(c.re, self.hi.im),
            },
        ]
    }
}

/// A located zero.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResonanceZero {
    pub lambda: C,
    pub omega: C,
    pub k: f64,
    /// |W| at the zero in unit (Gamma-bias-free) scale.
    pub residual: f64,
    /// the box this zero was isolated in
    pub winding_box: SearchBox,
}

/// Locate zeros of `W` in the box by recursive winding subdivision (until
/// each box holds at most `MAX_PER_BOX`) and Newton refinement; validates
/// the Newton count against the winding count.
pub fn radial_resonances(
    prob: &RadialProblem,
    sweep: SweepVariable,
    search: SearchBox,
    tol: f64,
) -> Result<Vec<ResonanceZero>> {
    let mut zeros = Vec::new();
    subdivide(prob, sweep, search, tol, 0, &mut zeros)?;
    // dedupe by distance
    let scale = search.scale();
    zeros.sort_by(|a, b| {
        (a.lambda.re, a.lambda.im, a.omega.re, a.omega.im)
            .partial_cmp(&(b.lambda.re, b.lambda.im, b.omega.re, b.omega.im))
            .unwrap()
    });
    zeros.dedup_by(|a, b| {
        ((a.lambda - b.lambda).norm() + (a.omega - b.omega).norm()) < 1e-8 * scale
    });
    Ok(zeros)
}

const MAX_PER_BOX: i32 = 3;
const MAX_DEPTH: usize = 12;

fn subdivide(
    prob: &RadialProblem,
    sweep: SweepVariable,
    b: SearchBox,
    tol: f64,
    depth: usize,
    out: &mut Vec<ResonanceZero>,
) -> Result<()> {
    let n = winding_number(prob, sweep, &b, tol)?;
    if n == 0 {
        return Ok(());
    }
    if n > MAX_PER_BOX && depth < MAX_DEPTH {
        for q in b.quadrants() {
            subdivide(prob, sweep, q, tol, depth + 1, out)?;
        }
        return Ok(());
    }
    // try Newton from a grid of starts inside the box
    let mut found: Vec<ResonanceZero> = Vec::new();
    'starts: for sx in [0.5, 0.25, 0.75] {
        for sy in [0.5, 0.25, 0.75] {
            let z0 = C::new(
                b.lo.re + sx * (b.hi.re - b.lo.re),
                b.lo.im + sy * (b.hi.im - b.lo.im),
            );
            if let Ok(z) = newton_zero(prob, sweep, z0, &b, tol) {
                if found
                    .iter()
                    .all(|f| (pick(f, sweep) - pick_z(z, sweep)).norm() > 1e-7 * b.scale())
                {
                    found.push(z);
                }
                if found.len() as i32 >= n {
                    break 'starts;
                }
            }
        }
    }
    if (found.len() as i32) < n {
        if depth < MAX_DEPTH {
            // mismatch: subdivide and retry
            for q in b.quadrants() {
                subdivide(prob, sweep, q, tol, depth + 1, out)?;
            }
            return Ok(());
        }
        return Err(CoreError::ZeroSearch(format!(
            "winding {n} but only {} Newton zeros in {:?}",
            found.len(),
            b
        )));
    }
    out.extend(found);
    Ok(())
}

fn pick(z: &ResonanceZero, sweep: SweepVariable) -> C {
    match sweep {
        SweepVariable::Lambda => z.lambda,
        SweepVariable::Omega => z.omega,
    }
}

fn pick_z(z: ResonanceZero, sweep: SweepVariable) -> C {
    pick(&z, sweep)
}

fn eval(prob: &RadialProblem, sweep: SweepVariable, z: C, tol: f64) -> Result<(C, C)> {
    let p = match sweep {
        SweepVariable::Lambda => prob.with_frequencies(z, prob.omega),
        SweepVariable::Omega => prob.with_frequencies(prob.lambda, z),
    };
    let w = wronskian(&p, 0.0, tol)?;
    let d = match sweep {
        SweepVariable::Lambda => w.d_lambda,
        SweepVariable::Omega => w.d_omega,
    };
    Ok((w.value, d))
}

/// Winding number of `W` around the box boundary with adaptive refinement
/// of the phase samples (split until consecutive phase jumps < pi/2).
fn winding_number(
    prob: &RadialProblem,
    sweep: SweepVariable,
    b: &SearchBox,
    tol: f64,
) -> Result<i32> {
    let corners = b.corners();
    let mut total = 0.0f64;
    for e in 0..4 {
        let z0 = corners[e];
        let z1 = corners[(e + 1) % 4];
        total += edge_phase(prob, sweep, z0, z1, tol, 0)?;
    }
    let w = total / (2.0 * std::f64::consts::PI);
    let n = w.round();
    if (w - n).abs() > 0.25 {
        return Err(CoreError::ZeroSearch(format!(
            "non-integer winding {w:.3} on {b:?}"
        )));
    }
    Ok(n as i32)
}

fn edge_phase(
    prob: &RadialProblem,
    sweep: SweepVariable,
    z0: C,
    z1: C,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let (w0, _) = eval(prob, sweep, z0, tol)?;
    let (w1, _) = eval(prob, sweep, z1, tol)?;
    if w0.norm() == 0.0 || w1.norm() == 0.0 {
        return Err(CoreError::ZeroSearch("zero on box boundary".into()));
    }
    let dphi = (w1 / w0).arg();
    if dphi.abs() < std::f64::consts::FRAC_PI_2 && depth >= 3 {
        return Ok(dphi);
    }
    if depth > 14 {
        return Ok(dphi);
    }
    let zm = 0.5 * (z0 + z1);
    Ok(edge_phase(prob, sweep, z0, zm, tol, depth + 1)?
        + edge_phase(prob, sweep, zm, z1, tol, depth + 1)?)
}

fn newton_zero(
    prob: &RadialProblem,
    sweep: SweepVariable,
    z0: C,
    b: &SearchBox,
    tol: f64,
) -> Result<ResonanceZero> {
    let mut z = z0;
    let scale = b.scale();
    for _ in 0..60 {
        let (w, dw) = eval(prob, sweep, z, tol)?;
        if dw.norm() == 0.0 {
            return Err(CoreError::ZeroSearch("vanishing derivative".into()));
        }
        let step = -w / dw;
        z += step;
        // keep Newton loosely inside the (padded) box
        if z.re < b.lo.re - scale || z.re > b.hi.re + scale || z.im < b.lo.im - scale
            || z.im > b.hi.im + scale
        {
            return Err(CoreError::ZeroSearch("left the box".into()));
        }
        if step.norm() < 1e-12 * (1.0 + z.norm()) {
            let (w_final, _) = eval(prob, sweep, z, tol)?;
            if w_final.norm() > 1e-9 * (1.0 + scale) {
                return Err(CoreError::ZeroSearch(format!(
                    "converged point has residual {}",
                    w_final.norm()
                )));
            }
            // inside the original box only
            if z.re < b.lo.re - 1e-9 * scale
                || z.re > b.hi.re + 1e-9 * scale
                || z.im < b.lo.im - 1e-9 * scale
                || z.im > b.hi.im + 1e-9 * scale
            {
                return Err(CoreError::ZeroSearch("zero outside box".into()));
            }
            let (lambda, omega) = match sweep {
                SweepVariable::Lambda => (z, prob.omega),
                SweepVariable::Omega => (prob.lambda, z),
            };
            return Ok(ResonanceZero {
                lambda,
                omega,
                k: prob.k,
                residual: w_final.norm(),
                winding_box: *b,
            });
        }
    }
    Err(CoreError::NoConvergence {
        iterations: 60,
        last_step: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::build_context;
    use crate::spacetime::BlackHoleParams;

    #[test]
    fn real_axis_segment_has_no_zeros() {
        let p = BlackHoleParams::new(1.0, 0.3, 0.0, 0.04);
        let prob = RadialProblem::massless(
            build_context(&p).unwrap(),
            C::new(0.0, 0.0),
            C::new(5.0, 0.0),
            0.5,
        );
        // a thin box straddling the real lambda axis
        let b = SearchBox {
            lo: C::new(0.6, -0.012),
            hi: C::new(1.2, 0.012),
        };
        let zeros = radial_resonances(&prob, SweepVariable::Lambda, b, 1e-11).unwrap();
        assert!(zeros.is_empty(), "{zeros:?}");
    }

    #[test]
    fn finds_the_fundamental_mode_near_the_seed() {
        // a = 0 reference set: the l+1/2 = 5, m = 0 mode (omega = mu = 5)
        let p = BlackHoleParams::new(1.0, 0.3, 0.0, 0.04);
        let ctx = build_context(&p).unwrap();
        let prob = RadialProblem::massless(ctx, C::new(0.0, 0.0), C::new(5.0, 0.0), 0.5);
        // semiclassical seed: z0 (l+1/2) - i alpha/z0 /2
        let z0 = 0.157675128753109901;
        let alpha = 0.0246009960833742461;
        let seed = C::new(z0 * 5.0, -alpha / z0 * 0.5);
        let b = SearchBox {
            lo: seed + C::new(-0.05, -0.05),
            hi: seed + C::new(0.05, 0.04),
        };
        let zeros = radial_resonances(&prob, SweepVariable::Lambda, b, 1e-11).unwrap();
        assert_eq!(zeros.len(), 1, "{zeros:?}");
        let z = zeros[0];
        assert!((z.lambda - seed).norm() < 0.01, "{} vs seed {seed}", z.lambda);
        assert!(z.residual < 1e-9);
        // frozen from the validated python prototype of the same pipeline
        let expect = C::new(0.787358016681, -0.077998576666);
        assert!(
            (z.lambda - expect).norm() < 5e-7,
            "{} vs {expect}",
            z.lambda
        );
    }
}
