//! Floating-point verification of the level-one loop-group identity
//! `Q = theta - d xi` on SU(2).
//!
//! Everything here is numerical (f64) and deliberately separate from the
//! exact rational layer: it serves as an independent sanity check, not as a
//! source of truth.  `Q` is the bilinear form of the loop cocycle, `theta`
//! the canonical 2-form paired with a group element, and `xi` the 1-form it
//! trivializes against; the check reports the residual for both sign
//! conventions of `xi` and a finite-difference probe of the directional
//! derivative.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Su2Error {
    #[error("loop is not unitary (max defect {max_defect:e})")]
    NotUnitary { max_defect: f64 },
    #[error("need at least {0} quadrature samples")]
    TooFewSamples(usize),
}

/// A 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct M2(pub [[Complex64; 2]; 2]);

impl M2 {
    pub fn zero() -> Self {
        M2([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub fn id() -> Self {
        let mut m = M2::zero();
        m.0[0][0] = Complex64::new(1.0, 0.0);
        m.0[1][1] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn add(&self, o: &M2) -> M2 {
        let mut m = M2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[i][j] + o.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, o: &M2) -> M2 {
        let mut m = M2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[i][j] - o.0[i][j];
            }
        }
        m
    }

    pub fn mul(&self, o: &M2) -> M2 {
        let mut m = M2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j];
            }
        }
        m
    }

    pub fn scale(&self, c: f64) -> M2 {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= c;
            }
        }
        m
    }

    pub fn adjoint(&self) -> M2 {
        let mut m = M2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn commutator(&self, o: &M2) -> M2 {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `su(v) = v1 (i s1) + v2 (i s2) + v3 (i s3)` for the Pauli basis: the
/// anti-Hermitian traceless matrix with coefficient vector `v`.
pub fn su(v: [f64; 3]) -> M2 {
    let i = Complex64::new(0.0, 1.0);
    M2([
        [i * v[2], Complex64::new(v[1], v[0])],
        [Complex64::new(-v[1], v[0]), -i * v[2]],
    ])
}

/// Closed-form exponential of `su(v)`: `cos|v| I + (sin|v| / |v|) su(v)`.
pub fn exp_su(v: [f64; 3]) -> M2 {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if r < 1e-12 {
        // Second-order series keeps the error below roundoff here.
        return M2::id().add(&su(v)).sub(&M2::id().scale(r * r / 2.0));
    }
    M2::id().scale(r.cos()).add(&su(v).scale(r.sin() / r))
}

/// One periodic factor `exp((2 pi m t + phase) su(axis))`; the axis is
/// normalized at construction so the factor has period one in `t`.
#[derive(Debug, Clone, Copy)]
pub struct Su2Factor {
    pub m: i64,
    pub phase: f64,
    pub axis: [f64; 3],
}

/// A loop in SU(2) as a finite product of periodic one-parameter factors,
/// with an optional scalar gain (gain 1 is unitary; the gain exists so the
/// unitarity guard is testable).
#[derive(Debug, Clone)]
pub struct Su2Loop {
    factors: Vec<Su2Factor>,
    gain: f64,
}

impl Su2Loop {
    pub fn new(factors: Vec<Su2Factor>) -> Self {
        let factors = factors
            .into_iter()
            .map(|mut f| {
                let r = (f.axis[0] * f.axis[0] + f.axis[1] * f.axis[1] + f.axis[2] * f.axis[2])
                    .sqrt();
                assert!(r > 1e-12, "factor axis must be nonzero");
                f.axis = [f.axis[0] / r, f.axis[1] / r, f.axis[2] / r];
                f
            })
            .collect();
        Su2Loop { factors, gain: 1.0 }
    }

    /// Multiplies the loop by a constant scalar; any gain other than +-1
    /// destroys unitarity.
    pub fn with_gain(mut self, gain: f64) -> Self {
        self.gain = gain;
        self
    }

    fn factor_value(f: &Su2Factor, t: f64) -> M2 {
        let angle = 2.0 * PI * (f.m as f64) * t + f.phase;
        exp_su([f.axis[0] * angle, f.axis[1] * angle, f.axis[2] * angle])
    }

    pub fn value(&self, t: f64) -> M2 {
        let mut h = M2::id();
        for f in &self.factors {
            h = h.mul(&Self::factor_value(f, t));
        }
        h.scale(self.gain)
    }

    /// Analytic derivative via the product rule; each factor has the fixed
    /// generator `2 pi m su(axis)` commuting with itself.
    pub fn derivative(&self, t: f64) -> M2 {
        let mut total = M2::zero();
        for (r, f) in self.factors.iter().enumerate() {
            let mut term = M2::id();
            for (s, g) in self.factors.iter().enumerate() {
                let mut fac = Self::factor_value(g, t);
                if s == r {
                    let gen = su(f.axis).scale(2.0 * PI * (f.m as f64));
                    fac = gen.mul(&fac);
                }
                term = term.mul(&fac);
            }
            total = total.add(&term);
        }
        total.scale(self.gain)
    }

    /// Maurer-Cartan current `h^{-1} h'`, valid for unitary loops.
    pub fn current(&self, t: f64) -> M2 {
        self.value(t).adjoint().mul(&self.derivative(t))
    }

    pub fn max_unitarity_defect(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|j| {
                let t = j as f64 / samples as f64;
                let h = self.value(t);
                h.mul(&h.adjoint()).sub(&M2::id()).frobenius()
            })
            .fold(0.0, f64::max)
    }
}

/// An su(2)-valued trigonometric loop `X(t) = su(v(t))` with
/// `v(t) = sum_m cos(2 pi m t) c_m + sin(2 pi m t) s_m`.
#[derive(Debug, Clone)]
pub struct Su2AlgLoop {
    pub modes: Vec<(i64, [f64; 3], [f64; 3])>,
}

impl Su2AlgLoop {
    pub fn vec(&self, t: f64) -> [f64; 3] {
        let mut v = [0.0; 3];
        for (m, c, s) in &self.modes {
            let ang = 2.0 * PI * (*m as f64) * t;
            let (sn, cs) = ang.sin_cos();
            for i in 0..3 {
                v[i] += cs * c[i] + sn * s[i];
            }
        }
        v
    }

    pub fn vec_prime(&self, t: f64) -> [f64; 3] {
        let mut v = [0.0; 3];
        for (m, c, s) in &self.modes {
            let w = 2.0 * PI * (*m as f64);
            let ang = w * t;
            let (sn, cs) = ang.sin_cos();
            for i in 0..3 {
                v[i] += w * (-sn * c[i] + cs * s[i]);
            }
        }
        v
    }

    pub fn value(&self, t: f64) -> M2 {
        su(self.vec(t))
    }

    pub fn derivative(&self, t: f64) -> M2 {
        su(self.vec_prime(t))
    }

    pub fn bandwidth(&self) -> i64 {
        self.modes.iter().map(|(m, _, _)| m.abs()).max().unwrap_or(0)
    }
}

/// Result of the floating-point loop-group identity check.
#[derive(Debug, Clone)]
pub struct TransgressionReport {
    /// `(1/(4 pi^2)) int tr(X Y') dt` — the cocycle bilinear form.
    pub q: f64,
    /// `(1/(8 pi^2)) int tr(h^{-1} h' [X, Y]) dt` at level one.
    pub theta: f64,
    /// `X xi(Y) - Y xi(X) - xi([X, Y])` with the analytic directional
    /// derivative `X xi(Y) = (1/(8 pi^2)) int tr(([A, X] + X') Y) dt`.
    pub dxi: f64,
    /// `|q - (theta - dxi)|`: the convention that closes the identity.
    pub residual_closed: f64,
    /// `|q - (theta + dxi)|`: the opposite sign convention, reported for
    /// comparison.
    pub residual_flipped: f64,
    /// Gap between the analytic directional derivative and a central
    /// finite-difference probe along the group direction.
    pub fd_defect: f64,
    pub samples: usize,
}

fn grid_mean(samples: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    (0..samples)
        .map(|j| f(j as f64 / samples as f64))
        .sum::<f64>()
        / samples as f64
}

/// Checks `Q = theta - d xi` for a unitary loop `h` and algebra directions
/// `x, y`, using spectrally exact uniform quadrature (`samples` must exceed
/// twice the total bandwidth; 512 is ample for the shipped examples).
pub fn transgression_check(
    h: &Su2Loop,
    x: &Su2AlgLoop,
    y: &Su2AlgLoop,
    samples: usize,
) -> Result<TransgressionReport, Su2Error> {
    if samples < 16 {
        return Err(Su2Error::TooFewSamples(16));
    }
    let defect = h.max_unitarity_defect(samples.min(128));
    if defect > 1e-8 {
        return Err(Su2Error::NotUnitary { max_defect: defect });
    }

    let norm2 = 1.0 / (4.0 * PI * PI);
    let norm3 = 1.0 / (8.0 * PI * PI);

    let q = norm2
        * grid_mean(samples, |t| {
            x.value(t).mul(&y.derivative(t)).trace().re
        });

    let theta = norm3
        * grid_mean(samples, |t| {
            let a = h.current(t);
            a.mul(&x.value(t).commutator(&y.value(t))).trace().re
        });

    // xi along a pointwise-given algebra loop W.
    let xi_of = |w: &dyn Fn(f64) -> M2| -> f64 {
        norm3 * grid_mean(samples, |t| h.current(t).mul(&w(t)).trace().re)
    };
    // Analytic directional derivative of xi at h along U, evaluated on W:
    // (1/(8 pi^2)) int tr(([A, U] + U') W) dt.
    let dir_xi = |u: &Su2AlgLoop, w: &Su2AlgLoop| -> f64 {
        norm3
            * grid_mean(samples, |t| {
                let a = h.current(t);
                a.commutator(&u.value(t))
                    .add(&u.derivative(t))
                    .mul(&w.value(t))
                    .trace()
                    .re
            })
    };

    let x_xi_y = dir_xi(x, y);
    let y_xi_x = dir_xi(y, x);
    let xi_bracket = xi_of(&|t| x.value(t).commutator(&y.value(t)));
    let dxi = x_xi_y - y_xi_x - xi_bracket;

    // Finite-difference probe of X xi(Y): perturb h -> h exp(eps X) and
    // recompute xi(Y) from scratch, using the closed-form derivative of the
    // perturbing exponential.
    let eps = 1e-4;
    let xi_perturbed = |eps: f64| -> f64 {
        norm3
            * grid_mean(samples, |t| {
                let v = x.vec(t);
                let vp = x.vec_prime(t);
                let k = exp_su([eps * v[0], eps * v[1], eps * v[2]]);
                let kprime = d_exp_su(eps, v, vp);
                // A_(h k) = k^{-1} A_h k + k^{-1} k'.
                let kinv = k.adjoint();
                let a = kinv
                    .mul(&h.current(t))
                    .mul(&k)
                    .add(&kinv.mul(&kprime));
                a.mul(&y.value(t)).trace().re
            })
    };
    let fd = (xi_perturbed(eps) - xi_perturbed(-eps)) / (2.0 * eps);
    let fd_defect = (fd - x_xi_y).abs();

    let residual_closed = (q - (theta - dxi)).abs();
    let residual_flipped = (q - (theta + dxi)).abs();
    Ok(TransgressionReport {
        q,
        theta,
        dxi,
        residual_closed,
        residual_flipped,
        fd_defect,
        samples,
    })
}

/// Time derivative of `t -> exp(eps su(v(t)))` in closed form, where the
/// coefficient path has value `v` and velocity `vp` at the evaluation point.
fn d_exp_su(eps: f64, v: [f64; 3], vp: [f64; 3]) -> M2 {
    let w = [eps * v[0], eps * v[1], eps * v[2]];
    let wp = [eps * vp[0], eps * vp[1], eps * vp[2]];
    let r = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    if r < 1e-8 {
        // exp = I + su(w) + O(r^2): derivative su(wp) up to O(r) corrections
        // well below the check tolerance.
        return su(wp);
    }
    let rp = (w[0] * wp[0] + w[1] * wp[1] + w[2] * wp[2]) / r;
    // d/dt [cos r I + (sin r / r) su(w)]
    //   = -rp sin r I + ((rp cos r) r - sin r rp) / r^2 su(w)
    //     + (sin r / r) su(wp).
    let coeff_w = (rp * r.cos() * r - r.sin() * rp) / (r * r);
    M2::id()
        .scale(-rp * r.sin())
        .add(&su(w).scale(coeff_w))
        .add(&su(wp).scale(r.sin() / r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_h() -> Su2Loop {
        Su2Loop::new(vec![
            Su2Factor {
                m: 1,
                phase: 0.3,
                axis: [0.6, -0.2, 0.75],
            },
            Su2Factor {
                m: -2,
                phase: 1.1,
                axis: [0.1, 0.9, -0.4],
            },
        ])
    }

    fn sample_x() -> Su2AlgLoop {
        Su2AlgLoop {
            modes: vec![
                (0, [0.4, -0.1, 0.2], [0.0, 0.0, 0.0]),
                (1, [0.3, 0.5, -0.7], [-0.2, 0.1, 0.6]),
            ],
        }
    }

    fn sample_y() -> Su2AlgLoop {
        Su2AlgLoop {
            modes: vec![
                (1, [-0.5, 0.2, 0.1], [0.3, 0.3, -0.2]),
                (2, [0.1, -0.6, 0.4], [0.2, 0.0, 0.5]),
            ],
        }
    }

    #[test]
    fn loops_are_unitary_and_periodic() {
        let h = sample_h();
        assert!(h.max_unitarity_defect(64) < 1e-12);
        let a = h.value(0.0);
        let b = h.value(1.0);
        assert!(a.sub(&b).frobenius() < 1e-12);
        // Derivative check by finite differences.
        let d = 1e-6;
        let fd = h.value(0.37 + d).sub(&h.value(0.37 - d)).scale(1.0 / (2.0 * d));
        assert!(fd.sub(&h.derivative(0.37)).frobenius() < 1e-6);
    }

    #[test]
    fn identity_closes_with_minus_sign() {
        let rep = transgression_check(&sample_h(), &sample_x(), &sample_y(), 512).unwrap();
        assert!(
            rep.residual_closed < 1e-9,
            "closed-sign residual too large: {rep:?}"
        );
        // The flipped convention must visibly fail on generic data.
        assert!(
            rep.residual_flipped > 1e-3,
            "flipped residual suspiciously small: {rep:?}"
        );
        assert!(rep.fd_defect < 1e-5, "fd probe mismatch: {rep:?}");
    }

    #[test]
    fn degenerate_directions_vanish() {
        let x = sample_x();
        let rep = transgression_check(&sample_h(), &x, &x, 256).unwrap();
        assert!(rep.q.abs() < 1e-12);
        assert!(rep.theta.abs() < 1e-12);
        assert!(rep.dxi.abs() < 1e-10);
    }

    #[test]
    fn non_unitary_input_is_rejected() {
        let h = sample_h().with_gain(1.05);
        assert!(matches!(
            transgression_check(&h, &sample_x(), &sample_y(), 64),
            Err(Su2Error::NotUnitary { .. })
        ));
    }
}
