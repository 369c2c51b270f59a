//! Families of loops sweeping out surfaces, and the exact surface holonomy
//! of a 2-form over such a family.
//!
//! A family is a cone: `x(s, t) = apex + s * (a_i + d_i * t)` on time
//! patches `[t_i0, t_i1]`, so `s = 0` is the constant loop at the apex and
//! `s = 1` is the swept boundary loop.  The integrand of the holonomy is
//! polynomial in `(s, t)` on each patch, so the double integral is exact.

use crate::loop_space::piecewise::PiecewiseLoop;
use crate::loop_space::trig::LoopError;
use crate::phase::{Rat, RationalVector};
use crate::simplicial::AffineForm2;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// One affine time patch of a cone family: for `t` in `[t0, t1]` the
/// boundary direction is `a + d * t` (global time, not re-scaled per patch).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSegment {
    pub t0: Rat,
    pub t1: Rat,
    pub a: RationalVector,
    pub d: RationalVector,
}

impl ConeSegment {
    fn value_at(&self, t: &Rat) -> RationalVector {
        &self.a + &self.d.scaled(t)
    }
}

/// A closed cone family of loops `x(s, t) = apex + s * (a_i + d_i t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopFamily {
    apex: RationalVector,
    segments: Vec<ConeSegment>,
}

impl LoopFamily {
    /// Validates the time partition, patch-to-patch continuity, and closure
    /// of every loop in the family.
    pub fn new(apex: RationalVector, segments: Vec<ConeSegment>) -> Result<Self, LoopError> {
        if segments.is_empty() {
            return Err(LoopError::BadFamily("no segments".into()));
        }
        let n = apex.dim();
        for seg in &segments {
            if seg.a.dim() != n || seg.d.dim() != n {
                return Err(LoopError::DimensionMismatch {
                    expected: n,
                    found: seg.a.dim().max(seg.d.dim()),
                });
            }
            if seg.t0 >= seg.t1 {
                return Err(LoopError::BadFamily(
                    "segment times must satisfy t0 < t1".into(),
                ));
            }
        }
        if !segments[0].t0.is_zero() {
            return Err(LoopError::BadFamily("first segment must start at t = 0".into()));
        }
        if !segments.last().unwrap().t1.is_one() {
            return Err(LoopError::BadFamily("last segment must end at t = 1".into()));
        }
        for w in segments.windows(2) {
            if w[0].t1 != w[1].t0 {
                return Err(LoopError::BadFamily("time patches must abut".into()));
            }
            if w[0].value_at(&w[0].t1) != w[1].value_at(&w[1].t0) {
                return Err(LoopError::BadFamily(
                    "boundary directions must agree at patch junctions".into(),
                ));
            }
        }
        let start = segments[0].value_at(&segments[0].t0);
        let end = segments.last().unwrap().value_at(&segments.last().unwrap().t1);
        if start != end {
            return Err(LoopError::BadFamily("boundary loop must close".into()));
        }
        Ok(LoopFamily { apex, segments })
    }

    pub fn n(&self) -> usize {
        self.apex.dim()
    }

    pub fn apex(&self) -> &RationalVector {
        &self.apex
    }

    pub fn segments(&self) -> &[ConeSegment] {
        &self.segments
    }

    /// The loop at cone parameter `s` as a piecewise-affine loop.
    pub fn loop_at(&self, s: &Rat) -> PiecewiseLoop {
        let mut pts = Vec::with_capacity(self.segments.len() + 1);
        for seg in &self.segments {
            pts.push((
                seg.t0.clone(),
                &self.apex + &seg.value_at(&seg.t0).scaled(s),
            ));
        }
        let last = self.segments.last().unwrap();
        pts.push((
            last.t1.clone(),
            &self.apex + &last.value_at(&last.t1).scaled(s),
        ));
        PiecewiseLoop::new(pts).expect("validated family yields a valid loop")
    }

    /// The swept boundary loop (`s = 1`).
    pub fn boundary_loop(&self) -> PiecewiseLoop {
        self.loop_at(&Rat::one())
    }

    /// Time-reversed family; negates the holonomy of every 2-form.
    pub fn reversed(&self) -> LoopFamily {
        let one = Rat::one();
        let segments: Vec<ConeSegment> = self
            .segments
            .iter()
            .rev()
            .map(|seg| ConeSegment {
                t0: &one - &seg.t1,
                t1: &one - &seg.t0,
                a: &seg.a + &seg.d,
                d: -&seg.d,
            })
            .collect();
        LoopFamily {
            apex: self.apex.clone(),
            segments,
        }
    }
}

/// Surface holonomy of an affine-coefficient 2-form over a cone family:
/// `int_0^1 int_0^1 B_{x(s,t)}(d_t x, d_s x) dt ds`, exact.
///
/// On each patch `d_t x = s d`, `d_s x = a + d t`, so the wedge components
/// reduce to `s (d_j a_k - d_k a_j)` and the coefficient is affine in
/// `(s, s t)`; all monomial integrals are rational.
pub fn holonomy(b: &AffineForm2, family: &LoopFamily) -> Result<Rat, LoopError> {
    let n = family.n();
    if b.dim() != n {
        return Err(LoopError::DimensionMismatch {
            expected: n,
            found: b.dim(),
        });
    }
    let half = Rat::new(BigInt::from(1), BigInt::from(2));
    let third = Rat::new(BigInt::from(1), BigInt::from(3));
    let mut total = Rat::zero();
    for seg in family.segments() {
        let h = &seg.t1 - &seg.t0;
        let t_sq_half = (&seg.t1 * &seg.t1 - &seg.t0 * &seg.t0) * &half;
        for ((j, k), coeff) in b.terms() {
            let wedge = &seg.d.0[j - 1] * &seg.a.0[k - 1] - &seg.d.0[k - 1] * &seg.a.0[j - 1];
            if wedge.is_zero() {
                continue;
            }
            // Coefficient along the patch:
            // c(x(s,t)) = c(apex) + s (l.a) + s t (l.d).
            let c_apex = coeff.eval(&family.apex);
            let l_dot = |v: &RationalVector| -> Rat {
                coeff
                    .linear
                    .iter()
                    .zip(&v.0)
                    .map(|(l, vi)| l * vi)
                    .fold(Rat::zero(), |acc, x| acc + x)
            };
            // Integrate s * c(x): int s = 1/2, int s^2 = 1/3 over s;
            // int dt = h, int t dt = (t1^2 - t0^2)/2 over the patch.
            let patch = c_apex * &h * &half
                + l_dot(&seg.a) * &h * &third
                + l_dot(&seg.d) * &t_sq_half * &third;
            total += wedge * patch;
        }
    }
    Ok(total)
}

/// The standard cone family sweeping the partial-sum triangle of `(g1, g2)`:
/// apex at the origin and boundary loop `0 -> g1 + g2 -> g1 -> 0`.  With
/// this orientation the holonomy of any affine 2-form equals the simplicial
/// surface integral over the triangle `[0, g1, g1 + g2]` exactly.
pub fn standard_triangle_family(
    g1: &RationalVector,
    g2: &RationalVector,
) -> Result<LoopFamily, LoopError> {
    if g1.dim() != g2.dim() {
        return Err(LoopError::DimensionMismatch {
            expected: g1.dim(),
            found: g2.dim(),
        });
    }
    let n = g1.dim();
    let three = Rat::from_integer(BigInt::from(3));
    let g12 = g1 + g2;
    let seg1 = ConeSegment {
        t0: Rat::zero(),
        t1: Rat::new(BigInt::from(1), BigInt::from(3)),
        a: RationalVector::zeros(n),
        d: g12.scaled(&three),
    };
    let seg2 = ConeSegment {
        t0: Rat::new(BigInt::from(1), BigInt::from(3)),
        t1: Rat::new(BigInt::from(2), BigInt::from(3)),
        a: &g12 + g2,
        d: g2.scaled(&-&three),
    };
    let seg3 = ConeSegment {
        t0: Rat::new(BigInt::from(2), BigInt::from(3)),
        t1: Rat::one(),
        a: g1.scaled(&three),
        d: g1.scaled(&-&three),
    };
    LoopFamily::new(RationalVector::zeros(n), vec![seg1, seg2, seg3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::{rat, rat_int};
    use crate::simplicial::{integrate2, s_chain, AffineCoeff};
    use proptest::prelude::*;

    fn e(n: usize, i: usize) -> RationalVector {
        RationalVector::unit(n, i)
    }

    #[test]
    fn standard_family_shape() {
        let fam = standard_triangle_family(&e(3, 1), &e(3, 2)).unwrap();
        // s = 0 collapses to the apex.
        let center = fam.loop_at(&Rat::zero());
        assert!(center.is_closed());
        assert!(center
            .breakpoints()
            .iter()
            .all(|(_, x)| *x == RationalVector::zeros(3)));
        // s = 1 visits 0, g1+g2, g1.
        let bdry = fam.boundary_loop();
        assert!(bdry.is_closed());
        assert_eq!(bdry.value(&rat(1, 3)), &e(3, 1) + &e(3, 2));
        assert_eq!(bdry.value(&rat(2, 3)), e(3, 1));
    }

    /// Frozen hand value: constant B = dx1 ^ dx2 over the standard family of
    /// (e1, e2) has holonomy 1/2, matching the simplicial surface integral.
    #[test]
    fn holonomy_frozen_constant_form() {
        let mut b = AffineForm2::new(3);
        b.add_term(1, 2, AffineCoeff::constant_only(3, rat_int(1)));
        let fam = standard_triangle_family(&e(3, 1), &e(3, 2)).unwrap();
        assert_eq!(holonomy(&b, &fam).unwrap(), rat(1, 2));
        let surf = integrate2(&b, &s_chain(&e(3, 1), &e(3, 2))).unwrap();
        assert_eq!(surf, rat(1, 2));
        // Reversal negates.
        assert_eq!(holonomy(&b, &fam.reversed()).unwrap(), rat(-1, 2));
    }

    #[test]
    fn family_validation_rejects_bad_data() {
        let n = 2;
        let seg = |t0: Rat, t1: Rat, a: RationalVector, d: RationalVector| ConeSegment {
            t0,
            t1,
            a,
            d,
        };
        // Gap in the partition.
        let bad = LoopFamily::new(
            RationalVector::zeros(n),
            vec![
                seg(rat_int(0), rat(1, 3), RationalVector::zeros(n), e(n, 1)),
                seg(
                    rat(1, 2),
                    rat_int(1),
                    &RationalVector::zeros(n) + &e(n, 1).scaled(&rat(1, 3)),
                    -&e(n, 1).scaled(&rat(1, 3)),
                ),
            ],
        );
        assert!(bad.is_err());
        // Open boundary loop.
        let open = LoopFamily::new(
            RationalVector::zeros(n),
            vec![seg(rat_int(0), rat_int(1), RationalVector::zeros(n), e(n, 1))],
        );
        assert!(open.is_err());
        // Discontinuity at a junction.
        let jump = LoopFamily::new(
            RationalVector::zeros(n),
            vec![
                seg(rat_int(0), rat(1, 2), RationalVector::zeros(n), e(n, 1)),
                seg(rat(1, 2), rat_int(1), e(n, 2), -&e(n, 2)),
            ],
        );
        assert!(jump.is_err());
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = RationalVector> {
        proptest::collection::vec((-3i64..=3, 1i64..=2).prop_map(|(p, q)| rat(p, q)), n)
            .prop_map(RationalVector)
    }

    fn arb_form(n: usize) -> impl Strategy<Value = AffineForm2> {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|j| ((j + 1)..=n).map(move |k| (j, k)))
            .collect();
        let coeff = (
            (-3i64..=3, 1i64..=2).prop_map(|(p, q)| rat(p, q)),
            proptest::collection::vec((-2i64..=2).prop_map(rat_int), n),
        );
        proptest::collection::vec(coeff, pairs.len()).prop_map(move |cs| {
            let mut b = AffineForm2::new(n);
            for ((j, k), (c0, lin)) in pairs.iter().zip(cs) {
                b.add_term(
                    *j,
                    *k,
                    AffineCoeff {
                        constant: c0,
                        linear: lin,
                    },
                );
            }
            b
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        /// Independent routes: exact double integral over the cone family vs
        /// the barycentric simplicial surface integral.
        #[test]
        fn holonomy_equals_simplicial_surface_integral(
            b in arb_form(3), g1 in arb_vec(3), g2 in arb_vec(3)
        ) {
            let fam = standard_triangle_family(&g1, &g2).unwrap();
            let hol = holonomy(&b, &fam).unwrap();
            let surf = integrate2(&b, &s_chain(&g1, &g2)).unwrap();
            prop_assert_eq!(hol.clone(), surf);
            prop_assert_eq!(holonomy(&b, &fam.reversed()).unwrap(), -hol);
        }
    }
}
