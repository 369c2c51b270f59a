//! Polynomial phase cochains on the translation group and their coboundary.
//!
//! A `k`-cochain assigns to `k` group elements `g1..gk` of `Q^n` (and,
//! optionally, a base point `u`) the phase `exp(2*pi*i * E)`, where the
//! exponent `E` is a polynomial of total degree at most three, affine in the
//! base point.  The coboundary is defined once as a list of term
//! specifications and consumed in two ways: symbolically, by substituting
//! linear forms into the exponent polynomial, and pointwise, by evaluating
//! the cochain on shifted arguments.  Identities checked along both routes
//! therefore cannot silently share a mistaken formula.

use super::poly::Poly;
use crate::phase::{AffineTurnExponent, Rat, RationalVector, TurnExponent};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("exponent polynomial uses {found} variables, cochain shape needs {expected}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("exponent total degree {0} exceeds the supported bound 3")]
    DegreeTooHigh(usize),
    #[error("exponent must be affine in the base point (found base degree {0})")]
    BaseDegreeTooHigh(usize),
    #[error("expected {expected} group arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("argument dimension {found} does not match cochain dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cochain carries a base point but none was supplied")]
    BasePointMissing,
    #[error("cochain has no base point dependence to evaluate")]
    NoBasePoint,
    #[error("coboundary arity {0} is outside the supported range 1..=3")]
    UnsupportedArity(usize),
    #[error("family members must share the target's shape")]
    MixedShapes,
}

/// How the translation group acts on base-point functions when forming the
/// coboundary: by shifting the base point, or not at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Translation,
    Trivial,
}

/// A phase cochain `(u; g1..gk) -> exp(2*pi*i * E(u; g1..gk))` with
/// polynomial exponent `E` of total degree at most three, affine in `u`.
///
/// Variable layout of `E`: the `n` base variables first (only when
/// `base_point` is set), then `n` variables for each of the `k` arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExponentCochain {
    n: usize,
    k: usize,
    base_point: bool,
    exponent: Poly,
}

impl PolyExponentCochain {
    pub fn new(
        n: usize,
        k: usize,
        base_point: bool,
        exponent: Poly,
    ) -> Result<Self, CohomologyError> {
        let expected = n * (k + base_point as usize);
        if exponent.nvars() != expected {
            return Err(CohomologyError::VariableCountMismatch {
                expected,
                found: exponent.nvars(),
            });
        }
        let deg = exponent.total_degree();
        if deg > 3 {
            return Err(CohomologyError::DegreeTooHigh(deg));
        }
        if base_point {
            let base_vars: Vec<usize> = (0..n).collect();
            let base_deg = exponent.block_degree(&base_vars);
            if base_deg > 1 {
                return Err(CohomologyError::BaseDegreeTooHigh(base_deg));
            }
        }
        Ok(PolyExponentCochain {
            n,
            k,
            base_point,
            exponent,
        })
    }

    pub fn zero(n: usize, k: usize, base_point: bool) -> Self {
        PolyExponentCochain {
            n,
            k,
            base_point,
            exponent: Poly::zero(n * (k + base_point as usize)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn has_base_point(&self) -> bool {
        self.base_point
    }

    pub fn exponent(&self) -> &Poly {
        &self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.exponent.is_zero()
    }

    /// 0-based variable index of the `i`-th base coordinate (`i < n`).
    pub fn base_var(&self, i: usize) -> usize {
        assert!(self.base_point, "cochain has no base point");
        i
    }

    /// 0-based variable index of coordinate `i` of argument `arg` (1-based).
    pub fn arg_var(&self, arg: usize, i: usize) -> usize {
        assert!(arg >= 1 && arg <= self.k, "argument index out of range");
        self.n * (self.base_point as usize) + (arg - 1) * self.n + i
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        PolyExponentCochain {
            n: self.n,
            k: self.k,
            base_point: self.base_point,
            exponent: self.exponent.scaled(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CohomologyError> {
        if self.n != other.n || self.k != other.k || self.base_point != other.base_point {
            return Err(CohomologyError::MixedShapes);
        }
        Ok(PolyExponentCochain {
            n: self.n,
            k: self.k,
            base_point: self.base_point,
            exponent: &self.exponent + &other.exponent,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.add(&other.scaled(&-Rat::one()))
    }

    fn check_args(
        &self,
        u: Option<&RationalVector>,
        args: &[RationalVector],
    ) -> Result<(), CohomologyError> {
        if args.len() != self.k {
            return Err(CohomologyError::ArityMismatch {
                expected: self.k,
                found: args.len(),
            });
        }
        for a in args {
            if a.dim() != self.n {
                return Err(CohomologyError::DimensionMismatch {
                    expected: self.n,
                    found: a.dim(),
                });
            }
        }
        if self.base_point {
            let u = u.ok_or(CohomologyError::BasePointMissing)?;
            if u.dim() != self.n {
                return Err(CohomologyError::DimensionMismatch {
                    expected: self.n,
                    found: u.dim(),
                });
            }
        }
        Ok(())
    }

    /// Evaluates the exponent mod 1 at a base point and argument tuple.
    pub fn eval(
        &self,
        u: Option<&RationalVector>,
        args: &[RationalVector],
    ) -> Result<TurnExponent, CohomologyError> {
        self.check_args(u, args)?;
        let mut point: Vec<Rat> = Vec::with_capacity(self.exponent.nvars());
        if self.base_point {
            point.extend(u.unwrap().0.iter().cloned());
        }
        for a in args {
            point.extend(a.0.iter().cloned());
        }
        Ok(TurnExponent::new(self.exponent.eval(&point)))
    }

    /// Evaluates on the group arguments only, returning the exponent as an
    /// affine function of the base point.
    pub fn eval_affine(
        &self,
        args: &[RationalVector],
    ) -> Result<AffineTurnExponent, CohomologyError> {
        if !self.base_point {
            return Err(CohomologyError::NoBasePoint);
        }
        self.check_args(Some(&RationalVector::zeros(self.n)), args)?;
        let mut constant = Rat::zero();
        let mut linear = vec![Rat::zero(); self.n];
        for (key, coeff) in self.exponent.terms() {
            // Evaluate the argument variables, keep the (at most one) base
            // variable symbolic.
            let mut value = coeff.clone();
            let mut base_slot: Option<usize> = None;
            for (var, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if var < self.n {
                    debug_assert_eq!(e, 1, "exponent is affine in the base point");
                    base_slot = Some(var);
                } else {
                    let arg = (var - self.n) / self.n;
                    let i = (var - self.n) % self.n;
                    for _ in 0..e {
                        value *= &args[arg].0[i];
                    }
                }
            }
            match base_slot {
                None => constant += value,
                Some(i) => linear[i] += value,
            }
        }
        Ok(AffineTurnExponent::new(constant, RationalVector(linear)))
    }
}

/// How one argument slot of a coboundary term is filled from the target's
/// arguments (1-based indices into `g1..g_{k+1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArgImage {
    Single(usize),
    Merged(usize, usize),
}

/// One term of the coboundary formula: a sign, an optional base-point shift
/// by the named argument, and an image for each source argument slot.
#[derive(Debug, Clone)]
struct CoboundaryTerm {
    sign: i32,
    base_shift: Option<usize>,
    images: Vec<ArgImage>,
}

/// The simplicial coboundary of a `k`-cochain, as term specifications:
///
/// `(dc)(u; g1..g_{k+1}) = c(u+g1; g2..g_{k+1})
///   + sum_{i=1..k} (-1)^i c(u; .., g_i + g_{i+1}, ..)
///   + (-1)^{k+1} c(u; g1..gk)`.
///
/// Under [`Action::Trivial`] the first term does not shift the base point.
fn coboundary_term_specs(k: usize, action: Action) -> Vec<CoboundaryTerm> {
    let mut terms = Vec::with_capacity(k + 2);
    terms.push(CoboundaryTerm {
        sign: 1,
        base_shift: match action {
            Action::Translation => Some(1),
            Action::Trivial => None,
        },
        images: (1..=k).map(|j| ArgImage::Single(j + 1)).collect(),
    });
    for t in 1..=k {
        terms.push(CoboundaryTerm {
            sign: if t % 2 == 0 { 1 } else { -1 },
            base_shift: None,
            images: (1..=k)
                .map(|j| {
                    if j < t {
                        ArgImage::Single(j)
                    } else if j == t {
                        ArgImage::Merged(t, t + 1)
                    } else {
                        ArgImage::Single(j + 1)
                    }
                })
                .collect(),
        });
    }
    terms.push(CoboundaryTerm {
        sign: if (k + 1) % 2 == 0 { 1 } else { -1 },
        base_shift: None,
        images: (1..=k).map(ArgImage::Single).collect(),
    });
    terms
}

/// Symbolic coboundary: a `k`-cochain becomes a `(k+1)`-cochain with the
/// exponent obtained by substituting linear forms per term specification.
pub fn coboundary(
    c: &PolyExponentCochain,
    action: Action,
) -> Result<PolyExponentCochain, CohomologyError> {
    if c.k == 0 || c.k > 3 {
        return Err(CohomologyError::UnsupportedArity(c.k));
    }
    let n = c.n;
    let k = c.k;
    let base = c.base_point;
    let out_vars = n * (k + 1 + base as usize);
    let dst_base = |i: usize| i;
    let dst_arg = |arg: usize, i: usize| n * (base as usize) + (arg - 1) * n + i;

    let mut exponent = Poly::zero(out_vars);
    for term in coboundary_term_specs(k, action) {
        let mut images: Vec<Poly> = Vec::with_capacity(c.exponent.nvars());
        if base {
            for i in 0..n {
                let mut img = Poly::var(out_vars, dst_base(i));
                if let Some(shift_arg) = term.base_shift {
                    img = &img + &Poly::var(out_vars, dst_arg(shift_arg, i));
                }
                images.push(img);
            }
        }
        for j in 1..=k {
            for i in 0..n {
                let img = match term.images[j - 1] {
                    ArgImage::Single(m) => Poly::var(out_vars, dst_arg(m, i)),
                    ArgImage::Merged(m1, m2) => {
                        &Poly::var(out_vars, dst_arg(m1, i)) + &Poly::var(out_vars, dst_arg(m2, i))
                    }
                };
                images.push(img);
            }
        }
        let substituted = c.exponent.substitute(&images);
        let signed = if term.sign < 0 {
            substituted.scaled(&-Rat::one())
        } else {
            substituted
        };
        exponent = &exponent + &signed;
    }
    PolyExponentCochain::new(n, k + 1, base, exponent)
}

/// Pointwise coboundary value: evaluates `(dc)(u; args)` directly as a sum
/// of cochain evaluations, without forming the symbolic coboundary.
pub fn coboundary_value(
    c: &PolyExponentCochain,
    action: Action,
    u: Option<&RationalVector>,
    args: &[RationalVector],
) -> Result<TurnExponent, CohomologyError> {
    if c.k == 0 || c.k > 3 {
        return Err(CohomologyError::UnsupportedArity(c.k));
    }
    if args.len() != c.k + 1 {
        return Err(CohomologyError::ArityMismatch {
            expected: c.k + 1,
            found: args.len(),
        });
    }
    for a in args {
        if a.dim() != c.n {
            return Err(CohomologyError::DimensionMismatch {
                expected: c.n,
                found: a.dim(),
            });
        }
    }
    if c.base_point && u.is_none() {
        return Err(CohomologyError::BasePointMissing);
    }
    let mut total = TurnExponent::zero();
    for term in coboundary_term_specs(c.k, action) {
        let shifted_u = if c.base_point {
            let u = u.unwrap();
            Some(match term.base_shift {
                Some(arg) => u + &args[arg - 1],
                None => u.clone(),
            })
        } else {
            None
        };
        let term_args: Vec<RationalVector> = term
            .images
            .iter()
            .map(|img| match img {
                ArgImage::Single(m) => args[m - 1].clone(),
                ArgImage::Merged(m1, m2) => &args[m1 - 1] + &args[m2 - 1],
            })
            .collect();
        let value = c.eval(shifted_u.as_ref(), &term_args)?;
        let signed = if term.sign < 0 { value.negated() } else { value };
        total = &total + &signed;
    }
    Ok(total)
}

/// Pentagon defect of a 3-cochain at a concrete argument tuple: the value of
/// its coboundary on `(g1, g2, g3, g4)`.  A zero turn exponent means the
/// pentagon identity holds at that tuple.
pub fn pentagon_defect(
    c3: &PolyExponentCochain,
    action: Action,
    u: Option<&RationalVector>,
    g: &[RationalVector; 4],
) -> Result<TurnExponent, CohomologyError> {
    if c3.arity() != 3 {
        return Err(CohomologyError::ArityMismatch {
            expected: 3,
            found: c3.arity(),
        });
    }
    coboundary_value(c3, action, u, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::{rat, rat_int};
    use proptest::prelude::*;

    /// A 1-cochain with base point on Q^1: E(u; g) = u*g/2 + g/3.
    fn sample_1cochain() -> PolyExponentCochain {
        // vars: u (0), g (1)
        let u = Poly::var(2, 0);
        let g = Poly::var(2, 1);
        let e = &(&u * &g).scaled(&rat(1, 2)) + &g.scaled(&rat(1, 3));
        PolyExponentCochain::new(1, 1, true, e).unwrap()
    }

    #[test]
    fn constructor_enforces_shape_and_degree() {
        let quad_u = &Poly::var(2, 0) * &Poly::var(2, 0);
        assert!(matches!(
            PolyExponentCochain::new(1, 1, true, quad_u),
            Err(CohomologyError::BaseDegreeTooHigh(2))
        ));
        let deg4 = {
            let g = Poly::var(1, 0);
            &(&(&g * &g) * &g) * &g
        };
        assert!(matches!(
            PolyExponentCochain::new(1, 1, false, deg4),
            Err(CohomologyError::DegreeTooHigh(4))
        ));
        assert!(matches!(
            PolyExponentCochain::new(2, 1, false, Poly::var(1, 0)),
            Err(CohomologyError::VariableCountMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn coboundary_of_translation_1cochain() {
        // E(u; g) = u*g/2: dE(u; g1, g2) = E(u+g1; g2) - E(u; g1+g2) + E(u; g1)
        //         = (u+g1)g2/2 - u(g1+g2)/2 + u g1/2 = g1 g2 / 2.
        let u = Poly::var(2, 0);
        let g = Poly::var(2, 1);
        let c = PolyExponentCochain::new(1, 1, true, (&u * &g).scaled(&rat(1, 2))).unwrap();
        let dc = coboundary(&c, Action::Translation).unwrap();
        // target vars: u (0), g1 (1), g2 (2)
        let expect = (&Poly::var(3, 1) * &Poly::var(3, 2)).scaled(&rat(1, 2));
        assert_eq!(dc.exponent(), &expect);

        // Under the trivial action the u-dependence survives and the
        // constant-in-u part cancels entirely.
        let dc_triv = coboundary(&c, Action::Trivial).unwrap();
        let expect_triv = {
            let u = Poly::var(3, 0);
            let g1 = Poly::var(3, 1);
            let g2 = Poly::var(3, 2);
            // u g2/2 - u(g1+g2)/2 + u g1/2 = 0
            (&(&(&u * &g2) - &(&u * &(&g1 + &g2))) + &(&u * &g1)).scaled(&rat(1, 2))
        };
        assert!(expect_triv.is_zero());
        assert!(dc_triv.is_zero());
    }

    #[test]
    fn symbolic_and_pointwise_coboundary_agree() {
        let c = sample_1cochain();
        let dc = coboundary(&c, Action::Translation).unwrap();
        let u = RationalVector(vec![rat(1, 5)]);
        let g1 = RationalVector(vec![rat(2, 3)]);
        let g2 = RationalVector(vec![rat(-7, 4)]);
        let symbolic = dc.eval(Some(&u), &[g1.clone(), g2.clone()]).unwrap();
        let pointwise =
            coboundary_value(&c, Action::Translation, Some(&u), &[g1, g2]).unwrap();
        assert_eq!(symbolic, pointwise);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let c = sample_1cochain();
        for action in [Action::Translation, Action::Trivial] {
            let ddc = coboundary(&coboundary(&c, action).unwrap(), action).unwrap();
            assert!(ddc.is_zero(), "dd != 0 under {:?}", action);
        }
        // Also on a 2-cochain without base point.
        let g1x = Poly::var(4, 0);
        let g2y = Poly::var(4, 3);
        let c2 = PolyExponentCochain::new(2, 2, false, (&g1x * &g2y).scaled(&rat(5, 7))).unwrap();
        let ddc2 = coboundary(&coboundary(&c2, Action::Translation).unwrap(), Action::Translation)
            .unwrap();
        assert!(ddc2.is_zero());
    }

    #[test]
    fn eval_affine_matches_eval() {
        let c = sample_1cochain();
        let g = RationalVector(vec![rat(3, 2)]);
        let aff = c.eval_affine(&[g.clone()]).unwrap();
        for uval in [rat_int(0), rat(1, 2), rat(-5, 3)] {
            let u = RationalVector(vec![uval]);
            assert_eq!(aff.eval(&u).unwrap(), c.eval(Some(&u), &[g.clone()]).unwrap());
        }
    }

    fn arb_vec1() -> impl Strategy<Value = RationalVector> {
        (-8i64..=8, 1i64..=5).prop_map(|(p, q)| RationalVector(vec![rat(p, q)]))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn pointwise_dd_vanishes(
            u in arb_vec1(), g1 in arb_vec1(), g2 in arb_vec1(), g3 in arb_vec1()
        ) {
            let c = sample_1cochain();
            let dc = coboundary(&c, Action::Translation).unwrap();
            let v = coboundary_value(&dc, Action::Translation, Some(&u), &[g1, g2, g3]).unwrap();
            prop_assert!(v.is_zero());
        }
    }
}
