//! Sparse multivariate polynomials over the rationals.
//!
//! These carry the exponents of polynomial phase cochains.  Degrees stay
//! tiny (at most three), so a `BTreeMap` keyed by exponent vectors keeps the
//! arithmetic simple, exact, and deterministic.

use crate::phase::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in `nvars` variables, stored as a map from exponent vectors
/// (one `u8` power per variable) to nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut key = vec![0u8; nvars];
        key[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(key, Rat::one());
        p
    }

    /// A linear form `sum c_i x_i`.
    pub fn linear_form(nvars: usize, coeffs: &[(usize, Rat)]) -> Self {
        let mut p = Poly::zero(nvars);
        for (i, c) in coeffs {
            assert!(*i < nvars, "variable index out of range");
            let mut key = vec![0u8; nvars];
            key[*i] = 1;
            p.add_term(key, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rat)> {
        self.terms.iter()
    }

    /// Adds `coeff * x^key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: Vec<u8>, coeff: Rat) {
        assert_eq!(key.len(), self.nvars, "exponent vector length mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|k| k.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Largest power of `x_i` appearing.
    pub fn degree_in(&self, i: usize) -> usize {
        self.terms.keys().map(|k| k[i] as usize).max().unwrap_or(0)
    }

    /// Total degree counted over the variable block `vars` only.
    pub fn block_degree(&self, vars: &[usize]) -> usize {
        self.terms
            .keys()
            .map(|k| vars.iter().map(|&i| k[i] as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "evaluation point length mismatch");
        let mut total = Rat::zero();
        for (key, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in key.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            total += term;
        }
        total
    }

    /// Substitutes `x_i := images[i]`; all images must share a variable
    /// count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let out_vars = images
            .first()
            .map(|p| p.nvars)
            .unwrap_or(0);
        assert!(
            images.iter().all(|p| p.nvars == out_vars),
            "images must live in a common variable set"
        );
        let mut out = Poly::zero(out_vars);
        for (key, coeff) in &self.terms {
            let mut term = Poly::constant(out_vars, coeff.clone());
            for (i, &e) in key.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &images[i];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Substitutes `x_i := x_i + a`, leaving the other variables fixed.
    pub fn shift_var(&self, i: usize, a: &Rat) -> Poly {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|j| {
                if j == i {
                    &Poly::var(self.nvars, j) + &Poly::constant(self.nvars, a.clone())
                } else {
                    Poly::var(self.nvars, j)
                }
            })
            .collect();
        self.substitute(&images)
    }

    /// Sets `x_i := value` for every `i` in `vars`, keeping the variable set.
    pub fn set_vars(&self, vars: &[usize], value: &Rat) -> Poly {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|j| {
                if vars.contains(&j) {
                    Poly::constant(self.nvars, value.clone())
                } else {
                    Poly::var(self.nvars, j)
                }
            })
            .collect();
        self.substitute(&images)
    }

    /// Forward difference in variable `i`: `f(.., x_i + 1, ..) - f`.
    pub fn finite_difference(&self, i: usize) -> Poly {
        &self.shift_var(i, &Rat::one()) - self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scaled(&-Rat::one())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scaled(&-Rat::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let key: Vec<u8> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_term(key, va * vb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", coeff)?;
            for (i, &e) in key.iter().enumerate() {
                if e == 1 {
                    write!(f, "*x{}", i)?;
                } else if e > 1 {
                    write!(f, "*x{}^{}", i, e)?;
                }
            }
        }
        Ok(())
    }
}

/// Coordinates of `f` in the binomial basis over the variable block `vars`
/// (all other variables must be absent from `f`).
///
/// Writing `f = sum_d coord(d) * prod_a C(x_a, d_a)` with `C` the binomial
/// coefficient polynomial, the coordinate at multi-index `d` equals the
/// iterated forward difference `(Delta^d f)` evaluated at zero.  `f` takes
/// integer values on all integer points exactly when every coordinate is an
/// integer, which is what the torus-mode coboundary solver tests.
pub fn binomial_coords(f: &Poly, vars: &[usize]) -> BTreeMap<Vec<u8>, Rat> {
    for (key, _) in f.terms() {
        for (i, &e) in key.iter().enumerate() {
            assert!(
                e == 0 || vars.contains(&i),
                "polynomial involves a variable outside the listed block"
            );
        }
    }
    let mut out = BTreeMap::new();
    let mut d = vec![0u8; vars.len()];
    collect_coords(f, vars, 0, &mut d, &mut out);
    out
}

fn collect_coords(
    f: &Poly,
    vars: &[usize],
    from: usize,
    d: &mut Vec<u8>,
    out: &mut BTreeMap<Vec<u8>, Rat>,
) {
    if f.is_zero() {
        return;
    }
    if from == vars.len() {
        let zeros = vec![Rat::zero(); f.nvars()];
        let value = f.eval(&zeros);
        if !value.is_zero() {
            out.insert(d.clone(), value);
        }
        return;
    }
    // Degree 0 in this variable, then successive forward differences.
    let mut current = f.clone();
    let mut depth = 0u8;
    loop {
        d[from] = depth;
        collect_coords(&current.set_vars(&[vars[from]], &Rat::zero()), vars, from + 1, d, out);
        current = current.finite_difference(vars[from]);
        if current.is_zero() {
            break;
        }
        depth += 1;
        assert!(depth as usize <= f.degree_in(vars[from]), "difference depth overflow");
    }
    d[from] = 0;
}
