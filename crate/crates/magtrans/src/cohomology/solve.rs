//! Coboundary solving: expresses a target cochain as the coboundary of a
//! rational combination of family members, either exactly or modulo
//! torus-trivial characters.
//!
//! Exact mode compares exponent polynomials coefficient by coefficient.
//! Torus mode asks only that the difference be invisible on the torus: for
//! every integer argument tuple the leftover exponent must be an integer
//! constant plus an integer-coefficient linear function of the base point.
//! Integrality of a rational polynomial on all integer points is decided
//! through its binomial-basis coordinates (iterated forward differences), and
//! the resulting congruence system is solved by a rational left-kernel
//! computation followed by an integer linear solve.

use super::cochain::{coboundary, Action, CohomologyError, PolyExponentCochain};
use super::poly::{binomial_coords, Poly};
use crate::phase::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Which notion of cochain equality the solver targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityMode {
    /// Equality of exponent polynomials.
    Exact,
    /// Equality of the induced phase functions on the torus, i.e. up to an
    /// exponent that is integer-valued (with integer base-point slopes) on
    /// every integer argument tuple.
    Torus,
}

/// Result of a coboundary solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Coefficients `lambda_j` with `d(sum_j lambda_j E_j) = target` in the
    /// requested mode, in family order.
    Solution { coeffs: Vec<Rat> },
    NoSolution,
}

/// Solves `d(sum_j lambda_j family[j]) = target` for rational `lambda`.
///
/// Family members must be `k`-cochains of the same shape with
/// `k + 1 = target.arity()`.  In torus mode the group arguments are taken to
/// range over the integer lattice.
pub fn cobound_solve(
    target: &PolyExponentCochain,
    family: &[PolyExponentCochain],
    action: Action,
    mode: EqualityMode,
) -> Result<SolveOutcome, CohomologyError> {
    if target.arity() == 0 {
        return Err(CohomologyError::UnsupportedArity(0));
    }
    let mut images: Vec<PolyExponentCochain> = Vec::with_capacity(family.len());
    for e in family {
        if e.n() != target.n()
            || e.has_base_point() != target.has_base_point()
            || e.arity() + 1 != target.arity()
        {
            return Err(CohomologyError::MixedShapes);
        }
        images.push(coboundary(e, action)?);
    }
    match mode {
        EqualityMode::Exact => Ok(solve_exact(target, &images)),
        EqualityMode::Torus => Ok(solve_torus(target, &images)),
    }
}

/// Exact mode: match every monomial coefficient.
fn solve_exact(target: &PolyExponentCochain, images: &[PolyExponentCochain]) -> SolveOutcome {
    let mut keys: BTreeSet<Vec<u8>> = BTreeSet::new();
    for im in images {
        keys.extend(im.exponent().terms().map(|(k, _)| k.clone()));
    }
    keys.extend(target.exponent().terms().map(|(k, _)| k.clone()));

    let coeff_of = |p: &Poly, key: &Vec<u8>| -> Rat {
        p.terms()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rat::zero)
    };

    let rows: Vec<Vec<Rat>> = keys
        .iter()
        .map(|key| images.iter().map(|im| coeff_of(im.exponent(), key)).collect())
        .collect();
    let rhs: Vec<Rat> = keys.iter().map(|key| coeff_of(target.exponent(), key)).collect();

    match gauss_solve(&rows, &rhs, images.len()) {
        Some(coeffs) => SolveOutcome::Solution { coeffs },
        None => SolveOutcome::NoSolution,
    }
}

/// Coordinate vector of a cochain exponent for torus-mode comparison: the
/// binomial coordinates over the argument variables of the base-free part
/// and of each base-variable coefficient, tagged by base slot.
fn torus_coords(c: &PolyExponentCochain) -> Vec<((usize, Vec<u8>), Rat)> {
    let n = c.n();
    let base = c.has_base_point();
    let nv = c.exponent().nvars();
    let ubound = if base { n } else { 0 };
    let gvars: Vec<usize> = (ubound..nv).collect();

    // Split E = f_0 + sum_i u_i f_i (exponents are affine in the base).
    let mut parts: Vec<Poly> = vec![Poly::zero(nv); ubound + 1];
    for (key, coeff) in c.exponent().terms() {
        let uslot = (0..ubound).find(|&i| key[i] > 0);
        match uslot {
            None => parts[0].add_term(key.clone(), coeff.clone()),
            Some(i) => {
                let mut stripped = key.clone();
                stripped[i] = 0;
                parts[i + 1].add_term(stripped, coeff.clone());
            }
        }
    }

    let mut out = Vec::new();
    for (slot, part) in parts.iter().enumerate() {
        for (d, v) in binomial_coords(part, &gvars) {
            out.push(((slot, d), v));
        }
    }
    out
}

/// Torus mode: solve `A lambda = c (mod Z)` row-wise over the active
/// binomial coordinates.
fn solve_torus(target: &PolyExponentCochain, images: &[PolyExponentCochain]) -> SolveOutcome {
    let target_coords = torus_coords(target);
    let image_coords: Vec<Vec<((usize, Vec<u8>), Rat)>> =
        images.iter().map(torus_coords).collect();

    // A coordinate can be ignored when it is integral everywhere it occurs
    // only if lambda = 0 works; in general collect the full active row set.
    let mut row_keys: BTreeSet<(usize, Vec<u8>)> = BTreeSet::new();
    for (key, _) in &target_coords {
        row_keys.insert(key.clone());
    }
    for ic in &image_coords {
        for (key, _) in ic {
            row_keys.insert(key.clone());
        }
    }
    let row_keys: Vec<(usize, Vec<u8>)> = row_keys.into_iter().collect();
    let lookup = |coords: &[((usize, Vec<u8>), Rat)], key: &(usize, Vec<u8>)| -> Rat {
        coords
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rat::zero)
    };

    let c: Vec<Rat> = row_keys.iter().map(|k| lookup(&target_coords, k)).collect();

    // Shortcut: lambda = 0 works when the target is already torus-trivial.
    if c.iter().all(Rat::is_integer) {
        return SolveOutcome::Solution {
            coeffs: vec![Rat::zero(); images.len()],
        };
    }

    let a: Vec<Vec<Rat>> = row_keys
        .iter()
        .map(|key| image_coords.iter().map(|ic| lookup(ic, key)).collect())
        .collect();

    // Solve A lambda = c + z with z integral: z must satisfy N z = -N c for
    // a left-kernel basis N of A, and any such z makes the system
    // consistent.
    let n_basis = left_kernel(&a, images.len());
    let z = if n_basis.is_empty() {
        vec![BigInt::zero(); row_keys.len()]
    } else {
        // Scale each equation to integer coefficients.
        let mut m_rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_basis.len());
        let mut b_vals: Vec<BigInt> = Vec::with_capacity(n_basis.len());
        for y in &n_basis {
            let rhs: Rat = -y
                .iter()
                .zip(&c)
                .map(|(yi, ci)| yi * ci)
                .fold(Rat::zero(), |acc, t| acc + t);
            let mut scale = rhs.denom().clone();
            for yi in y {
                scale = scale.lcm(yi.denom());
            }
            let scale_rat = Rat::from_integer(scale);
            m_rows.push(
                y.iter()
                    .map(|yi| (yi * &scale_rat).to_integer())
                    .collect(),
            );
            b_vals.push((rhs * scale_rat).to_integer());
        }
        match integer_solve(m_rows, b_vals) {
            Some(z) => z,
            None => return SolveOutcome::NoSolution,
        }
    };

    let rhs: Vec<Rat> = c
        .iter()
        .zip(&z)
        .map(|(ci, zi)| ci + Rat::from_integer(zi.clone()))
        .collect();
    match gauss_solve(&a, &rhs, images.len()) {
        Some(coeffs) => SolveOutcome::Solution { coeffs },
        None => {
            // By construction c + z lies in the column space of A.
            unreachable!("integer shift left an inconsistent rational system")
        }
    }
}

/// Gaussian elimination with deterministic pivoting (first nonzero entry in
/// column order); free variables are set to zero.  Returns `None` when the
/// system is inconsistent.
pub(crate) fn gauss_solve(a: &[Vec<Rat>], b: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let nrows = a.len();
    let mut m: Vec<Vec<Rat>> = (0..nrows)
        .map(|r| {
            let mut row = a[r].clone();
            row.push(b[r].clone());
            row
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = Rat::one() / m[row][col].clone();
        for j in col..=ncols {
            m[row][j] = &m[row][j] * &inv;
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=ncols {
                    let delta = &factor * &m[row][j];
                    m[r][j] = &m[r][j] - &delta;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    // Inconsistency: a zero row with nonzero right-hand side.
    for r in row..nrows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[r][ncols].clone();
    }
    Some(x)
}

/// Basis of the left kernel `{ y : y^T A = 0 }` of the matrix with rows `a`.
pub(crate) fn left_kernel(a: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    // Left kernel of A = right kernel of A^T.
    let nrows = a.len();
    let at: Vec<Vec<Rat>> = (0..ncols)
        .map(|c| (0..nrows).map(|r| a[r][c].clone()).collect())
        .collect();
    right_kernel(&at, nrows)
}

/// Basis of `{ x : M x = 0 }` via reduced row echelon form.
pub(crate) fn right_kernel(m: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let nrows = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = Rat::one() / a[row][col].clone();
        for j in col..ncols {
            a[row][j] = &a[row][j] * &inv;
        }
        for r in 0..nrows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in col..ncols {
                    let delta = &factor * &a[row][j];
                    a[r][j] = &a[r][j] - &delta;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for col in 0..ncols {
            if let Some(pr) = pivot_of_col[col] {
                v[col] = -a[pr][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `M z = b` over the integers by unimodular column reduction.
/// Returns any solution, or `None` when no integer solution exists.
pub(crate) fn integer_solve(mut m: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> Option<Vec<BigInt>> {
    let nrows = m.len();
    let ncols = if nrows > 0 { m[0].len() } else { 0 };
    if ncols == 0 {
        return if b.iter().all(Zero::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    // v tracks the accumulated column operations: m_current = m_orig * v.
    let mut v: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            let mut row = vec![BigInt::zero(); ncols];
            row[i] = BigInt::one();
            row
        })
        .collect();

    let col_swap = |m: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    // col_j -= q * col_i
    let col_axpy = |m: &mut Vec<Vec<BigInt>>,
                    v: &mut Vec<Vec<BigInt>>,
                    j: usize,
                    i: usize,
                    q: &BigInt| {
        for row in m.iter_mut() {
            let delta = q * &row[i];
            row[j] -= delta;
        }
        for row in v.iter_mut() {
            let delta = q * &row[i];
            row[j] -= delta;
        }
    };

    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; nrows];
    let mut pc = 0usize;
    for r in 0..nrows {
        if pc >= ncols {
            break;
        }
        loop {
            // Pick the smallest nonzero entry in the active columns as pivot.
            let mut best: Option<usize> = None;
            for j in pc..ncols {
                if !m[r][j].is_zero()
                    && best.is_none_or(|bj: usize| m[r][j].abs() < m[r][bj].abs())
                {
                    best = Some(j);
                }
            }
            let Some(bj) = best else {
                break;
            };
            if bj != pc {
                col_swap(&mut m, &mut v, bj, pc);
            }
            let mut clean = true;
            for j in (pc + 1)..ncols {
                if !m[r][j].is_zero() {
                    let q = &m[r][j] / &m[r][pc];
                    if !q.is_zero() {
                        col_axpy(&mut m, &mut v, j, pc, &q);
                    }
                    if !m[r][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if !m[r][pc].is_zero() {
            pivot_col_of_row[r] = Some(pc);
            pc += 1;
        }
    }

    // Forward substitution in the reduced system.
    let mut w: Vec<BigInt> = vec![BigInt::zero(); ncols];
    let mut known: Vec<bool> = vec![false; ncols];
    for r in 0..nrows {
        let mut acc = b[r].clone();
        for j in 0..ncols {
            if known[j] && !m[r][j].is_zero() {
                acc -= &m[r][j] * &w[j];
            }
        }
        match pivot_col_of_row[r] {
            Some(p) => {
                let (q, rem) = acc.div_rem(&m[r][p]);
                if !rem.is_zero() {
                    return None;
                }
                w[p] = q;
                known[p] = true;
            }
            None => {
                if !acc.is_zero() {
                    return None;
                }
            }
        }
    }
    // z = V w.
    let z: Vec<BigInt> = (0..ncols)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..ncols {
                if !v[i][j].is_zero() {
                    acc += &v[i][j] * &w[j];
                }
            }
            acc
        })
        .collect();
    Some(z)
}
