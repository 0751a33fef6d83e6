//! Elimination theory for tuples of homogeneous forms: Macaulay matrices,
//! resultant values at specialized parameters, the common-zero rank test, and
//! the cofactor identities that turn a morphism certificate into an effective
//! height-defect constant.
//!
//! Everything here works in the Macaulay degree `rho = (k+1)(d-1) + 1`: a
//! tuple with nonzero resultant spans all of degree rho, and conversely a
//! common zero caps the rank.

use crate::error::{Error, Result};
use crate::forms::{HomogeneousForm, QForm, XPoly};
use crate::poly::UniPoly;
use crate::ratfunc::RationalFunc;
use crate::rational::Rational;
use num_traits::{One, Zero};

/// Exponent vectors of length `k+1` with entries summing to `d`, in
/// descending lexicographic order.
pub fn monomials_of_degree(k: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k + 1];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, rem: u32) {
        if pos == cur.len() - 1 {
            cur[pos] = rem;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rem).rev() {
            cur[pos] = e;
            rec(out, cur, pos + 1, rem - e);
        }
    }
    rec(&mut out, &mut cur, 0, d as u32);
    out
}

pub fn macaulay_degree(k: usize, d: usize) -> usize {
    (k + 1) * (d - 1) + 1
}

/// t-degree bound for the resultant of a tuple with coefficient height `h`:
/// the resultant has degree `d^k` in each form's coefficients.
pub fn resultant_degree_bound(k: usize, d: usize, coeff_height: usize) -> usize {
    (k + 1) * d.pow(k as u32) * coeff_height
}

/// Classical square Macaulay matrix in degree rho: each degree-rho monomial
/// is assigned to the first form whose variable power allows division, and
/// the row holds the coefficients of `(monomial / X_i^d) * F_i`.
fn macaulay_square(forms: &[QForm], rho: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let k = forms.len() - 1;
    let d = forms[0].degree();
    let mons = monomials_of_degree(k, rho);
    let col_of = |e: &[u32]| mons.iter().position(|m| m == e).unwrap();
    let mut rows = Vec::with_capacity(mons.len());
    let mut extraneous = Vec::new();
    for (r, alpha) in mons.iter().enumerate() {
        let heavy: Vec<usize> = (0..=k).filter(|&i| alpha[i] >= d as u32).collect();
        let i = *heavy.first().expect("degree rho monomial has a heavy variable");
        if heavy.len() >= 2 {
            extraneous.push(r);
        }
        let mut shifted = alpha.clone();
        shifted[i] -= d as u32;
        let mut row = vec![Rational::zero(); mons.len()];
        for (e, c) in forms[i].terms() {
            let target: Vec<u32> = e.iter().zip(&shifted).map(|(a, b)| a + b).collect();
            row[col_of(&target)] = c.clone();
        }
        rows.push(row);
    }
    (rows, extraneous)
}

fn det_q(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        let inv = pv.recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let delta = &m[col][c] * &factor;
                m[r][c] -= delta;
            }
        }
    }
    det
}

fn rank_q(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = match (rank..rows).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(pivot, rank);
        let inv = m[rank][col].clone().recip();
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..cols {
                let delta = &m[rank][c] * &factor;
                m[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Whether the specialized tuple has a common projective zero over the
/// algebraic closure: the full multiplication matrix in degree rho fails to
/// span all degree-rho monomials.
pub fn has_common_zero(forms: &[QForm]) -> bool {
    let k = forms.len() - 1;
    let d = forms[0].degree();
    if forms.iter().any(|f| f.is_zero()) {
        return true;
    }
    if d == 0 {
        return false;
    }
    let rho = macaulay_degree(k, d);
    let mons = monomials_of_degree(k, rho);
    let shift_mons = monomials_of_degree(k, rho - d);
    let col_of = |e: &[u32]| mons.iter().position(|m| m == e).unwrap();
    let mut rows = Vec::with_capacity(forms.len() * shift_mons.len());
    for f in forms {
        for m in &shift_mons {
            let mut row = vec![Rational::zero(); mons.len()];
            for (e, c) in f.terms() {
                let target: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                row[col_of(&target)] = c.clone();
            }
            rows.push(row);
        }
    }
    rank_q(rows) < mons.len()
}

/// Macaulay resultant of a specialized tuple via the determinant quotient
/// `det D / det D'`. `None` when the extraneous minor vanishes, in which case
/// the caller should move to another specialization point.
pub fn macaulay_resultant(forms: &[QForm]) -> Option<Rational> {
    let k = forms.len() - 1;
    let d = forms[0].degree();
    if d == 0 {
        // degree-0 forms are constants; resultant conventions degenerate
        return forms.iter().map(|f| f.terms().next().map(|(_, c)| c.clone())).product();
    }
    let rho = macaulay_degree(k, d);
    let (matrix, extraneous) = macaulay_square(forms, rho);
    let minor: Vec<Vec<Rational>> = extraneous
        .iter()
        .map(|&r| {
            extraneous
                .iter()
                .map(|&c| matrix[r][c].clone())
                .collect()
        })
        .collect();
    let det_minor = det_q(minor);
    if det_minor.is_zero() {
        return None;
    }
    Some(det_q(matrix) / det_minor)
}

/// Outcome of the cofactor construction for a certified tuple.
pub struct CofactorData {
    /// Proven constant: `|h(f(x)) - d h(x)| <= defect` for all points.
    pub defect: usize,
    /// Monic polynomial divisible by the coordinate content of every image
    /// tuple `F(x)` of a canonical point `x`.
    pub content_multiple: UniPoly,
}

/// Solves the elimination identities `sum_j g_ij F_j = R * X_i^rho` over
/// Q(t), verifies them exactly, and converts degree counts into the uniform
/// height-defect bound.
pub fn cofactor_defect(forms: &[HomogeneousForm]) -> Result<CofactorData> {
    let k = forms[0].k();
    let d = forms[0].degree();
    let coeff_height = forms.iter().map(|f| f.coeff_height()).max().unwrap_or(0);
    let base_rho = macaulay_degree(k, d);
    let mut last_err = Error::Internal("cofactor solve failed".into());
    for rho in base_rho..=base_rho + 2 {
        match cofactor_attempt(forms, rho) {
            Ok((scaled, multiples)) => {
                // common multiple R = lcm of the per-row multiples
                let mut r_common = UniPoly::one();
                for m in &multiples {
                    let g = r_common.gcd(m);
                    r_common = (&r_common * &m.div_exact(&g)?).monic();
                }
                // degree of the cofactors after rescaling every row to R
                let mut dg = 0usize;
                for (i, row) in scaled.iter().enumerate() {
                    let shift = r_common.degree().unwrap() - multiples[i].degree().unwrap();
                    for g in row {
                        for (_, c) in g.terms() {
                            if let Some(deg) = c.degree() {
                                dg = dg.max(deg + shift);
                            }
                        }
                    }
                }
                return Ok(CofactorData {
                    defect: coeff_height.max(dg),
                    content_multiple: r_common,
                });
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

type ScaledCofactors = (Vec<Vec<XPoly>>, Vec<UniPoly>);

/// One solve at a fixed degree: returns, per target coordinate `i`, the
/// denominator-cleared cofactor forms and the polynomial multiple `R_i` with
/// `sum_j g_ij F_j = R_i * X_i^rho`, verified by exact expansion.
fn cofactor_attempt(forms: &[HomogeneousForm], rho: usize) -> Result<ScaledCofactors> {
    let k = forms[0].k();
    let d = forms[0].degree();
    let mons_rho = monomials_of_degree(k, rho);
    let mons_shift = monomials_of_degree(k, rho - d);
    let col_of = |e: &[u32]| mons_rho.iter().position(|m| m == e);

    // unknowns: (form j, shift monomial m); rows: degree-rho monomials
    let n_unknowns = forms.len() * mons_shift.len();
    let mut matrix = vec![vec![RationalFunc::zero(); n_unknowns]; mons_rho.len()];
    for (j, f) in forms.iter().enumerate() {
        for (mi, m) in mons_shift.iter().enumerate() {
            let colu = j * mons_shift.len() + mi;
            for (e, c) in f.terms() {
                let target: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                let row = col_of(&target).expect("product stays in degree rho");
                matrix[row][colu] = RationalFunc::from_poly(c.clone());
            }
        }
    }
    let mut rhs = vec![vec![RationalFunc::zero(); forms.len()]; mons_rho.len()];
    for i in 0..forms.len() {
        let mut target = vec![0u32; k + 1];
        target[i] = rho as u32;
        let row = col_of(&target).unwrap();
        rhs[row][i] = RationalFunc::one();
    }

    let solutions = solve_linear_ratfunc(matrix, rhs).ok_or(Error::Internal(
        "cofactor linear system is unsolvable at this degree".into(),
    ))?;

    let mut scaled_rows = Vec::with_capacity(forms.len());
    let mut multiples = Vec::with_capacity(forms.len());
    for i in 0..forms.len() {
        // clear denominators across the whole row
        let mut den_lcm = UniPoly::one();
        for j in 0..forms.len() {
            for mi in 0..mons_shift.len() {
                let den = solutions[j * mons_shift.len() + mi][i].den();
                let g = den_lcm.gcd(den);
                den_lcm = &den_lcm * &den.div_exact(&g)?;
            }
        }
        let mut row = Vec::with_capacity(forms.len());
        for j in 0..forms.len() {
            let mut g = XPoly::zero(k);
            for (mi, m) in mons_shift.iter().enumerate() {
                let sol = &solutions[j * mons_shift.len() + mi][i];
                if sol.is_zero() {
                    continue;
                }
                let coeff = sol.num() * &den_lcm.div_exact(sol.den())?;
                let mut mono = XPoly::constant(k, coeff);
                for (v, &e) in m.iter().enumerate() {
                    if e > 0 {
                        mono = mono.mul(&XPoly::coordinate(k, v).pow(e));
                    }
                }
                g = g.add(&mono);
            }
            row.push(g);
        }
        // verify sum_j g_ij F_j = den_lcm * X_i^rho exactly
        let mut lhs = XPoly::zero(k);
        for (j, f) in forms.iter().enumerate() {
            let fx: XPoly = form_to_xpoly(f);
            lhs = lhs.add(&row[j].mul(&fx));
        }
        let expected =
            XPoly::coordinate(k, i).pow(rho as u32).mul_scalar(&den_lcm);
        if lhs != expected {
            return Err(Error::Internal(
                "cofactor identity failed verification".into(),
            ));
        }
        scaled_rows.push(row);
        multiples.push(den_lcm);
    }
    Ok((scaled_rows, multiples))
}

fn form_to_xpoly(f: &HomogeneousForm) -> XPoly {
    let mut x = XPoly::zero(f.k());
    for (e, c) in f.terms() {
        let mut mono = XPoly::constant(f.k(), c.clone());
        for (v, &exp) in e.iter().enumerate() {
            if exp > 0 {
                mono = mono.mul(&XPoly::coordinate(f.k(), v).pow(exp));
            }
        }
        x = x.add(&mono);
    }
    x
}

/// Gauss-Jordan over Q(t) with several right-hand sides; returns one solution
/// per column of `rhs` (free unknowns set to zero), or `None` if any system
/// is inconsistent.
fn solve_linear_ratfunc(
    mut m: Vec<Vec<RationalFunc>>,
    mut rhs: Vec<Vec<RationalFunc>>,
) -> Option<Vec<Vec<RationalFunc>>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let n_rhs = rhs.first().map(|r| r.len()).unwrap_or(0);
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut next_row = 0usize;
    for col in 0..cols {
        let pivot = match (next_row..rows).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(pivot, next_row);
        rhs.swap(pivot, next_row);
        let inv = m[next_row][col].recip().expect("pivot nonzero");
        for c in col..cols {
            m[next_row][c] = &m[next_row][c] * &inv;
        }
        for v in 0..n_rhs {
            rhs[next_row][v] = &rhs[next_row][v] * &inv;
        }
        for r in 0..rows {
            if r == next_row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..cols {
                let delta = &m[next_row][c] * &factor;
                m[r][c] = &m[r][c] - &delta;
            }
            for v in 0..n_rhs {
                let delta = &rhs[next_row][v] * &factor;
                rhs[r][v] = &rhs[r][v] - &delta;
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    // consistency: zero rows of m must have zero rhs
    for r in next_row..rows {
        if rhs[r].iter().any(|v| !v.is_zero()) {
            return None;
        }
    }
    let mut out = vec![vec![RationalFunc::zero(); n_rhs]; cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            for v in 0..n_rhs {
                out[col][v] = rhs[*r][v].clone();
            }
        }
    }
    Some(out)
}
