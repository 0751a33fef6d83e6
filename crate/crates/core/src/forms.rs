//! Polynomials in the projective coordinates `X0..Xk` with coefficients in
//! Q[t], and the homogeneous forms cut out of them. A degree-d self-map of
//! projective k-space is a tuple of k+1 such forms of common degree.

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Unvalidated polynomial in `X0..Xk` over Q[t]; what the literal parser
/// produces before homogeneity checks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XPoly {
    k: usize,
    terms: BTreeMap<Vec<u32>, UniPoly>,
}

impl XPoly {
    pub fn zero(k: usize) -> Self {
        XPoly {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, c: UniPoly) -> Self {
        let mut x = XPoly::zero(k);
        if !c.is_zero() {
            x.terms.insert(vec![0; k + 1], c);
        }
        x
    }

    /// The coordinate `X_i`.
    pub fn coordinate(k: usize, i: usize) -> Self {
        assert!(i <= k);
        let mut exps = vec![0u32; k + 1];
        exps[i] = 1;
        let mut x = XPoly::zero(k);
        x.terms.insert(exps, UniPoly::one());
        x
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &UniPoly)> {
        self.terms.iter()
    }

    fn insert(&mut self, exps: Vec<u32>, c: UniPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &XPoly) -> XPoly {
        assert_eq!(self.k, rhs.k);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> XPoly {
        XPoly {
            k: self.k,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &XPoly) -> XPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &XPoly) -> XPoly {
        assert_eq!(self.k, rhs.k);
        let mut out = XPoly::zero(self.k);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &UniPoly) -> XPoly {
        if c.is_zero() {
            return XPoly::zero(self.k);
        }
        XPoly {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> XPoly {
        let mut acc = XPoly::constant(self.k, UniPoly::one());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Some(coefficient) when no projective coordinate appears.
    pub fn as_coordinate_free(&self) -> Option<UniPoly> {
        if self.terms.is_empty() {
            return Some(UniPoly::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }
}

/// A homogeneous form of fixed total degree; every stored monomial has total
/// degree exactly `d` and a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousForm {
    k: usize,
    d: usize,
    terms: BTreeMap<Vec<u32>, UniPoly>,
}

impl HomogeneousForm {
    /// Validates homogeneity. `index` labels which coordinate form this is,
    /// for the error message.
    pub fn from_xpoly(x: &XPoly, expected_degree: usize, index: usize) -> Result<Self> {
        for (e, _) in x.terms() {
            if e.iter().map(|&v| v as usize).sum::<usize>() != expected_degree {
                return Err(Error::InhomogeneousInput {
                    index,
                    expected: expected_degree,
                });
            }
        }
        Ok(HomogeneousForm {
            k: x.k(),
            d: expected_degree,
            terms: x.terms().map(|(e, c)| (e.clone(), c.clone())).collect(),
        })
    }

    /// The common total degree of a parsed tuple, if one exists.
    pub fn degree_of_xpoly(x: &XPoly) -> Option<usize> {
        let mut degrees = x.terms().map(|(e, _)| e.iter().map(|&v| v as usize).sum());
        let first: usize = degrees.next()?;
        if degrees.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &UniPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> UniPoly {
        self.terms.get(exps).cloned().unwrap_or_else(UniPoly::zero)
    }

    /// Max t-degree over all coefficients; 0 for the zero form.
    pub fn coeff_height(&self) -> usize {
        self.terms
            .values()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn map_coeffs(&self, f: impl Fn(&UniPoly) -> UniPoly) -> HomogeneousForm {
        HomogeneousForm {
            k: self.k,
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter_map(|(e, c)| {
                    let v = f(c);
                    (!v.is_zero()).then(|| (e.clone(), v))
                })
                .collect(),
        }
    }

    /// Substitutes coordinate values, sharing a table of coordinate powers.
    pub fn eval_with_cache(&self, cache: &mut PowerCache) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = &term * cache.power(i, e as usize);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn eval(&self, coords: &[UniPoly]) -> UniPoly {
        assert_eq!(coords.len(), self.k + 1);
        let mut cache = PowerCache::new(coords.to_vec());
        self.eval_with_cache(&mut cache)
    }

    /// Substitutes whole X-polynomials for the coordinates, e.g. to compose
    /// with a linear change of variables.
    pub fn eval_xpoly(&self, coords: &[XPoly]) -> XPoly {
        assert_eq!(coords.len(), self.k + 1);
        let k_out = coords[0].k();
        let mut acc = XPoly::zero(k_out);
        for (exps, c) in &self.terms {
            let mut term = XPoly::constant(k_out, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&coords[i].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Specializes every coefficient at `t0`, yielding a form over Q.
    pub fn specialize(&self, t0: &Rational) -> QForm {
        QForm {
            k: self.k,
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter_map(|(e, c)| {
                    let v = c.eval(t0);
                    (!v.is_zero()).then(|| (e.clone(), v))
                })
                .collect(),
        }
    }

    /// Coefficients of the dehomogenization setting `X_{unit} = 1`, indexed by
    /// the exponent of the other variable. Only for self-maps of the line.
    pub fn line_chart(&self, unit: usize) -> Vec<UniPoly> {
        assert_eq!(self.k, 1);
        let var = 1 - unit;
        let mut out = vec![UniPoly::zero(); self.d + 1];
        for (e, c) in &self.terms {
            out[e[var] as usize] = c.clone();
        }
        out
    }
}

macro_rules! fmt_form {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.terms.is_empty() {
                return write!(f, "0");
            }
            let mut first = true;
            for (exps, c) in self.terms.iter().rev() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let needs_parens = c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1;
                let monomial: String = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("X{i}")
                        } else {
                            format!("X{i}^{e}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                if monomial.is_empty() {
                    write!(f, "{c}")?;
                } else if c.is_one() {
                    write!(f, "{monomial}")?;
                } else if needs_parens {
                    write!(f, "({c})*{monomial}")?;
                } else {
                    write!(f, "{c}*{monomial}")?;
                }
            }
            Ok(())
        }
    };
}

impl fmt::Display for HomogeneousForm {
    fmt_form!();
}

impl fmt::Display for XPoly {
    fmt_form!();
}

/// Shared table of coordinate powers for repeated form evaluation.
pub struct PowerCache {
    coords: Vec<UniPoly>,
    powers: Vec<Vec<UniPoly>>,
}

impl PowerCache {
    pub fn new(coords: Vec<UniPoly>) -> Self {
        let powers = coords.iter().map(|_| vec![UniPoly::one()]).collect();
        PowerCache { coords, powers }
    }

    fn power(&mut self, i: usize, e: usize) -> &UniPoly {
        while self.powers[i].len() <= e {
            let next = self.powers[i].last().unwrap() * &self.coords[i];
            self.powers[i].push(next);
        }
        &self.powers[i][e]
    }
}

/// A homogeneous form with rational (parameter-free) coefficients, used by
/// specialized-fiber computations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QForm {
    k: usize,
    d: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl QForm {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn eval(&self, coords: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term *= &coords[i];
                }
            }
            acc += term;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> UniPoly {
        UniPoly::var()
    }

    #[test]
    fn homogeneity_check() {
        // X0^2 + t*X1^2 is homogeneous of degree 2
        let x0 = XPoly::coordinate(1, 0);
        let x1 = XPoly::coordinate(1, 1);
        let f = x0.pow(2).add(&x1.pow(2).mul_scalar(&t()));
        assert_eq!(HomogeneousForm::degree_of_xpoly(&f), Some(2));
        assert!(HomogeneousForm::from_xpoly(&f, 2, 0).is_ok());

        // X0^2 + X1^3 is not
        let bad = x0.pow(2).add(&x1.pow(3));
        assert_eq!(HomogeneousForm::degree_of_xpoly(&bad), None);
        assert_eq!(
            HomogeneousForm::from_xpoly(&bad, 2, 1),
            Err(Error::InhomogeneousInput {
                index: 1,
                expected: 2
            })
        );
    }

    #[test]
    fn evaluation_substitutes() {
        // F = X0^2 + t*X1^2 at (0, 1) -> t
        let x0 = XPoly::coordinate(1, 0);
        let x1 = XPoly::coordinate(1, 1);
        let f = HomogeneousForm::from_xpoly(&x0.pow(2).add(&x1.pow(2).mul_scalar(&t())), 2, 0)
            .unwrap();
        let v = f.eval(&[UniPoly::zero(), UniPoly::one()]);
        assert_eq!(v, t());
        assert_eq!(f.coeff_height(), 1);
    }

    #[test]
    fn display_is_readable() {
        let x0 = XPoly::coordinate(1, 0);
        let x1 = XPoly::coordinate(1, 1);
        let f = x0.pow(2).add(&x1.pow(2).mul_scalar(&t()));
        assert_eq!(f.to_string(), "X0^2 + t*X1^2");
        assert_eq!(
            x0.pow(2).mul_scalar(&(t() + UniPoly::one())).to_string(),
            "(t + 1)*X0^2"
        );
    }
}
