//! Dense univariate polynomials over the rationals, written in the parameter
//! `t`. These house the coordinate ring of the base curve: every coefficient
//! that appears anywhere in a map or a point lives here.
//!
//! Invariants: no trailing zero coefficients; the degree of the zero
//! polynomial is `None`, never a sentinel integer.

use crate::error::{Error, Result};
use crate::ntt;
use crate::rational::{bit_size, format_exact, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_int(n: i64) -> Self {
        UniPoly::constant(Rational::from_integer(BigInt::from(n)))
    }

    /// The variable `t`.
    pub fn var() -> Self {
        UniPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn monomial(exp: usize, c: Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        UniPoly { coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> Rational {
        self.coeffs.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    pub fn eval(&self, t0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t0 + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut acc = UniPoly::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Total bit size of all coefficients; drives iteration size caps.
    pub fn bit_size(&self) -> u64 {
        self.coeffs.iter().map(bit_size).sum()
    }

    /// Writes `self = scale * primitive` with `primitive` an integer
    /// polynomial of content 1 and positive leading coefficient.
    /// The zero polynomial returns `([], 0)`.
    pub fn primitive_int(&self) -> (Vec<BigInt>, Rational) {
        if self.is_zero() {
            return (Vec::new(), Rational::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
        (ints, Rational::new(content, den_lcm))
    }

    pub fn from_bigint_coeffs(coeffs: Vec<BigInt>) -> Self {
        UniPoly::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    /// Quotient and remainder with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = divisor.degree().unwrap();
        if self.is_zero() || self.degree().unwrap() < dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let dn = rem.len() - 1;
        let lc_inv = divisor.leading_coeff().recip();
        let mut quot = vec![Rational::zero(); dn - dd + 1];
        for i in (0..quot.len()).rev() {
            let lead = std::mem::replace(&mut rem[i + dd], Rational::zero());
            if lead.is_zero() {
                continue;
            }
            let q = lead * &lc_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate().take(dd) {
                let delta = dc * &q;
                rem[i + j] -= delta;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Exact division; the remainder must vanish.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(
                "exact polynomial division left a remainder".into(),
            ));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return UniPoly::one();
        }
        let (a_int, _) = self.primitive_int();
        let (b_int, _) = other.primitive_int();
        // One good prime showing coprimality settles the common case: the
        // modular gcd degree only overestimates the rational one.
        if let Some(g) = gcd_degree_mod_p(&a_int, &b_int) {
            if g == 0 {
                return UniPoly::one();
            }
        }
        let g = subresultant_gcd_int(a_int, b_int);
        UniPoly::from_bigint_coeffs(g).monic()
    }
}

/// Monic gcd of a family together with the family divided by it.
/// Errors with [`Error::AllZero`] when every entry is zero.
pub fn content_and_primitive(polys: &[UniPoly]) -> Result<(UniPoly, Vec<UniPoly>)> {
    let mut g = UniPoly::zero();
    for p in polys {
        g = g.gcd(p);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return Err(Error::AllZero);
    }
    let parts = polys
        .iter()
        .map(|p| p.div_exact(&g))
        .collect::<Result<Vec<_>>>()?;
    Ok((g, parts))
}

/// Degree of gcd modulo the first prime where both leading coefficients
/// survive reduction; `None` if the probe primes are all bad.
fn gcd_degree_mod_p(a: &[BigInt], b: &[BigInt]) -> Option<usize> {
    for prime in ntt::ntt_primes(4) {
        let p = prime.p;
        let ar = reduce_mod(a, p);
        let br = reduce_mod(b, p);
        if ar.len() == a.len() && br.len() == b.len() {
            return Some(gcd_mod_p_degree(ar, br, p));
        }
    }
    None
}

fn reduce_mod(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            // r in [0, p), fits u64
            r.to_u64_digits().1.first().copied().unwrap_or(0)
        })
        .collect();
    while matches!(out.last(), Some(0)) {
        out.pop();
    }
    out
}

fn gcd_mod_p_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    while !b.is_empty() {
        // a mod b in place
        let lb_inv = ntt::invmod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let factor = ntt::mulmod(*a.last().unwrap(), lb_inv, p);
            let shift = a.len() - b.len();
            if factor != 0 {
                for (j, &bc) in b.iter().enumerate() {
                    let idx = shift + j;
                    a[idx] = ntt::submod(a[idx], ntt::mulmod(factor, bc, p), p);
                }
            }
            a.pop();
            while matches!(a.last(), Some(0)) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn deg(a: &[BigInt]) -> usize {
    a.len() - 1
}

fn trim_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while matches!(v.last(), Some(c) if c.is_zero()) {
        v.pop();
    }
    v
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
        if content.is_one() {
            return v;
        }
    }
    for c in v.iter_mut() {
        *c = &*c / &content;
    }
    v
}

/// `lc(b)^(delta+1) * a mod b` over the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().unwrap().clone();
    let delta = deg(a) - deg(b);
    let mut r = a.to_vec();
    let mut e = delta as i64 + 1;
    while !r.is_empty() && r.len() >= b.len() {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for (i, c) in r.iter_mut().enumerate() {
            *c = &*c * &lb;
            if i >= shift {
                *c -= &lead * &b[i - shift];
            }
        }
        r = trim_int(r);
        e -= 1;
    }
    if e > 0 {
        let f = num_traits::pow::pow(lb, e as usize);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Subresultant polynomial remainder sequence on primitive integer inputs.
fn subresultant_gcd_int(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let (mut a, mut b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return primitive_part(b);
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        a = std::mem::take(&mut b);
        let divisor = &g * num_traits::pow::pow(h.clone(), delta);
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow::pow(g.clone(), delta) / num_traits::pow::pow(h, delta - 1)
        };
    }
}

const NTT_MIN_SHORT: usize = 32;
const NTT_MIN_AREA: usize = 1 << 14;

/// Plain integer-coefficient polynomial arithmetic for the hot evaluation
/// path, where rational normalization overhead is unaffordable.
pub(crate) mod intpoly {
    use super::{NTT_MIN_AREA, NTT_MIN_SHORT};
    use crate::ntt;
    use num_bigint::BigInt;
    use num_traits::Zero;

    pub fn trim(v: &mut Vec<BigInt>) {
        while matches!(v.last(), Some(c) if c.is_zero()) {
            v.pop();
        }
    }

    pub fn add_assign(acc: &mut Vec<BigInt>, rhs: &[BigInt]) {
        if acc.len() < rhs.len() {
            acc.resize(rhs.len(), BigInt::zero());
        }
        for (i, v) in rhs.iter().enumerate() {
            acc[i] += v;
        }
        trim(acc);
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let (la, lb) = (a.len(), b.len());
        if la.min(lb) >= NTT_MIN_SHORT && la * lb >= NTT_MIN_AREA {
            let mut out = ntt::mul_bigint_slices(a, b);
            trim(&mut out);
            return out;
        }
        let mut out = vec![BigInt::zero(); la + lb - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let (la, lb) = (self.coeffs.len(), rhs.coeffs.len());
        if la.min(lb) >= NTT_MIN_SHORT && la * lb >= NTT_MIN_AREA {
            let (ai, ca) = self.primitive_int();
            let (bi, cb) = rhs.primitive_int();
            let prod = ntt::mul_bigint_slices(&ai, &bi);
            return UniPoly::from_bigint_coeffs(prod).scale(&(ca * cb));
        }
        let mut out = vec![Rational::zero(); la + lb - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::from_coeffs(out)
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sep = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            write!(f, "{sep}")?;
            let coeff_part = if mag.is_one() && exp > 0 {
                None
            } else {
                Some(format_exact(&mag))
            };
            match (coeff_part, exp) {
                (Some(s), 0) => write!(f, "{s}")?,
                (Some(s), 1) => write!(f, "{s}*t")?,
                (Some(s), _) => write!(f, "{s}*t^{exp}")?,
                (None, 1) => write!(f, "t")?,
                (None, _) => write!(f, "t^{exp}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(p(&[0, 0, 3]).degree(), Some(2));
    }

    #[test]
    fn gcd_shared_root() {
        // gcd(t^2 - 1, t - 1) = t - 1
        let g = p(&[-1, 0, 1]).gcd(&p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic_argument() {
        let g = p(&[2, 4]).gcd(&UniPoly::zero());
        assert_eq!(g, p(&[1, 2]).scale(&rat(1, 2)));
        assert_eq!(UniPoly::zero().gcd(&UniPoly::zero()), UniPoly::zero());
    }

    #[test]
    fn gcd_removes_integer_content() {
        // gcd(6t + 6, 4t + 4) = t + 1
        let g = p(&[6, 6]).gcd(&p(&[4, 4]));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn content_and_primitive_examples() {
        // (t^2 + t, t) -> gcd t, parts (t + 1, 1)
        let (g, parts) = content_and_primitive(&[p(&[0, 1, 1]), p(&[0, 1])]).unwrap();
        assert_eq!(g, p(&[0, 1]));
        assert_eq!(parts, vec![p(&[1, 1]), p(&[1])]);

        // (3, 5t) -> gcd 1, parts unchanged
        let (g, parts) = content_and_primitive(&[p(&[3]), p(&[0, 5])]).unwrap();
        assert_eq!(g, UniPoly::one());
        assert_eq!(parts, vec![p(&[3]), p(&[0, 5])]);

        assert_eq!(
            content_and_primitive(&[UniPoly::zero(), UniPoly::zero()]),
            Err(Error::AllZero)
        );
    }

    #[test]
    fn coprime_times_common_factor() {
        let (g, parts) =
            content_and_primitive(&[p(&[0, 1]) * p(&[1, 3]), p(&[0, 1]) * p(&[2, 0, 5])]).unwrap();
        assert_eq!(g, p(&[0, 1]));
        assert_eq!(parts, vec![p(&[1, 3]), p(&[2, 0, 5])]);
    }

    #[test]
    fn div_rem_basics() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            UniPoly::one().div_rem(&UniPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn display_matches_literal_grammar() {
        let q = UniPoly::from_coeffs(vec![rat(4, 1), rat(-1, 2), rat(3, 1)]);
        assert_eq!(q.to_string(), "3*t^2 - 1/2*t + 4");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(UniPoly::var().to_string(), "t");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn ntt_path_matches_naive() {
        let a = UniPoly::from_coeffs((0..200).map(|i| rat(i * i - 40, i + 1)).collect());
        let b = UniPoly::from_coeffs((0..150).map(|i| rat(7 - 3 * i, 2 * i + 3)).collect());
        let fast = &a * &b;
        // force naive by multiplying in small blocks
        let mut naive = UniPoly::zero();
        for (i, c) in b.coeffs().iter().enumerate() {
            naive = &naive + &a.scale(c).mul_by_power_of_t(i);
        }
        assert_eq!(fast, naive);
    }

    proptest! {
        #[test]
        fn degree_additivity(a in vec_poly(), b in vec_poly()) {
            let (pa, pb) = (UniPoly::from_int_coeffs(&a), UniPoly::from_int_coeffs(&b));
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            let prod = &pa * &pb;
            prop_assert_eq!(
                prod.degree().unwrap(),
                pa.degree().unwrap() + pb.degree().unwrap()
            );
        }

        #[test]
        fn gcd_divides_both(a in vec_poly(), b in vec_poly()) {
            let (pa, pb) = (UniPoly::from_int_coeffs(&a), UniPoly::from_int_coeffs(&b));
            let g = pa.gcd(&pb);
            if g.is_zero() {
                prop_assert!(pa.is_zero() && pb.is_zero());
            } else {
                prop_assert!(pa.div_rem(&g).unwrap().1.is_zero());
                prop_assert!(pb.div_rem(&g).unwrap().1.is_zero());
            }
        }

        #[test]
        fn gcd_detects_planted_factor(a in vec_poly(), b in vec_poly(), c in vec_poly()) {
            let (pa, pb) = (UniPoly::from_int_coeffs(&a), UniPoly::from_int_coeffs(&b));
            let pc = UniPoly::from_int_coeffs(&c);
            prop_assume!(!pc.is_constant() && !pa.is_zero() && !pb.is_zero());
            let g = (&pa * &pc).gcd(&(&pb * &pc));
            prop_assert!((&pa * &pc).div_rem(&g).unwrap().1.is_zero());
            // planted factor must divide the gcd
            prop_assert!(g.div_rem(&pc.monic()).unwrap().1.is_zero());
        }
    }

    fn vec_poly() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-6i64..=6, 0..6)
    }
}

impl UniPoly {
    /// Multiply by `t^k`.
    pub fn mul_by_power_of_t(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }
}
