//! The rational function field Q(t): quotients of [`UniPoly`] kept in the
//! unique canonical form with coprime parts and a monic denominator, so
//! structural equality is field equality.

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunc {
    /// Canonicalizes `num/den`. Errors when `den = 0`.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunc {
                num: UniPoly::zero(),
                den: UniPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunc { num, den })
    }

    pub fn zero() -> Self {
        RationalFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunc::from_poly(UniPoly::one())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        RationalFunc::from_poly(UniPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunc::from_poly(UniPoly::from_int(n))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Constant means an element of Q: numerator and denominator both degree 0.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunc::new(self.den.clone(), self.num.clone())
    }

    /// Exact evaluation at a parameter; errors when the denominator vanishes.
    pub fn eval(&self, t0: &Rational) -> Result<Rational> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(Error::PoleAtParameter(crate::rational::format_exact(t0)));
        }
        Ok(self.num.eval(t0) / d)
    }
}

impl Add for &RationalFunc {
    type Output = RationalFunc;
    fn add(self, rhs: &RationalFunc) -> RationalFunc {
        let num = &(self.num() * rhs.den()) + &(rhs.num() * self.den());
        let den = self.den() * rhs.den();
        RationalFunc::new(num, den).expect("denominators are nonzero")
    }
}

impl Sub for &RationalFunc {
    type Output = RationalFunc;
    fn sub(self, rhs: &RationalFunc) -> RationalFunc {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunc {
    type Output = RationalFunc;
    fn mul(self, rhs: &RationalFunc) -> RationalFunc {
        let num = self.num() * rhs.num();
        let den = self.den() * rhs.den();
        RationalFunc::new(num, den).expect("denominators are nonzero")
    }
}

impl Div for &RationalFunc {
    type Output = RationalFunc;
    fn div(self, rhs: &RationalFunc) -> RationalFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        let num = self.num() * rhs.den();
        let den = self.den() * rhs.num();
        RationalFunc::new(num, den).expect("checked nonzero")
    }
}

impl Neg for &RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        RationalFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunc {
            type Output = RationalFunc;
            fn $method(self, rhs: RationalFunc) -> RationalFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        -&self
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", self.num)
        } else {
            format!("{}", self.num)
        };
        write!(f, "{num}/({})", self.den)
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i64};
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn cancels_common_factor() {
        // (t^2 - 1)/(t - 1) = t + 1
        let x = RationalFunc::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(x, RationalFunc::from_poly(p(&[1, 1])));
    }

    #[test]
    fn monic_denominator_scaling() {
        // (2t)/4 = (t/2)/1
        let x = RationalFunc::new(p(&[0, 2]), p(&[4])).unwrap();
        assert!(x.is_poly());
        assert_eq!(x.num(), &p(&[0, 1]).scale(&rat(1, 2)));
    }

    #[test]
    fn zero_over_anything_is_canonical_zero() {
        let x = RationalFunc::new(UniPoly::zero(), p(&[3, 7, 1])).unwrap();
        assert_eq!(x, RationalFunc::zero());
        assert!(x.den().is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunc::new(p(&[1]), UniPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn eval_and_poles() {
        let x = RationalFunc::new(p(&[1, 1]), UniPoly::one()).unwrap();
        assert_eq!(x.eval(&rat_i64(2)).unwrap(), rat_i64(3));

        let pole = RationalFunc::new(p(&[1]), p(&[-1, 1])).unwrap();
        assert_eq!(
            pole.eval(&rat_i64(1)),
            Err(Error::PoleAtParameter("1".into()))
        );

        // (t^2 + t)/(t + 2) at 1 -> 2/3
        let y = RationalFunc::new(p(&[0, 1, 1]), p(&[2, 1])).unwrap();
        assert_eq!(y.eval(&rat_i64(1)).unwrap(), rat(2, 3));
    }

    proptest! {
        #[test]
        fn representation_unique_under_common_factors(
            a in small_poly(), b in small_poly(), c in small_poly()
        ) {
            let (pa, pb, pc) = (
                UniPoly::from_int_coeffs(&a),
                UniPoly::from_int_coeffs(&b),
                UniPoly::from_int_coeffs(&c),
            );
            prop_assume!(!pb.is_zero() && !pc.is_zero());
            let plain = RationalFunc::new(pa.clone(), pb.clone()).unwrap();
            let scaled = RationalFunc::new(&pa * &pc, &pb * &pc).unwrap();
            prop_assert_eq!(plain, scaled);
        }

        #[test]
        fn eval_is_multiplicative(
            a in small_poly(), b in small_poly(), c in small_poly(), d in small_poly(),
            t0 in -5i64..=5
        ) {
            let t0 = rat_i64(t0);
            let (pa, pb) = (UniPoly::from_int_coeffs(&a), UniPoly::from_int_coeffs(&b));
            let (pc, pd) = (UniPoly::from_int_coeffs(&c), UniPoly::from_int_coeffs(&d));
            prop_assume!(!pb.is_zero() && !pd.is_zero());
            let x = RationalFunc::new(pa, pb).unwrap();
            let y = RationalFunc::new(pc, pd).unwrap();
            let prod = &x * &y;
            if let (Ok(vx), Ok(vy), Ok(vp)) = (x.eval(&t0), y.eval(&t0), prod.eval(&t0)) {
                prop_assert_eq!(vx * vy, vp);
            }
        }
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-5i64..=5, 0..5)
    }
}
