//! Points of projective k-space over Q(t) in canonical coordinates: coprime
//! polynomial entries whose first nonzero coordinate has leading coefficient
//! one. Canonical form makes point equality plain structural equality, which
//! is what orbit cycle detection relies on.

use crate::error::{Error, Result};
use crate::poly::{content_and_primitive, UniPoly};
use crate::ratfunc::RationalFunc;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<UniPoly>,
}

impl ProjectivePoint {
    /// Canonicalizes homogeneous coordinates given as rational functions:
    /// clears denominators, removes the polynomial content, scales the first
    /// nonzero coordinate monic. Idempotent on canonical input.
    pub fn from_ratfuncs(raw: &[RationalFunc]) -> Result<Self> {
        if raw.iter().all(|c| c.is_zero()) {
            return Err(Error::NotAPoint);
        }
        let mut den_lcm = UniPoly::one();
        for c in raw {
            if c.is_zero() {
                continue;
            }
            let g = den_lcm.gcd(c.den());
            den_lcm = &den_lcm * &c.den().div_exact(&g)?;
        }
        let polys: Vec<UniPoly> = raw
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Ok(UniPoly::zero())
                } else {
                    Ok(c.num() * &den_lcm.div_exact(c.den())?)
                }
            })
            .collect::<Result<_>>()?;
        Self::from_polys(polys)
    }

    /// Canonicalizes polynomial coordinates.
    pub fn from_polys(raw: Vec<UniPoly>) -> Result<Self> {
        let (_, mut parts) = content_and_primitive(&raw).map_err(|e| match e {
            Error::AllZero => Error::NotAPoint,
            other => other,
        })?;
        Self::scale_first_monic(&mut parts);
        Ok(ProjectivePoint { coords: parts })
    }

    /// Canonicalization when a multiple of the coordinate content is already
    /// known, so the content gcd runs on small polynomials regardless of
    /// coordinate degree.
    pub(crate) fn from_polys_content_divides(
        raw: Vec<UniPoly>,
        content_multiple: &UniPoly,
    ) -> Result<Self> {
        if raw.iter().all(|c| c.is_zero()) {
            return Err(Error::NotAPoint);
        }
        let mut w = content_multiple.monic();
        for c in &raw {
            if w.is_one() {
                break;
            }
            if c.is_zero() {
                continue;
            }
            let r = c.div_rem(&w)?.1;
            w = w.gcd(&r);
        }
        let mut parts = if w.is_one() {
            raw
        } else {
            raw.iter()
                .map(|c| c.div_exact(&w))
                .collect::<Result<Vec<_>>>()?
        };
        Self::scale_first_monic(&mut parts);
        Ok(ProjectivePoint { coords: parts })
    }

    fn scale_first_monic(parts: &mut [UniPoly]) {
        let lead = parts
            .iter()
            .find(|c| !c.is_zero())
            .expect("not all zero")
            .leading_coeff();
        if !lead.is_one() {
            let inv = lead.recip();
            for c in parts.iter_mut() {
                *c = c.scale(&inv);
            }
        }
    }

    pub fn k(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[UniPoly] {
        &self.coords
    }

    /// Max coordinate degree in canonical form; 0 exactly for constant points.
    pub fn naive_height(&self) -> usize {
        self.coords
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .expect("canonical point has a nonzero coordinate")
    }

    pub fn is_constant(&self) -> bool {
        self.naive_height() == 0
    }

    /// Exact coordinates of the fiber point at `t0`; never all zero because
    /// the canonical coordinates are coprime.
    pub fn specialize(&self, t0: &Rational) -> Vec<Rational> {
        let vals: Vec<Rational> = self.coords.iter().map(|c| c.eval(t0)).collect();
        debug_assert!(vals.iter().any(|v| !v.is_zero()));
        vals
    }

    /// Point equality with a dimension check.
    pub fn same_point(&self, other: &ProjectivePoint) -> Result<bool> {
        if self.k() != other.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                got: other.k(),
            });
        }
        Ok(self == other)
    }

    pub fn bit_size(&self) -> u64 {
        self.coords.iter().map(|c| c.bit_size()).sum()
    }

    /// Integer-coefficient representative with overall content 1 and positive
    /// leading coefficient on the first nonzero coordinate; this is the form
    /// reductions modulo a prime start from.
    pub fn integer_coords(&self) -> Vec<Vec<BigInt>> {
        let mut den_lcm = BigInt::one();
        for c in &self.coords {
            for q in c.coeffs() {
                den_lcm = den_lcm.lcm(q.denom());
            }
        }
        let mut ints: Vec<Vec<BigInt>> = self
            .coords
            .iter()
            .map(|c| {
                c.coeffs()
                    .iter()
                    .map(|q| q.numer() * (&den_lcm / q.denom()))
                    .collect()
            })
            .collect();
        let mut content = BigInt::zero();
        'outer: for c in &ints {
            for x in c {
                content = content.gcd(x);
                if content.is_one() {
                    break 'outer;
                }
            }
        }
        let first_lead = ints
            .iter()
            .find(|c| !c.is_empty())
            .and_then(|c| c.last())
            .expect("nonzero coordinate");
        if first_lead.is_negative() {
            content = -content;
        }
        if !content.is_one() {
            for c in ints.iter_mut() {
                for x in c.iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
        ints
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    /// Canonicalizes integer coordinates already known to be free of any
    /// common polynomial factor: only the monic scaling of the first nonzero
    /// coordinate remains.
    pub(crate) fn from_content_free_ints(ints: Vec<Vec<BigInt>>) -> Result<Self> {
        let lead = ints
            .iter()
            .find(|c| !c.is_empty())
            .and_then(|c| c.last())
            .cloned()
            .ok_or(Error::NotAPoint)?;
        let coords = ints
            .into_iter()
            .map(|c| {
                UniPoly::from_coeffs(
                    c.into_iter()
                        .map(|v| Rational::new(v, lead.clone()))
                        .collect(),
                )
            })
            .collect();
        Ok(ProjectivePoint { coords })
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "\"{c}\"")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectivePoint({self})")
    }
}
