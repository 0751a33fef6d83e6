//! Reductions of orbit points modulo a large prime, for cycle detection when
//! exact coordinates outgrow any size budget. Height-zero orbits can have
//! doubly-exponential coefficient growth while their degrees stay bounded, so
//! iteration continues on the reduced coordinates.
//!
//! Soundness contract: the fingerprint of a point is a function of the point
//! alone (reduce the content-1 integer representative, strip the mod-p
//! polynomial gcd, scale the first nonzero coordinate monic). Distinct
//! fingerprints under one live prime therefore prove the points distinct;
//! equal fingerprints prove nothing and must be confirmed exactly. A step
//! whose reduced image collapses to zero kills that prime.

use crate::endo::Endomorphism;
use crate::modp;
use crate::ntt::{invmod, mulmod};
use crate::projective::ProjectivePoint;
use num_bigint::BigInt;
use num_traits::One;

/// Canonical reduced point: per-coordinate coefficient vectors over F_p,
/// no common polynomial factor, first nonzero coordinate monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoint {
    coords: Vec<Vec<u64>>,
}

impl FpPoint {
    /// Max coordinate degree; a lower bound for the exact naive height.
    pub fn height_lower_bound(&self) -> usize {
        self.coords
            .iter()
            .map(|c| c.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }
}

/// One prime's view of the dynamical system.
pub struct FpSystem {
    p: u64,
    /// Per form: (exponent vector, coefficient polynomial mod p).
    forms: Vec<Vec<(Vec<u32>, Vec<u64>)>>,
}

impl FpSystem {
    pub fn new(f: &Endomorphism, p: u64) -> Self {
        let forms = f
            .forms()
            .iter()
            .map(|form| {
                form.terms()
                    .map(|(e, c)| (e.clone(), modp::reduce_bigint_poly(&int_coeffs(c), p)))
                    .collect()
            })
            .collect();
        FpSystem { p, forms }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Fingerprint of an exact point.
    pub fn reduce(&self, x: &ProjectivePoint) -> FpPoint {
        let coords: Vec<Vec<u64>> = x
            .integer_coords()
            .iter()
            .map(|c| modp::reduce_bigint_poly(c, self.p))
            .collect();
        debug_assert!(coords.iter().any(|c| !c.is_empty()), "content-1 input");
        normalize(coords, self.p)
    }

    /// One map application in fingerprint space. `None` means the reduced
    /// image vanished (the cancelled exact content is divisible by p) and
    /// this prime is no longer usable for the orbit.
    pub fn step(&self, x: &FpPoint) -> Option<FpPoint> {
        let p = self.p;
        // power cache per coordinate
        let mut powers: Vec<Vec<Vec<u64>>> = x.coords.iter().map(|c| vec![vec![1], c.clone()]).collect();
        let power = |i: usize, e: usize, powers: &mut Vec<Vec<Vec<u64>>>| -> Vec<u64> {
            while powers[i].len() <= e {
                let next = modp::mul(powers[i].last().unwrap(), &powers[i][1], p);
                powers[i].push(next);
            }
            powers[i][e].clone()
        };
        let mut image = Vec::with_capacity(self.forms.len());
        for form in &self.forms {
            let mut acc: Vec<u64> = Vec::new();
            for (exps, coeff) in form {
                let mut term = coeff.clone();
                for (i, &e) in exps.iter().enumerate() {
                    if e > 0 && !term.is_empty() {
                        let pw = power(i, e as usize, &mut powers);
                        term = modp::mul(&term, &pw, p);
                    }
                }
                acc = modp::add(&acc, &term, p);
            }
            image.push(acc);
        }
        if image.iter().all(|c| c.is_empty()) {
            return None;
        }
        Some(normalize(image, self.p))
    }
}

fn int_coeffs(c: &crate::poly::UniPoly) -> Vec<BigInt> {
    // build-normalized forms have integral coefficients
    c.coeffs()
        .iter()
        .map(|q| {
            debug_assert!(q.denom().is_one(), "forms are integer-normalized");
            q.numer().clone()
        })
        .collect()
}

fn normalize(mut coords: Vec<Vec<u64>>, p: u64) -> FpPoint {
    // strip the common polynomial factor
    let mut g: Vec<u64> = Vec::new();
    for c in &coords {
        if c.is_empty() {
            continue;
        }
        g = modp::gcd(&g, c, p);
        if g.len() == 1 {
            break;
        }
    }
    if g.len() > 1 {
        for c in coords.iter_mut() {
            if !c.is_empty() {
                *c = modp::div_exact(c, &g, p);
            }
        }
    }
    // first nonzero coordinate monic
    let lead = coords
        .iter()
        .find(|c| !c.is_empty())
        .map(|c| *c.last().unwrap())
        .expect("nonzero coordinate");
    if lead != 1 {
        let inv = invmod(lead, p);
        for c in coords.iter_mut() {
            for v in c.iter_mut() {
                *v = mulmod(*v, inv, p);
            }
        }
    }
    FpPoint { coords }
}
