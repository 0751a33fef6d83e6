//! Small helpers for dense polynomials over a word-sized prime field,
//! shared by the fingerprint iteration and the fast content checks.

use crate::ntt::{addmod, invmod, mulmod, submod};
use num_bigint::BigInt;
use num_integer::Integer;

pub(crate) fn reduce_bigint_poly(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            r.to_u64_digits().1.first().copied().unwrap_or(0)
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while matches!(v.last(), Some(0)) {
        v.pop();
    }
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] = x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] = addmod(out[i], y, p);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let lb_inv = invmod(*b.last().unwrap(), p);
    while r.len() >= b.len() {
        let factor = mulmod(*r.last().unwrap(), lb_inv, p);
        let shift = r.len() - b.len();
        if factor != 0 {
            for (j, &bc) in b.iter().enumerate() {
                r[shift + j] = submod(r[shift + j], mulmod(factor, bc, p), p);
            }
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Monic gcd over F_p.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        if lc != 1 {
            let inv = invmod(lc, p);
            for v in a.iter_mut() {
                *v = mulmod(*v, inv, p);
            }
        }
    }
    a
}

pub(crate) fn div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - b.len() + 1];
    let lb_inv = invmod(*b.last().unwrap(), p);
    for i in (0..q.len()).rev() {
        if r.len() < b.len() + i {
            continue;
        }
        let factor = mulmod(r[b.len() + i - 1], lb_inv, p);
        q[i] = factor;
        if factor != 0 {
            for (j, &bc) in b.iter().enumerate() {
                r[i + j] = submod(r[i + j], mulmod(factor, bc, p), p);
            }
        }
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "exact division");
    q
}
