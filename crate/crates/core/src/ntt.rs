//! Exact multiplication of integer polynomials by CRT over NTT-friendly primes.
//!
//! Coefficient degrees double per dynamical iterate, so dense products at
//! degrees in the tens of thousands with multi-thousand-bit coefficients must
//! stay cheap. Each product is computed modulo enough 62-bit primes
//! `p = q * 2^22 + 1` and reconstructed with Garner's algorithm.

use num_bigint::{BigInt, BigUint, Sign};
use std::sync::{Mutex, OnceLock};

const NTT_POW: u32 = 22;
const NTT_ORDER: u64 = 1 << NTT_POW;

#[derive(Clone, Copy, Debug)]
pub struct NttPrime {
    pub p: u64,
    /// Element of multiplicative order exactly 2^22.
    pub root: u64,
}

fn prime_cache() -> &'static Mutex<Vec<NttPrime>> {
    static CACHE: OnceLock<Mutex<Vec<NttPrime>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// First `n` primes of the fixed deterministic scan (largest admissible `q`
/// downward), so every call site agrees on the sequence.
pub fn ntt_primes(n: usize) -> Vec<NttPrime> {
    let mut cache = prime_cache().lock().unwrap();
    if cache.len() < n {
        let mut q = match cache.last() {
            Some(last) => (last.p - 1) >> NTT_POW,
            None => (1u64 << (62 - NTT_POW)) - 1,
        };
        while cache.len() < n {
            q -= 1;
            assert!(q > 0, "exhausted NTT prime search space");
            let p = (q << NTT_POW) | 1;
            if !is_prime_u64(p) {
                continue;
            }
            if let Some(root) = order_2_22_element(p) {
                cache.push(NttPrime { p, root });
            }
        }
    }
    cache[..n].to_vec()
}

fn order_2_22_element(p: u64) -> Option<u64> {
    // r = x^((p-1)/2^22) has order dividing 2^22; it is exactly 2^22 iff
    // r^(2^21) != 1.
    for x in 2u64..64 {
        let r = powmod(x, (p - 1) >> NTT_POW, p);
        if r != 1 && powmod(r, NTT_ORDER >> 1, p) != 1 {
            return Some(r);
        }
    }
    None
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b; // p < 2^63, no overflow
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn ntt(a: &mut [u64], prime: NttPrime, invert: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two() && n as u64 <= NTT_ORDER);
    let p = prime.p;
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2usize;
    while len <= n {
        let mut w_len = powmod(prime.root, NTT_ORDER / len as u64, p);
        if invert {
            w_len = invmod(w_len, p);
        }
        for start in (0..n).step_by(len) {
            let mut w = 1u64;
            for i in start..start + len / 2 {
                let u = a[i];
                let v = mulmod(a[i + len / 2], w, p);
                a[i] = addmod(u, v, p);
                a[i + len / 2] = submod(u, v, p);
                w = mulmod(w, w_len, p);
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = invmod(n as u64, p);
        for x in a.iter_mut() {
            *x = mulmod(*x, n_inv, p);
        }
    }
}

fn convolution_mod(a: &[u64], b: &[u64], prime: NttPrime) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let mut fa = vec![0u64; size];
    let mut fb = vec![0u64; size];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    ntt(&mut fa, prime, false);
    ntt(&mut fb, prime, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = mulmod(*x, *y, prime.p);
    }
    ntt(&mut fa, prime, true);
    fa.truncate(out_len);
    fa
}

/// Residues of a signed big integer modulo each prime, reusing one pass over
/// the limb representation.
fn residues(x: &BigInt, primes: &[NttPrime], shifts: &[u64]) -> Vec<u64> {
    let (sign, mag) = (x.sign(), x.magnitude());
    let limbs = mag.to_u64_digits();
    primes
        .iter()
        .zip(shifts)
        .map(|(prime, &shift)| {
            let mut r = 0u64;
            for &limb in limbs.iter().rev() {
                r = addmod(mulmod(r, shift, prime.p), limb % prime.p, prime.p);
            }
            if sign == Sign::Minus && r != 0 {
                prime.p - r
            } else {
                r
            }
        })
        .collect()
}

/// Exact product of two integer coefficient vectors (little-endian by
/// exponent). Inputs need not be normalized; the output has full length
/// `a.len() + b.len() - 1`.
pub fn mul_bigint_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(!a.is_empty() && !b.is_empty());
    let bits_a = a.iter().map(|c| c.magnitude().bits()).max().unwrap_or(0);
    let bits_b = b.iter().map(|c| c.magnitude().bits()).max().unwrap_or(0);
    let n_min = a.len().min(b.len()) as u64;
    // |result coeff| <= min(la,lb) * maxA * maxB; one extra bit for sign room.
    let need_bits = bits_a + bits_b + 64 - n_min.leading_zeros() as u64 + 2;
    let n_primes = (need_bits / 61 + 1) as usize;
    let primes = ntt_primes(n_primes);
    let shifts: Vec<u64> = primes
        .iter()
        .map(|pr| {
            let two32 = (1u64 << 32) % pr.p;
            mulmod(two32, two32, pr.p)
        })
        .collect();

    let res_a: Vec<Vec<u64>> = transpose(a.iter().map(|c| residues(c, &primes, &shifts)), n_primes);
    let res_b: Vec<Vec<u64>> = transpose(b.iter().map(|c| residues(c, &primes, &shifts)), n_primes);

    let out_len = a.len() + b.len() - 1;
    let mut per_prime: Vec<Vec<u64>> = Vec::with_capacity(n_primes);
    for (i, prime) in primes.iter().enumerate() {
        per_prime.push(convolution_mod(&res_a[i], &res_b[i], *prime));
    }

    // Garner: mixed-radix digits with a precomputed inverse table, then a
    // single big-integer Horner assembly per coefficient.
    let inv: Vec<Vec<u64>> = (0..n_primes)
        .map(|i| {
            (0..i)
                .map(|j| invmod(primes[j].p % primes[i].p, primes[i].p))
                .collect()
        })
        .collect();
    let modulus = primes
        .iter()
        .fold(BigUint::from(1u32), |acc, pr| acc * BigUint::from(pr.p));

    let mut out = Vec::with_capacity(out_len);
    let mut digits = vec![0u64; n_primes];
    for idx in 0..out_len {
        for i in 0..n_primes {
            let p = primes[i].p;
            let mut v = per_prime[i][idx] % p;
            for j in 0..i {
                v = mulmod(submod(v, digits[j] % p, p), inv[i][j], p);
            }
            digits[i] = v;
        }
        let mut acc = BigUint::from(digits[n_primes - 1]);
        for j in (0..n_primes - 1).rev() {
            acc = acc * BigUint::from(primes[j].p) + BigUint::from(digits[j]);
        }
        out.push(crate::rational::symmetric_residue(acc, &modulus));
    }
    out
}

fn transpose(rows: impl Iterator<Item = Vec<u64>>, n_primes: usize) -> Vec<Vec<u64>> {
    let mut cols: Vec<Vec<u64>> = vec![Vec::new(); n_primes];
    for row in rows {
        for (i, v) in row.into_iter().enumerate() {
            cols[i].push(v);
        }
    }
    cols
}
