//! Certified canonical-height intervals and the stability classifier.
//!
//! The naive height of the n-th iterate, scaled by d^{-n}, converges to the
//! canonical height; the defect constant C turns the tail into an exact
//! enclosure of radius C / (d^n (d-1)). Classification iterates the orbit,
//! detects exact recurrences, and certifies positivity the moment an iterate
//! height clears the threshold C / (d-1).

use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::fingerprint::{FpPoint, FpSystem};
use crate::ntt;
use crate::projective::ProjectivePoint;
use crate::rational::{format_exact, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;

/// Exact enclosure `[lo, hi]` of the canonical height of a point, computed
/// from `n_used` iterates with defect constant `defect_used`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub n_used: usize,
    pub defect_used: usize,
}

impl HeightInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn intersects(&self, other: &HeightInterval) -> bool {
        self.lo.clone().max(other.lo.clone()) <= self.hi.clone().min(other.hi.clone())
    }

    pub fn is_subset_of(&self, other: &HeightInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// The enclosure of `m * hhat` obtained by scaling both endpoints.
    pub fn scaled(&self, m: usize) -> HeightInterval {
        let factor = Rational::from_integer(BigInt::from(m));
        HeightInterval {
            lo: &self.lo * &factor,
            hi: &self.hi * &factor,
            n_used: self.n_used,
            defect_used: self.defect_used,
        }
    }
}

impl Serialize for HeightInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HeightInterval", 4)?;
        st.serialize_field("lo", &format_exact(&self.lo))?;
        st.serialize_field("hi", &format_exact(&self.hi))?;
        st.serialize_field("n_used", &self.n_used)?;
        st.serialize_field("defect_used", &self.defect_used)?;
        st.end()
    }
}

/// Outcome of classification within an iteration budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The orbit revisits itself: `f^(tail+period)(x) = f^tail(x)` exactly,
    /// with both values minimal.
    Preperiodic { tail: usize, period: usize },
    /// `lower` is a certified positive lower bound for the canonical height,
    /// obtained at iterate `witness_n`.
    PositiveCertified { lower: Rational, witness_n: usize },
    /// Neither resolved within the budget; carries the tightest certified
    /// enclosure computed along the way.
    Undecided {
        n_max: usize,
        interval: HeightInterval,
    },
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Preperiodic { tail, period } => {
                let mut st = s.serialize_struct("Verdict", 3)?;
                st.serialize_field("kind", "preperiodic")?;
                st.serialize_field("tail", tail)?;
                st.serialize_field("period", period)?;
                st.end()
            }
            Verdict::PositiveCertified { lower, witness_n } => {
                let mut st = s.serialize_struct("Verdict", 3)?;
                st.serialize_field("kind", "positive_certified")?;
                st.serialize_field("lower", &format_exact(lower))?;
                st.serialize_field("witness_n", witness_n)?;
                st.end()
            }
            Verdict::Undecided { n_max, interval } => {
                let mut st = s.serialize_struct("Verdict", 3)?;
                st.serialize_field("kind", "undecided")?;
                st.serialize_field("n_max", n_max)?;
                st.serialize_field("interval", interval)?;
                st.end()
            }
        }
    }
}

/// Memoized orbit prefix of one point; iterate degrees double per step, so
/// interval requests at increasing n reuse everything already computed.
pub struct Orbit<'a> {
    f: &'a Endomorphism,
    points: Vec<ProjectivePoint>,
}

impl<'a> Orbit<'a> {
    pub fn new(f: &'a Endomorphism, x: ProjectivePoint) -> Result<Self> {
        if x.k() != f.k() {
            return Err(Error::DimensionMismatch {
                expected: f.k(),
                got: x.k(),
            });
        }
        Ok(Orbit {
            f,
            points: vec![x],
        })
    }

    pub fn point(&mut self, n: usize) -> Result<&ProjectivePoint> {
        while self.points.len() <= n {
            let next = self.f.evaluate(self.points.last().unwrap())?;
            self.points.push(next);
        }
        Ok(&self.points[n])
    }

    pub fn height(&mut self, n: usize) -> Result<usize> {
        Ok(self.point(n)?.naive_height())
    }

    /// Exact enclosure of the canonical height from the first n iterates.
    pub fn interval(&mut self, n: usize) -> Result<HeightInterval> {
        let h = self.height(n)?;
        Ok(interval_from_height(self.f, h, n))
    }
}

/// `[max(0, c - r), c + r]` with center `c = h / d^n` and radius
/// `r = C / (d^n (d-1))`.
fn interval_from_height(f: &Endomorphism, h: usize, n: usize) -> HeightInterval {
    let d = f.degree();
    let c_over = Rational::from_integer(BigInt::from(f.height_defect_bound()));
    let dn = Rational::from_integer(BigInt::from(d).pow(n as u32));
    let center = Rational::from_integer(BigInt::from(h)) / &dn;
    let radius = c_over / (&dn * Rational::from_integer(BigInt::from(d - 1)));
    let lo_raw = &center - &radius;
    HeightInterval {
        lo: if lo_raw < Rational::zero() {
            Rational::zero()
        } else {
            lo_raw
        },
        hi: &center + &radius,
        n_used: n,
        defect_used: f.height_defect_bound(),
    }
}

/// Certified enclosure of the canonical height of `x` after `n >= 1` iterates.
pub fn canonical_height_interval(
    f: &Endomorphism,
    x: &ProjectivePoint,
    n: usize,
) -> Result<HeightInterval> {
    Orbit::new(f, x.clone())?.interval(n)
}

/// The pair `(I(x, n), I(f(x), n))` for functional-equation checks; shares
/// one orbit prefix.
pub fn functional_gap_data(
    f: &Endomorphism,
    x: &ProjectivePoint,
    n: usize,
) -> Result<(HeightInterval, HeightInterval)> {
    let mut orbit = Orbit::new(f, x.clone())?;
    let h_x = orbit.height(n)?;
    let h_fx = orbit.height(n + 1)?;
    Ok((
        interval_from_height(f, h_x, n),
        interval_from_height(f, h_fx, n),
    ))
}

/// Exact point size (bits) beyond which classification switches from exact
/// iteration to modular fingerprints for cycle detection.
const EXACT_SIZE_CAP_BITS: u64 = 1 << 16;
/// Number of simultaneously tracked fingerprint primes.
const FP_PRIMES: usize = 3;
/// Prime pool available before giving up on fingerprint re-seeding.
const FP_POOL: usize = 12;

/// Classifies a point within an iteration budget.
///
/// Returns `Preperiodic` on the first exact revisit (minimal tail and
/// period), `PositiveCertified` at the first iterate whose naive height
/// clears `C / (d-1)`, and `Undecided` otherwise. Height-zero orbits whose
/// coordinates outgrow the exact size cap are iterated as modular
/// fingerprints: recurrences found there are confirmed on exact points
/// before being reported, so an unconfirmable candidate degrades to
/// `Undecided`, never to a wrong verdict.
pub fn classify(f: &Endomorphism, x: &ProjectivePoint, budget: usize) -> Result<Verdict> {
    if budget < 1 {
        return Err(Error::Internal("budget must be at least 1".into()));
    }
    let d = f.degree();
    let c = f.height_defect_bound();
    // h > C/(d-1) as exact integers: h (d-1) > C
    let above_threshold = |h: usize| h * (d - 1) > c;
    let lower_bound = |h: usize, n: usize| -> Rational {
        let tau = Rational::new(BigInt::from(c), BigInt::from(d - 1));
        let dn = Rational::from_integer(BigInt::from(d).pow(n as u32));
        (Rational::from_integer(BigInt::from(h)) - tau) / dn
    };

    let mut seen: HashMap<ProjectivePoint, usize> = HashMap::new();
    let mut points: Vec<ProjectivePoint> = Vec::new();
    let mut current = x.clone();
    let mut last_exact_height = 0usize;
    let mut cap_hit_at: Option<usize> = None;

    for n in 0..=budget {
        if n > 0 {
            current = f.evaluate(&points[n - 1])?;
        }
        if let Some(&m) = seen.get(&current) {
            return Ok(Verdict::Preperiodic {
                tail: m,
                period: n - m,
            });
        }
        let h = current.naive_height();
        if above_threshold(h) {
            return Ok(Verdict::PositiveCertified {
                lower: lower_bound(h, n),
                witness_n: n,
            });
        }
        last_exact_height = h;
        seen.insert(current.clone(), n);
        points.push(current.clone());
        if current.bit_size() > EXACT_SIZE_CAP_BITS && n < budget {
            cap_hit_at = Some(n);
            break;
        }
    }

    let last_exact = points.len() - 1;
    if cap_hit_at.is_none() {
        // budget exhausted in exact mode
        return Ok(Verdict::Undecided {
            n_max: budget,
            interval: interval_from_height(f, last_exact_height, budget.min(last_exact)),
        });
    }

    // Fingerprint continuation. Once a point is constant every later iterate
    // is constant, so the exact height is known to stay zero and the final
    // interval may legitimately use n = budget.
    let constant_tail = points[last_exact].is_constant();
    match fingerprint_scan(f, &points, last_exact, budget)? {
        FpOutcome::Positive { h, n } => Ok(Verdict::PositiveCertified {
            lower: lower_bound(h, n),
            witness_n: n,
        }),
        FpOutcome::NoCycle | FpOutcome::Exhausted => {
            let interval = if constant_tail {
                interval_from_height(f, 0, budget)
            } else {
                interval_from_height(f, last_exact_height, last_exact)
            };
            Ok(Verdict::Undecided {
                n_max: budget,
                interval,
            })
        }
    }
}

enum FpOutcome {
    /// Fingerprint degree cleared the threshold; a lower bound for the exact
    /// height, hence still a sound certificate.
    Positive { h: usize, n: usize },
    NoCycle,
    /// Every prime went bad; cycle detection abandoned.
    Exhausted,
}

/// Continues the orbit in fingerprint space once exact points outgrow the
/// size cap. Recurrences among post-cap points cannot be confirmed exactly,
/// so this only watches for height growth; the caller reports `Undecided`
/// when nothing fires.
fn fingerprint_scan(
    f: &Endomorphism,
    exact_prefix: &[ProjectivePoint],
    last_exact: usize,
    budget: usize,
) -> Result<FpOutcome> {
    let d = f.degree();
    let c = f.height_defect_bound();
    let above_threshold = |h: usize| h * (d - 1) > c;
    let pool: Vec<u64> = ntt::ntt_primes(FP_POOL).iter().map(|p| p.p).collect();
    let mut next_prime = 0usize;

    // (system, reduced orbit so far); a track covers indices 0..len
    let mut members: Vec<(FpSystem, Vec<FpPoint>)> = Vec::new();
    let seed = |sys: &FpSystem| -> Vec<FpPoint> {
        exact_prefix.iter().map(|x| sys.reduce(x)).collect()
    };
    while members.len() < FP_PRIMES && next_prime < pool.len() {
        let sys = FpSystem::new(f, pool[next_prime]);
        next_prime += 1;
        let track = seed(&sys);
        members.push((sys, track));
    }

    for n in last_exact + 1..=budget {
        members.retain_mut(|(sys, track)| {
            while track.len() <= n {
                match sys.step(track.last().unwrap()) {
                    Some(fp) => track.push(fp),
                    None => return false,
                }
            }
            true
        });
        while members.is_empty() && next_prime < pool.len() {
            let sys = FpSystem::new(f, pool[next_prime]);
            next_prime += 1;
            let mut track = seed(&sys);
            let mut alive = true;
            while track.len() <= n {
                match sys.step(track.last().unwrap()) {
                    Some(fp) => track.push(fp),
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                members.push((sys, track));
            }
        }
        if members.is_empty() {
            return Ok(FpOutcome::Exhausted);
        }
        let h_p = members
            .iter()
            .map(|(_, t)| t[n].height_lower_bound())
            .max()
            .unwrap_or(0);
        if above_threshold(h_p) {
            return Ok(FpOutcome::Positive { h: h_p, n });
        }
    }
    Ok(FpOutcome::NoCycle)
}

/// Proof that the first `budget + 1` orbit points are pairwise distinct, via
/// a separating prime per pair: inequality of reduced points under any live
/// prime separates exactly. `Ok(true)` is a proof; `Ok(false)` means some
/// pair could not be separated (it may be equal).
pub fn orbit_points_pairwise_distinct(
    f: &Endomorphism,
    x: &ProjectivePoint,
    budget: usize,
) -> Result<bool> {
    if x.k() != f.k() {
        return Err(Error::DimensionMismatch {
            expected: f.k(),
            got: x.k(),
        });
    }
    // exact orbit where affordable, for the fallback comparisons
    let mut exact: Vec<Option<ProjectivePoint>> = vec![Some(x.clone())];
    for n in 1..=budget {
        let next = match &exact[n - 1] {
            Some(prev) if prev.bit_size() <= EXACT_SIZE_CAP_BITS => Some(f.evaluate(prev)?),
            _ => None,
        };
        exact.push(next);
    }
    let mut separated = vec![vec![false; budget + 1]; budget + 1];
    let all_separated = |sep: &Vec<Vec<bool>>| {
        (0..=budget).all(|i| (i + 1..=budget).all(|j| sep[i][j]))
    };
    for prime in ntt::ntt_primes(FP_POOL) {
        let sys = FpSystem::new(f, prime.p);
        let mut track = vec![sys.reduce(x)];
        let mut alive = true;
        for _ in 1..=budget {
            match sys.step(track.last().unwrap()) {
                Some(fp) => track.push(fp),
                None => {
                    alive = false;
                    break;
                }
            }
        }
        if !alive {
            continue;
        }
        for i in 0..=budget {
            for j in i + 1..=budget {
                if track[i] != track[j] {
                    separated[i][j] = true;
                }
            }
        }
        if all_separated(&separated) {
            return Ok(true);
        }
    }
    for i in 0..=budget {
        for j in i + 1..=budget {
            if separated[i][j] {
                continue;
            }
            match (&exact[i], &exact[j]) {
                (Some(a), Some(b)) if a != b => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::endo_build;
    use crate::forms::HomogeneousForm;
    use crate::parse::{parse_unipoly, parse_xpoly};
    use crate::poly::UniPoly;
    use crate::rational::{rat, rat_i64};

    fn build(k: usize, d: usize, lits: &[&str]) -> Endomorphism {
        let forms = lits
            .iter()
            .enumerate()
            .map(|(i, s)| {
                HomogeneousForm::from_xpoly(&parse_xpoly(s, k).unwrap(), d, i).unwrap()
            })
            .collect::<Vec<_>>();
        endo_build(forms).unwrap()
    }

    fn pt(coords: &[&str]) -> ProjectivePoint {
        ProjectivePoint::from_polys(coords.iter().map(|s| parse_unipoly(s).unwrap()).collect())
            .unwrap()
    }

    fn quadratic_family() -> Endomorphism {
        build(1, 2, &["X0^2 + t*X1^2", "X1^2"])
    }

    fn power_map() -> Endomorphism {
        build(1, 2, &["X0^2", "X1^2"])
    }

    #[test]
    fn interval_centers_on_half_for_critical_orbit() {
        // orbit degrees are 2^(n-1), so every interval centers on 1/2
        let f = quadratic_family();
        let x = pt(&["0", "1"]);
        let c = f.height_defect_bound();
        for n in 1..=6 {
            let iv = canonical_height_interval(&f, &x, n).unwrap();
            assert!(iv.contains(&rat(1, 2)), "n = {n}: {iv:?}");
            let dn = BigInt::from(2).pow(n as u32);
            let r = Rational::new(BigInt::from(c), dn);
            assert_eq!(iv.width(), &r + &r);
        }
    }

    #[test]
    fn power_map_interval_is_exact_at_height_one() {
        // x = [t, 1]: h(f^n x) = 2^n exactly, defect 0, interval [1, 1]
        let f = power_map();
        let iv = canonical_height_interval(&f, &pt(&["t", "1"]), 5).unwrap();
        assert_eq!(iv.lo, rat_i64(1));
        assert_eq!(iv.hi, rat_i64(1));
    }

    #[test]
    fn constant_orbit_interval_contains_zero() {
        let f = power_map();
        let iv = canonical_height_interval(&f, &pt(&["2", "1"]), 4).unwrap();
        assert!(iv.contains(&Rational::zero()));
        assert_eq!(iv.lo, Rational::zero());
    }

    #[test]
    fn interval_nesting_is_exact() {
        let f = quadratic_family();
        for x in [pt(&["0", "1"]), pt(&["t", "1"]), pt(&["2", "1"]), pt(&["1", "0"])] {
            let mut orbit = Orbit::new(&f, x).unwrap();
            let mut prev = orbit.interval(1).unwrap();
            for n in 2..=10 {
                let cur = orbit.interval(n).unwrap();
                assert!(cur.is_subset_of(&prev), "n = {n}");
                prev = cur;
            }
        }
    }

    #[test]
    fn functional_equation_at_interval_level() {
        let f = quadratic_family();
        for x in [pt(&["0", "1"]), pt(&["t", "1"]), pt(&["3", "1"])] {
            for n in 1..=6 {
                let (ix, ifx) = functional_gap_data(&f, &x, n).unwrap();
                assert!(ix.scaled(f.degree()).intersects(&ifx));
            }
        }
    }

    #[test]
    fn classify_fixed_point() {
        let f = power_map();
        assert_eq!(
            classify(&f, &pt(&["1", "1"]), 10).unwrap(),
            Verdict::Preperiodic { tail: 0, period: 1 }
        );
        // -1 -> 1 -> 1: tail 1, period 1
        assert_eq!(
            classify(&f, &pt(&["1", "-1"]), 10).unwrap(),
            Verdict::Preperiodic { tail: 1, period: 1 }
        );
    }

    #[test]
    fn classify_certifies_critical_orbit() {
        // with C = 1 the threshold is 1 and h(f^2 x) = 2 crosses it
        let f = quadratic_family();
        let v = classify(&f, &pt(&["0", "1"]), 10).unwrap();
        assert_eq!(f.height_defect_bound(), 1);
        assert_eq!(
            v,
            Verdict::PositiveCertified {
                lower: rat(1, 4),
                witness_n: 2
            }
        );
    }

    #[test]
    fn classify_undecided_on_wandering_constant() {
        // 2 -> 4 -> 16 -> ...: height zero but never recurrent
        let f = power_map();
        match classify(&f, &pt(&["2", "1"]), 50).unwrap() {
            Verdict::Undecided { n_max, interval } => {
                assert_eq!(n_max, 50);
                assert!(interval.contains(&Rational::zero()));
                assert_eq!(interval.hi, Rational::zero()); // defect 0
            }
            other => panic!("expected undecided, got {other:?}"),
        }
        assert!(orbit_points_pairwise_distinct(&f, &pt(&["2", "1"]), 50).unwrap());
    }

    #[test]
    fn verdict_lower_bounds_stay_below_later_uppers() {
        let f = quadratic_family();
        for x in [pt(&["0", "1"]), pt(&["t", "1"]), pt(&["2", "1"])] {
            if let Verdict::PositiveCertified { lower, .. } =
                classify(&f, &x, 10).unwrap()
            {
                let mut orbit = Orbit::new(&f, x).unwrap();
                for n in 1..=8 {
                    let iv = orbit.interval(n).unwrap();
                    assert!(lower <= iv.hi, "lower {lower} vs hi {} at n={n}", iv.hi);
                }
            }
        }
    }

    #[test]
    fn constant_tail_interval_reaches_full_budget() {
        // a conjugated power map has positive defect but still wanders on
        // constants; the constant-tail rule must report the interval at the
        // full budget, not at the size cap
        let m = crate::endo::Mobius::from_polys([
            UniPoly::one(),
            UniPoly::one(),
            UniPoly::zero(),
            UniPoly::one(),
        ])
        .unwrap();
        let g = m.conjugate(&power_map()).unwrap();
        match classify(&g, &pt(&["4", "1"]), 40).unwrap() {
            Verdict::Undecided { n_max, interval } => {
                assert_eq!(n_max, 40);
                assert_eq!(interval.n_used, 40);
                assert!(interval.contains(&Rational::zero()));
            }
            other => panic!("expected undecided, got {other:?}"),
        }
    }
}
