//! Endomorphisms of projective k-space over Q(t): a tuple of k+1 homogeneous
//! forms of common degree d >= 2, certified to be a morphism on the generic
//! fiber by a nonvanishing specialized resultant, and carrying a proven
//! height-defect constant.

use crate::error::{Error, Result};
use crate::forms::{HomogeneousForm, XPoly};
use crate::modp;
use crate::ntt;
use crate::poly::{intpoly, UniPoly};
use crate::projective::ProjectivePoint;
use crate::ratfunc::RationalFunc;
use crate::rational::{rat_i64, Rational};
use crate::resultant;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Witness that the tuple has nonzero Macaulay resultant over Q(t): the
/// resultant specializes to `value != 0` at the parameter `t0`, and a
/// rational function of t-degree at most `res_degree_bound` that vanishes at
/// `res_degree_bound + 1` points would be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantCertificate {
    pub t0: Rational,
    pub value: Rational,
    pub res_degree_bound: usize,
}

#[derive(Clone)]
pub struct Endomorphism {
    k: usize,
    d: usize,
    forms: Vec<HomogeneousForm>,
    coeff_height: usize,
    certificate: ResultantCertificate,
    defect_bound: usize,
    content_multiple: UniPoly,
    /// Forms with coefficients as raw integer vectors, for the evaluation
    /// fast path (the build normalization makes all coefficients integral).
    int_forms: Vec<Vec<(Vec<u32>, Vec<BigInt>)>>,
    /// Primitive integer image of `content_multiple`, for modular content
    /// checks.
    content_multiple_int: Vec<BigInt>,
}

/// The deterministic specialization sequence 1, -1, 2, -2, ...
pub fn param_sequence() -> impl Iterator<Item = Rational> {
    (1i64..).flat_map(|n| [rat_i64(n), rat_i64(-n)])
}

/// Builds and fully certifies an endomorphism from its coordinate forms:
/// normalizes the tuple, proves it is a morphism, and computes the height
/// defect. Fails with `NotAMorphism` when the forms share a projective zero
/// over the closure of Q(t).
pub fn endo_build(forms: Vec<HomogeneousForm>) -> Result<Endomorphism> {
    if forms.is_empty() {
        return Err(Error::NotAPoint);
    }
    let k = forms[0].k();
    if forms.len() != k + 1 {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: forms.len().saturating_sub(1),
        });
    }
    let d = forms[0].degree();
    for (i, f) in forms.iter().enumerate() {
        if f.k() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: f.k(),
            });
        }
        if f.degree() != d {
            return Err(Error::InhomogeneousInput {
                index: i,
                expected: d,
            });
        }
    }
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }

    let forms = normalize_tuple(forms)?;
    let certificate = morphism_check(&forms)?;
    let coeff_height = forms.iter().map(|f| f.coeff_height()).max().unwrap_or(0);
    let cof = resultant::cofactor_defect(&forms)?;
    let int_forms = forms
        .iter()
        .map(|f| {
            f.terms()
                .map(|(e, c)| {
                    let ints: Vec<BigInt> = c
                        .coeffs()
                        .iter()
                        .map(|q| {
                            debug_assert!(q.denom().is_one());
                            q.numer().clone()
                        })
                        .collect();
                    (e.clone(), ints)
                })
                .collect()
        })
        .collect();
    let (content_multiple_int, _) = cof.content_multiple.primitive_int();
    Ok(Endomorphism {
        k,
        d,
        forms,
        coeff_height,
        certificate,
        defect_bound: cof.defect,
        content_multiple: cof.content_multiple,
        int_forms,
        content_multiple_int,
    })
}

/// Divides the coefficient tuple by its polynomial gcd and scales it to
/// integer coefficients of overall content 1, first nonzero coefficient
/// positive. The map of projective space is unchanged.
fn normalize_tuple(forms: Vec<HomogeneousForm>) -> Result<Vec<HomogeneousForm>> {
    let mut g = UniPoly::zero();
    'gcd: for f in &forms {
        for (_, c) in f.terms() {
            g = g.gcd(c);
            if g.is_one() {
                break 'gcd;
            }
        }
    }
    if g.is_zero() {
        return Err(Error::NotAMorphism);
    }
    let forms: Vec<HomogeneousForm> = forms
        .iter()
        .map(|f| {
            Ok(f.map_coeffs(|c| {
                c.div_exact(&g).expect("gcd divides every coefficient")
            }))
        })
        .collect::<Result<_>>()?;

    // integer scaling across the whole tuple
    let mut den_lcm = BigInt::one();
    for f in &forms {
        for (_, c) in f.terms() {
            for q in c.coeffs() {
                den_lcm = den_lcm.lcm(q.denom());
            }
        }
    }
    let mut content = BigInt::zero();
    let mut first_sign: Option<bool> = None;
    'content: for f in &forms {
        for (_, c) in f.terms() {
            for q in c.coeffs() {
                if q.is_zero() {
                    continue;
                }
                let int = q.numer() * (&den_lcm / q.denom());
                if first_sign.is_none() {
                    first_sign = Some(int.is_negative());
                }
                content = content.gcd(&int);
                if content.is_one() {
                    break 'content;
                }
            }
        }
    }
    if first_sign == Some(true) {
        content = -content;
    }
    let scale = Rational::new(den_lcm, content);
    Ok(forms.iter().map(|f| f.map_coeffs(|c| c.scale(&scale))).collect())
}

/// Certifies that the tuple is a morphism on the generic fiber, or proves it
/// is not. A nonzero specialized resultant at one parameter witnesses
/// nonvanishing over Q(t); a zero at `res_degree_bound + 1` distinct
/// parameters forces the resultant to vanish identically.
pub fn morphism_check(forms: &[HomogeneousForm]) -> Result<ResultantCertificate> {
    let k = forms[0].k();
    let d = forms[0].degree();
    let coeff_height = forms.iter().map(|f| f.coeff_height()).max().unwrap_or(0);
    let bound = resultant::resultant_degree_bound(k, d, coeff_height);
    let mut witness: Option<Rational> = None;
    for t0 in param_sequence().take(bound + 1) {
        let specialized: Vec<_> = forms.iter().map(|f| f.specialize(&t0)).collect();
        if !resultant::has_common_zero(&specialized) {
            witness = Some(t0);
            break;
        }
    }
    let Some(_) = witness else {
        return Err(Error::NotAMorphism);
    };
    // a resultant value is wanted for the certificate; the extraneous minor
    // can degenerate at special parameters, so keep scanning if needed
    for t0 in param_sequence().take(4 * bound + 16) {
        let specialized: Vec<_> = forms.iter().map(|f| f.specialize(&t0)).collect();
        if resultant::has_common_zero(&specialized) {
            continue;
        }
        if let Some(value) = resultant::macaulay_resultant(&specialized) {
            debug_assert!(!value.is_zero());
            return Ok(ResultantCertificate {
                t0,
                value,
                res_degree_bound: bound,
            });
        }
    }
    Err(Error::Internal(
        "no specialization admits the Macaulay determinant quotient".into(),
    ))
}

impl Endomorphism {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn forms(&self) -> &[HomogeneousForm] {
        &self.forms
    }

    /// Max t-degree among all form coefficients.
    pub fn coeff_height(&self) -> usize {
        self.coeff_height
    }

    pub fn certificate(&self) -> &ResultantCertificate {
        &self.certificate
    }

    /// The proven constant C with `|h(f(x)) - d h(x)| <= C` for all points.
    pub fn height_defect_bound(&self) -> usize {
        self.defect_bound
    }

    /// Applies the map to a point; the result is canonical and independent of
    /// the representative. Runs on integer representatives throughout and
    /// converts to the canonical rational form once at the end.
    pub fn evaluate(&self, x: &ProjectivePoint) -> Result<ProjectivePoint> {
        if x.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: x.k(),
            });
        }
        let coords = x.integer_coords();
        let mut powers: Vec<Vec<Vec<BigInt>>> = coords
            .iter()
            .map(|c| vec![vec![BigInt::one()], c.clone()])
            .collect();
        let power = |i: usize, e: usize, powers: &mut Vec<Vec<Vec<BigInt>>>| -> Vec<BigInt> {
            while powers[i].len() <= e {
                let next = intpoly::mul(powers[i].last().unwrap(), &powers[i][1]);
                powers[i].push(next);
            }
            powers[i][e].clone()
        };
        let mut raw: Vec<Vec<BigInt>> = Vec::with_capacity(self.int_forms.len());
        for form in &self.int_forms {
            let mut acc: Vec<BigInt> = Vec::new();
            for (exps, coeff) in form {
                let mut term = coeff.clone();
                for (i, &e) in exps.iter().enumerate() {
                    if e > 0 && !term.is_empty() {
                        let pw = power(i, e as usize, &mut powers);
                        term = intpoly::mul(&term, &pw);
                    }
                }
                intpoly::add_assign(&mut acc, &term);
            }
            raw.push(acc);
        }
        if raw.iter().all(|c| c.is_empty()) {
            return Err(Error::Internal(
                "certified morphism produced an all-zero image".into(),
            ));
        }
        // integer content
        let mut content = BigInt::zero();
        'content: for c in &raw {
            for v in c {
                content = content.gcd(v);
                if content.is_one() {
                    break 'content;
                }
            }
        }
        if !content.is_one() {
            for c in raw.iter_mut() {
                for v in c.iter_mut() {
                    *v = &*v / &content;
                }
            }
        }
        // polynomial content divides the stored resultant multiple; a single
        // modular coprimality pass rules it out in the common case
        if self.content_multiple_int.len() > 1 && !self.image_content_free_mod_p(&raw) {
            let polys = raw
                .into_iter()
                .map(UniPoly::from_bigint_coeffs)
                .collect::<Vec<_>>();
            return ProjectivePoint::from_polys_content_divides(polys, &self.content_multiple);
        }
        ProjectivePoint::from_content_free_ints(raw)
    }

    /// True when the image coordinates are provably coprime to the content
    /// multiple: their gcd modulo a prime not dividing its leading
    /// coefficient is constant, which bounds the rational gcd degree by zero.
    fn image_content_free_mod_p(&self, raw: &[Vec<BigInt>]) -> bool {
        for prime in ntt::ntt_primes(8) {
            let p = prime.p;
            let w = modp::reduce_bigint_poly(&self.content_multiple_int, p);
            if w.len() != self.content_multiple_int.len() {
                continue; // leading coefficient vanished; bad prime
            }
            let mut g = w;
            for c in raw {
                if g.len() <= 1 {
                    break;
                }
                g = modp::gcd(&g, &modp::reduce_bigint_poly(c, p), p);
            }
            if g.len() <= 1 {
                return true;
            }
        }
        false
    }

    /// The orbit segment `(x, f(x), ..., f^n(x))`.
    pub fn orbit(&self, x: &ProjectivePoint, n: usize) -> Result<Vec<ProjectivePoint>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(x.clone());
        for _ in 0..n {
            let next = self.evaluate(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, form) in self.forms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{form}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Endomorphism(k={}, d={}, C={}, {})",
            self.k, self.d, self.defect_bound, self
        )
    }
}

/// An invertible change of coordinates on the projective line, with entries
/// cleared to polynomials.
#[derive(Clone, Debug)]
pub struct Mobius {
    /// Row-major [[a, b], [c, d]]: sends [x0 : x1] to [a x0 + b x1 : c x0 + d x1].
    entries: [UniPoly; 4],
}

impl Mobius {
    pub fn new(entries: [RationalFunc; 4]) -> Result<Self> {
        let mut den_lcm = UniPoly::one();
        for e in &entries {
            let g = den_lcm.gcd(e.den());
            den_lcm = &den_lcm * &e.den().div_exact(&g)?;
        }
        let polys: Vec<UniPoly> = entries
            .iter()
            .map(|e| Ok(e.num() * &den_lcm.div_exact(e.den())?))
            .collect::<Result<_>>()?;
        Mobius::from_polys(polys.try_into().expect("four entries"))
    }

    pub fn from_polys(entries: [UniPoly; 4]) -> Result<Self> {
        let det = &(&entries[0] * &entries[3]) - &(&entries[1] * &entries[2]);
        if det.is_zero() {
            return Err(Error::NotAMorphism);
        }
        Ok(Mobius { entries })
    }

    pub fn inverse(&self) -> Mobius {
        let [a, b, c, d] = &self.entries;
        Mobius {
            entries: [d.clone(), -b, -c, a.clone()],
        }
    }

    pub fn apply(&self, x: &ProjectivePoint) -> Result<ProjectivePoint> {
        if x.k() != 1 {
            return Err(Error::UnsupportedShape);
        }
        let [a, b, c, d] = &self.entries;
        let (x0, x1) = (&x.coords()[0], &x.coords()[1]);
        ProjectivePoint::from_polys(vec![
            &(a * x0) + &(b * x1),
            &(c * x0) + &(d * x1),
        ])
    }

    /// The conjugated map `self . f . self^{-1}`, rebuilt and recertified.
    pub fn conjugate(&self, f: &Endomorphism) -> Result<Endomorphism> {
        if f.k() != 1 {
            return Err(Error::UnsupportedShape);
        }
        let inv = self.inverse();
        let [ia, ib, ic, id] = &inv.entries;
        let y0 = XPoly::coordinate(1, 0)
            .mul_scalar(ia)
            .add(&XPoly::coordinate(1, 1).mul_scalar(ib));
        let y1 = XPoly::coordinate(1, 0)
            .mul_scalar(ic)
            .add(&XPoly::coordinate(1, 1).mul_scalar(id));
        let f0 = f.forms()[0].eval_xpoly(&[y0.clone(), y1.clone()]);
        let f1 = f.forms()[1].eval_xpoly(&[y0, y1]);
        let [a, b, c, d] = &self.entries;
        let g0 = f0.mul_scalar(a).add(&f1.mul_scalar(b));
        let g1 = f0.mul_scalar(c).add(&f1.mul_scalar(d));
        let forms = vec![
            HomogeneousForm::from_xpoly(&g0, f.degree(), 0)?,
            HomogeneousForm::from_xpoly(&g1, f.degree(), 1)?,
        ];
        endo_build(forms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_xpoly;
    use crate::rational::rat_i64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub(crate) fn build(k: usize, d: usize, lits: &[&str]) -> Result<Endomorphism> {
        let forms = lits
            .iter()
            .enumerate()
            .map(|(i, s)| HomogeneousForm::from_xpoly(&parse_xpoly(s, k).unwrap(), d, i))
            .collect::<Result<Vec<_>>>()?;
        endo_build(forms)
    }

    fn pt(coords: &[&str]) -> ProjectivePoint {
        ProjectivePoint::from_polys(
            coords
                .iter()
                .map(|s| crate::parse::parse_unipoly(s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn quadratic_family_builds() {
        let f = build(1, 2, &["X0^2 + t*X1^2", "X1^2"]).unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.k(), 1);
        assert_eq!(f.coeff_height(), 1);
        assert!(f.height_defect_bound() >= 1);
    }

    #[test]
    fn power_map_builds_with_zero_defect() {
        let f = build(1, 2, &["X0^2", "X1^2"]).unwrap();
        assert_eq!(f.height_defect_bound(), 0);
    }

    #[test]
    fn shared_zero_is_rejected() {
        assert_eq!(
            build(1, 2, &["X0^2", "t*X0*X1"]).unwrap_err(),
            Error::NotAMorphism
        );
    }

    #[test]
    fn degree_validation() {
        let err = build(1, 1, &["X0", "X1"]).unwrap_err();
        assert_eq!(err, Error::DegreeTooSmall(1));

        let f0 = HomogeneousForm::from_xpoly(&parse_xpoly("X0^2", 1).unwrap(), 2, 0).unwrap();
        let f1 = HomogeneousForm::from_xpoly(&parse_xpoly("X1^3", 1).unwrap(), 3, 1).unwrap();
        assert_eq!(
            endo_build(vec![f0, f1]).unwrap_err(),
            Error::InhomogeneousInput {
                index: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn evaluation_examples() {
        let f = build(1, 2, &["X0^2 + t*X1^2", "X1^2"]).unwrap();
        assert_eq!(f.evaluate(&pt(&["0", "1"])).unwrap(), pt(&["t", "1"]));
        assert_eq!(
            f.evaluate(&pt(&["t", "1"])).unwrap(),
            pt(&["t^2 + t", "1"])
        );

        let power = build(1, 2, &["X0^2", "X1^2"]).unwrap();
        assert_eq!(power.evaluate(&pt(&["1", "0"])).unwrap(), pt(&["1", "0"]));
    }

    #[test]
    fn orbit_examples() {
        let f = build(1, 2, &["X0^2 + t*X1^2", "X1^2"]).unwrap();
        let orb = f.orbit(&pt(&["0", "1"]), 2).unwrap();
        assert_eq!(
            orb,
            vec![pt(&["0", "1"]), pt(&["t", "1"]), pt(&["t^2 + t", "1"])]
        );
        assert_eq!(f.orbit(&pt(&["0", "1"]), 0).unwrap(), vec![pt(&["0", "1"])]);

        let power = build(1, 2, &["X0^2", "X1^2"]).unwrap();
        let orb = power.orbit(&pt(&["2", "1"]), 2).unwrap();
        assert_eq!(orb, vec![pt(&["2", "1"]), pt(&["4", "1"]), pt(&["16", "1"])]);
    }

    #[test]
    fn defect_examples() {
        // witness x = [0,1]: h(f(x)) = 1 > 2*0, so any valid C is >= 1
        let f = build(1, 2, &["X0^2 + t*X1^2", "X1^2"]).unwrap();
        let x = pt(&["0", "1"]);
        let fx = f.evaluate(&x).unwrap();
        assert_eq!(fx.naive_height(), 1);
        assert!(f.height_defect_bound() >= 1);
        // upper side never exceeds d h + coeff_height
        assert!(fx.naive_height() <= 2 * x.naive_height() + f.coeff_height());
    }

    #[test]
    fn certificate_is_independently_sound() {
        let f = build(1, 2, &["X0^2 + t*X1^2", "X1^2"]).unwrap();
        let cert = f.certificate();
        let specialized: Vec<_> = f.forms().iter().map(|q| q.specialize(&cert.t0)).collect();
        assert!(!crate::resultant::has_common_zero(&specialized));
        assert_eq!(
            crate::resultant::macaulay_resultant(&specialized).unwrap(),
            cert.value
        );
    }

    fn random_point(rng: &mut StdRng, max_deg: usize, k: usize) -> ProjectivePoint {
        loop {
            let coords: Vec<UniPoly> = (0..=k)
                .map(|_| {
                    let deg = rng.random_range(0..=max_deg);
                    UniPoly::from_coeffs(
                        (0..=deg).map(|_| rat_i64(rng.random_range(-5..=5))).collect(),
                    )
                })
                .collect();
            if coords.iter().any(|c| !c.is_zero()) {
                return ProjectivePoint::from_polys(coords).unwrap();
            }
        }
    }

    #[test]
    fn defect_bound_sound_on_random_points() {
        let maps = [
            build(1, 2, &["X0^2 + t*X1^2", "X1^2"]).unwrap(),
            build(1, 2, &["X0^2", "X1^2"]).unwrap(),
            build(1, 3, &["X0^3 + t*X1^3", "X1^3"]).unwrap(),
            build(1, 2, &["X0^2 - t^2*X1^2", "X0*X1 + 2*X1^2"]).unwrap(),
            build(2, 2, &["X0^2 + t*X2^2", "X1^2", "X2^2"]).unwrap(),
        ];
        let mut rng = StdRng::seed_from_u64(7);
        for f in &maps {
            let c = f.height_defect_bound() as i64;
            let d = f.degree() as i64;
            for _ in 0..120 {
                let x = random_point(&mut rng, 8, f.k());
                let fx = f.evaluate(&x).unwrap();
                let lhs = fx.naive_height() as i64 - d * x.naive_height() as i64;
                assert!(
                    lhs.abs() <= c,
                    "defect violated for {f:?} at {x:?}: |{lhs}| > {c}"
                );
            }
        }
    }

    #[test]
    fn evaluation_is_projective() {
        let f = build(1, 2, &["X0^2 + t*X1^2", "X1^2"]).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let x = random_point(&mut rng, 4, 1);
            // scale by a random rational function and re-evaluate
            let lam_num = UniPoly::from_coeffs(
                (0..=rng.random_range(0..=2))
                    .map(|_| rat_i64(rng.random_range(-4..=4)))
                    .collect(),
            );
            let lam_den = UniPoly::from_coeffs(
                (0..=rng.random_range(0..=2))
                    .map(|_| rat_i64(rng.random_range(-4..=4)))
                    .collect(),
            );
            if lam_num.is_zero() || lam_den.is_zero() {
                continue;
            }
            let lam = RationalFunc::new(lam_num, lam_den).unwrap();
            let raw: Vec<RationalFunc> = x
                .coords()
                .iter()
                .map(|c| &RationalFunc::from_poly(c.clone()) * &lam)
                .collect();
            let scaled = ProjectivePoint::from_ratfuncs(&raw).unwrap();
            assert_eq!(x, scaled);
            assert_eq!(f.evaluate(&x).unwrap(), f.evaluate(&scaled).unwrap());
        }
    }

    #[test]
    fn specialization_commutes_with_evaluation() {
        let f = build(1, 2, &["X0^2 + t*X1^2", "X1^2"]).unwrap();
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..30 {
            let x = random_point(&mut rng, 3, 1);
            let fx = f.evaluate(&x).unwrap();
            for t0 in param_sequence().take(6) {
                let specialized: Vec<_> =
                    f.forms().iter().map(|q| q.specialize(&t0)).collect();
                if crate::resultant::has_common_zero(&specialized) {
                    continue;
                }
                let xv = x.specialize(&t0);
                let image: Vec<Rational> =
                    specialized.iter().map(|q| q.eval(&xv)).collect();
                let want = fx.specialize(&t0);
                // projective equality: cross products vanish
                for i in 0..image.len() {
                    for j in i + 1..image.len() {
                        assert_eq!(&image[i] * &want[j], &image[j] * &want[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn mobius_conjugation_preserves_dynamics() {
        let f = build(1, 2, &["X0^2 + X1^2", "X1^2"]).unwrap();
        // z -> t z
        let m = Mobius::from_polys([
            UniPoly::var(),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::one(),
        ])
        .unwrap();
        let g = m.conjugate(&f).unwrap();
        assert_eq!(g.degree(), 2);
        // conjugation commutes with evaluation: g(Mx) = M(f(x))
        let x = pt(&["3", "1"]);
        let lhs = g.evaluate(&m.apply(&x).unwrap()).unwrap();
        let rhs = m.apply(&f.evaluate(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
