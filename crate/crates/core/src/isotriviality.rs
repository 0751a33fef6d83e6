//! Isotriviality testing for self-maps of the projective line through the
//! symmetric functions of the fixed-point multipliers.
//!
//! Everything is computed in the quotient algebra Q(t)[z]/(Phi) where Phi
//! cuts out the finite fixed points: the multiplier lambda = f'(z) is reduced
//! modulo Phi and its multiplication operator's characteristic polynomial
//! collects the multipliers with the correct multiplicities, with no root
//! extraction anywhere. The chart at infinity contributes separately when
//! infinity is fixed. For degree 2 the pair (sigma1, sigma2) classifies the
//! map up to conjugacy, so constancy in t decides isotriviality outright.

use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::ratfunc::RationalFunc;
use std::fmt;

/// Dense polynomial in the affine coordinate `z` with Q(t) coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly {
    coeffs: Vec<RationalFunc>,
}

impl ZPoly {
    pub fn from_coeffs(coeffs: Vec<RationalFunc>) -> Self {
        let mut p = ZPoly { coeffs };
        p.trim();
        p
    }

    fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    fn constant(c: RationalFunc) -> Self {
        ZPoly::from_coeffs(vec![c])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[RationalFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RationalFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(RationalFunc::zero)
    }

    fn add(&self, rhs: &ZPoly) -> ZPoly {
        let mut out = vec![RationalFunc::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        ZPoly::from_coeffs(out)
    }

    fn neg(&self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn sub(&self, rhs: &ZPoly) -> ZPoly {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![RationalFunc::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                out[i + j] = &out[i + j] + &prod;
            }
        }
        ZPoly::from_coeffs(out)
    }

    fn scale(&self, c: &RationalFunc) -> ZPoly {
        ZPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn shift_mul_z(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![RationalFunc::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    fn div_rem(&self, divisor: &ZPoly) -> (ZPoly, ZPoly) {
        assert!(!divisor.is_zero());
        let dd = divisor.degree().unwrap();
        if self.is_zero() || self.degree().unwrap() < dd {
            return (ZPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = rem.len() - 1;
        let lc_inv = divisor
            .coeffs
            .last()
            .unwrap()
            .recip()
            .expect("nonzero leading coefficient");
        let mut quot = vec![RationalFunc::zero(); dn - dd + 1];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + dd].clone();
            if lead.is_zero() {
                continue;
            }
            let q = &lead * &lc_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let delta = dc * &q;
                rem[i + j] = &rem[i + j] - &delta;
            }
            quot[i] = q;
        }
        let mut r = ZPoly { coeffs: rem };
        r.trim();
        r.coeffs.truncate(dd);
        r.trim();
        (ZPoly::from_coeffs(quot), r)
    }

    fn rem(&self, m: &ZPoly) -> ZPoly {
        self.div_rem(m).1
    }

    /// Inverse modulo `m` via the extended Euclidean algorithm; `None` when
    /// not coprime.
    fn inv_mod(&self, m: &ZPoly) -> Option<ZPoly> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (ZPoly::zero(), ZPoly::constant(RationalFunc::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.degree() == Some(0) {
            let inv = r0.coeffs[0].recip().ok()?;
            Some(t0.scale(&inv).rem(m))
        } else {
            None
        }
    }

    fn derivative(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &RationalFunc::from_int(i as i64))
                .collect(),
        )
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Fixed-point bookkeeping for a degree-2 self-map of the line.
#[derive(Clone, Debug)]
pub struct FixedPointData {
    /// Numerator of `f(z) - z`: its roots are the finite fixed points.
    pub phi: ZPoly,
    pub infinity_fixed: bool,
    /// `d + 1 - deg phi`; zero when infinity is not fixed.
    pub infinity_multiplicity: usize,
    /// The multiplier expression `f'(z)` as numerator/denominator in z.
    pub lambda_num: ZPoly,
    pub lambda_den: ZPoly,
}

/// Elementary symmetric functions of the three fixed-point multipliers of a
/// degree-2 map, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierInvariants {
    pub sigma1: RationalFunc,
    pub sigma2: RationalFunc,
    pub sigma3: RationalFunc,
}

impl MultiplierInvariants {
    /// The holomorphic fixed-point index relation for degree 2.
    pub fn index_relation_holds(&self) -> bool {
        self.sigma3 == &self.sigma1 - &RationalFunc::from_int(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotrivialityVerdict {
    Isotrivial,
    /// `witness` is the 1-based index of a sigma that genuinely depends on t.
    NonIsotrivial { witness: usize },
    Inconclusive { reason: String },
}

struct LineChartData {
    num: ZPoly,
    den: ZPoly,
    phi: ZPoly,
    infinity_fixed: bool,
    infinity_multiplicity: usize,
}

fn line_chart_data(f: &Endomorphism) -> Result<LineChartData> {
    if f.k() != 1 {
        return Err(Error::UnsupportedShape);
    }
    let d = f.degree();
    let lift = |coeffs: Vec<crate::poly::UniPoly>| {
        ZPoly::from_coeffs(coeffs.into_iter().map(RationalFunc::from_poly).collect())
    };
    let num = lift(f.forms()[0].line_chart(1));
    let den = lift(f.forms()[1].line_chart(1));
    let phi = num.sub(&den.shift_mul_z());
    // infinity is fixed iff the X0^d coefficient of F1 vanishes
    let infinity_fixed = den.degree() != Some(d);
    let deg_phi = phi.degree().unwrap_or(0);
    debug_assert!(!phi.is_zero(), "degree-d morphisms never fix every point");
    let infinity_multiplicity = if infinity_fixed { d + 1 - deg_phi } else { 0 };
    if !infinity_fixed {
        debug_assert_eq!(deg_phi, d + 1);
    }
    Ok(LineChartData {
        num,
        den,
        phi,
        infinity_fixed,
        infinity_multiplicity,
    })
}

/// The fixed-point package of a degree-2 self-map of the line.
pub fn fixed_point_data(f: &Endomorphism) -> Result<FixedPointData> {
    if f.k() != 1 || f.degree() != 2 {
        return Err(Error::UnsupportedShape);
    }
    let chart = line_chart_data(f)?;
    let lambda_num = chart
        .num
        .derivative()
        .mul(&chart.den)
        .sub(&chart.num.mul(&chart.den.derivative()));
    let lambda_den = chart.den.mul(&chart.den);
    Ok(FixedPointData {
        phi: chart.phi,
        infinity_fixed: chart.infinity_fixed,
        infinity_multiplicity: chart.infinity_multiplicity,
        lambda_num,
        lambda_den,
    })
}

/// Elementary symmetric functions of all d+1 fixed-point multipliers of a
/// line map of any degree; index i holds sigma_(i+1).
fn fixed_point_sigmas(f: &Endomorphism) -> Result<Vec<RationalFunc>> {
    let d = f.degree();
    let chart = line_chart_data(f)?;

    // finite part: characteristic polynomial of multiplication by f'(z) in
    // Q(t)[z] / (phi)
    let phi_monic = {
        let lc = chart.phi.coeffs().last().unwrap().clone();
        chart.phi.scale(&lc.recip().expect("leading coefficient nonzero"))
    };
    let m = phi_monic.degree().unwrap();
    let mut multiplier_poly = if m == 0 {
        vec![RationalFunc::one()]
    } else {
        let num = chart
            .num
            .derivative()
            .mul(&chart.den)
            .sub(&chart.num.mul(&chart.den.derivative()))
            .rem(&phi_monic);
        let den2 = chart.den.mul(&chart.den).rem(&phi_monic);
        let den2_inv = den2.inv_mod(&phi_monic).ok_or_else(|| {
            Error::Internal("denominator not invertible modulo the fixed-point polynomial".into())
        })?;
        let lambda = num.mul(&den2_inv).rem(&phi_monic);
        // multiplication matrix in the basis 1, z, ..., z^(m-1)
        let mut columns = Vec::with_capacity(m);
        let mut zj = ZPoly::constant(RationalFunc::one());
        for _ in 0..m {
            let col = lambda.mul(&zj).rem(&phi_monic);
            columns.push((0..m).map(|i| col.coeff(i)).collect::<Vec<_>>());
            zj = zj.shift_mul_z().rem(&phi_monic);
        }
        charpoly(&columns)
    };

    // infinity contributes (T - lambda_inf)^multiplicity
    if chart.infinity_fixed {
        let lambda_inf = infinity_multiplier(f)?;
        let factor = vec![-&lambda_inf, RationalFunc::one()];
        for _ in 0..chart.infinity_multiplicity {
            multiplier_poly = zpoly_mul_vec(&multiplier_poly, &factor);
        }
    }
    debug_assert_eq!(multiplier_poly.len(), d + 2, "monic of degree d+1");

    // sigma_j = (-1)^j * coefficient of T^(d+1-j)
    let mut sigmas = Vec::with_capacity(d + 1);
    for j in 1..=d + 1 {
        let c = multiplier_poly[d + 1 - j].clone();
        sigmas.push(if j % 2 == 1 { -&c } else { c });
    }
    Ok(sigmas)
}

/// Multiplier of the fixed point at infinity, computed in the flipped chart
/// w = 1/z: the derivative at w = 0 of F1(1, w) / F0(1, w).
fn infinity_multiplier(f: &Endomorphism) -> Result<RationalFunc> {
    let g_num = f.forms()[1].line_chart(0);
    let g_den = f.forms()[0].line_chart(0);
    let n1 = RationalFunc::from_poly(g_num[1].clone());
    let d0 = RationalFunc::from_poly(g_den[0].clone());
    debug_assert!(g_num[0].is_zero(), "infinity must be fixed");
    if d0.is_zero() {
        return Err(Error::Internal(
            "chart denominator vanishes at a fixed point of a morphism".into(),
        ));
    }
    Ok(&n1 / &d0)
}

fn zpoly_mul_vec(a: &[RationalFunc], b: &[RationalFunc]) -> Vec<RationalFunc> {
    let mut out = vec![RationalFunc::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let prod = x * y;
            out[i + j] = &out[i + j] + &prod;
        }
    }
    out
}

/// Characteristic polynomial (monic, low-to-high coefficients) of a square
/// matrix given by columns, via the Faddeev-LeVerrier recursion.
fn charpoly(columns: &[Vec<RationalFunc>]) -> Vec<RationalFunc> {
    let m = columns.len();
    let a = |i: usize, j: usize| -> &RationalFunc { &columns[j][i] };
    let mut coeffs = vec![RationalFunc::zero(); m + 1];
    coeffs[m] = RationalFunc::one();
    // M_1 = I; a_{m-k} = -tr(A M_k)/k; M_{k+1} = A M_k + a_{m-k} I
    let mut mk: Vec<Vec<RationalFunc>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        RationalFunc::one()
                    } else {
                        RationalFunc::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 1..=m {
        // product = A * M_k
        let mut product = vec![vec![RationalFunc::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = RationalFunc::zero();
                for l in 0..m {
                    let term = a(i, l) * &mk[l][j];
                    acc = &acc + &term;
                }
                product[i][j] = acc;
            }
        }
        let mut trace = RationalFunc::zero();
        for i in 0..m {
            trace = &trace + &product[i][i];
        }
        let ak = -&(&trace / &RationalFunc::from_int(k as i64));
        coeffs[m - k] = ak.clone();
        if k < m {
            for (i, row) in product.iter_mut().enumerate() {
                row[i] = &row[i] + &ak;
            }
            mk = product;
        }
    }
    coeffs
}

/// Symmetric functions of the three fixed-point multipliers of a degree-2
/// line map, verified against the index relation sigma3 = sigma1 - 2.
pub fn multiplier_invariants(f: &Endomorphism) -> Result<MultiplierInvariants> {
    if f.k() != 1 || f.degree() != 2 {
        return Err(Error::UnsupportedShape);
    }
    let s = fixed_point_sigmas(f)?;
    let inv = MultiplierInvariants {
        sigma1: s[0].clone(),
        sigma2: s[1].clone(),
        sigma3: s[2].clone(),
    };
    if !inv.index_relation_holds() {
        return Err(Error::Internal(
            "fixed-point index relation failed; multiplier computation is wrong".into(),
        ));
    }
    Ok(inv)
}

/// Decides isotriviality for degree-2 maps of the line (the multiplier pair
/// is a complete conjugacy invariant there). For higher degree, a
/// t-dependent sigma still certifies non-isotriviality, but constancy of all
/// sigmas is only necessary, so the verdict degrades to `Inconclusive`.
pub fn isotriviality_verdict(f: &Endomorphism) -> Result<IsotrivialityVerdict> {
    if f.k() != 1 {
        return Err(Error::UnsupportedShape);
    }
    let sigmas = fixed_point_sigmas(f)?;
    let witness = sigmas.iter().position(|s| !s.is_constant());
    match (f.degree(), witness) {
        (_, Some(i)) => Ok(IsotrivialityVerdict::NonIsotrivial { witness: i + 1 }),
        (2, None) => Ok(IsotrivialityVerdict::Isotrivial),
        (_, None) => Ok(IsotrivialityVerdict::Inconclusive {
            reason: "all fixed-point multiplier invariants are constant; beyond degree 2 \
                     this is necessary but not sufficient for isotriviality"
                .into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{endo_build, Mobius};
    use crate::forms::HomogeneousForm;
    use crate::parse::parse_xpoly;
    use crate::poly::UniPoly;
    use crate::rational::rat_i64;

    fn build(d: usize, lits: &[&str]) -> Endomorphism {
        let forms = lits
            .iter()
            .enumerate()
            .map(|(i, s)| HomogeneousForm::from_xpoly(&parse_xpoly(s, 1).unwrap(), d, i).unwrap())
            .collect::<Vec<_>>();
        endo_build(forms).unwrap()
    }

    fn rf_int(n: i64) -> RationalFunc {
        RationalFunc::from_int(n)
    }

    fn rf_t_scaled(n: i64) -> RationalFunc {
        RationalFunc::from_poly(UniPoly::var().scale(&rat_i64(n)))
    }

    #[test]
    fn fixed_points_of_squaring() {
        // z^2: phi = z^2 - z, infinity fixed simply
        let f = build(2, &["X0^2", "X1^2"]);
        let data = fixed_point_data(&f).unwrap();
        assert_eq!(
            data.phi,
            ZPoly::from_coeffs(vec![RationalFunc::zero(), rf_int(-1), rf_int(1)])
        );
        assert!(data.infinity_fixed);
        assert_eq!(data.infinity_multiplicity, 1);
    }

    #[test]
    fn fixed_points_of_quadratic_family() {
        // z^2 + t: phi = z^2 - z + t
        let f = build(2, &["X0^2 + t*X1^2", "X1^2"]);
        let data = fixed_point_data(&f).unwrap();
        assert_eq!(
            data.phi,
            ZPoly::from_coeffs(vec![
                RationalFunc::from_poly(UniPoly::var()),
                rf_int(-1),
                rf_int(1)
            ])
        );
        assert!(data.infinity_fixed);
    }

    #[test]
    fn fixed_points_of_inverse_square() {
        // f = 1/z^2: phi = 1 - z^3 (three finite fixed points), infinity moves
        let f = build(2, &["X1^2", "X0^2"]);
        let data = fixed_point_data(&f).unwrap();
        assert_eq!(
            data.phi,
            ZPoly::from_coeffs(vec![rf_int(1), rf_int(0), rf_int(0), rf_int(-1)])
        );
        assert!(!data.infinity_fixed);
        assert_eq!(data.infinity_multiplicity, 0);
    }

    #[test]
    fn sigmas_of_squaring() {
        let f = build(2, &["X0^2", "X1^2"]);
        let inv = multiplier_invariants(&f).unwrap();
        assert_eq!(inv.sigma1, rf_int(2));
        assert_eq!(inv.sigma2, RationalFunc::zero());
        assert_eq!(inv.sigma3, RationalFunc::zero());
        assert!(inv.index_relation_holds());
    }

    #[test]
    fn sigmas_of_quadratic_family() {
        let f = build(2, &["X0^2 + t*X1^2", "X1^2"]);
        let inv = multiplier_invariants(&f).unwrap();
        assert_eq!(inv.sigma1, rf_int(2));
        assert_eq!(inv.sigma2, rf_t_scaled(4));
        assert_eq!(inv.sigma3, RationalFunc::zero());
    }

    #[test]
    fn sigmas_of_inverse_square() {
        // multipliers are -2 at each cube root of unity
        let f = build(2, &["X1^2", "X0^2"]);
        let inv = multiplier_invariants(&f).unwrap();
        assert_eq!(inv.sigma1, rf_int(-6));
        assert_eq!(inv.sigma2, rf_int(12));
        assert_eq!(inv.sigma3, rf_int(-8));
        assert!(inv.index_relation_holds());
    }

    #[test]
    fn verdict_triple() {
        // z^2 + 1 is parameter-free
        let a = build(2, &["X0^2 + X1^2", "X1^2"]);
        assert_eq!(
            isotriviality_verdict(&a).unwrap(),
            IsotrivialityVerdict::Isotrivial
        );

        // z^2 + t genuinely moves
        let b = build(2, &["X0^2 + t*X1^2", "X1^2"]);
        assert_eq!(
            isotriviality_verdict(&b).unwrap(),
            IsotrivialityVerdict::NonIsotrivial { witness: 2 }
        );

        // the t-scaling conjugate of z^2 + 1 hides its triviality in the
        // coefficients but not in the sigmas
        let m = Mobius::from_polys([
            UniPoly::var(),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::one(),
        ])
        .unwrap();
        let c = m.conjugate(&a).unwrap();
        assert!(c.coeff_height() > 0);
        let inv = multiplier_invariants(&c).unwrap();
        assert_eq!(inv.sigma1, rf_int(2));
        assert_eq!(inv.sigma2, rf_int(4));
        assert_eq!(
            isotriviality_verdict(&c).unwrap(),
            IsotrivialityVerdict::Isotrivial
        );
    }

    #[test]
    fn all_fixed_points_at_infinity() {
        // f(z) = z + 1/(z + 1): every fixed point sits at infinity
        // forms: (X0^2 + X0 X1 + X1^2, X0 X1 + X1^2)
        let f = build(2, &["X0^2 + X0*X1 + X1^2", "X0*X1 + X1^2"]);
        let data = fixed_point_data(&f).unwrap();
        assert!(data.infinity_fixed);
        assert_eq!(data.phi.degree(), Some(0));
        assert_eq!(data.infinity_multiplicity, 3);
        let inv = multiplier_invariants(&f).unwrap();
        // parabolic: all three multipliers are 1
        assert_eq!(inv.sigma1, rf_int(3));
        assert_eq!(inv.sigma2, rf_int(3));
        assert_eq!(inv.sigma3, rf_int(1));
        assert!(inv.index_relation_holds());
    }

    #[test]
    fn degree_three_verdicts() {
        let nontrivial = build(3, &["X0^3 + t*X1^3", "X1^3"]);
        assert!(matches!(
            isotriviality_verdict(&nontrivial).unwrap(),
            IsotrivialityVerdict::NonIsotrivial { .. }
        ));

        let constant = build(3, &["X0^3 + X1^3", "X1^3"]);
        assert!(matches!(
            isotriviality_verdict(&constant).unwrap(),
            IsotrivialityVerdict::Inconclusive { .. }
        ));

        // shape errors
        assert_eq!(
            multiplier_invariants(&nontrivial).unwrap_err(),
            Error::UnsupportedShape
        );
        let plane = {
            let forms = ["X0^2", "X1^2", "X2^2"]
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    HomogeneousForm::from_xpoly(&parse_xpoly(s, 2).unwrap(), 2, i).unwrap()
                })
                .collect::<Vec<_>>();
            endo_build(forms).unwrap()
        };
        assert_eq!(
            isotriviality_verdict(&plane).unwrap_err(),
            Error::UnsupportedShape
        );
    }

    #[test]
    fn conjugation_invariance_of_sigmas() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(23);
        let mut done = 0;
        while done < 12 {
            // random degree-2 map with small t-linear coefficients
            let lits: Vec<String> = (0..2)
                .map(|_| {
                    let coef = |rng: &mut StdRng| {
                        let a = rng.random_range(-2..=2);
                        let b = rng.random_range(-1..=1);
                        format!("({a} + {b}*t)")
                    };
                    format!(
                        "{}*X0^2 + {}*X0*X1 + {}*X1^2",
                        coef(&mut rng),
                        coef(&mut rng),
                        coef(&mut rng)
                    )
                })
                .collect();
            let Ok(forms) = lits
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    HomogeneousForm::from_xpoly(&parse_xpoly(s, 1).unwrap(), 2, i)
                })
                .collect::<Result<Vec<_>>>()
            else {
                continue;
            };
            let Ok(f) = endo_build(forms) else { continue };
            let entries = [
                UniPoly::from_int_coeffs(&[rng.random_range(-2..=2), rng.random_range(0..=1)]),
                UniPoly::from_int_coeffs(&[rng.random_range(-2..=2)]),
                UniPoly::from_int_coeffs(&[rng.random_range(-1..=1)]),
                UniPoly::from_int_coeffs(&[rng.random_range(-2..=2), rng.random_range(0..=1)]),
            ];
            let Ok(m) = Mobius::from_polys(entries) else {
                continue;
            };
            let Ok(g) = m.conjugate(&f) else { continue };
            let a = multiplier_invariants(&f).unwrap();
            let b = multiplier_invariants(&g).unwrap();
            assert_eq!(a, b, "sigmas changed under conjugation");
            done += 1;
        }
    }
}
