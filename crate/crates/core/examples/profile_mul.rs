use heightgap_core::endo::endo_build;
use heightgap_core::forms::HomogeneousForm;
use heightgap_core::ntt::mul_bigint_slices;
use heightgap_core::parse::{parse_unipoly, parse_xpoly};
use heightgap_core::projective::ProjectivePoint;
use std::time::Instant;

fn main() {
    let lits = [
        "(2 + t)*X0^2 + (-3 + t)*X0*X1 + (1 - t)*X1^2",
        "(1 + t)*X0^2 + 2*X0*X1 + (3 + t)*X1^2",
    ];
    let forms: Vec<_> = lits
        .iter()
        .enumerate()
        .map(|(i, s)| HomogeneousForm::from_xpoly(&parse_xpoly(s, 1).unwrap(), 2, i).unwrap())
        .collect();
    let f = endo_build(forms).unwrap();
    let x = ProjectivePoint::from_polys(vec![
        parse_unipoly("t - 1").unwrap(),
        parse_unipoly("2*t + 1").unwrap(),
    ])
    .unwrap();
    let mut cur = x;
    for _ in 1..=9 {
        cur = f.evaluate(&cur).unwrap();
    }
    let x0 = &cur.coords()[0];
    let x1 = &cur.coords()[1];
    println!("deg x0 = {:?}, bits = {}", x0.degree(), x0.bit_size());

    let t0 = Instant::now();
    let (i0, _c0) = x0.primitive_int();
    let t_prim0 = t0.elapsed();
    let t0 = Instant::now();
    let (i1, _c1) = x1.primitive_int();
    let t_prim1 = t0.elapsed();
    println!("primitive_int: x0 {t_prim0:?} ({} coeffs), x1 {t_prim1:?}", i0.len());
    let max_bits = i0.iter().map(|c| c.bits()).max().unwrap();
    println!("int coeff bits: {max_bits}");

    let t0 = Instant::now();
    let prod = mul_bigint_slices(&i0, &i1);
    println!("ntt mul: {:?} (out len {})", t0.elapsed(), prod.len());

    // the rational product for comparison
    let t0 = Instant::now();
    let _p = x0 * x1;
    println!("full UniPoly mul: {:?}", t0.elapsed());

    // a big rational add
    let t0 = Instant::now();
    let _s = x0 + x1;
    println!("UniPoly add: {:?}", t0.elapsed());

    // scale by a rational
    let t0 = Instant::now();
    let _sc = x1.scale(&x1.coeffs()[5]);
    println!("UniPoly scale: {:?}", t0.elapsed());
}
