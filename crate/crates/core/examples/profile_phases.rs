use heightgap_core::endo::endo_build;
use heightgap_core::forms::{HomogeneousForm, PowerCache};
use heightgap_core::parse::{parse_unipoly, parse_xpoly};
use heightgap_core::poly::UniPoly;
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
    for n in 1..=9 {
        cur = f.evaluate(&cur).unwrap();
        if n < 8 { continue; }
        // phase timing for the NEXT step
        let t0 = Instant::now();
        let mut cache = PowerCache::new(cur.coords().to_vec());
        let raw: Vec<UniPoly> = f.forms().iter().map(|q| q.eval_with_cache(&mut cache)).collect();
        let t_eval = t0.elapsed();
        let t0 = Instant::now();
        let _pt = ProjectivePoint::from_polys(raw.clone()).unwrap();
        let t_norm_full = t0.elapsed();
        println!("step {}: eval = {:?}, from_polys(full gcd) = {:?}", n + 1, t_eval, t_norm_full);
    }
}
