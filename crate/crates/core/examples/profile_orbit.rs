use heightgap_core::endo::endo_build;
use heightgap_core::forms::HomogeneousForm;
use heightgap_core::parse::{parse_unipoly, parse_xpoly};
use heightgap_core::projective::ProjectivePoint;
use std::time::Instant;

fn main() {
    // dense random-looking d=2 map
    let lits = [
        "(2 + t)*X0^2 + (-3 + t)*X0*X1 + (1 - t)*X1^2",
        "(1 + t)*X0^2 + 2*X0*X1 + (3 + t)*X1^2",
    ];
    let forms: Vec<_> = lits
        .iter()
        .enumerate()
        .map(|(i, s)| HomogeneousForm::from_xpoly(&parse_xpoly(s, 1).unwrap(), 2, i).unwrap())
        .collect();
    let t0 = Instant::now();
    let f = endo_build(forms).unwrap();
    println!("build: {:?}, C = {}", t0.elapsed(), f.height_defect_bound());
    let x = ProjectivePoint::from_polys(vec![
        parse_unipoly("t - 1").unwrap(),
        parse_unipoly("2*t + 1").unwrap(),
    ])
    .unwrap();
    let mut cur = x;
    for n in 1..=10 {
        let t0 = Instant::now();
        cur = f.evaluate(&cur).unwrap();
        println!(
            "step {n}: {:?}  h = {}, bits = {}",
            t0.elapsed(),
            cur.naive_height(),
            cur.bit_size()
        );
    }
}
