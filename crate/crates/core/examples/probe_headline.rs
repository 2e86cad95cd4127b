use std::time::Instant;

use qkahler::gw::{GwEngine, Mode, StructKey};
use qkahler::polyd::poly_d;

fn main() {
    let t0 = Instant::now();
    let p6 = poly_d(6).unwrap();
    println!("poly_d(6): {} entries in {:?}", p6.entries().len(), t0.elapsed());
    println!("  symmetric: {}", p6.is_reversal_symmetric());
    println!("  normalization: {}", p6.normalization_value());
    // spot anchors from the printed degree-6 table
    use qkahler::polyd::ZMonomial;
    let anchor = |z: &[u32]| p6.coefficient(&ZMonomial(z.to_vec())).cloned();
    println!("  x^5 head: {:?}", anchor(&[0, 0, 0, 0, 0]).map(|h| h.coeffs[0].clone()));
    println!("  z1^2 y^3: {:?}", anchor(&[2, 0, 0, 0, 0]).map(|h| h.coeffs[3].clone()));
    println!("  z1^3 z2^2: {:?}", anchor(&[3, 2, 0, 0, 0]).map(|h| h.coeffs[0].clone()));
    println!("  z1^3 z5^2: {:?}", anchor(&[3, 0, 0, 0, 2]).map(|h| h.coeffs[0].clone()));
    println!("  z1z2z3z4z5: {:?}", anchor(&[1, 1, 1, 1, 1]).map(|h| h.coeffs[0].clone()));

    let t1 = Instant::now();
    let engine = GwEngine::with_degrees(6).unwrap();
    println!("formulas 1..6 built in {:?}", t1.elapsed());
    for d in 1..=6 {
        println!("  formula d={} has {} terms", d, engine.formula(d).unwrap().terms.len());
    }

    let t2 = Instant::now();
    let v = engine
        .compute(
            Mode::Fano,
            StructKey { big_n: 8, k: 7, d: 6, n: 0 },
        )
        .unwrap();
    println!("L_0^{{8,7,6}} = {} in {:?}", v, t2.elapsed());
    println!("matches: {}", v.to_string() == "13799153353276807722049582771200");
}
