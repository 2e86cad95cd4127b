use qkahler::linear::LinearForm;
use qkahler::poly::SparsePoly;
use qkahler::rational::Rational;
use qkahler::residue::{iterated_residue, OwnedFactor, RatExpr};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn form(c0: Rational, coeffs: &[(u32, i64, i64)]) -> LinearForm {
    let mut f = LinearForm::constant(c0);
    for &(i, n, d) in coeffs {
        f.set_coeff(i, q(n, d));
    }
    f
}

fn triple_d7_deformed(c1: Rational, c2: Rational, c3: Rational) -> RatExpr {
    RatExpr::new(
        SparsePoly::one(),
        vec![
            OwnedFactor::numerator(form(q(0, 1), &[(1, 3, 6), (2, 3, 5), (3, 3, 4)]), 4),
            OwnedFactor::numerator(form(q(0, 1), &[(1, 2, 6), (2, 2, 5), (3, 2, 4)]), 5),
            OwnedFactor::numerator(form(q(0, 1), &[(1, 1, 6), (2, 1, 5), (3, 1, 4)]), 6),
            OwnedFactor::denominator(form(c1, &[(1, 1, 1), (2, 1, 2), (3, 1, 3)]), 1, 1),
            OwnedFactor::denominator(form(c2, &[(2, 1, 1), (1, 5, 6), (3, 2, 3)]), 2, 1),
            OwnedFactor::denominator(form(c3, &[(3, 1, 1), (1, 4, 6), (2, 4, 5)]), 3, 1),
        ],
    )
    .unwrap()
}

fn main() {
    let deformations: Vec<(Rational, Rational, Rational)> = vec![
        (q(6, 7), q(5, 7), q(4, 7)),     // the natural x=1, y=0 constants
        (q(1, 1), q(1, 1), q(1, 1)),
        (q(2, 1), q(3, 1), q(5, 1)),
        (q(1, 100), q(1, 101), q(1, 103)),
        (q(-3, 7), q(2, 9), q(5, 2)),
        (q(1, 1000000), q(3, 1000001), q(7, 1000003)),
    ];
    for (c1, c2, c3) in deformations {
        let e = triple_d7_deformed(c1.clone(), c2.clone(), c3.clone());
        for order in [[1u32, 2, 3], [3, 2, 1], [2, 3, 1]] {
            match iterated_residue(&e, &order) {
                Ok(v) => println!("c = ({}, {}, {}), order {:?}: {}", c1, c2, c3, order, v),
                Err(err) => println!("c = ({}, {}, {}), order {:?}: ERR {}", c1, c2, c3, order, err),
            }
        }
    }
}
