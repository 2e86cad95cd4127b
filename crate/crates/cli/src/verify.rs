//! Verification suites: computed objects against the shipped reference
//! tables. Every comparison is exact rational equality.

use qkahler::comb::{parse_formula, phi_map};
use qkahler::gw::{Mode, StructKey};
use qkahler::mirror::hypergeom_check;
use qkahler::polyd::{integrand_for, poly_d_with_jobs, PolyD, PolyDRecords, ZMonomial};
use qkahler::qring::relation_check;
use qkahler::rational::Rational;
use qkahler::residue::iterated_residue_deformed;

use crate::{engine_with, Cli, CliError};

pub const GOLDEN_POLY: [(u32, &str); 5] = [
    (1, include_str!("../golden/poly1.json")),
    (2, include_str!("../golden/poly2.json")),
    (3, include_str!("../golden/poly3.json")),
    (4, include_str!("../golden/poly4.json")),
    (6, include_str!("../golden/poly6.json")),
];

pub const GOLDEN_RECURSION: [(u32, &str); 5] = [
    (1, include_str!("../golden/recursion_d1.txt")),
    (2, include_str!("../golden/recursion_d2.txt")),
    (3, include_str!("../golden/recursion_d3.txt")),
    (4, include_str!("../golden/recursion_d4.txt")),
    (5, include_str!("../golden/recursion_d5.txt")),
];

pub const HEADLINE_CONSTANT: &str = "13799153353276807722049582771200";

pub fn run_suite(
    cli: &Cli,
    suite: &str,
    k: Option<u32>,
    dmax: Option<u32>,
) -> Result<bool, CliError> {
    match suite {
        "poly-tables" => poly_tables(cli),
        "appendix-a" => appendix_a(cli),
        "residues" => residues(),
        "biglnumber" => big_l_number(cli),
        "hypergeom" => hypergeom(cli, k.unwrap_or(10), dmax.unwrap_or(6)),
        "ring" => ring(cli),
        "all" => {
            let mut ok = true;
            ok &= poly_tables(cli)?;
            ok &= appendix_a(cli)?;
            ok &= residues()?;
            ok &= big_l_number(cli)?;
            ok &= hypergeom(cli, k.unwrap_or(10), dmax.unwrap_or(6))?;
            ok &= ring(cli)?;
            Ok(ok)
        }
        other => Err(CliError::Usage(format!(
            "unknown suite `{}`; expected poly-tables, appendix-a, residues, biglnumber, hypergeom, ring or all",
            other
        ))),
    }
}

fn report(name: &str, ok: bool, detail: &str) -> bool {
    if ok {
        println!("ok   {} {}", name, detail);
    } else {
        println!("FAIL {} {}", name, detail);
    }
    ok
}

fn poly_tables(cli: &Cli) -> Result<bool, CliError> {
    let mut all = true;
    for (d, text) in GOLDEN_POLY {
        let rec: PolyDRecords =
            serde_json::from_str(text).map_err(|e| CliError::Usage(e.to_string()))?;
        let golden = PolyD::from_records(&rec).map_err(CliError::Usage)?;
        let computed = poly_d_with_jobs(d, cli.jobs.max(1))?;
        let ok = computed == golden;
        all &= report(
            "poly-tables",
            ok,
            &format!("degree {} ({} entries)", d, golden.entries().len()),
        );
        if !ok {
            for (z, h) in computed.entries() {
                if golden.entries().get(z) != Some(h) {
                    println!("     first mismatch at z = {:?}", z.0);
                    break;
                }
            }
        }
    }
    Ok(all)
}

fn appendix_a(cli: &Cli) -> Result<bool, CliError> {
    let mut all = true;
    for (d, text) in GOLDEN_RECURSION {
        let golden = parse_formula(d, text)
            .map_err(|e| CliError::Usage(e.to_string()))?
            .normalized();
        let computed = phi_map(&poly_d_with_jobs(d, cli.jobs.max(1))?).normalized();
        let ok = computed == golden;
        all &= report(
            "appendix-a",
            ok,
            &format!("degree {} ({} terms)", d, golden.terms.len()),
        );
        if !ok {
            for (a, b) in computed.terms.iter().zip(golden.terms.iter()) {
                if a != b {
                    println!("     computed {} vs reference {}", a, b);
                    break;
                }
            }
        }
    }
    Ok(all)
}

/// Deterministic selection of permutations of `1..=n`, spread across the
/// full lexicographic order.
pub fn spread_permutations(n: u32, count: usize) -> Vec<Vec<u32>> {
    let total: usize = (1..=n as usize).product();
    let step = (total / count).max(1);
    (0..total)
        .step_by(step)
        .take(count)
        .map(|mut idx| {
            let mut pool: Vec<u32> = (1..=n).collect();
            let mut perm = Vec::with_capacity(n as usize);
            for slot in (1..=n as usize).rev() {
                let fact: usize = (1..slot).product();
                let pick = idx / fact;
                idx %= fact;
                perm.push(pool.remove(pick));
            }
            perm
        })
        .collect()
}

fn residues() -> Result<bool, CliError> {
    let zero = Rational::zero();
    let checks: [(&str, u32, Vec<u32>, Rational); 3] = [
        (
            "degree-5 cross term",
            5,
            vec![2, 0, 0, 2],
            Rational::new(2, 3),
        ),
        (
            "degree-6 double pole",
            6,
            vec![3, 2, 0, 0, 0],
            Rational::new(3, 50),
        ),
        (
            "degree-7 triple",
            7,
            vec![2, 2, 2, 0, 0, 0],
            Rational::new(1, 20),
        ),
    ];
    let mut all = true;
    for (name, d, z, want) in checks {
        let e = integrand_for(d, &ZMonomial(z), &zero, &zero);
        let perms = spread_permutations(d - 1, 24);
        let mut ok = true;
        for order in &perms {
            match iterated_residue_deformed(&e, order) {
                Ok(v) if v == want => {}
                Ok(v) => {
                    println!("     order {:?} gave {}", order, v);
                    ok = false;
                }
                Err(err) => {
                    println!("     order {:?} failed: {}", order, err);
                    ok = false;
                }
            }
        }
        all &= report(
            "residues",
            ok,
            &format!("{} = {} across {} orders", name, want, perms.len()),
        );
    }
    Ok(all)
}

fn big_l_number(cli: &Cli) -> Result<bool, CliError> {
    let engine = engine_with(cli, 6)?;
    let value = engine.compute(
        Mode::Fano,
        StructKey {
            big_n: 8,
            k: 7,
            d: 6,
            n: 0,
        },
    )?;
    let _ = engine.save_cache();
    let ok = value.to_string() == HEADLINE_CONSTANT;
    Ok(report(
        "biglnumber",
        ok,
        &format!("L_0^{{8,7,6}} = {}", value),
    ))
}

fn hypergeom(cli: &Cli, k_max: u32, d_max: u32) -> Result<bool, CliError> {
    let engine = engine_with(cli, d_max)?;
    let mut all = true;
    for k in 3..=k_max {
        let rows = hypergeom_check(&engine, k, d_max)?;
        let ok = rows.iter().all(|r| r.a_ok && r.b_ok);
        all &= report("hypergeom", ok, &format!("k = {}, d <= {}", k, d_max));
        if !ok {
            for r in rows.iter().filter(|r| !(r.a_ok && r.b_ok)) {
                println!(
                    "     d = {}: a {} vs {}, b {} vs {}",
                    r.d, r.a_lhs, r.a_rhs, r.b_lhs, r.b_rhs
                );
            }
        }
    }
    Ok(all)
}

fn ring(cli: &Cli) -> Result<bool, CliError> {
    let engine = engine_with(cli, 6)?;
    let mut all = true;
    for k in 2..=6u32 {
        for big_n in (k as i64 + 1)..=(2 * k as i64 + 2) {
            let residual = relation_check(&engine, big_n, k)?;
            let ok = residual.is_zero();
            all &= report("ring", ok, &format!("N = {}, k = {}", big_n, k));
            if !ok {
                println!("     residual: {}", residual);
            }
        }
    }
    Ok(all)
}
