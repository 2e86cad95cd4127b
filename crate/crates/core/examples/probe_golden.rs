use qkahler::comb::{parse_formula, phi_map};
use qkahler::polyd::{poly_d, PolyD, PolyDRecords};

fn main() {
    // appendix transcription round-trip
    for (d, text) in [
        (1u32, include_str!("../../cli/golden/recursion_d1.txt")),
        (2, include_str!("../../cli/golden/recursion_d2.txt")),
        (3, include_str!("../../cli/golden/recursion_d3.txt")),
        (4, include_str!("../../cli/golden/recursion_d4.txt")),
        (5, include_str!("../../cli/golden/recursion_d5.txt")),
    ] {
        let transcribed = parse_formula(d, text).unwrap().normalized();
        let computed = phi_map(&poly_d(d).unwrap()).normalized();
        if transcribed == computed {
            println!("d = {}: formulas agree ({} terms)", d, computed.terms.len());
        } else {
            println!("d = {}: MISMATCH", d);
            for (a, b) in computed.terms.iter().zip(transcribed.terms.iter()) {
                if a != b {
                    println!("  computed:    {}", a);
                    println!("  transcribed: {}", b);
                }
            }
            if computed.terms.len() != transcribed.terms.len() {
                println!(
                    "  lengths: computed {} vs transcribed {}",
                    computed.terms.len(),
                    transcribed.terms.len()
                );
            }
        }
    }
    // degree-6 table
    for (d, text) in [
        (1u32, include_str!("../../cli/golden/poly1.json")),
        (2, include_str!("../../cli/golden/poly2.json")),
        (3, include_str!("../../cli/golden/poly3.json")),
        (4, include_str!("../../cli/golden/poly4.json")),
        (6, include_str!("../../cli/golden/poly6.json")),
    ] {
        let rec: PolyDRecords = serde_json::from_str(text).unwrap();
        let golden = PolyD::from_records(&rec).unwrap();
        let computed = poly_d(d).unwrap();
        if golden == computed {
            println!("poly {}: table agrees ({} entries)", d, golden.entries().len());
        } else {
            println!("poly {}: MISMATCH", d);
            for (z, h) in computed.entries() {
                if golden.entries().get(z) != Some(h) {
                    println!("  computed {:?} -> {:?}", z, h);
                    println!("  golden   {:?} -> {:?}", z, golden.entries().get(z));
                }
            }
        }
    }
}
