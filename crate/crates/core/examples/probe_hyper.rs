use std::time::Instant;
use qkahler::gw::GwEngine;
use qkahler::mirror::hypergeom_check;

fn main() {
    let t0 = Instant::now();
    let engine = GwEngine::with_degrees(6).unwrap();
    println!("engine built in {:?}", t0.elapsed());
    let t1 = Instant::now();
    for k in 3..=10 {
        let rows = hypergeom_check(&engine, k, 6).unwrap();
        let all = rows.iter().all(|r| r.a_ok && r.b_ok);
        println!("k = {:2}: all exact = {} ({:?})", k, all, t1.elapsed());
        assert!(all);
    }
    println!("default suite total {:?}", t1.elapsed());
    let t2 = Instant::now();
    for k in 11..=20 {
        let rows = hypergeom_check(&engine, k, 6).unwrap();
        let all = rows.iter().all(|r| r.a_ok && r.b_ok);
        assert!(all, "k = {}", k);
    }
    println!("extended k <= 20 in {:?}", t2.elapsed());
    // one headline value for scale
    let rows = hypergeom_check(&engine, 20, 6).unwrap();
    println!("a_6(k=20) digits: {}", rows[5].a_rhs.len());
}
