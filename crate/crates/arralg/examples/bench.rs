use std::time::Instant;

use arralg::arrangement::random_generic;
use arralg::resolution;
use arralg::FieldSpec;
use arralg::MonomialOrder;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let shapes: Vec<(usize, usize, u64)> = if args.is_empty() {
        vec![(3, 5, 11), (3, 6, 11), (4, 5, 11), (4, 6, 5)]
    } else {
        args.chunks(3)
            .map(|c| (c[0].parse().unwrap(), c[1].parse().unwrap(), c[2].parse().unwrap()))
            .collect()
    };
    for (n, m, seed) in shapes {
        let a = random_generic(FieldSpec::Rationals, n, m, seed, 9).unwrap();
        let j = a.jacobian_ideal();
        let t = Instant::now();
        let gb = j.groebner_basis(MonomialOrder::DegRevLex).unwrap();
        println!("({n},{m}) gb: {} elements in {:?}", gb.len(), t.elapsed());
        let t = Instant::now();
        let pres = resolution::presentation(&j).unwrap();
        println!(
            "({n},{m}) presentation: {} syzygies in {:?}",
            pres.syzygies.len(),
            t.elapsed()
        );
        let t = Instant::now();
        let res = resolution::resolve_quotient(&j).unwrap();
        println!("({n},{m}) resolution: length {} in {:?}", res.length(), t.elapsed());
    }
}
