//! Higher Serre elements in the Drinfeld double and the exact zero test on U^+.

use iquantum::cartan::CartanDatum;
use iquantum::drinfeld::{derivative_rank, f_classical, f_classical_half, DoubleAlgebra, Side, ZeroOracle};

fn main() {
    let d = CartanDatum::a2();
    let alg = DoubleAlgebra::new(&d);

    // the ordinary q-Serre relation: n = 1, m = 1 - a_12 = 2
    let s = f_classical(&alg, 0, 1, 1, 2, 1, Side::E);
    println!("f_(1,2;1,2) in E = {}", alg.render(&s));
    println!("  zero: {}", alg.is_zero(&s));

    let mut oracle = ZeroOracle::new(&d);
    for m in 0..=4 {
        let f = f_classical_half(&d, 0, 1, 1, m, 1);
        println!("f_(1,2;1,{m}) vanishes: {}", oracle.half_is_zero(&f));
    }

    // Kostant partition counts
    println!("dim U^+ weight (2,1): A2 {} B2 {}", derivative_rank(&d, &[2, 1]), derivative_rank(&CartanDatum::b2(), &[2, 1]));

    // commutation across the double
    let ef = alg.mul(&alg.e(0), &alg.f(0));
    let fe = alg.mul(&alg.f(0), &alg.e(0));
    println!("E1 F1 - F1 E1 = {}", alg.render(&ef.sub(&fe)));
}
