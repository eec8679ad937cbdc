//! The ıSerre elements y and y' in closed form: zero from degree 1 - n a_ij on,
//! nonzero just below.

use iquantum::cartan::CartanDatum;
use iquantum::iqg::{ytilde, IAlgebra, YParams};
use iquantum::qscalar::Parity;

fn main() {
    let alg = IAlgebra::new(&CartanDatum::a2());
    let n = 1;
    let a = alg.datum().a(0, 1);
    for m in 0..=(1 - n * a + 1) {
        for primed in [false, true] {
            let p = YParams { i: 0, j: 1, n, m, pbar: Parity::Even, tbar: Parity::Even, e: 1, primed };
            let y = ytilde(&alg, &p).unwrap();
            let name = if primed { "y'" } else { "y" };
            println!("{name}(n={n}, m={m}) zero: {}", alg.is_zero(&y));
        }
    }
    let p = YParams { i: 0, j: 1, n: 1, m: 2, pbar: Parity::Odd, tbar: Parity::Even, e: 1, primed: false };
    println!("y(n=1, m=2, odd) = {}", ytilde(&alg, &p).unwrap().render());
}
