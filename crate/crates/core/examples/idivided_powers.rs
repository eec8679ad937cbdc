//! ıdivided powers in the quasi-split ıquantum group, the anti-involution sigma and
//! the embedding into the Drinfeld double.

use iquantum::cartan::CartanDatum;
use iquantum::iqg::IAlgebra;
use iquantum::qscalar::Parity;

fn main() {
    let alg = IAlgebra::new(&CartanDatum::a2());
    for p in Parity::both() {
        for m in 0..=3 {
            println!("B^({m})_{p} = {}", alg.idivided_power(0, m, p).render());
        }
    }

    let x = alg.mul(&alg.b(0), &alg.b(1));
    println!("sigma(B1 B2) = {}", alg.sigma(&x).render());
    println!("embedded B1 = {}", alg.double().render(&alg.embed(&alg.b(0))));

    // B1 B2 - B2 B1 is not zero, the i-Serre combination is
    let comm = x.sub(&alg.mul(&alg.b(1), &alg.b(0)));
    println!("[B1, B2] == 0: {}", alg.is_zero(&comm));
}
