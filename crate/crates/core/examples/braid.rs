//! Candidate braid symmetries T' and T'' on a split rank-2 ıquantum group.
//! Experimental: the suite reports, it does not assert.

use iquantum::cartan::CartanDatum;
use iquantum::iqg::{braid_image, check_braid_experimental, BraidGrid, BraidKind, IAlgebra};
use iquantum::qscalar::Parity;
use iquantum::SuiteOptions;

fn main() {
    let alg = IAlgebra::new(&CartanDatum::a2());
    for kind in [BraidKind::Prime, BraidKind::DoublePrime] {
        let b2 = braid_image(&alg, 0, 1, kind, 1, false, Parity::Even, Parity::Even).unwrap();
        println!("{kind:?}: B2 -> {}", b2.render());
    }

    let grid = BraidGrid { cases: vec![(-1, -1, 0)], e: vec![1], ..Default::default() };
    let r = check_braid_experimental(&grid, &SuiteOptions::default());
    print!("{}", r.render_text());
}
