//! The scalar q-binomial identities behind the Serre type relations,
//! evaluated pointwise and then swept over a small grid.

use iquantum::qidentities::{eval_g, eval_t, verify_appb_suite, verify_g_suite, AppBGrid, GGrid, GParams, Span, TParams};
use iquantum::SuiteOptions;

fn main() {
    for w in -2..=2 {
        let g = eval_g(&GParams::new(w, 1, 1, 0, 0, 0));
        println!("G({w}, 1, 1; 0, 0, 0) = {g}");
    }
    let t = eval_t(&TParams { w: 0, u: 1, l: 2, mu: 1, beta: 0, alpha: 1, eps: 1 });
    println!("T(0, 1, 2, 1, 0) = {t}");

    let grid = GGrid { w: Span::new(-2, 2), u: Span::new(0, 2), ell: Span::new(0, 2), p: Span::new(-1, 1), k: Span::new(-1, 1) };
    let r = verify_g_suite(&grid, &SuiteOptions::default());
    println!("{}", r.summary_line());

    let r = verify_appb_suite(&AppBGrid::default(), &SuiteOptions::default());
    print!("{}", r.render_text());
    assert!(r.passed());
}
