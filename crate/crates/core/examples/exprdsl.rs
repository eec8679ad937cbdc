//! The expression language: parse, evaluate in either algebra, and test identities.

use iquantum::cartan::CartanDatum;
use iquantum::exprdsl::{eval, infer_target, parse, parse_equation, Evaluator};

fn main() {
    let ev = Evaluator::new(&CartanDatum::a2());

    for src in ["idp(1,2,odd)", "B[1]^2*B[2] - qint(2)*B[1]*B[2]*B[1] + B[2]*B[1]^2", "E[1]*F[1] - F[1]*E[1]"] {
        let ast = parse(src).unwrap();
        let v = eval(&ast, &ev, infer_target(&ast)).unwrap();
        println!("{ast}\n  = {}", ev.render(&v));
    }

    let (l, r) = parse_equation("fplus(1,2,1,2,+1) = 0").unwrap();
    let lv = eval(&l, &ev, infer_target(&l)).unwrap();
    let rv = eval(&r, &ev, infer_target(&l)).unwrap();
    println!("{l} = {r}: {}", ev.is_zero(&ev.sub(&lv, &rv)));

    match parse("B[1] * * B[2]") {
        Ok(_) => unreachable!(),
        Err(e) => println!("{e}"),
    }
}
