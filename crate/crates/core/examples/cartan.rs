//! Cartan data: construction, validation, JSON and node classes.

use iquantum::cartan::{CartanDatum, NodeClass};

fn main() {
    for (name, d) in [("A2", CartanDatum::a2()), ("B2", CartanDatum::b2()), ("A3 swapped", CartanDatum::a3_swapped())] {
        println!("{name}: {d}");
        for j in 0..d.rank() {
            let class = match d.node_class(j) {
                NodeClass::Split => "split",
                NodeClass::Swapped => "swapped",
            };
            println!("  node {} eps={} tau={} {class}", j + 1, d.eps(j), d.tau(j) + 1);
        }
    }

    let g2 = CartanDatum::rank2(-3, -1).unwrap();
    let back = CartanDatum::from_json(&g2.to_json()).unwrap();
    assert_eq!(g2, back);
    println!("G2 symmetrized: d_1 a_12 = {}, d_2 a_21 = {}", g2.dot(0, 1), g2.dot(1, 0));

    // not symmetrizable
    let bad = CartanDatum::from_json(r#"{"nodes":["a","b","c"],"cartan":[[2,-1,0],[-2,2,-1],[-1,-1,2]],"eps":[1,1,1],"tau":[1,2,3]}"#);
    println!("rejected: {}", bad.unwrap_err());
}
