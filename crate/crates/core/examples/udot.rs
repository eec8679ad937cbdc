//! Modified rank-one quantum group: ıdivided powers expanded on the PBW basis
//! E^(a) F^(b) 1_m, closed forms against direct expansion.

use iquantum::qscalar::Parity;
use iquantum::udot::{dot_idp, idp_closed_form, pbw_round_trip, IdpFamily};

fn main() {
    let direct = dot_idp(1, 3, Parity::Even, [0, 2]);
    for (label, x) in &direct {
        println!("B^(3)_even 1_{label} = {x}");
    }

    for fam in IdpFamily::ALL {
        let x = idp_closed_form(1, fam, 2, 0, false);
        println!("{} (m=2, lambda=0): {} terms", fam.name(), x.len());
    }

    let rt = pbw_round_trip(1, 2, 2, 1);
    println!("E^(2)F^(2) 1_1 after reordering twice: {rt}");
}
