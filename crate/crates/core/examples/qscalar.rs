//! Exact arithmetic in Q(q): quantum integers, binomials, parsing and canonical form.

use iquantum::qscalar::{canonical_equal, parse_scalar, qbinom, qfactorial, qint, QScalar};

fn main() {
    let two = qint(2, 1);
    let three = qint(3, 1);
    println!("[2] = {two}");
    println!("[3] = {three}");
    println!("[3]! = {}", qfactorial(3, 1));

    // [4 choose 2] = [4][3]/[2]
    let b = qbinom(4, 2, 1);
    let ratio = &(&qint(4, 1) * &three) / &two;
    println!("[4 choose 2] = {b}");
    assert!(canonical_equal(&b, &ratio));

    // base q^2, as used at nodes with eps_i = 2
    println!("[3]_(q^2) = {}", qint(3, 2));

    let x = parse_scalar("(q^2 - 1)/(q - q^-1)").unwrap();
    println!("(q^2 - 1)/(q - q^-1) = {x}");
    assert_eq!(x, QScalar::q_pow(1));

    let inv = (&QScalar::one() / &two).to_string();
    println!("1/[2] = {inv}");
    assert_eq!(parse_scalar(&inv).unwrap(), &QScalar::one() / &two);
}
