//! Parse a quandle from its operation table, check the axioms and print
//! the full classification report.
//!
//! Run with: cargo run --example classify_quandle

use qmw::classify::classify;
use qmw::quandle::Quandle;

fn main() {
    // the smallest medial quandle that is not a projection: two elements
    // swapped by the translation of a third
    let table = "\
# order, then one row per element
3
0 1 2
0 1 2
1 0 2
";
    let q = Quandle::parse(table).expect("well-formed table");
    let report = q.validate();
    println!("axioms:\n{report}\n");
    assert!(report.is_quandle());

    let c = classify(&q);
    println!("order: {}", c.order);
    println!("medial: {}", c.medial);
    println!("connected: {}", c.connected);
    println!("latin: {}", c.latin);
    println!("involutory: {}", c.involutory);
    println!("2-reductive: {}", c.two_reductive);
    println!("reductivity degree: {:?}", c.reductivity_degree);
    println!("symmetry order: {}", c.symmetry_order);
    println!("orbit sizes: {:?}", c.orbit_sizes);
    println!("orbit groups: {:?}", c.orbit_groups);
    println!("simple: {}", c.simple);
    println!("subdirectly irreducible: {}", c.subdirectly_irreducible);

    // a table that fails the axioms produces witnesses instead
    let broken = Quandle::new(vec![vec![0, 0], vec![1, 1]]).unwrap();
    let report = broken.validate();
    println!("\na non-quandle:\n{report}");
    assert!(!report.is_quandle());
}
