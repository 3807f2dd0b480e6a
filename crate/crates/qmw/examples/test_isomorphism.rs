//! Decide isomorphism of medial quandles through mesh homology, and
//! cross-check with the brute force search on the tables.
//!
//! Run with: cargo run --example test_isomorphism

use qmw::abelian::AbelianGroup;
use qmw::mesh::{homologous, AffineMesh};

fn with_constant(value: u64) -> AffineMesh {
    let z3 = AbelianGroup::cyclic(3);
    let trivial = AbelianGroup::new(vec![]).unwrap();
    let c = vec![
        vec![z3.zero(), trivial.zero()],
        vec![z3.element(vec![value]).unwrap(), trivial.zero()],
    ];
    AffineMesh::with_zero_phi(vec![z3, trivial], c).unwrap()
}

fn main() {
    // two meshes over (Z_3, Z_1) differing only in the constant 1 vs 2
    let m1 = with_constant(1);
    let m2 = with_constant(2);

    let witness = homologous(&m1, &m2).expect("negating Z_3 matches the constants");
    println!("homologous, witness:");
    println!("  fibre permutation: {:?}", witness.pi);
    for (i, psi) in witness.psi.iter().enumerate() {
        println!("  psi_{i} generator images: {:?}", psi.images());
    }
    for (i, d) in witness.d.iter().enumerate() {
        println!("  d_{i} = {d}");
    }
    assert!(witness.verify(&m1, &m2));

    // homologous meshes have isomorphic sums, and vice versa
    let iso = m1.sum().brute_force_iso(&m2.sum());
    println!("\nbrute force on the summed tables: {iso:?}");
    assert!(iso.is_some());

    // a mesh with a different fibre profile of the same total size
    let z2 = AbelianGroup::cyclic(2);
    let trivial = AbelianGroup::new(vec![]).unwrap();
    let c = vec![
        vec![z2.zero(), trivial.zero(), trivial.zero()],
        vec![z2.element(vec![1]).unwrap(), trivial.zero(), trivial.zero()],
        vec![z2.element(vec![1]).unwrap(), trivial.zero(), trivial.zero()],
    ];
    let m3 = AffineMesh::with_zero_phi(vec![z2, trivial.clone(), trivial], c).unwrap();
    assert_eq!(m3.order(), m1.order());
    assert!(homologous(&m1, &m3).is_none());
    assert!(m1.sum().brute_force_iso(&m3.sum()).is_none());
    println!("the (Z_2, Z_1, Z_1) mesh of the same order is not isomorphic");
}
