//! Build an affine mesh by hand, check its axioms, and sum it into a
//! quandle.
//!
//! Run with: cargo run --example build_a_mesh

use qmw::abelian::{AbelianGroup, Homomorphism};
use qmw::classify::si_involutory;
use qmw::mesh::{homologous, AffineMesh};

fn main() {
    // two fibres Z_4 and Z_2, every homomorphism doubles, and the
    // off-diagonal constants are -1 and 1
    let z4 = AbelianGroup::cyclic(4);
    let z2 = AbelianGroup::cyclic(2);
    let phi = vec![
        vec![
            Homomorphism::scalar(z4.clone(), 2),
            // doubling lands in the even part, which is trivial mod 2
            Homomorphism::zero(z4.clone(), z2.clone()),
        ],
        vec![
            Homomorphism::new(z2.clone(), z4.clone(), vec![z4.element(vec![2]).unwrap()])
                .unwrap(),
            Homomorphism::scalar(z2.clone(), 2),
        ],
    ];
    let c = vec![
        vec![z4.zero(), z2.element(vec![1]).unwrap()],
        vec![z4.element(vec![1]).unwrap(), z2.zero()],
    ];
    let mesh = AffineMesh::new(vec![z4, z2], phi, c).expect("shapes are consistent");

    let report = mesh.validate();
    println!("axioms:\n{report}\n");
    assert!(report.is_mesh());
    println!("indecomposable: {}", mesh.is_indecomposable());

    let q = mesh.sum();
    println!("\nsum (elements 0..3 from the Z_4 fibre, 4..5 from Z_2):");
    println!("{}", q.print());

    // the two orbits behave differently: one is 2-reductive, the other is
    // not, and still the whole quandle is involutory
    println!("2-reductive: {}", q.is_two_reductive());
    println!("reductivity degree: {:?}", q.reductivity_degree());
    println!("involutory: {}", q.is_involutory());

    // the same mesh, up to homology, ships with the library
    let family = si_involutory(2, 2).unwrap();
    assert!(homologous(&mesh, &family).is_some());
    println!("\nhomologous to si_involutory(2, 2)");
}
