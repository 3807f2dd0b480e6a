//! Construct the built-in families of simple and subdirectly irreducible
//! medial quandles and check their congruences.
//!
//! Run with: cargo run --example special_families

use qmw::classify::{
    congruence_lattice, is_simple, is_subdirectly_irreducible, si_involutory, si_two_reductive,
    simple_affine,
};

fn main() {
    // a simple latin quandle of order 4: the companion matrix of
    // x^2 + x + 1 acting on Z_2 x Z_2 (coefficients constant first)
    let q = simple_affine(2, 2, &[1, 1, 1]).unwrap();
    println!("simple_affine(2, 2, x^2 + x + 1):");
    println!("{}", q.print());
    println!("latin: {}", q.is_latin());
    println!("simple: {}", is_simple(&q));
    let lattice = congruence_lattice(&q, 1 << 16).unwrap();
    println!("congruences: {} (diagonal and full only)\n", lattice.len());

    // subdirectly irreducible involutory quandles come in three families
    for (family, parameter) in [(1u8, 9u64), (2, 2), (3, 2)] {
        let mesh = si_involutory(family, parameter).unwrap();
        let q = mesh.sum();
        println!(
            "si_involutory({family}, {parameter}): order {}, subdirectly irreducible: {}",
            q.order(),
            is_subdirectly_irreducible(&q)
        );
    }

    // the subdirectly irreducible 2-reductive quandles: one nontrivial
    // fibre Z_q and a distinct generating constant per singleton fibre
    let mesh = si_two_reductive(4, &[1, 2, 3]).unwrap();
    let q = mesh.sum();
    println!(
        "\nsi_two_reductive(4, [1, 2, 3]): order {}, subdirectly irreducible: {}",
        q.order(),
        is_subdirectly_irreducible(&q)
    );
    println!("congruences: {}", congruence_lattice(&q, 1 << 16).unwrap().len());
}
