//! Decompose a medial quandle into its canonical affine mesh, inspect the
//! pieces, and rebuild the quandle from the mesh.
//!
//! Run with: cargo run --example decompose_and_rebuild

use qmw::abelian::{AbelianGroup, Homomorphism};
use qmw::mesh::decompose;
use qmw::quandle::Quandle;

fn main() {
    // a six-element quandle: the product of a dihedral quandle on Z_3
    // with a two-element projection quandle
    let z3 = AbelianGroup::cyclic(3);
    let dihedral = Quandle::affine(&z3, &Homomorphism::scalar(z3.clone(), -1));
    let q = dihedral.direct_product(&Quandle::projection(2));
    println!("input quandle:\n{}", q.print());

    let d = decompose(&q).expect("medial quandles always decompose");
    println!("fibres: {}", d.mesh.num_fibres());
    for (i, g) in d.mesh.groups().iter().enumerate() {
        println!("  orbit {i}: group of order {} ({g})", g.order());
    }
    println!("transversal (one base element per orbit): {:?}", d.transversal);
    println!("element -> mesh position: {:?}", d.to_sum);
    println!("\nmesh as JSON:\n{}", d.mesh.to_json());

    // the sum of the mesh is the same quandle up to the recorded relabeling
    let rebuilt = d.mesh.sum();
    let n = q.order();
    assert!((0..n).all(|a| {
        (0..n).all(|b| d.to_sum[q.op(a, b)] == rebuilt.op(d.to_sum[a], d.to_sum[b]))
    }));
    println!("\nsum of the mesh reproduces the quandle (relabeled)");
}
