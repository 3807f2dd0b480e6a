//! End-to-end checks against known classification data. Each test covers
//! one guarantee and prints a single PASS line when it holds.

use qmw::abelian::{AbelianGroup, Homomorphism};
use qmw::classify::{
    congruence_lattice, is_simple, is_subdirectly_irreducible, si_involutory, si_two_reductive,
    simple_affine, Congruence,
};
use qmw::enumerate::{
    all_orbits_latin_classes, assemble_tables, count_latin, count_row, count_two_reductive,
    enumerate_non_two_reductive, enumerate_two_reductive, generating_matrix_count, profiles,
    two_reductive_profile_orbits, FibreProfile,
};
use qmw::mesh::{decompose, homologous, AffineMesh};
use qmw::quandle::Quandle;

/// The subquandle induced on a subset closed under the operation,
/// relabeled to 0..len.
fn subquandle(q: &Quandle, elems: &[usize]) -> Quandle {
    let mut pos = vec![usize::MAX; q.order()];
    for (i, &x) in elems.iter().enumerate() {
        pos[x] = i;
    }
    let rows = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| pos[q.op(a, b)]).collect())
        .collect();
    Quandle::new(rows).expect("orbits are subquandles")
}

/// Whether `(..(x*y)*y..)*y = y` with `m` copies of `y` holds; `m = 0`
/// degenerates to `x = y`, which holds only on one element.
fn m_reductive(q: &Quandle, m: usize) -> bool {
    if m == 0 {
        return q.order() == 1;
    }
    (0..q.order()).all(|y| {
        (0..q.order()).all(|x| {
            let mut z = x;
            for _ in 0..m {
                z = q.op(z, y);
            }
            z == y
        })
    })
}

fn table_reductivity_degree(q: &Quandle) -> Option<usize> {
    (1..=q.order()).find(|&m| m_reductive(q, m))
}

fn m_symmetric(q: &Quandle, m: usize) -> bool {
    (0..q.order()).all(|a| {
        (0..q.order()).all(|b| {
            let mut z = b;
            for _ in 0..m {
                z = q.op(a, z);
            }
            z == b
        })
    })
}

/// Every known indecomposable mesh class of order `n`.
fn mesh_classes(n: u64) -> Vec<AffineMesh> {
    let mut out = enumerate_two_reductive(n);
    out.extend(enumerate_non_two_reductive(n, 13).unwrap());
    out
}

#[test]
fn medial_counts_up_to_order_nine() {
    let rows = assemble_tables(9, 13).unwrap();
    let medial: Vec<u128> = rows.iter().map(|r| r.medial).collect();
    assert_eq!(medial, [1, 1, 3, 6, 18, 58, 251, 1410, 10311]);
    println!("PASS: medial quandle counts for orders 1..=9");
}

#[test]
fn two_reductive_counts_up_to_order_thirteen() {
    let expected: [u128; 13] = [
        1, 1, 2, 5, 15, 55, 246, 1398, 10301, 98532, 1246479, 20837171, 466087624,
    ];
    for n in 1..=13u64 {
        assert_eq!(
            count_two_reductive(n, false).unwrap(),
            expected[n as usize - 1],
            "order {n}"
        );
    }
    println!("PASS: 2-reductive counts for orders 1..=13");
}

#[test]
fn involutory_counts() {
    let expected_medial: [u128; 10] = [1, 1, 3, 4, 11, 33, 121, 597, 4017, 35103];
    for n in 1..=10u64 {
        assert_eq!(
            count_row(n, 13).unwrap().involutory,
            expected_medial[n as usize - 1],
            "order {n}"
        );
    }
    let expected_2red: [u128; 13] = [
        1, 1, 2, 4, 10, 31, 120, 594, 4013, 35092, 428080, 6851545, 153025576,
    ];
    for n in 1..=13u64 {
        assert_eq!(
            count_two_reductive(n, true).unwrap(),
            expected_2red[n as usize - 1],
            "order {n}"
        );
    }
    println!("PASS: involutory counts (medial to order 10, 2-reductive to order 13)");
}

#[test]
fn non_two_reductive_and_latin_columns() {
    let non2red: Vec<u64> = (3..=11u64)
        .map(|n| enumerate_non_two_reductive(n, 13).unwrap().len() as u64)
        .collect();
    assert_eq!(non2red, [1, 1, 3, 3, 5, 12, 10, 45, 9]);

    let latin: Vec<u64> = (1..=13u64).map(count_latin).collect();
    assert_eq!(latin, [1, 0, 1, 1, 3, 0, 5, 2, 8, 0, 9, 1, 11]);

    let rows = assemble_tables(10, 13).unwrap();
    let red_not_2red: Vec<u64> = rows.iter().map(|r| r.reductive_not_two_reductive).collect();
    assert_eq!(red_not_2red, [0, 0, 0, 0, 0, 2, 0, 9, 0, 42]);
    let nonred: Vec<u64> = rows.iter().map(|r| r.non_reductive).collect();
    assert_eq!(nonred, [0, 0, 1, 1, 3, 1, 5, 3, 10, 3]);
    println!(
        "PASS: general-search columns (non-2-reductive to order 11, latin to order 13, \
         reductive splits to order 10)"
    );
}

#[test]
fn brute_force_enumeration_agrees_with_the_mesh_pipeline() {
    for (n, expected) in [(1usize, 1u128), (2, 1), (3, 3), (4, 6), (5, 18)] {
        let brute = Quandle::brute_force_enumerate(n, 5, |q| q.is_medial()).unwrap();
        assert_eq!(brute.len() as u128, expected, "order {n}");
        assert_eq!(count_row(n as u64, 13).unwrap().medial, expected, "order {n}");
    }
    // explicit orbit counting agrees with the symmetry-based count
    for n in 1..=7u64 {
        for involutory in [false, true] {
            let keep = |g: &AbelianGroup| !involutory || g.exponent() <= 2;
            let direct: u64 = profiles(n, keep)
                .iter()
                .map(|p| two_reductive_profile_orbits(p).0)
                .sum();
            assert_eq!(
                direct as u128,
                count_two_reductive(n, involutory).unwrap(),
                "order {n}, involutory {involutory}"
            );
        }
    }
    println!("PASS: brute force and direct orbit counts agree with the pipeline");
}

#[test]
fn round_trips_of_generated_meshes() {
    let mut meshes: Vec<AffineMesh> = Vec::new();
    for n in 1..=8u64 {
        meshes.extend(mesh_classes(n));
    }
    for n in 9..=10u64 {
        meshes.extend(enumerate_non_two_reductive(n, 13).unwrap());
    }
    for (family, parameter) in [(1u8, 3u64), (1, 5), (1, 9), (2, 2), (2, 3), (3, 1), (3, 2)] {
        meshes.push(si_involutory(family, parameter).unwrap());
    }
    meshes.push(si_two_reductive(7, &[1, 2, 4]).unwrap());
    meshes.retain(|m| m.order() <= 10);
    assert!(meshes.len() >= 1000, "only {} meshes generated", meshes.len());

    let mut failures = 0usize;
    for mesh in &meshes {
        let mut ok = mesh.validate().is_mesh() && mesh.is_indecomposable();
        let q = mesh.sum();
        ok = ok && q.validate().is_quandle() && q.is_medial();
        // the orbits of the sum are exactly the fibres
        let mut orbit_sizes: Vec<usize> = q.orbits().iter().map(|o| o.len()).collect();
        orbit_sizes.sort_unstable();
        let mut fibre_sizes: Vec<usize> =
            mesh.fibre_sizes().iter().map(|&s| s as usize).collect();
        fibre_sizes.sort_unstable();
        ok = ok && orbit_sizes == fibre_sizes;
        let canonical = decompose(&q).expect("sums of meshes are medial");
        ok = ok && canonical.mesh.validate().is_mesh();
        ok = ok && homologous(mesh, &canonical.mesh).is_some();
        if !ok {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures} of {} meshes failed", meshes.len());
    println!(
        "PASS: {} meshes of order <= 10 validated, summed, decomposed and matched by homology",
        meshes.len()
    );
}

#[test]
fn homology_decides_isomorphism_of_sums() {
    let mut pairs = 0usize;
    for n in 1..=7u64 {
        let meshes = mesh_classes(n);
        let sums: Vec<Quandle> = meshes.iter().map(|m| m.sum()).collect();
        for (i, mi) in meshes.iter().enumerate() {
            assert!(
                homologous(mi, mi).is_some(),
                "order {n}, mesh {i}: not homologous to itself"
            );
            for j in i + 1..meshes.len() {
                let hom = homologous(mi, &meshes[j]).is_some();
                let iso = sums[i].brute_force_iso(&sums[j]).is_some();
                assert_eq!(hom, iso, "order {n}, meshes {i} and {j}");
                assert!(!hom, "order {n}: enumerated meshes {i} and {j} coincide");
                pairs += 1;
            }
        }
    }
    // order 8: every class that is not 2-reductive, a slice of the rest,
    // and a positive pair per mesh through the canonical decomposition
    let meshes: Vec<AffineMesh> = enumerate_non_two_reductive(8, 13)
        .unwrap()
        .into_iter()
        .chain(enumerate_two_reductive(8).into_iter().step_by(20))
        .collect();
    let sums: Vec<Quandle> = meshes.iter().map(|m| m.sum()).collect();
    for (i, mi) in meshes.iter().enumerate() {
        let canonical = decompose(&sums[i]).unwrap().mesh;
        assert!(homologous(mi, &canonical).is_some(), "order 8, mesh {i}");
        assert!(sums[i].brute_force_iso(&canonical.sum()).is_some(), "order 8, mesh {i}");
        for j in i + 1..meshes.len() {
            let hom = homologous(mi, &meshes[j]).is_some();
            let iso = sums[i].brute_force_iso(&sums[j]).is_some();
            assert_eq!(hom, iso, "order 8, meshes {i} and {j}");
            pairs += 1;
        }
        pairs += 1;
    }
    println!("PASS: homology and brute force agree on {pairs} pairs of sums up to order 8");
}

#[test]
fn structure_theorems_hold_on_enumerated_meshes() {
    let mut checked = 0usize;
    for n in 1..=8u64 {
        for mesh in mesh_classes(n) {
            let sizes = mesh.fibre_sizes();
            let overall_gcd = sizes.iter().fold(0u64, |a, &b| gcd(a, b));
            assert!(mesh.squared_diagonal_divisibility(), "order {n}: {mesh:?}");

            let q = mesh.sum();
            let orbit_degrees: Vec<Option<usize>> = q
                .orbits()
                .iter()
                .map(|o| table_reductivity_degree(&subquandle(&q, o)))
                .collect();

            // coprime orbit sizes cap the reductivity degree at 3
            if overall_gcd == 1 {
                assert!(m_reductive(&q, 3), "order {n}: {mesh:?}");
            }
            // a coprime partner for every orbit forces 2-reductivity
            let partnered = (0..sizes.len()).all(|i| {
                sizes[i] == 1
                    || (0..sizes.len()).any(|j| j != i && gcd(sizes[i], sizes[j]) == 1)
            });
            if partnered {
                assert!(q.is_two_reductive(), "order {n}: {mesh:?}");
            }
            // the degree of the sum exceeds the orbit degrees by exactly one
            for m in 1..=q.order() {
                let all_orbits = q
                    .orbits()
                    .iter()
                    .map(|o| subquandle(&q, o))
                    .all(|s| m_reductive(&s, m - 1));
                assert_eq!(m_reductive(&q, m), all_orbits, "order {n}, m {m}: {mesh:?}");
            }
            // one reductive orbit bounds the degree of the whole sum
            if let Some(d) = orbit_degrees.iter().flatten().min() {
                assert!(m_reductive(&q, d + 3), "order {n}: {mesh:?}");
            }
            assert_eq!(
                mesh.reductivity_degree(),
                table_reductivity_degree(&q),
                "order {n}: {mesh:?}"
            );
            // symmetry computed on the mesh matches the table
            for m in 1..=2 * q.order() {
                assert_eq!(
                    mesh.is_symmetric(m),
                    m_symmetric(&q, m),
                    "order {n}, m {m}: {mesh:?}"
                );
            }
            assert!(mesh.is_symmetric(q.symmetry_order() as usize), "order {n}: {mesh:?}");
            checked += 1;
        }
    }

    // sums with all orbits latin split as latin times projection
    let mut split = 0usize;
    for n in 1..=10u64 {
        for mesh in all_orbits_latin_classes(n) {
            let q = mesh.sum();
            let normalized = mesh.latin_normalize().expect("latin classes have latin orbits");
            let a = normalized.group(0).clone();
            let f = Homomorphism::identity(a.clone()).sub(normalized.phi(0, 0));
            let product = Quandle::affine(&a, &f)
                .direct_product(&Quandle::projection(normalized.num_fibres()));
            assert!(
                q.brute_force_iso(&product).is_some(),
                "order {n}: {mesh:?} does not split"
            );
            split += 1;
        }
    }
    println!(
        "PASS: divisibility, reductivity, symmetry on {checked} meshes up to order 8; \
         {split} latin-orbit sums split as products up to order 10"
    );
}

#[test]
fn simple_and_subdirectly_irreducible_families() {
    // a simple latin quandle from an irreducible quadratic
    let q = simple_affine(2, 2, &[1, 1, 1]).unwrap();
    let lattice = congruence_lattice(&q, 1 << 16).unwrap();
    assert_eq!(lattice.len(), 2);
    assert!(is_simple(&q));

    let mut instances = 0usize;
    // involutory: one odd-prime-power fibre, or two or three powers of two
    for q in [3u64, 5, 7, 9] {
        check_si(&si_involutory(1, q).unwrap());
        instances += 1;
    }
    for k in [1u64, 2, 3] {
        check_si(&si_involutory(2, k).unwrap());
        check_si(&si_involutory(3, k).unwrap());
        instances += 2;
    }
    // 2-reductive: a prime-power fibre with distinct generating constants
    for q in [2u64, 3, 4, 5, 7, 8] {
        for len in 1..=3usize {
            for constants in distinct_tuples(q, len) {
                if let Ok(mesh) = si_two_reductive(q, &constants) {
                    check_si(&mesh);
                    instances += 1;
                }
            }
        }
    }
    println!(
        "PASS: the simple quandle and {instances} subdirectly irreducible family instances \
         verified through their congruences"
    );
}

#[test]
fn constant_matrix_counts_match_brute_force() {
    for (p, m) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let profile = FibreProfile::new(vec![AbelianGroup::cyclic(p); m]);
        let fast = generating_matrix_count(&profile);

        // walk every zero-diagonal matrix over Z_p and count directly
        let cells = m * (m - 1);
        let mut slow = 0u128;
        let mut entries = vec![0u64; cells];
        loop {
            // column j holds the off-diagonal constants c[i][j], i != j
            let generating = (0..m).all(|j| {
                (0..m - 1).any(|t| entries[j * (m - 1) + t] != 0)
            });
            if generating {
                slow += 1;
            }
            let mut pos = 0;
            loop {
                if pos == cells {
                    break;
                }
                entries[pos] += 1;
                if entries[pos] < p {
                    break;
                }
                entries[pos] = 0;
                pos += 1;
            }
            if pos == cells {
                break;
            }
        }
        assert_eq!(fast, slow, "p {p}, m {m}");
        assert_eq!(fast, ((p as u128).pow(m as u32 - 1) - 1).pow(m as u32), "p {p}, m {m}");
    }
    println!("PASS: generating matrix counts match exhaustive enumeration");
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sorted tuples of `len` pairwise distinct elements of `Z_q`.
fn distinct_tuples(q: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(q: u64, len: usize, start: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in start..q {
            current.push(v);
            rec(q, len, v + 1, current, out);
            current.pop();
        }
    }
    rec(q, len, 0, &mut current, &mut out);
    out
}

/// Subdirect irreducibility of the sum, both through the principal
/// congruences and through the whole lattice.
fn check_si(mesh: &AffineMesh) {
    let q = mesh.sum();
    assert!(is_subdirectly_irreducible(&q), "{mesh:?}");
    let lattice = congruence_lattice(&q, 1 << 16).unwrap();
    let nontrivial: Vec<&Congruence> = lattice.iter().filter(|c| !c.is_diagonal()).collect();
    let monolith = nontrivial
        .iter()
        .skip(1)
        .fold(nontrivial[0].clone(), |acc, c| acc.meet(c));
    assert!(!monolith.is_diagonal(), "{mesh:?}");
}
