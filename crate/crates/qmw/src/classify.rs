//! Congruences, simplicity, subdirect irreducibility, and the standard
//! families of simple and subdirectly irreducible medial quandles.

use crate::abelian::{AbelianGroup, GroupElement, Homomorphism};
use crate::mesh::{decompose, AffineMesh, MeshError};
use crate::quandle::Quandle;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("invalid polynomial: {0}")]
    Polynomial(String),
    #[error("invalid family parameter: {0}")]
    Family(String),
    #[error("congruence lattice exceeds the limit of {limit} congruences")]
    LatticeTooLarge { limit: usize },
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// A congruence of a quandle, stored as the partition it induces:
/// `labels[x]` is the least element of the class of `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    labels: Vec<usize>,
}

impl Congruence {
    fn from_dsu(mut parent: Vec<usize>) -> Self {
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        let n = parent.len();
        let mut labels = vec![usize::MAX; n];
        for x in 0..n {
            let root = find(&mut parent, x);
            if labels[root] == usize::MAX {
                labels[root] = x; // first visit is the least element
            }
            labels[x] = labels[root];
        }
        Congruence { labels }
    }

    pub fn diagonal(n: usize) -> Self {
        Congruence { labels: (0..n).collect() }
    }

    pub fn full(n: usize) -> Self {
        Congruence { labels: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn is_diagonal(&self) -> bool {
        self.labels.iter().enumerate().all(|(x, &l)| l == x)
    }

    pub fn is_full(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    pub fn num_classes(&self) -> usize {
        self.labels.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in self.labels.iter().enumerate() {
            if l == x {
                out.push(vec![x]);
            } else {
                out.iter_mut().find(|c| c[0] == l).expect("label precedes").push(x);
            }
        }
        out
    }

    /// Largest congruence contained in both: intersection of the partitions.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.labels.len();
        let mut labels = vec![usize::MAX; n];
        for x in 0..n {
            if labels[x] != usize::MAX {
                continue;
            }
            labels[x] = x;
            for y in (x + 1)..n {
                if self.labels[y] == self.labels[x] && other.labels[y] == other.labels[x] {
                    labels[y] = x;
                }
            }
        }
        Congruence { labels }
    }

    /// Smallest congruence containing both: the transitive closure of the
    /// union, which is already compatible with the operations.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.labels.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for labels in [&self.labels, &other.labels] {
            for (x, &l) in labels.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, l));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        Congruence::from_dsu(parent)
    }
}

/// The least congruence identifying `a` and `b`: close the pair under all
/// left and right translations.
pub fn principal_congruence(q: &Quandle, a: usize, b: usize) -> Congruence {
    let n = q.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[rx.max(ry)] = rx.min(ry);
        for c in 0..n {
            queue.push((q.op(c, x), q.op(c, y)));
            queue.push((q.op(x, c), q.op(y, c)));
        }
    }
    Congruence::from_dsu(parent)
}

/// Every congruence of the quandle: the join closure of the principal
/// congruences together with the diagonal. Errors out once more than
/// `limit` congruences appear (the lattice of a projection quandle is the
/// full partition lattice, which grows like the Bell numbers).
pub fn congruence_lattice(q: &Quandle, limit: usize) -> Result<Vec<Congruence>, ClassifyError> {
    let n = q.order();
    let mut set: BTreeSet<Congruence> = BTreeSet::new();
    set.insert(Congruence::diagonal(n));
    for a in 0..n {
        for b in (a + 1)..n {
            set.insert(principal_congruence(q, a, b));
            if set.len() > limit {
                return Err(ClassifyError::LatticeTooLarge { limit });
            }
        }
    }
    let mut frontier: Vec<Congruence> = set.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        let joins: Vec<Congruence> = set.iter().map(|y| x.join(y)).collect();
        for j in joins {
            if set.insert(j.clone()) {
                if set.len() > limit {
                    return Err(ClassifyError::LatticeTooLarge { limit });
                }
                frontier.push(j);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// A quandle is simple when it has at least two elements and no congruence
/// besides the diagonal and the full relation; it suffices to check that
/// every principal congruence is full.
pub fn is_simple(q: &Quandle) -> bool {
    let n = q.order();
    if n < 2 {
        return false;
    }
    (0..n).all(|a| ((a + 1)..n).all(|b| principal_congruence(q, a, b).is_full()))
}

/// A quandle is subdirectly irreducible when it has a least nontrivial
/// congruence. Every nontrivial congruence contains a principal one, so
/// this holds exactly when the meet of all principal congruences is not
/// the diagonal.
pub fn is_subdirectly_irreducible(q: &Quandle) -> bool {
    let n = q.order();
    if n < 2 {
        return false;
    }
    let mut meet = Congruence::full(n);
    for a in 0..n {
        for b in (a + 1)..n {
            meet = meet.meet(&principal_congruence(q, a, b));
            if meet.is_diagonal() {
                return false;
            }
        }
    }
    true
}

// ---- polynomial helpers over a prime field ----

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn poly_trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Remainder of `f` divided by monic `g`, coefficients mod `p`, low degree
/// first.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = poly_trim(f.iter().map(|&c| c % p).collect());
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dg;
        for (i, &gc) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - lead * gc % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn monic_polys(degree: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut coeffs = vec![0u64; degree + 1];
    coeffs[degree] = 1;
    fn rec(coeffs: &mut Vec<u64>, pos: usize, degree: usize, p: u64, out: &mut Vec<Vec<u64>>) {
        if pos == degree {
            out.push(coeffs.clone());
            return;
        }
        for v in 0..p {
            coeffs[pos] = v;
            rec(coeffs, pos + 1, degree, p, out);
        }
        coeffs[pos] = 0;
    }
    rec(&mut coeffs, 0, degree, p, &mut out);
    out
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let degree = poly.len() - 1;
    if degree == 0 {
        return false;
    }
    for d in 1..=degree / 2 {
        for g in monic_polys(d, p) {
            if poly_rem(poly, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The simple affine quandle `Aff((Z_p)^k, f)` with `f` the companion
/// matrix of a monic irreducible polynomial of degree `k` over `Z_p`.
/// The polynomial is given by its coefficients, constant term first, and
/// must have a nonzero constant term (so `f` is invertible) and not
/// vanish at 1 (so the quandle is latin); irreducibility of the
/// characteristic polynomial forces every congruence to collapse.
pub fn simple_affine(p: u64, k: usize, poly: &[u64]) -> Result<Quandle, ClassifyError> {
    if !is_prime(p) {
        return Err(ClassifyError::Polynomial(format!("{p} is not prime")));
    }
    if k == 0 || poly.len() != k + 1 {
        return Err(ClassifyError::Polynomial(format!(
            "need {} coefficients for degree {k}",
            k + 1
        )));
    }
    let poly: Vec<u64> = poly.iter().map(|&c| c % p).collect();
    if *poly.last().expect("nonempty") != 1 {
        return Err(ClassifyError::Polynomial("polynomial must be monic".into()));
    }
    if poly[0] == 0 {
        return Err(ClassifyError::Polynomial(
            "constant term must be nonzero".into(),
        ));
    }
    if poly.iter().fold(0, |acc, &c| (acc + c) % p) == 0 {
        return Err(ClassifyError::Polynomial(
            "1 must not be a root, else the quandle is not latin".into(),
        ));
    }
    if !is_irreducible(&poly, p) {
        return Err(ClassifyError::Polynomial(
            "polynomial must be irreducible".into(),
        ));
    }
    let group = AbelianGroup::new(vec![p; k]).expect("constant factors divide");
    let images: Vec<GroupElement> = (0..k)
        .map(|t| {
            if t + 1 < k {
                group.generator(t + 1)
            } else {
                let coords: Vec<u64> = (0..k).map(|s| (p - poly[s]) % p).collect();
                group.element(coords).expect("reduced coordinates")
            }
        })
        .collect();
    let f = Homomorphism::new(group.clone(), group.clone(), images).expect("linear map");
    Ok(Quandle::affine(&group, &f))
}

fn cyclic_of(order: u64) -> AbelianGroup {
    AbelianGroup::cyclic(order)
}

/// Multiplication by two as a homomorphism between cyclic groups.
fn doubling_between(domain: &AbelianGroup, codomain: &AbelianGroup) -> Homomorphism {
    let images = (0..domain.rank())
        .map(|_| {
            if codomain.is_trivial() {
                codomain.zero()
            } else {
                codomain.element(vec![2 % codomain.order()]).expect("reduced")
            }
        })
        .collect();
    Homomorphism::new(domain.clone(), codomain.clone(), images).expect("orders divide")
}

/// The subdirectly irreducible involutory medial quandles come in three
/// families; this builds the mesh of the requested member.
///
/// * family 1: one fibre `Z_q` for an odd prime power `q`, diagonal
///   doubling, no constants (the dihedral quandle of order `q`);
/// * family 2: fibres `Z_{2^k}, Z_{2^(k-1)}`, every homomorphism doubling,
///   constants `c_{1,0} = 1`, `c_{0,1} = -1`;
/// * family 3: fibres `Z_{2^k}, Z_{2^(k-1)}, Z_{2^(k-1)}`, every
///   homomorphism doubling, constants `1, -1` arranged so the two small
///   fibres are interchangeable.
pub fn si_involutory(family: u8, parameter: u64) -> Result<AffineMesh, ClassifyError> {
    match family {
        1 => {
            let q = parameter;
            let odd_prime_power = q % 2 == 1
                && q > 1
                && (2..=q).filter(|d| q % d == 0).find(|&d| is_prime(d)).map_or(false, |p| {
                    let mut m = q;
                    while m % p == 0 {
                        m /= p;
                    }
                    m == 1
                });
            if !odd_prime_power {
                return Err(ClassifyError::Family(format!(
                    "{q} is not an odd prime power"
                )));
            }
            let a = cyclic_of(q);
            let phi = vec![vec![Homomorphism::scalar(a.clone(), 2)]];
            let c = vec![vec![a.zero()]];
            Ok(AffineMesh::new(vec![a], phi, c)?)
        }
        2 | 3 => {
            let k = parameter;
            if k == 0 {
                return Err(ClassifyError::Family("need k >= 1".into()));
            }
            let big = cyclic_of(1 << k);
            let small = cyclic_of(1 << (k - 1));
            let groups: Vec<AbelianGroup> = if family == 2 {
                vec![big.clone(), small.clone()]
            } else {
                vec![big.clone(), small.clone(), small.clone()]
            };
            let m = groups.len();
            let phi: Vec<Vec<Homomorphism>> = (0..m)
                .map(|i| (0..m).map(|j| doubling_between(&groups[i], &groups[j])).collect())
                .collect();
            let one = |g: &AbelianGroup| {
                if g.is_trivial() {
                    g.zero()
                } else {
                    g.element(vec![1]).expect("cyclic generator")
                }
            };
            let minus_one = |g: &AbelianGroup| g.neg(&one(g));
            let c: Vec<Vec<GroupElement>> = if family == 2 {
                vec![
                    vec![big.zero(), minus_one(&small)],
                    vec![one(&big), small.zero()],
                ]
            } else {
                vec![
                    vec![big.zero(), minus_one(&small), small.zero()],
                    vec![one(&big), small.zero(), one(&small)],
                    vec![big.zero(), minus_one(&small), small.zero()],
                ]
            };
            Ok(AffineMesh::new(groups, phi, c)?)
        }
        _ => Err(ClassifyError::Family(format!("no family {family}"))),
    }
}

/// The subdirectly irreducible two-reductive medial quandles: one fibre
/// `Z_q` for a prime power `q`, the rest trivial, zero homomorphisms, and
/// pairwise distinct constants from the trivial fibres into `Z_q` that
/// generate it.
pub fn si_two_reductive(q: u64, constants: &[u64]) -> Result<AffineMesh, ClassifyError> {
    let distinct: BTreeSet<u64> = constants.iter().map(|&c| c % q).collect();
    if distinct.len() != constants.len() {
        return Err(ClassifyError::Family("constants must be pairwise distinct".into()));
    }
    let a = cyclic_of(q);
    let elems: Vec<GroupElement> = constants
        .iter()
        .map(|&v| a.element(vec![v % q]).expect("reduced"))
        .collect();
    if a.subgroup_generated(&elems).len() as u64 != q {
        return Err(ClassifyError::Family("constants must generate the fibre".into()));
    }
    let m = constants.len() + 1;
    let groups: Vec<AbelianGroup> =
        std::iter::once(a.clone()).chain((1..m).map(|_| AbelianGroup::trivial())).collect();
    let c: Vec<Vec<GroupElement>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if j == 0 && i > 0 {
                        elems[i - 1].clone()
                    } else {
                        groups[j].zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(AffineMesh::with_zero_phi(groups, c)?)
}

/// Everything the library can say about one quandle.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub medial: bool,
    pub connected: bool,
    pub latin: bool,
    pub involutory: bool,
    pub two_reductive: bool,
    pub reductivity_degree: Option<usize>,
    pub symmetry_order: u64,
    pub orbit_sizes: Vec<usize>,
    /// Invariant factors of each orbit group, present for medial quandles.
    pub orbit_groups: Option<Vec<String>>,
    pub simple: bool,
    pub subdirectly_irreducible: bool,
}

pub fn classify(q: &Quandle) -> ClassificationReport {
    let orbits = q.orbits();
    let medial = q.is_medial();
    let orbit_groups = if medial {
        decompose(q)
            .ok()
            .map(|d| d.mesh.groups().iter().map(|g| g.to_string()).collect())
    } else {
        None
    };
    ClassificationReport {
        order: q.order(),
        medial,
        connected: q.is_connected(),
        latin: q.is_latin(),
        involutory: q.is_involutory(),
        two_reductive: q.is_two_reductive(),
        reductivity_degree: q.reductivity_degree(),
        symmetry_order: q.symmetry_order(),
        orbit_sizes: orbits.iter().map(|o| o.len()).collect(),
        orbit_groups,
        simple: is_simple(q),
        subdirectly_irreducible: is_subdirectly_irreducible(q),
    }
}
