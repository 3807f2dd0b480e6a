//! Affine meshes and their sums.
//!
//! An affine mesh is an indexed family of finite abelian groups `A_i`
//! ("fibres") together with homomorphisms `phi[i][j]: A_i -> A_j` and
//! constants `c[i][j]` in `A_j`, subject to four axioms. Its sum is the
//! quandle on the disjoint union of the fibres with
//!
//! ```text
//! a * b = c[i][j] + phi[i][j](a) + (1 - phi[j][j])(b)
//! ```
//!
//! for `a` in `A_i` and `b` in `A_j`. Sums of meshes are exactly the medial
//! quandles; [`decompose`] recovers a mesh from a table, and [`homologous`]
//! decides whether two indecomposable meshes have isomorphic sums.

use crate::abelian::{all_isos, AbelianGroup, GroupElement, Homomorphism};
use crate::quandle::{OrbitGroupChart, Quandle, QuandleError};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("a mesh needs at least one fibre")]
    Empty,
    #[error("expected a {expected}x{expected} matrix of {what}, row {row} has {got} entries")]
    Shape { what: &'static str, expected: usize, row: usize, got: usize },
    #[error("homomorphism at ({i},{j}) must map fibre {i} into fibre {j}")]
    WrongHomomorphism { i: usize, j: usize },
    #[error("constant at ({i},{j}) does not lie in fibre {j}")]
    WrongConstant { i: usize, j: usize },
    #[error("invalid mesh data: {0}")]
    Data(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Outcome of checking the four mesh axioms, with a witness for the first
/// violation of each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshReport {
    /// A fibre `i` where `1 - phi[i][i]` is not an automorphism.
    pub diagonal_complement_bijective: Option<usize>,
    /// A fibre `i` with `c[i][i] != 0`.
    pub diagonal_constant_zero: Option<usize>,
    /// Indices `(i, j, j', k)` with `phi[j][k] phi[i][j] != phi[j'][k] phi[i][j']`.
    pub compositions_agree: Option<(usize, usize, usize, usize)>,
    /// Indices `(i, j, k)` with `phi[j][k](c[i][j]) != phi[k][k](c[i][k] - c[j][k])`.
    pub constants_compatible: Option<(usize, usize, usize)>,
}

impl MeshReport {
    pub fn is_mesh(&self) -> bool {
        self.diagonal_complement_bijective.is_none()
            && self.diagonal_constant_zero.is_none()
            && self.compositions_agree.is_none()
            && self.constants_compatible.is_none()
    }
}

impl fmt::Display for MeshReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.diagonal_complement_bijective {
            None => writeln!(f, "1 - phi[i][i] bijective: yes")?,
            Some(i) => writeln!(f, "1 - phi[i][i] bijective: no (fibre {i})")?,
        }
        match self.diagonal_constant_zero {
            None => writeln!(f, "diagonal constants zero: yes")?,
            Some(i) => writeln!(f, "diagonal constants zero: no (fibre {i})")?,
        }
        match self.compositions_agree {
            None => writeln!(f, "compositions agree: yes")?,
            Some((i, j, jp, k)) => writeln!(
                f,
                "compositions agree: no (phi[{j}][{k}] phi[{i}][{j}] != phi[{jp}][{k}] phi[{i}][{jp}])"
            )?,
        }
        match self.constants_compatible {
            None => write!(f, "constants compatible: yes"),
            Some((i, j, k)) => write!(
                f,
                "constants compatible: no (phi[{j}][{k}](c[{i}][{j}]) != phi[{k}][{k}](c[{i}][{k}] - c[{j}][{k}]))"
            ),
        }
    }
}

/// Groups `A_i`, homomorphisms `phi[i][j]: A_i -> A_j`, constants
/// `c[i][j]` in `A_j`. Construction checks shapes and membership only; run
/// [`AffineMesh::validate`] for the axioms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMesh {
    groups: Vec<AbelianGroup>,
    phi: Vec<Vec<Homomorphism>>,
    c: Vec<Vec<GroupElement>>,
}

impl AffineMesh {
    pub fn new(
        groups: Vec<AbelianGroup>,
        phi: Vec<Vec<Homomorphism>>,
        c: Vec<Vec<GroupElement>>,
    ) -> Result<Self, MeshError> {
        let k = groups.len();
        if k == 0 {
            return Err(MeshError::Empty);
        }
        for (rows, what) in [(phi.len(), "homomorphisms"), (c.len(), "constants")] {
            if rows != k {
                return Err(MeshError::Data(format!(
                    "expected {k} rows of {what}, found {rows}"
                )));
            }
        }
        for (row, r) in phi.iter().enumerate() {
            if r.len() != k {
                return Err(MeshError::Shape {
                    what: "homomorphisms",
                    expected: k,
                    row,
                    got: r.len(),
                });
            }
            for (col, h) in r.iter().enumerate() {
                if h.domain() != &groups[row] || h.codomain() != &groups[col] {
                    return Err(MeshError::WrongHomomorphism { i: row, j: col });
                }
            }
        }
        for (row, r) in c.iter().enumerate() {
            if r.len() != k {
                return Err(MeshError::Shape { what: "constants", expected: k, row, got: r.len() });
            }
            for (col, v) in r.iter().enumerate() {
                if !groups[col].contains(v) {
                    return Err(MeshError::WrongConstant { i: row, j: col });
                }
            }
        }
        Ok(AffineMesh { groups, phi, c })
    }

    /// A mesh with all homomorphisms zero; its sum satisfies `a*b = b + c[i][j]`.
    pub fn with_zero_phi(
        groups: Vec<AbelianGroup>,
        c: Vec<Vec<GroupElement>>,
    ) -> Result<Self, MeshError> {
        let phi = groups
            .iter()
            .map(|gi| {
                groups
                    .iter()
                    .map(|gj| Homomorphism::zero(gi.clone(), gj.clone()))
                    .collect()
            })
            .collect();
        Self::new(groups, phi, c)
    }

    pub fn num_fibres(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[AbelianGroup] {
        &self.groups
    }

    pub fn group(&self, i: usize) -> &AbelianGroup {
        &self.groups[i]
    }

    pub fn phi(&self, i: usize, j: usize) -> &Homomorphism {
        &self.phi[i][j]
    }

    pub fn constant(&self, i: usize, j: usize) -> &GroupElement {
        &self.c[i][j]
    }

    pub fn order(&self) -> u64 {
        self.groups.iter().map(|g| g.order()).sum()
    }

    pub fn fibre_sizes(&self) -> Vec<u64> {
        self.groups.iter().map(|g| g.order()).collect()
    }

    /// Index of the first element of each fibre in the sum.
    pub fn fibre_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.groups.len());
        let mut acc = 0usize;
        for g in &self.groups {
            offsets.push(acc);
            acc += g.order() as usize;
        }
        offsets
    }

    /// Fibre and local group element of an element of the sum.
    pub fn locate(&self, x: usize) -> (usize, GroupElement) {
        let offsets = self.fibre_offsets();
        let i = match offsets.binary_search(&x) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        (i, self.groups[i].element_at((x - offsets[i]) as u64))
    }

    /// Index in the sum of a fibre element.
    pub fn global_index(&self, i: usize, a: &GroupElement) -> usize {
        self.fibre_offsets()[i] + self.groups[i].index_of(a) as usize
    }

    pub fn validate(&self) -> MeshReport {
        let k = self.groups.len();
        let diagonal_complement_bijective = (0..k).find(|&i| {
            !Homomorphism::identity(self.groups[i].clone())
                .sub(&self.phi[i][i])
                .is_bijective()
        });
        let diagonal_constant_zero =
            (0..k).find(|&i| self.c[i][i] != self.groups[i].zero());
        let mut compositions_agree = None;
        'comp: for i in 0..k {
            for kk in 0..k {
                let first = self.phi[0][kk].compose(&self.phi[i][0]);
                for j in 1..k {
                    if self.phi[j][kk].compose(&self.phi[i][j]) != first {
                        compositions_agree = Some((i, 0, j, kk));
                        break 'comp;
                    }
                }
            }
        }
        let mut constants_compatible = None;
        'compat: for i in 0..k {
            for j in 0..k {
                for kk in 0..k {
                    let lhs = self.phi[j][kk].apply(&self.c[i][j]);
                    let diff = self.groups[kk].sub(&self.c[i][kk], &self.c[j][kk]);
                    if lhs != self.phi[kk][kk].apply(&diff) {
                        constants_compatible = Some((i, j, kk));
                        break 'compat;
                    }
                }
            }
        }
        MeshReport {
            diagonal_complement_bijective,
            diagonal_constant_zero,
            compositions_agree,
            constants_compatible,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_mesh()
    }

    /// A mesh is indecomposable when, for every fibre `j`, the elements
    /// `c[i][j] + phi[i][j](a)` generate the whole group `A_j`. Sums of
    /// indecomposable meshes have one orbit per fibre.
    pub fn is_indecomposable(&self) -> bool {
        let k = self.groups.len();
        (0..k).all(|j| {
            let mut gens = Vec::new();
            for i in 0..k {
                gens.push(self.c[i][j].clone());
                for t in 0..self.groups[i].rank() {
                    gens.push(self.phi[i][j].apply(&self.groups[i].generator(t)));
                }
            }
            self.groups[j].subgroup_generated(&gens).len() as u64 == self.groups[j].order()
        })
    }

    /// The quandle on the disjoint union of the fibres, fibre-major.
    pub fn sum(&self) -> Quandle {
        let k = self.groups.len();
        let n = self.order() as usize;
        let offsets = self.fibre_offsets();
        let elements: Vec<Vec<GroupElement>> =
            self.groups.iter().map(|g| g.elements()).collect();
        let one_minus_diag: Vec<Homomorphism> = (0..k)
            .map(|j| Homomorphism::identity(self.groups[j].clone()).sub(&self.phi[j][j]))
            .collect();
        let mut rows = vec![vec![0usize; n]; n];
        for i in 0..k {
            for (ai, a) in elements[i].iter().enumerate() {
                for j in 0..k {
                    let shift = self.groups[j].add(&self.c[i][j], &self.phi[i][j].apply(a));
                    for (bi, b) in elements[j].iter().enumerate() {
                        let v = self.groups[j].add(&shift, &one_minus_diag[j].apply(b));
                        rows[offsets[i] + ai][offsets[j] + bi] =
                            offsets[j] + self.groups[j].index_of(&v) as usize;
                    }
                }
            }
        }
        Quandle::new(rows).expect("fibres are non-empty and indices in range")
    }

    /// All homomorphisms zero.
    pub fn is_two_reductive(&self) -> bool {
        self.phi.iter().flatten().all(|h| h.is_zero())
    }

    /// Least `m` such that the sum is `m`-reductive (the identity
    /// `(..(x*y)*y..)*y = y` with `m` factors `y`), or `None` when the sum
    /// is not reductive.
    pub fn reductivity_degree(&self) -> Option<usize> {
        let k = self.groups.len();
        for m in 1..=self.order() as usize {
            let ok = (0..k).all(|j| {
                let p = self.phi[j][j].pow(m as u32 - 1);
                p.compose(&self.phi[j][j]).is_zero()
                    && (0..k).all(|i| {
                        p.compose(&self.phi[i][j]).is_zero()
                            && p.apply(&self.c[i][j]) == self.groups[j].zero()
                    })
            });
            if ok {
                return Some(m);
            }
        }
        None
    }

    /// Whether the sum satisfies `L_a^m = 1` for every `a`.
    pub fn is_symmetric(&self, m: usize) -> bool {
        assert!(m >= 1);
        let k = self.groups.len();
        (0..k).all(|j| {
            let f = Homomorphism::identity(self.groups[j].clone()).sub(&self.phi[j][j]);
            if f.pow(m as u32) != Homomorphism::identity(self.groups[j].clone()) {
                return false;
            }
            // s = 1 + f + ... + f^(m-1)
            let mut s = Homomorphism::identity(self.groups[j].clone());
            let mut power = f.clone();
            for _ in 1..m {
                s = s.add(&power);
                power = power.compose(&f);
            }
            (0..k).all(|i| {
                s.compose(&self.phi[i][j]).is_zero()
                    && s.apply(&self.c[i][j]) == self.groups[j].zero()
            })
        })
    }

    /// Whether the sum is involutory (`a*(a*b) = b`). For indecomposable
    /// meshes this is equivalent to every diagonal `phi[i][i]` being the
    /// doubling map.
    pub fn is_involutory(&self) -> bool {
        self.is_symmetric(2)
    }

    /// `|Im(phi[i][i]^2)|` divides the gcd of the fibre sizes, a necessary
    /// condition for the mesh axioms.
    pub fn squared_diagonal_divisibility(&self) -> bool {
        let g = self.fibre_sizes().into_iter().fold(0u64, gcd);
        (0..self.groups.len()).all(|i| g % self.phi[i][i].pow(2).image_size() == 0)
    }

    /// In an indecomposable mesh, a zero entry forces its whole column to
    /// be zero; this checks that every column is all-zero or all-nonzero.
    pub fn zero_columns_propagated(&self) -> bool {
        let k = self.groups.len();
        (0..k).all(|j| {
            let zeros = (0..k).filter(|&i| self.phi[i][j].is_zero()).count();
            zeros == 0 || zeros == k
        })
    }

    /// For a mesh whose diagonal homomorphisms are all bijective (a sum with
    /// all orbits latin), the homologous normal form: equal fibres, every
    /// homomorphism equal to `phi[0][0]`, zero constants. Its sum is the
    /// direct product of the latin quandle `Aff(A, 1 - phi[0][0])` and a
    /// projection quandle. Returns `None` when some diagonal is not bijective.
    pub fn latin_normalize(&self) -> Option<AffineMesh> {
        let k = self.groups.len();
        if (0..k).any(|i| !self.phi[i][i].is_bijective()) {
            return None;
        }
        assert!(
            self.groups.iter().all(|g| g == &self.groups[0]),
            "bijective diagonals force equal fibres in a valid mesh"
        );
        let a = self.groups[0].clone();
        let phi = vec![vec![self.phi[0][0].clone(); k]; k];
        let c = vec![vec![a.zero(); k]; k];
        Some(AffineMesh { groups: vec![a; k], phi, c })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MeshData::from(self)).expect("serializable")
    }

    pub fn from_json(input: &str) -> Result<Self, MeshError> {
        let data: MeshData = serde_json::from_str(input)?;
        data.try_into()
    }
}

impl fmt::Debug for AffineMesh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMesh(")?;
        for (t, g) in self.groups.iter().enumerate() {
            if t > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "; phi ")?;
        for row in &self.phi {
            write!(f, "[")?;
            for (t, h) in row.iter().enumerate() {
                if t > 0 {
                    write!(f, " ")?;
                }
                let imgs: Vec<String> =
                    h.images().iter().map(|v| v.to_string()).collect();
                write!(f, "{}", imgs.join(","))?;
            }
            write!(f, "]")?;
        }
        write!(f, "; c ")?;
        for row in &self.c {
            write!(f, "[")?;
            for (t, v) in row.iter().enumerate() {
                if t > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, ")")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Serialized form: invariant factors per fibre, homomorphisms as lists of
/// generator images (coordinate vectors in the codomain), constants as
/// coordinate vectors.
#[derive(Serialize, Deserialize)]
struct MeshData {
    groups: Vec<Vec<u64>>,
    phi: Vec<Vec<Vec<Vec<u64>>>>,
    c: Vec<Vec<Vec<u64>>>,
}

impl From<&AffineMesh> for MeshData {
    fn from(mesh: &AffineMesh) -> Self {
        MeshData {
            groups: mesh.groups.iter().map(|g| g.factors().to_vec()).collect(),
            phi: mesh
                .phi
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|h| h.images().iter().map(|v| v.coords().to_vec()).collect())
                        .collect()
                })
                .collect(),
            c: mesh
                .c
                .iter()
                .map(|row| row.iter().map(|v| v.coords().to_vec()).collect())
                .collect(),
        }
    }
}

impl TryFrom<MeshData> for AffineMesh {
    type Error = MeshError;

    fn try_from(data: MeshData) -> Result<Self, MeshError> {
        let groups: Vec<AbelianGroup> = data
            .groups
            .iter()
            .map(|f| AbelianGroup::canonicalize(f).map_err(|e| MeshError::Data(e.to_string())))
            .collect::<Result<_, _>>()?;
        let k = groups.len();
        if k == 0 {
            return Err(MeshError::Empty);
        }
        if data.phi.len() != k || data.c.len() != k {
            return Err(MeshError::Data("matrix sizes do not match the fibre count".into()));
        }
        let element = |j: usize, coords: &[u64]| -> Result<GroupElement, MeshError> {
            groups[j]
                .element(coords.to_vec())
                .map_err(|e| MeshError::Data(e.to_string()))
        };
        let mut phi = Vec::with_capacity(k);
        for (i, row) in data.phi.iter().enumerate() {
            if row.len() != k {
                return Err(MeshError::Data(format!("phi row {i} has {} entries", row.len())));
            }
            let mut hom_row = Vec::with_capacity(k);
            for (j, images) in row.iter().enumerate() {
                if images.len() != groups[i].rank() {
                    return Err(MeshError::Data(format!(
                        "phi[{i}][{j}] needs {} generator images, found {}",
                        groups[i].rank(),
                        images.len()
                    )));
                }
                let images = images
                    .iter()
                    .map(|coords| element(j, coords))
                    .collect::<Result<Vec<_>, _>>()?;
                let h = Homomorphism::new(groups[i].clone(), groups[j].clone(), images)
                    .map_err(|e| MeshError::Data(format!("phi[{i}][{j}]: {e}")))?;
                hom_row.push(h);
            }
            phi.push(hom_row);
        }
        let mut c = Vec::with_capacity(k);
        for (i, row) in data.c.iter().enumerate() {
            if row.len() != k {
                return Err(MeshError::Data(format!("c row {i} has {} entries", row.len())));
            }
            let mut c_row = Vec::with_capacity(k);
            for (j, coords) in row.iter().enumerate() {
                c_row.push(element(j, coords)?);
            }
            c.push(c_row);
        }
        AffineMesh::new(groups, phi, c)
    }
}

/// An affine mesh recovered from a medial quandle, together with the data
/// identifying the quandle with the sum of the mesh.
#[derive(Clone, Debug)]
pub struct MeshDecomposition {
    pub mesh: AffineMesh,
    /// Minimal element of each orbit, in fibre order.
    pub transversal: Vec<usize>,
    pub charts: Vec<OrbitGroupChart>,
    /// `to_sum[x]` is the element of `mesh.sum()` corresponding to `x`.
    pub to_sum: Vec<usize>,
}

/// Recovers an indecomposable affine mesh from a medial quandle: one fibre
/// per orbit (the orbit group based at its minimal element), with
/// `phi[e][f](x) = x*f - e*f` and `c[e][f] = e*f`. The reconstruction is
/// verified element by element against the original table.
pub fn decompose(q: &Quandle) -> Result<MeshDecomposition, QuandleError> {
    let report = q.validate();
    if !report.is_quandle() {
        return Err(QuandleError::NotQuandle(report.to_string().replace('\n', "; ")));
    }
    let orbits = q.orbits();
    let transversal: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    let charts: Vec<OrbitGroupChart> = transversal
        .iter()
        .map(|&e| q.orbit_group(e))
        .collect::<Result<_, _>>()?;
    let k = transversal.len();
    let groups: Vec<AbelianGroup> = charts.iter().map(|ch| ch.group.clone()).collect();
    let mut c = Vec::with_capacity(k);
    let mut phi = Vec::with_capacity(k);
    for i in 0..k {
        let e = transversal[i];
        let mut c_row = Vec::with_capacity(k);
        let mut phi_row = Vec::with_capacity(k);
        for j in 0..k {
            let f = transversal[j];
            let ef = charts[j].to_group(q.op(e, f)).clone();
            let images: Vec<GroupElement> = (0..groups[i].rank())
                .map(|t| {
                    let x = charts[i].from_group(&groups[i].generator(t));
                    let xf = charts[j].to_group(q.op(x, f));
                    groups[j].sub(xf, &ef)
                })
                .collect();
            let hom = Homomorphism::new(groups[i].clone(), groups[j].clone(), images)
                .map_err(|_| QuandleError::NotMedial { base: e, orbit: j })?;
            c_row.push(ef);
            phi_row.push(hom);
        }
        c.push(c_row);
        phi.push(phi_row);
    }
    let mesh = AffineMesh::new(groups, phi, c).expect("shapes are consistent");
    // identify each element with its image in the sum and verify the tables
    // agree; for a medial quandle this cannot fail
    let orbit_of = {
        let mut v = vec![0usize; q.order()];
        for (i, orbit) in orbits.iter().enumerate() {
            for &x in orbit {
                v[x] = i;
            }
        }
        v
    };
    let offsets = mesh.fibre_offsets();
    let to_sum: Vec<usize> = (0..q.order())
        .map(|x| {
            let i = orbit_of[x];
            offsets[i] + mesh.groups[i].index_of(charts[i].to_group(x)) as usize
        })
        .collect();
    let sum = mesh.sum();
    for x in 0..q.order() {
        for y in 0..q.order() {
            assert_eq!(
                to_sum[q.op(x, y)],
                sum.op(to_sum[x], to_sum[y]),
                "mesh reconstruction disagrees with the table at ({x},{y})"
            );
        }
    }
    Ok(MeshDecomposition { mesh, transversal, charts, to_sum })
}

/// Witness that two meshes are homologous: a permutation `pi` of the
/// fibres, isomorphisms `psi[i]: A_i -> A'_{pi(i)}`, and shifts
/// `d[i]` in `A'_{pi(i)}` satisfying the two homology conditions. The map
/// `a -> psi[i](a) + d[i]` is then an isomorphism of the sums.
#[derive(Clone, Debug)]
pub struct HomologyWitness {
    pub pi: Vec<usize>,
    pub psi: Vec<Homomorphism>,
    pub d: Vec<GroupElement>,
}

impl HomologyWitness {
    pub fn verify(&self, m1: &AffineMesh, m2: &AffineMesh) -> bool {
        let k = m1.num_fibres();
        if m2.num_fibres() != k
            || self.pi.len() != k
            || self.psi.len() != k
            || self.d.len() != k
        {
            return false;
        }
        let mut seen = vec![false; k];
        for &t in &self.pi {
            if t >= k || std::mem::replace(&mut seen[t], true) {
                return false;
            }
        }
        for i in 0..k {
            let psi = &self.psi[i];
            if psi.domain() != &m1.groups[i]
                || psi.codomain() != &m2.groups[self.pi[i]]
                || !psi.is_bijective()
                || !m2.groups[self.pi[i]].contains(&self.d[i])
            {
                return false;
            }
        }
        for i in 0..k {
            for j in 0..k {
                if !h1_holds(m1, m2, &self.pi, &self.psi, i, j)
                    || !h2_holds(m1, m2, &self.pi, &self.psi, &self.d, i, j)
                {
                    return false;
                }
            }
        }
        true
    }

    /// The isomorphism `sum(m1) -> sum(m2)` the witness induces, as an
    /// image list on sum indices.
    pub fn quandle_isomorphism(&self, m1: &AffineMesh, m2: &AffineMesh) -> Vec<usize> {
        (0..m1.order() as usize)
            .map(|x| {
                let (i, a) = m1.locate(x);
                let image = m2.groups[self.pi[i]].add(&self.psi[i].apply(&a), &self.d[i]);
                m2.global_index(self.pi[i], &image)
            })
            .collect()
    }
}

fn h1_holds(
    m1: &AffineMesh,
    m2: &AffineMesh,
    pi: &[usize],
    psi: &[Homomorphism],
    i: usize,
    j: usize,
) -> bool {
    psi[j].compose(&m1.phi[i][j]) == m2.phi[pi[i]][pi[j]].compose(&psi[i])
}

fn h2_holds(
    m1: &AffineMesh,
    m2: &AffineMesh,
    pi: &[usize],
    psi: &[Homomorphism],
    d: &[GroupElement],
    i: usize,
    j: usize,
) -> bool {
    let target = &m2.groups[pi[j]];
    let lhs = psi[j].apply(&m1.c[i][j]);
    let rhs = target.add(
        &m2.c[pi[i]][pi[j]],
        &target.sub(
            &m2.phi[pi[i]][pi[j]].apply(&d[i]),
            &m2.phi[pi[j]][pi[j]].apply(&d[j]),
        ),
    );
    lhs == rhs
}

/// Invariants of a fibre preserved by homology, used to prune the search.
type FibreSig = (Vec<u64>, Vec<u64>, u64, Vec<(Vec<u64>, u64, u64)>, Vec<u64>);

fn fibre_signature(m: &AffineMesh, i: usize, with_constant_orders: bool) -> FibreSig {
    let k = m.num_fibres();
    let diag = &m.phi[i][i];
    let power_profile: Vec<u64> = (1..=8u32).map(|r| diag.pow(r).image_size()).collect();
    let mut cross: Vec<(Vec<u64>, u64, u64)> = (0..k)
        .filter(|&j| j != i)
        .map(|j| {
            (
                m.groups[j].factors().to_vec(),
                m.phi[i][j].image_size(),
                m.phi[j][i].image_size(),
            )
        })
        .collect();
    cross.sort();
    // in a two-reductive mesh, shifts are irrelevant, so the multiset of
    // orders of the incoming constants is preserved as well
    let mut constants = Vec::new();
    if with_constant_orders {
        for j in 0..k {
            constants.push(m.groups[i].element_order(&m.c[j][i]));
        }
        constants.sort_unstable();
    }
    (
        m.groups[i].factors().to_vec(),
        power_profile,
        diag.fixed_point_count(),
        cross,
        constants,
    )
}

struct HomologySearch<'a> {
    m1: &'a AffineMesh,
    m2: &'a AffineMesh,
    sig1: Vec<FibreSig>,
    sig2: Vec<FibreSig>,
    pi: Vec<usize>,
    used: Vec<bool>,
    psi: Vec<Homomorphism>,
}

impl HomologySearch<'_> {
    fn fibres(&mut self, i: usize) -> Option<Vec<GroupElement>> {
        let k = self.m1.num_fibres();
        if i == k {
            let mut d = Vec::new();
            return self.shifts(&mut d);
        }
        for t in 0..k {
            if self.used[t] || self.sig1[i] != self.sig2[t] {
                continue;
            }
            for cand in all_isos(&self.m1.groups[i], &self.m2.groups[t]) {
                self.pi[i] = t;
                self.used[t] = true;
                self.psi[i] = cand;
                let consistent = (0..=i).all(|x| {
                    h1_holds(self.m1, self.m2, &self.pi, &self.psi, x, i)
                        && h1_holds(self.m1, self.m2, &self.pi, &self.psi, i, x)
                });
                if consistent {
                    if let Some(d) = self.fibres(i + 1) {
                        return Some(d);
                    }
                }
                self.used[t] = false;
            }
            self.pi[i] = usize::MAX;
        }
        None
    }

    fn shifts(&self, d: &mut Vec<GroupElement>) -> Option<Vec<GroupElement>> {
        let i = d.len();
        if i == self.m1.num_fibres() {
            return Some(d.clone());
        }
        for v in self.m2.groups[self.pi[i]].elements() {
            d.push(v);
            let consistent = (0..=i).all(|x| {
                h2_holds(self.m1, self.m2, &self.pi, &self.psi, d, x, i)
                    && h2_holds(self.m1, self.m2, &self.pi, &self.psi, d, i, x)
            });
            if consistent {
                if let Some(res) = self.shifts(d) {
                    return Some(res);
                }
            }
            d.pop();
        }
        None
    }
}

/// Searches for a homology witness between two meshes. For indecomposable
/// meshes, a witness exists if and only if the sums are isomorphic.
pub fn homologous(m1: &AffineMesh, m2: &AffineMesh) -> Option<HomologyWitness> {
    let k = m1.num_fibres();
    if m2.num_fibres() != k || m1.order() != m2.order() {
        return None;
    }
    let mut groups1 = m1.groups.clone();
    let mut groups2 = m2.groups.clone();
    groups1.sort();
    groups2.sort();
    if groups1 != groups2 {
        return None;
    }
    let with_constant_orders = m1.is_two_reductive() && m2.is_two_reductive();
    let sig1: Vec<FibreSig> =
        (0..k).map(|i| fibre_signature(m1, i, with_constant_orders)).collect();
    let sig2: Vec<FibreSig> =
        (0..k).map(|i| fibre_signature(m2, i, with_constant_orders)).collect();
    {
        let mut s1 = sig1.clone();
        let mut s2 = sig2.clone();
        s1.sort();
        s2.sort();
        if s1 != s2 {
            return None;
        }
    }
    let trivial = Homomorphism::identity(AbelianGroup::trivial());
    let mut search = HomologySearch {
        m1,
        m2,
        sig1,
        sig2,
        pi: vec![usize::MAX; k],
        used: vec![false; k],
        psi: vec![trivial; k],
    };
    let d = search.fibres(0)?;
    let witness = HomologyWitness { pi: search.pi.clone(), psi: search.psi.clone(), d };
    debug_assert!(witness.verify(m1, m2));
    Some(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{AbelianGroup, Homomorphism};
    use crate::quandle::Quandle;

    fn z(n: u64) -> AbelianGroup {
        AbelianGroup::cyclic(n)
    }

    fn scalar(g: &AbelianGroup, m: i64) -> Homomorphism {
        Homomorphism::scalar(g.clone(), m)
    }

    /// Fibres must all be cyclic (possibly trivial); homomorphisms are
    /// multiplications by the given scalars, constants single coordinates.
    fn cyclic_mesh(orders: &[u64], phi_scalars: &[&[i64]], c_values: &[&[u64]]) -> AffineMesh {
        let groups: Vec<AbelianGroup> = orders.iter().map(|&n| z(n)).collect();
        let phi = (0..groups.len())
            .map(|i| {
                (0..groups.len())
                    .map(|j| {
                        let images = (0..groups[i].rank())
                            .map(|_| {
                                if groups[j].is_trivial() {
                                    groups[j].zero()
                                } else {
                                    let gen = groups[j].element(vec![1]).unwrap();
                                    groups[j].scalar_mul(phi_scalars[i][j], &gen)
                                }
                            })
                            .collect();
                        Homomorphism::new(groups[i].clone(), groups[j].clone(), images)
                            .expect("scalar maps between cyclic groups")
                    })
                    .collect()
            })
            .collect();
        let c = (0..groups.len())
            .map(|i| {
                (0..groups.len())
                    .map(|j| {
                        if groups[j].is_trivial() {
                            groups[j].zero()
                        } else {
                            groups[j].element(vec![c_values[i][j]]).expect("in range")
                        }
                    })
                    .collect()
            })
            .collect();
        AffineMesh::new(groups, phi, c).expect("consistent shapes")
    }

    fn six_element_mesh() -> AffineMesh {
        cyclic_mesh(&[3, 3], &[&[2, 2], &[2, 2]], &[&[0, 2], &[1, 0]])
    }

    fn dihedral(n: u64) -> Quandle {
        let g = z(n);
        Quandle::affine(&g, &Homomorphism::scalar(g.clone(), -1))
    }

    #[test]
    fn six_element_mesh_sums_to_the_dihedral_quandle() {
        let mesh = six_element_mesh();
        assert!(mesh.is_valid());
        assert!(mesh.is_indecomposable());
        let sum = mesh.sum();
        assert_eq!(sum.order(), 6);
        assert!(sum.brute_force_iso(&dihedral(6)).is_some());
        assert_eq!(sum.orbits().len(), 2, "orbits match fibres");
    }

    #[test]
    fn single_fibre_mesh_of_the_same_quandle_is_decomposable() {
        let mesh = cyclic_mesh(&[6], &[&[2]], &[&[0]]);
        assert!(mesh.is_valid());
        assert!(!mesh.is_indecomposable(), "the image of 2 generates only half of Z6");
        let sum = mesh.sum();
        assert!(sum.brute_force_iso(&dihedral(6)).is_some());
        assert_eq!(sum.orbits().len(), 2, "two orbits despite one fibre");
    }

    #[test]
    fn axiom_violations_are_reported() {
        // diagonal 1 - phi not bijective: phi = 1 on Z2
        let bad = cyclic_mesh(&[2], &[&[1]], &[&[0]]);
        assert_eq!(bad.validate().diagonal_complement_bijective, Some(0));
        // nonzero diagonal constant
        let bad = cyclic_mesh(&[2], &[&[0]], &[&[1]]);
        assert_eq!(bad.validate().diagonal_constant_zero, Some(0));
        // phi[1][0] phi[0][1] = 1 differs from phi[0][0] phi[0][0] = 0
        let bad = cyclic_mesh(&[2, 2], &[&[0, 1], &[1, 0]], &[&[0, 0], &[0, 0]]);
        assert!(bad.validate().compositions_agree.is_some());
        // phi[1][0](c[0][1]) = 1 but the diagonal maps kill everything
        let bad = cyclic_mesh(&[2, 2], &[&[0, 0], &[1, 0]], &[&[0, 1], &[0, 0]]);
        let report = bad.validate();
        assert!(report.compositions_agree.is_none());
        assert_eq!(report.constants_compatible, Some((0, 1, 0)));
    }

    #[test]
    fn the_six_medial_quandles_of_order_four() {
        let g22 = AbelianGroup::new(vec![2, 2]).unwrap();
        let phi_matrix = Homomorphism::new(
            g22.clone(),
            g22.clone(),
            vec![
                g22.element(vec![1, 1]).unwrap(),
                g22.element(vec![1, 0]).unwrap(),
            ],
        )
        .unwrap();
        let connected =
            AffineMesh::new(vec![g22.clone()], vec![vec![phi_matrix]], vec![vec![g22.zero()]])
                .unwrap();
        let meshes = vec![
            connected,
            cyclic_mesh(&[3, 1], &[&[0, 0], &[0, 0]], &[&[0, 0], &[1, 0]]),
            cyclic_mesh(&[2, 2], &[&[0, 0], &[0, 0]], &[&[0, 1], &[1, 0]]),
            cyclic_mesh(
                &[2, 1, 1],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]],
            ),
            cyclic_mesh(
                &[2, 1, 1],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[1, 0, 0], &[1, 0, 0]],
            ),
            cyclic_mesh(
                &[1, 1, 1, 1],
                &[&[0i64; 4], &[0; 4], &[0; 4], &[0; 4]],
                &[&[0u64; 4], &[0; 4], &[0; 4], &[0; 4]],
            ),
        ];
        for mesh in &meshes {
            assert!(mesh.is_valid(), "{mesh:?}");
            assert!(mesh.is_indecomposable(), "{mesh:?}");
            let sum = mesh.sum();
            assert!(sum.is_quandle());
            assert!(sum.is_medial());
        }
        for (a, ma) in meshes.iter().enumerate() {
            for (b, mb) in meshes.iter().enumerate().skip(a + 1) {
                assert!(
                    homologous(ma, mb).is_none(),
                    "meshes {a} and {b} should be distinct"
                );
                assert!(
                    ma.sum().brute_force_iso(&mb.sum()).is_none(),
                    "sums {a} and {b} should be non-isomorphic"
                );
            }
        }
    }

    #[test]
    fn decompose_recovers_a_homologous_mesh() {
        let q = dihedral(6);
        let dec = decompose(&q).unwrap();
        assert_eq!(dec.transversal, vec![0, 1]);
        assert_eq!(dec.mesh.groups(), &[z(3), z(3)]);
        assert!(dec.mesh.is_valid());
        assert!(dec.mesh.is_indecomposable());
        let witness = homologous(&dec.mesh, &six_element_mesh())
            .expect("canonical mesh is homologous to the hand-built one");
        assert!(witness.verify(&dec.mesh, &six_element_mesh()));
        // to_sum is an isomorphism onto the sum
        let sum = dec.mesh.sum();
        for x in 0..q.order() {
            for y in 0..q.order() {
                assert_eq!(dec.to_sum[q.op(x, y)], sum.op(dec.to_sum[x], dec.to_sum[y]));
            }
        }
    }

    #[test]
    fn decompose_rejects_bad_input() {
        let not_quandle = Quandle::new(vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(matches!(decompose(&not_quandle), Err(QuandleError::NotQuandle(_))));
        let all = Quandle::brute_force_enumerate(4, 6, |q| !q.is_medial()).unwrap();
        assert!(matches!(decompose(&all[0]), Err(QuandleError::NotMedial { .. })));
    }

    #[test]
    fn conjugate_connected_meshes_are_homologous() {
        let g22 = AbelianGroup::new(vec![2, 2]).unwrap();
        let build = |images: [[u64; 2]; 2]| {
            let h = Homomorphism::new(
                g22.clone(),
                g22.clone(),
                images
                    .iter()
                    .map(|c| g22.element(c.to_vec()).unwrap())
                    .collect(),
            )
            .unwrap();
            AffineMesh::new(vec![g22.clone()], vec![vec![h]], vec![vec![g22.zero()]]).unwrap()
        };
        // the two matrices are conjugate in GL(2,2)
        let m1 = build([[1, 1], [1, 0]]);
        let m2 = build([[0, 1], [1, 1]]);
        let w = homologous(&m1, &m2).expect("conjugate matrices give homologous meshes");
        assert!(w.verify(&m1, &m2));
        let iso = w.quandle_isomorphism(&m1, &m2);
        let (s1, s2) = (m1.sum(), m2.sum());
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(iso[s1.op(x, y)], s2.op(iso[x], iso[y]));
            }
        }
    }

    #[test]
    fn negation_matches_two_reductive_constants() {
        let m1 = cyclic_mesh(&[3, 1], &[&[0, 0], &[0, 0]], &[&[0, 0], &[1, 0]]);
        let m2 = cyclic_mesh(&[3, 1], &[&[0, 0], &[0, 0]], &[&[0, 0], &[2, 0]]);
        let w = homologous(&m1, &m2).expect("negation matches the constants");
        assert!(w.verify(&m1, &m2));
    }

    #[test]
    fn trivial_fibres_can_be_permuted() {
        let m1 = cyclic_mesh(
            &[2, 1, 1],
            &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]],
        );
        let m2 = cyclic_mesh(
            &[2, 1, 1],
            &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]],
        );
        let w = homologous(&m1, &m2).expect("swapping the trivial fibres matches");
        assert!(w.verify(&m1, &m2));
        assert_eq!(w.pi[0], 0);
        assert_ne!(w.pi[1], 1, "the trivial fibres must actually swap");
    }

    #[test]
    fn homology_can_require_nonzero_shifts() {
        let m1 = cyclic_mesh(&[3, 3], &[&[2, 1], &[1, 2]], &[&[0, 0], &[0, 0]]);
        let m2 = cyclic_mesh(&[3, 3], &[&[2, 1], &[1, 2]], &[&[0, 1], &[1, 0]]);
        assert!(m1.is_valid() && m1.is_indecomposable());
        assert!(m2.is_valid() && m2.is_indecomposable());
        let w = homologous(&m1, &m2).expect("homologous with a shift");
        assert!(w.verify(&m1, &m2));
        assert!(
            w.d.iter().zip(&w.pi).any(|(d, &t)| *d != m2.group(t).zero()),
            "a witness needs a nonzero shift"
        );
        // no witness with all shifts zero exists: check every pi and psi
        let zero_d = vec![m2.group(0).zero(), m2.group(1).zero()];
        for pi in [vec![0usize, 1], vec![1usize, 0]] {
            for psi0 in all_isos(m1.group(0), m2.group(pi[0])) {
                for psi1 in all_isos(m1.group(1), m2.group(pi[1])) {
                    let w = HomologyWitness {
                        pi: pi.clone(),
                        psi: vec![psi0.clone(), psi1.clone()],
                        d: zero_d.clone(),
                    };
                    assert!(!w.verify(&m1, &m2));
                }
            }
        }
        assert!(m1.sum().brute_force_iso(&m2.sum()).is_some());
    }

    #[test]
    fn mixed_reductivity_mesh() {
        let groups = vec![z(4), z(2)];
        let phi = vec![
            vec![scalar(&groups[0], 2), Homomorphism::zero(groups[0].clone(), groups[1].clone())],
            vec![
                Homomorphism::new(
                    groups[1].clone(),
                    groups[0].clone(),
                    vec![groups[0].element(vec![2]).unwrap()],
                )
                .unwrap(),
                Homomorphism::zero(groups[1].clone(), groups[1].clone()),
            ],
        ];
        let c = vec![
            vec![groups[0].zero(), groups[1].element(vec![1]).unwrap()],
            vec![groups[0].element(vec![1]).unwrap(), groups[1].zero()],
        ];
        let mesh = AffineMesh::new(groups, phi, c).unwrap();
        assert!(mesh.is_valid());
        assert!(mesh.is_indecomposable());
        assert!(!mesh.is_two_reductive());
        // column 0 is all nonzero, column 1 all zero
        assert!(mesh.zero_columns_propagated());
        let sum = mesh.sum();
        assert_eq!(mesh.reductivity_degree(), Some(3));
        assert_eq!(sum.reductivity_degree(), Some(3));
        assert!(mesh.is_involutory());
        assert_eq!(sum.symmetry_order(), 2);
        assert!(mesh.squared_diagonal_divisibility());
    }

    #[test]
    fn symmetry_of_two_reductive_meshes() {
        let mesh = cyclic_mesh(&[3, 1], &[&[0, 0], &[0, 0]], &[&[0, 0], &[1, 0]]);
        assert!(mesh.is_two_reductive());
        assert!(!mesh.is_symmetric(2));
        assert!(mesh.is_symmetric(3));
        assert_eq!(mesh.sum().symmetry_order(), 3);
        assert_eq!(mesh.reductivity_degree(), Some(2));
        assert_eq!(mesh.sum().reductivity_degree(), Some(2));
    }

    #[test]
    fn latin_normalization() {
        let mesh = six_element_mesh();
        let normal = mesh.latin_normalize().expect("both diagonals are bijective");
        assert!(normal.is_valid());
        assert!(normal.is_indecomposable());
        let w = homologous(&mesh, &normal).expect("normal form is homologous");
        assert!(w.verify(&mesh, &normal));
        // the normal form is the product of the latin orbit and a projection
        let product = dihedral(3).direct_product(&Quandle::projection(2));
        assert!(normal.sum().brute_force_iso(&product).is_some());
        // a mesh with a non-bijective diagonal has no normal form
        assert!(cyclic_mesh(&[2], &[&[0]], &[&[0]]).latin_normalize().is_none());
    }

    #[test]
    fn json_round_trip() {
        for mesh in [
            six_element_mesh(),
            cyclic_mesh(&[3, 1], &[&[0, 0], &[0, 0]], &[&[0, 0], &[1, 0]]),
        ] {
            let json = mesh.to_json();
            let back = AffineMesh::from_json(&json).unwrap();
            assert_eq!(mesh, back);
        }
        assert!(AffineMesh::from_json("{").is_err());
        assert!(AffineMesh::from_json(r#"{"groups":[],"phi":[],"c":[]}"#).is_err());
        // a constant out of range
        let bad = r#"{"groups":[[2]],"phi":[[[[0]]]],"c":[[[5]]]}"#;
        assert!(AffineMesh::from_json(bad).is_err());
    }

    #[test]
    fn locate_and_global_index_are_inverse() {
        let mesh = six_element_mesh();
        for x in 0..mesh.order() as usize {
            let (i, a) = mesh.locate(x);
            assert_eq!(mesh.global_index(i, &a), x);
        }
    }
}
