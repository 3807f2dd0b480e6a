//! Enumeration of medial quandles by fibre profile.
//!
//! Every medial quandle is the sum of an indecomposable affine mesh, unique
//! up to homology, so counting medial quandles of order `n` means counting
//! meshes up to homology. The count splits by the multiset of fibre groups
//! (the "profile") and into two regimes:
//!
//! * two-reductive quandles (all homomorphisms zero) are counted by
//!   Burnside's lemma over constant matrices with generating columns, which
//!   scales far beyond explicit search;
//! * the rare remaining quandles are enumerated explicitly: a column search
//!   over homomorphism matrices and constants, deduplicated by homology,
//!   plus one closed form for the quandles whose orbits are all latin.

use crate::abelian::{
    aut_group, conjugacy_classes, AbelianGroup, GroupElement, Homomorphism,
};
use crate::mesh::{homologous, AffineMesh};
use itertools::Itertools;
use rayon::prelude::*;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("order {n} exceeds the supported cap {cap}")]
    OrderTooLarge { n: u64, cap: u64 },
    #[error("count overflowed 128 bits")]
    Overflow,
}

/// Explicit mesh search is feasible well past this, but results above the
/// cap have not been cross-checked, so the library refuses them.
pub const NON_TWO_REDUCTIVE_CAP: u64 = 13;

/// A multiset of abelian groups: the orbit groups of a prospective medial
/// quandle, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FibreProfile {
    groups: Vec<AbelianGroup>,
}

impl FibreProfile {
    pub fn new(mut groups: Vec<AbelianGroup>) -> Self {
        groups.sort();
        FibreProfile { groups }
    }

    pub fn groups(&self) -> &[AbelianGroup] {
        &self.groups
    }

    pub fn num_fibres(&self) -> usize {
        self.groups.len()
    }

    pub fn order(&self) -> u64 {
        self.groups.iter().map(|g| g.order()).sum()
    }

    /// Runs of equal groups, in order.
    pub fn blocks(&self) -> Vec<(AbelianGroup, usize)> {
        let mut blocks: Vec<(AbelianGroup, usize)> = Vec::new();
        for g in &self.groups {
            match blocks.last_mut() {
                Some((h, count)) if h == g => *count += 1,
                _ => blocks.push((g.clone(), 1)),
            }
        }
        blocks
    }
}

/// All profiles of total order `n` whose groups satisfy `keep`.
pub fn profiles(n: u64, keep: impl Fn(&AbelianGroup) -> bool + Copy) -> Vec<FibreProfile> {
    let mut candidates: Vec<AbelianGroup> = (1..=n)
        .flat_map(|d| AbelianGroup::groups_of_order(d))
        .filter(|g| keep(g))
        .collect();
    candidates.sort();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        candidates: &[AbelianGroup],
        from: usize,
        remaining: u64,
        current: &mut Vec<AbelianGroup>,
        out: &mut Vec<FibreProfile>,
    ) {
        if remaining == 0 {
            out.push(FibreProfile { groups: current.clone() });
            return;
        }
        for (idx, g) in candidates.iter().enumerate().skip(from) {
            if g.order() > remaining {
                continue;
            }
            current.push(g.clone());
            rec(candidates, idx, remaining - g.order(), current, out);
            current.pop();
        }
    }
    rec(&candidates, 0, n, &mut current, &mut out);
    out
}

fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// Number of permutations in `S_m` with the given cycle type.
fn cycle_type_class_size(m: u64, parts: &[u32]) -> u128 {
    let mut denom: u128 = 1;
    let mut mult = std::collections::BTreeMap::new();
    for &p in parts {
        *mult.entry(p).or_insert(0u64) += 1;
        denom *= p as u128;
    }
    for (_, m_j) in mult {
        denom *= factorial(m_j);
    }
    factorial(m) / denom
}

fn perm_power(p: &[usize], q: usize) -> Vec<usize> {
    let mut result: Vec<usize> = (0..p.len()).collect();
    for _ in 0..q {
        result = result.iter().map(|&x| p[x]).collect();
    }
    result
}

/// Number of fixed generating column vectors for one column cycle of the
/// acting permutation: vectors `v` over the `k` fibres with `v[rep] = 0`,
/// `v[pi_q[i]] = psi(v[i])` for every row `i`, and entries generating the
/// whole fibre group.
///
/// A fixed vector is determined by one value per cycle of `pi_q` on the
/// rows, constrained to the fixed points of the matching power of `psi`;
/// the cycle through `rep` is pinned to zero. Counting those with entries
/// generating exactly each `psi`-invariant subgroup `H` (every fixed
/// vector generates a `psi`-invariant subgroup) gives the recursion
/// `g(H) = prod_cycles |Fix_H(psi^r)| - sum_{K < H} g(K)`, and the answer
/// is `g` of the full group. `subs` holds all its subgroups, sorted by
/// size.
fn fixed_column_count(
    k: usize,
    subs: &[std::collections::BTreeSet<GroupElement>],
    psi: &Homomorphism,
    pi_q: &[usize],
    rep: usize,
) -> u128 {
    let mut cycle_lengths: Vec<usize> = Vec::new();
    let mut seen = vec![false; k];
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut through_rep = false;
        let mut x = start;
        loop {
            seen[x] = true;
            len += 1;
            if x == rep {
                through_rep = true;
            }
            x = pi_q[x];
            if x == start {
                break;
            }
        }
        if !through_rep {
            cycle_lengths.push(len);
        }
    }
    let powers: std::collections::BTreeMap<usize, Homomorphism> = cycle_lengths
        .iter()
        .map(|&r| (r, psi.pow(r as u32)))
        .collect();
    let invariant: Vec<&std::collections::BTreeSet<GroupElement>> = subs
        .iter()
        .filter(|h| h.iter().all(|x| h.contains(&psi.apply(x))))
        .collect();
    let mut g: Vec<u128> = Vec::with_capacity(invariant.len());
    for (idx, h) in invariant.iter().enumerate() {
        let mut f: u128 = 1;
        for &r in &cycle_lengths {
            let pr = &powers[&r];
            f *= h.iter().filter(|x| &pr.apply(x) == *x).count() as u128;
        }
        for (kdx, ksub) in invariant.iter().enumerate().take(idx) {
            if ksub.len() < h.len() && ksub.is_subset(h) {
                f -= g[kdx];
            }
        }
        g.push(f);
    }
    *g.last().expect("the full group is always invariant")
}

/// Number of two-reductive medial quandles with this exact multiset of
/// orbit groups, up to isomorphism, by Burnside's lemma.
///
/// Such quandles are the meshes with all homomorphisms zero and a constant
/// matrix whose columns generate their fibres; two are isomorphic exactly
/// when the matrices differ by fibre automorphisms and a permutation of
/// equal fibres. Fixed matrices factor over the column cycles of the
/// permutation; along a cycle of length `q` only the composite of the `q`
/// automorphisms matters, each composite arising `|Aut|^(q-1)` times, and
/// the fixed generating columns of each composite are counted directly by
/// [`fixed_column_count`] (generation is checked inside the fixed set, not
/// subtracted afterwards, since the fixed set is usually a proper subset of
/// all columns).
pub fn two_reductive_profile_count(profile: &FibreProfile) -> Result<u128, EnumerateError> {
    struct BlockData {
        start: usize,
        ccls: Vec<crate::abelian::ConjugacyClass>,
        aut_size: u128,
        subs: Vec<std::collections::BTreeSet<GroupElement>>,
    }
    let blocks = profile.blocks();
    let k = profile.num_fibres();
    let block_data: Vec<BlockData> = {
        let mut start = 0;
        blocks
            .iter()
            .map(|(g, count)| {
                let auts = aut_group(g);
                let mut subs = g.subgroups();
                subs.sort_by_key(|h| h.len());
                let entry = BlockData {
                    start,
                    ccls: conjugacy_classes(&auts),
                    aut_size: auts.len() as u128,
                    subs,
                };
                start += count;
                entry
            })
            .collect()
    };
    let group_order: u128 = blocks
        .iter()
        .zip(&block_data)
        .map(|((_, count), data)| data.aut_size.pow(*count as u32) * factorial(*count as u64))
        .product();
    let partition_lists: Vec<Vec<Vec<u32>>> = blocks
        .iter()
        .map(|(_, count)| crate::abelian::integer_partitions(*count as u32))
        .collect();
    let mut total: u128 = 0;
    for combo in partition_lists
        .iter()
        .map(|ps| ps.iter())
        .multi_cartesian_product()
    {
        // the permutation: consecutive cycles within each block
        let mut pi: Vec<usize> = (0..k).collect();
        let mut cycles: Vec<(usize, usize, usize)> = Vec::new(); // (block, rep, len)
        let mut weight: u128 = 1;
        for (b, parts) in combo.iter().enumerate() {
            let count = blocks[b].1 as u64;
            weight *= cycle_type_class_size(count, parts);
            let mut pos = block_data[b].start;
            for &q in parts.iter() {
                let q = q as usize;
                for t in 0..q {
                    pi[pos + t] = pos + (t + 1) % q;
                }
                cycles.push((b, pos, q));
                pos += q;
            }
        }
        let mut contribution = weight;
        for &(b, rep, q) in &cycles {
            let data = &block_data[b];
            let pi_q = perm_power(&pi, q);
            let mut sub: u128 = 0;
            for ccl in &data.ccls {
                let fix = fixed_column_count(k, &data.subs, &ccl.representative, &pi_q, rep);
                sub = sub
                    .checked_add((ccl.size as u128).checked_mul(fix).ok_or(EnumerateError::Overflow)?)
                    .ok_or(EnumerateError::Overflow)?;
            }
            let free = data
                .aut_size
                .checked_pow(q as u32 - 1)
                .ok_or(EnumerateError::Overflow)?;
            contribution = contribution
                .checked_mul(free)
                .and_then(|x| x.checked_mul(sub))
                .ok_or(EnumerateError::Overflow)?;
        }
        total = total.checked_add(contribution).ok_or(EnumerateError::Overflow)?;
    }
    assert_eq!(total % group_order, 0, "Burnside sums are divisible by the group order");
    Ok(total / group_order)
}

/// Total number of two-reductive medial quandles of order `n` up to
/// isomorphism; with `involutory`, only the involutory ones (exactly those
/// whose orbit groups have exponent at most two).
pub fn count_two_reductive(n: u64, involutory: bool) -> Result<u128, EnumerateError> {
    let keep = |g: &AbelianGroup| !involutory || g.exponent() <= 2;
    let mut total: u128 = 0;
    for profile in profiles(n, keep) {
        total = total
            .checked_add(two_reductive_profile_count(&profile)?)
            .ok_or(EnumerateError::Overflow)?;
    }
    Ok(total)
}

/// All candidate constant columns into fibre `j`: zero on the diagonal,
/// entries generating the fibre.
fn generating_columns(groups: &[AbelianGroup], j: usize) -> Vec<Vec<GroupElement>> {
    let k = groups.len();
    let elems = groups[j].elements();
    let free: Vec<usize> = (0..k).filter(|&i| i != j).collect();
    let mut options = Vec::new();
    let mut idx = vec![0usize; free.len()];
    'outer: loop {
        let mut col = vec![groups[j].zero(); k];
        for (slot, &row) in free.iter().enumerate() {
            col[row] = elems[idx[slot]].clone();
        }
        if groups[j].subgroup_generated(&col).len() as u64 == groups[j].order() {
            options.push(col);
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    options
}

/// Number of generating constant matrices for a profile, before any orbit
/// reduction. For `m` equal fibres `Z_p` this is `(p^(m-1) - 1)^m`.
pub fn generating_matrix_count(profile: &FibreProfile) -> u128 {
    let groups = profile.groups();
    (0..groups.len())
        .map(|j| generating_columns(groups, j).len() as u128)
        .product()
}

/// Brute-force oracle for [`two_reductive_profile_count`]: materializes
/// every generating constant matrix and counts orbits under fibre
/// automorphisms and swaps of equal fibres by breadth-first search.
/// Returns the count and the lexicographically minimal representative of
/// each orbit as a mesh.
pub fn two_reductive_profile_orbits(profile: &FibreProfile) -> (u64, Vec<AffineMesh>) {
    let groups = profile.groups();
    let k = groups.len();
    let col_options: Vec<Vec<Vec<GroupElement>>> =
        (0..k).map(|j| generating_columns(groups, j)).collect();
    let key = |cols: &[Vec<GroupElement>]| -> Vec<u64> {
        let mut flat = Vec::with_capacity(k * k);
        for col in cols {
            for v in col {
                flat.push(0); // separator keeps ragged coords unambiguous
                flat.extend_from_slice(v.coords());
            }
        }
        flat
    };
    // all matrices, column-major, sorted for deterministic representatives
    let mut all: Vec<Vec<Vec<GroupElement>>> = col_options
        .iter()
        .map(|opts| opts.iter())
        .multi_cartesian_product()
        .map(|cols| cols.into_iter().cloned().collect())
        .collect();
    all.sort_by_key(|cols| key(cols));
    let aut_elements: Vec<Vec<Homomorphism>> = groups.iter().map(aut_group).collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut reps = Vec::new();
    for start in &all {
        if seen.contains(&key(start)) {
            continue;
        }
        let mut queue = vec![start.clone()];
        seen.insert(key(start));
        let mut head = 0;
        while head < queue.len() {
            let cols = queue[head].clone();
            head += 1;
            let mut push = |next: Vec<Vec<GroupElement>>| {
                let kk = key(&next);
                if seen.insert(kk) {
                    queue.push(next);
                }
            };
            // automorphism of one fibre
            for (t, auts) in aut_elements.iter().enumerate() {
                for psi in auts {
                    let mut next = cols.clone();
                    next[t] = cols[t].iter().map(|v| psi.apply(v)).collect();
                    push(next);
                }
            }
            // swap adjacent equal fibres
            for t in 0..k.saturating_sub(1) {
                if groups[t] != groups[t + 1] {
                    continue;
                }
                let tau = |i: usize| {
                    if i == t {
                        t + 1
                    } else if i == t + 1 {
                        t
                    } else {
                        i
                    }
                };
                let mut next = cols.clone();
                for j in 0..k {
                    for i in 0..k {
                        next[j][i] = cols[tau(j)][tau(i)].clone();
                    }
                }
                push(next);
            }
        }
        // row-major constants for the mesh
        let c: Vec<Vec<GroupElement>> = (0..k)
            .map(|i| (0..k).map(|j| start[j][i].clone()).collect())
            .collect();
        reps.push(
            AffineMesh::with_zero_phi(groups.to_vec(), c).expect("columns fit their fibres"),
        );
    }
    (reps.len() as u64, reps)
}

/// All two-reductive medial quandles of order `n` as mesh representatives.
/// Explicit materialization; practical for small `n` only.
pub fn enumerate_two_reductive(n: u64) -> Vec<AffineMesh> {
    let mut out = Vec::new();
    for profile in profiles(n, |_| true) {
        out.extend(two_reductive_profile_orbits(&profile).1);
    }
    out
}

/// The medial quandles all of whose orbits are latin, as meshes: for each
/// divisor `d > 1` of `n` and each abelian group `A` of order `d`, one
/// class per conjugacy class of automorphisms `f` of `A` with `1 - f`
/// bijective, namely equal fibres `A`, every homomorphism `1 - f`, zero
/// constants. The sum is `Aff(A, f) x P` with `P` the projection quandle
/// on the fibres.
pub fn all_orbits_latin_classes(n: u64) -> Vec<AffineMesh> {
    let mut out = Vec::new();
    for d in (2..=n).filter(|d| n % d == 0) {
        let k = (n / d) as usize;
        for a in AbelianGroup::groups_of_order(d) {
            let auts = aut_group(&a);
            for ccl in conjugacy_classes(&auts) {
                let one_minus = Homomorphism::identity(a.clone()).sub(&ccl.representative);
                if !one_minus.is_bijective() {
                    continue;
                }
                let phi = vec![vec![one_minus.clone(); k]; k];
                let c = vec![vec![a.zero(); k]; k];
                out.push(
                    AffineMesh::new(vec![a.clone(); k], phi, c)
                        .expect("consistent shapes"),
                );
            }
        }
    }
    out
}

/// Number of latin medial quandles of order `n` up to isomorphism.
pub fn count_latin(n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    AbelianGroup::groups_of_order(n)
        .iter()
        .map(|a| {
            let auts = aut_group(a);
            conjugacy_classes(&auts)
                .iter()
                .filter(|ccl| {
                    Homomorphism::identity(a.clone())
                        .sub(&ccl.representative)
                        .is_bijective()
                })
                .count() as u64
        })
        .sum()
}

/// Number of medial quandles of order `n` whose orbits are all latin and
/// non-trivial.
pub fn count_all_orbits_latin(n: u64) -> u64 {
    (2..=n).filter(|d| n % d == 0).map(count_latin).sum()
}

/// Number of involutory latin medial quandles of order `n`. A latin
/// quandle is involutory exactly when `f = -1`, which leaves `1 - f = 2`
/// bijective only on groups of odd order; each abelian group then
/// contributes one class.
pub fn count_latin_involutory(n: u64) -> u64 {
    if n == 1 {
        1
    } else if n % 2 == 1 {
        AbelianGroup::groups_of_order(n).len() as u64
    } else {
        0
    }
}

/// Involutory medial quandles of order `n` whose orbits are all latin and
/// non-trivial.
pub fn count_all_orbits_latin_involutory(n: u64) -> u64 {
    (2..=n).filter(|d| n % d == 0).map(count_latin_involutory).sum()
}

/// Search state for non-two-reductive meshes over one profile: first the
/// homomorphism matrix, entry by entry in column-major order (each column
/// all-zero or all-nonzero), then the constants column by column. The
/// composition axiom is checked as soon as all four homomorphisms of an
/// instance are placed, which prunes most branches within a row or two.
struct MeshSearch<'a> {
    groups: &'a [AbelianGroup],
    sizes_equal: bool,
    gcd_sizes: u64,
    /// cols[j][i] = homomorphism from fibre i into fibre j; the last
    /// column may be partial during the search.
    cols: Vec<Vec<Homomorphism>>,
    nonzero_hom_options: Vec<Vec<Vec<Homomorphism>>>,
    found: Vec<AffineMesh>,
}

impl MeshSearch<'_> {
    fn diagonal_allowed(&self, j: usize, h: &Homomorphism) -> bool {
        if !Homomorphism::identity(self.groups[j].clone()).sub(h).is_bijective() {
            return false;
        }
        if self.gcd_sizes % h.pow(2).image_size() != 0 {
            return false;
        }
        // with equal fibre sizes, one bijective diagonal makes all orbits
        // latin, and those classes come from the closed form instead
        !(self.sizes_equal && h.is_bijective())
    }

    /// All composition instances that the entry at column `j`, row `i`
    /// just completed: `cols[kk][j1] . cols[j1][i0] == cols[kk][j2] .
    /// cols[j2][i0]`, compared on generators.
    fn check_new_compositions(&self, j: usize, i: usize) -> bool {
        let k = self.groups.len();
        let filled = self.cols[j].len();
        let avail = |cc: usize, rr: usize| cc < j || (cc == j && rr < filled);
        for i0 in 0..k {
            for j1 in 0..k {
                for j2 in (j1 + 1)..k {
                    for kk in 0..k {
                        let ent = [(j1, i0), (kk, j1), (j2, i0), (kk, j2)];
                        if !ent.contains(&(j, i)) || !ent.iter().all(|&(c, r)| avail(c, r)) {
                            continue;
                        }
                        for t in 0..self.groups[i0].rank() {
                            let g = self.groups[i0].generator(t);
                            let lhs = self.cols[kk][j1].apply(&self.cols[j1][i0].apply(&g));
                            let rhs = self.cols[kk][j2].apply(&self.cols[j2][i0].apply(&g));
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn fill_phi_entry(&mut self) {
        let k = self.groups.len();
        let j = self.cols.len() - 1;
        let i = self.cols[j].len();
        if i == k {
            if j + 1 == k {
                if self.cols.iter().flatten().any(|h| !h.is_zero()) {
                    self.fill_c_column(0, &mut Vec::new());
                }
            } else {
                self.cols.push(Vec::new());
                self.fill_phi_entry();
                self.cols.pop();
            }
            return;
        }
        // a zero entry forces the whole column to zero and vice versa
        let (zero_allowed, nonzero_allowed) = if i == 0 {
            (true, true)
        } else if self.cols[j][0].is_zero() {
            (true, false)
        } else {
            (false, true)
        };
        if zero_allowed {
            let h = Homomorphism::zero(self.groups[i].clone(), self.groups[j].clone());
            self.cols[j].push(h);
            if self.check_new_compositions(j, i) {
                self.fill_phi_entry();
            }
            self.cols[j].pop();
        }
        if nonzero_allowed {
            for idx in 0..self.nonzero_hom_options[j][i].len() {
                let h = self.nonzero_hom_options[j][i][idx].clone();
                if i == j && !self.diagonal_allowed(j, &h) {
                    continue;
                }
                self.cols[j].push(h);
                if self.check_new_compositions(j, i) {
                    self.fill_phi_entry();
                }
                self.cols[j].pop();
            }
        }
    }

    fn constants_compatible_up_to(&self, c_cols: &[Vec<GroupElement>], j_max: usize) -> bool {
        let k = self.groups.len();
        for j in 0..=j_max {
            for kk in 0..=j_max {
                if j.max(kk) != j_max {
                    continue;
                }
                for i in 0..k {
                    let lhs = self.cols[kk][j].apply(&c_cols[j][i]);
                    let diff = self.groups[kk].sub(&c_cols[kk][i], &c_cols[kk][j]);
                    if lhs != self.cols[kk][kk].apply(&diff) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill_c_column(&mut self, j: usize, c_cols: &mut Vec<Vec<GroupElement>>) {
        let k = self.groups.len();
        if j == k {
            let groups = self.groups.to_vec();
            let phi: Vec<Vec<Homomorphism>> = (0..k)
                .map(|i| (0..k).map(|jj| self.cols[jj][i].clone()).collect())
                .collect();
            let c: Vec<Vec<GroupElement>> = (0..k)
                .map(|i| (0..k).map(|jj| c_cols[jj][i].clone()).collect())
                .collect();
            let mesh = AffineMesh::new(groups, phi, c).expect("consistent shapes");
            debug_assert!(mesh.is_valid(), "{mesh:?}");
            debug_assert!(mesh.is_indecomposable());
            self.found.push(mesh);
            return;
        }
        let target = &self.groups[j];
        let elems = target.elements();
        let free: Vec<usize> = (0..k).filter(|&i| i != j).collect();
        let mut idx = vec![0usize; free.len()];
        'outer: loop {
            let mut col = vec![target.zero(); k];
            for (slot, &row) in free.iter().enumerate() {
                col[row] = elems[idx[slot]].clone();
            }
            // indecomposability for this column: constants and homomorphism
            // images together generate the fibre
            let mut gens = col.clone();
            for i in 0..k {
                for t in 0..self.groups[i].rank() {
                    gens.push(self.cols[j][i].apply(&self.groups[i].generator(t)));
                }
            }
            if target.subgroup_generated(&gens).len() as u64 == target.order() {
                c_cols.push(col);
                if self.constants_compatible_up_to(c_cols, j) {
                    self.fill_c_column(j + 1, c_cols);
                }
                c_cols.pop();
            }
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn non_two_reductive_profile(profile: &FibreProfile) -> Vec<AffineMesh> {
    let groups = profile.groups();
    let k = groups.len();
    // a trivial fibre forces its column to zero, and zeros propagate until
    // everything is two-reductive; single fibres are covered by the latin
    // closed form
    if k < 2 || groups.iter().any(|g| g.is_trivial()) {
        return Vec::new();
    }
    let sizes: Vec<u64> = groups.iter().map(|g| g.order()).collect();
    // some column must be all-nonzero, which needs every pair of fibres to
    // interact with its target
    let feasible = (0..k).any(|j| {
        (0..k).all(|i| gcd(sizes[i], sizes[j]) > 1)
    });
    if !feasible {
        return Vec::new();
    }
    let nonzero_hom_options: Vec<Vec<Vec<Homomorphism>>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| {
                    crate::abelian::all_homs(&groups[i], &groups[j])
                        .into_iter()
                        .filter(|h| !h.is_zero())
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut search = MeshSearch {
        groups,
        sizes_equal: sizes.iter().all(|&s| s == sizes[0]),
        gcd_sizes: sizes.iter().copied().fold(0, gcd),
        cols: vec![Vec::new()],
        nonzero_hom_options,
        found: Vec::new(),
    };
    search.fill_phi_entry();
    // deduplicate by homology, keeping the minimal representative
    let mut reps: Vec<AffineMesh> = Vec::new();
    for mesh in search.found {
        match reps.iter_mut().find(|r| homologous(r, &mesh).is_some()) {
            Some(rep) => {
                if mesh < *rep {
                    *rep = mesh;
                }
            }
            None => reps.push(mesh),
        }
    }
    reps
}

/// All non-two-reductive medial quandles of order `n`, as homology class
/// representatives: the latin closed form plus an explicit search over the
/// remaining profiles, deduplicated by homology. Sorted for determinism.
pub fn enumerate_non_two_reductive(n: u64, cap: u64) -> Result<Vec<AffineMesh>, EnumerateError> {
    if n > cap {
        return Err(EnumerateError::OrderTooLarge { n, cap });
    }
    let all_profiles = profiles(n, |_| true);
    let mut out: Vec<AffineMesh> = all_profiles
        .par_iter()
        .map(non_two_reductive_profile)
        .reduce(Vec::new, |mut acc, mut chunk| {
            acc.append(&mut chunk);
            acc
        });
    out.extend(all_orbits_latin_classes(n));
    out.sort();
    Ok(out)
}

/// One row of the enumeration table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub n: u64,
    pub medial: u128,
    pub two_reductive: u128,
    pub involutory: u128,
    pub two_reductive_involutory: u128,
    pub non_two_reductive: u64,
    pub reductive_not_two_reductive: u64,
    pub non_reductive: u64,
    pub all_orbits_latin: u64,
    pub latin: u64,
}

pub const CSV_HEADER: &str =
    "n,medial,2reductive,involutory,2red_involutory,non2red,red_not_2red,nonred,all_latin,latin";

impl CountRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.medial,
            self.two_reductive,
            self.involutory,
            self.two_reductive_involutory,
            self.non_two_reductive,
            self.reductive_not_two_reductive,
            self.non_reductive,
            self.all_orbits_latin,
            self.latin
        )
    }
}

/// Computes the full classification row for order `n`. The two-reductive
/// columns come from the Burnside count, the rest from the explicit
/// enumeration (hence the cap).
pub fn count_row(n: u64, cap: u64) -> Result<CountRow, EnumerateError> {
    let classes = enumerate_non_two_reductive(n, cap)?;
    let two_reductive = count_two_reductive(n, false)?;
    let two_reductive_involutory = count_two_reductive(n, true)?;
    let non2 = classes.len() as u64;
    let reductive_not_two_reductive =
        classes.iter().filter(|m| m.reductivity_degree().is_some()).count() as u64;
    let involutory_non2 = classes.iter().filter(|m| m.is_involutory()).count() as u128;
    Ok(CountRow {
        n,
        medial: two_reductive + non2 as u128,
        two_reductive,
        involutory: two_reductive_involutory + involutory_non2,
        two_reductive_involutory,
        non_two_reductive: non2,
        reductive_not_two_reductive,
        non_reductive: non2 - reductive_not_two_reductive,
        all_orbits_latin: count_all_orbits_latin(n),
        latin: count_latin(n),
    })
}

/// The classification table for all orders `1..=n_max`.
pub fn assemble_tables(n_max: u64, cap: u64) -> Result<Vec<CountRow>, EnumerateError> {
    (1..=n_max).map(|n| count_row(n, cap)).collect()
}

/// One row of the enumeration table restricted to involutory quandles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutoryRow {
    pub n: u64,
    pub involutory: u128,
    pub two_reductive: u128,
    pub non_two_reductive: u64,
    pub reductive_not_two_reductive: u64,
    pub non_reductive: u64,
    pub all_orbits_latin: u64,
    pub latin: u64,
}

pub const INVOLUTORY_CSV_HEADER: &str =
    "n,involutory,2red_involutory,non2red_involutory,red_not_2red_involutory,\
     nonred_involutory,all_latin_involutory,latin_involutory";

impl InvolutoryRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.involutory,
            self.two_reductive,
            self.non_two_reductive,
            self.reductive_not_two_reductive,
            self.non_reductive,
            self.all_orbits_latin,
            self.latin
        )
    }
}

/// The involutory analogue of [`count_row`].
pub fn involutory_row(n: u64, cap: u64) -> Result<InvolutoryRow, EnumerateError> {
    let classes: Vec<AffineMesh> = enumerate_non_two_reductive(n, cap)?
        .into_iter()
        .filter(|m| m.is_involutory())
        .collect();
    let two_reductive = count_two_reductive(n, true)?;
    let non2 = classes.len() as u64;
    let reductive_not_two_reductive =
        classes.iter().filter(|m| m.reductivity_degree().is_some()).count() as u64;
    Ok(InvolutoryRow {
        n,
        involutory: two_reductive + non2 as u128,
        two_reductive,
        non_two_reductive: non2,
        reductive_not_two_reductive,
        non_reductive: non2 - reductive_not_two_reductive,
        all_orbits_latin: count_all_orbits_latin_involutory(n),
        latin: count_latin_involutory(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_of_small_orders() {
        assert_eq!(profiles(1, |_| true).len(), 1);
        // Z4 | Z2xZ2 | Z3+Z1 | Z2+Z2 | Z2+Z1+Z1 | Z1x4
        assert_eq!(profiles(4, |_| true).len(), 6);
        for p in profiles(4, |_| true) {
            assert_eq!(p.order(), 4);
        }
        // involutory restriction drops Z4 and Z3
        let invol = profiles(4, |g| g.exponent() <= 2);
        assert_eq!(invol.len(), 4);
    }

    #[test]
    fn burnside_counts_match_the_direct_oracle_per_profile() {
        for n in 1..=6 {
            for profile in profiles(n, |_| true) {
                let burnside = two_reductive_profile_count(&profile).unwrap();
                let (direct, reps) = two_reductive_profile_orbits(&profile);
                assert_eq!(
                    burnside, direct as u128,
                    "profile {:?} of order {n}",
                    profile.groups()
                );
                for mesh in &reps {
                    assert!(mesh.is_valid());
                    assert!(mesh.is_indecomposable());
                    assert!(mesh.is_two_reductive());
                }
            }
        }
    }

    #[test]
    fn two_reductive_counts_of_small_orders() {
        let expected: [u128; 8] = [1, 1, 2, 5, 15, 55, 246, 1398];
        for (i, &want) in expected.iter().enumerate() {
            let n = (i + 1) as u64;
            assert_eq!(count_two_reductive(n, false).unwrap(), want, "order {n}");
        }
        let expected_involutory: [u128; 8] = [1, 1, 2, 4, 10, 31, 120, 594];
        for (i, &want) in expected_involutory.iter().enumerate() {
            let n = (i + 1) as u64;
            assert_eq!(count_two_reductive(n, true).unwrap(), want, "order {n}");
        }
    }

    #[test]
    fn generating_matrix_count_for_equal_prime_fibres() {
        // m x m zero-diagonal matrices over Z_p with nonzero columns number
        // (p^(m-1) - 1)^m
        for (p, m) in [(2u64, 3u32), (3, 2), (2, 4), (5, 2), (3, 3)] {
            let profile = FibreProfile::new(vec![AbelianGroup::cyclic(p); m as usize]);
            let closed_form = ((p.pow(m - 1) - 1) as u128).pow(m);
            assert_eq!(generating_matrix_count(&profile), closed_form, "p={p} m={m}");
        }
        // mixed profile: columns count independently
        let profile = FibreProfile::new(vec![
            AbelianGroup::cyclic(2),
            AbelianGroup::cyclic(2),
            AbelianGroup::trivial(),
        ]);
        // each Z2 column: diagonal forced zero, two free entries, at least
        // one nonzero -> 3 options; the Z1 column contributes 1
        assert_eq!(generating_matrix_count(&profile), 9);
    }

    #[test]
    fn latin_counts() {
        let expected: [u64; 13] = [1, 0, 1, 1, 3, 0, 5, 2, 8, 0, 9, 1, 11];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(count_latin((i + 1) as u64), want, "order {}", i + 1);
        }
        let expected_all: [u64; 10] = [0, 0, 1, 1, 3, 1, 5, 3, 9, 3];
        for (i, &want) in expected_all.iter().enumerate() {
            assert_eq!(count_all_orbits_latin((i + 1) as u64), want, "order {}", i + 1);
        }
    }

    #[test]
    fn involutory_rows_of_small_orders() {
        let latin: [u64; 10] = [1, 0, 1, 0, 1, 0, 1, 0, 2, 0];
        let all_latin: [u64; 10] = [0, 0, 1, 0, 1, 1, 1, 0, 3, 1];
        let non2red: [u64; 10] = [0, 0, 1, 0, 1, 2, 1, 3, 4, 11];
        let red_not_2red: [u64; 10] = [0, 0, 0, 0, 0, 1, 0, 3, 0, 10];
        let medial: [u128; 10] = [1, 1, 3, 4, 11, 33, 121, 597, 4017, 35103];
        for n in 1..=10u64 {
            let i = n as usize - 1;
            let row = involutory_row(n, NON_TWO_REDUCTIVE_CAP).unwrap();
            assert_eq!(row.latin, latin[i], "order {n}");
            assert_eq!(row.all_orbits_latin, all_latin[i], "order {n}");
            assert_eq!(row.non_two_reductive, non2red[i], "order {n}");
            assert_eq!(row.reductive_not_two_reductive, red_not_2red[i], "order {n}");
            assert_eq!(row.involutory, medial[i], "order {n}");
        }
    }

    #[test]
    fn latin_classes_are_valid_meshes() {
        for n in 2..=9u64 {
            let classes = all_orbits_latin_classes(n);
            assert_eq!(classes.len() as u64, count_all_orbits_latin(n));
            for mesh in &classes {
                assert!(mesh.is_valid());
                assert!(mesh.is_indecomposable());
                assert!((0..mesh.num_fibres()).all(|i| mesh.phi(i, i).is_bijective()));
            }
        }
    }

    #[test]
    fn non_two_reductive_classes_of_small_orders() {
        let expected: [usize; 6] = [1, 1, 3, 3, 5, 12];
        for (i, &want) in expected.iter().enumerate() {
            let n = (i + 3) as u64;
            let classes = enumerate_non_two_reductive(n, NON_TWO_REDUCTIVE_CAP).unwrap();
            assert_eq!(classes.len(), want, "order {n}");
            for mesh in &classes {
                assert!(mesh.is_valid());
                assert!(mesh.is_indecomposable());
                assert!(!mesh.is_two_reductive());
                assert_eq!(mesh.order(), n);
            }
            // pairwise distinct classes
            for (a, ma) in classes.iter().enumerate() {
                for mb in classes.iter().skip(a + 1) {
                    assert!(homologous(ma, mb).is_none());
                }
            }
        }
        assert!(enumerate_non_two_reductive(99, NON_TWO_REDUCTIVE_CAP).is_err());
    }

    #[test]
    fn medial_totals_of_small_orders() {
        // two-reductive count plus explicit classes
        let expected: [u128; 7] = [1, 1, 3, 6, 18, 58, 251];
        for (i, &want) in expected.iter().enumerate() {
            let n = (i + 1) as u64;
            let row = count_row(n, NON_TWO_REDUCTIVE_CAP).unwrap();
            assert_eq!(row.medial, want, "order {n}");
        }
    }

    #[test]
    fn count_row_for_order_seven() {
        let row = count_row(7, NON_TWO_REDUCTIVE_CAP).unwrap();
        assert_eq!(
            row.csv(),
            "7,251,246,121,120,5,0,5,5,5",
        );
        assert_eq!(
            CSV_HEADER,
            "n,medial,2reductive,involutory,2red_involutory,non2red,red_not_2red,nonred,all_latin,latin"
        );
    }

    #[test]
    fn enumerated_two_reductive_meshes_match_the_count() {
        for n in 1..=6u64 {
            let meshes = enumerate_two_reductive(n);
            assert_eq!(meshes.len() as u128, count_two_reductive(n, false).unwrap());
        }
    }
}
