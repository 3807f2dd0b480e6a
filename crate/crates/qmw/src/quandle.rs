//! Finite quandles as multiplication tables.
//!
//! A quandle is a set with a binary operation whose left translations
//! `L_a(x) = a*x` are automorphisms fixing their own index: idempotence
//! `a*a = a`, each row a permutation, and left distributivity
//! `a*(b*c) = (a*b)*(a*c)`. A quandle is medial when
//! `(x*y)*(u*v) = (x*u)*(y*v)`, which happens exactly when its
//! displacement group is abelian.

use crate::abelian::{AbelianGroup, GroupElement, Homomorphism};
use crate::perm::{Perm, PermGroup};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuandleError {
    #[error("a quandle needs at least one element")]
    Empty,
    #[error("order {0} exceeds the supported maximum {max}", max = u16::MAX)]
    TooLarge(usize),
    #[error("row {row} has {got} entries, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("entry {value} at row {row}, column {col} out of range 0..{n}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not a quandle: {0}")]
    NotQuandle(String),
    #[error("the operation on orbit {orbit} of {base} is not an abelian group; the quandle is not medial")]
    NotMedial { base: usize, orbit: usize },
    #[error("enumeration order {n} exceeds cap {cap}")]
    EnumerationTooLarge { n: usize, cap: usize },
}

/// Outcome of checking the three quandle axioms, with a witness for the
/// first violation of each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// An element with `a*a != a`, if any.
    pub idempotence: Option<usize>,
    /// A row that is not a permutation, if any.
    pub left_translations: Option<usize>,
    /// A triple `(a, b, c)` with `a*(b*c) != (a*b)*(a*c)`, if any.
    pub left_distributivity: Option<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_quandle(&self) -> bool {
        self.idempotence.is_none()
            && self.left_translations.is_none()
            && self.left_distributivity.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.idempotence {
            None => writeln!(f, "idempotent: yes")?,
            Some(a) => writeln!(f, "idempotent: no ({a}*{a} != {a})")?,
        }
        match self.left_translations {
            None => writeln!(f, "left translations bijective: yes")?,
            Some(a) => writeln!(f, "left translations bijective: no (row {a})")?,
        }
        match self.left_distributivity {
            None => write!(f, "left distributive: yes"),
            Some((a, b, c)) => write!(
                f,
                "left distributive: no ({a}*({b}*{c}) != ({a}*{b})*({a}*{c}))"
            ),
        }
    }
}

/// A binary operation table on `{0, ..., n-1}`. Most methods assume the
/// quandle axioms hold; run [`Quandle::validate`] on untrusted input first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quandle {
    n: usize,
    table: Vec<u16>,
}

impl Quandle {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let n = rows.len();
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        if n > u16::MAX as usize {
            return Err(QuandleError::TooLarge(n));
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(QuandleError::RowLength { row, got: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(QuandleError::EntryOutOfRange { row, col, value, n });
                }
                table.push(value as u16);
            }
        }
        Ok(Quandle { n, table })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The product `a*b`.
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn row(&self, a: usize) -> Vec<usize> {
        (0..self.n).map(|b| self.op(a, b)).collect()
    }

    /// Parses the text format: a line with `n`, then `n` lines of `n`
    /// whitespace separated entries, row `a` listing `a*0 ... a*(n-1)`.
    pub fn parse(input: &str) -> Result<Self, QuandleError> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_line, first) = lines
            .next()
            .ok_or_else(|| QuandleError::Parse { line: 1, message: "empty input".into() })?;
        let n: usize = first.parse().map_err(|_| QuandleError::Parse {
            line: first_line,
            message: format!("expected the order, found {first:?}"),
        })?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, text) = lines.next().ok_or_else(|| QuandleError::Parse {
                line: first_line,
                message: format!("expected {n} rows after the order"),
            })?;
            let mut row = Vec::with_capacity(n);
            for (col, tok) in text.split_whitespace().enumerate() {
                let v: usize = tok.parse().map_err(|_| QuandleError::Parse {
                    line,
                    message: format!("column {}: expected an integer, found {tok:?}", col + 1),
                })?;
                row.push(v);
            }
            if row.len() != n {
                return Err(QuandleError::Parse {
                    line,
                    message: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if let Some((line, _)) = lines.next() {
            return Err(QuandleError::Parse { line, message: "trailing content".into() });
        }
        Self::new(rows)
    }

    pub fn print(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for a in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|b| self.op(a, b).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn validate(&self) -> ValidationReport {
        let idempotence = (0..self.n).find(|&a| self.op(a, a) != a);
        let left_translations = (0..self.n).find(|&a| {
            let mut seen = vec![false; self.n];
            (0..self.n).any(|b| {
                let v = self.op(a, b);
                std::mem::replace(&mut seen[v], true)
            })
        });
        let mut left_distributivity = None;
        'outer: for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    if self.op(a, self.op(b, c)) != self.op(self.op(a, b), self.op(a, c)) {
                        left_distributivity = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        ValidationReport { idempotence, left_translations, left_distributivity }
    }

    pub fn is_quandle(&self) -> bool {
        self.validate().is_quandle()
    }

    /// The left translation `L_a` as a permutation.
    pub fn left_translation(&self, a: usize) -> Perm {
        Perm::new((0..self.n).map(|b| self.table[a * self.n + b]).collect())
            .expect("rows of a quandle are permutations")
    }

    /// The left multiplication group, generated by all left translations.
    pub fn lmlt(&self) -> PermGroup {
        let gens = (0..self.n).map(|a| self.left_translation(a)).collect();
        PermGroup::new(self.n, gens).expect("degrees agree")
    }

    /// The displacement group, generated by `L_a L_b^{-1}` over all pairs.
    pub fn dis(&self) -> PermGroup {
        let trans: Vec<Perm> = (0..self.n).map(|a| self.left_translation(a)).collect();
        let mut gens = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let g = trans[a].compose(&trans[b].inverse());
                if !g.is_identity() && !gens.contains(&g) {
                    gens.push(g);
                }
            }
        }
        if gens.is_empty() {
            gens.push(Perm::identity(self.n));
        }
        PermGroup::new(self.n, gens).expect("degrees agree")
    }

    /// Mediality, decided two ways at once: the quadruple identity
    /// `(x*y)*(u*v) = (x*u)*(y*v)` and commutativity of the displacement
    /// group. The two computations must agree.
    pub fn is_medial(&self) -> bool {
        let by_identity = 'check: {
            for x in 0..self.n {
                for y in 0..self.n {
                    for u in 0..self.n {
                        for v in 0..self.n {
                            if self.op(self.op(x, y), self.op(u, v))
                                != self.op(self.op(x, u), self.op(y, v))
                            {
                                break 'check false;
                            }
                        }
                    }
                }
            }
            true
        };
        let by_displacement = self.dis().is_abelian();
        assert_eq!(
            by_identity, by_displacement,
            "the mediality identity and displacement commutativity must agree"
        );
        by_identity
    }

    /// Orbits of the displacement group (equivalently of the left
    /// multiplication group), sorted by minimal element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.dis().orbits()
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// True when every column is also a permutation.
    pub fn is_latin(&self) -> bool {
        (0..self.n).all(|b| {
            let mut seen = vec![false; self.n];
            (0..self.n).all(|a| !std::mem::replace(&mut seen[self.op(a, b)], true))
        })
    }

    /// Least `m` with `L_a^m` the identity for every `a`.
    pub fn symmetry_order(&self) -> u64 {
        (0..self.n)
            .map(|a| self.left_translation(a).order())
            .fold(1u64, |acc, o| acc / gcd_u64(acc, o) * o)
    }

    pub fn is_involutory(&self) -> bool {
        2 % self.symmetry_order() == 0
    }

    /// Least `m <= order` such that `x*y*y*...*y = y` after `m` right
    /// multiplications, or `None` when the quandle is not reductive.
    pub fn reductivity_degree(&self) -> Option<usize> {
        for m in 1..=self.n {
            let mut ok = true;
            'ys: for y in 0..self.n {
                for x in 0..self.n {
                    let mut v = x;
                    for _ in 0..m {
                        v = self.op(v, y);
                    }
                    if v != y {
                        ok = false;
                        break 'ys;
                    }
                }
            }
            if ok {
                return Some(m);
            }
        }
        None
    }

    pub fn is_two_reductive(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.op(self.op(x, y), y) == y))
    }

    /// The affine quandle `x*y = (1-f)(x) + f(y)` over a group, with
    /// elements in lexicographic order. `f` must be an automorphism.
    pub fn affine(group: &AbelianGroup, f: &Homomorphism) -> Quandle {
        assert!(f.is_bijective(), "affine quandles need an automorphism");
        assert_eq!(f.domain(), group);
        let elems = group.elements();
        let one_minus_f = Homomorphism::identity(group.clone()).sub(f);
        let n = elems.len();
        let mut rows = vec![vec![0usize; n]; n];
        for (i, x) in elems.iter().enumerate() {
            let gx = one_minus_f.apply(x);
            for (j, y) in elems.iter().enumerate() {
                let v = group.add(&gx, &f.apply(y));
                rows[i][j] = group.index_of(&v) as usize;
            }
        }
        Quandle::new(rows).expect("affine tables are square")
    }

    /// The projection quandle `x*y = y`.
    pub fn projection(n: usize) -> Quandle {
        let rows = (0..n).map(|_| (0..n).collect()).collect();
        Quandle::new(rows).expect("n >= 1")
    }

    /// Direct product, elements ordered pairwise with `self` major.
    pub fn direct_product(&self, other: &Quandle) -> Quandle {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut rows = vec![vec![0usize; n]; n];
        for a1 in 0..n1 {
            for a2 in 0..n2 {
                for b1 in 0..n1 {
                    for b2 in 0..n2 {
                        rows[a1 * n2 + a2][b1 * n2 + b2] =
                            self.op(a1, b1) * n2 + other.op(a2, b2);
                    }
                }
            }
        }
        Quandle::new(rows).expect("product of quandles")
    }

    /// The abelian group structure that the displacement action induces on
    /// the orbit of `base`, together with the chart identifying it with a
    /// canonical group. Requires mediality.
    pub fn orbit_group(&self, base: usize) -> Result<OrbitGroupChart, QuandleError> {
        let trans: Vec<Perm> = (0..self.n).map(|a| self.left_translation(a)).collect();
        let mut gens = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let g = trans[a].compose(&trans[b].inverse());
                if !gens.contains(&g) {
                    gens.push(g);
                }
            }
        }
        // the displacement group must be abelian, else no orbit is a group
        for (i, g) in gens.iter().enumerate() {
            for h in &gens[i + 1..] {
                if g.compose(h) != h.compose(g) {
                    return Err(QuandleError::NotMedial { base, orbit: 0 });
                }
            }
        }
        // first-discovery displacements alpha_x with alpha_x(base) = x
        let mut alpha: BTreeMap<usize, Perm> = BTreeMap::new();
        alpha.insert(base, Perm::identity(self.n));
        let mut queue = vec![base];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let ax = alpha[&x].clone();
            for g in &gens {
                let y = g.apply(x);
                if !alpha.contains_key(&y) {
                    alpha.insert(y, g.compose(&ax));
                    queue.push(y);
                }
            }
        }
        let orbit: Vec<usize> = alpha.keys().copied().collect();
        let pos = |x: usize| orbit.binary_search(&x).expect("member of the orbit");
        let m = orbit.len();
        // x + y = alpha_x(y), with base as zero
        let add = |x: usize, y: usize| alpha[&x].apply(y);
        for &x in &orbit {
            for &y in &orbit {
                let s = add(x, y);
                if !alpha.contains_key(&s) || s != add(y, x) {
                    return Err(QuandleError::NotMedial { base, orbit: pos(x) });
                }
                for &z in &orbit {
                    if add(add(x, y), z) != add(x, add(y, z)) {
                        return Err(QuandleError::NotMedial { base, orbit: pos(x) });
                    }
                }
            }
        }
        // identify the abstract group through order statistics, then search
        // for an explicit isomorphism
        let elem_order = |x: usize| -> u64 {
            let mut o = 1u64;
            let mut v = x;
            while v != base {
                v = add(v, x);
                o += 1;
            }
            o
        };
        let mut stats: Vec<u64> = orbit.iter().map(|&x| elem_order(x)).collect();
        stats.sort_unstable();
        let group = AbelianGroup::groups_of_order(m as u64)
            .into_iter()
            .find(|g| g.order_statistics() == stats)
            .expect("a finite abelian operation matches some canonical group");
        let chart = find_group_chart(&group, &orbit, base, &add, &elem_order)
            .expect("order statistics determine the group");
        // to_group[i] = image of orbit[i]
        let mut to_group: Vec<GroupElement> = vec![group.zero(); m];
        for (idx, x) in chart.iter().enumerate() {
            to_group[pos(*x)] = group.element_at(idx as u64);
        }
        // the translation by base acts on the orbit as a group automorphism
        let images: Vec<GroupElement> = (0..group.rank())
            .map(|t| {
                let gen_elem = group.generator(t);
                let x = chart[group.index_of(&gen_elem) as usize];
                to_group[pos(trans[base].apply(x))].clone()
            })
            .collect();
        let translation = Homomorphism::new(group.clone(), group.clone(), images)
            .map_err(|_| QuandleError::NotMedial { base, orbit: 0 })?;
        // sanity: the transported translation must be additive and bijective
        for &x in &orbit {
            for &y in &orbit {
                let lhs = to_group[pos(trans[base].apply(add(x, y)))].clone();
                let rhs = group.add(
                    &to_group[pos(trans[base].apply(x))],
                    &to_group[pos(trans[base].apply(y))],
                );
                if lhs != rhs {
                    return Err(QuandleError::NotMedial { base, orbit: 0 });
                }
            }
        }
        debug_assert!(translation.is_bijective());
        Ok(OrbitGroupChart { orbit, base, group, to_group, translation })
    }

    /// Backtracking isomorphism search; returns the image list of an
    /// isomorphism `self -> other` if one exists.
    pub fn brute_force_iso(&self, other: &Quandle) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let inv_self = element_invariants(self);
        let inv_other = element_invariants(other);
        let mut sorted_self = inv_self.clone();
        let mut sorted_other = inv_other.clone();
        sorted_self.sort();
        sorted_other.sort();
        if sorted_self != sorted_other {
            return None;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if extend_iso(self, other, &inv_self, &inv_other, &mut map, &mut used, 0) {
            Some(map)
        } else {
            None
        }
    }

    /// All quandles of order `n` satisfying `keep`, up to isomorphism, by
    /// exhaustive row assignment with conjugation propagation.
    pub fn brute_force_enumerate(
        n: usize,
        cap: usize,
        keep: impl Fn(&Quandle) -> bool,
    ) -> Result<Vec<Quandle>, QuandleError> {
        if n > cap {
            return Err(QuandleError::EnumerationTooLarge { n, cap });
        }
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        let mut found: Vec<Quandle> = Vec::new();
        let mut rows: Vec<Option<Vec<u16>>> = vec![None; n];
        let candidates = rows_fixing_point(n);
        enumerate_rows(n, &mut rows, &candidates, &mut |q: Quandle| {
            if q.is_quandle()
                && keep(&q)
                && !found.iter().any(|r| r.brute_force_iso(&q).is_some())
            {
                found.push(q);
            }
        });
        Ok(found)
    }
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quandle({}):", self.n)?;
        for a in 0..self.n {
            write!(f, " {:?}", self.row(a))?;
        }
        Ok(())
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Per-element invariant preserved by isomorphisms: orbit size and the cycle
/// structure of the left translation.
fn element_invariants(q: &Quandle) -> Vec<(usize, Vec<usize>)> {
    let orbits = q.orbits();
    let mut orbit_size = vec![0usize; q.order()];
    for orbit in &orbits {
        for &x in orbit {
            orbit_size[x] = orbit.len();
        }
    }
    (0..q.order())
        .map(|a| (orbit_size[a], q.left_translation(a).cycle_lengths()))
        .collect()
}

fn extend_iso(
    q1: &Quandle,
    q2: &Quandle,
    inv1: &[(usize, Vec<usize>)],
    inv2: &[(usize, Vec<usize>)],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    a: usize,
) -> bool {
    let n = q1.order();
    if a == n {
        return true;
    }
    'candidates: for b in 0..n {
        if used[b] || inv1[a] != inv2[b] {
            continue;
        }
        map[a] = b;
        used[b] = true;
        // elements 0..=a are mapped; check every product involving a
        for c in 0..=a {
            for (x, y) in [(a, c), (c, a)] {
                let t = q1.op(x, y);
                let img = q2.op(map[x], map[y]);
                let consistent = if t <= a {
                    map[t] == img
                } else {
                    // t's image is forced to img, which must still be free
                    !used[img]
                };
                if !consistent {
                    map[a] = usize::MAX;
                    used[b] = false;
                    continue 'candidates;
                }
            }
        }
        if extend_iso(q1, q2, inv1, inv2, map, used, a + 1) {
            return true;
        }
        map[a] = usize::MAX;
        used[b] = false;
    }
    false
}

/// All permutation rows of length `n` fixing each point, indexed by the
/// fixed point, in lexicographic order.
fn rows_fixing_point(n: usize) -> Vec<Vec<Vec<u16>>> {
    let mut by_point: Vec<Vec<Vec<u16>>> = vec![Vec::new(); n];
    let mut perm: Vec<u16> = (0..n as u16).collect();
    loop {
        for a in 0..n {
            if perm[a] == a as u16 {
                by_point[a].push(perm.clone());
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    by_point
}

fn next_permutation(p: &mut [u16]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn enumerate_rows(
    n: usize,
    rows: &mut Vec<Option<Vec<u16>>>,
    candidates: &[Vec<Vec<u16>>],
    emit: &mut impl FnMut(Quandle),
) {
    let a = match rows.iter().position(|r| r.is_none()) {
        None => {
            let table: Vec<Vec<usize>> = rows
                .iter()
                .map(|r| r.as_ref().unwrap().iter().map(|&v| v as usize).collect())
                .collect();
            emit(Quandle::new(table).expect("rows are permutations"));
            return;
        }
        Some(a) => a,
    };
    for row in &candidates[a] {
        let mut trail = Vec::new();
        if assign_and_propagate(n, rows, a, row.clone(), &mut trail) {
            enumerate_rows(n, rows, candidates, emit);
        }
        for r in trail {
            rows[r] = None;
        }
    }
}

/// Sets `rows[a]` and closes under `L_{a*b} = L_a L_b L_a^{-1}`; returns
/// false (after recording undo state in `trail`) on contradiction.
fn assign_and_propagate(
    n: usize,
    rows: &mut Vec<Option<Vec<u16>>>,
    a: usize,
    row: Vec<u16>,
    trail: &mut Vec<usize>,
) -> bool {
    rows[a] = Some(row);
    trail.push(a);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if rows[s].is_some() {
            pairs.push((a, s));
            pairs.push((s, a));
        }
    }
    while let Some((x, y)) = pairs.pop() {
        let (rx, ry) = match (&rows[x], &rows[y]) {
            (Some(rx), Some(ry)) => (rx.clone(), ry.clone()),
            _ => continue,
        };
        let c = rx[y] as usize;
        // derived = L_x L_y L_x^{-1}, evaluated as derived[rx[t]] = rx[ry[t]]
        let mut derived = vec![0u16; n];
        for t in 0..n {
            derived[rx[t] as usize] = rx[ry[t] as usize];
        }
        if derived[c] != c as u16 {
            return false;
        }
        match &rows[c] {
            Some(existing) => {
                if *existing != derived {
                    return false;
                }
            }
            None => {
                rows[c] = Some(derived);
                trail.push(c);
                for s in 0..n {
                    if rows[s].is_some() {
                        pairs.push((c, s));
                        pairs.push((s, c));
                    }
                }
            }
        }
    }
    true
}

fn find_group_chart(
    group: &AbelianGroup,
    orbit: &[usize],
    base: usize,
    add: &dyn Fn(usize, usize) -> usize,
    elem_order: &dyn Fn(usize) -> u64,
) -> Option<Vec<usize>> {
    // Choose images for the canonical generators one at a time, keeping the
    // partial chart (coordinate-lexicographic, first coordinate major) and
    // aborting as soon as a candidate collides with the span so far.
    fn extend(
        group: &AbelianGroup,
        orbit: &[usize],
        add: &dyn Fn(usize, usize) -> usize,
        elem_order: &dyn Fn(usize) -> u64,
        chart: &[usize],
        t: usize,
    ) -> Option<Vec<usize>> {
        if t == group.rank() {
            return Some(chart.to_vec());
        }
        let d = group.factors()[t];
        'cands: for &g in orbit {
            if elem_order(g) != d {
                continue;
            }
            let mut bigger = Vec::with_capacity(chart.len() * d as usize);
            let mut seen = vec![false; orbit.len()];
            for &x in chart {
                let mut v = x;
                for _ in 0..d {
                    let pos = orbit.binary_search(&v).expect("closed under addition");
                    if std::mem::replace(&mut seen[pos], true) {
                        continue 'cands;
                    }
                    bigger.push(v);
                    v = add(v, g);
                }
            }
            if let Some(c) = extend(group, orbit, add, elem_order, &bigger, t + 1) {
                return Some(c);
            }
        }
        None
    }
    extend(group, orbit, add, elem_order, &[base], 0)
}

/// Identifies one orbit of a medial quandle with a canonical abelian group.
///
/// `to_group` aligns with `orbit`; `translation` is the automorphism induced
/// by the left translation at `base`.
#[derive(Clone, Debug)]
pub struct OrbitGroupChart {
    pub orbit: Vec<usize>,
    pub base: usize,
    pub group: AbelianGroup,
    to_group: Vec<GroupElement>,
    pub translation: Homomorphism,
}

impl OrbitGroupChart {
    pub fn to_group(&self, x: usize) -> &GroupElement {
        let pos = self.orbit.binary_search(&x).expect("element of the orbit");
        &self.to_group[pos]
    }

    pub fn from_group(&self, v: &GroupElement) -> usize {
        let pos = self
            .to_group
            .iter()
            .position(|w| w == v)
            .expect("element of the group");
        self.orbit[pos]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;

    fn three_element() -> Quandle {
        // the smallest quandle that is not a group conjugation table
        Quandle::new(vec![vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2]]).unwrap()
    }

    fn dihedral(n: u64) -> Quandle {
        let g = AbelianGroup::cyclic(n);
        Quandle::affine(&g, &Homomorphism::scalar(g.clone(), -1))
    }

    #[test]
    fn three_element_is_a_two_reductive_medial_quandle() {
        let q = three_element();
        assert!(q.is_quandle());
        assert!(q.is_medial());
        assert!(q.is_two_reductive());
        assert_eq!(q.reductivity_degree(), Some(2));
        assert_eq!(q.orbits(), vec![vec![0, 1], vec![2]]);
        assert!(!q.is_latin());
    }

    #[test]
    fn validation_witnesses() {
        let not_idem = Quandle::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(not_idem.validate().idempotence, Some(0));
        let not_perm = Quandle::new(vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(not_perm.validate().left_translations, Some(0));
        let proj = Quandle::projection(4);
        assert!(proj.validate().is_quandle());
    }

    #[test]
    fn parse_print_round_trip_and_errors() {
        let q = three_element();
        assert_eq!(Quandle::parse(&q.print()).unwrap(), q);
        assert!(matches!(
            Quandle::parse("2\n0 1\n"),
            Err(QuandleError::Parse { .. })
        ));
        assert!(matches!(
            Quandle::parse("2\n0 1\n0 2\n"),
            Err(QuandleError::EntryOutOfRange { .. })
        ));
    }

    #[test]
    fn dihedral_six_structure() {
        let q = dihedral(6);
        assert!(q.is_quandle());
        assert!(q.is_medial());
        assert_eq!(q.orbits(), vec![vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(q.dis().element_count().unwrap(), 3);
        assert!(q.dis().is_abelian());
        assert_eq!(q.symmetry_order(), 2);
        assert!(q.is_involutory());
        assert_eq!(q.reductivity_degree(), None, "dihedral quandles are not reductive");
        assert!(!q.is_latin(), "1 - f = 2 is not invertible mod 6");
    }

    #[test]
    fn dihedral_three_is_latin_and_connected() {
        let q = dihedral(3);
        assert!(q.is_latin());
        assert!(q.is_connected());
        assert_eq!(q.symmetry_order(), 2);
    }

    #[test]
    fn orbit_group_of_dihedral_six() {
        let q = dihedral(6);
        let chart = q.orbit_group(0).unwrap();
        assert_eq!(chart.group, AbelianGroup::cyclic(3));
        assert_eq!(chart.orbit, vec![0, 2, 4]);
        let neg = Homomorphism::scalar(AbelianGroup::cyclic(3), -1);
        assert_eq!(chart.translation, neg, "L_0 negates the orbit group");
        // the orbit with the induced structure is the affine quandle of the
        // translation
        let g = &chart.group;
        let f = &chart.translation;
        let one_minus_f = Homomorphism::identity(g.clone()).sub(f);
        for &a in &chart.orbit {
            for &b in &chart.orbit {
                let expect = g.add(
                    &one_minus_f.apply(chart.to_group(a)),
                    &f.apply(chart.to_group(b)),
                );
                assert_eq!(q.op(a, b), chart.from_group(&expect));
            }
        }
    }

    #[test]
    fn orbit_group_rejects_non_medial() {
        // conjugation quandle of S3 on its transpositions and 3-cycles is
        // not medial; build the smallest non-medial quandle instead by
        // brute force and check the chart fails
        let all = Quandle::brute_force_enumerate(4, 6, |_| true).unwrap();
        let non_medial: Vec<&Quandle> = all.iter().filter(|q| !q.is_medial()).collect();
        assert_eq!(non_medial.len(), 1, "one non-medial quandle of order 4");
        let q = non_medial[0];
        let e = q.orbits()[0][0];
        match q.orbit_group(e) {
            Err(QuandleError::NotMedial { .. }) => {}
            other => panic!("expected a mediality failure, got {other:?}"),
        }
    }

    #[test]
    fn symmetry_and_reductivity_of_projection() {
        let p = Quandle::projection(5);
        assert_eq!(p.symmetry_order(), 1);
        assert_eq!(p.reductivity_degree(), Some(1));
        assert!(p.is_two_reductive());
    }

    #[test]
    fn iso_respects_structure() {
        let q = dihedral(3);
        // relabelled copy: x -> x+1 mod 3 conjugates the table
        let rows = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        let r = Quandle::new(rows).unwrap();
        let map = q.brute_force_iso(&r).expect("isomorphic copies");
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(map[q.op(a, b)], r.op(map[a], map[b]));
            }
        }
        assert!(q.brute_force_iso(&Quandle::projection(3)).is_none());
    }

    #[test]
    fn enumerate_small_orders() {
        let one = Quandle::brute_force_enumerate(1, 6, |_| true).unwrap();
        assert_eq!(one.len(), 1);
        let two = Quandle::brute_force_enumerate(2, 6, |_| true).unwrap();
        assert_eq!(two.len(), 1, "only the projection quandle has order 2");
        let three = Quandle::brute_force_enumerate(3, 6, |_| true).unwrap();
        assert_eq!(three.len(), 3);
        let four = Quandle::brute_force_enumerate(4, 6, |_| true).unwrap();
        assert_eq!(four.len(), 7);
        let medial4 = Quandle::brute_force_enumerate(4, 6, |q| q.is_medial()).unwrap();
        assert_eq!(medial4.len(), 6);
        assert!(Quandle::brute_force_enumerate(9, 6, |_| true).is_err());
    }

    #[test]
    fn direct_product_of_latin_and_projection() {
        let q = dihedral(3).direct_product(&Quandle::projection(2));
        assert!(q.is_quandle());
        assert!(q.is_medial());
        assert_eq!(q.orbits().len(), 2);
        assert_eq!(q.order(), 6);
    }
}
