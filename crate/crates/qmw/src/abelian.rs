//! Finite abelian groups in invariant factor form, their elements and
//! homomorphisms.
//!
//! A group is stored as its invariant factor list `d_1 | d_2 | ... | d_r`
//! with trivial factors stripped, so every abstract group has exactly one
//! representation and structural equality decides isomorphism. Elements are
//! coordinate vectors, homomorphisms are generator image lists.

use itertools::Itertools;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("invariant factors must form a divisibility chain, got {0:?}")]
    NotAChain(Vec<u64>),
    #[error("cyclic factor of order zero")]
    ZeroOrder,
    #[error("coordinate {coord} out of range for factor {factor}")]
    CoordinateOutOfRange { coord: u64, factor: u64 },
    #[error("element has {got} coordinates, group has rank {expected}")]
    RankMismatch { got: usize, expected: usize },
    #[error("generator image of order not dividing {factor}")]
    ImageOrderTooLarge { factor: u64 },
    #[error("cannot parse group description {0:?}")]
    Unparseable(String),
}

/// A finite abelian group `Z_{d_1} x ... x Z_{d_r}` with `d_1 | d_2 | ... | d_r`
/// and every `d_t >= 2`. The trivial group has an empty factor list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// An element of an [`AbelianGroup`], as a coordinate vector with
/// `coords[t] < d_t`. Which group it belongs to is contextual; all
/// arithmetic goes through the group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().join(","))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[{self}]")
    }
}

impl fmt::Display for AbelianGroup {
    /// Comma separated invariant factors; the trivial group prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.factors.iter().join(","))
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

impl AbelianGroup {
    /// Builds a group from an invariant factor chain. Factors equal to 1 are
    /// stripped; the remaining list must satisfy `d_1 | d_2 | ... | d_r`.
    pub fn new(factors: Vec<u64>) -> Result<Self, AbelianError> {
        if factors.contains(&0) {
            return Err(AbelianError::ZeroOrder);
        }
        let stripped: Vec<u64> = factors.iter().copied().filter(|&d| d > 1).collect();
        for w in stripped.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(AbelianError::NotAChain(factors));
            }
        }
        Ok(AbelianGroup { factors: stripped })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("a single factor is always a chain")
    }

    /// Canonical form of an arbitrary product of cyclic groups: splits each
    /// order into prime powers and reassembles the invariant factor chain.
    pub fn canonicalize(cyclic_orders: &[u64]) -> Result<Self, AbelianError> {
        let mut prime_powers: Vec<(u64, u32)> = Vec::new();
        for &n in cyclic_orders {
            if n == 0 {
                return Err(AbelianError::ZeroOrder);
            }
            let mut m = n;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    let mut e = 0;
                    while m % p == 0 {
                        m /= p;
                        e += 1;
                    }
                    prime_powers.push((p, e));
                }
                p += 1;
            }
            if m > 1 {
                prime_powers.push((m, 1));
            }
        }
        // Largest factor takes the highest power of each prime, and so on down.
        let mut factors = Vec::new();
        while !prime_powers.is_empty() {
            let primes: BTreeSet<u64> = prime_powers.iter().map(|&(p, _)| p).collect();
            let mut d = 1u64;
            for p in primes {
                let e = prime_powers
                    .iter()
                    .filter(|&&(q, _)| q == p)
                    .map(|&(_, e)| e)
                    .max()
                    .expect("prime came from the list");
                d *= p.pow(e);
                let pos = prime_powers
                    .iter()
                    .position(|&(q, f)| q == p && f == e)
                    .unwrap();
                prime_powers.remove(pos);
            }
            factors.push(d);
        }
        factors.reverse();
        Self::new(factors)
    }

    /// All abelian groups of order `n`, sorted lexicographically on the
    /// factor lists.
    pub fn groups_of_order(n: u64) -> Vec<AbelianGroup> {
        assert!(n >= 1, "group order must be positive");
        let mut m = n;
        let mut prime_exps: Vec<(u64, u32)> = Vec::new();
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                prime_exps.push((p, e));
            }
            p += 1;
        }
        if m > 1 {
            prime_exps.push((m, 1));
        }
        // One partition of the exponent per prime, combined in every way.
        let per_prime: Vec<Vec<Vec<u32>>> = prime_exps
            .iter()
            .map(|&(_, e)| partitions_of(e))
            .collect();
        let mut out = Vec::new();
        for combo in per_prime
            .iter()
            .map(|ps| ps.iter())
            .multi_cartesian_product()
            .pad_using(1, |_| vec![])
        {
            let mut orders = Vec::new();
            for (t, part) in combo.iter().enumerate() {
                let (q, _) = prime_exps[t];
                for &e in part.iter() {
                    orders.push(q.pow(e));
                }
            }
            out.push(Self::canonicalize(&orders).expect("positive orders"));
        }
        out.sort();
        out.dedup();
        out
    }

    /// Parses the textual form produced by `Display`: comma separated
    /// invariant factors, with `1` denoting the trivial group.
    pub fn parse(s: &str) -> Result<Self, AbelianError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(AbelianError::Unparseable(s.to_string()));
        }
        let factors: Result<Vec<u64>, _> = t.split(',').map(|x| x.trim().parse::<u64>()).collect();
        match factors {
            Ok(f) => Self::new(f),
            Err(_) => Err(AbelianError::Unparseable(s.to_string())),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// The largest element order, i.e. the last invariant factor.
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement, AbelianError> {
        if coords.len() != self.factors.len() {
            return Err(AbelianError::RankMismatch {
                got: coords.len(),
                expected: self.factors.len(),
            });
        }
        for (&c, &d) in coords.iter().zip(&self.factors) {
            if c >= d {
                return Err(AbelianError::CoordinateOutOfRange { coord: c, factor: d });
            }
        }
        Ok(GroupElement { coords })
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.factors.len()
            && x.coords.iter().zip(&self.factors).all(|(&c, &d)| c < d)
    }

    /// The canonical generator of the `t`-th cyclic factor.
    pub fn generator(&self, t: usize) -> GroupElement {
        let mut coords = vec![0; self.factors.len()];
        coords[t] = 1;
        GroupElement { coords }
    }

    /// All elements in lexicographic coordinate order (first coordinate most
    /// significant). The zero element comes first.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    /// The `i`-th element in lexicographic order.
    pub fn element_at(&self, mut i: u64) -> GroupElement {
        let mut coords = vec![0; self.factors.len()];
        for t in (0..self.factors.len()).rev() {
            coords[t] = i % self.factors[t];
            i /= self.factors[t];
        }
        debug_assert_eq!(i, 0, "index within group order");
        GroupElement { coords }
    }

    /// Position of `x` in the lexicographic element order.
    pub fn index_of(&self, x: &GroupElement) -> u64 {
        let mut i = 0;
        for (&c, &d) in x.coords.iter().zip(&self.factors) {
            i = i * d + c;
        }
        i
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d - x) % d)
            .collect();
        GroupElement { coords }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `m * a`, with `m` allowed to be negative.
    pub fn scalar_mul(&self, m: i64, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| {
                let r = (m % d as i64 + d as i64) as u64 % d;
                r * x % d
            })
            .collect();
        GroupElement { coords }
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        let mut ord = 1u64;
        for (&x, &d) in a.coords.iter().zip(&self.factors) {
            let o = d / gcd(d, x);
            ord = ord / gcd(ord, o) * o;
        }
        ord
    }

    /// Multiset of element orders, sorted. Distinguishes non-isomorphic
    /// abelian groups of equal order.
    pub fn order_statistics(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.elements().iter().map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    /// Closure of `gens` under addition; always contains zero.
    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> BTreeSet<GroupElement> {
        let mut set: BTreeSet<GroupElement> = BTreeSet::new();
        set.insert(self.zero());
        let mut frontier: Vec<GroupElement> = gens.to_vec();
        while let Some(x) = frontier.pop() {
            if !set.insert(x.clone()) {
                continue;
            }
            // in a finite group, closing under addition alone yields the
            // subgroup: -x appears as a repeated sum of x
            let sums: Vec<GroupElement> = set.iter().map(|y| self.add(&x, y)).collect();
            for s in sums {
                if !set.contains(&s) {
                    frontier.push(s);
                }
            }
        }
        set
    }

    /// Every subgroup, as element sets, ordered by (size, elements).
    pub fn subgroups(&self) -> Vec<BTreeSet<GroupElement>> {
        let mut found: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
        let trivial: BTreeSet<GroupElement> = [self.zero()].into_iter().collect();
        let mut queue = vec![trivial.clone()];
        found.insert(trivial.into_iter().collect());
        let elems = self.elements();
        while let Some(h) = queue.pop() {
            for x in &elems {
                if h.contains(x) {
                    continue;
                }
                let mut gens: Vec<GroupElement> = h.iter().cloned().collect();
                gens.push(x.clone());
                let bigger = self.subgroup_generated(&gens);
                let key: Vec<GroupElement> = bigger.iter().cloned().collect();
                if !found.contains(&key) {
                    found.insert(key);
                    queue.push(bigger);
                }
            }
        }
        let mut out: Vec<BTreeSet<GroupElement>> =
            found.into_iter().map(|v| v.into_iter().collect()).collect();
        out.sort_by_key(|h| (h.len(), h.iter().cloned().collect::<Vec<_>>()));
        out
    }

    /// Proper subgroups maximal under inclusion.
    pub fn maximal_subgroups(&self) -> Vec<BTreeSet<GroupElement>> {
        let all = self.subgroups();
        let order = self.order() as usize;
        all.iter()
            .filter(|h| h.len() < order)
            .filter(|h| {
                !all.iter()
                    .any(|k| k.len() < order && k.len() > h.len() && h.is_subset(k))
            })
            .cloned()
            .collect()
    }

    /// Number of `length`-tuples that fail to generate the group. Counted by
    /// direct enumeration when the tuple space is small, otherwise by
    /// inclusion-exclusion over maximal subgroups.
    pub fn non_generating_tuple_count(&self, length: usize) -> u128 {
        let space = (self.order() as u128).checked_pow(length as u32);
        match space {
            Some(sz) if sz <= 10_000_000 => self.non_generating_brute(length),
            _ => self.non_generating_inclusion_exclusion(length),
        }
    }

    fn non_generating_brute(&self, length: usize) -> u128 {
        // walk the tuple space keeping the subgroup generated so far
        let subs = self.subgroups();
        let full = subs.len() - 1;
        debug_assert_eq!(subs[full].len() as u64, self.order());
        let elems = self.elements();
        let sub_index = |s: &BTreeSet<GroupElement>| -> usize {
            subs.iter().position(|h| h == s).expect("closure is a subgroup")
        };
        // extension table: subgroup x element -> generated subgroup
        let mut ext = vec![vec![0usize; elems.len()]; subs.len()];
        for (si, h) in subs.iter().enumerate() {
            for (xi, x) in elems.iter().enumerate() {
                if h.contains(x) {
                    ext[si][xi] = si;
                } else {
                    let mut gens: Vec<GroupElement> = h.iter().cloned().collect();
                    gens.push(x.clone());
                    ext[si][xi] = sub_index(&self.subgroup_generated(&gens));
                }
            }
        }
        let trivial = 0usize;
        debug_assert_eq!(subs[trivial].len(), 1);
        fn walk(ext: &[Vec<usize>], full: usize, state: usize, left: usize, count: &mut u128) {
            if left == 0 {
                if state != full {
                    *count += 1;
                }
                return;
            }
            for next in &ext[state] {
                walk(ext, full, *next, left - 1, count);
            }
        }
        let mut count = 0u128;
        walk(&ext, full, trivial, length, &mut count);
        count
    }

    fn non_generating_inclusion_exclusion(&self, length: usize) -> u128 {
        if self.is_trivial() {
            return 0; // the empty tuple generates the trivial group
        }
        let maxes = self.maximal_subgroups();
        let m = maxes.len();
        assert!(m < 26, "too many maximal subgroups for inclusion-exclusion");
        let mut total: i128 = 0;
        for mask in 1u32..(1 << m) {
            let mut inter: Option<BTreeSet<GroupElement>> = None;
            for (i, h) in maxes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    inter = Some(match inter {
                        None => h.clone(),
                        Some(acc) => acc.intersection(h).cloned().collect(),
                    });
                }
            }
            let size = inter.expect("mask nonzero").len() as i128;
            let tuples = size.pow(length as u32);
            if mask.count_ones() % 2 == 1 {
                total += tuples;
            } else {
                total -= tuples;
            }
        }
        total as u128
    }
}

/// A homomorphism between finite abelian groups, given by the images of the
/// canonical generators of the domain.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Homomorphism {
    domain: AbelianGroup,
    codomain: AbelianGroup,
    images: Vec<GroupElement>,
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(" "))
    }
}

impl Homomorphism {
    /// The images must satisfy `d_t * images[t] = 0`, otherwise no
    /// homomorphism maps the generators that way.
    pub fn new(
        domain: AbelianGroup,
        codomain: AbelianGroup,
        images: Vec<GroupElement>,
    ) -> Result<Self, AbelianError> {
        if images.len() != domain.rank() {
            return Err(AbelianError::RankMismatch {
                got: images.len(),
                expected: domain.rank(),
            });
        }
        for (t, img) in images.iter().enumerate() {
            if !codomain.contains(img) {
                return Err(AbelianError::RankMismatch {
                    got: img.coords.len(),
                    expected: codomain.rank(),
                });
            }
            let d = domain.factors()[t];
            if d % codomain.element_order(img) != 0 {
                return Err(AbelianError::ImageOrderTooLarge { factor: d });
            }
        }
        Ok(Homomorphism {
            domain,
            codomain,
            images,
        })
    }

    pub fn zero(domain: AbelianGroup, codomain: AbelianGroup) -> Self {
        let images = vec![codomain.zero(); domain.rank()];
        Homomorphism {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(group: AbelianGroup) -> Self {
        let images = (0..group.rank()).map(|t| group.generator(t)).collect();
        Homomorphism {
            domain: group.clone(),
            codomain: group,
            images,
        }
    }

    /// The endomorphism `x -> m*x`.
    pub fn scalar(group: AbelianGroup, m: i64) -> Self {
        let images = (0..group.rank())
            .map(|t| group.scalar_mul(m, &group.generator(t)))
            .collect();
        Homomorphism {
            domain: group.clone(),
            codomain: group,
            images,
        }
    }

    pub fn domain(&self) -> &AbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        debug_assert!(self.domain.contains(x));
        let mut acc = self.codomain.zero();
        for (t, img) in self.images.iter().enumerate() {
            let scaled = self.codomain.scalar_mul(x.coords[t] as i64, img);
            acc = self.codomain.add(&acc, &scaled);
        }
        acc
    }

    /// `self` after `inner`, i.e. `x -> self(inner(x))`.
    pub fn compose(&self, inner: &Homomorphism) -> Homomorphism {
        debug_assert_eq!(inner.codomain, self.domain);
        let images = inner.images.iter().map(|img| self.apply(img)).collect();
        Homomorphism {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            images,
        }
    }

    pub fn add(&self, other: &Homomorphism) -> Homomorphism {
        debug_assert_eq!(self.domain, other.domain);
        debug_assert_eq!(self.codomain, other.codomain);
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| self.codomain.add(a, b))
            .collect();
        Homomorphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            images,
        }
    }

    pub fn sub(&self, other: &Homomorphism) -> Homomorphism {
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| self.codomain.sub(a, b))
            .collect();
        Homomorphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            images,
        }
    }

    /// `m`-th power under composition; the domain must equal the codomain.
    /// `pow(0)` is the identity.
    pub fn pow(&self, m: u32) -> Homomorphism {
        debug_assert_eq!(self.domain, self.codomain);
        let mut acc = Homomorphism::identity(self.domain.clone());
        for _ in 0..m {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|img| *img == self.codomain.zero())
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.order() != self.codomain.order() {
            return false;
        }
        let mut seen = BTreeSet::new();
        for x in self.domain.elements() {
            seen.insert(self.apply(&x));
        }
        seen.len() as u64 == self.codomain.order()
    }

    pub fn image(&self) -> BTreeSet<GroupElement> {
        self.domain.elements().iter().map(|x| self.apply(x)).collect()
    }

    pub fn image_size(&self) -> u64 {
        self.image().len() as u64
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Homomorphism {
        assert!(self.is_bijective(), "only bijections invert");
        let elems = self.domain.elements();
        let find = |target: &GroupElement| {
            elems
                .iter()
                .find(|x| self.apply(x) == *target)
                .expect("bijective")
                .clone()
        };
        let images = (0..self.codomain.rank())
            .map(|t| find(&self.codomain.generator(t)))
            .collect();
        Homomorphism {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            images,
        }
    }

    /// Fixed points of an endomorphism.
    pub fn fixed_point_count(&self) -> u64 {
        debug_assert_eq!(self.domain, self.codomain);
        self.domain
            .elements()
            .iter()
            .filter(|x| self.apply(x) == **x)
            .count() as u64
    }
}

/// All homomorphisms `domain -> codomain`, in lexicographic image order.
/// There are `prod_(s,t) gcd(d_s, e_t)` of them.
pub fn all_homs(domain: &AbelianGroup, codomain: &AbelianGroup) -> Vec<Homomorphism> {
    let elems = codomain.elements();
    let choices: Vec<Vec<GroupElement>> = (0..domain.rank())
        .map(|t| {
            let d = domain.factors()[t];
            elems
                .iter()
                .filter(|y| d % codomain.element_order(y) == 0)
                .cloned()
                .collect()
        })
        .collect();
    if domain.rank() == 0 {
        return vec![Homomorphism::zero(domain.clone(), codomain.clone())];
    }
    choices
        .into_iter()
        .map(|c| c.into_iter())
        .multi_cartesian_product()
        .map(|images| Homomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
        })
        .collect()
}

/// All isomorphisms `domain -> codomain`; empty unless the groups are equal
/// in canonical form.
pub fn all_isos(domain: &AbelianGroup, codomain: &AbelianGroup) -> Vec<Homomorphism> {
    if domain != codomain {
        return vec![];
    }
    all_homs(domain, codomain)
        .into_iter()
        .filter(|h| h.is_bijective())
        .collect()
}

/// The automorphism group as an explicit list, in lexicographic image order.
pub fn aut_group(group: &AbelianGroup) -> Vec<Homomorphism> {
    all_isos(group, group)
}

/// A conjugacy class of automorphisms: the minimal member and the class size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Homomorphism,
    pub size: usize,
}

/// Conjugacy classes of a full automorphism list, ordered by representative.
pub fn conjugacy_classes(auts: &[Homomorphism]) -> Vec<ConjugacyClass> {
    let mut remaining: BTreeSet<Homomorphism> = auts.iter().cloned().collect();
    let mut classes = Vec::new();
    while let Some(h) = remaining.iter().next().cloned() {
        let mut class = BTreeSet::new();
        for g in auts {
            class.insert(g.compose(&h).compose(&g.inverse()));
        }
        for c in &class {
            remaining.remove(c);
        }
        classes.push(ConjugacyClass {
            representative: class.iter().next().expect("class nonempty").clone(),
            size: class.len(),
        });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    classes
}

fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut k = max.min(n);
        while k >= 1 {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
            k -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n` into positive parts, each partition in descending
/// order.
pub fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    partitions_of(n)
}
