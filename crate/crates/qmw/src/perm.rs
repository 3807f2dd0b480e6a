//! Permutations on `0..degree` and the groups they generate.
//!
//! Groups are held as generator lists; the full element set is computed on
//! demand by breadth first closure and cached, guarded by a configurable
//! size cap. Orbits and commutativity never need the closure.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images {0:?} are not a permutation")]
    NotAPermutation(Vec<u16>),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group closure exceeds cap of {cap} elements")]
    GroupTooLarge { cap: usize },
}

/// A permutation of `{0, ..., degree-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn new(images: Vec<u16>) -> Result<Self, PermError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if (i as usize) >= images.len() || seen[i as usize] {
                return Err(PermError::NotAPermutation(images));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn from_usize(images: &[usize]) -> Result<Self, PermError> {
        Self::new(images.iter().map(|&i| i as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self` after `inner`: `x -> self(inner(x))`.
    pub fn compose(&self, inner: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), inner.degree());
        Perm {
            images: inner.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u16 == y)
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| {
                let l = l as u64;
                acc / gcd(acc, l) * l
            })
    }

    /// Lengths of all cycles (including fixed points), sorted.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }

    /// Cycles of length at least 2, each rotated to start at its minimum,
    /// sorted by first point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// A permutation group given by generators. Element enumeration is lazy and
/// capped; orbit and commutativity queries work straight off the generators.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    elements: OnceLock<Result<Vec<Perm>, PermError>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, PermError> {
        Self::with_cap(degree, generators, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(g.degree(), degree));
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            cap,
            elements: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Full element list in breadth first discovery order starting from the
    /// identity. Cached after the first call.
    pub fn elements(&self) -> Result<&[Perm], PermError> {
        let r = self.elements.get_or_init(|| {
            let mut order: Vec<Perm> = vec![Perm::identity(self.degree)];
            let mut seen: HashSet<Perm> = order.iter().cloned().collect();
            let mut head = 0;
            while head < order.len() {
                let current = order[head].clone();
                head += 1;
                for g in &self.generators {
                    let next = g.compose(&current);
                    if seen.insert(next.clone()) {
                        if order.len() >= self.cap {
                            return Err(PermError::GroupTooLarge { cap: self.cap });
                        }
                        order.push(next);
                    }
                }
            }
            Ok(order)
        });
        match r {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn element_count(&self) -> Result<usize, PermError> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, p: &Perm) -> Result<bool, PermError> {
        Ok(self.elements()?.contains(p))
    }

    /// True when all generators commute pairwise; no closure needed.
    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if a.compose(b) != b.compose(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Orbits of the natural action, sorted by minimal point, each orbit
    /// sorted. Computed from the generators alone.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![usize::MAX; self.degree];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.degree {
            if assigned[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            assigned[start] = id;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for g in &self.generators {
                    let y = g.apply(x);
                    if assigned[y] == usize::MAX {
                        assigned[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// The stabilizer of a point, filtered from the full element list.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup, PermError> {
        let stab: Vec<Perm> = self
            .elements()?
            .iter()
            .filter(|p| p.apply(point) == point)
            .cloned()
            .collect();
        let group = PermGroup::with_cap(self.degree, stab.clone(), self.cap)?;
        // already closed, so cache it
        let _ = group.elements.set(Ok(stab));
        Ok(group)
    }
}
