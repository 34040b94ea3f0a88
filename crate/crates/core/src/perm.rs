//! Permutations on 0-indexed points, with the composition convention fixed
//! once for the whole crate: `(a * b)(x) = b(a(x))`, apply `a` first.
//!
//! Everything downstream (wreath twists, conjugation, coset actions) leans on
//! that convention, so it lives here and nowhere else.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{GroupError, Result};

/// A permutation in one-line notation: `images[x]` is the image of point `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n || seen[im] {
                return Err(GroupError::HypothesisViolated(format!(
                    "image list {images:?} is not a permutation"
                )));
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    /// Convenience constructor from disjoint-cycle notation.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w] as usize;
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to as usize >= degree {
                    return Err(GroupError::DegreeMismatch(from.max(to as usize), degree));
                }
                images[from] = to;
            }
        }
        Perm::from_images(images)
    }

    pub fn transposition(degree: usize, i: usize, j: usize) -> Result<Self> {
        Perm::from_cycles(degree, &[&[i as u32, j as u32]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &im)| im as usize == x)
    }

    /// `(a * b)(x) = b(a(x))`: apply `self` first, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (x, &im) in self.images.iter().enumerate() {
            images[im as usize] = x as u32;
        }
        Perm { images }
    }

    /// Number of points moved; a transposition moves exactly two.
    pub fn support_size(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(x, &im)| im as usize != x)
            .count()
    }

    pub fn is_transposition(&self) -> bool {
        self.support_size() == 2
    }

    /// Lehmer rank: the position of this permutation in lexicographic order
    /// over all permutations of the same degree. Degrees above 34 overflow.
    pub fn lehmer_rank(&self) -> Option<u128> {
        let n = self.degree();
        let mut rank: u128 = 0;
        let mut fact: u128 = 1;
        for k in 1..n {
            fact = fact.checked_mul(k as u128)?;
        }
        for pos in 0..n {
            let v = self.images[pos];
            let smaller = self.images[pos..].iter().filter(|&&w| w < v).count() as u128;
            rank = rank.checked_add(smaller.checked_mul(fact)?)?;
            if n - pos > 1 {
                fact /= (n - pos - 1) as u128;
            }
        }
        Some(rank)
    }
}

/// Orbit of `start` under a set of permutations.
pub fn orbit(gens: &[Perm], start: usize) -> Vec<usize> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// True when the generated group moves every point to every other point.
pub fn is_transitive(gens: &[Perm], degree: usize) -> bool {
    if degree == 0 {
        return true;
    }
    orbit(gens, 0).len() == degree
}

/// Primitivity via minimal block systems: seeds the partition with each pair
/// `{0, x}` and refines under the generators; any stable nontrivial block
/// witnesses imprimitivity. Requires a transitive action.
pub fn is_primitive(gens: &[Perm], degree: usize) -> Result<bool> {
    if !is_transitive(gens, degree) {
        return Err(GroupError::NotTransitive);
    }
    if degree <= 2 {
        return Ok(true);
    }
    for x in 1..degree {
        if minimal_block_size(gens, degree, x) < degree {
            return Ok(false);
        }
    }
    Ok(true)
}

// Size of the minimal block containing {0, x}: union-find where merging two
// points forces merging their images under every generator.
fn minimal_block_size(gens: &[Perm], degree: usize, x: usize) -> usize {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut Vec<usize>, mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut queue = VecDeque::new();
    queue.push_back((0usize, x));
    while let Some((a, b)) = queue.pop_front() {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra == rb {
            continue;
        }
        parent[ra] = rb;
        for g in gens {
            queue.push_back((g.apply(a), g.apply(b)));
        }
    }
    let root = find(&mut parent, 0);
    (0..degree).filter(|&y| find(&mut parent, y) == root).count()
}

/// Scans the group generated by `gens` for a transposition. The closure is
/// materialized, so keep the degree small enough for the generated order.
pub fn contains_transposition(gens: &[Perm], cap: usize) -> Result<bool> {
    let closed = close_perms(gens, cap)?;
    Ok(closed.iter().any(|p| p.is_transposition()))
}

/// Points fixed by every generator; this equals the fixed set of the whole
/// generated group.
pub fn fixed_points(gens: &[Perm], degree: usize) -> Vec<usize> {
    (0..degree)
        .filter(|&x| gens.iter().all(|g| g.apply(x) == x))
        .collect()
}

/// Closure of a set of same-degree permutations under composition.
pub fn close_perms(gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let degree = gens.first().map_or(0, |g| g.degree());
    for g in gens {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch(degree, g.degree()));
        }
    }
    let mut set: HashSet<Perm> = HashSet::new();
    let mut queue: VecDeque<Perm> = VecDeque::new();
    let id = Perm::identity(degree);
    set.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g)?;
            if !set.contains(&y) {
                if set.len() + 1 > cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                set.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Perm> = set.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The transitive action of a group on the right cosets of a subgroup.
///
/// Points are cosets `K·g`, numbered in ascending order of their minimal
/// element, so point labels are reproducible across runs.
pub struct CosetAction {
    reps: Vec<crate::elem::Elem>,
    point_of: HashMap<crate::elem::Elem, u32>,
}

impl CosetAction {
    pub(crate) fn new(reps: Vec<crate::elem::Elem>, point_of: HashMap<crate::elem::Elem, u32>) -> Self {
        CosetAction { reps, point_of }
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// Minimal representative of each coset, in point order.
    pub fn representatives(&self) -> &[crate::elem::Elem] {
        &self.reps
    }

    /// The permutation induced by right multiplication with `g`.
    pub fn act(&self, g: &crate::elem::Elem) -> Result<Perm> {
        let mut images = Vec::with_capacity(self.reps.len());
        for rep in &self.reps {
            let moved = rep.mul(g)?;
            let point = self
                .point_of
                .get(&moved)
                .ok_or(GroupError::ElementNotInAmbient)?;
            images.push(*point);
        }
        Perm::from_images(images)
    }

    pub fn act_all(&self, gs: &[crate::elem::Elem]) -> Result<Vec<Perm>> {
        gs.iter().map(|g| self.act(g)).collect()
    }
}
