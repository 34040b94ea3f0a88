//! Wreath products of cyclic groups with symmetric groups, their direct
//! products, and the generic wreath product of an arbitrary materialized
//! group with a symmetric top group.
//!
//! A wreath element over `Z_p` is a pair `(v, s)` of a digit vector and a top
//! permutation. Multiplication follows `(v, s)(w, t) = (v + s.w, st)` where
//! `(s.w)_i = w_{s(i)}`, the twist that is associative under the crate-wide
//! left-to-right composition of permutations. Inside the base group `V` of
//! all vectors, two subgroups recur everywhere: the constant vectors (a
//! central copy of `Z_p`) and the zero-sum vectors (the kernel of the
//! digit-sum map).

use serde::Serialize;

use crate::elem::{factorial_u128, Elem};
use crate::error::{GroupError, Result};
use crate::group::{cartesian_tuples, DirectProduct, Group, Subgroup};
use crate::perm::{close_perms, Perm};

/// One wreath factor shape: `Z_p` wreath `Sym_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorSpec {
    pub p: u64,
    pub n: usize,
}

/// An element of `Z_p` wreath `Sym_n`. Field order matters: the derived
/// ordering compares the vector first, then the top permutation, which is
/// exactly the mixed-radix canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WreathElem {
    #[serde(skip)]
    p: u32,
    v: Vec<u32>,
    s: Perm,
}

impl WreathElem {
    pub fn new(p: u64, v: Vec<u32>, s: Perm) -> Result<WreathElem> {
        if !crate::arith::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if v.len() != s.degree() {
            return Err(GroupError::DegreeMismatch(v.len(), s.degree()));
        }
        let p = p as u32;
        if v.iter().any(|&d| d >= p) {
            return Err(GroupError::HypothesisViolated(
                "vector digits must be reduced mod p".into(),
            ));
        }
        Ok(WreathElem { p, v, s })
    }

    pub fn modulus(&self) -> u64 {
        self.p as u64
    }

    pub fn vector(&self) -> &[u32] {
        &self.v
    }

    pub fn top(&self) -> &Perm {
        &self.s
    }

    pub fn same_shape(&self, other: &WreathElem) -> bool {
        self.p == other.p && self.v.len() == other.v.len()
    }

    pub fn mul(&self, other: &WreathElem) -> Result<WreathElem> {
        if !self.same_shape(other) {
            return Err(GroupError::IncompatiblePayloads);
        }
        let mut v = self.v.clone();
        for j in 0..other.v.len() {
            v[j] = (v[j] + other.v[self.s.apply(j)]) % self.p;
        }
        Ok(WreathElem {
            p: self.p,
            v,
            s: self.s.compose(&other.s)?,
        })
    }

    pub fn inverse(&self) -> WreathElem {
        let mut v = vec![0u32; self.v.len()];
        for j in 0..self.v.len() {
            v[self.s.apply(j)] = (self.p - self.v[j]) % self.p;
        }
        WreathElem {
            p: self.p,
            v,
            s: self.s.inverse(),
        }
    }

    pub fn identity_like(&self) -> WreathElem {
        WreathElem {
            p: self.p,
            v: vec![0; self.v.len()],
            s: Perm::identity(self.v.len()),
        }
    }

    pub(crate) fn shape_radix(&self) -> Option<u128> {
        let vectors = (self.p as u128).checked_pow(self.v.len() as u32)?;
        vectors.checked_mul(factorial_u128(self.v.len())?)
    }

    pub(crate) fn canonical_key(&self) -> Option<u128> {
        let mut digits: u128 = 0;
        for &d in &self.v {
            digits = digits.checked_mul(self.p as u128)?.checked_add(d as u128)?;
        }
        digits
            .checked_mul(factorial_u128(self.v.len())?)?
            .checked_add(self.s.lehmer_rank()?)
    }
}

/// An element of `L` wreath `Sym_n` for an arbitrary base group `L`: a tuple
/// of base elements and a top permutation, multiplied with the same
/// convention as `WreathElem`, componentwise in the base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GenWreathElem {
    base: Vec<Elem>,
    top: Perm,
}

impl GenWreathElem {
    pub fn new(base: Vec<Elem>, top: Perm) -> Result<GenWreathElem> {
        if base.len() != top.degree() {
            return Err(GroupError::DegreeMismatch(base.len(), top.degree()));
        }
        if let Some(first) = base.first() {
            if base.iter().any(|e| !first.compatible(e)) {
                return Err(GroupError::IncompatiblePayloads);
            }
        }
        Ok(GenWreathElem { base, top })
    }

    pub fn base(&self) -> &[Elem] {
        &self.base
    }

    pub fn top(&self) -> &Perm {
        &self.top
    }

    pub fn same_shape(&self, other: &GenWreathElem) -> bool {
        self.base.len() == other.base.len()
            && self
                .base
                .iter()
                .zip(&other.base)
                .all(|(a, b)| a.compatible(b))
    }

    pub fn mul(&self, other: &GenWreathElem) -> Result<GenWreathElem> {
        if !self.same_shape(other) {
            return Err(GroupError::IncompatiblePayloads);
        }
        let mut base = self.base.clone();
        for j in 0..other.base.len() {
            base[j] = base[j].mul(&other.base[self.top.apply(j)])?;
        }
        Ok(GenWreathElem {
            base,
            top: self.top.compose(&other.top)?,
        })
    }

    pub fn inverse(&self) -> Result<GenWreathElem> {
        let mut base = self.base.clone();
        for j in 0..self.base.len() {
            base[self.top.apply(j)] = self.base[j].inv()?;
        }
        Ok(GenWreathElem {
            base,
            top: self.top.inverse(),
        })
    }

    pub fn identity_like(&self) -> Result<GenWreathElem> {
        let base: Result<Vec<Elem>> = self.base.iter().map(|e| e.identity_like()).collect();
        Ok(GenWreathElem {
            base: base?,
            top: Perm::identity(self.base.len()),
        })
    }

    pub(crate) fn shape_radix(&self) -> Option<u128> {
        let mut r: u128 = 1;
        for e in &self.base {
            r = r.checked_mul(e.shape_radix()?)?;
        }
        r.checked_mul(factorial_u128(self.base.len())?)
    }

    pub(crate) fn canonical_key(&self) -> Option<u128> {
        let mut key: u128 = 0;
        for e in &self.base {
            key = key
                .checked_mul(e.shape_radix()?)?
                .checked_add(e.try_canonical_key()?)?;
        }
        key.checked_mul(factorial_u128(self.base.len())?)?
            .checked_add(self.top.lehmer_rank()?)
    }
}

/// All digit vectors of length `n` mod `p`, ascending.
fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut v = vec![0u32; n];
    loop {
        out.push(v.clone());
        let mut slot = n;
        loop {
            if slot == 0 {
                return out;
            }
            slot -= 1;
            v[slot] += 1;
            if v[slot] < p {
                break;
            }
            v[slot] = 0;
            if slot == 0 {
                return out;
            }
        }
    }
}

/// The constant vectors: multiples of the all-ones vector.
pub fn constant_vectors(p: u64, n: usize) -> Vec<Vec<u32>> {
    (0..p as u32).map(|c| vec![c; n]).collect()
}

/// The zero-sum vectors: digit sum divisible by `p`.
pub fn zero_sum_vectors(p: u64, n: usize) -> Vec<Vec<u32>> {
    all_vectors(p as u32, n)
        .into_iter()
        .filter(|v| v.iter().map(|&d| d as u64).sum::<u64>() % p == 0)
        .collect()
}

fn sym_elements(n: usize) -> Result<Vec<Perm>> {
    if n < 2 {
        return Ok(vec![Perm::identity(n)]);
    }
    let mut gens = vec![Perm::transposition(n, 0, 1)?];
    if n > 2 {
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        gens.push(Perm::from_images(cycle)?);
    }
    close_perms(&gens, usize::MAX)
}

fn sym_generators(n: usize) -> Result<Vec<Perm>> {
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut gens = vec![Perm::transposition(n, 0, 1)?];
    if n > 2 {
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        gens.push(Perm::from_images(cycle)?);
    }
    Ok(gens)
}

/// One materialized wreath factor `Z_p` wreath `Sym_n`.
#[derive(Debug, Clone)]
pub struct WreathFactor {
    spec: FactorSpec,
    group: Group,
}

impl WreathFactor {
    pub fn build(p: u64, n: usize, cap: usize) -> Result<WreathFactor> {
        if !crate::arith::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if n == 0 {
            return Err(GroupError::HypothesisViolated(
                "wreath degree must be at least one".into(),
            ));
        }
        let order = (p as u128)
            .checked_pow(n as u32)
            .and_then(|v| v.checked_mul(factorial_u128(n)?))
            .ok_or(GroupError::CapExceeded { cap })?;
        if order > cap as u128 {
            return Err(GroupError::CapExceeded { cap });
        }
        let perms = sym_elements(n)?;
        let mut elements = Vec::with_capacity(order as usize);
        for v in all_vectors(p as u32, n) {
            for s in &perms {
                elements.push(Elem::Wreath(WreathElem {
                    p: p as u32,
                    v: v.clone(),
                    s: s.clone(),
                }));
            }
        }
        let mut generators: Vec<Elem> = Vec::new();
        let mut e0 = vec![0u32; n];
        e0[0] = 1 % p as u32;
        generators.push(Elem::Wreath(WreathElem {
            p: p as u32,
            v: e0,
            s: Perm::identity(n),
        }));
        for s in sym_generators(n)? {
            generators.push(Elem::Wreath(WreathElem {
                p: p as u32,
                v: vec![0; n],
                s,
            }));
        }
        let identity = Elem::Wreath(WreathElem {
            p: p as u32,
            v: vec![0; n],
            s: Perm::identity(n),
        });
        let group = Group::from_sorted(generators, elements, identity);
        Ok(WreathFactor {
            spec: FactorSpec { p, n },
            group,
        })
    }

    pub fn spec(&self) -> FactorSpec {
        self.spec
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    fn wrap(&self, v: Vec<u32>, s: Perm) -> Elem {
        Elem::Wreath(WreathElem {
            p: self.spec.p as u32,
            v,
            s,
        })
    }

    /// The top copy of `Sym_n`: all elements with zero vector.
    pub fn top_subgroup(&self) -> Result<Subgroup> {
        let n = self.spec.n;
        let elements: Vec<Elem> = sym_elements(n)?
            .into_iter()
            .map(|s| self.wrap(vec![0; n], s))
            .collect();
        let mut sorted = elements;
        sorted.sort();
        Ok(self.group.subgroup_from_sorted(sorted))
    }

    /// The base `V` of all vectors with identity top part.
    pub fn base_subgroup(&self) -> Result<Subgroup> {
        let n = self.spec.n;
        let elements: Vec<Elem> = all_vectors(self.spec.p as u32, n)
            .into_iter()
            .map(|v| self.wrap(v, Perm::identity(n)))
            .collect();
        Ok(self.group.subgroup_from_sorted(elements))
    }

    /// The central constant-vector subgroup of order `p`.
    pub fn constant_subgroup(&self) -> Result<Subgroup> {
        let n = self.spec.n;
        let elements: Vec<Elem> = constant_vectors(self.spec.p, n)
            .into_iter()
            .map(|v| self.wrap(v, Perm::identity(n)))
            .collect();
        Ok(self.group.subgroup_from_sorted(elements))
    }

    /// The zero-sum subgroup of order `p^(n-1)`.
    pub fn zero_sum_subgroup(&self) -> Result<Subgroup> {
        let n = self.spec.n;
        let elements: Vec<Elem> = zero_sum_vectors(self.spec.p, n)
            .into_iter()
            .map(|v| self.wrap(v, Perm::identity(n)))
            .collect();
        Ok(self.group.subgroup_from_sorted(elements))
    }

    /// Generators of the zero-sum subgroup: adjacent difference vectors.
    pub fn zero_sum_generators(&self) -> Vec<Elem> {
        let n = self.spec.n;
        let p = self.spec.p as u32;
        let mut out = Vec::new();
        for j in 0..n.saturating_sub(1) {
            let mut v = vec![0u32; n];
            v[j] = 1 % p;
            v[j + 1] = (p - 1) % p;
            out.push(self.wrap(v, Perm::identity(n)));
        }
        if out.is_empty() {
            out.push(self.wrap(vec![0; n], Perm::identity(n)));
        }
        out
    }

    /// Top projection of one element.
    pub fn bar(e: &Elem) -> Result<Perm> {
        match e {
            Elem::Wreath(w) => Ok(w.s.clone()),
            _ => Err(GroupError::IncompatiblePayloads),
        }
    }

    /// True when the top projection of `h` is all of `Sym_n`.
    pub fn bar_is_full(&self, h: &Subgroup) -> Result<bool> {
        let mut seen: std::collections::HashSet<Perm> = std::collections::HashSet::new();
        for e in h.elements() {
            seen.insert(Self::bar(e)?);
        }
        Ok(seen.len() as u128 == factorial_u128(self.spec.n).unwrap_or(u128::MAX))
    }
}

/// A direct product of wreath factors, with tuple elements throughout (a
/// single factor is a tuple of length one).
#[derive(Debug, Clone)]
pub struct WreathProduct {
    factors: Vec<WreathFactor>,
    product: DirectProduct,
}

impl WreathProduct {
    pub fn build(specs: &[FactorSpec], cap: usize) -> Result<WreathProduct> {
        if specs.is_empty() {
            return Err(GroupError::HypothesisViolated(
                "a wreath product ambient needs at least one factor".into(),
            ));
        }
        let mut factors = Vec::with_capacity(specs.len());
        for spec in specs {
            factors.push(WreathFactor::build(spec.p, spec.n, cap)?);
        }
        let product = DirectProduct::new(factors.iter().map(|f| f.group().clone()).collect(), cap)?;
        Ok(WreathProduct { factors, product })
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn specs(&self) -> Vec<FactorSpec> {
        self.factors.iter().map(|f| f.spec()).collect()
    }

    pub fn factor(&self, i: usize) -> &WreathFactor {
        &self.factors[i]
    }

    pub fn group(&self) -> &Group {
        self.product.group()
    }

    pub fn product(&self) -> &DirectProduct {
        &self.product
    }

    pub fn project_subgroup(&self, h: &Subgroup, i: usize) -> Result<Subgroup> {
        self.product.project_subgroup(h, i)
    }

    /// True when the top projection of factor `i` of `h` is full.
    pub fn bar_is_full(&self, h: &Subgroup, i: usize) -> Result<bool> {
        let proj = self.project_subgroup(h, i)?;
        self.factors[i].bar_is_full(&proj)
    }

    /// True when the zero-sum subgroup of factor `i` lies inside the
    /// projection of `h` to that factor.
    pub fn zero_sum_contained(&self, h: &Subgroup, i: usize) -> Result<bool> {
        let proj = self.project_subgroup(h, i)?;
        Ok(self.factors[i]
            .zero_sum_generators()
            .iter()
            .all(|g| proj.contains(g)))
    }

    /// The product of the top symmetric groups of all factors.
    pub fn top_subgroup(&self) -> Result<Subgroup> {
        let lists: Vec<Vec<Elem>> = self
            .factors
            .iter()
            .map(|f| Ok(f.top_subgroup()?.elements().to_vec()))
            .collect::<Result<_>>()?;
        let elements = cartesian_tuples(&lists);
        Ok(self.group().subgroup_from_sorted(elements))
    }

    /// The product of the full vector bases of all factors.
    pub fn base_subgroup(&self) -> Result<Subgroup> {
        let lists: Vec<Vec<Elem>> = self
            .factors
            .iter()
            .map(|f| Ok(f.base_subgroup()?.elements().to_vec()))
            .collect::<Result<_>>()?;
        let elements = cartesian_tuples(&lists);
        Ok(self.group().subgroup_from_sorted(elements))
    }
}

/// The wreath product of an arbitrary materialized base group with `Sym_n`.
#[derive(Debug, Clone)]
pub struct GenericWreath {
    base: Group,
    degree: usize,
    group: Group,
}

impl GenericWreath {
    pub fn build(base: &Group, degree: usize, cap: usize) -> Result<GenericWreath> {
        if degree == 0 {
            return Err(GroupError::HypothesisViolated(
                "wreath degree must be at least one".into(),
            ));
        }
        let order = (base.order() as u128)
            .checked_pow(degree as u32)
            .and_then(|v| v.checked_mul(factorial_u128(degree)?))
            .ok_or(GroupError::CapExceeded { cap })?;
        if order > cap as u128 {
            return Err(GroupError::CapExceeded { cap });
        }
        let perms = sym_elements(degree)?;
        let base_lists: Vec<Vec<Elem>> = vec![base.elements().to_vec(); degree];
        let mut elements = Vec::with_capacity(order as usize);
        for tuple in cartesian_lists(&base_lists) {
            for s in &perms {
                elements.push(Elem::GenWreath(GenWreathElem {
                    base: tuple.clone(),
                    top: s.clone(),
                }));
            }
        }
        let identity_base: Vec<Elem> = vec![base.identity().clone(); degree];
        let identity = Elem::GenWreath(GenWreathElem {
            base: identity_base.clone(),
            top: Perm::identity(degree),
        });
        let mut generators: Vec<Elem> = Vec::new();
        for g in base.generators() {
            let mut slots = identity_base.clone();
            slots[0] = g.clone();
            generators.push(Elem::GenWreath(GenWreathElem {
                base: slots,
                top: Perm::identity(degree),
            }));
        }
        for s in sym_generators(degree)? {
            generators.push(Elem::GenWreath(GenWreathElem {
                base: identity_base.clone(),
                top: s,
            }));
        }
        let group = Group::from_sorted(generators, elements, identity);
        Ok(GenericWreath {
            base: base.clone(),
            degree,
            group,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn base_group(&self) -> &Group {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The base subgroup: all slots free, identity on top.
    pub fn base_subgroup(&self) -> Result<Subgroup> {
        let base_lists: Vec<Vec<Elem>> = vec![self.base.elements().to_vec(); self.degree];
        let elements: Vec<Elem> = cartesian_lists(&base_lists)
            .into_iter()
            .map(|tuple| {
                Elem::GenWreath(GenWreathElem {
                    base: tuple,
                    top: Perm::identity(self.degree),
                })
            })
            .collect();
        Ok(self.group.subgroup_from_sorted(elements))
    }

    /// The top copy of `Sym_n`.
    pub fn top_subgroup(&self) -> Result<Subgroup> {
        let identity_base: Vec<Elem> = vec![self.base.identity().clone(); self.degree];
        let elements: Vec<Elem> = sym_elements(self.degree)?
            .into_iter()
            .map(|s| {
                Elem::GenWreath(GenWreathElem {
                    base: identity_base.clone(),
                    top: s,
                })
            })
            .collect();
        let mut sorted = elements;
        sorted.sort();
        Ok(self.group.subgroup_from_sorted(sorted))
    }

    pub fn embed_base_elem(&self, slot: usize, e: &Elem) -> Result<Elem> {
        if slot >= self.degree || !self.base.contains(e) {
            return Err(GroupError::ElementNotInAmbient);
        }
        let mut base: Vec<Elem> = vec![self.base.identity().clone(); self.degree];
        base[slot] = e.clone();
        Ok(Elem::GenWreath(GenWreathElem {
            base,
            top: Perm::identity(self.degree),
        }))
    }

    pub fn top_elem(&self, s: Perm) -> Result<Elem> {
        if s.degree() != self.degree {
            return Err(GroupError::DegreeMismatch(s.degree(), self.degree));
        }
        Ok(Elem::GenWreath(GenWreathElem {
            base: vec![self.base.identity().clone(); self.degree],
            top: s,
        }))
    }

    pub fn component(e: &Elem, slot: usize) -> Result<Elem> {
        match e {
            Elem::GenWreath(w) => w
                .base
                .get(slot)
                .cloned()
                .ok_or(GroupError::IncompatiblePayloads),
            _ => Err(GroupError::IncompatiblePayloads),
        }
    }

    pub fn top_of(e: &Elem) -> Result<Perm> {
        match e {
            Elem::GenWreath(w) => Ok(w.top.clone()),
            _ => Err(GroupError::IncompatiblePayloads),
        }
    }

    /// Intersection of a subgroup with one base slot, viewed in the base
    /// group: elements that are pure in `slot` and trivial elsewhere.
    pub fn slice_base(&self, sub: &Subgroup, slot: usize) -> Result<Subgroup> {
        if *sub.ambient() != self.group {
            return Err(GroupError::AmbientMismatch);
        }
        let base_identity = self.base.identity();
        let mut kept: Vec<Elem> = Vec::new();
        for e in sub.elements() {
            let w = match e {
                Elem::GenWreath(w) => w,
                _ => return Err(GroupError::IncompatiblePayloads),
            };
            if !w.top.is_identity() {
                continue;
            }
            let pure = w
                .base
                .iter()
                .enumerate()
                .all(|(j, part)| j == slot || part == base_identity);
            if pure {
                kept.push(w.base[slot].clone());
            }
        }
        Ok(self.base.subgroup_from_sorted(kept))
    }
}

/// Cartesian product of element lists, lexicographic by list position.
fn cartesian_lists(lists: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut counters = vec![0usize; lists.len()];
    loop {
        out.push(
            counters
                .iter()
                .zip(lists)
                .map(|(&c, l)| l[c].clone())
                .collect(),
        );
        let mut slot = lists.len();
        loop {
            if slot == 0 {
                return out;
            }
            slot -= 1;
            counters[slot] += 1;
            if counters[slot] < lists[slot].len() {
                break;
            }
            counters[slot] = 0;
            if slot == 0 {
                return out;
            }
        }
    }
}
