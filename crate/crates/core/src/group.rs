//! Materialized finite groups and subgroup machinery.
//!
//! Every group here is desk scale: the full element list is computed once,
//! sorted ascending, and indexed. All higher operations (normalizers, Sylow
//! subgroups, quotients, enumeration) walk those lists, so results are exact
//! and deterministic. The closure cap guards against accidental blowups.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::elem::{Elem, QuotientTable};
use crate::error::{GroupError, Result};
use crate::perm::CosetAction;

/// Default ceiling on materialized group order.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 21;

/// Default ceiling on the number of subgroups an enumerator may collect.
pub const DEFAULT_SUBGROUP_BUDGET: usize = 4096;

#[derive(Debug)]
struct GroupInner {
    generators: Vec<Elem>,
    elements: Vec<Elem>,
    index: HashMap<Elem, u32>,
    identity: Elem,
}

/// A fully materialized finite group. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.elements == other.inner.elements
    }
}

impl Eq for Group {}

impl Group {
    /// Materialize the group generated by `gens` by breadth-first closure.
    /// At least one generator is required, since generators fix the element
    /// shape; pass the identity itself to build a trivial group.
    pub fn closure(gens: &[Elem], cap: usize) -> Result<Group> {
        let first = gens
            .first()
            .ok_or_else(|| GroupError::HypothesisViolated("closure needs a generator".into()))?;
        for g in gens {
            if !first.compatible(g) {
                return Err(GroupError::IncompatiblePayloads);
            }
        }
        let identity = first.identity_like()?;
        let elements = close_elems(gens, &identity, cap, None)?;
        Ok(Group::from_sorted(gens.to_vec(), elements, identity))
    }

    pub(crate) fn from_sorted(generators: Vec<Elem>, elements: Vec<Elem>, identity: Elem) -> Group {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        Group {
            inner: Arc::new(GroupInner {
                generators,
                elements,
                index,
                identity,
            }),
        }
    }

    pub fn order(&self) -> u64 {
        self.inner.elements.len() as u64
    }

    pub fn elements(&self) -> &[Elem] {
        &self.inner.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.inner.generators
    }

    pub fn identity(&self) -> &Elem {
        &self.inner.identity
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.inner.index.contains_key(e)
    }

    pub fn position(&self, e: &Elem) -> Option<usize> {
        self.inner.index.get(e).map(|&i| i as usize)
    }

    fn same_instance(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// The whole group viewed as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            ambient: self.clone(),
            generators: self.inner.generators.clone(),
            elements: self.inner.elements.clone(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            ambient: self.clone(),
            generators: vec![self.inner.identity.clone()],
            elements: vec![self.inner.identity.clone()],
        }
    }

    /// Subgroup generated by `gens`, closed inside this group.
    pub fn subgroup(&self, gens: &[Elem]) -> Result<Subgroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(GroupError::ElementNotInAmbient);
            }
        }
        if gens.is_empty() {
            return Ok(self.trivial_subgroup());
        }
        let elements = close_elems(gens, &self.inner.identity, usize::MAX, Some(self))?;
        Ok(Subgroup {
            ambient: self.clone(),
            generators: gens.to_vec(),
            elements,
        })
    }

    pub(crate) fn subgroup_from_sorted(&self, elements: Vec<Elem>) -> Subgroup {
        let generators = reduce_generators(self, &elements);
        Subgroup {
            ambient: self.clone(),
            generators,
            elements,
        }
    }

    /// A Sylow `p`-subgroup, chosen deterministically by minimal-element
    /// normalizer climbing. For `p` not dividing the order this is trivial.
    pub fn sylow(&self, p: u64) -> Result<Subgroup> {
        sylow_in_scope(self, self.elements(), p)
    }

    /// Largest normal `p`-subgroup: the intersection of all conjugates of one
    /// Sylow `p`-subgroup.
    pub fn p_core(&self, p: u64) -> Result<Subgroup> {
        let sylow = self.sylow(p)?;
        if sylow.order() == 1 {
            return Ok(self.trivial_subgroup());
        }
        let normalizer = sylow.normalizer()?;
        let mut core: Vec<Elem> = sylow.elements().to_vec();
        let mut covered: HashSet<Elem> = HashSet::with_capacity(self.elements().len());
        for g in self.elements() {
            if covered.contains(g) {
                continue;
            }
            for n in normalizer.elements() {
                covered.insert(n.mul(g)?);
            }
            let conj = sylow.conjugate(g)?;
            core.retain(|e| conj.contains(e));
            if core.len() == 1 {
                break;
            }
        }
        Ok(self.subgroup_from_sorted(core))
    }

    /// Quotient by a normal subgroup, with cosets labeled by their minimal
    /// elements.
    pub fn quotient(&self, kernel: &Subgroup) -> Result<QuotientGroup> {
        if !kernel.ambient.same_instance(self) && kernel.ambient != *self {
            return Err(GroupError::AmbientMismatch);
        }
        if !kernel.is_normal()? {
            return Err(GroupError::NotNormal);
        }
        let mut reps: Vec<Elem> = Vec::new();
        let mut coset_index: HashMap<Elem, u32> = HashMap::with_capacity(self.elements().len());
        for e in self.elements() {
            if coset_index.contains_key(e) {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(e.clone());
            for k in kernel.elements() {
                coset_index.insert(k.mul(e)?, idx);
            }
        }
        let mut hasher = DefaultHasher::new();
        kernel.elements().hash(&mut hasher);
        self.order().hash(&mut hasher);
        let table = Arc::new(QuotientTable::new(reps, coset_index, hasher.finish()));

        let cosets: Result<Vec<Elem>> = (0..table_len(&table))
            .map(|i| table.coset_of(table_rep(&table, i)))
            .collect();
        let cosets = cosets?;
        let identity_coset = table.coset_of(self.identity())?;
        let mut gens: Vec<Elem> = Vec::new();
        for g in self.generators() {
            let image = table.coset_of(g)?;
            if image != identity_coset && !gens.contains(&image) {
                gens.push(image);
            }
        }
        if gens.is_empty() {
            gens.push(identity_coset.clone());
        }
        let group = Group::from_sorted(gens, cosets, identity_coset);

        for a in self.generators() {
            for b in self.generators() {
                let lhs = table.coset_of(a)?.mul(&table.coset_of(b)?)?;
                let rhs = table.coset_of(&a.mul(b)?)?;
                if lhs != rhs {
                    return Err(GroupError::StructureCheckFailed(
                        "quotient projection is not multiplicative".into(),
                    ));
                }
            }
        }

        Ok(QuotientGroup {
            numerator: self.clone(),
            kernel: kernel.clone(),
            group,
            table,
        })
    }

    /// The permutation action on right cosets of `point_stabilizer`.
    pub fn coset_action(&self, point_stabilizer: &Subgroup) -> Result<CosetAction> {
        if point_stabilizer.ambient != *self {
            return Err(GroupError::AmbientMismatch);
        }
        let mut reps: Vec<Elem> = Vec::new();
        let mut point_of: HashMap<Elem, u32> = HashMap::with_capacity(self.elements().len());
        for e in self.elements() {
            if point_of.contains_key(e) {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(e.clone());
            for k in point_stabilizer.elements() {
                point_of.insert(k.mul(e)?, idx);
            }
        }
        Ok(CosetAction::new(reps, point_of))
    }

    /// All subgroups containing `seed`, found by join saturation. Results are
    /// sorted by order, then by element list.
    pub fn overgroups_of(&self, seed: &Subgroup, budget: usize) -> Result<Vec<Subgroup>> {
        if seed.ambient != *self {
            return Err(GroupError::AmbientMismatch);
        }
        let mut store = SubgroupStore::new();
        let mut worklist: VecDeque<usize> = VecDeque::new();
        if let Some(i) = store.insert(seed.clone(), budget)? {
            worklist.push_back(i);
        }
        while let Some(i) = worklist.pop_front() {
            let current = store.get(i).clone();
            if current.order() == self.order() {
                continue;
            }
            let mut covered: HashSet<Elem> = current.elements().iter().cloned().collect();
            for g in self.elements() {
                if covered.contains(g) {
                    continue;
                }
                for k in current.elements() {
                    covered.insert(k.mul(g)?);
                }
                let bigger = current.adjoin(g)?;
                if let Some(j) = store.insert(bigger, budget)? {
                    worklist.push_back(j);
                }
            }
        }
        Ok(store.into_sorted())
    }

    /// Every subgroup, found by saturating joins of cyclic subgroups.
    pub fn all_subgroups(&self, budget: usize) -> Result<Vec<Subgroup>> {
        let mut store = SubgroupStore::new();
        store.insert(self.trivial_subgroup(), budget)?;
        for e in self.elements() {
            let cyclic = self.subgroup(std::slice::from_ref(e))?;
            store.insert(cyclic, budget)?;
        }
        loop {
            let n = store.len();
            let mut grew = false;
            for i in 0..n {
                for j in 0..i {
                    let a = store.get(i);
                    let b = store.get(j);
                    if b.is_subset_of(a) || a.is_subset_of(b) {
                        continue;
                    }
                    let joined = store.get(i).join(&store.get(j).clone())?;
                    if store.insert(joined, budget)?.is_some() {
                        grew = true;
                    }
                }
            }
            if !grew && store.len() == n {
                break;
            }
        }
        Ok(store.into_sorted())
    }

    /// True when the chosen Sylow `p`-subgroup equals its own normalizer.
    pub fn has_self_normalizing_sylow(&self, p: u64) -> Result<bool> {
        let sylow = self.sylow(p)?;
        let normalizer = sylow.normalizer()?;
        Ok(normalizer.order() == sylow.order())
    }
}

fn table_len(table: &Arc<QuotientTable>) -> usize {
    table.reps.len()
}

fn table_rep<'a>(table: &'a Arc<QuotientTable>, i: usize) -> &'a Elem {
    &table.reps[i]
}

/// A subgroup of a materialized group, with its own sorted element list.
#[derive(Debug, Clone)]
pub struct Subgroup {
    ambient: Group,
    generators: Vec<Elem>,
    elements: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn index(&self) -> u64 {
        self.ambient.order() / self.order()
    }

    pub fn has_odd_index(&self) -> bool {
        self.index() % 2 == 1
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.ambient.order()
    }

    /// Fingerprint of the element set, for cheap lookup keys.
    pub fn fingerprint(&self) -> u64 {
        let mut hasher = DefaultHasher::new();
        self.elements.hash(&mut hasher);
        hasher.finish()
    }

    /// This subgroup as a standalone group, reusing the ambient when full.
    pub fn to_group(&self) -> Group {
        if self.is_full() {
            return self.ambient.clone();
        }
        Group::from_sorted(
            self.generators.clone(),
            self.elements.clone(),
            self.ambient.identity().clone(),
        )
    }

    /// The same element set viewed inside another ambient group.
    pub fn rebase(&self, new_ambient: &Group) -> Result<Subgroup> {
        for e in &self.elements {
            if !new_ambient.contains(e) {
                return Err(GroupError::ElementNotInAmbient);
            }
        }
        Ok(Subgroup {
            ambient: new_ambient.clone(),
            generators: self.generators.clone(),
            elements: self.elements.clone(),
        })
    }

    /// The conjugate subgroup `g^{-1} H g`.
    pub fn conjugate(&self, g: &Elem) -> Result<Subgroup> {
        if !self.ambient.contains(g) {
            return Err(GroupError::ElementNotInAmbient);
        }
        let g_inv = g.inv()?;
        let mut elements = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            elements.push(g_inv.mul(e)?.mul(g)?);
        }
        elements.sort();
        let mut generators = Vec::with_capacity(self.generators.len());
        for e in &self.generators {
            generators.push(g_inv.mul(e)?.mul(g)?);
        }
        Ok(Subgroup {
            ambient: self.ambient.clone(),
            generators,
            elements,
        })
    }

    /// Smallest subgroup containing both operands.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(GroupError::AmbientMismatch);
        }
        if other.is_subset_of(self) {
            return Ok(self.clone());
        }
        if self.is_subset_of(other) {
            return Ok(other.clone());
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        self.ambient.subgroup(&gens)
    }

    /// Smallest subgroup containing this one and the extra element.
    pub fn adjoin(&self, extra: &Elem) -> Result<Subgroup> {
        if self.contains(extra) {
            return Ok(self.clone());
        }
        let mut gens = self.generators.clone();
        gens.push(extra.clone());
        self.ambient.subgroup(&gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(GroupError::AmbientMismatch);
        }
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let elements: Vec<Elem> = small
            .elements
            .iter()
            .filter(|e| large.contains(e))
            .cloned()
            .collect();
        Ok(self.ambient.subgroup_from_sorted(elements))
    }

    pub fn is_normal(&self) -> Result<bool> {
        for g in self.ambient.generators() {
            let g_inv = g.inv()?;
            for h in &self.generators {
                if !self.contains(&g_inv.mul(h)?.mul(g)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_abelian(&self) -> Result<bool> {
        for a in &self.generators {
            for b in &self.generators {
                if a.mul(b)? != b.mul(a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Normalizer of this subgroup in the whole ambient group.
    pub fn normalizer(&self) -> Result<Subgroup> {
        let elements = normalizing_elements(self.ambient.elements(), self)?;
        Ok(self.ambient.subgroup_from_sorted(elements))
    }

    /// Normalizer of this subgroup computed inside `scope`.
    pub fn normalizer_within(&self, scope: &Subgroup) -> Result<Subgroup> {
        if self.ambient != scope.ambient {
            return Err(GroupError::AmbientMismatch);
        }
        let elements = normalizing_elements(scope.elements(), self)?;
        Ok(self.ambient.subgroup_from_sorted(elements))
    }

    /// Sylow `p`-subgroup of this subgroup, deterministic as for groups.
    pub fn sylow(&self, p: u64) -> Result<Subgroup> {
        sylow_in_scope(&self.ambient, &self.elements, p)
    }

    /// Subgroup generated by all commutators between the two operands.
    pub fn commutator_with(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(GroupError::AmbientMismatch);
        }
        let mut gens: BTreeSet<Elem> = BTreeSet::new();
        for x in &self.elements {
            let x_inv = x.inv()?;
            for y in &other.elements {
                gens.insert(x_inv.mul(&y.inv()?)?.mul(x)?.mul(y)?);
            }
        }
        let gens: Vec<Elem> = gens.into_iter().collect();
        self.ambient.subgroup(&gens)
    }
}

fn normalizing_elements(scope: &[Elem], target: &Subgroup) -> Result<Vec<Elem>> {
    let mut out = Vec::new();
    'scan: for g in scope {
        let g_inv = g.inv()?;
        for h in target.generators() {
            if !target.contains(&g_inv.mul(h)?.mul(g)?) {
                continue 'scan;
            }
        }
        out.push(g.clone());
    }
    Ok(out)
}

/// Greedy minimal generating sequence for a sorted subgroup element list.
fn reduce_generators(ambient: &Group, elements: &[Elem]) -> Vec<Elem> {
    let identity = ambient.identity();
    if elements.len() == 1 {
        return vec![identity.clone()];
    }
    let mut gens: Vec<Elem> = Vec::new();
    let mut reached: Vec<Elem> = vec![identity.clone()];
    for e in elements {
        if e == identity || reached.binary_search(e).is_ok() {
            continue;
        }
        gens.push(e.clone());
        reached = close_elems(&gens, identity, usize::MAX, Some(ambient))
            .expect("closure of subgroup elements stays inside the ambient group");
        if reached.len() == elements.len() {
            break;
        }
    }
    if gens.is_empty() {
        gens.push(identity.clone());
    }
    gens
}

/// Breadth-first closure. With an ambient group the Lagrange shortcut applies:
/// once more than half the ambient order is reached the closure is the whole
/// group.
fn close_elems(
    gens: &[Elem],
    identity: &Elem,
    cap: usize,
    ambient: Option<&Group>,
) -> Result<Vec<Elem>> {
    let mut seen: HashSet<Elem> = HashSet::new();
    let mut queue: VecDeque<Elem> = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity.clone());
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let next = e.mul(g)?;
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= cap {
                return Err(GroupError::CapExceeded { cap });
            }
            if let Some(big) = ambient {
                if (seen.len() as u64 + 1) * 2 > big.order() {
                    return Ok(big.elements().to_vec());
                }
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    let mut elements: Vec<Elem> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

fn sylow_in_scope(ambient: &Group, scope: &[Elem], p: u64) -> Result<Subgroup> {
    if !crate::arith::is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let mut target: u64 = 1;
    let mut n = scope.len() as u64;
    while n % p == 0 {
        target *= p;
        n /= p;
    }
    if target == 1 {
        return Ok(ambient.trivial_subgroup());
    }
    let seed = minimal_p_element(scope, ambient.identity(), p, |_| true)?
        .expect("a group of order divisible by p has an element of order p");
    let mut current = ambient.subgroup(std::slice::from_ref(&seed))?;
    while current.order() < target {
        let normalizer_elems = normalizing_elements(scope, &current)?;
        let extender = minimal_p_element(&normalizer_elems, ambient.identity(), p, |e| {
            !current.contains(e)
        })?
        .expect("a proper p-subgroup has a p-element outside it in its normalizer");
        current = current.adjoin(&extender)?;
    }
    Ok(current)
}

fn minimal_p_element(
    scope: &[Elem],
    identity: &Elem,
    p: u64,
    admit: impl Fn(&Elem) -> bool,
) -> Result<Option<Elem>> {
    for e in scope {
        if e == identity || !admit(e) {
            continue;
        }
        let mut order = e.order()?;
        while order % p == 0 {
            order /= p;
        }
        if order == 1 {
            return Ok(Some(e.clone()));
        }
    }
    Ok(None)
}

/// Deduplicating collection used by the subgroup enumerators.
pub(crate) struct SubgroupStore {
    subgroups: Vec<Subgroup>,
    by_key: HashMap<(u64, u64), Vec<usize>>,
}

impl SubgroupStore {
    pub(crate) fn new() -> Self {
        SubgroupStore {
            subgroups: Vec::new(),
            by_key: HashMap::new(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub(crate) fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// Insert if new; returns the index when the subgroup was not yet known.
    pub(crate) fn insert(&mut self, sub: Subgroup, budget: usize) -> Result<Option<usize>> {
        let key = (sub.order(), sub.fingerprint());
        if let Some(indices) = self.by_key.get(&key) {
            for &i in indices {
                if self.subgroups[i].elements == sub.elements {
                    return Ok(None);
                }
            }
        }
        if self.subgroups.len() >= budget {
            return Err(GroupError::BudgetExceeded {
                budget,
                needed: self.subgroups.len() + 1,
            });
        }
        let i = self.subgroups.len();
        self.by_key.entry(key).or_default().push(i);
        self.subgroups.push(sub);
        Ok(Some(i))
    }

    pub(crate) fn into_sorted(mut self) -> Vec<Subgroup> {
        self.subgroups
            .sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        self.subgroups
    }
}

/// Cartesian product of sorted element lists as sorted tuple elements; the
/// first list varies slowest, so lexicographic tuple order is preserved.
pub(crate) fn cartesian_tuples(lists: &[Vec<Elem>]) -> Vec<Elem> {
    let mut out = Vec::new();
    let mut counters = vec![0usize; lists.len()];
    loop {
        let parts: Vec<Elem> = counters
            .iter()
            .zip(lists)
            .map(|(&c, l)| l[c].clone())
            .collect();
        out.push(Elem::Tuple(parts));
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

/// A quotient of a materialized group by a normal subgroup. Cosets are
/// labeled by their minimal elements and multiply through a shared table.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    numerator: Group,
    kernel: Subgroup,
    group: Group,
    table: Arc<QuotientTable>,
}

impl QuotientGroup {
    pub fn numerator(&self) -> &Group {
        &self.numerator
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// The quotient as a group of coset elements.
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn project_elem(&self, e: &Elem) -> Result<Elem> {
        self.table.coset_of(e)
    }

    pub fn project_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.ambient != self.numerator {
            return Err(GroupError::AmbientMismatch);
        }
        let mut image: BTreeSet<Elem> = BTreeSet::new();
        for e in h.elements() {
            image.insert(self.table.coset_of(e)?);
        }
        Ok(self.group.subgroup_from_sorted(image.into_iter().collect()))
    }

    /// Full preimage in the numerator of a subgroup of the quotient.
    pub fn preimage_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if *h.ambient() != self.group {
            return Err(GroupError::AmbientMismatch);
        }
        let mut elements = Vec::new();
        for e in self.numerator.elements() {
            if h.contains(&self.table.coset_of(e)?) {
                elements.push(e.clone());
            }
        }
        Ok(self.numerator.subgroup_from_sorted(elements))
    }
}

/// An external direct product of materialized groups, with tuple elements.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    factors: Vec<Group>,
    group: Group,
}

impl DirectProduct {
    pub fn new(factors: Vec<Group>, cap: usize) -> Result<DirectProduct> {
        if factors.is_empty() {
            return Err(GroupError::HypothesisViolated(
                "direct product needs at least one factor".into(),
            ));
        }
        let mut size: usize = 1;
        for f in &factors {
            size = size
                .checked_mul(f.order() as usize)
                .filter(|&s| s <= cap)
                .ok_or(GroupError::CapExceeded { cap })?;
        }
        let lists: Vec<Vec<Elem>> = factors.iter().map(|f| f.elements().to_vec()).collect();
        let elements = cartesian_tuples(&lists);
        debug_assert_eq!(elements.len(), size);
        let identity = Elem::Tuple(
            factors
                .iter()
                .map(|f| f.identity().clone())
                .collect::<Vec<Elem>>(),
        );
        let mut generators: Vec<Elem> = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            for g in f.generators() {
                let mut parts: Vec<Elem> = factors.iter().map(|x| x.identity().clone()).collect();
                parts[i] = g.clone();
                let embedded = Elem::Tuple(parts);
                if embedded != identity && !generators.contains(&embedded) {
                    generators.push(embedded);
                }
            }
        }
        if generators.is_empty() {
            generators.push(identity.clone());
        }
        let group = Group::from_sorted(generators, elements, identity);
        Ok(DirectProduct { factors, group })
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn factor(&self, i: usize) -> &Group {
        &self.factors[i]
    }

    pub fn project_elem(&self, e: &Elem, i: usize) -> Result<Elem> {
        match e {
            Elem::Tuple(parts) if parts.len() == self.factors.len() => parts
                .get(i)
                .cloned()
                .ok_or(GroupError::IncompatiblePayloads),
            _ => Err(GroupError::IncompatiblePayloads),
        }
    }

    pub fn embed_elem(&self, i: usize, e: &Elem) -> Result<Elem> {
        if i >= self.factors.len() || !self.factors[i].contains(e) {
            return Err(GroupError::ElementNotInAmbient);
        }
        let mut parts: Vec<Elem> = self.factors.iter().map(|f| f.identity().clone()).collect();
        parts[i] = e.clone();
        Ok(Elem::Tuple(parts))
    }

    /// Image of a subgroup of the product under projection to factor `i`.
    pub fn project_subgroup(&self, h: &Subgroup, i: usize) -> Result<Subgroup> {
        if *h.ambient() != self.group {
            return Err(GroupError::AmbientMismatch);
        }
        let mut image: BTreeSet<Elem> = BTreeSet::new();
        for e in h.elements() {
            image.insert(self.project_elem(e, i)?);
        }
        Ok(self.factors[i].subgroup_from_sorted(image.into_iter().collect()))
    }

    /// Intersection of a subgroup with factor `i`, viewed inside that factor.
    pub fn slice_subgroup(&self, h: &Subgroup, i: usize) -> Result<Subgroup> {
        if *h.ambient() != self.group {
            return Err(GroupError::AmbientMismatch);
        }
        let mut kept: Vec<Elem> = Vec::new();
        for e in h.elements() {
            let parts = match e {
                Elem::Tuple(parts) => parts,
                _ => return Err(GroupError::IncompatiblePayloads),
            };
            let pure = parts
                .iter()
                .enumerate()
                .all(|(j, part)| j == i || part == self.factors[j].identity());
            if pure {
                kept.push(parts[i].clone());
            }
        }
        Ok(self.factors[i].subgroup_from_sorted(kept))
    }

    /// Embed a subgroup of factor `i` into the product.
    pub fn embed_subgroup(&self, i: usize, sub: &Subgroup) -> Result<Subgroup> {
        if *sub.ambient() != self.factors[i] {
            return Err(GroupError::AmbientMismatch);
        }
        let mut elements = Vec::with_capacity(sub.elements().len());
        for e in sub.elements() {
            elements.push(self.embed_elem(i, e)?);
        }
        elements.sort();
        Ok(self.group.subgroup_from_sorted(elements))
    }
}
