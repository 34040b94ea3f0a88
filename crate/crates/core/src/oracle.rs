//! Brute-force pronormality oracles and instance reductions. Everything here
//! works from the definition or from first principles on explicit element
//! lists, so it can cross-validate the structural criteria on desk-scale
//! groups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::arith::p_part;
use crate::criteria::{Decision, Reason, Verdict};
use crate::elem::Elem;
use crate::error::{GroupError, Result};
use crate::group::{Group, QuotientGroup, Subgroup, SubgroupStore, DEFAULT_SUBGROUP_BUDGET};
use crate::perm;

/// Whether a stabilizer list handed to [`hall_criterion`] is claimed to meet
/// every transitive action of the ambient group up to equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageClaim {
    Complete,
    Partial,
}

/// Definition-level scan: `h` is pronormal when for every ambient element
/// `g` the conjugate of `h` by `g` is conjugate to `h` already inside the
/// join of the two. On failure the first bad `g` in element order is
/// reported as a witness.
pub fn pronormal_by_definition(h: &Subgroup, budget: usize) -> Result<Decision> {
    let needed = h.ambient().order() as usize;
    if needed > budget {
        return Err(GroupError::BudgetExceeded { budget, needed });
    }
    match first_unreconciled_conjugator(h, h.ambient().elements())? {
        Some(witness) => Ok(Decision::new(Verdict::NotPronormal).with(
            Reason::new(
                "definition-witness",
                format!(
                    "conjugating the subgroup of order {} by the witness gives a subgroup not conjugate to it inside their join",
                    h.order()
                ),
            )
            .with_witness(witness),
        )),
        None => Ok(Decision::new(Verdict::Pronormal).with(Reason::new(
            "definition-scan",
            format!(
                "every conjugate of the subgroup of order {} is conjugate to it inside their join",
                h.order()
            ),
        ))),
    }
}

/// Restricted scan valid when `sylow` is a full Sylow subgroup of the
/// ambient group contained in `h`: conjugators then only need to range over
/// the normalizer of `sylow`. A trivial `sylow` degenerates to the full
/// definition scan.
pub fn pronormal_with_sylow_scan(h: &Subgroup, sylow: &Subgroup, budget: usize) -> Result<Decision> {
    if h.ambient() != sylow.ambient() {
        return Err(GroupError::AmbientMismatch);
    }
    let needed = h.ambient().order() as usize;
    if needed > budget {
        return Err(GroupError::BudgetExceeded { budget, needed });
    }
    if !sylow.is_subset_of(h) {
        return Err(GroupError::HypothesisViolated(
            "the scan subgroup must lie inside the subgroup under test".into(),
        ));
    }
    if sylow.order() > 1 {
        let p = prime_power_base(sylow.order()).ok_or_else(|| {
            GroupError::HypothesisViolated("the scan subgroup must have prime-power order".into())
        })?;
        if p_part(h.ambient().order(), p) != sylow.order() {
            return Err(GroupError::HypothesisViolated(
                "the scan subgroup must be a full Sylow subgroup of the ambient group".into(),
            ));
        }
    }
    let scope = sylow.normalizer()?;
    match first_unreconciled_conjugator(h, scope.elements())? {
        Some(witness) => Ok(Decision::new(Verdict::NotPronormal).with(
            Reason::new(
                "definition-witness",
                format!(
                    "a witness found among the {} elements normalizing the Sylow subgroup conjugates the subgroup of order {} outside its reach",
                    scope.order(),
                    h.order()
                ),
            )
            .with_witness(witness),
        )),
        None => Ok(Decision::new(Verdict::Pronormal).with(Reason::new(
            "sylow-normalizer-scan",
            format!(
                "scanning the {} elements normalizing the contained Sylow subgroup suffices, and every one reconciles",
                scope.order()
            ),
        ))),
    }
}

/// All subgroups of `target` that are invariant under conjugation by `h`,
/// sorted ascending by order and then by element list. `h` must normalize
/// `target`. The result is complete: every invariant subgroup is a join of
/// closures of single orbits, and the enumeration saturates under joins.
pub fn invariant_subgroups(h: &Subgroup, target: &Subgroup, budget: usize) -> Result<Vec<Subgroup>> {
    if h.ambient() != target.ambient() {
        return Err(GroupError::AmbientMismatch);
    }
    for g in h.generators() {
        let g_inv = g.inv()?;
        for t in target.generators() {
            if !target.contains(&g_inv.mul(t)?.mul(g)?) {
                return Err(GroupError::HypothesisViolated(
                    "the acting subgroup must normalize the target subgroup".into(),
                ));
            }
        }
    }
    let ambient = h.ambient();
    let mut store = SubgroupStore::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for x in target.elements() {
        let mut seen: BTreeSet<Elem> = BTreeSet::new();
        seen.insert(x.clone());
        let mut frontier: VecDeque<Elem> = VecDeque::new();
        frontier.push_back(x.clone());
        while let Some(cur) = frontier.pop_front() {
            for g in h.generators() {
                let moved = cur.conj(g)?;
                if seen.insert(moved.clone()) {
                    frontier.push_back(moved);
                }
            }
        }
        let orbit: Vec<Elem> = seen.into_iter().collect();
        let closure = ambient.subgroup(&orbit)?;
        if let Some(i) = store.insert(closure, budget)? {
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        let mut fresh: Vec<Subgroup> = Vec::new();
        {
            let a = store.get(i).clone();
            for j in 0..store.len() {
                let b = store.get(j);
                if a.is_subset_of(b) || b.is_subset_of(&a) {
                    continue;
                }
                fresh.push(a.join(b)?);
            }
        }
        for f in fresh {
            if let Some(k) = store.insert(f, budget)? {
                queue.push_back(k);
            }
        }
    }
    Ok(store.into_sorted())
}

/// Supplement test: with `supplement` an abelian subgroup normalized by `h`
/// such that the two together generate the ambient group, `h` is pronormal
/// exactly when every `h`-invariant subgroup `U` of the supplement is the
/// product of the part of `U` normalizing `h` and the commutator of `h`
/// with `U`.
pub fn pronormal_by_supplement(h: &Subgroup, supplement: &Subgroup, budget: usize) -> Result<Decision> {
    if h.ambient() != supplement.ambient() {
        return Err(GroupError::AmbientMismatch);
    }
    if !supplement.is_abelian()? {
        return Err(GroupError::HypothesisViolated(
            "the supplement must be abelian".into(),
        ));
    }
    let joined = h.join(supplement)?;
    if !joined.is_full() {
        return Err(GroupError::HypothesisViolated(
            "the subgroup and the supplement must generate the ambient group together".into(),
        ));
    }
    let invariants = invariant_subgroups(h, supplement, budget)?;
    for u in &invariants {
        let fixing = h.normalizer_within(u)?;
        let gen_pairs: Vec<(Elem, Elem)> = u
            .generators()
            .iter()
            .map(|y| Ok((y.clone(), y.inv()?)))
            .collect::<Result<_>>()?;
        let mut comm_gens: BTreeSet<Elem> = BTreeSet::new();
        for x in h.elements() {
            let x_inv = x.inv()?;
            for (y, y_inv) in &gen_pairs {
                comm_gens.insert(x_inv.mul(y_inv)?.mul(x)?.mul(y)?);
            }
        }
        let comm_gens: Vec<Elem> = comm_gens.into_iter().collect();
        let commutator = h.ambient().subgroup(&comm_gens)?;
        let product = fixing.join(&commutator)?;
        if product.order() != u.order() {
            let mut reason = Reason::new(
                "supplement-gap",
                format!(
                    "an invariant subgroup of order {} exceeds the product of its part normalizing the subgroup (order {}) and the commutator with the subgroup (order {})",
                    u.order(),
                    fixing.order(),
                    commutator.order()
                ),
            );
            if let Some(w) = u.elements().iter().find(|e| !product.contains(e)) {
                reason = reason.with_witness(w.clone());
            }
            return Ok(Decision::new(Verdict::NotPronormal).with(reason));
        }
    }
    Ok(Decision::new(Verdict::Pronormal).with(Reason::new(
        "supplement-cover",
        format!(
            "each of the {} invariant subgroups of the supplement is covered by its normalizing part and the commutator",
            invariants.len()
        ),
    )))
}

/// Fixed-point criterion on coset spaces: in every transitive action of the
/// ambient group, the normalizer of a pronormal subgroup permutes the fixed
/// points of that subgroup transitively. A split orbit refutes
/// pronormality; passing is conclusive only when the stabilizer list is
/// claimed complete.
pub fn hall_criterion(
    h: &Subgroup,
    stabilizers: &[Subgroup],
    coverage: CoverageClaim,
) -> Result<Decision> {
    let ambient = h.ambient();
    let normalizer = h.normalizer()?;
    for k in stabilizers {
        if k.ambient() != ambient {
            return Err(GroupError::AmbientMismatch);
        }
        let action = ambient.coset_action(k)?;
        let h_images = action.act_all(h.generators())?;
        let degree = action.degree();
        let fixed = perm::fixed_points(&h_images, degree);
        if fixed.len() <= 1 {
            continue;
        }
        let n_images = action.act_all(normalizer.generators())?;
        let reachable: HashSet<usize> = perm::orbit(&n_images, fixed[0]).into_iter().collect();
        if let Some(&missed) = fixed.iter().find(|x| !reachable.contains(x)) {
            return Ok(Decision::new(Verdict::NotPronormal).with(Reason::new(
                "fixed-point-orbit-split",
                format!(
                    "the subgroup fixes {} of the {} cosets of a subgroup of order {}, but the normalizer orbit of the least fixed point misses coset {}",
                    fixed.len(),
                    degree,
                    k.order(),
                    missed
                ),
            )));
        }
    }
    match coverage {
        CoverageClaim::Complete => Ok(Decision::new(Verdict::Pronormal).with(Reason::new(
            "fixed-point-transitivity",
            format!(
                "the normalizer acts transitively on the fixed points in all {} listed coset spaces",
                stabilizers.len()
            ),
        ))),
        CoverageClaim::Partial => Ok(Decision::new(Verdict::NotApplicable).with(Reason::new(
            "partial-representation-list",
            "the stabilizer list is declared incomplete, so passing every listed coset space is not conclusive",
        ))),
    }
}

/// Class check: every subgroup containing a fixed Sylow `p`-subgroup of `g`
/// is pronormal. Such subgroups are exactly the overgroups of one chosen
/// Sylow subgroup, and each is tested with the restricted scan.
pub fn sylow_overgroups_pronormal(g: &Group, p: u64, budget: usize) -> Result<Decision> {
    let sylow = g.sylow(p)?;
    let overgroups = g.overgroups_of(&sylow, budget)?;
    for h in &overgroups {
        let verdict = pronormal_with_sylow_scan(h, &sylow, g.order() as usize)?;
        if !verdict.is_pronormal() {
            let mut out = Decision::new(Verdict::NotPronormal).with(Reason::new(
                "sylow-overgroup-fails",
                format!(
                    "a subgroup of order {} containing the chosen Sylow {}-subgroup of order {} is not pronormal",
                    h.order(),
                    p,
                    sylow.order()
                ),
            ));
            for r in verdict.reasons {
                out = out.with(r);
            }
            return Ok(out);
        }
    }
    Ok(Decision::new(Verdict::Pronormal).with(Reason::new(
        "all-sylow-overgroups-pronormal",
        format!(
            "all {} subgroups containing the chosen Sylow {}-subgroup are pronormal",
            overgroups.len(),
            p
        ),
    )))
}

/// Optional quotient presentation of a reduced instance, with the shared
/// kernel factored out of the reduced target.
pub struct QuotientForm {
    pub quotient: QuotientGroup,
    pub reduced_image: Subgroup,
}

/// Outcome of [`normalizer_reduction`]: pronormality of the original
/// subgroup in the full ambient group is equivalent to pronormality of
/// `reduced_subgroup` in `reduced_target`.
pub struct ReducedInstance {
    pub prime: u64,
    /// `T`: intersection of the normal part with a Sylow subgroup of `h`.
    pub sylow_meet: Subgroup,
    /// `Y`: normalizer, inside the normal part, of its overlap with `h`.
    pub overlap_normalizer: Subgroup,
    /// `Z`: the part of the overlap normalizing `T`; normal in both reduced
    /// pieces, so the instance also admits a quotient presentation.
    pub shared_kernel: Subgroup,
    /// `N_h(T)`, the subgroup whose pronormality settles the original question.
    pub reduced_subgroup: Subgroup,
    /// Join of `reduced_subgroup` with the part of `Y` normalizing `T`.
    pub reduced_target: Subgroup,
    pub strictly_smaller: bool,
    /// `Some(true)` when the normal part passed the Sylow-overgroup class
    /// check, `None` when the check was skipped for budget reasons.
    pub normal_part_class_verified: Option<bool>,
    pub quotient_form: Option<QuotientForm>,
    pub notes: Vec<Reason>,
}

/// Reduce the question whether `h` is pronormal in its ambient group to a
/// smaller instance, given a normal subgroup whose quotient has a
/// self-normalizing Sylow `p`-subgroup and whose own Sylow overgroups are
/// all pronormal. `h` must contain a full Sylow `p`-subgroup of the
/// ambient group.
pub fn normalizer_reduction(
    normal_part: &Subgroup,
    h: &Subgroup,
    p: u64,
    class_check_budget: usize,
    with_quotient_form: bool,
) -> Result<ReducedInstance> {
    if normal_part.ambient() != h.ambient() {
        return Err(GroupError::AmbientMismatch);
    }
    let ambient = h.ambient().clone();
    if !normal_part.is_normal()? {
        return Err(GroupError::NotNormal);
    }
    let quotient = ambient.quotient(normal_part)?;
    if !quotient.group().has_self_normalizing_sylow(p)? {
        return Err(GroupError::HypothesisViolated(
            "the quotient by the normal part must have a self-normalizing Sylow subgroup".into(),
        ));
    }
    if p_part(h.order(), p) != p_part(ambient.order(), p) {
        return Err(GroupError::HypothesisViolated(
            "the subgroup must contain a full Sylow subgroup of the ambient group".into(),
        ));
    }
    let sylow = h.sylow(p)?;
    let sylow_meet = normal_part.intersection(&sylow)?;
    let overlap = h.intersection(normal_part)?;
    let overlap_normalizer = overlap.normalizer_within(normal_part)?;
    let shared_kernel = sylow_meet.normalizer_within(&overlap)?;
    let reduced_subgroup = sylow_meet.normalizer_within(h)?;
    let outer_meet_normalizer = sylow_meet.normalizer_within(&overlap_normalizer)?;
    let reduced_target = reduced_subgroup.join(&outer_meet_normalizer)?;
    for scope in [&reduced_subgroup, &outer_meet_normalizer] {
        for g in scope.generators() {
            if shared_kernel.conjugate(g)?.elements() != shared_kernel.elements() {
                return Err(GroupError::StructureCheckFailed(
                    "the shared kernel is not normalized by the reduced pieces".into(),
                ));
            }
        }
    }
    let mut notes = Vec::new();
    let normal_part_class_verified = if normal_part.order() as usize <= class_check_budget {
        let class = sylow_overgroups_pronormal(&normal_part.to_group(), p, DEFAULT_SUBGROUP_BUDGET)?;
        if !class.is_pronormal() {
            return Err(GroupError::HypothesisViolated(
                "the normal part has a non-pronormal subgroup containing a Sylow subgroup".into(),
            ));
        }
        Some(true)
    } else {
        notes.push(Reason::new(
            "normal-part-class-assumed",
            format!(
                "the normal part of order {} exceeds the class-check budget of {}, so the hypothesis that all its Sylow overgroups are pronormal is recorded as an assumption",
                normal_part.order(),
                class_check_budget
            ),
        ));
        None
    };
    let quotient_form = if with_quotient_form {
        let target_group = reduced_target.to_group();
        let kernel = shared_kernel.rebase(&target_group)?;
        let quotient = target_group.quotient(&kernel)?;
        let reduced_image = quotient.project_subgroup(&reduced_subgroup.rebase(&target_group)?)?;
        Some(QuotientForm {
            quotient,
            reduced_image,
        })
    } else {
        None
    };
    let strictly_smaller = reduced_target.order() < ambient.order();
    Ok(ReducedInstance {
        prime: p,
        sylow_meet,
        overlap_normalizer,
        shared_kernel,
        reduced_subgroup,
        reduced_target,
        strictly_smaller,
        normal_part_class_verified,
        quotient_form,
        notes,
    })
}

/// First candidate, in list order, whose conjugate of `h` cannot be
/// reconciled with `h` inside their join. Candidates in the same coset of
/// the normalizer of `h` give the same conjugate, so only one element per
/// coset is examined.
fn first_unreconciled_conjugator(h: &Subgroup, candidates: &[Elem]) -> Result<Option<Elem>> {
    let ambient = h.ambient();
    let size = ambient.order() as usize;
    let normalizer = h.normalizer()?;
    let mut norm_mask = vec![false; size];
    for e in normalizer.elements() {
        norm_mask[ambient.position(e).ok_or(GroupError::ElementNotInAmbient)?] = true;
    }
    let mut covered = vec![false; size];
    for g in candidates {
        let gp = ambient.position(g).ok_or(GroupError::ElementNotInAmbient)?;
        if covered[gp] {
            continue;
        }
        for n in normalizer.elements() {
            let marked = n.mul(g)?;
            covered[ambient.position(&marked).ok_or(GroupError::ElementNotInAmbient)?] = true;
        }
        if norm_mask[gp] {
            continue;
        }
        let moved = h.conjugate(g)?;
        let join = h.join(&moved)?;
        let g_inv = g.inv()?;
        let mut reconciled = false;
        for j in join.elements() {
            let back = j.mul(&g_inv)?;
            let bp = ambient.position(&back).ok_or(GroupError::ElementNotInAmbient)?;
            if norm_mask[bp] {
                reconciled = true;
                break;
            }
        }
        if !reconciled {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            p = q;
            break;
        }
        q += 1;
    }
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    if m == 1 {
        Some(p)
    } else {
        None
    }
}
