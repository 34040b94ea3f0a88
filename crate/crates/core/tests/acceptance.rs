//! Acceptance suite: each test certifies one numbered end-to-end criterion,
//! cross-validating the structural decision procedures against the
//! brute-force definition oracle, and prints one pass line when it holds.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use pronormal::criteria::{
    binary_dominance, complement_criterion, decide_product_pronormal, symplectic_criterion,
    Verdict,
};
use pronormal::matgrp::{self, DeskPipeline};
use pronormal::oracle::{self, CoverageClaim};
use pronormal::perm::{self, Perm};
use pronormal::wreath::{FactorSpec, GenericWreath, WreathElem, WreathFactor, WreathProduct};
use pronormal::{
    DirectProduct, Elem, Group, Subgroup, DEFAULT_CLOSURE_CAP, DEFAULT_SUBGROUP_BUDGET,
};

const SCAN_BUDGET: usize = 1 << 17;

fn definition_pronormal(h: &Subgroup) -> bool {
    oracle::pronormal_by_definition(h, SCAN_BUDGET)
        .unwrap()
        .is_pronormal()
}

/// Definition verdict for `h` inside an intermediate subgroup of its ambient
/// group, materialized as a group of its own when it is proper.
fn definition_pronormal_in(h: &Subgroup, scope: &Subgroup) -> bool {
    if scope.is_full() {
        return definition_pronormal(h);
    }
    let inner = scope.to_group();
    definition_pronormal(&h.rebase(&inner).unwrap())
}

struct AgreementPair {
    h: Subgroup,
    k: Subgroup,
    pronormal: bool,
}

struct AgreementCorpus {
    ambient: WreathProduct,
    pairs: Vec<AgreementPair>,
}

/// All odd-index subgroups over one fixed Sylow 2-subgroup whose every top
/// projection is full, paired with every intermediate target and the
/// definition verdict for each pair.
fn agreement_corpus(shapes: &[(u64, usize)]) -> AgreementCorpus {
    let specs: Vec<FactorSpec> = shapes.iter().map(|&(p, n)| FactorSpec { p, n }).collect();
    let ambient = WreathProduct::build(&specs, DEFAULT_CLOSURE_CAP).unwrap();
    let g = ambient.group().clone();
    let sylow = g.sylow(2).unwrap();
    let mut pairs = Vec::new();
    for h in g.overgroups_of(&sylow, DEFAULT_SUBGROUP_BUDGET).unwrap() {
        let full_tops = (0..ambient.arity()).all(|i| ambient.bar_is_full(&h, i).unwrap());
        if !full_tops {
            continue;
        }
        for k in g.overgroups_of(&h, DEFAULT_SUBGROUP_BUDGET).unwrap() {
            let pronormal = definition_pronormal_in(&h, &k);
            pairs.push(AgreementPair {
                h: h.clone(),
                k,
                pronormal,
            });
        }
    }
    AgreementCorpus { ambient, pairs }
}

static ONE_FACTOR: LazyLock<AgreementCorpus> = LazyLock::new(|| agreement_corpus(&[(3, 3)]));

static TWO_FACTOR: LazyLock<AgreementCorpus> =
    LazyLock::new(|| agreement_corpus(&[(3, 2), (3, 3)]));

struct FactorCatalog {
    factor: WreathFactor,
    subgroups: Vec<Subgroup>,
}

fn factor_catalog(p: u64, n: usize) -> FactorCatalog {
    let factor = WreathFactor::build(p, n, DEFAULT_CLOSURE_CAP).unwrap();
    let subgroups = factor
        .group()
        .all_subgroups(DEFAULT_SUBGROUP_BUDGET)
        .unwrap();
    FactorCatalog { factor, subgroups }
}

static SMALL_ODD_WREATH: LazyLock<FactorCatalog> = LazyLock::new(|| factor_catalog(3, 2));

static CUBE_WREATH: LazyLock<FactorCatalog> = LazyLock::new(|| factor_catalog(3, 3));

struct GroupCatalog {
    group: Group,
    subgroups: Vec<Subgroup>,
}

static SYM_FOUR: LazyLock<GroupCatalog> = LazyLock::new(|| {
    let group = sym(4);
    let subgroups = group.all_subgroups(DEFAULT_SUBGROUP_BUDGET).unwrap();
    GroupCatalog { group, subgroups }
});

/// An even-type direct factor next to a wreath factor: the product of the
/// symmetric group on three points with the degree-three odd wreath group,
/// plus all subgroups over one fixed Sylow 2-subgroup.
struct SplitProduct {
    product: DirectProduct,
    odd_index: Vec<Subgroup>,
}

static SPLIT_PRODUCT: LazyLock<SplitProduct> = LazyLock::new(|| {
    let wreath = CUBE_WREATH.factor.group().clone();
    let product = DirectProduct::new(vec![sym(3), wreath], DEFAULT_CLOSURE_CAP).unwrap();
    let sylow = product.group().sylow(2).unwrap();
    let odd_index = product
        .group()
        .overgroups_of(&sylow, DEFAULT_SUBGROUP_BUDGET)
        .unwrap();
    SplitProduct { product, odd_index }
});

struct PipelineCorpus {
    pipeline: DeskPipeline,
    entries: Vec<(Subgroup, bool)>,
}

static MATRIX_WREATH: LazyLock<PipelineCorpus> = LazyLock::new(|| {
    let pipeline = DeskPipeline::build(3, DEFAULT_CLOSURE_CAP).unwrap();
    let m = pipeline.ambient().clone();
    assert_eq!(m.order(), 82944);
    let sylow = m.sylow(2).unwrap();
    assert_eq!(sylow.order(), 1024);
    let shadow = pipeline.quotient().project_subgroup(&sylow).unwrap();
    let mut entries = Vec::new();
    for image in pipeline
        .quotient()
        .group()
        .overgroups_of(&shadow, DEFAULT_SUBGROUP_BUDGET)
        .unwrap()
    {
        let h = pipeline.quotient().preimage_subgroup(&image).unwrap();
        if !tops_exhaust_symmetric(pipeline.wreath(), &h) {
            continue;
        }
        let pronormal = definition_pronormal(&h);
        entries.push((h, pronormal));
    }
    PipelineCorpus { pipeline, entries }
});

fn tops_exhaust_symmetric(w: &GenericWreath, h: &Subgroup) -> bool {
    let mut tops: BTreeSet<Perm> = BTreeSet::new();
    for e in h.elements() {
        tops.insert(GenericWreath::top_of(e).unwrap());
    }
    let full: usize = (1..=w.degree()).product();
    tops.len() == full
}

fn sym(n: usize) -> Group {
    let mut gens = vec![Elem::Perm(Perm::transposition(n, 0, 1).unwrap())];
    if n > 2 {
        let cycle: Vec<u32> = (1..n as u32).chain([0]).collect();
        gens.push(Elem::Perm(Perm::from_images(cycle).unwrap()));
    }
    Group::closure(&gens, DEFAULT_CLOSURE_CAP).unwrap()
}

fn alt_five() -> Group {
    let gens = vec![
        Elem::Perm(Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap()),
        Elem::Perm(Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()),
    ];
    Group::closure(&gens, DEFAULT_CLOSURE_CAP).unwrap()
}

fn projective_168() -> Group {
    let shift = Elem::Perm(Perm::from_images(vec![1, 2, 3, 4, 5, 6, 0, 7]).unwrap());
    let flip = Elem::Perm(Perm::from_images(vec![7, 6, 3, 2, 5, 4, 1, 0]).unwrap());
    Group::closure(&[shift, flip], DEFAULT_CLOSURE_CAP).unwrap()
}

#[test]
fn criterion_01_factor_criterion_matches_definition_on_one_factor() {
    let corpus = &*ONE_FACTOR;
    assert_eq!(corpus.ambient.group().order(), 162);
    assert!(!corpus.pairs.is_empty());
    let mut seen_pronormal = false;
    let mut seen_not = false;
    let mut seen_full_h = false;
    for pair in &corpus.pairs {
        let decision = decide_product_pronormal(&corpus.ambient, &pair.k, &pair.h).unwrap();
        assert_ne!(decision.verdict, Verdict::NotApplicable);
        assert_eq!(decision.is_pronormal(), pair.pronormal);
        seen_pronormal |= pair.pronormal;
        seen_not |= !pair.pronormal;
        seen_full_h |= pair.h.is_full();
    }
    assert!(seen_pronormal && seen_not && seen_full_h);
    println!("acceptance 01 factor criterion vs definition, one factor: PASS");
}

#[test]
fn criterion_02_factor_criterion_matches_definition_on_two_factors() {
    let corpus = &*TWO_FACTOR;
    assert_eq!(corpus.ambient.group().order(), 2916);
    assert!(!corpus.pairs.is_empty());
    let mut seen_pronormal = false;
    let mut seen_not = false;
    for pair in &corpus.pairs {
        let decision = decide_product_pronormal(&corpus.ambient, &pair.k, &pair.h).unwrap();
        assert_ne!(decision.verdict, Verdict::NotApplicable);
        assert_eq!(decision.is_pronormal(), pair.pronormal);
        seen_pronormal |= pair.pronormal;
        seen_not |= !pair.pronormal;
    }
    assert!(seen_pronormal && seen_not);
    println!("acceptance 02 factor criterion vs definition, two factors: PASS");
}

#[test]
fn criterion_03_top_complement_pronormality_follows_degree_coprimality() {
    for p in [3u64, 5] {
        for n in [2usize, 3, 4] {
            let factor = WreathFactor::build(p, n, DEFAULT_CLOSURE_CAP).unwrap();
            if (p, n) == (5, 4) {
                assert_eq!(factor.group().order(), 15000);
            }
            let top = factor.top_subgroup().unwrap();
            let verdict = definition_pronormal(&top);
            assert_eq!(verdict, complement_criterion(p, n as u64));
        }
    }
    println!("acceptance 03 top complement pronormality table: PASS");
}

#[test]
fn criterion_04_invariant_module_chain_and_commutator_structure() {
    for (p, n) in [(3u64, 2usize), (3, 3), (5, 2), (5, 3)] {
        let catalog;
        let (factor, subgroups): (&WreathFactor, &[Subgroup]) = match (p, n) {
            (3, 2) => (&SMALL_ODD_WREATH.factor, &SMALL_ODD_WREATH.subgroups),
            (3, 3) => (&CUBE_WREATH.factor, &CUBE_WREATH.subgroups),
            _ => {
                catalog = factor_catalog(p, n);
                (&catalog.factor, &catalog.subgroups)
            }
        };
        let base = factor.base_subgroup().unwrap();
        let expected: BTreeSet<Vec<Elem>> = [
            factor.group().trivial_subgroup(),
            factor.constant_subgroup().unwrap(),
            factor.zero_sum_subgroup().unwrap(),
            base.clone(),
        ]
        .iter()
        .map(|s| s.elements().to_vec())
        .collect();
        assert_eq!(expected.len(), 4);
        let zero_sum = factor.zero_sum_subgroup().unwrap();
        let mut full_top_count = 0usize;
        for h in subgroups {
            if !factor.bar_is_full(h).unwrap() {
                continue;
            }
            full_top_count += 1;
            let invariant: BTreeSet<Vec<Elem>> =
                oracle::invariant_subgroups(h, &base, DEFAULT_SUBGROUP_BUDGET)
                    .unwrap()
                    .iter()
                    .map(|s| s.elements().to_vec())
                    .collect();
            assert_eq!(invariant, expected);
            let commutator = h.commutator_with(&base).unwrap();
            assert_eq!(commutator.elements(), zero_sum.elements());
        }
        match (p, n) {
            (3, 2) => assert_eq!(full_top_count, 8),
            (5, 3) => assert_eq!(full_top_count, 52),
            _ => assert!(full_top_count > 2),
        }
    }

    let factor = &CUBE_WREATH.factor;
    let collapsed = factor
        .top_subgroup()
        .unwrap()
        .join(&factor.zero_sum_subgroup().unwrap())
        .unwrap();
    let normal_odd: Vec<&Subgroup> = CUBE_WREATH
        .subgroups
        .iter()
        .filter(|s| !s.is_full() && s.has_odd_index() && s.is_normal().unwrap())
        .collect();
    assert_eq!(normal_odd.len(), 1);
    assert_eq!(normal_odd[0].elements(), collapsed.elements());
    let inside = collapsed.to_group();
    let none_below = inside
        .all_subgroups(DEFAULT_SUBGROUP_BUDGET)
        .unwrap()
        .into_iter()
        .filter(|s| !s.is_full() && s.has_odd_index() && s.is_normal().unwrap())
        .count();
    assert_eq!(none_below, 0);
    println!("acceptance 04 invariant module chain and commutator structure: PASS");
}

#[test]
fn criterion_05_restricted_scans_and_fixed_point_check_agree_with_definition() {
    for corpus in [&*ONE_FACTOR, &*TWO_FACTOR] {
        let base = corpus.ambient.base_subgroup().unwrap();
        for pair in &corpus.pairs {
            let (h, supplement) = if pair.k.is_full() {
                (pair.h.clone(), base.intersection(&pair.k).unwrap())
            } else {
                let inner = pair.k.to_group();
                (
                    pair.h.rebase(&inner).unwrap(),
                    base.intersection(&pair.k).unwrap().rebase(&inner).unwrap(),
                )
            };
            let sylow = h.sylow(2).unwrap();
            let scan = oracle::pronormal_with_sylow_scan(&h, &sylow, SCAN_BUDGET).unwrap();
            assert_eq!(scan.is_pronormal(), pair.pronormal);
            let supplement_check =
                oracle::pronormal_by_supplement(&h, &supplement, SCAN_BUDGET).unwrap();
            assert_eq!(supplement_check.is_pronormal(), pair.pronormal);
        }
    }

    for (p, n) in [(3u64, 2usize), (3, 3), (5, 2), (5, 3)] {
        let catalog;
        let (factor, subgroups): (&WreathFactor, &[Subgroup]) = match (p, n) {
            (3, 2) => (&SMALL_ODD_WREATH.factor, &SMALL_ODD_WREATH.subgroups),
            (3, 3) => (&CUBE_WREATH.factor, &CUBE_WREATH.subgroups),
            _ => {
                catalog = factor_catalog(p, n);
                (&catalog.factor, &catalog.subgroups)
            }
        };
        let base = factor.base_subgroup().unwrap();
        for h in subgroups {
            if !factor.bar_is_full(h).unwrap() {
                continue;
            }
            let expected = definition_pronormal(h);
            let sylow = h.sylow(2).unwrap();
            let scan = oracle::pronormal_with_sylow_scan(h, &sylow, SCAN_BUDGET).unwrap();
            assert_eq!(scan.is_pronormal(), expected);
            let supplement_check = oracle::pronormal_by_supplement(h, &base, SCAN_BUDGET).unwrap();
            assert_eq!(supplement_check.is_pronormal(), expected);
        }
    }

    for (group, subgroups) in [
        (&SYM_FOUR.group, &SYM_FOUR.subgroups),
        (SMALL_ODD_WREATH.factor.group(), &SMALL_ODD_WREATH.subgroups),
    ] {
        assert!(group.order() == 24 || group.order() == 18);
        for h in subgroups.iter() {
            let fixed_points_check =
                oracle::hall_criterion(h, subgroups, CoverageClaim::Complete).unwrap();
            assert_ne!(fixed_points_check.verdict, Verdict::NotApplicable);
            assert_eq!(fixed_points_check.is_pronormal(), definition_pronormal(h));
        }
    }
    println!("acceptance 05 restricted scans and fixed-point check vs definition: PASS");
}

#[test]
fn criterion_06_desk_pipeline_matches_definition_on_the_matrix_wreath() {
    let corpus = &*MATRIX_WREATH;
    let pipe = &corpus.pipeline;
    assert!(corpus.entries.len() >= 4);
    let mut seen_full = false;
    for (h, pronormal) in &corpus.entries {
        let decision = pipe.decide(h).unwrap();
        assert!(decision.verified);
        assert_ne!(decision.verdict, Verdict::NotApplicable);
        assert_eq!(decision.is_pronormal(), *pronormal);
        seen_full |= h.is_full();
    }
    assert!(seen_full);

    let quaternion_wreath = pipe
        .two_core()
        .join(&pipe.wreath().top_subgroup().unwrap())
        .unwrap();
    assert_eq!(quaternion_wreath.order(), 3072);
    let refused = pipe.decide(&quaternion_wreath).unwrap();
    assert!(refused.verified);
    assert_eq!(refused.verdict, Verdict::NotPronormal);
    assert!(!definition_pronormal(&quaternion_wreath));

    let target = pipe.target();
    let zero_sum = target
        .product()
        .embed_subgroup(0, &target.factor(0).zero_sum_subgroup().unwrap())
        .unwrap();
    let collapsed = target.top_subgroup().unwrap().join(&zero_sum).unwrap();
    let preimage = pipe.preimage_subgroup(&collapsed).unwrap();
    assert_eq!(preimage.order(), 27648);
    let accepted = pipe.decide(&preimage).unwrap();
    assert!(accepted.verified);
    assert_eq!(accepted.verdict, Verdict::Pronormal);
    assert!(corpus
        .entries
        .iter()
        .any(|(h, pronormal)| *pronormal && h.elements() == preimage.elements()));
    println!("acceptance 06 desk pipeline vs definition on the matrix wreath: PASS");
}

#[test]
fn criterion_07_normalizer_reduction_preserves_the_verdict_on_the_matrix_wreath() {
    let corpus = &*MATRIX_WREATH;
    let pipe = &corpus.pipeline;
    let base = pipe.wreath().base_subgroup().unwrap();
    let class = oracle::sylow_overgroups_pronormal(&base.to_group(), 2, DEFAULT_SUBGROUP_BUDGET)
        .unwrap();
    assert!(class.is_pronormal());

    for (h, pronormal) in &corpus.entries {
        let reduced = oracle::normalizer_reduction(&base, h, 2, 0, false).unwrap();
        assert!(reduced.normal_part_class_verified.is_none());
        assert!(reduced
            .notes
            .iter()
            .any(|r| r.code == "normal-part-class-assumed"));
        let verdict = if reduced.reduced_subgroup.elements() == h.elements()
            && reduced.reduced_target.is_full()
        {
            *pronormal
        } else {
            definition_pronormal_in(&reduced.reduced_subgroup, &reduced.reduced_target)
        };
        assert_eq!(verdict, *pronormal);
    }
    println!("acceptance 07 normalizer reduction preserves the verdict: PASS");
}

#[test]
fn criterion_08_arithmetic_predicates_match_frozen_table_and_symmetry() {
    let table: [(&[(u64, u64)], bool); 6] = [
        (&[(3, 3)], false),
        (&[(5, 3)], true),
        (&[(17, 3)], true),
        (&[(3, 7)], true),
        (&[(4, 5), (2, 3)], true),
        (&[(6, 11)], false),
    ];
    for (factors, expected) in table {
        assert_eq!(symplectic_criterion(factors).unwrap(), expected);
    }
    for n in 0u64..=1024 {
        for m in 0..=n {
            assert_eq!(binary_dominance(m, n), binary_dominance(n - m, n));
        }
    }
    println!("acceptance 08 arithmetic predicates and dominance symmetry: PASS");
}

#[test]
fn criterion_09_structural_property_suites_hold_without_deviation() {
    property_simple_factor_absorption();
    property_even_type_factor_splitting();
    property_quotient_transfer();
    property_intermediate_persistence();
    property_top_image_lift();
    property_even_type_quotient_collapse();
    property_even_type_projection();
    property_fixed_point_bound();
    property_sylow_normalizer_desk_checks();
    println!("acceptance 09 structural property suites: PASS");
}

/// In a product of two copies of the simple alternating group on five
/// points, every odd-index subgroup whose first projection is full absorbs
/// the whole first factor.
fn property_simple_factor_absorption() {
    let simple = alt_five();
    let product = DirectProduct::new(vec![simple.clone(), simple], DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(product.group().order(), 3600);
    let sylow = product.group().sylow(2).unwrap();
    assert_eq!(sylow.order(), 16);
    let first_factor = product
        .embed_subgroup(0, &product.factor(0).full_subgroup())
        .unwrap();
    let mut hit = 0usize;
    for q in product
        .group()
        .overgroups_of(&sylow, DEFAULT_SUBGROUP_BUDGET)
        .unwrap()
    {
        if product.project_subgroup(&q, 0).unwrap().order() != 60 {
            continue;
        }
        hit += 1;
        assert!(first_factor.is_subset_of(&q));
    }
    assert!(hit >= 2);
}

/// Next to a factor with a self-normalizing Sylow 2-subgroup, every
/// odd-index subgroup of the product splits as the product of its two
/// factor intersections.
fn property_even_type_factor_splitting() {
    let split = &*SPLIT_PRODUCT;
    assert!(split
        .product
        .factor(0)
        .has_self_normalizing_sylow(2)
        .unwrap());
    assert!(!split.odd_index.is_empty());
    for h in &split.odd_index {
        let left = split
            .product
            .embed_subgroup(0, &split.product.slice_subgroup(h, 0).unwrap())
            .unwrap();
        let right = split
            .product
            .embed_subgroup(1, &split.product.slice_subgroup(h, 1).unwrap())
            .unwrap();
        let assembled = left.join(&right).unwrap();
        assert_eq!(assembled.elements(), h.elements());
    }
}

/// Pronormality transfers through quotients: images of pronormal subgroups
/// stay pronormal, and when the kernel lies inside the subgroup the verdict
/// is preserved exactly, in particular for the largest normal p-subgroup.
fn property_quotient_transfer() {
    let factor = &CUBE_WREATH.factor;
    let g = factor.group();
    let normals: Vec<&Subgroup> = CUBE_WREATH
        .subgroups
        .iter()
        .filter(|s| s.is_normal().unwrap())
        .collect();
    assert!(normals.len() >= 5);
    let sylow = g.sylow(2).unwrap();
    let odd_corpus: Vec<Subgroup> = g
        .overgroups_of(&sylow, DEFAULT_SUBGROUP_BUDGET)
        .unwrap()
        .into_iter()
        .filter(|h| factor.bar_is_full(h).unwrap())
        .collect();
    for a in &normals {
        let quotient = g.quotient(a).unwrap();
        for h in &odd_corpus {
            let image = quotient.project_subgroup(h).unwrap();
            let original = definition_pronormal(h);
            if original {
                assert!(definition_pronormal(&image));
            }
            if a.is_subset_of(h) {
                assert_eq!(definition_pronormal(&image), original);
            }
        }
    }

    for h in &SYM_FOUR.subgroups {
        if !definition_pronormal(h) {
            continue;
        }
        for a in &SYM_FOUR.subgroups {
            if !a.is_normal().unwrap() {
                continue;
            }
            let quotient = SYM_FOUR.group.quotient(a).unwrap();
            assert!(definition_pronormal(
                &quotient.project_subgroup(h).unwrap()
            ));
        }
    }

    let sp = matgrp::build_sp2(3, DEFAULT_CLOSURE_CAP).unwrap();
    for (group, p) in [(&SYM_FOUR.group, 2u64), (&sp, 2), (g, 3)] {
        let core = group.p_core(p).unwrap();
        assert!(core.order() > 1);
        let quotient = group.quotient(&core).unwrap();
        let seed = if p == 3 {
            core.clone()
        } else {
            group.sylow(2).unwrap()
        };
        for h in group.overgroups_of(&seed, DEFAULT_SUBGROUP_BUDGET).unwrap() {
            assert!(core.is_subset_of(&h));
            let image = quotient.project_subgroup(&h).unwrap();
            assert_eq!(definition_pronormal(&image), definition_pronormal(&h));
        }
    }
}

/// A subgroup pronormal in the whole group is pronormal in every
/// intermediate subgroup.
fn property_intermediate_persistence() {
    let corpus = &*ONE_FACTOR;
    for pair in &corpus.pairs {
        if !pair.k.is_full() || !pair.pronormal {
            continue;
        }
        for other in &corpus.pairs {
            if other.h.elements() == pair.h.elements() {
                assert!(other.pronormal);
            }
        }
    }

    for h in &SYM_FOUR.subgroups {
        if !definition_pronormal(h) {
            continue;
        }
        for k in &SYM_FOUR.subgroups {
            if h.is_subset_of(k) {
                assert!(definition_pronormal_in(h, k));
            }
        }
    }
}

/// When the top image of a subgroup, planted back as a subgroup of the top
/// complement, is pronormal next to the vector base, the subgroup itself is
/// pronormal next to the base.
fn property_top_image_lift() {
    for catalog in [&*SMALL_ODD_WREATH, &*CUBE_WREATH] {
        let factor = &catalog.factor;
        let spec = factor.spec();
        let base = factor.base_subgroup().unwrap();
        for h in &catalog.subgroups {
            let planted: Vec<Elem> = h
                .generators()
                .iter()
                .map(|e| {
                    let top = WreathFactor::bar(e).unwrap();
                    Elem::Wreath(WreathElem::new(spec.p, vec![0; spec.n], top).unwrap())
                })
                .collect();
            let top_copy = factor.group().subgroup(&planted).unwrap();
            let top_scope = top_copy.join(&base).unwrap();
            if !definition_pronormal_in(&top_copy, &top_scope) {
                continue;
            }
            let scope = h.join(&base).unwrap();
            assert!(definition_pronormal_in(h, &scope));
        }
    }
}

/// With a normal subgroup whose quotient has a self-normalizing Sylow
/// 2-subgroup, an odd-index subgroup is pronormal in the whole group exactly
/// when it is pronormal next to the normal subgroup.
fn property_even_type_quotient_collapse() {
    let factor = &CUBE_WREATH.factor;
    let g = factor.group();
    let v = factor.base_subgroup().unwrap();
    assert!(g.quotient(&v).unwrap().group().has_self_normalizing_sylow(2).unwrap());
    for h in g
        .overgroups_of(&g.sylow(2).unwrap(), DEFAULT_SUBGROUP_BUDGET)
        .unwrap()
    {
        let scope = h.join(&v).unwrap();
        assert_eq!(definition_pronormal(&h), definition_pronormal_in(&h, &scope));
    }

    let v4 = SYM_FOUR.group.p_core(2).unwrap();
    for h in SYM_FOUR
        .group
        .overgroups_of(&SYM_FOUR.group.sylow(2).unwrap(), DEFAULT_SUBGROUP_BUDGET)
        .unwrap()
    {
        let scope = h.join(&v4).unwrap();
        assert_eq!(definition_pronormal(&h), definition_pronormal_in(&h, &scope));
    }

    let split = &*SPLIT_PRODUCT;
    let wreath_side = split
        .product
        .embed_subgroup(1, &split.product.factor(1).full_subgroup())
        .unwrap();
    for h in &split.odd_index {
        let scope = h.join(&wreath_side).unwrap();
        assert_eq!(definition_pronormal(h), definition_pronormal_in(h, &scope));
    }
}

/// Next to a factor with a self-normalizing Sylow 2-subgroup, pronormality
/// of an odd-index subgroup is carried entirely by its projection to the
/// other factor.
fn property_even_type_projection() {
    let split = &*SPLIT_PRODUCT;
    for h in &split.odd_index {
        let projected = split.product.project_subgroup(h, 1).unwrap();
        assert_eq!(definition_pronormal(h), definition_pronormal(&projected));
    }
}

/// In every transitive coset action, a subgroup certified pronormal with a
/// nontrivial image fixes at most half of the points, minus one.
fn property_fixed_point_bound() {
    for (group, subgroups) in [
        (&SYM_FOUR.group, &SYM_FOUR.subgroups),
        (SMALL_ODD_WREATH.factor.group(), &SMALL_ODD_WREATH.subgroups),
    ] {
        for k in subgroups.iter() {
            if !definition_pronormal(k) {
                continue;
            }
            for stabilizer in subgroups.iter() {
                let action = group.coset_action(stabilizer).unwrap();
                let images = action.act_all(k.generators()).unwrap();
                if images.iter().all(|p| p.is_identity()) {
                    continue;
                }
                let fixed = perm::fixed_points(&images, action.degree());
                assert!(fixed.len() <= (action.degree() - 1) / 2);
            }
        }
    }
}

/// Sylow 2-normalizer shapes in two simple groups: index three over the
/// Sylow subgroup in the alternating group on five points, self-normalizing
/// in the simple group of order 168.
fn property_sylow_normalizer_desk_checks() {
    let a5 = alt_five();
    assert_eq!(a5.order(), 60);
    let s = a5.sylow(2).unwrap();
    let n = s.normalizer().unwrap();
    assert_eq!(n.order() / s.order(), 3);

    let psl = projective_168();
    assert_eq!(psl.order(), 168);
    let s = psl.sylow(2).unwrap();
    assert_eq!(s.order(), 8);
    assert_eq!(s.normalizer().unwrap().elements(), s.elements());
}
