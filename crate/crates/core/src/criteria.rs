//! Decision records and the structural pronormality criteria for odd-index
//! subgroups of products of wreath factors, plus the arithmetic predicates
//! that sit behind the classification front end.

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{odd_part, odd_prime_power};
use crate::elem::Elem;
use crate::error::{GroupError, Result};
use crate::group::Subgroup;
use crate::wreath::WreathProduct;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pronormal,
    NotPronormal,
    NotApplicable,
}

/// One tagged reason record inside a decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub code: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<usize>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Elem>,
}

impl Reason {
    pub fn new(code: &str, detail: impl Into<String>) -> Reason {
        Reason {
            code: code.to_string(),
            factor: None,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn for_factor(mut self, i: usize) -> Reason {
        self.factor = Some(i);
        self
    }

    pub fn with_witness(mut self, w: Elem) -> Reason {
        self.witness = Some(w);
        self
    }
}

/// The outcome of a decision procedure or oracle, with its justification
/// trail. `verified` is false only for branches settled by citation rather
/// than computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub verified: bool,
    pub reasons: Vec<Reason>,
}

impl Decision {
    pub fn new(verdict: Verdict) -> Decision {
        Decision {
            verdict,
            verified: true,
            reasons: Vec::new(),
        }
    }

    pub fn with(mut self, reason: Reason) -> Decision {
        self.reasons.push(reason);
        self
    }

    pub fn unverified(mut self) -> Decision {
        self.verified = false;
        self
    }

    pub fn is_pronormal(&self) -> bool {
        self.verdict == Verdict::Pronormal
    }
}

/// Factor-wise criterion for `H` pronormal in `K`, both sitting inside a
/// product of wreath factors.
///
/// Applicability gate: `H` must have odd index in the whole product and the
/// top projection of every factor image of `H` must be the full symmetric
/// group; otherwise the result is NotApplicable with one reason per failure.
/// For each factor over an odd prime, `H` passes if the factor image of `K`
/// is a proper subgroup of the factor, or the prime does not divide the
/// degree, or the zero-sum subgroup lies inside the factor image of `H`.
/// Factors over the even prime impose no constraint. `H` is pronormal in `K`
/// exactly when every factor passes.
pub fn decide_product_pronormal(
    ambient: &WreathProduct,
    k: &Subgroup,
    h: &Subgroup,
) -> Result<Decision> {
    if h.ambient() != ambient.group() || k.ambient() != ambient.group() {
        return Err(GroupError::AmbientMismatch);
    }
    if !h.is_subset_of(k) {
        return Err(GroupError::HypothesisViolated(
            "the subgroup must lie inside the target".into(),
        ));
    }

    let mut gate_failures: Vec<Reason> = Vec::new();
    if !h.has_odd_index() {
        gate_failures.push(Reason::new(
            "even-index",
            format!("subgroup index {} in the ambient product is even", h.index()),
        ));
    }
    for i in 0..ambient.arity() {
        if !ambient.bar_is_full(h, i)? {
            gate_failures.push(
                Reason::new(
                    "top-image-not-full",
                    "top projection of the factor image is a proper subgroup of the symmetric group",
                )
                .for_factor(i),
            );
        }
    }
    if !gate_failures.is_empty() {
        let mut d = Decision::new(Verdict::NotApplicable);
        d.reasons = gate_failures;
        return Ok(d);
    }

    let mut decision = Decision::new(Verdict::Pronormal);
    for i in 0..ambient.arity() {
        let spec = ambient.factor(i).spec();
        if spec.p == 2 {
            decision = decision.with(
                Reason::new(
                    "factor-even-characteristic",
                    "factor over the even prime imposes no constraint; the verdict is carried by the remaining factors",
                )
                .for_factor(i),
            );
            continue;
        }
        let k_image = ambient.project_subgroup(k, i)?;
        if k_image.order() < ambient.factor(i).group().order() {
            decision = decision.with(
                Reason::new(
                    "factor-proper-in-target",
                    "factor image of the target is a proper subgroup, so the factor passes",
                )
                .for_factor(i),
            );
            continue;
        }
        if spec.n as u64 % spec.p != 0 {
            decision = decision.with(
                Reason::new(
                    "factor-degree-coprime",
                    format!("prime {} does not divide the degree {}", spec.p, spec.n),
                )
                .for_factor(i),
            );
            continue;
        }
        if ambient.zero_sum_contained(h, i)? {
            decision = decision.with(
                Reason::new(
                    "factor-zero-sum-contained",
                    "zero-sum subgroup lies inside the factor image of the subgroup",
                )
                .for_factor(i),
            );
        } else {
            decision.verdict = Verdict::NotPronormal;
            decision = decision.with(
                Reason::new(
                    "factor-zero-sum-missing",
                    format!(
                        "prime {} divides the degree {} and the zero-sum subgroup is not contained in the factor image",
                        spec.p, spec.n
                    ),
                )
                .for_factor(i),
            );
        }
    }
    Ok(decision)
}

/// The top copy of the symmetric group is pronormal in a wreath product with
/// abelian base exactly when the base order is coprime to the degree.
pub fn complement_criterion(base_order: u64, degree: u64) -> bool {
    base_order.gcd(&degree) == 1
}

/// Product form of the complement criterion: every integer up to the largest
/// degree must meet the base order in a power of two.
pub fn abelian_product_criterion(base_order: u64, degrees: &[u64]) -> bool {
    let max = degrees.iter().copied().max().unwrap_or(0);
    (1..=max).all(|m| base_order.gcd(&m).is_power_of_two())
}

/// Degrees admissible over primes that are 3 or 5 mod 8: a power of two, or
/// a power of two times one more than a power of four.
pub fn admissible_degree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let m = odd_part(n);
    if m == 1 {
        return true;
    }
    let stripped = m - 1;
    stripped.is_power_of_two() && stripped.trailing_zeros() % 2 == 0
}

/// Classification predicate over symplectic factor shapes `(rank, q)`: every
/// factor whose field size is 3 or 5 mod 8 must have an admissible rank.
pub fn symplectic_criterion(factors: &[(u64, u64)]) -> Result<bool> {
    for &(n, q) in factors {
        odd_prime_power(q)?;
        if (q % 8 == 3 || q % 8 == 5) && !admissible_degree(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Digitwise binary dominance: every binary digit of `m` is at most the
/// corresponding digit of `n`.
pub fn binary_dominance(m: u64, n: u64) -> bool {
    m & n == m
}
