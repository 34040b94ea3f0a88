//! The element contract shared by every group in the crate.
//!
//! An `Elem` owns everything needed to multiply and invert itself, so groups
//! over permutations, wreath elements, matrices, tuples and coset labels all
//! run through one engine. Equality, hashing and ordering are structural, and
//! the field order inside each payload is chosen so that the derived ordering
//! coincides with the mixed-radix canonical encoding (most significant digits
//! first). `try_canonical_key` materializes that encoding when it fits in a
//! `u128`; ordering never needs it.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::matgrp::GFMatrix;
use crate::perm::Perm;
use crate::wreath::{GenWreathElem, WreathElem};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Perm(Perm),
    Wreath(WreathElem),
    Mat(GFMatrix),
    Tuple(Vec<Elem>),
    GenWreath(GenWreathElem),
    Coset(CosetElem),
}

impl Elem {
    pub fn mul(&self, other: &Elem) -> Result<Elem> {
        match (self, other) {
            (Elem::Perm(a), Elem::Perm(b)) => Ok(Elem::Perm(a.compose(b)?)),
            (Elem::Wreath(a), Elem::Wreath(b)) => Ok(Elem::Wreath(a.mul(b)?)),
            (Elem::Mat(a), Elem::Mat(b)) => Ok(Elem::Mat(a.mul(b)?)),
            (Elem::Tuple(a), Elem::Tuple(b)) => {
                if a.len() != b.len() {
                    return Err(GroupError::IncompatiblePayloads);
                }
                let parts: Result<Vec<Elem>> =
                    a.iter().zip(b).map(|(x, y)| x.mul(y)).collect();
                Ok(Elem::Tuple(parts?))
            }
            (Elem::GenWreath(a), Elem::GenWreath(b)) => Ok(Elem::GenWreath(a.mul(b)?)),
            (Elem::Coset(a), Elem::Coset(b)) => {
                if !Arc::ptr_eq(&a.table, &b.table) && a.table.fingerprint != b.table.fingerprint {
                    return Err(GroupError::IncompatiblePayloads);
                }
                let product = a.rep.mul(&b.rep)?;
                a.table.coset_of(&product)
            }
            _ => Err(GroupError::IncompatiblePayloads),
        }
    }

    pub fn inv(&self) -> Result<Elem> {
        match self {
            Elem::Perm(a) => Ok(Elem::Perm(a.inverse())),
            Elem::Wreath(a) => Ok(Elem::Wreath(a.inverse())),
            Elem::Mat(a) => a.inverse().map(Elem::Mat),
            Elem::Tuple(a) => {
                let parts: Result<Vec<Elem>> = a.iter().map(|x| x.inv()).collect();
                Ok(Elem::Tuple(parts?))
            }
            Elem::GenWreath(a) => Ok(Elem::GenWreath(a.inverse()?)),
            Elem::Coset(a) => a.table.coset_of(&a.rep.inv()?),
        }
    }

    /// Identity element of the same shape as `self`.
    pub fn identity_like(&self) -> Result<Elem> {
        match self {
            Elem::Perm(a) => Ok(Elem::Perm(Perm::identity(a.degree()))),
            Elem::Wreath(a) => Ok(Elem::Wreath(a.identity_like())),
            Elem::Mat(a) => Ok(Elem::Mat(a.identity_like())),
            Elem::Tuple(a) => {
                let parts: Result<Vec<Elem>> = a.iter().map(|x| x.identity_like()).collect();
                Ok(Elem::Tuple(parts?))
            }
            Elem::GenWreath(a) => Ok(Elem::GenWreath(a.identity_like()?)),
            Elem::Coset(a) => a.table.coset_of(&a.rep.identity_like()?),
        }
    }

    pub fn is_identity(&self) -> Result<bool> {
        Ok(self == &self.identity_like()?)
    }

    /// Conjugate `self^g = g^{-1} * self * g`.
    pub fn conj(&self, g: &Elem) -> Result<Elem> {
        g.inv()?.mul(self)?.mul(g)
    }

    /// Multiplicative order, by repeated multiplication.
    pub fn order(&self) -> Result<u64> {
        let id = self.identity_like()?;
        let mut x = self.clone();
        let mut k = 1u64;
        while x != id {
            x = x.mul(self)?;
            k += 1;
        }
        Ok(k)
    }

    /// True when the two elements live in the same ambient shape, so that
    /// multiplication is defined.
    pub fn compatible(&self, other: &Elem) -> bool {
        match (self, other) {
            (Elem::Perm(a), Elem::Perm(b)) => a.degree() == b.degree(),
            (Elem::Wreath(a), Elem::Wreath(b)) => a.same_shape(b),
            (Elem::Mat(a), Elem::Mat(b)) => a.same_shape(b),
            (Elem::Tuple(a), Elem::Tuple(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.compatible(y))
            }
            (Elem::GenWreath(a), Elem::GenWreath(b)) => a.same_shape(b),
            (Elem::Coset(a), Elem::Coset(b)) => a.table.fingerprint == b.table.fingerprint,
            _ => false,
        }
    }

    /// Size of the ambient digit space this element is encoded in.
    pub fn shape_radix(&self) -> Option<u128> {
        match self {
            Elem::Perm(a) => factorial_u128(a.degree()),
            Elem::Wreath(a) => a.shape_radix(),
            Elem::Mat(a) => a.shape_radix(),
            Elem::Tuple(a) => {
                let mut r: u128 = 1;
                for part in a {
                    r = r.checked_mul(part.shape_radix()?)?;
                }
                Some(r)
            }
            Elem::GenWreath(a) => a.shape_radix(),
            Elem::Coset(a) => a.rep.shape_radix(),
        }
    }

    /// Mixed-radix canonical encoding; `None` when it does not fit in `u128`.
    /// Structural ordering on elements of one shape agrees with this number.
    pub fn try_canonical_key(&self) -> Option<u128> {
        match self {
            Elem::Perm(a) => a.lehmer_rank(),
            Elem::Wreath(a) => a.canonical_key(),
            Elem::Mat(a) => a.canonical_key(),
            Elem::Tuple(a) => {
                let mut key: u128 = 0;
                for part in a {
                    let radix = part.shape_radix()?;
                    key = key.checked_mul(radix)?.checked_add(part.try_canonical_key()?)?;
                }
                Some(key)
            }
            Elem::GenWreath(a) => a.canonical_key(),
            Elem::Coset(a) => a.rep.try_canonical_key(),
        }
    }
}

impl Serialize for Elem {
    fn serialize<S>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error>
    where
        S: serde::Serializer,
    {
        match self {
            Elem::Perm(a) => a.serialize(serializer),
            Elem::Wreath(a) => a.serialize(serializer),
            Elem::Mat(a) => a.serialize(serializer),
            Elem::Tuple(a) => a.serialize(serializer),
            Elem::GenWreath(a) => a.serialize(serializer),
            Elem::Coset(a) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("coset_rep", a.rep.as_ref())?;
                map.end()
            }
        }
    }
}

pub(crate) fn factorial_u128(n: usize) -> Option<u128> {
    let mut f: u128 = 1;
    for k in 2..=n {
        f = f.checked_mul(k as u128)?;
    }
    Some(f)
}

/// Shared lookup structure for one quotient group: every numerator element is
/// assigned to its coset, and each coset is labeled by its minimal element.
#[derive(Debug)]
pub struct QuotientTable {
    pub(crate) fingerprint: u64,
    pub(crate) reps: Vec<Elem>,
    pub(crate) coset_index: HashMap<Elem, u32>,
}

impl QuotientTable {
    pub(crate) fn new(reps: Vec<Elem>, coset_index: HashMap<Elem, u32>, fingerprint: u64) -> Self {
        QuotientTable {
            fingerprint,
            reps,
            coset_index,
        }
    }

    pub(crate) fn coset_of(self: &Arc<Self>, numerator_elem: &Elem) -> Result<Elem> {
        let idx = self
            .coset_index
            .get(numerator_elem)
            .copied()
            .ok_or(GroupError::ElementNotInAmbient)?;
        Ok(Elem::Coset(CosetElem {
            table: Arc::clone(self),
            rep: Box::new(self.reps[idx as usize].clone()),
        }))
    }

}

/// A coset of a fixed normal subgroup, labeled by its minimal element.
#[derive(Debug, Clone)]
pub struct CosetElem {
    pub(crate) table: Arc<QuotientTable>,
    pub(crate) rep: Box<Elem>,
}

impl CosetElem {
    pub fn representative(&self) -> &Elem {
        &self.rep
    }
}

impl PartialEq for CosetElem {
    fn eq(&self, other: &Self) -> bool {
        self.table.fingerprint == other.table.fingerprint && self.rep == other.rep
    }
}

impl Eq for CosetElem {}

impl Hash for CosetElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.table.fingerprint.hash(state);
        self.rep.hash(state);
    }
}

impl PartialOrd for CosetElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CosetElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.table
            .fingerprint
            .cmp(&other.table.fingerprint)
            .then_with(|| self.rep.cmp(&other.rep))
    }
}
