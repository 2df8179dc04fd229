//! Finite ω-closed families of eventually periodic sets.
//!
//! A family `𝓕` is ω-closed when `F₁ ∩ (−n + F₂) ∈ 𝓕` for all members and
//! every `n ∈ ω`. For a fixed pair the set `F₁ ∩ (−n + F₂)` depends only on
//! `n mod period(F₂)` once `n` passes `threshold(F₂)`, so scanning `n` up to
//! [`EpSet::shift_bound`] covers the whole (eventually periodic) sequence.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::omega_sets::EpSet;

pub const DEFAULT_MEMBER_CAP: usize = 4096;

/// A pair of members and a shift whose combination escapes the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    pub left: EpSet,
    pub right: EpSet,
    pub n: u64,
    pub missing: EpSet,
}

impl fmt::Display for ClosureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ∩ (-{} + {}) = {} is not a member",
            self.left, self.n, self.right, self.missing
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a family needs at least one member")]
    NoMembers,
    #[error("family is not omega-closed: {0}")]
    NotOmegaClosed(ClosureViolation),
    #[error("closure exceeded {cap} members")]
    ClosureDiverged { cap: usize },
}

/// The sets `left ∩ (−n + right)` for `n = 0..=bound`.
fn shifted_meets<'a>(left: &'a EpSet, right: &'a EpSet) -> impl Iterator<Item = (u64, EpSet)> + 'a {
    (0..=left.shift_bound(right)).map(move |n| (n, left.intersect(&right.shift(-(n as i64)))))
}

/// First violation of ω-closedness, scanning pairs in order and `n` upward.
pub fn closure_violation(members: &BTreeSet<EpSet>) -> Option<ClosureViolation> {
    for left in members {
        for right in members {
            for (n, meet) in shifted_meets(left, right) {
                if !members.contains(&meet) {
                    return Some(ClosureViolation {
                        left: left.clone(),
                        right: right.clone(),
                        n,
                        missing: meet,
                    });
                }
            }
        }
    }
    None
}

pub fn is_omega_closed(members: &BTreeSet<EpSet>) -> bool {
    closure_violation(members).is_none()
}

/// A finite ω-closed family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    members: BTreeSet<EpSet>,
    has_empty: bool,
}

impl Family {
    /// Accepts `members` only if they already form an ω-closed family.
    pub fn new(members: impl IntoIterator<Item = EpSet>) -> Result<Self, FamilyError> {
        let members: BTreeSet<EpSet> = members.into_iter().collect();
        if members.is_empty() {
            return Err(FamilyError::NoMembers);
        }
        if let Some(v) = closure_violation(&members) {
            return Err(FamilyError::NotOmegaClosed(v));
        }
        Ok(Self::from_closed(members))
    }

    fn from_closed(members: BTreeSet<EpSet>) -> Self {
        let has_empty = members.iter().any(EpSet::is_empty);
        Family { members, has_empty }
    }

    /// Smallest ω-closed family containing `generators`.
    pub fn close(generators: impl IntoIterator<Item = EpSet>) -> Result<Self, FamilyError> {
        Self::close_capped(generators, DEFAULT_MEMBER_CAP)
    }

    pub fn close_capped(
        generators: impl IntoIterator<Item = EpSet>,
        cap: usize,
    ) -> Result<Self, FamilyError> {
        let mut members: BTreeSet<EpSet> = BTreeSet::new();
        let mut order: Vec<EpSet> = Vec::new();
        for g in generators {
            if members.insert(g.clone()) {
                order.push(g);
            }
        }
        if order.is_empty() {
            return Err(FamilyError::NoMembers);
        }
        if order.len() > cap {
            return Err(FamilyError::ClosureDiverged { cap });
        }

        // Worklist: each new member is combined with everything seen so far,
        // in both positions, before the next one is processed.
        let mut next = 0;
        while next < order.len() {
            let fresh = order[next].clone();
            for idx in 0..=next {
                let other = order[idx].clone();
                let mut found = Vec::new();
                for (_, meet) in shifted_meets(&fresh, &other) {
                    found.push(meet);
                }
                if idx != next {
                    for (_, meet) in shifted_meets(&other, &fresh) {
                        found.push(meet);
                    }
                }
                for meet in found {
                    if members.insert(meet.clone()) {
                        if members.len() > cap {
                            return Err(FamilyError::ClosureDiverged { cap });
                        }
                        order.push(meet);
                    }
                }
            }
            next += 1;
        }
        debug_assert!(is_omega_closed(&members));
        Ok(Self::from_closed(members))
    }

    pub fn members(&self) -> &BTreeSet<EpSet> {
        &self.members
    }

    pub fn nonempty_members(&self) -> impl Iterator<Item = &EpSet> {
        self.members.iter().filter(|m| !m.is_empty())
    }

    pub fn contains(&self, set: &EpSet) -> bool {
        self.members.contains(set)
    }

    pub fn has_empty(&self) -> bool {
        self.has_empty
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members.iter().map(EpSet::to_string).collect();
        write!(f, "family{{{}}}", items.join("; "))
    }
}
