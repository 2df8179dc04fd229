//! Structural classification of `B_ℤ^𝓕` read off from the family.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::family::Family;
use crate::omega_sets::EpSet;
use crate::semigroup::{Element, FamilyKind, SemigroupCtx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the operation needs a finite family")]
    InfiniteFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsoType {
    Trivial,
    ExtendedBicyclic,
    MatrixUnitsOmega,
    ZeroBisimpleProgression { i0: u64, j0: u64 },
    General,
}

impl IsoType {
    pub fn name(&self) -> &'static str {
        match self {
            IsoType::Trivial => "Trivial",
            IsoType::ExtendedBicyclic => "ExtendedBicyclic",
            IsoType::MatrixUnitsOmega => "MatrixUnitsOmega",
            IsoType::ZeroBisimpleProgression { .. } => "ZeroBisimpleProgression",
            IsoType::General => "General",
        }
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoType::ZeroBisimpleProgression { i0, j0 } => {
                write!(f, "ZeroBisimpleProgression({i0},{j0})")
            }
            other => f.write_str(other.name()),
        }
    }
}

/// Which shape the nonempty member of a 0-bisimple family `{∅, F}` has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroBisimpleBranch {
    /// `F` is a single point.
    Singleton,
    /// `F = [k)`, so `(−1 + F) ∩ F = F`.
    Ray,
    /// `F = i₀ + j₀ω` with `j₀ ≥ 2`, so `(−1 + F) ∩ F = ∅`.
    Progression,
    /// None of the above was recognised.
    Unresolved,
}

impl ZeroBisimpleBranch {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Singleton => "Singleton",
            Self::Ray => "Ray",
            Self::Progression => "Progression",
            Self::Unresolved => "Unresolved",
        }
    }
}

/// A pair of elements refuting one verdict. The meaning depends on the key:
///
/// * `has_identity`: `left` is a candidate identity and `left·right ≠ right`.
/// * `simple`, `zero_simple`: `left` and `right` are not `J`-related; for
///   `zero_simple` with only the empty set the pair `(0, 0)` shows `S·S = {0}`.
/// * `bisimple`, `zero_bisimple`: two nonzero elements (or zero and a nonzero
///   element for `bisimple`) that are not `D`-related.
/// * `e_unitary`: the idempotent `left` lies below the non-idempotent `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub left: Element,
    pub right: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub has_zero: bool,
    pub has_identity: bool,
    pub simple: bool,
    pub zero_simple: bool,
    pub bisimple: bool,
    pub zero_bisimple: bool,
    pub e_unitary: bool,
    pub iso_type: IsoType,
    pub contains_extended_bicyclic: bool,
    pub zero_bisimple_branch: Option<ZeroBisimpleBranch>,
    /// Number of nonzero `D`-classes, when finite.
    pub nonzero_d_classes: Option<usize>,
    pub witnesses: BTreeMap<&'static str, Counterexample>,
}

fn mutually_shift_related(a: &EpSet, b: &EpSet) -> bool {
    a.exists_shift_subset(b).is_some() && b.exists_shift_subset(a).is_some()
}

fn rep(set: &EpSet) -> Element {
    Element::triple(0, 0, set.clone())
}

fn pair(left: Element, right: Element) -> Counterexample {
    Counterexample { left, right }
}

/// First pair of sets that are not mutually shift-included.
fn unrelated_pair<'a>(sets: &[&'a EpSet]) -> Option<(&'a EpSet, &'a EpSet)> {
    sets.iter().enumerate().find_map(|(n, a)| {
        sets[n + 1..]
            .iter()
            .find(|b| !mutually_shift_related(a, b))
            .map(|b| (*a, *b))
    })
}

pub fn d_class_count(ctx: &SemigroupCtx) -> Result<usize, ClassifyError> {
    ctx.finite_family()
        .map(|f| f.nonempty_members().count())
        .ok_or(ClassifyError::InfiniteFamily)
}

pub fn classify(ctx: &SemigroupCtx) -> StructureReport {
    match ctx.family() {
        FamilyKind::Finite(family) => classify_finite(family),
        FamilyKind::Singletons => classify_singletons(),
    }
}

fn classify_finite(family: &Family) -> StructureReport {
    let has_zero = family.has_empty();
    let nonempty: Vec<&EpSet> = family.nonempty_members().collect();
    let only_empty = nonempty.is_empty();
    let mut witnesses = BTreeMap::new();

    let has_identity = only_empty;
    if let Some(f) = nonempty.first() {
        witnesses.insert(
            "has_identity",
            pair(rep(f), Element::triple(-1, -1, (*f).clone())),
        );
    }

    let unrelated = unrelated_pair(&nonempty);
    let simple = if only_empty {
        true
    } else if has_zero {
        witnesses.insert("simple", pair(Element::Zero, rep(nonempty[0])));
        false
    } else if let Some((a, b)) = unrelated {
        witnesses.insert("simple", pair(rep(a), rep(b)));
        false
    } else {
        true
    };

    let zero_simple = has_zero && !only_empty && unrelated.is_none();
    if has_zero && !zero_simple {
        let w = match unrelated {
            Some((a, b)) => pair(rep(a), rep(b)),
            None => pair(Element::Zero, Element::Zero),
        };
        witnesses.insert("zero_simple", w);
    }

    let bisimple = family.len() == 1;
    if !bisimple {
        let w = if has_zero {
            pair(Element::Zero, rep(nonempty[0]))
        } else {
            pair(rep(nonempty[0]), rep(nonempty[1]))
        };
        witnesses.insert("bisimple", w);
    }

    let zero_bisimple = has_zero && nonempty.len() == 1;
    if has_zero && nonempty.len() > 1 {
        witnesses.insert("zero_bisimple", pair(rep(nonempty[0]), rep(nonempty[1])));
    }

    let e_unitary = !has_zero || only_empty;
    if !e_unitary {
        witnesses.insert(
            "e_unitary",
            pair(Element::Zero, Element::triple(0, 1, nonempty[0].clone())),
        );
    }

    let zero_bisimple_branch = zero_bisimple.then(|| {
        let f = nonempty[0];
        if f.as_singleton().is_some() {
            ZeroBisimpleBranch::Singleton
        } else if f.is_inductive() {
            ZeroBisimpleBranch::Ray
        } else if f.as_arith_progression().is_some() {
            ZeroBisimpleBranch::Progression
        } else {
            ZeroBisimpleBranch::Unresolved
        }
    });

    let iso_type = if only_empty && family.len() == 1 {
        IsoType::Trivial
    } else if !has_zero && nonempty.len() == 1 && nonempty[0].is_inductive() {
        IsoType::ExtendedBicyclic
    } else if zero_bisimple && nonempty[0].as_singleton().is_some() {
        IsoType::MatrixUnitsOmega
    } else if let (true, Some((i0, j0))) = (
        zero_bisimple,
        nonempty.first().and_then(|f| f.as_arith_progression()),
    ) {
        IsoType::ZeroBisimpleProgression { i0, j0 }
    } else {
        IsoType::General
    };

    StructureReport {
        has_zero,
        has_identity,
        simple,
        zero_simple,
        bisimple,
        zero_bisimple,
        e_unitary,
        iso_type,
        contains_extended_bicyclic: nonempty.iter().any(|f| f.is_inductive()),
        zero_bisimple_branch,
        nonzero_d_classes: Some(nonempty.len()),
        witnesses,
    }
}

/// All singletons plus `∅`: one nonzero `D`-class per point, and `{k}` only
/// shifts into `{l}` when `k ≤ l`, so no two points are `J`-related.
fn classify_singletons() -> StructureReport {
    let p0 = rep(&EpSet::finite([0]));
    let p1 = rep(&EpSet::finite([1]));
    let mut witnesses = BTreeMap::new();
    witnesses.insert(
        "has_identity",
        pair(p0.clone(), Element::triple(-1, -1, EpSet::finite([0]))),
    );
    witnesses.insert("simple", pair(Element::Zero, p0.clone()));
    witnesses.insert("zero_simple", pair(p0.clone(), p1.clone()));
    witnesses.insert("bisimple", pair(Element::Zero, p0.clone()));
    witnesses.insert("zero_bisimple", pair(p0, p1));
    witnesses.insert(
        "e_unitary",
        pair(Element::Zero, Element::triple(0, 1, EpSet::finite([0]))),
    );
    StructureReport {
        has_zero: true,
        has_identity: false,
        simple: false,
        zero_simple: false,
        bisimple: false,
        zero_bisimple: false,
        e_unitary: false,
        iso_type: IsoType::General,
        contains_extended_bicyclic: false,
        zero_bisimple_branch: None,
        nonzero_d_classes: None,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{green, GreenRelation};

    fn ctx_of(sets: &[EpSet]) -> SemigroupCtx {
        SemigroupCtx::new(Family::new(sets.iter().cloned()).unwrap())
    }

    #[test]
    fn ray_family() {
        let r = classify(&ctx_of(&[EpSet::ray(2)]));
        assert!(r.bisimple && r.simple && r.e_unitary && !r.has_zero);
        assert_eq!(r.iso_type, IsoType::ExtendedBicyclic);
        assert!(r.contains_extended_bicyclic);
        assert!(!r.witnesses.contains_key("bisimple"));
    }

    #[test]
    fn singleton_family() {
        let r = classify(&ctx_of(&[EpSet::empty(), EpSet::finite([3])]));
        assert!(r.zero_bisimple && r.zero_simple && r.has_zero);
        assert!(!r.e_unitary && !r.simple && !r.bisimple);
        assert_eq!(r.iso_type, IsoType::MatrixUnitsOmega);
        assert_eq!(r.zero_bisimple_branch, Some(ZeroBisimpleBranch::Singleton));
        assert_eq!(
            d_class_count(&ctx_of(&[EpSet::empty(), EpSet::finite([3])])),
            Ok(1)
        );
    }

    #[test]
    fn progression_family() {
        let r = classify(&ctx_of(&[
            EpSet::empty(),
            EpSet::progression(2, 3).unwrap(),
        ]));
        assert!(r.zero_bisimple);
        assert_eq!(
            r.iso_type,
            IsoType::ZeroBisimpleProgression { i0: 2, j0: 3 }
        );
        assert_eq!(
            r.zero_bisimple_branch,
            Some(ZeroBisimpleBranch::Progression)
        );

        let r = classify(&ctx_of(&[EpSet::empty(), EpSet::ray(4)]));
        assert_eq!(
            r.iso_type,
            IsoType::ZeroBisimpleProgression { i0: 4, j0: 1 }
        );
        assert_eq!(r.zero_bisimple_branch, Some(ZeroBisimpleBranch::Ray));
        assert!(r.contains_extended_bicyclic);
    }

    #[test]
    fn trivial_family() {
        let r = classify(&ctx_of(&[EpSet::empty()]));
        assert_eq!(r.iso_type, IsoType::Trivial);
        assert!(r.has_identity && r.has_zero && r.bisimple && r.simple && r.e_unitary);
        assert!(!r.zero_simple && !r.zero_bisimple);
        assert_eq!(r.nonzero_d_classes, Some(0));
    }

    #[test]
    fn two_point_closure() {
        let ctx = SemigroupCtx::new(Family::close([EpSet::finite([0, 1])]).unwrap());
        let r = classify(&ctx);
        // {0} shifts into {0,1} by 0 or 1, but {0,1} never fits into {0}.
        assert!(EpSet::finite([0, 1])
            .exists_shift_subset(&EpSet::finite([0]))
            .is_none());
        assert!(!r.zero_simple);
        let w = &r.witnesses["zero_simple"];
        assert!(!green(&w.left, &w.right, GreenRelation::J));
        assert!(!r.zero_bisimple);
        assert_eq!(r.iso_type, IsoType::General);
        assert_eq!(d_class_count(&ctx), Ok(2));
    }

    #[test]
    fn rays_are_simple() {
        // Closure is {[1), [2), [3)}; any two rays shift into each other.
        let ctx = SemigroupCtx::new(Family::close([EpSet::ray(1), EpSet::ray(3)]).unwrap());
        let r = classify(&ctx);
        assert!(r.simple && !r.bisimple && r.e_unitary);
        assert_eq!(r.iso_type, IsoType::General);
    }

    #[test]
    fn singletons_family() {
        let ctx = SemigroupCtx::singletons();
        let r = classify(&ctx);
        assert!(r.has_zero && !r.zero_simple && !r.zero_bisimple);
        assert_eq!(d_class_count(&ctx), Err(ClassifyError::InfiniteFamily));
        let w = &r.witnesses["zero_simple"];
        assert!(!green(&w.left, &w.right, GreenRelation::J));
    }
}
