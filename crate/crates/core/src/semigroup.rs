//! Elements of `B_ℤ^𝓕` and their arithmetic.
//!
//! Nonzero elements are triples `(i, j, F)` with `i, j ∈ ℤ` and `F` a
//! nonempty member of the ambient family. When the family contains `∅` all
//! triples with an empty set collapse to a single absorbing [`Element::Zero`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::family::Family;
use crate::omega_sets::EpSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("set {0} is not a member of the family")]
    SetNotInFamily(EpSet),
    #[error("a triple needs a nonempty set; the empty set is the zero")]
    EmptyTriple,
    #[error("the family does not contain the empty set, so there is no zero")]
    NoZero,
    #[error("product has empty set component but the family lacks the empty set")]
    EmptyOutsideFamily,
    #[error("element {0} is not an idempotent")]
    NotIdempotent(Element),
    #[error("elements {0} and {1} are not {2}-related")]
    NotRelated(Element, Element, GreenRelation),
}

/// An element of `B_ℤ^𝓕`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Zero,
    Triple { i: i64, j: i64, set: EpSet },
}

impl Element {
    /// Unvalidated triple; use [`SemigroupCtx::element`] to check membership.
    pub fn triple(i: i64, j: i64, set: EpSet) -> Self {
        Element::Triple { i, j, set }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Element::Zero)
    }

    pub fn set(&self) -> Option<&EpSet> {
        match self {
            Element::Zero => None,
            Element::Triple { set, .. } => Some(set),
        }
    }

    pub fn indices(&self) -> Option<(i64, i64)> {
        match self {
            Element::Zero => None,
            Element::Triple { i, j, .. } => Some((*i, *j)),
        }
    }

    /// `(i, j, F)⁻¹ = (j, i, F)`.
    pub fn inverse(&self) -> Element {
        match self {
            Element::Zero => Element::Zero,
            Element::Triple { i, j, set } => Element::triple(*j, *i, set.clone()),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            Element::Zero => true,
            Element::Triple { i, j, .. } => i == j,
        }
    }

    /// Natural partial order: `(i₁,j₁,F₁) ≼ (i₂,j₂,F₂)` iff
    /// `i₁−i₂ = j₁−j₂ = k ≥ 0` and `F₁ ⊆ −k + F₂`. Zero is the minimum.
    pub fn natural_leq(&self, other: &Element) -> bool {
        match (self, other) {
            (Element::Zero, _) => true,
            (_, Element::Zero) => false,
            (
                Element::Triple {
                    i: i1,
                    j: j1,
                    set: f1,
                },
                Element::Triple {
                    i: i2,
                    j: j2,
                    set: f2,
                },
            ) => {
                let k = i1 - i2;
                k >= 0 && j1 - j2 == k && f1.is_subset(&f2.shift(-k))
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Zero => f.write_str("0"),
            Element::Triple { i, j, set } => write!(f, "({i},{j};{set})"),
        }
    }
}

/// Restriction of the natural order to idempotents:
/// `(i,i,F₁) ≼ (j,j,F₂)` iff `i ≥ j` and `F₁ ⊆ (j − i) + F₂`.
pub fn idempotent_leq(e: &Element, f: &Element) -> Result<bool, SemigroupError> {
    for x in [e, f] {
        if !x.is_idempotent() {
            return Err(SemigroupError::NotIdempotent(x.clone()));
        }
    }
    Ok(match (e, f) {
        (Element::Zero, _) => true,
        (_, Element::Zero) => false,
        (Element::Triple { i, set: f1, .. }, Element::Triple { i: j, set: f2, .. }) => {
            i >= j && f1.is_subset(&f2.shift(j - i))
        }
    })
}

/// Product of raw triples over `B_ℤ × 𝒫(ω)`, before any Rees quotient.
pub fn triple_product(
    (i1, j1, f1): (i64, i64, &EpSet),
    (i2, j2, f2): (i64, i64, &EpSet),
) -> (i64, i64, EpSet) {
    use std::cmp::Ordering::*;
    match j1.cmp(&i2) {
        Less => (i1 - j1 + i2, j2, f1.shift(j1 - i2).intersect(f2)),
        Equal => (i1, j2, f1.intersect(f2)),
        Greater => (i1, j1 - i2 + j2, f1.intersect(&f2.shift(i2 - j1))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GreenRelation {
    R,
    L,
    H,
    D,
    J,
}

impl GreenRelation {
    pub const ALL: [GreenRelation; 5] = [Self::R, Self::L, Self::H, Self::D, Self::J];
}

impl fmt::Display for GreenRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::R => "R",
            Self::L => "L",
            Self::H => "H",
            Self::D => "D",
            Self::J => "J",
        };
        f.write_str(s)
    }
}

impl FromStr for GreenRelation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" => Ok(Self::R),
            "L" => Ok(Self::L),
            "H" => Ok(Self::H),
            "D" => Ok(Self::D),
            "J" => Ok(Self::J),
            other => Err(format!("unknown Green relation `{other}`")),
        }
    }
}

/// Green's relations by their closed-form criteria. Zero is related only to
/// itself.
pub fn green(a: &Element, b: &Element, rel: GreenRelation) -> bool {
    match (a, b) {
        (Element::Zero, Element::Zero) => true,
        (Element::Zero, _) | (_, Element::Zero) => false,
        (
            Element::Triple {
                i: i1,
                j: j1,
                set: f1,
            },
            Element::Triple {
                i: i2,
                j: j2,
                set: f2,
            },
        ) => match rel {
            GreenRelation::R => i1 == i2 && f1 == f2,
            GreenRelation::L => j1 == j2 && f1 == f2,
            GreenRelation::H => i1 == i2 && j1 == j2 && f1 == f2,
            GreenRelation::D => f1 == f2,
            GreenRelation::J => {
                f1.exists_shift_subset(f2).is_some() && f2.exists_shift_subset(f1).is_some()
            }
        },
    }
}

/// Elements realizing a Green relation.
///
/// * `R`: `a·x = b` and `b·y = a`.
/// * `L`: `x·a = b` and `y·b = a`.
/// * `D`: `x` satisfies `x·x⁻¹ = a·a⁻¹` and `x⁻¹·x = b⁻¹·b` (so `a R x L b`),
///   and `y = x⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenWitness {
    pub rel: GreenRelation,
    pub x: Element,
    pub y: Element,
}

pub fn green_witness(
    a: &Element,
    b: &Element,
    rel: GreenRelation,
) -> Result<GreenWitness, SemigroupError> {
    let not_related = || SemigroupError::NotRelated(a.clone(), b.clone(), rel);
    if !matches!(rel, GreenRelation::R | GreenRelation::L | GreenRelation::D) || !green(a, b, rel) {
        return Err(not_related());
    }
    let (x, y) = match (a, b) {
        (Element::Zero, _) | (_, Element::Zero) => (Element::Zero, Element::Zero),
        (Element::Triple { i: i1, j: j1, set }, Element::Triple { i: i2, j: j2, .. }) => {
            match rel {
                GreenRelation::R => (
                    Element::triple(*j1, *j2, set.clone()),
                    Element::triple(*j2, *j1, set.clone()),
                ),
                GreenRelation::L => (
                    Element::triple(*i2, *i1, set.clone()),
                    Element::triple(*i1, *i2, set.clone()),
                ),
                _ => {
                    let c = Element::triple(*i1, *j2, set.clone());
                    let inv = c.inverse();
                    (c, inv)
                }
            }
        }
    };
    Ok(GreenWitness { rel, x, y })
}

/// Where the ambient family lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    Finite(Family),
    /// All singletons of ω together with `∅`; infinite, so kept symbolic.
    Singletons,
}

/// The semigroup `B_ℤ^𝓕` for a fixed family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupCtx {
    family: FamilyKind,
}

impl SemigroupCtx {
    pub fn new(family: Family) -> Self {
        SemigroupCtx {
            family: FamilyKind::Finite(family),
        }
    }

    pub fn singletons() -> Self {
        SemigroupCtx {
            family: FamilyKind::Singletons,
        }
    }

    pub fn family(&self) -> &FamilyKind {
        &self.family
    }

    pub fn finite_family(&self) -> Option<&Family> {
        match &self.family {
            FamilyKind::Finite(f) => Some(f),
            FamilyKind::Singletons => None,
        }
    }

    pub fn has_zero(&self) -> bool {
        match &self.family {
            FamilyKind::Finite(f) => f.has_empty(),
            FamilyKind::Singletons => true,
        }
    }

    pub fn contains_set(&self, set: &EpSet) -> bool {
        match &self.family {
            FamilyKind::Finite(f) => f.contains(set),
            FamilyKind::Singletons => set.is_empty() || set.as_singleton().is_some(),
        }
    }

    pub fn zero(&self) -> Result<Element, SemigroupError> {
        if self.has_zero() {
            Ok(Element::Zero)
        } else {
            Err(SemigroupError::NoZero)
        }
    }

    /// A validated nonzero element.
    pub fn element(&self, i: i64, j: i64, set: EpSet) -> Result<Element, SemigroupError> {
        if set.is_empty() {
            return Err(SemigroupError::EmptyTriple);
        }
        if !self.contains_set(&set) {
            return Err(SemigroupError::SetNotInFamily(set));
        }
        Ok(Element::triple(i, j, set))
    }

    /// Checks an already-built element against this context.
    pub fn validate(&self, a: &Element) -> Result<(), SemigroupError> {
        match a {
            Element::Zero => self.zero().map(|_| ()),
            Element::Triple { set, .. } if set.is_empty() => Err(SemigroupError::EmptyTriple),
            Element::Triple { set, .. } if !self.contains_set(set) => {
                Err(SemigroupError::SetNotInFamily(set.clone()))
            }
            Element::Triple { .. } => Ok(()),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, SemigroupError> {
        match (a, b) {
            (Element::Zero, _) | (_, Element::Zero) => Ok(Element::Zero),
            (
                Element::Triple {
                    i: i1,
                    j: j1,
                    set: f1,
                },
                Element::Triple {
                    i: i2,
                    j: j2,
                    set: f2,
                },
            ) => {
                let (i, j, set) = triple_product((*i1, *j1, f1), (*i2, *j2, f2));
                if !set.is_empty() {
                    Ok(Element::Triple { i, j, set })
                } else if self.has_zero() {
                    Ok(Element::Zero)
                } else {
                    Err(SemigroupError::EmptyOutsideFamily)
                }
            }
        }
    }

    /// Left-to-right product of a nonempty sequence.
    pub fn product<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a Element>,
    ) -> Result<Option<Element>, SemigroupError> {
        let mut acc: Option<Element> = None;
        for f in factors {
            acc = Some(match acc {
                None => f.clone(),
                Some(a) => self.multiply(&a, f)?,
            });
        }
        Ok(acc)
    }

    /// `a ≼ b` by its defining identity `a = a·a⁻¹·b`.
    pub fn natural_leq_by_product(&self, a: &Element, b: &Element) -> Result<bool, SemigroupError> {
        let e = self.multiply(a, &a.inverse())?;
        Ok(self.multiply(&e, b)? == *a)
    }

    /// Recomputes the products a [`GreenWitness`] promises.
    pub fn check_witness(
        &self,
        a: &Element,
        b: &Element,
        w: &GreenWitness,
    ) -> Result<bool, SemigroupError> {
        Ok(match w.rel {
            GreenRelation::R => self.multiply(a, &w.x)? == *b && self.multiply(b, &w.y)? == *a,
            GreenRelation::L => self.multiply(&w.x, a)? == *b && self.multiply(&w.y, b)? == *a,
            GreenRelation::D => {
                let left = self.multiply(&w.x, &w.x.inverse())?;
                let right = self.multiply(&w.x.inverse(), &w.x)?;
                w.y == w.x.inverse()
                    && left == self.multiply(a, &a.inverse())?
                    && right == self.multiply(&b.inverse(), b)?
            }
            GreenRelation::H | GreenRelation::J => false,
        })
    }
}
