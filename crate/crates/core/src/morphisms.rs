//! Homomorphisms out of `B_ℤ^𝓕` and the semigroups they land in.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::omega_sets::EpSet;
use crate::partial_maps::PartialShift;
use crate::semigroup::{Element, FamilyKind, SemigroupCtx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("the family contains the empty set, so the group quotient is trivial")]
    ZeroInFamily,
    #[error("the family is not of the form required by `{0}`")]
    WrongIsoType(&'static str),
    #[error("element {0} does not carry a singleton set")]
    NotSingletonSet(Element),
    #[error("element {element} does not carry the progression {expected}")]
    WrongProgression { element: Element, expected: EpSet },
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
}

/// The extended bicyclic semigroup on `ℤ × ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtBicyclicElt {
    pub i: i64,
    pub j: i64,
}

impl ExtBicyclicElt {
    pub fn new(i: i64, j: i64) -> Self {
        ExtBicyclicElt { i, j }
    }
}

impl Mul for ExtBicyclicElt {
    type Output = ExtBicyclicElt;

    fn mul(self, rhs: Self) -> Self {
        let m = self.j.min(rhs.i);
        ExtBicyclicElt::new(self.i + rhs.i - m, self.j + rhs.j - m)
    }
}

pub fn ext_bicyclic_mul(a: ExtBicyclicElt, b: ExtBicyclicElt) -> ExtBicyclicElt {
    a * b
}

impl fmt::Display for ExtBicyclicElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Matrix units over an integer index set, with zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixUnitElt {
    Zero,
    Unit(i64, i64),
}

impl Mul for MatrixUnitElt {
    type Output = MatrixUnitElt;

    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (MatrixUnitElt::Unit(a, b), MatrixUnitElt::Unit(c, d)) if b == c => {
                MatrixUnitElt::Unit(a, d)
            }
            _ => MatrixUnitElt::Zero,
        }
    }
}

impl fmt::Display for MatrixUnitElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixUnitElt::Zero => f.write_str("0"),
            MatrixUnitElt::Unit(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Fixed bijection `ℤ → ω`: `n ↦ 2n` for `n ≥ 0`, `n ↦ −2n − 1` otherwise.
pub fn int_to_nat(n: i64) -> u64 {
    if n >= 0 {
        2 * n as u64
    } else {
        2 * n.unsigned_abs() - 1
    }
}

pub fn nat_to_int(n: u64) -> i64 {
    if n.is_multiple_of(2) {
        (n / 2) as i64
    } else {
        -(n.div_ceil(2) as i64)
    }
}

/// Brandt ℤ-extension of the semilattice `(ω, min)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BrandtElt {
    Zero,
    Triple { alpha: i64, s: u64, beta: i64 },
}

impl Mul for BrandtElt {
    type Output = BrandtElt;

    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (
                BrandtElt::Triple { alpha, s, beta },
                BrandtElt::Triple {
                    alpha: gamma,
                    s: t,
                    beta: delta,
                },
            ) if beta == gamma => BrandtElt::Triple {
                alpha,
                s: s.min(t),
                beta: delta,
            },
            _ => BrandtElt::Zero,
        }
    }
}

impl fmt::Display for BrandtElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrandtElt::Zero => f.write_str("O"),
            BrandtElt::Triple { alpha, s, beta } => write!(f, "({alpha},{s},{beta})"),
        }
    }
}

/// `(i, j, F) ↦ i − j`, onto `ℤ(+)`; fibres are the σ-classes.
pub fn sigma_hom(ctx: &SemigroupCtx, a: &Element) -> Result<i64, MorphismError> {
    if ctx.has_zero() {
        return Err(MorphismError::ZeroInFamily);
    }
    match a {
        Element::Triple { i, j, .. } => Ok(i - j),
        // No zero exists without the empty set.
        Element::Zero => Err(MorphismError::ZeroInFamily),
    }
}

/// `(i, j, F) ↦ (i, j)` for a family `{F}` with `F` a nonempty ray.
#[derive(Debug, Clone)]
pub struct ExtBicyclicIso {
    set: EpSet,
}

impl ExtBicyclicIso {
    pub fn new(ctx: &SemigroupCtx) -> Result<Self, MorphismError> {
        let wrong = MorphismError::WrongIsoType("to_ext_bicyclic");
        let family = ctx.finite_family().ok_or(wrong.clone())?;
        match family.members().iter().collect::<Vec<_>>().as_slice() {
            [f] if !f.is_empty() && f.is_inductive() => Ok(ExtBicyclicIso { set: (*f).clone() }),
            _ => Err(wrong),
        }
    }

    pub fn apply(&self, a: &Element) -> Result<ExtBicyclicElt, MorphismError> {
        match a {
            Element::Triple { i, j, set } if *set == self.set => Ok(ExtBicyclicElt::new(*i, *j)),
            _ => Err(MorphismError::WrongIsoType("to_ext_bicyclic")),
        }
    }

    pub fn preimage(&self, x: ExtBicyclicElt) -> Element {
        Element::triple(x.i, x.j, self.set.clone())
    }
}

pub fn to_ext_bicyclic(ctx: &SemigroupCtx, a: &Element) -> Result<ExtBicyclicElt, MorphismError> {
    ExtBicyclicIso::new(ctx)?.apply(a)
}

/// `(i, j, {k}) ↦ (i, j)`, `0 ↦ 0` for a family `{∅, {k}}`.
#[derive(Debug, Clone)]
pub struct MatrixUnitsIso {
    point: u64,
}

impl MatrixUnitsIso {
    pub fn new(ctx: &SemigroupCtx) -> Result<Self, MorphismError> {
        let wrong = MorphismError::WrongIsoType("to_matrix_units");
        let family = ctx.finite_family().ok_or(wrong.clone())?;
        let nonempty: Vec<&EpSet> = family.nonempty_members().collect();
        match (family.has_empty(), nonempty.as_slice()) {
            (true, [f]) if family.len() == 2 => f
                .as_singleton()
                .map(|point| MatrixUnitsIso { point })
                .ok_or(wrong),
            _ => Err(wrong),
        }
    }

    pub fn point(&self) -> u64 {
        self.point
    }

    pub fn apply(&self, a: &Element) -> Result<MatrixUnitElt, MorphismError> {
        match a {
            Element::Zero => Ok(MatrixUnitElt::Zero),
            Element::Triple { i, j, set } if set.as_singleton() == Some(self.point) => {
                Ok(MatrixUnitElt::Unit(*i, *j))
            }
            _ => Err(MorphismError::WrongIsoType("to_matrix_units")),
        }
    }

    /// The same map followed by the bijection `ℤ → ω` on both indices,
    /// landing in the `ω × ω` matrix units.
    pub fn apply_omega(
        &self,
        a: &Element,
    ) -> Result<(MatrixUnitElt, Option<(u64, u64)>), MorphismError> {
        let m = self.apply(a)?;
        let idx = match m {
            MatrixUnitElt::Zero => None,
            MatrixUnitElt::Unit(x, y) => Some((int_to_nat(x), int_to_nat(y))),
        };
        Ok((m, idx))
    }

    pub fn preimage(&self, m: MatrixUnitElt) -> Element {
        match m {
            MatrixUnitElt::Zero => Element::Zero,
            MatrixUnitElt::Unit(a, b) => Element::triple(a, b, EpSet::finite([self.point])),
        }
    }
}

pub fn to_matrix_units(ctx: &SemigroupCtx, a: &Element) -> Result<MatrixUnitElt, MorphismError> {
    MatrixUnitsIso::new(ctx)?.apply(a)
}

/// `(i, j, {k}) ↦ (i+k, k, j+k)` and `0 ↦ 𝒪`.
pub fn to_brandt(a: &Element) -> Result<BrandtElt, MorphismError> {
    match a {
        Element::Zero => Ok(BrandtElt::Zero),
        Element::Triple { i, j, set } => {
            let k = set
                .as_singleton()
                .ok_or_else(|| MorphismError::NotSingletonSet(a.clone()))?;
            let ki = k as i64;
            Ok(BrandtElt::Triple {
                alpha: i + ki,
                s: k,
                beta: j + ki,
            })
        }
    }
}

pub fn from_brandt(b: BrandtElt) -> Element {
    match b {
        BrandtElt::Zero => Element::Zero,
        BrandtElt::Triple { alpha, s, beta } => {
            let k = s as i64;
            Element::triple(alpha - k, beta - k, EpSet::finite([s]))
        }
    }
}

/// Checks that `ctx` is the symbolic singleton family expected by [`to_brandt`].
pub fn require_singletons(ctx: &SemigroupCtx) -> Result<(), MorphismError> {
    match ctx.family() {
        FamilyKind::Singletons => Ok(()),
        FamilyKind::Finite(_) => Err(MorphismError::WrongIsoType("to_brandt")),
    }
}

/// `(n, m, i₁ + j₀ω) ↦ (n, m, i₂ + j₀ω)`, `0 ↦ 0`.
pub fn progression_reindex(
    a: &Element,
    from_start: u64,
    to_start: u64,
    step: u64,
) -> Result<Element, MorphismError> {
    let expected = EpSet::progression(from_start, step)
        .map_err(|_| MorphismError::WrongIsoType("progression_reindex"))?;
    let target = EpSet::progression(to_start, step)
        .map_err(|_| MorphismError::WrongIsoType("progression_reindex"))?;
    match a {
        Element::Zero => Ok(Element::Zero),
        Element::Triple { i, j, set } if *set == expected => Ok(Element::triple(*i, *j, target)),
        Element::Triple { .. } => Err(MorphismError::WrongProgression {
            element: a.clone(),
            expected,
        }),
    }
}

/// `α^i_j ↦ (i, j)`.
pub fn partial_shift_iso(alpha: PartialShift) -> ExtBicyclicElt {
    ExtBicyclicElt::new(alpha.i, alpha.j)
}
