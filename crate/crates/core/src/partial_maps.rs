//! Partial shift bijections of ℤ, used as ground truth for the product.
//!
//! `α^i_j` maps `[i)` onto `[j)` by `n ↦ n − i + j`. Restricting `α^i_j` to
//! `i + F` and composing such restrictions pointwise reproduces the triple
//! product, which is how [`check_product`] validates it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::omega_sets::{lcm, EpSet};
use crate::semigroup::triple_product;

pub const DEFAULT_WINDOW: u64 = 128;

pub trait PartialMap {
    fn apply(&self, x: i64) -> Option<i64>;
}

/// `α^i_j`: domain `[i)`, range `[j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialShift {
    pub i: i64,
    pub j: i64,
}

impl PartialShift {
    pub fn new(i: i64, j: i64) -> Self {
        PartialShift { i, j }
    }

    /// Restriction to `i + set`.
    pub fn restrict(self, set: EpSet) -> RestrictedShift {
        RestrictedShift { shift: self, set }
    }
}

impl PartialMap for PartialShift {
    fn apply(&self, x: i64) -> Option<i64> {
        (x >= self.i).then(|| x - self.i + self.j)
    }
}

impl fmt::Display for PartialShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha^{}_{}", self.i, self.j)
    }
}

/// `α^i_j` restricted to the subset `i + set` of its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedShift {
    pub shift: PartialShift,
    pub set: EpSet,
}

impl PartialMap for RestrictedShift {
    fn apply(&self, x: i64) -> Option<i64> {
        if self.set.contains(x - self.shift.i) {
            self.shift.apply(x)
        } else {
            None
        }
    }
}

/// Apply `first`, then `second` (the composition `first ∘ second` in
/// right-action notation).
pub struct Then<'a, A: ?Sized, B: ?Sized> {
    pub first: &'a A,
    pub second: &'a B,
}

impl<A: PartialMap + ?Sized, B: PartialMap + ?Sized> PartialMap for Then<'_, A, B> {
    fn apply(&self, x: i64) -> Option<i64> {
        self.first.apply(x).and_then(|y| self.second.apply(y))
    }
}

/// `α^{i₁}_{j₁} ∘ α^{i₂}_{j₂} = α^i_j` with `i = i₁+i₂−min(j₁,i₂)` and
/// `j = j₁+j₂−min(j₁,i₂)`.
pub fn compose_shifts(a: PartialShift, b: PartialShift) -> PartialShift {
    let m = a.j.min(b.i);
    PartialShift::new(a.i + b.i - m, a.j + b.j - m)
}

/// Explicit graph of a partial injection on `[-w, w]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowFn {
    pub window: u64,
    pub graph: BTreeMap<i64, i64>,
}

impl WindowFn {
    pub fn domain(&self) -> BTreeSet<i64> {
        self.graph.keys().copied().collect()
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<i64> = self.graph.values().copied().collect();
        images.len() == self.graph.len()
    }

    /// Pointwise composition of the two graphs; points whose intermediate
    /// value left the window are lost.
    pub fn then(&self, other: &WindowFn) -> WindowFn {
        let graph = self
            .graph
            .iter()
            .filter_map(|(&x, y)| other.graph.get(y).map(|&z| (x, z)))
            .collect();
        WindowFn {
            window: self.window.min(other.window),
            graph,
        }
    }
}

/// Graph of `map` restricted to arguments and values in `[-w, w]`.
pub fn eval_window<M: PartialMap + ?Sized>(map: &M, w: u64) -> WindowFn {
    let w_i = w as i64;
    let graph = (-w_i..=w_i)
        .filter_map(|x| map.apply(x).map(|y| (x, y)))
        .filter(|&(_, y)| (-w_i..=w_i).contains(&y))
        .collect();
    WindowFn { window: w, graph }
}

/// Domain of `α^{i₁}_{j₁}|_{i₁+F₁} ∘ α^{i₂}_{j₂}|_{i₂+F₂}` on `[-w, w]`,
/// computed point by point.
pub fn restricted_compose_dom(
    a: PartialShift,
    f1: &EpSet,
    b: PartialShift,
    f2: &EpSet,
    w: u64,
) -> BTreeSet<i64> {
    let ra = a.restrict(f1.clone());
    let rb = b.restrict(f2.clone());
    let both = Then {
        first: &ra,
        second: &rb,
    };
    let w_i = w as i64;
    (-w_i..=w_i).filter(|&x| both.apply(x).is_some()).collect()
}

/// The same domain in closed form, as `offset + set`:
///
/// * `j₁ < i₂`: `i₁−j₁+i₂ + ((j₁−i₂+F₁) ∩ F₂)`
/// * `j₁ = i₂`: `i₁ + (F₁ ∩ F₂)`
/// * `j₁ > i₂`: `i₁ + (F₁ ∩ (i₂−j₁+F₂))`
pub fn restricted_compose_dom_closed(
    a: PartialShift,
    f1: &EpSet,
    b: PartialShift,
    f2: &EpSet,
) -> (i64, EpSet) {
    use std::cmp::Ordering::*;
    match a.j.cmp(&b.i) {
        Less => (a.i - a.j + b.i, f1.shift(a.j - b.i).intersect(f2)),
        Equal => (a.i, f1.intersect(f2)),
        Greater => (a.i, f1.intersect(&f2.shift(b.i - a.j))),
    }
}

/// Widens `base` until the window decides equality of translated sets built
/// from these indices and sets.
pub fn covering_window(base: u64, indices: &[i64], sets: &[&EpSet]) -> u64 {
    let reach: u64 = indices.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let thresholds: u64 = sets.iter().map(|s| s.threshold()).sum();
    let period = sets.iter().fold(1, |acc, s| lcm(acc, s.period()));
    base.max(4 * reach + thresholds + 2 * period)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMismatch {
    pub what: &'static str,
    pub detail: String,
}

impl fmt::Display for OracleMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.what, self.detail)
    }
}

/// Compares the triple product of `(i₁,j₁,F₁)` and `(i₂,j₂,F₂)` against
/// composition of the corresponding restricted partial shifts.
pub fn check_product(
    (i1, j1, f1): (i64, i64, &EpSet),
    (i2, j2, f2): (i64, i64, &EpSet),
    base_window: u64,
) -> Result<(), OracleMismatch> {
    let w = covering_window(base_window, &[i1, j1, i2, j2], &[f1, f2]);
    let (i, j, f) = triple_product((i1, j1, f1), (i2, j2, f2));
    let (a, b) = (PartialShift::new(i1, j1), PartialShift::new(i2, j2));

    let composed = compose_shifts(a, b);
    if (composed.i, composed.j) != (i, j) {
        return Err(OracleMismatch {
            what: "index pair",
            detail: format!("product gives ({i},{j}), shift composition gives {composed}"),
        });
    }

    let ra = a.restrict(f1.clone());
    let rb = b.restrict(f2.clone());
    let pointwise = eval_window(
        &Then {
            first: &ra,
            second: &rb,
        },
        w,
    );
    let claimed = eval_window(&PartialShift::new(i, j).restrict(f.clone()), w);
    if pointwise != claimed {
        return Err(OracleMismatch {
            what: "composite map",
            detail: format!("window {w}: product ({i},{j};{f}) disagrees with composition"),
        });
    }

    let dom = restricted_compose_dom(a, f1, b, f2, w);
    let (offset, closed) = restricted_compose_dom_closed(a, f1, b, f2);
    let w_i = w as i64;
    let closed_dom: BTreeSet<i64> = (-w_i..=w_i)
        .filter(|&x| closed.contains(x - offset))
        .collect();
    let product_dom: BTreeSet<i64> = (-w_i..=w_i).filter(|&x| f.contains(x - i)).collect();
    if dom != closed_dom || dom != product_dom {
        return Err(OracleMismatch {
            what: "composite domain",
            detail: format!("window {w}: pointwise, closed form and product domains differ"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_compose(a: PartialShift, b: PartialShift, w: u64) -> WindowFn {
        eval_window(
            &Then {
                first: &a,
                second: &b,
            },
            w,
        )
    }

    #[test]
    fn compose_examples() {
        let id = PartialShift::new(0, 0);
        assert_eq!(compose_shifts(id, id), id);
        let up = PartialShift::new(0, 1);
        let down = PartialShift::new(1, 0);
        assert_eq!(compose_shifts(up, down), PartialShift::new(0, 0));
        assert_eq!(compose_shifts(up, up), PartialShift::new(0, 2));
        for (x, y) in [(up, down), (up, up)] {
            let c = compose_shifts(x, y);
            assert_eq!(eval_window(&c, 64).graph, brute_compose(x, y, 64).graph);
        }
    }

    #[test]
    fn window_examples() {
        let g = eval_window(&PartialShift::new(0, 0), 2);
        assert_eq!(g.graph, BTreeMap::from([(0, 0), (1, 1), (2, 2)]));
        let g = eval_window(&PartialShift::new(1, 0), 2);
        assert_eq!(g.graph, BTreeMap::from([(1, 0), (2, 1)]));
        let g = eval_window(&PartialShift::new(0, 0).restrict(EpSet::finite([0, 2])), 2);
        assert_eq!(g.graph, BTreeMap::from([(0, 0), (2, 2)]));
        assert!(g.is_injective());
    }

    #[test]
    fn restricted_domain_examples() {
        let f = EpSet::finite([1, 4, 6]);
        let a = PartialShift::new(3, 5);
        let b = PartialShift::new(5, -2);
        let dom = restricted_compose_dom(a, &f, b, &f, 64);
        let expected: BTreeSet<i64> = f.members_below(64).map(|k| 3 + k as i64).collect();
        assert_eq!(dom, expected);

        assert!(restricted_compose_dom(a, &EpSet::empty(), b, &f, 64).is_empty());

        let (f1, f2) = (EpSet::finite([0, 2]), EpSet::finite([1, 4]));
        let (a, b) = (PartialShift::new(0, 3), PartialShift::new(1, 1));
        let dom = restricted_compose_dom(a, &f1, b, &f2, 64);
        assert_eq!(dom, BTreeSet::from([2]));
        let (offset, closed) = restricted_compose_dom_closed(a, &f1, b, &f2);
        assert_eq!((offset, closed), (0, EpSet::finite([2])));
    }

    #[test]
    fn window_composition_matches_direct() {
        let a = PartialShift::new(-3, 2).restrict(EpSet::ray(1));
        let b = PartialShift::new(4, 0).restrict(EpSet::progression(0, 2).unwrap());
        let direct = eval_window(
            &Then {
                first: &a,
                second: &b,
            },
            32,
        );
        let via_graphs = eval_window(&a, 64).then(&eval_window(&b, 64));
        for (x, y) in &direct.graph {
            assert_eq!(via_graphs.graph.get(x), Some(y));
        }
    }

    fn arb_set() -> impl Strategy<Value = EpSet> {
        (0u64..=8, 1u64..=6, any::<u16>(), any::<u8>()).prop_map(|(t, p, hb, rb)| {
            let head: Vec<u64> = (0..t).filter(|&n| hb >> n & 1 == 1).collect();
            let res: Vec<u64> = (0..p).filter(|&r| rb >> r & 1 == 1).collect();
            EpSet::from_parts(&head, t, p, &res).unwrap()
        })
    }

    proptest! {
        #[test]
        fn shift_composition_is_pointwise(i1 in -16i64..=16, j1 in -16i64..=16, i2 in -16i64..=16, j2 in -16i64..=16) {
            let (a, b) = (PartialShift::new(i1, j1), PartialShift::new(i2, j2));
            let c = compose_shifts(a, b);
            // Inner window keeps every intermediate value inside [-64, 64].
            let direct = brute_compose(a, b, 128);
            let inner: BTreeMap<i64, i64> = eval_window(&c, 128)
                .graph
                .into_iter()
                .filter(|&(x, _)| x.abs() <= 64)
                .collect();
            let direct_inner: BTreeMap<i64, i64> =
                direct.graph.into_iter().filter(|&(x, _)| x.abs() <= 64).collect();
            prop_assert_eq!(inner, direct_inner);
        }

        #[test]
        fn product_matches_partial_maps(
            i1 in -16i64..=16, j1 in -16i64..=16, i2 in -16i64..=16, j2 in -16i64..=16,
            f1 in arb_set(), f2 in arb_set(),
        ) {
            let r = check_product((i1, j1, &f1), (i2, j2, &f2), DEFAULT_WINDOW);
            prop_assert!(r.is_ok(), "{}", r.unwrap_err());
        }
    }
}
