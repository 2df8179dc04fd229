//! Eventually periodic subsets of ω.
//!
//! An [`EpSet`] is a finite set of exceptional members below a threshold
//! followed by a periodic tail: from the threshold on, `n` is a member iff
//! `n mod period` is one of the stored residues. Every constructor and
//! operation returns the canonical form (minimal period, then minimal
//! threshold), so structural equality is set equality.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpSetError {
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("residue {residue} is not below period {period}")]
    ResidueOutOfRange { residue: u64, period: u64 },
    #[error("head entry {entry} is not below threshold {threshold}")]
    HeadBeyondThreshold { entry: u64, threshold: u64 },
}

/// Canonical eventually periodic subset of ω.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpSet {
    head: Vec<u64>,
    threshold: u64,
    period: u64,
    residues: Vec<u64>,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl EpSet {
    /// Builds the canonical form of the set described by `member`, which must
    /// satisfy `member(n) == member(n + period)` for every `n >= threshold`.
    fn build(threshold: u64, period: u64, member: impl Fn(u64) -> bool) -> Self {
        debug_assert!(period > 0);
        let pattern: Vec<bool> = (0..period).map(|r| member(threshold + r)).collect();
        let p = period as usize;
        let min_period = (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| (0..p).all(|r| pattern[r] == pattern[(r + d) % p]))
            .unwrap_or(p) as u64;

        let mut t = threshold;
        while t > 0 && member(t - 1) == member(t - 1 + min_period) {
            t -= 1;
        }

        let head = (0..t).filter(|&n| member(n)).collect();
        let mut residues: Vec<u64> = (t..t + min_period)
            .filter(|&n| member(n))
            .map(|n| n % min_period)
            .collect();
        residues.sort_unstable();
        EpSet {
            head,
            threshold: t,
            period: min_period,
            residues,
        }
    }

    /// Validates raw fields and canonicalizes them.
    pub fn from_parts(
        head: &[u64],
        threshold: u64,
        period: u64,
        residues: &[u64],
    ) -> Result<Self, EpSetError> {
        if period == 0 {
            return Err(EpSetError::ZeroPeriod);
        }
        if let Some(&residue) = residues.iter().find(|&&r| r >= period) {
            return Err(EpSetError::ResidueOutOfRange { residue, period });
        }
        if let Some(&entry) = head.iter().find(|&&h| h >= threshold) {
            return Err(EpSetError::HeadBeyondThreshold { entry, threshold });
        }
        Ok(Self::build(threshold, period, |n| {
            if n < threshold {
                head.contains(&n)
            } else {
                residues.contains(&(n % period))
            }
        }))
    }

    pub fn empty() -> Self {
        EpSet {
            head: Vec::new(),
            threshold: 0,
            period: 1,
            residues: Vec::new(),
        }
    }

    /// The ray `[k) = {k, k+1, ...}`.
    pub fn ray(k: u64) -> Self {
        Self::build(k, 1, |n| n >= k)
    }

    pub fn finite(members: impl IntoIterator<Item = u64>) -> Self {
        let mut head: Vec<u64> = members.into_iter().collect();
        head.sort_unstable();
        head.dedup();
        let threshold = head.last().map_or(0, |m| m + 1);
        Self::build(threshold, 1, |n| head.binary_search(&n).is_ok())
    }

    /// The progression `start + step·ω`.
    pub fn progression(start: u64, step: u64) -> Result<Self, EpSetError> {
        if step == 0 {
            return Err(EpSetError::ZeroPeriod);
        }
        Ok(Self::build(start, step, |n| {
            n >= start && (n - start).is_multiple_of(step)
        }))
    }

    pub fn head(&self) -> &[u64] {
        &self.head
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_empty() && self.residues.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains_nat(&self, n: u64) -> bool {
        if n < self.threshold {
            self.head.binary_search(&n).is_ok()
        } else {
            self.residues.binary_search(&(n % self.period)).is_ok()
        }
    }

    /// Membership for an arbitrary integer; negative numbers are never members.
    pub fn contains(&self, n: i64) -> bool {
        n >= 0 && self.contains_nat(n as u64)
    }

    /// Least member, if any.
    pub fn least(&self) -> Option<u64> {
        if let Some(&h) = self.head.first() {
            return Some(h);
        }
        self.residues.iter().map(|&r| self.first_in_class(r)).min()
    }

    /// First `n >= threshold` with `n mod period == r`.
    fn first_in_class(&self, r: u64) -> u64 {
        let t = self.threshold;
        t + (r + self.period - t % self.period) % self.period
    }

    /// Members strictly below `bound`, in increasing order.
    pub fn members_below(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        (0..bound).filter(move |&n| self.contains_nat(n))
    }

    /// `{d + k : k ∈ self} ∩ ω`.
    pub fn shift(&self, d: i64) -> Self {
        if self.is_empty() {
            return Self::empty();
        }
        let threshold = (self.threshold as i64).saturating_add(d).max(0) as u64;
        Self::build(threshold, self.period, |n| self.contains((n as i64) - d))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        if self == other {
            return self.clone();
        }
        Self::build(
            self.threshold.max(other.threshold),
            lcm(self.period, other.period),
            |n| self.contains_nat(n) && other.contains_nat(n),
        )
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::build(
            self.threshold.max(other.threshold),
            lcm(self.period, other.period),
            |n| self.contains_nat(n) || other.contains_nat(n),
        )
    }

    /// True iff `k + self ⊆ other`.
    fn translate_fits(&self, k: u64, other: &Self) -> bool {
        // Past both thresholds membership on each side depends only on the
        // residue modulo the lcm, so one full lcm period is enough.
        let bound = self.threshold.max(other.threshold) + lcm(self.period, other.period);
        (0..bound).all(|n| !self.contains_nat(n) || other.contains_nat(n + k))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.translate_fits(0, other)
    }

    /// Search bound for shift quantifiers over a pair of sets:
    /// `threshold₁ + threshold₂ + 2·lcm(period₁, period₂)`.
    pub fn shift_bound(&self, other: &Self) -> u64 {
        self.threshold + other.threshold + 2 * lcm(self.period, other.period)
    }

    /// Least `k ∈ ω` with `k + self ⊆ other`, equivalently `self ⊆ -k + other`.
    pub fn exists_shift_subset(&self, other: &Self) -> Option<u64> {
        (0..=self.shift_bound(other)).find(|&k| self.translate_fits(k, other))
    }

    /// True iff the set is empty or a ray `[k)`.
    pub fn is_inductive(&self) -> bool {
        self.is_empty() || (self.head.is_empty() && self.period == 1 && self.residues == [0])
    }

    pub fn as_singleton(&self) -> Option<u64> {
        match (self.head.as_slice(), self.residues.is_empty()) {
            ([k], true) => Some(*k),
            _ => None,
        }
    }

    /// `Some((i0, j0))` when the set equals `i0 + j0·ω` with `j0 >= 1`.
    pub fn as_arith_progression(&self) -> Option<(u64, u64)> {
        match (self.head.is_empty(), self.residues.as_slice()) {
            (true, [r]) => Some((self.first_in_class(*r), self.period)),
            _ => None,
        }
    }
}

impl Default for EpSet {
    fn default() -> Self {
        Self::empty()
    }
}

impl fmt::Display for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        let mut parts = Vec::new();
        if !self.head.is_empty() {
            let items: Vec<String> = self.head.iter().map(u64::to_string).collect();
            parts.push(format!("{{{}}}", items.join(",")));
        }
        let mut starts: Vec<u64> = self
            .residues
            .iter()
            .map(|&r| self.first_in_class(r))
            .collect();
        starts.sort_unstable();
        for start in starts {
            if self.period == 1 {
                parts.push(format!("[{start})"));
            } else {
                parts.push(format!("{start}+{}*w", self.period));
            }
        }
        f.write_str(&parts.join("|"))
    }
}

impl fmt::Debug for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpSet({self})")
    }
}
