//! Closed real intervals and canonical disjoint interval sets.
//!
//! `IntervalSet` is the projection-coverage workhorse: it keeps a sorted
//! list of pairwise-disjoint closed intervals, merging members whose gap
//! is below [`GEOM_TOL`] so downstream measures are never fragmented by
//! slivers. Building the same set in any insertion order produces the
//! identical canonical representation.

use crate::GEOM_TOL;

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Interval spanned by two endpoints, in either order.
    pub fn new(a: f64, b: f64) -> Interval {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn measure(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64, tol: f64) -> bool {
        v >= self.lo - tol && v <= self.hi + tol
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Signed separation: positive distance when disjoint, negative
    /// overlap depth when intersecting.
    pub fn separation(&self, other: &Interval) -> f64 {
        (other.lo - self.hi).max(self.lo - other.hi)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Canonical sorted union of pairwise-disjoint closed intervals.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct IntervalSet {
    items: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet { items: Vec::new() }
    }

    pub fn from_interval(i: Interval) -> IntervalSet {
        IntervalSet { items: vec![i] }
    }

    /// Canonicalizes an arbitrary collection of intervals.
    pub fn from_intervals(mut intervals: Vec<Interval>) -> IntervalSet {
        canonicalize(&mut intervals);
        IntervalSet { items: intervals }
    }

    pub fn items(&self) -> &[Interval] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.items.iter().map(Interval::measure).sum()
    }

    pub fn contains(&self, v: f64, tol: f64) -> bool {
        self.items.iter().any(|i| i.contains(v, tol))
    }

    /// Distance from `v` to the set (zero inside, infinite for the empty set).
    pub fn distance(&self, v: f64) -> f64 {
        self.items
            .iter()
            .map(|i| (i.lo - v).max(v - i.hi).max(0.0))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.items.clone();
        all.extend_from_slice(&other.items);
        IntervalSet::from_intervals(all)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.items.len() && j < other.items.len() {
            let a = self.items[i];
            let b = other.items[j];
            let lo = a.lo.max(b.lo);
            let hi = a.hi.min(b.hi);
            if lo <= hi {
                out.push(Interval { lo, hi });
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::from_intervals(out)
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.items {
            let mut lo = a.lo;
            let mut alive = true;
            for b in &other.items {
                if b.hi < lo {
                    continue;
                }
                if b.lo > a.hi {
                    break;
                }
                if b.lo > lo {
                    out.push(Interval { lo, hi: b.lo });
                }
                lo = lo.max(b.hi);
                if lo >= a.hi {
                    alive = false;
                    break;
                }
            }
            if alive && lo < a.hi {
                out.push(Interval { lo, hi: a.hi });
            }
        }
        IntervalSet::from_intervals(out)
    }
}

/// Sort by `lo` and chain-merge members whose gap is below [`GEOM_TOL`].
fn canonicalize(intervals: &mut Vec<Interval>) {
    intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
    let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals.drain(..) {
        match out.last_mut() {
            Some(last) if iv.lo - last.hi < GEOM_TOL => {
                last.hi = last.hi.max(iv.hi);
            }
            _ => out.push(iv),
        }
    }
    *intervals = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(pairs: &[(f64, f64)]) -> IntervalSet {
        IntervalSet::from_intervals(pairs.iter().map(|&(a, b)| Interval::new(a, b)).collect())
    }

    #[test]
    fn union_merges_overlaps() {
        let u = set(&[(0.0, 1.0)]).union(&set(&[(0.5, 2.0)]));
        assert_eq!(u.items().len(), 1);
        assert!((u.measure() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn intersection_of_disjoint_is_empty() {
        let i = set(&[(0.0, 1.0)]).intersection(&set(&[(2.0, 3.0)]));
        assert!(i.is_empty());
        assert_eq!(i.measure(), 0.0);
    }

    #[test]
    fn difference_splits() {
        let d = set(&[(0.0, 3.0)]).difference(&set(&[(1.0, 2.0)]));
        assert_eq!(d.items().len(), 2);
        assert!((d.measure() - 2.0).abs() < 1e-15);
        assert_eq!(d.items()[0], Interval::new(0.0, 1.0));
        assert_eq!(d.items()[1], Interval::new(2.0, 3.0));
    }

    #[test]
    fn sliver_gaps_are_merged() {
        let s = set(&[(0.0, 1.0), (1.0 + 0.5 * GEOM_TOL, 2.0)]);
        assert_eq!(s.items().len(), 1);
        let t = set(&[(0.0, 1.0), (1.0 + 2.0 * GEOM_TOL, 2.0)]);
        assert_eq!(t.items().len(), 2);
    }

    #[test]
    fn distance_outside_and_inside() {
        let s = set(&[(0.0, 1.0), (2.0, 3.0)]);
        assert_eq!(s.distance(0.5), 0.0);
        assert!((s.distance(1.6) - 0.4).abs() < 1e-15);
        assert!(IntervalSet::empty().distance(0.0).is_infinite());
    }

    proptest! {
        /// Canonical form does not depend on insertion order.
        #[test]
        fn canonical_form_is_order_independent(
            raw in prop::collection::vec((-100.0f64..100.0, 0.0f64..5.0), 0..24),
            seed in any::<u64>(),
        ) {
            let intervals: Vec<Interval> =
                raw.iter().map(|&(a, w)| Interval::new(a, a + w)).collect();
            let mut shuffled = intervals.clone();
            // Deterministic Fisher-Yates from the seed.
            let mut state = seed | 1;
            for i in (1..shuffled.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                shuffled.swap(i, j);
            }
            let a = IntervalSet::from_intervals(intervals);
            let b = IntervalSet::from_intervals(shuffled);
            prop_assert_eq!(a, b);
        }

        /// Union measure is subadditive and monotone.
        #[test]
        fn union_measure_subadditive(
            xs in prop::collection::vec((-10.0f64..10.0, 0.0f64..3.0), 0..8),
            ys in prop::collection::vec((-10.0f64..10.0, 0.0f64..3.0), 0..8),
        ) {
            let a = IntervalSet::from_intervals(
                xs.iter().map(|&(l, w)| Interval::new(l, l + w)).collect());
            let b = IntervalSet::from_intervals(
                ys.iter().map(|&(l, w)| Interval::new(l, l + w)).collect());
            let u = a.union(&b);
            prop_assert!(u.measure() <= a.measure() + b.measure() + 1e-9);
            prop_assert!(u.measure() + 1e-9 >= a.measure().max(b.measure()));
        }
    }
}
