//! Median, distance, intervals, gates, hulls and inseparable closures.
//!
//! A convex set `C` is stored as `σ_C`, the halfspaces containing it. Any
//! up-closed family with no complementary pair is such a `σ_C`: a halfspace
//! `j` contains `∩F` iff some `f ∈ F` has `f ≤ j`, so `σ_∩F = up(F)`.

use super::hset::{difference, intersection, star_set, union, HSet};
use super::pocset::WeightedPocset;
use super::point::Point;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::scalar::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexSet {
    sigma: HSet,
}

impl ConvexSet {
    /// Halfspaces containing the set.
    pub fn sigma(&self) -> &HSet {
        &self.sigma
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.sigma.is_subset(x)
    }

    pub fn is_subset(&self, other: &ConvexSet) -> bool {
        other.sigma.is_subset(&self.sigma)
    }

    pub fn points<W: Weight>(&self, p: &WeightedPocset<W>, budget: &Budget) -> Result<Vec<Point>> {
        if p.n_walls() > budget.max_walls {
            return Err(Error::WallBudgetExceeded {
                walls: p.n_walls(),
                cap: budget.max_walls,
            });
        }
        p.completions(&self.sigma, usize::MAX, budget.max_nodes)
    }

    /// Intersection, or `None` if the sets are disjoint.
    pub fn meet<W: Weight>(&self, other: &ConvexSet, p: &WeightedPocset<W>) -> Option<ConvexSet> {
        p.convex_from_family(&union(&self.sigma, &other.sigma)).ok()
    }
}

impl<W: Weight> WeightedPocset<W> {
    /// Intersection of the halfspaces in `family`; `EMPTY_INPUT` if empty.
    pub fn convex_from_family(&self, family: &HSet) -> Result<ConvexSet> {
        let sigma = self.up_closure(family);
        if sigma.is_disjoint(&star_set(&sigma)) {
            Ok(ConvexSet { sigma })
        } else {
            Err(Error::EmptyInput("intersection of halfspaces is empty"))
        }
    }

    pub fn whole_space(&self) -> ConvexSet {
        ConvexSet {
            sigma: self.empty_set(),
        }
    }

    pub fn singleton(&self, x: &Point) -> ConvexSet {
        ConvexSet { sigma: x.clone() }
    }

    /// Majority vote of three ultrafilters.
    pub fn median(&self, x: &Point, y: &Point, z: &Point) -> Point {
        let mut m = intersection(x, y);
        m.union_with(&intersection(y, z));
        m.union_with(&intersection(z, x));
        m
    }

    /// `ℋ(x|y)`: halfspaces containing `y` but not `x`.
    pub fn separating_points(&self, x: &Point, y: &Point) -> HSet {
        difference(y, x)
    }

    /// Total weight of walls separating `x` and `y`, each counted once.
    pub fn distance(&self, x: &Point, y: &Point) -> W {
        self.measure(&self.separating_points(x, y))
    }

    /// `ℋ(A|B) = {h : B ⊆ h, A ⊆ h*}`.
    pub fn separating(&self, a: &ConvexSet, b: &ConvexSet) -> HSet {
        intersection(&b.sigma, &star_set(&a.sigma))
    }

    /// `I(x, y)` as a convex set.
    pub fn interval_set(&self, x: &Point, y: &Point) -> ConvexSet {
        ConvexSet {
            sigma: intersection(x, y),
        }
    }

    /// Points of `I(x, y)`.
    pub fn interval(&self, x: &Point, y: &Point, budget: &Budget) -> Result<Vec<Point>> {
        self.interval_set(x, y).points(self, budget)
    }

    pub fn in_interval(&self, z: &Point, x: &Point, y: &Point) -> bool {
        intersection(x, y).is_subset(z)
    }

    /// Gate of `x` on `C`: the side containing `C` where `C` is on one side,
    /// otherwise the side containing `x`.
    pub fn gate_project(&self, c: &ConvexSet, x: &Point) -> Point {
        let mut g = c.sigma.clone();
        g.union_with(&difference(x, &star_set(&c.sigma)));
        g
    }

    /// Smallest convex set containing all of `points`.
    pub fn convex_hull(&self, points: &[Point]) -> Result<ConvexSet> {
        let (first, rest) = points
            .split_first()
            .ok_or(Error::EmptyInput("convex hull of no points"))?;
        let mut sigma = first.clone();
        for p in rest {
            sigma.intersect_with(p);
        }
        Ok(ConvexSet { sigma })
    }

    /// Union over `h, k ∈ S` of `{j : h ≤ j ≤ k}`.
    pub fn inseparable_closure(&self, set: &HSet) -> HSet {
        let mut out = self.empty_set();
        for h in set.ones() {
            for k in set.ones() {
                if self.leq(h, k) {
                    out.union_with(&intersection(self.up(h), self.down(k)));
                }
            }
        }
        out
    }

    pub fn is_inseparable(&self, set: &HSet) -> bool {
        self.inseparable_closure(set) == *set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Rational;

    fn pts(p: &WeightedPocset<Rational>) -> Vec<Point> {
        p.points(&Budget::default()).unwrap()
    }

    #[test]
    fn square_median_and_distance() {
        let p = fixtures::square();
        let ab = p.point_from_names(&["a", "b"]).unwrap();
        let abs = p.point_from_names(&["a", "b*"]).unwrap();
        let asb = p.point_from_names(&["a*", "b"]).unwrap();
        let far = p.point_from_names(&["a*", "b*"]).unwrap();
        assert_eq!(p.median(&ab, &abs, &asb), ab);
        assert_eq!(p.median(&ab, &ab, &far), ab);
        assert_eq!(p.distance(&ab, &far), Rational::from_integer(2.into()));
        assert_eq!(p.distance(&ab, &ab), Rational::from_integer(0.into()));
        assert_eq!(p.interval(&ab, &far, &Budget::default()).unwrap().len(), 4);
        assert_eq!(p.convex_hull(&[abs, asb]).unwrap(), p.whole_space());
    }

    #[test]
    fn weighted_square_distance() {
        let p = fixtures::square_weighted(
            Rational::new(3.into(), 2.into()),
            Rational::from_integer(1.into()),
        );
        let ab = p.point_from_names(&["a", "b"]).unwrap();
        let far = p.point_from_names(&["a*", "b*"]).unwrap();
        assert_eq!(p.distance(&ab, &far), Rational::new(5.into(), 2.into()));
    }

    #[test]
    fn tripod_median_separation_and_gate() {
        let p = fixtures::tripod();
        let leaf = |i: usize| p.point_from_names(&[format!("h{i}")]).unwrap();
        let center = p.point_from_names(&["h1*", "h2*", "h3*"]).unwrap();
        assert_eq!(p.median(&leaf(1), &leaf(2), &leaf(3)), center);
        let sep = p.separating(&p.singleton(&leaf(1)), &p.singleton(&leaf(2)));
        assert_eq!(p.names_of(&sep), vec!["h1*", "h2"]);
        let c = p.convex_hull(&[center.clone(), leaf(1)]).unwrap();
        assert_eq!(p.gate_project(&c, &leaf(2)), center);
        for x in pts(&p) {
            if c.contains(&x) {
                assert_eq!(p.gate_project(&c, &x), x);
            }
        }
    }

    #[test]
    fn path_interval_and_closure() {
        let p = fixtures::path3();
        let all = pts(&p);
        let (lo, hi) = (&all[0], &all[all.len() - 1]);
        assert_eq!(p.interval(lo, hi, &Budget::default()).unwrap().len(), 4);
        let s = p.set_of([p.id("h1").unwrap(), p.id("h3").unwrap()]);
        assert_eq!(
            p.names_of(&p.inseparable_closure(&s)),
            vec!["h1", "h2", "h3"]
        );
        assert!(p.inseparable_closure(&p.empty_set()).is_clear());
        let one = p.set_of([p.id("h2").unwrap()]);
        assert_eq!(p.inseparable_closure(&one), one);
    }

    #[test]
    fn empty_inputs() {
        let p = fixtures::square();
        assert_eq!(p.convex_hull(&[]).unwrap_err().code(), "EMPTY_INPUT");
        let bad = p.set_of([p.id("a").unwrap(), p.id("a*").unwrap()]);
        assert_eq!(
            p.convex_from_family(&bad).unwrap_err().code(),
            "EMPTY_INPUT"
        );
    }
}
