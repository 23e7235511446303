//! Ultrafilters (points) by wall-by-wall backtracking.
//!
//! State is an up-closed set `σ` with `σ ∩ σ* = ∅`. Adding `h` is legal iff
//! `up(h) ∩ σ* = ∅`; when it is not, `h* ∈ σ` already, so the search never
//! dead-ends on a valid pocset.

use super::hset::{star_set, HSet};
use super::pocset::{star, Halfspace, WeightedPocset};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::scalar::Weight;

/// A point, stored as the set of halfspaces containing it.
pub type Point = HSet;

struct Search<'a, W> {
    pocset: &'a WeightedPocset<W>,
    out: Vec<Point>,
    limit: usize,
    nodes: u64,
    node_budget: u64,
}

impl<W: Weight> Search<'_, W> {
    fn run(&mut self, sigma: &mut HSet, forbidden: &mut HSet, wall: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(Error::NodeBudgetExceeded(self.node_budget));
        }
        let n = self.pocset.n_walls();
        let mut w = wall;
        while w < n && (sigma.contains(2 * w) || sigma.contains(2 * w + 1)) {
            w += 1;
        }
        if w == n {
            self.out.push(sigma.clone());
            return Ok(());
        }
        for h in [2 * w, 2 * w + 1] {
            if self.out.len() >= self.limit {
                return Ok(());
            }
            let up = self.pocset.up(h);
            if !up.is_disjoint(forbidden) {
                continue;
            }
            let (saved_s, saved_f) = (sigma.clone(), forbidden.clone());
            sigma.union_with(up);
            forbidden.union_with(&star_set(up));
            self.run(sigma, forbidden, w + 1)?;
            *sigma = saved_s;
            *forbidden = saved_f;
        }
        Ok(())
    }
}

impl<W: Weight> WeightedPocset<W> {
    /// Up-closure of a family of halfspaces.
    pub fn up_closure(&self, family: &HSet) -> HSet {
        let mut out = self.empty_set();
        for h in family.ones() {
            out.union_with(self.up(h));
        }
        out
    }

    /// True when the up-closure of `family` contains no complementary pair,
    /// i.e. the halfspaces have a common point.
    pub fn consistent(&self, family: &HSet) -> bool {
        let up = self.up_closure(family);
        up.is_disjoint(&star_set(&up))
    }

    /// Points containing every halfspace of `forced`, in deterministic order,
    /// at most `limit` of them. No wall cap; `node_budget` bounds the work.
    pub fn completions(&self, forced: &HSet, limit: usize, node_budget: u64) -> Result<Vec<Point>> {
        let mut sigma = self.up_closure(forced);
        let mut forbidden = star_set(&sigma);
        if !sigma.is_disjoint(&forbidden) {
            return Ok(Vec::new());
        }
        let mut search = Search {
            pocset: self,
            out: Vec::new(),
            limit,
            nodes: 0,
            node_budget,
        };
        search.run(&mut sigma, &mut forbidden, 0)?;
        Ok(search.out)
    }

    /// The unique point containing `forced`, if `forced` pins every wall.
    pub fn unique_completion(&self, forced: &HSet, node_budget: u64) -> Result<Option<Point>> {
        let mut found = self.completions(forced, 2, node_budget)?;
        Ok(if found.len() == 1 { found.pop() } else { None })
    }

    /// All points, subject to the enumeration wall cap.
    pub fn points(&self, budget: &Budget) -> Result<Vec<Point>> {
        if self.n_walls() > budget.max_walls {
            return Err(Error::WallBudgetExceeded {
                walls: self.n_walls(),
                cap: budget.max_walls,
            });
        }
        self.completions(&self.empty_set(), usize::MAX, budget.max_nodes)
    }

    pub(crate) fn points_unbounded(&self) -> Result<Vec<Point>> {
        self.completions(&self.empty_set(), usize::MAX, u64::MAX)
    }

    /// One side of every wall, up-closed.
    pub fn is_point(&self, sigma: &HSet) -> bool {
        if sigma.len() != self.n_halfspaces() {
            return false;
        }
        (0..self.n_walls()).all(|w| sigma.contains(2 * w) != sigma.contains(2 * w + 1))
            && sigma.ones().all(|h| self.up(h).is_subset(sigma))
    }

    /// Point from halfspace names; every wall must be pinned.
    pub fn point_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Point> {
        let mut forced = self.empty_set();
        for n in names {
            forced.insert(self.require(n.as_ref())?);
        }
        let sigma = self.up_closure(&forced);
        if self.is_point(&sigma) {
            Ok(sigma)
        } else {
            Err(Error::Invalid(format!(
                "{:?} does not determine a point",
                self.names_of(&forced)
            )))
        }
    }

    /// Minimal elements of `sigma`: its halfspaces with nothing smaller in `sigma`.
    pub fn minimal_elements(&self, sigma: &HSet) -> HSet {
        let mut out = self.empty_set();
        for h in sigma.ones() {
            if self.down(h).ones().all(|k| k == h || !sigma.contains(k)) {
                out.insert(h);
            }
        }
        out
    }

    /// Short form of a point: its minimal halfspaces.
    pub fn describe(&self, sigma: &HSet) -> Vec<String> {
        self.names_of(&self.minimal_elements(sigma))
    }

    /// Side of wall `w` containing `sigma`.
    pub fn side(&self, sigma: &HSet, w: usize) -> Halfspace {
        if sigma.contains(2 * w) {
            2 * w
        } else {
            star(2 * w)
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    #[test]
    fn fixture_point_counts() {
        let b = crate::budget::Budget::default();
        assert_eq!(fixtures::square().points(&b).unwrap().len(), 4);
        assert_eq!(fixtures::path3().points(&b).unwrap().len(), 4);
        assert_eq!(fixtures::tripod().points(&b).unwrap().len(), 4);
        assert_eq!(fixtures::grid().points(&b).unwrap().len(), 16);
    }

    #[test]
    fn wall_cap_is_enforced() {
        let b = crate::budget::Budget::default().with_walls(1);
        let err = fixtures::square().points(&b).unwrap_err();
        assert_eq!(err.code(), "WALL_BUDGET_EXCEEDED");
    }

    #[test]
    fn completions_respect_forced_sides() {
        let p = fixtures::path3();
        let h2 = p.id("h2").unwrap();
        let pts = p.completions(&p.set_of([h2]), usize::MAX, 1000).unwrap();
        // h2 forces h1; h3 is free.
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|x| p.is_point(x) && x.contains(h2)));
    }
}
