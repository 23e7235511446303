//! Point orbits of total actions.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::action::Action;
use super::word::Word;
use crate::budget::Budget;
use crate::core::{Point, WeightedPocset};
use crate::error::{Error, Result};
use crate::scalar::Weight;
use crate::structure::Automorphism;

#[derive(Debug, Clone)]
pub struct OrbitReport {
    /// Breadth-first from its first point in enumeration order.
    pub orbit: Vec<Point>,
    pub size: usize,
    /// `2^rank`.
    pub bound: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSummary {
    pub orbit: Vec<Vec<String>>,
    pub size: usize,
    pub bound: usize,
}

impl OrbitReport {
    pub fn summary<W: Weight>(&self, p: &WeightedPocset<W>) -> OrbitSummary {
        OrbitSummary {
            orbit: self.orbit.iter().map(|x| p.describe(x)).collect(),
            size: self.size,
            bound: self.bound,
        }
    }
}

/// Orbit of `x` under a list of maps closed enough to generate the group.
pub fn orbit_under(maps: &[Automorphism], x: &Point) -> Vec<Point> {
    let mut seen = HashSet::from([x.clone()]);
    let mut out = vec![x.clone()];
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for g in maps {
            let z = g.apply_set(&y);
            if seen.insert(z.clone()) {
                out.push(z.clone());
                queue.push_back(z);
            }
        }
    }
    out
}

/// Partition of `points` into orbits, in order of first appearance.
pub fn orbits_under(maps: &[Automorphism], points: &[Point]) -> Vec<Vec<Point>> {
    let mut done: HashSet<Point> = HashSet::new();
    let mut out = Vec::new();
    for x in points {
        if done.contains(x) {
            continue;
        }
        let orbit = orbit_under(maps, x);
        done.extend(orbit.iter().cloned());
        out.push(orbit);
    }
    out
}

/// Smallest orbit, earliest in enumeration order on ties.
pub fn min_orbit_under<W: Weight>(
    p: &WeightedPocset<W>,
    maps: &[Automorphism],
    budget: &Budget,
) -> Result<OrbitReport> {
    let points = p.points(budget)?;
    let orbits = orbits_under(maps, &points);
    let best = orbits
        .into_iter()
        .min_by_key(|o| o.len())
        .ok_or(Error::EmptyInput("space without points"))?;
    let rank = p.rank(budget)?;
    Ok(OrbitReport {
        size: best.len(),
        orbit: best,
        bound: 1usize << rank.min(63),
    })
}

impl<W: Weight> Action<W> {
    pub fn total_generators(&self) -> Result<Vec<Automorphism>> {
        self.generators()
            .iter()
            .map(|g| {
                g.to_automorphism()
                    .ok_or_else(|| Error::Invalid(format!("generator {} is partial", g.name)))
            })
            .collect()
    }

    /// A minimum-size point orbit of a total action.
    pub fn min_orbit(&self, budget: &Budget) -> Result<OrbitReport> {
        let gens = self.total_generators()?;
        min_orbit_under(self.pocset(), &gens, budget)
    }

    /// Fixed points of all generators.
    pub fn fixed_points(&self, budget: &Budget) -> Result<Vec<Point>> {
        let gens = self.total_generators()?;
        Ok(self
            .pocset()
            .points(budget)?
            .into_iter()
            .filter(|x| gens.iter().all(|g| g.apply_set(x) == *x))
            .collect())
    }

    /// An orbit of size at most `2^rank` read off the canonical cube at a
    /// fixed point of the lifted action on the subdivision.
    pub fn orbit_via_subdivision(&self, budget: &Budget) -> Result<OrbitReport> {
        let gens = self.total_generators()?;
        let p = self.pocset();
        let sub = p.subdivide();
        let lifted = gens
            .iter()
            .map(|g| sub.lift(g))
            .collect::<Result<Vec<_>>>()?;
        let child_budget = budget.with_walls(budget.max_walls.max(2 * p.n_walls()));
        let fixed = sub
            .child
            .points(&child_budget)?
            .into_iter()
            .find(|y| lifted.iter().all(|g| g.apply_set(y) == *y))
            .ok_or_else(|| Error::Invalid("lifted action has no fixed point".into()))?;
        let start = match sub.preimage(&fixed) {
            Some(x) => x,
            None => sub.cube_at(&fixed)?.vertices.swap_remove(0),
        };
        let orbit = orbit_under(&gens, &start);
        let rank = p.rank(budget)?;
        Ok(OrbitReport {
            size: orbit.len(),
            orbit,
            bound: 1usize << rank.min(63),
        })
    }

    /// Distance moved by `w` at `x`.
    pub fn displacement(&self, w: &Word, x: &Point) -> Result<W> {
        let y = self.act_point(w, x)?;
        Ok(self.pocset().distance(x, &y))
    }
}

#[cfg(test)]
mod tests {
    use crate::actions::Action;
    use crate::budget::Budget;
    use crate::fixtures;

    #[test]
    fn square_dihedral_orbit_is_four() {
        let b = Budget::default();
        let p = fixtures::square();
        let all = p.automorphisms(&b).unwrap();
        let act = Action::from_automorphisms(p, &all[1..]).unwrap();
        let r = act.min_orbit(&b).unwrap();
        assert_eq!((r.size, r.bound), (4, 4));
    }

    #[test]
    fn identity_and_tripod_rotation_fix_points() {
        let b = Budget::default();
        let p = fixtures::square();
        let id = p.automorphisms(&b).unwrap()[0].clone();
        let act = Action::from_automorphisms(p, &[id]).unwrap();
        assert_eq!(act.min_orbit(&b).unwrap().size, 1);
        let t = fixtures::tripod_rotation_action();
        let r = t.min_orbit(&b).unwrap();
        assert_eq!(r.size, 1);
        assert_eq!(t.pocset().describe(&r.orbit[0]), vec!["h1*", "h2*", "h3*"]);
    }

    #[test]
    fn subdivision_witness_respects_the_bound() {
        let b = Budget::default();
        for p in [
            fixtures::square(),
            fixtures::one_wall(),
            fixtures::grid(),
            fixtures::tripod(),
        ] {
            let all = p.automorphisms(&b).unwrap();
            let act = Action::from_automorphisms(p, &all).unwrap();
            let r = act.orbit_via_subdivision(&b).unwrap();
            assert!(r.size <= r.bound);
            assert!(r.size >= act.min_orbit(&b).unwrap().size);
        }
    }
}
