//! Transversality, rank, product decomposition and automorphisms.

pub mod automorphism;
pub mod clique;

use std::collections::HashSet;

pub use automorphism::{Automorphism, FiniteGroup};

use crate::budget::Budget;
use crate::core::{star, wall_of, Halfspace, PocsetBuilder, WallIx, WeightedPocset};
use crate::error::{Error, Result};
use crate::scalar::Weight;

/// Factors of a pocset and where each parent halfspace went.
#[derive(Debug, Clone)]
pub struct Decomposition<W> {
    pub factors: Vec<WeightedPocset<W>>,
    /// Parent halfspace to (factor index, factor halfspace).
    pub assignment: Vec<(usize, Halfspace)>,
    /// Parent walls of each factor, ascending.
    pub factor_walls: Vec<Vec<WallIx>>,
}

impl<W: Weight> Decomposition<W> {
    /// Factor containing parent halfspace `h`.
    pub fn factor_of(&self, h: Halfspace) -> usize {
        self.assignment[h].0
    }

    /// Restriction of a parent point to factor `i`.
    pub fn project(&self, x: &crate::core::Point, i: usize) -> crate::core::Point {
        let mut out = crate::core::HSet::with_capacity(self.factors[i].n_halfspaces());
        for h in x.ones() {
            let (f, fh) = self.assignment[h];
            if f == i {
                out.insert(fh);
            }
        }
        out
    }
}

impl<W: Weight> WeightedPocset<W> {
    /// All four of `{h, h*} × {k, k*}` incomparable.
    pub fn transverse(&self, h: Halfspace, k: Halfspace) -> bool {
        if wall_of(h) == wall_of(k) {
            return false;
        }
        [h, star(h)].iter().all(|&a| {
            [k, star(k)]
                .iter()
                .all(|&b| !self.leq(a, b) && !self.leq(b, a))
        })
    }

    pub fn walls_transverse(&self, a: WallIx, b: WallIx) -> bool {
        self.transverse(2 * a, 2 * b)
    }

    /// Walls in a lexicographically least maximum pairwise-transverse family.
    pub fn max_transverse_family(&self, budget: &Budget) -> Result<Vec<WallIx>> {
        let n = self.n_walls();
        if n == 0 {
            return Ok(Vec::new());
        }
        let active: Vec<WallIx> = (0..n)
            .filter(|&a| (0..n).any(|b| self.walls_transverse(a, b)))
            .collect();
        if active.is_empty() {
            return Ok(vec![0]);
        }
        if active.len() > budget.max_clique_walls.min(64) {
            return Err(Error::WallBudgetExceeded {
                walls: active.len(),
                cap: budget.max_clique_walls.min(64),
            });
        }
        let mut g = clique::Graph::new(active.len());
        for i in 0..active.len() {
            for j in (i + 1)..active.len() {
                if self.walls_transverse(active[i], active[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g.max_clique().into_iter().map(|i| active[i]).collect())
    }

    /// Maximum size of a pairwise-transverse family of halfspaces.
    pub fn rank(&self, budget: &Budget) -> Result<usize> {
        Ok(self.max_transverse_family(budget)?.len())
    }

    /// Connected components of the non-transversality graph on walls.
    pub fn decompose(&self) -> Result<Decomposition<W>> {
        let n = self.n_walls();
        if n == 0 {
            return Err(Error::EmptyInput("decomposition of a pocset without walls"));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if !self.walls_transverse(a, b) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let mut factor_walls: Vec<Vec<WallIx>> = Vec::new();
        let mut root_to_factor = vec![usize::MAX; n];
        for w in 0..n {
            let r = find(&mut parent, w);
            if root_to_factor[r] == usize::MAX {
                root_to_factor[r] = factor_walls.len();
                factor_walls.push(Vec::new());
            }
            factor_walls[root_to_factor[r]].push(w);
        }
        let mut assignment = vec![(0, 0); self.n_halfspaces()];
        let mut factors = Vec::with_capacity(factor_walls.len());
        for (f, walls) in factor_walls.iter().enumerate() {
            let mut b = PocsetBuilder::new();
            for (i, &w) in walls.iter().enumerate() {
                let wall = self.wall(w);
                b.add_wall(&wall.id, &wall.pos, &wall.neg, wall.weight.clone());
                assignment[2 * w] = (f, 2 * i);
                assignment[2 * w + 1] = (f, 2 * i + 1);
            }
            for &w in walls {
                for &v in walls {
                    for h in [2 * w, 2 * w + 1] {
                        for k in [2 * v, 2 * v + 1] {
                            if h != k && self.leq(h, k) {
                                b.add_leq(self.name(h), self.name(k));
                            }
                        }
                    }
                }
            }
            let factor = b.build().map_err(|r| {
                Error::Invalid(format!("factor {f} failed validation: {:?}", r.kinds()))
            })?;
            factors.push(factor);
        }
        Ok(Decomposition {
            factors,
            assignment,
            factor_walls,
        })
    }

    pub fn is_irreducible(&self) -> bool {
        self.decompose()
            .map(|d| d.factors.len() == 1)
            .unwrap_or(true)
    }

    /// Induced permutation of factors: factor `i` goes to `perm[i]`.
    pub fn factor_permutation(&self, d: &Decomposition<W>, g: &Automorphism) -> Result<Vec<usize>> {
        self.check_automorphism(g)?;
        let mut perm = Vec::with_capacity(d.factors.len());
        for (i, walls) in d.factor_walls.iter().enumerate() {
            let targets: HashSet<usize> =
                walls.iter().map(|&w| d.factor_of(g.apply(2 * w))).collect();
            let target = match targets.len() {
                1 => *targets.iter().next().expect("one target"),
                _ => {
                    return Err(Error::NotAnAutomorphism(format!(
                        "{} splits factor {i}",
                        g.name
                    )))
                }
            };
            if d.factor_walls[target].len() != walls.len() {
                return Err(Error::NotAnAutomorphism(format!(
                    "{} maps factor {i} into a factor of another size",
                    g.name
                )));
            }
            perm.push(target);
        }
        Ok(perm)
    }
}

/// Product space: disjoint union of halfspaces, every cross pair transverse.
/// Names that collide across factors get an `f<i>.` prefix.
pub fn product<W: Weight>(factors: &[&WeightedPocset<W>]) -> WeightedPocset<W> {
    let (mut ids, mut sides) = (HashSet::new(), HashSet::new());
    let mut collide = false;
    for p in factors {
        for w in p.walls() {
            collide |= !ids.insert(w.id.as_str());
            collide |= !sides.insert(w.pos.as_str());
            collide |= !sides.insert(w.neg.as_str());
        }
    }
    let prefix = |i: usize, s: &str| {
        if collide {
            format!("f{i}.{s}")
        } else {
            s.to_string()
        }
    };
    let mut b = PocsetBuilder::new();
    for (i, p) in factors.iter().enumerate() {
        for w in p.walls() {
            b.add_wall(
                &prefix(i, &w.id),
                &prefix(i, &w.pos),
                &prefix(i, &w.neg),
                w.weight.clone(),
            );
        }
        for (h, k) in p.cover_pairs() {
            b.add_leq(&prefix(i, p.name(h)), &prefix(i, p.name(k)));
        }
    }
    b.build().expect("a product of valid pocsets is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn transversality_on_fixtures() {
        let s = fixtures::square();
        assert!(s.transverse(s.id("a").unwrap(), s.id("b").unwrap()));
        assert!(!s.transverse(0, 0));
        let p = fixtures::path3();
        assert!(!p.transverse(p.id("h1").unwrap(), p.id("h2").unwrap()));
    }

    #[test]
    fn ranks() {
        let b = Budget::default();
        assert_eq!(
            WeightedPocset::<crate::Rational>::empty().rank(&b).unwrap(),
            0
        );
        assert_eq!(fixtures::square().rank(&b).unwrap(), 2);
        assert_eq!(fixtures::grid().rank(&b).unwrap(), 2);
        assert_eq!(fixtures::tripod().rank(&b).unwrap(), 1);
        assert_eq!(fixtures::path3().rank(&b).unwrap(), 1);
    }

    #[test]
    fn decompositions() {
        assert_eq!(fixtures::square().decompose().unwrap().factors.len(), 2);
        assert_eq!(fixtures::tripod().decompose().unwrap().factors.len(), 1);
        let d = fixtures::grid().decompose().unwrap();
        assert_eq!(d.factors.len(), 2);
        assert!(d.factors.iter().all(|f| f.n_walls() == 3));
    }

    #[test]
    fn factor_permutations() {
        let p = fixtures::square();
        let d = p.decompose().unwrap();
        let auts = p.automorphisms(&Budget::default()).unwrap();
        assert_eq!(p.factor_permutation(&d, &auts[0]).unwrap(), vec![0, 1]);
        let swap = auts.iter().find(|g| g.apply(0) == 2).unwrap();
        assert_eq!(p.factor_permutation(&d, swap).unwrap(), vec![1, 0]);
        let g = fixtures::grid();
        let dg = g.decompose().unwrap();
        let refl = g
            .automorphisms(&Budget::default())
            .unwrap()
            .into_iter()
            .find(|a| {
                !a.is_identity() && dg.factor_walls[0].iter().all(|&w| a.apply(2 * w) == 2 * w)
            })
            .unwrap();
        assert_eq!(g.factor_permutation(&dg, &refl).unwrap(), vec![0, 1]);
    }

    #[test]
    fn product_of_paths_is_grid() {
        let p = fixtures::path3();
        let q = product(&[&p, &p]);
        assert_eq!(q.n_walls(), 6);
        assert_eq!(q.points(&Budget::default()).unwrap().len(), 16);
        assert_eq!(q.rank(&Budget::default()).unwrap(), 2);
    }
}
