//! Barycentric subdivision: every wall splits in two.
//!
//! Parent halfspace `a` has children `a-` ⊊ `a+`, with `(a-)* = (a*)+` and
//! `(a+)* = (a*)-`; each child wall weighs half its parent. Points of the
//! parent embed by `σ ↦ p⁻¹σ`. A child point outside the image has, for
//! some parent walls, both `a+` and `(a*)+`: it sits in the middle of them.

use crate::actions::{Action, PartialMap};
use crate::budget::Budget;
use crate::core::{star, wall_of, Halfspace, PocsetBuilder, Point, WallIx, WeightedPocset};
use crate::error::{Error, Result};
use crate::scalar::Weight;
use crate::structure::Automorphism;

#[derive(Debug, Clone)]
pub struct Subdivision<W> {
    pub parent: WeightedPocset<W>,
    pub child: WeightedPocset<W>,
    /// `p`: child halfspace to parent halfspace.
    pub projection: Vec<Halfspace>,
    /// Parent halfspace `a` to child `a-`.
    pub minus: Vec<Halfspace>,
    /// Parent halfspace `a` to child `a+`.
    pub plus: Vec<Halfspace>,
}

/// Canonical cube at a new point of the subdivision.
#[derive(Debug, Clone)]
pub struct CubeAt {
    /// Parent walls the point sits in the middle of.
    pub middle_walls: Vec<WallIx>,
    /// `ι`: vertices `{-1, 1}^k` in binary order, as parent points.
    pub vertices: Vec<Point>,
    /// `ι̂`: `{-1, 0, 1}^k` in ternary order, as child points.
    pub cube: Vec<Point>,
}

impl<W: Weight> Subdivision<W> {
    pub fn new(parent: &WeightedPocset<W>) -> Subdivision<W> {
        let mut b = PocsetBuilder::new();
        for w in parent.walls() {
            let half = w.weight.half();
            b.add_wall(
                &format!("{}+", w.id),
                &format!("{}+", w.pos),
                &format!("{}-", w.neg),
                half.clone(),
            );
            b.add_wall(
                &format!("{}-", w.id),
                &format!("{}-", w.pos),
                &format!("{}+", w.neg),
                half,
            );
        }
        let n = parent.n_halfspaces();
        for a in 0..n {
            let (am, ap) = (
                format!("{}-", parent.name(a)),
                format!("{}+", parent.name(a)),
            );
            b.add_leq(&am, &ap);
            for k in parent.up(a).ones().filter(|&k| k != a) {
                for s in ["-", "+"] {
                    for t in ["-", "+"] {
                        b.add_leq(
                            &format!("{}{s}", parent.name(a)),
                            &format!("{}{t}", parent.name(k)),
                        );
                    }
                }
            }
        }
        let child = b.build().expect("subdivision of a valid pocset is valid");
        let mut minus = vec![0; n];
        let mut plus = vec![0; n];
        let mut projection = vec![0; 2 * n];
        for a in 0..n {
            minus[a] = child.id(&format!("{}-", parent.name(a))).expect("child");
            plus[a] = child.id(&format!("{}+", parent.name(a))).expect("child");
            projection[minus[a]] = a;
            projection[plus[a]] = a;
        }
        Subdivision {
            parent: parent.clone(),
            child,
            projection,
            minus,
            plus,
        }
    }

    /// `σ ↦ p⁻¹σ`.
    pub fn embed(&self, x: &Point) -> Point {
        let mut out = self.child.empty_set();
        for a in x.ones() {
            out.insert(self.minus[a]);
            out.insert(self.plus[a]);
        }
        out
    }

    /// The parent point mapping to `y`, if `y` is in the image.
    pub fn preimage(&self, y: &Point) -> Option<Point> {
        let mut x = self.parent.empty_set();
        for a in 0..self.parent.n_halfspaces() {
            if y.contains(self.minus[a]) {
                x.insert(a);
            }
        }
        (self.embed(&x) == *y).then_some(x)
    }

    pub fn is_new_point(&self, y: &Point) -> bool {
        self.preimage(y).is_none()
    }

    /// `g′(a±) = (g a)±`.
    pub fn lift(&self, g: &Automorphism) -> Result<Automorphism> {
        self.parent.check_automorphism(g)?;
        let mut map = vec![0; self.child.n_halfspaces()];
        for a in 0..self.parent.n_halfspaces() {
            map[self.minus[a]] = self.minus[g.apply(a)];
            map[self.plus[a]] = self.plus[g.apply(a)];
        }
        let lifted = Automorphism {
            name: format!("{}'", g.name),
            map,
        };
        self.child.check_automorphism(&lifted)?;
        Ok(lifted)
    }

    /// Lift of a partial map, defined where the parent map is.
    pub fn lift_partial(&self, g: &PartialMap) -> PartialMap {
        let mut image = vec![None; self.child.n_halfspaces()];
        for a in 0..self.parent.n_halfspaces() {
            if let Some(ga) = g.image[a] {
                image[self.minus[a]] = Some(self.minus[ga]);
                image[self.plus[a]] = Some(self.plus[ga]);
            }
        }
        PartialMap {
            name: format!("{}'", g.name),
            image,
        }
    }

    pub fn lift_action(&self, action: &Action<W>) -> Result<Action<W>> {
        let gens = action
            .generators()
            .iter()
            .map(|g| self.lift_partial(g))
            .collect();
        Action::new(self.child.clone(), gens)
    }

    /// Parent walls with both `a+` and `(a*)+` in `y`.
    pub fn middle_walls(&self, y: &Point) -> Vec<WallIx> {
        (0..self.parent.n_walls())
            .filter(|&w| y.contains(self.plus[2 * w]) && y.contains(self.plus[2 * w + 1]))
            .collect()
    }

    /// Canonical cube maps at a new point.
    pub fn cube_at(&self, y: &Point) -> Result<CubeAt> {
        if !self.child.is_point(y) {
            return Err(Error::Invalid("not a point of the subdivision".into()));
        }
        let middle = self.middle_walls(y);
        if middle.is_empty() {
            return Err(Error::NotANewPoint);
        }
        let k = middle.len();
        // Sides of the remaining walls, read off from y.
        let mut base = self.parent.empty_set();
        for w in 0..self.parent.n_walls() {
            if middle.contains(&w) {
                continue;
            }
            let a = 2 * w;
            base.insert(if y.contains(self.minus[a]) {
                a
            } else {
                star(a)
            });
        }
        let mut vertices = Vec::with_capacity(1 << k);
        for mask in 0..(1usize << k) {
            let mut x = base.clone();
            for (i, &w) in middle.iter().enumerate() {
                x.insert(if mask >> i & 1 == 1 { 2 * w } else { 2 * w + 1 });
            }
            if !self.parent.is_point(&x) {
                return Err(Error::Invalid("cube vertex is not a point".into()));
            }
            vertices.push(x);
        }
        let mut cube = Vec::with_capacity(3usize.pow(k as u32));
        for code in 0..3usize.pow(k as u32) {
            let mut z = self.embed(&base);
            let mut c = code;
            for &w in &middle {
                let a = 2 * w;
                match c % 3 {
                    0 => {
                        z.insert(self.minus[star(a)]);
                        z.insert(self.plus[star(a)]);
                    }
                    1 => {
                        z.insert(self.plus[a]);
                        z.insert(self.plus[star(a)]);
                    }
                    _ => {
                        z.insert(self.minus[a]);
                        z.insert(self.plus[a]);
                    }
                }
                c /= 3;
            }
            if !self.child.is_point(&z) {
                return Err(Error::Invalid(
                    "subdivided cube point is not a point".into(),
                ));
            }
            cube.push(z);
        }
        Ok(CubeAt {
            middle_walls: middle,
            vertices,
            cube,
        })
    }

    /// `ι̂(0, ..., 0)` index in [`CubeAt::cube`].
    pub fn cube_center_index(k: usize) -> usize {
        (0..k).map(|i| 3usize.pow(i as u32)).sum()
    }
}

impl<W: Weight> WeightedPocset<W> {
    pub fn subdivide(&self) -> Subdivision<W> {
        Subdivision::new(self)
    }
}

/// Iterated subdivisions `X_0, ..., X_n`.
#[derive(Debug, Clone)]
pub struct Tower<W> {
    pub stages: Vec<WeightedPocset<W>>,
    pub steps: Vec<Subdivision<W>>,
}

impl<W: Weight> Tower<W> {
    /// Image of a stage-0 point in stage `k`.
    pub fn embed(&self, x: &Point, k: usize) -> Point {
        self.steps[..k]
            .iter()
            .fold(x.clone(), |acc, s| s.embed(&acc))
    }
}

pub fn tower<W: Weight>(p: &WeightedPocset<W>, n: usize, budget: &Budget) -> Result<Tower<W>> {
    let walls = p
        .n_walls()
        .saturating_mul(1usize.checked_shl(n as u32).unwrap_or(usize::MAX));
    if n >= usize::BITS as usize || walls > budget.max_tower_walls {
        return Err(Error::WallBudgetExceeded {
            walls,
            cap: budget.max_tower_walls,
        });
    }
    let mut stages = vec![p.clone()];
    let mut steps = Vec::with_capacity(n);
    for _ in 0..n {
        let s = Subdivision::new(stages.last().expect("stage"));
        stages.push(s.child.clone());
        steps.push(s);
    }
    Ok(Tower { stages, steps })
}

/// Wall of the parent underlying a child halfspace.
pub fn parent_wall<W: Weight>(s: &Subdivision<W>, child_h: Halfspace) -> WallIx {
    wall_of(s.projection[child_h])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn one_wall_subdivides_to_three_points() {
        let b = Budget::default();
        let s = fixtures::one_wall().subdivide();
        assert_eq!(s.child.n_walls(), 2);
        assert!(s.child.walls().iter().all(|w| w.weight == q(1, 2)));
        let pts = s.child.points(&b).unwrap();
        assert_eq!(pts.len(), 3);
        let mid: Vec<_> = pts.iter().filter(|y| s.is_new_point(y)).collect();
        assert_eq!(mid.len(), 1);
        let cube = s.cube_at(mid[0]).unwrap();
        assert_eq!(cube.middle_walls.len(), 1);
        assert_eq!(cube.cube.len(), 3);
        assert_eq!(
            &cube.cube[Subdivision::<Rational>::cube_center_index(1)],
            mid[0]
        );
    }

    #[test]
    fn square_subdivision() {
        let b = Budget::default();
        let p = fixtures::square();
        let s = p.subdivide();
        let pts = s.child.points(&b).unwrap();
        assert_eq!(pts.len(), 9);
        let ks: Vec<usize> = pts
            .iter()
            .filter(|y| s.is_new_point(y))
            .map(|y| s.cube_at(y).unwrap().middle_walls.len())
            .collect();
        assert_eq!(ks.iter().filter(|&&k| k == 2).count(), 1);
        assert_eq!(ks.iter().filter(|&&k| k == 1).count(), 4);
        let old = s.embed(&p.points(&b).unwrap()[0]);
        assert_eq!(s.cube_at(&old).unwrap_err().code(), "NOT_A_NEW_POINT");
        let center = pts.iter().find(|y| s.middle_walls(y).len() == 2).unwrap();
        assert_eq!(s.cube_at(center).unwrap().vertices.len(), 4);
    }

    #[test]
    fn lift_removes_inversions() {
        let p = fixtures::one_wall();
        let s = p.subdivide();
        let swap = Automorphism {
            name: "r".into(),
            map: vec![1, 0],
        };
        assert_eq!(swap.wall_inversions(), vec![0]);
        let lifted = s.lift(&swap).unwrap();
        assert!(lifted.wall_inversions().is_empty());
        let mid = s
            .child
            .points(&Budget::default())
            .unwrap()
            .into_iter()
            .find(|y| s.is_new_point(y))
            .unwrap();
        assert_eq!(lifted.apply_set(&mid), mid);
    }

    #[test]
    fn tower_depth_two() {
        let t = tower(&fixtures::one_wall(), 2, &Budget::default()).unwrap();
        assert_eq!(t.stages.len(), 3);
        let last = &t.stages[2];
        assert_eq!(last.points(&Budget::default()).unwrap().len(), 5);
        assert!(last.walls().iter().all(|w| w.weight == q(1, 4)));
        assert_eq!(
            tower(&fixtures::one_wall(), 0, &Budget::default())
                .unwrap()
                .stages
                .len(),
            1
        );
        let small = Budget {
            max_tower_walls: 3,
            ..Budget::default()
        };
        assert_eq!(
            tower(&fixtures::one_wall(), 2, &small).unwrap_err().code(),
            "WALL_BUDGET_EXCEEDED"
        );
    }
}
