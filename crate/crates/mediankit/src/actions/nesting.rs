//! Nested halfspace pairs `g h ⊊ h` from a word of large displacement.
//!
//! With `g = s_1 ... s_n`, `g_j = s_1 ... s_j` and `x_j = g_j x`, the points
//! `y_0 = x`, `y_{j+1} = gate of x_{j+1} on I(y_j, g x)` form a geodesic from
//! `x` to `g x`. Each `U_j = g_j⁻¹ ℋ(y_j | y_{j+1})` lies in the union of the
//! `ℋ(x | s x)`, so once `d(x, g x) > r · Σ d(x, s x)` some halfspace lies in
//! `r + 1` of the `U_j`; two of its translates are nested.

use serde::Serialize;

use super::action::Action;
use super::word::Word;
use crate::budget::Budget;
use crate::core::{HSet, Halfspace, Point};
use crate::error::{Error, Result};
use crate::scalar::Weight;

#[derive(Debug, Clone)]
pub struct NestedPair<W> {
    pub word: Word,
    pub halfspace: Halfspace,
    pub image: Halfspace,
    pub displacement: W,
    pub bound: W,
    /// The geodesic `y_0, ..., y_n`.
    pub geodesic: Vec<Point>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NestedSummary {
    pub word: String,
    pub halfspace: String,
    pub image: String,
    pub displacement: String,
    pub bound: String,
}

impl<W: Weight> Action<W> {
    pub fn find_nested(&self, x: &Point, g: &Word, budget: &Budget) -> Result<NestedPair<W>> {
        let p = self.pocset();
        let r = p.rank(budget)?;
        let mut letters: Vec<usize> = g.0.clone();
        letters.sort_unstable();
        letters.dedup();
        let mut step_sum = W::zero();
        for &l in &letters {
            step_sum = step_sum + self.displacement(&Word::letter(l), x)?;
        }
        let gx = self.act_point(g, x)?;
        let displacement = p.distance(x, &gx);
        let bound = (0..r).fold(W::zero(), |acc, _| acc + step_sum.clone());
        if !(displacement > bound) {
            return Err(Error::DisplacementTooSmall {
                displacement: displacement.render(),
                bound: bound.render(),
            });
        }
        let n = g.len();
        let mut geodesic = vec![x.clone()];
        // For each halfspace, the steps j whose U_j contains it, with g_j applied.
        let mut hits: Vec<Vec<(usize, Halfspace)>> = vec![Vec::new(); p.n_halfspaces()];
        for j in 0..n {
            let prefix_next = g.slice(0, j + 1);
            let x_next = self.act_point(&prefix_next, x)?;
            let y = geodesic.last().expect("geodesic start").clone();
            let y_next = p.gate_project(&p.interval_set(&y, &gx), &x_next);
            let prefix_inv = g.slice(0, j).inverse();
            let step: HSet = p.separating_points(&y, &y_next);
            for t in step.ones() {
                let u = self.eval_or_err(&prefix_inv, t)?;
                hits[u].push((j, t));
            }
            geodesic.push(y_next);
        }
        if geodesic.last() != Some(&gx) {
            return Err(Error::Invalid("projected points do not reach g x".into()));
        }
        for (h, list) in hits.iter().enumerate() {
            if list.len() <= r {
                continue;
            }
            let chosen = &list[..r + 1];
            for a in 0..chosen.len() {
                for b in (a + 1)..chosen.len() {
                    let ((ja, ta), (jb, tb)) = (chosen[a], chosen[b]);
                    let middle = g.slice(ja, jb);
                    // g_{jb} = g_{ja} · middle, so the translates differ by `middle`.
                    let word = if p.lt(ta, tb) {
                        middle.inverse()
                    } else if p.lt(tb, ta) {
                        middle
                    } else {
                        continue;
                    };
                    let word = word.reduce();
                    let image = self.eval_or_err(&word, h)?;
                    if p.lt(image, h) && self.image_leq(&word, h, h) == Some(true) {
                        return Ok(NestedPair {
                            word,
                            halfspace: h,
                            image,
                            displacement,
                            bound,
                            geodesic,
                        });
                    }
                }
            }
        }
        Err(Error::NotFound(
            "no nested pair among the repeated halfspaces".into(),
        ))
    }

    pub fn nested_summary(&self, n: &NestedPair<W>) -> NestedSummary {
        let p = self.pocset();
        NestedSummary {
            word: self.show(&n.word),
            halfspace: p.name(n.halfspace).into(),
            image: p.name(n.image).into(),
            displacement: n.displacement.render(),
            bound: n.bound.render(),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::budget::Budget;
    use crate::fixtures;

    #[test]
    fn line_shift_nests() {
        let act = fixtures::line_action();
        let p = act.pocset();
        let x = fixtures::line_point(p, 0);
        let g = act.parse_word("s^9").unwrap();
        let r = act.find_nested(&x, &g, &Budget::default()).unwrap();
        assert!(p.lt(r.image, r.halfspace));
        assert_eq!(act.eval(&r.word, r.halfspace), Some(r.image));
    }

    #[test]
    fn tree_word_nests() {
        let act = fixtures::f2ball_action();
        let p = act.pocset();
        let x = fixtures::f2_point(p, "");
        let g = act.parse_word("abab").unwrap();
        let r = act.find_nested(&x, &g, &Budget::default()).unwrap();
        assert!(p.lt(r.image, r.halfspace));
    }

    #[test]
    fn bounded_action_has_small_displacement() {
        let act = fixtures::square_rotation_action();
        let p = act.pocset();
        let x = p.points(&Budget::default()).unwrap()[0].clone();
        let g = act.parse_word("r").unwrap();
        let err = act.find_nested(&x, &g, &Budget::default()).unwrap_err();
        assert_eq!(err.code(), "DISPLACEMENT_TOO_SMALL");
    }
}
