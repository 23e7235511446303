//! Bounded word searches: flipping and double skewering.
//!
//! Words are tried shortest first, then in letter order `a, a^-1, b, ...`.
//! Every hit is re-checked through the split evaluation of
//! [`Action::image_leq`] and, for disjointness, by confirming that no point
//! lies in both halfspaces.

use serde::Serialize;

use super::action::Action;
use super::word::{reduced_words, Word};
use crate::budget::Budget;
use crate::core::{star, ConvexSet, Halfspace};
use crate::error::{Error, Result};
use crate::scalar::Weight;

#[derive(Debug, Clone)]
pub enum FlipResult {
    /// `word · h*` is disjoint from `h*` and differs from `h`.
    Flipped { word: Word, image: Halfspace },
    /// No element flips `h`; the orbit of `h*` has a nonempty intersection.
    InvariantSet { set: ConvexSet },
    /// Window search exhausted; `skipped` words left the window.
    Inconclusive { max_len: usize, skipped: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct FlipSummary {
    pub result: &'static str,
    pub halfspace: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<String>,
    /// Minimal halfspaces cutting out the invariant set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_set: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    pub skipped: usize,
}

#[derive(Debug, Clone)]
pub struct Skewer {
    pub word: Word,
    pub image: Halfspace,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewerSummary {
    pub h: String,
    pub k: String,
    pub word: String,
    pub image: String,
    pub skipped: usize,
}

impl<W: Weight> Action<W> {
    /// True when no point lies in both `a` and `b`, decided by enumeration
    /// rather than by the order.
    pub fn no_common_point(&self, a: Halfspace, b: Halfspace, budget: &Budget) -> Result<bool> {
        let p = self.pocset();
        Ok(p.completions(&p.set_of([a, b]), 1, budget.max_nodes)?
            .is_empty())
    }

    /// `w h* ⊆ h` and `w h* ≠ h`, checked by two independent routes.
    pub fn verify_flip(&self, w: &Word, h: Halfspace, budget: &Budget) -> Result<bool> {
        let Some(image) = self.eval(w, star(h)) else {
            return Ok(false);
        };
        let by_split = self.image_leq(w, star(h), h) == Some(true)
            && self.image_eq(w, star(h), h) == Some(false);
        Ok(by_split && image != h && self.no_common_point(image, star(h), budget)?)
    }

    pub fn find_flip(&self, h: Halfspace, max_len: usize, budget: &Budget) -> Result<FlipResult> {
        let p = self.pocset();
        if self.is_total() {
            let orbit = self.halfspace_orbit(star(h));
            let Some(reach) = orbit
                .iter()
                .filter(|(j, _)| *j != h && p.leq(*j, h))
                .map(|(_, w)| w.len())
                .min()
            else {
                let family = p.set_of(orbit.iter().map(|(j, _)| *j));
                let set = p.convex_from_family(&family).map_err(|_| {
                    Error::Invalid(
                        "orbit of h* has empty intersection; the action inverts a wall".into(),
                    )
                })?;
                return Ok(FlipResult::InvariantSet { set });
            };
            for len in 1..=reach {
                for w in reduced_words(self.n_gens(), len) {
                    if self.verify_flip(&w, h, budget)? {
                        let image = self.eval_or_err(&w, star(h))?;
                        return Ok(FlipResult::Flipped { word: w, image });
                    }
                }
            }
            return Err(Error::Invalid(
                "orbit search and word search disagree".into(),
            ));
        }
        let mut skipped = 0;
        for len in 1..=max_len {
            for w in reduced_words(self.n_gens(), len) {
                if self.eval(&w, star(h)).is_none() {
                    skipped += 1;
                    continue;
                }
                if self.verify_flip(&w, h, budget)? {
                    let image = self.eval_or_err(&w, star(h))?;
                    return Ok(FlipResult::Flipped { word: w, image });
                }
            }
        }
        Ok(FlipResult::Inconclusive { max_len, skipped })
    }

    pub fn flip_summary(&self, h: Halfspace, r: &FlipResult) -> FlipSummary {
        let p = self.pocset();
        let mut s = FlipSummary {
            result: "",
            halfspace: p.name(h).into(),
            word: None,
            image: None,
            invariant_set: None,
            max_len: None,
            skipped: 0,
        };
        match r {
            FlipResult::Flipped { word, image } => {
                s.result = "FLIPPED";
                s.word = Some(self.show(word));
                s.image = Some(p.name(*image).into());
            }
            FlipResult::InvariantSet { set } => {
                s.result = "INVARIANT_SET";
                s.invariant_set = Some(p.names_of(&p.minimal_elements(set.sigma())));
            }
            FlipResult::Inconclusive { max_len, skipped } => {
                s.result = "INCONCLUSIVE";
                s.max_len = Some(*max_len);
                s.skipped = *skipped;
            }
        }
        s
    }

    /// `w k ⊊ h` with `w k` disjoint from `h*`, for `h ≤ k`.
    pub fn double_skewer(
        &self,
        h: Halfspace,
        k: Halfspace,
        max_len: usize,
        budget: &Budget,
    ) -> Result<Skewer> {
        let p = self.pocset();
        if !p.leq(h, k) {
            return Err(Error::Invalid(format!(
                "{} is not contained in {}",
                p.name(h),
                p.name(k)
            )));
        }
        let mut skipped = 0;
        for len in 1..=max_len {
            for w in reduced_words(self.n_gens(), len) {
                let Some(image) = self.eval(&w, k) else {
                    skipped += 1;
                    continue;
                };
                if !(p.lt(image, h)) {
                    continue;
                }
                let by_split = self.image_leq(&w, k, h) == Some(true)
                    && self.image_eq(&w, k, h) == Some(false);
                if by_split && self.no_common_point(image, star(h), budget)? {
                    return Ok(Skewer {
                        word: w,
                        image,
                        skipped,
                    });
                }
            }
        }
        Err(Error::Inconclusive(max_len))
    }

    pub fn skewer_summary(&self, h: Halfspace, k: Halfspace, s: &Skewer) -> SkewerSummary {
        let p = self.pocset();
        SkewerSummary {
            h: p.name(h).into(),
            k: p.name(k).into(),
            word: self.show(&s.word),
            image: p.name(s.image).into(),
            skipped: s.skipped,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::FlipResult;
    use crate::actions::Action;
    use crate::budget::Budget;
    use crate::fixtures;

    #[test]
    fn tripod_rotation_flips_the_complement_of_a_leaf() {
        let b = Budget::default();
        let act = fixtures::tripod_rotation_action();
        let p = act.pocset();
        let h1s = p.id("h1*").unwrap();
        match act.find_flip(h1s, 4, &b).unwrap() {
            FlipResult::Flipped { word, image } => {
                assert_eq!(act.show(&word), "rho");
                assert_eq!(p.name(image), "h2");
            }
            other => panic!("{other:?}"),
        }
        match act.find_flip(p.id("h1").unwrap(), 4, &b).unwrap() {
            FlipResult::InvariantSet { set } => {
                assert_eq!(
                    set.points(p, &b).unwrap(),
                    vec![p.point_from_names(&["h1*", "h2*", "h3*"]).unwrap()]
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_group_leaves_the_complement_invariant() {
        let b = Budget::default();
        let p = fixtures::square();
        let id = p.automorphisms(&b).unwrap()[0].clone();
        let act = Action::from_automorphisms(p, &[id]).unwrap();
        let a = act.pocset().id("a").unwrap();
        match act.find_flip(a, 4, &b).unwrap() {
            FlipResult::InvariantSet { set } => {
                assert_eq!(act.pocset().names_of(set.sigma()), vec!["a*"])
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            act.double_skewer(a, a, 4, &b).unwrap_err().code(),
            "INCONCLUSIVE"
        );
    }

    #[test]
    fn line_shift_skewers_but_does_not_flip() {
        let b = Budget::default();
        let act = fixtures::line_action();
        let p = act.pocset();
        for name in ["u0", "d0"] {
            let h = p.id(name).unwrap();
            assert!(matches!(
                act.find_flip(h, 4, &b).unwrap(),
                FlipResult::Inconclusive { .. }
            ));
            let s = act.double_skewer(h, h, 4, &b).unwrap();
            assert_eq!(s.word.len(), 1);
        }
    }

    #[test]
    fn tree_skewer_is_shortest() {
        let b = Budget::default();
        let act = fixtures::f2ball_action();
        let h = act.pocset().id("wa+").unwrap();
        let s = act.double_skewer(h, h, 4, &b).unwrap();
        assert_eq!(act.show(&s.word), "a^-1");
        let a2 = act.parse_word("a^-2").unwrap();
        assert!(act.pocset().lt(act.eval(&a2, h).unwrap(), h));
    }
}
