//! Elementarity classification and lineal spaces.
//!
//! Total actions on finite spaces always have a finite orbit, so stage 1
//! decides them. Window actions can only be certified: stage 3 looks for a
//! ping-pong pair, first directly among generator pairs and then through
//! double skewering of a facing 4-tuple.

use serde::Serialize;

use super::action::Action;
use super::orbits::orbits_under;
use super::pingpong::FreeCertificate;
use super::word::{reduced_words, Word};
use crate::budget::Budget;
use crate::core::{star, ConvexSet, Halfspace, Point, WeightedPocset};
use crate::error::{Error, Result};
use crate::scalar::Weight;

#[derive(Debug, Clone, Serialize)]
pub struct ElementaryWitness {
    /// `FIXED_POINT` or `FINITE_ORBIT`.
    pub kind: &'static str,
    pub orbit: Vec<Vec<String>>,
    pub size: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreSummary {
    /// Minimal halfspaces cutting out the core.
    pub halfspaces: Vec<String>,
    pub points: usize,
    /// Smaller than the whole space.
    pub proper: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    /// `ROLLER_ELEMENTARY`, `FREE_SUBGROUP` or `INCONCLUSIVE`.
    pub verdict: &'static str,
    /// Stage that produced the verdict, or the last stage reached.
    pub stage: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ElementaryWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<CoreSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FreeCertificate>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    fn inconclusive(stage: u8, notes: Vec<String>) -> Self {
        ClassificationReport {
            verdict: "INCONCLUSIVE",
            stage,
            witness: None,
            core: None,
            certificate: None,
            notes,
        }
    }
}

/// Lineal pair: every wall separates `xi` from `eta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinealPair {
    pub xi: Point,
    pub eta: Point,
}

impl<W: Weight> WeightedPocset<W> {
    /// All unordered pairs of points separated by every wall.
    pub fn lineal_pairs(&self, budget: &Budget) -> Result<Vec<LinealPair>> {
        let points = self.points(budget)?;
        let index: std::collections::HashMap<&Point, usize> =
            points.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut out = Vec::new();
        for (i, x) in points.iter().enumerate() {
            let opposite = crate::core::hset::star_set(x);
            if let Some(&j) = index.get(&opposite) {
                if i < j {
                    out.push(LinealPair {
                        xi: x.clone(),
                        eta: opposite,
                    });
                }
            }
        }
        Ok(out)
    }
}

impl<W: Weight> Action<W> {
    pub fn classify(&self, budget: &Budget) -> Result<ClassificationReport> {
        if self.is_total() {
            return match self.classify_total(budget) {
                Err(e) if e.is_inconclusive() => {
                    Ok(ClassificationReport::inconclusive(1, vec![e.to_string()]))
                }
                other => other,
            };
        }
        let notes =
            vec!["window action: stages 1 and 2 cannot be decided from a window".to_string()];
        match self.classify_window(budget, notes.clone()) {
            Err(e) if e.is_inconclusive() => {
                let mut n = notes;
                n.push(e.to_string());
                Ok(ClassificationReport::inconclusive(3, n))
            }
            other => other,
        }
    }

    fn classify_total(&self, budget: &Budget) -> Result<ClassificationReport> {
        let p = self.pocset();
        let gens = self.total_generators()?;
        let points = p.points(budget)?;
        let orbits = orbits_under(&gens, &points);
        let rank = p.rank(budget)?;
        let bound = 1usize << rank.min(63);
        let smallest = orbits
            .iter()
            .min_by_key(|o| o.len())
            .ok_or(Error::EmptyInput("space without points"))?;
        let witness = ElementaryWitness {
            kind: if smallest.len() == 1 {
                "FIXED_POINT"
            } else {
                "FINITE_ORBIT"
            },
            orbit: smallest.iter().map(|x| p.describe(x)).collect(),
            size: smallest.len(),
            bound,
        };
        let core = self.minimal_core(&orbits)?;
        let core_points = core.points(p, budget)?.len();
        Ok(ClassificationReport {
            verdict: "ROLLER_ELEMENTARY",
            stage: 1,
            witness: Some(witness),
            core: Some(CoreSummary {
                halfspaces: p.names_of(&p.minimal_elements(core.sigma())),
                points: core_points,
                proper: core_points < points.len(),
            }),
            certificate: None,
            notes: Vec::new(),
        })
    }

    /// Every invariant convex set contains the hull of some orbit, so the
    /// inclusion-minimal orbit hulls are the minimal invariant convex sets.
    fn minimal_core(&self, orbits: &[Vec<Point>]) -> Result<ConvexSet> {
        let p = self.pocset();
        let hulls = orbits
            .iter()
            .map(|o| p.convex_hull(o))
            .collect::<Result<Vec<_>>>()?;
        hulls
            .iter()
            .find(|c| !hulls.iter().any(|d| d.is_subset(c) && d != *c))
            .cloned()
            .ok_or(Error::EmptyInput("no orbits"))
    }

    fn classify_window(
        &self,
        budget: &Budget,
        mut notes: Vec<String>,
    ) -> Result<ClassificationReport> {
        let p = self.pocset();
        let max_len = budget.max_word_len;
        let triple = match p.facing_tuple(3, None, false, budget) {
            Ok(t) => t,
            Err(Error::NotFound(_)) => {
                notes.push("no facing triple in the window".into());
                return Ok(ClassificationReport::inconclusive(3, notes));
            }
            Err(e) => return Err(e),
        };
        notes.push(format!(
            "facing triple {:?}",
            triple.iter().map(|&h| p.name(h)).collect::<Vec<_>>()
        ));
        let flip = self.find_flip(triple[0], max_len, budget)?;
        notes.push(format!(
            "flip of {}: {}",
            p.name(triple[0]),
            self.flip_summary(triple[0], &flip).result
        ));
        for i in 0..self.n_gens() {
            for j in (i + 1)..self.n_gens() {
                let (a, b) = (Word::letter(2 * i), Word::letter(2 * j));
                if let Some(c) = self.direct_pingpong(&a, &b, max_len) {
                    return Ok(self.free_report(c, notes));
                }
            }
        }
        notes.push("no generator pair plays ping-pong directly".into());
        if let Ok(t) = p.facing_tuple(4, None, false, budget) {
            let (h, h2, k, k2) = (t[0], t[1], t[2], t[3]);
            if let (Some(a), Some(b)) = (
                self.skewer_into(h, h2, max_len),
                self.skewer_into(k, k2, max_len),
            ) {
                if let Ok(c) = self.pingpong(&a, &b, h, k, max_len) {
                    notes.push("certificate from double skewering a facing 4-tuple".into());
                    return Ok(self.free_report(c, notes));
                }
            }
        }
        notes.push("skewer route failed".into());
        Ok(ClassificationReport::inconclusive(3, notes))
    }

    fn free_report(&self, c: FreeCertificate, notes: Vec<String>) -> ClassificationReport {
        ClassificationReport {
            verdict: "FREE_SUBGROUP",
            stage: 3,
            witness: None,
            core: None,
            certificate: Some(c),
            notes,
        }
    }

    /// First `(h, k)` in index order for which `a`, `b` verify.
    fn direct_pingpong(&self, a: &Word, b: &Word, max_len: usize) -> Option<FreeCertificate> {
        let p = self.pocset();
        let n = p.n_halfspaces();
        for h in 0..n {
            let Some(ahs) = self.eval(a, star(h)) else {
                continue;
            };
            if ahs == h || !p.disjoint(h, ahs) {
                continue;
            }
            for k in 0..n {
                let Some(bks) = self.eval(b, star(k)) else {
                    continue;
                };
                if !p.is_facing(&[h, ahs, k, bks], false) {
                    continue;
                }
                if let Ok(c) = self.pingpong(a, b, h, k, max_len) {
                    if c.depth == max_len {
                        return Some(c);
                    }
                }
            }
        }
        None
    }

    /// Shortest `g` with `g h* ⊊ target`.
    fn skewer_into(&self, h: Halfspace, target: Halfspace, max_len: usize) -> Option<Word> {
        let p = self.pocset();
        (1..=max_len)
            .flat_map(|len| reduced_words(self.n_gens(), len))
            .find(|w| self.eval(w, star(h)).is_some_and(|g| p.lt(g, target)))
    }
}

#[cfg(test)]
mod tests {
    use crate::actions::Action;
    use crate::budget::Budget;
    use crate::fixtures;

    #[test]
    fn finite_examples_are_elementary() {
        let b = Budget::default();
        let p = fixtures::square();
        let all = p.automorphisms(&b).unwrap();
        let r = Action::from_automorphisms(p, &all[1..])
            .unwrap()
            .classify(&b)
            .unwrap();
        assert_eq!((r.verdict, r.stage), ("ROLLER_ELEMENTARY", 1));
        let w = r.witness.unwrap();
        assert_eq!((w.kind, w.size, w.bound), ("FINITE_ORBIT", 4, 4));
        assert!(!r.core.unwrap().proper);

        let t = fixtures::tripod();
        let id = t.automorphisms(&b).unwrap()[0].clone();
        let r = Action::from_automorphisms(t, &[id])
            .unwrap()
            .classify(&b)
            .unwrap();
        assert_eq!(r.witness.unwrap().kind, "FIXED_POINT");
        assert_eq!(r.core.unwrap().points, 1);
    }

    #[test]
    fn tree_window_has_free_subgroup() {
        let r = fixtures::f2ball_action()
            .classify(&Budget::default())
            .unwrap();
        assert_eq!(r.verdict, "FREE_SUBGROUP");
        let c = r.certificate.unwrap();
        assert_eq!((c.h.as_str(), c.k.as_str(), c.depth), ("wa+", "wb+", 4));
    }

    #[test]
    fn line_window_is_inconclusive() {
        let r = fixtures::line_action()
            .classify(&Budget::default())
            .unwrap();
        assert_eq!((r.verdict, r.stage), ("INCONCLUSIVE", 3));
    }

    #[test]
    fn lineal_examples() {
        let b = Budget::default();
        assert_eq!(fixtures::path3().lineal_pairs(&b).unwrap().len(), 1);
        assert_eq!(fixtures::square().lineal_pairs(&b).unwrap().len(), 2);
        assert!(fixtures::tripod().lineal_pairs(&b).unwrap().is_empty());
    }
}
