//! Groups acting through total or window-restricted automorphisms.
//!
//! A window is a finite fragment of a larger pocset. Each generator is known
//! only where both a halfspace and its image lie in the window; evaluating a
//! word anywhere else yields `None`, never a guess.

use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};
use crate::core::{star, HSet, Halfspace, Point, WeightedPocset};
use crate::error::{Error, Result};
use crate::scalar::Weight;
use crate::structure::Automorphism;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMap {
    pub name: String,
    pub image: Vec<Option<Halfspace>>,
}

impl PartialMap {
    pub fn from_automorphism(g: &Automorphism) -> Self {
        PartialMap {
            name: g.name.clone(),
            image: g.map.iter().map(|&h| Some(h)).collect(),
        }
    }

    pub fn is_total(&self) -> bool {
        self.image.iter().all(Option::is_some)
    }

    pub fn inverse(&self) -> PartialMap {
        let mut image = vec![None; self.image.len()];
        for (h, g) in self.image.iter().enumerate() {
            if let Some(g) = g {
                image[*g] = Some(h);
            }
        }
        PartialMap {
            name: format!("{}^-1", self.name),
            image,
        }
    }

    pub fn domain_len(&self) -> usize {
        self.image.iter().filter(|x| x.is_some()).count()
    }

    pub fn to_automorphism(&self) -> Option<Automorphism> {
        let map = self.image.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(Automorphism {
            name: self.name.clone(),
            map,
        })
    }
}

/// Serialized generator of a window action.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialMapSpec {
    pub name: String,
    pub map: std::collections::BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Action<W> {
    pocset: WeightedPocset<W>,
    gens: Vec<PartialMap>,
    /// Generator and inverse maps, indexed by letter.
    letters: Vec<PartialMap>,
    names: Vec<String>,
}

impl<W: Weight> Action<W> {
    /// Checks that every generator preserves `*`, order and weights where defined.
    pub fn new(pocset: WeightedPocset<W>, gens: Vec<PartialMap>) -> Result<Self> {
        let n = pocset.n_halfspaces();
        for g in &gens {
            if g.image.len() != n {
                return Err(Error::NotAnAutomorphism(format!(
                    "{}: wrong map length",
                    g.name
                )));
            }
            let mut hit = vec![false; n];
            for (h, img) in g.image.iter().enumerate() {
                let Some(gh) = *img else { continue };
                if gh >= n || std::mem::replace(&mut hit[gh], true) {
                    return Err(Error::NotAnAutomorphism(format!(
                        "{}: not injective at {}",
                        g.name,
                        pocset.name(h)
                    )));
                }
                if g.image[star(h)] != Some(star(gh)) {
                    return Err(Error::NotAnAutomorphism(format!(
                        "{}: does not commute with * at {}",
                        g.name,
                        pocset.name(h)
                    )));
                }
                if pocset.weight(h) != pocset.weight(gh) {
                    return Err(Error::NotAnAutomorphism(format!(
                        "{}: changes weight of {}",
                        g.name,
                        pocset.name(h)
                    )));
                }
                for (k, img2) in g.image.iter().enumerate() {
                    if let Some(gk) = *img2 {
                        if pocset.leq(h, k) != pocset.leq(gh, gk) {
                            return Err(Error::NotAnAutomorphism(format!(
                                "{}: breaks order between {} and {}",
                                g.name,
                                pocset.name(h),
                                pocset.name(k)
                            )));
                        }
                    }
                }
            }
        }
        let letters = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
        let names = gens.iter().map(|g| g.name.clone()).collect();
        Ok(Action {
            pocset,
            gens,
            letters,
            names,
        })
    }

    pub fn from_automorphisms(pocset: WeightedPocset<W>, gens: &[Automorphism]) -> Result<Self> {
        for g in gens {
            pocset.check_automorphism(g)?;
        }
        Self::new(
            pocset,
            gens.iter().map(PartialMap::from_automorphism).collect(),
        )
    }

    pub fn pocset(&self) -> &WeightedPocset<W> {
        &self.pocset
    }

    pub fn generators(&self) -> &[PartialMap] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_total(&self) -> bool {
        self.gens.iter().all(PartialMap::is_total)
    }

    pub fn show(&self, w: &Word) -> String {
        w.display(&self.names)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.names)
    }

    pub fn letter_image(&self, l: Letter, h: Halfspace) -> Option<Halfspace> {
        self.letters[l].image[h]
    }

    /// `w h`, applying the rightmost letter first.
    pub fn eval(&self, w: &Word, h: Halfspace) -> Option<Halfspace> {
        w.0.iter()
            .rev()
            .try_fold(h, |acc, &l| self.letters[l].image[acc])
    }

    pub fn eval_or_err(&self, w: &Word, h: Halfspace) -> Result<Halfspace> {
        self.eval(w, h).ok_or_else(|| Error::OutOfWindow {
            word: self.show(w),
            detail: self.pocset.name(h).to_string(),
        })
    }

    pub fn eval_set(&self, w: &Word, set: &HSet) -> Option<HSet> {
        let mut out = self.pocset.empty_set();
        for h in set.ones() {
            out.insert(self.eval(w, h)?);
        }
        Some(out)
    }

    /// Decides `w f ≤ t` by splitting `w = u v` and comparing `v f` with
    /// `u⁻¹ t`, which are related the same way because `u` is an order
    /// isomorphism of the whole space. `None` when no split is evaluable.
    pub fn image_leq(&self, w: &Word, f: Halfspace, t: Halfspace) -> Option<bool> {
        self.split_relation(w, f, t, |p, a, b| p.leq(a, b))
    }

    /// Decides `w f = t` the same way as [`Action::image_leq`].
    pub fn image_eq(&self, w: &Word, f: Halfspace, t: Halfspace) -> Option<bool> {
        self.split_relation(w, f, t, |_, a, b| a == b)
    }

    fn split_relation(
        &self,
        w: &Word,
        f: Halfspace,
        t: Halfspace,
        rel: impl Fn(&WeightedPocset<W>, Halfspace, Halfspace) -> bool,
    ) -> Option<bool> {
        for cut in (0..=w.len()).rev() {
            let (u, v) = (w.slice(0, cut), w.slice(cut, w.len()));
            if let (Some(a), Some(b)) = (self.eval(&v, f), self.eval(&u.inverse(), t)) {
                return Some(rel(&self.pocset, a, b));
            }
        }
        None
    }

    /// `w x`. Total maps push the ultrafilter forward. Window maps push
    /// forward the halfspaces where they are defined, and succeed only when
    /// those pin a unique point: every genuine image of `x` contains them,
    /// so that point is the image's trace on the window.
    pub fn act_point(&self, w: &Word, x: &Point) -> Result<Point> {
        let mut cur = x.clone();
        for &l in w.0.iter().rev() {
            cur = self
                .act_letter_point(l, &cur)
                .ok_or_else(|| Error::OutOfWindow {
                    word: self.show(w),
                    detail: format!("point {:?}", self.pocset.describe(x)),
                })?;
        }
        Ok(cur)
    }

    fn act_letter_point(&self, l: Letter, x: &Point) -> Option<Point> {
        let map = &self.letters[l];
        if map.is_total() {
            let mut out = self.pocset.empty_set();
            for h in x.ones() {
                out.insert(map.image[h]?);
            }
            return Some(out);
        }
        let mut forced = self.pocset.empty_set();
        for h in x.ones() {
            if let Some(g) = map.image[h] {
                forced.insert(g);
            }
        }
        self.pocset
            .unique_completion(&forced, 1_000_000)
            .ok()
            .flatten()
    }

    /// Walls `{h, h*}` with `w h = h*`, among walls where `w` is defined,
    /// plus the number of walls where it is not.
    pub fn wall_inversions(&self, w: &Word) -> Result<(Vec<usize>, usize)> {
        let mut inv = Vec::new();
        let mut undefined = 0;
        for wall in 0..self.pocset.n_walls() {
            match self.image_eq(w, 2 * wall, 2 * wall + 1) {
                Some(true) => inv.push(wall),
                Some(false) => {}
                None => undefined += 1,
            }
        }
        if undefined == self.pocset.n_walls() && undefined > 0 {
            return Err(Error::OutOfWindow {
                word: self.show(w),
                detail: "every wall".into(),
            });
        }
        Ok((inv, undefined))
    }

    /// Orbit of a halfspace under the group, with a word reaching each
    /// element. Breadth-first, so words are shortest possible.
    pub fn halfspace_orbit(&self, h: Halfspace) -> Vec<(Halfspace, Word)> {
        let mut seen = vec![false; self.pocset.n_halfspaces()];
        seen[h] = true;
        let mut out = vec![(h, Word::identity())];
        let mut i = 0;
        while i < out.len() {
            let (cur, w) = out[i].clone();
            for l in 0..self.letters.len() {
                if let Some(next) = self.letters[l].image[cur] {
                    if !seen[next] {
                        seen[next] = true;
                        let mut nw = vec![l];
                        nw.extend_from_slice(&w.0);
                        out.push((next, Word(nw).reduce()));
                    }
                }
            }
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    #[test]
    fn line_shift_moves_points_and_halfspaces() {
        let act = fixtures::line_action();
        let p = act.pocset();
        let s = act.parse_word("s").unwrap();
        let u0 = p.id("u0").unwrap();
        assert_eq!(act.eval(&s, u0), p.id("u1"));
        assert_eq!(act.eval(&s, p.id("u10").unwrap()), None);
        let x = fixtures::line_point(p, 0);
        assert_eq!(act.act_point(&s, &x).unwrap(), fixtures::line_point(p, 1));
        let top = fixtures::line_point(p, 11);
        assert_eq!(act.act_point(&s, &top).unwrap(), top);
        let bottom = fixtures::line_point(p, -10);
        assert_eq!(
            act.act_point(&act.parse_word("s^-1").unwrap(), &bottom)
                .unwrap(),
            bottom
        );
    }

    #[test]
    fn split_evaluation_agrees_with_direct() {
        let act = fixtures::f2ball_action();
        let p = act.pocset();
        let h = p.id("wa+").unwrap();
        let w = act.parse_word("a^-1 b").unwrap();
        let direct = act.eval(&w, h).unwrap();
        assert_eq!(act.image_eq(&w, h, direct), Some(true));
        assert_eq!(act.image_leq(&w, h, direct), Some(true));
    }
}
