//! Ping-pong certificates for free subgroups.
//!
//! With `h, a h*, k, b k*` pairwise disjoint and `Ω = h* ∩ a h ∩ k* ∩ b k`,
//! a reduced word `u` in `a, b` maps `Ω` into `a h*`, `h`, `b k*` or `k`
//! according to its first letter `a`, `a^-1`, `b` or `b^-1`. Hence `⟨a, b⟩`
//! is free and meets the stabilizer of the wall of `h` trivially.

use serde::Serialize;

use super::action::Action;
use super::word::{reduced_words, Word};
use crate::core::{star, Halfspace};
use crate::error::{Error, Result};
use crate::scalar::Weight;

#[derive(Debug, Clone, Serialize)]
pub struct FreeCertificate {
    pub status: &'static str,
    pub a: String,
    pub b: String,
    pub h: String,
    pub k: String,
    /// `h, a h*, k, b k*`.
    pub facing: Vec<String>,
    /// `h*, a h, k*, b k`, whose intersection is `Ω`.
    pub omega: Vec<String>,
    /// Each verified inclusion `g X ⊆ Y`.
    pub inclusions: Vec<String>,
    pub requested_depth: usize,
    /// Largest word length fully checked.
    pub depth: usize,
    pub words_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_of_window: Option<String>,
}

impl<W: Weight> Action<W> {
    pub fn pingpong(
        &self,
        a: &Word,
        b: &Word,
        h: Halfspace,
        k: Halfspace,
        max_len: usize,
    ) -> Result<FreeCertificate> {
        let p = self.pocset();
        let name = |x: Halfspace| p.name(x).to_string();
        let ahs = self.eval_or_err(a, star(h))?;
        let bks = self.eval_or_err(b, star(k))?;
        let facing = [h, ahs, k, bks];
        for i in 0..4 {
            for j in (i + 1)..4 {
                let (x, y) = (facing[i], facing[j]);
                if x == y || !p.disjoint(x, y) {
                    return Err(Error::NotFacing(format!(
                        "{} and {} are not disjoint",
                        name(x),
                        name(y)
                    )));
                }
            }
        }
        let (ai, bi) = (a.inverse(), b.inverse());
        let families: [(&Word, &str, [Halfspace; 3], Halfspace); 4] = [
            (a, "a", [ahs, bks, k], ahs),
            (&ai, "a^-1", [h, bks, k], h),
            (b, "b", [ahs, h, bks], bks),
            (&bi, "b^-1", [ahs, h, k], k),
        ];
        let mut inclusions = Vec::new();
        for (g, label, sources, target) in &families {
            for &x in sources {
                match self.image_leq(g, x, *target) {
                    Some(true) => {
                        inclusions.push(format!("{label} {} <= {}", name(x), name(*target)))
                    }
                    Some(false) => {
                        return Err(Error::InclusionFailed(format!(
                            "{label} {} is not inside {}",
                            name(x),
                            name(*target)
                        )))
                    }
                    None => {
                        return Err(Error::OutOfWindow {
                            word: self.show(g),
                            detail: name(x),
                        });
                    }
                }
            }
        }
        // Targets by first letter of the abstract word: a, a^-1, b, b^-1.
        let targets = [ahs, h, bks, k];
        let omega = [star(h), star(ahs), star(k), star(bks)];
        let pieces = [a.clone(), ai, b.clone(), bi];
        let mut depth = 0;
        let mut words_checked = 0;
        let mut out_of_window = None;
        'lengths: for len in 1..=max_len {
            for u in reduced_words(2, len) {
                let w =
                    u.0.iter()
                        .fold(Word::identity(), |acc, &l| acc.then(&pieces[l]));
                let target = targets[u.0[0]];
                let mut lands = Some(false);
                for &f in &omega {
                    match self.image_leq(&w, f, target) {
                        Some(true) => {
                            lands = Some(true);
                            break;
                        }
                        Some(false) => {}
                        None => lands = None,
                    }
                }
                let moves = [h, star(h)]
                    .iter()
                    .map(|&t| self.image_eq(&w, h, t))
                    .collect::<Option<Vec<bool>>>();
                match (lands, moves) {
                    (Some(true), Some(m)) if !m.contains(&true) => words_checked += 1,
                    (Some(false), _) => {
                        return Err(Error::InclusionFailed(format!(
                            "{} Ω is not inside {}",
                            u.display(&["a".into(), "b".into()]),
                            name(target)
                        )))
                    }
                    (_, Some(m)) if m.contains(&true) => {
                        return Err(Error::InclusionFailed(format!(
                            "{} stabilizes the wall of {}",
                            u.display(&["a".into(), "b".into()]),
                            name(h)
                        )))
                    }
                    _ => {
                        out_of_window = Some(format!("{} at length {len}", self.show(&w)));
                        break 'lengths;
                    }
                }
            }
            depth = len;
        }
        Ok(FreeCertificate {
            status: "VERIFIED",
            a: self.show(a),
            b: self.show(b),
            h: name(h),
            k: name(k),
            facing: facing.iter().map(|&x| name(x)).collect(),
            omega: omega.iter().map(|&x| name(x)).collect(),
            inclusions,
            requested_depth: max_len,
            depth,
            words_checked,
            out_of_window,
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    #[test]
    fn tree_generators_play_pingpong() {
        let act = fixtures::f2ball_action();
        let p = act.pocset();
        let (a, b) = (act.parse_word("a").unwrap(), act.parse_word("b").unwrap());
        let (h, k) = (p.id("wa+").unwrap(), p.id("wb+").unwrap());
        let c = act.pingpong(&a, &b, h, k, 4).unwrap();
        assert_eq!((c.depth, c.words_checked), (4, 160));
        assert_eq!(c.inclusions.len(), 12);
        assert_eq!(
            act.pingpong(&a, &b, h, h, 4).unwrap_err().code(),
            "NOT_FACING"
        );
    }

    #[test]
    fn square_rotation_is_not_facing() {
        let act = fixtures::square_rotation_action();
        let p = act.pocset();
        let r = act.parse_word("r").unwrap();
        let err = act
            .pingpong(&r, &r, p.id("a").unwrap(), p.id("b").unwrap(), 4)
            .unwrap_err();
        assert_eq!(err.code(), "NOT_FACING");
    }
}
