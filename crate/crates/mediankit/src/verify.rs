//! Re-checks search certificates from their serialized form.
//!
//! Only the pocset order and point completion are used: generators are read
//! back from their name tables and words are evaluated letter by letter here,
//! so a bookkeeping slip in the searches cannot vouch for itself.

use std::collections::BTreeMap;

use crate::actions::PartialMapSpec;
use crate::budget::Budget;
use crate::core::{star, Halfspace, WeightedPocset};
use crate::error::{Error, Result};
use crate::scalar::Weight;

/// Generators as partial halfspace maps, with their inverses.
#[derive(Debug, Clone)]
pub struct Generators {
    names: Vec<String>,
    /// Letter `2i` is generator `i`, `2i + 1` its inverse.
    letters: Vec<Vec<Option<Halfspace>>>,
}

impl Generators {
    /// `specs` pairs each generator name with its table of halfspace names;
    /// each entry also sends the complement to the complement.
    pub fn from_tables<W: Weight>(
        p: &WeightedPocset<W>,
        specs: &[(String, BTreeMap<String, String>)],
    ) -> Result<Self> {
        let n = p.n_halfspaces();
        let mut letters = Vec::new();
        for (name, map) in specs {
            let mut fwd = vec![None; n];
            let mut inv = vec![None; n];
            for (a, b) in map {
                let (a, b) = (p.require(a)?, p.require(b)?);
                for (x, y) in [(a, b), (star(a), star(b))] {
                    if fwd[x].is_some_and(|z| z != y) || inv[y].is_some_and(|z| z != x) {
                        return Err(Error::Invalid(format!(
                            "generator {name} is not a bijection"
                        )));
                    }
                    fwd[x] = Some(y);
                    inv[y] = Some(x);
                }
            }
            letters.push(fwd);
            letters.push(inv);
        }
        Ok(Generators {
            names: specs.iter().map(|(n, _)| n.clone()).collect(),
            letters,
        })
    }

    /// Generators of a serialized action.
    pub fn from_specs<W: Weight>(p: &WeightedPocset<W>, specs: &[PartialMapSpec]) -> Result<Self> {
        let tables: Vec<_> = specs
            .iter()
            .map(|g| (g.name.clone(), g.map.clone()))
            .collect();
        Generators::from_tables(p, &tables)
    }

    /// Letters of `text`: generator names, longest first, each with an
    /// optional `^k`.
    pub fn parse(&self, text: &str) -> Result<Vec<usize>> {
        let bad = || Error::Invalid(format!("cannot read word {text:?}"));
        let mut out = Vec::new();
        let mut rest = text.trim();
        if rest == "1" {
            return Ok(out);
        }
        while !rest.is_empty() {
            let g = (0..self.names.len())
                .filter(|&i| rest.starts_with(self.names[i].as_str()))
                .max_by_key(|&i| self.names[i].len())
                .ok_or_else(bad)?;
            rest = rest[self.names[g].len()..].trim_start();
            let mut exp: i64 = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let end = after
                    .char_indices()
                    .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
                    .map_or(after.len(), |(i, _)| i);
                exp = after[..end].parse().map_err(|_| bad())?;
                rest = after[end..].trim_start();
            }
            let l = if exp > 0 { 2 * g } else { 2 * g + 1 };
            out.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(out)
    }

    /// Image of `h`, rightmost letter first; `None` outside the window.
    pub fn eval(&self, word: &[usize], h: Halfspace) -> Option<Halfspace> {
        word.iter()
            .rev()
            .try_fold(h, |acc, &l| self.letters[l][acc])
    }

    fn eval_text(&self, word: &str, h: Halfspace) -> Result<Halfspace> {
        self.eval(&self.parse(word)?, h)
            .ok_or_else(|| Error::Invalid(format!("word {word} leaves the window")))
    }
}

fn disjoint_points<W: Weight>(
    p: &WeightedPocset<W>,
    a: Halfspace,
    b: Halfspace,
    budget: &Budget,
) -> Result<bool> {
    Ok(p.completions(&p.set_of([a, b]), 1, budget.max_nodes)?
        .is_empty())
}

/// Failed conditions of a ping-pong certificate; empty when it holds.
pub fn free_certificate<W: Weight>(
    p: &WeightedPocset<W>,
    gens: &Generators,
    (a, b, h, k): (&str, &str, &str, &str),
    budget: &Budget,
) -> Result<Vec<String>> {
    let (h, k) = (p.require(h)?, p.require(k)?);
    let ahs = gens.eval_text(a, star(h))?;
    let bks = gens.eval_text(b, star(k))?;
    let facing = [h, ahs, k, bks];
    let mut failures = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let (x, y) = (facing[i], facing[j]);
            if x == y || !disjoint_points(p, x, y, budget)? {
                failures.push(format!("{} and {} meet", p.name(x), p.name(y)));
            }
        }
    }
    let (wa, wb) = (gens.parse(a)?, gens.parse(b)?);
    let families = [
        (a.to_string(), wa.clone(), [ahs, bks, k], ahs),
        (format!("({a})^-1"), invert(&wa), [h, bks, k], h),
        (b.to_string(), wb.clone(), [ahs, h, bks], bks),
        (format!("({b})^-1"), invert(&wb), [ahs, h, k], k),
    ];
    for (label, word, sources, target) in families {
        for x in sources {
            match gens.eval(&word, x) {
                Some(gx) if p.leq(gx, target) => {}
                _ => failures.push(format!(
                    "{label} {} not inside {}",
                    p.name(x),
                    p.name(target)
                )),
            }
        }
    }
    Ok(failures)
}

fn invert(word: &[usize]) -> Vec<usize> {
    word.iter().rev().map(|l| l ^ 1).collect()
}

/// `w h*` lies in `h`, differs from it, and shares no point with `h*`.
pub fn flip<W: Weight>(
    p: &WeightedPocset<W>,
    gens: &Generators,
    word: &str,
    h: &str,
    budget: &Budget,
) -> Result<bool> {
    let h = p.require(h)?;
    let image = gens.eval_text(word, star(h))?;
    Ok(p.leq(image, h) && image != h && disjoint_points(p, image, star(h), budget)?)
}

/// `w k` lies strictly inside `h` and shares no point with `h*`.
pub fn skewer<W: Weight>(
    p: &WeightedPocset<W>,
    gens: &Generators,
    word: &str,
    (h, k): (&str, &str),
    budget: &Budget,
) -> Result<bool> {
    let (h, k) = (p.require(h)?, p.require(k)?);
    let image = gens.eval_text(word, k)?;
    Ok(p.leq(image, h) && image != h && disjoint_points(p, image, star(h), budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::io::action_to_file;

    fn tables(act: &crate::actions::Action<crate::Rational>) -> Generators {
        Generators::from_specs(act.pocset(), &action_to_file(act).generators).unwrap()
    }

    #[test]
    fn words_read_back() {
        let act = fixtures::f2ball_action();
        let g = tables(&act);
        assert_eq!(g.parse("a^2b^-1").unwrap(), vec![0, 0, 3]);
        assert_eq!(g.parse("1").unwrap(), Vec::<usize>::new());
        assert!(g.parse("c").is_err());
    }

    #[test]
    fn f2ball_certificate_holds_and_a_wrong_one_fails() {
        let act = fixtures::f2ball_action();
        let g = tables(&act);
        let b = Budget::default();
        let ok = free_certificate(act.pocset(), &g, ("a", "b", "wa+", "wb+"), &b).unwrap();
        assert!(ok.is_empty(), "{ok:?}");
        let bad = free_certificate(act.pocset(), &g, ("a", "a", "wa+", "wa+"), &b).unwrap();
        assert!(!bad.is_empty());
    }
}
