//! Words in generators and their inverses.
//!
//! Letter `2i` is generator `i`, letter `2i + 1` its inverse, so letters
//! sort as `a, a^-1, b, b^-1, ...` and `l ^ 1` inverts a letter. A word
//! `s1 s2 ... sk` acts as the composition `s1 ∘ s2 ∘ ... ∘ sk`.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Letter = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| l ^ 1).collect())
    }

    /// Concatenation `self · other`.
    pub fn then(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduce()
    }

    pub fn power(&self, k: usize) -> Word {
        Word(
            self.0
                .iter()
                .copied()
                .cycle()
                .take(self.0.len() * k)
                .collect(),
        )
        .reduce()
    }

    /// Free reduction.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&(l ^ 1)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1] ^ 1)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Generators occurring, with either sign.
    pub fn generators(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.0.iter().map(|l| l / 2).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Renders with run-length powers, e.g. `a^2b^-1`.
    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let sep = if names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            " "
        };
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push_str(sep);
            }
            out.push_str(&names[l / 2]);
            let exp = if l.is_multiple_of(2) {
                run as i64
            } else {
                -(run as i64)
            };
            if exp != 1 {
                let _ = write!(out, "^{exp}");
            }
            i += run;
        }
        out
    }

    /// Parses generator names (longest match first), each optionally
    /// followed by `^k` with a nonzero integer `k`. `1`, `e` and the empty
    /// string denote the identity unless they name a generator.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let t = text.trim();
        if (t.is_empty() || t == "1" || t == "e") && !names.iter().any(|n| n == t) {
            return Ok(Word::identity());
        }
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(names[i].len()));
        let mut letters = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let g = order
                .iter()
                .copied()
                .find(|&i| !names[i].is_empty() && rest.starts_with(names[i].as_str()))
                .ok_or_else(|| {
                    Error::Invalid(format!("word {text:?}: unknown generator at {rest:?}"))
                })?;
            rest = &rest[names[g].len()..];
            let mut exp: i64 = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let digits: String = after
                    .chars()
                    .enumerate()
                    .take_while(|(i, c)| c.is_ascii_digit() || (*i == 0 && *c == '-'))
                    .map(|(_, c)| c)
                    .collect();
                exp = digits
                    .parse()
                    .ok()
                    .filter(|&e: &i64| e != 0)
                    .ok_or_else(|| {
                        Error::Invalid(format!("word {text:?}: bad exponent after {}", names[g]))
                    })?;
                rest = &after[digits.len()..];
            }
            let l = if exp > 0 { 2 * g } else { 2 * g + 1 };
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(Word(letters).reduce())
    }
}

/// Freely reduced words of length exactly `len` over `n_gens` generators,
/// in lexicographic letter order.
pub fn reduced_words(n_gens: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(n_letters: usize, len: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(Word(cur.clone()));
            return;
        }
        for l in 0..n_letters {
            if cur.last().is_some_and(|&p| p == l ^ 1) {
                continue;
            }
            cur.push(l);
            go(n_letters, len, cur, out);
            cur.pop();
        }
    }
    go(2 * n_gens, len, &mut cur, &mut out);
    out
}

/// Nonempty reduced words of length at most `max_len`, shortest first.
pub fn reduced_words_upto(n_gens: usize, max_len: usize) -> Vec<Word> {
    (1..=max_len)
        .flat_map(|k| reduced_words(n_gens, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn parse_and_display() {
        let w = Word::parse("a^2 b^-1 a", &ab()).unwrap();
        assert_eq!(w.0, vec![0, 0, 3, 0]);
        assert_eq!(w.display(&ab()), "a^2b^-1a");
        assert_eq!(Word::parse("abab", &ab()).unwrap().len(), 4);
        assert_eq!(Word::parse("a a^-1", &ab()).unwrap(), Word::identity());
        assert!(Word::parse("c", &ab()).is_err());
        assert!(Word::parse("a^0", &ab()).is_err());
        let long = vec!["s".to_string(), "st".to_string()];
        assert_eq!(Word::parse("sts", &long).unwrap().0, vec![2, 0]);
    }

    #[test]
    fn reduced_word_counts() {
        // 4 * 3^(k-1) reduced words of length k in a free group of rank 2.
        for k in 1..=5 {
            assert_eq!(reduced_words(2, k).len(), 4 * 3usize.pow(k as u32 - 1));
        }
        assert!(reduced_words_upto(2, 4).iter().all(Word::is_reduced));
    }

    #[test]
    fn inverse_reverses() {
        let w = Word(vec![0, 2, 3 ^ 1]);
        assert_eq!(w.then(&w.inverse()), Word::identity());
    }
}
