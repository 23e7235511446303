//! Subsets of a chain system in normal form, inseparable closure,
//! almost-containment and minimal tails.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::system::{ChainIx, ChainSystem, Link};
use crate::error::{Error, Result};
use crate::scalar::Weight;

/// Indices of one chain: a finite set below an optional tail `[tail, ∞)`.
/// Normal form: every finite element is below `tail - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexSet {
    pub finite: BTreeSet<u64>,
    pub tail: Option<u64>,
}

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet::default()
    }

    pub fn tail_from(n: u64) -> Self {
        IndexSet {
            finite: BTreeSet::new(),
            tail: Some(n),
        }
    }

    pub fn from_parts(finite: impl IntoIterator<Item = u64>, tail: Option<u64>) -> Self {
        let mut s = IndexSet {
            finite: finite.into_iter().collect(),
            tail,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(t) = self.tail {
            self.finite.retain(|&x| x < t);
            let mut t = t;
            while t > 0 && self.finite.remove(&(t - 1)) {
                t -= 1;
            }
            self.tail = Some(t);
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.tail.is_some_and(|t| n >= t) || self.finite.contains(&n)
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.tail.is_none()
    }

    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    pub fn min(&self) -> Option<u64> {
        self.finite.iter().next().copied().or(self.tail)
    }

    /// Largest element, `Some(None)` when unbounded.
    pub fn max(&self) -> Option<Option<u64>> {
        match self.tail {
            Some(_) => Some(None),
            None => self.finite.iter().next_back().map(|&x| Some(x)),
        }
    }

    /// Elements of `self` not in `other`, if finitely many.
    pub fn finite_difference(&self, other: &IndexSet) -> Option<BTreeSet<u64>> {
        let mut out: BTreeSet<u64> = self
            .finite
            .iter()
            .copied()
            .filter(|&x| !other.contains(x))
            .collect();
        if let Some(t) = self.tail {
            let stop = other.tail?;
            out.extend((t..stop).filter(|&x| !other.contains(x)));
        }
        Some(out)
    }

    /// Elements at least `n`.
    pub fn from_index(&self, n: u64) -> IndexSet {
        IndexSet::from_parts(
            self.finite.iter().copied().filter(|&x| x >= n),
            self.tail.map(|t| t.max(n)),
        )
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        IndexSet::from_parts(self.finite.iter().chain(&other.finite).copied(), tail)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.finite.iter().map(|x| x.to_string()).collect();
        if let Some(t) = self.tail {
            parts.push(format!("{t}.."));
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Subset of a chain system, one [`IndexSet`] per chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ubs {
    pub sets: Vec<IndexSet>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct UbsSummary {
    /// Chain id to its index set, e.g. `{0,2,5..}`.
    pub chains: Vec<(String, String)>,
}

impl Ubs {
    pub fn empty(n_chains: usize) -> Self {
        Ubs {
            sets: vec![IndexSet::empty(); n_chains],
        }
    }

    pub fn tail(n_chains: usize, chain: ChainIx, from: u64) -> Self {
        let mut u = Ubs::empty(n_chains);
        u.sets[chain] = IndexSet::tail_from(from);
        u
    }

    pub fn contains(&self, h: Link) -> bool {
        self.sets[h.chain].contains(h.index)
    }

    pub fn union(&self, other: &Ubs) -> Ubs {
        Ubs {
            sets: self
                .sets
                .iter()
                .zip(&other.sets)
                .map(|(a, b)| a.union(b))
                .collect(),
        }
    }

    pub fn from_index(&self, n: u64) -> Ubs {
        Ubs {
            sets: self.sets.iter().map(|s| s.from_index(n)).collect(),
        }
    }

    pub fn infinite_chains(&self) -> Vec<ChainIx> {
        (0..self.sets.len())
            .filter(|&i| self.sets[i].is_infinite())
            .collect()
    }

    pub fn summary<W: Weight>(&self, s: &ChainSystem<W>) -> UbsSummary {
        UbsSummary {
            chains: self
                .sets
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_empty())
                .map(|(i, x)| (s.chain_id(i).to_string(), x.to_string()))
                .collect(),
        }
    }
}

/// Least tail index whose closure is minimal up to finite difference.
#[derive(Debug, Clone)]
pub struct MinimalTail {
    pub chain: ChainIx,
    pub index: u64,
    pub ubs: Ubs,
    /// No UBS lies strictly below, up to finite difference.
    pub minimal: bool,
}

impl<W: Weight> ChainSystem<W> {
    /// Halfspaces between two members of `seed`.
    pub fn closure(&self, seed: &Ubs) -> Ubs {
        let k = self.n_chains();
        let b = self.bound();
        let lows: Vec<Option<u64>> = seed.sets.iter().map(IndexSet::min).collect();
        let highs: Vec<Option<Option<u64>>> = seed.sets.iter().map(IndexSet::max).collect();
        // (j, m) ⊆ (c, n) only gets easier as m grows and as n shrinks, so
        // only the least member of each chain matters above, and the
        // largest (or a far one) below.
        let member = |j: ChainIx, m: u64| -> bool {
            let h = Link::new(j, m);
            let above = (0..k).any(|c| lows[c].is_some_and(|lo| self.leq(h, Link::new(c, lo))));
            let below = (0..k).any(|c| match highs[c] {
                None => false,
                Some(Some(hi)) => self.leq(Link::new(c, hi), h),
                Some(None) => self.leq(Link::new(c, m.max(hi_floor(&seed.sets[c])) + b + 1), h),
            });
            above && below
        };
        let reach = lows
            .iter()
            .flatten()
            .chain(highs.iter().flatten().flatten())
            .copied()
            .max()
            .unwrap_or(0)
            + b
            + 2;
        let sets = (0..k)
            .map(|j| {
                let inside: Vec<bool> = (0..=reach).map(|m| member(j, m)).collect();
                let tail = inside[reach as usize].then(|| {
                    let mut t = reach;
                    while t > 0 && inside[t as usize - 1] {
                        t -= 1;
                    }
                    t
                });
                let finite =
                    (0..reach).filter(|&m| inside[m as usize] && tail.is_none_or(|t| m < t));
                IndexSet::from_parts(finite, tail)
            })
            .collect();
        Ubs { sets }
    }

    pub fn is_inseparable(&self, u: &Ubs) -> bool {
        self.closure(u) == *u
    }

    /// Weight of `a ∖ b` when finite.
    pub fn almost_contained(&self, a: &Ubs, b: &Ubs) -> Option<W> {
        let mut total = W::zero();
        for (i, (x, y)) in a.sets.iter().zip(&b.sets).enumerate() {
            for n in x.finite_difference(y)? {
                total = total + self.weight(Link::new(i, n));
            }
        }
        Some(total)
    }

    pub fn equivalent(&self, a: &Ubs, b: &Ubs) -> bool {
        self.almost_contained(a, b).is_some() && self.almost_contained(b, a).is_some()
    }

    /// Closure of the tail of `chain` from `n`.
    pub fn tail_closure(&self, chain: ChainIx, n: u64) -> Ubs {
        self.closure(&Ubs::tail(self.n_chains(), chain, n))
    }

    /// Least `N` whose tail closure is equivalent to every later one.
    pub fn stable_tail(&self, chain: ChainIx) -> Result<(u64, Ubs)> {
        let h = self.horizon();
        let end = self.tail_closure(chain, h + self.lcm_period());
        // Tail closures shrink, so equivalence with the last one suffices.
        for n in 0..=h {
            let c = self.tail_closure(chain, n);
            if self.almost_contained(&c, &end).is_some() {
                return Ok((n, c));
            }
        }
        Err(Error::HorizonExceeded(h))
    }

    /// No UBS strictly below `u`: every chain `u` contains a tail of has a
    /// stable tail closure `u` is almost contained in.
    pub fn is_minimal(&self, u: &Ubs) -> Result<bool> {
        for j in u.infinite_chains() {
            let (_, d) = self.stable_tail(j)?;
            if self.almost_contained(u, &d).is_none() {
                return Ok(false);
            }
        }
        Ok(!u.infinite_chains().is_empty())
    }

    pub fn minimal_tail(&self, chain: ChainIx) -> Result<MinimalTail> {
        let (index, ubs) = self.stable_tail(chain)?;
        let minimal = self.is_minimal(&ubs)?;
        Ok(MinimalTail {
            chain,
            index,
            ubs,
            minimal,
        })
    }
}

fn hi_floor(s: &IndexSet) -> u64 {
    s.tail.unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn index_set_normal_form() {
        let s = IndexSet::from_parts([1, 3, 4], Some(5));
        assert_eq!(s, IndexSet::from_parts([1], Some(3)));
        assert_eq!(s.to_string(), "{1,3..}");
        let t = IndexSet::tail_from(5);
        assert_eq!(
            t.finite_difference(&IndexSet::tail_from(3)),
            Some(BTreeSet::new())
        );
        assert_eq!(
            IndexSet::tail_from(3).finite_difference(&t),
            Some(BTreeSet::from([3, 4]))
        );
        assert_eq!(t.finite_difference(&IndexSet::from_parts([7], None)), None);
    }

    #[test]
    fn line_tails() {
        let s = fixtures::line_system();
        let t3 = s.tail_closure(0, 3);
        assert_eq!(t3, Ubs::tail(1, 0, 3));
        let t5 = Ubs::tail(1, 0, 5);
        assert_eq!(s.almost_contained(&t5, &t3), Some(Weight::from_ratio(0, 1)));
        assert_eq!(s.almost_contained(&t3, &t5), Some(Weight::from_ratio(2, 1)));
        let m = s.minimal_tail(0).unwrap();
        assert_eq!((m.index, m.minimal), (0, true));
    }

    #[test]
    fn stairflap_closures() {
        let s = fixtures::stairflap();
        let (h, k) = (0, 1);
        let c0 = s.tail_closure(h, 0);
        assert_eq!(c0.sets[k], IndexSet::tail_from(0));
        let c1 = s.tail_closure(h, 1);
        assert!(c1.sets[k].is_empty());
        assert!(s.is_inseparable(&c0) && s.is_inseparable(&c1));
        assert!(s.almost_contained(&c1, &c0).is_some());
        assert!(s.almost_contained(&c0, &c1).is_none());
        assert!(!s.is_minimal(&c0).unwrap());
        assert!(s.is_minimal(&c1).unwrap());
        assert!(s.is_minimal(&s.tail_closure(k, 1)).unwrap());
        assert_eq!(s.minimal_tail(h).unwrap().index, 1);
        assert_eq!(s.minimal_tail(k).unwrap().index, 0);
    }
}
