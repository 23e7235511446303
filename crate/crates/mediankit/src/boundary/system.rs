//! Eventually periodic chain systems.
//!
//! Chain `i` lists halfspaces `(i, 0) ⊋ (i, 1) ⊋ ...` diverging to a
//! boundary point. Two halfspaces of different chains are nested one way or
//! transverse; which one is read from head entries, then from periodic
//! rules, first match wins, each entry also read in the converse direction.
//! Pairs matched by nothing are transverse. A periodic rule applies to
//! `(from_n, to_m)` with offset `m - n` and both indices in range. Past every
//! finite bound in the system the relation depends only on the offset, and
//! is constant once the offset passes every bound too; this is what makes
//! every question below finite.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::core::{ValidationReport, Violation};
use crate::scalar::Weight;

pub type ChainIx = usize;

/// Halfspace `index` of chain `chain`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link {
    pub chain: ChainIx,
    pub index: u64,
}

impl Link {
    pub fn new(chain: ChainIx, index: u64) -> Self {
        Link { chain, index }
    }
}

/// Relation of a first halfspace to a second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Equal,
    Sub,
    Sup,
    Transverse,
}

impl Rel {
    pub fn converse(self) -> Rel {
        match self {
            Rel::Sub => Rel::Sup,
            Rel::Sup => Rel::Sub,
            other => other,
        }
    }

    pub fn parse(text: &str) -> Option<Rel> {
        match text {
            "sub" => Some(Rel::Sub),
            "sup" => Some(Rel::Sup),
            "transverse" => Some(Rel::Transverse),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rel::Equal => "equal",
            Rel::Sub => "sub",
            Rel::Sup => "sup",
            Rel::Transverse => "transverse",
        }
    }
}

/// Inclusive integer range; `None` ends are unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Range {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Range {
    pub const ALL: Range = Range { lo: None, hi: None };

    pub fn new(lo: Option<i64>, hi: Option<i64>) -> Self {
        Range { lo, hi }
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo.is_none_or(|lo| x >= lo) && self.hi.is_none_or(|hi| x <= hi)
    }

    fn bound(&self) -> i64 {
        self.lo.unwrap_or(0).abs().max(self.hi.unwrap_or(0).abs())
    }
}

#[derive(Debug, Clone)]
pub struct Chain<W> {
    pub id: String,
    /// Weights of the first indices, before the periodic part starts.
    pub head_weights: Vec<W>,
    /// One period of weights.
    pub weights: Vec<W>,
}

impl<W: Weight> Chain<W> {
    pub fn period(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, n: u64) -> W {
        let h = self.head_weights.len() as u64;
        if n < h {
            self.head_weights[n as usize].clone()
        } else {
            self.weights[((n - h) % self.weights.len() as u64) as usize].clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadEntry {
    pub a: Link,
    pub b: Link,
    pub rel: Rel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicRule {
    pub from: ChainIx,
    pub to: ChainIx,
    pub rel: Rel,
    pub offset: Range,
    pub from_range: Range,
    pub to_range: Range,
}

impl PeriodicRule {
    pub fn new(from: ChainIx, to: ChainIx, rel: Rel) -> Self {
        PeriodicRule {
            from,
            to,
            rel,
            offset: Range::ALL,
            from_range: Range::ALL,
            to_range: Range::ALL,
        }
    }

    pub fn offsets(mut self, lo: Option<i64>, hi: Option<i64>) -> Self {
        self.offset = Range::new(lo, hi);
        self
    }

    pub fn from_indices(mut self, lo: Option<i64>, hi: Option<i64>) -> Self {
        self.from_range = Range::new(lo, hi);
        self
    }

    pub fn to_indices(mut self, lo: Option<i64>, hi: Option<i64>) -> Self {
        self.to_range = Range::new(lo, hi);
        self
    }

    fn matches(&self, a: Link, b: Link) -> bool {
        a.chain == self.from
            && b.chain == self.to
            && self.offset.contains(b.index as i64 - a.index as i64)
            && self.from_range.contains(a.index as i64)
            && self.to_range.contains(b.index as i64)
    }
}

#[derive(Debug, Clone)]
pub struct ChainSystem<W> {
    pub chains: Vec<Chain<W>>,
    pub head: Vec<HeadEntry>,
    pub rules: Vec<PeriodicRule>,
    index: HashMap<String, ChainIx>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl<W: Weight> ChainSystem<W> {
    pub fn new(chains: Vec<Chain<W>>, head: Vec<HeadEntry>, rules: Vec<PeriodicRule>) -> Self {
        let index = chains
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.clone(), i))
            .collect();
        ChainSystem {
            chains,
            head,
            rules,
            index,
        }
    }

    pub fn n_chains(&self) -> usize {
        self.chains.len()
    }

    pub fn chain_id(&self, i: ChainIx) -> &str {
        &self.chains[i].id
    }

    pub fn chain_index(&self, id: &str) -> Option<ChainIx> {
        self.index.get(id).copied()
    }

    pub fn weight(&self, h: Link) -> W {
        self.chains[h.chain].weight(h.index)
    }

    pub fn link_name(&self, h: Link) -> String {
        format!("{}{}", self.chains[h.chain].id, h.index)
    }

    /// Exceeds every index, offset and range bound written in the system.
    pub fn bound(&self) -> u64 {
        let mut b = 0i64;
        for e in &self.head {
            b = b.max(e.a.index as i64).max(e.b.index as i64);
        }
        for r in &self.rules {
            b = b
                .max(r.offset.bound())
                .max(r.from_range.bound())
                .max(r.to_range.bound());
        }
        for c in &self.chains {
            b = b.max(c.head_weights.len() as i64);
        }
        b as u64 + 1
    }

    pub fn lcm_period(&self) -> u64 {
        self.chains.iter().fold(1, |acc, c| {
            let p = c.period().max(1) as u64;
            acc / gcd(acc, p) * p
        })
    }

    /// Index range that shows every behaviour of the system at least twice.
    pub fn truncation(&self) -> u64 {
        3 * self.bound() + 2 * self.lcm_period()
    }

    /// Tail indices searched for stabilization.
    pub fn horizon(&self) -> u64 {
        2 * self.bound() + 2 * self.lcm_period()
    }

    fn statements(&self, a: Link, b: Link) -> impl Iterator<Item = Rel> + '_ {
        let head = self.head.iter().filter_map(move |e| {
            if e.a == a && e.b == b {
                Some(e.rel)
            } else if e.a == b && e.b == a {
                Some(e.rel.converse())
            } else {
                None
            }
        });
        let rules = self.rules.iter().filter_map(move |r| {
            if r.matches(a, b) {
                Some(r.rel)
            } else if r.matches(b, a) {
                Some(r.rel.converse())
            } else {
                None
            }
        });
        head.chain(rules)
    }

    pub fn rel(&self, a: Link, b: Link) -> Rel {
        if a.chain == b.chain {
            return match a.index.cmp(&b.index) {
                std::cmp::Ordering::Equal => Rel::Equal,
                std::cmp::Ordering::Less => Rel::Sup,
                std::cmp::Ordering::Greater => Rel::Sub,
            };
        }
        self.statements(a, b).next().unwrap_or(Rel::Transverse)
    }

    /// `a ⊆ b`.
    pub fn leq(&self, a: Link, b: Link) -> bool {
        matches!(self.rel(a, b), Rel::Sub | Rel::Equal)
    }

    pub fn transverse(&self, a: Link, b: Link) -> bool {
        self.rel(a, b) == Rel::Transverse
    }

    /// All halfspaces with index below `t`, chain by chain.
    pub fn links_below(&self, t: u64) -> Vec<Link> {
        (0..self.n_chains())
            .flat_map(|c| (0..t).map(move |n| Link::new(c, n)))
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations: Vec<Violation> = Vec::new();
        fn push(
            v: &mut Vec<Violation>,
            kind: &str,
            detail: String,
            pair: Option<(String, String)>,
        ) {
            v.push(Violation {
                kind: kind.to_string(),
                detail,
                pair,
            });
        }
        if self.chains.is_empty() {
            push(&mut violations, "EMPTY_SYSTEM", "no chains".into(), None);
        }
        let mut seen = HashMap::new();
        for (i, c) in self.chains.iter().enumerate() {
            if seen.insert(c.id.clone(), i).is_some() {
                push(&mut violations, "DUPLICATE_CHAIN", c.id.clone(), None);
            }
            if c.weights.is_empty() {
                push(
                    &mut violations,
                    "EMPTY_PERIOD",
                    format!("chain {} has no periodic weights", c.id),
                    None,
                );
            }
            if c.head_weights
                .iter()
                .chain(&c.weights)
                .any(|w| !w.is_positive_weight())
            {
                push(
                    &mut violations,
                    "NONPOSITIVE_WEIGHT",
                    format!("chain {}", c.id),
                    None,
                );
            }
        }
        for r in &self.rules {
            if r.from == r.to {
                push(
                    &mut violations,
                    "SAME_CHAIN_RULE",
                    format!("rule on chain {}", self.chain_id(r.from)),
                    None,
                );
            }
        }
        for e in &self.head {
            if e.a.chain == e.b.chain && self.rel(e.a, e.b) != e.rel {
                push(
                    &mut violations,
                    "SAME_CHAIN_RULE",
                    format!("{} vs {}", self.link_name(e.a), self.link_name(e.b)),
                    None,
                );
            }
        }
        if !violations.is_empty() {
            return ValidationReport {
                valid: false,
                violations,
            };
        }
        let links = self.links_below(self.truncation());
        let n = links.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, &a) in links.iter().enumerate() {
            for (j, &b) in links.iter().enumerate() {
                if a.chain == b.chain {
                    if a.index >= b.index {
                        up[i].insert(j);
                    }
                    continue;
                }
                let stated: Vec<Rel> = self.statements(a, b).collect();
                if stated.contains(&Rel::Sub) && stated.contains(&Rel::Sup) {
                    if i < j {
                        push(
                            &mut violations,
                            "NOT_ANTISYMMETRIC",
                            "stated both ways".into(),
                            Some((self.link_name(a), self.link_name(b))),
                        );
                    }
                    continue;
                }
                if self.leq(a, b) {
                    up[i].insert(j);
                }
            }
        }
        'outer: for i in 0..n {
            for j in up[i].ones() {
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].difference(&up[i]).next().expect("witness");
                    push(
                        &mut violations,
                        "NOT_TRANSITIVE",
                        format!(
                            "{} ⊆ {} ⊆ {}",
                            self.link_name(links[i]),
                            self.link_name(links[j]),
                            self.link_name(links[k])
                        ),
                        Some((self.link_name(links[i]), self.link_name(links[k]))),
                    );
                    break 'outer;
                }
            }
        }
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Rational;

    #[test]
    fn fixtures_are_valid() {
        assert!(fixtures::line_system().validate().valid);
        assert!(fixtures::stairflap().validate().valid);
        for s in fixtures::corner4() {
            assert!(s.validate().valid);
        }
    }

    #[test]
    fn stairflap_relations() {
        let s = fixtures::stairflap();
        let (h, k) = (0, 1);
        assert_eq!(s.rel(Link::new(k, 3), Link::new(h, 0)), Rel::Sub);
        assert_eq!(s.rel(Link::new(k, 3), Link::new(h, 4)), Rel::Sup);
        assert_eq!(s.rel(Link::new(k, 3), Link::new(h, 3)), Rel::Transverse);
        assert_eq!(s.rel(Link::new(h, 1), Link::new(k, 0)), Rel::Sub);
    }

    #[test]
    fn two_way_containment_is_rejected() {
        let mut s = fixtures::stairflap();
        let (h, k) = (0, 1);
        s.head.push(HeadEntry {
            a: Link::new(k, 0),
            b: Link::new(h, 5),
            rel: Rel::Sub,
        });
        s.head.push(HeadEntry {
            a: Link::new(h, 5),
            b: Link::new(k, 0),
            rel: Rel::Sub,
        });
        assert!(s.validate().kinds().contains(&"NOT_ANTISYMMETRIC"));
    }

    #[test]
    fn intransitive_rules_are_rejected() {
        let one = Rational::from_ratio(1, 1);
        let chain = |id: &str| Chain {
            id: id.into(),
            head_weights: vec![],
            weights: vec![one.clone()],
        };
        // A ⊆ B everywhere, B ⊆ C everywhere, A and C transverse.
        let s = ChainSystem::new(
            vec![chain("A"), chain("B"), chain("C")],
            vec![],
            vec![
                PeriodicRule::new(0, 1, Rel::Sub),
                PeriodicRule::new(1, 2, Rel::Sub),
            ],
        );
        assert!(s.validate().kinds().contains(&"NOT_TRANSITIVE"));
    }

    #[test]
    fn weights_are_eventually_periodic() {
        let half = Rational::from_ratio(1, 2);
        let two = Rational::from_ratio(2, 1);
        let c = Chain {
            id: "H".into(),
            head_weights: vec![two.clone()],
            weights: vec![half.clone(), two.clone()],
        };
        assert_eq!(c.weight(0), two);
        assert_eq!(c.weight(1), half);
        assert_eq!(c.weight(4), two);
    }
}
