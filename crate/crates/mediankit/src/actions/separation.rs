//! Strong separation, facing tuples and halfspaces inside sectors.

use serde::Serialize;

use super::action::Action;
use super::word::{reduced_words, Word};
use crate::budget::Budget;
use crate::core::{star, wall_of, HSet, Halfspace, WeightedPocset};
use crate::error::{Error, Result};
use crate::scalar::Weight;

/// A `*`-invariant split of the halfspaces into two mutually transverse parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductWitness {
    pub part: HSet,
    pub rest: HSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectorResult {
    /// `j ⊆ a ∩ b` with `a ∈ {h, h*}`, `b ∈ {k, k*}`.
    Inside {
        j: Halfspace,
        sector: (Halfspace, Halfspace),
    },
    Product(ProductWitness),
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorSummary {
    pub result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halfspace: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sector: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rest: Option<Vec<String>>,
}

/// A facing tuple and the words used to grow it.
#[derive(Debug, Clone)]
pub struct FacingTuple {
    pub tuple: Vec<Halfspace>,
    pub upgrades: Vec<Word>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FacingSummary {
    pub tuple: Vec<String>,
    pub strong: bool,
    pub upgrades: Vec<String>,
}

impl<W: Weight> WeightedPocset<W> {
    /// Disjoint, and no wall is transverse to both.
    pub fn strongly_separated(&self, h: Halfspace, k: Halfspace) -> bool {
        if wall_of(h) == wall_of(k) || !self.disjoint(h, k) {
            return false;
        }
        !(0..self.n_walls()).any(|w| self.transverse(2 * w, h) && self.transverse(2 * w, k))
    }

    /// Pairwise disjoint (and pairwise strongly separated if `strong`).
    pub fn is_facing(&self, tuple: &[Halfspace], strong: bool) -> bool {
        tuple.iter().enumerate().all(|(i, &a)| {
            tuple[i + 1..].iter().all(|&b| {
                wall_of(a) != wall_of(b)
                    && self.disjoint(a, b)
                    && (!strong || self.strongly_separated(a, b))
            })
        })
    }

    /// Lexicographically least facing `n`-tuple, starting with `seed` if
    /// given and otherwise increasing. `NOT_FOUND` is exhaustive.
    pub fn facing_tuple(
        &self,
        n: usize,
        seed: Option<Halfspace>,
        strong: bool,
        budget: &Budget,
    ) -> Result<Vec<Halfspace>> {
        if n < 3 {
            return Err(Error::Invalid("facing tuples need n >= 3".into()));
        }
        let mut cur: Vec<Halfspace> = seed.into_iter().collect();
        let mut nodes = 0u64;
        if self.facing_dfs(n, strong, seed, &mut cur, &mut nodes, budget.max_nodes)? {
            debug_assert!(self.is_facing(&cur, strong));
            return Ok(cur);
        }
        Err(Error::NotFound(format!("no facing {n}-tuple")))
    }

    fn facing_dfs(
        &self,
        n: usize,
        strong: bool,
        seed: Option<Halfspace>,
        cur: &mut Vec<Halfspace>,
        nodes: &mut u64,
        cap: u64,
    ) -> Result<bool> {
        if cur.len() == n {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::NodeBudgetExceeded(cap));
        }
        let start = match cur.last() {
            Some(&l) if Some(l) != seed || cur.len() > 1 => l + 1,
            _ => 0,
        };
        for c in start..self.n_halfspaces() {
            if Some(c) == seed {
                continue;
            }
            let fits = cur.iter().all(|&a| {
                wall_of(a) != wall_of(c)
                    && self.disjoint(a, c)
                    && (!strong || self.strongly_separated(a, c))
            });
            if fits {
                cur.push(c);
                if self.facing_dfs(n, strong, seed, cur, nodes, cap)? {
                    return Ok(true);
                }
                cur.pop();
            }
        }
        Ok(false)
    }

    /// A halfspace inside one of the four sectors of `h`, `k`, or a product
    /// splitting separating the walls of `h` and `k`.
    pub fn sector_halfspace(&self, h: Halfspace, k: Halfspace) -> Result<SectorResult> {
        if !self.transverse(h, k) {
            return Err(Error::NotTransverse(
                self.name(h).into(),
                self.name(k).into(),
            ));
        }
        let sectors = [(h, k), (h, star(k)), (star(h), k), (star(h), star(k))];
        for j in 0..self.n_halfspaces() {
            if wall_of(j) == wall_of(h) || wall_of(j) == wall_of(k) {
                continue;
            }
            if let Some(&sector) = sectors
                .iter()
                .find(|(a, b)| self.leq(j, *a) && self.leq(j, *b))
            {
                return Ok(SectorResult::Inside { j, sector });
            }
        }
        // Halfspaces squeezed between two halfspaces not transverse to h.
        let anchored: Vec<Halfspace> = (0..self.n_halfspaces())
            .filter(|&a| !self.transverse(a, h))
            .collect();
        let mut part = self.empty_set();
        for &a in &anchored {
            for &b in &anchored {
                if self.leq(a, b) {
                    part.union_with(&crate::core::hset::intersection(self.up(a), self.down(b)));
                }
            }
        }
        let mut rest = self.empty_set();
        rest.insert_range(..);
        rest.difference_with(&part);
        let witness = ProductWitness { part, rest };
        self.check_product_witness(&witness)?;
        Ok(SectorResult::Product(witness))
    }

    /// Nontrivial, `*`-invariant, mutually transverse, and a union of factors.
    pub fn check_product_witness(&self, w: &ProductWitness) -> Result<()> {
        let fail = |why: &str| Err(Error::Invalid(format!("product witness: {why}")));
        if w.part.count_ones(..) == 0 || w.rest.count_ones(..) == 0 {
            return fail("trivial split");
        }
        if w.part.ones().any(|a| !w.part.contains(star(a))) {
            return fail("not *-invariant");
        }
        if w.part
            .ones()
            .any(|a| w.rest.ones().any(|b| !self.transverse(a, b)))
        {
            return fail("parts not transverse");
        }
        let d = self.decompose()?;
        for walls in &d.factor_walls {
            let inside = walls.iter().filter(|&&x| w.part.contains(2 * x)).count();
            if inside != 0 && inside != walls.len() {
                return fail("cuts a factor");
            }
        }
        Ok(())
    }

    pub fn sector_summary(&self, r: &SectorResult) -> SectorSummary {
        match r {
            SectorResult::Inside { j, sector } => SectorSummary {
                result: "HALFSPACE",
                halfspace: Some(self.name(*j).into()),
                sector: Some((self.name(sector.0).into(), self.name(sector.1).into())),
                part: None,
                rest: None,
            },
            SectorResult::Product(w) => SectorSummary {
                result: "PRODUCT",
                halfspace: None,
                sector: None,
                part: Some(self.names_of(&w.part)),
                rest: Some(self.names_of(&w.rest)),
            },
        }
    }
}

impl<W: Weight> Action<W> {
    /// Facing `n`-tuple grown from a combinatorial triple: from
    /// `h, h_1, ..., h_m` and `g` with `g h* ⊆ h_m`, pass to
    /// `h, h_1, ..., h_{m-1}, g h_1, g h_2`.
    pub fn facing_tuple_upgrade(
        &self,
        n: usize,
        seed: Option<Halfspace>,
        strong: bool,
        max_len: usize,
        budget: &Budget,
    ) -> Result<FacingTuple> {
        let p = self.pocset();
        let mut tuple = p.facing_tuple(3, seed, strong, budget)?;
        let mut upgrades = Vec::new();
        while tuple.len() < n {
            let (h, last) = (tuple[0], *tuple.last().expect("tuple"));
            let next = (1..=max_len)
                .flat_map(|len| reduced_words(self.n_gens(), len))
                .find_map(|w| {
                    let gh = self.eval(&w, star(h))?;
                    if !p.leq(gh, last) {
                        return None;
                    }
                    let (g1, g2) = (self.eval(&w, tuple[1])?, self.eval(&w, tuple[2])?);
                    let mut cand = tuple[..tuple.len() - 1].to_vec();
                    cand.extend([g1, g2]);
                    p.is_facing(&cand, strong).then_some((w, cand))
                });
            let Some((w, cand)) = next else {
                return Err(Error::Inconclusive(max_len));
            };
            upgrades.push(w);
            tuple = cand;
        }
        tuple.truncate(n);
        for (i, &a) in tuple.iter().enumerate() {
            for &b in &tuple[i + 1..] {
                if !self.no_common_point(a, b, budget)? {
                    return Err(Error::Invalid("upgraded tuple is not facing".into()));
                }
            }
        }
        Ok(FacingTuple { tuple, upgrades })
    }

    pub fn facing_summary(&self, f: &FacingTuple, strong: bool) -> FacingSummary {
        FacingSummary {
            tuple: f
                .tuple
                .iter()
                .map(|&h| self.pocset().name(h).to_string())
                .collect(),
            strong,
            upgrades: f.upgrades.iter().map(|w| self.show(w)).collect(),
        }
    }
}
