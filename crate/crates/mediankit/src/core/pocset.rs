//! Weighted pocsets: halfspaces with an involution, a partial order and
//! positive wall weights.
//!
//! Halfspace `2i` is the positive side of wall `i`, `2i + 1` its negative
//! side, so the involution is `h ^ 1`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::hset::{star_set, HSet};
use crate::error::{Error, Result};
use crate::scalar::Weight;

pub type Halfspace = usize;
pub type WallIx = usize;

#[inline]
pub fn star(h: Halfspace) -> Halfspace {
    h ^ 1
}

#[inline]
pub fn wall_of(h: Halfspace) -> WallIx {
    h >> 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct Wall<W> {
    pub id: String,
    pub pos: String,
    pub neg: String,
    pub weight: W,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn push(&mut self, kind: &str, detail: String, pair: Option<(String, String)>) {
        self.violations.push(Violation {
            kind: kind.to_string(),
            detail,
            pair,
        });
    }

    fn finish(mut self) -> Self {
        self.valid = self.violations.is_empty();
        self
    }

    pub fn kinds(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.kind.as_str()).collect()
    }
}

/// Unchecked pocset description; [`PocsetBuilder::build`] validates it.
#[derive(Debug, Clone)]
pub struct PocsetBuilder<W> {
    walls: Vec<Wall<W>>,
    order: Vec<(String, String)>,
}

impl<W: Weight> Default for PocsetBuilder<W> {
    fn default() -> Self {
        Self::new()
    }
}

impl<W: Weight> PocsetBuilder<W> {
    pub fn new() -> Self {
        PocsetBuilder {
            walls: Vec::new(),
            order: Vec::new(),
        }
    }

    pub fn wall(mut self, id: &str, pos: &str, neg: &str, weight: W) -> Self {
        self.add_wall(id, pos, neg, weight);
        self
    }

    pub fn add_wall(&mut self, id: &str, pos: &str, neg: &str, weight: W) {
        self.walls.push(Wall {
            id: id.into(),
            pos: pos.into(),
            neg: neg.into(),
            weight,
        });
    }

    /// Records `h ⊆ k`.
    pub fn leq(mut self, h: &str, k: &str) -> Self {
        self.add_leq(h, k);
        self
    }

    pub fn add_leq(&mut self, h: &str, k: &str) {
        self.order.push((h.into(), k.into()));
    }

    /// Records `h ⊆ k` together with its mirror `k* ⊆ h*`.
    pub fn add_leq_dual(&mut self, h: &str, k: &str) {
        let (hs, ks) = (self.complement_name(h), self.complement_name(k));
        self.add_leq(h, k);
        if let (Some(hs), Some(ks)) = (hs, ks) {
            self.add_leq(&ks, &hs);
        }
    }

    fn complement_name(&self, h: &str) -> Option<String> {
        self.walls.iter().find_map(|w| {
            if w.pos == h {
                Some(w.neg.clone())
            } else if w.neg == h {
                Some(w.pos.clone())
            } else {
                None
            }
        })
    }

    pub fn validate(&self) -> ValidationReport {
        self.build_inner(true)
            .err()
            .unwrap_or_else(|| ValidationReport {
                valid: true,
                violations: vec![],
            })
    }

    pub fn build(&self) -> std::result::Result<WeightedPocset<W>, ValidationReport> {
        self.build_inner(true)
    }

    fn build_inner(
        &self,
        check_sectors: bool,
    ) -> std::result::Result<WeightedPocset<W>, ValidationReport> {
        let mut report = ValidationReport::default();
        let mut ids = HashSet::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::with_capacity(2 * self.walls.len());
        for (i, w) in self.walls.iter().enumerate() {
            if !ids.insert(w.id.clone()) {
                report.push("DUPLICATE_WALL", format!("wall id {} repeated", w.id), None);
            }
            if w.pos == w.neg {
                report.push(
                    "INVOLUTION_FIXED_POINT",
                    format!("wall {} has {} as its own complement", w.id, w.pos),
                    Some((w.pos.clone(), w.neg.clone())),
                );
            }
            for (side, name) in [(0, &w.pos), (1, &w.neg)] {
                if index.insert(name.clone(), 2 * i + side).is_some() && w.pos != w.neg {
                    report.push(
                        "DUPLICATE_HALFSPACE",
                        format!("halfspace {name} appears twice"),
                        None,
                    );
                }
                names.push(name.clone());
            }
            if !w.weight.is_positive_weight() {
                report.push(
                    "NONPOSITIVE_WEIGHT",
                    format!("wall {} has weight {}", w.id, w.weight.render()),
                    None,
                );
            }
        }
        let mut pairs = Vec::with_capacity(self.order.len());
        for (h, k) in &self.order {
            match (index.get(h), index.get(k)) {
                (Some(&a), Some(&b)) => pairs.push((a, b)),
                _ => report.push(
                    "UNKNOWN_HALFSPACE",
                    format!("order pair ({h}, {k}) names an unknown halfspace"),
                    Some((h.clone(), k.clone())),
                ),
            }
        }
        if !report.violations.is_empty() {
            return Err(report.finish());
        }

        let n = names.len();
        let mut up: Vec<HSet> = (0..n)
            .map(|h| {
                let mut s = HSet::with_capacity(n);
                s.insert(h);
                s
            })
            .collect();
        for &(a, b) in &pairs {
            up[a].insert(b);
        }
        // Warshall closure on rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for h in 0..n {
            for k in up[h].ones() {
                if k != h && up[k].contains(h) && h < k {
                    report.push(
                        "NOT_ANTISYMMETRIC",
                        format!("{} and {} are mutually contained", names[h], names[k]),
                        Some((names[h].clone(), names[k].clone())),
                    );
                }
                if k == star(h) {
                    report.push(
                        "COMPARABLE_WITH_COMPLEMENT",
                        format!("{} <= {}", names[h], names[k]),
                        Some((names[h].clone(), names[k].clone())),
                    );
                } else if !up[star(k)].contains(star(h)) {
                    report.push(
                        "NOT_ORDER_REVERSING",
                        format!(
                            "{} <= {} but not {} <= {}",
                            names[h],
                            names[k],
                            names[star(k)],
                            names[star(h)]
                        ),
                        Some((names[h].clone(), names[k].clone())),
                    );
                }
            }
        }
        if !report.violations.is_empty() {
            return Err(report.finish());
        }
        let mut down: Vec<HSet> = (0..n).map(|_| HSet::with_capacity(n)).collect();
        for h in 0..n {
            for k in up[h].ones() {
                down[k].insert(h);
            }
        }
        let pocset = WeightedPocset {
            walls: self.walls.clone(),
            names,
            index,
            up,
            down,
        };
        for h in 0..n {
            // up(h) meets up(h)* exactly when no ultrafilter contains h.
            let starred = star_set(&pocset.up[h]);
            if pocset.up[h].intersection(&starred).next().is_some() {
                report.push(
                    "IMPROPER_HALFSPACE",
                    format!("{} is empty", pocset.names[h]),
                    None,
                );
            }
        }
        if check_sectors && report.violations.is_empty() && pocset.n_walls() <= SECTOR_CHECK_WALLS {
            pocset.check_sector_equivalence(&mut report);
        }
        if report.violations.is_empty() {
            Ok(pocset)
        } else {
            Err(report.finish())
        }
    }
}

/// Walls up to which validation cross-checks transversality against sectors.
const SECTOR_CHECK_WALLS: usize = 14;

#[derive(Debug, Clone)]
pub struct WeightedPocset<W> {
    walls: Vec<Wall<W>>,
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<HSet>,
    down: Vec<HSet>,
}

impl<W: Weight> WeightedPocset<W> {
    pub fn builder() -> PocsetBuilder<W> {
        PocsetBuilder::new()
    }

    /// The single-point space.
    pub fn empty() -> Self {
        PocsetBuilder::new().build().expect("empty pocset is valid")
    }

    pub fn n_walls(&self) -> usize {
        self.walls.len()
    }

    pub fn n_halfspaces(&self) -> usize {
        self.names.len()
    }

    pub fn walls(&self) -> &[Wall<W>] {
        &self.walls
    }

    pub fn wall(&self, w: WallIx) -> &Wall<W> {
        &self.walls[w]
    }

    pub fn weight(&self, h: Halfspace) -> &W {
        &self.walls[wall_of(h)].weight
    }

    pub fn name(&self, h: Halfspace) -> &str {
        &self.names[h]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<Halfspace> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<Halfspace> {
        self.id(name)
            .ok_or_else(|| Error::UnknownId(name.to_string()))
    }

    pub fn leq(&self, h: Halfspace, k: Halfspace) -> bool {
        self.up[h].contains(k)
    }

    pub fn lt(&self, h: Halfspace, k: Halfspace) -> bool {
        h != k && self.leq(h, k)
    }

    /// `h ∩ k = ∅` as point sets.
    pub fn disjoint(&self, h: Halfspace, k: Halfspace) -> bool {
        self.leq(h, star(k))
    }

    /// `{k : h ≤ k}`, including `h`.
    pub fn up(&self, h: Halfspace) -> &HSet {
        &self.up[h]
    }

    /// `{k : k ≤ h}`, including `h`.
    pub fn down(&self, h: Halfspace) -> &HSet {
        &self.down[h]
    }

    pub fn empty_set(&self) -> HSet {
        HSet::with_capacity(self.n_halfspaces())
    }

    pub fn set_of(&self, items: impl IntoIterator<Item = Halfspace>) -> HSet {
        let mut s = self.empty_set();
        for h in items {
            s.insert(h);
        }
        s
    }

    pub fn names_of(&self, set: &HSet) -> Vec<String> {
        set.ones().map(|h| self.names[h].clone()).collect()
    }

    /// Sum of weights of the halfspaces in `set`; each halfspace counts once.
    pub fn measure(&self, set: &HSet) -> W {
        set.ones()
            .fold(W::zero(), |acc, h| acc + self.weight(h).clone())
    }

    /// Largest wall weight, the mass of the heaviest atom.
    pub fn max_atom(&self) -> W {
        let mut best = W::zero();
        for w in &self.walls {
            if w.weight > best {
                best = w.weight.clone();
            }
        }
        best
    }

    /// Order pairs `h < k` covering the relation (a Hasse diagram).
    pub fn cover_pairs(&self) -> Vec<(Halfspace, Halfspace)> {
        let mut out = Vec::new();
        for h in 0..self.n_halfspaces() {
            for k in self.up[h].ones() {
                if k == h {
                    continue;
                }
                let between = self.up[h]
                    .ones()
                    .any(|j| j != h && j != k && self.up[j].contains(k));
                if !between {
                    out.push((h, k));
                }
            }
        }
        out
    }

    /// A builder reproducing this pocset, used for derived constructions.
    pub fn to_builder(&self) -> PocsetBuilder<W> {
        let mut b = PocsetBuilder::new();
        for w in &self.walls {
            b.add_wall(&w.id, &w.pos, &w.neg, w.weight.clone());
        }
        for (h, k) in self.cover_pairs() {
            b.add_leq(&self.names[h], &self.names[k]);
        }
        b
    }

    /// Same order, different weights.
    pub fn map_weights<V: Weight>(&self, f: impl Fn(&W) -> V) -> WeightedPocset<V> {
        WeightedPocset {
            walls: self
                .walls
                .iter()
                .map(|w| Wall {
                    id: w.id.clone(),
                    pos: w.pos.clone(),
                    neg: w.neg.clone(),
                    weight: f(&w.weight),
                })
                .collect(),
            names: self.names.clone(),
            index: self.index.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
        }
    }

    fn check_sector_equivalence(&self, report: &mut ValidationReport) {
        let Ok(points) = self.points_unbounded() else {
            return;
        };
        let n = self.n_walls();
        for a in 0..n {
            for b in (a + 1)..n {
                let (h, k) = (2 * a, 2 * b);
                let by_order = [h, star(h)].iter().all(|&x| {
                    [k, star(k)]
                        .iter()
                        .all(|&y| !self.leq(x, y) && !self.leq(y, x))
                });
                let by_sectors = [h, star(h)].iter().all(|&x| {
                    [k, star(k)]
                        .iter()
                        .all(|&y| points.iter().any(|p| p.contains(x) && p.contains(y)))
                });
                if by_order != by_sectors {
                    report.push(
                        "TRANSVERSALITY_MISMATCH",
                        format!(
                            "order and sectors disagree on walls {} and {}",
                            self.walls[a].id, self.walls[b].id
                        ),
                        Some((self.names[h].clone(), self.names[k].clone())),
                    );
                }
            }
        }
    }

    /// Structural equality up to halfspace order: same names, weights and relation.
    pub fn same_structure(&self, other: &WeightedPocset<W>) -> bool {
        if self.n_halfspaces() != other.n_halfspaces() {
            return false;
        }
        let mut walls_a: BTreeMap<(String, String), String> = BTreeMap::new();
        for w in &self.walls {
            walls_a.insert((w.pos.clone(), w.neg.clone()), w.weight.render());
        }
        for w in &other.walls {
            let key = (w.pos.clone(), w.neg.clone());
            if walls_a.get(&key) != Some(&w.weight.render()) {
                return false;
            }
        }
        for h in 0..self.n_halfspaces() {
            let Some(oh) = other.id(&self.names[h]) else {
                return false;
            };
            for k in 0..self.n_halfspaces() {
                let Some(ok) = other.id(&self.names[k]) else {
                    return false;
                };
                if self.leq(h, k) != other.leq(oh, ok) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_ratio(n, 1)
    }

    fn square() -> PocsetBuilder<Rational> {
        PocsetBuilder::new()
            .wall("a", "a", "a*", q(1))
            .wall("b", "b", "b*", q(1))
    }

    #[test]
    fn square_is_valid() {
        let r = square().validate();
        assert!(r.valid, "{r:?}");
    }

    #[test]
    fn fixed_point_of_involution_is_rejected() {
        let b = PocsetBuilder::new()
            .wall("a", "a", "a", q(1))
            .wall("b", "b", "b*", q(1));
        let r = b.validate();
        assert!(!r.valid);
        assert!(r.kinds().contains(&"INVOLUTION_FIXED_POINT"));
    }

    #[test]
    fn comparable_with_complement_is_rejected() {
        let r = square().leq("a", "a*").validate();
        assert!(!r.valid);
        let v = r
            .violations
            .iter()
            .find(|v| v.kind == "COMPARABLE_WITH_COMPLEMENT")
            .unwrap();
        assert_eq!(v.pair, Some(("a".into(), "a*".into())));
    }

    #[test]
    fn missing_mirror_pair_is_reported() {
        let b = PocsetBuilder::new()
            .wall("h1", "h1", "h1*", q(1))
            .wall("h2", "h2", "h2*", q(1))
            .leq("h2", "h1");
        let r = b.validate();
        assert!(r.kinds().contains(&"NOT_ORDER_REVERSING"));
    }

    #[test]
    fn nonpositive_weight_and_unknown_names() {
        let r = PocsetBuilder::new()
            .wall("a", "a", "a*", q(0))
            .leq("a", "zz")
            .validate();
        assert!(r.kinds().contains(&"NONPOSITIVE_WEIGHT"));
        assert!(r.kinds().contains(&"UNKNOWN_HALFSPACE"));
    }

    #[test]
    fn antisymmetry_violation() {
        let mut b = PocsetBuilder::new()
            .wall("h", "h", "h*", q(1))
            .wall("k", "k", "k*", q(1));
        b.add_leq_dual("h", "k");
        b.add_leq_dual("k", "h");
        assert!(b.validate().kinds().contains(&"NOT_ANTISYMMETRIC"));
    }

    #[test]
    fn transitive_closure_on_load() {
        let mut b = PocsetBuilder::new()
            .wall("h1", "h1", "h1*", q(1))
            .wall("h2", "h2", "h2*", q(1))
            .wall("h3", "h3", "h3*", q(1));
        b.add_leq_dual("h3", "h2");
        b.add_leq_dual("h2", "h1");
        let p = b.build().unwrap();
        assert!(p.leq(p.id("h3").unwrap(), p.id("h1").unwrap()));
        assert!(p.leq(p.id("h1*").unwrap(), p.id("h3*").unwrap()));
        assert_eq!(p.cover_pairs().len(), 4);
        assert!(p.to_builder().build().unwrap().same_structure(&p));
    }
}
