//! Structure-preserving permutations of halfspaces.

use std::collections::{BTreeMap, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::budget::Budget;
use crate::core::{star, HSet, Halfspace, WallIx, WeightedPocset};
use crate::error::{Error, Result};
use crate::scalar::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub name: String,
    /// Image of each halfspace.
    pub map: Vec<Halfspace>,
}

impl Automorphism {
    pub fn identity(n_halfspaces: usize) -> Self {
        Automorphism {
            name: "id".into(),
            map: (0..n_halfspaces).collect(),
        }
    }

    pub fn apply(&self, h: Halfspace) -> Halfspace {
        self.map[h]
    }

    pub fn apply_set(&self, set: &HSet) -> HSet {
        let mut out = HSet::with_capacity(set.len());
        for h in set.ones() {
            out.insert(self.map[h]);
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            name: format!("{}*{}", self.name, other.name),
            map: other.map.iter().map(|&h| self.map[h]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut map = vec![0; self.map.len()];
        for (h, &g) in self.map.iter().enumerate() {
            map[g] = h;
        }
        Automorphism {
            name: format!("{}^-1", self.name),
            map,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(h, &g)| h == g)
    }

    /// Walls `{h, h*}` with `g h = h*`.
    pub fn wall_inversions(&self) -> Vec<WallIx> {
        (0..self.map.len() / 2)
            .filter(|&w| self.map[2 * w] == 2 * w + 1)
            .collect()
    }

    pub fn same_map(&self, other: &Automorphism) -> bool {
        self.map == other.map
    }
}

impl<W: Weight> WeightedPocset<W> {
    /// Checks bijectivity, commuting with `*`, order and weight preservation.
    pub fn check_automorphism(&self, g: &Automorphism) -> Result<()> {
        let n = self.n_halfspaces();
        if g.map.len() != n {
            return Err(Error::NotAnAutomorphism(format!(
                "{} maps {} halfspaces, expected {n}",
                g.name,
                g.map.len()
            )));
        }
        let mut seen = FixedBitSet::with_capacity(n);
        for (h, &gh) in g.map.iter().enumerate() {
            if gh >= n || seen.put(gh) {
                return Err(Error::NotAnAutomorphism(format!(
                    "{} is not a bijection at {}",
                    g.name,
                    self.name(h)
                )));
            }
            if g.map[star(h)] != star(gh) {
                return Err(Error::NotAnAutomorphism(format!(
                    "{} does not commute with * at {}",
                    g.name,
                    self.name(h)
                )));
            }
            if self.weight(h) != self.weight(gh) {
                return Err(Error::NotAnAutomorphism(format!(
                    "{} changes the weight of {}",
                    g.name,
                    self.name(h)
                )));
            }
        }
        for h in 0..n {
            for k in 0..n {
                if self.leq(h, k) != self.leq(g.map[h], g.map[k]) {
                    return Err(Error::NotAnAutomorphism(format!(
                        "{} breaks the order between {} and {}",
                        g.name,
                        self.name(h),
                        self.name(k)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Automorphism from a name map; a missing side is inferred from its complement.
    pub fn automorphism_from_names(
        &self,
        name: &str,
        pairs: &BTreeMap<String, String>,
    ) -> Result<Automorphism> {
        let n = self.n_halfspaces();
        let mut map: Vec<Option<Halfspace>> = vec![None; n];
        for (from, to) in pairs {
            let (h, k) = (self.require(from)?, self.require(to)?);
            for (a, b) in [(h, k), (star(h), star(k))] {
                match map[a] {
                    Some(prev) if prev != b => {
                        return Err(Error::NotAnAutomorphism(format!(
                            "{name}: conflicting images for {}",
                            self.name(a)
                        )))
                    }
                    _ => map[a] = Some(b),
                }
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(h, v)| {
                v.ok_or_else(|| {
                    Error::NotAnAutomorphism(format!("{name}: no image for {}", self.name(h)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let g = Automorphism {
            name: name.to_string(),
            map,
        };
        self.check_automorphism(&g)?;
        Ok(g)
    }

    /// Name map of an automorphism, positive sides only.
    pub fn automorphism_names(&self, g: &Automorphism) -> BTreeMap<String, String> {
        (0..self.n_walls())
            .map(|w| {
                (
                    self.name(2 * w).to_string(),
                    self.name(g.map[2 * w]).to_string(),
                )
            })
            .collect()
    }

    /// All automorphisms, identity first, in backtracking order over
    /// (wall, target wall, orientation).
    pub fn automorphisms(&self, budget: &Budget) -> Result<Vec<Automorphism>> {
        if self.n_walls() > budget.max_walls {
            return Err(Error::WallBudgetExceeded {
                walls: self.n_walls(),
                cap: budget.max_walls,
            });
        }
        let mut search = AutSearch {
            p: self,
            map: vec![usize::MAX; self.n_halfspaces()],
            used: vec![false; self.n_walls()],
            out: Vec::new(),
            nodes: 0,
            budget,
        };
        search.run(0)?;
        for (i, g) in search.out.iter_mut().enumerate() {
            g.name = if i == 0 { "id".into() } else { format!("g{i}") };
        }
        Ok(search.out)
    }
}

struct AutSearch<'a, W> {
    p: &'a WeightedPocset<W>,
    map: Vec<Halfspace>,
    used: Vec<bool>,
    out: Vec<Automorphism>,
    nodes: u64,
    budget: &'a Budget,
}

impl<W: Weight> AutSearch<'_, W> {
    fn fits(&self, w: WallIx) -> bool {
        for v in 0..w {
            for a in [2 * w, 2 * w + 1] {
                for b in [2 * v, 2 * v + 1] {
                    let (ga, gb) = (self.map[a], self.map[b]);
                    if self.p.leq(a, b) != self.p.leq(ga, gb)
                        || self.p.leq(b, a) != self.p.leq(gb, ga)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, w: WallIx) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::NodeBudgetExceeded(self.budget.max_nodes));
        }
        let n = self.p.n_walls();
        if w == n {
            if self.out.len() >= self.budget.max_group_order {
                return Err(Error::NodeBudgetExceeded(
                    self.budget.max_group_order as u64,
                ));
            }
            self.out.push(Automorphism {
                name: String::new(),
                map: self.map.clone(),
            });
            return Ok(());
        }
        for t in 0..n {
            if self.used[t] || self.p.wall(t).weight != self.p.wall(w).weight {
                continue;
            }
            for side in [2 * t, 2 * t + 1] {
                self.map[2 * w] = side;
                self.map[2 * w + 1] = star(side);
                if self.fits(w) {
                    self.used[t] = true;
                    self.run(w + 1)?;
                    self.used[t] = false;
                }
            }
        }
        self.map[2 * w] = usize::MAX;
        self.map[2 * w + 1] = usize::MAX;
        Ok(())
    }
}

/// A finite group of automorphisms with its multiplication table.
pub struct FiniteGroup {
    pub elements: Vec<Automorphism>,
    index: HashMap<Vec<Halfspace>, usize>,
    /// `mul[i][j]` is the index of `elements[i] ∘ elements[j]`.
    mul: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Closure of `gens` under composition, identity first.
    pub fn generate(
        n_halfspaces: usize,
        gens: &[Automorphism],
        budget: &Budget,
    ) -> Result<FiniteGroup> {
        let mut elements = vec![Automorphism::identity(n_halfspaces)];
        let mut index: HashMap<Vec<Halfspace>, usize> = HashMap::new();
        index.insert(elements[0].map.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let next = g.compose(&elements[i]);
                if !index.contains_key(&next.map) {
                    if elements.len() >= budget.max_group_order {
                        return Err(Error::NodeBudgetExceeded(budget.max_group_order as u64));
                    }
                    index.insert(next.map.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(Self::with_elements(elements, index))
    }

    /// The group formed by `elements`, which must be closed under composition.
    pub fn from_elements(elements: Vec<Automorphism>) -> Result<FiniteGroup> {
        let index: HashMap<_, _> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.map.clone(), i))
            .collect();
        for a in &elements {
            for b in &elements {
                if !index.contains_key(&a.compose(b).map) {
                    return Err(Error::Invalid(
                        "element list is not closed under composition".into(),
                    ));
                }
            }
        }
        Ok(Self::with_elements(elements, index))
    }

    fn with_elements(
        elements: Vec<Automorphism>,
        index: HashMap<Vec<Halfspace>, usize>,
    ) -> FiniteGroup {
        let mul = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b).map]).collect())
            .collect();
        FiniteGroup {
            elements,
            index,
            mul,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, g: &Automorphism) -> Option<usize> {
        self.index.get(&g.map).copied()
    }

    fn close(&self, set: &mut FixedBitSet) {
        let mut changed = true;
        while changed {
            changed = false;
            let members: Vec<usize> = set.ones().collect();
            for &a in &members {
                for &b in &members {
                    if set.put(self.mul[a][b]) {
                        continue;
                    }
                    changed = true;
                }
            }
        }
    }

    /// Every subgroup, as element-index sets, in order of discovery from the
    /// trivial group by adjoining one element at a time.
    pub fn subgroups(&self, budget: &Budget) -> Result<Vec<Vec<usize>>> {
        let n = self.order();
        let mut trivial = FixedBitSet::with_capacity(n);
        trivial.insert(0);
        let mut seen: Vec<FixedBitSet> = vec![trivial.clone()];
        let mut known: std::collections::HashSet<FixedBitSet> =
            std::collections::HashSet::from([trivial]);
        let mut i = 0;
        while i < seen.len() {
            let s = seen[i].clone();
            for g in 0..n {
                if s.contains(g) {
                    continue;
                }
                let mut t = s.clone();
                t.insert(g);
                self.close(&mut t);
                if known.insert(t.clone()) {
                    if seen.len() >= budget.max_group_order {
                        return Err(Error::NodeBudgetExceeded(budget.max_group_order as u64));
                    }
                    seen.push(t);
                }
            }
            i += 1;
        }
        Ok(seen.into_iter().map(|s| s.ones().collect()).collect())
    }
}
