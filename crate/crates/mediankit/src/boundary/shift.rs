//! Shift maps between chain systems and transfer characters.
//!
//! A shift map sends `(i, n)` to `(τ(i), n + s_i)` for `n ≥ n_0`. On a class
//! it preserves, the transfer character `ν(g⁻¹Ω ∖ Ω) - ν(Ω ∖ g⁻¹Ω)` is
//! finite and does not depend on the representative.

use serde::Serialize;

use super::graph::UbsGraph;
use super::system::{ChainIx, ChainSystem, Link};
use super::ubs::{IndexSet, Ubs};
use crate::error::{Error, Result};
use crate::scalar::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftMap {
    pub tau: Vec<ChainIx>,
    pub shift: Vec<i64>,
    pub min_index: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChiVector {
    /// Vertex names, in graph order.
    pub classes: Vec<String>,
    pub chi: Vec<String>,
    /// Every component vanishes.
    pub in_kernel: bool,
}

impl ShiftMap {
    pub fn new(tau: Vec<ChainIx>, shift: Vec<i64>, min_index: u64) -> Self {
        ShiftMap {
            tau,
            shift,
            min_index,
        }
    }

    pub fn identity(n_chains: usize) -> Self {
        ShiftMap::new((0..n_chains).collect(), vec![0; n_chains], 0)
    }

    pub fn apply(&self, h: Link) -> Option<Link> {
        if h.index < self.min_index {
            return None;
        }
        let n = h.index as i64 + self.shift[h.chain];
        (n >= 0).then(|| Link::new(self.tau[h.chain], n as u64))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ShiftMap) -> ShiftMap {
        let k = inner.tau.len();
        let tau = (0..k).map(|i| self.tau[inner.tau[i]]).collect();
        let shift = (0..k)
            .map(|i| inner.shift[i] + self.shift[inner.tau[i]])
            .collect();
        let need = (0..k)
            .map(|i| self.min_index as i64 - inner.shift[i])
            .max()
            .unwrap_or(0);
        ShiftMap::new(tau, shift, inner.min_index.max(need.max(0) as u64))
    }

    fn max_shift(&self) -> u64 {
        self.shift
            .iter()
            .map(|s| s.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Halfspaces mapped into `u`.
    pub fn preimage(&self, u: &Ubs) -> Ubs {
        let sets = (0..self.tau.len())
            .map(|i| {
                let target = &u.sets[self.tau[i]];
                let s = self.shift[i];
                let back = |n: u64| -> Option<u64> {
                    let m = n as i64 - s;
                    (m >= self.min_index as i64).then_some(m as u64)
                };
                let finite = target.finite.iter().filter_map(|&n| back(n));
                let tail = target
                    .tail
                    .map(|t| (t as i64 - s).max(self.min_index as i64) as u64);
                IndexSet::from_parts(finite, tail)
            })
            .collect();
        Ubs { sets }
    }

    /// Relations and weights carried from `src` to `dst` on a block long
    /// enough to show every periodic behaviour of both.
    pub fn check<W: Weight>(&self, src: &ChainSystem<W>, dst: &ChainSystem<W>) -> Result<()> {
        let k = src.n_chains();
        if self.tau.len() != k || self.shift.len() != k || dst.n_chains() != k {
            return Err(Error::Invalid(
                "shift map size does not match the chain count".into(),
            ));
        }
        let mut seen = vec![false; k];
        for &t in &self.tau {
            if t >= k || std::mem::replace(&mut seen[t], true) {
                return Err(Error::Invalid("tau is not a permutation".into()));
            }
        }
        let n0 = self.min_index + self.max_shift();
        let len = src.truncation().max(dst.truncation())
            + self.max_shift()
            + src.lcm_period() * dst.lcm_period();
        let links: Vec<Link> = (0..k)
            .flat_map(|c| (n0..n0 + len).map(move |n| Link::new(c, n)))
            .collect();
        for &a in &links {
            let ga = self.apply(a).expect("in domain");
            if src.weight(a) != dst.weight(ga) {
                return Err(Error::Invalid(format!(
                    "weight of {} not preserved",
                    src.link_name(a)
                )));
            }
            for &b in &links {
                let gb = self.apply(b).expect("in domain");
                if src.rel(a, b) != dst.rel(ga, gb) {
                    return Err(Error::Invalid(format!(
                        "relation of {} and {} not preserved",
                        src.link_name(a),
                        src.link_name(b)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl<W: Weight> ChainSystem<W> {
    /// `χ_Ω(g)`, computed on the far part of `Ω` so that every preimage is
    /// defined.
    pub fn transfer_character(&self, u: &Ubs, g: &ShiftMap) -> Result<W> {
        let far = u.from_index(g.min_index + g.max_shift());
        let back = g.preimage(&far);
        let (Some(plus), Some(minus)) = (
            self.almost_contained(&back, &far),
            self.almost_contained(&far, &back),
        ) else {
            return Err(Error::ClassNotPreserved(format!(
                "{:?}",
                u.summary(self).chains
            )));
        };
        Ok(plus - minus)
    }

    /// Transfer characters of every minimal class.
    pub fn chi_vector(&self, graph: &UbsGraph, g: &ShiftMap) -> Result<Vec<W>> {
        let reps: Vec<&Ubs> = graph.vertices.iter().map(|v| &v.rep).collect();
        reps.iter()
            .enumerate()
            .map(|(v, rep)| {
                let back = g.preimage(rep);
                if let Some(w) =
                    (0..reps.len()).find(|&w| w != v && self.equivalent(&back, reps[w]))
                {
                    return Err(Error::ClassPermuted(format!(
                        "{} goes to {}",
                        self.vertex_name(graph, w),
                        self.vertex_name(graph, v)
                    )));
                }
                self.transfer_character(rep, g)
            })
            .collect()
    }

    pub fn chi_summary(&self, graph: &UbsGraph, chi: &[W]) -> ChiVector {
        ChiVector {
            classes: (0..graph.vertices.len())
                .map(|v| self.vertex_name(graph, v))
                .collect(),
            chi: chi.iter().map(Weight::render).collect(),
            in_kernel: chi.iter().all(|c| c.is_zero()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_ratio(n, 1)
    }

    #[test]
    fn line_shift_moves_one_wall() {
        let s = fixtures::line_system();
        let g = fixtures::line_shift();
        g.check(&s, &s).unwrap();
        let omega = s.tail_closure(0, 0);
        assert_eq!(s.transfer_character(&omega, &g).unwrap(), r(1));
        assert_eq!(
            s.transfer_character(&s.tail_closure(0, 3), &g).unwrap(),
            r(1)
        );
        assert_eq!(s.transfer_character(&omega, &g.compose(&g)).unwrap(), r(2));
        assert_eq!(
            s.transfer_character(&omega, &ShiftMap::identity(1))
                .unwrap(),
            r(0)
        );
    }

    #[test]
    fn stairflap_chi() {
        let s = fixtures::stairflap();
        let g = fixtures::stairflap_shift();
        g.check(&s, &s).unwrap();
        let graph = s.ubs_graph().unwrap();
        assert_eq!(s.chi_vector(&graph, &g).unwrap(), vec![r(1), r(1)]);
        assert_eq!(
            s.chi_vector(&graph, &g.compose(&g)).unwrap(),
            vec![r(2), r(2)]
        );
        let poset = s.ubs_poset(&graph).unwrap();
        let chi = s.chi_vector(&graph, &g).unwrap();
        for e in poset {
            let sum = e.vertices.iter().fold(r(0), |acc, &v| acc + chi[v].clone());
            assert_eq!(s.transfer_character(&e.rep, &g).unwrap(), sum);
        }
    }

    #[test]
    fn corner_translations_and_rotation() {
        let sys = fixtures::corner4();
        let t = fixtures::corner_translation(0, 1, 0);
        t.check(&sys[0], &sys[0]).unwrap();
        let graph = sys[0].ubs_graph().unwrap();
        assert_eq!(sys[0].chi_vector(&graph, &t).unwrap(), vec![r(1), r(0)]);
        let west = fixtures::corner_translation(1, 1, 0);
        assert_eq!(
            sys[1]
                .chi_vector(&sys[1].ubs_graph().unwrap(), &west)
                .unwrap(),
            vec![r(-1), r(0)]
        );
        let rot = fixtures::corner_rotation();
        for c in 0..4 {
            rot.check(&sys[c], &sys[(c + 1) % 4]).unwrap();
        }
        let full = rot.compose(&rot).compose(&rot).compose(&rot);
        assert_eq!(full, ShiftMap::identity(2));
        assert_eq!(
            sys[0].chi_vector(&graph, &rot).unwrap_err().code(),
            "CLASS_PERMUTED"
        );
    }

    #[test]
    fn stairflap_shift_rejects_wrong_relations() {
        let s = fixtures::stairflap();
        let swap = ShiftMap::new(vec![1, 0], vec![0, 0], 0);
        assert!(swap.check(&s, &s).is_err());
    }
}
