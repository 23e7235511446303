//! The directed graph of minimal classes and the poset of all classes.
//!
//! Vertices are the minimal classes, one per chain up to equivalence. For
//! chains `i`, `j` in different classes, far halfspaces of `i` are either
//! transverse to every much farther halfspace of `j` or to none of them.
//! The edge `[i] → [j]` records that the first holds for `(i, j)` but not
//! for `(j, i)`.

use std::fmt::Write;

use serde::Serialize;

use super::system::{ChainIx, ChainSystem, Link};
use super::ubs::{Ubs, UbsSummary};
use crate::error::{Error, Result};
use crate::scalar::Weight;

#[derive(Debug, Clone)]
pub struct Vertex {
    /// Chains whose stable tails lie in this class, ascending.
    pub chains: Vec<ChainIx>,
    /// Stabilization index of the least chain.
    pub tail: u64,
    pub rep: Ubs,
}

#[derive(Debug, Clone)]
pub struct UbsGraph {
    pub vertices: Vec<Vertex>,
    /// `edges[u][v]` for `u → v`.
    pub edges: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphLaws {
    pub acyclic: bool,
    /// Reachability implies an edge.
    pub transitive: bool,
    pub vertices: usize,
    /// Largest antichain of a truncation, standing in for the rank.
    pub antichain_bound: usize,
    pub within_bound: bool,
}

impl GraphLaws {
    pub fn hold(&self) -> bool {
        self.acyclic && self.transitive && self.within_bound
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub vertices: Vec<VertexSummary>,
    pub edges: Vec<(String, String)>,
    pub laws: GraphLaws,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexSummary {
    pub name: String,
    pub chains: Vec<String>,
    pub tail: u64,
    pub rep: UbsSummary,
}

/// Class of UBS's determined by a set of minimal classes.
#[derive(Debug, Clone)]
pub struct PosetElement {
    pub vertices: Vec<usize>,
    pub rep: Ubs,
}

impl<W: Weight> ChainSystem<W> {
    /// Far halfspaces of `i` are transverse to much farther ones of `j`.
    fn far_transverse(&self, i: ChainIx, j: ChainIx) -> bool {
        let b = self.bound();
        self.transverse(Link::new(i, b + 1), Link::new(j, 2 * b + 2))
    }

    pub fn ubs_graph(&self) -> Result<UbsGraph> {
        let mut vertices: Vec<Vertex> = Vec::new();
        for i in 0..self.n_chains() {
            let m = self.minimal_tail(i)?;
            if !m.minimal {
                return Err(Error::Invalid(format!(
                    "tail of chain {} has no minimal closure",
                    self.chain_id(i)
                )));
            }
            match vertices
                .iter_mut()
                .find(|v| self.equivalent(&v.rep, &m.ubs))
            {
                Some(v) => v.chains.push(i),
                None => vertices.push(Vertex {
                    chains: vec![i],
                    tail: m.index,
                    rep: m.ubs,
                }),
            }
        }
        let n = vertices.len();
        let mut edges = vec![vec![false; n]; n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    let (i, j) = (vertices[u].chains[0], vertices[v].chains[0]);
                    edges[u][v] = self.far_transverse(i, j) && !self.far_transverse(j, i);
                }
            }
        }
        Ok(UbsGraph { vertices, edges })
    }

    /// Largest antichain among the first `(k + 1)(B + 2)` indices of each
    /// chain, enough room for one far halfspace per chain.
    pub fn rank_proxy(&self) -> usize {
        let t = ((self.n_chains() as u64 + 1) * (self.bound() + 2)).max(self.truncation());
        self.antichain_bound(t)
    }

    pub fn graph_laws(&self, g: &UbsGraph) -> GraphLaws {
        let bound = self.rank_proxy();
        GraphLaws {
            acyclic: g.is_acyclic(),
            transitive: g.is_transitive(),
            vertices: g.vertices.len(),
            antichain_bound: bound,
            within_bound: g.vertices.len() <= bound,
        }
    }

    /// Nonempty vertex sets closed under betweenness, each with the closure
    /// of its stable tails as representative. A set is kept only if the
    /// minimal classes below its representative are exactly the set; the
    /// betweenness test and this check are independent.
    pub fn ubs_poset(&self, g: &UbsGraph) -> Result<Vec<PosetElement>> {
        let n = g.vertices.len();
        if n > 20 {
            return Err(Error::Invalid(format!(
                "{n} vertices is too many to enumerate subsets"
            )));
        }
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let convex = g.is_inseparable(&set);
            let seed = set.iter().fold(Ubs::empty(self.n_chains()), |acc, &v| {
                let c = g.vertices[v].chains[0];
                acc.union(&Ubs::tail(self.n_chains(), c, g.vertices[v].tail))
            });
            let rep = self.closure(&seed);
            let below: Vec<usize> = (0..n)
                .filter(|&v| self.almost_contained(&g.vertices[v].rep, &rep).is_some())
                .collect();
            if convex != (below == set) {
                return Err(Error::Invalid(format!(
                    "betweenness and representative disagree on {set:?}"
                )));
            }
            if convex {
                out.push(PosetElement { vertices: set, rep });
            }
        }
        Ok(out)
    }

    pub fn vertex_name(&self, g: &UbsGraph, v: usize) -> String {
        let ids: Vec<&str> = g.vertices[v]
            .chains
            .iter()
            .map(|&c| self.chain_id(c))
            .collect();
        format!("[{}]", ids.join(","))
    }

    pub fn graph_summary(&self, g: &UbsGraph) -> GraphSummary {
        GraphSummary {
            vertices: (0..g.vertices.len())
                .map(|v| VertexSummary {
                    name: self.vertex_name(g, v),
                    chains: g.vertices[v]
                        .chains
                        .iter()
                        .map(|&c| self.chain_id(c).to_string())
                        .collect(),
                    tail: g.vertices[v].tail,
                    rep: g.vertices[v].rep.summary(self),
                })
                .collect(),
            edges: g
                .edge_list()
                .into_iter()
                .map(|(u, v)| (self.vertex_name(g, u), self.vertex_name(g, v)))
                .collect(),
            laws: self.graph_laws(g),
        }
    }

    pub fn to_dot(&self, g: &UbsGraph) -> String {
        let mut s = String::from("digraph G {\n");
        for v in 0..g.vertices.len() {
            let _ = writeln!(s, "  v{v} [label=\"{}\"];", self.vertex_name(g, v));
        }
        for (u, v) in g.edge_list() {
            let _ = writeln!(s, "  v{u} -> v{v};");
        }
        s.push_str("}\n");
        s
    }
}

impl UbsGraph {
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.edges[u][v])
            .collect()
    }

    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut r = self.edges.clone();
        for m in 0..n {
            for u in 0..n {
                for v in 0..n {
                    if r[u][m] && r[m][v] {
                        r[u][v] = true;
                    }
                }
            }
        }
        r
    }

    pub fn is_acyclic(&self) -> bool {
        let r = self.reachability();
        (0..self.vertices.len()).all(|v| !r[v][v])
    }

    pub fn is_transitive(&self) -> bool {
        let r = self.reachability();
        let n = self.vertices.len();
        (0..n).all(|u| (0..n).all(|v| u == v || r[u][v] == self.edges[u][v]))
    }

    /// Contains every vertex on a directed path between two members.
    pub fn is_inseparable(&self, set: &[usize]) -> bool {
        let r = self.reachability();
        (0..self.vertices.len())
            .filter(|v| !set.contains(v))
            .all(|v| !set.iter().any(|&a| r[a][v]) || !set.iter().any(|&b| r[v][b]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::Chain;
    use crate::fixtures;
    use crate::scalar::Rational;

    #[test]
    fn stairflap_graph() {
        let s = fixtures::stairflap();
        let g = s.ubs_graph().unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edge_list(), vec![(0, 1)]);
        assert_eq!(s.vertex_name(&g, 0), "[H]");
        assert!(s.graph_laws(&g).hold());
        let dot = s.to_dot(&g);
        assert!(dot.contains("v0 -> v1"));
        let poset = s.ubs_poset(&g).unwrap();
        assert_eq!(poset.len(), 3);
    }

    #[test]
    fn independent_chains_have_no_edges() {
        let one = Rational::from_ratio(1, 1);
        let chain = |id: &str| Chain {
            id: id.into(),
            head_weights: vec![],
            weights: vec![one.clone()],
        };
        let s = ChainSystem::new(vec![chain("X"), chain("Y")], vec![], vec![]);
        let g = s.ubs_graph().unwrap();
        assert_eq!((g.vertices.len(), g.edge_list().len()), (2, 0));
        assert_eq!(s.ubs_poset(&g).unwrap().len(), 3);
    }

    #[test]
    fn line_has_one_class() {
        let s = fixtures::line_system();
        let g = s.ubs_graph().unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(s.ubs_poset(&g).unwrap().len(), 1);
    }

    #[test]
    fn path_of_three_skips_the_ends() {
        let g = UbsGraph {
            vertices: (0..3)
                .map(|c| Vertex {
                    chains: vec![c],
                    tail: 0,
                    rep: Ubs::empty(3),
                })
                .collect(),
            edges: vec![
                vec![false, true, true],
                vec![false, false, true],
                vec![false, false, false],
            ],
        };
        assert!(g.is_transitive() && g.is_acyclic());
        assert!(!g.is_inseparable(&[0, 2]));
        assert!(g.is_inseparable(&[0, 1]));
    }
}
