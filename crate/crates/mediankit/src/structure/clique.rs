//! Maximum clique by branch and bound with a greedy-colouring bound.

/// Adjacency rows as `u64` masks over at most 64 vertices.
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "clique search is limited to 64 vertices");
        Graph { adj: vec![0; n] }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    fn all(&self) -> u64 {
        if self.adj.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.adj.len()) - 1
        }
    }

    /// Colour classes give an upper bound on the clique inside `cand`.
    fn colour_bound(&self, mut cand: u64) -> usize {
        let mut colours = 0;
        while cand != 0 {
            colours += 1;
            let mut avail = cand;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1 << v) & !self.adj[v];
                cand &= !(1 << v);
            }
        }
        colours
    }

    fn expand(&self, size: usize, cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + self.colour_bound(cand) <= *best {
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= !(1 << v);
            self.expand(size + 1, rest & self.adj[v], best);
        }
    }

    /// Size of a maximum clique inside `cand`.
    pub fn clique_number_in(&self, cand: u64) -> usize {
        let mut best = 0;
        self.expand(0, cand, &mut best);
        best
    }

    /// The lexicographically least maximum clique, as sorted vertices.
    pub fn max_clique(&self) -> Vec<usize> {
        let omega = self.clique_number_in(self.all());
        let mut chosen = Vec::with_capacity(omega);
        let mut cand = self.all();
        for v in 0..self.len() {
            if chosen.len() == omega {
                break;
            }
            if cand & (1 << v) == 0 {
                continue;
            }
            // Later vertices adjacent to v.
            let above = if v == 63 { 0 } else { !((1u64 << (v + 1)) - 1) };
            let next = cand & self.adj[v] & above;
            if chosen.len() + 1 + self.clique_number_in(next) >= omega {
                chosen.push(v);
                cand = next;
            }
        }
        chosen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute(g: &Graph) -> usize {
        let n = g.len();
        (0u64..(1 << n))
            .filter(|&s| (0..n).all(|v| s & (1 << v) == 0 || (s & !(1 << v)) & !g.adj[v] == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(0..11);
            let mut g = Graph::new(n);
            for a in 0..n {
                for b in (a + 1)..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(a, b);
                    }
                }
            }
            let c = g.max_clique();
            assert_eq!(c.len(), brute(&g));
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    assert!(g.adj[a] & (1 << b) != 0);
                }
            }
        }
    }

    #[test]
    fn least_clique_is_chosen() {
        let mut g = Graph::new(6);
        for (a, b) in [(3, 4), (4, 5), (3, 5), (0, 1), (1, 2), (0, 2)] {
            g.add_edge(a, b);
        }
        assert_eq!(g.max_clique(), vec![0, 1, 2]);
    }
}
