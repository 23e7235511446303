//! Minimum chain covers of finite posets by bipartite matching.
//!
//! Matching `a → b` for each strict relation `a < b` and following matched
//! edges splits the poset into `n - |matching|` chains, which by Dilworth
//! equals the largest antichain.

use super::system::{ChainSystem, Link};
use crate::scalar::Weight;

/// Chains covering `0..n` under the strict order `lt`, each listed bottom up.
pub fn min_chain_cover(n: usize, lt: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| a != b && lt(a, b)).collect())
        .collect();
    // matched_to[b] = a when a → b is in the matching.
    let mut matched_to: Vec<Option<usize>> = vec![None; n];
    for a in 0..n {
        let mut seen = vec![false; n];
        augment(a, &succ, &mut seen, &mut matched_to);
    }
    let mut next = vec![None; n];
    for (b, a) in matched_to.iter().enumerate() {
        if let Some(a) = *a {
            next[a] = Some(b);
        }
    }
    (0..n)
        .filter(|&b| matched_to[b].is_none())
        .map(|start| {
            let mut chain = vec![start];
            while let Some(b) = next[*chain.last().expect("nonempty")] {
                chain.push(b);
            }
            chain
        })
        .collect()
}

fn augment(
    a: usize,
    succ: &[Vec<usize>],
    seen: &mut [bool],
    matched_to: &mut [Option<usize>],
) -> bool {
    for &b in &succ[a] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if matched_to[b].is_none_or(|a2| augment(a2, succ, seen, matched_to)) {
            matched_to[b] = Some(a);
            return true;
        }
    }
    false
}

/// Largest antichain size, via the cover.
pub fn width(n: usize, lt: impl Fn(usize, usize) -> bool) -> usize {
    min_chain_cover(n, lt).len()
}

/// Minimum chain cover of a finite set of halfspaces under strict inclusion.
pub fn chain_cover_links<W: Weight>(s: &ChainSystem<W>, links: &[Link]) -> Vec<Vec<Link>> {
    min_chain_cover(links.len(), |a, b| {
        links[a] != links[b] && s.leq(links[a], links[b])
    })
    .into_iter()
    .map(|c| c.into_iter().map(|i| links[i]).collect())
    .collect()
}

/// Largest antichain by trying every subset; an oracle for small posets.
pub fn max_antichain_brute(n: usize, lt: impl Fn(usize, usize) -> bool) -> usize {
    assert!(n <= 20, "brute force is limited to 20 elements");
    (0u32..1 << n)
        .filter(|&m| {
            let inside = |a: usize| m >> a & 1 == 1;
            (0..n).all(|a| !inside(a) || (0..n).all(|b| !inside(b) || !lt(a, b)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Random strict order on `0..n`: a random DAG compatible with `0 < 1 < ...`,
/// transitively closed.
pub fn random_order<R: rand::Rng>(rng: &mut R, n: usize) -> Vec<Vec<bool>> {
    let p = rng.gen_range(0.0..0.6);
    let mut lt = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            lt[a][b] = rng.gen_bool(p);
        }
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if lt[a][m] && lt[m][b] {
                    lt[a][b] = true;
                }
            }
        }
    }
    lt
}

impl<W: Weight> ChainSystem<W> {
    /// Largest antichain among halfspaces of index below `t`.
    pub fn antichain_bound(&self, t: u64) -> usize {
        let links = self.links_below(t);
        width(links.len(), |a, b| self.leq(links[a], links[b]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_cover(n: usize, lt: &dyn Fn(usize, usize) -> bool, cover: &[Vec<usize>]) {
        let mut seen = vec![0; n];
        for c in cover {
            for w in c.windows(2) {
                assert!(lt(w[0], w[1]));
            }
            for &x in c {
                seen[x] += 1;
            }
        }
        assert!(seen.iter().all(|&k| k == 1));
    }

    #[test]
    fn small_posets() {
        assert_eq!(min_chain_cover(5, |a, b| a < b).len(), 1);
        assert_eq!(min_chain_cover(3, |_, _| false).len(), 3);
        assert!(min_chain_cover(0, |_, _| false).is_empty());
    }

    #[test]
    fn stairflap_truncation() {
        let s = fixtures::stairflap();
        let (h, k) = (0, 1);
        let d = [Link::new(h, 0), Link::new(k, 0), Link::new(k, 1)];
        // k_1 ⊆ k_0 ⊆ h_0 is a single chain.
        let cover = chain_cover_links(&s, &d);
        assert_eq!(
            cover,
            vec![vec![Link::new(k, 1), Link::new(k, 0), Link::new(h, 0)]]
        );
    }

    #[test]
    fn random_posets_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(0..=12);
            let lt = random_order(&mut rng, n);
            let f = |a: usize, b: usize| lt[a][b];
            let cover = min_chain_cover(n, f);
            check_cover(n, &f, &cover);
            assert_eq!(cover.len(), max_antichain_brute(n, f));
        }
    }
}
