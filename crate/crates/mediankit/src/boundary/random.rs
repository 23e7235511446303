//! Random consistent chain systems.
//!
//! Chains are split into clusters, transverse to each other. In a staircase
//! cluster a random partial order decides which chains sit above which, and
//! `(l, m) ⊆ (j, n)` for `l` below `j` once `m - n ≥ q_l - q_j` for integer
//! potentials `q`; every chain is its own minimal class. In an interleaved
//! cluster chain `j` is the set of thresholds `c n + r_j` with distinct
//! residues `r_j < c`, so all chains are nested both ways and form one class.

use rand::seq::SliceRandom;
use rand::Rng;

use super::shift::ShiftMap;
use super::system::{Chain, ChainSystem, HeadEntry, Link, PeriodicRule, Rel};
use crate::scalar::Weight;

fn random_weight<W: Weight, R: Rng>(rng: &mut R) -> W {
    W::from_ratio(rng.gen_range(1..=4), rng.gen_range(1..=3))
}

/// A random valid system with at most `max_chains` chains. Random head
/// exceptions are kept only when the system stays valid.
pub fn random_system<W: Weight, R: Rng>(rng: &mut R, max_chains: usize) -> ChainSystem<W> {
    let k = rng.gen_range(1..=max_chains.max(1));
    let chains: Vec<Chain<W>> = (0..k)
        .map(|i| Chain {
            id: format!("C{i}"),
            head_weights: (0..rng.gen_range(0..=2))
                .map(|_| random_weight(rng))
                .collect(),
            weights: (0..rng.gen_range(1..=3))
                .map(|_| random_weight(rng))
                .collect(),
        })
        .collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let mut rules = Vec::new();
    let mut rest = &order[..];
    while !rest.is_empty() {
        let size = rng.gen_range(1..=rest.len());
        let (cluster, tail) = rest.split_at(size);
        rest = tail;
        if rng.gen_bool(0.6) {
            staircase(rng, cluster, &mut rules);
        } else {
            interleaved(rng, cluster, &mut rules);
        }
    }
    let mut s = ChainSystem::new(chains, Vec::new(), rules);
    for _ in 0..rng.gen_range(0..=2) {
        if k < 2 {
            break;
        }
        let (a, b) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if a == b {
            continue;
        }
        let rel = [Rel::Sub, Rel::Sup, Rel::Transverse][rng.gen_range(0..3)];
        let entry = HeadEntry {
            a: Link::new(a, rng.gen_range(0..3)),
            b: Link::new(b, rng.gen_range(0..3)),
            rel,
        };
        s.head.push(entry);
        if !s.validate().valid {
            s.head.pop();
        }
    }
    s
}

fn staircase<R: Rng>(rng: &mut R, cluster: &[usize], rules: &mut Vec<PeriodicRule>) {
    let c = cluster.len();
    let q: Vec<i64> = (0..c).map(|_| rng.gen_range(-2..=2)).collect();
    // above[a][b]: cluster member a sits above member b; a < b keeps it acyclic.
    let mut above = vec![vec![false; c]; c];
    for a in 0..c {
        for b in a + 1..c {
            above[a][b] = rng.gen_bool(0.5);
        }
    }
    for m in 0..c {
        for a in 0..c {
            for b in 0..c {
                if above[a][m] && above[m][b] {
                    above[a][b] = true;
                }
            }
        }
    }
    for j in 0..c {
        for l in 0..c {
            if above[j][l] {
                let d = q[l] - q[j];
                rules.push(
                    PeriodicRule::new(cluster[l], cluster[j], Rel::Sub).offsets(None, Some(-d)),
                );
            }
        }
    }
}

fn interleaved<R: Rng>(rng: &mut R, cluster: &[usize], rules: &mut Vec<PeriodicRule>) {
    let c = cluster.len();
    let mut r: Vec<i64> = (0..c as i64).collect();
    r.shuffle(rng);
    for a in 0..c {
        for b in a + 1..c {
            // c n + r_a ≥ c m + r_b exactly when m - n ≤ cut.
            let cut = if r[a] > r[b] { 0 } else { -1 };
            rules
                .push(PeriodicRule::new(cluster[a], cluster[b], Rel::Sub).offsets(None, Some(cut)));
            rules.push(
                PeriodicRule::new(cluster[a], cluster[b], Rel::Sup).offsets(Some(cut + 1), None),
            );
        }
    }
}

/// Shift of every chain by `t` full periods, defined past all exceptions.
pub fn periodic_shift<W: Weight>(s: &ChainSystem<W>, t: i64) -> ShiftMap {
    let k = s.n_chains();
    let step = s.lcm_period() as i64 * t;
    let n0 = s.bound() + step.unsigned_abs();
    ShiftMap::new((0..k).collect(), vec![step; k], n0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_systems_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let s: ChainSystem<Rational> = random_system(&mut rng, 5);
            assert!(s.validate().valid, "{:?}", s.validate().violations);
            periodic_shift(&s, 1).check(&s, &s).unwrap();
        }
    }

    #[test]
    fn random_graphs_obey_the_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..60 {
            let s: ChainSystem<Rational> = random_system(&mut rng, 5);
            let g = s.ubs_graph().unwrap();
            let laws = s.graph_laws(&g);
            assert!(laws.hold(), "{laws:?}");
            s.ubs_poset(&g).unwrap();
            let t = periodic_shift(&s, 1);
            let chi = s.chi_vector(&g, &t).unwrap();
            for (v, c) in chi.iter().enumerate() {
                let moved = g.vertices[v].rep.from_index(g.vertices[v].tail + 3);
                assert_eq!(&s.transfer_character(&moved, &t).unwrap(), c);
            }
        }
    }
}
