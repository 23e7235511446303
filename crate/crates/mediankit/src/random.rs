//! Random pocsets, convex sets and products for property tests.
//!
//! A random pocset is read off a random vertex set `V` of a cube: each
//! coordinate that splits `V` is a wall, halfspaces are ordered by inclusion
//! as subsets of `V`, and coordinates splitting `V` the same way are merged.
//! The result is always valid and its points are the median hull of `V`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::core::{ConvexSet, PocsetBuilder, Point, WeightedPocset};
use crate::error::Result;
use crate::scalar::Weight;
use crate::structure::product;

/// Random pocset on at most `max_walls` walls (at least one), names
/// prefixed by `prefix`.
pub fn random_pocset<W: Weight, R: Rng>(
    rng: &mut R,
    max_walls: usize,
    prefix: &str,
) -> WeightedPocset<W> {
    loop {
        let dim = rng.gen_range(1..=max_walls.max(1));
        let n_vertices = rng.gen_range(2..=(2 * dim + 2).min(1 << dim.min(10)));
        let vertices: BTreeSet<u32> = (0..n_vertices)
            .map(|_| rng.gen_range(0..1u32 << dim))
            .collect();
        let vertices: Vec<u32> = vertices.into_iter().collect();
        // Each splitting coordinate as the set of vertices on its positive side.
        let mut cuts: Vec<Vec<bool>> = Vec::new();
        for c in 0..dim {
            let side: Vec<bool> = vertices.iter().map(|v| v >> c & 1 == 1).collect();
            let flipped: Vec<bool> = side.iter().map(|b| !b).collect();
            if side.iter().all(|&b| b)
                || side.iter().all(|&b| !b)
                || cuts.contains(&side)
                || cuts.contains(&flipped)
            {
                continue;
            }
            cuts.push(side);
        }
        if cuts.is_empty() {
            continue;
        }
        let mut b = PocsetBuilder::new();
        let names: Vec<[String; 2]> = (0..cuts.len())
            .map(|i| [format!("{prefix}h{i}"), format!("{prefix}h{i}*")])
            .collect();
        for (i, n) in names.iter().enumerate() {
            b.add_wall(
                &format!("{prefix}w{i}"),
                &n[0],
                &n[1],
                W::from_ratio(rng.gen_range(1..=3), rng.gen_range(1..=2)),
            );
        }
        let sides =
            |i: usize, s: usize| -> Vec<bool> { cuts[i].iter().map(|&x| x == (s == 0)).collect() };
        for i in 0..cuts.len() {
            for j in 0..cuts.len() {
                if i == j {
                    continue;
                }
                for s in 0..2 {
                    for t in 0..2 {
                        let (a, c) = (sides(i, s), sides(j, t));
                        if a.iter().zip(&c).all(|(&x, &y)| !x || y) {
                            b.add_leq(&names[i][s], &names[j][t]);
                        }
                    }
                }
            }
        }
        return b
            .build()
            .expect("inclusion order of a vertex set is a valid pocset");
    }
}

/// Random pocset that does not split as a product.
pub fn random_irreducible<W: Weight, R: Rng>(
    rng: &mut R,
    max_walls: usize,
    prefix: &str,
) -> WeightedPocset<W> {
    loop {
        let p = random_pocset(rng, max_walls, prefix);
        if p.is_irreducible() {
            return p;
        }
    }
}

/// Two irreducible factors and their product.
pub fn random_product<W: Weight, R: Rng>(
    rng: &mut R,
    max_walls: usize,
) -> (WeightedPocset<W>, WeightedPocset<W>, WeightedPocset<W>) {
    let a = random_irreducible(rng, max_walls, "a");
    let b = random_irreducible(rng, max_walls, "b");
    let p = product(&[&a, &b]);
    (a, b, p)
}

/// Convex hull of one to three random points.
pub fn random_convex<W: Weight, R: Rng>(
    rng: &mut R,
    p: &WeightedPocset<W>,
    points: &[Point],
) -> Result<ConvexSet> {
    let k = rng.gen_range(1..=3.min(points.len()));
    let chosen: Vec<Point> = points.choose_multiple(rng, k).cloned().collect();
    p.convex_hull(&chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::scalar::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_pocsets_are_valid_and_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p: WeightedPocset<Rational> = random_pocset(&mut rng, 10, "");
            assert!(p.n_walls() >= 1 && p.n_walls() <= 10);
            assert!(p.to_builder().validate().valid);
            assert!(!p.points(&Budget::default()).unwrap().is_empty());
        }
    }

    #[test]
    fn random_products_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let (_, _, p) = random_product::<Rational, _>(&mut rng, 4);
            assert_eq!(p.decompose().unwrap().factors.len(), 2);
        }
    }
}
