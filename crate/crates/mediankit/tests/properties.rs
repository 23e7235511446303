//! Invariants over random pocsets, products, subdivisions and chain systems.
//! Each case draws a seed and builds its instance from it, so a failing seed
//! reproduces the whole instance.

use mediankit::actions::Action;
use mediankit::boundary::random::random_system;
use mediankit::boundary::{IndexSet, Link, Ubs};
use mediankit::fixtures;
use mediankit::io;
use mediankit::random::{random_convex, random_irreducible, random_pocset};
use mediankit::structure::{product, Automorphism};
use mediankit::{Budget, ChainSys, Pocset, Point, Rational, Weight};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pocset(seed: u64, walls: usize) -> (Pocset, Vec<Point>, ChaCha8Rng) {
    let mut r = rng(seed);
    let p: Pocset = random_pocset(&mut r, walls, "");
    let pts = p.points(&Budget::default()).unwrap();
    (p, pts, r)
}

fn pick<'a>(r: &mut ChaCha8Rng, pts: &'a [Point]) -> &'a Point {
    pts.choose(r).unwrap()
}

/// Two halfspaces share a point, by enumeration.
fn meet(pts: &[Point], a: usize, b: usize) -> bool {
    pts.iter().any(|x| x.contains(a) && x.contains(b))
}

/// Subgroup generated by up to two random automorphisms.
fn random_generators(r: &mut ChaCha8Rng, p: &Pocset) -> Vec<Automorphism> {
    let all = p.automorphisms(&Budget::default()).unwrap();
    let k = r.gen_range(1..=2);
    (0..k).map(|_| all.choose(r).unwrap().clone()).collect()
}

fn fixed_by(gens: &[Automorphism], x: &Point) -> bool {
    gens.iter().all(|g| g.apply_set(x) == *x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn median_axioms(seed in any::<u64>()) {
        let (p, pts, mut r) = pocset(seed, 8);
        for _ in 0..20 {
            let (x, y, z) = (pick(&mut r, &pts), pick(&mut r, &pts), pick(&mut r, &pts));
            let m = p.median(x, y, z);
            prop_assert_eq!(&m, &p.median(y, x, z));
            prop_assert_eq!(&m, &p.median(z, y, x));
            prop_assert_eq!(&m, &p.median(x, z, y));
            prop_assert_eq!(&p.median(x, x, y), x);
            let inside: Vec<&Point> = pts
                .iter()
                .filter(|w| p.in_interval(w, x, y) && p.in_interval(w, y, z) && p.in_interval(w, z, x))
                .collect();
            prop_assert_eq!(inside, vec![&m]);
        }
    }

    #[test]
    fn metric_axioms(seed in any::<u64>()) {
        let (p, pts, mut r) = pocset(seed, 8);
        let zero = Rational::from_ratio(0, 1);
        for _ in 0..20 {
            let (x, y, z) = (pick(&mut r, &pts), pick(&mut r, &pts), pick(&mut r, &pts));
            let (dxy, dyz, dxz) = (p.distance(x, y), p.distance(y, z), p.distance(x, z));
            prop_assert_eq!(&dxy, &p.distance(y, x));
            prop_assert_eq!(dxy == zero, x == y);
            prop_assert!(dxz <= dxy.clone() + dyz);
            let by_walls = (0..p.n_walls())
                .filter(|&w| x.contains(2 * w) != y.contains(2 * w))
                .fold(zero.clone(), |acc, w| acc + p.weight(2 * w).clone());
            prop_assert_eq!(&dxy, &by_walls);
            prop_assert_eq!(dxy, p.measure(&p.separating_points(x, y)));
        }
    }

    #[test]
    fn gate_law(seed in any::<u64>()) {
        let (p, pts, mut r) = pocset(seed, 8);
        let c = random_convex(&mut r, &p, &pts).unwrap();
        let x = pick(&mut r, &pts).clone();
        let g = p.gate_project(&c, &x);
        prop_assert!(c.contains(&g));
        for z in pts.iter().filter(|z| c.contains(z)) {
            prop_assert!(p.in_interval(&g, &x, z));
        }
    }

    #[test]
    fn helly_for_convex_hulls(seed in any::<u64>()) {
        let (p, pts, mut r) = pocset(seed, 8);
        let sets: Vec<_> = (0..3).map(|_| random_convex(&mut r, &p, &pts).unwrap()).collect();
        let pairwise = (0..3).all(|i| (i + 1..3).all(|j| pts.iter().any(|x| sets[i].contains(x) && sets[j].contains(x))));
        let common = pts.iter().any(|x| sets.iter().all(|c| c.contains(x)));
        prop_assert!(!pairwise || common);
        let met = sets[0].meet(&sets[1], &p).and_then(|m| m.meet(&sets[2], &p));
        prop_assert_eq!(met.is_some(), common);
    }

    /// A chain whose extremes `h_1*` and `h_k` share a point has at most
    /// `2 rank` members. In a finite model `h_k ⊆ h_1` makes the premise
    /// fail for every chain, which is asserted too.
    #[test]
    fn halfspace_chain_bound(seed in any::<u64>()) {
        let (p, pts, _) = pocset(seed, 8);
        let rank = p.rank(&Budget::default()).unwrap();
        for top in 0..p.n_halfspaces() {
            for bottom in 0..p.n_halfspaces() {
                if !p.lt(bottom, top) {
                    continue;
                }
                let premise = meet(&pts, top ^ 1, bottom);
                prop_assert!(!premise);
                let longest = longest_chain(&p, bottom, top);
                prop_assert!(!premise || longest <= 2 * rank);
            }
        }
    }

    #[test]
    fn facing_triples_found_iff_present(seed in any::<u64>()) {
        let (p, pts, _) = pocset(seed, 7);
        let n = p.n_halfspaces();
        let brute = (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| {
            !meet(&pts, a, b) && !meet(&pts, a, c) && !meet(&pts, b, c)
        })));
        match p.facing_tuple(3, None, false, &Budget::default()) {
            Ok(t) => {
                prop_assert!(brute);
                prop_assert!(!meet(&pts, t[0], t[1]) && !meet(&pts, t[0], t[2]) && !meet(&pts, t[1], t[2]));
            }
            Err(e) => {
                prop_assert_eq!(e.code(), "NOT_FOUND");
                prop_assert!(!brute);
            }
        }
    }

    #[test]
    fn products_split_and_add(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a: Pocset = random_irreducible(&mut r, 4, "a");
        let c: Pocset = random_irreducible(&mut r, 4, "c");
        let pc = product(&[&a, &c]);
        let b = Budget::default();
        prop_assert_eq!(pc.rank(&b).unwrap(), a.rank(&b).unwrap() + c.rank(&b).unwrap());
        let (pa, pcc, pts) = (a.points(&b).unwrap(), c.points(&b).unwrap(), pc.points(&b).unwrap());
        prop_assert_eq!(pts.len(), pa.len() * pcc.len());
        let d = pc.decompose().unwrap();
        prop_assert_eq!(d.factors.len(), 2);
        let (f0, f1) = (&d.factors[0], &d.factors[1]);
        prop_assert!((f0.same_structure(&a) && f1.same_structure(&c)) || (f0.same_structure(&c) && f1.same_structure(&a)));
        for _ in 0..10 {
            let (x, y) = (pick(&mut r, &pts), pick(&mut r, &pts));
            let sum = f0.distance(&d.project(x, 0), &d.project(y, 0)) + f1.distance(&d.project(x, 1), &d.project(y, 1));
            prop_assert_eq!(sum, pc.distance(x, y));
        }
    }

    #[test]
    fn factor_permutation_respects_composition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a: Pocset = random_irreducible(&mut r, 3, "a");
        let a2 = a.map_weights(|w| w.clone());
        let p = product(&[&a, &a2]);
        let d = p.decompose().unwrap();
        let all = p.automorphisms(&Budget::default()).unwrap();
        for _ in 0..10 {
            let (g, h) = (all.choose(&mut r).unwrap(), all.choose(&mut r).unwrap());
            let (pg, ph) = (p.factor_permutation(&d, g).unwrap(), p.factor_permutation(&d, h).unwrap());
            let pgh = p.factor_permutation(&d, &g.compose(h)).unwrap();
            let composed: Vec<usize> = ph.iter().map(|&i| pg[i]).collect();
            prop_assert_eq!(pgh, composed);
        }
    }

    #[test]
    fn subdivision_is_isometric_and_hull_dense(seed in any::<u64>()) {
        let (p, pts, _) = pocset(seed, 6);
        let s = p.subdivide();
        let b = Budget::default();
        let child = s.child.points(&b).unwrap();
        let embedded: Vec<Point> = pts.iter().map(|x| s.embed(x)).collect();
        for (x, ex) in pts.iter().zip(&embedded) {
            for (y, ey) in pts.iter().zip(&embedded) {
                prop_assert_eq!(s.child.distance(ex, ey), p.distance(x, y));
            }
        }
        let hull = s.child.convex_hull(&embedded).unwrap();
        prop_assert!(child.iter().all(|y| hull.contains(y)));
        prop_assert_eq!(s.child.rank(&b).unwrap(), p.rank(&b).unwrap());
    }

    #[test]
    fn lifted_groups_fix_a_point(seed in any::<u64>()) {
        let (p, pts, mut r) = pocset(seed, 6);
        let gens = random_generators(&mut r, &p);
        let s = p.subdivide();
        let lifted: Vec<Automorphism> = gens.iter().map(|g| s.lift(g).unwrap()).collect();
        let child = s.child.points(&Budget::default()).unwrap();
        prop_assert!(child.iter().any(|y| fixed_by(&lifted, y)));
        for x in &pts {
            prop_assert_eq!(fixed_by(&gens, x), fixed_by(&lifted, &s.embed(x)));
        }
    }

    #[test]
    fn orbits_respect_the_rank_bound(seed in any::<u64>()) {
        let (p, _, mut r) = pocset(seed, 6);
        let gens = random_generators(&mut r, &p);
        let act = Action::from_automorphisms(p, &gens).unwrap();
        let b = Budget::default();
        let min = act.min_orbit(&b).unwrap();
        let via = act.orbit_via_subdivision(&b).unwrap();
        prop_assert!(min.size <= min.bound);
        prop_assert!(via.size <= via.bound);
        prop_assert!(min.size <= via.size);
    }

    #[test]
    fn pocset_files_round_trip(seed in any::<u64>()) {
        let (p, _, _) = pocset(seed, 10);
        let text = io::to_json(&io::pocset_to_file(&p));
        let back: Pocset = io::parse_pocset(&text).unwrap();
        prop_assert!(back.same_structure(&p));
        prop_assert_eq!(io::to_json(&io::pocset_to_file(&back)), text);
    }

    #[test]
    fn system_files_round_trip(seed in any::<u64>()) {
        let s: ChainSys = random_system(&mut rng(seed), 5);
        let text = io::to_json(&io::system_to_file(&s));
        let back: ChainSys = io::parse_system(&text).unwrap();
        prop_assert_eq!(io::to_json(&io::system_to_file(&back)), text);
    }

    /// Two tail closures are almost disjoint exactly when no chain carries an
    /// infinite part of both; the left side is read off counts of common
    /// halfspaces below two cut-offs.
    #[test]
    fn almost_disjoint_iff_finite_on_each_chain(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s: ChainSys = random_system(&mut r, 4);
        let k = s.n_chains();
        let (i, j) = (r.gen_range(0..k), r.gen_range(0..k));
        let a = s.tail_closure(i, r.gen_range(0..4));
        let b = s.tail_closure(j, r.gen_range(0..4));
        let cut = 2 * s.horizon() + 8;
        let common = |n: u64| -> usize {
            (0..k).map(|c| (0..n).filter(|&m| a.contains(Link::new(c, m)) && b.contains(Link::new(c, m))).count()).sum()
        };
        let almost_disjoint = common(cut) == common(2 * cut);
        let finite_per_chain = a.sets.iter().zip(&b.sets).all(|(x, y)| !(x.is_infinite() && y.is_infinite()));
        prop_assert_eq!(almost_disjoint, finite_per_chain);
    }

    #[test]
    fn characters_ignore_finite_changes(seed in any::<u64>(), extra in 0u64..4) {
        let s = fixtures::stairflap();
        let g = fixtures::stairflap_shift();
        let mut r = rng(seed);
        let c = r.gen_range(0..2);
        let u = s.tail_closure(c, 1);
        // Adding finitely many halfspaces below the tail does not move χ.
        let mut v = u.clone();
        v.sets[c] = v.sets[c].union(&IndexSet::from_parts(0..extra, None));
        let far = Ubs::tail(2, c, 1 + extra);
        let chi = s.transfer_character(&u, &g).unwrap();
        prop_assert_eq!(&s.transfer_character(&v, &g).unwrap(), &chi);
        prop_assert_eq!(&s.transfer_character(&far, &g).unwrap(), &chi);
    }
}

/// Longest chain of halfspaces from `bottom` up to `top`.
fn longest_chain(p: &Pocset, bottom: usize, top: usize) -> usize {
    if bottom == top {
        return 1;
    }
    (0..p.n_halfspaces())
        .filter(|&m| p.lt(bottom, m) && p.leq(m, top))
        .map(|m| 1 + longest_chain(p, m, top))
        .max()
        .unwrap_or(1)
}

/// Nested iterates, window form: from any basepoint in `g'h* ∩ h`,
/// powers of `g'` move it strictly farther for as long as the orbit stays
/// inside the window, detected by the inverse bringing it back.
#[test]
fn nested_iterates_move_monotonically() {
    let b = Budget::default();
    for (act, x, g, min_steps) in [
        (fixtures::line_action(), None, "s^9", 4),
        (fixtures::f2ball_action(), Some(""), "abab", 1),
    ] {
        let p = act.pocset();
        let x = match x {
            Some(v) => fixtures::f2_point(p, v),
            None => fixtures::line_point(p, 0),
        };
        let n = act
            .find_nested(&x, &act.parse_word(g).unwrap(), &b)
            .unwrap();
        let mut best = 0;
        for base in p.points(&b.with_walls(400)).unwrap() {
            if !(base.contains(n.halfspace) && !base.contains(n.image)) {
                continue;
            }
            let mut last = Rational::from_ratio(0, 1);
            let mut steps = 0;
            for k in 1..=4 {
                let w = n.word.power(k);
                let Ok(y) = act.act_point(&w, &base) else {
                    break;
                };
                if act.act_point(&w.inverse(), &y).ok().as_ref() != Some(&base) {
                    break;
                }
                let d = p.distance(&base, &y);
                assert!(d > last, "{g}: displacement did not grow at power {k}");
                last = d;
                steps += 1;
            }
            best = best.max(steps);
        }
        assert!(
            best >= min_steps,
            "{g}: only {best} iterates stay in the window"
        );
    }
}
