//! Built-in spaces, actions and chain systems.
//!
//! Halfspace names: `x` and `x*` for small pocsets; `u<i>`/`d<i>` for the
//! line window (`u<i>` is `{p ≥ i + 1}`); `w<v>+`/`w<v>-` for the tree
//! window, where `w<v>+` is the subtree hanging at vertex `v` and vertex
//! words use `A`, `B` for `a^-1`, `b^-1`.

use std::collections::HashMap;

use crate::actions::{Action, PartialMap};
use crate::boundary::{Chain, ChainSystem, PeriodicRule, Rel, ShiftMap};
use crate::core::{HSet, PocsetBuilder, WeightedPocset};
use crate::scalar::{Rational, Weight};
use crate::structure::{product, Automorphism};

fn one() -> Rational {
    Rational::from_ratio(1, 1)
}

pub fn square() -> WeightedPocset<Rational> {
    square_weighted(one(), one())
}

pub fn square_weighted<W: Weight>(wa: W, wb: W) -> WeightedPocset<W> {
    PocsetBuilder::new()
        .wall("a", "a", "a*", wa)
        .wall("b", "b", "b*", wb)
        .build()
        .expect("square is valid")
}

pub fn one_wall() -> WeightedPocset<Rational> {
    PocsetBuilder::new()
        .wall("a", "a", "a*", one())
        .build()
        .expect("one wall is valid")
}

/// A chain of `n` nested walls `h1 ⊇ h2 ⊇ ... ⊇ hn`, with name prefix `p`.
pub fn path_named(p: &str, n: usize) -> WeightedPocset<Rational> {
    let mut b = PocsetBuilder::new();
    for i in 1..=n {
        b.add_wall(
            &format!("{p}{i}"),
            &format!("{p}{i}"),
            &format!("{p}{i}*"),
            one(),
        );
    }
    for i in 1..n {
        b.add_leq_dual(&format!("{p}{}", i + 1), &format!("{p}{i}"));
    }
    b.build().expect("path is valid")
}

pub fn path3() -> WeightedPocset<Rational> {
    path_named("h", 3)
}

pub fn tripod() -> WeightedPocset<Rational> {
    let mut b = PocsetBuilder::new();
    for i in 1..=3 {
        b.add_wall(&format!("h{i}"), &format!("h{i}"), &format!("h{i}*"), one());
    }
    for i in 1..=3 {
        for j in 1..=3 {
            if i != j {
                b.add_leq(&format!("h{i}"), &format!("h{j}*"));
            }
        }
    }
    b.build().expect("tripod is valid")
}

/// Quarter turn of the square: `a ↦ b ↦ a*`.
pub fn square_rotation() -> Automorphism {
    let p = square();
    let pairs = [("a", "b"), ("b", "a*")]
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
    p.automorphism_from_names("r", &pairs).expect("rotation")
}

pub fn square_rotation_action() -> Action<Rational> {
    Action::from_automorphisms(square(), &[square_rotation()]).expect("rotation action")
}

/// Leaf rotation of the tripod: `h1 ↦ h2 ↦ h3 ↦ h1`.
pub fn tripod_rotation() -> Automorphism {
    let p = tripod();
    let pairs = [("h1", "h2"), ("h2", "h3"), ("h3", "h1")]
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
    p.automorphism_from_names("rho", &pairs).expect("rotation")
}

pub fn tripod_rotation_action() -> Action<Rational> {
    Action::from_automorphisms(tripod(), &[tripod_rotation()]).expect("rotation action")
}

/// Product of an `m`-wall path and an `n`-wall path.
pub fn grid_sized(m: usize, n: usize) -> WeightedPocset<Rational> {
    product(&[&path_named("x", m), &path_named("y", n)])
}

/// Product of two 3-wall paths: 16 points.
pub fn grid() -> WeightedPocset<Rational> {
    grid_sized(3, 3)
}

pub const LINE_RADIUS: i64 = 10;

/// Walls `w-10 .. w10` of the integer line; `u<i> = {p ≥ i + 1}`.
pub fn line() -> WeightedPocset<Rational> {
    let mut b = PocsetBuilder::new();
    for i in -LINE_RADIUS..=LINE_RADIUS {
        b.add_wall(&format!("w{i}"), &format!("u{i}"), &format!("d{i}"), one());
    }
    for i in -LINE_RADIUS..LINE_RADIUS {
        b.add_leq_dual(&format!("u{}", i + 1), &format!("u{i}"));
    }
    b.build().expect("line is valid")
}

/// The point `p` of the line window, for `-10 ≤ p ≤ 11`.
pub fn line_point<W: Weight>(line: &WeightedPocset<W>, p: i64) -> HSet {
    let mut s = line.empty_set();
    for i in -LINE_RADIUS..=LINE_RADIUS {
        let name = if i < p {
            format!("u{i}")
        } else {
            format!("d{i}")
        };
        s.insert(line.id(&name).expect("line halfspace"));
    }
    s
}

/// The shift `s: u<i> ↦ u<i+1>`, defined for `i ≤ 9`.
pub fn line_action() -> Action<Rational> {
    let p = line();
    let mut image = vec![None; p.n_halfspaces()];
    for i in -LINE_RADIUS..LINE_RADIUS {
        for (a, b) in [
            (format!("u{i}"), format!("u{}", i + 1)),
            (format!("d{i}"), format!("d{}", i + 1)),
        ] {
            image[p.id(&a).expect("u")] = p.id(&b);
        }
    }
    Action::new(
        p,
        vec![PartialMap {
            name: "s".into(),
            image,
        }],
    )
    .expect("shift is a partial automorphism")
}

pub const F2_RADIUS: usize = 4;

fn inv(c: char) -> char {
    if c.is_ascii_lowercase() {
        c.to_ascii_uppercase()
    } else {
        c.to_ascii_lowercase()
    }
}

/// Reduced product `prefix · v` in the free group on `a`, `b`.
fn multiply(prefix: char, v: &str) -> String {
    match v.chars().next() {
        Some(c) if c == inv(prefix) => v[1..].to_string(),
        _ => format!("{prefix}{v}"),
    }
}

/// Vertices of the radius-4 ball in breadth-first order.
pub fn f2_vertices() -> Vec<String> {
    let mut out = vec![String::new()];
    let mut i = 0;
    while i < out.len() {
        let v = out[i].clone();
        if v.len() < F2_RADIUS {
            for c in ['a', 'A', 'b', 'B'] {
                if !v.ends_with(inv(c)) {
                    out.push(format!("{v}{c}"));
                }
            }
        }
        i += 1;
    }
    out
}

/// Radius-4 ball of the 4-valent tree: 161 vertices, 160 walls.
pub fn f2ball() -> WeightedPocset<Rational> {
    let verts = f2_vertices();
    let mut b = PocsetBuilder::new();
    for v in verts.iter().skip(1) {
        b.add_wall(
            &format!("w{v}"),
            &format!("w{v}+"),
            &format!("w{v}-"),
            one(),
        );
    }
    for v in verts.iter().skip(1) {
        let parent = &v[..v.len() - 1];
        if !parent.is_empty() {
            b.add_leq_dual(&format!("w{v}+"), &format!("w{parent}+"));
        }
        for sib in verts.iter().skip(1) {
            if sib != v && sib.len() == v.len() && sib[..sib.len() - 1] == *parent {
                b.add_leq(&format!("w{v}+"), &format!("w{sib}-"));
            }
        }
    }
    b.build().expect("tree ball is valid")
}

/// Generators `a`, `b` act on vertices by left multiplication by `a^-1`,
/// `b^-1`, so that `a` carries the complement of `wa+` onto `wA+`.
pub fn f2ball_action() -> Action<Rational> {
    let p = f2ball();
    let verts = f2_vertices();
    let index: HashMap<&str, usize> = verts
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let gens = [('a', 'A'), ('b', 'B')]
        .iter()
        .map(|&(name, mult)| {
            let mut image = vec![None; p.n_halfspaces()];
            for v in verts.iter().skip(1) {
                let parent = &v[..v.len() - 1];
                let (gp, gv) = (multiply(mult, parent), multiply(mult, v));
                if !index.contains_key(gp.as_str()) || !index.contains_key(gv.as_str()) {
                    continue;
                }
                let (pos, neg) = if gv.len() > gp.len() {
                    (format!("w{gv}+"), format!("w{gv}-"))
                } else {
                    (format!("w{gp}-"), format!("w{gp}+"))
                };
                image[p.id(&format!("w{v}+")).expect("edge")] = p.id(&pos);
                image[p.id(&format!("w{v}-")).expect("edge")] = p.id(&neg);
            }
            PartialMap {
                name: name.to_string(),
                image,
            }
        })
        .collect();
    Action::new(p, gens).expect("tree generators are partial automorphisms")
}

/// The vertex `v` of the tree window as a point.
pub fn f2_point<W: Weight>(ball: &WeightedPocset<W>, v: &str) -> HSet {
    let mut s = ball.empty_set();
    for u in f2_vertices().iter().skip(1) {
        let side = if v.starts_with(u.as_str()) { "+" } else { "-" };
        s.insert(ball.id(&format!("w{u}{side}")).expect("tree halfspace"));
    }
    s
}

/// Single chain with unit weights: the halfspaces `{p ≥ n + 1}` of the
/// integer line at its upper end.
pub fn line_system() -> ChainSystem<Rational> {
    ChainSystem::new(vec![unit_chain("H")], vec![], vec![])
}

/// `k_n ⊆ h_0` for all `n`; `k_n ⊇ h_m` for `m > n`; `k_n` and `h_m`
/// transverse for `1 ≤ m ≤ n`.
pub fn stairflap() -> ChainSystem<Rational> {
    let (h, k) = (0, 1);
    ChainSystem::new(
        vec![unit_chain("H"), unit_chain("K")],
        vec![],
        vec![
            PeriodicRule::new(k, h, Rel::Sub).to_indices(Some(0), Some(0)),
            PeriodicRule::new(k, h, Rel::Sup).offsets(Some(1), None),
            PeriodicRule::new(k, h, Rel::Transverse)
                .offsets(None, Some(0))
                .to_indices(Some(1), None),
        ],
    )
}

/// `h_n ↦ h_{n+1}`, `k_n ↦ k_{n+1}` on [`stairflap`].
pub fn stairflap_shift() -> ShiftMap {
    ShiftMap::new(vec![0, 1], vec![1, 1], 1)
}

/// `h_n ↦ h_{n+1}` on [`line_system`].
pub fn line_shift() -> ShiftMap {
    ShiftMap::new(vec![0], vec![1], 0)
}

/// Corner signs of the square tiling of the plane, in rotation order.
pub const CORNERS: [(i64, i64); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];

/// The four corners of the square tiling of the plane: chains `X`, `Y` of
/// halfspaces `{s_x x ≥ n + 1}` and `{s_y y ≥ n + 1}`, all transverse.
pub fn corner4() -> Vec<ChainSystem<Rational>> {
    CORNERS
        .iter()
        .map(|_| ChainSystem::new(vec![unit_chain("X"), unit_chain("Y")], vec![], vec![]))
        .collect()
}

/// Translation by `(dx, dy)` seen at corner `c`.
pub fn corner_translation(c: usize, dx: i64, dy: i64) -> ShiftMap {
    let (sx, sy) = CORNERS[c];
    ShiftMap::new(vec![0, 1], vec![sx * dx, sy * dy], 1)
}

/// Quarter rotation `(x, y) ↦ (-y, x)` from corner `c` to corner `c + 1`.
pub fn corner_rotation() -> ShiftMap {
    ShiftMap::new(vec![1, 0], vec![0, 0], 0)
}

fn unit_chain(id: &str) -> Chain<Rational> {
    Chain {
        id: id.into(),
        head_weights: vec![],
        weights: vec![one()],
    }
}

/// Names of the built-in pocsets.
pub const POCSETS: [&str; 7] = [
    "SQUARE", "PATH3", "TRIPOD", "GRID", "ONE_WALL", "LINE", "F2BALL",
];
/// Names of the built-in chain systems.
pub const SYSTEMS: [&str; 6] = [
    "LINE",
    "STAIRFLAP",
    "CORNER4",
    "CORNER4/1",
    "CORNER4/2",
    "CORNER4/3",
];

pub fn pocset_by_name(name: &str) -> Option<WeightedPocset<Rational>> {
    Some(match name.to_ascii_uppercase().as_str() {
        "SQUARE" => square(),
        "PATH3" => path3(),
        "TRIPOD" => tripod(),
        "GRID" => grid(),
        "ONE_WALL" => one_wall(),
        "LINE" => line(),
        "F2BALL" => f2ball(),
        _ => return None,
    })
}

/// Window fixtures act by their built-in generators; finite fixtures by
/// their full automorphism group.
pub fn action_by_name(name: &str) -> Option<crate::error::Result<Action<Rational>>> {
    Some(match name.to_ascii_uppercase().as_str() {
        "LINE" => Ok(line_action()),
        "F2BALL" => Ok(f2ball_action()),
        other => automorphism_action(pocset_by_name(other)?, &crate::budget::Budget::default()),
    })
}

/// Action of the full automorphism group, generated by every non-identity
/// element, or by the identity alone.
pub fn automorphism_action<W: Weight>(
    p: WeightedPocset<W>,
    budget: &crate::budget::Budget,
) -> crate::error::Result<Action<W>> {
    let gens: Vec<Automorphism> = p.automorphisms(budget)?.into_iter().skip(1).collect();
    if gens.is_empty() {
        let id = Automorphism::identity(p.n_halfspaces());
        Action::from_automorphisms(p, &[id])
    } else {
        Action::from_automorphisms(p, &gens)
    }
}

/// `CORNER4` is the corner with both signs positive; `CORNER4/<c>` follows
/// the rotation order of [`CORNERS`].
pub fn system_by_name(name: &str) -> Option<ChainSystem<Rational>> {
    let upper = name.to_ascii_uppercase();
    Some(match upper.as_str() {
        "LINE" => line_system(),
        "STAIRFLAP" => stairflap(),
        "CORNER4" => corner4().swap_remove(0),
        _ => {
            let c: usize = upper
                .strip_prefix("CORNER4/")?
                .parse()
                .ok()
                .filter(|&c| c < 4)?;
            corner4().swap_remove(c)
        }
    })
}

/// Default shift of each built-in system: the unit shift of `LINE` and
/// `STAIRFLAP`, the horizontal unit translation at a corner.
pub fn shift_by_name(name: &str) -> Option<ShiftMap> {
    let upper = name.to_ascii_uppercase();
    Some(match upper.as_str() {
        "LINE" => line_shift(),
        "STAIRFLAP" => stairflap_shift(),
        "CORNER4" => corner_translation(0, 1, 0),
        _ => corner_translation(
            upper
                .strip_prefix("CORNER4/")?
                .parse()
                .ok()
                .filter(|&c: &usize| c < 4)?,
            1,
            0,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    #[test]
    fn tree_ball_sizes() {
        assert_eq!(f2_vertices().len(), 161);
        let p = f2ball();
        assert_eq!(p.n_walls(), 160);
        let pts = p.points(&Budget::default().with_walls(200)).unwrap();
        assert_eq!(pts.len(), 161);
        assert!(p.is_point(&f2_point(&p, "abA")));
    }

    #[test]
    fn tree_generators_are_defined_near_the_root() {
        let act = f2ball_action();
        let p = act.pocset();
        let a = act.parse_word("a").unwrap();
        assert_eq!(act.eval(&a, p.id("wa-").unwrap()), p.id("wA+"));
        assert_eq!(act.eval(&a, p.id("wa+").unwrap()), p.id("wA-"));
        let x = f2_point(p, "");
        assert_eq!(act.act_point(&a, &x).unwrap(), f2_point(p, "A"));
    }

    #[test]
    fn line_window_points() {
        let p = line();
        assert_eq!(p.n_walls(), 21);
        let pts = p.points(&Budget::default().with_walls(21)).unwrap();
        assert_eq!(pts.len(), 22);
        for k in -10..=11 {
            assert!(p.is_point(&line_point(&p, k)));
        }
    }
}
