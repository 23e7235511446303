//! JSON file formats.
//!
//! Syntax errors carry the line and column reported by the parser; semantic
//! errors name the offending field as a path such as `walls[2].weight`.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::actions::{Action, PartialMap, PartialMapSpec};
use crate::boundary::{Chain, ChainSystem, HeadEntry, Link, PeriodicRule, Range, Rel, ShiftMap};
use crate::core::{PocsetBuilder, WeightedPocset};
use crate::error::{Error, Result};
use crate::scalar::Weight;
use crate::structure::Automorphism;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallFile {
    pub id: String,
    pub pos: String,
    pub neg: String,
    pub weight: String,
}

/// Walls and `⊆` pairs; the order is closed transitively on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PocsetFile {
    pub walls: Vec<WallFile>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismFile {
    pub name: String,
    pub map: BTreeMap<String, String>,
}

/// A window pocset and partial generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub pocset: PocsetFile,
    pub generators: Vec<PartialMapSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ChainFile {
    pub id: String,
    pub period: usize,
    pub weights: Vec<String>,
    #[serde(default)]
    pub head_weights: Vec<String>,
}

/// `[lo, hi]`, either end `null` for unbounded.
pub type RangeFile = (Option<i64>, Option<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct RuleFile {
    pub from: String,
    pub to: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset_range: Option<RangeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from_range: Option<RangeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to_range: Option<RangeFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelFile {
    #[serde(default)]
    pub head: Vec<(String, u64, String, u64, String)>,
    #[serde(default)]
    pub periodic: Vec<RuleFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSystemFile {
    pub chains: Vec<ChainFile>,
    #[serde(default)]
    pub rel: RelFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ShiftMapFile {
    pub tau: BTreeMap<String, String>,
    pub shift: BTreeMap<String, i64>,
    pub min_index: u64,
}

/// Parses JSON, reporting syntax and shape errors with line and column.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Invalid(format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn weight<W: Weight>(text: &str, field: &str) -> Result<W> {
    W::parse_weight(text)
        .ok_or_else(|| Error::Invalid(format!("{field}: cannot parse weight {text:?}")))
}

/// Unvalidated description; weights are parsed, the order is not checked.
pub fn builder_from_file<W: Weight>(f: &PocsetFile) -> Result<PocsetBuilder<W>> {
    if f.walls.is_empty() {
        return Err(Error::EmptyInput("walls"));
    }
    let mut b = PocsetBuilder::new();
    for (i, w) in f.walls.iter().enumerate() {
        b.add_wall(
            &w.id,
            &w.pos,
            &w.neg,
            weight(&w.weight, &format!("walls[{i}].weight"))?,
        );
    }
    for (h, k) in &f.order {
        b.add_leq(h, k);
    }
    Ok(b)
}

pub fn pocset_from_file<W: Weight>(f: &PocsetFile) -> Result<WeightedPocset<W>> {
    let b = builder_from_file::<W>(f)?;
    for (i, w) in f.walls.iter().enumerate() {
        if !(weight::<W>(&w.weight, "")? > W::zero()) {
            return Err(Error::Invalid(format!(
                "walls[{i}].weight: {} is not positive",
                w.weight
            )));
        }
    }
    b.build().map_err(|r| {
        let first = r
            .violations
            .first()
            .map(|v| format!("{}: {}", v.kind, v.detail));
        Error::Invalid(format!("order: {}", first.unwrap_or_default()))
    })
}

pub fn pocset_to_file<W: Weight>(p: &WeightedPocset<W>) -> PocsetFile {
    PocsetFile {
        walls: p
            .walls()
            .iter()
            .map(|w| WallFile {
                id: w.id.clone(),
                pos: w.pos.clone(),
                neg: w.neg.clone(),
                weight: w.weight.render(),
            })
            .collect(),
        order: p
            .cover_pairs()
            .into_iter()
            .map(|(h, k)| (p.name(h).to_string(), p.name(k).to_string()))
            .collect(),
    }
}

pub fn parse_pocset<W: Weight>(text: &str) -> Result<WeightedPocset<W>> {
    pocset_from_file(&from_json::<PocsetFile>(text)?)
}

pub fn automorphism_from_file<W: Weight>(
    p: &WeightedPocset<W>,
    f: &AutomorphismFile,
) -> Result<Automorphism> {
    p.automorphism_from_names(&f.name, &f.map)
}

pub fn automorphism_to_file<W: Weight>(
    p: &WeightedPocset<W>,
    g: &Automorphism,
) -> AutomorphismFile {
    AutomorphismFile {
        name: g.name.clone(),
        map: p.automorphism_names(g),
    }
}

/// A generator fixes its map on both sides of each listed wall; `domain`,
/// when given, must list exactly the halfspaces the map is defined on.
pub fn partial_map_from_spec<W: Weight>(
    p: &WeightedPocset<W>,
    spec: &PartialMapSpec,
    field: &str,
) -> Result<PartialMap> {
    let mut image = vec![None; p.n_halfspaces()];
    for (from, to) in &spec.map {
        let lookup = |name: &str| {
            p.id(name)
                .ok_or_else(|| Error::UnknownId(format!("{field}.map: {name}")))
        };
        let (h, k) = (lookup(from)?, lookup(to)?);
        for (a, b) in [(h, k), (h ^ 1, k ^ 1)] {
            if image[a].is_some_and(|prev| prev != b) {
                return Err(Error::Invalid(format!(
                    "{field}.map: two images for {}",
                    p.name(a)
                )));
            }
            image[a] = Some(b);
        }
    }
    if let Some(domain) = &spec.domain {
        let mut listed = vec![false; p.n_halfspaces()];
        for name in domain {
            let h = p
                .id(name)
                .ok_or_else(|| Error::UnknownId(format!("{field}.domain: {name}")))?;
            listed[h] = true;
        }
        if let Some(h) = (0..p.n_halfspaces()).find(|&h| listed[h] != image[h].is_some()) {
            return Err(Error::Invalid(format!(
                "{field}.domain: disagrees with map at {}",
                p.name(h)
            )));
        }
    }
    Ok(PartialMap {
        name: spec.name.clone(),
        image,
    })
}

pub fn partial_map_to_spec<W: Weight>(p: &WeightedPocset<W>, g: &PartialMap) -> PartialMapSpec {
    PartialMapSpec {
        name: g.name.clone(),
        map: (0..p.n_walls())
            .filter_map(|w| {
                g.image[2 * w].map(|k| (p.name(2 * w).to_string(), p.name(k).to_string()))
            })
            .collect(),
        domain: None,
    }
}

pub fn action_from_file<W: Weight>(f: &ActionFile) -> Result<Action<W>> {
    let p = pocset_from_file(&f.pocset)?;
    let gens = f
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| partial_map_from_spec(&p, g, &format!("generators[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Action::new(p, gens)
}

pub fn action_to_file<W: Weight>(a: &Action<W>) -> ActionFile {
    ActionFile {
        pocset: pocset_to_file(a.pocset()),
        generators: a
            .generators()
            .iter()
            .map(|g| partial_map_to_spec(a.pocset(), g))
            .collect(),
    }
}

fn range(r: &Option<RangeFile>) -> Range {
    r.map_or(Range::ALL, |(lo, hi)| Range::new(lo, hi))
}

fn range_file(r: Range) -> Option<RangeFile> {
    (r != Range::ALL).then_some((r.lo, r.hi))
}

pub fn system_from_file<W: Weight>(f: &ChainSystemFile) -> Result<ChainSystem<W>> {
    if f.chains.is_empty() {
        return Err(Error::EmptyInput("chains"));
    }
    let mut chains = Vec::new();
    for (i, c) in f.chains.iter().enumerate() {
        if c.period != c.weights.len() {
            return Err(Error::Invalid(format!(
                "chains[{i}].period: {} but {} weights given",
                c.period,
                c.weights.len()
            )));
        }
        let parse = |list: &[String], name: &str| -> Result<Vec<W>> {
            list.iter()
                .enumerate()
                .map(|(j, t)| weight(t, &format!("chains[{i}].{name}[{j}]")))
                .collect()
        };
        chains.push(Chain {
            id: c.id.clone(),
            head_weights: parse(&c.head_weights, "headWeights")?,
            weights: parse(&c.weights, "weights")?,
        });
    }
    let sys = ChainSystem::new(chains, vec![], vec![]);
    let chain = |id: &str, field: String| {
        sys.chain_index(id)
            .ok_or_else(|| Error::UnknownId(format!("{field}: chain {id}")))
    };
    let rel = |text: &str, field: String| {
        Rel::parse(text)
            .ok_or_else(|| Error::Invalid(format!("{field}: unknown relation {text:?}")))
    };
    let mut head = Vec::new();
    for (i, (a, n, b, m, r)) in f.rel.head.iter().enumerate() {
        head.push(HeadEntry {
            a: Link::new(chain(a, format!("rel.head[{i}][0]"))?, *n),
            b: Link::new(chain(b, format!("rel.head[{i}][2]"))?, *m),
            rel: rel(r, format!("rel.head[{i}][4]"))?,
        });
    }
    let mut rules = Vec::new();
    for (i, r) in f.rel.periodic.iter().enumerate() {
        rules.push(PeriodicRule {
            from: chain(&r.from, format!("rel.periodic[{i}].from"))?,
            to: chain(&r.to, format!("rel.periodic[{i}].to"))?,
            rel: rel(&r.rule, format!("rel.periodic[{i}].rule"))?,
            offset: range(&r.offset_range),
            from_range: range(&r.from_range),
            to_range: range(&r.to_range),
        });
    }
    Ok(ChainSystem::new(sys.chains, head, rules))
}

pub fn system_to_file<W: Weight>(s: &ChainSystem<W>) -> ChainSystemFile {
    ChainSystemFile {
        chains: s
            .chains
            .iter()
            .map(|c| ChainFile {
                id: c.id.clone(),
                period: c.period(),
                weights: c.weights.iter().map(Weight::render).collect(),
                head_weights: c.head_weights.iter().map(Weight::render).collect(),
            })
            .collect(),
        rel: RelFile {
            head: s
                .head
                .iter()
                .map(|e| {
                    (
                        s.chain_id(e.a.chain).to_string(),
                        e.a.index,
                        s.chain_id(e.b.chain).to_string(),
                        e.b.index,
                        e.rel.as_str().to_string(),
                    )
                })
                .collect(),
            periodic: s
                .rules
                .iter()
                .map(|r| RuleFile {
                    from: s.chain_id(r.from).to_string(),
                    to: s.chain_id(r.to).to_string(),
                    rule: r.rel.as_str().to_string(),
                    offset_range: range_file(r.offset),
                    from_range: range_file(r.from_range),
                    to_range: range_file(r.to_range),
                })
                .collect(),
        },
    }
}

pub fn parse_system<W: Weight>(text: &str) -> Result<ChainSystem<W>> {
    system_from_file(&from_json::<ChainSystemFile>(text)?)
}

/// Chains missing from `tau` are fixed; missing from `shift` are unshifted.
pub fn shift_from_file<W: Weight>(
    src: &ChainSystem<W>,
    dst: &ChainSystem<W>,
    f: &ShiftMapFile,
) -> Result<ShiftMap> {
    let k = src.n_chains();
    let mut tau: Vec<usize> = (0..k).collect();
    let mut shift = vec![0; k];
    for (a, b) in &f.tau {
        let i = src
            .chain_index(a)
            .ok_or_else(|| Error::UnknownId(format!("tau: chain {a}")))?;
        tau[i] = dst
            .chain_index(b)
            .ok_or_else(|| Error::UnknownId(format!("tau.{a}: chain {b}")))?;
    }
    for (a, s) in &f.shift {
        let i = src
            .chain_index(a)
            .ok_or_else(|| Error::UnknownId(format!("shift: chain {a}")))?;
        shift[i] = *s;
    }
    Ok(ShiftMap::new(tau, shift, f.min_index))
}

pub fn shift_to_file<W: Weight>(
    src: &ChainSystem<W>,
    dst: &ChainSystem<W>,
    g: &ShiftMap,
) -> ShiftMapFile {
    ShiftMapFile {
        tau: (0..src.n_chains())
            .map(|i| {
                (
                    src.chain_id(i).to_string(),
                    dst.chain_id(g.tau[i]).to_string(),
                )
            })
            .collect(),
        shift: (0..src.n_chains())
            .map(|i| (src.chain_id(i).to_string(), g.shift[i]))
            .collect(),
        min_index: g.min_index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Rational;

    #[test]
    fn pocset_round_trip() {
        for p in [
            fixtures::square(),
            fixtures::tripod(),
            fixtures::grid(),
            fixtures::path3(),
        ] {
            let text = to_json(&pocset_to_file(&p));
            let q: WeightedPocset<Rational> = parse_pocset(&text).unwrap();
            assert!(p.same_structure(&q));
        }
    }

    #[test]
    fn errors_name_the_field() {
        let bad = r#"{"walls":[{"id":"a","pos":"a","neg":"a*","weight":"x"}]}"#;
        let e = parse_pocset::<Rational>(bad).unwrap_err().to_string();
        assert!(e.contains("walls[0].weight"), "{e}");
        let e = parse_pocset::<Rational>("{\n \"walls\": 3}")
            .unwrap_err()
            .to_string();
        assert!(e.contains("line 2"), "{e}");
        let e = parse_system::<Rational>(r#"{"chains":[{"id":"H","period":2,"weights":["1"]}]}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("chains[0].period"), "{e}");
        let e = parse_system::<Rational>(
            r#"{"chains":[{"id":"H","period":1,"weights":["1"]}],
                "rel":{"periodic":[{"from":"H","to":"Q","rule":"sub"}]}}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(e.contains("rel.periodic[0].to"), "{e}");
    }

    #[test]
    fn system_and_shift_round_trip() {
        let s = fixtures::stairflap();
        let text = to_json(&system_to_file(&s));
        let t: ChainSystem<Rational> = parse_system(&text).unwrap();
        assert_eq!(to_json(&system_to_file(&t)), text);
        assert_eq!(t.rules, s.rules);
        let g = fixtures::stairflap_shift();
        let f = shift_to_file(&s, &s, &g);
        assert_eq!(shift_from_file(&s, &t, &f).unwrap(), g);
    }

    #[test]
    fn action_round_trip() {
        let a = fixtures::line_action();
        let text = to_json(&action_to_file(&a));
        let b: Action<Rational> = action_from_file(&from_json(&text).unwrap()).unwrap();
        assert_eq!(b.generators(), a.generators());
    }
}
