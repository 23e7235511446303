//! One handler per subcommand.

use std::collections::BTreeMap;
use std::fs;

use serde_json::{json, Value};

use super::{input, Command, Outcome, Pair, Source};
use crate::acceptance;
use crate::actions::{Action, FlipResult, SectorResult};
use crate::budget::Budget;
use crate::core::{Point, WeightedPocset};
use crate::error::{Error, Result};
use crate::io;
use crate::report::{InputDigest, Status};
use crate::scalar::{Rational, Weight};
use crate::subdivision::tower;
use crate::verify::{self, Generators};

type P = WeightedPocset<Rational>;

fn outcome(status: Status, verdict: Value, summary: String, inputs: Vec<InputDigest>) -> Outcome {
    Outcome {
        status,
        verdict,
        summary,
        inputs,
    }
}

fn ok(verdict: Value, summary: String, input: InputDigest) -> Result<Outcome> {
    Ok(outcome(Status::Success, verdict, summary, vec![input]))
}

fn point(p: &P, text: &str) -> Result<Point> {
    let names: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    p.point_from_names(&names)
}

fn pair(pr: &Pair) -> Result<(String, String)> {
    if let Some(text) = &pr.pair {
        let (h, k) = text
            .split_once(',')
            .ok_or_else(|| Error::Invalid(format!("--pair expects H,K, got {text:?}")))?;
        return Ok((h.trim().into(), k.trim().into()));
    }
    match (&pr.h, &pr.k) {
        (Some(h), Some(k)) => Ok((h.clone(), k.clone())),
        _ => Err(Error::Invalid("give --pair H,K or both --h and --k".into())),
    }
}

fn generators(act: &Action<Rational>) -> Result<Generators> {
    Generators::from_specs(act.pocset(), &io::action_to_file(act).generators)
}

pub(super) fn execute(command: &Command, b: &Budget) -> Result<Outcome> {
    match command {
        Command::Validate(src) => validate(src),
        Command::Points(src) => points(src, b),
        Command::Median { src, x, y, z } => {
            let (p, d) = input::pocset(src)?;
            let (x, y, z) = (point(&p, x)?, point(&p, y)?, point(&p, z)?);
            let m = p.describe(&p.median(&x, &y, &z));
            ok(json!({ "median": m }), format!("median {}", m.join(",")), d)
        }
        Command::Distance { src, x, y } => {
            let (p, d) = input::pocset(src)?;
            let (x, y) = (point(&p, x)?, point(&p, y)?);
            let dist = p.distance(&x, &y).render();
            let sep = p.names_of(&p.separating_points(&x, &y));
            ok(
                json!({ "distance": dist, "separating": sep }),
                format!("distance {dist}"),
                d,
            )
        }
        Command::Rank(src) => {
            let (p, d) = input::pocset(src)?;
            let rank = p.rank(b)?;
            let family: Vec<&str> = p
                .max_transverse_family(b)?
                .iter()
                .map(|&w| p.wall(w).id.as_str())
                .collect();
            ok(
                json!({ "rank": rank, "transverse_walls": family }),
                format!("rank {rank}"),
                d,
            )
        }
        Command::Decompose(src) => decompose(src),
        Command::Subdivide { src, n } => subdivide(src, *n, b),
        Command::Orbits(src) => orbits(src, b),
        Command::Flip {
            src,
            halfspace,
            max_word_len,
            verify,
        } => flip(
            src,
            halfspace,
            max_word_len.unwrap_or(b.max_word_len),
            *verify,
            b,
        ),
        Command::Skewer {
            src,
            pair: pr,
            max_word_len,
            verify,
        } => skewer(src, pr, max_word_len.unwrap_or(b.max_word_len), *verify, b),
        Command::Facing {
            src,
            tuple_size,
            strong,
            upgrade,
            halfspace,
            max_word_len,
        } => facing(
            src,
            *tuple_size,
            *strong,
            *upgrade,
            halfspace.as_deref(),
            max_word_len.unwrap_or(b.max_word_len),
            b,
        ),
        Command::Sectors { src, pair: pr } => sectors(src, pr),
        Command::FreeCert {
            src,
            a,
            b: bw,
            h,
            k,
            max_word_len,
            verify,
        } => free_cert(src, (a, bw, h, k), *max_word_len, *verify, b),
        Command::Lineal(src) => {
            let (p, d) = input::pocset(src)?;
            let pairs: Vec<Value> = p
                .lineal_pairs(b)?
                .iter()
                .map(|l| json!({ "xi": p.describe(&l.xi), "eta": p.describe(&l.eta) }))
                .collect();
            let status = if pairs.is_empty() {
                Status::Negative
            } else {
                Status::Success
            };
            let summary = format!("{} lineal pairs", pairs.len());
            Ok(outcome(status, json!({ "pairs": pairs }), summary, vec![d]))
        }
        Command::Classify(src) => {
            let (act, d) = input::action(src, b)?;
            let r = act.classify(b)?;
            let status = if r.verdict == "INCONCLUSIVE" {
                Status::Inconclusive
            } else {
                Status::Success
            };
            let summary = format!("{} at stage {}", r.verdict, r.stage);
            Ok(outcome(
                status,
                serde_json::to_value(&r).expect("serializable"),
                summary,
                vec![d],
            ))
        }
        Command::UbsValidate(src) => ubs_validate(src),
        Command::UbsGraph { src, dot } => {
            let (s, d) = input::system(src)?;
            let g = s.ubs_graph()?;
            let summary = s.graph_summary(&g);
            if let Some(path) = dot {
                fs::write(path, s.to_dot(&g))
                    .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            }
            let status = if summary.laws.hold() {
                Status::Success
            } else {
                Status::Negative
            };
            let line = format!(
                "{} vertices, {} edges",
                g.vertices.len(),
                g.edge_list().len()
            );
            Ok(outcome(
                status,
                serde_json::to_value(&summary).expect("serializable"),
                line,
                vec![d],
            ))
        }
        Command::UbsChi { src, shift } => {
            let (s, d) = input::system(src)?;
            let (g, gd) = input::shift(src, &s, shift.as_deref())?;
            g.check(&s, &s)?;
            let graph = s.ubs_graph()?;
            let chi = s.chi_vector(&graph, &g)?;
            let summary = s.chi_summary(&graph, &chi);
            let line = format!("chi = ({})", summary.chi.join(", "));
            let verdict = serde_json::to_value(&summary).expect("serializable");
            Ok(outcome(Status::Success, verdict, line, vec![d, gd]))
        }
        Command::Acceptance { only } => {
            let results: Vec<_> = if only.is_empty() {
                acceptance::run_all()
            } else {
                only.iter()
                    .map(|&i| {
                        acceptance::run(i)
                            .ok_or_else(|| Error::Invalid(format!("no acceptance criterion {i}")))
                    })
                    .collect::<Result<_>>()?
            };
            let passed = results.iter().filter(|r| r.pass).count();
            let status = if passed == results.len() {
                Status::Success
            } else {
                Status::Negative
            };
            let lines: Vec<String> = results.iter().map(|r| r.line()).collect();
            let summary = format!("{passed}/{} passed\n{}", results.len(), lines.join("\n"));
            Ok(outcome(
                status,
                json!({ "criteria": results }),
                summary,
                Vec::new(),
            ))
        }
    }
}

fn validate(src: &Source) -> Result<Outcome> {
    let (f, d) = input::pocset_file(src)?;
    let report = io::builder_from_file::<Rational>(&f)?.validate();
    let status = if report.valid {
        Status::Success
    } else {
        Status::Negative
    };
    let summary = format!("{} violations", report.violations.len());
    Ok(outcome(
        status,
        serde_json::to_value(&report).expect("serializable"),
        summary,
        vec![d],
    ))
}

fn points(src: &Source, b: &Budget) -> Result<Outcome> {
    let (p, d) = input::pocset(src)?;
    let pts: Vec<Vec<String>> = p.points(b)?.iter().map(|x| p.describe(x)).collect();
    let summary = format!("{} points", pts.len());
    ok(json!({ "count": pts.len(), "points": pts }), summary, d)
}

fn decompose(src: &Source) -> Result<Outcome> {
    let (p, d) = input::pocset(src)?;
    let dec = p.decompose()?;
    let factors: Vec<Value> = dec
        .factors
        .iter()
        .zip(&dec.factor_walls)
        .map(|(f, walls)| {
            let ids: Vec<&str> = walls.iter().map(|&w| p.wall(w).id.as_str()).collect();
            json!({ "walls": ids, "pocset": io::pocset_to_file(f) })
        })
        .collect();
    let summary = format!("{} factors", factors.len());
    ok(
        json!({ "irreducible": factors.len() <= 1, "factors": factors }),
        summary,
        d,
    )
}

fn subdivide(src: &Source, n: usize, b: &Budget) -> Result<Outcome> {
    let (p, d) = input::pocset(src)?;
    let t = tower(&p, n, b)?;
    let last = t.stages.last().expect("stage");
    // Child halfspace to the stage-0 halfspace it refines.
    let projection: BTreeMap<&str, &str> = (0..last.n_halfspaces())
        .map(|h| {
            let base = t.steps.iter().rev().fold(h, |acc, s| s.projection[acc]);
            (last.name(h), p.name(base))
        })
        .collect();
    let summary = format!("{} walls after {n} subdivisions", last.n_walls());
    ok(
        json!({ "times": n, "pocset": io::pocset_to_file(last), "projection": projection }),
        summary,
        d,
    )
}

fn orbits(src: &Source, b: &Budget) -> Result<Outcome> {
    let (act, d) = input::action(src, b)?;
    let p = act.pocset();
    let min = act.min_orbit(b)?;
    let via = act.orbit_via_subdivision(b)?;
    let within = min.size <= min.bound && via.size <= via.bound;
    let status = if within {
        Status::Success
    } else {
        Status::Negative
    };
    let verdict = json!({
        "min_orbit": min.summary(p),
        "via_subdivision": via.summary(p),
        "within_bound": within,
    });
    let summary = format!("min orbit {} <= {}", min.size, min.bound);
    Ok(outcome(status, verdict, summary, vec![d]))
}

fn reverify(status: Status, checked: Option<bool>) -> Status {
    match checked {
        Some(false) => Status::Negative,
        _ => status,
    }
}

fn flip(src: &Source, h: &str, max_len: usize, check: bool, b: &Budget) -> Result<Outcome> {
    let (act, d) = input::action(src, b)?;
    let hs = act.pocset().require(h)?;
    let r = act.find_flip(hs, max_len, b)?;
    let mut verdict = serde_json::to_value(act.flip_summary(hs, &r)).expect("serializable");
    let (status, checked) = match &r {
        FlipResult::Flipped { word, .. } => {
            let checked = check
                .then(|| verify::flip(act.pocset(), &generators(&act)?, &act.show(word), h, b))
                .transpose()?;
            (reverify(Status::Success, checked), checked)
        }
        FlipResult::InvariantSet { .. } => (Status::Negative, None),
        FlipResult::Inconclusive { .. } => (Status::Inconclusive, None),
    };
    if let Some(c) = checked {
        verdict["reverified"] = json!(c);
    }
    let summary = verdict["result"].as_str().unwrap_or_default().to_string();
    Ok(outcome(status, verdict, summary, vec![d]))
}

fn skewer(src: &Source, pr: &Pair, max_len: usize, check: bool, b: &Budget) -> Result<Outcome> {
    let (act, d) = input::action(src, b)?;
    let (h, k) = pair(pr)?;
    let p = act.pocset();
    let (hs, ks) = (p.require(&h)?, p.require(&k)?);
    let s = act.double_skewer(hs, ks, max_len, b)?;
    let mut verdict = serde_json::to_value(act.skewer_summary(hs, ks, &s)).expect("serializable");
    let word = act.show(&s.word);
    let mut status = Status::Success;
    if check {
        let c = verify::skewer(p, &generators(&act)?, &word, (&h, &k), b)?;
        verdict["reverified"] = json!(c);
        status = reverify(status, Some(c));
    }
    Ok(outcome(
        status,
        verdict,
        format!("skewered by {word}"),
        vec![d],
    ))
}

fn facing(
    src: &Source,
    n: usize,
    strong: bool,
    upgrade: bool,
    seed: Option<&str>,
    max_len: usize,
    b: &Budget,
) -> Result<Outcome> {
    if upgrade {
        let (act, d) = input::action(src, b)?;
        let seed = seed.map(|s| act.pocset().require(s)).transpose()?;
        let f = act.facing_tuple_upgrade(n, seed, strong, max_len, b)?;
        let summary = act.facing_summary(&f, strong);
        let line = format!("facing {}-tuple {}", n, summary.tuple.join(","));
        return ok(
            serde_json::to_value(&summary).expect("serializable"),
            line,
            d,
        );
    }
    let (p, d) = input::pocset(src)?;
    let seed = seed.map(|s| p.require(s)).transpose()?;
    let t = p.facing_tuple(n, seed, strong, b)?;
    let names: Vec<&str> = t.iter().map(|&h| p.name(h)).collect();
    let line = format!("facing {}-tuple {}", n, names.join(","));
    ok(
        json!({ "tuple": names, "strong": strong, "upgrades": [] }),
        line,
        d,
    )
}

fn sectors(src: &Source, pr: &Pair) -> Result<Outcome> {
    let (p, d) = input::pocset(src)?;
    let (h, k) = pair(pr)?;
    let r = p.sector_halfspace(p.require(&h)?, p.require(&k)?)?;
    if let SectorResult::Product(w) = &r {
        p.check_product_witness(w)?;
    }
    let summary = p.sector_summary(&r);
    let line = summary.result.to_string();
    ok(
        serde_json::to_value(&summary).expect("serializable"),
        line,
        d,
    )
}

fn free_cert(
    src: &Source,
    (a, bw, h, k): (&str, &str, &str, &str),
    max_len: usize,
    check: bool,
    b: &Budget,
) -> Result<Outcome> {
    let (act, d) = input::action(src, b)?;
    let p = act.pocset();
    let (wa, wb) = (act.parse_word(a)?, act.parse_word(bw)?);
    let c = act.pingpong(&wa, &wb, p.require(h)?, p.require(k)?, max_len)?;
    let mut verdict = serde_json::to_value(&c).expect("serializable");
    let mut status = Status::Success;
    if check {
        let failures =
            verify::free_certificate(p, &generators(&act)?, (&c.a, &c.b, &c.h, &c.k), b)?;
        verdict["reverified"] = json!(failures.is_empty());
        verdict["reverify_failures"] = json!(failures);
        status = reverify(status, Some(failures.is_empty()));
    }
    let summary = format!(
        "{} to depth {}, {} words",
        c.status, c.depth, c.words_checked
    );
    Ok(outcome(status, verdict, summary, vec![d]))
}

fn ubs_validate(src: &Source) -> Result<Outcome> {
    let (s, d) = input::system(src)?;
    let report = s.validate();
    if !report.valid {
        let summary = format!("{} violations", report.violations.len());
        let verdict = json!({ "valid": false, "violations": report.violations });
        return Ok(outcome(Status::Negative, verdict, summary, vec![d]));
    }
    let tails: Vec<Value> = (0..s.n_chains())
        .map(|c| {
            s.minimal_tail(c).map(|m| {
                json!({
                    "chain": s.chain_id(c),
                    "index": m.index,
                    "minimal": m.minimal,
                    "closure": m.ubs.summary(&s),
                })
            })
        })
        .collect::<Result<_>>()?;
    let verdict = json!({
        "valid": true,
        "violations": [],
        "bound": s.bound(),
        "period": s.lcm_period(),
        "truncation": s.truncation(),
        "horizon": s.horizon(),
        "rank_proxy": s.rank_proxy(),
        "tails": tails,
    });
    ok(verdict, format!("valid, {} chains", s.n_chains()), d)
}
