//! Named verification suites. Each case becomes one JSON line; a summary
//! object closes the report.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::Instant;

use anyhow::Context;
use clap::ValueEnum;
use geoforbid::embedder::{
    embed_avoiding_single, embed_convex_avoiding_two, embed_few_hull_edges, embed_recursive_default, Embedding,
};
use geoforbid::forbid::{
    r_edge_blanket, spread_middles, three_consecutive_hull_edges, three_pairs_consecutive_hull_edges,
    upper_bound_value, Rational,
};
use geoforbid::generate::convex_position;
use geoforbid::oracle::{exists_embedding, verify_construction_with_budget, Verdict};
use geoforbid::trees::{ahu_canonical, root_at, spider_tree};
use geoforbid::{Edge, EdgeSet, OracleError, PointSet, Tree};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{generate_points, trees_on, CmdResult, Failure, Mode, Status, VerifyArgs, RNG_NAME};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Baseline,
    SingleEdge,
    FewHull,
    TwoEdgeConvex,
    Conf3,
    #[value(name = "conf2-2")]
    #[serde(rename = "conf2-2")]
    Conf22,
    Blanket,
}

impl Suite {
    fn default_n(self) -> (u64, u64) {
        match self {
            Suite::Baseline => (5, 8),
            Suite::SingleEdge => (5, 7),
            Suite::FewHull => (5, 9),
            Suite::TwoEdgeConvex => (5, 7),
            Suite::Conf3 => (5, 9),
            Suite::Conf22 => (6, 9),
            Suite::Blanket => (7, 9),
        }
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Unknown,
}

struct Runner {
    suite: Suite,
    out: Box<dyn Write>,
    budget: u64,
    cases: u64,
    failed: u64,
    unknown: u64,
}

impl Runner {
    fn record(&mut self, case: Value, outcome: Outcome) -> Result<(), Failure> {
        self.cases += 1;
        let (verdict, detail) = match outcome {
            Outcome::Pass => ("pass", None),
            Outcome::Fail(d) => {
                self.failed += 1;
                ("fail", Some(d))
            }
            Outcome::Unknown => {
                self.unknown += 1;
                ("unknown", None)
            }
        };
        let mut line = json!({ "suite": self.suite, "case": case, "verdict": verdict });
        if let Some(d) = detail {
            line["detail"] = json!(d);
        }
        writeln!(self.out, "{line}").map_err(|e| Failure::failed(e.into()))
    }

    /// `Some(true)` when the oracle finds an embedding, `None` when it runs
    /// out of budget.
    fn feasible(&self, t: &Tree, s: &PointSet, f: &EdgeSet) -> Result<Option<bool>, Failure> {
        let report = exists_embedding(t, s, f, self.budget).map_err(|e| Failure::input(e.into()))?;
        Ok(match report.verdict {
            Verdict::Feasible => Some(true),
            Verdict::Infeasible => Some(false),
            Verdict::Unknown => None,
        })
    }
}

fn inclusive(r: (u64, u64)) -> impl Iterator<Item = u64> {
    r.0..=r.1
}

fn modes(m: Option<Mode>) -> Vec<Mode> {
    m.map_or_else(|| vec![Mode::Convex, Mode::Random], |m| vec![m])
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::input(e.into())
}

/// Checks a constructed embedding independently of the embedder and asks the
/// oracle for a second opinion.
fn judge(
    runner: &Runner,
    built: Result<Embedding, geoforbid::EmbedError>,
    t: &Tree,
    s: &PointSet,
    forbidden: &EdgeSet,
) -> Result<Outcome, Failure> {
    let emb = match built {
        Ok(e) => e,
        Err(e) => return Ok(Outcome::Fail(e.to_string())),
    };
    if emb.crossings() != 0 || !emb.avoids(forbidden) {
        return Ok(Outcome::Fail("embedding crosses or uses a forbidden edge".into()));
    }
    Ok(match runner.feasible(t, s, forbidden)? {
        Some(true) => Outcome::Pass,
        Some(false) => Outcome::Fail("oracle disagrees".into()),
        None => Outcome::Unknown,
    })
}

pub fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let out: Box<dyn Write> = match &a.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path)
                .with_context(|| format!("creating {}", path.display()))
                .map_err(Failure::failed)?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut runner = Runner { suite: a.suite, out, budget: a.budget, cases: 0, failed: 0, unknown: 0 };
    if a.budget == 0 {
        return Err(input(OracleError::ZeroBudget));
    }
    let ns = a.n.unwrap_or_else(|| a.suite.default_n());
    let seeds = a.seed.unwrap_or((1, 20));
    let started = Instant::now();

    match a.suite {
        Suite::Baseline => {
            for n in inclusive(ns) {
                for mode in modes(a.mode) {
                    for seed in inclusive(seeds) {
                        let s = generate_points(mode, n as usize, seed).map_err(Failure::input)?;
                        for t in trees_on(n as usize).map_err(Failure::input)? {
                            let rt = root_at(t, 0).map_err(input)?;
                            let outcome = match embed_recursive_default(&rt, &s) {
                                Ok(e) if e.crossings() == 0 => Outcome::Pass,
                                Ok(_) => Outcome::Fail("crossing".into()),
                                Err(e) => Outcome::Fail(e.to_string()),
                            };
                            let case = json!({"n": n, "mode": mode, "seed": seed, "tree": ahu_canonical(t)});
                            runner.record(case, outcome)?;
                        }
                    }
                }
            }
        }
        Suite::SingleEdge => {
            for n in inclusive(ns) {
                for mode in modes(a.mode) {
                    for seed in inclusive(seeds) {
                        let s = generate_points(mode, n as usize, seed).map_err(Failure::input)?;
                        for t in trees_on(n as usize).map_err(Failure::input)? {
                            for e in s.all_edges() {
                                let f: EdgeSet = [e].into_iter().collect();
                                let outcome = judge(&runner, embed_avoiding_single(t, &s, e), t, &s, &f)?;
                                let case = json!({"n": n, "mode": mode, "seed": seed, "tree": ahu_canonical(t), "edge": e});
                                runner.record(case, outcome)?;
                            }
                        }
                    }
                }
            }
        }
        Suite::FewHull => {
            for n in inclusive(ns) {
                let s = convex_position(n as usize, 1).map_err(input)?;
                for t in trees_on(n as usize).map_err(Failure::input)? {
                    let outcome = match embed_few_hull_edges(t, &s) {
                        Ok(e) if 2 * e.hull_edges_used() < n as usize && e.crossings() == 0 => Outcome::Pass,
                        Ok(e) => Outcome::Fail(format!("{} hull edges", e.hull_edges_used())),
                        Err(e) => Outcome::Fail(e.to_string()),
                    };
                    runner.record(json!({"n": n, "tree": ahu_canonical(t)}), outcome)?;
                }
            }
        }
        Suite::TwoEdgeConvex => {
            for n in inclusive(ns) {
                let s = convex_position(n as usize, 1).map_err(input)?;
                let edges: Vec<Edge> = s.all_edges().collect();
                for t in trees_on(n as usize).map_err(Failure::input)? {
                    for (i, &f1) in edges.iter().enumerate() {
                        for &f2 in &edges[i + 1..] {
                            let f: EdgeSet = [f1, f2].into_iter().collect();
                            let outcome = judge(&runner, embed_convex_avoiding_two(t, &s, f1, f2), t, &s, &f)?;
                            let case = json!({"n": n, "tree": ahu_canonical(t), "edges": [f1, f2]});
                            runner.record(case, outcome)?;
                        }
                    }
                }
            }
        }
        Suite::Conf3 => {
            for n in inclusive(ns) {
                let s = convex_position(n as usize, 1).map_err(input)?;
                let c = three_consecutive_hull_edges(&s, 0).map_err(input)?;
                let t = spider_tree(n as usize).map_err(input)?;
                let mut outcome = match runner.feasible(&t, &s, &c.edges)? {
                    Some(false) => Outcome::Pass,
                    Some(true) => Outcome::Fail("spider embeds".into()),
                    None => Outcome::Unknown,
                };
                if matches!(outcome, Outcome::Pass) {
                    for e in c.edges.iter() {
                        let mut fewer = c.edges.clone();
                        fewer.remove(&e);
                        match runner.feasible(&t, &s, &fewer)? {
                            Some(true) => {}
                            Some(false) => outcome = Outcome::Fail(format!("still forbidden without {e}")),
                            None => outcome = Outcome::Unknown,
                        }
                    }
                }
                runner.record(json!({"n": n, "edges": c.edges.iter().collect::<Vec<_>>()}), outcome)?;
            }
        }
        Suite::Conf22 => {
            for n in inclusive(ns) {
                let s = convex_position(n as usize, 1).map_err(input)?;
                let middles = spread_middles(n as usize);
                let c = three_pairs_consecutive_hull_edges(&s, middles).map_err(input)?;
                let t = spider_tree(n as usize).map_err(input)?;
                let outcome = match runner.feasible(&t, &s, &c.edges)? {
                    Some(false) => Outcome::Pass,
                    Some(true) => Outcome::Fail("spider embeds".into()),
                    None => Outcome::Unknown,
                };
                runner.record(json!({"n": n, "middles": middles, "edges": c.edges.iter().collect::<Vec<_>>()}), outcome)?;
            }
        }
        Suite::Blanket => {
            let ks = a.k.unwrap_or((4, 6));
            for n in inclusive(ns) {
                let s = convex_position(n as usize, 1).map_err(input)?;
                for k in inclusive(ks).filter(|&k| k >= 3 && k <= n) {
                    let c = r_edge_blanket(&s, k as usize).map_err(input)?;
                    let bound = upper_bound_value(n as usize, k as usize).map_err(input)?;
                    let outcome = if Rational::from_integer(c.edges.len() as i64) > bound {
                        Outcome::Fail(format!("{} edges exceed {bound}", c.edges.len()))
                    } else {
                        match verify_construction_with_budget(&c, &s, runner.budget) {
                            Ok(true) => Outcome::Pass,
                            Ok(false) => Outcome::Fail("target tree embeds".into()),
                            Err(OracleError::BudgetExhausted(_)) => Outcome::Unknown,
                            Err(e) => return Err(input(e)),
                        }
                    };
                    let case = json!({"n": n, "k": k, "size": c.edges.len(), "bound": bound.to_string()});
                    runner.record(case, outcome)?;
                }
            }
        }
    }

    let summary = json!({
        "summary": {
            "suite": a.suite,
            "cases": runner.cases,
            "passed": runner.cases - runner.failed - runner.unknown,
            "failed": runner.failed,
            "unknown": runner.unknown,
            "seeds": [seeds.0, seeds.1],
            "rng": RNG_NAME,
            "seconds": started.elapsed().as_secs_f64(),
        }
    });
    writeln!(runner.out, "{summary}").map_err(|e| Failure::failed(e.into()))?;
    runner.out.flush().map_err(|e| Failure::failed(e.into()))?;
    Ok(if runner.failed > 0 {
        Status::Failure
    } else if runner.unknown > 0 {
        Status::Unknown
    } else {
        Status::Success
    })
}
