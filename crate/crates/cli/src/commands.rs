use std::fmt;
use std::path::Path;

use hexspan::coloring::window::{guarded_window, Guard, Refusal};
use hexspan::coloring::{
    exact_window_span, search_lattice, search_with_fallback, verify_lattice, verify_window,
    window_chromatic_number, LatticeColoring, Violation, WindowSpan,
};
use hexspan::grid::ball_size;
use hexspan::io::{read_coloring, render_svg, write_coloring, ColoringFile, FileError};
use hexspan::reuse::{check_observations, ObservationReport};
use hexspan::shell::{build_clique, build_shell, Ring};
use hexspan::span::span_even;
use hexspan::{distance, distance_bfs, Vertex};
use serde_json::{json, Value};

use crate::args::{Cli, Command};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Guard(String),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Guard(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Guard(m) => f.write_str(m),
        }
    }
}

impl From<Refusal> for CliError {
    fn from(r: Refusal) -> Self {
        CliError::Guard(format!("refused: {r}"))
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::Parse(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Prints `value` (with the schema version) under `--json`, else `text`.
fn emit(cli: &Cli, mut value: Value, text: impl FnOnce() -> String) {
    if cli.json {
        value
            .as_object_mut()
            .expect("json output is an object")
            .insert("schema_version".into(), json!(SCHEMA_VERSION));
        println!("{value}");
    } else {
        print!("{}", text());
    }
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| usage(format!("--out {}: {e}", path.display())))
}

fn v(x: Vertex) -> Value {
    json!([x.i, x.j])
}

fn violations_json(vs: &[Violation]) -> Value {
    vs.iter()
        .map(|x| json!({"u": v(x.u), "v": v(x.v), "distance": x.distance, "color": x.color}))
        .collect()
}

fn lattice_json(c: &LatticeColoring) -> Value {
    let h = c.hnf();
    json!({
        "l": c.l,
        "basis": c.basis.iter().map(|t| json!([t.a, t.b])).collect::<Vec<_>>(),
        "hnf": {"a": h.a, "b": h.b, "c": h.c},
        "index": c.index(),
        "color_count": c.color_count,
        "mode": c.mode().to_string(),
        "cells": c.assignment.iter().map(|(x, k)| json!([x.i, x.j, k])).collect::<Vec<_>>(),
    })
}

pub fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Distance { i1, j1, i2, j2, bfs } => {
            let (a, b) = (Vertex::new(*i1, *j1), Vertex::new(*i2, *j2));
            let d = distance(a, b);
            let db = bfs.then(|| distance_bfs(a, b));
            if db.is_some_and(|x| x != d) {
                emit(cli, json!({"u": v(a), "v": v(b), "distance": d, "distance_bfs": db}), || {
                    format!("closed form {d} disagrees with bfs {}\n", db.unwrap())
                });
                return Ok(1);
            }
            emit(cli, json!({"u": v(a), "v": v(b), "distance": d, "distance_bfs": db}), || format!("{d}\n"));
            Ok(0)
        }
        Command::Ring { k, center } => {
            if *k == 0 {
                return Err(usage("k must be at least 1"));
            }
            let ring = Ring::build(center.center, *k).map_err(|e| usage(e.to_string()))?;
            let members: Vec<Value> = ring
                .members()
                .iter()
                .enumerate()
                .map(|(n, &x)| json!({"index": n + 1, "vertex": v(x), "corner": ring.is_corner(x)}))
                .collect();
            let corners: Vec<Value> = ring.corners().map(|c| c.iter().map(|&x| v(x)).collect()).unwrap_or_default();
            let groups: Vec<Value> =
                (1..=6).map(|r| ring.group(r).iter().map(|&x| v(x)).collect()).collect();
            emit(
                cli,
                json!({"center": v(center.center), "k": k, "size": ring.len(), "members": members, "groups": groups, "corners": corners}),
                || {
                    let mut s = format!("ring k={k} center={} size={}\n", center.center, ring.len());
                    for r in 1..=6 {
                        let g: Vec<String> = ring.group(r).iter().map(|x| x.to_string()).collect();
                        s += &format!("G{r}: {}\n", g.join(" "));
                    }
                    if let Some(c) = ring.corners() {
                        let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                        s += &format!("corners: {}\n", c.join(" "));
                    }
                    s
                },
            );
            Ok(0)
        }
        Command::Clique { p, center } => {
            let c = build_clique(center.center, *p).map_err(|e| usage(e.to_string()))?;
            emit(
                cli,
                json!({"center": v(center.center), "p": p, "size": c.len(), "diameter": c.diameter,
                       "members": c.members.iter().map(|&x| v(x)).collect::<Vec<_>>()}),
                || format!("clique p={p} center={} size={} diameter={}\n", center.center, c.len(), c.diameter),
            );
            Ok(0)
        }
        Command::Shell { k, h, center } => {
            let s = build_shell(center.center, *k, *h).map_err(|e| usage(e.to_string()))?;
            let ring = Ring::build(center.center, *k).expect("k >= 5");
            let idx: Vec<usize> = s.members.iter().map(|&x| ring.index_of(x).unwrap()).collect();
            emit(
                cli,
                json!({"center": v(center.center), "k": k, "h": h, "size": s.members.len(),
                       "indices": idx, "members": s.members.iter().map(|&x| v(x)).collect::<Vec<_>>()}),
                || {
                    let m: Vec<String> = s.members.iter().map(|x| x.to_string()).collect();
                    format!("shell k={k} h={h} size={}\nindices: {idx:?}\nmembers: {}\n", s.members.len(), m.join(" "))
                },
            );
            Ok(0)
        }
        Command::Span { l } => {
            let cert = span_even(*l).map_err(|e| usage(e.to_string()))?;
            let mut value = serde_json::to_value(&cert).expect("certificate serializes");
            value["consistent"] = json!(cert.is_consistent());
            emit(cli, value, || {
                format!(
                    "l={} p={} clique={} extra={} span={} formula={}\n",
                    cert.l, cert.p, cert.clique_size, cert.extra, cert.span, cert.formula_value
                )
            });
            Ok(if cert.is_consistent() { 0 } else { 1 })
        }
        Command::CheckObservations { p } => {
            let ps: Vec<u64> = if p.is_empty() { (4..=12).collect() } else { p.clone() };
            if let Some(bad) = ps.iter().find(|&&x| x < 4) {
                return Err(usage(format!("--p {bad}: p must be at least 4")));
            }
            let mut reports: Vec<ObservationReport> = Vec::new();
            for &x in &ps {
                reports.extend(check_observations(x).map_err(|e| usage(e.to_string()))?);
            }
            let all_pass = reports.iter().all(|r| r.passed());
            emit(cli, json!({"reports": reports, "pass": all_pass}), || {
                let mut s = String::new();
                for r in &reports {
                    s += &format!(
                        "p={:<3} {:<11} {} checked={} max={} counterexamples={}\n",
                        r.p,
                        r.id.to_string(),
                        if r.passed() { "PASS" } else { "FAIL" },
                        r.checked,
                        r.max_observed().map_or("-".into(), |m| m.to_string()),
                        r.counterexamples.len()
                    );
                    for c in r.counterexamples.iter().take(3) {
                        let src = c.source.map_or(String::new(), |x| format!("{x} "));
                        s += &format!("    {src}{}\n", c.detail);
                    }
                }
                s
            });
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::SearchLattice { l, max_index, fallback, budget, node_limit, out } => {
            if *l == 0 {
                return Err(usage("l must be at least 1"));
            }
            if *max_index < 2 {
                return Err(usage("--max-index must be at least 2"));
            }
            let target = match budget {
                Some(b) => Some(*b),
                None => span_even(*l).ok().map(|c| c.span),
            };
            if *fallback && target.is_none() {
                return Err(usage("--fallback needs --budget when l is not an even value >= 8"));
            }
            let (coloring, mode_note, single_best, undecided) = if *fallback {
                let r = search_with_fallback(*l, *max_index, target.unwrap(), *node_limit);
                (r.coloring, r.mode.map(|m| m.to_string()), r.single_coset_best, r.undecided.len())
            } else {
                let c = search_lattice(*l, *max_index);
                let best = c.as_ref().map(|c| u64::from(c.color_count));
                (c, best.map(|_| "single-coset".to_string()), best, 0)
            };
            let valid = coloring.as_ref().map(|c| verify_lattice(c).is_valid());
            let achieved = coloring
                .as_ref()
                .is_some_and(|c| target.is_none_or(|t| u64::from(c.color_count) <= t));
            if let (Some(path), Some(c)) = (out, &coloring) {
                write_out(path, &write_coloring(&ColoringFile::Lattice(c.clone())))?;
            }
            emit(
                cli,
                json!({"l": l, "max_index": max_index, "target": target, "single_coset_best": single_best,
                       "mode": mode_note, "undecided": undecided, "achieved": achieved, "valid": valid,
                       "coloring": coloring.as_ref().map(lattice_json)}),
                || match &coloring {
                    Some(c) => format!(
                        "l={l} colors={} index={} lattice={} mode={} valid={} target={}\n",
                        c.color_count,
                        c.index(),
                        c.hnf(),
                        mode_note.clone().unwrap_or_default(),
                        valid.unwrap_or(false),
                        target.map_or("-".into(), |t| t.to_string())
                    ),
                    None => format!(
                        "l={l}: no colouring found within index {max_index} (single-coset best {}, undecided lattices {undecided})\n",
                        single_best.map_or("none".into(), |b| b.to_string())
                    ),
                },
            );
            Ok(if achieved && valid == Some(true) { 0 } else { 1 })
        }
        Command::VerifyColoring { file } => {
            let parsed = read_coloring(file)?;
            let (kind, verdict, colors) = match &parsed {
                ColoringFile::Window(c) => ("window", verify_window(c), c.color_count()),
                ColoringFile::Lattice(c) => ("lattice", verify_lattice(c), c.distinct_colors()),
            };
            emit(
                cli,
                json!({"file": file.display().to_string(), "kind": kind, "l": parsed.l(),
                       "cells": parsed.cells().len(), "colors": colors, "valid": verdict.is_valid(),
                       "violations": violations_json(&verdict.violations)}),
                || {
                    let mut s = format!(
                        "{kind} l={} cells={} colors={} violations={}\n",
                        parsed.l(),
                        parsed.cells().len(),
                        colors,
                        verdict.violations.len()
                    );
                    for x in &verdict.violations {
                        s += &format!("  {} {} distance={} color={}\n", x.u, x.v, x.distance, x.color);
                    }
                    s
                },
            );
            Ok(if verdict.is_valid() { 0 } else { 1 })
        }
        Command::ExactWindow { l, radius, budget, guard, node_limit, out } => {
            if *l == 0 {
                return Err(usage("l must be at least 1"));
            }
            let g = Guard { max_vertices: *guard, node_limit: *node_limit };
            let size = guarded_window(*radius, &g)?.len();
            let (feasible, used_budget, coloring) = match budget {
                Some(b) => match exact_window_span(*l, *radius, *b, &g)? {
                    WindowSpan::Feasible(c) => (true, *b, Some(c)),
                    WindowSpan::Infeasible => (false, *b, None),
                },
                None => {
                    let lower = ball_size((*l / 2).min(*radius)) as usize;
                    let (k, c) = window_chromatic_number(*l, *radius, lower, &g)?;
                    (true, k, Some(c))
                }
            };
            if let (Some(path), Some(c)) = (out, &coloring) {
                write_out(path, &write_coloring(&ColoringFile::Window(c.clone())))?;
            }
            let chromatic = budget.is_none().then_some(used_budget);
            emit(
                cli,
                json!({"l": l, "radius": radius, "vertices": size, "budget": used_budget,
                       "feasible": feasible, "chromatic_number": chromatic,
                       "lower_bound": if feasible { None } else { Some(used_budget + 1) }}),
                || match (budget, feasible) {
                    (None, _) => format!("l={l} radius={radius} vertices={size} chromatic number {used_budget}\n"),
                    (Some(b), true) => format!("l={l} radius={radius} vertices={size} budget={b}: feasible\n"),
                    (Some(b), false) => format!(
                        "l={l} radius={radius} vertices={size} budget={b}: infeasible, span >= {}\n",
                        b + 1
                    ),
                },
            );
            Ok(0)
        }
        Command::ExportDimacs { l, radius, guard, out } => {
            if *l == 0 {
                return Err(usage("l must be at least 1"));
            }
            let g = Guard { max_vertices: *guard, ..Guard::default() };
            let text = hexspan::io::export_dimacs(*l, *radius, &g)?;
            match out {
                Some(path) => {
                    write_out(path, &text)?;
                    let header = text.lines().find(|x| x.starts_with("p ")).unwrap_or_default().to_string();
                    emit(cli, json!({"out": path.display().to_string(), "header": header}), || format!("{header}\n"));
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Render { file, out } => {
            let parsed = read_coloring(file)?;
            let svg = render_svg(&parsed);
            match out {
                Some(path) => {
                    write_out(path, &svg)?;
                    emit(cli, json!({"out": path.display().to_string(), "bytes": svg.len()}), || {
                        format!("wrote {}\n", path.display())
                    });
                }
                None => print!("{svg}"),
            }
            Ok(0)
        }
    }
}
