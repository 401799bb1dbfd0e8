//! Text formats for dendrograms, per-step metrics and reference partitions.
//!
//! Dendrogram file:
//!
//! ```text
//! algorithm gice
//! seed 0
//! n 6
//! m 6
//! events
//! 2 4 0
//! 3 5 1
//! ...
//! ```
//!
//! Events use node labels. Partitions are not stored; reading a file replays
//! its events against the graph and rejects it if any split flag disagrees.

use std::io::{self, BufRead, BufReader, Read, Write};

use crate::divisive::{Algorithm, Dendrogram};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};
use crate::partition::Partition;
use crate::quality::{coefficient_of_variation, modularity, ModularityForm};

pub const METRICS_HEADER: &str = "step,k,Q,CV,removed_u,removed_v,split";

pub fn write_dendrogram<W: Write>(mut w: W, g: &Graph, d: &Dendrogram) -> io::Result<()> {
    writeln!(w, "algorithm {}", d.algorithm())?;
    writeln!(w, "seed {}", d.seed())?;
    writeln!(w, "n {}", d.node_count())?;
    writeln!(w, "m {}", d.edge_count())?;
    writeln!(w, "events")?;
    for ev in d.events() {
        writeln!(
            w,
            "{} {} {}",
            g.label(ev.edge.u()),
            g.label(ev.edge.v()),
            u8::from(ev.split)
        )?;
    }
    w.flush()
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn lines<R: Read>(r: R) -> impl Iterator<Item = Result<(usize, String)>> {
    BufReader::new(r)
        .lines()
        .enumerate()
        .map(|(i, l)| {
            l.map(|l| (i + 1, l))
                .map_err(|e| parse_error(i + 1, e.to_string()))
        })
        .filter(|r| match r {
            Ok((_, l)) => {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            }
            Err(_) => true,
        })
}

fn lookup(g: &Graph, line: usize, label: &str) -> Result<NodeId> {
    g.node_by_label(label)
        .ok_or_else(|| parse_error(line, format!("unknown node label '{label}'")))
}

/// Reads a dendrogram file and replays it against `g`.
pub fn read_dendrogram<R: Read>(r: R, g: &Graph) -> Result<Dendrogram> {
    let mut algorithm = None;
    let mut seed = None;
    let mut n = None;
    let mut m = None;
    let mut in_events = false;
    let mut removals: Vec<Edge> = Vec::new();
    let mut flags: Vec<(usize, bool)> = Vec::new();
    for item in lines(r) {
        let (lineno, line) = item?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if !in_events {
            match tokens.as_slice() {
                ["events"] => {
                    if n != Some(g.node_count()) || m != Some(g.edge_count()) {
                        return Err(Error::Replay(format!(
                            "file declares n={n:?} m={m:?}, graph has n={} m={}",
                            g.node_count(),
                            g.edge_count()
                        )));
                    }
                    in_events = true;
                }
                ["algorithm", a] => {
                    algorithm = Some(
                        a.parse::<Algorithm>()
                            .map_err(|e| parse_error(lineno, e.to_string()))?,
                    )
                }
                ["seed", s] => {
                    seed = Some(
                        s.parse::<u64>()
                            .map_err(|e| parse_error(lineno, e.to_string()))?,
                    )
                }
                ["n", s] => {
                    n = Some(
                        s.parse::<usize>()
                            .map_err(|e| parse_error(lineno, e.to_string()))?,
                    )
                }
                ["m", s] => {
                    m = Some(
                        s.parse::<usize>()
                            .map_err(|e| parse_error(lineno, e.to_string()))?,
                    )
                }
                _ => {
                    return Err(parse_error(
                        lineno,
                        format!("unexpected header line '{line}'"),
                    ))
                }
            }
            continue;
        }
        let [u, v, flag] = tokens.as_slice() else {
            return Err(parse_error(lineno, "expected 'u v split_flag'"));
        };
        let split = match *flag {
            "0" => false,
            "1" => true,
            other => {
                return Err(parse_error(
                    lineno,
                    format!("split flag must be 0 or 1, got '{other}'"),
                ))
            }
        };
        let (a, b) = (lookup(g, lineno, u)?, lookup(g, lineno, v)?);
        if a == b {
            return Err(parse_error(lineno, "event removes a self-loop"));
        }
        removals.push(Edge::new(a, b));
        flags.push((lineno, split));
    }
    if !in_events {
        return Err(parse_error(0, "missing 'events' line"));
    }
    let algorithm = algorithm.ok_or_else(|| parse_error(0, "missing 'algorithm' header"))?;
    let seed = seed.ok_or_else(|| parse_error(0, "missing 'seed' header"))?;
    let d = Dendrogram::replay(g, algorithm, seed, &removals)?;
    for (ev, &(lineno, split)) in d.events().iter().zip(&flags) {
        if ev.split != split {
            return Err(Error::Replay(format!(
                "line {lineno}: split flag {} does not match replay",
                u8::from(split)
            )));
        }
    }
    Ok(d)
}

/// One CSV row per removal event.
///
/// `step` counts partitions recorded so far (0 is the initial components);
/// `k`, `Q` and `CV` describe the partition current after the removal, with
/// `Q` measured on the original graph `g`.
pub fn write_metrics_csv<W: Write>(mut w: W, g: &Graph, d: &Dendrogram) -> Result<()> {
    writeln!(w, "{METRICS_HEADER}")?;
    let describe = |p: &Partition| -> Result<(usize, f64, f64)> {
        Ok((
            p.len(),
            modularity(g, p, ModularityForm::InOut)?,
            coefficient_of_variation(&p.sizes()),
        ))
    };
    let mut step = 0;
    let mut current = describe(d.initial())?;
    for ev in d.events() {
        if ev.split {
            current = describe(&d.partitions()[step])?;
            step += 1;
        }
        let (k, q, cv) = current;
        writeln!(
            w,
            "{step},{k},{q},{cv},{},{},{}",
            g.label(ev.edge.u()),
            g.label(ev.edge.v()),
            u8::from(ev.split)
        )?;
    }
    Ok(w.flush()?)
}

/// `node_label community_id` lines, community ids counted from 1.
pub fn write_partition<W: Write>(mut w: W, g: &Graph, p: &Partition) -> io::Result<()> {
    for node in 0..g.node_count() {
        writeln!(w, "{} {}", g.label(node), p.community_of(node) + 1)?;
    }
    w.flush()
}

/// Reads `node_label community_id` lines. Every node of `g` must appear once.
pub fn read_partition<R: Read>(r: R, g: &Graph) -> Result<Partition> {
    let mut labels: Vec<Option<String>> = vec![None; g.node_count()];
    for item in lines(r) {
        let (lineno, line) = item?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [node, community] = tokens.as_slice() else {
            return Err(parse_error(lineno, "expected 'node_label community_id'"));
        };
        let id = lookup(g, lineno, node)?;
        if labels[id].replace((*community).to_owned()).is_some() {
            return Err(parse_error(lineno, format!("node '{node}' listed twice")));
        }
    }
    let mut names: Vec<String> = Vec::new();
    let mut assignment = Vec::with_capacity(labels.len());
    for (node, l) in labels.into_iter().enumerate() {
        let l =
            l.ok_or_else(|| parse_error(0, format!("node '{}' has no community", g.label(node))))?;
        let c = names.iter().position(|x| *x == l).unwrap_or_else(|| {
            names.push(l);
            names.len() - 1
        });
        assignment.push(c);
    }
    Ok(Partition::from_assignment(&assignment))
}
