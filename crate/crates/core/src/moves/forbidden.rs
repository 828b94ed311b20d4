//! Normal form of a code once forbidden moves are allowed.
//!
//! With (VIII*) every edge's passages can be permuted freely, so a crossing
//! with both passages on one edge can be made a kink and removed by (I), and
//! two opposite-sign arrows between the same ordered pair of edges can be
//! made parallel and removed by (II). With (VII*) as well, the legs of two
//! adjacent edges become neighbours in the rotation and every crossing
//! between them can be slid next to the vertex and removed by (VI).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{arrow_sets, Role, VsgCode};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    /// Moves (I)–(V) plus (VIII*).
    #[serde(rename = "rigid+viii*")]
    RigidViii,
    /// Moves (I)–(VI) plus all forbidden moves.
    #[serde(rename = "pliable+all")]
    PliableAll,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::RigidViii => "rigid+viii*",
            Level::PliableAll => "pliable+all",
        })
    }
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rigid+viii*" | "rigid+viii" | "rigid" => Ok(Level::RigidViii),
            "pliable+all" | "pliable" | "all" => Ok(Level::PliableAll),
            other => Err(Error::Parse(format!("unknown normalization level {other:?}"))),
        }
    }
}

fn adjacent(code: &VsgCode, i: usize, j: usize) -> bool {
    let (a, b) = (&code.edges[i], &code.edges[j]);
    i != j && [&a.tail, &a.head].iter().any(|v| **v == b.tail || **v == b.head)
}

pub fn normalize_forbidden(code: &VsgCode, level: Level) -> Result<VsgCode> {
    code.ensure_valid()?;
    let positions = code.crossing_positions();
    let mut drop: BTreeSet<String> = BTreeSet::new();
    // arrows grouped by (under edge, over edge), in first-occurrence order
    let mut groups: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for label in code.crossing_labels() {
        let p = positions[&label];
        let (from, to) = (p.under.edge, p.over.edge);
        if from == to || (level == Level::PliableAll && adjacent(code, from, to)) {
            drop.insert(label);
        } else {
            groups.entry((from, to)).or_default().push(label);
        }
    }
    let mut rank: HashMap<String, usize> = HashMap::new();
    for labels in groups.values() {
        let (mut pos, mut neg): (Vec<&String>, Vec<&String>) = labels
            .iter()
            .partition(|l| positions[l.as_str()].sign.value() > 0);
        let n = pos.len().min(neg.len());
        drop.extend(pos.drain(..n).cloned());
        drop.extend(neg.drain(..n).cloned());
        for (k, l) in pos.into_iter().chain(neg).enumerate() {
            rank.insert(l.clone(), k);
        }
    }
    let mut out = code.without_crossings(&drop);
    for e in 0..out.edges.len() {
        let seq = out.passages_of_mut(e);
        let partner = |label: &str, role: Role| {
            let p = positions[label];
            match role {
                Role::Under => (p.over.edge, 0),
                Role::Over => (p.under.edge, 1),
            }
        };
        seq.sort_by_key(|p| (partner(&p.crossing, p.role), rank[&p.crossing]));
    }
    if level == Level::PliableAll {
        for rot in out.rotations.values_mut() {
            rot.sort();
        }
    }
    debug_assert!(is_normalized(&out, level));
    Ok(out)
}

/// Checks the normal-form conditions through the arrow sets: no arrow from
/// an edge to itself; each `A_{i,j}` of one sign with consecutive passages
/// on both edges; and, at the pliable level, no arrows between adjacent
/// edges.
pub fn is_normalized(code: &VsgCode, level: Level) -> bool {
    let arrows = arrow_sets(code);
    let index = |id: &str| code.edge_index(id).expect("edge of this code");
    for ((from, to), set) in &arrows.0 {
        if set.is_empty() {
            continue;
        }
        let (i, j) = (index(from), index(to));
        if i == j || (level == Level::PliableAll && adjacent(code, i, j)) {
            return false;
        }
        if set.iter().any(|a| a.sign != set[0].sign) {
            return false;
        }
        let labels: BTreeSet<&str> = set.iter().map(|a| a.label.as_str()).collect();
        for e in [i, j] {
            let hits: Vec<usize> = code
                .passages_of(e)
                .iter()
                .enumerate()
                .filter(|(_, p)| labels.contains(p.crossing.as_str()))
                .map(|(k, _)| k)
                .collect();
            if hits.last().unwrap() - hits[0] + 1 != hits.len() {
                return false;
            }
        }
    }
    if level == Level::PliableAll {
        return code.rotations.values().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
    }
    true
}
