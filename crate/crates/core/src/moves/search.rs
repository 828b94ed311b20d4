//! Bounded bidirectional breadth-first search for a move sequence between
//! two codes. States are identified by the canonical serialization of their
//! canonical form; each level is expanded in parallel and merged in a fixed
//! order, so verdicts do not depend on the worker count.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{apply_move_with_inverse, enumerate_moves_with, EnumerateOptions, MoveSet, MoveSite};
use crate::code::VsgCode;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_crossings: usize,
    pub max_states: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_crossings: 6,
            max_states: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Equivalent,
    /// The budget ran out. This proves nothing about inequivalence.
    Exhausted,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub states_visited: usize,
    pub max_crossings_reached: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchVerdict {
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<MoveSite>>,
    pub stats: SearchStats,
}

type Key = Vec<u8>;

fn key(code: &VsgCode) -> Key {
    code.canonical_form().canonical_serialize()
}

struct Node {
    parent: Option<Key>,
    /// Forward side: the site leading here from the parent. Backward side:
    /// the site leading from here back to the parent.
    site: Option<MoveSite>,
}

struct Side {
    nodes: HashMap<Key, Node>,
    frontier: Vec<(Key, VsgCode)>,
    backward: bool,
}

impl Side {
    fn new(code: &VsgCode, backward: bool) -> Self {
        let k = key(code);
        let mut nodes = HashMap::new();
        nodes.insert(k.clone(), Node { parent: None, site: None });
        Side {
            nodes,
            frontier: vec![(k, code.canonical_form())],
            backward,
        }
    }

    /// Sites from the root to `k`.
    fn path(&self, k: &Key) -> Vec<MoveSite> {
        let mut out = Vec::new();
        let mut cur = k.clone();
        while let Some(node) = self.nodes.get(&cur) {
            match (&node.parent, &node.site) {
                (Some(p), Some(s)) => {
                    out.push(s.without_labels());
                    cur = p.clone();
                }
                _ => break,
            }
        }
        if !self.backward {
            out.reverse();
        }
        out
    }
}

pub fn search_equivalent(
    a: &VsgCode,
    b: &VsgCode,
    budget: SearchBudget,
    moveset: &MoveSet,
) -> Result<SearchVerdict> {
    a.ensure_valid()?;
    b.ensure_valid()?;
    let largest = a.crossing_count().max(b.crossing_count());
    if budget.max_crossings < largest {
        return Err(Error::Budget {
            what: "max-crossings",
            needed: largest as u64,
            limit: budget.max_crossings as u64,
        });
    }
    if budget.max_states < 2 {
        return Err(Error::Budget {
            what: "max-states",
            needed: 2,
            limit: budget.max_states as u64,
        });
    }
    let mut stats = SearchStats {
        states_visited: 1,
        max_crossings_reached: largest,
    };
    let mut fwd = Side::new(a, false);
    let mut bwd = Side::new(b, true);
    if fwd.frontier[0].0 == bwd.frontier[0].0 {
        return Ok(SearchVerdict {
            outcome: Outcome::Equivalent,
            witness: Some(Vec::new()),
            stats,
        });
    }
    stats.states_visited = 2;
    let opts = EnumerateOptions {
        max_crossings: budget.max_crossings,
        insertions: true,
    };
    let exhausted = |stats: SearchStats| SearchVerdict {
        outcome: Outcome::Exhausted,
        witness: None,
        stats,
    };
    loop {
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            return Ok(exhausted(stats));
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (side, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let frontier = std::mem::take(&mut side.frontier);
        let expanded: Vec<Vec<(Key, VsgCode, MoveSite)>> = frontier
            .par_iter()
            .map(|(_, code)| {
                enumerate_moves_with(code, moveset, opts)
                    .into_iter()
                    .filter_map(|site| {
                        let (next, inverse) = apply_move_with_inverse(code, &site, moveset).ok()?;
                        if next.crossing_count() > budget.max_crossings {
                            return None;
                        }
                        let step = if side.backward { inverse } else { site };
                        Some((key(&next), next, step))
                    })
                    .collect()
            })
            .collect();
        for ((parent, _), successors) in frontier.iter().zip(expanded) {
            for (k, next, step) in successors {
                if side.nodes.contains_key(&k) {
                    continue;
                }
                if stats.states_visited >= budget.max_states {
                    return Ok(exhausted(stats));
                }
                stats.states_visited += 1;
                stats.max_crossings_reached = stats.max_crossings_reached.max(next.crossing_count());
                side.nodes.insert(
                    k.clone(),
                    Node {
                        parent: Some(parent.clone()),
                        site: Some(step),
                    },
                );
                if other.nodes.contains_key(&k) {
                    let (f, b) = if forward { (&*side, other) } else { (other, &*side) };
                    let mut witness = f.path(&k);
                    witness.extend(b.path(&k));
                    return Ok(SearchVerdict {
                        outcome: Outcome::Equivalent,
                        witness: Some(witness),
                        stats,
                    });
                }
                side.frontier.push((k, next.canonical_form()));
            }
        }
    }
}
