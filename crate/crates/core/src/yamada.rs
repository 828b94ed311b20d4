//! Yamada polynomial by a three-way crossing state sum followed by
//! memoized deletion–contraction on the resulting abstract graphs.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::code::VsgCode;
use crate::diagram::{smoothing, AbstractDiagram, CrossingEnd, Port};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

pub const DEFAULT_MAX_CROSSINGS: usize = 14;

/// Undirected multigraph; loops allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl StateGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        Self { vertex_count, edges }
    }

    pub fn bouquet(n: usize) -> Self {
        Self::new(1, vec![(0, 0); n])
    }
}

type Memo = HashMap<(usize, Vec<(usize, usize)>), LaurentPoly>;

/// `R` of a crossing-free graph.
pub fn graph_eval(g: &StateGraph) -> LaurentPoly {
    let mut memo = Memo::new();
    eval(g.vertex_count, &g.edges, &mut memo)
}

fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

fn eval(n: usize, edges: &[(usize, usize)], memo: &mut Memo) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::one();
    }
    let comp = components(n, edges);
    let mut roots: Vec<usize> = comp.clone();
    roots.sort_unstable();
    roots.dedup();
    if roots.len() == 1 {
        return eval_connected(n, edges.to_vec(), memo);
    }
    roots
        .iter()
        .map(|&r| {
            let verts: Vec<usize> = (0..n).filter(|&v| comp[v] == r).collect();
            let idx: HashMap<usize, usize> =
                verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let sub: Vec<(usize, usize)> = edges
                .iter()
                .filter(|(a, _)| comp[*a] == r)
                .map(|&(a, b)| (idx[&a], idx[&b]))
                .collect();
            eval_connected(verts.len(), sub, memo)
        })
        .product()
}

/// Connected graph. Loops factor out as wedged bouquets, degree-2 vertices
/// are suppressed, blocks multiply, and what is left is split by
/// deletion–contraction.
fn eval_connected(n: usize, mut edges: Vec<(usize, usize)>, memo: &mut Memo) -> LaurentPoly {
    let loops = edges.iter().filter(|(a, b)| a == b).count();
    edges.retain(|(a, b)| a != b);
    let loop_factor = (-LaurentPoly::sigma()).pow(loops as u32);
    if edges.is_empty() {
        // single vertex
        return -loop_factor;
    }
    let (n, edges) = suppress_degree_two(n, edges);
    let value = if edges.iter().any(|(a, b)| a == b) {
        // contraction produced new loops
        eval_connected(n, edges, memo)
    } else {
        eval_loopless(n, edges, memo)
    };
    &loop_factor * &value
}

/// Contracts one edge at every degree-2 vertex whose two edges are non-loops.
fn suppress_degree_two(mut n: usize, mut edges: Vec<(usize, usize)>) -> (usize, Vec<(usize, usize)>) {
    loop {
        let mut degree = vec![0usize; n];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let candidate = (0..n).find(|&v| {
            degree[v] == 2 && edges.iter().all(|&(a, b)| !(a == v && b == v))
        });
        let Some(v) = candidate else {
            return (n, edges);
        };
        if n == 1 {
            return (n, edges);
        }
        let k = edges.iter().position(|&(a, b)| a == v || b == v).unwrap();
        let (a, b) = edges.remove(k);
        let other = if a == v { b } else { a };
        let (n2, e2) = contract(n, &edges, v, other);
        n = n2;
        edges = e2;
    }
}

/// Merges vertex `from` into `into` and renumbers.
fn contract(n: usize, edges: &[(usize, usize)], from: usize, into: usize) -> (usize, Vec<(usize, usize)>) {
    let map = |x: usize| {
        let x = if x == from { into } else { x };
        if x > from {
            x - 1
        } else {
            x
        }
    };
    (n - 1, edges.iter().map(|&(a, b)| (map(a), map(b))).collect())
}

fn eval_loopless(n: usize, edges: Vec<(usize, usize)>, memo: &mut Memo) -> LaurentPoly {
    let blocks = blocks(n, &edges);
    if blocks.len() > 1 {
        let mut acc = LaurentPoly::one();
        for block in &blocks {
            let (bn, be) = induced(block, &edges);
            if be.len() == 1 {
                // a bridge: R of a single edge vanishes
                return LaurentPoly::zero();
            }
            acc = &acc * &eval_connected(bn, be, memo);
        }
        let sign = if blocks.len() % 2 == 0 { -1 } else { 1 };
        return acc.mul_monomial(sign, 0);
    }
    if edges.len() == 1 {
        return LaurentPoly::zero();
    }
    let key = memo_key(n, &edges);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // deletion–contraction on the first edge
    let (a, b) = edges[0];
    let rest: Vec<(usize, usize)> = edges[1..].to_vec();
    let deleted = eval(n, &rest, memo);
    let (cn, ce) = contract(n, &rest, b, a);
    let contracted = eval(cn, &ce, memo);
    let value = &deleted + &contracted;
    memo.insert(key, value.clone());
    value
}

fn induced(block: &[usize], edges: &[(usize, usize)]) -> (usize, Vec<(usize, usize)>) {
    let mut verts: Vec<usize> = block.iter().flat_map(|&e| [edges[e].0, edges[e].1]).collect();
    verts.sort_unstable();
    verts.dedup();
    let idx: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    (
        verts.len(),
        block.iter().map(|&e| (idx[&edges[e].0], idx[&edges[e].1])).collect(),
    )
}

/// Biconnected components of a loopless connected multigraph, as edge
/// index lists.
fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut out = Vec::new();

    // iterative DFS: (vertex, parent edge, next adjacency index)
    let mut frames: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(top) = frames.len().checked_sub(1) {
        let (v, pe, next) = frames[top];
        if next < adj[v].len() {
            let (w, ei) = adj[v][next];
            frames[top].2 += 1;
            if ei == pe {
                continue;
            }
            if disc[w] == usize::MAX {
                stack.push(ei);
                disc[w] = time;
                low[w] = time;
                time += 1;
                frames.push((w, ei, 0));
            } else if disc[w] < disc[v] {
                stack.push(ei);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            frames.pop();
            if let Some(&(u, _, _)) = frames.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = stack.pop() {
                        block.push(e);
                        if e == pe {
                            break;
                        }
                    }
                    out.push(block);
                }
            }
        }
    }
    out
}

/// Deterministic relabeling by degree then first appearance.
fn memo_key(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<(usize, usize)>) {
    let mut degree = vec![0usize; n];
    for &(a, b) in edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut es: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (rank[a], rank[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    es.sort_unstable();
    (n, es)
}

#[derive(Clone, Copy, Debug)]
pub struct YamadaOptions {
    pub max_crossings: usize,
}

impl Default for YamadaOptions {
    fn default() -> Self {
        Self {
            max_crossings: DEFAULT_MAX_CROSSINGS,
        }
    }
}

/// How a crossing is resolved in one state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    A,
    B,
    Vertex,
}

/// Abstract graph left after resolving every crossing of `d`.
pub fn state_graph(d: &AbstractDiagram, state: &[Resolution]) -> StateGraph {
    let mut node_of: HashMap<Port, usize> = HashMap::new();
    let mut next = d.vertices.len();
    for (c, info) in d.crossings.iter().enumerate() {
        let port = |end| Port::Crossing { crossing: c, end };
        match state[c] {
            Resolution::Vertex => {
                for end in CrossingEnd::ALL {
                    node_of.insert(port(end), next);
                }
                next += 1;
            }
            r => {
                for (x, y) in smoothing(info.sign, r == Resolution::A) {
                    node_of.insert(port(x), next);
                    node_of.insert(port(y), next);
                    next += 1;
                }
            }
        }
    }
    let node = |p: Port| match p {
        Port::Vertex { vertex, .. } => vertex,
        other => node_of[&other],
    };
    let edges = d.segments.iter().map(|s| (node(s.from), node(s.to))).collect();
    StateGraph::new(next, edges)
}

/// `R(G)`: sum over all `3^c` crossing states of
/// `A^(#A - #B) * R(state graph)`.
pub fn yamada(code: &VsgCode) -> Result<LaurentPoly> {
    yamada_with(code, YamadaOptions::default())
}

pub fn yamada_with(code: &VsgCode, opts: YamadaOptions) -> Result<LaurentPoly> {
    code.ensure_valid()?;
    let d = AbstractDiagram::from_code(code);
    let c = d.crossings.len();
    if c > opts.max_crossings {
        return Err(Error::Budget {
            what: "yamada state sum crossings",
            needed: c as u64,
            limit: opts.max_crossings as u64,
        });
    }
    let total = 3u64.pow(c as u32);
    let sum = (0..total)
        .into_par_iter()
        .fold(
            || (Memo::new(), LaurentPoly::zero()),
            |(mut memo, acc), s| {
                let mut state = Vec::with_capacity(c);
                let mut x = s;
                let mut weight = 0i32;
                for _ in 0..c {
                    let r = match x % 3 {
                        0 => Resolution::A,
                        1 => Resolution::B,
                        _ => Resolution::Vertex,
                    };
                    weight += match r {
                        Resolution::A => 1,
                        Resolution::B => -1,
                        Resolution::Vertex => 0,
                    };
                    state.push(r);
                    x /= 3;
                }
                let g = state_graph(&d, &state);
                let value = eval(g.vertex_count, &g.edges, &mut memo).mul_monomial(1, weight);
                (memo, acc + value)
            },
        )
        .map(|(_, p)| p)
        .reduce(LaurentPoly::zero, |a, b| a + b);
    Ok(sum)
}

/// `(-A)^(-m) R` with `m` the lowest exponent of `R`.
pub fn normalize(r: &LaurentPoly) -> Result<LaurentPoly> {
    let m = r.min_exponent().ok_or(Error::ZeroNormalization)?;
    let sign = if m % 2 == 0 { 1 } else { -1 };
    Ok(r.mul_monomial(sign, -m))
}

pub fn yamada_normalized(code: &VsgCode) -> Result<LaurentPoly> {
    normalize(&yamada(code)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::code::{Role, Sign};

    fn sigma() -> LaurentPoly {
        LaurentPoly::sigma()
    }

    /// Subset expansion: sum over edge subsets F of
    /// (-1)^{components(G-F)} * y^{nullity(G-F)}, y = -σ-1.
    fn subset_oracle(g: &StateGraph) -> LaurentPoly {
        let m = g.edges.len();
        let y = -(sigma() + LaurentPoly::one());
        let mut total = LaurentPoly::zero();
        for mask in 0u32..(1 << m) {
            let kept: Vec<(usize, usize)> = (0..m)
                .filter(|i| mask & (1 << i) == 0)
                .map(|i| g.edges[i])
                .collect();
            let comp = components(g.vertex_count, &kept);
            let mut roots = comp.clone();
            roots.sort_unstable();
            roots.dedup();
            let mu = roots.len() as i64;
            let beta = kept.len() as i64 - g.vertex_count as i64 + mu;
            let sign = if mu % 2 == 0 { 1 } else { -1 };
            total = total + y.pow(beta as u32).mul_monomial(sign, 0);
        }
        total
    }

    #[test]
    fn base_cases() {
        assert_eq!(graph_eval(&StateGraph::new(0, vec![])), LaurentPoly::one());
        assert_eq!(graph_eval(&StateGraph::new(1, vec![])), LaurentPoly::constant(-1));
        assert_eq!(graph_eval(&StateGraph::new(2, vec![])), LaurentPoly::one());
        assert_eq!(graph_eval(&StateGraph::bouquet(3)), sigma().pow(3));
        for n in 0..6 {
            assert_eq!(graph_eval(&StateGraph::bouquet(n)), -(-sigma()).pow(n as u32));
        }
    }

    #[test]
    fn theta_graph() {
        let theta = StateGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]);
        assert_eq!(graph_eval(&theta), sigma() - sigma().pow(2));
        assert_eq!(yamada(&catalog::theta()).unwrap(), sigma() - sigma().pow(2));
    }

    #[test]
    fn cut_edge_vanishes() {
        let dumbbell = StateGraph::new(2, vec![(0, 0), (0, 1), (1, 1)]);
        assert!(graph_eval(&dumbbell).is_zero());
    }

    #[test]
    fn deletion_contraction_matches_subset_expansion() {
        let graphs = [
            StateGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]),
            StateGraph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 0), (2, 2)]),
            StateGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 0)]),
            StateGraph::new(4, vec![(0, 1), (0, 1), (2, 3), (2, 3), (1, 2), (1, 2), (3, 0)]),
            StateGraph::new(3, vec![(0, 1), (1, 2)]),
        ];
        for g in &graphs {
            assert_eq!(graph_eval(g), subset_oracle(g), "{g:?}");
        }
    }

    #[test]
    fn kink_factor() {
        let unknot = yamada(&catalog::unknot()).unwrap();
        assert_eq!(unknot, sigma());
        for first in [Role::Over, Role::Under] {
            let pos = yamada(&catalog::kink(first, Sign::Pos)).unwrap();
            assert_eq!(pos, sigma().mul_monomial(1, 2));
            let neg = yamada(&catalog::kink(first, Sign::Neg)).unwrap();
            assert_eq!(neg, sigma().mul_monomial(1, -2));
        }
    }

    #[test]
    fn normalized_values() {
        let expected = LaurentPoly::from_terms([(2, -1), (1, -1), (0, -1)]);
        assert_eq!(yamada_normalized(&catalog::unknot()).unwrap(), expected);
        assert_eq!(
            yamada_normalized(&catalog::kink(Role::Over, Sign::Neg)).unwrap(),
            expected
        );
        assert_eq!(yamada_normalized(&catalog::empty()).unwrap(), LaurentPoly::one());
        assert!(matches!(normalize(&LaurentPoly::zero()), Err(Error::ZeroNormalization)));
    }

    #[test]
    fn budget_is_enforced() {
        let err = yamada_with(
            &catalog::classical_trefoil(),
            YamadaOptions { max_crossings: 2 },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Budget { needed: 3, .. }));
    }
}
