#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod oracles;

use vsg_core::moves::{apply_move_with_inverse, enumerate_moves_with, EnumerateOptions, MoveId, MoveSet, MoveSite};
use vsg_core::quandle::{count_colorings, FiniteVQS};
use vsg_core::{End, Error, HalfEdge, Passage, Role, Sign, VsgCode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random valid code with 1..=max_vertices vertices, up to four edges and
/// up to `max_crossings` crossings. Rotations are random permutations.
pub fn random_code(rng: &mut impl Rng, max_vertices: usize, max_crossings: usize) -> VsgCode {
    let nv = rng.gen_range(1..=max_vertices);
    let ne = rng.gen_range(1..=4);
    let names: Vec<String> = (0..nv).map(|i| format!("v{}", i + 1)).collect();
    let edges: Vec<(String, String, String)> = (0..ne)
        .map(|i| {
            (
                format!("e{}", i + 1),
                names[rng.gen_range(0..nv)].clone(),
                names[rng.gen_range(0..nv)].clone(),
            )
        })
        .collect();
    let vrefs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let erefs: Vec<(&str, &str, &str)> = edges
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    let mut code = VsgCode::from_graph(&vrefs, &erefs);
    for rot in code.rotations.values_mut() {
        rot.shuffle(rng);
    }
    let nc = rng.gen_range(0..=max_crossings);
    for c in 0..nc {
        let label = format!("x{}", c + 1);
        let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        for role in [Role::Over, Role::Under] {
            let e = rng.gen_range(0..ne);
            let seq = code.passages_of_mut(e);
            let at = rng.gen_range(0..=seq.len());
            seq.insert(at, Passage::new(label.clone(), role, sign));
        }
    }
    assert!(code.validate().ok, "{}", code.validate());
    code
}

/// One random applicable site among the allowed ids, keeping the crossing
/// count at most `max_crossings`. Reductions and triangles are preferred so
/// sequences do not only grow.
pub fn random_site(
    rng: &mut impl Rng,
    code: &VsgCode,
    moveset: &MoveSet,
    ids: &[MoveId],
    max_crossings: usize,
) -> Option<MoveSite> {
    let opts = EnumerateOptions {
        max_crossings,
        insertions: true,
    };
    let sites: Vec<MoveSite> = enumerate_moves_with(code, moveset, opts)
        .into_iter()
        .filter(|s| ids.contains(&s.id()))
        .collect();
    let preferred: Vec<&MoveSite> = sites
        .iter()
        .filter(|s| s.is_reduction() || s.id() == MoveId::III)
        .collect();
    if !preferred.is_empty() && rng.gen_bool(0.4) {
        return Some((*preferred.choose(rng).unwrap()).clone());
    }
    sites.choose(rng).cloned()
}

/// Applies up to `len` random moves, returning every intermediate code and
/// the sites used.
pub fn random_walk(
    rng: &mut impl Rng,
    start: &VsgCode,
    moveset: &MoveSet,
    ids: &[MoveId],
    len: usize,
    max_crossings: usize,
) -> (Vec<VsgCode>, Vec<MoveSite>) {
    let mut codes = vec![start.clone()];
    let mut sites = Vec::new();
    for _ in 0..len {
        let cur = codes.last().unwrap();
        let Some(site) = random_site(rng, cur, moveset, ids, max_crossings) else {
            break;
        };
        let (next, _) = apply_move_with_inverse(cur, &site, moveset)
            .unwrap_or_else(|e| panic!("enumerated site failed: {e} {site:?}"));
        assert!(next.validate().ok, "{site:?} produced {}", next.validate());
        codes.push(next);
        sites.push(site);
    }
    (codes, sites)
}

/// Random crossing-label bijection onto fresh names.
pub fn shuffle_labels(rng: &mut impl Rng, code: &VsgCode) -> VsgCode {
    let mut labels = code.crossing_labels();
    let mut targets: Vec<String> = (0..labels.len()).map(|i| format!("k{i}")).collect();
    targets.shuffle(rng);
    labels.sort();
    let map = labels.into_iter().zip(targets).collect();
    code.relabel(&map)
}

pub fn half(edge: &str, end: End) -> HalfEdge {
    HalfEdge::new(edge, end)
}

pub const RIGID: [MoveId; 5] = [MoveId::I, MoveId::II, MoveId::III, MoveId::IV, MoveId::V];
pub const PLIABLE: [MoveId; 6] = [MoveId::I, MoveId::II, MoveId::III, MoveId::IV, MoveId::V, MoveId::VI];

/// Inserts a realizable triangle (three adjacent passage pairs) at random
/// places and returns the code with its (III) site.
pub fn plant_triangle(rng: &mut impl Rng, code: &VsgCode) -> (VsgCode, MoveSite) {
    use vsg_core::moves::PairAt;
    let pm = |rng: &mut dyn rand::RngCore| if rng.gen_bool(0.5) { 1 } else { -1 };
    let (tau, mu, beta, sc) = (pm(rng), pm(rng), pm(rng), pm(rng));
    let sa = Sign::from_int(tau * beta * sc);
    let sb = Sign::from_int(tau * mu * sc);
    let sc = Sign::from_int(sc);
    let fresh = code.fresh_labels(3);
    let (a, b, c) = (&fresh[0], &fresh[1], &fresh[2]);
    let ordered = |first: (&String, Role, Sign), second: (&String, Role, Sign), s: i32| {
        let (x, y) = if s > 0 { (first, second) } else { (second, first) };
        vec![Passage::new(x.0.clone(), x.1, x.2), Passage::new(y.0.clone(), y.1, y.2)]
    };
    let blocks = [
        ordered((a, Role::Over, sa), (b, Role::Over, sb), tau),
        ordered((a, Role::Under, sa), (c, Role::Over, sc), mu),
        ordered((b, Role::Under, sb), (c, Role::Under, sc), beta),
    ];
    let ne = code.edges.len();
    let mut spots: Vec<(usize, usize, usize)> = (0..3)
        .map(|k| {
            let e = rng.gen_range(0..ne);
            (e, rng.gen_range(0..=code.passages_of(e).len()), k)
        })
        .collect();
    // insert from the back so earlier gaps stay put
    spots.sort_by(|x, y| (y.0, y.1, y.2).cmp(&(x.0, x.1, x.2)));
    let mut out = code.clone();
    for &(e, g, k) in &spots {
        let seq = out.passages_of_mut(e);
        seq.splice(g..g, blocks[k].iter().cloned());
    }
    let find = |first: &Passage| {
        for (e, edge) in out.edges.iter().enumerate() {
            let seq = out.passages_of(e);
            for i in 0..seq.len().saturating_sub(1) {
                if seq[i] == *first {
                    return PairAt { edge: edge.id.clone(), index: i };
                }
            }
        }
        unreachable!()
    };
    let site = MoveSite::III {
        top: find(&blocks[0][0]),
        middle: find(&blocks[1][0]),
        bottom: find(&blocks[2][0]),
    };
    assert!(out.validate().ok);
    (out, site)
}

/// One-loop code with random passages.
pub fn random_knot(rng: &mut impl Rng, crossings: usize) -> VsgCode {
    let mut code = VsgCode::from_graph(&["v"], &[("e1", "v", "v")]);
    for c in 0..crossings {
        let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        for role in [Role::Over, Role::Under] {
            let seq = code.passages_of_mut(0);
            let at = rng.gen_range(0..=seq.len());
            seq.insert(at, Passage::new(format!("x{c}"), role, sign));
        }
    }
    code
}

/// Structures whose preconditions hold on `code`.
pub fn applicable(code: &VsgCode) -> Vec<FiniteVQS> {
    FiniteVQS::shipped()
        .into_iter()
        .filter(|s| !matches!(count_colorings(code, s), Err(Error::Mismatch(_))))
        .collect()
}
