//! Small named codes used throughout the documentation, tests and CLI.

use crate::code::{Passage, Role, Sign, VsgCode};

fn with_passages(mut code: VsgCode, edge: &str, seq: &[(&str, Role, Sign)]) -> VsgCode {
    code.passages.insert(
        edge.to_string(),
        seq.iter().map(|&(l, r, s)| Passage::new(l, r, s)).collect(),
    );
    code
}

/// The code with no vertices and no edges.
pub fn empty() -> VsgCode {
    VsgCode::default()
}

/// Crossing-free unknot: one vertex `v` with one loop `e1`.
pub fn unknot() -> VsgCode {
    VsgCode::from_graph(&["v"], &[("e1", "v", "v")])
}

/// Planar θ-graph: vertices `u`, `v`, edges `e1, e2, e3` from `u` to `v`.
/// Seen from `v` the edges come in the opposite cyclic order.
pub fn theta() -> VsgCode {
    let mut code = VsgCode::from_graph(
        &["u", "v"],
        &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")],
    );
    code.rotations.get_mut("v").unwrap().reverse();
    code
}

/// The unknot with a single kink `c1`; `first` is the role met first.
pub fn kink(first: Role, sign: Sign) -> VsgCode {
    with_passages(
        unknot(),
        "e1",
        &[("c1", first, sign), ("c1", first.flip(), sign)],
    )
}

/// Bouquet of `n` crossing-free loops at one vertex.
pub fn bouquet(n: usize) -> VsgCode {
    let ids: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let edges: Vec<(&str, &str, &str)> = ids.iter().map(|e| (e.as_str(), "v", "v")).collect();
    VsgCode::from_graph(&["v"], &edges)
}

/// Virtual trefoil: `c1:o+ c2:o+ c1:u+ c2:u+` on a single loop.
pub fn virtual_trefoil() -> VsgCode {
    use Role::*;
    with_passages(
        unknot(),
        "e1",
        &[
            ("c1", Over, Sign::Pos),
            ("c2", Over, Sign::Pos),
            ("c1", Under, Sign::Pos),
            ("c2", Under, Sign::Pos),
        ],
    )
}

/// Classical trefoil: `c1:o+ c2:u+ c3:o+ c1:u+ c2:o+ c3:u+` on a single loop.
pub fn classical_trefoil() -> VsgCode {
    use Role::*;
    with_passages(
        unknot(),
        "e1",
        &[
            ("c1", Over, Sign::Pos),
            ("c2", Under, Sign::Pos),
            ("c3", Over, Sign::Pos),
            ("c1", Under, Sign::Pos),
            ("c2", Over, Sign::Pos),
            ("c3", Under, Sign::Pos),
        ],
    )
}

/// Two vertex-loops `e1` at `u`, `e2` at `v`, sharing one crossing `c1`
/// (under on `e1`, over on `e2`).
pub fn two_loops_one_crossing(sign: Sign) -> VsgCode {
    let code = VsgCode::from_graph(&["u", "v"], &[("e1", "u", "u"), ("e2", "v", "v")]);
    let code = with_passages(code, "e1", &[("c1", Role::Under, sign)]);
    with_passages(code, "e2", &[("c1", Role::Over, sign)])
}

/// Classical Hopf link drawn as two vertex-loops with two positive crossings.
pub fn hopf() -> VsgCode {
    let code = VsgCode::from_graph(&["u", "v"], &[("e1", "u", "u"), ("e2", "v", "v")]);
    let code = with_passages(
        code,
        "e1",
        &[("c1", Role::Over, Sign::Pos), ("c2", Role::Under, Sign::Pos)],
    );
    with_passages(
        code,
        "e2",
        &[("c1", Role::Under, Sign::Pos), ("c2", Role::Over, Sign::Pos)],
    )
}
