//! The decorated Gauss code of a virtual spatial graph: a directed multigraph,
//! per-edge crossing passages and per-vertex cyclic rotations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Which end of a directed edge a half-edge is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

impl End {
    /// `+1` for a half-edge leaving its vertex, `-1` for one entering it.
    pub fn outward(self) -> i32 {
        match self {
            End::Tail => 1,
            End::Head => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: String,
    pub end: End,
}

impl HalfEdge {
    pub fn new(edge: impl Into<String>, end: End) -> Self {
        Self { edge: edge.into(), end }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "o")]
    Over,
    #[serde(rename = "u")]
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Sign {
    pub fn from_int(s: i32) -> Sign {
        if s >= 0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        Sign::from_int(-self.value())
    }
}

/// One pass of an edge through a classical crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Passage {
    #[serde(rename = "x")]
    pub crossing: String,
    pub role: Role,
    pub sign: Sign,
}

impl Passage {
    pub fn new(crossing: impl Into<String>, role: Role, sign: Sign) -> Self {
        Self {
            crossing: crossing.into(),
            role,
            sign,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub tail: String,
    pub head: String,
}

impl Edge {
    pub fn new(id: impl Into<String>, tail: impl Into<String>, head: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            tail: tail.into(),
            head: head.into(),
        }
    }

    pub fn endpoint(&self, end: End) -> &str {
        match end {
            End::Tail => &self.tail,
            End::Head => &self.head,
        }
    }
}

/// A virtual spatial graph given by its decorated Gauss code.
///
/// Rotations are cyclic: equality compares them up to cyclic shift, and the
/// canonical serialization anchors each one at its lexicographically least
/// shift.
#[derive(Clone, Debug, Default)]
pub struct VsgCode {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub rotations: BTreeMap<String, Vec<HalfEdge>>,
    pub passages: BTreeMap<String, Vec<Passage>>,
}

pub(crate) fn cyclic_eq<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i]))
}

/// Rotates a cyclic sequence to its lexicographically least shift.
pub(crate) fn least_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    (0..seq.len().max(1))
        .map(|s| {
            let mut v = seq.to_vec();
            v.rotate_left(s.min(seq.len()));
            v
        })
        .min()
        .unwrap_or_default()
}

impl PartialEq for VsgCode {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.passages == other.passages
            && self
                .rotations
                .keys()
                .chain(other.rotations.keys())
                .all(|v| cyclic_eq(self.rotation(v), other.rotation(v)))
    }
}

impl Eq for VsgCode {}

/// Where a crossing's passage sits: edge index and position along it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub edge: usize,
    pub index: usize,
}

impl VsgCode {
    /// An empty code with the given vertices and edges, empty passages and
    /// rotations listing half-edges in edge order.
    pub fn from_graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Self {
        let mut code = VsgCode {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            ..Default::default()
        };
        for v in vertices {
            code.rotations.insert(v.to_string(), Vec::new());
        }
        for &(id, t, h) in edges {
            code.edges.push(Edge::new(id, t, h));
            code.passages.insert(id.to_string(), Vec::new());
            code.rotations
                .entry(t.to_string())
                .or_default()
                .push(HalfEdge::new(id, End::Tail));
            code.rotations
                .entry(h.to_string())
                .or_default()
                .push(HalfEdge::new(id, End::Head));
        }
        code
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Passages of edge `i` (by index into `edges`).
    pub fn passages_of(&self, i: usize) -> &[Passage] {
        self.passages
            .get(&self.edges[i].id)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn passages_of_mut(&mut self, i: usize) -> &mut Vec<Passage> {
        let id = self.edges[i].id.clone();
        self.passages.entry(id).or_default()
    }

    pub fn rotation(&self, v: &str) -> &[HalfEdge] {
        self.rotations.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges
            .iter()
            .map(|e| (e.tail == v) as usize + (e.head == v) as usize)
            .sum()
    }

    /// Crossing labels in first-occurrence order (edges in list order,
    /// passages tail to head).
    pub fn crossing_labels(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for i in 0..self.edges.len() {
            for p in self.passages_of(i) {
                if seen.insert(p.crossing.clone()) {
                    out.push(p.crossing.clone());
                }
            }
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_labels().len()
    }

    /// For every label, the positions of its over and under passages.
    pub fn crossing_positions(&self) -> HashMap<String, CrossingPos> {
        let mut out: HashMap<String, CrossingPos> = HashMap::new();
        for i in 0..self.edges.len() {
            for (k, p) in self.passages_of(i).iter().enumerate() {
                let entry = out.entry(p.crossing.clone()).or_insert(CrossingPos {
                    over: Pos { edge: usize::MAX, index: 0 },
                    under: Pos { edge: usize::MAX, index: 0 },
                    sign: p.sign,
                });
                let pos = Pos { edge: i, index: k };
                match p.role {
                    Role::Over => entry.over = pos,
                    Role::Under => entry.under = pos,
                }
            }
        }
        out
    }

    /// The smallest `c<n>` label not in use.
    pub fn fresh_label(&self) -> String {
        self.fresh_labels(1).pop().unwrap()
    }

    pub fn fresh_labels(&self, n: usize) -> Vec<String> {
        let used: BTreeSet<String> = self.crossing_labels().into_iter().collect();
        (1..)
            .map(|k| format!("c{k}"))
            .filter(|l| !used.contains(l))
            .take(n)
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = validate(self);
        if report.ok {
            Ok(())
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: WireCode =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if wire.version != 1 {
            return Err(Error::Parse(format!("unsupported version {}", wire.version)));
        }
        Ok(wire.into())
    }

    /// Canonical single-line JSON: sorted keys, no whitespace, rotations
    /// anchored at their least cyclic shift.
    pub fn to_canonical_json(&self) -> String {
        canonical_value(self).to_string()
    }

    pub fn canonical_serialize(&self) -> Vec<u8> {
        self.to_canonical_json().into_bytes()
    }

    pub fn canonical_form(&self) -> VsgCode {
        canonical_form(self)
    }

    /// Renames crossings through `rename`; labels it does not cover are kept.
    pub fn relabel(&self, rename: &HashMap<String, String>) -> VsgCode {
        let mut out = self.clone();
        for seq in out.passages.values_mut() {
            for p in seq {
                if let Some(n) = rename.get(&p.crossing) {
                    p.crossing = n.clone();
                }
            }
        }
        out
    }

    /// Removes every passage of the given crossings.
    pub fn without_crossings(&self, labels: &BTreeSet<String>) -> VsgCode {
        let mut out = self.clone();
        for seq in out.passages.values_mut() {
            seq.retain(|p| !labels.contains(&p.crossing));
        }
        out
    }

    /// Reverses the direction of edge `i`: swaps endpoints, reverses its
    /// passage order and flips the sign of every crossing it shares with
    /// another edge.
    pub fn reverse_edge(&self, i: usize) -> VsgCode {
        let mut out = self.clone();
        let id = out.edges[i].id.clone();
        {
            let e = &mut out.edges[i];
            std::mem::swap(&mut e.tail, &mut e.head);
        }
        let seq = out.passages.entry(id.clone()).or_default();
        seq.reverse();
        let mut on_edge: BTreeMap<String, usize> = BTreeMap::new();
        for p in seq.iter() {
            *on_edge.entry(p.crossing.clone()).or_default() += 1;
        }
        // a crossing of the edge with itself has both strands reversed
        for seq in out.passages.values_mut() {
            for p in seq.iter_mut() {
                if on_edge.get(&p.crossing) == Some(&1) {
                    p.sign = p.sign.flip();
                }
            }
        }
        for rot in out.rotations.values_mut() {
            for h in rot.iter_mut().filter(|h| h.edge == id) {
                h.end = match h.end {
                    End::Tail => End::Head,
                    End::Head => End::Tail,
                };
            }
        }
        out
    }

    /// Disjoint union; the second code's names get `suffix` appended.
    pub fn disjoint_union(&self, other: &VsgCode, suffix: &str) -> VsgCode {
        let mut out = self.clone();
        let s = |x: &str| format!("{x}{suffix}");
        out.vertices.extend(other.vertices.iter().map(|v| s(v)));
        out.edges.extend(
            other
                .edges
                .iter()
                .map(|e| Edge::new(s(&e.id), s(&e.tail), s(&e.head))),
        );
        for (v, rot) in &other.rotations {
            out.rotations.insert(
                s(v),
                rot.iter().map(|h| HalfEdge::new(s(&h.edge), h.end)).collect(),
            );
        }
        for (e, seq) in &other.passages {
            out.passages.insert(
                s(e),
                seq.iter()
                    .map(|p| Passage::new(s(&p.crossing), p.role, p.sign))
                    .collect(),
            );
        }
        out
    }
}

/// Over and under positions of one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingPos {
    pub over: Pos,
    pub under: Pos,
    pub sign: Sign,
}

impl fmt::Display for VsgCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_json())
    }
}

// ---------------------------------------------------------------------------
// wire format

#[derive(Deserialize)]
struct WireCode {
    version: u32,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    #[serde(default)]
    rotations: BTreeMap<String, Vec<(String, End)>>,
    #[serde(default)]
    passages: BTreeMap<String, Vec<WirePassage>>,
}

#[derive(Serialize, Deserialize)]
struct WirePassage {
    x: String,
    role: Role,
    sign: Sign,
}

impl From<WireCode> for VsgCode {
    fn from(w: WireCode) -> Self {
        VsgCode {
            vertices: w.vertices,
            edges: w.edges,
            rotations: w
                .rotations
                .into_iter()
                .map(|(v, r)| (v, r.into_iter().map(|(e, end)| HalfEdge { edge: e, end }).collect()))
                .collect(),
            passages: w
                .passages
                .into_iter()
                .map(|(e, seq)| {
                    (
                        e,
                        seq.into_iter()
                            .map(|p| Passage::new(p.x, p.role, p.sign))
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

fn canonical_value(code: &VsgCode) -> Value {
    let rotations: serde_json::Map<String, Value> = code
        .rotations
        .iter()
        .map(|(v, r)| {
            let pairs: Vec<(String, End)> =
                r.iter().map(|h| (h.edge.clone(), h.end)).collect();
            (v.clone(), json!(least_rotation(&pairs)))
        })
        .collect();
    let passages: serde_json::Map<String, Value> = code
        .passages
        .iter()
        .map(|(e, seq)| {
            let items: Vec<Value> = seq
                .iter()
                .map(|p| {
                    json!(WirePassage {
                        x: p.crossing.clone(),
                        role: p.role,
                        sign: p.sign
                    })
                })
                .collect();
            (e.clone(), Value::Array(items))
        })
        .collect();
    json!({
        "version": 1,
        "vertices": code.vertices,
        "edges": code.edges,
        "rotations": rotations,
        "passages": passages,
    })
}

// ---------------------------------------------------------------------------
// validation

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub location: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} ({})", v.rule, v.location))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate(code: &VsgCode) -> ValidationReport {
    let mut violations = Vec::new();
    let mut push = |rule: &str, location: String| {
        violations.push(Violation {
            rule: rule.to_string(),
            location,
        })
    };

    let mut vertex_set = BTreeSet::new();
    for v in &code.vertices {
        if !vertex_set.insert(v.as_str()) {
            push("duplicate-vertex", format!("vertex {v}"));
        }
    }
    let mut edge_set = BTreeSet::new();
    for e in &code.edges {
        if !edge_set.insert(e.id.as_str()) {
            push("duplicate-edge", format!("edge {}", e.id));
        }
        for end in [&e.tail, &e.head] {
            if !vertex_set.contains(end.as_str()) {
                push("unknown-vertex", format!("edge {} endpoint {end}", e.id));
            }
        }
        if !code.passages.contains_key(&e.id) {
            push("missing-passages", format!("edge {}", e.id));
        }
    }
    for e in code.passages.keys() {
        if !edge_set.contains(e.as_str()) {
            push("unknown-edge", format!("passages for {e}"));
        }
    }

    // rotations
    for v in code.rotations.keys() {
        if !vertex_set.contains(v.as_str()) {
            push("rotation-unknown-vertex", format!("rotation of {v}"));
        }
    }
    for v in &code.vertices {
        let mut expected: BTreeSet<HalfEdge> = BTreeSet::new();
        for e in &code.edges {
            if &e.tail == v {
                expected.insert(HalfEdge::new(e.id.clone(), End::Tail));
            }
            if &e.head == v {
                expected.insert(HalfEdge::new(e.id.clone(), End::Head));
            }
        }
        let Some(rot) = code.rotations.get(v) else {
            if !expected.is_empty() {
                push("rotation-missing", format!("vertex {v}"));
            }
            continue;
        };
        let mut seen = BTreeSet::new();
        for h in rot {
            if !expected.contains(h) {
                push(
                    "rotation-foreign-half-edge",
                    format!("vertex {v} lists {}:{:?}", h.edge, h.end),
                );
            } else if !seen.insert(h.clone()) {
                push(
                    "rotation-duplicate",
                    format!("vertex {v} lists {}:{:?} twice", h.edge, h.end),
                );
            }
        }
        for h in expected.difference(&seen) {
            push(
                "rotation-missing-half-edge",
                format!("vertex {v} omits {}:{:?}", h.edge, h.end),
            );
        }
    }

    // crossings
    let mut occurrences: BTreeMap<&str, Vec<&Passage>> = BTreeMap::new();
    for seq in code.passages.values() {
        for p in seq {
            occurrences.entry(p.crossing.as_str()).or_default().push(p);
        }
    }
    for (label, occ) in occurrences {
        match occ.len() {
            2 => {
                if occ[0].sign != occ[1].sign {
                    push("sign-mismatch", format!("crossing {label}"));
                }
                if occ[0].role == occ[1].role {
                    push("role-mismatch", format!("crossing {label}"));
                }
            }
            1 => push("unpaired-crossing", format!("crossing {label}")),
            n => push("overused-crossing", format!("crossing {label} occurs {n} times")),
        }
    }

    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

// ---------------------------------------------------------------------------
// derived views

/// Relabels crossings `c1, c2, ...` by first occurrence; nothing else changes.
pub fn canonical_form(code: &VsgCode) -> VsgCode {
    let rename: HashMap<String, String> = code
        .crossing_labels()
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, format!("c{}", i + 1)))
        .collect();
    code.relabel(&rename)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub sign: Sign,
}

/// Arrows grouped by (edge holding the under-passage, edge holding the
/// over-passage). Pairs with no arrows are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrowSets(pub BTreeMap<(String, String), Vec<Arrow>>);

impl ArrowSets {
    pub fn get(&self, from: &str, to: &str) -> &[Arrow] {
        self.0
            .get(&(from.to_string(), to.to_string()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn total(&self) -> usize {
        self.0.values().map(Vec::len).sum()
    }
}

pub fn arrow_sets(code: &VsgCode) -> ArrowSets {
    let mut sets: BTreeMap<(String, String), Vec<Arrow>> = BTreeMap::new();
    let positions = code.crossing_positions();
    for label in code.crossing_labels() {
        let cp = &positions[&label];
        let key = (
            code.edges[cp.under.edge].id.clone(),
            code.edges[cp.over.edge].id.clone(),
        );
        sets.entry(key).or_default().push(Arrow {
            label,
            sign: cp.sign,
        });
    }
    ArrowSets(sets)
}

/// A code with over/under and sign information dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowCode {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub rotations: BTreeMap<String, Vec<HalfEdge>>,
    pub passages: BTreeMap<String, Vec<String>>,
}

impl ShadowCode {
    /// Already a shadow.
    pub fn shadow(&self) -> ShadowCode {
        self.clone()
    }
}

pub fn shadow(code: &VsgCode) -> ShadowCode {
    ShadowCode {
        vertices: code.vertices.clone(),
        edges: code.edges.clone(),
        rotations: code.rotations.clone(),
        passages: code
            .passages
            .iter()
            .map(|(e, seq)| (e.clone(), seq.iter().map(|p| p.crossing.clone()).collect()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog as examples;

    #[test]
    fn theta_is_valid() {
        assert!(validate(&examples::theta()).ok);
    }

    #[test]
    fn unpaired_label_is_reported() {
        let mut code = examples::unknot();
        code.passages
            .get_mut("e1")
            .unwrap()
            .push(Passage::new("c1", Role::Over, Sign::Pos));
        let report = validate(&code);
        assert!(!report.ok);
        assert!(report.has_rule("unpaired-crossing"));
    }

    #[test]
    fn sign_mismatch_is_reported() {
        let mut code = examples::unknot();
        let seq = code.passages.get_mut("e1").unwrap();
        seq.push(Passage::new("c1", Role::Over, Sign::Pos));
        seq.push(Passage::new("c1", Role::Under, Sign::Neg));
        assert!(validate(&code).has_rule("sign-mismatch"));
    }

    #[test]
    fn rotation_problems_are_reported() {
        let mut code = examples::theta();
        code.rotations.get_mut("u").unwrap().pop();
        assert!(validate(&code).has_rule("rotation-missing-half-edge"));
        let mut code = examples::theta();
        code.rotations
            .get_mut("u")
            .unwrap()
            .push(HalfEdge::new("e1", End::Head));
        assert!(validate(&code).has_rule("rotation-foreign-half-edge"));
        let mut code = examples::theta();
        code.edges[0].head = "w".into();
        assert!(validate(&code).has_rule("unknown-vertex"));
    }

    #[test]
    fn serialization_is_key_sorted_and_single_line() {
        let text = examples::kink(Role::Over, Sign::Pos).to_canonical_json();
        assert!(!text.contains('\n') && !text.contains(' '));
        assert!(text.starts_with("{\"edges\":"));
        assert!(text.contains("{\"role\":\"o\",\"sign\":\"+\",\"x\":\"c1\"}"));
    }

    #[test]
    fn rotation_anchor_does_not_matter() {
        let a = examples::theta();
        let mut b = a.clone();
        b.rotations.get_mut("u").unwrap().rotate_left(1);
        assert_eq!(a, b);
        assert_eq!(a.canonical_serialize(), b.canonical_serialize());
        let mut c = a.clone();
        c.rotations.get_mut("u").unwrap().swap(0, 1);
        assert_ne!(a, c);
        assert_ne!(a.canonical_serialize(), c.canonical_serialize());
    }

    #[test]
    fn sign_change_changes_bytes() {
        let a = examples::kink(Role::Over, Sign::Pos);
        let b = examples::kink(Role::Over, Sign::Neg);
        assert_ne!(a.canonical_serialize(), b.canonical_serialize());
    }

    #[test]
    fn canonical_form_relabels_in_traversal_order() {
        let mut code = examples::virtual_trefoil();
        let rename: HashMap<String, String> =
            [("c1".to_string(), "x".to_string()), ("c2".to_string(), "q".to_string())]
                .into_iter()
                .collect();
        code = code.relabel(&rename);
        assert_eq!(code.crossing_labels(), vec!["x", "q"]);
        let canon = canonical_form(&code);
        assert_eq!(canon.crossing_labels(), vec!["c1", "c2"]);
        assert_eq!(canonical_form(&canon), canon);
    }

    #[test]
    fn arrow_direction_rule() {
        assert_eq!(arrow_sets(&examples::theta()).total(), 0);
        let kink = examples::kink(Role::Over, Sign::Pos);
        assert_eq!(
            arrow_sets(&kink).get("e1", "e1"),
            &[Arrow { label: "c1".into(), sign: Sign::Pos }]
        );
        let two = examples::two_loops_one_crossing(Sign::Neg);
        let sets = arrow_sets(&two);
        assert_eq!(sets.get("e1", "e2"), &[Arrow { label: "c1".into(), sign: Sign::Neg }]);
        assert!(sets.get("e2", "e1").is_empty());
    }

    #[test]
    fn shadow_strips_decorations() {
        let s = shadow(&examples::kink(Role::Over, Sign::Pos));
        assert_eq!(s.passages["e1"], vec!["c1", "c1"]);
        assert_eq!(s.shadow(), s);
        let t = shadow(&examples::theta());
        assert!(t.passages.values().all(Vec::is_empty));
    }

    #[test]
    fn json_round_trip() {
        let code = examples::classical_trefoil();
        let back = VsgCode::from_json(&code.to_canonical_json()).unwrap();
        assert_eq!(back, code);
    }
}
