//! Colorings of realized diagrams by finite virtual quandle structures.
//!
//! A structure is a finite set with an operation `∘`, an involution `bar`
//! and an automorphism `f`. Arcs of a realized diagram are broken at
//! under-passages, virtual crossings and vertices. At a classical crossing
//! the outgoing under arc is `in ∘ over` (sign +) or `in ∘ bar(over)`
//! (sign −). At a virtual crossing one strand applies `f` and the other
//! `f⁻¹`: the strand that the other one crosses from right to left applies
//! `f`. At a vertex every entering arc has one common value `a` and every
//! leaving arc carries `bar(a)`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{ValidationReport, Violation, VsgCode};
use crate::diagram::CrossingEnd;
use crate::error::{Error, Result};
use crate::realize::{realize, ArcEnd, GadgetKind, PlanarDiagram};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteVQS {
    #[serde(default)]
    pub name: String,
    pub elements: Vec<String>,
    /// `op[a][b]` is `a ∘ b`.
    pub op: Vec<Vec<usize>>,
    pub bar: Vec<usize>,
    pub f: Vec<usize>,
    pub d: u32,
}

impl FiniteVQS {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: FiniteVQS = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let report = validate_vqs(&s, s.d);
        if !report.ok {
            return Err(Error::Structure(format!("{}: {report}", s.name)));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structures serialize")
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    fn from_fns(name: &str, n: usize, d: u32, op: impl Fn(usize, usize) -> usize, bar: impl Fn(usize) -> usize, f: impl Fn(usize) -> usize) -> Self {
        FiniteVQS {
            name: name.to_string(),
            elements: (0..n).map(|k| k.to_string()).collect(),
            op: (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect(),
            bar: (0..n).map(&bar).collect(),
            f: (0..n).map(&f).collect(),
            d,
        }
    }

    /// One element; colors every diagram exactly once.
    pub fn trivial() -> Self {
        Self::from_fns("trivial", 1, 1, |_, _| 0, |_| 0, |_| 0)
    }

    /// Two elements, `a ∘ b = a`, bar swapping them.
    pub fn swap_bar() -> Self {
        Self::from_fns("swap-bar", 2, 1, |a, _| a, |a| 1 - a, |a| a)
    }

    /// Dihedral quandle `a ∘ b = 2b − a (mod n)`, with bar the identity and
    /// `f` the identity or negation. Valid when the valence gcd is even.
    pub fn dihedral(n: usize, negate: bool) -> Self {
        let name = if negate { format!("dihedral{n}-neg") } else { format!("dihedral{n}") };
        Self::from_fns(
            &name,
            n,
            2,
            |a, b| (2 * b + 2 * n - a) % n,
            |a| a,
            |a| if negate { (n - a) % n } else { a },
        )
    }

    /// Structures that ship with the library.
    pub fn shipped() -> Vec<Self> {
        vec![
            Self::trivial(),
            Self::swap_bar(),
            Self::dihedral(3, false),
            Self::dihedral(3, true),
            Self::dihedral(5, false),
        ]
    }

    pub fn builtin(name: &str) -> Option<Self> {
        Self::shipped().into_iter().find(|s| s.name == name)
    }

    fn f_pow(&self, x: usize, k: i64) -> usize {
        let mut x = x;
        if k >= 0 {
            for _ in 0..k {
                x = self.f[x];
            }
        } else {
            for _ in 0..-k {
                x = self.f.iter().position(|&y| y == x).expect("f is a bijection");
            }
        }
        x
    }
}

/// Checks every axiom over all element tuples, reporting the first failing
/// instance of each.
pub fn validate_vqs(s: &FiniteVQS, d: u32) -> ValidationReport {
    let n = s.elements.len();
    let mut violations = Vec::new();
    let mut fail = |rule: &str, location: String| {
        if !violations.iter().any(|v: &Violation| v.rule == rule) {
            violations.push(Violation {
                rule: rule.to_string(),
                location,
            });
        }
    };
    let total = n > 0
        && s.op.len() == n
        && s.op.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n))
        && s.bar.len() == n
        && s.bar.iter().all(|&x| x < n)
        && s.f.len() == n
        && s.f.iter().all(|&x| x < n);
    if !total {
        fail("tables", "tables must be total on the element set".into());
        return ValidationReport { ok: false, violations };
    }
    let mut seen = vec![false; n];
    for &x in &s.f {
        seen[x] = true;
    }
    if seen.contains(&false) {
        fail("f-invertible", "f is not a bijection".into());
        return ValidationReport { ok: false, violations };
    }
    let op = |a: usize, b: usize| s.op[a][b];
    let bar = |a: usize| s.bar[a];
    let f = |a: usize| s.f[a];
    let finv = |a: usize| s.f_pow(a, -1);
    for a in 0..n {
        if op(a, a) != a {
            fail("idempotent", format!("a={a}"));
        }
        if bar(bar(a)) != a {
            fail("involution", format!("a={a}"));
        }
        if op(bar(a), a) != bar(a) {
            fail("bar-absorb", format!("a={a}"));
        }
        if bar(f(a)) != f(bar(a)) || bar(finv(a)) != finv(bar(a)) {
            fail("f-bar", format!("a={a}"));
        }
        if s.f_pow(a, d as i64) != a {
            fail("f-order", format!("b={a}, d={d}"));
        }
        for b in 0..n {
            if op(op(a, b), bar(b)) != a || op(op(a, bar(b)), b) != a {
                fail("invertible", format!("a={a}, b={b}"));
            }
            let (mut x, mut y) = (b, b);
            for _ in 0..d {
                x = op(x, a);
                y = op(y, bar(a));
            }
            if x != b || y != b {
                fail("vertex-power", format!("a={a}, b={b}, d={d}"));
            }
            if bar(op(a, b)) != op(bar(a), b) {
                fail("bar-op", format!("a={a}, b={b}"));
            }
            if f(op(a, b)) != op(f(a), f(b)) {
                fail("f-hom", format!("a={a}, b={b}"));
            }
            for c in 0..n {
                if op(op(a, b), c) != op(op(a, c), op(b, c)) {
                    fail("distributive", format!("a={a}, b={b}, c={c}"));
                }
            }
        }
    }
    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Gcd of the vertex degrees, loops counting twice. Zero when no vertex
/// has an incident edge.
pub fn gcd_valence(code: &VsgCode) -> Result<u32> {
    if code.vertices.is_empty() {
        return Err(Error::Structure("code has no vertices".into()));
    }
    Ok(code.vertices.iter().fold(0, |g, v| gcd(g, code.rotation(v).len() as u32)))
}

/// Largest number of search nodes a count may visit by default.
pub const DEFAULT_COLORING_BUDGET: u64 = 20_000_000;

pub fn count_colorings(code: &VsgCode, s: &FiniteVQS) -> Result<u64> {
    count_colorings_on(&realize(code)?, s)
}

/// One defining rule: the value of `target` from the values of `inputs`.
struct Rule {
    target: usize,
    inputs: Vec<usize>,
    kind: RuleKind,
}

enum RuleKind {
    /// bar of a vertex value
    Leave,
    /// f-power transport of an arc's start to its end
    Carry(i64),
    /// under strand: (under start, power), (over start, power), sign
    Cross(i64, i64, bool),
}

pub fn count_colorings_on(diagram: &PlanarDiagram, s: &FiniteVQS) -> Result<u64> {
    count_colorings_with(diagram, s, DEFAULT_COLORING_BUDGET)
}

pub fn count_colorings_with(diagram: &PlanarDiagram, s: &FiniteVQS, budget: u64) -> Result<u64> {
    let structure = |m: String| Error::Structure(m);
    let arcs = &diagram.arcs;
    let gadget_index: HashMap<&str, usize> = diagram.gadgets.iter().enumerate().map(|(i, g)| (g.id.as_str(), i)).collect();
    // net f-power along each arc from the virtual crossings it meets
    let mut power = vec![0i64; arcs.len()];
    for g in &diagram.gadgets {
        if let GadgetKind::VirtualCrossing { ends } = &g.kind {
            if ends.len() != 4 || ends.iter().any(|e| e.arc >= arcs.len()) {
                return Err(structure(format!("virtual crossing {} is malformed", g.id)));
            }
            let (i, j) = (ends[0].arc, ends[1].arc);
            let i_forward = ends[1].end == ArcEnd::Out;
            power[i] += if i_forward { 1 } else { -1 };
            power[j] += if i_forward { -1 } else { 1 };
        }
    }
    let vertices: Vec<usize> = diagram
        .gadgets
        .iter()
        .enumerate()
        .filter(|(_, g)| matches!(g.kind, GadgetKind::Vertex { .. }))
        .map(|(i, _)| i)
        .collect();
    let degrees: Vec<u32> = vertices
        .iter()
        .map(|&i| match &diagram.gadgets[i].kind {
            GadgetKind::Vertex { rotation, .. } => rotation.len() as u32,
            _ => unreachable!(),
        })
        .collect();
    let d = match degrees.iter().fold(0, |g, &x| gcd(g, x)) {
        0 => s.d,
        d => d,
    };
    let report = validate_vqs(s, d);
    if !report.ok {
        return Err(Error::Mismatch(format!("{} is not a structure for valence gcd {d}: {report}", s.name)));
    }
    let n_arcs = arcs.len();
    let var_of_vertex: HashMap<usize, usize> = vertices.iter().enumerate().map(|(k, &g)| (g, n_arcs + k)).collect();
    let mut net = vec![0i64; vertices.len()];
    // arcs at each crossing gadget by end
    let mut at_crossing: HashMap<usize, [Option<usize>; 4]> = HashMap::new();
    let mut rules = Vec::new();
    let end_name = |gi: usize, slot: usize| -> Result<(bool, Option<CrossingEnd>)> {
        match &diagram.gadgets[gi].kind {
            GadgetKind::Vertex { rotation, .. } if slot < rotation.len() => Ok((true, None)),
            GadgetKind::ClassicalCrossing { ends, .. } => {
                let e = ends
                    .get(slot)
                    .and_then(|n| CrossingEnd::from_name(n))
                    .ok_or_else(|| structure(format!("bad slot {slot} at {}", diagram.gadgets[gi].id)))?;
                Ok((false, Some(e)))
            }
            _ => Err(structure(format!("bad port at {}", diagram.gadgets[gi].id))),
        }
    };
    for (k, a) in arcs.iter().enumerate() {
        for (port, leaving) in [(&a.from, true), (&a.to, false)] {
            let gi = *gadget_index
                .get(port.gadget.as_str())
                .ok_or_else(|| structure(format!("dangling port {}", port.gadget)))?;
            match end_name(gi, port.slot)? {
                (true, _) => {
                    let v = var_of_vertex[&gi];
                    let slot = v - n_arcs;
                    if leaving {
                        net[slot] += 1;
                        rules.push(Rule {
                            target: k,
                            inputs: vec![v],
                            kind: RuleKind::Leave,
                        });
                    } else {
                        net[slot] -= 1;
                        rules.push(Rule {
                            target: v,
                            inputs: vec![k],
                            kind: RuleKind::Carry(power[k]),
                        });
                    }
                }
                (false, Some(end)) => {
                    if end.is_incoming() == leaving {
                        return Err(structure(format!("arc {k} uses {} the wrong way", end.name())));
                    }
                    let slots = at_crossing.entry(gi).or_insert([None; 4]);
                    if slots[end.index()].replace(k).is_some() {
                        return Err(structure(format!("two arcs at one end of {}", diagram.gadgets[gi].id)));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    for (gi, slots) in &at_crossing {
        let [Some(oi), Some(oo), Some(ui), Some(uo)] = [
            slots[CrossingEnd::OverIn.index()],
            slots[CrossingEnd::OverOut.index()],
            slots[CrossingEnd::UnderIn.index()],
            slots[CrossingEnd::UnderOut.index()],
        ] else {
            return Err(structure(format!("unpaired strand at {}", diagram.gadgets[*gi].id)));
        };
        let negative = match &diagram.gadgets[*gi].kind {
            GadgetKind::ClassicalCrossing { sign, .. } => sign.value() < 0,
            _ => unreachable!(),
        };
        rules.push(Rule {
            target: oo,
            inputs: vec![oi],
            kind: RuleKind::Carry(power[oi]),
        });
        rules.push(Rule {
            target: uo,
            inputs: vec![ui, oi],
            kind: RuleKind::Cross(power[ui], power[oi], negative),
        });
    }
    for (k, &m) in net.iter().enumerate() {
        if (0..s.size()).any(|x| s.f_pow(x, m) != x) {
            return Err(Error::Mismatch(format!(
                "f^{m} is not the identity, as vertex {} requires",
                diagram.gadgets[vertices[k]].id
            )));
        }
    }
    let nvars = n_arcs + vertices.len();
    // vertex values first: they fix every arc leaving a vertex
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); nvars];
    for (r, rule) in rules.iter().enumerate() {
        touching[rule.target].push(r);
        for &i in &rule.inputs {
            touching[i].push(r);
        }
    }
    // isolated vertices carry no arc, so they add no choice
    let order: Vec<usize> = (n_arcs..nvars).chain(0..n_arcs).filter(|&v| !touching[v].is_empty()).collect();
    let solver = Solver {
        s,
        rules: &rules,
        touching: &touching,
        order: &order,
        nodes: AtomicU64::new(0),
        budget,
    };
    let start = vec![None; nvars];
    let Some(first) = order.first().copied() else {
        return Ok(1);
    };
    let counts: Vec<Option<u64>> = (0..s.size())
        .into_par_iter()
        .map(|x| {
            let mut values = start.clone();
            values[first] = Some(x);
            solver.search(values, vec![first])
        })
        .collect();
    let mut total = 0u64;
    for c in counts {
        total += c.ok_or(Error::Budget {
            what: "coloring search nodes",
            needed: budget + 1,
            limit: budget,
        })?;
    }
    Ok(total)
}

struct Solver<'a> {
    s: &'a FiniteVQS,
    rules: &'a [Rule],
    touching: &'a [Vec<usize>],
    order: &'a [usize],
    nodes: AtomicU64,
    budget: u64,
}

impl Solver<'_> {
    fn eval(&self, rule: &Rule, values: &[Option<usize>]) -> Option<usize> {
        let v = |i: usize| values[rule.inputs[i]];
        Some(match rule.kind {
            RuleKind::Leave => self.s.bar[v(0)?],
            RuleKind::Carry(k) => self.s.f_pow(v(0)?, k),
            RuleKind::Cross(ku, ko, negative) => {
                let under = self.s.f_pow(v(0)?, ku);
                let mut over = self.s.f_pow(v(1)?, ko);
                if negative {
                    over = self.s.bar[over];
                }
                self.s.op[under][over]
            }
        })
    }

    /// Assigns forced values; false on a contradiction.
    fn propagate(&self, values: &mut [Option<usize>], mut queue: Vec<usize>) -> bool {
        while let Some(var) = queue.pop() {
            for &r in &self.touching[var] {
                let rule = &self.rules[r];
                let Some(x) = self.eval(rule, values) else { continue };
                match values[rule.target] {
                    Some(y) if y != x => return false,
                    Some(_) => {}
                    None => {
                        values[rule.target] = Some(x);
                        queue.push(rule.target);
                    }
                }
            }
        }
        true
    }

    /// Number of completions, or None when the budget runs out.
    fn search(&self, mut values: Vec<Option<usize>>, changed: Vec<usize>) -> Option<u64> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return None;
        }
        if !self.propagate(&mut values, changed) {
            return Some(0);
        }
        let Some(&var) = self.order.iter().find(|&&v| values[v].is_none()) else {
            return Some(1);
        };
        let mut total = 0;
        for x in 0..self.s.size() {
            let mut next = values.clone();
            next[var] = Some(x);
            total += self.search(next, vec![var])?;
        }
        Some(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn shipped_structures_satisfy_the_axioms() {
        for s in FiniteVQS::shipped() {
            let r = validate_vqs(&s, s.d);
            assert!(r.ok, "{}: {r}", s.name);
            assert_eq!(FiniteVQS::from_json(&s.to_json()).unwrap(), s);
        }
    }

    #[test]
    fn f_of_order_three_fails_for_d_two() {
        let mut s = FiniteVQS::dihedral(3, false);
        s.f = vec![1, 2, 0];
        let r = validate_vqs(&s, 2);
        assert!(r.has_rule("f-order"), "{r}");
    }

    #[test]
    fn valence_gcd() {
        assert_eq!(gcd_valence(&catalog::theta()).unwrap(), 3);
        assert_eq!(gcd_valence(&catalog::unknot()).unwrap(), 2);
        let code = VsgCode::from_graph(&["a", "b"], &[("e1", "a", "a"), ("e2", "a", "b"), ("e3", "b", "b")]);
        assert_eq!(gcd_valence(&code).unwrap(), 3);
        let code = VsgCode::from_graph(&["a", "b"], &[("e1", "a", "a"), ("e2", "a", "a"), ("e3", "b", "b"), ("e4", "b", "b"), ("e5", "b", "b")]);
        assert_eq!(gcd_valence(&code).unwrap(), 2);
        assert!(gcd_valence(&catalog::empty()).is_err());
    }

    #[test]
    fn unknot_has_three_dihedral_colorings() {
        assert_eq!(count_colorings(&catalog::unknot(), &FiniteVQS::dihedral(3, false)).unwrap(), 3);
        assert_eq!(count_colorings(&catalog::classical_trefoil(), &FiniteVQS::trivial()).unwrap(), 1);
    }

    #[test]
    fn theta_rejects_dihedral() {
        let r = count_colorings(&catalog::theta(), &FiniteVQS::dihedral(3, false));
        assert!(matches!(r, Err(Error::Mismatch(_))));
    }
}
