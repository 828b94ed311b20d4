//! The collection T(G): at every vertex join two legs into a strand and cut
//! the others loose, trace the strands, and keep the closed ones as a
//! virtual link. Linking numbers and bracket polynomials of those links are
//! invariants of the graph diagram.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{HalfEdge, Passage, Role, Sign, VsgCode};
use crate::diagram::{smoothing, CrossingEnd};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Joins two legs of a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Replacement {
    pub vertex: String,
    pub pair: [HalfEdge; 2],
}

/// One replacement for every vertex of degree at least two, in vertex order.
pub type Choice = Vec<Replacement>;

/// Largest number of replacement choices enumerated by default.
pub const DEFAULT_CHOICE_BUDGET: u64 = 1_000_000;

/// Largest crossing count of a bracket state sum by default.
pub const DEFAULT_BRACKET_CROSSINGS: usize = 22;

fn vertex_replacements(code: &VsgCode, v: &str) -> Vec<Replacement> {
    let r = code.rotation(v);
    let mut out = Vec::new();
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            out.push(Replacement {
                vertex: v.to_string(),
                pair: [r[i].clone(), r[j].clone()],
            });
        }
    }
    out
}

/// Number of replacement choices: the product of d(d−1)/2 over vertices of
/// degree at least two.
pub fn choice_count(code: &VsgCode) -> u64 {
    code.vertices
        .iter()
        .map(|v| code.rotation(v).len() as u64)
        .filter(|&d| d >= 2)
        .fold(1u64, |acc, d| acc.saturating_mul(d * (d - 1) / 2))
}

pub fn enumerate_replacements(code: &VsgCode) -> Result<Vec<Choice>> {
    enumerate_replacements_with(code, DEFAULT_CHOICE_BUDGET)
}

pub fn enumerate_replacements_with(code: &VsgCode, budget: u64) -> Result<Vec<Choice>> {
    code.ensure_valid()?;
    let total = choice_count(code);
    if total > budget {
        return Err(Error::Budget {
            what: "replacement choices",
            needed: total,
            limit: budget,
        });
    }
    let per_vertex: Vec<Vec<Replacement>> = code
        .vertices
        .iter()
        .filter(|v| code.rotation(v).len() >= 2)
        .map(|v| vertex_replacements(code, v))
        .collect();
    let mut choices: Vec<Choice> = vec![Vec::new()];
    for options in &per_vertex {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                options.iter().map(move |r| {
                    let mut c = c.clone();
                    c.push(r.clone());
                    c
                })
            })
            .collect();
    }
    Ok(choices)
}

/// A link given by the cyclic passage sequences of its components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VirtualLink {
    pub components: Vec<Vec<Passage>>,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    anchor: usize,
    passages: Vec<Passage>,
}

#[derive(Serialize, Deserialize)]
struct LinkJson {
    components: Vec<ComponentJson>,
}

impl Serialize for VirtualLink {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LinkJson {
            components: self
                .components
                .iter()
                .map(|c| ComponentJson {
                    anchor: 0,
                    passages: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VirtualLink {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = LinkJson::deserialize(d)?;
        let mut components = Vec::new();
        for c in json.components {
            let mut p = c.passages;
            if c.anchor > p.len() || (c.anchor > 0 && c.anchor == p.len()) {
                return Err(serde::de::Error::custom(format!("anchor {} out of range", c.anchor)));
            }
            p.rotate_left(c.anchor);
            components.push(p);
        }
        Ok(VirtualLink { components })
    }
}

impl VirtualLink {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("links serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let link: VirtualLink = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        link.check()?;
        Ok(link)
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn writhe(&self) -> i32 {
        self.components
            .iter()
            .flatten()
            .filter(|p| p.role == Role::Over)
            .map(|p| p.sign.value())
            .sum()
    }

    /// Every label occurs twice, with one sign and opposite roles.
    pub fn check(&self) -> Result<()> {
        let mut seen: HashMap<&str, Vec<&Passage>> = HashMap::new();
        for p in self.components.iter().flatten() {
            seen.entry(p.crossing.as_str()).or_default().push(p);
        }
        for (label, ps) in seen {
            let ok = ps.len() == 2 && ps[0].sign == ps[1].sign && ps[0].role != ps[1].role;
            if !ok {
                return Err(Error::Structure(format!("crossing {label} is not one over and one under passage of one sign")));
            }
        }
        Ok(())
    }

    /// Component and position of the over and under passage of each label.
    fn positions(&self) -> BTreeMap<&str, [(usize, usize); 2]> {
        let mut out: BTreeMap<&str, [(usize, usize); 2]> = BTreeMap::new();
        for (k, c) in self.components.iter().enumerate() {
            for (i, p) in c.iter().enumerate() {
                let slot = if p.role == Role::Over { 0 } else { 1 };
                out.entry(p.crossing.as_str()).or_insert([(0, 0); 2])[slot] = (k, i);
            }
        }
        out
    }

    /// The union of two links, the second one's labels renamed apart.
    pub fn disjoint_union(&self, other: &VirtualLink) -> VirtualLink {
        let mut out = self.clone();
        let taken: std::collections::HashSet<&str> =
            self.components.iter().flatten().map(|p| p.crossing.as_str()).collect();
        let mut rename: HashMap<&str, String> = HashMap::new();
        let mut next = 0;
        for c in &other.components {
            let mut comp = Vec::new();
            for p in c {
                let label = rename
                    .entry(p.crossing.as_str())
                    .or_insert_with(|| loop {
                        next += 1;
                        let l = format!("y{next}");
                        if !taken.contains(l.as_str()) {
                            break l;
                        }
                    })
                    .clone();
                comp.push(Passage::new(label, p.role, p.sign));
            }
            out.components.push(comp);
        }
        out
    }

    /// Same link with labels 1, 2, ... by first appearance and components
    /// and rotations chosen to give the least such sequence.
    pub fn canonical(&self) -> VirtualLink {
        type Token = (usize, Role, Sign);
        fn encode(c: &[Passage], shift: usize, labels: &mut HashMap<String, usize>) -> Vec<Token> {
            let n = c.len();
            (0..n)
                .map(|i| {
                    let p = &c[(i + shift) % n];
                    let next = labels.len() + 1;
                    let l = *labels.entry(p.crossing.clone()).or_insert(next);
                    (l, p.role, p.sign)
                })
                .collect()
        }
        fn best(
            comps: &[Vec<Passage>],
            left: &[usize],
            labels: &HashMap<String, usize>,
        ) -> Vec<Vec<Token>> {
            if left.is_empty() {
                return Vec::new();
            }
            let mut head: Option<Vec<Token>> = None;
            let mut ties = Vec::new();
            for (slot, &k) in left.iter().enumerate() {
                for shift in 0..comps[k].len().max(1) {
                    let mut l = labels.clone();
                    let e = encode(&comps[k], shift, &mut l);
                    match head.as_ref().map(|h| e.cmp(h)) {
                        Some(std::cmp::Ordering::Greater) => continue,
                        Some(std::cmp::Ordering::Equal) => ties.push((slot, l)),
                        _ => {
                            head = Some(e);
                            ties = vec![(slot, l)];
                        }
                    }
                }
            }
            let head = head.expect("a component is left");
            ties.into_iter()
                .map(|(slot, l)| {
                    let rest: Vec<usize> = left.iter().enumerate().filter(|(s, _)| *s != slot).map(|(_, &k)| k).collect();
                    let mut seq = vec![head.clone()];
                    seq.extend(best(comps, &rest, &l));
                    seq
                })
                .min()
                .expect("at least one tie")
        }
        let left: Vec<usize> = (0..self.components.len()).collect();
        let seq = best(&self.components, &left, &HashMap::new());
        VirtualLink {
            components: seq
                .into_iter()
                .map(|c| c.into_iter().map(|(l, role, sign)| Passage::new(l.to_string(), role, sign)).collect())
                .collect(),
        }
    }
}

impl fmt::Display for VirtualLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let ps: Vec<String> = c
                    .iter()
                    .map(|p| {
                        let r = if p.role == Role::Over { 'o' } else { 'u' };
                        let s = if p.sign == Sign::Pos { '+' } else { '-' };
                        format!("{}{r}{s}", p.crossing)
                    })
                    .collect();
                format!("({})", ps.join(" "))
            })
            .collect();
        write!(f, "{}", comps.join(" "))
    }
}

/// Traces the strands left by `choice`, keeping the closed ones. A closed
/// strand runs along its least-index edge in that edge's direction; crossing
/// signs are adjusted for strands that run against their edges.
pub fn link_of(code: &VsgCode, choice: &[Replacement]) -> Result<VirtualLink> {
    code.ensure_valid()?;
    let mut partner: HashMap<&HalfEdge, &HalfEdge> = HashMap::new();
    let mut done: Vec<&str> = Vec::new();
    for r in choice {
        let rot = code.rotation(&r.vertex);
        let [a, b] = &r.pair;
        if done.contains(&r.vertex.as_str()) || a == b || !rot.contains(a) || !rot.contains(b) {
            return Err(Error::Structure(format!("replacement at {} does not join two of its legs", r.vertex)));
        }
        done.push(&r.vertex);
        partner.insert(a, b);
        partner.insert(b, a);
    }
    if let Some(v) = code.vertices.iter().find(|v| code.rotation(v).len() >= 2 && !done.contains(&v.as_str())) {
        return Err(Error::Structure(format!("no replacement at vertex {v}")));
    }
    let index: HashMap<&str, usize> = code.edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
    let end_at = |e: usize, forward: bool| HalfEdge::new(code.edges[e].id.clone(), if forward { crate::End::Head } else { crate::End::Tail });
    // next edge and direction after leaving edge e, if the strand continues
    let step = |e: usize, forward: bool| -> Option<(usize, bool)> {
        let h = end_at(e, forward);
        let q = partner.get(&h)?;
        Some((index[q.edge.as_str()], q.end == crate::End::Tail))
    };
    let mut seen = vec![false; code.edges.len()];
    let mut closed: Vec<Vec<(usize, bool)>> = Vec::new();
    for e in 0..code.edges.len() {
        if seen[e] {
            continue;
        }
        let mut walk = vec![(e, true)];
        seen[e] = true;
        let mut open = false;
        let mut at = (e, true);
        loop {
            match step(at.0, at.1) {
                None => {
                    open = true;
                    break;
                }
                Some(next) if next == (e, true) => break,
                Some(next) => {
                    seen[next.0] = true;
                    walk.push(next);
                    at = next;
                }
            }
        }
        if open {
            // mark the part of the strand behind the start
            let mut at = (e, false);
            while let Some(next) = step(at.0, at.1) {
                seen[next.0] = true;
                at = next;
            }
        } else {
            closed.push(walk);
        }
    }
    let mut direction: HashMap<(usize, usize), bool> = HashMap::new();
    let mut components = Vec::new();
    for walk in &closed {
        let mut comp = Vec::new();
        for &(e, forward) in walk {
            let ps = code.passages_of(e);
            let ordered: Vec<&Passage> = if forward { ps.iter().collect() } else { ps.iter().rev().collect() };
            for p in ordered {
                direction.insert((components.len(), comp.len()), forward);
                comp.push(p.clone());
            }
        }
        components.push(comp);
    }
    let mut link = VirtualLink { components };
    // erase crossings with an open strand and fix signs of reversed strands
    let positions: Vec<(String, [(usize, usize); 2], bool)> = {
        let mut count: HashMap<&str, usize> = HashMap::new();
        for p in link.components.iter().flatten() {
            *count.entry(p.crossing.as_str()).or_default() += 1;
        }
        link.positions()
            .into_iter()
            .map(|(l, pos)| (l.to_string(), pos, count[l] == 2))
            .collect()
    };
    let mut sign_of: HashMap<String, Option<Sign>> = HashMap::new();
    for (label, [o, u], kept) in positions {
        let s = kept.then(|| {
            let p = &link.components[o.0][o.1];
            let flip = direction[&o] == direction[&u];
            if flip {
                p.sign
            } else {
                Sign::from_int(-p.sign.value())
            }
        });
        sign_of.insert(label, s);
    }
    for c in &mut link.components {
        c.retain_mut(|p| match sign_of[&p.crossing] {
            Some(s) => {
                p.sign = s;
                true
            }
            None => false,
        });
    }
    Ok(link)
}

/// T(G): the canonical link of every replacement choice, in choice order.
pub fn tg(code: &VsgCode) -> Result<Vec<VirtualLink>> {
    let choices = enumerate_replacements(code)?;
    choices.par_iter().map(|c| link_of(code, c).map(|l| l.canonical())).collect()
}

/// A number of the form k/2, stored as k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Half(pub i64);

impl Half {
    pub fn abs(self) -> Half {
        Half(self.0.abs())
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Half {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Half the signed count of crossings between components i and j.
pub fn linking_number(link: &VirtualLink, i: usize, j: usize) -> Result<Half> {
    let n = link.components.len();
    if i >= n || j >= n || i == j {
        return Err(Error::Structure(format!("components {i} and {j} of a {n}-component link")));
    }
    let mut total = 0;
    for [o, u] in link.positions().values() {
        if (o.0 == i && u.0 == j) || (o.0 == j && u.0 == i) {
            total += link.components[o.0][o.1].sign.value() as i64;
        }
    }
    Ok(Half(total))
}

pub fn bracket(link: &VirtualLink) -> Result<LaurentPoly> {
    bracket_with(link, DEFAULT_BRACKET_CROSSINGS)
}

/// Kauffman bracket by the state sum, normalized so one loop gives 1 and
/// the empty link gives 1.
pub fn bracket_with(link: &VirtualLink, max_crossings: usize) -> Result<LaurentPoly> {
    link.check()?;
    let crossings: Vec<(Sign, [(usize, usize); 2])> = link
        .positions()
        .values()
        .map(|&[o, u]| (link.components[o.0][o.1].sign, [o, u]))
        .collect();
    let m = crossings.len();
    if m > max_crossings {
        return Err(Error::Budget {
            what: "bracket crossings",
            needed: m as u64,
            limit: max_crossings as u64,
        });
    }
    if link.components.is_empty() {
        return Ok(LaurentPoly::one());
    }
    // endpoints: passage (k, i) has an in end 2p and an out end 2p + 1
    let mut base = Vec::new();
    let mut id = HashMap::new();
    for (k, c) in link.components.iter().enumerate() {
        for i in 0..c.len() {
            id.insert((k, i), base.len());
            base.push(());
        }
    }
    let ends = 2 * base.len();
    let free_loops = link.components.iter().filter(|c| c.is_empty()).count();
    let mut strands = Vec::new();
    for (k, c) in link.components.iter().enumerate() {
        for i in 0..c.len() {
            strands.push((2 * id[&(k, i)] + 1, 2 * id[&(k, (i + 1) % c.len())]));
        }
    }
    let end_of = |pos: (usize, usize), e: CrossingEnd| 2 * id[&pos] + usize::from(!e.is_incoming());
    let per_state: Vec<(i32, usize)> = (0..1u64 << m)
        .into_par_iter()
        .map(|state| {
            let mut parent: Vec<usize> = (0..ends).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                let mut y = x;
                while p[y] != r {
                    let n = p[y];
                    p[y] = r;
                    y = n;
                }
                r
            }
            let mut loops = ends;
            let mut join = |p: &mut Vec<usize>, a: usize, b: usize| {
                let (ra, rb) = (find(p, a), find(p, b));
                if ra != rb {
                    p[ra] = rb;
                    loops -= 1;
                }
            };
            for &(a, b) in &strands {
                join(&mut parent, a, b);
            }
            let mut a_count = 0i32;
            for (c, (sign, [o, u])) in crossings.iter().enumerate() {
                let a_side = state >> c & 1 == 0;
                a_count += if a_side { 1 } else { -1 };
                for (x, y) in smoothing(*sign, a_side) {
                    let at = |e: CrossingEnd| if e.role() == Role::Over { *o } else { *u };
                    join(&mut parent, end_of(at(x), x), end_of(at(y), y));
                }
            }
            (a_count, loops + free_loops)
        })
        .collect();
    let delta = LaurentPoly::delta();
    let mut total = LaurentPoly::zero();
    for (a, loops) in per_state {
        total += &delta.pow(loops as u32 - 1).mul_monomial(1, a);
    }
    Ok(total)
}

/// (−A³)^(−w) times the bracket.
pub fn f_poly(link: &VirtualLink) -> Result<LaurentPoly> {
    let w = link.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(bracket(link)?.mul_monomial(sign, -3 * w))
}

/// Component count, sorted pairwise linking numbers and f-polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinkInvariant {
    pub components: usize,
    pub linking: Vec<Half>,
    #[serde(serialize_with = "crate::links::poly_text")]
    pub f: LaurentPoly,
}

fn poly_text<S: serde::Serializer>(p: &LaurentPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

pub fn linking_numbers(link: &VirtualLink) -> Vec<Half> {
    let n = link.components.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(linking_number(link, i, j).expect("components in range"));
        }
    }
    out.sort();
    out
}

pub fn link_invariant(link: &VirtualLink) -> Result<LinkInvariant> {
    Ok(LinkInvariant {
        components: link.components.len(),
        linking: linking_numbers(link),
        f: f_poly(link)?,
    })
}

/// Sorted invariants over T(G); empty links are dropped unless asked for.
pub fn tg_invariants(code: &VsgCode, include_empty: bool) -> Result<Vec<LinkInvariant>> {
    let mut out = tg(code)?
        .par_iter()
        .filter(|l| include_empty || !l.is_empty())
        .map(link_invariant)
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Sorted linking-number lists over T(G), empty links included.
pub fn tg_linking(code: &VsgCode) -> Result<Vec<Vec<Half>>> {
    let mut out: Vec<Vec<Half>> = tg(code)?.iter().map(linking_numbers).collect();
    out.sort();
    Ok(out)
}
