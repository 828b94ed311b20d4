//! Planar diagrams with virtual crossings.
//!
//! [`realize`] places every vertex and classical crossing as a gadget just
//! outside the unit circle, with its ports on the circle in a small window
//! of its own. Each segment of an edge becomes a straight chord between two
//! ports, plus a short stub from each port to its gadget. Stubs of different
//! gadgets stay in disjoint sectors outside the disk, so the only places
//! where arcs meet are chord crossings inside the disk, and those become the
//! virtual crossings. All coordinates are exact rationals.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::{End, HalfEdge, Passage, Sign, VsgCode};
use crate::diagram::{AbstractDiagram, CrossingEnd, Port};
use crate::error::{Error, Result};

/// A rational serialized as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Serialize for Q {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigRational>()
            .map(Q)
            .map_err(|_| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    fn new(x: BigRational, y: BigRational) -> Self {
        Point { x: Q(x), y: Q(y) }
    }

    fn sub(&self, o: &Point) -> (BigRational, BigRational) {
        (&self.x.0 - &o.x.0, &self.y.0 - &o.y.0)
    }

    pub fn integer(x: i64, y: i64) -> Self {
        Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.0.to_f64().unwrap_or(0.0),
            self.y.0.to_f64().unwrap_or(0.0),
        )
    }
}

fn cross(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Rational point on the unit circle for parameter `t`.
fn circle_point(t: &BigRational) -> Point {
    let one = BigRational::one();
    let t2 = t * t;
    let den = &one + &t2;
    Point::new((&one - &t2) / &den, (t * BigRational::from_integer(2.into())) / den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcEnd {
    In,
    Out,
}

/// One of the four strand ends at a virtual crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualEnd {
    pub arc: usize,
    pub end: ArcEnd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GadgetKind {
    /// Ports follow the rotation: port `k` is `rotation[k]`.
    Vertex { vertex: String, rotation: Vec<HalfEdge> },
    /// Ports follow `ends`, the counterclockwise order of the strand ends.
    ClassicalCrossing {
        label: String,
        sign: Sign,
        ends: Vec<String>,
    },
    /// Ends in counterclockwise order.
    VirtualCrossing { ends: Vec<VirtualEnd> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub id: String,
    #[serde(flatten)]
    pub kind: GadgetKind,
    pub position: Point,
    /// Port positions, indexed by slot. Empty for virtual crossings.
    #[serde(default)]
    pub ports: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PortRef {
    pub gadget: String,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub edge: String,
    pub index: usize,
    pub from: PortRef,
    pub to: PortRef,
    pub points: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarDiagram {
    pub version: u32,
    pub gadgets: Vec<Gadget>,
    pub arcs: Vec<Arc>,
}

impl PlanarDiagram {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagrams serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: PlanarDiagram = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if d.version != 1 {
            return Err(Error::Parse(format!("unsupported diagram version {}", d.version)));
        }
        Ok(d)
    }

    pub fn count(&self, pred: impl Fn(&GadgetKind) -> bool) -> usize {
        self.gadgets.iter().filter(|g| pred(&g.kind)).count()
    }

    pub fn virtual_count(&self) -> usize {
        self.count(|k| matches!(k, GadgetKind::VirtualCrossing { .. }))
    }

    pub fn classical_count(&self) -> usize {
        self.count(|k| matches!(k, GadgetKind::ClassicalCrossing { .. }))
    }

    fn gadget(&self, id: &str) -> Option<&Gadget> {
        self.gadgets.iter().find(|g| g.id == id)
    }
}

fn vertex_id(v: &str) -> String {
    format!("v:{v}")
}

fn crossing_id(label: &str) -> String {
    format!("c:{label}")
}

/// Slot of each abstract port together with gadget port counts.
struct Layout {
    /// Gadget order: vertices, then crossings.
    port_counts: Vec<usize>,
    /// Gadgets in the order they sit around the circle.
    placement: Vec<usize>,
    /// Per gadget, the slot that takes the first port position.
    offsets: Vec<usize>,
}

impl Layout {
    fn gadget_of(&self, d: &AbstractDiagram, p: &Port) -> (usize, usize) {
        match *p {
            Port::Vertex { vertex, slot } => (vertex, slot),
            Port::Crossing { crossing, end } => {
                let order = CrossingEnd::ccw_order(d.crossings[crossing].sign);
                let slot = order.iter().position(|e| *e == end).unwrap();
                (d.vertices.len() + crossing, slot)
            }
        }
    }
}

/// Port parameters of every gadget, perturbed by `attempt`.
fn port_params(counts: &[usize], placement: &[usize], attempt: u64) -> Vec<Vec<BigRational>> {
    // each gadget takes max(count,1) slots, with one empty slot between gadgets
    let total: usize = counts.iter().map(|c| (*c).max(1) + 1).sum::<usize>().max(2);
    let denom = BigInt::from(total as u64 - 1);
    let half = BigRational::new(1.into(), 2.into());
    let wobble = BigRational::new(1.into(), BigInt::from(4 * 101) * &denom);
    let mut slot = 0u64;
    let mut out = vec![Vec::new(); counts.len()];
    for &g in placement {
        let c = counts[g];
        let mut ts = Vec::with_capacity(c.max(1));
        for k in 0..c.max(1) as u64 {
            let s = slot + k;
            let mut t = BigRational::new(BigInt::from(s), denom.clone()) - &half;
            if attempt > 0 {
                let w = ((s + 1) * (s + 1) * attempt + s * 7) % 101;
                t += &wobble * BigRational::from_integer(BigInt::from(w));
            }
            ts.push(t);
        }
        // counterclockwise port order is decreasing parameter
        ts.reverse();
        out[g] = ts;
        slot += c.max(1) as u64 + 1;
    }
    out
}

struct Chord {
    a: Point,
    b: Point,
}

/// Interior intersection point of two chords, if any.
fn chord_intersection(p: &Chord, q: &Chord) -> Option<Point> {
    let r = q.a.sub(&p.a);
    let dp = p.b.sub(&p.a);
    let dq = q.b.sub(&q.a);
    let den = cross(&dp, &dq);
    if den.is_zero() {
        return None;
    }
    let t = cross(&r, &dq) / &den;
    let u = cross(&r, &dp) / &den;
    let zero = BigRational::zero();
    let one = BigRational::one();
    if t > zero && t < one && u > zero && u < one {
        Some(Point::new(&p.a.x.0 + &t * &dp.0, &p.a.y.0 + &t * &dp.1))
    } else {
        None
    }
}

pub fn realize(code: &VsgCode) -> Result<PlanarDiagram> {
    realize_variant(code, 0)
}

/// Realization with the gadgets placed around the circle in an order
/// picked by `variant`. Variant 0 is what `realize` returns; the others
/// usually differ in their virtual crossings but read back the same code.
pub fn realize_variant(code: &VsgCode, variant: u64) -> Result<PlanarDiagram> {
    code.ensure_valid()?;
    let d = AbstractDiagram::from_code(code);
    let mut counts: Vec<usize> = d.vertices.iter().map(|v| code.rotation(v).len()).collect();
    counts.extend(std::iter::repeat(4).take(d.crossings.len()));
    let mut placement: Vec<usize> = (0..counts.len()).collect();
    let mut offsets = vec![0; counts.len()];
    if variant > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(variant);
        placement.shuffle(&mut rng);
        for (o, &c) in offsets.iter_mut().zip(&counts) {
            *o = rng.gen_range(0..c.max(1));
        }
    }
    let layout = Layout {
        port_counts: counts,
        placement,
        offsets,
    };
    for attempt in 0..64 {
        if let Some(diagram) = try_layout(code, &d, &layout, attempt) {
            return Ok(diagram);
        }
    }
    Err(Error::Structure("no generic chord layout found".into()))
}

fn try_layout(code: &VsgCode, d: &AbstractDiagram, layout: &Layout, attempt: u64) -> Option<PlanarDiagram> {
    let mut params = port_params(&layout.port_counts, &layout.placement, attempt);
    for (ts, &o) in params.iter_mut().zip(&layout.offsets) {
        ts.rotate_left(o);
    }
    let ports: Vec<Vec<Point>> = params.iter().map(|ts| ts.iter().map(circle_point).collect()).collect();
    let two = BigRational::from_integer(2.into());
    let centers: Vec<Point> = params
        .iter()
        .map(|ts| {
            let mid = ts.iter().fold(BigRational::zero(), |acc, t| acc + t)
                / BigRational::from_integer(BigInt::from(ts.len()));
            let p = circle_point(&mid);
            Point::new(&p.x.0 * &two, &p.y.0 * &two)
        })
        .collect();
    let nv = d.vertices.len();
    let mut gadgets = Vec::new();
    for (i, v) in d.vertices.iter().enumerate() {
        gadgets.push(Gadget {
            id: vertex_id(v),
            kind: GadgetKind::Vertex {
                vertex: v.clone(),
                rotation: code.rotation(v).to_vec(),
            },
            position: centers[i].clone(),
            ports: if layout.port_counts[i] == 0 {
                Vec::new()
            } else {
                ports[i].clone()
            },
        });
    }
    for (k, c) in d.crossings.iter().enumerate() {
        gadgets.push(Gadget {
            id: crossing_id(&c.label),
            kind: GadgetKind::ClassicalCrossing {
                label: c.label.clone(),
                sign: c.sign,
                ends: CrossingEnd::ccw_order(c.sign).iter().map(|e| e.name().to_string()).collect(),
            },
            position: centers[nv + k].clone(),
            ports: ports[nv + k].clone(),
        });
    }
    let mut arcs = Vec::new();
    let mut chords = Vec::new();
    for s in &d.segments {
        let (ga, sa) = layout.gadget_of(d, &s.from);
        let (gb, sb) = layout.gadget_of(d, &s.to);
        let a = ports[ga][sa].clone();
        let b = ports[gb][sb].clone();
        arcs.push(Arc {
            edge: code.edges[s.edge].id.clone(),
            index: s.index,
            from: PortRef {
                gadget: gadgets[ga].id.clone(),
                slot: sa,
            },
            to: PortRef {
                gadget: gadgets[gb].id.clone(),
                slot: sb,
            },
            points: vec![centers[ga].clone(), a.clone(), b.clone(), centers[gb].clone()],
        });
        chords.push(Chord { a, b });
    }
    let mut seen: HashMap<Point, (usize, usize)> = HashMap::new();
    let mut virtuals = Vec::new();
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            if let Some(p) = chord_intersection(&chords[i], &chords[j]) {
                if seen.insert(p.clone(), (i, j)).is_some() {
                    return None;
                }
                let di = chords[i].b.sub(&chords[i].a);
                let dj = chords[j].b.sub(&chords[j].a);
                // counterclockwise from the outgoing end of arc i
                let (second, fourth) = if cross(&di, &dj).is_positive() {
                    ((j, ArcEnd::Out), (j, ArcEnd::In))
                } else {
                    ((j, ArcEnd::In), (j, ArcEnd::Out))
                };
                let ends = vec![
                    VirtualEnd { arc: i, end: ArcEnd::Out },
                    VirtualEnd { arc: second.0, end: second.1 },
                    VirtualEnd { arc: i, end: ArcEnd::In },
                    VirtualEnd { arc: fourth.0, end: fourth.1 },
                ];
                virtuals.push((p, ends));
            }
        }
    }
    for (k, (p, ends)) in virtuals.into_iter().enumerate() {
        gadgets.push(Gadget {
            id: format!("x{}", k + 1),
            kind: GadgetKind::VirtualCrossing { ends },
            position: p,
            ports: Vec::new(),
        });
    }
    Some(PlanarDiagram {
        version: 1,
        gadgets,
        arcs,
    })
}

fn structure(msg: impl Into<String>) -> Error {
    Error::Structure(msg.into())
}

/// Reads the code of a diagram: passages along each edge from the classical
/// gadgets its arcs pass through, rotations from the vertex gadgets.
pub fn extract_code(diagram: &PlanarDiagram) -> Result<VsgCode> {
    let mut vertices = Vec::new();
    let mut rotations = BTreeMap::new();
    for g in &diagram.gadgets {
        if let GadgetKind::Vertex { vertex, rotation } = &g.kind {
            vertices.push(vertex.clone());
            rotations.insert(vertex.clone(), rotation.clone());
        }
    }
    let mut by_edge: Vec<(String, Vec<&Arc>)> = Vec::new();
    for a in &diagram.arcs {
        match by_edge.iter_mut().find(|(e, _)| *e == a.edge) {
            Some((_, v)) => v.push(a),
            None => by_edge.push((a.edge.clone(), vec![a])),
        }
    }
    let vertex_end = |port: &PortRef, edge: &str, end: End| -> Result<String> {
        let g = diagram
            .gadget(&port.gadget)
            .ok_or_else(|| structure(format!("dangling port {}", port.gadget)))?;
        match &g.kind {
            GadgetKind::Vertex { vertex, rotation } => {
                let h = rotation
                    .get(port.slot)
                    .ok_or_else(|| structure(format!("no slot {} at {}", port.slot, g.id)))?;
                if h.edge != edge || h.end != end {
                    return Err(structure(format!("slot {} of {} is not {edge}:{end:?}", port.slot, g.id)));
                }
                Ok(vertex.clone())
            }
            _ => Err(structure(format!("edge {edge} must start and end at vertices"))),
        }
    };
    let crossing_end = |port: &PortRef| -> Result<(String, Sign, CrossingEnd)> {
        let g = diagram
            .gadget(&port.gadget)
            .ok_or_else(|| structure(format!("dangling port {}", port.gadget)))?;
        match &g.kind {
            GadgetKind::ClassicalCrossing { label, sign, ends } => {
                let name = ends
                    .get(port.slot)
                    .ok_or_else(|| structure(format!("no slot {} at {}", port.slot, g.id)))?;
                let end = CrossingEnd::from_name(name).ok_or_else(|| structure(format!("bad end {name}")))?;
                if ends.len() != 4 || CrossingEnd::ccw_order(*sign).iter().map(|e| e.name()).ne(ends.iter().map(|s| s.as_str())) {
                    return Err(structure(format!("end order of {} does not match its sign", g.id)));
                }
                Ok((label.clone(), *sign, end))
            }
            _ => Err(structure(format!("{} is not a classical crossing", g.id))),
        }
    };
    let mut edges = Vec::new();
    let mut passages = BTreeMap::new();
    let mut used: HashMap<PortRef, usize> = HashMap::new();
    for (edge, mut arcs) in by_edge {
        arcs.sort_by_key(|a| a.index);
        if arcs.iter().enumerate().any(|(k, a)| a.index != k) {
            return Err(structure(format!("arcs of {edge} are not numbered 0..")));
        }
        for a in &arcs {
            for p in [&a.from, &a.to] {
                *used.entry(p.clone()).or_default() += 1;
            }
        }
        let tail = vertex_end(&arcs[0].from, &edge, End::Tail)?;
        let head = vertex_end(&arcs[arcs.len() - 1].to, &edge, End::Head)?;
        let mut seq = Vec::new();
        for w in arcs.windows(2) {
            let (label, sign, end_in) = crossing_end(&w[0].to)?;
            let (label_out, _, end_out) = crossing_end(&w[1].from)?;
            if w[0].to.gadget != w[1].from.gadget
                || label != label_out
                || !end_in.is_incoming()
                || end_out != CrossingEnd::outgoing(end_in.role())
            {
                return Err(structure(format!("unpaired strand through {} on {edge}", w[0].to.gadget)));
            }
            seq.push(Passage::new(label, end_in.role(), sign));
        }
        edges.push((edge.clone(), tail, head));
        passages.insert(edge, seq);
    }
    if let Some((p, _)) = used.iter().find(|(_, n)| **n > 1) {
        return Err(structure(format!("port {}#{} used twice", p.gadget, p.slot)));
    }
    let vrefs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let erefs: Vec<(&str, &str, &str)> = edges
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    let mut code = VsgCode::from_graph(&vrefs, &erefs);
    code.rotations = rotations;
    code.passages = passages;
    let report = code.validate();
    if !report.ok {
        return Err(Error::Invalid(report));
    }
    Ok(code)
}

/// Checks that all arc pieces meet only at shared gadgets or at declared
/// virtual crossings, each of which is met by exactly two pieces.
pub fn check_geometry(diagram: &PlanarDiagram) -> Result<()> {
    let mut hits: HashMap<Point, usize> = HashMap::new();
    let declared: HashMap<&Point, &str> = diagram
        .gadgets
        .iter()
        .filter(|g| matches!(g.kind, GadgetKind::VirtualCrossing { .. }))
        .map(|g| (&g.position, g.id.as_str()))
        .collect();
    let pieces: Vec<(usize, Chord)> = diagram
        .arcs
        .iter()
        .enumerate()
        .flat_map(|(i, a)| {
            a.points.windows(2).map(move |w| {
                (
                    i,
                    Chord {
                        a: w[0].clone(),
                        b: w[1].clone(),
                    },
                )
            })
        })
        .collect();
    for x in 0..pieces.len() {
        for y in x + 1..pieces.len() {
            let (p, q) = (&pieces[x].1, &pieces[y].1);
            if let Some(pt) = chord_intersection(p, q) {
                if !declared.contains_key(&pt) {
                    return Err(structure(format!("undeclared crossing of arcs {} and {}", pieces[x].0, pieces[y].0)));
                }
                *hits.entry(pt).or_default() += 1;
            } else if touches(p, q) {
                return Err(structure(format!("arcs {} and {} touch", pieces[x].0, pieces[y].0)));
            }
        }
    }
    for (pt, id) in declared {
        if hits.get(pt) != Some(&1) {
            return Err(structure(format!("virtual crossing {id} is not a simple crossing")));
        }
    }
    Ok(())
}

/// Whether two pieces meet anywhere other than a shared endpoint.
fn touches(p: &Chord, q: &Chord) -> bool {
    let on = |s: &Chord, pt: &Point| {
        let d = s.b.sub(&s.a);
        let r = pt.sub(&s.a);
        if !cross(&d, &r).is_zero() {
            return false;
        }
        let dot = &d.0 * &r.0 + &d.1 * &r.1;
        let len = &d.0 * &d.0 + &d.1 * &d.1;
        dot > BigRational::zero() && dot < len
    };
    on(p, &q.a) || on(p, &q.b) || on(q, &p.a) || on(q, &p.b)
}

/// Standalone SVG drawing. Under strands stop short of their crossing,
/// virtual crossings are circled, edges carry an arrowhead mid-chord.
pub fn render_svg(diagram: &PlanarDiagram) -> String {
    let scale = 140.0;
    let px = |p: &Point| {
        let (x, y) = p.to_f64();
        (x * scale, -y * scale)
    };
    let mut s = String::new();
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-320 -320 640 640\">\n\
         <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\
         <path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n",
    );
    let under_slot = |port: &PortRef| -> bool {
        diagram.gadget(&port.gadget).is_some_and(|g| match &g.kind {
            GadgetKind::ClassicalCrossing { ends, .. } => ends.get(port.slot).is_some_and(|e| e.starts_with("under")),
            _ => false,
        })
    };
    let mut under_stubs: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for a in &diagram.arcs {
        let (c0, p0, p1, c1) = (px(&a.points[0]), px(&a.points[1]), px(&a.points[2]), px(&a.points[3]));
        let mid = ((p0.0 + p1.0) / 2.0, (p0.1 + p1.1) / 2.0);
        let _ = writeln!(
            s,
            "<path class=\"edge\" fill=\"none\" stroke=\"black\" marker-mid=\"url(#arrow)\" d=\"M {:.2} {:.2} L {:.2} {:.2} L {:.2} {:.2}\"/>",
            p0.0, p0.1, mid.0, mid.1, p1.0, p1.1
        );
        for (port, center, at) in [(&a.from, c0, p0), (&a.to, c1, p1)] {
            if under_slot(port) {
                // stop short of the crossing point
                let end = (at.0 + (center.0 - at.0) * 0.8, at.1 + (center.1 - at.1) * 0.8);
                under_stubs.entry(port.gadget.clone()).or_default().push(format!(
                    "<line stroke=\"black\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
                    at.0, at.1, end.0, end.1
                ));
            } else {
                let _ = writeln!(
                    s,
                    "<line class=\"stub\" stroke=\"black\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
                    at.0, at.1, center.0, center.1
                );
            }
        }
    }
    for (gadget, lines) in under_stubs {
        let _ = writeln!(s, "<g class=\"under-gap\" data-crossing=\"{gadget}\">{}</g>", lines.concat());
    }
    for g in &diagram.gadgets {
        let (x, y) = px(&g.position);
        match &g.kind {
            GadgetKind::Vertex { vertex, .. } => {
                let _ = writeln!(
                    s,
                    "<circle class=\"vertex\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"black\"><title>{vertex}</title></circle>"
                );
            }
            GadgetKind::VirtualCrossing { .. } => {
                let _ = writeln!(
                    s,
                    "<circle class=\"virtual\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"none\" stroke=\"gray\"/>"
                );
            }
            GadgetKind::ClassicalCrossing { .. } => {}
        }
    }
    s.push_str("</svg>\n");
    s
}
