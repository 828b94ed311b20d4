//! Reidemeister moves on decorated Gauss codes.
//!
//! Every crossing-creating move is described by an insertion plan: blocks of
//! new passages placed at gaps of the smaller code, plus an optional change
//! of one vertex rotation. A reduction is the same plan run backwards: the
//! passages it would have inserted are located, removed, and the result is
//! checked by inserting them again. Sites name edges, vertices and legs by
//! id, never by crossing label or rotation index, so a site found on one
//! labeling of a code applies verbatim to any relabeling of it.
//!
//! The virtual moves (I*)–(V*) do not change the code and have no sites.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{HalfEdge, Passage, Pos, Role, Sign, VsgCode};
use crate::error::{Error, Result};

mod forbidden;
mod search;

pub use forbidden::{is_normalized, normalize_forbidden, Level};
pub use search::{search_equivalent, Outcome, SearchBudget, SearchStats, SearchVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Insertion for crossing-creating moves; the only direction of the
    /// self-inverse ones.
    Apply,
    /// Deletion of the crossings an `apply` would have created.
    Inverse,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Apply => Direction::Inverse,
            Direction::Inverse => Direction::Apply,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    #[serde(rename = "VI*")]
    VIStar,
    #[serde(rename = "VII*")]
    VIIStar,
    #[serde(rename = "VIII*")]
    VIIIStar,
}

impl fmt::Display for MoveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveId::I => "I",
            MoveId::II => "II",
            MoveId::III => "III",
            MoveId::IV => "IV",
            MoveId::V => "V",
            MoveId::VI => "VI",
            MoveId::VIStar => "VI*",
            MoveId::VIIStar => "VII*",
            MoveId::VIIIStar => "VIII*",
        };
        f.write_str(s)
    }
}

/// Position of the first passage of an adjacent pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairAt {
    pub edge: String,
    pub index: usize,
}

/// A concrete place to apply one move. Gap indices always refer to the
/// code without the move's crossings, whichever the direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "move")]
pub enum MoveSite {
    /// Kink on `edge` at `gap`; `first` is the role met first.
    I {
        direction: Direction,
        edge: String,
        gap: usize,
        first: Role,
        sign: Sign,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// Two crossings of opposite sign: an over block `[c, d]` at
    /// `over_gap` of `over_edge`, an under block `[c, d]` (or `[d, c]` when
    /// `reversed`) at `under_gap` of `under_edge`. `sign` is the sign of `c`.
    /// `under_first` orders the blocks when both land in the same gap.
    II {
        direction: Direction,
        over_edge: String,
        over_gap: usize,
        under_edge: String,
        under_gap: usize,
        reversed: bool,
        sign: Sign,
        #[serde(default)]
        under_first: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// Triangle rewrite: the strand passing over both crossings, the mixed
    /// strand, and the strand passing under both.
    III {
        top: PairAt,
        middle: PairAt,
        bottom: PairAt,
    },
    /// Strand at `gap` of `edge` pulled across `vertex`, crossing every leg
    /// next to the vertex. Legs are taken in rotation order starting at
    /// `start`; the strand meets them in that order, or reversed when
    /// `clockwise`.
    IV {
        direction: Direction,
        vertex: String,
        edge: String,
        gap: usize,
        over: bool,
        clockwise: bool,
        start: HalfEdge,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// Half twist of the vertex disk: the rotation, read from `start`,
    /// reverses and every pair of legs crosses once next to the vertex.
    V {
        direction: Direction,
        vertex: String,
        start: HalfEdge,
        twist: i8,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// Pliable swap of `leg` with the leg after it in the rotation, adding
    /// one crossing between them next to the vertex.
    VI {
        direction: Direction,
        vertex: String,
        leg: HalfEdge,
        first_over: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// Reverse a vertex rotation.
    #[serde(rename = "VI*")]
    VIStar { vertex: String },
    /// Transpose `leg` with the leg after it.
    #[serde(rename = "VII*")]
    VIIStar { vertex: String, leg: HalfEdge },
    /// Transpose passages `index` and `index + 1` of `edge`.
    #[serde(rename = "VIII*")]
    VIIIStar { edge: String, index: usize },
}

impl MoveSite {
    pub fn id(&self) -> MoveId {
        match self {
            MoveSite::I { .. } => MoveId::I,
            MoveSite::II { .. } => MoveId::II,
            MoveSite::III { .. } => MoveId::III,
            MoveSite::IV { .. } => MoveId::IV,
            MoveSite::V { .. } => MoveId::V,
            MoveSite::VI { .. } => MoveId::VI,
            MoveSite::VIStar { .. } => MoveId::VIStar,
            MoveSite::VIIStar { .. } => MoveId::VIIStar,
            MoveSite::VIIIStar { .. } => MoveId::VIIIStar,
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            MoveSite::I { direction, .. }
            | MoveSite::II { direction, .. }
            | MoveSite::IV { direction, .. }
            | MoveSite::V { direction, .. }
            | MoveSite::VI { direction, .. } => *direction,
            _ => Direction::Apply,
        }
    }

    pub fn is_reduction(&self) -> bool {
        self.direction() == Direction::Inverse
    }

    fn labels(&self) -> Option<&Vec<String>> {
        match self {
            MoveSite::I { labels, .. }
            | MoveSite::II { labels, .. }
            | MoveSite::IV { labels, .. }
            | MoveSite::V { labels, .. }
            | MoveSite::VI { labels, .. } => labels.as_ref(),
            _ => None,
        }
    }

    /// Same site with the direction flipped and explicit labels replaced.
    fn flipped(&self, new_labels: Option<Vec<String>>) -> MoveSite {
        let mut s = self.clone();
        match &mut s {
            MoveSite::I { direction, labels, .. }
            | MoveSite::II { direction, labels, .. }
            | MoveSite::IV { direction, labels, .. }
            | MoveSite::V { direction, labels, .. }
            | MoveSite::VI { direction, labels, .. } => {
                *direction = direction.flip();
                *labels = new_labels;
            }
            _ => {}
        }
        s
    }

    /// The site with any explicit crossing labels dropped.
    pub fn without_labels(&self) -> MoveSite {
        let mut s = self.clone();
        match &mut s {
            MoveSite::I { labels, .. }
            | MoveSite::II { labels, .. }
            | MoveSite::IV { labels, .. }
            | MoveSite::V { labels, .. }
            | MoveSite::VI { labels, .. } => *labels = None,
            _ => {}
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sites serialize")
    }

    pub fn from_json(text: &str) -> Result<MoveSite> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Forbidden {
    #[serde(rename = "vi*")]
    VI,
    #[serde(rename = "vii*")]
    VII,
    #[serde(rename = "viii*")]
    VIII,
}

impl std::str::FromStr for Forbidden {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "vi*" | "vi" => Ok(Forbidden::VI),
            "vii*" | "vii" => Ok(Forbidden::VII),
            "viii*" | "viii" => Ok(Forbidden::VIII),
            other => Err(Error::Parse(format!("unknown forbidden move {other:?}"))),
        }
    }
}

/// Which moves a computation may use.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MoveSet {
    /// Allow move (VI).
    pub pliable: bool,
    pub forbidden: BTreeSet<Forbidden>,
}

impl MoveSet {
    /// Moves (I)–(V).
    pub fn rigid() -> Self {
        Self::default()
    }

    /// Moves (I)–(VI).
    pub fn pliable() -> Self {
        Self {
            pliable: true,
            ..Self::default()
        }
    }

    pub fn with_forbidden(mut self, f: impl IntoIterator<Item = Forbidden>) -> Self {
        self.forbidden.extend(f);
        self
    }

    pub fn allows(&self, id: MoveId) -> bool {
        match id {
            MoveId::VI => self.pliable,
            MoveId::VIStar => self.forbidden.contains(&Forbidden::VI),
            MoveId::VIIStar => self.forbidden.contains(&Forbidden::VII),
            MoveId::VIIIStar => self.forbidden.contains(&Forbidden::VIII),
            _ => true,
        }
    }
}

// ---------------------------------------------------------------------------
// insertion plans

#[derive(Clone, Debug)]
struct Block {
    edge: usize,
    gap: usize,
    key: u8,
    /// (label slot, role, sign)
    items: Vec<(usize, Role, Sign)>,
}

#[derive(Clone, Debug)]
struct Plan {
    slots: usize,
    blocks: Vec<Block>,
    /// New rotation of a vertex in the larger code.
    rotation: Option<(String, Vec<HalfEdge>)>,
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn edge_idx(code: &VsgCode, id: &str) -> Result<usize> {
    code.edge_index(id)
        .ok_or_else(|| precondition(format!("unknown edge {id}")))
}

fn vertex_rotation<'a>(code: &'a VsgCode, v: &str) -> Result<&'a [HalfEdge]> {
    if !code.vertices.iter().any(|x| x == v) {
        return Err(precondition(format!("unknown vertex {v}")));
    }
    Ok(code.rotation(v))
}

/// The rotation read from `start`.
fn legs_from(rotation: &[HalfEdge], start: &HalfEdge) -> Result<Vec<HalfEdge>> {
    let k = rotation
        .iter()
        .position(|h| h == start)
        .ok_or_else(|| precondition(format!("{}:{:?} is not a leg here", start.edge, start.end)))?;
    let mut legs = rotation.to_vec();
    legs.rotate_left(k);
    Ok(legs)
}

/// Block placing `items` next to the vertex end of `leg`, in edge order.
fn leg_block(code: &VsgCode, lens: &[usize], leg: &HalfEdge, mut outward: Vec<(usize, Role, Sign)>) -> Result<Block> {
    let e = edge_idx(code, &leg.edge)?;
    Ok(match leg.end {
        crate::code::End::Tail => Block {
            edge: e,
            gap: 0,
            key: 0,
            items: outward,
        },
        crate::code::End::Head => {
            outward.reverse();
            Block {
                edge: e,
                gap: lens[e],
                key: 2,
                items: outward,
            }
        }
    })
}

/// The plan of a crossing-creating site, against the smaller code's
/// topology `code` (edges, rotations) and passage lengths `lens`.
fn build_plan(site: &MoveSite, code: &VsgCode, lens: &[usize]) -> Result<Plan> {
    let gap_ok = |e: usize, g: usize| -> Result<()> {
        if g > lens[e] {
            Err(precondition(format!("gap {g} out of range on {}", code.edges[e].id)))
        } else {
            Ok(())
        }
    };
    match site {
        MoveSite::I {
            edge,
            gap,
            first,
            sign,
            ..
        } => {
            let e = edge_idx(code, edge)?;
            gap_ok(e, *gap)?;
            Ok(Plan {
                slots: 1,
                blocks: vec![Block {
                    edge: e,
                    gap: *gap,
                    key: 1,
                    items: vec![(0, *first, *sign), (0, first.flip(), *sign)],
                }],
                rotation: None,
            })
        }
        MoveSite::II {
            over_edge,
            over_gap,
            under_edge,
            under_gap,
            reversed,
            sign,
            under_first,
            ..
        } => {
            let eo = edge_idx(code, over_edge)?;
            let eu = edge_idx(code, under_edge)?;
            gap_ok(eo, *over_gap)?;
            gap_ok(eu, *under_gap)?;
            let s = *sign;
            let under = if *reversed {
                vec![(1, Role::Under, s.flip()), (0, Role::Under, s)]
            } else {
                vec![(0, Role::Under, s), (1, Role::Under, s.flip())]
            };
            Ok(Plan {
                slots: 2,
                blocks: vec![
                    Block {
                        edge: eo,
                        gap: *over_gap,
                        key: *under_first as u8,
                        items: vec![(0, Role::Over, s), (1, Role::Over, s.flip())],
                    },
                    Block {
                        edge: eu,
                        gap: *under_gap,
                        key: !*under_first as u8,
                        items: under,
                    },
                ],
                rotation: None,
            })
        }
        MoveSite::IV {
            vertex,
            edge,
            gap,
            over,
            clockwise,
            start,
            ..
        } => {
            let e = edge_idx(code, edge)?;
            gap_ok(e, *gap)?;
            let legs = legs_from(vertex_rotation(code, vertex)?, start)?;
            let eps_over = if *over { 1 } else { -1 };
            let eps_order = if *clockwise { 1 } else { -1 };
            let strand_role = if *over { Role::Over } else { Role::Under };
            let mut blocks = Vec::new();
            let mut strand = Vec::new();
            for (i, leg) in legs.iter().enumerate() {
                let s = Sign::from_int(eps_over * eps_order * leg.end.outward());
                strand.push((i, strand_role, s));
                blocks.push(leg_block(code, lens, leg, vec![(i, strand_role.flip(), s)])?);
            }
            if *clockwise {
                strand.reverse();
            }
            blocks.push(Block {
                edge: e,
                gap: *gap,
                key: 1,
                items: strand,
            });
            Ok(Plan {
                slots: legs.len(),
                blocks,
                rotation: None,
            })
        }
        MoveSite::V {
            vertex, start, twist, ..
        } => {
            if twist.abs() != 1 {
                return Err(precondition("twist must be +1 or -1"));
            }
            let legs = legs_from(vertex_rotation(code, vertex)?, start)?;
            let d = legs.len();
            let mut slot = BTreeMap::new();
            for a in 0..d {
                for b in a + 1..d {
                    let n = slot.len();
                    slot.insert((a, b), n);
                }
            }
            let mut blocks = Vec::new();
            for k in 0..d {
                let mut outward = Vec::new();
                for m in (0..d).filter(|&m| m != k) {
                    let (a, b) = (k.min(m), k.max(m));
                    let sign = Sign::from_int(
                        *twist as i32 * legs[a].end.outward() * legs[b].end.outward(),
                    );
                    let over_leg = if *twist > 0 { a } else { b };
                    let role = if k == over_leg { Role::Over } else { Role::Under };
                    outward.push((slot[&(a, b)], role, sign));
                }
                blocks.push(leg_block(code, lens, &legs[k], outward)?);
            }
            let mut rotation = legs.clone();
            rotation.reverse();
            Ok(Plan {
                slots: slot.len(),
                blocks,
                rotation: Some((vertex.clone(), rotation)),
            })
        }
        MoveSite::VI {
            vertex,
            leg,
            first_over,
            ..
        } => {
            let legs = legs_from(vertex_rotation(code, vertex)?, leg)?;
            if legs.len() < 2 {
                return Err(precondition("move VI needs two legs"));
            }
            let (g0, g1) = (&legs[0], &legs[1]);
            let sign = Sign::from_int(
                if *first_over { 1 } else { -1 } * g0.end.outward() * g1.end.outward(),
            );
            let r0 = if *first_over { Role::Over } else { Role::Under };
            let blocks = vec![
                leg_block(code, lens, g0, vec![(0, r0, sign)])?,
                leg_block(code, lens, g1, vec![(0, r0.flip(), sign)])?,
            ];
            let mut rotation = legs.clone();
            rotation.swap(0, 1);
            Ok(Plan {
                slots: 1,
                blocks,
                rotation: Some((vertex.clone(), rotation)),
            })
        }
        _ => Err(precondition("move has no insertion plan")),
    }
}

/// Blocks of each edge in insertion order.
fn ordered_blocks(plan: &Plan, edge_count: usize) -> Vec<Vec<&Block>> {
    let mut per_edge: Vec<Vec<&Block>> = vec![Vec::new(); edge_count];
    for b in &plan.blocks {
        per_edge[b.edge].push(b);
    }
    for v in &mut per_edge {
        v.sort_by_key(|b| (b.gap, b.key));
    }
    per_edge
}

/// Where each planned passage lands in the larger code.
fn plan_positions(plan: &Plan, lens: &[usize]) -> Vec<(Pos, usize, Role, Sign)> {
    let mut out = Vec::new();
    for (e, blocks) in ordered_blocks(plan, lens.len()).into_iter().enumerate() {
        let mut shift = 0;
        for b in blocks {
            for (k, &(slot, role, sign)) in b.items.iter().enumerate() {
                out.push((
                    Pos {
                        edge: e,
                        index: b.gap + shift + k,
                    },
                    slot,
                    role,
                    sign,
                ));
            }
            shift += b.items.len();
        }
    }
    out
}

fn lens_of(code: &VsgCode) -> Vec<usize> {
    (0..code.edges.len()).map(|i| code.passages_of(i).len()).collect()
}

fn insert_plan(code: &VsgCode, plan: &Plan, labels: &[String]) -> VsgCode {
    let mut out = code.clone();
    for (e, blocks) in ordered_blocks(plan, code.edges.len()).into_iter().enumerate() {
        if blocks.is_empty() {
            continue;
        }
        let old = code.passages_of(e);
        let mut seq = Vec::with_capacity(old.len() + blocks.len());
        let mut next = 0;
        for b in blocks {
            seq.extend_from_slice(&old[next..b.gap]);
            next = b.gap;
            for &(slot, role, sign) in &b.items {
                seq.push(Passage::new(labels[slot].clone(), role, sign));
            }
        }
        seq.extend_from_slice(&old[next..]);
        *out.passages_of_mut(e) = seq;
    }
    if let Some((v, rot)) = &plan.rotation {
        out.rotations.insert(v.clone(), rot.clone());
    }
    out
}

fn insert(code: &VsgCode, site: &MoveSite) -> Result<(VsgCode, Vec<String>)> {
    let plan = build_plan(site, code, &lens_of(code))?;
    let labels = match site.labels() {
        Some(l) => {
            let used: BTreeSet<String> = code.crossing_labels().into_iter().collect();
            let distinct: BTreeSet<&String> = l.iter().collect();
            if l.len() != plan.slots || distinct.len() != l.len() {
                return Err(precondition(format!("site needs {} distinct labels", plan.slots)));
            }
            if let Some(bad) = l.iter().find(|x| used.contains(*x)) {
                return Err(precondition(format!("label {bad} already in use")));
            }
            l.clone()
        }
        None => code.fresh_labels(plan.slots),
    };
    Ok((insert_plan(code, &plan, &labels), labels))
}

/// The rotation the smaller code has at the site's vertex, given the larger
/// code's rotation.
fn reduced_rotation(site: &MoveSite, code: &VsgCode) -> Result<Option<(String, Vec<HalfEdge>)>> {
    Ok(match site {
        MoveSite::V { vertex, .. } => {
            let mut r = vertex_rotation(code, vertex)?.to_vec();
            r.reverse();
            Some((vertex.clone(), r))
        }
        MoveSite::VI { vertex, leg, .. } => {
            // the larger code has the leg right after its partner
            let r = vertex_rotation(code, vertex)?;
            let k = r
                .iter()
                .position(|h| h == leg)
                .ok_or_else(|| precondition("leg not at vertex"))?;
            let mut r = r.to_vec();
            let d = r.len();
            if d < 2 {
                return Err(precondition("move VI needs two legs"));
            }
            r.swap(k, (k + d - 1) % d);
            Some((vertex.clone(), r))
        }
        _ => None,
    })
}

fn reduce(code: &VsgCode, site: &MoveSite) -> Result<(VsgCode, Vec<String>)> {
    let mut topo = code.clone();
    if let Some((v, r)) = reduced_rotation(site, code)? {
        topo.rotations.insert(v, r);
    }
    let lens = lens_of(code);
    let probe = build_plan(site, &topo, &vec![usize::MAX / 2; lens.len()])
        .or_else(|_| build_plan(site, &topo, &lens))?;
    let mut reduced_lens = lens.clone();
    for b in &probe.blocks {
        reduced_lens[b.edge] = reduced_lens[b.edge]
            .checked_sub(b.items.len())
            .ok_or_else(|| precondition("not enough passages for this reduction"))?;
    }
    let plan = build_plan(site, &topo, &reduced_lens)?;
    let mut labels: Vec<Option<String>> = vec![None; plan.slots];
    let mut remove: BTreeSet<Pos> = BTreeSet::new();
    for (pos, slot, role, sign) in plan_positions(&plan, &reduced_lens) {
        let p = code
            .passages_of(pos.edge)
            .get(pos.index)
            .ok_or_else(|| precondition("planned passage out of range"))?;
        if p.role != role || p.sign != sign {
            return Err(precondition("passage decorations do not match the move"));
        }
        match &labels[slot] {
            None => labels[slot] = Some(p.crossing.clone()),
            Some(l) if *l == p.crossing => {}
            Some(_) => return Err(precondition("crossings do not pair as the move requires")),
        }
        remove.insert(pos);
    }
    let labels: Vec<String> = labels.into_iter().map(|l| l.expect("every slot used")).collect();
    if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
        return Err(precondition("crossings do not pair as the move requires"));
    }
    let mut reduced = topo;
    for e in 0..code.edges.len() {
        let seq: Vec<Passage> = code
            .passages_of(e)
            .iter()
            .enumerate()
            .filter(|(k, _)| !remove.contains(&Pos { edge: e, index: *k }))
            .map(|(_, p)| p.clone())
            .collect();
        *reduced.passages_of_mut(e) = seq;
    }
    if insert_plan(&reduced, &plan, &labels) != *code {
        return Err(precondition("code does not contain this move's pattern"));
    }
    Ok((reduced, labels))
}

// ---------------------------------------------------------------------------
// self-inverse rewrites

struct Triangle {
    /// (edge, first index) of each pair.
    pairs: [(usize, usize); 3],
}

fn pair_at(code: &VsgCode, at: &PairAt) -> Result<(usize, usize, [Passage; 2])> {
    let e = edge_idx(code, &at.edge)?;
    let seq = code.passages_of(e);
    if at.index + 1 >= seq.len() {
        return Err(precondition("pair out of range"));
    }
    Ok((e, at.index, [seq[at.index].clone(), seq[at.index + 1].clone()]))
}

fn check_triangle(code: &VsgCode, top: &PairAt, middle: &PairAt, bottom: &PairAt) -> Result<Triangle> {
    let (te, ti, t) = pair_at(code, top)?;
    let (me, mi, m) = pair_at(code, middle)?;
    let (be, bi, b) = pair_at(code, bottom)?;
    let bad = || precondition("not a triangle");
    if t.iter().any(|p| p.role != Role::Over) || b.iter().any(|p| p.role != Role::Under) {
        return Err(bad());
    }
    let labels = |pair: &[Passage; 2]| [pair[0].crossing.clone(), pair[1].crossing.clone()];
    let (tl, ml, bl) = (labels(&t), labels(&m), labels(&b));
    let common = |x: &[String; 2], y: &[String; 2]| -> Option<String> {
        x.iter().find(|l| y.contains(l)).cloned()
    };
    let a = common(&tl, &ml).ok_or_else(bad)?;
    let bb = common(&tl, &bl).ok_or_else(bad)?;
    let c = common(&ml, &bl).ok_or_else(bad)?;
    if a == bb || a == c || bb == c {
        return Err(bad());
    }
    let pos_in = |pair: &[Passage; 2], l: &str| pair.iter().position(|p| p.crossing == l).unwrap();
    // the middle strand is under at a and over at c
    if m[pos_in(&m, &a)].role != Role::Under || m[pos_in(&m, &c)].role != Role::Over {
        return Err(bad());
    }
    let order = |pair: &[Passage; 2], first: &str| if pair[0].crossing == first { 1 } else { -1 };
    let tau = order(&t, &a);
    let mu = order(&m, &a);
    let beta = order(&b, &bb);
    let sign_of = |l: &str| {
        t.iter()
            .chain(m.iter())
            .chain(b.iter())
            .find(|p| p.crossing == l)
            .unwrap()
            .sign
            .value()
    };
    let (sa, sb, sc) = (sign_of(&a), sign_of(&bb), sign_of(&c));
    let o = sa * sb * sc;
    if sa != tau * mu * o || sb != tau * beta * o {
        return Err(precondition("triangle signs are not realizable"));
    }
    Ok(Triangle {
        pairs: [(te, ti), (me, mi), (be, bi)],
    })
}

fn rotation_pos(code: &VsgCode, vertex: &str, leg: &HalfEdge) -> Result<(Vec<HalfEdge>, usize)> {
    let r = vertex_rotation(code, vertex)?.to_vec();
    let k = r
        .iter()
        .position(|h| h == leg)
        .ok_or_else(|| precondition("leg not at vertex"))?;
    Ok((r, k))
}

// ---------------------------------------------------------------------------
// public operations

/// Applies `site`, returning the new code and the site that undoes it.
pub fn apply_move_with_inverse(
    code: &VsgCode,
    site: &MoveSite,
    moveset: &MoveSet,
) -> Result<(VsgCode, MoveSite)> {
    if !moveset.allows(site.id()) {
        return Err(Error::Policy(site.id().to_string()));
    }
    match site {
        MoveSite::III { top, middle, bottom } => {
            let tri = check_triangle(code, top, middle, bottom)?;
            let mut out = code.clone();
            for (e, i) in tri.pairs {
                out.passages_of_mut(e).swap(i, i + 1);
            }
            Ok((out, site.clone()))
        }
        MoveSite::VIStar { vertex } => {
            let mut r = vertex_rotation(code, vertex)?.to_vec();
            r.reverse();
            let mut out = code.clone();
            out.rotations.insert(vertex.clone(), r);
            Ok((out, site.clone()))
        }
        MoveSite::VIIStar { vertex, leg } => {
            let (mut r, k) = rotation_pos(code, vertex, leg)?;
            let d = r.len();
            if d < 2 {
                return Err(precondition("transposition needs two legs"));
            }
            r.swap(k, (k + 1) % d);
            let inverse = MoveSite::VIIStar {
                vertex: vertex.clone(),
                leg: r[k].clone(),
            };
            let mut out = code.clone();
            out.rotations.insert(vertex.clone(), r);
            Ok((out, inverse))
        }
        MoveSite::VIIIStar { edge, index } => {
            let e = edge_idx(code, edge)?;
            if index + 1 >= code.passages_of(e).len() {
                return Err(precondition("passage index out of range"));
            }
            let mut out = code.clone();
            out.passages_of_mut(e).swap(*index, index + 1);
            Ok((out, site.clone()))
        }
        _ => match site.direction() {
            Direction::Apply => {
                let (out, _) = insert(code, site)?;
                Ok((out, site.flipped(None)))
            }
            Direction::Inverse => {
                let (out, labels) = reduce(code, site)?;
                Ok((out, site.flipped(Some(labels))))
            }
        },
    }
}

pub fn apply_move(code: &VsgCode, site: &MoveSite, moveset: &MoveSet) -> Result<VsgCode> {
    apply_move_with_inverse(code, site, moveset).map(|(c, _)| c)
}

/// Crossings a site adds (positive) or removes (negative).
pub fn crossing_delta(code: &VsgCode, site: &MoveSite) -> i64 {
    let sign = if site.is_reduction() { -1 } else { 1 };
    let degree = |v: &str| code.rotation(v).len() as i64;
    sign * match site {
        MoveSite::I { .. } => 1,
        MoveSite::II { .. } => 2,
        MoveSite::IV { vertex, .. } => degree(vertex),
        MoveSite::V { vertex, .. } => degree(vertex) * (degree(vertex) - 1) / 2,
        MoveSite::VI { .. } => 1,
        _ => 0,
    }
}

/// Options bounding the finite family of insertion sites.
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Skip insertions that would exceed this many crossings.
    pub max_crossings: usize,
    /// Include insertion sites at all.
    pub insertions: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            max_crossings: usize::MAX,
            insertions: true,
        }
    }
}

/// All reduction and rewrite sites of `code` together with a finite
/// deterministic set of insertion sites (every gap, every parameter choice).
pub fn enumerate_moves(code: &VsgCode, moveset: &MoveSet) -> Vec<MoveSite> {
    enumerate_moves_with(code, moveset, EnumerateOptions::default())
}

pub fn enumerate_moves_with(code: &VsgCode, moveset: &MoveSet, opts: EnumerateOptions) -> Vec<MoveSite> {
    let mut out = Vec::new();
    reduction_sites(code, moveset, &mut out);
    rewrite_sites(code, moveset, &mut out);
    if opts.insertions {
        let room = opts.max_crossings.saturating_sub(code.crossing_count());
        insertion_sites(code, moveset, room, &mut out);
    }
    out
}

fn reduction_sites(code: &VsgCode, moveset: &MoveSet, out: &mut Vec<MoveSite>) {
    let found = |site: MoveSite, out: &mut Vec<MoveSite>| {
        if reduce(code, &site).is_ok() && !out.contains(&site) {
            out.push(site);
        }
    };
    let positions = code.crossing_positions();
    // I
    for (e, edge) in code.edges.iter().enumerate() {
        let seq = code.passages_of(e);
        for i in 0..seq.len().saturating_sub(1) {
            if seq[i].crossing == seq[i + 1].crossing {
                found(
                    MoveSite::I {
                        direction: Direction::Inverse,
                        edge: edge.id.clone(),
                        gap: i,
                        first: seq[i].role,
                        sign: seq[i].sign,
                        labels: None,
                    },
                    out,
                );
            }
        }
    }
    // II
    for (e, edge) in code.edges.iter().enumerate() {
        let seq = code.passages_of(e);
        for i in 0..seq.len().saturating_sub(1) {
            let (c, d) = (&seq[i], &seq[i + 1]);
            if c.role != Role::Over || d.role != Role::Over || c.sign == d.sign || c.crossing == d.crossing {
                continue;
            }
            let (uc, ud) = (positions[&c.crossing].under, positions[&d.crossing].under);
            if uc.edge != ud.edge || uc.index.abs_diff(ud.index) != 1 {
                continue;
            }
            let reversed = ud.index < uc.index;
            let j = uc.index.min(ud.index);
            let (over_gap, under_gap, under_first) = if uc.edge != e {
                (i, j, false)
            } else if i < j {
                (i, j - 2, false)
            } else {
                (i - 2, j, i - 2 == j)
            };
            found(
                MoveSite::II {
                    direction: Direction::Inverse,
                    over_edge: edge.id.clone(),
                    over_gap,
                    under_edge: code.edges[uc.edge].id.clone(),
                    under_gap,
                    reversed,
                    sign: c.sign,
                    under_first,
                    labels: None,
                },
                out,
            );
        }
    }
    // IV, V, VI
    for v in &code.vertices {
        let rot = code.rotation(v).to_vec();
        let d = rot.len();
        if d == 0 {
            continue;
        }
        for start in &rot {
            for twist in [1i8, -1].into_iter().filter(|_| d >= 2) {
                found(
                    MoveSite::V {
                        direction: Direction::Inverse,
                        vertex: v.clone(),
                        start: start.clone(),
                        twist,
                        labels: None,
                    },
                    out,
                );
            }
            if moveset.pliable && d >= 2 {
                for first_over in [true, false] {
                    found(
                        MoveSite::VI {
                            direction: Direction::Inverse,
                            vertex: v.clone(),
                            leg: start.clone(),
                            first_over,
                            labels: None,
                        },
                        out,
                    );
                }
            }
        }
        // a strand block of d passages of one role whose partners sit next to v
        for (e, edge) in code.edges.iter().enumerate() {
            let seq = code.passages_of(e);
            if seq.len() < 2 * d.min(seq.len()) && seq.len() < d {
                continue;
            }
            for gap in 0..=seq.len().saturating_sub(d) {
                for over in [true, false] {
                    for clockwise in [false, true] {
                        for start in &rot {
                            found(
                                MoveSite::IV {
                                    direction: Direction::Inverse,
                                    vertex: v.clone(),
                                    edge: edge.id.clone(),
                                    gap,
                                    over,
                                    clockwise,
                                    start: start.clone(),
                                    labels: None,
                                },
                                out,
                            );
                        }
                    }
                }
            }
        }
    }
    out.retain(|s| moveset.allows(s.id()));
}

fn rewrite_sites(code: &VsgCode, moveset: &MoveSet, out: &mut Vec<MoveSite>) {
    let positions = code.crossing_positions();
    let at = |p: Pos| PairAt {
        edge: code.edges[p.edge].id.clone(),
        index: p.index,
    };
    // pairs containing passage `p` (as first or second element)
    let pairs_with = |p: Pos| -> Vec<Pos> {
        let len = code.passages_of(p.edge).len();
        let mut v = Vec::new();
        if p.index > 0 {
            v.push(Pos { edge: p.edge, index: p.index - 1 });
        }
        if p.index + 1 < len {
            v.push(p);
        }
        v
    };
    let mut triangles = BTreeSet::new();
    for (e, _) in code.edges.iter().enumerate() {
        let seq = code.passages_of(e);
        for i in 0..seq.len().saturating_sub(1) {
            if seq[i].role != Role::Over || seq[i + 1].role != Role::Over {
                continue;
            }
            let top = Pos { edge: e, index: i };
            for a in [&seq[i].crossing, &seq[i + 1].crossing] {
                for middle in pairs_with(positions[a].under) {
                    for b in [&seq[i].crossing, &seq[i + 1].crossing].into_iter().filter(|b| *b != a) {
                        for bottom in pairs_with(positions[b].under) {
                            let site = MoveSite::III {
                                top: at(top),
                                middle: at(middle),
                                bottom: at(bottom),
                            };
                            if let MoveSite::III { top, middle, bottom } = &site {
                                if check_triangle(code, top, middle, bottom).is_ok() {
                                    triangles.insert(site.clone());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.extend(triangles);
    for v in &code.vertices {
        let rot = code.rotation(v);
        if moveset.allows(MoveId::VIStar) && rot.len() >= 3 {
            out.push(MoveSite::VIStar { vertex: v.clone() });
        }
        if moveset.allows(MoveId::VIIStar) && rot.len() >= 3 {
            for leg in rot {
                out.push(MoveSite::VIIStar {
                    vertex: v.clone(),
                    leg: leg.clone(),
                });
            }
        }
    }
    if moveset.allows(MoveId::VIIIStar) {
        for (e, edge) in code.edges.iter().enumerate() {
            for index in 0..code.passages_of(e).len().saturating_sub(1) {
                out.push(MoveSite::VIIIStar {
                    edge: edge.id.clone(),
                    index,
                });
            }
        }
    }
}

fn insertion_sites(code: &VsgCode, moveset: &MoveSet, room: usize, out: &mut Vec<MoveSite>) {
    let gaps: Vec<(String, usize)> = code
        .edges
        .iter()
        .enumerate()
        .flat_map(|(e, edge)| (0..=code.passages_of(e).len()).map(move |g| (edge.id.clone(), g)))
        .collect();
    if room >= 1 {
        for (edge, gap) in &gaps {
            for first in [Role::Over, Role::Under] {
                for sign in [Sign::Pos, Sign::Neg] {
                    out.push(MoveSite::I {
                        direction: Direction::Apply,
                        edge: edge.clone(),
                        gap: *gap,
                        first,
                        sign,
                        labels: None,
                    });
                }
            }
        }
    }
    if room >= 2 {
        for (oe, og) in &gaps {
            for (ue, ug) in &gaps {
                let same = oe == ue && og == ug;
                for reversed in [false, true] {
                    for sign in [Sign::Pos, Sign::Neg] {
                        for under_first in [false, true] {
                            if under_first && !same {
                                continue;
                            }
                            out.push(MoveSite::II {
                                direction: Direction::Apply,
                                over_edge: oe.clone(),
                                over_gap: *og,
                                under_edge: ue.clone(),
                                under_gap: *ug,
                                reversed,
                                sign,
                                under_first,
                                labels: None,
                            });
                        }
                    }
                }
            }
        }
    }
    for v in &code.vertices {
        let rot = code.rotation(v).to_vec();
        let d = rot.len();
        if d == 0 {
            continue;
        }
        if room >= d {
            for (edge, gap) in &gaps {
                for over in [true, false] {
                    for clockwise in [false, true] {
                        for start in &rot {
                            out.push(MoveSite::IV {
                                direction: Direction::Apply,
                                vertex: v.clone(),
                                edge: edge.clone(),
                                gap: *gap,
                                over,
                                clockwise,
                                start: start.clone(),
                                labels: None,
                            });
                        }
                    }
                }
            }
        }
        if d >= 2 && room >= d * (d - 1) / 2 {
            for start in &rot {
                for twist in [1i8, -1] {
                    out.push(MoveSite::V {
                        direction: Direction::Apply,
                        vertex: v.clone(),
                        start: start.clone(),
                        twist,
                        labels: None,
                    });
                }
            }
        }
        if moveset.pliable && d >= 2 && room >= 1 {
            for leg in &rot {
                for first_over in [true, false] {
                    out.push(MoveSite::VI {
                        direction: Direction::Apply,
                        vertex: v.clone(),
                        leg: leg.clone(),
                        first_over,
                        labels: None,
                    });
                }
            }
        }
    }
}
