use std::collections::{HashMap, HashSet};

use vsg_core::links::{Replacement, VirtualLink};
use vsg_core::quandle::FiniteVQS;
use vsg_core::realize::{GadgetKind, PlanarDiagram};
use vsg_core::{LaurentPoly, Role, Sign, VsgCode};

/// Counts colorings by trying every assignment of elements to the pieces of
/// the realized diagram. Pieces run between consecutive breaks of a chord:
/// its two ends and every other chord it meets. Where chord j crosses chord
/// i from right to left, i applies f and j applies f⁻¹.
pub fn quandle_brute_force(d: &PlanarDiagram, s: &FiniteVQS) -> u64 {
    let n = s.elements.len();
    let finv: Vec<usize> = (0..n).map(|x| s.f.iter().position(|&y| y == x).unwrap()).collect();
    let chords: Vec<((f64, f64), (f64, f64))> = d.arcs.iter().map(|a| (a.points[1].to_f64(), a.points[2].to_f64())).collect();
    // per chord: (parameter, other chord, applies f)
    let mut meets: Vec<Vec<(f64, bool)>> = vec![Vec::new(); chords.len()];
    for i in 0..chords.len() {
        for j in 0..chords.len() {
            if i == j {
                continue;
            }
            let ((ax, ay), (bx, by)) = chords[i];
            let ((cx, cy), (dx, dy)) = chords[j];
            let (px, py, qx, qy) = (bx - ax, by - ay, dx - cx, dy - cy);
            let den = px * qy - py * qx;
            if den.abs() < 1e-12 {
                continue;
            }
            let t = ((cx - ax) * qy - (cy - ay) * qx) / den;
            let u = ((cx - ax) * py - (cy - ay) * px) / den;
            if t > 1e-9 && t < 1.0 - 1e-9 && u > 1e-9 && u < 1.0 - 1e-9 {
                meets[i].push((t, den > 0.0));
            }
        }
    }
    let mut first_piece = Vec::new();
    let mut total = 0;
    for m in &mut meets {
        m.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        first_piece.push(total);
        total += m.len() + 1;
    }
    let last_piece = |k: usize| first_piece[k] + meets[k].len();
    assert!(total <= 12, "oracle diagram too large: {total} pieces");

    let gadget: HashMap<&str, &GadgetKind> = d.gadgets.iter().map(|g| (g.id.as_str(), &g.kind)).collect();
    let mut vertex_in: HashMap<&str, Vec<usize>> = HashMap::new();
    let mut vertex_out: HashMap<&str, Vec<usize>> = HashMap::new();
    let mut crossing_ends: HashMap<&str, HashMap<String, usize>> = HashMap::new();
    for (k, a) in d.arcs.iter().enumerate() {
        for (port, leaving) in [(&a.from, true), (&a.to, false)] {
            let piece = if leaving { first_piece[k] } else { last_piece(k) };
            match gadget[port.gadget.as_str()] {
                GadgetKind::Vertex { .. } => {
                    let side = if leaving { &mut vertex_out } else { &mut vertex_in };
                    side.entry(port.gadget.as_str()).or_default().push(piece);
                }
                GadgetKind::ClassicalCrossing { ends, .. } => {
                    crossing_ends.entry(port.gadget.as_str()).or_default().insert(ends[port.slot].clone(), piece);
                }
                GadgetKind::VirtualCrossing { .. } => unreachable!(),
            }
        }
    }
    let mut count = 0;
    let mut labels = vec![0usize; total];
    for code in 0..n.pow(total as u32) {
        for (k, l) in labels.iter_mut().enumerate() {
            *l = code / n.pow(k as u32) % n;
        }
        let virtual_ok = meets.iter().enumerate().all(|(k, m)| {
            m.iter().enumerate().all(|(r, &(_, forward))| {
                let (before, after) = (labels[first_piece[k] + r], labels[first_piece[k] + r + 1]);
                after == if forward { s.f[before] } else { finv[before] }
            })
        });
        if !virtual_ok {
            continue;
        }
        let crossings_ok = crossing_ends.iter().all(|(id, e)| {
            let GadgetKind::ClassicalCrossing { sign, .. } = gadget[id] else { unreachable!() };
            let over = labels[e["over-in"]];
            let b = if *sign == Sign::Pos { over } else { s.bar[over] };
            labels[e["over-out"]] == over && labels[e["under-out"]] == s.op[labels[e["under-in"]]][b]
        });
        if !crossings_ok {
            continue;
        }
        let vertices_ok = d.gadgets.iter().all(|g| {
            let ins = vertex_in.get(g.id.as_str()).map(Vec::as_slice).unwrap_or(&[]);
            let outs = vertex_out.get(g.id.as_str()).map(Vec::as_slice).unwrap_or(&[]);
            (0..n).any(|a| ins.iter().all(|&p| labels[p] == a) && outs.iter().all(|&p| labels[p] == s.bar[a]))
        });
        count += vertices_ok as u64;
    }
    count
}

/// Ordinary quandle colorings of a one-loop code read from its Gauss word:
/// arcs run from one under-passage to the next, virtual crossings ignored.
pub fn gauss_colorings(code: &VsgCode, s: &FiniteVQS) -> u64 {
    let word = &code.passages["e1"];
    let unders: Vec<usize> = (0..word.len()).filter(|&i| word[i].role == Role::Under).collect();
    let n = s.elements.len();
    if unders.is_empty() {
        return n as u64;
    }
    // arc k starts just after the k-th under-passage
    let arc_at = |i: usize| unders.iter().rposition(|&u| u < i).unwrap_or(unders.len() - 1);
    let mut count = 0;
    for c in 0..n.pow(unders.len() as u32) {
        let label = |k: usize| c / n.pow(k as u32) % n;
        let ok = unders.iter().enumerate().all(|(k, &u)| {
            let p = &word[u];
            let over = (0..word.len()).find(|&i| word[i].crossing == p.crossing && word[i].role == Role::Over).unwrap();
            let before = if k == 0 { unders.len() - 1 } else { k - 1 };
            label(k) == s.op[label(before)][label(arc_at(over))]
        });
        count += ok as u64;
    }
    count
}

/// Closed-component and surviving-crossing counts for one choice, found by
/// grouping edges joined at vertices: a group is closed when every end of
/// its edges is joined.
pub fn tracing_oracle(code: &VsgCode, choice: &[Replacement]) -> (usize, usize) {
    let n = code.edges.len();
    let index: HashMap<&str, usize> = code.edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
    let mut group: Vec<usize> = (0..n).collect();
    fn root(g: &mut Vec<usize>, x: usize) -> usize {
        if g[x] == x {
            x
        } else {
            let r = root(g, g[x]);
            g[x] = r;
            r
        }
    }
    let mut joined_ends = vec![0; n];
    for r in choice {
        let (a, b) = (index[r.pair[0].edge.as_str()], index[r.pair[1].edge.as_str()]);
        joined_ends[a] += 1;
        joined_ends[b] += 1;
        let (ra, rb) = (root(&mut group, a), root(&mut group, b));
        group[ra] = rb;
    }
    let mut open = vec![false; n];
    for e in 0..n {
        let r = root(&mut group, e);
        if joined_ends[e] < 2 {
            open[r] = true;
        }
    }
    let closed: Vec<bool> = (0..n).map(|e| !open[root(&mut group, e)]).collect();
    let mut roots: Vec<usize> = (0..n).filter(|&e| closed[e]).map(|e| root(&mut group, e)).collect();
    roots.sort();
    roots.dedup();
    let mut kept = 0;
    for label in code.crossing_labels() {
        let on_closed = code
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| code.passages[&e.id].iter().any(|p| p.crossing == label))
            .all(|(i, _)| closed[i]);
        kept += on_closed as usize;
    }
    (roots.len(), kept)
}

/// Bracket by walking the loops of every state. At a positive crossing the
/// A-smoothing joins under-in to over-out and over-in to under-out; at a
/// negative crossing it is the other pairing.
pub fn bracket_oracle(link: &VirtualLink) -> LaurentPoly {
    // ends: (component, position, is_out)
    type EndId = (usize, usize, bool);
    if link.components.is_empty() {
        return LaurentPoly::one();
    }
    let mut cross: HashMap<&str, Vec<(usize, usize, Role, Sign)>> = HashMap::new();
    for (k, c) in link.components.iter().enumerate() {
        for (i, p) in c.iter().enumerate() {
            cross.entry(&p.crossing).or_default().push((k, i, p.role, p.sign));
        }
    }
    let labels: Vec<&str> = {
        let mut l: Vec<&str> = cross.keys().copied().collect();
        l.sort();
        l
    };
    let delta = LaurentPoly::delta();
    let mut total = LaurentPoly::zero();
    for state in 0..1u32 << labels.len() {
        let mut link_end: HashMap<EndId, EndId> = HashMap::new();
        let mut exponent = 0;
        for (b, label) in labels.iter().enumerate() {
            let ps = &cross[label];
            let (o, u) = if ps[0].2 == Role::Over { (ps[0], ps[1]) } else { (ps[1], ps[0]) };
            let a = state >> b & 1 == 0;
            exponent += if a { 1 } else { -1 };
            let oi = (o.0, o.1, false);
            let oo = (o.0, o.1, true);
            let ui = (u.0, u.1, false);
            let uo = (u.0, u.1, true);
            let oriented = a == (o.3 == Sign::Pos);
            let pairs = if oriented { [(ui, oo), (oi, uo)] } else { [(ui, oi), (uo, oo)] };
            for (x, y) in pairs {
                link_end.insert(x, y);
                link_end.insert(y, x);
            }
        }
        // a loop alternates strand pieces and smoothing arcs
        let along = |(k, i, out): EndId| {
            let len = link.components[k].len();
            if out {
                (k, (i + 1) % len, false)
            } else {
                (k, (i + len - 1) % len, true)
            }
        };
        let mut seen: HashSet<EndId> = HashSet::new();
        let mut loops = link.components.iter().filter(|c| c.is_empty()).count();
        for (k, c) in link.components.iter().enumerate() {
            for i in 0..c.len() {
                for out in [false, true] {
                    let start = (k, i, out);
                    if seen.contains(&start) {
                        continue;
                    }
                    loops += 1;
                    let mut at = start;
                    loop {
                        seen.insert(at);
                        let there = along(at);
                        seen.insert(there);
                        at = link_end[&there];
                        if at == start {
                            break;
                        }
                    }
                }
            }
        }
        total += &delta.pow(loops as u32 - 1).mul_monomial(1, exponent);
    }
    total
}
