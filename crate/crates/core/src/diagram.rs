//! Abstract (position-free) diagram of a code: vertex and crossing nodes
//! joined by edge segments. Virtual crossings never appear here.

use std::collections::HashMap;

use crate::code::{End, Role, Sign, VsgCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingEnd {
    OverIn,
    OverOut,
    UnderIn,
    UnderOut,
}

impl CrossingEnd {
    pub const ALL: [CrossingEnd; 4] = [
        CrossingEnd::OverIn,
        CrossingEnd::OverOut,
        CrossingEnd::UnderIn,
        CrossingEnd::UnderOut,
    ];

    pub fn incoming(role: Role) -> Self {
        match role {
            Role::Over => CrossingEnd::OverIn,
            Role::Under => CrossingEnd::UnderIn,
        }
    }

    pub fn outgoing(role: Role) -> Self {
        match role {
            Role::Over => CrossingEnd::OverOut,
            Role::Under => CrossingEnd::UnderOut,
        }
    }

    pub fn role(self) -> Role {
        match self {
            CrossingEnd::OverIn | CrossingEnd::OverOut => Role::Over,
            _ => Role::Under,
        }
    }

    pub fn is_incoming(self) -> bool {
        matches!(self, CrossingEnd::OverIn | CrossingEnd::UnderIn)
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            CrossingEnd::OverIn => "over-in",
            CrossingEnd::OverOut => "over-out",
            CrossingEnd::UnderIn => "under-in",
            CrossingEnd::UnderOut => "under-out",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == s)
    }

    /// Counterclockwise order of the four ends around a crossing of the
    /// given sign.
    pub fn ccw_order(sign: Sign) -> [CrossingEnd; 4] {
        use CrossingEnd::*;
        match sign {
            Sign::Pos => [OverIn, UnderIn, OverOut, UnderOut],
            Sign::Neg => [OverIn, UnderOut, OverOut, UnderIn],
        }
    }
}

/// The two end pairings of a smoothed crossing. For a positive crossing the
/// A-smoothing is the orientation-respecting one; for a negative crossing the
/// roles of A and B swap.
pub fn smoothing(sign: Sign, a_smoothing: bool) -> [(CrossingEnd, CrossingEnd); 2] {
    use CrossingEnd::*;
    let oriented = [(UnderIn, OverOut), (OverIn, UnderOut)];
    let unoriented = [(UnderIn, OverIn), (UnderOut, OverOut)];
    if a_smoothing == (sign == Sign::Pos) {
        oriented
    } else {
        unoriented
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    /// Slot of a vertex's rotation.
    Vertex { vertex: usize, slot: usize },
    Crossing { crossing: usize, end: CrossingEnd },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub label: String,
    pub sign: Sign,
}

/// A piece of an edge between consecutive ports, oriented tail to head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub edge: usize,
    pub index: usize,
    pub from: Port,
    pub to: Port,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractDiagram {
    pub vertices: Vec<String>,
    pub crossings: Vec<CrossingInfo>,
    pub segments: Vec<Segment>,
}

impl AbstractDiagram {
    /// Builds the diagram of a valid code. Crossings are numbered by first
    /// occurrence; segment order is edge order, then tail to head.
    pub fn from_code(code: &VsgCode) -> Self {
        let vertex_index: HashMap<&str, usize> = code
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut crossing_index: HashMap<&str, usize> = HashMap::new();
        let mut crossings = Vec::new();
        for i in 0..code.edges.len() {
            for p in code.passages_of(i) {
                crossing_index.entry(p.crossing.as_str()).or_insert_with(|| {
                    crossings.push(CrossingInfo {
                        label: p.crossing.clone(),
                        sign: p.sign,
                    });
                    crossings.len() - 1
                });
            }
        }
        let slot_of = |vertex: &str, edge: &str, end: End| -> Port {
            let slot = code
                .rotation(vertex)
                .iter()
                .position(|h| h.edge == edge && h.end == end)
                .expect("validated rotation");
            Port::Vertex {
                vertex: vertex_index[vertex],
                slot,
            }
        };
        let mut segments = Vec::new();
        for (i, e) in code.edges.iter().enumerate() {
            let mut from = slot_of(&e.tail, &e.id, End::Tail);
            for (k, p) in code.passages_of(i).iter().enumerate() {
                let c = crossing_index[p.crossing.as_str()];
                segments.push(Segment {
                    edge: i,
                    index: k,
                    from,
                    to: Port::Crossing {
                        crossing: c,
                        end: CrossingEnd::incoming(p.role),
                    },
                });
                from = Port::Crossing {
                    crossing: c,
                    end: CrossingEnd::outgoing(p.role),
                };
            }
            segments.push(Segment {
                edge: i,
                index: code.passages_of(i).len(),
                from,
                to: slot_of(&e.head, &e.id, End::Head),
            });
        }
        AbstractDiagram {
            vertices: code.vertices.clone(),
            crossings,
            segments,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn segment_counts() {
        let d = AbstractDiagram::from_code(&catalog::theta());
        assert_eq!(d.segments.len(), 3);
        let d = AbstractDiagram::from_code(&catalog::classical_trefoil());
        assert_eq!(d.crossings.len(), 3);
        assert_eq!(d.segments.len(), 7);
    }

    #[test]
    fn smoothing_swaps_with_sign() {
        assert_eq!(smoothing(Sign::Pos, true), smoothing(Sign::Neg, false));
        assert_eq!(smoothing(Sign::Pos, false), smoothing(Sign::Neg, true));
    }
}
