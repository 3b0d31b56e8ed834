//! Expanding Reidemeister moves, their virtual counterparts and the detour move.
//!
//! Every move is applied by local surgery on a [`Draft`] and revalidated by
//! `build_diagram`. All of them except [`Move::R1Kink`] preserve the writhe.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::draft::{Draft, Pass};
use crate::diagram::{
    build_diagram, through, ClassicalSite, Diagram, DiagramError, Edge, EdgeId, Port, Site, SiteId,
    Span,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KinkSide {
    /// The strand meets the new crossing on its under-strand first.
    UnderFirst,
    OverFirst,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// One-crossing kink of sign `sign` on `edge`.
    R1Kink {
        edge: EdgeId,
        sign: i32,
        side: KinkSide,
    },
    /// Pushes `over` across `under`, creating two crossings of opposite sign;
    /// `sign` is the sign of the first one met along `over`.
    R2Finger {
        over: EdgeId,
        under: EdgeId,
        sign: i32,
        parallel: bool,
    },
    /// Triangle move on the triangular face with these three corners.
    R3 {
        sites: [SiteId; 3],
    },
    VR1Kink {
        edge: EdgeId,
    },
    VR2Finger {
        first: EdgeId,
        second: EdgeId,
        parallel: bool,
    },
    /// Strips the virtual crossings from the classical-free segment leaving
    /// `start`, then routes it through one new virtual crossing per entry of
    /// `crossings`. Each entry picks the crossed edge by index into the current
    /// edge list (modulo its length) and the direction of that edge.
    DetourRewire {
        start: Port,
        crossings: Vec<(usize, bool)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("port {0} is not an outgoing port of a classical site")]
    BadStart(Port),
    #[error("no non-alternating triangular face on the given sites")]
    NoTriangle,
    #[error("diagram has no classical crossing to anchor a detour")]
    NoClassicalSite,
    #[error("invalid sign {0}")]
    BadSign(i32),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Three classical sites joined pairwise by single edges, forming a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub sites: [SiteId; 3],
    /// Edge indices into `Diagram::edges`.
    pub edges: [usize; 3],
}

fn check_edge(d: &Diagram, id: EdgeId) -> Result<(), MoveError> {
    if d.edges().iter().any(|e| e.id == id) {
        Ok(())
    } else {
        Err(MoveError::UnknownEdge(id))
    }
}

fn check_sign(sign: i32) -> Result<(), MoveError> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(MoveError::BadSign(sign))
    }
}

fn over_pass(site: usize, sign: i32) -> Pass {
    let c = ClassicalSite::with_sign(sign);
    Pass::new(site, c.over_entry_slot, c.over_exit_slot())
}

fn under_pass(site: usize) -> Pass {
    Pass::new(site, 0, 2)
}

pub fn apply_move(d: &Diagram, mv: &Move) -> Result<Diagram, MoveError> {
    match mv {
        Move::R1Kink { edge, sign, side } => {
            check_edge(d, *edge)?;
            check_sign(*sign)?;
            let mut draft = Draft::from_diagram(d);
            let c = draft.add_site(Site::classical(*sign));
            let passes = match side {
                KinkSide::UnderFirst => [under_pass(c), over_pass(c, *sign)],
                KinkSide::OverFirst => [over_pass(c, *sign), under_pass(c)],
            };
            draft.insert_passes(*edge, &passes);
            Ok(draft.finish()?)
        }
        Move::R2Finger {
            over,
            under,
            sign,
            parallel,
        } => {
            check_edge(d, *over)?;
            check_edge(d, *under)?;
            check_sign(*sign)?;
            let mut draft = Draft::from_diagram(d);
            let a = draft.add_site(Site::classical(*sign));
            let b = draft.add_site(Site::classical(-sign));
            let top = [over_pass(a, *sign), over_pass(b, -sign)];
            let bottom = if *parallel {
                [under_pass(a), under_pass(b)]
            } else {
                [under_pass(b), under_pass(a)]
            };
            insert_pair(&mut draft, *over, &top, *under, &bottom);
            Ok(draft.finish()?)
        }
        Move::VR1Kink { edge } => {
            check_edge(d, *edge)?;
            let mut draft = Draft::from_diagram(d);
            let v = draft.add_site(Site::Virtual);
            draft.insert_passes(*edge, &[Pass::new(v, 0, 2), Pass::new(v, 1, 3)]);
            Ok(draft.finish()?)
        }
        Move::VR2Finger {
            first,
            second,
            parallel,
        } => {
            check_edge(d, *first)?;
            check_edge(d, *second)?;
            let mut draft = Draft::from_diagram(d);
            let a = draft.add_site(Site::Virtual);
            let b = draft.add_site(Site::Virtual);
            let top = [Pass::new(a, 0, 2), Pass::new(b, 0, 2)];
            let bottom = if *parallel {
                [Pass::new(a, 1, 3), Pass::new(b, 1, 3)]
            } else {
                [Pass::new(b, 3, 1), Pass::new(a, 3, 1)]
            };
            insert_pair(&mut draft, *first, &top, *second, &bottom);
            Ok(draft.finish()?)
        }
        Move::R3 { sites } => {
            let wanted: BTreeSet<SiteId> = sites.iter().copied().collect();
            let tri = r3_triangles(d)
                .into_iter()
                .find(|t| t.sites.iter().copied().collect::<BTreeSet<_>>() == wanted)
                .ok_or(MoveError::NoTriangle)?;
            Ok(apply_triangle(d, &tri)?)
        }
        Move::DetourRewire { start, crossings } => detour(d, *start, crossings),
    }
}

fn insert_pair(draft: &mut Draft, x: EdgeId, top: &[Pass], y: EdgeId, bottom: &[Pass]) {
    if x == y {
        let all: Vec<Pass> = top.iter().chain(bottom).copied().collect();
        draft.insert_passes(x, &all);
    } else {
        draft.insert_passes(x, top);
        draft.insert_passes(y, bottom);
    }
}

/// All triangular faces whose three corners are classical and whose
/// crossings do not alternate around the triangle.
pub fn r3_triangles(d: &Diagram) -> Vec<Triangle> {
    let ends = |e: &Edge| match e.span {
        Span::Arc { tail, head } => Some((tail, head)),
        Span::Loop => None,
    };
    let classical = |p: Port| !d.site(p.site).is_virtual();
    // Other end of edge `e` seen from port `p`.
    let across = |e: usize, p: Port| {
        let (t, h) = ends(&d.edges()[e]).unwrap();
        if t == p {
            h
        } else {
            t
        }
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (e1, edge) in d.edges().iter().enumerate() {
        let Some((p0, q_in)) = ends(edge) else {
            continue;
        };
        if !classical(p0) || !classical(q_in) || p0.site == q_in.site {
            continue;
        }
        for q_slot in [(q_in.slot + 1) % 4, (q_in.slot + 3) % 4] {
            let q_out = Port {
                site: q_in.site,
                slot: q_slot,
            };
            let e2 = d.edge_at(q_out);
            let r_in = across(e2, q_out);
            if !classical(r_in) || r_in.site == p0.site || r_in.site == q_in.site {
                continue;
            }
            for r_slot in [(r_in.slot + 1) % 4, (r_in.slot + 3) % 4] {
                let r_out = Port {
                    site: r_in.site,
                    slot: r_slot,
                };
                let e3 = d.edge_at(r_out);
                let p_in = across(e3, r_out);
                if p_in.site != p0.site || (p_in.slot + p0.slot) % 2 == 0 {
                    continue;
                }
                let turns = [
                    (q_slot + 4 - q_in.slot) % 4,
                    (r_slot + 4 - r_in.slot) % 4,
                    (p0.slot + 4 - p_in.slot) % 4,
                ];
                if turns[0] != turns[1] || turns[1] != turns[2] {
                    continue;
                }
                // Over-ends per side; alternating means every side has exactly one.
                let overs = [
                    p0.slot % 2 + q_in.slot % 2,
                    q_slot % 2 + r_in.slot % 2,
                    r_slot % 2 + p_in.slot % 2,
                ];
                if overs.iter().all(|&o| o == 1) {
                    continue;
                }
                let mut key = [e1, e2, e3];
                key.sort_unstable();
                if seen.insert(key) {
                    out.push(Triangle {
                        sites: [p0.site, q_in.site, r_in.site],
                        edges: [e1, e2, e3],
                    });
                }
            }
        }
    }
    out
}

/// Reverses the order in which each side's strand meets its two corners.
fn apply_triangle(d: &Diagram, tri: &Triangle) -> Result<Diagram, DiagramError> {
    let mut heads = HashMap::new();
    let mut tails = HashMap::new();
    let mut sides = HashMap::new();
    for &e in &tri.edges {
        let Span::Arc { tail, head } = d.edges()[e].span else {
            unreachable!()
        };
        let x_in = Port {
            site: tail.site,
            slot: through(tail.slot),
        };
        let y_out = Port {
            site: head.site,
            slot: through(head.slot),
        };
        heads.insert(x_in, head);
        tails.insert(y_out, tail);
        sides.insert(
            e,
            Span::Arc {
                tail: y_out,
                head: x_in,
            },
        );
    }
    let edges = d
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| match (sides.get(&i), e.span) {
            (Some(span), _) => Edge {
                id: e.id,
                span: *span,
            },
            (None, Span::Arc { tail, head }) => Edge::arc(
                e.id,
                *tails.get(&tail).unwrap_or(&tail),
                *heads.get(&head).unwrap_or(&head),
            ),
            (None, Span::Loop) => *e,
        })
        .collect();
    build_diagram(d.sites().to_vec(), edges)
}

fn detour(d: &Diagram, start: Port, crossings: &[(usize, bool)]) -> Result<Diagram, MoveError> {
    if d.classical_count() == 0 {
        return Err(MoveError::NoClassicalSite);
    }
    let ok = start.site.0 < d.sites().len()
        && match d.site(start.site) {
            Site::Classical(c) => start.slot == 2 || start.slot == c.over_exit_slot(),
            Site::Virtual => false,
        };
    if !ok {
        return Err(MoveError::BadStart(start));
    }
    let mut virtuals = Vec::new();
    let mut port = start;
    loop {
        let e = d.edge_at(port);
        let head = d.edges()[e].head().unwrap();
        if !d.site(head.site).is_virtual() {
            break;
        }
        if !virtuals.contains(&head.site.0) {
            virtuals.push(head.site.0);
        }
        port = Port {
            site: head.site,
            slot: through(head.slot),
        };
    }
    let mut draft = Draft::from_diagram(d);
    for v in virtuals {
        draft.remove_virtual(v);
    }
    let seg = draft.edges[draft.edge_out_of(start).expect("segment survives")].id;
    let new: Vec<usize> = crossings
        .iter()
        .map(|_| draft.add_site(Site::Virtual))
        .collect();
    let passes: Vec<Pass> = new.iter().map(|&v| Pass::new(v, 0, 2)).collect();
    draft.insert_passes(seg, &passes);
    for (&v, &(pick, forward)) in new.iter().zip(crossings) {
        let id = draft.edges[pick % draft.edges.len()].id;
        let pass = if forward {
            Pass::new(v, 1, 3)
        } else {
            Pass::new(v, 3, 1)
        };
        draft.insert_passes(id, &[pass]);
    }
    Ok(draft.finish()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    R1,
    R2,
    R3,
    VR1,
    VR2,
    Detour,
}

const WEIGHTS: [(Kind, u32); 6] = [
    (Kind::R1, 2),
    (Kind::R2, 2),
    (Kind::R3, 3),
    (Kind::VR1, 1),
    (Kind::VR2, 2),
    (Kind::Detour, 2),
];

const MAX_DRAWS: usize = 50;

fn draw_move(d: &Diagram, rng: &mut ChaCha8Rng) -> Option<Move> {
    let total: u32 = WEIGHTS.iter().map(|w| w.1).sum();
    let mut roll = rng.gen_range(0..total);
    let kind = WEIGHTS
        .iter()
        .find(|(_, w)| {
            if roll < *w {
                true
            } else {
                roll -= w;
                false
            }
        })
        .unwrap()
        .0;
    let ids: Vec<EdgeId> = d.edges().iter().map(|e| e.id).collect();
    let edge = |rng: &mut ChaCha8Rng| ids[rng.gen_range(0..ids.len())];
    let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1 } else { -1 };
    Some(match kind {
        Kind::R1 => Move::R1Kink {
            edge: edge(rng),
            sign: sign(rng),
            side: if rng.gen_bool(0.5) {
                KinkSide::UnderFirst
            } else {
                KinkSide::OverFirst
            },
        },
        Kind::R2 => Move::R2Finger {
            over: edge(rng),
            under: edge(rng),
            sign: sign(rng),
            parallel: rng.gen_bool(0.5),
        },
        Kind::R3 => {
            let tris = r3_triangles(d);
            if tris.is_empty() {
                return None;
            }
            Move::R3 {
                sites: tris[rng.gen_range(0..tris.len())].sites,
            }
        }
        Kind::VR1 => Move::VR1Kink { edge: edge(rng) },
        Kind::VR2 => Move::VR2Finger {
            first: edge(rng),
            second: edge(rng),
            parallel: rng.gen_bool(0.5),
        },
        Kind::Detour => {
            let sites: Vec<(SiteId, ClassicalSite)> =
                d.classical_sites().map(|(id, c)| (id, *c)).collect();
            if sites.is_empty() {
                return None;
            }
            let (site, c) = sites[rng.gen_range(0..sites.len())];
            let slot = if rng.gen_bool(0.5) {
                2
            } else {
                c.over_exit_slot()
            };
            let k = rng.gen_range(0..=3);
            Move::DetourRewire {
                start: Port { site, slot },
                crossings: (0..k)
                    .map(|_| (rng.gen_range(0..usize::MAX >> 1), rng.gen_bool(0.5)))
                    .collect(),
            }
        }
    })
}

/// Applies `n_moves` randomly drawn moves. Inapplicable draws are redrawn, at
/// most 50 times per step, after which the step is skipped.
pub fn random_equivalent(d: &Diagram, n_moves: usize, seed: u64) -> Diagram {
    random_walk(d, n_moves, seed).0
}

/// [`random_equivalent`] together with the moves that were applied.
pub fn random_walk(d: &Diagram, n_moves: usize, seed: u64) -> (Diagram, Vec<Move>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = d.clone();
    let mut applied = Vec::new();
    for _ in 0..n_moves {
        for _ in 0..MAX_DRAWS {
            let Some(mv) = draw_move(&current, &mut rng) else {
                continue;
            };
            if let Ok(next) = apply_move(&current, &mv) {
                current = next;
                applied.push(mv);
                break;
            }
        }
    }
    (current, applied)
}
