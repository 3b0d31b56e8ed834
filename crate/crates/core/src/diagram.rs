//! Oriented virtual link diagrams as 4-valent combinatorial maps.
//!
//! Every site carries four ports numbered counterclockwise. A classical site
//! has fixed port roles: slot 0 is the incoming under-strand, slot 2 the
//! outgoing under-strand, and the over-strand uses slots 1 and 3. The sign of
//! a classical site is +1 when the over-strand runs 3 -> 1 and -1 when it runs
//! 1 -> 3. Virtual sites are transparent: the strand entering slot `p` leaves
//! through slot `p + 2 (mod 4)`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub(crate) mod draft;

/// Index of a site inside its diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SiteId(pub usize);

impl fmt::Display for SiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Positive edge label.
pub type EdgeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Port {
    pub site: SiteId,
    pub slot: u8,
}

impl Port {
    pub fn new(site: usize, slot: u8) -> Self {
        Port {
            site: SiteId(site),
            slot,
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.site, self.slot)
    }
}

/// Slot paired with `slot` by strand pass-through (0 <-> 2, 1 <-> 3).
#[inline]
pub fn through(slot: u8) -> u8 {
    (slot + 2) % 4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassicalSite {
    /// Slot where the over-strand enters: 1 or 3.
    pub over_entry_slot: u8,
}

impl ClassicalSite {
    pub fn with_sign(sign: i32) -> Self {
        ClassicalSite {
            over_entry_slot: if sign > 0 { 3 } else { 1 },
        }
    }

    pub fn sign(&self) -> i32 {
        if self.over_entry_slot == 3 {
            1
        } else {
            -1
        }
    }

    pub fn over_exit_slot(&self) -> u8 {
        through(self.over_entry_slot)
    }

    /// Whether the strand at `slot` points into the site.
    pub fn is_inward(&self, slot: u8) -> bool {
        slot == 0 || slot == self.over_entry_slot
    }

    /// Whether `slot` belongs to the over-strand.
    pub fn is_over(slot: u8) -> bool {
        slot % 2 == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    Classical(ClassicalSite),
    Virtual,
}

impl Site {
    pub fn classical(sign: i32) -> Self {
        Site::Classical(ClassicalSite::with_sign(sign))
    }

    pub fn as_classical(&self) -> Option<&ClassicalSite> {
        match self {
            Site::Classical(c) => Some(c),
            Site::Virtual => None,
        }
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self, Site::Virtual)
    }
}

/// Where an edge runs. A `Loop` is a closed component with no sites on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Span {
    Arc { tail: Port, head: Port },
    Loop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub span: Span,
}

impl Edge {
    pub fn arc(id: EdgeId, tail: Port, head: Port) -> Self {
        Edge {
            id,
            span: Span::Arc { tail, head },
        }
    }

    pub fn free_loop(id: EdgeId) -> Self {
        Edge {
            id,
            span: Span::Loop,
        }
    }

    pub fn tail(&self) -> Option<Port> {
        match self.span {
            Span::Arc { tail, .. } => Some(tail),
            Span::Loop => None,
        }
    }

    pub fn head(&self) -> Option<Port> {
        match self.span {
            Span::Arc { head, .. } => Some(head),
            Span::Loop => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("diagram has no edges")]
    Empty,
    #[error("edge {edge} references missing site {site}")]
    MissingSite { edge: EdgeId, site: SiteId },
    #[error("edge {edge} references invalid slot {slot}")]
    InvalidSlot { edge: EdgeId, slot: u8 },
    #[error("classical site {site} has over-entry slot {slot}, expected 1 or 3")]
    InvalidOverEntry { site: SiteId, slot: u8 },
    #[error("edge label {0} is not positive or appears twice")]
    DuplicateEdge(EdgeId),
    #[error("dangling port {0}")]
    DanglingPort(Port),
    #[error("port used twice: {0}")]
    PortUsedTwice(Port),
    #[error("orientation incoherence at {port}: {reason}")]
    Incoherent { port: Port, reason: &'static str },
    #[error("open component starting at edge {0}")]
    OpenComponent(EdgeId),
}

/// One end of an edge at a port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Attachment {
    edge: usize,
    is_head: bool,
}

/// Immutable, validated diagram.
#[derive(Debug, Clone)]
pub struct Diagram {
    sites: Vec<Site>,
    edges: Vec<Edge>,
    ports: Vec<[Attachment; 4]>,
    components: Vec<Vec<usize>>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.sites == other.sites && self.edges == other.edges
    }
}

impl Eq for Diagram {}

/// Validates `sites` and `edges` and computes the oriented components.
pub fn build_diagram(sites: Vec<Site>, edges: Vec<Edge>) -> Result<Diagram, DiagramError> {
    if edges.is_empty() {
        return Err(DiagramError::Empty);
    }
    for (i, site) in sites.iter().enumerate() {
        if let Site::Classical(c) = site {
            if c.over_entry_slot != 1 && c.over_entry_slot != 3 {
                return Err(DiagramError::InvalidOverEntry {
                    site: SiteId(i),
                    slot: c.over_entry_slot,
                });
            }
        }
    }

    let mut seen_ids = HashSet::new();
    let mut slots: Vec<[Option<Attachment>; 4]> = vec![[None; 4]; sites.len()];
    for (ei, edge) in edges.iter().enumerate() {
        if edge.id == 0 || !seen_ids.insert(edge.id) {
            return Err(DiagramError::DuplicateEdge(edge.id));
        }
        if let Span::Arc { tail, head } = edge.span {
            for (port, is_head) in [(tail, false), (head, true)] {
                if port.site.0 >= sites.len() {
                    return Err(DiagramError::MissingSite {
                        edge: edge.id,
                        site: port.site,
                    });
                }
                if port.slot > 3 {
                    return Err(DiagramError::InvalidSlot {
                        edge: edge.id,
                        slot: port.slot,
                    });
                }
                let cell = &mut slots[port.site.0][port.slot as usize];
                if cell.is_some() {
                    return Err(DiagramError::PortUsedTwice(port));
                }
                *cell = Some(Attachment { edge: ei, is_head });
            }
        }
    }

    let mut ports = Vec::with_capacity(sites.len());
    for (si, row) in slots.iter().enumerate() {
        let mut full = [Attachment {
            edge: 0,
            is_head: false,
        }; 4];
        for slot in 0..4u8 {
            match row[slot as usize] {
                Some(a) => full[slot as usize] = a,
                None => return Err(DiagramError::DanglingPort(Port::new(si, slot))),
            }
        }
        ports.push(full);
    }

    for (si, site) in sites.iter().enumerate() {
        let row = &ports[si];
        match site {
            Site::Classical(c) => {
                for slot in 0..4u8 {
                    if row[slot as usize].is_head != c.is_inward(slot) {
                        let reason = match (slot % 2, c.is_inward(slot)) {
                            (0, true) => "incoming under-strand slot holds an edge tail",
                            (0, false) => "outgoing under-strand slot holds an edge head",
                            (_, true) => "over-strand entry slot holds an edge tail",
                            (_, false) => "over-strand exit slot holds an edge head",
                        };
                        return Err(DiagramError::Incoherent {
                            port: Port::new(si, slot),
                            reason,
                        });
                    }
                }
            }
            Site::Virtual => {
                for slot in 0..2u8 {
                    if row[slot as usize].is_head == row[through(slot) as usize].is_head {
                        return Err(DiagramError::Incoherent {
                            port: Port::new(si, slot),
                            reason: "virtual pass-through joins two heads or two tails",
                        });
                    }
                }
            }
        }
    }

    let mut diagram = Diagram {
        sites,
        edges,
        ports,
        components: Vec::new(),
    };
    diagram.components = diagram.trace_components()?;
    Ok(diagram)
}

impl Diagram {
    fn trace_components(&self) -> Result<Vec<Vec<usize>>, DiagramError> {
        let mut used = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for start in 0..self.edges.len() {
            if used[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            loop {
                if used[e] {
                    return Err(DiagramError::OpenComponent(self.edges[start].id));
                }
                used[e] = true;
                cycle.push(e);
                match self.edges[e].span {
                    Span::Loop => break,
                    Span::Arc { head, .. } => {
                        let exit = Port {
                            site: head.site,
                            slot: through(head.slot),
                        };
                        let next = self.ports[exit.site.0][exit.slot as usize];
                        if next.is_head {
                            return Err(DiagramError::Incoherent {
                                port: exit,
                                reason: "strand does not continue through the site",
                            });
                        }
                        e = next.edge;
                        if e == start {
                            break;
                        }
                    }
                }
            }
            out.push(cycle);
        }
        Ok(out)
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn site(&self, id: SiteId) -> &Site {
        &self.sites[id.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge (index into `edges()`) attached at `port`, and whether it is the head end.
    pub fn attachment(&self, port: Port) -> (usize, bool) {
        let a = self.ports[port.site.0][port.slot as usize];
        (a.edge, a.is_head)
    }

    /// Edge index attached at `port`.
    pub fn edge_at(&self, port: Port) -> usize {
        self.ports[port.site.0][port.slot as usize].edge
    }

    pub fn classical_sites(&self) -> impl Iterator<Item = (SiteId, &ClassicalSite)> {
        self.sites
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_classical().map(|c| (SiteId(i), c)))
    }

    pub fn classical_count(&self) -> usize {
        self.classical_sites().count()
    }

    pub fn virtual_count(&self) -> usize {
        self.sites.iter().filter(|s| s.is_virtual()).count()
    }

    pub fn writhe(&self) -> i32 {
        self.classical_sites().map(|(_, c)| c.sign()).sum()
    }

    /// Directed edge cycles, as edge indices in traversal order.
    pub fn component_indices(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Directed edge cycles, as edge labels in traversal order.
    pub fn components(&self) -> Vec<Vec<EdgeId>> {
        self.components
            .iter()
            .map(|c| c.iter().map(|&e| self.edges[e].id).collect())
            .collect()
    }

    pub fn max_edge_id(&self) -> EdgeId {
        self.edges.iter().map(|e| e.id).max().unwrap_or(0)
    }

    /// Reflection of the diagram: every classical site keeps its strands but
    /// its over-strand is drawn on the opposite side, negating its sign.
    pub fn mirrored(&self) -> Diagram {
        let mut sites = self.sites.clone();
        let mut edges = self.edges.clone();
        for (i, site) in sites.iter_mut().enumerate() {
            if let Site::Classical(c) = site {
                c.over_entry_slot = through(c.over_entry_slot);
                for e in edges.iter_mut() {
                    swap_slots(e, SiteId(i), &|s| if s % 2 == 1 { through(s) } else { s });
                }
            }
        }
        build_diagram(sites, edges).expect("mirror of a valid diagram is valid")
    }

    /// Same diagram with the over/under information of `site` exchanged.
    pub fn crossing_changed(&self, site: SiteId) -> Diagram {
        let oe = match self.sites[site.0] {
            Site::Classical(c) => c.over_entry_slot,
            Site::Virtual => panic!("crossing change on a virtual site"),
        };
        let mut sites = self.sites.clone();
        sites[site.0] = Site::Classical(ClassicalSite {
            over_entry_slot: 4 - oe,
        });
        let mut edges = self.edges.clone();
        // new slot k sits where old slot (oe + k) was
        for e in edges.iter_mut() {
            swap_slots(e, site, &|s| (s + 4 - oe) % 4);
        }
        build_diagram(sites, edges).expect("crossing change of a valid diagram is valid")
    }

    /// Same diagram with every component's orientation reversed.
    pub fn reversed(&self) -> Diagram {
        // Reversing both strands at a classical site is a half turn of its
        // slot labels; the over-entry keeps its index, so signs are unchanged.
        let sites = self.sites.clone();
        let edges = self
            .edges
            .iter()
            .map(|e| match e.span {
                Span::Loop => *e,
                Span::Arc { tail, head } => {
                    let turn = |p: Port| match self.sites[p.site.0] {
                        Site::Classical(_) => Port {
                            site: p.site,
                            slot: through(p.slot),
                        },
                        Site::Virtual => p,
                    };
                    Edge::arc(e.id, turn(head), turn(tail))
                }
            })
            .collect();
        build_diagram(sites, edges).expect("reversal of a valid diagram is valid")
    }
}

fn swap_slots(edge: &mut Edge, site: SiteId, map: &dyn Fn(u8) -> u8) {
    if let Span::Arc { tail, head } = &mut edge.span {
        for p in [tail, head] {
            if p.site == site {
                p.slot = map(p.slot);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kink(sign: i32) -> Diagram {
        // strand enters under at 0, leaves at 2, loops into the over-entry and exits
        let c = ClassicalSite::with_sign(sign);
        let oe = c.over_entry_slot;
        build_diagram(
            vec![Site::Classical(c)],
            vec![
                Edge::arc(1, Port::new(0, through(oe)), Port::new(0, 0)),
                Edge::arc(2, Port::new(0, 2), Port::new(0, oe)),
            ],
        )
        .unwrap()
    }

    pub(crate) fn virtual_hopf() -> Diagram {
        // X(3,1,4,2); V(1,3,2,4)
        build_diagram(
            vec![Site::classical(-1), Site::Virtual],
            vec![
                Edge::arc(1, Port::new(1, 0), Port::new(0, 1)),
                Edge::arc(2, Port::new(0, 3), Port::new(1, 2)),
                Edge::arc(3, Port::new(1, 1), Port::new(0, 0)),
                Edge::arc(4, Port::new(0, 2), Port::new(1, 3)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_kink_writhe() {
        let d = kink(-1);
        assert_eq!(d.writhe(), -1);
        assert_eq!(d.components().len(), 1);
        assert_eq!(kink(1).writhe(), 1);
    }

    #[test]
    fn virtual_hopf_wiring() {
        let d = virtual_hopf();
        assert_eq!(d.writhe(), -1);
        let comps = d.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn unknot_is_one_cycle() {
        let d = build_diagram(vec![], vec![Edge::free_loop(1)]).unwrap();
        assert_eq!(d.components(), vec![vec![1]]);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn port_used_twice() {
        let err = build_diagram(
            vec![Site::classical(1)],
            vec![
                Edge::arc(1, Port::new(0, 1), Port::new(0, 0)),
                Edge::arc(2, Port::new(0, 2), Port::new(0, 0)),
            ],
        )
        .unwrap_err();
        assert_eq!(err, DiagramError::PortUsedTwice(Port::new(0, 0)));
    }

    #[test]
    fn dangling_and_incoherent() {
        let err = build_diagram(
            vec![Site::classical(1)],
            vec![Edge::arc(1, Port::new(0, 2), Port::new(0, 0))],
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::DanglingPort(_)));

        // head at the outgoing under slot
        let err = build_diagram(
            vec![Site::classical(1)],
            vec![
                Edge::arc(1, Port::new(0, 0), Port::new(0, 2)),
                Edge::arc(2, Port::new(0, 1), Port::new(0, 3)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::Incoherent { .. }));
    }

    #[test]
    fn missing_site() {
        let err = build_diagram(vec![], vec![Edge::arc(1, Port::new(0, 0), Port::new(0, 2))])
            .unwrap_err();
        assert!(matches!(err, DiagramError::MissingSite { .. }));
    }

    #[test]
    fn port_coverage_and_components_stable() {
        let d = virtual_hopf();
        let ports = 4 * (d.classical_count() + d.virtual_count());
        let arcs = d.edges().iter().filter(|e| e.tail().is_some()).count();
        assert_eq!(ports, 2 * arcs);
        assert_eq!(d.components(), d.components());
        let again = build_diagram(d.sites().to_vec(), d.edges().to_vec()).unwrap();
        assert_eq!(again.components(), d.components());
    }

    #[test]
    fn mirror_negates_writhe() {
        for d in [kink(1), kink(-1), virtual_hopf()] {
            assert_eq!(d.mirrored().writhe(), -d.writhe());
            assert_eq!(d.mirrored().mirrored(), d);
        }
    }

    #[test]
    fn crossing_change_flips_sign() {
        let d = virtual_hopf();
        let c = d.crossing_changed(SiteId(0));
        assert_eq!(c.writhe(), 1);
        assert_eq!(c.crossing_changed(SiteId(0)), d);
    }

    #[test]
    fn reversal_keeps_writhe() {
        let d = virtual_hopf();
        let r = d.reversed();
        assert_eq!(r.writhe(), d.writhe());
        assert_eq!(r.reversed(), d);
    }
}
