//! Mutable scratch copy of a diagram, used for local surgery. Nothing here is
//! validated until [`Draft::finish`] hands the result to `build_diagram`.

use super::{
    build_diagram, through, Diagram, DiagramError, Edge, EdgeId, Port, Site, SiteId, Span,
};

/// One passage of a strand through a site: it arrives at `entry` and leaves at `exit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pass {
    pub site: usize,
    pub entry: u8,
    pub exit: u8,
}

impl Pass {
    pub fn new(site: usize, entry: u8, exit: u8) -> Self {
        Pass { site, entry, exit }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Draft {
    pub sites: Vec<Option<Site>>,
    pub edges: Vec<Edge>,
    next_id: EdgeId,
}

impl Draft {
    pub fn from_diagram(d: &Diagram) -> Self {
        Draft {
            sites: d.sites().iter().copied().map(Some).collect(),
            edges: d.edges().to_vec(),
            next_id: d.max_edge_id() + 1,
        }
    }

    pub fn add_site(&mut self, site: Site) -> usize {
        self.sites.push(Some(site));
        self.sites.len() - 1
    }

    pub fn fresh_id(&mut self) -> EdgeId {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    pub fn add_edge(&mut self, span: Span) -> EdgeId {
        let id = self.fresh_id();
        self.edges.push(Edge { id, span });
        id
    }

    pub fn position(&self, id: EdgeId) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Edge whose head sits at `port`.
    pub fn edge_into(&self, port: Port) -> Option<usize> {
        self.edges.iter().position(|e| e.head() == Some(port))
    }

    /// Edge whose tail sits at `port`.
    pub fn edge_out_of(&self, port: Port) -> Option<usize> {
        self.edges.iter().position(|e| e.tail() == Some(port))
    }

    /// Routes edge `id` through `passes` in order. The first segment keeps
    /// the original label; the new segments get fresh labels, returned in order.
    pub fn insert_passes(&mut self, id: EdgeId, passes: &[Pass]) -> Vec<EdgeId> {
        if passes.is_empty() {
            return Vec::new();
        }
        let at = self.position(id).expect("edge exists");
        let port = |p: &Pass, slot: u8| Port::new(p.site, slot);
        let first = &passes[0];
        let last = passes.last().unwrap();
        let (first_span, last_head) = match self.edges[at].span {
            Span::Arc { tail, head } => (
                Span::Arc {
                    tail,
                    head: port(first, first.entry),
                },
                Some(head),
            ),
            Span::Loop => (
                Span::Arc {
                    tail: port(last, last.exit),
                    head: port(first, first.entry),
                },
                None,
            ),
        };
        self.edges[at].span = first_span;
        let mut fresh = Vec::new();
        for w in passes.windows(2) {
            let span = Span::Arc {
                tail: port(&w[0], w[0].exit),
                head: port(&w[1], w[1].entry),
            };
            fresh.push(self.add_edge(span));
        }
        if let Some(head) = last_head {
            let span = Span::Arc {
                tail: port(last, last.exit),
                head,
            };
            fresh.push(self.add_edge(span));
        }
        fresh
    }

    /// Deletes a virtual site, splicing each strand through it into one edge.
    pub fn remove_virtual(&mut self, site: usize) {
        assert!(matches!(self.sites[site], Some(Site::Virtual)));
        while let Some((slot, into)) =
            (0..4u8).find_map(|slot| self.edge_into(Port::new(site, slot)).map(|e| (slot, e)))
        {
            let out = self
                .edge_out_of(Port::new(site, through(slot)))
                .expect("virtual pass-through continues");
            if into == out {
                self.edges[into].span = Span::Loop;
            } else {
                let head = self.edges[out].head().expect("arc");
                if let Span::Arc { head: h, .. } = &mut self.edges[into].span {
                    *h = head;
                }
                self.edges.remove(out);
            }
        }
        self.sites[site] = None;
    }

    pub fn finish(self) -> Result<Diagram, DiagramError> {
        let mut remap = vec![usize::MAX; self.sites.len()];
        let mut sites = Vec::new();
        for (i, s) in self.sites.iter().enumerate() {
            if let Some(s) = s {
                remap[i] = sites.len();
                sites.push(*s);
            }
        }
        let fix = |p: Port| Port {
            site: SiteId(remap[p.site.0]),
            slot: p.slot,
        };
        let edges = self
            .edges
            .into_iter()
            .map(|e| match e.span {
                Span::Loop => e,
                Span::Arc { tail, head } => Edge::arc(e.id, fix(tail), fix(head)),
            })
            .collect();
        build_diagram(sites, edges)
    }
}
