//! Text formats: extended PD codes, signed Gauss codes, canonical polynomial
//! text and the JSON report.
//!
//! PD items are `X(a,b,c,d)` for classical crossings and `V(a,b,c,d)` for
//! virtual ones, labels listed counterclockwise from slot 0. For `X`, slot 0
//! is the incoming under-strand. Orientation is not written down explicitly:
//! along every component the labels form a cyclic run of consecutive integers.
//!
//! Gauss codes list `O<n><sign>` / `U<n><sign>` visits per component, with
//! components separated by `|`. They are realized with no virtual sites at
//! all; since virtual crossings are transparent to every computation here,
//! any wiring of the code is an equally valid realization.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::draft::{Draft, Pass};
use crate::diagram::{
    build_diagram, through, ClassicalSite, Diagram, DiagramError, Edge, Port, Site, Span,
};
use crate::ring::{d_power, ArrowMonomial, ArrowPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("edge label {label} appears {count} times, expected 2")]
    LabelCount { label: u32, count: usize },
    #[error("cannot infer orientation of the component containing edge {label}: labels do not form a consecutive run")]
    Orientation { label: u32 },
    #[error(
        "orientation of the component containing edge {label} contradicts a crossing: {reason}"
    )]
    Incoherent { label: u32, reason: String },
    #[error("over-strand direction ambiguous at crossing {item} (edge {label} closes on itself)")]
    OverAmbiguous { item: usize, label: u32 },
    #[error("crossing {0} does not appear exactly once over and once under")]
    Unpaired(u32),
    #[error("crossing {0} has different signs on its over and under visits")]
    SignMismatch(u32),
    #[error("diagram cannot be written as a PD code: {0}")]
    Unserializable(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn syntax(pos: usize, msg: impl Into<String>) -> CodecError {
    CodecError::Syntax {
        pos,
        msg: msg.into(),
    }
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect(&mut self, want: char) -> Result<(), CodecError> {
        let pos = self.pos_after_ws();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(syntax(pos, format!("expected '{want}', found '{c}'"))),
            None => Err(syntax(
                pos,
                format!("expected '{want}', found end of input"),
            )),
        }
    }

    fn pos_after_ws(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn number(&mut self) -> Result<u32, CodecError> {
        let start = self.pos_after_ws();
        let digits: String = self.text[start..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(syntax(start, "expected a number"));
        }
        self.pos += digits.len();
        digits
            .parse()
            .map_err(|_| syntax(start, "number out of range"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ItemKind {
    X,
    V,
}

/// Parses an extended PD code. Empty input is the crossingless unknot.
pub fn parse_pd(text: &str) -> Result<Diagram, CodecError> {
    let items = scan_pd(text)?;
    if items.is_empty() {
        return Ok(build_diagram(vec![], vec![Edge::free_loop(1)])?);
    }

    let mut occurrences: BTreeMap<u32, Vec<Port>> = BTreeMap::new();
    for (i, (_, labels)) in items.iter().enumerate() {
        for (slot, &l) in labels.iter().enumerate() {
            occurrences
                .entry(l)
                .or_default()
                .push(Port::new(i, slot as u8));
        }
    }
    for (&label, occ) in &occurrences {
        if label == 0 {
            return Err(syntax(0, "edge labels must be positive"));
        }
        if occ.len() != 2 {
            return Err(CodecError::LabelCount {
                label,
                count: occ.len(),
            });
        }
    }
    let label_at = |p: Port| items[p.site.0].1[p.slot as usize];
    let classical = |p: Port| items[p.site.0].0 == ItemKind::X;

    // label -> (tail, head)
    let mut oriented: HashMap<u32, (Port, Port)> = HashMap::new();
    for (&start, occ) in &occurrences {
        if oriented.contains_key(&start) {
            continue;
        }
        let trace = |head0: Port| -> Vec<(u32, Port, Port)> {
            let mut out = Vec::new();
            let (mut label, mut head) = (start, head0);
            loop {
                let occ = &occurrences[&label];
                let tail = if occ[0] == head { occ[1] } else { occ[0] };
                out.push((label, tail, head));
                let exit = Port {
                    site: head.site,
                    slot: through(head.slot),
                };
                label = label_at(exit);
                let next = &occurrences[&label];
                head = if next[0] == exit { next[1] } else { next[0] };
                if label == start {
                    return out;
                }
            }
        };
        let candidates = [trace(occ[0]), trace(occ[1])];
        let run_ok = |c: &Vec<(u32, Port, Port)>| {
            let min = c.iter().map(|t| t.0).min().unwrap();
            let at = c.iter().position(|t| t.0 == min).unwrap();
            (0..c.len()).all(|k| c[(at + k) % c.len()].0 == min + k as u32)
        };
        let under_ok = |c: &Vec<(u32, Port, Port)>| {
            c.iter().all(|&(_, tail, head)| {
                !(classical(head) && head.slot == 2) && !(classical(tail) && tail.slot == 0)
            })
        };
        let runs = [run_ok(&candidates[0]), run_ok(&candidates[1])];
        let valid: Vec<usize> = (0..2)
            .filter(|&k| runs[k] && under_ok(&candidates[k]))
            .collect();
        let chosen = match valid.as_slice() {
            [k] => *k,
            [] if !runs[0] && !runs[1] => return Err(CodecError::Orientation { label: start }),
            [] => {
                return Err(CodecError::Incoherent {
                    label: start,
                    reason: "an under-strand runs from slot 2 to slot 0".into(),
                })
            }
            _ => {
                // Both directions read as a run and nothing pins the under-strand:
                // the smaller label enters the first classical site the component
                // passes over.
                let over = candidates[0]
                    .iter()
                    .flat_map(|&(_, t, h)| [t, h])
                    .filter(|&p| classical(p))
                    .min();
                match over {
                    None => 0,
                    Some(p) => {
                        let a = label_at(Port {
                            site: p.site,
                            slot: 1,
                        });
                        let b = label_at(Port {
                            site: p.site,
                            slot: 3,
                        });
                        if a == b {
                            return Err(CodecError::OverAmbiguous {
                                item: p.site.0 + 1,
                                label: a,
                            });
                        }
                        let low = a.min(b);
                        let heads_here = |c: &Vec<(u32, Port, Port)>| {
                            c.iter().any(|&(l, _, h)| l == low && h.site == p.site)
                        };
                        if heads_here(&candidates[0]) {
                            0
                        } else {
                            1
                        }
                    }
                }
            }
        };
        for &(label, tail, head) in &candidates[chosen] {
            oriented.insert(label, (tail, head));
        }
    }

    let mut heads = vec![[false; 4]; items.len()];
    for &(_, head) in oriented.values() {
        heads[head.site.0][head.slot as usize] = true;
    }
    let mut sites = Vec::with_capacity(items.len());
    for (i, (kind, labels)) in items.iter().enumerate() {
        match kind {
            ItemKind::V => sites.push(Site::Virtual),
            ItemKind::X => {
                let over_entry_slot = match (heads[i][1], heads[i][3]) {
                    (true, false) => 1,
                    (false, true) => 3,
                    _ => {
                        return Err(CodecError::Incoherent {
                            label: labels[1],
                            reason: format!(
                                "over-strand of crossing {} has no consistent direction",
                                i + 1
                            ),
                        })
                    }
                };
                sites.push(Site::Classical(ClassicalSite { over_entry_slot }));
            }
        }
    }
    let edges = occurrences
        .keys()
        .map(|&l| {
            let (tail, head) = oriented[&l];
            Edge::arc(l, tail, head)
        })
        .collect();
    Ok(build_diagram(sites, edges)?)
}

fn scan_pd(text: &str) -> Result<Vec<(ItemKind, [u32; 4])>, CodecError> {
    let mut sc = Scanner::new(text);
    let mut items = Vec::new();
    if sc.peek().is_none() {
        return Ok(items);
    }
    loop {
        let pos = sc.pos_after_ws();
        let kind = match sc.bump() {
            Some('X') | Some('x') => ItemKind::X,
            Some('V') | Some('v') => ItemKind::V,
            Some(c) => return Err(syntax(pos, format!("expected 'X' or 'V', found '{c}'"))),
            None => return Err(syntax(pos, "expected an item")),
        };
        sc.expect('(')?;
        let mut labels = [0u32; 4];
        for (k, slot) in labels.iter_mut().enumerate() {
            if k > 0 {
                let pos = sc.pos_after_ws();
                match sc.bump() {
                    Some(',') => {}
                    Some(')') => {
                        return Err(syntax(pos, format!("item has {k} labels, expected 4")))
                    }
                    Some(c) => return Err(syntax(pos, format!("expected ',', found '{c}'"))),
                    None => return Err(syntax(pos, "unterminated item")),
                }
            }
            *slot = sc.number()?;
        }
        let pos = sc.pos_after_ws();
        match sc.bump() {
            Some(')') => {}
            Some(',') => return Err(syntax(pos, "item has more than 4 labels")),
            _ => return Err(syntax(pos, "expected ')'")),
        }
        items.push((kind, labels));
        let pos = sc.pos_after_ws();
        match sc.bump() {
            None => break,
            Some(';') => {
                if sc.peek().is_none() {
                    break;
                }
            }
            Some(c) => return Err(syntax(pos, format!("expected ';', found '{c}'"))),
        }
    }
    Ok(items)
}

/// Writes `d` as an extended PD code, relabelling edges so that every
/// component reads as a consecutive run.
pub fn serialize_pd(d: &Diagram) -> Result<String, CodecError> {
    let edges = d.edges();
    if edges.iter().any(|e| e.span == Span::Loop) {
        if edges.len() == 1 {
            return Ok(String::new());
        }
        return Err(CodecError::Unserializable(
            "free loop next to other strands".into(),
        ));
    }
    let classical = |p: Port| !d.site(p.site).is_virtual();
    let mut label = vec![0u32; edges.len()];
    let mut next = 1u32;
    for cycle in d.component_indices() {
        let mut start = 0;
        let touches_under = cycle.iter().any(|&e| {
            let (t, h) = (edges[e].tail().unwrap(), edges[e].head().unwrap());
            (classical(t) && t.slot % 2 == 0) || (classical(h) && h.slot % 2 == 0)
        });
        if cycle.len() <= 2 && !touches_under {
            let ports = cycle
                .iter()
                .flat_map(|&e| [edges[e].tail().unwrap(), edges[e].head().unwrap()]);
            match ports.filter(|&p| classical(p)).min() {
                Some(p) => {
                    if cycle.len() == 1 {
                        return Err(CodecError::Unserializable(format!(
                            "edge {} closes on the over-strand of a single crossing",
                            edges[cycle[0]].id
                        )));
                    }
                    start = cycle
                        .iter()
                        .position(|&e| edges[e].head().unwrap().site == p.site)
                        .unwrap();
                }
                None => {
                    start = cycle
                        .iter()
                        .position(|&e| edges[e].head().unwrap() < edges[e].tail().unwrap())
                        .unwrap_or(0);
                }
            }
        }
        for k in 0..cycle.len() {
            label[cycle[(start + k) % cycle.len()]] = next;
            next += 1;
        }
    }
    let mut out = String::new();
    for (i, site) in d.sites().iter().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        out.push(if site.is_virtual() { 'V' } else { 'X' });
        out.push('(');
        for slot in 0..4u8 {
            if slot > 0 {
                out.push(',');
            }
            let (e, _) = d.attachment(Port::new(i, slot));
            write!(out, "{}", label[e]).unwrap();
        }
        out.push(')');
    }
    Ok(out)
}

/// How `parse_gauss_with` lays the code out as a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussLayout {
    /// Sites in order of first appearance, edges in code order, no virtual sites.
    CodeOrder,
    /// Sites and edges created in reverse order, and edge `j` routed through a
    /// virtual crossing with edge `j + m/2` (for `m` edges).
    ReversedWithVirtuals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussVisit {
    pub label: u32,
    pub over: bool,
    pub sign: i32,
}

/// Scans a Gauss code into its components of visits.
pub fn scan_gauss(text: &str) -> Result<Vec<Vec<GaussVisit>>, CodecError> {
    let mut sc = Scanner::new(text);
    let mut comps = vec![Vec::new()];
    while let Some(c) = sc.peek() {
        let pos = sc.pos;
        sc.bump();
        let over = match c {
            '|' => {
                comps.push(Vec::new());
                continue;
            }
            'O' | 'o' => true,
            'U' | 'u' => false,
            _ => {
                return Err(syntax(
                    pos,
                    format!("expected 'O', 'U' or '|', found '{c}'"),
                ))
            }
        };
        let label = sc.number()?;
        let spos = sc.pos;
        let sign = match sc.text[sc.pos..].chars().next() {
            Some('+') => 1,
            Some('-') | Some('\u{2212}') => -1,
            _ => return Err(syntax(spos, "expected a sign after the crossing label")),
        };
        sc.pos += sc.text[sc.pos..].chars().next().unwrap().len_utf8();
        comps
            .last_mut()
            .unwrap()
            .push(GaussVisit { label, over, sign });
    }
    if comps.len() == 1 && comps[0].is_empty() {
        return Err(syntax(0, "empty Gauss code"));
    }
    let mut seen: BTreeMap<u32, (Option<i32>, Option<i32>)> = BTreeMap::new();
    for v in comps.iter().flatten() {
        let entry = seen.entry(v.label).or_default();
        let slot = if v.over { &mut entry.0 } else { &mut entry.1 };
        if slot.is_some() {
            return Err(CodecError::Unpaired(v.label));
        }
        *slot = Some(v.sign);
    }
    for (&label, &(o, u)) in &seen {
        match (o, u) {
            (Some(a), Some(b)) if a == b => {}
            (Some(_), Some(_)) => return Err(CodecError::SignMismatch(label)),
            _ => return Err(CodecError::Unpaired(label)),
        }
    }
    Ok(comps)
}

pub fn parse_gauss(text: &str) -> Result<Diagram, CodecError> {
    parse_gauss_with(text, GaussLayout::CodeOrder)
}

pub fn parse_gauss_with(text: &str, layout: GaussLayout) -> Result<Diagram, CodecError> {
    let comps = scan_gauss(text)?;
    let mut order: Vec<u32> = Vec::new();
    for v in comps.iter().flatten() {
        if !order.contains(&v.label) {
            order.push(v.label);
        }
    }
    if layout == GaussLayout::ReversedWithVirtuals {
        order.reverse();
    }
    let site_of: HashMap<u32, usize> = order.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut sites = vec![Site::Virtual; order.len()];
    for v in comps.iter().flatten() {
        sites[site_of[&v.label]] = Site::classical(v.sign);
    }
    let entry = |v: &GaussVisit| {
        let slot = if v.over {
            ClassicalSite::with_sign(v.sign).over_entry_slot
        } else {
            0
        };
        Port::new(site_of[&v.label], slot)
    };
    let exit = |v: &GaussVisit| {
        let p = entry(v);
        Port {
            site: p.site,
            slot: through(p.slot),
        }
    };
    let mut spans = Vec::new();
    for comp in &comps {
        if comp.is_empty() {
            spans.push(Span::Loop);
            continue;
        }
        for k in 0..comp.len() {
            let next = &comp[(k + 1) % comp.len()];
            spans.push(Span::Arc {
                tail: exit(&comp[k]),
                head: entry(next),
            });
        }
    }
    if layout == GaussLayout::ReversedWithVirtuals {
        spans.reverse();
    }
    let edges: Vec<Edge> = spans
        .into_iter()
        .enumerate()
        .map(|(i, span)| Edge {
            id: i as u32 + 1,
            span,
        })
        .collect();
    let base = build_diagram(sites, edges)?;
    if layout == GaussLayout::CodeOrder {
        return Ok(base);
    }
    let mut draft = Draft::from_diagram(&base);
    let m = base.edges().len() as u32;
    for j in 1..=m / 2 {
        let v = draft.add_site(Site::Virtual);
        draft.insert_passes(j, &[Pass::new(v, 0, 2)]);
        draft.insert_passes(j + m / 2, &[Pass::new(v, 1, 3)]);
    }
    Ok(draft.finish()?)
}

/// Gauss code of `d`, numbering classical sites 1, 2, ... in site order.
pub fn serialize_gauss(d: &Diagram) -> String {
    let mut number = HashMap::new();
    for (k, (id, _)) in d.classical_sites().enumerate() {
        number.insert(id, k + 1);
    }
    let mut comps = Vec::new();
    for cycle in d.component_indices() {
        let mut tokens = Vec::new();
        for &e in cycle {
            let Some(head) = d.edges()[e].head() else {
                continue;
            };
            if let Site::Classical(c) = d.site(head.site) {
                let kind = if head.slot == 0 { 'U' } else { 'O' };
                let sign = if c.sign() > 0 { '+' } else { '-' };
                tokens.push(format!("{kind}{}{sign}", number[&head.site]));
            }
        }
        if !tokens.is_empty() {
            tokens.rotate_right(1);
        }
        comps.push(tokens.join(" "));
    }
    comps.join(" | ")
}

fn render_term(out: &mut String, m: &ArrowMonomial, c: &BigInt, first: bool) {
    let negative = c.is_negative();
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let mut factors = Vec::new();
    match m.a_power {
        0 => {}
        1 => factors.push("A".to_string()),
        p => factors.push(format!("A^{p}")),
    }
    for (i, e) in m.k_powers() {
        if e == 1 {
            factors.push(format!("K{i}"));
        } else {
            factors.push(format!("K{i}^{e}"));
        }
    }
    let mag = c.abs();
    if factors.is_empty() {
        write!(out, "{mag}").unwrap();
    } else if mag.is_one() {
        out.push_str(&factors.join("*"));
    } else {
        write!(out, "{mag}*{}", factors.join("*")).unwrap();
    }
}

/// Canonical text: terms by (k-degree, K indices, A power), `0` for zero.
pub fn render_polynomial(p: &ArrowPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        render_term(&mut out, m, c, i == 0);
    }
    out
}

/// Parses a polynomial expression: integers, `A`, `d` (= -A^2 - A^-2), `K<n>`,
/// `+ - *`, parentheses, and `^` with integer exponents (negative exponents
/// only on monomials `±A^k`). Juxtaposition multiplies. The canonical
/// rendering is a special case.
pub fn parse_polynomial(text: &str) -> Result<ArrowPolynomial, CodecError> {
    let mut p = PolyParser {
        sc: Scanner::new(text),
    };
    let value = p.expr()?;
    let pos = p.sc.pos_after_ws();
    if let Some(c) = p.sc.peek() {
        return Err(syntax(pos, format!("unexpected '{c}'")));
    }
    Ok(value)
}

struct PolyParser<'a> {
    sc: Scanner<'a>,
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

impl PolyParser<'_> {
    fn expr(&mut self) -> Result<ArrowPolynomial, CodecError> {
        let mut acc = ArrowPolynomial::zero();
        let mut negate = false;
        match self.sc.peek() {
            Some(c) if is_minus(c) => {
                self.sc.bump();
                negate = true;
            }
            Some('+') => {
                self.sc.bump();
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.sc.peek() {
                Some(c) if is_minus(c) => negate = true,
                Some('+') => negate = false,
                _ => return Ok(acc),
            }
            self.sc.bump();
        }
    }

    fn term(&mut self) -> Result<ArrowPolynomial, CodecError> {
        let mut acc = self.power()?;
        loop {
            match self.sc.peek() {
                Some('*') => {
                    self.sc.bump();
                }
                Some(c) if c.is_ascii_digit() || c == '(' || c == 'A' || c == 'K' || c == 'd' => {}
                _ => return Ok(acc),
            }
            let f = self.power()?;
            acc = &acc * &f;
        }
    }

    fn power(&mut self) -> Result<ArrowPolynomial, CodecError> {
        let base = self.atom()?;
        if self.sc.peek() != Some('^') {
            return Ok(base);
        }
        self.sc.bump();
        let pos = self.sc.pos_after_ws();
        let negative = match self.sc.peek() {
            Some(c) if is_minus(c) => {
                self.sc.bump();
                true
            }
            _ => false,
        };
        let n = self.sc.number()?;
        if !negative {
            return Ok(base.pow(n));
        }
        let mut terms = base.terms();
        match (terms.next(), terms.next()) {
            (Some((m, c)), None) if !m.has_k() && c.abs().is_one() => {
                let sign = if c.is_negative() && n % 2 == 1 { -1 } else { 1 };
                Ok(ArrowPolynomial::term(
                    sign,
                    ArrowMonomial::a(-(m.a_power * n as i32)),
                ))
            }
            _ => Err(syntax(
                pos,
                "negative exponent on a non-invertible expression",
            )),
        }
    }

    fn atom(&mut self) -> Result<ArrowPolynomial, CodecError> {
        let pos = self.sc.pos_after_ws();
        match self.sc.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.sc.number()?;
                Ok(ArrowPolynomial::constant(n as i64))
            }
            Some('A') => {
                self.sc.bump();
                Ok(ArrowPolynomial::a(1))
            }
            Some('d') => {
                self.sc.bump();
                Ok(d_power(1))
            }
            Some('K') => {
                self.sc.bump();
                let i = self.sc.number()?;
                if i == 0 {
                    return Err(syntax(pos, "K indices start at 1"));
                }
                Ok(ArrowPolynomial::k(i))
            }
            Some('(') => {
                self.sc.bump();
                let inner = self.expr()?;
                self.sc.expect(')')?;
                Ok(inner)
            }
            Some(c) => Err(syntax(pos, format!("unexpected '{c}'"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Everything `compute` reports about one diagram, in output order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub writhe: i32,
    pub unnormalized: String,
    pub normalized: String,
    pub as_set: Vec<u32>,
    pub max_k_degree: u32,
    pub vcn_lower_bound: u32,
    pub genus_lower_bound: u32,
    pub state_count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Report {
    pub fn new(input: &str, inv: &crate::Invariants) -> Self {
        Report {
            input: input.to_string(),
            writhe: inv.writhe,
            unnormalized: render_polynomial(&inv.unnormalized),
            normalized: render_polynomial(&inv.normalized),
            as_set: inv.profile.as_set.iter().copied().collect(),
            max_k_degree: inv.profile.max_k_degree,
            vcn_lower_bound: inv.profile.vcn_lower_bound,
            genus_lower_bound: inv.profile.genus_lower_bound,
            state_count: inv.state_count,
            elapsed_ms: None,
        }
    }

    /// `key: value` lines with the same fields as the JSON form.
    pub fn to_text(&self) -> String {
        let set: Vec<String> = self.as_set.iter().map(|k| k.to_string()).collect();
        let mut out = String::new();
        writeln!(out, "input: {}", self.input).unwrap();
        writeln!(out, "writhe: {}", self.writhe).unwrap();
        writeln!(out, "unnormalized: {}", self.unnormalized).unwrap();
        writeln!(out, "normalized: {}", self.normalized).unwrap();
        writeln!(out, "as_set: {{{}}}", set.join(",")).unwrap();
        writeln!(out, "max_k_degree: {}", self.max_k_degree).unwrap();
        writeln!(out, "vcn_lower_bound: {}", self.vcn_lower_bound).unwrap();
        writeln!(out, "genus_lower_bound: {}", self.genus_lower_bound).unwrap();
        writeln!(out, "state_count: {}", self.state_count).unwrap();
        if let Some(ms) = self.elapsed_ms {
            writeln!(out, "elapsed_ms: {ms:.3}").unwrap();
        }
        out
    }
}

/// JSON form of the report for `d`.
pub fn emit_report(input: &str, inv: &crate::Invariants) -> String {
    serde_json::to_string(&Report::new(input, inv)).expect("report serializes")
}
