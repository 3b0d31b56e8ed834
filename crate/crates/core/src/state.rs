//! State sum for the arrow polynomial.
//!
//! Each classical site is smoothed either along the orientation (`Oriented`)
//! or against it (`Disoriented`). A disoriented smoothing leaves two arcs, one
//! joining the two inward slots and one joining the two outward slots, and
//! each of them carries a cusp. Walking a state loop through such an arc from
//! slot `p` to slot `q`, the cusp is recorded as `L` when `q = p + 1 (mod 4)`
//! (the former crossing centre lies on the left of the walk) and `R` otherwise.
//! Adjacent equal cusps cancel; a loop left with `2n` cusps contributes `K_n`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{through, ClassicalSite, Diagram, Site, SiteId, Span};
use crate::ring::{d_power, ArrowMonomial, ArrowPolynomial};

/// Default limit on the number of classical sites accepted by [`arrow_bracket`].
pub const DEFAULT_MAX_CROSSINGS: usize = 24;

/// Hard ceiling: states are enumerated as bits of a `u64`.
pub const HARD_MAX_CROSSINGS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("diagram has {found} classical crossings, limit is {limit}")]
    TooManyCrossings { found: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Smoothing {
    Oriented,
    Disoriented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    /// Joins the two inward slots.
    In,
    /// Joins the two outward slots.
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

/// One smoothing choice per classical site, in site order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmoothingChoice(pub Vec<Smoothing>);

impl SmoothingChoice {
    /// Bit `i` set means the `i`-th classical site is smoothed disoriented.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        SmoothingChoice(
            (0..n)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        Smoothing::Disoriented
                    } else {
                        Smoothing::Oriented
                    }
                })
                .collect(),
        )
    }

    pub fn bits(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Smoothing::Disoriented)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

/// Local picture of one smoothed site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteSmoothing {
    /// The two slot pairs joined by the smoothing arcs.
    pub pairs: [(u8, u8); 2],
    /// Cusp-carrying arc kinds, aligned with `pairs`; `None` for oriented smoothings.
    pub arcs: Option<[ArcKind; 2]>,
    /// +1 if the smoothing carries `A` (counts toward alpha), -1 for `A^-1`.
    pub weight: i32,
}

pub fn smoothing_arcs(site: &ClassicalSite, choice: Smoothing) -> SiteSmoothing {
    match (site.sign() > 0, choice) {
        (true, Smoothing::Oriented) => SiteSmoothing {
            pairs: [(0, 1), (2, 3)],
            arcs: None,
            weight: 1,
        },
        (true, Smoothing::Disoriented) => SiteSmoothing {
            pairs: [(0, 3), (1, 2)],
            arcs: Some([ArcKind::In, ArcKind::Out]),
            weight: -1,
        },
        (false, Smoothing::Oriented) => SiteSmoothing {
            pairs: [(0, 3), (1, 2)],
            arcs: None,
            weight: -1,
        },
        (false, Smoothing::Disoriented) => SiteSmoothing {
            pairs: [(0, 1), (2, 3)],
            arcs: Some([ArcKind::In, ArcKind::Out]),
            weight: 1,
        },
    }
}

/// Side of a cusp met while walking an arc from slot `entry` to slot `exit`.
#[inline]
pub fn cusp_side(entry: u8, exit: u8) -> Side {
    if exit == (entry + 1) % 4 {
        Side::L
    } else {
        Side::R
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CuspMark {
    pub site: SiteId,
    pub arc: ArcKind,
    pub side: Side,
}

/// Cusps met along one state loop, in walking order (read cyclically).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoopWord {
    pub marks: Vec<CuspMark>,
}

impl LoopWord {
    pub fn sides(&self) -> Vec<Side> {
        self.marks.iter().map(|m| m.side).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateEvaluation {
    pub alpha: u32,
    pub beta: u32,
    pub loops: Vec<LoopWord>,
}

impl StateEvaluation {
    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cusp word of odd length {0}")]
pub struct OddWord(pub usize);

/// Cancels cyclically adjacent equal cusps until none remain and returns half
/// the reduced length.
pub fn reduce_cusp_word(word: &[Side]) -> Result<u32, OddWord> {
    if word.len() % 2 == 1 {
        return Err(OddWord(word.len()));
    }
    let mut stack = Vec::with_capacity(word.len());
    Ok(reduce_into(word, &mut stack))
}

/// Linear cancellation pass followed by repeated checks of the cyclic seam.
fn reduce_into(word: &[Side], stack: &mut Vec<Side>) -> u32 {
    stack.clear();
    for &s in word {
        if stack.last() == Some(&s) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    let (mut lo, mut hi) = (0, stack.len());
    while hi - lo >= 2 && stack[lo] == stack[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    ((hi - lo) / 2) as u32
}

/// Slot-level wiring of the classical sites with the virtual sites and free
/// loops compressed away.
#[derive(Debug, Clone)]
pub struct StateTracer {
    sites: Vec<SiteId>,
    signs: Vec<i32>,
    /// `link[4 * k + s]`: classical port reached by following the strand out of
    /// port `(k, s)` through edges and virtual sites.
    link: Vec<u32>,
    /// Loops that never meet a classical site.
    extra_loops: u32,
}

impl StateTracer {
    pub fn new(d: &Diagram) -> Self {
        let sites: Vec<SiteId> = d.classical_sites().map(|(id, _)| id).collect();
        let signs = d.classical_sites().map(|(_, c)| c.sign()).collect();
        let mut index = vec![usize::MAX; d.sites().len()];
        for (k, id) in sites.iter().enumerate() {
            index[id.0] = k;
        }
        let n = sites.len();
        let mut link = vec![u32::MAX; 4 * n];
        let mut seen_edge = vec![false; d.edges().len()];
        for (k, &id) in sites.iter().enumerate() {
            for slot in 0..4u8 {
                let mut port = crate::diagram::Port { site: id, slot };
                loop {
                    let (e, is_head) = d.attachment(port);
                    seen_edge[e] = true;
                    let Span::Arc { tail, head } = d.edges()[e].span else {
                        unreachable!()
                    };
                    let other = if is_head { tail } else { head };
                    match d.site(other.site) {
                        Site::Classical(_) => {
                            link[4 * k + slot as usize] =
                                (4 * index[other.site.0] + other.slot as usize) as u32;
                            break;
                        }
                        Site::Virtual => {
                            port = crate::diagram::Port {
                                site: other.site,
                                slot: through(other.slot),
                            };
                        }
                    }
                }
            }
        }
        let extra_loops = d
            .component_indices()
            .iter()
            .filter(|c| c.iter().all(|&e| !seen_edge[e]))
            .count() as u32;
        StateTracer {
            sites,
            signs,
            link,
            extra_loops,
        }
    }

    pub fn classical_count(&self) -> usize {
        self.sites.len()
    }

    /// Walks every loop of the state given by `bits`, calling `visit` once per
    /// loop with the cusps met in order. Returns (alpha, beta, loop count).
    fn walk(
        &self,
        bits: u64,
        marks: &mut Vec<CuspMark>,
        mut visit: impl FnMut(&[CuspMark]),
    ) -> (u32, u32, u32) {
        let n = self.sites.len();
        let mut alpha = 0;
        let mut beta = 0;
        let mut partner = vec![0u8; 4 * n];
        let mut arc_of = vec![None; 4 * n];
        for k in 0..n {
            let choice = if bits >> k & 1 == 1 {
                Smoothing::Disoriented
            } else {
                Smoothing::Oriented
            };
            let sm = smoothing_arcs(&ClassicalSite::with_sign(self.signs[k]), choice);
            if sm.weight > 0 {
                alpha += 1;
            } else {
                beta += 1;
            }
            for (j, &(a, b)) in sm.pairs.iter().enumerate() {
                partner[4 * k + a as usize] = b;
                partner[4 * k + b as usize] = a;
                if let Some(arcs) = sm.arcs {
                    arc_of[4 * k + a as usize] = Some(arcs[j]);
                    arc_of[4 * k + b as usize] = Some(arcs[j]);
                }
            }
        }
        let mut visited = vec![false; 4 * n];
        let mut loops = self.extra_loops;
        for _ in 0..self.extra_loops {
            visit(&[]);
        }
        for start in 0..4 * n {
            if visited[start] {
                continue;
            }
            loops += 1;
            marks.clear();
            let mut at = start;
            loop {
                let k = at / 4;
                let entry = (at % 4) as u8;
                let exit = partner[at];
                let out = 4 * k + exit as usize;
                visited[at] = true;
                visited[out] = true;
                if let Some(arc) = arc_of[at] {
                    marks.push(CuspMark {
                        site: self.sites[k],
                        arc,
                        side: cusp_side(entry, exit),
                    });
                }
                at = self.link[out] as usize;
                if at == start {
                    break;
                }
            }
            visit(marks);
        }
        (alpha, beta, loops)
    }

    pub fn trace(&self, bits: u64) -> StateEvaluation {
        let mut loops = Vec::new();
        let mut scratch = Vec::new();
        let (alpha, beta, _) = self.walk(bits, &mut scratch, |m| {
            loops.push(LoopWord { marks: m.to_vec() })
        });
        StateEvaluation { alpha, beta, loops }
    }

    /// Histogram of state keys over the states `range`.
    fn accumulate(&self, range: std::ops::Range<u64>) -> HashMap<Vec<u16>, u64> {
        let mut acc: HashMap<Vec<u16>, u64> = HashMap::new();
        let mut marks = Vec::new();
        let mut sides = Vec::new();
        let mut stack = Vec::new();
        let mut key: Vec<u16> = Vec::new();
        let mut ks: Vec<u16> = Vec::new();
        for bits in range {
            ks.clear();
            let (alpha, beta, loops) = self.walk(bits, &mut marks, |m| {
                sides.clear();
                sides.extend(m.iter().map(|c| c.side));
                let n = reduce_into(&sides, &mut stack);
                if n > 0 {
                    ks.push(n as u16);
                }
            });
            ks.sort_unstable();
            key.clear();
            key.push((alpha as i32 - beta as i32 + 1000) as u16);
            key.push(loops as u16);
            key.extend_from_slice(&ks);
            match acc.get_mut(key.as_slice()) {
                Some(c) => *c += 1,
                None => {
                    acc.insert(key.clone(), 1);
                }
            }
        }
        acc
    }
}

/// `A^(alpha - beta) * d^(|S| - 1) * prod K_n` for one state.
pub fn evaluate_state(state: &StateEvaluation) -> ArrowPolynomial {
    let ks: Vec<u32> = state
        .loops
        .iter()
        .map(|l| reduce_cusp_word(&l.sides()).expect("state loops have even cusp words"))
        .filter(|&n| n > 0)
        .collect();
    let monomial = ArrowMonomial::new(state.alpha as i32 - state.beta as i32, ks);
    let loops = state.loops.len() as u32;
    &ArrowPolynomial::term(1, monomial) * &d_power(loops.saturating_sub(1))
}

pub fn trace_state(d: &Diagram, choice: &SmoothingChoice) -> StateEvaluation {
    let tracer = StateTracer::new(d);
    assert_eq!(
        choice.0.len(),
        tracer.classical_count(),
        "one choice per classical site"
    );
    tracer.trace(choice.bits())
}

/// Arrow bracket (unnormalized) together with the number of states summed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketSum {
    pub polynomial: ArrowPolynomial,
    pub state_count: u64,
}

pub fn arrow_bracket(d: &Diagram) -> Result<ArrowPolynomial, StateError> {
    arrow_bracket_with(d, DEFAULT_MAX_CROSSINGS).map(|s| s.polynomial)
}

/// Sums all `2^n` states. Chunks of states are evaluated in parallel and merged
/// as exact counts, so the result does not depend on scheduling.
pub fn arrow_bracket_with(d: &Diagram, max_crossings: usize) -> Result<BracketSum, StateError> {
    let n = d.classical_count();
    let limit = max_crossings.min(HARD_MAX_CROSSINGS);
    if n > limit {
        return Err(StateError::TooManyCrossings { found: n, limit });
    }
    let tracer = StateTracer::new(d);
    let total: u64 = 1 << n;
    let chunk_bits = n.saturating_sub(6).min(14);
    let chunk: u64 = 1 << chunk_bits;
    let chunks = total / chunk;
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| tracer.accumulate(c * chunk..(c + 1) * chunk))
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut polynomial = ArrowPolynomial::zero();
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    for (key, count) in keys {
        let a_power = key[0] as i32 - 1000;
        let loops = key[1] as u32;
        let ks = key[2..].iter().map(|&k| k as u32).collect();
        let term = ArrowPolynomial::term(BigInt::from(count), ArrowMonomial::new(a_power, ks));
        polynomial += &(&term * &d_power(loops - 1));
    }
    Ok(BracketSum {
        polynomial,
        state_count: total,
    })
}

/// Every state of `d` in counter order.
pub fn all_states(d: &Diagram) -> impl Iterator<Item = StateEvaluation> + '_ {
    let tracer = StateTracer::new(d);
    let n = tracer.classical_count();
    (0..1u64 << n).map(move |bits| tracer.trace(bits))
}

/// Labeled arrow number of one loop. Segments between consecutive cusps are
/// labelled alternately 0/1; `flip` selects which of the two labellings, with
/// the segment entering the first cusp labelled `flip as u8`. A cusp is worth
/// +1 when (side is `L`) equals (incoming label is 0) and -1 otherwise; the
/// result is half the total.
pub fn labeled_arrow_number(word: &LoopWord, flip: bool) -> i32 {
    word.marks
        .iter()
        .enumerate()
        .map(|(i, m)| vertex_value(m.side, (i % 2 == 1) ^ flip))
        .sum::<i32>()
        / 2
}

fn vertex_value(side: Side, incoming_is_one: bool) -> i32 {
    if (side == Side::L) == !incoming_is_one {
        1
    } else {
        -1
    }
}

/// `a_L(C_i)` for every loop, with `labeling[i]` choosing the labelling of loop `i`.
pub fn labeled_arrow_numbers(state: &StateEvaluation, labeling: &[bool]) -> Vec<i32> {
    state
        .loops
        .iter()
        .zip(labeling)
        .map(|(w, &flip)| labeled_arrow_number(w, flip))
        .collect()
}

/// Sum of c-pair signs `(val(v1) + val(v2)) / 2`, the two cusps of a c-pair
/// being those created by the same disoriented site.
pub fn cpair_linking(state: &StateEvaluation, labeling: &[bool]) -> i32 {
    let mut by_site: HashMap<SiteId, Vec<i32>> = HashMap::new();
    for (word, &flip) in state.loops.iter().zip(labeling) {
        for (i, m) in word.marks.iter().enumerate() {
            by_site
                .entry(m.site)
                .or_default()
                .push(vertex_value(m.side, (i % 2 == 1) ^ flip));
        }
    }
    by_site
        .values()
        .map(|vals| {
            assert_eq!(vals.len(), 2, "each disoriented site yields a c-pair");
            (vals[0] + vals[1]) / 2
        })
        .sum()
}

/// Outcome of [`oracle_check`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleTally {
    pub states: u64,
    pub loops: u64,
    pub labelings: u64,
    pub reduce_mismatches: u64,
    pub cpair_mismatches: u64,
}

impl OracleTally {
    pub fn agrees(&self) -> bool {
        self.reduce_mismatches == 0 && self.cpair_mismatches == 0
    }
}

const MAX_LABELING_BITS: usize = 12;

/// Runs both cross-checks over every state of `d`: each loop's reduced cusp
/// count against `|a_L|` under either labelling, and the c-pair sum against
/// the sum of labeled arrow numbers. Labelings are enumerated exhaustively up
/// to 12 loops; beyond that the first 4096 patterns are used.
pub fn oracle_check(d: &Diagram) -> OracleTally {
    let mut tally = OracleTally::default();
    for state in all_states(d) {
        tally.states += 1;
        for word in &state.loops {
            tally.loops += 1;
            let k =
                reduce_cusp_word(&word.sides()).expect("state loops have even cusp words") as i32;
            for flip in [false, true] {
                if labeled_arrow_number(word, flip).abs() != k {
                    tally.reduce_mismatches += 1;
                }
            }
        }
        let n = state.loops.len();
        let patterns = 1u64 << n.min(MAX_LABELING_BITS);
        for bits in 0..patterns {
            let labeling: Vec<bool> = (0..n).map(|i| i < 64 && bits >> i & 1 == 1).collect();
            tally.labelings += 1;
            let total: i32 = labeled_arrow_numbers(&state, &labeling).iter().sum();
            if cpair_linking(&state, &labeling) != total {
                tally.cpair_mismatches += 1;
            }
        }
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{parse_gauss, parse_pd, parse_polynomial};
    use crate::diagram::{build_diagram, Edge};
    use proptest::prelude::*;
    use std::collections::BTreeSet;
    use Side::{L, R};

    fn vh() -> Diagram {
        parse_pd("X(3,1,4,2); V(1,3,2,4)").unwrap()
    }

    /// Every maximal sequence of cancellations, explored exhaustively.
    fn all_reductions(word: &[Side]) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let n = word.len();
        let mut any = false;
        for i in 0..n {
            let j = (i + 1) % n;
            if n >= 2 && i != j && word[i] == word[j] {
                any = true;
                let rest: Vec<Side> = (0..n)
                    .filter(|&k| k != i && k != j)
                    .map(|k| word[k])
                    .collect();
                out.extend(all_reductions(&rest));
            }
        }
        if !any {
            out.insert(n / 2);
        }
        out
    }

    #[test]
    fn smoothing_table() {
        let pos = ClassicalSite::with_sign(1);
        let neg = ClassicalSite::with_sign(-1);
        let s = smoothing_arcs(&pos, Smoothing::Oriented);
        assert_eq!((s.pairs, s.weight, s.arcs), ([(0, 1), (2, 3)], 1, None));
        let s = smoothing_arcs(&neg, Smoothing::Disoriented);
        assert_eq!(s.pairs, [(0, 1), (2, 3)]);
        assert_eq!(s.arcs, Some([ArcKind::In, ArcKind::Out]));
        assert_eq!(s.weight, 1);
        assert_eq!(smoothing_arcs(&pos, Smoothing::Disoriented).weight, -1);
        assert_eq!(smoothing_arcs(&neg, Smoothing::Oriented).weight, -1);
    }

    #[test]
    fn virtual_hopf_states() {
        let d = vh();
        let o = trace_state(&d, &SmoothingChoice(vec![Smoothing::Oriented]));
        assert_eq!((o.alpha, o.beta, o.loop_count()), (0, 1, 1));
        assert!(o.loops[0].marks.is_empty());
        assert_eq!(evaluate_state(&o), ArrowPolynomial::a(-1));

        let x = trace_state(&d, &SmoothingChoice(vec![Smoothing::Disoriented]));
        assert_eq!((x.alpha, x.beta, x.loop_count()), (1, 0, 1));
        assert_eq!(x.loops[0].sides(), vec![L, R]);
        assert_eq!(evaluate_state(&x), parse_polynomial("A*K1").unwrap());

        assert_eq!(
            arrow_bracket(&d).unwrap(),
            parse_polynomial("A^-1 + A*K1").unwrap()
        );
    }

    #[test]
    fn classical_hopf_cancels() {
        let d = parse_pd("X(4,1,3,2); X(2,3,1,4)").unwrap();
        let s = trace_state(
            &d,
            &SmoothingChoice(vec![Smoothing::Disoriented, Smoothing::Oriented]),
        );
        assert_eq!(s.loop_count(), 1);
        assert_eq!(s.loops[0].sides(), vec![L, L]);
        assert_eq!(reduce_cusp_word(&s.loops[0].sides()), Ok(0));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_cusp_word(&[L, L]), Ok(0));
        assert_eq!(reduce_cusp_word(&[L, R]), Ok(1));
        assert_eq!(reduce_cusp_word(&[L, R, L, R]), Ok(2));
        assert_eq!(reduce_cusp_word(&[L, L, R, R]), Ok(0));
        assert_eq!(reduce_cusp_word(&[]), Ok(0));
        assert_eq!(reduce_cusp_word(&[L, R, R]), Err(OddWord(3)));
        assert_eq!(reduce_cusp_word(&[L, R, L, L, R, L]), Ok(0));
        assert_eq!(reduce_cusp_word(&[R, L, L, R, R, L]), Ok(1));
        for w in [vec![L, R, L, R], vec![L, L, R, R], vec![L, R, R, L, R, L]] {
            assert_eq!(all_reductions(&w).len(), 1);
        }
    }

    #[test]
    fn evaluate_examples() {
        let one_loop = StateEvaluation {
            alpha: 1,
            beta: 0,
            loops: vec![LoopWord::default()],
        };
        assert_eq!(evaluate_state(&one_loop), ArrowPolynomial::a(1));
        let mark = |side| CuspMark {
            site: SiteId(0),
            arc: ArcKind::In,
            side,
        };
        let two = StateEvaluation {
            alpha: 0,
            beta: 1,
            loops: vec![
                LoopWord::default(),
                LoopWord {
                    marks: vec![mark(L), mark(R)],
                },
            ],
        };
        assert_eq!(evaluate_state(&two), parse_polynomial("A^-1*d*K1").unwrap());
    }

    #[test]
    fn labeled_numbers() {
        let mark = |site, side| CuspMark {
            site: SiteId(site),
            arc: ArcKind::In,
            side,
        };
        let lr = LoopWord {
            marks: vec![mark(0, L), mark(0, R)],
        };
        assert_eq!(labeled_arrow_number(&lr, false), 1);
        assert_eq!(labeled_arrow_number(&lr, true), -1);
        let ll = LoopWord {
            marks: vec![mark(0, L), mark(0, L)],
        };
        assert_eq!(labeled_arrow_number(&ll, false), 0);
        assert_eq!(labeled_arrow_number(&ll, true), 0);
        let lrlr = LoopWord {
            marks: vec![mark(0, L), mark(0, R), mark(1, L), mark(1, R)],
        };
        assert_eq!(labeled_arrow_number(&lrlr, false).abs(), 2);
    }

    #[test]
    fn cpair_examples() {
        let d = vh();
        let x = trace_state(&d, &SmoothingChoice(vec![Smoothing::Disoriented]));
        for flip in [false, true] {
            assert_eq!(cpair_linking(&x, &[flip]).abs(), 1);
        }
        let o = trace_state(&d, &SmoothingChoice(vec![Smoothing::Oriented]));
        assert_eq!(cpair_linking(&o, &[false]), 0);
    }

    #[test]
    fn oracle_agrees_on_small_diagrams() {
        let t = oracle_check(&vh());
        assert_eq!((t.states, t.loops, t.labelings), (2, 2, 4));
        assert!(t.agrees());
        let k = oracle_check(&parse_gauss("O1+ U2- U1+ O2- U3+ O4- O3+ U4-").unwrap());
        assert_eq!(k.states, 16);
        assert!(k.agrees(), "{k:?}");
    }

    #[test]
    fn free_loops_count() {
        let unknot = build_diagram(vec![], vec![Edge::free_loop(1)]).unwrap();
        assert_eq!(arrow_bracket(&unknot).unwrap(), ArrowPolynomial::one());
        let split = parse_gauss("O1- U1- |").unwrap();
        let kink = parse_gauss("O1- U1-").unwrap();
        assert_eq!(
            arrow_bracket(&split).unwrap(),
            &arrow_bracket(&kink).unwrap() * &d_power(1)
        );
    }

    #[test]
    fn crossing_cap() {
        let d = vh();
        assert_eq!(
            arrow_bracket_with(&d, 0).unwrap_err(),
            StateError::TooManyCrossings { found: 1, limit: 0 }
        );
    }

    #[test]
    fn reversal_invariance() {
        for text in [
            "X(3,1,4,2); V(1,3,2,4)",
            "X(1,4,2,5); X(3,6,4,1); X(5,2,6,3)",
        ] {
            let d = parse_pd(text).unwrap();
            assert_eq!(
                arrow_bracket(&d).unwrap(),
                arrow_bracket(&d.reversed()).unwrap()
            );
        }
        let d = parse_gauss("O1+ U2+ O3- U1+ O2+ U3-").unwrap();
        assert_eq!(
            arrow_bracket(&d).unwrap(),
            arrow_bracket(&d.reversed()).unwrap()
        );
    }

    fn arb_word() -> impl Strategy<Value = Vec<Side>> {
        (1usize..=6)
            .prop_flat_map(|half| prop::collection::vec(prop_oneof![Just(L), Just(R)], 2 * half))
    }

    proptest! {
        #[test]
        fn reduction_is_confluent(w in arb_word()) {
            let all = all_reductions(&w);
            prop_assert_eq!(all.len(), 1);
            prop_assert_eq!(*all.iter().next().unwrap() as u32, reduce_cusp_word(&w).unwrap());
        }

        #[test]
        fn labeled_number_matches_reduction(w in arb_word(), flip in any::<bool>()) {
            let word = LoopWord {
                marks: w.iter().map(|&side| CuspMark { site: SiteId(0), arc: ArcKind::In, side }).collect(),
            };
            prop_assert_eq!(labeled_arrow_number(&word, flip).unsigned_abs(), reduce_cusp_word(&w).unwrap());
        }
    }
}
