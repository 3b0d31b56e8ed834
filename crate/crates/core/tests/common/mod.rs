#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use arrowpoly::state::Side;
use arrowpoly::{ArrowMonomial, ArrowPolynomial};
use rand::seq::SliceRandom;
use rand::Rng;

/// Bracket computed straight from PD text with a union-find over edge labels,
/// all K variables set to 1. `V(a,b,c,d)` joins a-c and b-d; an X site's A
/// smoothing joins its first two labels and its last two.
pub fn kauffman_oracle(pd: &str) -> ArrowPolynomial {
    let mut xs: Vec<[u32; 4]> = Vec::new();
    let mut vs: Vec<[u32; 4]> = Vec::new();
    for item in pd.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let kind = &item[..1];
        let nums: Vec<u32> = item[2..item.len() - 1]
            .split(',')
            .map(|s| s.trim().parse().unwrap())
            .collect();
        let q = [nums[0], nums[1], nums[2], nums[3]];
        match kind {
            "X" => xs.push(q),
            "V" => vs.push(q),
            _ => panic!("unexpected item {item}"),
        }
    }
    let labels: BTreeSet<u32> = xs.iter().chain(&vs).flatten().copied().collect();
    if labels.is_empty() {
        return ArrowPolynomial::one();
    }
    let index: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let d = ArrowPolynomial::a(2) * ArrowPolynomial::constant(-1) - ArrowPolynomial::a(-2);
    let mut total = ArrowPolynomial::zero();
    for bits in 0..1u64 << xs.len() {
        let mut uf = UnionFind::new(labels.len());
        for v in &vs {
            uf.union(index[&v[0]], index[&v[2]]);
            uf.union(index[&v[1]], index[&v[3]]);
        }
        let mut a_count = 0i32;
        for (k, x) in xs.iter().enumerate() {
            if bits >> k & 1 == 0 {
                a_count += 1;
                uf.union(index[&x[0]], index[&x[1]]);
                uf.union(index[&x[2]], index[&x[3]]);
            } else {
                a_count -= 1;
                uf.union(index[&x[0]], index[&x[3]]);
                uf.union(index[&x[1]], index[&x[2]]);
            }
        }
        let loops = uf.classes();
        total = total + ArrowPolynomial::a(a_count) * d.pow(loops as u32 - 1);
    }
    total
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Every `K_n` set to 1.
pub fn k_to_one(p: &ArrowPolynomial) -> ArrowPolynomial {
    p.map_monomials(|m| ArrowMonomial::a(m.a_power))
}

/// `(-A^3)^(-w) * p`
pub fn normalize_by(p: &ArrowPolynomial, w: i32) -> ArrowPolynomial {
    let sign = if w % 2 == 0 { 1 } else { -1 };
    ArrowPolynomial::constant(sign) * ArrowPolynomial::a(-3 * w) * p.clone()
}

/// A → A^-1 with K variables untouched.
pub fn invert_a(p: &ArrowPolynomial) -> ArrowPolynomial {
    p.map_monomials(|m| ArrowMonomial::new(-m.a_power, m.k_part().to_vec()))
}

/// Random Gauss code with `n` crossings spread over `components` non-empty components.
pub fn random_gauss<R: Rng>(rng: &mut R, n: u32, components: usize) -> String {
    let mut visits: Vec<(u32, bool)> = (1..=n).flat_map(|l| [(l, true), (l, false)]).collect();
    visits.shuffle(rng);
    let signs: Vec<char> = (0..=n).map(|_| if rng.gen() { '+' } else { '-' }).collect();
    let parts = components.clamp(1, visits.len().max(1));
    let mut cuts: Vec<usize> = (1..visits.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort();
    let mut out = Vec::new();
    let mut prev = 0;
    for c in cuts.into_iter().chain([visits.len()]) {
        let comp: Vec<String> = visits[prev..c]
            .iter()
            .map(|&(l, o)| format!("{}{l}{}", if o { 'O' } else { 'U' }, signs[l as usize]))
            .collect();
        out.push(comp.join(" "));
        prev = c;
    }
    out.join(" | ")
}

/// Every distinct half-length reachable by deleting cyclically adjacent equal
/// letters in every possible order until none remain.
pub fn all_order_results(word: &[Side]) -> HashSet<usize> {
    fn go(w: Vec<Side>, seen: &mut HashMap<Vec<Side>, ()>, out: &mut HashSet<usize>) {
        if seen.insert(w.clone(), ()).is_some() {
            return;
        }
        let n = w.len();
        let mut stuck = true;
        for i in 0..n {
            let j = (i + 1) % n;
            if n >= 2 && i != j && w[i] == w[j] {
                stuck = false;
                let next: Vec<Side> = (0..n).filter(|&k| k != i && k != j).map(|k| w[k]).collect();
                go(next, seen, out);
            }
        }
        if stuck {
            out.insert(n / 2);
        }
    }
    let mut out = HashSet::new();
    go(word.to_vec(), &mut HashMap::new(), &mut out);
    out
}

/// Half-length after deleting random cyclically adjacent equal pairs until none remain.
pub fn random_order_result<R: Rng>(word: &[Side], rng: &mut R) -> usize {
    let mut w = word.to_vec();
    loop {
        let n = w.len();
        let spots: Vec<usize> = (0..n)
            .filter(|&i| n >= 2 && w[i] == w[(i + 1) % n])
            .collect();
        match spots.choose(rng) {
            None => return n / 2,
            Some(&i) => {
                let j = (i + 1) % n;
                w = (0..n).filter(|&k| k != i && k != j).map(|k| w[k]).collect();
            }
        }
    }
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Vec<Side> {
    let len = 2 * rng.gen_range(0..=max_len / 2);
    (0..len)
        .map(|_| if rng.gen() { Side::L } else { Side::R })
        .collect()
}
