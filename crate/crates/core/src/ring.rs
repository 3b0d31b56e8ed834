//! Exact arithmetic in Z[A, A^-1, K1, K2, ...].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `A^a_power * K_{i1} * K_{i2} * ...`, with the K indices kept sorted
/// (repeated indices encode powers).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrowMonomial {
    pub a_power: i32,
    k_part: Vec<u32>,
}

impl ArrowMonomial {
    pub fn new(a_power: i32, mut k_part: Vec<u32>) -> Self {
        assert!(k_part.iter().all(|&i| i > 0), "K indices start at 1");
        k_part.sort_unstable();
        ArrowMonomial { a_power, k_part }
    }

    pub fn one() -> Self {
        ArrowMonomial {
            a_power: 0,
            k_part: Vec::new(),
        }
    }

    pub fn a(power: i32) -> Self {
        ArrowMonomial {
            a_power: power,
            k_part: Vec::new(),
        }
    }

    /// Sorted K indices, repeated according to multiplicity.
    pub fn k_part(&self) -> &[u32] {
        &self.k_part
    }

    /// `(index, exponent)` pairs in increasing index order.
    pub fn k_powers(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &i in &self.k_part {
            match out.last_mut() {
                Some((j, n)) if *j == i => *n += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }

    pub fn k_degree(&self) -> u32 {
        self.k_part.iter().sum()
    }

    pub fn has_k(&self) -> bool {
        !self.k_part.is_empty()
    }

    fn times(&self, other: &ArrowMonomial) -> ArrowMonomial {
        let mut k_part = Vec::with_capacity(self.k_part.len() + other.k_part.len());
        k_part.extend_from_slice(&self.k_part);
        k_part.extend_from_slice(&other.k_part);
        k_part.sort_unstable();
        ArrowMonomial {
            a_power: self.a_power + other.a_power,
            k_part,
        }
    }
}

impl Ord for ArrowMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k_degree()
            .cmp(&other.k_degree())
            .then_with(|| self.k_part.cmp(&other.k_part))
            .then_with(|| self.a_power.cmp(&other.a_power))
    }
}

impl PartialOrd for ArrowMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients. Zero
/// coefficients are never stored, so structural equality is ring equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ArrowPolynomial {
    terms: BTreeMap<ArrowMonomial, BigInt>,
}

impl ArrowPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::term(c, ArrowMonomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: ArrowMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    /// `A^power`.
    pub fn a(power: i32) -> Self {
        Self::term(1, ArrowMonomial::a(power))
    }

    /// `K_index`.
    pub fn k(index: u32) -> Self {
        Self::term(1, ArrowMonomial::new(0, vec![index]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ArrowMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &ArrowMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: ArrowMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn has_k(&self) -> bool {
        self.terms.keys().any(|m| m.has_k())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Image under a map on monomials (coefficients are summed on collisions).
    pub fn map_monomials(&self, f: impl Fn(&ArrowMonomial) -> ArrowMonomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

pub fn poly_add(p: &ArrowPolynomial, q: &ArrowPolynomial) -> ArrowPolynomial {
    p + q
}

pub fn poly_mul(p: &ArrowPolynomial, q: &ArrowPolynomial) -> ArrowPolynomial {
    p * q
}

/// `d^k` with `d = -A^2 - A^-2`.
pub fn d_power(k: u32) -> ArrowPolynomial {
    // (-1)^k * sum_j C(k, j) A^{2k - 4j}
    let mut out = ArrowPolynomial::zero();
    let mut binom = BigInt::one();
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    for j in 0..=k {
        out.add_term(ArrowMonomial::a(2 * k as i32 - 4 * j as i32), &binom * sign);
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    out
}

/// `(-A^3)^(-writhe) * p`.
pub fn normalize(p: &ArrowPolynomial, writhe: i32) -> ArrowPolynomial {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let shift = -3 * writhe;
    let mut out = ArrowPolynomial::zero();
    for (m, c) in p.terms() {
        let mut m = m.clone();
        m.a_power += shift;
        out.add_term(m, c * sign);
    }
    out
}

/// Flat specialization: `A = 1` (so `d = -2`), leaving a polynomial in the K_i.
pub fn substitute_flat(p: &ArrowPolynomial) -> ArrowPolynomial {
    p.map_monomials(|m| ArrowMonomial::new(0, m.k_part.clone()))
}

/// Sends every `K_n` to the single variable `K1`.
pub fn collapse_k(p: &ArrowPolynomial) -> ArrowPolynomial {
    p.map_monomials(|m| ArrowMonomial::new(m.a_power, vec![1; m.k_part.len()]))
}

impl<'a> Add<&'a ArrowPolynomial> for &'a ArrowPolynomial {
    type Output = ArrowPolynomial;
    fn add(self, rhs: &ArrowPolynomial) -> ArrowPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ArrowPolynomial {
    type Output = ArrowPolynomial;
    fn add(mut self, rhs: ArrowPolynomial) -> ArrowPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&ArrowPolynomial> for ArrowPolynomial {
    fn add_assign(&mut self, rhs: &ArrowPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &ArrowPolynomial {
    type Output = ArrowPolynomial;
    fn neg(self) -> ArrowPolynomial {
        ArrowPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ArrowPolynomial {
    type Output = ArrowPolynomial;
    fn neg(self) -> ArrowPolynomial {
        -&self
    }
}

impl<'a> Sub<&'a ArrowPolynomial> for &'a ArrowPolynomial {
    type Output = ArrowPolynomial;
    fn sub(self, rhs: &ArrowPolynomial) -> ArrowPolynomial {
        self + &(-rhs)
    }
}

impl Sub for ArrowPolynomial {
    type Output = ArrowPolynomial;
    fn sub(self, rhs: ArrowPolynomial) -> ArrowPolynomial {
        &self - &rhs
    }
}

impl<'a> Mul<&'a ArrowPolynomial> for &'a ArrowPolynomial {
    type Output = ArrowPolynomial;
    fn mul(self, rhs: &ArrowPolynomial) -> ArrowPolynomial {
        let mut out = ArrowPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for ArrowPolynomial {
    type Output = ArrowPolynomial;
    fn mul(self, rhs: ArrowPolynomial) -> ArrowPolynomial {
        &self * &rhs
    }
}
