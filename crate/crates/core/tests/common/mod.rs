//! Brute-force oracles that share no code with the library: GF(p^n) with
//! p^n ≤ 64 as addition/multiplication tables over element indices, and
//! subspaces as bitmasks of their members.

#![allow(dead_code)]

use kemperman::{Element, Subspace};

pub struct SmallField {
    pub p: usize,
    pub n: usize,
    pub size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl SmallField {
    /// GF(p^n) modulo t^n + low[n−1] t^{n−1} + … + low[0]. Element index is
    /// Σ c_i p^i for coordinates c_i of 1, t, …, t^{n−1}.
    pub fn new(p: usize, low: &[usize]) -> Self {
        let n = low.len();
        let size = p.pow(n as u32);
        assert!(size <= 64);
        let digits = |x: usize| (0..n).map(|i| x / p.pow(i as u32) % p).collect::<Vec<_>>();
        let index = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                let (dx, dy) = (digits(x), digits(y));
                let s: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * size + y] = index(&s);
                // schoolbook product, then t^k ↦ −Σ low_i t^{k−n+i} from the top
                let mut prod = vec![0; 2 * n];
                for i in 0..n {
                    for j in 0..n {
                        prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
                    }
                }
                for k in (n..2 * n).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &l) in low.iter().enumerate() {
                        let pos = k - n + i;
                        prod[pos] = (prod[pos] + (p - c) * l) % p;
                    }
                }
                mul[x * size + y] = index(&prod[..n]);
            }
        }
        SmallField { p, n, size, add, mul }
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        (1..self.size).find(|&y| self.mul(x, y) == 1).expect("nonzero")
    }

    pub fn full(&self) -> u64 {
        if self.size == 64 { u64::MAX } else { (1u64 << self.size) - 1 }
    }

    pub fn members(set: u64) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| set >> i & 1 == 1)
    }

    /// Closure of `set` under adding multiples of g.
    fn extend(&self, set: u64, g: usize) -> u64 {
        let mut out = set;
        let mut kg = g;
        for _ in 1..self.p {
            for s in Self::members(set) {
                out |= 1 << self.add(s, kg);
            }
            kg = self.add(kg, g);
        }
        out
    }

    pub fn span(&self, gens: impl IntoIterator<Item = usize>) -> u64 {
        gens.into_iter().fold(1u64, |acc, g| if acc >> g & 1 == 1 { acc } else { self.extend(acc, g) })
    }

    pub fn basis(&self, set: u64) -> Vec<usize> {
        let mut cur = 1u64;
        let mut out = Vec::new();
        for x in Self::members(set) {
            if cur >> x & 1 == 0 {
                cur = self.extend(cur, x);
                out.push(x);
            }
        }
        out
    }

    pub fn dim(&self, set: u64) -> usize {
        let mut size = set.count_ones() as usize;
        let mut d = 0;
        while size > 1 {
            size /= self.p;
            d += 1;
        }
        d
    }

    pub fn product_span(&self, a: u64, b: u64) -> u64 {
        let (ba, bb) = (self.basis(a), self.basis(b));
        self.span(ba.iter().flat_map(|&x| bb.iter().map(move |&y| (x, y))).map(|(x, y)| self.mul(x, y)))
    }

    pub fn scale(&self, x: usize, set: u64) -> u64 {
        Self::members(set).fold(0, |acc, s| acc | 1 << self.mul(x, s))
    }

    pub fn stabilizer(&self, v: u64) -> u64 {
        (0..self.size).filter(|&x| self.scale(x, v) & !v == 0).fold(0, |acc, x| acc | 1 << x)
    }

    pub fn is_field(&self, v: u64) -> bool {
        v >> 1 & 1 == 1 && Self::members(v).all(|x| self.scale(x, v) & !v == 0)
    }

    /// Every subspace, by repeatedly adjoining one element to known spans.
    pub fn all_subspaces(&self) -> Vec<u64> {
        let mut seen = std::collections::BTreeSet::from([1u64]);
        let mut frontier = vec![1u64];
        while let Some(v) = frontier.pop() {
            for x in 0..self.size {
                if v >> x & 1 == 0 {
                    let w = self.extend(v, x);
                    if seen.insert(w) {
                        frontier.push(w);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn index_of(&self, e: &Element) -> usize {
        match e {
            Element::Vector(v) => v.iter().rev().fold(0, |acc, &c| acc * self.p + c as usize),
            Element::Fraction { .. } => panic!("finite field element expected"),
        }
    }

    pub fn element(&self, x: usize) -> Element {
        Element::Vector((0..self.n).map(|i| (x / self.p.pow(i as u32) % self.p) as u32).collect())
    }

    pub fn mask(&self, s: &Subspace) -> u64 {
        self.span(s.basis().iter().map(|e| self.index_of(e)))
    }
}

/// The fields used by the acceptance criteria with their defining moduli.
pub fn gf16() -> SmallField {
    SmallField::new(2, &[1, 1, 0, 0])
}

pub fn gf27() -> SmallField {
    // t³ + 2t + 1
    SmallField::new(3, &[1, 2, 0])
}

pub fn gf32() -> SmallField {
    SmallField::new(2, &[1, 0, 1, 0, 0])
}

pub fn gf64() -> SmallField {
    SmallField::new(2, &[1, 1, 0, 0, 0, 0])
}

pub fn gf8() -> SmallField {
    SmallField::new(2, &[1, 1, 0])
}

/// Rank over GF(p) of polynomial coefficient vectors.
pub fn poly_rank(p: u64, polys: &[Vec<u64>]) -> usize {
    let width = polys.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<u64>> = polys
        .iter()
        .map(|v| {
            let mut r: Vec<u64> = v.iter().map(|c| c % p).collect();
            r.resize(width, 0);
            r
        })
        .collect();
    let inv = |a: u64| (1..p).find(|&b| a * b % p == 1).expect("unit");
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, pivot);
        let f = inv(m[rank][col]);
        for v in m[rank].iter_mut() {
            *v = *v * f % p;
        }
        let row = m[rank].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != rank && other[col] != 0 {
                let c = other[col];
                for (x, &y) in other.iter_mut().zip(&row) {
                    *x = (*x + p * p - c * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}
