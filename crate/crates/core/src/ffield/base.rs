//! The base field K = GF(q), q = p^m.
//!
//! Elements are encoded as integers `0..q`. For m = 1 this is the residue
//! itself; for m > 1 it is the base-p digit vector of a polynomial in
//! GF(p)[s]/(g) with g the canonical irreducible of degree m over GF(p)
//! (constant digit least significant).

use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct BaseField {
    p: u32,
    m: u32,
    q: u32,
    /// Defining polynomial of the tower over GF(p); only used when m > 1.
    tower: Option<Poly>,
    /// `exp[i] = g^i` for a fixed primitive element g, stored twice over so
    /// that `exp[log a + log b]` needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.tower == other.tower
    }
}

impl Eq for BaseField {}

pub(crate) fn factor_prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

impl BaseField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, m) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > 1 << 16 {
            return Err(Error::FieldTooLarge(q));
        }
        if m == 1 {
            Ok(Self::prime(p))
        } else {
            let prime = Self::prime(p);
            let tower = Poly::canonical_irreducible(&prime, m as usize)?;
            Ok(Self::with_tower(p, m, tower))
        }
    }

    fn prime(p: u32) -> Self {
        let mul = |a: u32, b: u32| ((a as u64 * b as u64) % p as u64) as u32;
        let (exp, log) = build_tables(p, mul);
        BaseField { p, m: 1, q: p, tower: None, exp, log }
    }

    fn with_tower(p: u32, m: u32, tower: Poly) -> Self {
        let q = p.pow(m);
        let prime = Self::prime(p);
        let digits = |mut a: u32| {
            let mut v = Vec::with_capacity(m as usize);
            for _ in 0..m {
                v.push(a % p);
                a /= p;
            }
            Poly::from_coeffs(v)
        };
        let undigits = |poly: &Poly| {
            poly.coeffs()
                .iter()
                .rev()
                .fold(0u32, |acc, &d| acc * p + d)
        };
        let mul = |a: u32, b: u32| {
            let prod = digits(a).mul(&digits(b), &prime);
            undigits(&prod.rem(&tower, &prime))
        };
        let (exp, log) = build_tables(q, mul);
        BaseField { p, m, q, tower: Some(tower), exp, log }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            self.digitwise(a, b, |x, y| (x + y) % self.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            self.digitwise(a, 0, |x, _| (self.p - x) % self.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else if self.m == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse. Panics on zero; callers check first.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.q);
        let l = self.log[a as usize];
        if l == 0 {
            1
        } else {
            self.exp[(self.q - 1 - l) as usize]
        }
    }

    /// Integer n reduced into the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn digitwise(&self, mut a: u32, mut b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }
}

/// Exp/log tables for a cyclic multiplicative group of order q - 1,
/// using the smallest primitive element.
fn build_tables(q: u32, mul: impl Fn(u32, u32) -> u32) -> (Vec<u32>, Vec<u32>) {
    let order = (q - 1) as usize;
    let mut log = vec![0u32; q as usize];
    if q == 2 {
        return (vec![1, 1], log);
    }
    for g in 2..q {
        let mut exp = Vec::with_capacity(2 * order);
        let mut x = 1u32;
        loop {
            exp.push(x);
            x = mul(x, g);
            if x == 1 || exp.len() > order {
                break;
            }
        }
        if exp.len() == order {
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
            return (doubled, log);
        }
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}
