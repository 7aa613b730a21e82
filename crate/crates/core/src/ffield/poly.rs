//! Dense univariate polynomials over a [`BaseField`], constant term first.

use std::fmt::Write as _;

use super::base::BaseField;
use crate::error::{Error, Result};

/// A polynomial with no trailing zero coefficients; the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(Vec<u32>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    pub fn constant(c: u32) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = 1;
        Poly(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly, k: &BaseField) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_coeffs((0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, k: &BaseField) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_coeffs((0..n).map(|i| k.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: u32, k: &BaseField) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, k: &BaseField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly, k: &BaseField) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = k.inv(divisor.lead());
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let f = k.mul(c, lead_inv);
            quot[i - dd] = f;
            for (j, &d) in divisor.0.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = k.sub(rem[idx], k.mul(f, d));
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Poly, k: &BaseField) -> Poly {
        self.div_rem(divisor, k).1
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn exact_div(&self, divisor: &Poly, k: &BaseField) -> Poly {
        let (q, r) = self.div_rem(divisor, k);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, k: &BaseField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(k.inv(self.lead()), k)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly, k: &BaseField) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn lcm(&self, other: &Poly, k: &BaseField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other, k);
        self.exact_div(&g, k).mul(other, k).monic(k)
    }

    /// Inverse of `self` modulo `modulus`, if the two are coprime.
    pub fn inverse_mod(&self, modulus: &Poly, k: &BaseField) -> Option<Poly> {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus, k));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, k);
            let s = s0.sub(&q.mul(&s1, k), k);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the gcd up to a unit
        if r0.degree() != Some(0) {
            return None;
        }
        Some(s0.scale(k.inv(r0.lead()), k).rem(modulus, k))
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &Poly, k: &BaseField) -> Poly {
        let mut base = self.rem(modulus, k);
        let mut acc = Poly::one().rem(modulus, k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k).rem(modulus, k);
            }
            base = base.mul(&base, k).rem(modulus, k);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over GF(q): no factor of degree d ≤ deg/2, tested via
    /// gcd(f, x^(q^d) − x) = 1 (d = 1 is the root test).
    pub fn is_irreducible(&self, k: &BaseField) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = Poly::monomial(1);
        let mut frob = x.clone();
        for _ in 1..=n / 2 {
            frob = frob.pow_mod(k.order() as u128, self, k);
            if !frob.sub(&x, k).gcd(self, k).is_one() {
                return false;
            }
        }
        true
    }

    /// The monic irreducible polynomial of degree n whose lower coefficients,
    /// read as a base-q integer with the constant term least significant,
    /// are smallest.
    pub fn canonical_irreducible(k: &BaseField, n: usize) -> Result<Poly> {
        if n == 0 {
            return Err(Error::InvalidDegree("extension degree must be ≥ 1".into()));
        }
        let q = k.order() as u128;
        let count = q.checked_pow(n as u32).unwrap_or(u128::MAX);
        let mut code: u128 = 0;
        while code < count {
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut c = code;
            for _ in 0..n {
                coeffs.push((c % q) as u32);
                c /= q;
            }
            coeffs.push(1);
            let f = Poly(coeffs);
            if f.is_irreducible(k) {
                return Ok(f);
            }
            code += 1;
        }
        Err(Error::NoIrreducible(n))
    }

    /// Evaluate at a base-field point.
    pub fn eval(&self, x: u32, k: &BaseField) -> u32 {
        self.0.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// Text form with `^` exponents, e.g. `x^3+2x+1`; zero is `0`.
    pub fn format(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            match (i, c) {
                (0, c) => write!(out, "{c}").unwrap(),
                (_, 1) => {}
                (_, c) => write!(out, "{c}").unwrap(),
            }
            match i {
                0 => {}
                1 => out.push(var),
                _ => write!(out, "{var}^{i}").unwrap(),
            }
        }
        out
    }

    /// Parses the form produced by [`Poly::format`]; coefficients are base-field
    /// codes and repeated powers are summed.
    pub fn parse(s: &str, var: char, k: &BaseField) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly::zero();
        for term in s.split('+') {
            let bad = || Error::Parse(format!("bad polynomial term `{term}`"));
            let (coef, power) = match term.find(var) {
                None => (term, 0usize),
                Some(pos) => {
                    let rest = &term[pos + var.len_utf8()..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?
                    };
                    (&term[..pos], power)
                }
            };
            let c: u32 = match coef.trim_end_matches('*') {
                "" if power > 0 => 1,
                digits => digits.parse().map_err(|_| bad())?,
            };
            if c >= k.order() {
                return Err(Error::Parse(format!("coefficient {c} outside GF({})", k.order())));
            }
            acc = acc.add(&Poly::monomial(power).scale(c, k), k);
        }
        Ok(acc)
    }
}
