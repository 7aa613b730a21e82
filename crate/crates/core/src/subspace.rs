//! Finite-dimensional K-subspaces of L in canonical form.
//!
//! In GF(q^n) a subspace is the reduced row echelon basis of its coordinate
//! vectors. In GF(q)(x) every finite-dimensional subspace V has a least monic
//! D with D·V ⊂ K[x]; V is stored as D together with the reduced echelon basis
//! of the numerator space D·V (coefficient vectors, power of x ascending).
//! Both forms are unique, so equality is structural.

use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{Ambient, Element, Poly};
use crate::linalg::{self, Row};

/// Default enumeration cap: q^dim ≤ 2^20.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 20;

#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: Arc<Ambient>,
    den: Poly,
    rows: Vec<Row>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den
            && self.rows == other.rows
            && (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient)
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.den.hash(state);
        self.rows.hash(state);
    }
}

/// A spanning set in common coordinates: numerator rows over one denominator.
#[derive(Clone, Debug)]
pub(crate) struct Raw {
    pub den: Poly,
    pub rows: Vec<Row>,
}

pub(crate) fn same_ambient(a: &Arc<Ambient>, b: &Arc<Ambient>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::MixedAmbients)
    }
}

/// Re-expresses several raw spanning sets over their least common
/// denominator, padding rows to a common width.
pub(crate) fn embed(ambient: &Ambient, parts: &[Raw]) -> (Poly, Vec<Vec<Row>>) {
    if ambient.is_extension() {
        return (Poly::one(), parts.iter().map(|p| p.rows.clone()).collect());
    }
    let k = ambient.base();
    let common = parts.iter().fold(Poly::one(), |acc, p| acc.lcm(&p.den, k));
    let mut out: Vec<Vec<Row>> = parts
        .iter()
        .map(|p| {
            let factor = common.exact_div(&p.den, k);
            p.rows
                .iter()
                .map(|r| Poly::from_coeffs(r.clone()).mul(&factor, k).into_coeffs())
                .collect()
        })
        .collect();
    let width = out.iter().flatten().map(|r| r.len()).max().unwrap_or(0);
    for r in out.iter_mut().flatten() {
        r.resize(width, 0);
    }
    (common, out)
}

impl Subspace {
    /// Canonicalizes a raw spanning set.
    pub(crate) fn from_raw(ambient: Arc<Ambient>, raw: Raw) -> Result<Self> {
        let k = ambient.base();
        let Raw { mut den, mut rows } = raw;
        if ambient.is_extension() {
            linalg::rref(k, &mut rows);
            return Ok(Subspace { ambient, den: Poly::one(), rows });
        }
        let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        for r in rows.iter_mut() {
            r.resize(width, 0);
        }
        linalg::rref(k, &mut rows);
        if rows.is_empty() {
            return Ok(Subspace { ambient, den: Poly::one(), rows });
        }
        let g = rows
            .iter()
            .fold(den.clone(), |acc, r| acc.gcd(&Poly::from_coeffs(r.clone()), k));
        if !g.is_one() {
            den = den.exact_div(&g, k);
            rows = rows
                .iter()
                .map(|r| Poly::from_coeffs(r.clone()).exact_div(&g, k).into_coeffs())
                .collect();
            let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
            for r in rows.iter_mut() {
                r.resize(width, 0);
            }
            linalg::rref(k, &mut rows);
        }
        let top = rows
            .iter()
            .filter_map(|r| r.iter().rposition(|&c| c != 0))
            .max()
            .unwrap_or(0);
        for r in rows.iter_mut() {
            r.truncate(top + 1);
        }
        let cap = ambient.max_degree().unwrap_or(usize::MAX);
        let needed = top.max(den.degree().unwrap_or(0));
        if needed > cap {
            return Err(Error::DegreeCap { cap, needed });
        }
        Ok(Subspace { ambient, den, rows })
    }

    pub(crate) fn raw(&self) -> Raw {
        Raw { den: self.den.clone(), rows: self.rows.clone() }
    }

    /// The zero subspace.
    pub fn zero(ambient: &Arc<Ambient>) -> Self {
        Subspace { ambient: ambient.clone(), den: Poly::one(), rows: Vec::new() }
    }

    /// K = span{1}.
    pub fn base_field(ambient: &Arc<Ambient>) -> Self {
        Self::span(ambient, &[ambient.one()]).expect("1 spans K")
    }

    /// All of L; only for finite extensions.
    pub fn whole(ambient: &Arc<Ambient>) -> Result<Self> {
        let n = ambient
            .degree()
            .ok_or_else(|| Error::Precondition("the rational function field is infinite-dimensional".into()))?;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        Ok(Subspace { ambient: ambient.clone(), den: Poly::one(), rows })
    }

    /// The K-linear span of `gens`.
    pub fn span(ambient: &Arc<Ambient>, gens: &[Element]) -> Result<Self> {
        for g in gens {
            ambient.check(g).map_err(|_| Error::MixedAmbients)?;
        }
        let raw = if ambient.is_extension() {
            Raw {
                den: Poly::one(),
                rows: gens
                    .iter()
                    .map(|g| match g {
                        Element::Vector(v) => v.clone(),
                        Element::Fraction { .. } => unreachable!("checked"),
                    })
                    .collect(),
            }
        } else {
            let parts: Vec<Raw> = gens
                .iter()
                .map(|g| match g {
                    Element::Fraction { num, den } => Raw {
                        den: den.clone(),
                        rows: vec![num.coeffs().to_vec()],
                    },
                    Element::Vector(_) => unreachable!("checked"),
                })
                .collect();
            let (den, embedded) = embed(ambient, &parts);
            Raw { den, rows: embedded.into_iter().flatten().collect() }
        };
        Self::from_raw(ambient.clone(), raw)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Common denominator (1 in finite extensions).
    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Echelon rows: ambient coordinates, or numerator coefficient vectors.
    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    fn row_element(&self, row: &[u32]) -> Element {
        if self.ambient.is_extension() {
            Element::Vector(row.to_vec())
        } else {
            self.ambient
                .fraction(Poly::from_coeffs(row.to_vec()), self.den.clone())
                .expect("subspace elements respect the degree cap")
        }
    }

    /// The echelon basis as elements.
    pub fn basis(&self) -> Vec<Element> {
        self.rows.iter().map(|r| self.row_element(r)).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        same_ambient(&self.ambient, &other.ambient)?;
        let (den, parts) = embed(&self.ambient, &[self.raw(), other.raw()]);
        let rows = parts.into_iter().flatten().collect();
        Self::from_raw(self.ambient.clone(), Raw { den, rows })
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        same_ambient(&self.ambient, &other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ambient));
        }
        let (den, parts) = embed(&self.ambient, &[self.raw(), other.raw()]);
        let rows = linalg::intersect(self.ambient.base(), &parts[0], &parts[1]);
        Self::from_raw(self.ambient.clone(), Raw { den, rows })
    }

    /// Raw spanning rows of xA, without canonicalization.
    pub(crate) fn scaled_raw(&self, x: &Element) -> Result<Raw> {
        let a = &self.ambient;
        match x {
            Element::Vector(_) => {
                let rows = self
                    .rows
                    .iter()
                    .map(|r| match a.mul(x, &Element::Vector(r.clone()))? {
                        Element::Vector(v) => Ok(v),
                        Element::Fraction { .. } => unreachable!(),
                    })
                    .collect::<Result<_>>()?;
                Ok(Raw { den: Poly::one(), rows })
            }
            Element::Fraction { num, den } => {
                let k = a.base();
                let rows = self
                    .rows
                    .iter()
                    .map(|r| Poly::from_coeffs(r.clone()).mul(num, k).into_coeffs())
                    .collect();
                Ok(Raw { den: self.den.mul(den, k), rows })
            }
        }
    }

    /// xA for nonzero x.
    pub fn scale(&self, x: &Element) -> Result<Subspace> {
        self.ambient.check(x).map_err(|_| Error::MixedAmbients)?;
        if self.ambient.is_zero(x) {
            return Err(Error::Precondition("scaling by zero".into()));
        }
        Self::from_raw(self.ambient.clone(), self.scaled_raw(x)?)
    }

    /// Raw spanning rows of all pairwise basis products.
    pub(crate) fn product_raw(&self, other: &Subspace) -> Result<Raw> {
        let a = &self.ambient;
        let k = a.base();
        if a.is_extension() {
            let mut rows = Vec::with_capacity(self.dim() * other.dim());
            for r in &self.rows {
                let x = Element::Vector(r.clone());
                for s in &other.rows {
                    match a.mul(&x, &Element::Vector(s.clone()))? {
                        Element::Vector(v) => rows.push(v),
                        Element::Fraction { .. } => unreachable!(),
                    }
                }
            }
            Ok(Raw { den: Poly::one(), rows })
        } else {
            let den = self.den.mul(&other.den, k);
            let mut rows = Vec::with_capacity(self.dim() * other.dim());
            for r in &self.rows {
                let x = Poly::from_coeffs(r.clone());
                for s in &other.rows {
                    rows.push(x.mul(&Poly::from_coeffs(s.clone()), k).into_coeffs());
                }
            }
            Ok(Raw { den, rows })
        }
    }

    /// ⟨AB⟩, the span of all products ab.
    pub fn product(&self, other: &Subspace) -> Result<Subspace> {
        same_ambient(&self.ambient, &other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ambient));
        }
        Self::from_raw(self.ambient.clone(), self.product_raw(other)?)
    }

    pub fn contains(&self, v: &Element) -> Result<bool> {
        self.ambient.check(v).map_err(|_| Error::MixedAmbients)?;
        if self.ambient.is_zero(v) {
            return Ok(true);
        }
        if self.is_zero() {
            return Ok(false);
        }
        let k = self.ambient.base();
        let (mut basis, mut target) = match v {
            Element::Vector(x) => (self.rows.clone(), x.clone()),
            Element::Fraction { num, den } => {
                let point = Raw { den: den.clone(), rows: vec![num.coeffs().to_vec()] };
                let (_, mut parts) = embed(&self.ambient, &[self.raw(), point]);
                let target = parts.pop().unwrap().pop().unwrap();
                (parts.pop().unwrap(), target)
            }
        };
        let pivots = linalg::rref(k, &mut basis);
        linalg::reduce(k, &basis, &pivots, &mut target);
        Ok(target.iter().all(|&c| c == 0))
    }

    /// A ⊆ B.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        same_ambient(&self.ambient, &other.ambient)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(self.sum(other)?.dim() == other.dim())
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        same_ambient(&self.ambient, &other.ambient)?;
        Ok(self == other)
    }

    /// Number of nonzero elements, q^dim − 1.
    pub fn nonzero_count(&self) -> u128 {
        (self.ambient.base().order() as u128)
            .checked_pow(self.dim() as u32)
            .map_or(u128::MAX, |c| c - 1)
    }

    /// All nonzero elements, each once. Coefficient tuples over the echelon
    /// basis are visited as base-q counters with the first basis row as the
    /// least significant digit.
    pub fn enumerate_nonzero(&self) -> Result<NonzeroElements<'_>> {
        self.enumerate_nonzero_capped(DEFAULT_ENUM_CAP)
    }

    pub fn enumerate_nonzero_capped(&self, cap: u128) -> Result<NonzeroElements<'_>> {
        let total = self.nonzero_count();
        if total >= cap {
            return Err(Error::EnumerationCap(total + 1));
        }
        Ok(NonzeroElements { space: self, coeffs: vec![0; self.dim()], remaining: total, projective: false })
    }

    /// One representative per K*-orbit: the tuples whose last nonzero
    /// coefficient is 1, in the same counter order.
    pub(crate) fn enumerate_projective(&self) -> Result<NonzeroElements<'_>> {
        let mut it = self.enumerate_nonzero()?;
        it.projective = true;
        Ok(it)
    }

    /// Multi-line text form: header, then one echelon row per line.
    pub fn to_text(&self) -> String {
        let mut out = self.ambient.descriptor();
        if !self.ambient.is_extension() {
            write!(out, " den={}", self.den.format('x')).unwrap();
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&join(r));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Subspace> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty subspace text".into()))?;
        let mut words = header.split_whitespace();
        let ambient = Arc::new(Ambient::parse(words.next().unwrap_or(""))?);
        let den = match words.next() {
            Some(w) => {
                let d = w
                    .strip_prefix("den=")
                    .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
                Poly::parse(d, 'x', ambient.base())?
            }
            None => Poly::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let den = den.monic(ambient.base());
        let rows = lines
            .map(|l| parse_row(l, &ambient))
            .collect::<Result<Vec<_>>>()?;
        Self::parse_rows(&ambient, den, rows)
    }

    fn parse_rows(ambient: &Arc<Ambient>, den: Poly, rows: Vec<Row>) -> Result<Subspace> {
        if let Some(n) = ambient.degree() {
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!("rows must have {n} coordinates")));
            }
        }
        Self::from_raw(ambient.clone(), Raw { den, rows })
    }

    /// Single-line form for reports: `[r0;r1;…]`, with a `den=` entry first
    /// in the rational ambient.
    pub fn to_compact(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.ambient.is_extension() {
            parts.push(format!("den={}", self.den.format('x')));
        }
        parts.extend(self.rows.iter().map(|r| join(r)));
        format!("[{}]", parts.join(";"))
    }

    pub fn from_compact(ambient: &Arc<Ambient>, s: &str) -> Result<Subspace> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad compact subspace `{s}`")))?;
        let mut den = Poly::one();
        let mut rows = Vec::new();
        for part in inner.split(';').filter(|p| !p.trim().is_empty()) {
            if let Some(d) = part.trim().strip_prefix("den=") {
                den = Poly::parse(d, 'x', ambient.base())?.monic(ambient.base());
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
            } else {
                rows.push(parse_row(part, ambient)?);
            }
        }
        Self::parse_rows(ambient, den, rows)
    }
}

fn join(r: &[u32]) -> String {
    r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_row(line: &str, ambient: &Ambient) -> Result<Row> {
    let row: Row = line
        .split(',')
        .map(|c| c.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad row `{line}`")))?;
    if row.iter().any(|&c| c >= ambient.base().order()) {
        return Err(Error::Parse(format!("coefficient out of range in `{line}`")));
    }
    Ok(row)
}

/// Iterator over the nonzero elements of a subspace.
pub struct NonzeroElements<'a> {
    space: &'a Subspace,
    coeffs: Vec<u32>,
    remaining: u128,
    projective: bool,
}

impl NonzeroElements<'_> {
    fn advance(&mut self) -> bool {
        let q = self.space.ambient.base().order();
        if self.remaining == 0 {
            return false;
        }
        self.remaining -= 1;
        for c in self.coeffs.iter_mut() {
            *c += 1;
            if *c < q {
                return true;
            }
            *c = 0;
        }
        false
    }
}

impl Iterator for NonzeroElements<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        loop {
            if !self.advance() {
                return None;
            }
            if self.projective && self.coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            break;
        }
        let k = self.space.ambient.base();
        let width = self.space.rows.first().map_or(0, |r| r.len());
        let mut acc = vec![0u32; width];
        for (&c, row) in self.coeffs.iter().zip(&self.space.rows) {
            if c == 0 {
                continue;
            }
            for (a, &r) in acc.iter_mut().zip(row) {
                *a = k.add(*a, k.mul(c, r));
            }
        }
        Some(self.space.row_element(&acc))
    }
}

/// Gaussian binomial coefficient [n choose k]_q, saturating.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = q.saturating_pow((n - i) as u32).saturating_sub(1);
        let b = q.saturating_pow((i + 1) as u32).saturating_sub(1);
        num = num.saturating_mul(a);
        den = den.saturating_mul(b);
    }
    num / den
}

/// Every subspace of GF(q^n) (optionally only those of dimension `dim`),
/// enumerated as echelon matrices: by dimension, then pivot set, then free
/// entries as a counter.
pub fn all_subspaces(ambient: &Arc<Ambient>, dim: Option<usize>) -> Result<Vec<Subspace>> {
    let n = ambient
        .degree()
        .ok_or_else(|| Error::Precondition("subspace enumeration needs a finite extension".into()))?;
    let q = ambient.base().order();
    let dims: Vec<usize> = match dim {
        Some(d) => vec![d],
        None => (0..=n).collect(),
    };
    let total: u128 = dims.iter().map(|&d| gaussian_binomial(n, d, q as u128)).sum();
    if total > DEFAULT_ENUM_CAP {
        return Err(Error::EnumerationCap(total));
    }
    let mut out = Vec::with_capacity(total as usize);
    for d in dims {
        for pivots in combinations(n, d) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &p)| {
                    let pivots = &pivots;
                    ((p + 1)..n).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let mut vals = vec![0u32; free.len()];
            loop {
                let mut rows = vec![vec![0u32; n]; d];
                for (i, &p) in pivots.iter().enumerate() {
                    rows[i][p] = 1;
                }
                for (&(i, c), &v) in free.iter().zip(&vals) {
                    rows[i][c] = v;
                }
                out.push(Subspace { ambient: ambient.clone(), den: Poly::one(), rows });
                let mut carry = true;
                for v in vals.iter_mut() {
                    *v += 1;
                    if *v < q {
                        carry = false;
                        break;
                    }
                    *v = 0;
                }
                if carry {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
