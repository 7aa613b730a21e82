use std::fs;

use crate::error::{Error, Result};

use super::set::GSet;

pub const MAX_ORDER: usize = 64;

/// A finite group of order ≤ 64 given by its Cayley table, with per-byte
/// translate tables so that xS and Sx cost at most eight lookups.
#[derive(Clone, Debug)]
pub struct GroupTable {
    descriptor: String,
    order: usize,
    cayley: Vec<u8>,
    identity: usize,
    inverse: Vec<usize>,
    abelian: bool,
    chunks: usize,
    left: Vec<u64>,
    right: Vec<u64>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.cayley == other.cayley
    }
}

impl Eq for GroupTable {}

impl GroupTable {
    /// Validates a Cayley table: entries in range, Latin square, identity,
    /// and associativity by the full triple loop.
    pub fn from_table(descriptor: &str, table: &[Vec<usize>]) -> Result<Self> {
        let order = table.len();
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Descriptor(format!("{descriptor}: order must be in 1..=64")));
        }
        let bad = |what: &str| Err(Error::Descriptor(format!("{descriptor}: {what}")));
        if table.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return bad("malformed table");
        }
        let mut cayley = Vec::with_capacity(order * order);
        for r in table {
            cayley.extend(r.iter().map(|&x| x as u8));
        }
        let m = |a: usize, b: usize| cayley[a * order + b] as usize;
        let Some(identity) = (0..order).find(|&e| (0..order).all(|x| m(e, x) == x && m(x, e) == x)) else {
            return bad("no identity");
        };
        let mut inverse = vec![usize::MAX; order];
        for (a, slot) in inverse.iter_mut().enumerate() {
            match (0..order).find(|&b| m(a, b) == identity && m(b, a) == identity) {
                Some(b) => *slot = b,
                None => return bad("element without inverse"),
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return bad("not associative");
                    }
                }
            }
        }
        let abelian = (0..order).all(|a| (0..order).all(|b| m(a, b) == m(b, a)));
        let chunks = order.div_ceil(8);
        let mut left = vec![0u64; order * chunks * 256];
        let mut right = vec![0u64; order * chunks * 256];
        for a in 0..order {
            for c in 0..chunks {
                let base = (a * chunks + c) * 256;
                for byte in 1..256usize {
                    let low = byte.trailing_zeros() as usize;
                    let x = 8 * c + low;
                    let rest = byte & (byte - 1);
                    let (l, r) = if x < order { (1u64 << m(a, x), 1u64 << m(x, a)) } else { (0, 0) };
                    left[base + byte] = left[base + rest] | l;
                    right[base + byte] = right[base + rest] | r;
                }
            }
        }
        Ok(GroupTable {
            descriptor: descriptor.to_string(),
            order,
            cayley,
            identity,
            inverse,
            abelian,
            chunks,
            left,
            right,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let t: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&format!("cyclic:{n}"), &t)
    }

    /// Order 2n; r^i s^j has index i + n·j.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 || 2 * n > MAX_ORDER {
            return Err(Error::Descriptor(format!("dihedral:{n}")));
        }
        let mul = |x: usize, y: usize| {
            let (i, j) = (x % n, x / n);
            let (k, l) = (y % n, y / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            rot + n * ((j + l) % 2)
        };
        let t: Vec<Vec<usize>> = (0..2 * n).map(|a| (0..2 * n).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(&format!("dihedral:{n}"), &t)
    }

    /// Permutations of {0..n−1} in lexicographic order; (pq)(x) = p(q(x)).
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 4 {
            return Err(Error::Descriptor(format!("sym:{n}")));
        }
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        loop {
            let mut p = perms.last().expect("nonempty").clone();
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
            p.swap(i, j);
            p[i + 1..].reverse();
            perms.push(p);
        }
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let t: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index(&q.iter().map(|&x| p[x]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Self::from_table(&format!("sym:{n}"), &t)
    }

    /// G₁ × G₂; (a, b) has index a + |G₁|·b.
    pub fn product(g1: &GroupTable, g2: &GroupTable) -> Result<Self> {
        let (n1, n2) = (g1.order, g2.order);
        if n1 * n2 > MAX_ORDER {
            return Err(Error::Descriptor("product order exceeds 64".into()));
        }
        let t: Vec<Vec<usize>> = (0..n1 * n2)
            .map(|x| {
                (0..n1 * n2)
                    .map(|y| g1.mul(x % n1, y % n1) + n1 * g2.mul(x / n1, y / n1))
                    .collect()
            })
            .collect();
        Self::from_table(&format!("prod:{},{}", g1.descriptor, g2.descriptor), &t)
    }

    /// `cyclic:n`, `dihedral:n`, `sym:n`, `prod:d1,d2` (split at the first
    /// comma) or `table:path` (order, then the table, whitespace-separated).
    pub fn parse(descriptor: &str) -> Result<Self> {
        let bad = || Error::Descriptor(descriptor.to_string());
        let (kind, arg) = descriptor.split_once(':').ok_or_else(bad)?;
        let num = || arg.trim().parse::<usize>().map_err(|_| bad());
        match kind {
            "cyclic" => {
                let n = num()?;
                if n == 0 || n > MAX_ORDER {
                    return Err(bad());
                }
                Self::cyclic(n)
            }
            "dihedral" => Self::dihedral(num()?),
            "sym" => Self::symmetric(num()?),
            "prod" => {
                let (d1, d2) = arg.split_once(',').ok_or_else(bad)?;
                Self::product(&Self::parse(d1)?, &Self::parse(d2)?)
            }
            "table" => {
                let text = fs::read_to_string(arg)?;
                let mut nums = text.split_whitespace().map(|w| w.parse::<usize>().map_err(|_| bad()));
                let order = nums.next().ok_or_else(bad)??;
                if order == 0 || order > MAX_ORDER {
                    return Err(bad());
                }
                let flat: Vec<usize> = nums.collect::<Result<_>>()?;
                if flat.len() != order * order {
                    return Err(bad());
                }
                let t: Vec<Vec<usize>> = flat.chunks(order).map(<[usize]>::to_vec).collect();
                Self::from_table(descriptor, &t)
            }
            _ => Err(bad()),
        }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn whole(&self) -> GSet {
        GSet::full(self.order)
    }

    fn translate(&self, table: &[u64], a: usize, s: GSet) -> GSet {
        let bits = s.bits();
        let mut out = 0u64;
        for c in 0..self.chunks {
            let byte = ((bits >> (8 * c)) & 0xff) as usize;
            if byte != 0 {
                out |= table[(a * self.chunks + c) * 256 + byte];
            }
        }
        GSet::from_bits(out)
    }

    /// aS
    pub fn left_translate(&self, a: usize, s: GSet) -> GSet {
        self.translate(&self.left, a, s)
    }

    /// Sa
    pub fn right_translate(&self, s: GSet, a: usize) -> GSet {
        self.translate(&self.right, a, s)
    }

    /// AB = {ab : a ∈ A, b ∈ B}.
    pub fn product_set(&self, a: GSet, b: GSet) -> GSet {
        if a.len() <= b.len() {
            a.iter().fold(GSet::EMPTY, |acc, x| acc.union(self.left_translate(x, b)))
        } else {
            b.iter().fold(GSet::EMPTY, |acc, y| acc.union(self.right_translate(a, y)))
        }
    }

    pub fn inverse_set(&self, s: GSet) -> GSet {
        GSet::from_indices(s.iter().map(|x| self.inverse[x]))
    }

    /// The subgroup generated by `s` (closure under products, with 1).
    pub fn generated(&self, s: GSet) -> GSet {
        let mut cur = s.union(GSet::singleton(self.identity));
        loop {
            let next = self.product_set(cur, cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_subgroup(&self, s: GSet) -> bool {
        s.contains(self.identity)
            && self.product_set(s, s) == s
            && self.inverse_set(s) == s
    }

    /// All subgroups, from the cyclic ones by pairwise joins to a fixpoint;
    /// sorted by size, then by bitset.
    pub fn subgroups(&self) -> Vec<GSet> {
        let mut subs: Vec<GSet> = (0..self.order).map(|g| self.generated(GSet::singleton(g))).collect();
        subs.sort();
        subs.dedup();
        loop {
            let mut found = Vec::new();
            for (i, &h) in subs.iter().enumerate() {
                for &k in &subs[i + 1..] {
                    let j = self.generated(h.union(k));
                    if subs.binary_search(&j).is_err() && !found.contains(&j) {
                        found.push(j);
                    }
                }
            }
            if found.is_empty() {
                break;
            }
            subs.extend(found);
            subs.sort();
        }
        subs.sort_by_key(|s| (s.len(), s.bits()));
        subs
    }
}
