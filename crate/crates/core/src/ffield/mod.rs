//! Exact arithmetic in K = GF(q), in GF(q^n) and in GF(q)(x).

mod ambient;
mod base;
mod poly;

use std::sync::Arc;

pub use ambient::{Ambient, AmbientKind, Element, Extension, DEFAULT_MAX_DEGREE};
pub use base::BaseField;
pub use poly::Poly;

use crate::error::{Error, Result};
use crate::linalg::{self, Row};
use crate::subspace::Subspace;

/// The subfield GF(q^d) of GF(q^n), as the kernel of x ↦ x^(q^d) − x.
///
/// In the rational function field only d = 1 is meaningful (K is its only
/// finite-dimensional subfield).
pub fn subfield(ambient: &Arc<Ambient>, d: usize) -> Result<Subspace> {
    let Some(n) = ambient.degree() else {
        return if d == 1 {
            Ok(Subspace::base_field(ambient))
        } else {
            Err(Error::Precondition(
                "K is the only finite-dimensional subfield of GF(q)(x)".into(),
            ))
        };
    };
    if d == 0 || n % d != 0 {
        return Err(Error::Precondition(format!("{d} does not divide {n}")));
    }
    let k = ambient.base();
    let q_d = (k.order() as u128).pow(d as u32);
    let t = ambient.monomial(1)?;
    let frob_t = ambient.pow(&t, q_d)?;
    // Frobenius is a ring map, so frob(t^i) = frob(t)^i.
    let mut image = ambient.one();
    let mut rows: Vec<Row> = Vec::with_capacity(n);
    for i in 0..n {
        let Element::Vector(img) = &image else { unreachable!() };
        let mut row = img.clone();
        row[i] = k.sub(row[i], 1);
        rows.push(row);
        image = ambient.mul(&image, &frob_t)?;
    }
    let kernel = linalg::left_kernel(k, &rows);
    let gens: Vec<Element> = kernel.into_iter().map(Element::Vector).collect();
    Subspace::span(ambient, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subfields_of_gf16() {
        let a = Arc::new(Ambient::parse("gf:2:4").unwrap());
        assert_eq!(subfield(&a, 1).unwrap(), Subspace::base_field(&a));
        assert_eq!(subfield(&a, 4).unwrap(), Subspace::whole(&a).unwrap());
        let gf4 = subfield(&a, 2).unwrap();
        let w = a.parse_element("0,1,1,0").unwrap(); // t^2 + t
        assert_eq!(gf4, Subspace::span(&a, &[a.one(), w]).unwrap());
        assert!(subfield(&a, 3).is_err());
    }

    #[test]
    fn subfield_dimension_and_closure() {
        for desc in ["gf:2:6", "gf:3:4", "gf:2:4", "gf:4:2", "gf:5:2"] {
            let a = Arc::new(Ambient::parse(desc).unwrap());
            let n = a.degree().unwrap();
            for d in (1..=n).filter(|d| n % d == 0) {
                let h = subfield(&a, d).unwrap();
                assert_eq!(h.dim(), d, "{desc} d={d}");
                assert!(h.contains(&a.one()).unwrap());
                assert_eq!(h.product(&h).unwrap(), h);
            }
        }
    }

    #[test]
    fn rational_subfields() {
        let r = Arc::new(Ambient::parse("ratfun:3:16").unwrap());
        assert_eq!(subfield(&r, 1).unwrap(), Subspace::base_field(&r));
        assert!(subfield(&r, 2).is_err());
    }
}
