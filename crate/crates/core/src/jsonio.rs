//! Bit-exact JSON data-transfer shapes shared by the CLI and tests.
//! Rationals travel as strings `p/q`, never as floats; an optional
//! decimal rendering is additive and non-authoritative.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::poly::Poly;
use crate::scalar::{gri, rat_from_string, rat_to_f64, rat_to_string, GaussRat};

/// One polynomial term: exponent vector plus exact real and imaginary
/// parts.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub re: String,
    pub im: String,
}

pub type PolyJson = Vec<TermJson>;

pub fn poly_to_json(p: &Poly) -> PolyJson {
    p.terms()
        .map(|(a, c)| TermJson {
            exponents: a.entries().to_vec(),
            re: rat_to_string(&c.re),
            im: rat_to_string(&c.im),
        })
        .collect()
}

pub fn poly_from_json(dim: usize, terms: &PolyJson) -> Result<Poly> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exponents.len() != dim {
            return Err(Error::DimensionMismatch(dim, t.exponents.len()));
        }
        let c = gri(rat_from_string(&t.re)?, rat_from_string(&t.im)?);
        out.push((MultiIndex::new(t.exponents.clone()), c));
    }
    Ok(Poly::from_terms(dim, out))
}

/// One coefficient of the bi-degree kernel expansion.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct KernelEntryJson {
    pub zdeg: u32,
    pub wdeg: u32,
    pub z_exponents: Vec<u32>,
    pub w_exponents: Vec<u32>,
    pub re: String,
    pub im: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub re_approx: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im_approx: Option<f64>,
}

pub fn kernel_entry(
    z: &MultiIndex,
    w: &MultiIndex,
    c: &GaussRat,
    with_float: bool,
) -> KernelEntryJson {
    KernelEntryJson {
        zdeg: z.total(),
        wdeg: w.total(),
        z_exponents: z.entries().to_vec(),
        w_exponents: w.entries().to_vec(),
        re: rat_to_string(&c.re),
        im: rat_to_string(&c.im),
        re_approx: with_float.then(|| rat_to_f64(&c.re)),
        im_approx: with_float.then(|| rat_to_f64(&c.im)),
    }
}

/// Scalar as a `{re, im}` pair of exact strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScalarJson {
    pub re: String,
    pub im: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub re_approx: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im_approx: Option<f64>,
}

pub fn scalar_to_json(c: &GaussRat, with_float: bool) -> ScalarJson {
    ScalarJson {
        re: rat_to_string(&c.re),
        im: rat_to_string(&c.im),
        re_approx: with_float.then(|| rat_to_f64(&c.re)),
        im_approx: with_float.then(|| rat_to_f64(&c.im)),
    }
}

pub fn scalar_from_json(s: &ScalarJson) -> Result<GaussRat> {
    Ok(gri(rat_from_string(&s.re)?, rat_from_string(&s.im)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn poly_json_roundtrip() {
        let p = parse_poly("(1+i)*z1^2 - 3/4*z2 + 2", 2).unwrap();
        let json = poly_to_json(&p);
        let back = poly_from_json(2, &json).unwrap();
        assert_eq!(p, back);
        // serialized order follows the canonical term order
        let text = serde_json::to_string(&json).unwrap();
        let again: PolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(json, again);
    }

    #[test]
    fn rejects_wrong_dimension() {
        let p = parse_poly("z1+z2", 2).unwrap();
        let json = poly_to_json(&p);
        assert!(poly_from_json(3, &json).is_err());
    }
}
