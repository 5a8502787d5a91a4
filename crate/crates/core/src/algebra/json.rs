//! JSON import/export of elements in PBW coordinates.
//!
//! Schema:
//! {
//!   "presentation": {"type": "A", "rank": 1, "variant": "Utilde"},
//!   "terms": [
//!     {"coeff": [[-2, "1"], [0, "2"], [2, "1"]],
//!      "pbw": {"a": [0], "c": [0], "mu": [1], "nu": [0]}}
//!   ]
//! }
//!
//! Coefficients are arrays of [half_exponent, integer_string] pairs; a term
//! whose PBW coordinate is not Laurent carries an additional "den" array.

use serde_json::{json, Value};

use super::pbw::{expand_pbw, pbw_element, PBWMonomial};
use super::{Element, Presentation};
use crate::coeff::{LaurentHalf, RatFunc};
use crate::error::{Error, Result};

pub fn element_to_json(x: &Element) -> Result<Value> {
    let pres = x.presentation();
    let coords = expand_pbw(x)?;
    let mut terms = Vec::new();
    for (m, c) in coords {
        let pbw = json!({"a": m.a, "c": m.c, "mu": m.mu, "nu": m.nu});
        let term = if let Some(l) = c.as_laurent() {
            json!({"coeff": l.to_json(), "pbw": pbw})
        } else {
            json!({
                "coeff": c.numerator().to_json(),
                "den": c.denominator().to_json(),
                "pbw": pbw,
            })
        };
        terms.push(term);
    }
    Ok(json!({
        "presentation": {
            "type": pres.datum().cartan_type.to_string(),
            "rank": pres.rank(),
            "variant": pres.variant().name(),
        },
        "terms": terms,
    }))
}

fn vec_u32(v: &Value, key: &str) -> Result<Vec<u32>> {
    v.get(key)
        .and_then(|a| a.as_array())
        .ok_or_else(|| Error::Invalid(format!("missing array {key} in pbw block")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|n| n as u32)
                .ok_or_else(|| Error::Invalid(format!("bad entry in {key}")))
        })
        .collect()
}

fn vec_i64(v: &Value, key: &str) -> Result<Vec<i64>> {
    v.get(key)
        .and_then(|a| a.as_array())
        .ok_or_else(|| Error::Invalid(format!("missing array {key} in pbw block")))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| Error::Invalid(format!("bad entry in {key}"))))
        .collect()
}

pub fn element_from_json(pres: &Presentation, v: &Value) -> Result<Element> {
    let pblock = v
        .get("presentation")
        .ok_or_else(|| Error::Invalid("missing presentation block".into()))?;
    let ptype = pblock.get("type").and_then(|t| t.as_str()).unwrap_or("");
    let prank = pblock.get("rank").and_then(|r| r.as_u64()).unwrap_or(0) as usize;
    let pvariant = pblock.get("variant").and_then(|t| t.as_str()).unwrap_or("");
    if ptype != pres.datum().cartan_type.to_string()
        || prank != pres.rank()
        || pvariant != pres.variant().name()
    {
        return Err(Error::Invalid(format!(
            "presentation mismatch: JSON says {ptype}{prank}/{pvariant}, expected {}/{}",
            pres.datum().name(),
            pres.variant().name()
        )));
    }
    let terms = v
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| Error::Invalid("missing terms array".into()))?;
    let mut out = Element::zero(pres);
    for term in terms {
        let coeff_num = LaurentHalf::from_json(
            term.get("coeff").ok_or_else(|| Error::Invalid("missing coeff".into()))?,
        )?;
        let coeff = match term.get("den") {
            Some(d) => RatFunc::new(coeff_num, LaurentHalf::from_json(d)?)?,
            None => RatFunc::from(coeff_num),
        };
        let pbw = term.get("pbw").ok_or_else(|| Error::Invalid("missing pbw block".into()))?;
        let m = PBWMonomial {
            a: vec_u32(pbw, "a")?,
            c: vec_u32(pbw, "c")?,
            mu: vec_i64(pbw, "mu")?,
            nu: vec_i64(pbw, "nu")?,
        };
        let base = pbw_element(pres, &m)?;
        out = out.add(&base.scale(&coeff))?;
    }
    Ok(out)
}
