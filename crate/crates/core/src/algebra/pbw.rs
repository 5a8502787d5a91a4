//! PBW monomials F^a E^c K_mu K'_nu and coordinates with respect to them.
//!
//! The root vectors are built from the inverse braid operator chains along
//! the fixed reduced word for w_0, and the blocks carry the v^{n_a/2} twist.

use std::collections::BTreeMap;

use super::{Element, Gen, KMono, NormalWord, Presentation, Variant};
use crate::cartan::RootVec;
use crate::coeff::RatFunc;
use crate::error::{Error, Result};
use crate::linalg;
use crate::operators::{braid, BraidDir};

/// Exponents (a, c, mu, nu) indexing the PBW basis monomial
/// v^{n_a/2} F^a * v^{n_c/2} E^c * K_mu K'_nu.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PBWMonomial {
    pub a: Vec<u32>,
    pub c: Vec<u32>,
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
}

impl PBWMonomial {
    pub fn identity(num_roots: usize, rank: usize) -> Self {
        PBWMonomial {
            a: vec![0; num_roots],
            c: vec![0; num_roots],
            mu: vec![0; rank],
            nu: vec![0; rank],
        }
    }

    pub fn kmono(&self) -> KMono {
        KMono { mu: self.mu.clone(), nu: self.nu.clone() }
    }
}

/// Compute the PBW root vectors (F_beta_k, E_beta_k) via
/// T_{i_1}^{-1} ... T_{i_{k-1}}^{-1} applied to F_{i_k} resp. E_{i_k}.
/// The chain is evaluated in the Utilde sibling (braid operators need the
/// K-inverses) but each result is a pure half element.
pub(super) fn compute_root_vectors(pres: &Presentation) -> Result<Vec<(Element, Element)>> {
    let tilde = pres.sibling(Variant::Utilde);
    let rs = pres.root_system();
    let word = rs.reduced_word.clone();
    let mut out = Vec::with_capacity(word.len());
    for k in 0..word.len() {
        let mut f = Element::generator(&tilde, Gen::F(word[k]), 1)?;
        let mut e = Element::generator(&tilde, Gen::E(word[k]), 1)?;
        for t in (0..k).rev() {
            f = braid(word[t], BraidDir::Inverse, &f)?;
            e = braid(word[t], BraidDir::Inverse, &e)?;
        }
        if !f.is_negative_half() || !e.is_positive_half() {
            return Err(Error::Internal(format!(
                "root vector {k} is not a pure half element"
            )));
        }
        let beta = &rs.convex_roots[k];
        let expect_e: RootVec = beta.clone();
        if e.weight().as_ref() != Some(&expect_e) {
            return Err(Error::Internal(format!("root vector {k} has wrong weight")));
        }
        out.push((f, e));
    }
    Ok(out)
}

/// The F-block (is_f) or E-block PBW monomial with exponent vector `a`,
/// including the v^{n_a/2} twist, as a pure half element of the Utilde
/// sibling.
fn half_block(pres: &Presentation, a: &[u32], is_f: bool) -> Result<Element> {
    let rs = pres.root_system();
    if a.len() != rs.num_positive_roots() {
        return Err(Error::Invalid("PBW exponent vector has wrong length".into()));
    }
    let tilde = pres.sibling(Variant::Utilde);
    let roots = pres.root_vector_elements()?;
    let mut acc = Element::one(&tilde);
    for (k, mult) in a.iter().enumerate() {
        if *mult == 0 {
            continue;
        }
        let base = if is_f { &roots[k].0 } else { &roots[k].1 };
        acc = acc.mul(&base.pow(*mult)?)?;
    }
    let twist = rs.pbw_twist(a)?;
    Ok(acc.scale(&RatFunc::v_half_pow(twist)))
}

/// The element v^{n_a/2} F^a * v^{n_c/2} E^c * K_mu K'_nu in normal form.
pub fn pbw_element(pres: &Presentation, m: &PBWMonomial) -> Result<Element> {
    let tilde = pres.sibling(Variant::Utilde);
    let fpart = half_block(pres, &m.a, true)?;
    let epart = half_block(pres, &m.c, false)?;
    let kpart = Element::k_monomial(&tilde, m.kmono())?;
    let product = fpart.mul(&epart)?.mul(&kpart)?;
    product.into_variant(pres)
}

/// Basis data for one weight of a half algebra: the list of PBW exponent
/// vectors together with the matrix of their word coordinates.
struct HalfBlockBasis {
    exponents: Vec<Vec<u32>>,
    words: Vec<Vec<u8>>,
    /// matrix[word_row][exponent_col]
    matrix: Vec<Vec<RatFunc>>,
}

fn half_block_basis(pres: &Presentation, weight: &RootVec, is_f: bool) -> Result<HalfBlockBasis> {
    let rs = pres.root_system();
    let exponents = rs.kostant_exponents(weight);
    let mut word_index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<Vec<u8>, RatFunc>> = Vec::with_capacity(exponents.len());
    for a in &exponents {
        let elt = half_block(pres, a, is_f)?;
        let mut col = BTreeMap::new();
        for (w, c) in elt.terms() {
            let key = if is_f { w.fword.clone() } else { w.eword.clone() };
            let next = word_index.len();
            word_index.entry(key.clone()).or_insert(next);
            col.insert(key, c.clone());
        }
        columns.push(col);
    }
    let words: Vec<Vec<u8>> = {
        let mut v = vec![Vec::new(); word_index.len()];
        for (w, i) in &word_index {
            v[*i] = w.clone();
        }
        v
    };
    let mut matrix = vec![vec![RatFunc::zero(); exponents.len()]; words.len()];
    for (j, col) in columns.iter().enumerate() {
        for (w, c) in col {
            matrix[word_index[w]][j] = c.clone();
        }
    }
    Ok(HalfBlockBasis { exponents, words, matrix })
}

/// Expand a normalized element in the PBW basis. Errors if the element does
/// not lie in the span (which would signal an internal inconsistency) or if
/// the weight spaces exceed capacity.
pub fn expand_pbw(x: &Element) -> Result<BTreeMap<PBWMonomial, RatFunc>> {
    let pres = x.presentation();
    let rank = pres.rank();
    // Group terms by (K-monomial, F-weight, E-weight).
    type GroupKey = (KMono, RootVec, RootVec);
    let mut groups: BTreeMap<GroupKey, Vec<(NormalWord, RatFunc)>> = BTreeMap::new();
    for (w, c) in x.terms() {
        let mut fw = vec![0i64; rank];
        for l in &w.fword {
            fw[*l as usize] += 1;
        }
        let mut ew = vec![0i64; rank];
        for l in &w.eword {
            ew[*l as usize] += 1;
        }
        groups.entry((w.k.clone(), fw, ew)).or_default().push((w.clone(), c.clone()));
    }
    let mut out: BTreeMap<PBWMonomial, RatFunc> = BTreeMap::new();
    for ((k, fwt, ewt), terms) in groups {
        let fbasis = half_block_basis(pres, &fwt, true)?;
        let ebasis = half_block_basis(pres, &ewt, false)?;
        // Solve the two block systems: coordinates of the group vector in the
        // tensor basis {F^a (x) E^c}.
        let fword_pos: BTreeMap<&[u8], usize> =
            fbasis.words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let eword_pos: BTreeMap<&[u8], usize> =
            ebasis.words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let nf = fbasis.words.len();
        let ne = ebasis.words.len();
        let mut rhs = vec![RatFunc::zero(); nf * ne];
        for (w, c) in &terms {
            let fi = *fword_pos.get(w.fword.as_slice()).ok_or_else(|| {
                Error::Internal("term word missing from PBW block span".into())
            })?;
            let ei = *eword_pos.get(w.eword.as_slice()).ok_or_else(|| {
                Error::Internal("term word missing from PBW block span".into())
            })?;
            rhs[fi * ne + ei] = c.clone();
        }
        // Tensor system: (F-matrix (x) E-matrix) y = rhs.
        let na = fbasis.exponents.len();
        let nc = ebasis.exponents.len();
        let mut mat = vec![vec![RatFunc::zero(); na * nc]; nf * ne];
        for fi in 0..nf {
            for ei in 0..ne {
                for aj in 0..na {
                    for cj in 0..nc {
                        mat[fi * ne + ei][aj * nc + cj] =
                            &fbasis.matrix[fi][aj] * &ebasis.matrix[ei][cj];
                    }
                }
            }
        }
        let solution = linalg::solve(mat, rhs)
            .ok_or_else(|| Error::Internal("PBW expansion system is singular".into()))?;
        for (aj, a) in fbasis.exponents.iter().enumerate() {
            for (cj, c) in ebasis.exponents.iter().enumerate() {
                let coeff = solution[aj * nc + cj].clone();
                if coeff.is_zero() {
                    continue;
                }
                let m = PBWMonomial {
                    a: a.clone(),
                    c: c.clone(),
                    mu: k.mu.clone(),
                    nu: k.nu.clone(),
                };
                out.insert(m, coeff);
            }
        }
    }
    Ok(out)
}
