//! Structural (anti-)automorphisms and pairings: the bar involution, the star
//! and transpose anti-involutions, the Chevalley involution, the braid
//! operators and their inverses, skew derivations on the halves, the Hopf
//! pairing, the diamond action of the Cartan part, and the Hall embedding of
//! U- (x) U+ into the double.

use std::collections::HashMap;

use crate::algebra::{Element, Gen, KMono, NormalWord, Presentation, Variant};
use crate::cartan::RootVec;
use crate::coeff::{LaurentHalf, RatFunc};
use crate::error::{Error, Result};

/// The four structural (anti-)involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// Anti-automorphism, v^{1/2} -> v^{-1/2}, fixes all generators.
    Bar,
    /// Q(v^{1/2})-linear anti-automorphism: fixes E, F; swaps K <-> K'.
    Star,
    /// Q(v^{1/2})-linear anti-automorphism: swaps E <-> F; fixes K, K'.
    Transpose,
    /// Q(v^{1/2})-linear automorphism: E <-> F, K <-> K' (star o transpose).
    Chevalley,
}

/// Apply one of the structural involutions and normalize.
pub fn involution(kind: Involution, x: &Element) -> Result<Element> {
    let pres = x.presentation().clone();
    let mut out = Element::zero(&pres);
    for (w, c) in x.terms() {
        let coeff = match kind {
            Involution::Bar => c.bar(),
            _ => c.clone(),
        };
        // Build the image word generator by generator.
        let mut gens: Vec<Gen> = Vec::new();
        for l in &w.fword {
            gens.push(Gen::F(*l as usize));
        }
        for l in &w.eword {
            gens.push(Gen::E(*l as usize));
        }
        let anti = matches!(kind, Involution::Bar | Involution::Star | Involution::Transpose);
        if anti {
            gens.reverse();
        }
        let mapped: Vec<Gen> = gens
            .into_iter()
            .map(|g| match (kind, g) {
                (Involution::Bar, g) | (Involution::Star, g @ (Gen::E(_) | Gen::F(_))) => g,
                (Involution::Transpose | Involution::Chevalley, Gen::E(i)) => Gen::F(i),
                (Involution::Transpose | Involution::Chevalley, Gen::F(i)) => Gen::E(i),
                (_, g) => g,
            })
            .collect();
        let k = match kind {
            Involution::Bar | Involution::Transpose => w.k.clone(),
            Involution::Star | Involution::Chevalley => KMono { mu: w.k.nu.clone(), nu: w.k.mu.clone() },
        };
        let base = Element::from_word(&pres, &mapped, coeff)?;
        let kelt = Element::k_monomial(&pres, k)?;
        // Word reversal puts the K-monomial on the left for the
        // anti-automorphisms; the automorphism keeps it on the right.
        let image = if anti { kelt.mul(&base)? } else { base.mul(&kelt)? };
        out = out.add(&image)?;
    }
    Ok(out)
}

/// Convenience wrapper for the bar involution.
pub fn bar(x: &Element) -> Result<Element> {
    involution(Involution::Bar, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidDir {
    Forward,
    Inverse,
}

/// The braid operator T_i (or its inverse) as an algebra automorphism of the
/// Utilde variant. Requires K-inverses, so Uhat input is rejected.
pub fn braid(i: usize, dir: BraidDir, x: &Element) -> Result<Element> {
    let pres = x.presentation().clone();
    if pres.variant() != Variant::Utilde {
        return Err(Error::Invalid(
            "braid operators need invertible K's; use the Utilde variant".into(),
        ));
    }
    let rank = pres.rank();
    if i >= rank {
        return Err(Error::Invalid(format!("braid index {} out of range", i + 1)));
    }
    let datum = pres.datum().clone();
    // Images of the generators.
    let gen_image = |g: Gen| -> Result<Element> {
        match g {
            Gen::E(j) => {
                if j == i {
                    match dir {
                        BraidDir::Forward => {
                            // v (K_i')^{-1} F_i
                            let kp = Element::generator(&pres, Gen::Kp(i), -1)?;
                            let f = Element::generator(&pres, Gen::F(i), 1)?;
                            Ok(kp.mul(&f)?.scale(&RatFunc::v_pow(1)))
                        }
                        BraidDir::Inverse => {
                            // v F_i K_i^{-1}
                            let f = Element::generator(&pres, Gen::F(i), 1)?;
                            let k = Element::generator(&pres, Gen::K(i), -1)?;
                            Ok(f.mul(&k)?.scale(&RatFunc::v_pow(1)))
                        }
                    }
                } else if datum.c(i, j) == 0 {
                    Element::generator(&pres, Gen::E(j), 1)
                } else {
                    // c_{ij} = -1:
                    //   forward: (v^{1/2} E_i E_j - v^{-1/2} E_j E_i) / (v - v^{-1})
                    //   inverse: (v^{1/2} E_j E_i - v^{-1/2} E_i E_j) / (v - v^{-1})
                    let ei = Element::generator(&pres, Gen::E(i), 1)?;
                    let ej = Element::generator(&pres, Gen::E(j), 1)?;
                    let (first, second) = match dir {
                        BraidDir::Forward => (ei.mul(&ej)?, ej.mul(&ei)?),
                        BraidDir::Inverse => (ej.mul(&ei)?, ei.mul(&ej)?),
                    };
                    let num = first
                        .scale(&RatFunc::v_half_pow(1))
                        .sub(&second.scale(&RatFunc::v_half_pow(-1)))?;
                    let den = RatFunc::from(&LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1));
                    Ok(num.scale(&den.inverse()?))
                }
            }
            Gen::F(j) => {
                if j == i {
                    match dir {
                        BraidDir::Forward => {
                            // v^{-1} E_i K_i^{-1}
                            let e = Element::generator(&pres, Gen::E(i), 1)?;
                            let k = Element::generator(&pres, Gen::K(i), -1)?;
                            Ok(e.mul(&k)?.scale(&RatFunc::v_pow(-1)))
                        }
                        BraidDir::Inverse => {
                            // v E_i (K_i')^{-1}
                            let e = Element::generator(&pres, Gen::E(i), 1)?;
                            let kp = Element::generator(&pres, Gen::Kp(i), -1)?;
                            Ok(e.mul(&kp)?.scale(&RatFunc::v_pow(1)))
                        }
                    }
                } else if datum.c(i, j) == 0 {
                    Element::generator(&pres, Gen::F(j), 1)
                } else {
                    let fi = Element::generator(&pres, Gen::F(i), 1)?;
                    let fj = Element::generator(&pres, Gen::F(j), 1)?;
                    let (first, second) = match dir {
                        BraidDir::Forward => (fi.mul(&fj)?, fj.mul(&fi)?),
                        BraidDir::Inverse => (fj.mul(&fi)?, fi.mul(&fj)?),
                    };
                    let num = first
                        .scale(&RatFunc::v_half_pow(1))
                        .sub(&second.scale(&RatFunc::v_half_pow(-1)))?;
                    let den = RatFunc::from(&LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1));
                    Ok(num.scale(&den.inverse()?))
                }
            }
            Gen::K(_) | Gen::Kp(_) => unreachable!("K images handled separately"),
        }
    };
    let mut out = Element::zero(&pres);
    for (w, c) in x.terms() {
        // T(K_mu K'_nu) = K_{s_i(mu)} K'_{s_i(nu)} in either direction.
        let mu: RootVec = w.k.mu.clone();
        let nu: RootVec = w.k.nu.clone();
        let k = KMono { mu: datum.reflect(i, &mu), nu: datum.reflect(i, &nu) };
        let mut acc = Element::scalar(&pres, c.clone());
        for l in &w.fword {
            acc = acc.mul(&gen_image(Gen::F(*l as usize))?)?;
        }
        for l in &w.eword {
            acc = acc.mul(&gen_image(Gen::E(*l as usize))?)?;
        }
        acc = acc.mul(&Element::k_monomial(&pres, k)?)?;
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// Apply a braid word (left to right) in the given direction.
pub fn braid_word(word: &[usize], dir: BraidDir, x: &Element) -> Result<Element> {
    let mut acc = x.clone();
    match dir {
        BraidDir::Forward => {
            for i in word {
                acc = braid(*i, BraidDir::Forward, &acc)?;
            }
        }
        BraidDir::Inverse => {
            for i in word.iter().rev() {
                acc = braid(*i, BraidDir::Inverse, &acc)?;
            }
        }
    }
    Ok(acc)
}

/// The skew derivation on a half algebra:
/// d_i(1) = 0, d_i(E_j) = delta_{ij} = d_i(F_j),
/// d_i(f g) = v^{(alpha_i, nu)} d_i(f) g + f d_i(g) for g of weight +-nu.
///
/// Input must lie wholly in U+ or U-; mixed input is rejected.
pub fn skew_derivation(i: usize, x: &Element) -> Result<Element> {
    let pres = x.presentation().clone();
    let positive = x.is_positive_half();
    if !positive && !x.is_negative_half() {
        return Err(Error::Invalid(
            "skew derivation is only defined on the positive or negative half".into(),
        ));
    }
    let datum = pres.datum().clone();
    let mut out = Element::zero(&pres);
    for (w, c) in x.terms() {
        let letters = if positive { &w.eword } else { &w.fword };
        // d(l_0 l_1 ... l_{h-1}) = sum_p [l_p = i] v^{(alpha_i, wt of suffix)}
        //   l_0 .. l_{p-1} l_{p+1} .. l_{h-1}
        for p in 0..letters.len() {
            if letters[p] as usize != i {
                continue;
            }
            let mut suffix_weight = vec![0i64; pres.rank()];
            for l in &letters[p + 1..] {
                suffix_weight[*l as usize] += 1;
            }
            let pairing: i64 =
                (0..pres.rank()).map(|j| datum.c(i, j) * suffix_weight[j]).sum();
            let mut rest: Vec<Gen> = Vec::with_capacity(letters.len() - 1);
            for (q, l) in letters.iter().enumerate() {
                if q != p {
                    rest.push(if positive { Gen::E(*l as usize) } else { Gen::F(*l as usize) });
                }
            }
            let term = Element::from_word(&pres, &rest, &RatFunc::v_pow(pairing) * c)?;
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

/// The Hopf pairing (y, x)_K between U- and U+, normalized by
/// (F_i, E_j) = delta_{ij} (v - v^{-1}) and extended through the adjunction
/// (F_i y, x) = (v - v^{-1}) (y, d_i x). Inputs must be weight-homogeneous;
/// the value is zero unless the weights match.
pub fn hopf_pair(y: &Element, x: &Element) -> Result<RatFunc> {
    if !y.is_negative_half() {
        return Err(Error::Invalid("hopf_pair: first argument must lie in U-".into()));
    }
    if !x.is_positive_half() {
        return Err(Error::Invalid("hopf_pair: second argument must lie in U+".into()));
    }
    let wy = y
        .weight()
        .ok_or_else(|| Error::Invalid("hopf_pair: inhomogeneous first argument".into()))?;
    let wx = x
        .weight()
        .ok_or_else(|| Error::Invalid("hopf_pair: inhomogeneous second argument".into()))?;
    if wy.iter().zip(&wx).any(|(a, b)| -a != *b) {
        return Ok(RatFunc::zero());
    }
    let pres = y.presentation().clone();
    let unit = RatFunc::from(&LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1));
    let mut total = RatFunc::zero();
    for (w, c) in y.terms() {
        // Peel F letters from the left, differentiating x.
        let mut current = x.clone();
        for l in &w.fword {
            current = skew_derivation(*l as usize, &current)?;
            current = current.scale(&unit);
        }
        // The constant coefficient of the fully differentiated x.
        let id = NormalWord::identity(pres.rank());
        let val = current.coeff(&id);
        total += &(&val * c);
    }
    Ok(total)
}

/// The diamond action of a K-monomial on a Gamma-homogeneous component:
/// K_i acts as v^{-1/2 . alpha_check_i(deg)} K_i . x and K_i' with the
/// opposite twist sign. Inhomogeneous input is handled componentwise.
pub fn diamond(k: &KMono, x: &Element) -> Result<Element> {
    let pres = x.presentation().clone();
    let rank = pres.rank();
    let kelt = Element::k_monomial(&pres, k.clone())?;
    let mut out = Element::zero(&pres);
    for (w, c) in x.terms() {
        let d = crate::algebra::word_gamma_degree(rank, w);
        let mut twist = 0i64;
        for i in 0..rank {
            let eval = crate::cartan::gamma_eval(pres.datum(), i, &d);
            twist += (k.nu[i] - k.mu[i]) * eval;
        }
        let mut single = Element::zero(&pres);
        single.insert_add(w.clone(), &RatFunc::v_half_pow(twist) * c);
        out = out.add(&kelt.mul(&single)?)?;
    }
    Ok(out)
}

/// The Hall embedding iota: U- (x) U+ -> Uhat, the unique bilinear map with
/// iota(y (x) 1) = y, iota(1 (x) x) = x and
///   E_i iota(y (x) x) = iota(y (x) E_i x)
///     + (v - v^{-1}) v^{-(alpha_i, mu - alpha_i)} K_i' iota(d_i y (x) x)
/// for y of weight -mu. Computed by induction on the E-degree of x.
pub fn iota_hall(y: &Element, x: &Element) -> Result<Element> {
    if !y.is_negative_half() {
        return Err(Error::Invalid("iota_hall: first argument must lie in U-".into()));
    }
    if !x.is_positive_half() {
        return Err(Error::Invalid("iota_hall: second argument must lie in U+".into()));
    }
    let pres = y.presentation().clone();
    if pres.variant() != Variant::Uhat {
        return Err(Error::Invalid("iota_hall expects Uhat elements".into()));
    }
    let mut memo: HashMap<(Vec<u8>, Vec<u8>), Element> = HashMap::new();
    let mut out = Element::zero(&pres);
    for (wx, cx) in x.terms() {
        for (wy, cy) in y.terms() {
            let part = iota_words(&pres, &wy.fword, &wx.eword, &mut memo)?;
            out = out.add(&part.scale(&(cx * cy)))?;
        }
    }
    Ok(out)
}

fn iota_words(
    pres: &Presentation,
    fword: &[u8],
    eword: &[u8],
    memo: &mut HashMap<(Vec<u8>, Vec<u8>), Element>,
) -> Result<Element> {
    let key = (fword.to_vec(), eword.to_vec());
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let result = if eword.is_empty() {
        Element::from_word(
            pres,
            &fword.iter().map(|l| Gen::F(*l as usize)).collect::<Vec<_>>(),
            RatFunc::one(),
        )?
    } else {
        // Peel the first letter: x = E_i x'.
        let i = eword[0] as usize;
        let rest = &eword[1..];
        let ei = Element::generator(pres, Gen::E(i), 1)?;
        let head = iota_words(pres, fword, rest, memo)?;
        let mut acc = ei.mul(&head)?;
        // Correction: -(v - v^{-1}) v^{-(alpha_i, mu - alpha_i)} K_i'
        //   iota(d_i(y) (x) x'), where mu is the weight of the F-word.
        let datum = pres.datum();
        let rank = pres.rank();
        let mut mu = vec![0i64; rank];
        for l in fword {
            mu[*l as usize] += 1;
        }
        let alpha_i = datum.simple_root(i);
        let mut mu_minus_alpha = mu.clone();
        for (m, a) in mu_minus_alpha.iter_mut().zip(&alpha_i) {
            *m -= a;
        }
        let pairing = datum.form(&alpha_i, &mu_minus_alpha);
        let yelt = Element::from_word(
            pres,
            &fword.iter().map(|l| Gen::F(*l as usize)).collect::<Vec<_>>(),
            RatFunc::one(),
        )?;
        let dy = skew_derivation(i, &yelt)?;
        if !dy.is_zero() {
            let mut kp = KMono::identity(rank);
            kp.nu[i] = 1;
            let kp_elt = Element::k_monomial(pres, kp)?;
            for (wdy, cdy) in dy.terms() {
                let tail = iota_words(pres, &wdy.fword, rest, memo)?;
                let scal = &LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1);
                let coeff = &(&RatFunc::from(scal) * &RatFunc::v_pow(-pairing)) * cdy;
                acc = acc.sub(&kp_elt.mul(&tail)?.scale(&coeff))?;
            }
        }
        acc
    };
    memo.insert(key, result.clone());
    Ok(result)
}

/// Check both defining recursions of the Hall embedding on concrete inputs
/// (used by tests and the verification suites).
pub fn iota_hall_check_relations(y: &Element, x: &Element) -> Result<bool> {
    let pres = y.presentation().clone();
    let datum = pres.datum().clone();
    let rank = pres.rank();
    let unit = RatFunc::from(&LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1));
    let mu = y.weight().map(|w| w.iter().map(|c| -c).collect::<Vec<i64>>());
    let nu = x.weight();
    let (Some(mu), Some(nu)) = (mu, nu) else {
        return Err(Error::Invalid("relation check needs homogeneous inputs".into()));
    };
    let base = iota_hall(y, x)?;
    for i in 0..rank {
        // E_i relation.
        let ei = Element::generator(&pres, Gen::E(i), 1)?;
        let lhs = ei.mul(&base)?;
        let alpha_i = datum.simple_root(i);
        let mut mu_shift = mu.clone();
        for (m, a) in mu_shift.iter_mut().zip(&alpha_i) {
            *m -= a;
        }
        let mut kp = KMono::identity(rank);
        kp.nu[i] = 1;
        let rhs = iota_hall(y, &ei.mul(x)?)?.add(
            &Element::k_monomial(&pres, kp)?
                .mul(&iota_hall(&skew_derivation(i, y)?, x)?)?
                .scale(&(&unit * &RatFunc::v_pow(-datum.form(&alpha_i, &mu_shift)))),
        )?;
        if lhs != rhs {
            return Ok(false);
        }
        // F_i relation.
        let fi = Element::generator(&pres, Gen::F(i), 1)?;
        let lhs = fi.mul(&base)?;
        let mut nu_shift = nu.clone();
        for (m, a) in nu_shift.iter_mut().zip(&alpha_i) {
            *m -= a;
        }
        let mut kk = KMono::identity(rank);
        kk.mu[i] = 1;
        let rhs = iota_hall(&fi.mul(y)?, x)?.add(
            &Element::k_monomial(&pres, kk)?
                .mul(&iota_hall(y, &skew_derivation(i, x)?)?)?
                .scale(&(&unit * &RatFunc::v_pow(-datum.form(&alpha_i, &nu_shift)))),
        )?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
