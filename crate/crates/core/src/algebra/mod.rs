//! The free algebra on {E_i, F_i, K_i^{+-1}, K_i'^{+-1}} over Q(v^{1/2}) and
//! its quotients: a rewriting kernel producing triangular normal forms modulo
//! the defining relations, the Drinfeld double variants (K-monoid or K-group),
//! the Heisenberg quotients, the Gamma grading, and an expression
//! parser/printer with JSON import/export in PBW coordinates.
//!
//! Normalized words have the triangular block shape F-block * E-block *
//! K-monomial, matching the PBW monomials F^a E^c K_mu K'_nu. The E- and
//! F-blocks are straightened by the completed quantum-Serre rewriting system.

mod display;
mod json;
mod parser;
mod pbw;
pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

pub use display::element_to_text;
pub use json::{element_from_json, element_to_json};
pub use parser::parse;
pub use pbw::{expand_pbw, pbw_element, PBWMonomial};

use crate::cartan::{CartanDatum, GammaDegree, RootSystemData, RootVec};
use crate::coeff::{LaurentHalf, RatFunc};
use crate::error::{Error, Result};
use rewrite::{HalfWord, Letter, SerreRules};

/// Which quotient/extension of the double we are working in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// K's generate a monoid (exponents in N).
    Uhat,
    /// K's are invertible (exponents in Z).
    Utilde,
    /// Uhat / <K_i'>.
    HeisPlus,
    /// Uhat / <K_i>.
    HeisMinus,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Uhat => "Uhat",
            Variant::Utilde => "Utilde",
            Variant::HeisPlus => "Hplus",
            Variant::HeisMinus => "Hminus",
        }
    }

    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "Uhat" | "uhat" => Ok(Variant::Uhat),
            "Utilde" | "utilde" => Ok(Variant::Utilde),
            "Hplus" | "hplus" | "H+" => Ok(Variant::HeisPlus),
            "Hminus" | "hminus" | "H-" => Ok(Variant::HeisMinus),
            other => Err(Error::Invalid(format!("unknown variant {other}"))),
        }
    }
}

/// A single generator occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    E(usize),
    F(usize),
    K(usize),
    Kp(usize),
}

/// Exponents of a monomial K_mu K'_nu in the Cartan part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KMono {
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
}

impl KMono {
    pub fn identity(rank: usize) -> Self {
        KMono { mu: vec![0; rank], nu: vec![0; rank] }
    }

    pub fn is_identity(&self) -> bool {
        self.mu.iter().chain(&self.nu).all(|e| *e == 0)
    }

    pub fn mul(&self, other: &KMono) -> KMono {
        KMono {
            mu: self.mu.iter().zip(&other.mu).map(|(a, b)| a + b).collect(),
            nu: self.nu.iter().zip(&other.nu).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.mu.iter().chain(&self.nu).map(|e| e.abs()).sum()
    }

    /// Componentwise dominance: every exponent of `self` >= that of `other`.
    pub fn dominates(&self, other: &KMono) -> bool {
        self.mu.iter().zip(&other.mu).all(|(a, b)| a >= b)
            && self.nu.iter().zip(&other.nu).all(|(a, b)| a >= b)
    }
}

/// A normalized word: F-block, E-block, K-monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    pub fword: HalfWord,
    pub eword: HalfWord,
    pub k: KMono,
}

impl NormalWord {
    pub fn identity(rank: usize) -> Self {
        NormalWord { fword: Vec::new(), eword: Vec::new(), k: KMono::identity(rank) }
    }

    pub fn is_identity(&self) -> bool {
        self.fword.is_empty() && self.eword.is_empty() && self.k.is_identity()
    }
}

struct PresentationBase {
    root_system: RootSystemData,
    rules: SerreRules,
    degree_cap: usize,
    /// Lazily computed PBW root vectors: (F_beta_k, E_beta_k) as Utilde
    /// elements, in convex order.
    root_vectors: Mutex<Option<Arc<Vec<(Element, Element)>>>>,
}

/// A presentation of one of the algebra variants over a fixed Cartan datum,
/// carrying the completed rewrite tables. Cheap to clone; presentations
/// sharing a base are compatible up to variant.
#[derive(Clone)]
pub struct Presentation {
    base: Arc<PresentationBase>,
    variant: Variant,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Presentation({}, {})", self.base.root_system.datum.name(), self.variant.name())
    }
}

pub const DEFAULT_DEGREE_CAP: usize = 12;

impl Presentation {
    pub fn new(datum: CartanDatum, variant: Variant) -> Result<Presentation> {
        Self::with_cap(datum, variant, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(datum: CartanDatum, variant: Variant, cap: usize) -> Result<Presentation> {
        let root_system = RootSystemData::new(datum);
        let rules = SerreRules::build(&root_system, cap)?;
        // Certify the rewrite tables against the PBW dimension counts on a
        // small window of degrees.
        let check_deg = if root_system.datum.rank <= 4 { 6 } else { 4 };
        let counts = rules.count_normal_words(root_system.datum.rank, check_deg);
        for (mu, count) in counts {
            let expected = root_system.kostant_count(&mu);
            if count != expected {
                return Err(Error::Internal(format!(
                    "confluence certification failed at multidegree {mu:?}: {count} normal words, expected {expected}"
                )));
            }
        }
        Ok(Presentation {
            base: Arc::new(PresentationBase {
                root_system,
                rules,
                degree_cap: cap,
                root_vectors: Mutex::new(None),
            }),
            variant,
        })
    }

    /// A presentation of a different variant sharing this one's rewrite data.
    pub fn sibling(&self, variant: Variant) -> Presentation {
        Presentation { base: Arc::clone(&self.base), variant }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.base.root_system.datum
    }

    pub fn root_system(&self) -> &RootSystemData {
        &self.base.root_system
    }

    pub fn rank(&self) -> usize {
        self.base.root_system.datum.rank
    }

    pub fn degree_cap(&self) -> usize {
        self.base.degree_cap
    }

    pub fn compatible(&self, other: &Presentation) -> bool {
        Arc::ptr_eq(&self.base, &other.base) && self.variant == other.variant
    }

    pub(crate) fn rules(&self) -> &SerreRules {
        &self.base.rules
    }

    fn certified_run_length(&self) -> usize {
        self.base.rules.certified_cap.unwrap_or(usize::MAX).min(self.base.degree_cap)
    }

    fn check_capacity(&self, e_len: usize, f_len: usize) -> Result<()> {
        let cap = self.certified_run_length();
        if e_len > cap || f_len > cap {
            return Err(Error::Capacity(format!(
                "word degree ({e_len} E's, {f_len} F's) exceeds certified straightening degree {cap}"
            )));
        }
        Ok(())
    }

    fn kmono_allowed(&self, k: &KMono) -> Result<bool> {
        match self.variant {
            Variant::Utilde => Ok(true),
            Variant::Uhat => {
                if k.mu.iter().chain(&k.nu).all(|e| *e >= 0) {
                    Ok(true)
                } else {
                    Err(Error::Invalid(
                        "negative K exponent is not allowed in the Uhat variant".into(),
                    ))
                }
            }
            // In the Heisenberg quotients the killed K's act as zero, so a
            // term carrying them is dropped; negative exponents are illegal.
            Variant::HeisPlus => {
                if k.mu.iter().any(|e| *e < 0) || k.nu.iter().any(|e| *e < 0) {
                    Err(Error::Invalid("negative K exponent in H+".into()))
                } else {
                    Ok(k.nu.iter().all(|e| *e == 0))
                }
            }
            Variant::HeisMinus => {
                if k.mu.iter().any(|e| *e < 0) || k.nu.iter().any(|e| *e < 0) {
                    Err(Error::Invalid("negative K exponent in H-".into()))
                } else {
                    Ok(k.mu.iter().all(|e| *e == 0))
                }
            }
        }
    }

    /// PBW root vectors (F_beta, E_beta) in convex order, computed once via
    /// the inverse braid chains and cached.
    pub fn root_vector_elements(&self) -> Result<Arc<Vec<(Element, Element)>>> {
        {
            let guard = self.base.root_vectors.lock().unwrap();
            if let Some(cached) = guard.as_ref() {
                return Ok(Arc::clone(cached));
            }
        }
        let computed = Arc::new(pbw::compute_root_vectors(self)?);
        let mut guard = self.base.root_vectors.lock().unwrap();
        *guard = Some(Arc::clone(&computed));
        Ok(computed)
    }
}

/// A finite Q(v^{1/2})-linear combination of normalized words.
#[derive(Clone)]
pub struct Element {
    pres: Presentation,
    terms: BTreeMap<NormalWord, RatFunc>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pres.base, &other.pres.base)
            && self.pres.variant == other.pres.variant
            && self.terms == other.terms
    }
}

impl Eq for Element {}

/// One letter of a raw (unnormalized) E/F word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EfLetter {
    E(Letter),
    F(Letter),
}

impl Element {
    pub fn zero(pres: &Presentation) -> Element {
        Element { pres: pres.clone(), terms: BTreeMap::new() }
    }

    pub fn one(pres: &Presentation) -> Element {
        Element::scalar(pres, RatFunc::one())
    }

    pub fn scalar(pres: &Presentation, c: RatFunc) -> Element {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(NormalWord::identity(pres.rank()), c);
        }
        Element { pres: pres.clone(), terms }
    }

    /// The generator g^power as an element. E/F powers must be positive;
    /// K/K' powers may be negative only in the Utilde variant.
    pub fn generator(pres: &Presentation, g: Gen, power: i64) -> Result<Element> {
        if power == 0 {
            return Ok(Element::one(pres));
        }
        let rank = pres.rank();
        let check_index = |i: usize| -> Result<()> {
            if i >= rank {
                Err(Error::Invalid(format!("generator index {} out of range 1..={}", i + 1, rank)))
            } else {
                Ok(())
            }
        };
        let mut word = NormalWord::identity(rank);
        match g {
            Gen::E(i) => {
                check_index(i)?;
                if power < 0 {
                    return Err(Error::Invalid("E generators are not invertible".into()));
                }
                word.eword = vec![i as Letter; power as usize];
            }
            Gen::F(i) => {
                check_index(i)?;
                if power < 0 {
                    return Err(Error::Invalid("F generators are not invertible".into()));
                }
                word.fword = vec![i as Letter; power as usize];
            }
            Gen::K(i) => {
                check_index(i)?;
                word.k.mu[i] = power;
            }
            Gen::Kp(i) => {
                check_index(i)?;
                word.k.nu[i] = power;
            }
        }
        if !pres.kmono_allowed(&word.k)? {
            return Ok(Element::zero(pres));
        }
        pres.check_capacity(word.eword.len(), word.fword.len())?;
        let mut terms = BTreeMap::new();
        terms.insert(word, RatFunc::one());
        Ok(Element { pres: pres.clone(), terms })
    }

    /// K_mu K'_nu as an element.
    pub fn k_monomial(pres: &Presentation, k: KMono) -> Result<Element> {
        if !pres.kmono_allowed(&k)? {
            return Ok(Element::zero(pres));
        }
        let mut word = NormalWord::identity(pres.rank());
        word.k = k;
        let mut terms = BTreeMap::new();
        terms.insert(word, RatFunc::one());
        Ok(Element { pres: pres.clone(), terms })
    }

    /// Build and normalize an element from a raw generator word.
    pub fn from_word(pres: &Presentation, word: &[Gen], coeff: RatFunc) -> Result<Element> {
        let mut out = Element::scalar(pres, coeff);
        for g in word {
            let ge = Element::generator(pres, *g, 1)?;
            out = out.mul(&ge)?;
        }
        Ok(out)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn terms(&self) -> &BTreeMap<NormalWord, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &NormalWord) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same_presentation(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.check_same_presentation(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Element {
        Element {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Element {
        if c.is_zero() {
            return Element::zero(&self.pres);
        }
        Element {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(w, t)| (w.clone(), t * c)).collect(),
        }
    }

    pub fn scale_laurent(&self, c: &LaurentHalf) -> Element {
        self.scale(&RatFunc::from(c.clone()))
    }

    fn check_same_presentation(&self, other: &Element) -> Result<()> {
        if !self.pres.compatible(&other.pres) {
            return Err(Error::Invalid("presentation mismatch".into()));
        }
        Ok(())
    }

    pub(crate) fn insert_add(&mut self, w: NormalWord, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Normalized product: the normal form of the concatenation of
    /// representatives. Associative and unital.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same_presentation(other)?;
        let mut out = Element::zero(&self.pres);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut letters: Vec<EfLetter> = Vec::with_capacity(
                    w1.fword.len() + w1.eword.len() + w2.fword.len() + w2.eword.len(),
                );
                letters.extend(w1.fword.iter().map(|l| EfLetter::F(*l)));
                letters.extend(w1.eword.iter().map(|l| EfLetter::E(*l)));
                letters.extend(w2.fword.iter().map(|l| EfLetter::F(*l)));
                letters.extend(w2.eword.iter().map(|l| EfLetter::E(*l)));
                // Move w1's K-monomial to the right across w2's letters.
                let cross = kmono_cross_exponent(self.pres.datum(), &w1.k, &w2.fword, &w2.eword);
                let coeff = &(c1 * c2) * &RatFunc::v_half_pow(cross);
                let k = w1.k.mul(&w2.k);
                normalize_into(&self.pres, letters, k, coeff, &mut out)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Element> {
        let mut acc = Element::one(&self.pres);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Retag this element in a sibling presentation. Terms illegal in the
    /// target variant are an error, except when the target is a Heisenberg
    /// quotient, where terms in the killed ideal are dropped (the canonical
    /// projection).
    pub fn into_variant(&self, target: &Presentation) -> Result<Element> {
        if !Arc::ptr_eq(&self.pres.base, &target.base) {
            return Err(Error::Invalid("presentation base mismatch".into()));
        }
        let mut out = Element::zero(target);
        for (w, c) in &self.terms {
            if target.kmono_allowed(&w.k)? {
                out.insert_add(w.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Canonical projection to a Heisenberg quotient (drops the killed K's).
    pub fn project_heisenberg(&self, plus: bool) -> Result<Element> {
        if self.pres.variant != Variant::Uhat {
            return Err(Error::Invalid("project_heisenberg expects a Uhat element".into()));
        }
        let target = self.pres.sibling(if plus { Variant::HeisPlus } else { Variant::HeisMinus });
        self.into_variant(&target)
    }

    /// The basis-wise section of the projection to a Heisenberg quotient.
    ///
    /// For H+ the triangular decomposition is K+ (x) U- (x) U+, whose basis
    /// words already have the internal F E K shape, so the section is the
    /// identity on representatives. For H- the decomposition is
    /// K- (x) U+ (x) U-, so representatives are first rewritten with the
    /// E-block on the left (inside H-) and those words are injected verbatim.
    pub fn iota_split(&self) -> Result<Element> {
        let target = self.pres.sibling(Variant::Uhat);
        match self.pres.variant {
            Variant::HeisPlus => {
                let mut out = Element::zero(&target);
                for (w, c) in &self.terms {
                    out.insert_add(w.clone(), c.clone());
                }
                Ok(out)
            }
            Variant::HeisMinus => {
                let mut out = Element::zero(&target);
                for ((ew, fw), c, k) in self.ef_reordered_terms()? {
                    let mut letters: Vec<EfLetter> = Vec::new();
                    letters.extend(ew.iter().map(|l| EfLetter::E(*l)));
                    letters.extend(fw.iter().map(|l| EfLetter::F(*l)));
                    normalize_into(&target, letters, k, c, &mut out)?;
                }
                Ok(out)
            }
            _ => Err(Error::Invalid("iota_split expects a Heisenberg element".into())),
        }
    }

    /// Rewrite this element as a combination of words E-block * F-block * K,
    /// inside its own presentation. Returns ((eword, fword), coeff, k).
    #[allow(clippy::type_complexity)]
    fn ef_reordered_terms(&self) -> Result<Vec<((HalfWord, HalfWord), RatFunc, KMono)>> {
        let mut acc: BTreeMap<(HalfWord, HalfWord, KMono), RatFunc> = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut letters: Vec<EfLetter> = Vec::new();
            letters.extend(w.fword.iter().map(|l| EfLetter::F(*l)));
            letters.extend(w.eword.iter().map(|l| EfLetter::E(*l)));
            reorder_ef_into(&self.pres, letters, w.k.clone(), c.clone(), &mut acc)?;
        }
        Ok(acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((e, f, k), c)| ((e, f), c, k))
            .collect())
    }

    /// The common Gamma-degree of all terms, or None when inhomogeneous.
    /// The zero element counts as homogeneous of degree zero.
    pub fn gamma_degree(&self) -> Option<GammaDegree> {
        let rank = self.pres.rank();
        let mut result: Option<GammaDegree> = None;
        for w in self.terms.keys() {
            let d = word_gamma_degree(rank, w);
            match &result {
                None => result = Some(d),
                Some(prev) if *prev == d => {}
                Some(_) => return None,
            }
        }
        Some(result.unwrap_or_else(|| GammaDegree::zero(rank)))
    }

    /// Z^I-weight of the element (deg E_i = alpha_i, deg F_i = -alpha_i,
    /// deg K = 0), or None when inhomogeneous.
    pub fn weight(&self) -> Option<RootVec> {
        let rank = self.pres.rank();
        let mut result: Option<RootVec> = None;
        for w in self.terms.keys() {
            let mut d = vec![0i64; rank];
            for l in &w.eword {
                d[*l as usize] += 1;
            }
            for l in &w.fword {
                d[*l as usize] -= 1;
            }
            match &result {
                None => result = Some(d),
                Some(prev) if *prev == d => {}
                Some(_) => return None,
            }
        }
        Some(result.unwrap_or_else(|| vec![0; rank]))
    }

    /// True if every word is a pure E-word (no F's, trivial K).
    pub fn is_positive_half(&self) -> bool {
        self.terms.keys().all(|w| w.fword.is_empty() && w.k.is_identity())
    }

    /// True if every word is a pure F-word (no E's, trivial K).
    pub fn is_negative_half(&self) -> bool {
        self.terms.keys().all(|w| w.eword.is_empty() && w.k.is_identity())
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Element {
        Element {
            pres: self.pres.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

/// Gamma-degree of a normalized word.
pub(crate) fn word_gamma_degree(rank: usize, w: &NormalWord) -> GammaDegree {
    let mut d = GammaDegree::zero(rank);
    for l in &w.eword {
        d.plus[*l as usize] += 1;
    }
    for l in &w.fword {
        d.minus[*l as usize] += 1;
    }
    for i in 0..rank {
        let k = w.k.mu[i] + w.k.nu[i];
        d.plus[i] += k;
        d.minus[i] += k;
    }
    d
}

/// Exponent (in half units) picked up when K_mu K'_nu crosses the given
/// E/F-blocks from left to right.
fn kmono_cross_exponent(datum: &CartanDatum, k: &KMono, fword: &[Letter], eword: &[Letter]) -> i64 {
    let rank = datum.rank;
    let mut weight = vec![0i64; rank];
    for l in eword {
        weight[*l as usize] += 1;
    }
    for l in fword {
        weight[*l as usize] -= 1;
    }
    let mut exp = 0;
    for i in 0..rank {
        let pairing: i64 = (0..rank).map(|j| datum.c(i, j) * weight[j]).sum();
        exp += (k.mu[i] - k.nu[i]) * pairing;
    }
    2 * exp
}

/// Normalize a raw E/F-letter word (times a K-monomial and coefficient) and
/// accumulate the result into `out`.
fn normalize_into(
    pres: &Presentation,
    letters: Vec<EfLetter>,
    k: KMono,
    coeff: RatFunc,
    out: &mut Element,
) -> Result<()> {
    let datum = pres.datum().clone();
    let rank = pres.rank();
    let e_total = letters.iter().filter(|l| matches!(l, EfLetter::E(_))).count();
    let f_total = letters.len() - e_total;
    pres.check_capacity(e_total, f_total)?;

    let mut stack: Vec<(Vec<EfLetter>, KMono, RatFunc)> = vec![(letters, k, coeff)];
    while let Some((mut w, k, c)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        // Leftmost adjacent (E_i, F_j) inversion.
        let mut inversion = None;
        for p in 0..w.len().saturating_sub(1) {
            if let (EfLetter::E(i), EfLetter::F(j)) = (w[p], w[p + 1]) {
                inversion = Some((p, i, j));
                break;
            }
        }
        if let Some((p, i, j)) = inversion {
            if i == j {
                // E_i F_i = F_i E_i + (v^{-1} - v)(K_i - K_i'),
                // with the freshly created K crossing the suffix.
                let mut dropped = w.clone();
                dropped.remove(p + 1);
                dropped.remove(p);
                let suffix = &w[p + 2..];
                let (mut fsuf, mut esuf) = (Vec::new(), Vec::new());
                for l in suffix {
                    match l {
                        EfLetter::E(x) => esuf.push(*x),
                        EfLetter::F(x) => fsuf.push(*x),
                    }
                }
                let scal = &LaurentHalf::v_pow(-1) - &LaurentHalf::v_pow(1);
                let base = &c * &RatFunc::from(scal);
                let mut k_gen = KMono::identity(rank);
                k_gen.mu[i as usize] = 1;
                let cross_k = kmono_cross_exponent(&datum, &k_gen, &fsuf, &esuf);
                stack.push((dropped.clone(), k.mul(&k_gen), &base * &RatFunc::v_half_pow(cross_k)));
                let mut kp_gen = KMono::identity(rank);
                kp_gen.nu[i as usize] = 1;
                let cross_kp = kmono_cross_exponent(&datum, &kp_gen, &fsuf, &esuf);
                stack.push((dropped, k.mul(&kp_gen), &(-&base) * &RatFunc::v_half_pow(cross_kp)));
            }
            // Swap: E_i F_j -> F_j E_i (exact for i != j, leading term otherwise).
            w.swap(p, p + 1);
            stack.push((w, k, c));
            continue;
        }
        // No inversions: the word has the shape F* E*.
        let split = w.iter().position(|l| matches!(l, EfLetter::E(_))).unwrap_or(w.len());
        let fword: HalfWord = w[..split]
            .iter()
            .map(|l| match l {
                EfLetter::F(x) => *x,
                EfLetter::E(_) => unreachable!(),
            })
            .collect();
        let eword: HalfWord = w[split..]
            .iter()
            .map(|l| match l {
                EfLetter::E(x) => *x,
                EfLetter::F(_) => unreachable!(),
            })
            .collect();
        if !pres.kmono_allowed(&k)? {
            continue;
        }
        let fpoly = pres.base.rules.reduce_word(&fword);
        let epoly = pres.base.rules.reduce_word(&eword);
        for (fw, fc) in &fpoly {
            for (ew, ec) in &epoly {
                let word = NormalWord { fword: fw.clone(), eword: ew.clone(), k: k.clone() };
                out.insert_add(word, &(&c * fc) * ec);
            }
        }
    }
    Ok(())
}

/// Rewrite a raw word into combinations of E-block * F-block * K words,
/// working inside the element's own variant (used by the H- section).
fn reorder_ef_into(
    pres: &Presentation,
    letters: Vec<EfLetter>,
    k: KMono,
    coeff: RatFunc,
    acc: &mut BTreeMap<(HalfWord, HalfWord, KMono), RatFunc>,
) -> Result<()> {
    let datum = pres.datum().clone();
    let rank = pres.rank();
    let mut stack: Vec<(Vec<EfLetter>, KMono, RatFunc)> = vec![(letters, k, coeff)];
    while let Some((mut w, k, c)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        // Leftmost adjacent (F_j, E_i) inversion (we want E's first here).
        let mut inversion = None;
        for p in 0..w.len().saturating_sub(1) {
            if let (EfLetter::F(j), EfLetter::E(i)) = (w[p], w[p + 1]) {
                inversion = Some((p, i, j));
                break;
            }
        }
        if let Some((p, i, j)) = inversion {
            if i == j {
                // F_i E_i = E_i F_i - (v^{-1} - v)(K_i - K_i').
                let mut dropped = w.clone();
                dropped.remove(p + 1);
                dropped.remove(p);
                let suffix = &w[p + 2..];
                let (mut fsuf, mut esuf) = (Vec::new(), Vec::new());
                for l in suffix {
                    match l {
                        EfLetter::E(x) => esuf.push(*x),
                        EfLetter::F(x) => fsuf.push(*x),
                    }
                }
                let scal = &LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1);
                let base = &c * &RatFunc::from(scal);
                let mut k_gen = KMono::identity(rank);
                k_gen.mu[i as usize] = 1;
                if pres.kmono_allowed(&k_gen)? {
                    let cross_k = kmono_cross_exponent(&datum, &k_gen, &fsuf, &esuf);
                    stack.push((dropped.clone(), k.mul(&k_gen), &base * &RatFunc::v_half_pow(cross_k)));
                }
                let mut kp_gen = KMono::identity(rank);
                kp_gen.nu[i as usize] = 1;
                if pres.kmono_allowed(&kp_gen)? {
                    let cross_kp = kmono_cross_exponent(&datum, &kp_gen, &fsuf, &esuf);
                    stack.push((dropped, k.mul(&kp_gen), &(-&base) * &RatFunc::v_half_pow(cross_kp)));
                }
            }
            w.swap(p, p + 1);
            stack.push((w, k, c));
            continue;
        }
        let split = w.iter().position(|l| matches!(l, EfLetter::F(_))).unwrap_or(w.len());
        let eword: HalfWord = w[..split]
            .iter()
            .map(|l| match l {
                EfLetter::E(x) => *x,
                EfLetter::F(_) => unreachable!(),
            })
            .collect();
        let fword: HalfWord = w[split..]
            .iter()
            .map(|l| match l {
                EfLetter::F(x) => *x,
                EfLetter::E(_) => unreachable!(),
            })
            .collect();
        let epoly = pres.base.rules.reduce_word(&eword);
        let fpoly = pres.base.rules.reduce_word(&fword);
        for (ew, ec) in &epoly {
            for (fw, fc) in &fpoly {
                let key = (ew.clone(), fw.clone(), k.clone());
                let add = &(&c * ec) * fc;
                match acc.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(add);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &add;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
