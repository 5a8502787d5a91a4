//! Straightening rules for the half quantum groups: a degree-graded rewriting
//! system for the quantum Serre ideal over a single alphabet (used for both
//! the E- and F-blocks), completed by the diamond lemma.
//!
//! Words are compared in deglex order (length first, then letter indices).
//! Each relation is oriented so its deglex-largest word rewrites to the rest.
//! Completion resolves all overlaps; for the finite types handled here the
//! process reaches a fixpoint, which certifies confluence at every degree.
//! If the configured degree cap is hit first, confluence is only certified up
//! to the cap and normalization beyond it reports a capacity error.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::cartan::RootSystemData;
use crate::coeff::{qbinom, RatFunc};
use crate::error::{Error, Result};

pub type Letter = u8;
pub type HalfWord = Vec<Letter>;

/// Linear combination of words with rational-function coefficients.
pub type Poly = BTreeMap<HalfWord, RatFunc>;

#[derive(Debug, Clone)]
pub struct Rule {
    pub lhs: HalfWord,
    pub rhs: Vec<(HalfWord, RatFunc)>,
}

#[derive(Debug, Clone)]
pub struct SerreRules {
    rules: Vec<Rule>,
    /// None: confluence certified at all degrees (completion reached a
    /// fixpoint). Some(d): certified only for words of length <= d.
    pub certified_cap: Option<usize>,
}

pub fn deglex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn poly_insert(p: &mut Poly, w: HalfWord, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match p.entry(w) {
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

impl SerreRules {
    /// Build and complete the rewriting system for the quantum Serre ideal of
    /// the given simply-laced root system.
    pub fn build(rs: &RootSystemData, completion_cap: usize) -> Result<SerreRules> {
        let n = rs.datum.rank;
        let mut rules: Vec<Rule> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                match rs.datum.c(i, j) {
                    0 => {
                        if j > i {
                            // x_j x_i -> x_i x_j
                            rules.push(Rule {
                                lhs: vec![j as Letter, i as Letter],
                                rhs: vec![(vec![i as Letter, j as Letter], RatFunc::one())],
                            });
                        }
                    }
                    -1 => {
                        // x_i^2 x_j - [2] x_i x_j x_i + x_j x_i^2 = 0, oriented
                        // at its deglex-largest word.
                        let two = RatFunc::from(qbinom(2, 1)?);
                        let (ii_j, i_j_i, j_ii) = (
                            vec![i as Letter, i as Letter, j as Letter],
                            vec![i as Letter, j as Letter, i as Letter],
                            vec![j as Letter, i as Letter, i as Letter],
                        );
                        if i > j {
                            rules.push(Rule {
                                lhs: ii_j,
                                rhs: vec![(i_j_i, two), (j_ii, -&RatFunc::one())],
                            });
                        } else {
                            rules.push(Rule {
                                lhs: j_ii,
                                rhs: vec![(i_j_i, two), (ii_j, -&RatFunc::one())],
                            });
                        }
                    }
                    c => {
                        return Err(Error::Invalid(format!(
                            "not simply laced: c[{i}][{j}] = {c}"
                        )))
                    }
                }
            }
        }
        let mut system = SerreRules { rules, certified_cap: None };
        system.complete(completion_cap)?;
        Ok(system)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// True if `w` contains no rule left-hand side as a factor.
    pub fn is_normal(&self, w: &[Letter]) -> bool {
        self.find_redex(w).is_none()
    }

    fn find_redex(&self, w: &[Letter]) -> Option<(usize, usize)> {
        // Leftmost position, then first matching rule.
        for pos in 0..w.len() {
            for (ri, rule) in self.rules.iter().enumerate() {
                let l = rule.lhs.len();
                if pos + l <= w.len() && w[pos..pos + l] == rule.lhs[..] {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    /// Fully reduce a single word (with coefficient 1) to normal form.
    pub fn reduce_word(&self, w: &[Letter]) -> Poly {
        let mut p = Poly::new();
        poly_insert(&mut p, w.to_vec(), RatFunc::one());
        self.reduce_poly(&mut p);
        p
    }

    /// Fully reduce a polynomial in place.
    pub fn reduce_poly(&self, p: &mut Poly) {
        loop {
            let mut target = None;
            for w in p.keys() {
                if let Some((pos, ri)) = self.find_redex(w) {
                    target = Some((w.clone(), pos, ri));
                    break;
                }
            }
            let Some((w, pos, ri)) = target else { break };
            let c = p.remove(&w).unwrap();
            let rule = &self.rules[ri];
            let l = rule.lhs.len();
            for (rw, rc) in &rule.rhs {
                let mut new_word = Vec::with_capacity(w.len() - l + rw.len());
                new_word.extend_from_slice(&w[..pos]);
                new_word.extend_from_slice(rw);
                new_word.extend_from_slice(&w[pos + l..]);
                poly_insert(p, new_word, &c * rc);
            }
        }
    }

    /// Diamond-lemma completion: resolve all overlaps between rule left-hand
    /// sides, adding oriented rules for nonzero S-polynomials, until either a
    /// fixpoint is reached (full confluence) or the degree cap stops us.
    /// Pairs are processed once through a work queue.
    fn complete(&mut self, cap: usize) -> Result<()> {
        let mut capped = false;
        let mut queue: std::collections::VecDeque<(usize, usize)> = std::collections::VecDeque::new();
        for a in 0..self.rules.len() {
            for b in 0..self.rules.len() {
                queue.push_back((a, b));
            }
        }
        while let Some((a, b)) = queue.pop_front() {
            let (lhs_a, lhs_b) = (self.rules[a].lhs.clone(), self.rules[b].lhs.clone());
            // Proper overlaps: suffix of lhs_a == prefix of lhs_b.
            let mut overlaps: Vec<(HalfWord, usize, usize)> = Vec::new();
            for t in 1..lhs_a.len().min(lhs_b.len()) {
                if lhs_a[lhs_a.len() - t..] != lhs_b[..t] {
                    continue;
                }
                let mut w = lhs_a.clone();
                w.extend_from_slice(&lhs_b[t..]);
                if w.len() > cap {
                    capped = true;
                    continue;
                }
                let pos_b = w.len() - lhs_b.len();
                overlaps.push((w, 0, pos_b));
            }
            // Inclusion overlaps: lhs_b occurs inside lhs_a.
            if a != b && lhs_b.len() < lhs_a.len() {
                for pos in 0..=lhs_a.len() - lhs_b.len() {
                    if lhs_a[pos..pos + lhs_b.len()] == lhs_b[..] {
                        overlaps.push((lhs_a.clone(), 0, pos));
                        break;
                    }
                }
            }
            for (w, pos_a, pos_b) in overlaps {
                if let Some(rule) = self.spolynomial(&w, pos_a, a, pos_b, b) {
                    let new_idx = self.rules.len();
                    self.rules.push(rule);
                    for i in 0..=new_idx {
                        queue.push_back((i, new_idx));
                        if i != new_idx {
                            queue.push_back((new_idx, i));
                        }
                    }
                }
            }
        }
        self.certified_cap = if capped { Some(cap) } else { None };
        Ok(())
    }

    /// Reduce `w` via rule `a` at `pos_a` and via rule `b` at `pos_b`; if the
    /// difference of normal forms is nonzero, orient it into a new rule.
    fn spolynomial(
        &self,
        w: &[Letter],
        pos_a: usize,
        a: usize,
        pos_b: usize,
        b: usize,
    ) -> Option<Rule> {
        let apply = |pos: usize, ri: usize| -> Poly {
            let rule = &self.rules[ri];
            let l = rule.lhs.len();
            let mut p = Poly::new();
            for (rw, rc) in &rule.rhs {
                let mut new_word = Vec::with_capacity(w.len() - l + rw.len());
                new_word.extend_from_slice(&w[..pos]);
                new_word.extend_from_slice(rw);
                new_word.extend_from_slice(&w[pos + l..]);
                poly_insert(&mut p, new_word, rc.clone());
            }
            self.reduce_poly(&mut p);
            p
        };
        let pa = apply(pos_a, a);
        let pb = apply(pos_b, b);
        let mut diff = pa;
        for (w2, c) in pb {
            poly_insert(&mut diff, w2, -&c);
        }
        if diff.is_empty() {
            return None;
        }
        // Orient at the deglex-largest word.
        let lead = diff
            .keys()
            .max_by(|x, y| deglex(x, y))
            .cloned()
            .expect("nonempty");
        let lc = diff.remove(&lead).unwrap();
        let inv = lc.inverse().expect("leading coefficient nonzero");
        let rhs = diff
            .into_iter()
            .map(|(w2, c)| (w2, -&(&c * &inv)))
            .collect();
        Some(Rule { lhs: lead, rhs })
    }

    /// Count irreducible words of each multidegree with total degree <= cap.
    pub fn count_normal_words(&self, rank: usize, total_degree: usize) -> BTreeMap<Vec<i64>, u64> {
        let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        let mut stack: Vec<HalfWord> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            let mut deg = vec![0i64; rank];
            for l in &w {
                deg[*l as usize] += 1;
            }
            *counts.entry(deg).or_insert(0) += 1;
            if w.len() == total_degree {
                continue;
            }
            for l in 0..rank as Letter {
                let mut w2 = w.clone();
                w2.push(l);
                // Only the new suffix can create a redex.
                let fresh = self.rules.iter().any(|r| {
                    let n = r.lhs.len();
                    w2.len() >= n && w2[w2.len() - n..] == r.lhs[..]
                });
                if !fresh {
                    stack.push(w2);
                }
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanDatum, CartanType, RootSystemData};

    fn rules_for(t: CartanType, rank: usize) -> SerreRules {
        let rs = RootSystemData::new(CartanDatum::new(t, rank).unwrap());
        SerreRules::build(&rs, 12).unwrap()
    }

    #[test]
    fn a1_has_no_rules() {
        let r = rules_for(CartanType::A, 1);
        assert!(r.rules().is_empty());
        assert!(r.certified_cap.is_none());
    }

    #[test]
    fn a2_completes_finitely() {
        let r = rules_for(CartanType::A, 2);
        assert!(r.certified_cap.is_none(), "A2 completion should reach a fixpoint");
        // Serre elements reduce to zero.
        let mut p = Poly::new();
        poly_insert(&mut p, vec![0, 0, 1], RatFunc::one());
        poly_insert(&mut p, vec![0, 1, 0], -&RatFunc::from(qbinom(2, 1).unwrap()));
        poly_insert(&mut p, vec![1, 0, 0], RatFunc::one());
        r.reduce_poly(&mut p);
        assert!(p.is_empty());
    }

    #[test]
    fn dimension_certificates() {
        for (t, rank) in [
            (CartanType::A, 2),
            (CartanType::A, 3),
            (CartanType::D, 4),
        ] {
            let rs = RootSystemData::new(CartanDatum::new(t, rank).unwrap());
            let rules = SerreRules::build(&rs, 12).unwrap();
            assert!(rules.certified_cap.is_none(), "{t:?}{rank} should complete");
            let counts = rules.count_normal_words(rank, 6);
            for (mu, count) in counts {
                assert_eq!(
                    count,
                    rs.kostant_count(&mu),
                    "normal word count mismatch at multidegree {mu:?} for {t:?}{rank}"
                );
            }
        }
    }
}
