//! Simply-laced Cartan data, root systems and Weyl combinatorics: reduced
//! words for the longest element, convex orderings of positive roots, the
//! norm function on the root lattice, PBW twist exponents and the Gamma
//! grading monoid.
//!
//! Vertex numbering follows Bourbaki: A_n is the path 1-2-...-n; D_n is the
//! path 1-...-(n-2) with both n-1 and n attached to n-2; E_6/E_7/E_8 form the
//! path 1-3-4-5-6(-7)(-8) with vertex 2 attached to vertex 4.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    D,
    E,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A => write!(f, "A"),
            CartanType::D => write!(f, "D"),
            CartanType::E => write!(f, "E"),
        }
    }
}

/// A vector in the root lattice Z^I, indexed by vertices 0..rank-1.
pub type RootVec = Vec<i64>;

/// Simply-laced Cartan datum: index set, Cartan matrix and Dynkin diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    matrix: Vec<Vec<i64>>,
    edges: Vec<(usize, usize)>,
}

impl CartanDatum {
    /// Build the Cartan datum for a legal (type, rank) pair:
    /// A_n (n >= 1), D_n (n >= 4), E_6, E_7, E_8.
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = match cartan_type {
            CartanType::A => {
                if rank < 1 {
                    return Err(Error::Invalid(format!("illegal type A{rank}")));
                }
                (0..rank.saturating_sub(1)).map(|i| (i, i + 1)).collect()
            }
            CartanType::D => {
                if rank < 4 {
                    return Err(Error::Invalid(format!("illegal type D{rank}")));
                }
                let mut e: Vec<(usize, usize)> = (0..rank - 3).map(|i| (i, i + 1)).collect();
                e.push((rank - 3, rank - 2));
                e.push((rank - 3, rank - 1));
                e
            }
            CartanType::E => {
                if !(6..=8).contains(&rank) {
                    return Err(Error::Invalid(format!("illegal type E{rank}")));
                }
                // Bourbaki: 1-3, 3-4, 4-5, 5-6, (6-7), (7-8), 2-4 (0-based below).
                let mut e = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
                if rank >= 7 {
                    e.push((5, 6));
                }
                if rank == 8 {
                    e.push((6, 7));
                }
                e
            }
        };
        let mut matrix = vec![vec![0i64; rank]; rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &edges {
            matrix[i][j] = -1;
            matrix[j][i] = -1;
        }
        Ok(CartanDatum { cartan_type, rank, matrix, edges })
    }

    /// Parse a compact name like "A1", "D4" or "E8".
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let (t, r) = name.split_at(1);
        let cartan_type = match t {
            "A" | "a" => CartanType::A,
            "D" | "d" => CartanType::D,
            "E" | "e" => CartanType::E,
            _ => return Err(Error::Invalid(format!("unknown Cartan type {name}"))),
        };
        let rank: usize = r
            .parse()
            .map_err(|_| Error::Invalid(format!("bad rank in Cartan name {name}")))?;
        Self::new(cartan_type, rank)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.cartan_type, self.rank)
    }

    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Symmetric form (alpha, beta) on the root lattice; for simply-laced data
    /// this is the Cartan form itself.
    pub fn form(&self, a: &RootVec, b: &RootVec) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.matrix[i][j] * b[j];
            }
        }
        s
    }

    /// Simple reflection s_i(alpha) = alpha - <pairing> alpha_i, using
    /// s_i(alpha_j) = alpha_j - c_{ij} alpha_i.
    pub fn reflect(&self, i: usize, alpha: &RootVec) -> RootVec {
        let mut out = alpha.clone();
        let mut coeff = 0;
        for (j, aj) in alpha.iter().enumerate() {
            coeff += self.matrix[i][j] * aj;
        }
        out[i] -= coeff;
        out
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// All positive roots, generated from the simple roots by reflections.
    pub fn positive_roots(&self) -> Vec<RootVec> {
        let mut seen: std::collections::BTreeSet<RootVec> = std::collections::BTreeSet::new();
        let mut queue: Vec<RootVec> = (0..self.rank).map(|i| self.simple_root(i)).collect();
        while let Some(r) = queue.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for i in 0..self.rank {
                let s = self.reflect(i, &r);
                if s.iter().all(|c| *c >= 0) && !seen.contains(&s) {
                    queue.push(s);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Height eta(alpha) = sum of coordinates.
    pub fn height(&self, alpha: &RootVec) -> i64 {
        alpha.iter().sum()
    }

    /// Norm function N(alpha) = (alpha, alpha)/2 - eta(alpha); an integer for
    /// simply-laced data.
    pub fn norm(&self, alpha: &RootVec) -> i64 {
        let q = self.form(alpha, alpha);
        debug_assert!(q % 2 == 0);
        q / 2 - self.height(alpha)
    }

    /// The lexicographically smallest reduced word for the longest Weyl
    /// element, built greedily: at each step take the smallest i whose simple
    /// root is still sent to a positive root.
    pub fn longest_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        // Track w as the images of the simple roots under w (columns).
        let mut images: Vec<RootVec> = (0..self.rank).map(|i| self.simple_root(i)).collect();
        loop {
            let mut chosen = None;
            for (i, im) in images.iter().enumerate() {
                if im.iter().all(|c| *c >= 0) && im.iter().any(|c| *c > 0) {
                    chosen = Some(i);
                    break;
                }
            }
            let Some(i) = chosen else { break };
            // w := w s_i. New images: (w s_i)(alpha_j) = w(s_i(alpha_j)).
            let old = images.clone();
            for (j, im) in images.iter_mut().enumerate() {
                let si_aj = self.reflect(i, &self.simple_root(j));
                let mut out = vec![0i64; self.rank];
                for (k, coef) in si_aj.iter().enumerate() {
                    for (t, o) in out.iter_mut().enumerate() {
                        *o += coef * old[k][t];
                    }
                }
                *im = out;
            }
            word.push(i);
        }
        word
    }
}

/// A root system with a fixed reduced word for w_0 and the induced convex
/// ordering beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) of the positive
/// roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemData {
    pub datum: CartanDatum,
    pub reduced_word: Vec<usize>,
    pub convex_roots: Vec<RootVec>,
}

impl RootSystemData {
    pub fn new(datum: CartanDatum) -> Self {
        let reduced_word = datum.longest_word();
        let convex_roots = convex_roots(&datum, &reduced_word);
        RootSystemData { datum, reduced_word, convex_roots }
    }

    pub fn num_positive_roots(&self) -> usize {
        self.convex_roots.len()
    }

    /// The PBW twist exponent n_a = sum_{k<l} (beta_k, beta_l) a_k a_l.
    pub fn pbw_twist(&self, a: &[u32]) -> Result<i64> {
        if a.len() != self.convex_roots.len() {
            return Err(Error::Invalid(format!(
                "exponent vector length {} != number of positive roots {}",
                a.len(),
                self.convex_roots.len()
            )));
        }
        let mut n = 0;
        for k in 0..a.len() {
            for l in k + 1..a.len() {
                n += self.datum.form(&self.convex_roots[k], &self.convex_roots[l])
                    * a[k] as i64
                    * a[l] as i64;
            }
        }
        Ok(n)
    }

    /// Number of monomials in the PBW exponent lattice of a given weight,
    /// i.e. |{a in N^{Phi+} : sum a_k beta_k = mu}| (Kostant partition count).
    pub fn kostant_count(&self, mu: &RootVec) -> u64 {
        fn rec(roots: &[RootVec], mu: &RootVec, k: usize) -> u64 {
            if mu.iter().all(|c| *c == 0) {
                return 1;
            }
            if k == roots.len() {
                return 0;
            }
            let mut total = rec(roots, mu, k + 1);
            let mut m = mu.clone();
            loop {
                let mut ok = true;
                for (c, r) in m.iter_mut().zip(&roots[k]) {
                    *c -= r;
                    if *c < 0 {
                        ok = false;
                    }
                }
                if !ok {
                    break;
                }
                total += rec(roots, &m, k + 1);
            }
            total
        }
        rec(&self.convex_roots, mu, 0)
    }

    /// All PBW exponent vectors of a given weight.
    pub fn kostant_exponents(&self, mu: &RootVec) -> Vec<Vec<u32>> {
        fn rec(
            roots: &[RootVec],
            mu: RootVec,
            k: usize,
            current: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if k == roots.len() {
                if mu.iter().all(|c| *c == 0) {
                    out.push(current.clone());
                }
                return;
            }
            let mut m = mu.clone();
            let mut mult = 0u32;
            loop {
                current[k] = mult;
                rec(roots, m.clone(), k + 1, current, out);
                mult += 1;
                let mut ok = true;
                for (c, r) in m.iter_mut().zip(&roots[k]) {
                    *c -= r;
                    if *c < 0 {
                        ok = false;
                    }
                }
                if !ok {
                    break;
                }
            }
            current[k] = 0;
        }
        let mut out = Vec::new();
        let mut current = vec![0u32; self.convex_roots.len()];
        rec(&self.convex_roots, mu.clone(), 0, &mut current, &mut out);
        out
    }
}

fn convex_roots(datum: &CartanDatum, word: &[usize]) -> Vec<RootVec> {
    let mut out = Vec::with_capacity(word.len());
    for k in 0..word.len() {
        let mut beta = datum.simple_root(word[k]);
        for t in (0..k).rev() {
            beta = datum.reflect(word[t], &beta);
        }
        out.push(beta);
    }
    out
}

/// An element of the grading monoid Gamma = N^I x N^I. The `plus` part counts
/// E-degrees (and the K-halves), the `minus` part F-degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaDegree {
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
}

impl GammaDegree {
    pub fn zero(rank: usize) -> Self {
        GammaDegree { plus: vec![0; rank], minus: vec![0; rank] }
    }

    pub fn alpha_plus(rank: usize, i: usize) -> Self {
        let mut d = Self::zero(rank);
        d.plus[i] = 1;
        d
    }

    pub fn alpha_minus(rank: usize, i: usize) -> Self {
        let mut d = Self::zero(rank);
        d.minus[i] = 1;
        d
    }

    pub fn add(&self, other: &GammaDegree) -> Self {
        GammaDegree {
            plus: self.plus.iter().zip(&other.plus).map(|(a, b)| a + b).collect(),
            minus: self.minus.iter().zip(&other.minus).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_nonneg(&self) -> bool {
        self.plus.iter().chain(&self.minus).all(|c| *c >= 0)
    }
}

/// Evaluation of the coweight alpha-check_i on a Gamma degree, fixed by
/// alpha-check_i(alpha_{+j}) = c_{ij} and alpha-check_i(alpha_{-j}) = -c_{ij}.
pub fn gamma_eval(datum: &CartanDatum, i: usize, d: &GammaDegree) -> i64 {
    let mut s = 0;
    for j in 0..datum.rank {
        s += datum.c(i, j) * (d.plus[j] - d.minus[j]);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_cartan_examples() {
        let a1 = CartanDatum::new(CartanType::A, 1).unwrap();
        assert_eq!(a1.matrix(), &[vec![2]]);
        let a2 = CartanDatum::new(CartanType::A, 2).unwrap();
        assert_eq!(a2.matrix(), &[vec![2, -1], vec![-1, 2]]);
        assert!(CartanDatum::new(CartanType::D, 3).is_err());
        assert!(CartanDatum::parse("E9").is_err());
        assert_eq!(CartanDatum::parse("D4").unwrap().rank, 4);
    }

    #[test]
    fn reflect_examples() {
        let a1 = CartanDatum::new(CartanType::A, 1).unwrap();
        assert_eq!(a1.reflect(0, &vec![1]), vec![-1]);
        let a2 = CartanDatum::new(CartanType::A, 2).unwrap();
        // s_1(alpha_2) = alpha_1 + alpha_2
        assert_eq!(a2.reflect(0, &vec![0, 1]), vec![1, 1]);
        // involution
        let alpha = vec![3, -2];
        assert_eq!(a2.reflect(1, &a2.reflect(1, &alpha)), alpha);
    }

    #[test]
    fn reflection_preserves_form() {
        let d4 = CartanDatum::new(CartanType::D, 4).unwrap();
        let a = vec![1, -2, 3, 0];
        let b = vec![0, 1, 1, -1];
        for i in 0..4 {
            assert_eq!(
                d4.form(&d4.reflect(i, &a), &d4.reflect(i, &b)),
                d4.form(&a, &b)
            );
        }
    }

    #[test]
    fn longest_words() {
        let a1 = CartanDatum::new(CartanType::A, 1).unwrap();
        assert_eq!(a1.longest_word(), vec![0]);
        let a2 = CartanDatum::new(CartanType::A, 2).unwrap();
        assert_eq!(a2.longest_word(), vec![0, 1, 0]);
        let a3 = CartanDatum::new(CartanType::A, 3).unwrap();
        assert_eq!(a3.longest_word().len(), 6);
        let d4 = CartanDatum::new(CartanType::D, 4).unwrap();
        assert_eq!(d4.longest_word().len(), 12);
    }

    #[test]
    fn convex_roots_exhaust_positives() {
        for datum in [
            CartanDatum::new(CartanType::A, 2).unwrap(),
            CartanDatum::new(CartanType::A, 3).unwrap(),
            CartanDatum::new(CartanType::D, 4).unwrap(),
        ] {
            let rs = RootSystemData::new(datum.clone());
            let mut convex = rs.convex_roots.clone();
            convex.sort();
            let positives = datum.positive_roots();
            assert_eq!(convex.len(), positives.len());
            assert_eq!(convex, positives);
            // distinct
            convex.dedup();
            assert_eq!(convex.len(), rs.convex_roots.len());
        }
    }

    #[test]
    fn norm_examples() {
        let a1 = CartanDatum::new(CartanType::A, 1).unwrap();
        assert_eq!(a1.norm(&vec![1]), 0);
        assert_eq!(a1.norm(&vec![2]), 2);
        assert_eq!(a1.norm(&vec![0]), 0);
    }

    #[test]
    fn norm_bilinearity() {
        let a3 = CartanDatum::new(CartanType::A, 3).unwrap();
        let a = vec![1, 2, 0];
        let b = vec![0, 1, 3];
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        assert_eq!(a3.norm(&sum), a3.norm(&a) + a3.norm(&b) + a3.form(&a, &b));
    }

    #[test]
    fn pbw_twist_examples() {
        let a2 = RootSystemData::new(CartanDatum::new(CartanType::A, 2).unwrap());
        // convex order for word (1,2,1) is alpha_1, alpha_1+alpha_2, alpha_2
        assert_eq!(a2.convex_roots, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(a2.pbw_twist(&[1, 1, 1]).unwrap(), 1);
        assert_eq!(a2.pbw_twist(&[0, 1, 0]).unwrap(), 0);
        let a1 = RootSystemData::new(CartanDatum::new(CartanType::A, 1).unwrap());
        assert_eq!(a1.pbw_twist(&[3]).unwrap(), 0);
        assert!(a1.pbw_twist(&[1, 2]).is_err());
    }

    #[test]
    fn gamma_eval_examples() {
        let a2 = CartanDatum::new(CartanType::A, 2).unwrap();
        assert_eq!(gamma_eval(&a2, 0, &GammaDegree::alpha_plus(2, 0)), 2);
        let kdeg = GammaDegree { plus: vec![1, 0], minus: vec![1, 0] };
        assert_eq!(gamma_eval(&a2, 0, &kdeg), 0);
        assert_eq!(gamma_eval(&a2, 0, &GammaDegree::alpha_minus(2, 1)), 1);
    }

    #[test]
    fn kostant_counts() {
        let a2 = RootSystemData::new(CartanDatum::new(CartanType::A, 2).unwrap());
        assert_eq!(a2.kostant_count(&vec![1, 1]), 2);
        assert_eq!(a2.kostant_count(&vec![2, 2]), 3);
        assert_eq!(a2.kostant_exponents(&vec![1, 1]).len(), 2);
    }
}
