//! Text rendering of elements. Terms are printed leading-first: higher total
//! degree before lower, F-block before pure Cartan terms, K before K'.

use std::cmp::Ordering;
use std::fmt;

use super::{Element, NormalWord};
use crate::coeff::RatFunc;

fn word_total_degree(w: &NormalWord) -> i64 {
    w.fword.len() as i64 + w.eword.len() as i64 + w.k.total_degree()
}

fn display_cmp(a: &NormalWord, b: &NormalWord) -> Ordering {
    word_total_degree(b)
        .cmp(&word_total_degree(a))
        .then_with(|| a.fword.cmp(&b.fword))
        .then_with(|| a.eword.cmp(&b.eword))
        .then_with(|| a.k.nu.cmp(&b.k.nu))
        .then_with(|| a.k.mu.cmp(&b.k.mu))
}

fn push_power(out: &mut Vec<String>, name: String, power: i64) {
    if power == 0 {
        return;
    }
    if power == 1 {
        out.push(name);
    } else {
        out.push(format!("{name}^{power}"));
    }
}

fn word_text(w: &NormalWord) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut run = |letters: &[u8], tag: char, parts: &mut Vec<String>| {
        let mut idx = 0;
        while idx < letters.len() {
            let l = letters[idx];
            let mut count = 1;
            while idx + count < letters.len() && letters[idx + count] == l {
                count += 1;
            }
            push_power(parts, format!("{tag}{}", l + 1), count as i64);
            idx += count;
        }
    };
    run(&w.fword, 'F', &mut parts);
    run(&w.eword, 'E', &mut parts);
    for (i, e) in w.k.mu.iter().enumerate() {
        push_power(&mut parts, format!("K{}", i + 1), *e);
    }
    for (i, e) in w.k.nu.iter().enumerate() {
        push_power(&mut parts, format!("K{}'", i + 1), *e);
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Render a coefficient together with a word; returns (is_negative, body).
fn coeff_word_text(c: &RatFunc, word: &str) -> (bool, String) {
    let is_identity = word == "1";
    if let Some(l) = c.as_laurent() {
        let neg_lead = l.lead_coeff() < num_bigint::BigInt::from(0);
        let l_disp = if neg_lead { -l } else { l.clone() };
        let body = if l_disp.is_one() {
            word.to_string()
        } else if l_disp.num_terms() == 1 {
            if is_identity {
                format!("{l_disp}")
            } else {
                format!("{l_disp}*{word}")
            }
        } else if is_identity {
            format!("({l_disp})")
        } else {
            format!("({l_disp})*{word}")
        };
        (neg_lead, body)
    } else if is_identity {
        (false, format!("({c})"))
    } else {
        (false, format!("({c})*{word}"))
    }
}

pub fn element_to_text(x: &Element) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut words: Vec<&NormalWord> = x.terms().keys().collect();
    words.sort_by(|a, b| display_cmp(a, b));
    let mut out = String::new();
    for (n, w) in words.iter().enumerate() {
        let c = &x.terms()[*w];
        let (neg, body) = coeff_word_text(c, &word_text(w));
        if n == 0 {
            if neg {
                out.push_str("-");
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", element_to_text(self))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", element_to_text(self))
    }
}
