//! Text rendering of polynomials and matrices in the conventional style:
//! inverse generators carry a macron (x with combining overline), the
//! coefficient d-1 is written as a leading minus when d > 2, and terms are
//! listed in the canonical lexicographic order of their exponent vectors.

use crate::matrix::PolyMatrix;
use crate::ring::{LaurentPoly, Monomial};

/// Variable names for a given dimension: x, y, z up to three directions,
/// a..e in five, x1..xD otherwise.
pub fn variable_names(dim: usize) -> Vec<String> {
    match dim {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        5 => ["a", "b", "c", "d", "e"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        _ => (1..=dim).map(|i| format!("x{i}")).collect(),
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub fn monomial_to_text(m: &Monomial, names: &[String]) -> String {
    let mut s = String::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        s.push_str(&names[i]);
        if e < 0 {
            s.push('\u{0304}'); // combining macron: x-bar for x^(-1)
        }
        let a = e.unsigned_abs();
        if a > 1 {
            s.push_str(&superscript(a));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

pub fn poly_to_text(p: &LaurentPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let d = p.modulus();
    let mut out = String::new();
    for (m, c) in p.terms() {
        let negative = d > 2 && c == d - 1;
        if out.is_empty() {
            if negative {
                out.push('−');
            }
        } else {
            out.push_str(if negative { " − " } else { " + " });
        }
        let mono = monomial_to_text(m, names);
        if !negative && c != 1 {
            out.push_str(&c.to_string());
            if mono != "1" {
                out.push_str(&mono);
            }
        } else if mono == "1" {
            out.push('1');
        } else {
            out.push_str(&mono);
        }
    }
    out
}

fn display_width(s: &str) -> usize {
    // combining macrons render at zero width
    s.chars().filter(|&c| c != '\u{0304}').count()
}

/// Aligned table of a polynomial matrix.
pub fn matrix_to_text(m: &PolyMatrix) -> String {
    let names = variable_names(m.dim());
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| poly_to_text(m.get(r, c), &names))
                .collect()
        })
        .collect();
    let mut widths = vec![0usize; m.cols()];
    for row in &cells {
        for (c, s) in row.iter().enumerate() {
            widths[c] = widths[c].max(display_width(s));
        }
    }
    let mut out = String::new();
    for row in &cells {
        out.push('[');
        for (c, s) in row.iter().enumerate() {
            if c > 0 {
                out.push_str("  ");
            }
            let pad = widths[c] - display_width(s);
            out.push_str(&" ".repeat(pad));
            out.push_str(s);
        }
        out.push_str("]\n");
    }
    out
}
