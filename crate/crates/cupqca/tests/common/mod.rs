//! Parser for matrix fixtures transcribed from printed tables.
//!
//! Fixture format: '#' comment lines, then one line per matrix row with
//! entries separated by '|'. Entry grammar (whitespace ignored):
//!
//!   entry   := "0" | ["-"] term (("+"|"-") term)*
//!   term    := product [ "/(" product ")" ]
//!   product := (integer | "k" | var ["^" integer])+
//!
//! A denominator contributes inverse exponents and the modular inverse of its
//! integer/k part, so "1/(2kxz)" at p = 5, k = 1 parses to 3 x^-1 z^-1.

use cupqca::ring::{mod_inverse, LaurentPoly, Monomial};
use cupqca::PolyMatrix;

pub struct FixtureEnv {
    pub modulus: u32,
    pub dim: usize,
    pub vars: Vec<char>,
    pub k: i64,
}

impl FixtureEnv {
    pub fn new(modulus: u32, dim: usize, k: i64) -> Self {
        let vars = match dim {
            2 => vec!['x', 'y'],
            3 => vec!['x', 'y', 'z'],
            5 => vec!['a', 'b', 'c', 'd', 'e'],
            _ => panic!("no fixture variable set for dimension {dim}"),
        };
        FixtureEnv {
            modulus,
            dim,
            vars,
            k,
        }
    }

    fn var_index(&self, ch: char) -> Option<usize> {
        self.vars.iter().position(|&v| v == ch)
    }

    /// Parse a product into (coefficient residue, exponent vector).
    fn parse_product(&self, s: &str) -> (i64, Vec<i32>) {
        let p = self.modulus as i64;
        let mut coeff: i64 = 1;
        let mut exps = vec![0i32; self.dim];
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_ascii_digit() {
                let mut n = 0i64;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    n = n * 10 + chars[i].to_digit(10).unwrap() as i64;
                    i += 1;
                }
                coeff = coeff * n % p;
            } else if ch == 'k' && self.var_index('k').is_none() {
                coeff = coeff * self.k.rem_euclid(p) % p;
                i += 1;
            } else if let Some(v) = self.var_index(ch) {
                i += 1;
                let mut e = 1i32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let mut n = 0i32;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        n = n * 10 + chars[i].to_digit(10).unwrap() as i32;
                        i += 1;
                    }
                    e = n;
                }
                exps[v] += e;
            } else {
                panic!("unexpected character {ch:?} in fixture product {s:?}");
            }
        }
        (coeff.rem_euclid(p), exps)
    }

    fn parse_term(&self, s: &str) -> LaurentPoly {
        let (num, den) = match s.find('/') {
            Some(pos) => {
                let den = s[pos + 1..].trim_start_matches('(').trim_end_matches(')');
                (&s[..pos], den)
            }
            None => (s, ""),
        };
        let (mut coeff, mut exps) = self.parse_product(num);
        if !den.is_empty() {
            let (dc, de) = self.parse_product(den);
            let inv = mod_inverse(dc, self.modulus).expect("invertible denominator") as i64;
            coeff = coeff * inv % self.modulus as i64;
            for (e, d) in exps.iter_mut().zip(&de) {
                *e -= d;
            }
        }
        LaurentPoly::monomial(self.modulus, self.dim, Monomial(exps), coeff)
    }

    pub fn parse_poly(&self, s: &str) -> LaurentPoly {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return LaurentPoly::zero(self.modulus, self.dim);
        }
        let mut out = LaurentPoly::zero(self.modulus, self.dim);
        let mut term = String::new();
        let mut sign = 1i64;
        let mut depth = 0i32;
        let mut chars = s.chars().peekable();
        match chars.peek() {
            Some('-') => {
                sign = -1;
                chars.next();
            }
            Some('+') => {
                chars.next();
            }
            _ => {}
        }
        for ch in chars {
            match ch {
                '(' => {
                    depth += 1;
                    term.push(ch);
                }
                ')' => {
                    depth -= 1;
                    term.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    out = out
                        .add(&self.parse_term(&term).scale(sign))
                        .expect("same ring");
                    term.clear();
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => term.push(ch),
            }
        }
        assert!(!term.is_empty(), "dangling sign in fixture entry {s:?}");
        out.add(&self.parse_term(&term).scale(sign))
            .expect("same ring")
    }

    pub fn parse_matrix(&self, text: &str) -> PolyMatrix {
        let rows: Vec<Vec<LaurentPoly>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|line| line.split('|').map(|e| self.parse_poly(e)).collect())
            .collect();
        let r = rows.len();
        let c = rows[0].len();
        let mut m = PolyMatrix::zeros(self.modulus, self.dim, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged fixture row {i}");
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }
}
