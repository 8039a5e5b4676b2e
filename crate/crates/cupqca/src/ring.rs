//! Sparse Laurent polynomials over Z_d in D commuting variables.
//!
//! Coefficients are kept as canonical residues in `0..d`; a stored coefficient
//! is never zero. Terms live in a `BTreeMap` keyed by exponent vector, so the
//! term order (lexicographic on exponents) is canonical and serialization is
//! byte-stable.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Exponent vector of a single monomial, one signed exponent per direction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    /// The generator x_i.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// x^e -> x^(-e).
    pub fn antipode(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn linf_norm(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).max().unwrap_or(0)
    }
}

/// Periodic lattice extents, one per direction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusShape {
    pub lengths: Vec<u32>,
}

impl TorusShape {
    pub fn new(lengths: Vec<u32>) -> Result<Self> {
        if lengths.is_empty() || lengths.contains(&0) {
            return Err(Error::InvalidParameter(
                "torus lengths must all be >= 1".into(),
            ));
        }
        Ok(TorusShape { lengths })
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn sites(&self) -> usize {
        self.lengths.iter().map(|&l| l as usize).product()
    }
}

/// Sparse Laurent polynomial over Z_d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    modulus: u32,
    dim: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl LaurentPoly {
    pub fn zero(modulus: u32, dim: usize) -> Self {
        assert!(modulus >= 2, "ring modulus must be at least 2");
        LaurentPoly {
            modulus,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(modulus: u32, dim: usize, c: i64) -> Self {
        Self::monomial(modulus, dim, Monomial::one(dim), c)
    }

    pub fn one(modulus: u32, dim: usize) -> Self {
        Self::constant(modulus, dim, 1)
    }

    pub fn monomial(modulus: u32, dim: usize, m: Monomial, c: i64) -> Self {
        assert_eq!(m.dim(), dim, "monomial dimension mismatch");
        let mut p = Self::zero(modulus, dim);
        let c = c.rem_euclid(modulus as i64) as u32;
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(modulus: u32, dim: usize, i: usize) -> Self {
        Self::monomial(modulus, dim, Monomial::var(dim, i), 1)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The single (monomial, coefficient) pair, if this polynomial has exactly
    /// one term.
    pub fn as_single_term(&self) -> Option<(&Monomial, u32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, &c)| (m, c))
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn compatible(&self, other: &LaurentPoly) -> Result<()> {
        if self.modulus != other.modulus || self.dim != other.dim {
            return Err(Error::IncompatibleRing(format!(
                "Z_{}[{} vars] vs Z_{}[{} vars]",
                self.modulus, self.dim, other.modulus, other.dim
            )));
        }
        Ok(())
    }

    fn insert_term(&mut self, m: Monomial, c: i64) {
        let d = self.modulus as i64;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = (*o.get() as i64 + c).rem_euclid(d) as u32;
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = c.rem_euclid(d) as u32;
                if c != 0 {
                    v.insert(c);
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert_term(m.clone(), c as i64);
        }
        Ok(out)
    }

    /// self += a * b, without intermediate allocation. Callers guarantee ring
    /// compatibility.
    pub(crate) fn accumulate_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (m1, c1) in a.terms() {
            for (m2, c2) in b.terms() {
                self.insert_term(m1.mul(m2), c1 as i64 * c2 as i64);
            }
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert_term(m.clone(), -(c as i64));
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        let d = self.modulus;
        let mut out = LaurentPoly::zero(d, self.dim);
        for (m, c) in self.terms() {
            out.terms.insert(m.clone(), d - c);
        }
        out
    }

    /// Term-by-term convolution, coefficients reduced mod d.
    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.compatible(other)?;
        let mut out = LaurentPoly::zero(self.modulus, self.dim);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.insert_term(m1.mul(m2), c1 as i64 * c2 as i64);
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by the residue of `s`.
    pub fn scale(&self, s: i64) -> LaurentPoly {
        let d = self.modulus as i64;
        let s = s.rem_euclid(d);
        let mut out = LaurentPoly::zero(self.modulus, self.dim);
        for (m, c) in self.terms() {
            let v = (c as i64 * s).rem_euclid(d) as u32;
            if v != 0 {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    /// The ring involution x^e -> x^(-e), coefficients unchanged.
    pub fn antipode(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.modulus, self.dim);
        for (m, c) in self.terms() {
            out.terms.insert(m.antipode(), c);
        }
        out
    }

    /// Quotient by x_i^{L_i} = 1: every exponent reduced into 0..L_i, merged
    /// coefficients summed mod d.
    pub fn reduce_torus(&self, shape: &TorusShape) -> Result<LaurentPoly> {
        if shape.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: shape.dim(),
            });
        }
        let mut out = LaurentPoly::zero(self.modulus, self.dim);
        for (m, c) in self.terms() {
            let e =
                m.0.iter()
                    .zip(&shape.lengths)
                    .map(|(&e, &l)| e.rem_euclid(l as i32))
                    .collect();
            out.insert_term(Monomial(e), c as i64);
        }
        Ok(out)
    }

    /// Largest L-infinity norm over the exponent vectors of the terms.
    pub fn max_exponent_norm(&self) -> u32 {
        self.terms.keys().map(|m| m.linf_norm()).max().unwrap_or(0)
    }
}

/// Deterministic primality check by trial division; desk-scale inputs only.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2u32;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// The unique r in 1..p with c*r = 1 (mod p); p must be prime.
pub fn mod_inverse(c: i64, p: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    let c = c.rem_euclid(p as i64) as u32;
    if c == 0 {
        return Err(Error::NotInvertible(0, p));
    }
    // Fermat: c^(p-2) mod p.
    let mut acc = 1u64;
    let mut base = c as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    Ok(acc as u32)
}
