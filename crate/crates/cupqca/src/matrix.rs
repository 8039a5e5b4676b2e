//! Rectangular matrices of Laurent polynomials.

use crate::error::{Error, Result};
use crate::mod_inverse;
use crate::ring::{LaurentPoly, Monomial, TorusShape};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    modulus: u32,
    dim: usize,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(modulus: u32, dim: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            modulus,
            dim,
            rows,
            cols,
            entries: vec![LaurentPoly::zero(modulus, dim); rows * cols],
        }
    }

    pub fn identity(modulus: u32, dim: usize, n: usize) -> Self {
        let mut m = Self::zeros(modulus, dim, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(modulus, dim));
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: LaurentPoly) {
        assert_eq!(p.modulus(), self.modulus);
        assert_eq!(p.dim(), self.dim);
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, p)| (i / self.cols, i % self.cols, p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    fn compatible(&self, other: &PolyMatrix) -> Result<()> {
        if self.modulus != other.modulus || self.dim != other.dim {
            return Err(Error::IncompatibleRing(format!(
                "Z_{}[{} vars] vs Z_{}[{} vars]",
                self.modulus, self.dim, other.modulus, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.compatible(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (i, p) in out.entries.iter_mut().enumerate() {
            *p = p.add(&other.entries[i])?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        let mut out = self.clone();
        for p in out.entries.iter_mut() {
            *p = p.neg();
        }
        out
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.compatible(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.modulus, self.dim, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * out.cols + j].accumulate_product(a, b);
                }
            }
        }
        Ok(out)
    }

    /// Multiply every entry by the residue of `s`.
    pub fn scale(&self, s: i64) -> PolyMatrix {
        let mut out = self.clone();
        for p in out.entries.iter_mut() {
            *p = p.scale(s);
        }
        out
    }

    /// Multiply every entry by a fixed polynomial.
    pub fn scale_poly(&self, s: &LaurentPoly) -> Result<PolyMatrix> {
        let mut out = self.clone();
        for p in out.entries.iter_mut() {
            *p = p.mul(s)?;
        }
        Ok(out)
    }

    /// Transpose followed by the antipode, applied entry-wise.
    pub fn dagger(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.modulus, self.dim, self.cols, self.rows);
        for (r, c, p) in self.entries() {
            out.set(c, r, p.antipode());
        }
        out
    }

    pub fn reduce_torus(&self, shape: &TorusShape) -> Result<PolyMatrix> {
        let mut out = self.clone();
        for p in out.entries.iter_mut() {
            *p = p.reduce_torus(shape)?;
        }
        Ok(out)
    }

    /// Inverse of a matrix with exactly one +/- monomial entry in every row
    /// and column (the cup-0 pairing matrices have this shape).
    pub fn monomial_inverse(&self) -> Result<PolyMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotMonomial(format!(
                "{}x{} is not square",
                self.rows, self.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.modulus, self.dim, self.rows, self.cols);
        let mut seen_col = vec![false; self.cols];
        for r in 0..self.rows {
            let mut hit = None;
            for c in 0..self.cols {
                let p = self.get(r, c);
                if p.is_zero() {
                    continue;
                }
                let (m, coeff) = p.as_single_term().ok_or_else(|| {
                    Error::NotMonomial(format!("entry ({r},{c}) has several terms"))
                })?;
                if hit.is_some() {
                    return Err(Error::NotMonomial(format!("row {r} has several entries")));
                }
                hit = Some((c, m.clone(), coeff));
            }
            let (c, m, coeff) =
                hit.ok_or_else(|| Error::NotMonomial(format!("row {r} is zero")))?;
            if seen_col[c] {
                return Err(Error::NotMonomial(format!("column {c} hit twice")));
            }
            seen_col[c] = true;
            let cinv = mod_inverse(coeff as i64, self.modulus).map_err(|_| {
                Error::NotMonomial(format!(
                    "coefficient {coeff} not invertible mod {}",
                    self.modulus
                ))
            })?;
            out.set(
                c,
                r,
                LaurentPoly::monomial(self.modulus, self.dim, m.antipode(), cinv as i64),
            );
        }
        Ok(out)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.modulus, self.dim, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    /// Assemble from a rectangular grid of blocks. Every block row must have
    /// the same height and every block column the same width.
    pub fn from_blocks(blocks: &[Vec<&PolyMatrix>]) -> Result<PolyMatrix> {
        let first = blocks
            .first()
            .and_then(|row| row.first())
            .ok_or_else(|| Error::ShapeMismatch("empty block grid".into()))?;
        let (modulus, dim) = (first.modulus, first.dim);
        let total_rows: usize = blocks.iter().map(|row| row[0].rows).sum();
        let total_cols: usize = blocks[0].iter().map(|b| b.cols).sum();
        let mut out = PolyMatrix::zeros(modulus, dim, total_rows, total_cols);
        let mut r0 = 0;
        for row in blocks {
            let h = row[0].rows;
            let mut c0 = 0;
            for b in row {
                if b.rows != h {
                    return Err(Error::ShapeMismatch("ragged block row".into()));
                }
                first.compatible(b)?;
                for (r, c, p) in b.entries() {
                    out.set(r0 + r, c0 + c, p.clone());
                }
                c0 += b.cols;
            }
            if c0 != total_cols {
                return Err(Error::ShapeMismatch("ragged block column".into()));
            }
            r0 += h;
        }
        Ok(out)
    }

    /// Largest L-infinity exponent norm over all entries and terms.
    pub fn max_exponent_norm(&self) -> u32 {
        self.entries
            .iter()
            .map(|p| p.max_exponent_norm())
            .max()
            .unwrap_or(0)
    }

    /// Per-row description of a monomial-diagonal matrix: the diagonal entry's
    /// (monomial, coefficient) for each row, if the matrix is diagonal with
    /// single-term unit-coefficient entries.
    pub fn diagonal_monomials(&self) -> Option<Vec<(Monomial, u32)>> {
        if self.rows != self.cols {
            return None;
        }
        let mut out = Vec::with_capacity(self.rows);
        for (r, c, p) in self.entries() {
            if r == c {
                let (m, coeff) = p.as_single_term()?;
                if mod_inverse(coeff as i64, self.modulus).is_err() {
                    return None;
                }
                out.push((m.clone(), coeff));
            } else if !p.is_zero() {
                return None;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dagger_is_involution_and_antihomomorphism() {
        let d = 5;
        let mut a = PolyMatrix::zeros(d, 2, 2, 2);
        a.set(0, 0, LaurentPoly::monomial(d, 2, Monomial(vec![1, -1]), 2));
        a.set(0, 1, LaurentPoly::one(d, 2));
        a.set(1, 0, LaurentPoly::monomial(d, 2, Monomial(vec![0, 2]), 3));
        let mut b = PolyMatrix::identity(d, 2, 2);
        b.set(1, 0, LaurentPoly::var(d, 2, 0));
        assert_eq!(a.dagger().dagger(), a);
        let lhs = a.mul(&b).unwrap().dagger();
        let rhs = b.dagger().mul(&a.dagger()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dagger_of_identity() {
        let i = PolyMatrix::identity(3, 3, 4);
        assert_eq!(i.dagger(), i);
    }

    #[test]
    fn monomial_inverse_roundtrip() {
        let d = 5;
        let mut m = PolyMatrix::zeros(d, 2, 2, 2);
        m.set(0, 1, LaurentPoly::monomial(d, 2, Monomial(vec![0, -1]), 1));
        m.set(1, 0, LaurentPoly::monomial(d, 2, Monomial(vec![-1, 0]), 4));
        let inv = m.monomial_inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), PolyMatrix::identity(d, 2, 2));
        assert_eq!(inv.mul(&m).unwrap(), PolyMatrix::identity(d, 2, 2));
    }

    #[test]
    fn monomial_inverse_rejects_polynomial_entries() {
        let d = 2;
        let mut m = PolyMatrix::identity(d, 1, 1);
        m.set(
            0,
            0,
            LaurentPoly::one(d, 1)
                .add(&LaurentPoly::var(d, 1, 0))
                .unwrap(),
        );
        assert!(m.monomial_inverse().is_err());
    }
}
