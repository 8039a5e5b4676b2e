//! Pauli columns and symplectic maps over the Laurent polynomial ring.
//!
//! Basis contract used everywhere: X-blocks before Z-blocks; species A before
//! species B; within a species, cells follow the orientation order of
//! [`crate::cochain::orientations`].

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::ring::LaurentPoly;

/// A single Pauli operator family: 2q ring entries, X-exponent blocks first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliColumn {
    q: usize,
    col: PolyMatrix,
}

impl PauliColumn {
    pub fn new(col: PolyMatrix) -> Result<Self> {
        if col.cols() != 1 || !col.rows().is_multiple_of(2) || col.rows() == 0 {
            return Err(Error::ShapeMismatch(format!(
                "Pauli column must be (2q)x1, got {}x{}",
                col.rows(),
                col.cols()
            )));
        }
        Ok(PauliColumn {
            q: col.rows() / 2,
            col,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.col
    }

    pub fn entry(&self, i: usize) -> &LaurentPoly {
        self.col.get(i, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.col.is_zero()
    }
}

/// The standard block form with +I in the upper right, -I in the lower left.
pub fn lambda(modulus: u32, dim: usize, q: usize) -> PolyMatrix {
    let i = PolyMatrix::identity(modulus, dim, q);
    let z = PolyMatrix::zeros(modulus, dim, q, q);
    PolyMatrix::from_blocks(&[vec![&z, &i], vec![&i.neg(), &z]]).expect("block shapes agree")
}

/// v^dagger Lambda w; zero iff the two operator families commute at all
/// relative translations.
pub fn symplectic_pair(v: &PauliColumn, w: &PauliColumn) -> Result<LaurentPoly> {
    let m = pair_matrix(v.matrix(), w.matrix())?;
    Ok(m.get(0, 0).clone())
}

/// dagger(A) * Lambda * B for column-stacked operator families.
pub fn pair_matrix(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    if a.rows() != b.rows() || !a.rows().is_multiple_of(2) {
        return Err(Error::ShapeMismatch(format!(
            "pairing {}x{} with {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let q = a.rows() / 2;
    let lam = lambda(a.modulus(), a.dim(), q);
    a.dagger().mul(&lam)?.mul(b)
}

/// A 2q x 2q matrix of ring elements; column j is the image of the j-th basis
/// Pauli. Symplecticity is a checkable property, not a construction invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticMap {
    q: usize,
    mat: PolyMatrix,
}

impl SymplecticMap {
    pub fn new(mat: PolyMatrix) -> Result<Self> {
        if mat.rows() != mat.cols() || !mat.rows().is_multiple_of(2) || mat.rows() == 0 {
            return Err(Error::ShapeMismatch(format!(
                "symplectic map must be (2q)x(2q), got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(SymplecticMap {
            q: mat.rows() / 2,
            mat,
        })
    }

    pub fn identity(modulus: u32, dim: usize, q: usize) -> Self {
        SymplecticMap {
            q,
            mat: PolyMatrix::identity(modulus, dim, 2 * q),
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> u32 {
        self.mat.modulus()
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.mat
    }

    /// Blocks (XX, XZ, ZX, ZZ) of the X/Z splitting.
    pub fn blocks(&self) -> (PolyMatrix, PolyMatrix, PolyMatrix, PolyMatrix) {
        let q = self.q;
        (
            self.mat.submatrix(0, 0, q, q),
            self.mat.submatrix(0, q, q, q),
            self.mat.submatrix(q, 0, q, q),
            self.mat.submatrix(q, q, q, q),
        )
    }

    pub fn from_blocks(
        xx: &PolyMatrix,
        xz: &PolyMatrix,
        zx: &PolyMatrix,
        zz: &PolyMatrix,
    ) -> Result<Self> {
        let mat = PolyMatrix::from_blocks(&[vec![xx, xz], vec![zx, zz]])?;
        Self::new(mat)
    }

    /// Image of the j-th basis Pauli.
    pub fn column(&self, j: usize) -> PauliColumn {
        PauliColumn::new(self.mat.submatrix(0, j, 2 * self.q, 1)).expect("column shape")
    }

    /// theta^dagger Lambda theta == Lambda, exactly.
    pub fn is_symplectic(&self) -> bool {
        let lam = lambda(self.modulus(), self.dim(), self.q);
        match self.mat.dagger().mul(&lam).and_then(|m| m.mul(&self.mat)) {
            Ok(m) => m == lam,
            Err(_) => false,
        }
    }

    /// Matrix product self * other (apply `other` first).
    pub fn compose(&self, other: &SymplecticMap) -> Result<SymplecticMap> {
        if self.q != other.q {
            return Err(Error::ShapeMismatch(format!(
                "compose q={} with q={}",
                self.q, other.q
            )));
        }
        Ok(SymplecticMap {
            q: self.q,
            mat: self.mat.mul(&other.mat)?,
        })
    }

    /// -Lambda dagger(theta) Lambda; requires theta symplectic.
    pub fn inverse(&self) -> Result<SymplecticMap> {
        if !self.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        let lam = lambda(self.modulus(), self.dim(), self.q);
        let inv = lam.mul(&self.mat.dagger())?.mul(&lam)?.neg();
        Ok(SymplecticMap {
            q: self.q,
            mat: inv,
        })
    }

    /// self applied to a stack of Pauli columns.
    pub fn apply(&self, cols: &PolyMatrix) -> Result<PolyMatrix> {
        self.mat.mul(cols)
    }

    /// Block-diagonal direct sum in the global basis order (X-blocks of both
    /// summands, then Z-blocks of both summands).
    pub fn direct_sum(&self, other: &SymplecticMap) -> Result<SymplecticMap> {
        let (xx1, xz1, zx1, zz1) = self.blocks();
        let (xx2, xz2, zx2, zz2) = other.blocks();
        let z12 = PolyMatrix::zeros(self.modulus(), self.dim(), self.q, other.q);
        let z21 = PolyMatrix::zeros(self.modulus(), self.dim(), other.q, self.q);
        let mat = PolyMatrix::from_blocks(&[
            vec![&xx1, &z12, &xz1, &z12],
            vec![&z21, &xx2, &z21, &xz2],
            vec![&zx1, &z12, &zz1, &z12],
            vec![&z21, &zx2, &z21, &zz2],
        ])?;
        Self::new(mat)
    }

    /// c * self * c^{-1}.
    pub fn conjugate_by(&self, c: &SymplecticMap) -> Result<SymplecticMap> {
        c.compose(self)?.compose(&c.inverse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Monomial;

    fn xf(modulus: u32, dim: usize, q: usize, i: usize) -> PauliColumn {
        let mut col = PolyMatrix::zeros(modulus, dim, 2 * q, 1);
        col.set(i, 0, LaurentPoly::one(modulus, dim));
        PauliColumn::new(col).unwrap()
    }

    #[test]
    fn pair_of_x_and_z_on_same_cell() {
        // <X_f, Z_f> = 1, <X_f, X_f> = 0
        let x = xf(2, 3, 3, 0);
        let z = xf(2, 3, 3, 3);
        assert_eq!(symplectic_pair(&x, &z).unwrap(), LaurentPoly::one(2, 3));
        assert!(symplectic_pair(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn pair_antisymmetry_up_to_antipode() {
        let d = 5;
        let mut v = PolyMatrix::zeros(d, 2, 4, 1);
        v.set(0, 0, LaurentPoly::monomial(d, 2, Monomial(vec![1, -2]), 2));
        v.set(3, 0, LaurentPoly::monomial(d, 2, Monomial(vec![0, 1]), 3));
        let mut w = PolyMatrix::zeros(d, 2, 4, 1);
        w.set(1, 0, LaurentPoly::monomial(d, 2, Monomial(vec![-1, 0]), 1));
        w.set(2, 0, LaurentPoly::monomial(d, 2, Monomial(vec![2, 2]), 4));
        let v = PauliColumn::new(v).unwrap();
        let w = PauliColumn::new(w).unwrap();
        let vw = symplectic_pair(&v, &w).unwrap();
        let wv = symplectic_pair(&w, &v).unwrap();
        assert_eq!(vw, wv.antipode().neg());
    }

    #[test]
    fn identity_is_symplectic_zero_is_not() {
        let id = SymplecticMap::identity(2, 3, 3);
        assert!(id.is_symplectic());
        let zero = SymplecticMap::new(PolyMatrix::zeros(2, 3, 6, 6)).unwrap();
        assert!(!zero.is_symplectic());
    }

    #[test]
    fn compose_with_identity_and_inverse() {
        let d = 5;
        // a CNOT-style elementary map: X block unitriangular E, Z block E^{-dagger}
        let mut e = PolyMatrix::identity(d, 1, 2);
        e.set(1, 0, LaurentPoly::var(d, 1, 0));
        let einvdag = {
            let mut m = PolyMatrix::identity(d, 1, 2);
            m.set(0, 1, LaurentPoly::var(d, 1, 0).antipode().neg());
            m
        };
        let z = PolyMatrix::zeros(d, 1, 2, 2);
        let theta = SymplecticMap::new(
            PolyMatrix::from_blocks(&[vec![&e, &z], vec![&z, &einvdag]]).unwrap(),
        )
        .unwrap();
        assert!(theta.is_symplectic());
        let id = SymplecticMap::identity(d, 1, 2);
        assert_eq!(theta.compose(&id).unwrap(), theta);
        let inv = theta.inverse().unwrap();
        assert_eq!(theta.compose(&inv).unwrap(), id);
        assert_eq!(inv.compose(&theta).unwrap(), id);
        assert!(inv.is_symplectic());
    }

    #[test]
    fn inverse_requires_symplectic() {
        let zero = SymplecticMap::new(PolyMatrix::zeros(2, 1, 2, 2)).unwrap();
        assert!(matches!(zero.inverse(), Err(Error::NotSymplectic)));
    }

    #[test]
    fn monomial_shift_inverse_is_antipode() {
        // two species shifted by m and m-bar respectively
        let d = 3;
        let m = LaurentPoly::monomial(d, 2, Monomial(vec![1, 1]), 1);
        let mut mat = PolyMatrix::zeros(d, 2, 4, 4);
        for i in [0usize, 2] {
            mat.set(i, i, m.clone());
            mat.set(i + 1, i + 1, m.antipode());
        }
        let theta = SymplecticMap::new(mat).unwrap();
        assert!(theta.is_symplectic());
        let inv = theta.inverse().unwrap();
        assert_eq!(inv.matrix().get(0, 0), &m.antipode());
        assert_eq!(inv.matrix().get(1, 1), &m);
        assert_eq!(inv.matrix().get(2, 2), &m.antipode());
    }

    #[test]
    fn block_roundtrip() {
        let d = 5;
        let mut mat = PolyMatrix::zeros(d, 2, 4, 4);
        for r in 0..4 {
            for c in 0..4 {
                mat.set(
                    r,
                    c,
                    LaurentPoly::monomial(
                        d,
                        2,
                        Monomial(vec![r as i32 - 1, c as i32]),
                        1 + r as i64,
                    ),
                );
            }
        }
        let theta = SymplecticMap::new(mat.clone()).unwrap();
        let (xx, xz, zx, zz) = theta.blocks();
        let re = SymplecticMap::from_blocks(&xx, &xz, &zx, &zz).unwrap();
        assert_eq!(re.matrix(), &mat);
    }
}
