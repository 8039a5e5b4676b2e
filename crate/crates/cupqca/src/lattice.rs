//! Finite-torus instantiation: expand polynomial matrices into explicit
//! sparse matrices over Z_d on periodic lattices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::ring::TorusShape;
use crate::symplectic::SymplecticMap;

/// Sparse matrix over Z_d obtained by block-circulant expansion of a
/// polynomial matrix on a torus.
#[derive(Clone, Debug)]
pub struct ExplicitMap {
    pub modulus: u32,
    pub shape: TorusShape,
    pub block_rows: usize,
    pub block_cols: usize,
    /// true when some torus length is below the faithfulness bound
    /// 2 * radius + 1 and entries have wrapped around.
    pub wrapped: bool,
    entries: BTreeMap<(u32, u32), u32>,
}

impl PartialEq for ExplicitMap {
    /// Content equality; the wrap diagnostic is metadata.
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.shape == other.shape
            && self.block_rows == other.block_rows
            && self.block_cols == other.block_cols
            && self.entries == other.entries
    }
}

impl Eq for ExplicitMap {}

impl ExplicitMap {
    pub fn sites(&self) -> usize {
        self.shape.sites()
    }

    pub fn rows(&self) -> usize {
        self.block_rows * self.sites()
    }

    pub fn cols(&self) -> usize {
        self.block_cols * self.sites()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    fn insert(&mut self, r: u32, c: u32, v: i64) {
        let d = self.modulus as i64;
        let entry = self.entries.entry((r, c)).or_insert(0);
        let nv = (*entry as i64 + v).rem_euclid(d) as u32;
        if nv == 0 {
            self.entries.remove(&(r, c));
        } else {
            *entry = nv;
        }
    }

    pub fn identity(modulus: u32, shape: &TorusShape, blocks: usize) -> Self {
        let mut out = ExplicitMap {
            modulus,
            shape: shape.clone(),
            block_rows: blocks,
            block_cols: blocks,
            wrapped: false,
            entries: BTreeMap::new(),
        };
        let n = shape.sites() * blocks;
        for i in 0..n as u32 {
            out.entries.insert((i, i), 1);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        let n = self.rows();
        self.block_rows == self.block_cols
            && self.nnz() == n
            && self.entries.iter().all(|(&(r, c), &v)| r == c && v == 1)
    }

    pub fn mul(&self, other: &ExplicitMap) -> Result<ExplicitMap> {
        if self.modulus != other.modulus || self.shape != other.shape || self.cols() != other.rows()
        {
            return Err(Error::ShapeMismatch("explicit multiply".into()));
        }
        let mut out = ExplicitMap {
            modulus: self.modulus,
            shape: self.shape.clone(),
            block_rows: self.block_rows,
            block_cols: other.block_cols,
            wrapped: self.wrapped || other.wrapped,
            entries: BTreeMap::new(),
        };
        for (&(r, k), &v1) in &self.entries {
            for (&(_, c), &v2) in other.entries.range((k, 0)..(k + 1, 0)) {
                out.insert(r, c, v1 as i64 * v2 as i64);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> ExplicitMap {
        let mut out = ExplicitMap {
            modulus: self.modulus,
            shape: self.shape.clone(),
            block_rows: self.block_cols,
            block_cols: self.block_rows,
            wrapped: self.wrapped,
            entries: BTreeMap::new(),
        };
        for (&(r, c), &v) in &self.entries {
            out.entries.insert((c, r), v);
        }
        out
    }

    pub fn neg(&self) -> ExplicitMap {
        let mut out = self.clone();
        let d = self.modulus;
        for v in out.entries.values_mut() {
            *v = d - *v;
        }
        out
    }

    /// Columns [c0, c0 + width) as a new map with `block_cols` scaled down.
    fn column_range(&self, c0: u32, width: u32, block_cols: usize) -> ExplicitMap {
        let mut out = ExplicitMap {
            modulus: self.modulus,
            shape: self.shape.clone(),
            block_rows: self.block_rows,
            block_cols,
            wrapped: self.wrapped,
            entries: BTreeMap::new(),
        };
        for (&(r, c), &v) in &self.entries {
            if c >= c0 && c < c0 + width {
                out.entries.insert((r, c - c0), v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

fn site_index(shape: &TorusShape, coords: &[i32]) -> usize {
    let mut idx = 0usize;
    for (i, &l) in shape.lengths.iter().enumerate() {
        let c = coords[i].rem_euclid(l as i32) as usize;
        idx = idx * l as usize + c;
    }
    idx
}

fn all_sites(shape: &TorusShape) -> Vec<Vec<i32>> {
    let mut sites = vec![vec![]];
    for &l in &shape.lengths {
        let mut next = Vec::with_capacity(sites.len() * l as usize);
        for s in &sites {
            for c in 0..l as i32 {
                let mut s2 = s.clone();
                s2.push(c);
                next.push(s2);
            }
        }
        sites = next;
    }
    sites
}

/// Block-circulant expansion of a polynomial matrix: block entry (i, j) with
/// term c x^t contributes c at (site + t, site) for every site.
pub fn instantiate(m: &PolyMatrix, shape: &TorusShape) -> Result<ExplicitMap> {
    if shape.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: shape.dim(),
        });
    }
    let radius = m.max_exponent_norm();
    let wrapped = shape.lengths.iter().any(|&l| l < 2 * radius + 1);
    let n = shape.sites();
    let mut out = ExplicitMap {
        modulus: m.modulus(),
        shape: shape.clone(),
        block_rows: m.rows(),
        block_cols: m.cols(),
        wrapped,
        entries: BTreeMap::new(),
    };
    let sites = all_sites(shape);
    for (br, bc, poly) in m.entries() {
        for (mono, coeff) in poly.terms() {
            for s in &sites {
                let shifted: Vec<i32> = s.iter().zip(&mono.0).map(|(a, b)| a + b).collect();
                let row = (br * n + site_index(shape, &shifted)) as u32;
                let col = (bc * n + site_index(shape, s)) as u32;
                out.insert(row, col, coeff as i64);
            }
        }
    }
    Ok(out)
}

pub fn instantiate_map(theta: &SymplecticMap, shape: &TorusShape) -> Result<ExplicitMap> {
    instantiate(theta.matrix(), shape)
}

/// The N-fold block symplectic form on a finite torus.
pub fn lambda_explicit(modulus: u32, shape: &TorusShape, q: usize) -> ExplicitMap {
    let n = shape.sites() * q;
    let mut out = ExplicitMap {
        modulus,
        shape: shape.clone(),
        block_rows: 2 * q,
        block_cols: 2 * q,
        wrapped: false,
        entries: BTreeMap::new(),
    };
    for i in 0..n as u32 {
        out.entries.insert((i, i + n as u32), 1);
        out.entries.insert((i + n as u32, i), modulus - 1);
    }
    out
}

/// theta^T Lambda theta == Lambda over Z_d on the torus.
pub fn is_symplectic_explicit(map: &ExplicitMap, q: usize) -> Result<bool> {
    let lam = lambda_explicit(map.modulus, &map.shape, q);
    let got = map.transpose().mul(&lam)?.mul(map)?;
    Ok(got == lam)
}

/// Largest L-infinity exponent norm over the entries of theta, measured from
/// the base point carrying the identity contribution.
pub fn locality_radius(theta: &SymplecticMap) -> u32 {
    theta.matrix().max_exponent_norm()
}

/// True iff every pair of instantiated images of Z basis columns has
/// vanishing finite symplectic pairing.
pub fn stabilizer_commutation(theta: &SymplecticMap, shape: &TorusShape) -> Result<bool> {
    let q = theta.q();
    let full = instantiate_map(theta, shape)?;
    let n = shape.sites();
    let zcols = full.column_range((q * n) as u32, (q * n) as u32, q);
    let lam = lambda_explicit(theta.modulus(), shape, q);
    let pairing = zcols.transpose().mul(&lam)?.mul(&zcols)?;
    Ok(pairing.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qca::build_3f_3d;
    use crate::ring::{LaurentPoly, Monomial};

    #[test]
    fn two_point_circulant() {
        // 1 + x over Z_2 on L = (2) expands to [[1,1],[1,1]]
        let mut m = PolyMatrix::zeros(2, 1, 1, 1);
        m.set(
            0,
            0,
            LaurentPoly::one(2, 1)
                .add(&LaurentPoly::var(2, 1, 0))
                .unwrap(),
        );
        let shape = TorusShape::new(vec![2]).unwrap();
        let e = instantiate(&m, &shape).unwrap();
        let got: Vec<_> = e.triplets().collect();
        assert_eq!(got, vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
        assert!(e.wrapped);
    }

    #[test]
    fn identity_instantiates_to_identity() {
        let m = PolyMatrix::identity(3, 2, 4);
        let shape = TorusShape::new(vec![3, 3]).unwrap();
        let e = instantiate(&m, &shape).unwrap();
        assert!(e.is_identity());
        assert!(!e.wrapped);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let m = PolyMatrix::identity(3, 2, 2);
        let shape = TorusShape::new(vec![3]).unwrap();
        assert!(instantiate(&m, &shape).is_err());
    }

    #[test]
    fn instantiate_commutes_with_compose() {
        let a = build_3f_3d();
        // above the faithfulness bound (radius 2 -> lengths >= 5)
        let shape = TorusShape::new(vec![5, 5, 5]).unwrap();
        let ea = instantiate_map(&a, &shape).unwrap();
        assert!(!ea.wrapped);
        let sq = a.compose(&a).unwrap();
        let esq = instantiate_map(&sq, &shape).unwrap();
        assert_eq!(ea.mul(&ea).unwrap(), esq);
        assert!(esq.is_identity());
        // the identity persists under the quotient even below the bound
        let small = TorusShape::new(vec![3, 3, 3]).unwrap();
        let es = instantiate_map(&a, &small).unwrap();
        assert!(es.wrapped);
        assert!(es.mul(&es).unwrap().is_identity());
    }

    #[test]
    fn locality_radius_examples() {
        let id = SymplecticMap::identity(2, 3, 3);
        assert_eq!(locality_radius(&id), 0);
        let a = build_3f_3d();
        let r = locality_radius(&a);
        assert!(r >= 1);
        // compositions stay within the sum of constituent radii
        let sq = a.compose(&a).unwrap();
        assert!(locality_radius(&sq) <= 2 * r);
        // a monomial shift has radius 1
        let mut m = PolyMatrix::zeros(2, 2, 2, 2);
        m.set(0, 0, LaurentPoly::monomial(2, 2, Monomial(vec![-1, -1]), 1));
        m.set(1, 1, LaurentPoly::monomial(2, 2, Monomial(vec![1, 1]), 1));
        let shift = SymplecticMap::new(m).unwrap();
        assert_eq!(locality_radius(&shift), 1);
    }

    #[test]
    fn bare_z_operators_commute() {
        let id = SymplecticMap::identity(2, 3, 3);
        let shape = TorusShape::new(vec![3, 3, 3]).unwrap();
        assert!(stabilizer_commutation(&id, &shape).unwrap());
    }
}
