//! Constructors for the Clifford QCA families, assembled from coboundary and
//! cup matrices by the separator/flipper pattern.
//!
//! Two-species Z_2 family ("3F"): qubits of species A and B on l-cells in
//! D = 2l - 1 spatial dimensions. With
//!   delta = coboundary on (l-1)-cells,  E  = M_{s_(l-1) u s_l},
//!   E' = M_{s_l u s_(l-1)},             F  = M_{s_l u1 s_l},
//!   B = delta * E,  C = delta * dagger(E'),  Ft = dagger(F),
//! the automorphism sends (basis order X^A, X^B, Z^A, Z^B)
//!   X^A -> (I; CF; 0; Ft C F),   X^B -> (BF; I; Ft B F; 0),
//!   Z^A -> (0; C; I; Ft C),      Z^B -> (B; 0; Ft B; I).
//!
//! Single-species Z_p family: qudits on 2l-cells in D = 4l - 1 dimensions,
//!   alpha^(k) = [ I - BF/2        B/(2k) ]
//!               [ -(k/2) Ft B F   I + Ft B / 2 ].

use crate::cochain::{coboundary_matrix, cup_matrix, orientation_count, CupSpec};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::ring::{is_prime, mod_inverse};
use crate::symplectic::SymplecticMap;

/// Which construction a [`QcaSpec`] refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QcaFamily {
    /// Two-species Z_2 QCA in D = 2l - 1 (the 3-fermion QCA for l = 2).
    ThreeFermion,
    /// Single-species Z_p QCA alpha in D = 4l - 1.
    ZpAlpha,
    /// The companion Z_p QCA beta on the three-dimensional cubic lattice.
    ZpBeta,
}

/// Parameters selecting one QCA.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QcaSpec {
    pub family: QcaFamily,
    /// Family-internal degree index; determines the spatial dimension.
    pub level: usize,
    /// Qudit modulus (2 for the Z_2 family, an odd prime otherwise).
    pub modulus: u32,
    /// Anyon level k for the Z_p families.
    pub k: i64,
}

impl QcaSpec {
    pub fn dimension(&self) -> usize {
        match self.family {
            QcaFamily::ThreeFermion => 2 * self.level - 1,
            QcaFamily::ZpAlpha => 4 * self.level - 1,
            QcaFamily::ZpBeta => 3,
        }
    }

    pub fn build(&self) -> Result<SymplecticMap> {
        match self.family {
            QcaFamily::ThreeFermion => build_z2_general(self.level),
            QcaFamily::ZpAlpha => build_zp_general(self.level, self.modulus, self.k),
            QcaFamily::ZpBeta => build_zp_beta(self.modulus, self.k),
        }
    }
}

fn check_odd_prime(p: u32, k: i64) -> Result<u32> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    let kr = k.rem_euclid(p as i64) as u32;
    if kr == 0 {
        return Err(Error::NotInvertible(0, p));
    }
    Ok(kr)
}

struct Z2Parts {
    b: PolyMatrix,
    c: PolyMatrix,
    f: PolyMatrix,
}

fn z2_parts(l: usize) -> Result<Z2Parts> {
    if l < 2 {
        return Err(Error::InvalidParameter(
            "the two-species Z_2 family needs l >= 2".into(),
        ));
    }
    let dim = 2 * l - 1;
    let delta = coboundary_matrix(2, dim, l - 1)?;
    let e = cup_matrix(CupSpec::new(dim, l, 0)?, 2);
    let e_back = cup_matrix(CupSpec::new(dim, l - 1, 0)?, 2);
    let f = cup_matrix(CupSpec::new(dim, l, 1)?, 2);
    Ok(Z2Parts {
        b: delta.mul(&e)?,
        c: delta.mul(&e_back.dagger())?,
        f,
    })
}

/// The Z_2 QCA with qubits of two species on l-cells of the hypercubic
/// lattice in 2l - 1 spatial dimensions; l = 2 is the 3-fermion QCA.
pub fn build_z2_general(l: usize) -> Result<SymplecticMap> {
    let Z2Parts { b, c, f } = z2_parts(l)?;
    let dim = 2 * l - 1;
    let n = orientation_count(dim, l);
    let ft = f.dagger();
    let i = PolyMatrix::identity(2, dim, n);
    let z = PolyMatrix::zeros(2, dim, n, n);
    let bf = b.mul(&f)?;
    let cf = c.mul(&f)?;
    let ft_bf = ft.mul(&bf)?;
    let ft_cf = ft.mul(&cf)?;
    let ft_b = ft.mul(&b)?;
    let ft_c = ft.mul(&c)?;
    let mat = PolyMatrix::from_blocks(&[
        vec![&i, &bf, &z, &b],
        vec![&cf, &i, &c, &z],
        vec![&z, &ft_bf, &i, &ft_b],
        vec![&ft_cf, &z, &ft_c, &i],
    ])?;
    SymplecticMap::new(mat)
}

/// The 3-fermion QCA in three spatial dimensions (12 x 12 over the three-variable ring over Z_2).
pub fn build_3f_3d() -> SymplecticMap {
    build_z2_general(2).expect("l = 2 is valid")
}

/// The 3-fermion QCA in five spatial dimensions (40 x 40, two species on
/// 3-cells).
pub fn build_3f_5d() -> SymplecticMap {
    build_z2_general(3).expect("l = 3 is valid")
}

/// The Z_p^(k) QCA with qudits on 2l-cells in 4l - 1 spatial dimensions.
pub fn build_zp_general(l: usize, p: u32, k: i64) -> Result<SymplecticMap> {
    let kr = check_odd_prime(p, k)?;
    if l < 1 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    let dim = 4 * l - 1;
    let s = 2 * l;
    let delta = coboundary_matrix(p, dim, s - 1)?;
    let e = cup_matrix(CupSpec::new(dim, s, 0)?, p);
    let f = cup_matrix(CupSpec::new(dim, s, 1)?, p);
    let b = delta.mul(&e)?;
    let ft = f.dagger();
    let n = orientation_count(dim, s);
    let i = PolyMatrix::identity(p, dim, n);

    let half = mod_inverse(2, p)? as i64;
    let inv2k = mod_inverse(2 * kr as i64, p)? as i64;

    let bf = b.mul(&f)?;
    let xx = i.add(&bf.scale(-half))?;
    let xz = b.scale(inv2k);
    let zx = ft.mul(&bf)?.scale(-(kr as i64) * half);
    let zz = i.add(&ft.mul(&b)?.scale(half))?;
    SymplecticMap::from_blocks(&xx, &xz, &zx, &zz)
}

/// The three-dimensional Z_p^(k) QCA alpha (6 x 6 over the three-variable ring over Z_p).
pub fn build_zp_alpha(p: u32, k: i64) -> Result<SymplecticMap> {
    build_zp_general(1, p, k)
}

/// The companion QCA beta on the cubic lattice. Its separators use the
/// opposite edge/face pairing; beta^(-k) inverts alpha^(k) on the Z
/// separators.
pub fn build_zp_beta(p: u32, k: i64) -> Result<SymplecticMap> {
    let kr = check_odd_prime(p, k)?;
    let dim = 3;
    let delta = coboundary_matrix(p, dim, 1)?;
    let e_back = cup_matrix(CupSpec::new(dim, 1, 0)?, p); // M_{f u e}
    let f = cup_matrix(CupSpec::new(dim, 2, 1)?, p);
    let c = delta.mul(&e_back.dagger())?;
    let ft = f.dagger();
    let i = PolyMatrix::identity(p, dim, 3);

    let half = mod_inverse(2, p)? as i64;
    let inv2k = mod_inverse(2 * kr as i64, p)? as i64;

    let cf = c.mul(&f)?;
    let xx = i.add(&cf.scale(half))?;
    let xz = c.scale(inv2k);
    let zx = ft.mul(&cf)?.scale(-(kr as i64) * half);
    let zz = i.add(&ft.mul(&c)?.scale(-half))?;
    SymplecticMap::from_blocks(&xx, &xz, &zx, &zz)
}

/// The hopping columns U^(k) = (I; k M_{s u1 s}) of the Z_p family (all
/// qudit species, one column per 2l-cell orientation); fixed by alpha^(k).
pub fn zp_hopping(l: usize, p: u32, k: i64) -> Result<PolyMatrix> {
    let kr = check_odd_prime(p, k)?;
    let dim = 4 * l - 1;
    let s = 2 * l;
    let f = cup_matrix(CupSpec::new(dim, s, 1)?, p);
    let n = orientation_count(dim, s);
    let i = PolyMatrix::identity(p, dim, n);
    PolyMatrix::from_blocks(&[vec![&i], vec![&f.scale(kr as i64)]])
}

/// Species of the two-species Z_2 family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Species {
    A,
    B,
}

/// The hopping columns U^alpha of the Z_2 family, embedded in the four-block
/// basis (X^A, X^B, Z^A, Z^B).
pub fn z2_hopping(l: usize, species: Species) -> Result<PolyMatrix> {
    if l < 2 {
        return Err(Error::InvalidParameter("l >= 2".into()));
    }
    let dim = 2 * l - 1;
    let f = cup_matrix(CupSpec::new(dim, l, 1)?, 2);
    let n = orientation_count(dim, l);
    let i = PolyMatrix::identity(2, dim, n);
    let z = PolyMatrix::zeros(2, dim, n, n);
    let blocks = match species {
        Species::A => [&i, &z, &f, &z],
        Species::B => [&z, &i, &z, &f],
    };
    PolyMatrix::from_blocks(&[
        vec![blocks[0]],
        vec![blocks[1]],
        vec![blocks[2]],
        vec![blocks[3]],
    ])
}

/// Gauge-constraint columns G^(k) = (delta; k dagger(F) delta), one column
/// per (2l-1)-cell orientation.
pub fn zp_gauge(l: usize, p: u32, k: i64) -> Result<PolyMatrix> {
    let kr = check_odd_prime(p, k)?;
    let dim = 4 * l - 1;
    let s = 2 * l;
    let delta = coboundary_matrix(p, dim, s - 1)?;
    let f = cup_matrix(CupSpec::new(dim, s, 1)?, p);
    let lower = f.dagger().mul(&delta)?.scale(kr as i64);
    PolyMatrix::from_blocks(&[vec![&delta], vec![&lower]])
}

/// Gauge-constraint columns of the Z_2 family for one species, embedded in
/// the four-block basis.
pub fn z2_gauge(l: usize, species: Species) -> Result<PolyMatrix> {
    if l < 2 {
        return Err(Error::InvalidParameter("l >= 2".into()));
    }
    let dim = 2 * l - 1;
    let delta = coboundary_matrix(2, dim, l - 1)?;
    let f = cup_matrix(CupSpec::new(dim, l, 1)?, 2);
    let lower = f.dagger().mul(&delta)?;
    let n = orientation_count(dim, l);
    let cols = orientation_count(dim, l - 1);
    let z = PolyMatrix::zeros(2, dim, n, cols);
    let grid = match species {
        Species::A => [&delta, &z, &lower, &z],
        Species::B => [&z, &delta, &z, &lower],
    };
    PolyMatrix::from_blocks(&[vec![grid[0]], vec![grid[1]], vec![grid[2]], vec![grid[3]]])
}
