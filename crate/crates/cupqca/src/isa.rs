//! Invertible subalgebras on even-dimensional hypercubic lattices, and the
//! QCAs they induce in one higher dimension.
//!
//! Generators are stored column-stacked: `a` holds one Pauli column per qudit
//! type per unit cell, `abar` the commuting conjugate family. For the Z_p
//! pairs the invertibility witness H = (A | Abar) comes with the closed-form
//! inverse; re-multiplication is the proof of invertibility.

use crate::cochain::{coboundary_matrix, cup_matrix, orientation_count, CupSpec};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::ring::{is_prime, mod_inverse, LaurentPoly, Monomial};
use crate::symplectic::SymplecticMap;

/// Which invertible-subalgebra family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IsaKind {
    /// Two qubit species on l-cells in 2l spatial dimensions.
    Z2,
    /// One Z_p qudit species on (2l-1)-cells in 4l-2 spatial dimensions.
    Zp,
}

/// Generators and witnesses of one invertible subalgebra.
#[derive(Clone, Debug)]
pub struct IsaPair {
    pub kind: IsaKind,
    pub modulus: u32,
    pub dim: usize,
    /// Qudits per unit cell (= number of generator columns).
    pub q: usize,
    /// Generator columns A, shape 2q x q.
    pub a: PolyMatrix,
    /// Conjugate generator columns, shape 2q x q.
    pub abar: PolyMatrix,
    /// Z-block of A (A = (I; M)).
    pub mcal: PolyMatrix,
    /// Z-block of Abar.
    pub mcal_bar: PolyMatrix,
    /// Closed-form inverse of M (Z_p pairs only).
    pub mcal_inv: Option<PolyMatrix>,
    /// Witness H = (A | Abar) (Z_p pairs only).
    pub h: Option<PolyMatrix>,
    /// Closed-form inverse of the witness (Z_p pairs only).
    pub h_inv: Option<PolyMatrix>,
}

fn stack_identity_over(m: &PolyMatrix) -> PolyMatrix {
    let i = PolyMatrix::identity(m.modulus(), m.dim(), m.cols());
    PolyMatrix::from_blocks(&[vec![&i], vec![m]]).expect("shapes agree")
}

/// The Z_2 invertible subalgebra with two qubit species on l-cells of the
/// 2l-dimensional hypercubic lattice; l = 1 is the square-lattice pair whose
/// Z-block satisfies dagger(M) = Mbar.
pub fn build_z2_isa(l: usize) -> Result<IsaPair> {
    if l < 1 {
        return Err(Error::InvalidParameter("l >= 1".into()));
    }
    let dim = 2 * l;
    let d = 2u32;
    let n = orientation_count(dim, l);
    let mff = cup_matrix(CupSpec::new(dim, l, 0)?, d);
    let delta = coboundary_matrix(d, dim, l)?;
    let w = delta.dagger();
    let mt1f = cup_matrix(CupSpec::new(dim, l, 1)?, d);
    let mf1t = cup_matrix(CupSpec::new(dim, l + 1, 1)?, d);
    let mff_dag = mff.dagger();

    let diag_a = mff_dag.add(&w.mul(&mt1f)?)?;
    let diag_b = mff_dag.add(&w.mul(&mf1t.dagger())?)?;
    let z = PolyMatrix::zeros(d, dim, n, n);
    let mcal = PolyMatrix::from_blocks(&[vec![&diag_a, &mff_dag], vec![&z, &diag_b]])?;
    let mcal_bar = PolyMatrix::from_blocks(&[vec![&diag_b, &z], vec![&mff, &diag_a]])?;

    Ok(IsaPair {
        kind: IsaKind::Z2,
        modulus: d,
        dim,
        q: 2 * n,
        a: stack_identity_over(&mcal),
        abar: stack_identity_over(&mcal_bar),
        mcal,
        mcal_bar,
        mcal_inv: None,
        h: None,
        h_inv: None,
    })
}

/// The square-lattice Z_2 pair (two qubits per edge).
pub fn build_z2_isa_2d() -> IsaPair {
    build_z2_isa(1).expect("l = 1 is valid")
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

/// The Z_p^(k) invertible subalgebra on (2l-1)-cells of the (4l-2)-dimensional
/// hypercubic lattice, with the closed-form witness H and its inverse.
pub fn build_zp_isa(l: usize, p: u32, k: i64) -> Result<IsaPair> {
    let kr = check_odd_prime(p, k)?;
    if l < 1 {
        return Err(Error::InvalidParameter("l >= 1".into()));
    }
    let dim = 4 * l - 2;
    let s = 2 * l - 1;
    let n = orientation_count(dim, s);
    let half = mod_inverse(2, p)? as i64;
    let kinv = mod_inverse(kr as i64, p)? as i64;

    let mss = cup_matrix(CupSpec::new(dim, s, 0)?, p);
    let ms1f = cup_matrix(CupSpec::new(dim, s + 1, 1)?, p);
    let mf1s = cup_matrix(CupSpec::new(dim, s, 1)?, p);
    let delta = coboundary_matrix(p, dim, s)?;
    let bracket = ms1f.dagger().sub(&mf1s)?;
    let mcal = mss
        .scale(kr as i64)
        .add(&delta.dagger().mul(&bracket)?.scale(kr as i64 * half))?;
    let mcal_bar = mcal.neg();

    // closed-form inverse via the square-lattice pairings
    let dev = coboundary_matrix(p, dim, s - 1)?;
    let mrf = cup_matrix(CupSpec::new(dim, s + 1, 0)?, p);
    let t = dev.mul(&mrf.dagger().monomial_inverse()?)?.mul(&bracket)?;
    let i = PolyMatrix::identity(p, dim, n);
    let mcal_inv = i
        .sub(&t.scale(half))?
        .mul(&mss.monomial_inverse()?)?
        .scale(kinv);

    let a = stack_identity_over(&mcal);
    let abar = stack_identity_over(&mcal_bar);
    let h = PolyMatrix::from_blocks(&[vec![&i, &i], vec![&mcal, &mcal_bar]])?;
    let minv_neg = mcal_inv.neg();
    let h_inv = PolyMatrix::from_blocks(&[vec![&i, &mcal_inv], vec![&i, &minv_neg]])?.scale(half);

    Ok(IsaPair {
        kind: IsaKind::Zp,
        modulus: p,
        dim,
        q: n,
        a,
        abar,
        mcal,
        mcal_bar,
        mcal_inv: Some(mcal_inv),
        h: Some(h),
        h_inv: Some(h_inv),
    })
}

/// The square-lattice Z_p^(k) pair (one qudit per edge).
pub fn build_zp_isa_2d(p: u32, k: i64) -> Result<IsaPair> {
    build_zp_isa(1, p, k)
}

/// Degree-promoted pair of either kind; l = 1 reproduces the square-lattice
/// constructions.
pub fn build_isa_higher(kind: IsaKind, l: usize, p: u32, k: i64) -> Result<IsaPair> {
    match kind {
        IsaKind::Z2 => build_z2_isa(l),
        IsaKind::Zp => build_zp_isa(l, p, k),
    }
}

/// Smallest a in 1..p with a^2 = -1 (mod p); exists iff p = 1 (mod 4).
pub fn sqrt_minus_one(p: u32) -> Option<u32> {
    (1..p).find(|&a| (a as u64 * a as u64 + 1).is_multiple_of(p as u64))
}

/// Lexicographically smallest (a, b) with a^2 + b^2 = -1 (mod p).
pub fn sum_of_squares_minus_one(p: u32) -> Option<(u32, u32)> {
    for a in 0..p {
        for b in 0..p {
            if ((a as u64 * a as u64 + b as u64 * b as u64) + 1).is_multiple_of(p as u64) {
                return Some((a, b));
            }
        }
    }
    None
}

fn monomial_of(m: &LaurentPoly) -> Result<Monomial> {
    match m.as_single_term() {
        Some((mono, 1)) => Ok(mono.clone()),
        _ => Err(Error::InvalidParameter(
            "translation must be a single monomial with coefficient 1".into(),
        )),
    }
}

/// The QCA induced by the square-lattice Z_p pair: it squares to the
/// translation `m` combined with charge conjugation, -m * I. For p = 1
/// (mod 4) this acts on one copy of the lattice algebra; for p = 3 (mod 4)
/// on two stacked copies.
pub fn induced_qca(p: u32, k: i64, m: &LaurentPoly) -> Result<SymplecticMap> {
    let pair = build_zp_isa_2d(p, k)?;
    let mono = monomial_of(m)?;
    if mono.dim() != pair.dim {
        return Err(Error::DimensionMismatch {
            expected: pair.dim,
            got: mono.dim(),
        });
    }
    let d = p;
    let dim = pair.dim;
    let n = pair.q;
    let h = pair.h.as_ref().unwrap();
    let h_inv = pair.h_inv.as_ref().unwrap();
    let m_poly = LaurentPoly::monomial(d, dim, mono, 1);

    if p % 4 == 1 {
        let a = sqrt_minus_one(p).expect("p = 1 mod 4");
        let mut shift = PolyMatrix::identity(d, dim, 2 * n);
        for j in 0..n {
            shift.set(j, j, m_poly.clone());
        }
        let mut onsite = PolyMatrix::zeros(d, dim, 2 * n, 2 * n);
        for j in 0..n {
            onsite.set(j, j, LaurentPoly::constant(d, dim, -(a as i64)));
            onsite.set(n + j, n + j, LaurentPoly::constant(d, dim, a as i64));
        }
        let mat = h.mul(&shift)?.mul(h_inv)?.mul(&onsite)?;
        SymplecticMap::new(mat)
    } else {
        let (a, b) = sum_of_squares_minus_one(p).expect("odd prime");
        // two copies in basis (X1, X2, Z1, Z2)
        let i = PolyMatrix::identity(d, dim, n);
        let z = PolyMatrix::zeros(d, dim, n, n);
        let h2 = PolyMatrix::from_blocks(&[
            vec![&i, &z, &i, &z],
            vec![&z, &i, &z, &i],
            vec![&pair.mcal, &z, &pair.mcal_bar, &z],
            vec![&z, &pair.mcal, &z, &pair.mcal_bar],
        ])?;
        let minv = pair.mcal_inv.as_ref().unwrap();
        let half = mod_inverse(2, p)? as i64;
        let minv_neg = minv.neg();
        let h2_inv = PolyMatrix::from_blocks(&[
            vec![&i, &z, minv, &z],
            vec![&z, &i, &z, minv],
            vec![&i, &z, &minv_neg, &z],
            vec![&z, &i, &z, &minv_neg],
        ])?
        .scale(half);
        let mut shift = PolyMatrix::identity(d, dim, 4 * n);
        for j in 0..2 * n {
            shift.set(j, j, m_poly.clone());
        }
        let ai = i.scale(a as i64);
        let bi = i.scale(b as i64);
        let nai = i.scale(-(a as i64));
        let nbi = i.scale(-(b as i64));
        let conj = PolyMatrix::from_blocks(&[
            vec![&ai, &bi, &z, &z],
            vec![&bi, &nai, &z, &z],
            vec![&z, &z, &nai, &nbi],
            vec![&z, &z, &nbi, &ai],
        ])?;
        let mat = h2.mul(&shift)?.mul(&h2_inv)?.mul(&conj)?;
        SymplecticMap::new(mat)
    }
}

/// For p = 1 (mod 4): the on-site diagonal map with entries (a, .., -a, ..)
/// that carries the A columns onto a scalar multiple of the Abar columns.
pub fn charge_conjugation_witness(pair: &IsaPair) -> Result<(SymplecticMap, u32)> {
    if pair.kind != IsaKind::Zp {
        return Err(Error::InvalidParameter(
            "witness applies to Z_p pairs".into(),
        ));
    }
    let p = pair.modulus;
    let a = sqrt_minus_one(p)
        .ok_or_else(|| Error::InvalidParameter(format!("-1 is not a square mod {p}")))?;
    let n = pair.q;
    let mut onsite = PolyMatrix::zeros(p, pair.dim, 2 * n, 2 * n);
    for j in 0..n {
        onsite.set(j, j, LaurentPoly::constant(p, pair.dim, a as i64));
        onsite.set(
            n + j,
            n + j,
            LaurentPoly::constant(p, pair.dim, -(a as i64)),
        );
    }
    Ok((SymplecticMap::new(onsite)?, a))
}
