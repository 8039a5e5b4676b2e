//! Order and equivalence certificates: composition powers, monomial-shift
//! recognition, the separated-form reduction, and the circuit/shift
//! factorizations certifying the order of the Z_p QCAs.

use crate::cochain::{cup_matrix, CupSpec};
use crate::error::{Error, Result};
use crate::isa::{sqrt_minus_one, sum_of_squares_minus_one};
use crate::matrix::PolyMatrix;
use crate::qca::{build_zp_alpha, QcaFamily, QcaSpec};
use crate::ring::{LaurentPoly, Monomial};
use crate::symplectic::SymplecticMap;

/// n-fold composition; power(theta, 0) is the identity.
pub fn power(theta: &SymplecticMap, n: u32) -> SymplecticMap {
    let mut acc = SymplecticMap::identity(theta.modulus(), theta.dim(), theta.q());
    for _ in 0..n {
        acc = acc.compose(theta).expect("same shape");
    }
    acc
}

/// Per-row (monomial, unit coefficient) description if theta is diagonal with
/// single-term entries of invertible coefficient; empty otherwise.
pub fn is_monomial_shift(theta: &SymplecticMap) -> Option<Vec<(Monomial, u32)>> {
    theta.matrix().diagonal_monomials()
}

/// How a certificate stage is allowed to look.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StageKind {
    /// Block-diagonal in X/Z, identity diagonal, one off-diagonal coupling
    /// row or column in each block (a layer of CNOT-type couplings).
    Elementary,
    /// Diagonal with constant +/-1 entries.
    DiagonalSign,
}

#[derive(Clone, Debug)]
pub struct CertStage {
    pub kind: StageKind,
    pub map: SymplecticMap,
}

/// An auditable factorization proving an order claim by re-multiplication:
/// stages * (onsite target onsite^-1) * target == shift, exactly. Stages are
/// stored per copy; with two copies each stage acts as its direct sum with
/// itself and the target is the stacked QCA.
#[derive(Clone, Debug)]
pub struct OrderCertificate {
    pub target: QcaSpec,
    /// 1 for p = 1 (mod 4); 2 stacked copies for p = 3 (mod 4).
    pub copies: u32,
    pub onsite: SymplecticMap,
    pub stages: Vec<CertStage>,
    pub shift: SymplecticMap,
    pub claimed_order: u32,
}

fn offdiag_support(m: &PolyMatrix) -> Vec<(usize, usize)> {
    m.entries()
        .filter(|(r, c, p)| r != c && !p.is_zero())
        .map(|(r, c, _)| (r, c))
        .collect()
}

fn single_line(support: &[(usize, usize)]) -> bool {
    support.is_empty()
        || support.iter().all(|&(r, _)| r == support[0].0)
        || support.iter().all(|&(_, c)| c == support[0].1)
}

/// Identity diagonal, X/Z-diagonal blocks, off-diagonal coupling confined to
/// one row or one column per block, and exactly symplectic.
pub fn is_elementary(theta: &SymplecticMap) -> bool {
    let (xx, xz, zx, zz) = theta.blocks();
    if !xz.is_zero() || !zx.is_zero() {
        return false;
    }
    let one = LaurentPoly::one(theta.modulus(), theta.dim());
    for b in [&xx, &zz] {
        for r in 0..b.rows() {
            if b.get(r, r) != &one {
                return false;
            }
        }
        if !single_line(&offdiag_support(b)) {
            return false;
        }
    }
    theta.is_symplectic()
}

/// Diagonal with every entry the constant +1 or -1.
pub fn is_diagonal_sign(theta: &SymplecticMap) -> bool {
    let d = theta.modulus();
    let dim = theta.dim();
    let plus = LaurentPoly::one(d, dim);
    let minus = plus.neg();
    for (r, c, p) in theta.matrix().entries() {
        if r == c {
            if p != &plus && p != &minus {
                return false;
            }
        } else if !p.is_zero() {
            return false;
        }
    }
    true
}

fn stage_ok(stage: &CertStage) -> bool {
    match stage.kind {
        StageKind::Elementary => is_elementary(&stage.map),
        StageKind::DiagonalSign => is_diagonal_sign(&stage.map),
    }
}

/// The four CNOT stages of the square-lattice factorization, in application
/// order after the diagonal sign stage. Each is diag(E, dagger(E)^{-1}) for a
/// unitriangular E; the entries do not depend on k.
pub fn cnot_stages(p: u32) -> Result<Vec<SymplecticMap>> {
    let d = p;
    let dim = 3;
    let one = LaurentPoly::one(d, dim);
    let var = |i: usize| LaurentPoly::var(d, dim, i);
    let bar = |i: usize| LaurentPoly::var(d, dim, i).antipode();

    // strictly-triangular coupling entries of the X blocks
    let couplings: [Vec<(usize, usize, LaurentPoly)>; 4] = [
        vec![(2, 0, bar(0).sub(&one)?), (2, 1, one.sub(&bar(1))?)],
        vec![(1, 0, one.sub(&bar(0))?)],
        vec![(0, 2, one.sub(&var(2))?), (1, 2, var(2).sub(&one)?)],
        vec![(0, 1, var(1).sub(&one)?)],
    ];
    couplings
        .into_iter()
        .map(|cpl| {
            let mut e = PolyMatrix::identity(d, dim, 3);
            for (r, c, v) in cpl {
                e.set(r, c, v);
            }
            // for unitriangular E with single coupling line, (I + N)^{-1} = I - N
            let n = e.dagger().sub(&PolyMatrix::identity(d, dim, 3))?;
            let zz = PolyMatrix::identity(d, dim, 3).sub(&n)?;
            let z = PolyMatrix::zeros(d, dim, 3, 3);
            SymplecticMap::new(PolyMatrix::from_blocks(&[vec![&e, &z], vec![&z, &zz]])?)
        })
        .collect()
}

/// The diagonal sign stage diag(1,-1,1,1,-1,1).
pub fn sign_stage(p: u32) -> SymplecticMap {
    let mut m = PolyMatrix::zeros(p, 3, 6, 6);
    for (i, s) in [1i64, -1, 1, 1, -1, 1].into_iter().enumerate() {
        m.set(i, i, LaurentPoly::constant(p, 3, s));
    }
    SymplecticMap::new(m).expect("6x6")
}

/// The full circuit U = sign * U1 * U2 * U3 * U4.
pub fn circuit_u(p: u32) -> Result<SymplecticMap> {
    let mut acc = sign_stage(p);
    for s in cnot_stages(p)? {
        acc = acc.compose(&s)?;
    }
    Ok(acc)
}

fn shift_map(p: u32, copies: u32) -> Result<SymplecticMap> {
    // diag(M_{e u f}) repeated on every X and Z block
    let mef = cup_matrix(CupSpec::new(3, 2, 0)?, p);
    let reps = 2 * copies as usize;
    let mut rows: Vec<Vec<&PolyMatrix>> = Vec::new();
    let z = PolyMatrix::zeros(p, 3, 3, 3);
    for r in 0..reps {
        let mut row = Vec::new();
        for c in 0..reps {
            row.push(if r == c { &mef } else { &z });
        }
        rows.push(row);
    }
    SymplecticMap::new(PolyMatrix::from_blocks(&rows)?)
}

/// The two-copy communicating conjugator built from a^2 + b^2 = -1 (mod p),
/// in the basis (X1, X2, Z1, Z2).
fn two_copy_conjugator(p: u32, a: u32, b: u32) -> Result<SymplecticMap> {
    let i = PolyMatrix::identity(p, 3, 3);
    let z = PolyMatrix::zeros(p, 3, 3, 3);
    let ai = i.scale(a as i64);
    let bi = i.scale(b as i64);
    let nai = i.scale(-(a as i64));
    let nbi = i.scale(-(b as i64));
    SymplecticMap::new(PolyMatrix::from_blocks(&[
        vec![&ai, &bi, &z, &z],
        vec![&bi, &nai, &z, &z],
        vec![&z, &z, &nai, &nbi],
        vec![&z, &z, &nbi, &ai],
    ])?)
}

/// Precondition of the square-lattice factorization: the edge/face cup-0
/// pairing squares to the identity, dagger(M_{e u f}) M_{e u f} = I.
fn check_pairing_property(p: u32) -> Result<()> {
    let mef = cup_matrix(CupSpec::new(3, 2, 0)?, p);
    let prod = mef.dagger().mul(&mef)?;
    if prod != PolyMatrix::identity(p, 3, 3) {
        return Err(Error::InvalidParameter(
            "edge/face pairing does not square to the identity; the printed circuit does not apply"
                .into(),
        ));
    }
    Ok(())
}

/// Build the order certificate for alpha_p^(k): order 2 through the on-site
/// square root of charge conjugation when p = 1 (mod 4), order 4 through the
/// two-copy conjugator when p = 3 (mod 4). The certificate re-multiplies to a
/// pure monomial shift.
pub fn zp_order_certificate(p: u32, k: i64) -> Result<OrderCertificate> {
    check_pairing_property(p)?;
    // constructing alpha validates p and k
    let _ = build_zp_alpha(p, k)?;
    let target = QcaSpec {
        family: QcaFamily::ZpAlpha,
        level: 1,
        modulus: p,
        k,
    };
    let stages_single = cnot_stages(p)?;
    if p % 4 == 1 {
        let a = sqrt_minus_one(p).expect("p = 1 mod 4");
        let mut onsite = PolyMatrix::zeros(p, 3, 6, 6);
        for j in 0..3 {
            onsite.set(j, j, LaurentPoly::constant(p, 3, -(a as i64)));
            onsite.set(3 + j, 3 + j, LaurentPoly::constant(p, 3, a as i64));
        }
        let mut stages = vec![CertStage {
            kind: StageKind::DiagonalSign,
            map: sign_stage(p),
        }];
        stages.extend(stages_single.into_iter().map(|map| CertStage {
            kind: StageKind::Elementary,
            map,
        }));
        Ok(OrderCertificate {
            target,
            copies: 1,
            onsite: SymplecticMap::new(onsite)?,
            stages,
            shift: shift_map(p, 1)?,
            claimed_order: 2,
        })
    } else {
        let (a, b) = sum_of_squares_minus_one(p).expect("odd prime");
        let onsite = two_copy_conjugator(p, a, b)?;
        let mut stages = vec![CertStage {
            kind: StageKind::DiagonalSign,
            map: sign_stage(p),
        }];
        for s in stages_single {
            stages.push(CertStage {
                kind: StageKind::Elementary,
                map: s,
            });
        }
        Ok(OrderCertificate {
            target,
            copies: 2,
            onsite,
            stages,
            shift: shift_map(p, 2)?,
            claimed_order: 4,
        })
    }
}

/// Re-multiply a certificate: every stage must pass its shape predicate, the
/// shift must be a genuine monomial shift, and
///   (product of stages) * (onsite target onsite^-1) * target == shift
/// must hold exactly, where target is the claimed QCA (stacked per `copies`).
pub fn verify_certificate(cert: &OrderCertificate) -> bool {
    let Ok(alpha) = cert.target.build() else {
        return false;
    };
    let target = if cert.copies == 2 {
        match alpha.direct_sum(&alpha) {
            Ok(t) => t,
            Err(_) => return false,
        }
    } else {
        alpha
    };
    if !cert.stages.iter().all(stage_ok) {
        return false;
    }
    if is_monomial_shift(&cert.shift).is_none() {
        return false;
    }
    if !cert.onsite.is_symplectic() {
        return false;
    }
    let Ok(onsite_inv) = cert.onsite.inverse() else {
        return false;
    };
    let mut acc = SymplecticMap::identity(target.modulus(), target.dim(), target.q());
    for s in &cert.stages {
        let applied = if cert.copies == 2 {
            match s.map.direct_sum(&s.map) {
                Ok(m) => m,
                Err(_) => return false,
            }
        } else {
            s.map.clone()
        };
        acc = match acc.compose(&applied) {
            Ok(m) => m,
            Err(_) => return false,
        };
    }
    let conj = cert
        .onsite
        .compose(&target)
        .and_then(|m| m.compose(&onsite_inv));
    let Ok(conj) = conj else { return false };
    match acc.compose(&conj).and_then(|m| m.compose(&target)) {
        Ok(total) => total == cert.shift,
        Err(_) => false,
    }
}

/// Split a map with zero XZ block into a separated part diag(A, dagger(A)^-1)
/// and an elementary part with identity diagonal blocks:
/// theta = theta_sep * E, exactly.
pub fn separated_reduce(theta: &SymplecticMap) -> Result<(SymplecticMap, SymplecticMap)> {
    let (xx, xz, zx, zz) = theta.blocks();
    if !xz.is_zero() {
        return Err(Error::NotReducible);
    }
    let q = theta.q();
    let d = theta.modulus();
    let dim = theta.dim();
    let i = PolyMatrix::identity(d, dim, q);
    // symplecticity of theta forces zz = dagger(xx)^{-1}
    if xx.dagger().mul(&zz)? != i {
        return Err(Error::NotSymplectic);
    }
    let z = PolyMatrix::zeros(d, dim, q, q);
    let sep = SymplecticMap::new(PolyMatrix::from_blocks(&[vec![&xx, &z], vec![&z, &zz]])?)?;
    let coupling = xx.dagger().mul(&zx)?;
    // well-formedness: the coupling block is symmetric under dagger
    if coupling.dagger() != coupling {
        return Err(Error::NotSymplectic);
    }
    let elem = SymplecticMap::new(PolyMatrix::from_blocks(&[
        vec![&i, &z],
        vec![&coupling, &i],
    ])?)?;
    if sep.compose(&elem)? != *theta {
        return Err(Error::NotSymplectic);
    }
    Ok((sep, elem))
}
