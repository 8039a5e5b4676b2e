//! Coboundary and higher cup-product matrices on hypercubic lattices.
//!
//! Cells of the lattice are translates of the unit-cube cells: a p-cell is a
//! base point in Z^D plus a sorted set of p free directions. In the polynomial
//! representation a cell is labelled by its top corner (base + indicator of
//! the free set); with that labelling the generated matrices reproduce the
//! conventional dual-lattice coboundary columns (1-x; 1-y; 1-z) and the cup
//! matrices such as diag(y~z~, -x~z~, x~y~) entry for entry.
//!
//! The cup-i term rule on an n-cell (n = p + q - i), for a left p-cochain A
//! and right q-cochain B: sum over pairs of direction sets (P, Q) covering the
//! cell's free set with |P| = p, |Q| = q, |P n Q| = i. Writing S = P n Q,
//! A sits on the subcell free along P with coordinate (#{s in S : s < j} mod 2)
//! in each direction j of Q \ P, and B sits on the subcell free along Q with
//! the complementary coordinate 1 - (#{s in S : s < j} mod 2) in each
//! direction j of P \ Q. The term's sign is
//!     (-1)^( #{(j,k) in (P\Q) x (Q\P) : j > k}  +  i (q + 1) ).
//! This is the unique sign convention that reproduces every matrix in the
//! hypercube-cup-product tables and satisfies the Leibniz identity; the
//! Leibniz verifier below re-checks it on every call path.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::ring::{LaurentPoly, Monomial};

/// One slot of a cell label: fixed to 0, fixed to 1, or spanning.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    Zero,
    One,
    Free,
}

/// A cell of the unit hypercube, one slot per direction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CellLabel {
    pub slots: Vec<Slot>,
}

impl CellLabel {
    pub fn degree(&self) -> usize {
        self.slots
            .iter()
            .filter(|s| matches!(s, Slot::Free))
            .count()
    }

    pub fn free_dirs(&self) -> Vec<usize> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| matches!(s, Slot::Free).then_some(i))
            .collect()
    }

    /// The corresponding cell of the lattice, with slots fixed to 1 shifting
    /// the base point.
    pub fn to_cell(&self) -> LatticeCell {
        let base = self
            .slots
            .iter()
            .map(|s| if matches!(s, Slot::One) { 1 } else { 0 })
            .collect();
        LatticeCell::new(base, self.free_dirs())
    }

    /// Parse a compact label like "(FREE,0)" or "1,FREE,0".
    pub fn parse(s: &str) -> Result<Self> {
        let slots = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|tok| match tok.trim() {
                "0" => Ok(Slot::Zero),
                "1" => Ok(Slot::One),
                "FREE" | "free" | "*" => Ok(Slot::Free),
                other => Err(Error::InvalidParameter(format!("bad cell slot {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CellLabel { slots })
    }
}

/// A lattice cell: base point plus sorted free directions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct LatticeCell {
    pub base: Vec<i32>,
    pub dirs: Vec<usize>,
}

impl LatticeCell {
    pub fn new(base: Vec<i32>, mut dirs: Vec<usize>) -> Self {
        dirs.sort_unstable();
        LatticeCell { base, dirs }
    }

    pub fn degree(&self) -> usize {
        self.dirs.len()
    }

    /// Top corner: base + indicator of the free directions. This is the
    /// point that labels the cell in the polynomial representation.
    pub fn top_corner(&self) -> Vec<i32> {
        let mut t = self.base.clone();
        for &j in &self.dirs {
            t[j] += 1;
        }
        t
    }
}

/// An integer-coefficient cochain with finite support, used by the oracle.
pub type Cochain = BTreeMap<LatticeCell, i64>;

/// Canonical order of the p-cell orientations in dimension `dim`.
///
/// Plain lexicographic order on the sorted free-direction sets, with one
/// exception: in three dimensions the degree-2 cells are ordered
/// (yz, xz, xy), matching the conventional presentation of the
/// three-dimensional coboundary and cup matrices. Every constructor and
/// fixture in this crate inherits this order.
pub fn orientations(dim: usize, degree: usize) -> Vec<Vec<usize>> {
    if dim == 3 && degree == 2 {
        return vec![vec![1, 2], vec![0, 2], vec![0, 1]];
    }
    (0..dim).combinations(degree).collect()
}

pub fn orientation_count(dim: usize, degree: usize) -> usize {
    orientations(dim, degree).len()
}

/// Signed cubical boundary of a lattice cell. The sign of the face obtained
/// by fixing the l-th free direction (1-based rank within the cell's free
/// set) to a is (-1)^(l + a).
pub fn boundary(cell: &LatticeCell) -> Vec<(LatticeCell, i64)> {
    let mut out = Vec::with_capacity(2 * cell.dirs.len());
    for (rank, &j) in cell.dirs.iter().enumerate() {
        let rest: Vec<usize> = cell.dirs.iter().copied().filter(|&d| d != j).collect();
        for a in 0..2i32 {
            let mut base = cell.base.clone();
            base[j] += a;
            let sign = if (rank + 1 + a as usize).is_multiple_of(2) {
                1
            } else {
                -1
            };
            out.push((LatticeCell::new(base, rest.clone()), sign));
        }
    }
    out
}

/// (delta c)(cell) = c(boundary cell).
pub fn coboundary_eval(c: &Cochain, cell: &LatticeCell) -> i64 {
    boundary(cell)
        .into_iter()
        .map(|(b, s)| s * c.get(&b).copied().unwrap_or(0))
        .sum()
}

/// Full coboundary of a finitely supported cochain.
pub fn coboundary_cochain(c: &Cochain, dim: usize) -> Cochain {
    let mut out: Cochain = BTreeMap::new();
    for (cell, &v) in c {
        for j in 0..dim {
            if cell.dirs.contains(&j) {
                continue;
            }
            let mut dirs = cell.dirs.clone();
            dirs.push(j);
            dirs.sort_unstable();
            let rank = dirs.iter().position(|&d| d == j).unwrap() + 1;
            for a in 0..2i32 {
                let mut base = cell.base.clone();
                base[j] -= a;
                let sign = if (rank + a as usize).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                let key = LatticeCell::new(base, dirs.clone());
                *out.entry(key).or_default() += sign * v;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn parity_below(s: &[usize], j: usize) -> i32 {
    (s.iter().filter(|&&x| x < j).count() % 2) as i32
}

/// Sign exponent and sub-cell placement for one (P, Q) term of the cup-i rule.
/// Returns (sign, a_offsets, b_offsets) where the offsets are the fixed
/// coordinates of the A and B sub-cells relative to the evaluation cell base.
fn cup_term(
    dim: usize,
    p_dirs: &[usize],
    q_dirs: &[usize],
    level: usize,
) -> Option<(i64, Vec<i32>, Vec<i32>)> {
    let shared: Vec<usize> = p_dirs
        .iter()
        .copied()
        .filter(|j| q_dirs.contains(j))
        .collect();
    if shared.len() != level {
        return None;
    }
    let mut a_off = vec![0i32; dim];
    let mut b_off = vec![0i32; dim];
    let p_only: Vec<usize> = p_dirs
        .iter()
        .copied()
        .filter(|j| !shared.contains(j))
        .collect();
    let q_only: Vec<usize> = q_dirs
        .iter()
        .copied()
        .filter(|j| !shared.contains(j))
        .collect();
    for &j in &q_only {
        a_off[j] = parity_below(&shared, j);
    }
    for &j in &p_only {
        b_off[j] = 1 - parity_below(&shared, j);
    }
    let inv = p_only
        .iter()
        .map(|&j| q_only.iter().filter(|&&k| j > k).count())
        .sum::<usize>();
    let q = q_dirs.len();
    let sign = if (inv + level * (q + 1)).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Some((sign, a_off, b_off))
}

/// Brute-force evaluation of (a cup_i b)(cell) for finitely supported integer
/// cochains: enumerate support pairs and test the geometric placement rule.
/// This is the independent oracle for `cup_matrix`. A degree clash returns 0.
pub fn cup_eval(a: &Cochain, b: &Cochain, level: usize, cell: &LatticeCell) -> i64 {
    cup_eval_flagged(a, b, level, cell).0
}

/// Like [`cup_eval`], also reporting whether any support pair was dropped for
/// a degree clash (degrees not summing to cell degree + level, or a level
/// beyond either degree). Such pairs contribute zero by convention.
pub fn cup_eval_flagged(a: &Cochain, b: &Cochain, level: usize, cell: &LatticeCell) -> (i64, bool) {
    let dim = cell.base.len();
    let n = cell.degree();
    let mut total = 0i64;
    let mut degree_clash = false;
    for (ca, &va) in a {
        for (cb, &vb) in b {
            let p = ca.degree();
            let q = cb.degree();
            if p + q != n + level || level > p.min(q) {
                degree_clash = true;
                continue;
            }
            // both sub-cells must use directions of the evaluation cell
            if !ca.dirs.iter().all(|d| cell.dirs.contains(d))
                || !cb.dirs.iter().all(|d| cell.dirs.contains(d))
            {
                continue;
            }
            let union: Vec<usize> = cell
                .dirs
                .iter()
                .copied()
                .filter(|d| ca.dirs.contains(d) || cb.dirs.contains(d))
                .collect();
            if union.len() != n {
                continue;
            }
            let Some((sign, a_off, b_off)) = cup_term(dim, &ca.dirs, &cb.dirs, level) else {
                continue;
            };
            let fits = (0..dim).all(|j| {
                ca.base[j] == cell.base[j] + a_off[j] && cb.base[j] == cell.base[j] + b_off[j]
            });
            if fits {
                total += sign * va * vb;
            }
        }
    }
    (total, degree_clash)
}

/// Shape of a cup matrix: columns indexed by `right_degree`-cells, rows by
/// (dim - right_degree + level)-cells.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CupSpec {
    pub dim: usize,
    pub right_degree: usize,
    pub level: usize,
}

impl CupSpec {
    pub fn new(dim: usize, right_degree: usize, level: usize) -> Result<Self> {
        let invalid = || {
            Error::InvalidParameter(format!(
                "invalid cup spec: dim {dim}, right degree {right_degree}, level {level}"
            ))
        };
        if dim == 0 || right_degree > dim {
            return Err(invalid());
        }
        let left = (dim + level)
            .checked_sub(right_degree)
            .ok_or_else(invalid)?;
        if left > dim || level > right_degree.min(left) {
            return Err(invalid());
        }
        Ok(CupSpec {
            dim,
            right_degree,
            level,
        })
    }

    /// Row degree: left + right - level = dim.
    pub fn left_degree(&self) -> usize {
        self.dim + self.level - self.right_degree
    }
}

type CupKey = (u32, usize, usize, usize);

fn cache() -> &'static Mutex<HashMap<CupKey, PolyMatrix>> {
    static CACHE: OnceLock<Mutex<HashMap<CupKey, PolyMatrix>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The matrix of the cup-i pairing: entry (R, C) is the integral of
/// (R-cell at t) cup_i (C-cell at origin) summed over all placements t,
/// encoded as the monomial x^(t + top(R) - top(C)). At most one placement
/// contributes per entry, so every cup matrix is a matrix of monomials.
pub fn cup_matrix(spec: CupSpec, modulus: u32) -> PolyMatrix {
    if let Some(m) =
        cache()
            .lock()
            .unwrap()
            .get(&(modulus, spec.dim, spec.right_degree, spec.level))
    {
        return m.clone();
    }
    let dim = spec.dim;
    let rows = orientations(dim, spec.left_degree());
    let cols = orientations(dim, spec.right_degree);
    let mut out = PolyMatrix::zeros(modulus, dim, rows.len(), cols.len());
    for (r, rd) in rows.iter().enumerate() {
        for (c, cd) in cols.iter().enumerate() {
            let union: Vec<usize> = (0..dim)
                .filter(|j| rd.contains(j) || cd.contains(j))
                .collect();
            if union.len() != dim {
                continue;
            }
            let Some((sign, a_off, b_off)) = cup_term(dim, rd, cd, spec.level) else {
                continue;
            };
            // B at origin fixes the evaluation cell base w = -b_off; the row
            // cell then sits at t = w + a_off, and the monomial label is
            // t + top(R) - top(C).
            let mut e = vec![0i32; dim];
            for j in 0..dim {
                e[j] = a_off[j] - b_off[j];
                if rd.contains(&j) {
                    e[j] += 1;
                }
                if cd.contains(&j) {
                    e[j] -= 1;
                }
            }
            out.set(r, c, LaurentPoly::monomial(modulus, dim, Monomial(e), sign));
        }
    }
    cache().lock().unwrap().insert(
        (modulus, spec.dim, spec.right_degree, spec.level),
        out.clone(),
    );
    out
}

/// The coboundary matrix: rows indexed by (degree+1)-cells, columns by
/// degree-cells, entry = sum over placements of the signed incidence of the
/// column cell in the boundary of the row cell.
pub fn coboundary_matrix(modulus: u32, dim: usize, degree: usize) -> Result<PolyMatrix> {
    if degree >= dim {
        return Err(Error::InvalidParameter(format!(
            "coboundary degree {degree} out of range for dimension {dim}"
        )));
    }
    let rows = orientations(dim, degree + 1);
    let cols = orientations(dim, degree);
    let mut out = PolyMatrix::zeros(modulus, dim, rows.len(), cols.len());
    for (r, rd) in rows.iter().enumerate() {
        for (c, cd) in cols.iter().enumerate() {
            if !cd.iter().all(|d| rd.contains(d)) {
                continue;
            }
            let j = *rd.iter().find(|d| !cd.contains(d)).unwrap();
            let rank = rd.iter().position(|&d| d == j).unwrap() + 1;
            let sign: i64 = if rank % 2 == 0 { 1 } else { -1 };
            // row cell at t, column cell at origin; boundary contributions at
            // t = 0 (coefficient (-1)^rank) and t = -e_j (coefficient
            // (-1)^(rank+1)); monomial label x^(t + top(R) - top(C)) = x^(e_j)
            // resp. x^0.
            let one = Monomial::one(dim);
            let xj = Monomial::var(dim, j);
            let p = LaurentPoly::monomial(modulus, dim, xj, sign)
                .add(&LaurentPoly::monomial(modulus, dim, one, -sign))?;
            out.set(r, c, p);
        }
    }
    Ok(out)
}

/// All (right_degree, level) pairs for which the four-term Leibniz identity
/// is testable in dimension `dim` (level >= 1 and every constituent matrix
/// well formed).
pub fn leibniz_specs(dim: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 0..=dim {
        for i in 1..=dim {
            if i > p {
                continue;
            }
            let q = (dim + i).checked_sub(p + 1);
            let Some(q) = q else { continue };
            if q > dim {
                continue;
            }
            // constituent specs: (p, i) at left degree q+1; (p+1, i); (p, i-1);
            // (q, i-1)
            if CupSpec::new(dim, p, i).is_err() {
                continue;
            }
            if CupSpec::new(dim, p, i - 1).is_err() || CupSpec::new(dim, q, i - 1).is_err() {
                continue;
            }
            if p < dim && CupSpec::new(dim, p + 1, i).is_err() {
                continue;
            }
            out.push((p, i));
        }
    }
    out
}

/// The matrix form of the Leibniz rule for cup products, with q the left
/// degree: for q = dim - p + i - 1,
///
///   M_{d(sq) u_i sp} + (-1)^q M_{sq u_i d(sp)} + (-1)^(q+p-i) M_{sq u_(i-1) sp}
///     + (-1)^(pq+p+q) dagger(M_{sp u_(i-1) sq}) = 0.
///
/// Returns true iff the sum is the zero matrix exactly.
pub fn verify_cup_leibniz(
    modulus: u32,
    dim: usize,
    right_degree: usize,
    level: usize,
) -> Result<bool> {
    let p = right_degree;
    let i = level;
    if i == 0 {
        return Err(Error::InvalidParameter(
            "leibniz identity needs level >= 1".into(),
        ));
    }
    let q = dim + i - 1 - p;

    // term 1: dagger(delta_q) * M_{sigma_(q+1) u_i sigma_p}
    let t1 = {
        let m = cup_matrix(CupSpec::new(dim, p, i)?, modulus);
        let delta_q = coboundary_matrix(modulus, dim, q)?;
        delta_q.dagger().mul(&m)?
    };
    // term 2: M_{sigma_q u_i sigma_(p+1)} * delta_p  (zero when p = dim)
    let t2 = if p < dim {
        let m = cup_matrix(CupSpec::new(dim, p + 1, i)?, modulus);
        let delta_p = coboundary_matrix(modulus, dim, p)?;
        m.mul(&delta_p)?
    } else {
        PolyMatrix::zeros(modulus, dim, t1.rows(), t1.cols())
    };
    // term 3: M_{sigma_q u_(i-1) sigma_p}
    let t3 = cup_matrix(CupSpec::new(dim, p, i - 1)?, modulus);
    // term 4: dagger(M_{sigma_p u_(i-1) sigma_q})
    let t4 = cup_matrix(CupSpec::new(dim, q, i - 1)?, modulus).dagger();

    let s2 = if q.is_multiple_of(2) { 1 } else { -1 };
    let s3 = if (q + p - i).is_multiple_of(2) { 1 } else { -1 };
    let s4 = if (p * q + p + q).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let sum = t1
        .add(&t2.scale(s2))?
        .add(&t3.scale(s3))?
        .add(&t4.scale(s4))?;
    Ok(sum.is_zero())
}

/// Compare one cup matrix against the brute-force oracle: every entry must
/// equal the signed sum of single-cell evaluations over all translations of
/// the row cell against the column cell at the origin, each placement
/// labelled by the anchoring monomial x^(t + top(R) - top(C)).
///
/// A placement can only contribute when both cells fit in one closed unit
/// cube, which confines the evaluation-cube base to {-1,0}^D and the row-cell
/// translation to [-1,1]^D; the scan covers those windows exhaustively.
pub fn cup_matrix_matches_oracle(spec: CupSpec, modulus: u32) -> bool {
    let dim = spec.dim;
    let mat = cup_matrix(spec, modulus);
    let rows = orientations(dim, spec.left_degree());
    let cols = orientations(dim, spec.right_degree);
    let translations: Vec<Vec<i32>> = (0..dim)
        .map(|_| vec![-1i32, 0, 1])
        .multi_cartesian_product()
        .collect();
    let cube_bases: Vec<Vec<i32>> = (0..dim)
        .map(|_| vec![-1i32, 0])
        .multi_cartesian_product()
        .collect();
    let all_dirs: Vec<usize> = (0..dim).collect();
    for (r, rd) in rows.iter().enumerate() {
        for (c, cd) in cols.iter().enumerate() {
            let mut expect = LaurentPoly::zero(modulus, dim);
            let mut b = Cochain::new();
            b.insert(LatticeCell::new(vec![0; dim], cd.clone()), 1);
            for t in &translations {
                let mut a = Cochain::new();
                a.insert(LatticeCell::new(t.clone(), rd.clone()), 1);
                let total: i64 = cube_bases
                    .iter()
                    .map(|w| {
                        cup_eval(
                            &a,
                            &b,
                            spec.level,
                            &LatticeCell::new(w.clone(), all_dirs.clone()),
                        )
                    })
                    .sum();
                if total != 0 {
                    let mut e = t.clone();
                    for (j, ej) in e.iter_mut().enumerate() {
                        if rd.contains(&j) {
                            *ej += 1;
                        }
                        if cd.contains(&j) {
                            *ej -= 1;
                        }
                    }
                    expect = expect
                        .add(&LaurentPoly::monomial(modulus, dim, Monomial(e), total))
                        .expect("same ring");
                }
            }
            if &expect != mat.get(r, c) {
                return false;
            }
        }
    }
    true
}
