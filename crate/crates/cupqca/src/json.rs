//! JSON schemas for matrices, maps, certificates, and torus instantiations.
//! Zero entries are omitted; term order inside an entry is the canonical
//! lexicographic order, so output is byte-stable.

use serde::{Deserialize, Serialize};

use crate::equivalence::{OrderCertificate, StageKind};
use crate::error::{Error, Result};
use crate::lattice::ExplicitMap;
use crate::matrix::PolyMatrix;
use crate::ring::{LaurentPoly, Monomial};
use crate::symplectic::SymplecticMap;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub coeff: u32,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MatrixJson {
    pub modulus: u32,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<EntryJson>,
}

pub fn matrix_to_json(m: &PolyMatrix, q: Option<usize>) -> MatrixJson {
    let entries = m
        .entries()
        .filter(|(_, _, p)| !p.is_zero())
        .map(|(row, col, p)| EntryJson {
            row,
            col,
            terms: p
                .terms()
                .map(|(mono, coeff)| TermJson {
                    exp: mono.0.clone(),
                    coeff,
                })
                .collect(),
        })
        .collect();
    MatrixJson {
        modulus: m.modulus(),
        dimension: m.dim(),
        q,
        rows: m.rows(),
        cols: m.cols(),
        entries,
    }
}

pub fn matrix_from_json(j: &MatrixJson) -> Result<PolyMatrix> {
    let mut m = PolyMatrix::zeros(j.modulus, j.dimension, j.rows, j.cols);
    for e in &j.entries {
        if e.row >= j.rows || e.col >= j.cols {
            return Err(Error::ShapeMismatch(format!(
                "entry ({}, {}) outside {}x{}",
                e.row, e.col, j.rows, j.cols
            )));
        }
        let mut p = LaurentPoly::zero(j.modulus, j.dimension);
        for t in &e.terms {
            if t.exp.len() != j.dimension {
                return Err(Error::DimensionMismatch {
                    expected: j.dimension,
                    got: t.exp.len(),
                });
            }
            p = p.add(&LaurentPoly::monomial(
                j.modulus,
                j.dimension,
                Monomial(t.exp.clone()),
                t.coeff as i64,
            ))?;
        }
        m.set(e.row, e.col, p);
    }
    Ok(m)
}

pub fn map_to_json(theta: &SymplecticMap) -> MatrixJson {
    matrix_to_json(theta.matrix(), Some(theta.q()))
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct StageJson {
    pub kind: String,
    pub matrix: MatrixJson,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CertificateJson {
    pub family: String,
    pub p: u32,
    pub k: i64,
    pub copies: u32,
    pub claimed_order: u32,
    pub onsite: MatrixJson,
    pub stages: Vec<StageJson>,
    pub shift: MatrixJson,
    pub verified: bool,
}

pub fn certificate_to_json(cert: &OrderCertificate, verified: bool) -> CertificateJson {
    CertificateJson {
        family: "zp".into(),
        p: cert.target.modulus,
        k: cert.target.k,
        copies: cert.copies,
        claimed_order: cert.claimed_order,
        onsite: map_to_json(&cert.onsite),
        stages: cert
            .stages
            .iter()
            .map(|s| StageJson {
                kind: match s.kind {
                    StageKind::Elementary => "elementary".into(),
                    StageKind::DiagonalSign => "diagonal-sign".into(),
                },
                matrix: map_to_json(&s.map),
            })
            .collect(),
        shift: map_to_json(&cert.shift),
        verified,
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ExplicitHeaderJson {
    pub modulus: u32,
    pub lengths: Vec<u32>,
    pub block_rows: usize,
    pub block_cols: usize,
    pub wrapped: bool,
    pub nnz: usize,
}

/// Coordinate-list text: a JSON header line followed by "row col value"
/// lines in row-major order.
pub fn explicit_to_coo(map: &ExplicitMap) -> String {
    let header = ExplicitHeaderJson {
        modulus: map.modulus,
        lengths: map.shape.lengths.clone(),
        block_rows: map.block_rows,
        block_cols: map.block_cols,
        wrapped: map.wrapped,
        nnz: map.nnz(),
    };
    let mut out = serde_json::to_string(&header).expect("serializable header");
    out.push('\n');
    for (r, c, v) in map.triplets() {
        out.push_str(&format!("{r} {c} {v}\n"));
    }
    out
}
