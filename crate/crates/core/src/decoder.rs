//! One-step majority-logic decoding from per-coordinate orthogonal check sets.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::code::{Code, GeneratorMatrix};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::ortho::{build_all, OrthoError, OrthogonalCheckSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("received word has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("decoder table: {0}")]
    BadTable(String),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
}

/// Check sets for every coordinate plus a dual basis for membership tests.
#[derive(Debug, Clone)]
pub struct DecoderTable {
    field: Field,
    sets: Vec<OrthogonalCheckSet>,
    dual: Matrix,
    j_min: usize,
}

impl DecoderTable {
    /// Validates that `sets[i]` is centered at `i` and orthogonal there,
    /// and that every check annihilates the generator.
    pub fn new(
        field: &Field,
        generator: &GeneratorMatrix,
        sets: Vec<OrthogonalCheckSet>,
    ) -> Result<Self, DecodeError> {
        let n = generator.n();
        if sets.len() != n {
            return Err(DecodeError::BadTable(format!(
                "{} check sets for {n} coordinates",
                sets.len()
            )));
        }
        for (i, set) in sets.iter().enumerate() {
            if set.center() != i {
                return Err(DecodeError::BadTable(format!(
                    "set {i} is centered at {}",
                    set.center()
                )));
            }
            if !set.is_orthogonal() {
                return Err(DecodeError::BadTable(format!(
                    "set {i} is not orthogonal on its center"
                )));
            }
            for chk in set.checks() {
                if chk.positions().any(|p| p >= n) || !chk.annihilates(&generator.matrix, field) {
                    return Err(DecodeError::BadTable(format!(
                        "set {i} holds a word outside the dual code"
                    )));
                }
            }
        }
        let j_min = sets.iter().map(OrthogonalCheckSet::len).min().unwrap_or(0);
        Ok(DecoderTable {
            field: field.clone(),
            sets,
            dual: generator.dual_basis(field),
            j_min,
        })
    }

    pub fn from_code(code: &Code) -> Result<Self, DecodeError> {
        let sets = build_all(code)?;
        DecoderTable::new(code.field(), code.generator(), sets)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn sets(&self) -> &[OrthogonalCheckSet] {
        &self.sets
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn j_min(&self) -> usize {
        self.j_min
    }

    /// Errors of at most this weight are always corrected.
    pub fn t_max(&self) -> usize {
        self.j_min / 2
    }

    /// True when every dual-basis syndrome of `word` vanishes.
    pub fn is_codeword(&self, word: &[Elem]) -> bool {
        self.dual
            .row_iter()
            .all(|row| self.field.dot(row, word).is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub corrected: Vec<Elem>,
    pub estimate: Vec<Elem>,
    /// Votes per coordinate, keyed by syndrome value (zero included).
    pub tallies: Vec<BTreeMap<Elem, usize>>,
    pub success: bool,
}

/// Majority vote over the syndromes of the checks centered at `pos`. A
/// nonzero value wins only with more than half of the votes; otherwise 0.
pub fn estimate_error_at(
    received: &[Elem],
    set: &OrthogonalCheckSet,
    f: &Field,
) -> (Elem, BTreeMap<Elem, usize>) {
    let mut tally = BTreeMap::new();
    for chk in set.checks() {
        *tally.entry(chk.syndrome(received, f)).or_insert(0) += 1;
    }
    let threshold = set.len() / 2 + 1;
    let winner = tally
        .iter()
        .find(|(v, &c)| !v.is_zero() && c >= threshold)
        .map(|(&v, _)| v)
        .unwrap_or(Elem::ZERO);
    (winner, tally)
}

pub fn decode(received: &[Elem], table: &DecoderTable) -> Result<DecodeResult, DecodeError> {
    let n = table.n();
    if received.len() != n {
        return Err(DecodeError::LengthMismatch {
            expected: n,
            got: received.len(),
        });
    }
    let f = table.field();
    let (estimate, tallies): (Vec<Elem>, Vec<_>) = table
        .sets()
        .iter()
        .map(|set| estimate_error_at(received, set, f))
        .unzip();
    let corrected: Vec<Elem> = received
        .iter()
        .zip(&estimate)
        .map(|(&r, &e)| f.sub(r, e))
        .collect();
    let success = table.is_codeword(&corrected);
    Ok(DecodeResult {
        corrected,
        estimate,
        tallies,
        success,
    })
}
