//! Word-equality oracles and homomorphism verification.
//!
//! A presented group has no decidable word problem in general, so every
//! equality check is delegated to an oracle that is sound for its stated
//! domain: a complete coset table decides equality in a finite group, and
//! the exponent-sum oracle decides it in an abelian group (and soundly
//! refutes it in any group).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{in_row_space, IntMatrix};
use crate::words::{Generator, Word, WordError};

use super::{todd_coxeter, CosetTable, Enumeration, Presentation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("word uses generator {0:?} outside the oracle's alphabet")]
    UnknownGenerator(String),
    #[error("no image given for source generator {0:?}")]
    MissingImage(String),
    #[error("coset enumeration exceeded {bound} cosets; the oracle cannot be built")]
    EnumerationExceeded { bound: usize },
}

/// Decides whether a word is the identity in a fixed target group.
pub trait WordOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, OracleError>;

    /// Short label used in verification reports.
    fn describe(&self) -> String;
}

/// Exact word-problem oracle for a finite group, backed by a complete coset
/// table over the trivial subgroup: a word is trivial iff it fixes coset 0.
pub struct CosetTableOracle {
    table: CosetTable,
}

impl CosetTableOracle {
    pub fn new(target: &Presentation, max_cosets: usize) -> Result<Self, OracleError> {
        match todd_coxeter(target, &[], max_cosets) {
            Enumeration::Complete(table) => Ok(Self { table }),
            Enumeration::Exceeded { bound } => Err(OracleError::EnumerationExceeded { bound }),
        }
    }

    pub fn from_table(table: CosetTable) -> Self {
        Self { table }
    }

    pub fn order(&self) -> usize {
        self.table.index()
    }
}

impl WordOracle for CosetTableOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, OracleError> {
        for g in w.support() {
            if !self.table.generators().contains(&g) {
                return Err(OracleError::UnknownGenerator(g.name().to_string()));
            }
        }
        Ok(self.table.apply(0, w) == 0)
    }

    fn describe(&self) -> String {
        format!("coset table of order {}", self.table.index())
    }
}

/// Exponent-sum oracle: a word is declared trivial iff its exponent vector
/// lies in the row space of the relator matrix. Exact for abelian targets;
/// for nonabelian targets a `false` is still a proof of nontriviality.
pub struct AbelianizationOracle {
    generators: Vec<Generator>,
    relator_rows: IntMatrix,
}

impl AbelianizationOracle {
    pub fn new(target: &Presentation) -> Self {
        Self {
            generators: target.generators().to_vec(),
            relator_rows: target.exponent_matrix(),
        }
    }
}

impl WordOracle for AbelianizationOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, OracleError> {
        let mut v = vec![BigInt::from(0); self.generators.len()];
        for g in w.support() {
            let Some(i) = self.generators.iter().position(|h| *h == g) else {
                return Err(OracleError::UnknownGenerator(g.name().to_string()));
            };
            v[i] = BigInt::from(w.exponent_sum(&g));
        }
        Ok(in_row_space(&self.relator_rows, &v))
    }

    fn describe(&self) -> String {
        format!("exponent sums over {} generators", self.generators.len())
    }
}

/// Checks that `images` defines a homomorphism from `source` into the group
/// presented by `target`: every source relator must map to a word the
/// oracle certifies as trivial. Returns false with nothing guessed if some
/// relator image is nontrivial.
pub fn verify_hom(
    source: &Presentation,
    target: &Presentation,
    images: &BTreeMap<Generator, Word>,
    oracle: &dyn WordOracle,
) -> Result<bool, OracleError> {
    for g in source.generators() {
        let img = images
            .get(g)
            .ok_or_else(|| OracleError::MissingImage(g.name().to_string()))?;
        for l in img.letters() {
            if !target.generators().contains(&l.gen) {
                return Err(OracleError::UnknownGenerator(l.gen.name().to_string()));
            }
        }
    }
    for r in source.relators() {
        let image = r.substitute(images).map_err(|e| match e {
            WordError::MissingImage(name) => OracleError::MissingImage(name),
            WordError::BadGeneratorName(name) => OracleError::UnknownGenerator(name),
        })?;
        if !oracle.is_identity(&image)? {
            return Ok(false);
        }
    }
    Ok(true)
}
