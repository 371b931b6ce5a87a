//! Finitely presented groups: abelianization, cyclic quotient kernels,
//! presentation simplification, and coset enumeration.

mod oracle;
mod schreier;
mod tietze;
mod todd_coxeter;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{smith_normal_form, IntMatrix};
use crate::words::{
    parse_presentation, Generator, ParseError, PresRelation, Word,
};

pub use oracle::{verify_hom, AbelianizationOracle, CosetTableOracle, OracleError, WordOracle};
pub use schreier::{kernel_presentation, SchreierRewriter};
pub use tietze::tietze_simplify;
pub use todd_coxeter::{todd_coxeter, CosetTable, Enumeration};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("relator uses generator {0:?} which is not in the alphabet")]
    UnknownGenerator(String),
    #[error("target generator {0:?} is not in the alphabet")]
    UnknownTarget(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("word does not map to zero under the homomorphism: {word} has degree {degree}")]
    RelatorNotKilled { word: String, degree: i64 },
    #[error("word is not in the kernel: {word} has degree {degree}")]
    WordNotInKernel { word: String, degree: i64 },
    #[error("degree map does not generate Z/{0}")]
    DegreesDoNotGenerate(u64),
    #[error("no single generator has degree coprime to {0}; a power transversal needs one")]
    NoCoprimeTransversal(u64),
    #[error("modulus 0 (an infinite cyclic quotient) is not supported here")]
    InfiniteModulus,
    #[error("invariant factor does not fit a machine integer")]
    FactorOverflow,
    #[error("word-problem oracle failed: {0}")]
    OracleFailure(String),
}

/// A finite presentation: an ordered alphabet, freely reduced relators, and
/// an optional distinguished meridian generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
    meridian: Option<Generator>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for r in &relators {
            for l in r.letters() {
                if !generators.contains(&l.gen) {
                    return Err(GroupError::UnknownGenerator(l.gen.name().to_string()));
                }
            }
        }
        Ok(Self {
            generators,
            relators,
            meridian: None,
        })
    }

    /// Parses `< g1, g2 | rel1, w1 = w2 >`; equations become relators.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let parsed = parse_presentation(s)?;
        let relators = parsed
            .relations
            .iter()
            .map(PresRelation::as_relator)
            .collect();
        Self::new(parsed.generators, relators)
    }

    pub fn with_meridian(mut self, meridian: Generator) -> Result<Self, GroupError> {
        if !self.generators.contains(&meridian) {
            return Err(GroupError::UnknownTarget(meridian.name().to_string()));
        }
        self.meridian = Some(meridian);
        Ok(self)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridian(&self) -> Option<&Generator> {
        self.meridian.as_ref()
    }

    /// Relator exponent-sum matrix: one row per relator, one column per
    /// generator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for (j, g) in self.generators.iter().enumerate() {
                m.set(i, j, BigInt::from(r.exponent_sum(g)));
            }
        }
        m
    }

    /// Invariant factors of the abelianization, one entry per generator.
    pub fn abelianization(&self) -> InvariantFactors {
        let diag = smith_normal_form(&self.exponent_matrix());
        let n = self.generators.len();
        let mut factors = diag;
        factors.truncate(n);
        factors.resize(n, BigInt::zero());
        InvariantFactors { factors }
    }

    /// Appends g^r for each target generator; r = 1 kills the targets.
    pub fn adjoin_power_relators(
        &self,
        r: u64,
        targets: &[Generator],
    ) -> Result<Presentation, GroupError> {
        assert!(r >= 1, "power relators need r >= 1");
        let mut relators = self.relators.clone();
        for g in targets {
            if !self.generators.contains(g) {
                return Err(GroupError::UnknownTarget(g.name().to_string()));
            }
            relators.push(Word::generator(g.clone()).pow(r as i64));
        }
        Ok(Presentation {
            generators: self.generators.clone(),
            relators,
            meridian: self.meridian.clone(),
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.name().to_string()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// Invariant factors d1 | d2 | ... of a finitely generated abelian group,
/// one per generator of the presenting matrix; zeros are free factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    factors: Vec<BigInt>,
}

impl InvariantFactors {
    pub fn from_factors(factors: Vec<BigInt>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Factors greater than 1, i.e. the torsion part.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }

    /// Number of zero factors, i.e. the free rank.
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    /// Group isomorphism test: same torsion chain and same free rank.
    pub fn is_isomorphic_to(&self, other: &InvariantFactors) -> bool {
        self.torsion() == other.torsion() && self.rank() == other.rank()
    }

    /// True for the cyclic group Z/n (n >= 2): torsion [n], rank 0.
    pub fn is_cyclic_of_order(&self, n: u64) -> bool {
        self.rank() == 0 && self.torsion() == vec![BigInt::from(n)]
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0 && self.torsion().is_empty()
    }

    /// Order of the group when finite: product of torsion factors.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank() > 0 {
            return None;
        }
        Some(
            self.torsion()
                .into_iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    pub fn to_report(&self) -> Result<AbelianizationReport, GroupError> {
        let torsion = self
            .torsion()
            .iter()
            .map(|d| d.to_i64().ok_or(GroupError::FactorOverflow))
            .collect::<Result<_, _>>()?;
        Ok(AbelianizationReport {
            torsion,
            rank: self.rank(),
        })
    }
}

impl fmt::Display for InvariantFactors {
    /// `Z/4`, `Z ⊕ Z/2`, `Z^2`, or `trivial`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let rank = self.rank();
        if rank == 1 {
            parts.push("Z".to_string());
        } else if rank > 1 {
            parts.push(format!("Z^{rank}"));
        }
        for d in self.torsion() {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// JSON-friendly abelianization summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationReport {
    pub torsion: Vec<i64>,
    pub rank: usize,
}

/// JSON-friendly presentation invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub generators: usize,
    pub relators: usize,
    pub abelianization: AbelianizationReport,
}

impl InvariantReport {
    pub fn of(p: &Presentation) -> Result<Self, GroupError> {
        Ok(Self {
            generators: p.generators().len(),
            relators: p.relators().len(),
            abelianization: p.abelianization().to_report()?,
        })
    }
}

/// A homomorphism onto Z/r (r >= 1) given by generator degrees; every relator
/// must map to zero, which the constructor verifies.
#[derive(Clone, Debug)]
pub struct CyclicHom {
    source: Presentation,
    modulus: u64,
    degrees: BTreeMap<Generator, i64>,
}

impl CyclicHom {
    pub fn new(
        source: Presentation,
        modulus: u64,
        degrees: BTreeMap<Generator, i64>,
    ) -> Result<Self, GroupError> {
        for g in source.generators() {
            if !degrees.contains_key(g) {
                return Err(GroupError::UnknownTarget(g.name().to_string()));
            }
        }
        let hom = Self {
            source,
            modulus,
            degrees,
        };
        for r in hom.source.relators() {
            let d = hom.degree(r);
            if d != 0 {
                return Err(GroupError::RelatorNotKilled {
                    word: r.to_string(),
                    degree: d,
                });
            }
        }
        Ok(hom)
    }

    /// The knot-theoretic map sending every generator to 1 mod r.
    pub fn all_degree_one(source: Presentation, modulus: u64) -> Result<Self, GroupError> {
        let degrees = source
            .generators()
            .iter()
            .map(|g| (g.clone(), 1))
            .collect();
        Self::new(source, modulus, degrees)
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degrees(&self) -> &BTreeMap<Generator, i64> {
        &self.degrees
    }

    /// Image of a word, reduced into 0..r when r >= 1.
    pub fn degree(&self, w: &Word) -> i64 {
        let raw: i64 = w
            .letters()
            .iter()
            .map(|l| self.degrees[&l.gen] * l.exp as i64)
            .sum();
        if self.modulus == 0 {
            raw
        } else {
            raw.rem_euclid(self.modulus as i64)
        }
    }
}
