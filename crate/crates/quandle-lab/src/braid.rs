//! The braid group B3 = < sig, tau | sig tau sig = tau sig tau > with a
//! decidable word problem via the reduced Burau representation, which is
//! faithful on three strands (Magnus-Peluso, "The group of formal power
//! series under substitution" era result; see Birman, "Braids, Links, and
//! Mapping Class Groups", Theorem 3.15). Matrix equality over Z[t, t^-1]
//! is therefore an exact equality certificate for braid words.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::exact::{LaurentMatrix, LaurentPoly};
use crate::fp::{verify_hom, OracleError, Presentation, WordOracle};
use crate::suciu;
use crate::words::{gen, parse_word_in, Generator, ParseError, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid words use only sig and tau; found {0:?}")]
    ForeignGenerator(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

pub fn sig() -> Generator {
    gen("sig")
}

pub fn tau() -> Generator {
    gen("tau")
}

/// A freely reduced word over {sig, tau}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord(Word);

impl BraidWord {
    pub fn new(w: Word) -> Result<Self, BraidError> {
        for l in w.letters() {
            if l.gen != sig() && l.gen != tau() {
                return Err(BraidError::ForeignGenerator(l.gen.name().to_string()));
            }
        }
        Ok(Self(w))
    }

    /// Parses the word DSL restricted to the braid alphabet; the Greek
    /// aliases from the parser work here too.
    pub fn parse(s: &str) -> Result<Self, BraidError> {
        Ok(Self(parse_word_in(s, &[sig(), tau()])?))
    }

    pub fn identity() -> Self {
        Self(Word::identity())
    }

    pub fn sigma() -> Self {
        Self(Word::generator(sig()))
    }

    pub fn tau_gen() -> Self {
        Self(Word::generator(tau()))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    pub fn pow(&self, n: i64) -> Self {
        Self(self.0.pow(n))
    }
}

impl std::ops::Mul for &BraidWord {
    type Output = BraidWord;
    fn mul(self, rhs: &BraidWord) -> BraidWord {
        BraidWord(&self.0 * &rhs.0)
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// B3 as a presentation over {sig, tau}.
pub fn b3_presentation() -> Presentation {
    Presentation::parse("< sig, tau | sig tau sig = tau sig tau >")
        .expect("fixed presentation parses")
}

fn poly(c: i64, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(e, c)
}

fn mat(rows: [[LaurentPoly; 2]; 2]) -> LaurentMatrix {
    let [r0, r1] = rows;
    LaurentMatrix::from_rows(vec![r0.to_vec(), r1.to_vec()]).expect("square 2x2")
}

/// sig -> [[-t, 1], [0, 1]].
fn burau_sigma() -> LaurentMatrix {
    mat([
        [poly(-1, 1), LaurentPoly::one()],
        [LaurentPoly::zero(), LaurentPoly::one()],
    ])
}

/// tau -> [[1, 0], [t, -t]].
fn burau_tau() -> LaurentMatrix {
    mat([
        [LaurentPoly::one(), LaurentPoly::zero()],
        [poly(1, 1), poly(-1, 1)],
    ])
}

fn burau_sigma_inv() -> LaurentMatrix {
    mat([
        [poly(-1, -1), poly(1, -1)],
        [LaurentPoly::zero(), LaurentPoly::one()],
    ])
}

fn burau_tau_inv() -> LaurentMatrix {
    mat([
        [LaurentPoly::one(), LaurentPoly::zero()],
        [LaurentPoly::one(), poly(-1, -1)],
    ])
}

/// Image of a braid word under the reduced Burau representation,
/// a 2x2 matrix over Z[t, t^-1].
pub fn burau(w: &BraidWord) -> LaurentMatrix {
    let mut acc = LaurentMatrix::identity(2);
    for l in w.word().letters() {
        let m = match (l.gen.name(), l.exp) {
            ("sig", 1) => burau_sigma(),
            ("sig", -1) => burau_sigma_inv(),
            ("tau", 1) => burau_tau(),
            ("tau", -1) => burau_tau_inv(),
            _ => unreachable!("BraidWord enforces the alphabet"),
        };
        acc = acc.mul(&m).expect("2x2 dimensions agree");
    }
    acc
}

/// Equality in B3, decided by comparing reduced Burau images exactly.
pub fn braid_eq(u: &BraidWord, v: &BraidWord) -> bool {
    burau(u) == burau(v)
}

/// Word oracle for B3 backed by the reduced Burau representation.
pub struct BurauOracle;

impl WordOracle for BurauOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, OracleError> {
        let bw = BraidWord::new(w.clone())
            .map_err(|_| OracleError::UnknownGenerator(w.to_string()))?;
        Ok(burau(&bw) == LaurentMatrix::identity(2))
    }

    fn describe(&self) -> String {
        "reduced Burau representation of B3".to_string()
    }
}

/// Images of the G_k generators in B3: x -> tau^-1 sig tau (tau^-1 sig)^(k-1),
/// y -> sig (tau^-1 sig)^(k-1), z -> (tau^-1 sig)^k tau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuciuImages {
    pub k: u64,
    pub x_img: BraidWord,
    pub y_img: BraidWord,
    pub z_img: BraidWord,
}

pub fn suciu_images(k: u64) -> SuciuImages {
    assert!(k >= 1, "the family is indexed by k >= 1");
    let s = BraidWord::sigma();
    let t = BraidWord::tau_gen();
    let ts = &t.inverse() * &s;
    let x_img = &(&(&t.inverse() * &s) * &t) * &ts.pow(k as i64 - 1);
    let y_img = &s * &ts.pow(k as i64 - 1);
    let z_img = &ts.pow(k as i64) * &t;
    SuciuImages { k, x_img, y_img, z_img }
}

impl SuciuImages {
    fn image_map(&self) -> std::collections::BTreeMap<Generator, Word> {
        [
            (gen("x"), self.x_img.word().clone()),
            (gen("y"), self.y_img.word().clone()),
            (gen("z"), self.z_img.word().clone()),
        ]
        .into_iter()
        .collect()
    }
}

/// Checks that the given images send both G_k relators to the identity of
/// B3 under the Burau oracle, i.e. that they define a homomorphism
/// G_k -> B3.
pub fn verify_images(k: u64, images: &SuciuImages) -> bool {
    verify_hom(
        &suciu::g_k(k),
        &b3_presentation(),
        &images.image_map(),
        &BurauOracle,
    )
    .expect("images are braid words over the B3 alphabet")
}

/// Certifies that the canonical images define a homomorphism G_k -> B3.
pub fn verify_suciu_iso(k: u64) -> bool {
    verify_images(k, &suciu_images(k))
}

/// Breadth-first surjectivity probe: searches products of at most `radius`
/// image letters for sig and tau. `true` certifies both are reached;
/// `false` only means "not found within the radius".
pub fn bounded_generation_check(k: u64, radius: usize) -> bool {
    let images = suciu_images(k);
    let steps: Vec<LaurentMatrix> = [&images.x_img, &images.y_img, &images.z_img]
        .into_iter()
        .flat_map(|w| [burau(w), burau(&w.inverse())])
        .collect();
    let sigma_m = burau_sigma();
    let tau_m = burau_tau();
    let mut seen: HashSet<LaurentMatrix> = HashSet::new();
    let mut frontier: VecDeque<(LaurentMatrix, usize)> = VecDeque::new();
    let start = LaurentMatrix::identity(2);
    seen.insert(start.clone());
    frontier.push_back((start, 0));
    let mut found_sigma = false;
    let mut found_tau = false;
    while let Some((m, depth)) = frontier.pop_front() {
        found_sigma |= m == sigma_m;
        found_tau |= m == tau_m;
        if found_sigma && found_tau {
            return true;
        }
        if depth == radius {
            continue;
        }
        for s in &steps {
            let next = m.mul(s).expect("2x2 dimensions agree");
            if seen.insert(next.clone()) {
                frontier.push_back((next, depth + 1));
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(s: &str) -> BraidWord {
        BraidWord::parse(s).unwrap()
    }

    #[test]
    fn burau_respects_the_braid_relation() {
        assert_eq!(burau(&bw("sig tau sig")), burau(&bw("tau sig tau")));
        assert!(braid_eq(&bw("sig tau sig"), &bw("tau sig tau")));
    }

    #[test]
    fn burau_of_identity_and_inverses() {
        assert_eq!(burau(&BraidWord::identity()), LaurentMatrix::identity(2));
        assert!(braid_eq(&bw("sig"), &bw("sig tau tau^-1")));
        assert_eq!(
            burau(&bw("sig sig^-1 tau tau^-1")),
            LaurentMatrix::identity(2)
        );
        // explicit inverse constants match matrix inverses
        assert_eq!(
            burau_sigma().mul(&burau_sigma_inv()).unwrap(),
            LaurentMatrix::identity(2)
        );
        assert_eq!(
            burau_tau().mul(&burau_tau_inv()).unwrap(),
            LaurentMatrix::identity(2)
        );
    }

    #[test]
    fn sigma_and_tau_differ() {
        assert!(!braid_eq(&bw("sig"), &bw("tau")));
        assert_ne!(burau(&bw("sig")), burau(&bw("tau")));
    }

    #[test]
    fn greek_aliases_parse() {
        assert_eq!(bw("σ τ σ"), bw("sig tau sig"));
    }

    #[test]
    fn foreign_generators_rejected() {
        assert!(matches!(
            BraidWord::parse("sig q"),
            Err(BraidError::Parse(_))
        ));
        let w = crate::words::parse_word("x").unwrap();
        assert!(matches!(
            BraidWord::new(w),
            Err(BraidError::ForeignGenerator(_))
        ));
    }

    #[test]
    fn image_words_at_small_k() {
        let im1 = suciu_images(1);
        assert_eq!(im1.x_img, bw("tau^-1 sig tau"));
        assert_eq!(im1.y_img, bw("sig"));
        assert_eq!(im1.z_img, bw("tau^-1 sig tau"));
        // x and z images coincide as words at k = 1
        assert!(braid_eq(&im1.x_img, &im1.z_img));

        let im2 = suciu_images(2);
        assert_eq!(im2.y_img, bw("sig tau^-1 sig"));
        // the tau pair cancels: x image at k = 2 reduces to tau^-1 sig^2
        assert_eq!(im2.x_img, bw("tau^-1 sig^2"));
        assert_eq!(im2.z_img, bw("tau^-1 sig tau^-1 sig tau"));
    }

    #[test]
    fn image_exponent_sums_agree() {
        // all three generators are conjugate meridians, so their images
        // must share one abelianization class
        for k in 1..=8 {
            let im = suciu_images(k);
            for w in [&im.x_img, &im.y_img, &im.z_img] {
                let total = w.word().exponent_sum(&sig()) + w.word().exponent_sum(&tau());
                assert_eq!(total, 1, "k = {k}, word {w}");
            }
        }
    }

    #[test]
    fn images_define_homomorphisms() {
        for k in 1..=12 {
            assert!(verify_suciu_iso(k), "k = {k}");
        }
    }

    #[test]
    fn corrupted_images_fail() {
        let mut im = suciu_images(2);
        im.x_img = BraidWord::sigma();
        assert!(!verify_images(2, &im));
    }

    #[test]
    fn generation_search_small_k() {
        assert!(!bounded_generation_check(1, 0));
        assert!(bounded_generation_check(1, 4));
        assert!(bounded_generation_check(2, 6));
    }
}
