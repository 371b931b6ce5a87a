//! Heuristic Tietze simplification. Never increases generator or relator
//! counts; deterministic for a given budget; makes no minimality claim.

use std::collections::BTreeMap;

use crate::words::{Generator, Letter, Word};

use super::Presentation;

/// Simplifies a presentation by cyclic reduction, duplicate removal,
/// elimination of generators occurring exactly once in some relator, and
/// substitution of short relators into longer ones. `budget` bounds the
/// number of rewriting steps; exhaustion returns the best presentation
/// found so far.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Presentation {
    let mut state = State {
        generators: p.generators().to_vec(),
        relators: p.relators().to_vec(),
        meridian: p.meridian().cloned(),
    };
    state.normalize();
    let mut budget = budget;
    while budget > 0 {
        if state.shorten_once() {
            budget -= 1;
            state.normalize();
            continue;
        }
        if state.eliminate_once() {
            budget -= 1;
            state.normalize();
            continue;
        }
        break;
    }
    let meridian = state.meridian.clone();
    let out = Presentation::new(state.generators, state.relators)
        .expect("simplification keeps relators over the alphabet");
    match meridian {
        Some(m) => out.with_meridian(m).expect("meridian survived"),
        None => out,
    }
}

struct State {
    generators: Vec<Generator>,
    relators: Vec<Word>,
    meridian: Option<Generator>,
}

impl State {
    /// Cyclically reduces, drops trivial relators, removes duplicates up to
    /// rotation and inversion, and sorts by (length, letters).
    fn normalize(&mut self) {
        let mut seen: Vec<Vec<Letter>> = Vec::new();
        let mut kept: Vec<Word> = Vec::new();
        for r in &self.relators {
            let r = r.cyclic_reduce();
            if r.is_identity() {
                continue;
            }
            let key = canonical_cyclic(&r);
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            kept.push(r);
        }
        kept.sort_by(|a, b| (a.len(), a.letters()).cmp(&(b.len(), b.letters())));
        self.relators = kept;
    }

    /// One generator elimination: find a relator containing some generator
    /// exactly once, solve for it, substitute everywhere, drop both.
    /// Candidates are tried shortest relator first.
    fn eliminate_once(&mut self) -> bool {
        // relators are sorted by length, so the first hit is minimal;
        // latest-declared generator wins so the early alphabet survives
        let mut choice: Option<(usize, Generator)> = None;
        'outer: for (ri, r) in self.relators.iter().enumerate() {
            for g in self.generators.iter().rev() {
                if r.occurrences(g) == 1 {
                    choice = Some((ri, g.clone()));
                    break 'outer;
                }
            }
        }
        let Some((ri, g)) = choice else {
            return false;
        };
        let r = self.relators[ri].clone();
        let pos = r
            .letters()
            .iter()
            .position(|l| l.gen == g)
            .expect("generator occurs in chosen relator");
        let exp = r.letters()[pos].exp;
        let u = Word::from_letters(r.letters()[..pos].iter().cloned());
        let v = Word::from_letters(r.letters()[pos + 1..].iter().cloned());
        // u g^e v = 1  =>  g^e = u^-1 v^-1  =>  g = (u^-1 v^-1)^e
        let image = (&u.inverse() * &v.inverse()).pow(exp as i64);
        let mut images: BTreeMap<Generator, Word> = self
            .generators
            .iter()
            .map(|h| (h.clone(), Word::generator(h.clone())))
            .collect();
        images.insert(g.clone(), image);
        self.relators.remove(ri);
        for rel in &mut self.relators {
            *rel = rel
                .substitute(&images)
                .expect("every generator has an image");
        }
        self.generators.retain(|h| h != &g);
        if self.meridian.as_ref() == Some(&g) {
            self.meridian = None;
        }
        true
    }

    /// One subword substitution: replace a long piece of one relator with
    /// the shorter complement from another. Scans deterministically and
    /// applies the first strict improvement.
    fn shorten_once(&mut self) -> bool {
        for ti in 0..self.relators.len() {
            for si in 0..self.relators.len() {
                if si == ti {
                    continue;
                }
                let target = &self.relators[ti];
                let source = &self.relators[si];
                if let Some(improved) = shorten_with(target, source) {
                    self.relators[ti] = improved;
                    return true;
                }
            }
        }
        false
    }
}

/// Lexicographically least rotation of the relator or its inverse; relators
/// are equivalent under both, so this is a canonical form.
fn canonical_cyclic(w: &Word) -> Vec<Letter> {
    let mut best: Option<Vec<Letter>> = None;
    for word in [w.clone(), w.inverse()] {
        let letters = word.letters();
        let n = letters.len();
        for s in 0..n {
            let rot: Vec<Letter> = (0..n).map(|i| letters[(s + i) % n].clone()).collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Tries to shorten `target` using `source`: if more than half of some
/// rotation of source (or its inverse) appears inside a rotation of target,
/// the matched piece equals the inverse of the unmatched remainder, which
/// is strictly shorter. Returns the improved relator.
fn shorten_with(target: &Word, source: &Word) -> Option<Word> {
    let n = target.len();
    let l = source.len();
    if l < 2 || n == 0 {
        return None;
    }
    let t: Vec<Letter> = target.letters().to_vec();
    for src in [source.clone(), source.inverse()] {
        let s = src.letters();
        for rot in 0..l {
            // longest match wins; anything over half the source shortens
            let max_m = l.min(n);
            for m in (l / 2 + 1..=max_m).rev() {
                'starts: for start in 0..n {
                    for i in 0..m {
                        if t[(start + i) % n] != s[(rot + i) % l] {
                            continue 'starts;
                        }
                    }
                    // target rotated to put the match first
                    let rotated: Vec<Letter> =
                        (0..n).map(|i| t[(start + i) % n].clone()).collect();
                    let remainder: Vec<Letter> =
                        (m..l).map(|i| s[(rot + i) % l].clone()).collect();
                    let replacement = Word::from_letters(remainder).inverse();
                    let tail = Word::from_letters(rotated[m..].iter().cloned());
                    let improved = (&replacement * &tail).cyclic_reduce();
                    if improved.len() < n {
                        return Some(improved);
                    }
                }
            }
        }
    }
    None
}
