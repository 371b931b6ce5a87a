//! Text syntax for words and presentations.
//!
//! word   := term*                      (empty input is the identity)
//! term   := atom ('^' '-'? digits)?
//! atom   := ident | '1' | '(' word ')'
//! ident  := letter (letter | digit | '_')*
//!
//! presentation := '<' ident,* '|' rel,* '>' with rel := word | word '=' word
//!
//! Tokens may be separated by any whitespace; juxtaposition is free-group
//! multiplication. The Unicode letters σ and τ are accepted as aliases for
//! the braid generators `sig` and `tau`.

use thiserror::Error;

use super::{Equation, Generator, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Caret,
    Minus,
    LParen,
    RParen,
    Lt,
    Gt,
    Pipe,
    Comma,
    Eq,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    end: usize,
}

fn lex(s: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let bytes = s.as_bytes();
    let mut iter = s.char_indices().peekable();
    while let Some(&(i, c)) = iter.peek() {
        match c {
            c if c.is_whitespace() => {
                iter.next();
            }
            'σ' | 'τ' => {
                iter.next();
                let name = if c == 'σ' { "sig" } else { "tau" };
                toks.push((i, Tok::Ident(name.to_string())));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                let mut end = i;
                while let Some(&(j, d)) = iter.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = j + d.len_utf8();
                        iter.next();
                    } else {
                        break;
                    }
                }
                toks.push((start, Tok::Ident(s[start..end].to_string())));
            }
            c if c.is_ascii_digit() => {
                let start = i;
                let mut end = i;
                while let Some(&(j, d)) = iter.peek() {
                    if d.is_ascii_digit() {
                        end = j + 1;
                        iter.next();
                    } else {
                        break;
                    }
                }
                let n: u64 = s[start..end]
                    .parse()
                    .map_err(|_| ParseError::new(start, "integer too large"))?;
                toks.push((start, Tok::Int(n)));
            }
            _ => {
                iter.next();
                let tok = match c {
                    '^' => Tok::Caret,
                    '-' => Tok::Minus,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '<' => Tok::Lt,
                    '>' => Tok::Gt,
                    '|' => Tok::Pipe,
                    ',' => Tok::Comma,
                    '=' => Tok::Eq,
                    other => {
                        return Err(ParseError::new(i, format!("unexpected character {other:?}")))
                    }
                };
                toks.push((i, tok));
            }
        }
    }
    Ok(Lexer {
        toks,
        end: bytes.len(),
    })
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    alphabet: Option<&'a [Generator]>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&(usize, Tok)> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        let off = self.offset();
        match self.bump() {
            Some((_, t)) if t == want => Ok(()),
            _ => Err(ParseError::new(off, format!("expected {what}"))),
        }
    }

    fn mk_generator(&self, name: &str, off: usize) -> Result<Generator, ParseError> {
        let g = Generator::new(name).map_err(|e| ParseError::new(off, e.to_string()))?;
        if let Some(alpha) = self.alphabet {
            if !alpha.contains(&g) {
                return Err(ParseError::new(off, format!("unknown generator {name:?}")));
            }
        }
        Ok(g)
    }

    /// Parses terms until a token that cannot start one.
    fn word(&mut self) -> Result<Word, ParseError> {
        let mut letters: Vec<Letter> = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Int(1)) => {
                    let part = self.term()?;
                    letters.extend(part.letters().iter().cloned());
                }
                _ => break,
            }
        }
        Ok(Word::from_letters(letters))
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.exponent()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let off = self.offset();
        match self.bump().cloned() {
            Some((o, Tok::Ident(name))) => Ok(Word::generator(self.mk_generator(&name, o)?)),
            Some((_, Tok::Int(1))) => Ok(Word::identity()),
            Some((_, Tok::LParen)) => {
                let w = self.word()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(w)
            }
            _ => Err(ParseError::new(off, "expected a generator, '1', or '('")),
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let off = self.offset();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some((_, Tok::Int(n))) => {
                let n = i64::try_from(*n)
                    .map_err(|_| ParseError::new(off, "exponent too large"))?;
                Ok(if neg { -n } else { n })
            }
            _ => Err(ParseError::new(off, "expected an integer exponent")),
        }
    }

    fn done(&mut self, what: &str) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(ParseError::new(self.offset(), format!("unexpected input after {what}")))
        } else {
            Ok(())
        }
    }
}

/// Parses a word; any well-formed generator name is accepted.
pub fn parse_word(s: &str) -> Result<Word, ParseError> {
    parse_with(s, None)
}

/// Parses a word whose generators must come from `alphabet`.
pub fn parse_word_in(s: &str, alphabet: &[Generator]) -> Result<Word, ParseError> {
    parse_with(s, Some(alphabet))
}

fn parse_with(s: &str, alphabet: Option<&[Generator]>) -> Result<Word, ParseError> {
    let lexer = lex(s)?;
    let mut p = Parser {
        toks: &lexer.toks,
        pos: 0,
        end: lexer.end,
        alphabet,
    };
    let w = p.word()?;
    p.done("word")?;
    Ok(w)
}

/// One relation of a presentation: a bare relator or an equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresRelation {
    Relator(Word),
    Equation(Equation),
}

impl PresRelation {
    /// The relator form: an equation w1 = w2 becomes w1 * w2^-1.
    pub fn as_relator(&self) -> Word {
        match self {
            PresRelation::Relator(w) => w.clone(),
            PresRelation::Equation(eq) => eq.as_relator(),
        }
    }
}

/// Raw parse of `< g1, g2 | rel1, rel2 >` before any group-level checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<PresRelation>,
}

pub fn parse_presentation(s: &str) -> Result<ParsedPresentation, ParseError> {
    let lexer = lex(s)?;
    let mut p = Parser {
        toks: &lexer.toks,
        pos: 0,
        end: lexer.end,
        alphabet: None,
    };
    p.expect(&Tok::Lt, "'<'")?;

    let mut generators: Vec<Generator> = Vec::new();
    loop {
        match p.peek() {
            Some(Tok::Pipe) => break,
            Some(Tok::Ident(_)) => {
                let off = p.offset();
                if let Some((o, Tok::Ident(name))) = p.bump().cloned() {
                    let g = Generator::new(&name)
                        .map_err(|e| ParseError::new(o, e.to_string()))?;
                    if generators.contains(&g) {
                        return Err(ParseError::new(off, format!("duplicate generator {name:?}")));
                    }
                    generators.push(g);
                }
                if p.peek() == Some(&Tok::Comma) {
                    p.bump();
                }
            }
            _ => return Err(ParseError::new(p.offset(), "expected a generator name or '|'")),
        }
    }
    p.expect(&Tok::Pipe, "'|'")?;

    let mut relations = Vec::new();
    loop {
        if p.peek() == Some(&Tok::Gt) {
            break;
        }
        // rebind alphabet for relator words
        p.alphabet = Some(&generators);
        let lhs = p.word()?;
        let rel = if p.peek() == Some(&Tok::Eq) {
            p.bump();
            let rhs = p.word()?;
            PresRelation::Equation(Equation::new(lhs, rhs))
        } else {
            PresRelation::Relator(lhs)
        };
        p.alphabet = None;
        relations.push(rel);
        match p.peek() {
            Some(Tok::Comma) => {
                p.bump();
            }
            Some(Tok::Gt) => break,
            _ => return Err(ParseError::new(p.offset(), "expected ',' or '>'")),
        }
    }
    p.expect(&Tok::Gt, "'>'")?;
    p.done("presentation")?;
    Ok(ParsedPresentation {
        generators,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::gen;

    #[test]
    fn parses_plain_words() {
        let w = parse_word("x y^-1 z").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_string(), "x y^-1 z");
    }

    #[test]
    fn parses_groups_and_powers() {
        let w = parse_word("(x y^-1)^2 z^-1").unwrap();
        assert_eq!(w.to_string(), "x y^-1 x y^-1 z^-1");
        assert_eq!(parse_word("x^0").unwrap(), Word::identity());
        assert_eq!(parse_word("(x y) ^ 3").unwrap(), parse_word("x y x y x y").unwrap());
    }

    #[test]
    fn empty_and_identity_literals() {
        assert_eq!(parse_word("").unwrap(), Word::identity());
        assert_eq!(parse_word("1").unwrap(), Word::identity());
        assert_eq!(parse_word("x 1 y").unwrap(), parse_word("x y").unwrap());
    }

    #[test]
    fn reduction_happens_at_parse_time() {
        assert_eq!(parse_word("x x^-1").unwrap(), Word::identity());
        assert_eq!(parse_word("y x x^-1 y").unwrap(), parse_word("y^2").unwrap());
    }

    #[test]
    fn error_offsets() {
        let e = parse_word("x ^").unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse_word("x )").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse_word("3x").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_word("x @").unwrap_err();
        assert_eq!(e.offset, 2);
    }

    #[test]
    fn alphabet_checked_parse() {
        let alpha = vec![gen("x"), gen("y")];
        assert!(parse_word_in("x y^-1", &alpha).is_ok());
        let e = parse_word_in("x z", &alpha).unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.message.contains("unknown generator"));
    }

    #[test]
    fn sigma_tau_aliases() {
        assert_eq!(parse_word("σ τ^-1").unwrap(), parse_word("sig tau^-1").unwrap());
    }

    #[test]
    fn parses_presentations() {
        let p = parse_presentation("< x, y | x y x = y x y >").unwrap();
        assert_eq!(p.generators, vec![gen("x"), gen("y")]);
        assert_eq!(p.relations.len(), 1);
        let r = p.relations[0].as_relator();
        assert_eq!(r, parse_word("x y x y^-1 x^-1 y^-1").unwrap());

        let p = parse_presentation("< a | a^5 >").unwrap();
        assert_eq!(p.relations[0].as_relator(), parse_word("a^5").unwrap());

        let free = parse_presentation("< a, b | >").unwrap();
        assert!(free.relations.is_empty());
    }

    #[test]
    fn presentation_relators_use_declared_alphabet() {
        let e = parse_presentation("< x | y >").unwrap_err();
        assert!(e.message.contains("unknown generator"));
        let e = parse_presentation("< x, x | >").unwrap_err();
        assert!(e.message.contains("duplicate"));
    }
}
