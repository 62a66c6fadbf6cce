//! Finite group presentations: parsing, validation, normalization, and
//! abelian invariants.
//!
//! The text grammar is
//!
//! ```text
//! presentation := '<' name (',' name)* (';' | '|') [word (',' word)*] '>'
//! word         := atom+            (juxtaposition is concatenation)
//! atom         := name ('^' '-'? digits)?
//! name         := alpha (alnum | '_' | '\'')* ('@' '-'? digits)*
//! ```
//!
//! Whitespace is insignificant between tokens. Both `;` and `|` separate
//! generators from relators. The `@` suffixes let words over invented
//! alphabets (level-subscripted generators) round-trip through text.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::snf::{self, IntMatrix};
use crate::word::{Alphabet, Letter, Word, WordError};

/// A finite presentation: generator alphabet plus relator list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    one_relator: bool,
}

impl Presentation {
    /// `relators` are already freely reduced by construction of [`Word`].
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Presentation {
        let one_relator = relators.len() == 1;
        Presentation {
            alphabet,
            relators,
            one_relator,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_one_relator(&self) -> bool {
        self.one_relator
    }

    /// Canonical text form, e.g. `< a, b ; a^2 >`.
    pub fn to_text(&self) -> String {
        let gens = self.alphabet.names().join(", ");
        let rels = self
            .relators
            .iter()
            .map(|r| r.display(&self.alphabet).to_string())
            .collect::<Vec<_>>()
            .join(", ");
        if rels.is_empty() {
            format!("< {} ; >", gens)
        } else {
            format!("< {} ; {} >", gens, rels)
        }
    }

    /// Cyclically reduces the single relator and factors it as a maximal
    /// proper power.
    pub fn normalize_relator(&self) -> Result<NormalizedRelator, PresentationError> {
        if !self.one_relator {
            return Err(PresentationError::NotOneRelator {
                relator_count: self.relators.len(),
            });
        }
        let relator = &self.relators[0];
        if relator.is_empty() {
            return Err(PresentationError::TrivialRelator);
        }
        let (core, conjugator) = relator.cyclic_reduce();
        if core.is_empty() {
            return Err(PresentationError::TrivialRelator);
        }
        let (root, s) = core.primitive_root().expect("core is non-empty");
        Ok(NormalizedRelator {
            core,
            root,
            s,
            conjugator,
        })
    }

    /// Invariant factors of the relator exponent-sum matrix: the
    /// abelianization is `Z^free_rank ⊕ Z/t_1 ⊕ …` with `t_i | t_{i+1}`.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        let matrix = self.exponent_matrix();
        let factors = snf::smith_invariant_factors(&matrix);
        let rank = factors.len();
        let torsion: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
        AbelianInvariants {
            free_rank: self.alphabet.len() - rank,
            torsion,
        }
    }

    /// Rows = relators, columns = generators, entries = exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.relators.len(), self.alphabet.len());
        for (i, relator) in self.relators.iter().enumerate() {
            for gen in self.alphabet.generators() {
                m[(i, gen.index())] = BigInt::from(relator.exponent_sum(gen));
            }
        }
        m
    }
}

/// A one-relator presentation's relator in the shape `conjugator · root^s ·
/// conjugator⁻¹` with `root` primitive and `core = root^s` cyclically
/// reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizedRelator {
    pub core: Word,
    pub root: Word,
    pub s: u32,
    pub conjugator: Word,
}

/// `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `t_i ≥ 2` and `t_i | t_{i+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    /// Byte offset plus what the parser expected there.
    Syntax { offset: usize, expected: &'static str },
    DuplicateGenerator { name: String, offset: usize },
    UnknownGeneratorInRelator { name: String, offset: usize },
    NotOneRelator { relator_count: usize },
    /// The relator freely reduces to the empty word.
    TrivialRelator,
    Word(WordError),
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::Syntax { offset, expected } => {
                write!(f, "syntax error at byte {}: expected {}", offset, expected)
            }
            PresentationError::DuplicateGenerator { name, offset } => {
                write!(f, "duplicate generator `{}` at byte {}", name, offset)
            }
            PresentationError::UnknownGeneratorInRelator { name, offset } => {
                write!(f, "unknown generator `{}` in relator at byte {}", name, offset)
            }
            PresentationError::NotOneRelator { relator_count } => {
                write!(f, "expected exactly one relator, found {}", relator_count)
            }
            PresentationError::TrivialRelator => {
                write!(f, "relator freely reduces to the empty word")
            }
            PresentationError::Word(e) => write!(f, "{}", e),
        }
    }
}

impl From<WordError> for PresentationError {
    fn from(e: WordError) -> Self {
        PresentationError::Word(e)
    }
}

/// Parses the presentation grammar above.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    p.expect('<', "`<`")?;
    let mut alphabet = Alphabet::new();
    loop {
        p.skip_ws();
        let offset = p.pos;
        let name = p.parse_name()?;
        if alphabet.add(name.clone()).is_none() {
            return Err(PresentationError::DuplicateGenerator { name, offset });
        }
        p.skip_ws();
        if p.eat(',') {
            continue;
        }
        break;
    }
    p.skip_ws();
    if !p.eat(';') && !p.eat('|') {
        return Err(PresentationError::Syntax {
            offset: p.pos,
            expected: "`,`, `;` or `|`",
        });
    }
    let mut relators = Vec::new();
    p.skip_ws();
    if !p.peek_is('>') {
        loop {
            let word = p.parse_word(&alphabet)?;
            relators.push(word);
            p.skip_ws();
            if p.eat(',') {
                p.skip_ws();
                continue;
            }
            break;
        }
    }
    p.skip_ws();
    p.expect('>', "`>`")?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(PresentationError::Syntax {
            offset: p.pos,
            expected: "end of input",
        });
    }
    Ok(Presentation::new(alphabet, relators))
}

/// Parses a bare word (no surrounding `< … >`) over a known alphabet.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, PresentationError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    if p.pos == p.bytes.len() || p.peek_is('1') && p.bytes.len() == p.pos + 1 {
        // Empty input or a lone `1` denotes the identity.
        return Ok(Word::identity());
    }
    let word = p.parse_word(alphabet)?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(PresentationError::Syntax {
            offset: p.pos,
            expected: "end of input",
        });
    }
    Ok(word)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_is(&self, c: char) -> bool {
        self.peek() == Some(c as u8)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_is(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), PresentationError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(PresentationError::Syntax {
                offset: self.pos,
                expected,
            })
        }
    }

    fn parse_name(&mut self) -> Result<String, PresentationError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => {
                return Err(PresentationError::Syntax {
                    offset: self.pos,
                    expected: "generator name",
                })
            }
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        // Level-subscript segments: `@-3`, possibly repeated.
        while self.peek() == Some(b'@') {
            let save = self.pos;
            self.pos += 1;
            if self.peek() == Some(b'-') {
                self.pos += 1;
            }
            let digits_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == digits_start {
                self.pos = save;
                break;
            }
        }
        Ok(String::from_utf8(self.bytes[start..self.pos].to_vec()).expect("ascii"))
    }

    fn parse_integer(&mut self) -> Result<i64, PresentationError> {
        let negative = self.eat('-');
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PresentationError::Syntax {
                offset: self.pos,
                expected: "integer",
            });
        }
        let digits = core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        let value: i64 = digits.parse().map_err(|_| PresentationError::Syntax {
            offset: start,
            expected: "integer in range",
        })?;
        Ok(if negative { -value } else { value })
    }

    fn parse_word(&mut self, alphabet: &Alphabet) -> Result<Word, PresentationError> {
        let mut letters: Vec<Letter> = Vec::new();
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {}
                _ => break,
            }
            let offset = self.pos;
            let name = self.parse_name()?;
            let gen = alphabet.lookup(&name).ok_or(
                PresentationError::UnknownGeneratorInRelator {
                    name: name.clone(),
                    offset,
                },
            )?;
            let exponent = if self.eat('^') {
                self.parse_integer()?
            } else {
                1
            };
            let letter = if exponent >= 0 {
                Letter::positive(gen)
            } else {
                Letter::negative(gen)
            };
            for _ in 0..exponent.unsigned_abs() {
                letters.push(letter);
            }
            any = true;
        }
        if !any {
            return Err(PresentationError::Syntax {
                offset: self.pos,
                expected: "word",
            });
        }
        Ok(Word::reduce(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Generator;
    use proptest::prelude::*;

    #[test]
    fn parse_basic_presentations() {
        let p = parse_presentation("< a, b ; a^2 >").unwrap();
        assert_eq!(p.alphabet().names(), ["a", "b"]);
        assert_eq!(p.relators().len(), 1);
        assert!(p.is_one_relator());
        assert_eq!(p.relators()[0].len(), 2);

        let free = parse_presentation("< a ; >").unwrap();
        assert!(free.relators().is_empty());
        assert!(!free.is_one_relator());

        let q = parse_presentation("< a, b ; a^-1 b a^-1 b^-1 a >").unwrap();
        assert_eq!(q.relators()[0].len(), 5);

        // `|` as separator, arbitrary whitespace.
        let r = parse_presentation("<a,b|a b a^-1b^-1>").unwrap();
        assert_eq!(r.relators()[0].len(), 4);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match parse_presentation("< a, a ; >") {
            Err(PresentationError::DuplicateGenerator { name, offset }) => {
                assert_eq!(name, "a");
                assert_eq!(offset, 5);
            }
            other => panic!("expected duplicate generator, got {:?}", other),
        }
        match parse_presentation("< a ; b >") {
            Err(PresentationError::UnknownGeneratorInRelator { name, offset }) => {
                assert_eq!(name, "b");
                assert_eq!(offset, 6);
            }
            other => panic!("expected unknown generator, got {:?}", other),
        }
        assert!(matches!(
            parse_presentation("a, b ; a^2"),
            Err(PresentationError::Syntax { offset: 0, .. })
        ));
    }

    #[test]
    fn subscripted_names_round_trip() {
        let p = parse_presentation("< b@0, b@1, b@-1 ; b@1 b@0^-1 >").unwrap();
        assert_eq!(p.alphabet().names(), ["b@0", "b@1", "b@-1"]);
        let reparsed = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(reparsed, p);
    }

    #[test]
    fn normalize_relator_examples() {
        let p = parse_presentation("< a, b ; a^2 >").unwrap();
        let n = p.normalize_relator().unwrap();
        assert_eq!(n.core.len(), 2);
        assert_eq!(n.root.len(), 1);
        assert_eq!(n.s, 2);
        assert!(n.conjugator.is_empty());

        let q = parse_presentation("< a, b ; a^-1 b a^-1 b^-1 a >").unwrap();
        let n = q.normalize_relator().unwrap();
        assert_eq!(n.core.display(q.alphabet()).to_string(), "b a^-1 b^-1");
        assert_eq!(n.root, n.core);
        assert_eq!(n.s, 1);
        assert_eq!(n.conjugator.display(q.alphabet()).to_string(), "a^-1");

        let c = parse_presentation("< a, b ; a b a^-1 b^-1 >").unwrap();
        let n = c.normalize_relator().unwrap();
        assert_eq!(n.root, n.core);
        assert_eq!(n.s, 1);
    }

    #[test]
    fn normalize_relator_errors() {
        let free = parse_presentation("< a ; >").unwrap();
        assert!(matches!(
            free.normalize_relator(),
            Err(PresentationError::NotOneRelator { relator_count: 0 })
        ));
        let trivial = parse_presentation("< a ; a a^-1 >").unwrap();
        assert!(matches!(
            trivial.normalize_relator(),
            Err(PresentationError::TrivialRelator)
        ));
    }

    #[test]
    fn abelian_invariants_examples() {
        let p = parse_presentation("< a, b ; a^2 >").unwrap();
        let inv = p.abelian_invariants();
        assert_eq!(inv.free_rank, 1);
        assert_eq!(inv.torsion, alloc::vec![BigInt::from(2)]);

        let q = parse_presentation("< a, b ; a^-1 b a^-1 b^-1 a >").unwrap();
        let inv = q.abelian_invariants();
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion.is_empty());

        let c = parse_presentation("< a ; a^3 >").unwrap();
        let inv = c.abelian_invariants();
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion, alloc::vec![BigInt::from(3)]);
    }

    #[test]
    fn abelian_invariants_are_invariant_under_rewriting() {
        let base = parse_presentation("< a, b ; a^2 b^-3 >").unwrap();
        let inverted = parse_presentation("< a, b ; b^3 a^-2 >").unwrap();
        let rotated = parse_presentation("< a, b ; b^-3 a^2 >").unwrap();
        let renamed = parse_presentation("< x, y ; x^2 y^-3 >").unwrap();
        let expected = base.abelian_invariants();
        assert_eq!(inverted.abelian_invariants(), expected);
        assert_eq!(rotated.abelian_invariants(), expected);
        assert_eq!(renamed.abelian_invariants(), expected);
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        (1usize..4, prop::collection::vec((0u32..3, prop::bool::ANY), 0..10).prop_map(|v| v))
            .prop_map(|(ngens, raw)| {
                let names = ["a", "b", "c"];
                let alphabet = Alphabet::from_names(names[..ngens].to_vec()).unwrap();
                let letters: Vec<Letter> = raw
                    .into_iter()
                    .map(|(g, pos)| {
                        Letter::new(
                            Generator(g % ngens as u32),
                            if pos { 1 } else { -1 },
                        )
                    })
                    .collect();
                let word = Word::reduce(letters);
                let relators = if word.is_empty() {
                    alloc::vec![]
                } else {
                    alloc::vec![word]
                };
                Presentation::new(alphabet, relators)
            })
    }

    proptest! {
        #[test]
        fn parse_print_parse_is_identity(p in arb_presentation()) {
            let text = p.to_text();
            let reparsed = parse_presentation(&text).unwrap();
            prop_assert_eq!(reparsed, p);
        }
    }
}
