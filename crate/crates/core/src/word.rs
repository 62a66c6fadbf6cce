//! Exact free-group word arithmetic over a finite generator alphabet.
//!
//! Words are stored as sequences of signed letter codes and are kept freely
//! reduced at all times: the only way to build a [`Word`] is through
//! constructors that reduce. Display names live in an [`Alphabet`] table so
//! the same machinery serves words over freshly invented alphabets
//! (subscripted generators, substitution targets) without change.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::num::NonZeroI32;

/// Index of a generator in an [`Alphabet`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator(pub u32);

impl Generator {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One signed occurrence of a generator: `g` or `g^-1`.
///
/// Stored as a nonzero signed code `±(index + 1)` so a letter fits in an
/// `i32` and inversion is negation.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Letter(NonZeroI32);

impl Letter {
    pub fn new(gen: Generator, sign: i32) -> Letter {
        debug_assert!(sign == 1 || sign == -1);
        let code = (gen.0 as i32 + 1) * sign;
        Letter(NonZeroI32::new(code).expect("letter code is nonzero"))
    }

    pub fn positive(gen: Generator) -> Letter {
        Letter::new(gen, 1)
    }

    pub fn negative(gen: Generator) -> Letter {
        Letter::new(gen, -1)
    }

    pub fn generator(self) -> Generator {
        Generator(self.0.get().unsigned_abs() - 1)
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        self.0.get().signum()
    }

    pub fn inverse(self) -> Letter {
        Letter(NonZeroI32::new(-self.0.get()).expect("negation of nonzero is nonzero"))
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.0.get() == -other.0.get()
    }

    /// Shortlex letter order: by generator index, positive before negative.
    fn order_key(self) -> (u32, u8) {
        (self.generator().0, if self.sign() > 0 { 0 } else { 1 })
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Letter) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Letter) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}^{}", self.generator().0, self.sign())
    }
}

/// A freely reduced word in the free group on an alphabet.
///
/// The empty word is the identity. Adjacent mutually inverse letters never
/// occur; constructors reduce their input.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Errors from word-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    /// The operation needs a non-empty word.
    EmptyWord,
    /// A substitution image refers to a generator outside the target alphabet.
    UnknownGenerator(Generator),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::EmptyWord => write!(f, "operation requires a non-empty word"),
            WordError::UnknownGenerator(g) => {
                write!(f, "generator #{} is outside the target alphabet", g.0)
            }
        }
    }
}

impl Word {
    /// The identity.
    pub fn identity() -> Word {
        Word::default()
    }

    /// Free reduction of an arbitrary letter sequence: cancels adjacent
    /// mutually inverse pairs until none remain (single stack pass).
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in raw {
            match stack.last() {
                Some(&top) if top.is_inverse_of(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word { letters: stack }
    }

    pub fn from_letter(letter: Letter) -> Word {
        Word {
            letters: alloc::vec![letter],
        }
    }

    /// `g^e` for a signed exponent `e` (empty word when `e = 0`).
    pub fn power_of(gen: Generator, exponent: i64) -> Word {
        let letter = if exponent >= 0 {
            Letter::positive(gen)
        } else {
            Letter::negative(gen)
        };
        Word {
            letters: core::iter::repeat(letter)
                .take(exponent.unsigned_abs() as usize)
                .collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_freely_reduced(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| !w[0].is_inverse_of(w[1]))
    }

    /// First and last letters are not mutually inverse.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) => !a.is_inverse_of(b),
            _ => true,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Product `self · other`, freely reduced.
    pub fn concat(&self, other: &Word) -> Word {
        let mut stack = self.letters.clone();
        for &letter in &other.letters {
            match stack.last() {
                Some(&top) if top.is_inverse_of(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word { letters: stack }
    }

    /// `conjugator · self · conjugator⁻¹`.
    pub fn conjugate_by(&self, conjugator: &Word) -> Word {
        conjugator.concat(self).concat(&conjugator.inverse())
    }

    /// Rotation of the cyclic word: moves the first `k` letters to the end.
    /// Meaningful on cyclically reduced words, where the result is again
    /// reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return Word::identity();
        }
        let k = k % self.letters.len();
        let mut letters = Vec::with_capacity(self.letters.len());
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        Word::reduce(letters)
    }

    /// Equality as cyclic words (both must be cyclically reduced).
    pub fn eq_cyclic(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        (0..self.len()).any(|k| self.rotate(k) == *other)
    }

    /// Peels matching end letters: returns `(core, conjugator)` with
    /// `self = conjugator · core · conjugator⁻¹` and `core` cyclically
    /// reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut conjugator = Vec::new();
        let mut letters = self.letters.clone();
        while letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().expect("len >= 2");
            if first.is_inverse_of(last) {
                conjugator.push(first);
                letters.remove(0);
                letters.pop();
            } else {
                break;
            }
        }
        (Word { letters }, Word { letters: conjugator })
    }

    /// Signed count of occurrences of `gen`.
    pub fn exponent_sum(&self, gen: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator() == gen)
            .map(|l| l.sign() as i64)
            .sum()
    }

    /// Generators occurring in the word, each listed once, ascending.
    pub fn support(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self.letters.iter().map(|l| l.generator()).collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    /// Word length after deleting all occurrences of `gen`.
    pub fn deleted_length(&self, gen: Generator) -> usize {
        self.letters.iter().filter(|l| l.generator() != gen).count()
    }

    /// Decomposes a cyclically reduced non-empty word as `q^s` with `s`
    /// maximal (`q` is not itself a proper power). Divisor scan: each
    /// divisor length of `|w|` is tested by literal repetition.
    pub fn primitive_root(&self) -> Result<(Word, u32), WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let n = self.letters.len();
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let prefix = &self.letters[..d];
            let repeats = self
                .letters
                .chunks(d)
                .all(|chunk| chunk == prefix);
            if repeats {
                return Ok((
                    Word {
                        letters: prefix.to_owned(),
                    },
                    (n / d) as u32,
                ));
            }
        }
        unreachable!("d = n always repeats")
    }

    /// Literal concatenation of `self` repeated `s` times, reduced.
    pub fn repeat(&self, s: u32) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() * s as usize);
        for _ in 0..s {
            letters.extend_from_slice(&self.letters);
        }
        Word::reduce(letters)
    }

    /// Homomorphic image under a (partial) generator substitution, freely
    /// reduced. Generators without an image are sent to themselves, which
    /// requires them to exist in the target alphabet of `target_size`
    /// generators.
    pub fn substitute(
        &self,
        images: &BTreeMap<Generator, Word>,
        target_size: usize,
    ) -> Result<Word, WordError> {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        let push = |letter: Letter, out: &mut Vec<Letter>| {
            match out.last() {
                Some(&top) if top.is_inverse_of(letter) => {
                    out.pop();
                }
                _ => out.push(letter),
            }
        };
        for &letter in &self.letters {
            let gen = letter.generator();
            match images.get(&gen) {
                Some(image) => {
                    for img_gen in image.support() {
                        if img_gen.index() >= target_size {
                            return Err(WordError::UnknownGenerator(img_gen));
                        }
                    }
                    if letter.sign() > 0 {
                        for &l in image.letters() {
                            push(l, &mut out);
                        }
                    } else {
                        for &l in image.inverse().letters() {
                            push(l, &mut out);
                        }
                    }
                }
                None => {
                    if gen.index() >= target_size {
                        return Err(WordError::UnknownGenerator(gen));
                    }
                    push(letter, &mut out);
                }
            }
        }
        Ok(Word { letters: out })
    }

    /// Shortlex order: by length first, then letterwise.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }

    /// Renders with run-length powers against an alphabet, e.g. `a^2 b^-3`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:?}", l)?;
        }
        Ok(())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let run = (j - i) as i64 * letters[i].sign() as i64;
            let name = self.alphabet.name(letters[i].generator());
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}^{}", name, run)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Table of generator display names; ids are dense `0..len`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new() -> Alphabet {
        Alphabet::default()
    }

    /// Builds from names; names must be unique and non-empty.
    pub fn from_names<I, S>(names: I) -> Option<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::new();
        for name in names {
            alphabet.add(name.into())?;
        }
        Some(alphabet)
    }

    /// Adds a generator, returning its id; `None` on duplicate or empty name.
    pub fn add(&mut self, name: String) -> Option<Generator> {
        if name.is_empty() || self.lookup(&name).is_some() {
            return None;
        }
        self.names.push(name);
        Some(Generator(self.names.len() as u32 - 1))
    }

    /// Adds `base`, appending primes until the name is unused.
    pub fn add_fresh(&mut self, base: &str) -> Generator {
        let mut name = base.to_owned();
        while self.lookup(&name).is_some() {
            name.push('\'');
        }
        self.add(name).expect("fresh name is unused")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, gen: Generator) -> &str {
        &self.names[gen.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Generator> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Generator(i as u32))
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.names.len() as u32).map(Generator)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}
