//! Budgeted Tietze simplification of finite presentations.
//!
//! The move set is conservative and terminating per pass: free/cyclic
//! reduction of relators, removal of trivial and duplicate relators, and
//! elimination of a generator that occurs exactly once in some relator
//! (substituting its expression everywhere). Each applied move consumes one
//! unit of budget.
//!
//! Simplification records, for every original generator, its image as a word
//! over the simplified alphabet, so homomorphisms into the original
//! presentation can be transported to the simplified one.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::presentation::Presentation;
use crate::word::{Alphabet, Generator, Letter, Word};

/// Default move budget; enough for all desk-scale complexes here.
pub const DEFAULT_BUDGET: usize = 1000;

#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: Presentation,
    /// Image of each original generator over the simplified alphabet.
    pub images: Vec<Word>,
    pub steps: usize,
    pub budget_exhausted: bool,
}

impl Simplified {
    /// Relator-free outcome: the group is visibly free on the remaining
    /// generators.
    pub fn is_visibly_free(&self) -> bool {
        self.presentation.relators().is_empty()
    }

    /// No generators and no relators left: the group is visibly trivial.
    pub fn is_visibly_trivial(&self) -> bool {
        self.presentation.alphabet().is_empty() && self.presentation.relators().is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.presentation.alphabet().len()
    }
}

/// Canonical representative of the cyclic class of `w` and `w⁻¹`; used to
/// detect duplicate relators.
fn cyclic_class_key(w: &Word) -> Vec<Letter> {
    let (core, _) = w.cyclic_reduce();
    let mut best: Option<Vec<Letter>> = None;
    for candidate in [core.clone(), core.inverse()] {
        for k in 0..candidate.len().max(1) {
            let rot = candidate.rotate(k);
            let key = rot.letters().to_vec();
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap_or_default()
}

fn remap_word(w: &Word, table: &[Option<Generator>]) -> Word {
    Word::reduce(w.letters().iter().map(|l| {
        let new = table[l.generator().index()].expect("remapped word must avoid dropped gens");
        Letter::new(new, l.sign())
    }))
}

pub fn simplify(p: &Presentation, budget: usize) -> Simplified {
    let mut alphabet = p.alphabet().clone();
    let mut relators: Vec<Word> = p.relators().to_vec();
    let mut images: Vec<Word> = alphabet
        .generators()
        .map(|g| Word::from_letter(Letter::positive(g)))
        .collect();
    let mut steps = 0usize;

    loop {
        if steps >= budget {
            return Simplified {
                presentation: Presentation::new(alphabet, relators),
                images,
                steps,
                budget_exhausted: true,
            };
        }

        // Cleanup pass: cyclic reduction, trivial and duplicate removal.
        let mut changed = false;
        let mut seen: BTreeMap<Vec<Letter>, ()> = BTreeMap::new();
        let mut cleaned: Vec<Word> = Vec::with_capacity(relators.len());
        for r in &relators {
            let (core, _) = r.cyclic_reduce();
            if core != *r {
                changed = true;
            }
            if core.is_empty() {
                changed = true;
                continue;
            }
            let key = cyclic_class_key(&core);
            if seen.insert(key, ()).is_some() {
                changed = true;
                continue;
            }
            cleaned.push(core);
        }
        relators = cleaned;
        if changed {
            steps += 1;
            continue;
        }

        // Elimination: a generator occurring exactly once in some relator.
        let mut elimination: Option<(usize, usize)> = None;
        'outer: for (ri, r) in relators.iter().enumerate() {
            for gen in alphabet.generators() {
                let count = r
                    .letters()
                    .iter()
                    .filter(|l| l.generator() == gen)
                    .count();
                if count == 1 {
                    elimination = Some((ri, gen.index()));
                    break 'outer;
                }
            }
        }
        let Some((ri, gi)) = elimination else {
            return Simplified {
                presentation: Presentation::new(alphabet, relators),
                images,
                steps,
                budget_exhausted: false,
            };
        };

        let gen = Generator(gi as u32);
        let relator = relators.remove(ri);
        let pos = relator
            .letters()
            .iter()
            .position(|l| l.generator() == gen)
            .expect("occurrence counted above");
        let sign = relator.letters()[pos].sign();
        let before = Word::reduce(relator.letters()[..pos].iter().copied());
        let after = Word::reduce(relator.letters()[pos + 1..].iter().copied());
        // u g v = 1 gives g = u⁻¹ v⁻¹; u g⁻¹ v = 1 gives g = v u.
        let expression = if sign > 0 {
            before.inverse().concat(&after.inverse())
        } else {
            after.concat(&before)
        };

        let mut sub = BTreeMap::new();
        sub.insert(gen, expression);
        let alphabet_len = alphabet.len();
        let substitute =
            |w: &Word| w.substitute(&sub, alphabet_len).expect("same alphabet");

        // Rebuild the alphabet without `gen` and remap everything.
        let mut table: Vec<Option<Generator>> = Vec::with_capacity(alphabet.len());
        let mut new_alphabet = Alphabet::new();
        for g in alphabet.generators() {
            if g == gen {
                table.push(None);
            } else {
                let id = new_alphabet
                    .add(alphabet.name(g).into())
                    .expect("names stay unique");
                table.push(Some(id));
            }
        }
        relators = relators
            .iter()
            .map(|r| remap_word(&substitute(r), &table))
            .collect();
        images = images
            .iter()
            .map(|w| remap_word(&substitute(w), &table))
            .collect();
        alphabet = new_alphabet;
        steps += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn free_presentation_is_untouched() {
        let p = parse_presentation("< a, b ; >").unwrap();
        let s = simplify(&p, DEFAULT_BUDGET);
        assert!(s.is_visibly_free());
        assert_eq!(s.free_rank(), 2);
        assert_eq!(s.steps, 0);
    }

    #[test]
    fn defining_relator_eliminates_a_generator() {
        // b = a^2, so the group is free on a.
        let p = parse_presentation("< a, b ; b a^-2 >").unwrap();
        let s = simplify(&p, DEFAULT_BUDGET);
        assert!(s.is_visibly_free());
        assert_eq!(s.free_rank(), 1);
        assert_eq!(s.presentation.alphabet().names(), ["a"]);
        // The eliminated generator's image is a².
        let a = s.presentation.alphabet().lookup("a").unwrap();
        assert_eq!(s.images[1], Word::power_of(a, 2));
    }

    #[test]
    fn chain_of_definitions_trivializes() {
        // c = b, b = a, a = 1: trivial group.
        let p = parse_presentation("< a, b, c ; c b^-1, b a^-1, a >").unwrap();
        let s = simplify(&p, DEFAULT_BUDGET);
        assert!(s.is_visibly_trivial());
        assert!(s.images.iter().all(|w| w.is_empty()));
    }

    #[test]
    fn duplicate_and_trivial_relators_are_dropped() {
        let p = parse_presentation("< a ; a^3, a^3, b b^-1 a^3 a^-3 >");
        // `b` is not a generator here; use a valid input instead.
        assert!(p.is_err());
        let p = parse_presentation("< a ; a^3, a^3 >").unwrap();
        let s = simplify(&p, DEFAULT_BUDGET);
        assert_eq!(s.presentation.relators().len(), 1);
    }

    #[test]
    fn inverse_duplicate_is_detected() {
        let p = parse_presentation("< a, b ; a b, b^-1 a^-1 >").unwrap();
        let s = simplify(&p, DEFAULT_BUDGET);
        // One relator survives cleanup and then eliminates a generator.
        assert!(s.is_visibly_free());
        assert_eq!(s.free_rank(), 1);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let p = parse_presentation("< a, b ; a b a^-1 b^-1, a^2 >").unwrap();
        let s = simplify(&p, 0);
        assert!(s.budget_exhausted);
        assert_eq!(s.steps, 0);
    }

    #[test]
    fn commutator_balanced_presentation_does_not_trivialize() {
        let p = parse_presentation("< a, b ; a b a^-1 b^-1 >").unwrap();
        let s = simplify(&p, DEFAULT_BUDGET);
        assert!(!s.is_visibly_free());
        assert_eq!(s.presentation.relators().len(), 1);
    }
}
