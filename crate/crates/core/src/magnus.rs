//! The inductive rewriting engine for one-relator presentations.
//!
//! A normalized relator `R = Q^s` falls into one of three cases:
//!
//! * **Base** — `Q` is a single letter; the group is `Z_s` free-product the
//!   unused generators.
//! * **Case 1** — some generator occurring in `Q` has exponent sum zero.
//!   `Q` lifts along the exponent-sum covering: non-pivot letters pick up an
//!   integer level subscript, pivot letters vanish, and the rewritten word
//!   `Q'` lives over a fresh alphabet of subscripted generators.
//! * **Case 2** — every generator of `Q` has nonzero exponent sum. The
//!   substitutions `x₀ ↦ A^q`, `x₁ ↦ B A^(-p)` (with `p = σ(x₀)`,
//!   `q = σ(x₁)`) produce a word `Q''` in which `A` has exponent sum zero,
//!   handing the recursion back to Case 1 with a strictly smaller
//!   pivot-deleted length.
//!
//! Iterating the cases yields a hierarchy tree whose leaves are all Base.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::presentation::{NormalizedRelator, Presentation, PresentationError};
use crate::word::{Alphabet, Generator, Letter, Word};

/// Classification of a one-relator presentation by its normalized root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CaseTag {
    Base {
        generator: Generator,
        s: u32,
    },
    Case1 {
        pivot: Generator,
    },
    Case2 {
        pivot0: Generator,
        pivot1: Generator,
        p: i64,
        q: i64,
    },
}

#[derive(Debug, Clone)]
pub enum MagnusError {
    Presentation(PresentationError),
    /// Case 1 requires the pivot's exponent sum in the root to vanish.
    NonzeroExponentSum { pivot: Generator, sum: i64 },
    /// Case 2 requires both pivots to have nonzero exponent sums.
    ZeroExponentSum { pivot: Generator },
    /// Case 2 pivots must be distinct.
    IdenticalPivots,
    /// The recursion hit the depth limit; carries what was built.
    DepthLimitExceeded { partial: MagnusHierarchy },
}

impl fmt::Display for MagnusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagnusError::Presentation(e) => write!(f, "{}", e),
            MagnusError::NonzeroExponentSum { pivot, sum } => write!(
                f,
                "pivot generator #{} has exponent sum {}, expected 0",
                pivot.0, sum
            ),
            MagnusError::ZeroExponentSum { pivot } => {
                write!(f, "pivot generator #{} has exponent sum 0", pivot.0)
            }
            MagnusError::IdenticalPivots => write!(f, "the two pivots must differ"),
            MagnusError::DepthLimitExceeded { .. } => write!(f, "hierarchy depth limit exceeded"),
        }
    }
}

impl From<PresentationError> for MagnusError {
    fn from(e: PresentationError) -> Self {
        MagnusError::Presentation(e)
    }
}

/// Outcome of a Case 1 rewriting.
#[derive(Clone, Debug)]
pub struct Case1Result {
    /// Fresh alphabet of level-subscripted generators `y@k`, ordered by
    /// (level ascending, original index ascending); covers the full grid
    /// `(X \ {pivot}) × [u, v]`.
    pub alphabet: Alphabet,
    /// Per subscripted generator: its original generator and its level.
    pub gen_table: Vec<(Generator, i64)>,
    /// The rewritten root `Q'` over [`Self::alphabet`].
    pub rewritten: Word,
    /// Smallest level interval `[u, v]` met by the lift.
    pub interval: (i64, i64),
    /// Multiplicity carried over from the parent relator.
    pub s: u32,
}

impl Case1Result {
    pub fn subscripted(&self, original: Generator, level: i64) -> Option<Generator> {
        self.gen_table
            .iter()
            .position(|&(g, k)| g == original && k == level)
            .map(|i| Generator(i as u32))
    }

    /// Child presentation `⟨ grid ; Q'^s ⟩`.
    pub fn child_presentation(&self) -> Presentation {
        Presentation::new(self.alphabet.clone(), alloc::vec![self.rewritten.repeat(self.s)])
    }

    /// Grid generators that do not occur in `Q'`; they contribute free
    /// factors to the child group.
    pub fn spare_generators(&self) -> Vec<Generator> {
        let support = self.rewritten.support();
        self.alphabet
            .generators()
            .filter(|g| !support.contains(g))
            .collect()
    }
}

/// Outcome of a Case 2 rewriting.
#[derive(Clone, Debug)]
pub struct Case2Result {
    /// `X'' = (X − {x₀, x₁}) ∪ {A, B}`: retained generators first (original
    /// order), then `A`, then `B`.
    pub alphabet: Alphabet,
    /// Per retained generator: (original id, id in `alphabet`).
    pub retained: Vec<(Generator, Generator)>,
    pub gen_a: Generator,
    pub gen_b: Generator,
    /// `X' = (X − {x₀}) ∪ {A}` and `Q' = Q[x₀ := A^q]` over it.
    pub intermediate_alphabet: Alphabet,
    pub q_prime: Word,
    /// `Q'' = Q'[x₁ := B A^(-p)]`, cyclically reduced, over [`Self::alphabet`].
    pub q_double_prime: Word,
    /// Conjugator removed when cyclically reducing `Q''`.
    pub conjugator: Word,
    pub p: i64,
    pub q: i64,
    pub s: u32,
}

impl Case2Result {
    /// First substitution `x₀ ↦ A^q` (image over `alphabet`).
    pub fn substitution_pivot0(&self) -> Word {
        Word::power_of(self.gen_a, self.q)
    }

    /// Second substitution `x₁ ↦ B A^(-p)` (image over `alphabet`).
    pub fn substitution_pivot1(&self) -> Word {
        Word::from_letter(Letter::positive(self.gen_b)).concat(&Word::power_of(self.gen_a, -self.p))
    }

    /// Child presentation `⟨ X'' ; Q''^s ⟩`.
    pub fn child_presentation(&self) -> Presentation {
        Presentation::new(
            self.alphabet.clone(),
            alloc::vec![self.q_double_prime.repeat(self.s)],
        )
    }
}

/// Picks the case for a normalized one-relator presentation.
///
/// Ties are broken by least alphabet index; `preferred` generators (e.g. a
/// command-line override) win over the default whenever they are eligible.
pub fn classify_case(p: &Presentation) -> Result<CaseTag, MagnusError> {
    classify_case_preferring(p, &[])
}

pub fn classify_case_preferring(
    p: &Presentation,
    preferred: &[Generator],
) -> Result<CaseTag, MagnusError> {
    let normalized = p.normalize_relator()?;
    let root = &normalized.root;
    if root.len() == 1 {
        return Ok(CaseTag::Base {
            generator: root.letters()[0].generator(),
            s: normalized.s,
        });
    }
    let occurring = root.support();
    let zero_sum: Vec<Generator> = occurring
        .iter()
        .copied()
        .filter(|&g| root.exponent_sum(g) == 0)
        .collect();
    if !zero_sum.is_empty() {
        let pivot = preferred
            .iter()
            .copied()
            .find(|g| zero_sum.contains(g))
            .unwrap_or(zero_sum[0]);
        return Ok(CaseTag::Case1 { pivot });
    }
    // A primitive root of length ≥ 2 involves at least two generators.
    debug_assert!(occurring.len() >= 2);
    let pivot0 = preferred
        .iter()
        .copied()
        .find(|g| occurring.contains(g))
        .unwrap_or(occurring[0]);
    let pivot1 = preferred
        .iter()
        .copied()
        .find(|&g| g != pivot0 && occurring.contains(&g))
        .unwrap_or_else(|| {
            occurring
                .iter()
                .copied()
                .find(|&g| g != pivot0)
                .expect("two occurring generators")
        });
    Ok(CaseTag::Case2 {
        pivot0,
        pivot1,
        p: root.exponent_sum(pivot0),
        q: root.exponent_sum(pivot1),
    })
}

/// Case 1 rewriting: scans the root left to right keeping the running
/// exponent sum `t` of the pivot; a non-pivot letter `y^ε` met at level `t`
/// emits `(y, t)^ε`, pivot letters emit nothing.
pub fn rewrite_case1(p: &Presentation, pivot: Generator) -> Result<Case1Result, MagnusError> {
    let normalized = p.normalize_relator()?;
    let root = &normalized.root;
    let sum = root.exponent_sum(pivot);
    if sum != 0 {
        return Err(MagnusError::NonzeroExponentSum { pivot, sum });
    }

    let mut level: i64 = 0;
    let mut emitted: Vec<(Generator, i64, i32)> = Vec::new();
    for letter in root.letters() {
        if letter.generator() == pivot {
            level += letter.sign() as i64;
        } else {
            emitted.push((letter.generator(), level, letter.sign()));
        }
    }
    debug_assert!(
        !emitted.is_empty(),
        "a nonempty reduced root cannot consist solely of a zero-sum pivot"
    );
    let u = emitted.iter().map(|&(_, k, _)| k).min().expect("non-empty");
    let v = emitted.iter().map(|&(_, k, _)| k).max().expect("non-empty");

    let mut alphabet = Alphabet::new();
    let mut gen_table = Vec::new();
    for k in u..=v {
        for g in p.alphabet().generators() {
            if g == pivot {
                continue;
            }
            let name = format!("{}@{}", p.alphabet().name(g), k);
            alphabet.add(name).expect("grid names are unique");
            gen_table.push((g, k));
        }
    }
    let index_of = |g: Generator, k: i64| -> Generator {
        let pos = gen_table
            .iter()
            .position(|&(og, ok)| og == g && ok == k)
            .expect("emitted letters live on the grid");
        Generator(pos as u32)
    };
    let letters: Vec<Letter> = emitted
        .iter()
        .map(|&(g, k, sign)| Letter::new(index_of(g, k), sign))
        .collect();
    debug_assert!(Word::is_freely_reduced(&letters));
    let rewritten = Word::reduce(letters);
    debug_assert!(rewritten.is_cyclically_reduced());
    debug_assert_eq!(rewritten.len(), root.deleted_length(pivot));

    Ok(Case1Result {
        alphabet,
        gen_table,
        rewritten,
        interval: (u, v),
        s: normalized.s,
    })
}

/// Realizes the covering projection: each subscripted letter `(y, k)^ε`
/// expands to `x₀^k y^ε x₀^(-k)` over the original alphabet; the
/// concatenation free-reduces back to the original root.
pub fn expand_case1(result: &Case1Result, pivot: Generator) -> Word {
    let mut letters: Vec<Letter> = Vec::new();
    for letter in result.rewritten.letters() {
        let (original, level) = result.gen_table[letter.generator().index()];
        let conjugator = Word::power_of(pivot, level);
        letters.extend_from_slice(conjugator.letters());
        letters.push(Letter::new(original, letter.sign()));
        letters.extend_from_slice(conjugator.inverse().letters());
    }
    Word::reduce(letters)
}

/// Case 2 rewriting: `Q' = Q[x₀ := A^q]`, then `Q'' = Q'[x₁ := B A^(-p)]`
/// cyclically reduced. `A` has exponent sum zero in `Q''`.
pub fn rewrite_case2(
    p: &Presentation,
    pivot0: Generator,
    pivot1: Generator,
) -> Result<Case2Result, MagnusError> {
    if pivot0 == pivot1 {
        return Err(MagnusError::IdenticalPivots);
    }
    let normalized = p.normalize_relator()?;
    let root = &normalized.root;
    let p_sum = root.exponent_sum(pivot0);
    let q_sum = root.exponent_sum(pivot1);
    if p_sum == 0 {
        return Err(MagnusError::ZeroExponentSum { pivot: pivot0 });
    }
    if q_sum == 0 {
        return Err(MagnusError::ZeroExponentSum { pivot: pivot1 });
    }

    // X' = (X − {x₀}) ∪ {A}; the fresh name avoids every surviving name.
    let mut intermediate = Alphabet::new();
    let mut to_intermediate: BTreeMap<Generator, Generator> = BTreeMap::new();
    for g in p.alphabet().generators() {
        if g == pivot0 {
            continue;
        }
        let id = intermediate
            .add(p.alphabet().name(g).into())
            .expect("names unique");
        to_intermediate.insert(g, id);
    }
    let a_in_intermediate = intermediate.add_fresh("A");
    let a_name = intermediate.name(a_in_intermediate).to_owned();

    let mut images1: BTreeMap<Generator, Word> = BTreeMap::new();
    images1.insert(pivot0, Word::power_of(a_in_intermediate, q_sum));
    for (&orig, &new) in &to_intermediate {
        images1.insert(orig, Word::from_letter(Letter::positive(new)));
    }
    let q_prime = root
        .substitute(&images1, intermediate.len())
        .expect("all generators mapped");

    // X'' = (X − {x₀, x₁}) ∪ {A, B}.
    let mut alphabet = Alphabet::new();
    let mut retained: Vec<(Generator, Generator)> = Vec::new();
    for g in p.alphabet().generators() {
        if g == pivot0 || g == pivot1 {
            continue;
        }
        let id = alphabet
            .add(p.alphabet().name(g).into())
            .expect("names unique");
        retained.push((g, id));
    }
    let gen_a = alphabet.add(a_name).expect("A name stays fresh");
    let gen_b = alphabet.add_fresh("B");

    let mut images2: BTreeMap<Generator, Word> = BTreeMap::new();
    images2.insert(
        a_in_intermediate,
        Word::from_letter(Letter::positive(gen_a)),
    );
    let pivot1_in_intermediate = to_intermediate[&pivot1];
    images2.insert(
        pivot1_in_intermediate,
        Word::from_letter(Letter::positive(gen_b)).concat(&Word::power_of(gen_a, -p_sum)),
    );
    for (&orig, &mid) in &to_intermediate {
        if orig == pivot1 {
            continue;
        }
        let new = retained
            .iter()
            .find(|&&(o, _)| o == orig)
            .map(|&(_, n)| n)
            .expect("retained generator");
        images2.insert(mid, Word::from_letter(Letter::positive(new)));
    }
    let raw = q_prime
        .substitute(&images2, alphabet.len())
        .expect("all generators mapped");
    let (q_double_prime, conjugator) = raw.cyclic_reduce();

    debug_assert_eq!(q_double_prime.exponent_sum(gen_a), 0);
    debug_assert!(q_double_prime.deleted_length(gen_a) < root.len());

    Ok(Case2Result {
        alphabet,
        retained,
        gen_a,
        gen_b,
        intermediate_alphabet: intermediate,
        q_prime,
        q_double_prime,
        conjugator,
        p: p_sum,
        q: q_sum,
        s: normalized.s,
    })
}

/// One node of the rewriting hierarchy.
#[derive(Clone, Debug)]
pub struct HierarchyNode {
    pub presentation: Presentation,
    pub normalized: NormalizedRelator,
    pub tag: CaseTag,
    pub rewrite: NodeRewrite,
    pub children: Vec<HierarchyNode>,
    /// Set when the depth limit cut this branch short.
    pub truncated: bool,
}

#[derive(Clone, Debug)]
pub enum NodeRewrite {
    Base,
    Case1(Case1Result),
    Case2(Case2Result),
}

#[derive(Clone, Debug)]
pub struct MagnusHierarchy {
    pub root: HierarchyNode,
}

impl MagnusHierarchy {
    /// Longest root-to-leaf edge count.
    pub fn depth(&self) -> usize {
        fn depth_of(node: &HierarchyNode) -> usize {
            node.children
                .iter()
                .map(|c| 1 + depth_of(c))
                .max()
                .unwrap_or(0)
        }
        depth_of(&self.root)
    }

    pub fn all_leaves_base(&self) -> bool {
        fn check(node: &HierarchyNode) -> bool {
            if node.children.is_empty() {
                matches!(node.tag, CaseTag::Base { .. })
            } else {
                node.children.iter().all(check)
            }
        }
        check(&self.root)
    }

    pub fn any_truncated(&self) -> bool {
        fn check(node: &HierarchyNode) -> bool {
            node.truncated || node.children.iter().any(check)
        }
        check(&self.root)
    }

    pub fn node_count(&self) -> usize {
        fn count(node: &HierarchyNode) -> usize {
            1 + node.children.iter().map(count).sum::<usize>()
        }
        count(&self.root)
    }
}

/// Builds the full rewriting tree; every leaf is a Base node unless the
/// depth limit interferes (which the strictly decreasing pivot-deleted
/// length should rule out for sane limits).
pub fn build_hierarchy(
    p: &Presentation,
    depth_limit: usize,
) -> Result<MagnusHierarchy, MagnusError> {
    build_hierarchy_preferring(p, depth_limit, &[])
}

/// Like [`build_hierarchy`], with preferred pivot generators applied at the
/// root node only.
pub fn build_hierarchy_preferring(
    p: &Presentation,
    depth_limit: usize,
    root_preferred: &[Generator],
) -> Result<MagnusHierarchy, MagnusError> {
    let root = build_node(p, 0, depth_limit, root_preferred)?;
    let hierarchy = MagnusHierarchy { root };
    if hierarchy.any_truncated() {
        Err(MagnusError::DepthLimitExceeded { partial: hierarchy })
    } else {
        Ok(hierarchy)
    }
}

fn build_node(
    p: &Presentation,
    depth: usize,
    depth_limit: usize,
    preferred: &[Generator],
) -> Result<HierarchyNode, MagnusError> {
    let normalized = p.normalize_relator()?;
    let tag = classify_case_preferring(p, preferred)?;
    match tag {
        CaseTag::Base { .. } => Ok(HierarchyNode {
            presentation: p.clone(),
            normalized,
            tag,
            rewrite: NodeRewrite::Base,
            children: Vec::new(),
            truncated: false,
        }),
        CaseTag::Case1 { pivot } => {
            let result = rewrite_case1(p, pivot)?;
            let (children, truncated) = if depth < depth_limit {
                let child = build_node(&result.child_presentation(), depth + 1, depth_limit, &[])?;
                (alloc::vec![child], false)
            } else {
                (Vec::new(), true)
            };
            Ok(HierarchyNode {
                presentation: p.clone(),
                normalized,
                tag,
                rewrite: NodeRewrite::Case1(result),
                children,
                truncated,
            })
        }
        CaseTag::Case2 { pivot0, pivot1, .. } => {
            let result = rewrite_case2(p, pivot0, pivot1)?;
            let (children, truncated) = if depth < depth_limit {
                let child = build_node(&result.child_presentation(), depth + 1, depth_limit, &[])?;
                (alloc::vec![child], false)
            } else {
                (Vec::new(), true)
            };
            Ok(HierarchyNode {
                presentation: p.clone(),
                normalized,
                tag,
                rewrite: NodeRewrite::Case2(result),
                children,
                truncated,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn gen_of(p: &Presentation, name: &str) -> Generator {
        p.alphabet().lookup(name).unwrap()
    }

    #[test]
    fn classify_examples() {
        let base = parse_presentation("< a, b ; a^2 >").unwrap();
        assert_eq!(
            classify_case(&base).unwrap(),
            CaseTag::Base {
                generator: gen_of(&base, "a"),
                s: 2
            }
        );

        let commutator = parse_presentation("< a, b ; a b a^-1 b^-1 >").unwrap();
        assert_eq!(
            classify_case(&commutator).unwrap(),
            CaseTag::Case1 {
                pivot: gen_of(&commutator, "a")
            }
        );

        let trefoil = parse_presentation("< a, b ; a^2 b^-3 >").unwrap();
        assert_eq!(
            classify_case(&trefoil).unwrap(),
            CaseTag::Case2 {
                pivot0: gen_of(&trefoil, "a"),
                pivot1: gen_of(&trefoil, "b"),
                p: 2,
                q: -3
            }
        );
    }

    #[test]
    fn classify_preference_override() {
        let commutator = parse_presentation("< a, b ; a b a^-1 b^-1 >").unwrap();
        let b = gen_of(&commutator, "b");
        assert_eq!(
            classify_case_preferring(&commutator, &[b]).unwrap(),
            CaseTag::Case1 { pivot: b }
        );
    }

    #[test]
    fn case1_commutator() {
        let p = parse_presentation("< a, b ; a b a^-1 b^-1 >").unwrap();
        let r = rewrite_case1(&p, gen_of(&p, "a")).unwrap();
        assert_eq!(r.interval, (0, 1));
        assert_eq!(r.alphabet.names(), ["b@0", "b@1"]);
        // Q' = b₁ b₀⁻¹
        let b0 = r.subscripted(gen_of(&p, "b"), 0).unwrap();
        let b1 = r.subscripted(gen_of(&p, "b"), 1).unwrap();
        assert_eq!(
            r.rewritten,
            Word::reduce([Letter::positive(b1), Letter::negative(b0)])
        );
        let expanded = expand_case1(&r, gen_of(&p, "a"));
        assert_eq!(expanded, p.normalize_relator().unwrap().root);
    }

    #[test]
    fn case1_absent_pivot_gives_level_zero() {
        let p = parse_presentation("< a, b ; b >").unwrap();
        let r = rewrite_case1(&p, gen_of(&p, "a")).unwrap();
        assert_eq!(r.interval, (0, 0));
        assert_eq!(r.alphabet.names(), ["b@0"]);
        assert_eq!(r.rewritten.len(), 1);
        assert_eq!(expand_case1(&r, gen_of(&p, "a")).len(), 1);
    }

    #[test]
    fn case1_negative_levels() {
        let p = parse_presentation("< a, b ; a^-1 b a b^-1 >").unwrap();
        let r = rewrite_case1(&p, gen_of(&p, "a")).unwrap();
        assert_eq!(r.interval, (-1, 0));
        let b = gen_of(&p, "b");
        let bm1 = r.subscripted(b, -1).unwrap();
        let b0 = r.subscripted(b, 0).unwrap();
        assert_eq!(
            r.rewritten,
            Word::reduce([Letter::positive(bm1), Letter::negative(b0)])
        );
        assert_eq!(
            expand_case1(&r, gen_of(&p, "a")),
            p.normalize_relator().unwrap().root
        );
    }

    #[test]
    fn case2_trefoil() {
        let p = parse_presentation("< a, b ; a^2 b^-3 >").unwrap();
        let r = rewrite_case2(&p, gen_of(&p, "a"), gen_of(&p, "b")).unwrap();
        assert_eq!((r.p, r.q), (2, -3));
        // Q' = A⁻⁶ b⁻³
        assert_eq!(r.q_prime.len(), 9);
        // Q'' = A⁻⁴ B⁻¹ A² B⁻¹ A² B⁻¹
        let expected = Word::power_of(r.gen_a, -4)
            .concat(&Word::power_of(r.gen_b, -1))
            .concat(&Word::power_of(r.gen_a, 2))
            .concat(&Word::power_of(r.gen_b, -1))
            .concat(&Word::power_of(r.gen_a, 2))
            .concat(&Word::power_of(r.gen_b, -1));
        assert_eq!(r.q_double_prime, expected);
        assert_eq!(r.q_double_prime.exponent_sum(r.gen_a), 0);
        assert!(r.conjugator.is_empty());
        assert_eq!(r.alphabet.names(), ["A", "B"]);
    }

    #[test]
    fn case2_short_relator_collapses() {
        let p = parse_presentation("< a, b ; a b >").unwrap();
        let r = rewrite_case2(&p, gen_of(&p, "a"), gen_of(&p, "b")).unwrap();
        assert_eq!((r.p, r.q), (1, 1));
        // Q' = A b, Q'' = A B A⁻¹ which cyclically reduces to B.
        assert_eq!(r.q_double_prime, Word::from_letter(Letter::positive(r.gen_b)));
        assert_eq!(r.conjugator, Word::from_letter(Letter::positive(r.gen_a)));
    }

    #[test]
    fn case2_zero_sum_is_rejected() {
        let p = parse_presentation("< a, b ; a b a^-1 b^-1 >").unwrap();
        assert!(matches!(
            rewrite_case2(&p, gen_of(&p, "a"), gen_of(&p, "b")),
            Err(MagnusError::ZeroExponentSum { .. })
        ));
    }

    #[test]
    fn hierarchy_base() {
        let p = parse_presentation("< a, b ; a^2 >").unwrap();
        let h = build_hierarchy(&p, 64).unwrap();
        assert_eq!(h.depth(), 0);
        assert!(h.all_leaves_base());
    }

    #[test]
    fn hierarchy_commutator() {
        let p = parse_presentation("< a, b ; a b a^-1 b^-1 >").unwrap();
        let h = build_hierarchy(&p, 64).unwrap();
        assert!(h.all_leaves_base());
        assert!(matches!(h.root.tag, CaseTag::Case1 { .. }));
        let child = &h.root.children[0];
        assert_eq!(child.presentation.alphabet().names(), ["b@0", "b@1"]);
    }

    #[test]
    fn hierarchy_trefoil_terminates_quickly() {
        let p = parse_presentation("< a, b ; a^2 b^-3 >").unwrap();
        let h = build_hierarchy(&p, 64).unwrap();
        assert!(h.all_leaves_base());
        assert!(matches!(h.root.tag, CaseTag::Case2 { .. }));
        assert!(matches!(h.root.children[0].tag, CaseTag::Case1 { .. }));
        assert!(h.depth() <= 5);
    }

    #[test]
    fn depth_limit_carries_partial_tree() {
        let p = parse_presentation("< a, b ; a^2 b^-3 >").unwrap();
        match build_hierarchy(&p, 1) {
            Err(MagnusError::DepthLimitExceeded { partial }) => {
                assert!(partial.any_truncated());
                assert!(partial.node_count() >= 2);
            }
            other => panic!("expected depth limit error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn multiplicity_is_preserved_under_case2() {
        // (a² b⁻³)² keeps s = 2 down the chain of Case 2 rewritings.
        let p = parse_presentation("< a, b ; a^2 b^-3 a^2 b^-3 >").unwrap();
        let h = build_hierarchy(&p, 64).unwrap();
        fn multiplicities(node: &HierarchyNode, out: &mut Vec<u32>) {
            out.push(node.normalized.s);
            for c in &node.children {
                multiplicities(c, out);
            }
        }
        let mut ms = Vec::new();
        multiplicities(&h.root, &mut ms);
        assert!(ms.iter().all(|&s| s == 2), "{:?}", ms);
    }
}
