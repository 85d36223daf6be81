//! Indecomposable codewords, pairwise-disjoint families, and unique
//! ⊞-decomposition for codes closed under intersection.
//!
//! Uniqueness claims are certified by exhausting all subsets of the
//! indecomposable list rather than assumed: for intersection-closed codes
//! the indecomposable count is log₂M ≤ 6 at the ambient cap, so the
//! exhaustion is at most 64 subsets per word.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::code::{CheckReport, CodeError, SubspaceCode, Tally};
use crate::subspace::Subspace;

/// Subfamily exhaustion is 2^size; families inside linear codes have
/// additive dimensions, so anything near this cap is already pathological.
pub const MAX_FAMILY_SIZE: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("operation requires a code passing the linearity checks")]
    NotLinear,
    #[error("operation requires a code closed under intersection")]
    NotClosedUnderIntersection,
    #[error("codewords {0} and {1} intersect nontrivially")]
    NotDisjoint(usize, usize),
    #[error("word {word} admits no decomposition into indecomposables")]
    NoDecomposition { word: usize },
    #[error("word {word} admits {count} distinct decompositions")]
    AmbiguousDecomposition { word: usize, count: usize },
    #[error("word index {index} is out of range")]
    BadIndex { index: usize },
    #[error("family of {size} exceeds the subfamily-exhaustion cap of {cap}")]
    FamilyTooLarge { size: usize, cap: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A word expressed as the ⊞-sum of an index set into the indecomposable
/// list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Word index of the decomposed word.
    pub target: usize,
    /// Sorted positions into the indecomposable list.
    pub parts: Vec<usize>,
}

/// All minimal ⊞-spanning sets drawn from the indecomposable codewords.
#[derive(Debug, Clone, Serialize)]
pub struct BasisReport {
    /// Word indices of the indecomposable codewords, ascending.
    pub indecomposables: Vec<usize>,
    /// Each basis: sorted positions into `indecomposables`, size log₂M.
    pub bases: Vec<Vec<usize>>,
    pub unique: bool,
}

fn require_linear(code: &SubspaceCode) -> Result<(), DecompError> {
    if code.is_linear()?.passed {
        Ok(())
    } else {
        Err(DecompError::NotLinear)
    }
}

/// Word indices of the nonzero words not expressible as Y₁ ⊞ Y₂ with both
/// dimensions strictly below their own.  {0} is never indecomposable.
pub fn indecomposable_codewords(code: &SubspaceCode) -> Result<Vec<usize>, DecompError> {
    require_linear(code)?;
    let table = code.table().expect("linearity implies a table");
    let m = code.len();
    Ok((1..m)
        .filter(|&y| {
            let dim = code.word(y).dim();
            !(0..m).any(|a| {
                let b = table.add(a, y);
                // a ⊞ b = y by cancellation; the pair must cut strictly.
                table.add(a, b) == y && code.word(a).dim() < dim && code.word(b).dim() < dim
            })
        })
        .collect())
}

fn check_indices(indices: &[usize], code: &SubspaceCode) -> Result<(), DecompError> {
    match indices.iter().find(|&&i| i >= code.len()) {
        Some(&index) => Err(DecompError::BadIndex { index }),
        None => Ok(()),
    }
}

/// True iff all pairwise intersections within the family are {0}.
pub fn check_pairwise_disjoint(
    indices: &[usize],
    code: &SubspaceCode,
) -> Result<bool, DecompError> {
    Ok(first_nondisjoint_pair(indices, code)?.is_none())
}

fn first_nondisjoint_pair(
    indices: &[usize],
    code: &SubspaceCode,
) -> Result<Option<(usize, usize)>, DecompError> {
    check_indices(indices, code)?;
    for (p, &i) in indices.iter().enumerate() {
        for &j in &indices[p + 1..] {
            let inter = code
                .word(i)
                .intersect(code.word(j))
                .expect("words share ambient and field");
            if !inter.is_zero() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// For a pairwise-disjoint family inside a linear code, verifies the
/// consequences the family must satisfy: each member meets the sum of the
/// others trivially, the ⊞-sum equals the vector-space sum, dimensions
/// add, and no nonempty subfamily ⊞-sums to {0}.
pub fn verify_disjoint_family(
    indices: &[usize],
    code: &SubspaceCode,
) -> Result<CheckReport, DecompError> {
    require_linear(code)?;
    if let Some((i, j)) = first_nondisjoint_pair(indices, code)? {
        return Err(DecompError::NotDisjoint(i, j));
    }
    if indices.len() > MAX_FAMILY_SIZE {
        return Err(DecompError::FamilyTooLarge {
            size: indices.len(),
            cap: MAX_FAMILY_SIZE,
        });
    }
    let table = code.table().expect("linearity implies a table");
    let field = code.field().clone();
    let zero = Subspace::zero(code.ambient(), &field).expect("ambient already validated");

    let mut others_meet = Tally::new("disjoint.othersmeet");
    let mut sum_eq = Tally::new("disjoint.sumeq");
    let mut dims = Tally::new("disjoint.dims");
    let mut independent = Tally::new("disjoint.independent");

    for (p, &j) in indices.iter().enumerate() {
        let others = indices
            .iter()
            .enumerate()
            .filter(|&(o, _)| o != p)
            .fold(zero.clone(), |acc, (_, &i)| {
                acc.sum(code.word(i)).expect("words share ambient and field")
            });
        let inter = code
            .word(j)
            .intersect(&others)
            .expect("words share ambient and field");
        if !inter.is_zero() {
            others_meet.fail(&[j], || {
                format!(
                    "word {j} meets the sum of the rest in dimension {}",
                    inter.dim()
                )
            });
        }
    }

    let box_sum = indices.iter().fold(0, |acc, &i| table.add(acc, i));
    let vec_sum = indices.iter().fold(zero, |acc, &i| {
        acc.sum(code.word(i)).expect("words share ambient and field")
    });
    if code.word(box_sum) != &vec_sum {
        sum_eq.fail(indices, || {
            "the ⊞-sum of the family differs from its vector-space sum".to_string()
        });
    }
    let dim_total: usize = indices.iter().map(|&i| code.word(i).dim()).sum();
    if code.word(box_sum).dim() != dim_total {
        dims.fail(indices, || {
            format!(
                "⊞-sum has dimension {} but the dimensions add to {dim_total}",
                code.word(box_sum).dim()
            )
        });
    }

    for mask in 1u64..1 << indices.len() {
        let folded = indices
            .iter()
            .enumerate()
            .filter(|&(p, _)| mask & (1 << p) != 0)
            .fold(0, |acc, (_, &i)| table.add(acc, i));
        if folded == 0 {
            independent.fail(&[], || {
                let members: Vec<usize> = indices
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| mask & (1 << p) != 0)
                    .map(|(_, &i)| i)
                    .collect();
                format!("nonempty subfamily {members:?} ⊞-sums to {{0}}")
            });
        }
    }

    Ok(CheckReport::from_tallies(
        vec![others_meet, sum_eq, dims, independent],
        vec![],
    ))
}

struct DecompContext {
    indecomposables: Vec<usize>,
    /// folds[mask] = ⊞-sum of the indecomposables selected by mask.
    folds: Vec<usize>,
}

fn decomp_context(code: &SubspaceCode) -> Result<DecompContext, DecompError> {
    require_linear(code)?;
    if !code.is_closed_under_intersection() {
        return Err(DecompError::NotClosedUnderIntersection);
    }
    let indecomposables = indecomposable_codewords(code)?;
    let table = code.table().expect("linearity implies a table");
    let k = indecomposables.len();
    if k > MAX_FAMILY_SIZE {
        return Err(DecompError::FamilyTooLarge {
            size: k,
            cap: MAX_FAMILY_SIZE,
        });
    }
    let mut folds = vec![0usize; 1 << k];
    for mask in 1usize..1 << k {
        let low = mask.trailing_zeros() as usize;
        folds[mask] = table.add(folds[mask & (mask - 1)], indecomposables[low]);
    }
    Ok(DecompContext {
        indecomposables,
        folds,
    })
}

fn decompose_in(
    ctx: &DecompContext,
    code: &SubspaceCode,
    word: usize,
) -> Result<Decomposition, DecompError> {
    let matches: Vec<usize> = (0..ctx.folds.len())
        .filter(|&mask| ctx.folds[mask] == word)
        .collect();
    match matches.as_slice() {
        [] => Err(DecompError::NoDecomposition { word }),
        [mask] => {
            let parts: Vec<usize> =
                (0..ctx.indecomposables.len()).filter(|p| mask & (1 << p) != 0).collect();
            let field = code.field().clone();
            let vec_sum = parts.iter().fold(
                Subspace::zero(code.ambient(), &field).expect("ambient already validated"),
                |acc, &p| {
                    acc.sum(code.word(ctx.indecomposables[p]))
                        .expect("words share ambient and field")
                },
            );
            assert_eq!(
                code.word(word),
                &vec_sum,
                "⊞-decomposition of a closed linear code must also sum as subspaces"
            );
            Ok(Decomposition {
                target: word,
                parts,
            })
        }
        several => Err(DecompError::AmbiguousDecomposition {
            word,
            count: several.len(),
        }),
    }
}

/// The unique expression of one word as a ⊞-sum of indecomposables,
/// certified unique by exhausting every subset of the indecomposable list.
pub fn decompose(code: &SubspaceCode, word: usize) -> Result<Decomposition, DecompError> {
    if word >= code.len() {
        return Err(DecompError::BadIndex { index: word });
    }
    decompose_in(&decomp_context(code)?, code, word)
}

/// Decompositions of every word, sharing one exhaustion of the subset
/// space.
pub fn decompose_all(code: &SubspaceCode) -> Result<Vec<Decomposition>, DecompError> {
    let ctx = decomp_context(code)?;
    (0..code.len()).map(|w| decompose_in(&ctx, code, w)).collect()
}

/// All subsets of the indecomposable list of size log₂M whose ⊞-span is
/// the whole code.
pub fn indecomposable_bases(code: &SubspaceCode) -> Result<BasisReport, DecompError> {
    require_linear(code)?;
    let indecomposables = indecomposable_codewords(code)?;
    let table = code.table().expect("linearity implies a table");
    let m = code.len();
    debug_assert!(m.is_power_of_two(), "guaranteed by the linearity checks");
    let k = m.trailing_zeros() as usize;
    let mut bases = Vec::new();
    // Candidate subsets of size k, in lexicographic position order.
    let positions: Vec<usize> = (0..indecomposables.len()).collect();
    for combo in combinations(&positions, k) {
        let mut reached = vec![false; m];
        for mask in 0u64..1 << k {
            let folded = combo
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask & (1 << b) != 0)
                .fold(0, |acc, (_, &p)| table.add(acc, indecomposables[p]));
            reached[folded] = true;
        }
        if reached.iter().all(|&r| r) {
            bases.push(combo);
        }
    }
    let unique = bases.len() == 1;
    Ok(BasisReport {
        indecomposables,
        bases,
        unique,
    })
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    items.iter().copied().combinations(k).collect()
}

/// `count` pairwise-disjoint families of nonzero words sampled from the
/// code: each is a greedy pass over a seeded shuffle of the nonzero words,
/// keeping a word when it meets everything already kept in {0} only.
/// Deterministic for a given (code, count, seed).
pub fn sample_disjoint_families(
    code: &SubspaceCode,
    count: usize,
    seed: u64,
) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut families = Vec::with_capacity(count);
    for _ in 0..count {
        let mut order: Vec<usize> = (1..code.len()).collect();
        order.shuffle(&mut rng);
        let mut family: Vec<usize> = Vec::new();
        for i in order {
            let disjoint = family.iter().all(|&j| {
                code.word(i)
                    .intersect(code.word(j))
                    .expect("words share ambient and field")
                    .is_zero()
            });
            if disjoint {
                family.push(i);
            }
        }
        family.sort_unstable();
        families.push(family);
    }
    families
}
