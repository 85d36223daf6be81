//! Constructors and searches over codes: direct-sum codes from independent
//! blocks, exhaustive completion of isometric addition tables for a given
//! word set, maximal-code search over all word subsets of a projective
//! space, and a harness recording how every discovered code bears on the
//! two open questions (size ≤ 2^n; unique indecomposable basis ⟺ closed
//! under intersection).
//!
//! All searches are exact and deterministic: subsets are enumerated in
//! canonical order, table cells are branched in a fixed order with
//! candidates ascending, and results are canonically sorted, so neither
//! the branch order nor the parallel width can change the output.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{AdditionTable, CodeError, SubspaceCode};
use crate::decomp::{indecomposable_bases, DecompError};
use crate::field::Field;
use crate::subspace::{enumerate_projective_space, Subspace, SubspaceError};

/// Largest word count any search will consider; the table scans are cubic
/// and the row bitmasks are 64-wide.
pub const MAX_SEARCH_WORDS: usize = 64;

const UNSET: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search configuration invalid: {reason}")]
    BadConfig { reason: String },
    #[error("blocks {0} and {1} intersect nontrivially")]
    BlocksNotDisjoint(usize, usize),
    #[error("block {index} is the zero subspace")]
    TrivialBlock { index: usize },
    #[error("block {index} is not independent of the preceding blocks")]
    BlocksDependent { index: usize },
    #[error("{m} words exceed the search cap of {cap}")]
    TooManyWords { m: usize, cap: usize },
    #[error("this construction requires GF(2) and ambient dimension at least 3")]
    BadParameters,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

/// Order in which candidate sizes are explored.  Output never depends on
/// it; only how soon the largest codes are reached does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchOrder {
    LargestFirst,
    SmallestFirst,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub field: Field,
    /// Cap on code size M (≤ 64).
    pub max_words: usize,
    /// Wall-clock budget; `None` runs to exhaustion.
    pub time_budget: Option<Duration>,
    pub branch_order: BranchOrder,
    /// 0 or 1 searches sequentially; anything larger allows data
    /// parallelism over word subsets (unbudgeted runs only).
    pub parallel_width: usize,
}

impl SearchConfig {
    pub fn new(n: usize, field: Field) -> Self {
        SearchConfig {
            n,
            field,
            max_words: MAX_SEARCH_WORDS,
            time_budget: None,
            branch_order: BranchOrder::LargestFirst,
            parallel_width: 1,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        crate::subspace::check_enumeration_scale(self.n, &self.field)?;
        if self.max_words == 0 {
            return Err(SearchError::BadConfig {
                reason: "max_words must be positive".to_string(),
            });
        }
        if self.max_words > MAX_SEARCH_WORDS {
            return Err(SearchError::TooManyWords {
                m: self.max_words,
                cap: MAX_SEARCH_WORDS,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Word subsets examined plus table-cell assignments attempted.
    pub nodes: u64,
    /// Candidate assignments rejected by a constraint.
    pub prunes: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Every linear code found, canonicalized, sorted by size descending
    /// then canonical word order.
    pub codes: Vec<SubspaceCode>,
    pub max_size: usize,
    /// True iff every subset within the configured caps was covered.
    pub exhausted: bool,
    pub stats: SearchStats,
}

/// The words of the direct sum: every subset of blocks, summed; index =
/// block-subset bitmask, so the table is bitmask XOR.  Blocks must be
/// nonzero and jointly independent (each block meets the sum of the
/// previous ones in {0}), which makes all 2^r words distinct and the
/// construction linear.
pub fn build_direct_sum_code(blocks: &[Subspace]) -> Result<SubspaceCode, SearchError> {
    for (i, b) in blocks.iter().enumerate() {
        if b.is_zero() {
            return Err(SearchError::TrivialBlock { index: i });
        }
        for (j, c) in blocks.iter().enumerate().skip(i + 1) {
            let inter = b.intersect(c)?;
            if !inter.is_zero() {
                return Err(SearchError::BlocksNotDisjoint(i, j));
            }
        }
    }
    let r = blocks.len();
    if r >= 7 {
        // 2^r words would overrun both the word cap and any ambient.
        return Err(SearchError::TooManyWords {
            m: 1 << r,
            cap: MAX_SEARCH_WORDS,
        });
    }
    let (words, _) = direct_sum_words(blocks)?;
    let table = xor_table(r);
    Ok(SubspaceCode::new(words, Some(table))?)
}

fn direct_sum_words(blocks: &[Subspace]) -> Result<(Vec<Subspace>, Subspace), SearchError> {
    let first = blocks.first().ok_or(SearchError::BadConfig {
        reason: "a direct sum needs at least one block".to_string(),
    })?;
    let field = first.field().clone();
    let zero = Subspace::zero(first.ambient(), &field)?;
    let mut words = vec![zero.clone()];
    let mut span = zero;
    for (i, b) in blocks.iter().enumerate() {
        if span.intersect(b)?.dim() != 0 {
            return Err(SearchError::BlocksDependent { index: i });
        }
        let mut extended: Vec<Subspace> = words.iter().map(|w| w.sum(b)).collect::<Result<_, _>>()?;
        span = span.sum(b)?;
        words.append(&mut extended);
    }
    Ok((words, span))
}

fn xor_table(r: usize) -> AdditionTable {
    AdditionTable::new(
        (0..1usize << r)
            .map(|a| (0..1usize << r).map(|b| a ^ b).collect())
            .collect(),
    )
    .expect("XOR of masks below 2^r is a valid shape")
}

/// Streams every direct-sum code over GF(q)^n: one per nonempty set of
/// jointly independent nonzero blocks, blocks taken in canonical subspace
/// order so each code is produced exactly once.  The visitor may stop the
/// stream early; the return value says whether the stream ran to the end.
pub fn for_each_direct_sum_code<F>(
    n: usize,
    field: &Field,
    visit: &mut F,
) -> Result<bool, SearchError>
where
    F: FnMut(&SubspaceCode) -> ControlFlow<()>,
{
    let space = enumerate_projective_space(n, field)?;
    let candidates = &space[1..];
    let zero = &space[0];
    let words = vec![zero.clone()];
    let flow = extend_direct_sums(candidates, 0, &words, zero, visit)?;
    Ok(flow.is_continue())
}

fn extend_direct_sums<F>(
    candidates: &[Subspace],
    start: usize,
    words: &[Subspace],
    span: &Subspace,
    visit: &mut F,
) -> Result<ControlFlow<()>, SearchError>
where
    F: FnMut(&SubspaceCode) -> ControlFlow<()>,
{
    for i in start..candidates.len() {
        let block = &candidates[i];
        if span.intersect(block)?.dim() != 0 {
            continue;
        }
        let mut extended = Vec::with_capacity(words.len() * 2);
        extended.extend_from_slice(words);
        for w in words {
            extended.push(w.sum(block)?);
        }
        let r = extended.len().trailing_zeros() as usize;
        let code = SubspaceCode::new(extended.clone(), Some(xor_table(r)))?;
        if visit(&code).is_break() {
            return Ok(ControlFlow::Break(()));
        }
        let wider = span.sum(block)?;
        if extend_direct_sums(candidates, i + 1, &extended, &wider, visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Exhaustively enumerates the addition tables making the given word set
/// a linear code.  `words[0]` must be {0}.  A word count that is not a
/// power of 2 has no candidate tables at all.
///
/// The backtracking branches over upper-triangle cells in a fixed order.
/// Every assignment (i,j) = k is propagated to the whole involution
/// triple ((i,k) = j, (j,k) = i and mirrors), filtered by the dimension
/// law dim(X ⊞ Y) = d_S(X, Y) — a consequence of isometry, so no valid
/// table is lost — and screened by row bijectivity and the associativity
/// of every fully assigned triple.  Completed tables are re-verified from
/// scratch before being returned, sorted.
pub fn complete_addition_table(words: &[Subspace]) -> Result<Vec<AdditionTable>, SearchError> {
    let mut stats = SearchStats::default();
    complete_addition_table_counted(words, &mut stats)
}

fn complete_addition_table_counted(
    words: &[Subspace],
    stats: &mut SearchStats,
) -> Result<Vec<AdditionTable>, SearchError> {
    let code = SubspaceCode::new(words.to_vec(), None)?;
    let m = code.len();
    if m > MAX_SEARCH_WORDS {
        return Err(SearchError::TooManyWords {
            m,
            cap: MAX_SEARCH_WORDS,
        });
    }
    if !m.is_power_of_two() {
        return Ok(Vec::new());
    }

    let dims: Vec<usize> = (0..m).map(|i| code.word(i).dim()).collect();
    let mut dist = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in i..m {
            let meet = code
                .word(i)
                .intersect(code.word(j))
                .expect("words share ambient and field");
            let d = dims[i] + dims[j] - 2 * meet.dim();
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }

    let mut table = vec![vec![UNSET; m]; m];
    let mut row_used = vec![0u64; m];
    for x in 0..m {
        table[0][x] = x;
        table[x][0] = x;
        table[x][x] = 0;
        row_used[x] |= 1 << x | 1;
    }
    row_used[0] = if m == 64 { u64::MAX } else { (1 << m) - 1 };

    let cells: Vec<(usize, usize)> = (1..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();

    let mut searcher = TableSearch {
        code: &code,
        dims,
        dist,
        table,
        row_used,
        undo: Vec::new(),
        cells,
        results: Vec::new(),
        stats,
    };
    searcher.run(0);
    let mut results = searcher.results;
    results.sort();
    Ok(results)
}

struct TableSearch<'a> {
    code: &'a SubspaceCode,
    dims: Vec<usize>,
    dist: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
    row_used: Vec<u64>,
    undo: Vec<(usize, usize)>,
    cells: Vec<(usize, usize)>,
    results: Vec<AdditionTable>,
    stats: &'a mut SearchStats,
}

impl TableSearch<'_> {
    fn run(&mut self, mut cell: usize) {
        while cell < self.cells.len() {
            let (i, j) = self.cells[cell];
            if self.table[i][j] == UNSET {
                break;
            }
            cell += 1;
        }
        if cell == self.cells.len() {
            self.finalize();
            return;
        }
        let (i, j) = self.cells[cell];
        for k in 0..self.table.len() {
            if k == i || k == j || self.dims[k] != self.dist[i][j] {
                continue;
            }
            self.stats.nodes += 1;
            let mark = self.undo.len();
            if self.assign(i, j, k) {
                self.run(cell + 1);
            } else {
                self.stats.prunes += 1;
            }
            self.rollback(mark);
        }
    }

    /// Sets one cell, honoring prior assignments, the dimension law, and
    /// row bijectivity.
    fn set(&mut self, r: usize, c: usize, v: usize) -> bool {
        let current = self.table[r][c];
        if current != UNSET {
            return current == v;
        }
        if self.dims[v] != self.dist[r][c] || self.row_used[r] & (1 << v) != 0 {
            return false;
        }
        self.table[r][c] = v;
        self.row_used[r] |= 1 << v;
        self.undo.push((r, c));
        true
    }

    /// Assigns i ⊞ j = k together with the whole involution triple, then
    /// checks associativity on every triple this completes.
    fn assign(&mut self, i: usize, j: usize, k: usize) -> bool {
        let forced = [(i, j, k), (j, i, k), (i, k, j), (k, i, j), (j, k, i), (k, j, i)];
        if !forced.iter().all(|&(r, c, v)| self.set(r, c, v)) {
            return false;
        }
        for &(a, b) in &[(i, j), (i, k), (j, k)] {
            for x in 0..self.table.len() {
                if !(self.assoc_ok(a, b, x) && self.assoc_ok(a, x, b) && self.assoc_ok(x, a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// (a ⊞ b) ⊞ c = a ⊞ (b ⊞ c) whenever all four entries are assigned.
    fn assoc_ok(&self, a: usize, b: usize, c: usize) -> bool {
        let ab = self.table[a][b];
        let bc = self.table[b][c];
        if ab == UNSET || bc == UNSET {
            return true;
        }
        let left = self.table[ab][c];
        let right = self.table[a][bc];
        left == UNSET || right == UNSET || left == right
    }

    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let (r, c) = self.undo.pop().expect("undo stack length checked");
            let v = self.table[r][c];
            self.table[r][c] = UNSET;
            self.row_used[r] &= !(1 << v);
        }
    }

    fn finalize(&mut self) {
        let rows = self.table.clone();
        let table = AdditionTable::new(rows).expect("search fills a complete square table");
        let candidate = SubspaceCode::new(self.code.words().to_vec(), Some(table.clone()))
            .expect("word list was validated on entry");
        if candidate
            .is_linear()
            .expect("table present by construction")
            .passed
        {
            self.results.push(table);
        }
    }
}

/// Searches for the largest linear codes over GF(q)^n: every word subset
/// of the projective space within the configured caps (power-of-2 sizes
/// only, subsets in canonical order) is tried for table completion, after
/// seeding with all direct-sum codes.  With a time budget the search
/// reports `exhausted = false` when cut short; discovered codes are
/// always canonically sorted and deduplicated.
pub fn search_max_linear_code(cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    cfg.validate()?;
    let deadline = cfg.time_budget.map(|b| Instant::now() + b);
    let space = enumerate_projective_space(cfg.n, &cfg.field)?;
    let nonzero = &space[1..];
    let mut found: BTreeMap<(Reverse<usize>, String), SubspaceCode> = BTreeMap::new();
    let mut stats = SearchStats::default();
    let mut exhausted = true;

    let seeded = for_each_direct_sum_code(cfg.n, &cfg.field, &mut |code| {
        if expired(deadline) {
            return ControlFlow::Break(());
        }
        if code.len() <= cfg.max_words {
            insert_code(&mut found, code);
        }
        ControlFlow::Continue(())
    })?;
    exhausted &= seeded;

    let mut sizes: Vec<usize> = (0..)
        .map(|e| 1usize << e)
        .take_while(|&m| m <= cfg.max_words.min(nonzero.len() + 1))
        .collect();
    if cfg.branch_order == BranchOrder::LargestFirst {
        sizes.reverse();
    }

    for &m in &sizes {
        if !exhausted {
            break;
        }
        let combos: Vec<Vec<usize>> = (0..nonzero.len()).combinations(m - 1).collect();
        let parallel = cfg.parallel_width > 1 && deadline.is_none();
        if parallel {
            let results: Vec<(SearchStats, Vec<SubspaceCode>)> = combos
                .par_iter()
                .map(|combo| {
                    let mut local = SearchStats::default();
                    let codes = try_subset(&space, combo, &mut local);
                    (local, codes)
                })
                .collect();
            for (local, codes) in results {
                stats.absorb(local);
                for code in codes {
                    insert_code(&mut found, &code);
                }
            }
        } else {
            for combo in &combos {
                if expired(deadline) {
                    exhausted = false;
                    break;
                }
                for code in try_subset(&space, combo, &mut stats) {
                    insert_code(&mut found, &code);
                }
            }
        }
    }

    let codes: Vec<SubspaceCode> = found.into_values().collect();
    let max_size = codes.iter().map(SubspaceCode::len).max().unwrap_or(0);
    Ok(SearchOutcome {
        codes,
        max_size,
        exhausted,
        stats,
    })
}

fn expired(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

fn try_subset(space: &[Subspace], combo: &[usize], stats: &mut SearchStats) -> Vec<SubspaceCode> {
    stats.nodes += 1;
    let mut words = Vec::with_capacity(combo.len() + 1);
    words.push(space[0].clone());
    words.extend(combo.iter().map(|&i| space[i + 1].clone()));
    let tables = complete_addition_table_counted(&words, stats)
        .expect("subset words are valid by construction");
    tables
        .into_iter()
        .map(|t| {
            SubspaceCode::new(words.clone(), Some(t)).expect("validated by the table search")
        })
        .collect()
}

fn insert_code(
    found: &mut BTreeMap<(Reverse<usize>, String), SubspaceCode>,
    code: &SubspaceCode,
) {
    let canon = code.canonicalized();
    found.entry((Reverse(canon.len()), canonical_key(&canon))).or_insert(canon);
}

fn canonical_key(canon: &SubspaceCode) -> String {
    let words = canon.words().iter().map(Subspace::label).join(",");
    let table = canon
        .table()
        .map(|t| t.rows().iter().map(|r| r.iter().join(" ")).join("|"))
        .unwrap_or_default();
    format!("{words}#{table}")
}

/// How one verified code bears on the open questions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeFinding {
    pub size: usize,
    pub closed_under_intersection: bool,
    pub unique_indecomposable_basis: bool,
    /// M ≤ 2^n.
    pub within_power_bound: bool,
}

/// Search outcome annotated per code; the counterexample lists hold
/// indices into `outcome.codes`.
#[derive(Debug, Clone)]
pub struct HarnessReport {
    pub outcome: SearchOutcome,
    pub findings: Vec<CodeFinding>,
    /// Codes with M > 2^n: would refute the size conjecture.
    pub bound_counterexamples: Vec<usize>,
    /// Closed under intersection yet without a unique indecomposable
    /// basis: would refute the proven direction of the basis conjecture.
    pub forward_counterexamples: Vec<usize>,
    /// Unique basis without closure: relevant to the open converse,
    /// reported for study rather than treated as a failure.
    pub converse_findings: Vec<usize>,
}

/// Classifies one linear code against both conjectures.
pub fn assess_code(code: &SubspaceCode) -> Result<CodeFinding, DecompError> {
    let basis = indecomposable_bases(code)?;
    Ok(CodeFinding {
        size: code.len(),
        closed_under_intersection: code.is_closed_under_intersection(),
        unique_indecomposable_basis: basis.unique,
        within_power_bound: code.len() <= 1usize << code.ambient(),
    })
}

/// Runs the maximal-code search and classifies every discovered code.
pub fn conjecture_harness(cfg: &SearchConfig) -> Result<HarnessReport, SearchError> {
    let outcome = search_max_linear_code(cfg)?;
    let findings: Vec<CodeFinding> = outcome
        .codes
        .iter()
        .map(|c| assess_code(c).expect("search results verify as linear"))
        .collect();
    let pick = |f: &dyn Fn(&CodeFinding) -> bool| -> Vec<usize> {
        findings
            .iter()
            .enumerate()
            .filter(|(_, fd)| f(fd))
            .map(|(i, _)| i)
            .collect()
    };
    Ok(HarnessReport {
        bound_counterexamples: pick(&|f| !f.within_power_bound),
        forward_counterexamples: pick(&|f| {
            f.closed_under_intersection && !f.unique_indecomposable_basis
        }),
        converse_findings: pick(&|f| {
            f.unique_indecomposable_basis && !f.closed_under_intersection
        }),
        outcome,
        findings,
    })
}

/// The classic four-word code over GF(2)^n (n ≥ 3) that is linear but not
/// closed under intersection: three planes through the common line
/// ⟨e1⟩, any two adding to the third.
pub fn remark_counterexample(field: &Field, n: usize) -> Result<SubspaceCode, SearchError> {
    if field.q() != 2 || n < 3 {
        return Err(SearchError::BadParameters);
    }
    let e = |i: usize| {
        let mut v = vec![0u8; n];
        v[i] = 1;
        v
    };
    let e23 = {
        let mut v = vec![0u8; n];
        v[1] = 1;
        v[2] = 1;
        v
    };
    let x1 = crate::subspace::canonicalize(&[e(0), e(1)], n, field)?;
    let x2 = crate::subspace::canonicalize(&[e(0), e(2)], n, field)?;
    let x3 = crate::subspace::canonicalize(&[e(0), e23], n, field)?;
    let z = crate::subspace::canonicalize(&[e(0)], n, field)?;
    for (a, b) in [(&x1, &x2), (&x1, &x3), (&x2, &x3)] {
        assert_eq!(
            a.intersect(b).expect("same ambient"),
            z,
            "the three planes must pairwise meet in ⟨e1⟩"
        );
    }
    let zero = Subspace::zero(n, field)?;
    let table = AdditionTable::new(vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ])
    .expect("4x4 involution table");
    Ok(SubspaceCode::new(vec![zero, x1, x2, x3], Some(table))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::indecomposable_codewords;
    use crate::field::FieldSpec;
    use crate::subspace::canonicalize;

    fn gf2() -> Field {
        FieldSpec::gf(2).unwrap()
    }

    fn span(gens: &[&[u8]], n: usize, field: &Field) -> Subspace {
        let rows: Vec<Vec<u8>> = gens.iter().map(|g| g.to_vec()).collect();
        canonicalize(&rows, n, field).unwrap()
    }

    fn axes(n: usize) -> Vec<Subspace> {
        let f = gf2();
        (0..n)
            .map(|i| {
                let mut e = vec![0u8; n];
                e[i] = 1;
                canonicalize(&[e], n, &f).unwrap()
            })
            .collect()
    }

    #[test]
    fn direct_sum_of_axes_is_the_coordinate_code() {
        let code = build_direct_sum_code(&axes(3)).unwrap();
        assert_eq!(code.len(), 8);
        assert!(code.is_linear().unwrap().passed);
        assert!(code.is_closed_under_intersection());
        let ind = indecomposable_codewords(&code).unwrap();
        let blocks: Vec<&Subspace> = ind.iter().map(|&i| code.word(i)).collect();
        assert_eq!(blocks, axes(3).iter().collect::<Vec<_>>());
    }

    #[test]
    fn single_block_gives_the_two_word_code() {
        let f = gf2();
        let code = build_direct_sum_code(&[Subspace::full(3, &f).unwrap()]).unwrap();
        assert_eq!(code.len(), 2);
        assert!(code.word(1).is_full());
    }

    #[test]
    fn mixed_dimension_blocks() {
        let f = gf2();
        let blocks = [
            span(&[&[1, 0, 0], &[0, 1, 0]], 3, &f),
            span(&[&[0, 0, 1]], 3, &f),
        ];
        let code = build_direct_sum_code(&blocks).unwrap();
        assert_eq!(code.len(), 4);
        let dims: Vec<usize> = indecomposable_codewords(&code)
            .unwrap()
            .iter()
            .map(|&i| code.word(i).dim())
            .collect();
        assert_eq!(dims, vec![2, 1]);
    }

    #[test]
    fn bad_block_families_are_rejected() {
        let f = gf2();
        let l1 = span(&[&[1, 0]], 2, &f);
        let l2 = span(&[&[0, 1]], 2, &f);
        let l3 = span(&[&[1, 1]], 2, &f);
        assert_eq!(
            build_direct_sum_code(&[l1.clone(), l1.clone()]).unwrap_err(),
            SearchError::BlocksNotDisjoint(0, 1)
        );
        assert_eq!(
            build_direct_sum_code(&[l1.clone(), Subspace::zero(2, &f).unwrap()]).unwrap_err(),
            SearchError::TrivialBlock { index: 1 }
        );
        // Pairwise disjoint yet dependent: the third line lies in the span
        // of the first two.
        assert_eq!(
            build_direct_sum_code(&[l1, l2, l3]).unwrap_err(),
            SearchError::BlocksDependent { index: 2 }
        );
    }

    #[test]
    fn direct_sum_stream_counts() {
        let mut count = 0usize;
        let done = for_each_direct_sum_code(2, &gf2(), &mut |code| {
            assert!(code.len().is_power_of_two());
            count += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert!(done);
        // 4 single blocks, 3 disjoint line pairs.
        assert_eq!(count, 7);

        let mut count3 = 0usize;
        for_each_direct_sum_code(3, &gf2(), &mut |_| {
            count3 += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        // 15 singles + 21 line pairs + 28 line/plane pairs + 28 line
        // triples (unordered bases).
        assert_eq!(count3, 92);
    }

    #[test]
    fn stream_stops_on_break() {
        let mut count = 0usize;
        let done = for_each_direct_sum_code(3, &gf2(), &mut |_| {
            count += 1;
            if count == 5 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert!(!done);
        assert_eq!(count, 5);
    }

    #[test]
    fn remark_words_admit_exactly_one_table() {
        let code = remark_counterexample(&gf2(), 3).unwrap();
        let tables = complete_addition_table(code.words()).unwrap();
        assert_eq!(tables.len(), 1);
        assert_eq!(&tables[0], code.table().unwrap());
    }

    #[test]
    fn non_power_of_two_has_no_tables() {
        let space = enumerate_projective_space(2, &gf2()).unwrap();
        assert_eq!(complete_addition_table(&space).unwrap(), vec![]);
    }

    #[test]
    fn three_lines_have_no_table() {
        let f = gf2();
        let words = vec![
            Subspace::zero(2, &f).unwrap(),
            span(&[&[0, 1]], 2, &f),
            span(&[&[1, 0]], 2, &f),
            span(&[&[1, 1]], 2, &f),
        ];
        assert_eq!(
            complete_addition_table(&words).unwrap(),
            vec![],
            "no word of dimension d_S(line, line) = 2 exists among the lines"
        );
    }

    #[test]
    fn two_lines_and_their_plane_complete_uniquely() {
        let f = gf2();
        let words = vec![
            Subspace::zero(2, &f).unwrap(),
            span(&[&[0, 1]], 2, &f),
            span(&[&[1, 0]], 2, &f),
            Subspace::full(2, &f).unwrap(),
        ];
        let tables = complete_addition_table(&words).unwrap();
        assert_eq!(tables.len(), 1);
        let expect = AdditionTable::new(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        assert_eq!(tables[0], expect);
    }

    #[test]
    fn full_projective_space_of_dimension_three_has_no_table() {
        let space = enumerate_projective_space(3, &gf2()).unwrap();
        assert_eq!(space.len(), 16);
        assert_eq!(complete_addition_table(&space).unwrap(), vec![]);
    }

    #[test]
    fn exhaustive_search_in_the_projective_plane() {
        let cfg = SearchConfig::new(2, gf2());
        let outcome = search_max_linear_code(&cfg).unwrap();
        assert!(outcome.exhausted);
        assert_eq!(outcome.max_size, 4);
        assert!(outcome.stats.nodes > 0);
        for code in &outcome.codes {
            assert!(code.is_linear().unwrap().passed);
            assert!(code.verify_lemma_suite().unwrap().passed);
        }
        let sizes: Vec<usize> = outcome.codes.iter().map(SubspaceCode::len).collect();
        let mut sorted = sizes.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(sizes, sorted, "codes arrive largest first");
        // {0}, four two-word codes, three direct sums of two lines.
        assert_eq!(sizes, vec![4, 4, 4, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn search_is_deterministic_across_knobs() {
        let keys = |outcome: &SearchOutcome| -> Vec<String> {
            outcome.codes.iter().map(canonical_key).collect()
        };
        let mut base = SearchConfig::new(2, gf2());
        base.branch_order = BranchOrder::SmallestFirst;
        let a = search_max_linear_code(&base).unwrap();
        let mut wide = SearchConfig::new(2, gf2());
        wide.parallel_width = 4;
        let b = search_max_linear_code(&wide).unwrap();
        assert_eq!(keys(&a), keys(&b));
        assert_eq!(a.stats, b.stats, "full coverage counts the same work");
    }

    #[test]
    fn single_dimension_max_is_two() {
        let outcome = search_max_linear_code(&SearchConfig::new(1, FieldSpec::gf(5).unwrap())).unwrap();
        assert!(outcome.exhausted);
        assert_eq!(outcome.max_size, 2);
    }

    #[test]
    fn zero_budget_truncates_but_keeps_determinism_of_order() {
        let mut cfg = SearchConfig::new(3, gf2());
        cfg.time_budget = Some(Duration::ZERO);
        let outcome = search_max_linear_code(&cfg).unwrap();
        assert!(!outcome.exhausted);
    }

    #[test]
    fn generous_budget_still_exhausts_the_plane() {
        let mut cfg = SearchConfig::new(2, gf2());
        cfg.time_budget = Some(Duration::from_secs(120));
        let outcome = search_max_linear_code(&cfg).unwrap();
        assert!(outcome.exhausted);
        assert_eq!(outcome.max_size, 4);
    }

    #[test]
    fn config_validation() {
        let mut cfg = SearchConfig::new(2, gf2());
        cfg.max_words = 0;
        assert!(matches!(
            search_max_linear_code(&cfg).unwrap_err(),
            SearchError::BadConfig { .. }
        ));
        cfg.max_words = 65;
        assert_eq!(
            search_max_linear_code(&cfg).unwrap_err(),
            SearchError::TooManyWords { m: 65, cap: 64 }
        );
        let big = SearchConfig::new(5, FieldSpec::gf(3).unwrap());
        assert!(matches!(
            search_max_linear_code(&big).unwrap_err(),
            SearchError::Subspace(SubspaceError::ScaleCap { .. })
        ));
    }

    #[test]
    fn remark_counterexample_properties() {
        let code = remark_counterexample(&gf2(), 3).unwrap();
        assert!(code.is_linear().unwrap().passed);
        assert!(!code.is_closed_under_intersection());
        let meet = code.word(1).intersect(code.word(2)).unwrap();
        let caveat = meet
            .intersect(code.word(code.table().unwrap().add(1, 2)))
            .unwrap();
        assert_eq!(caveat.dim(), 1);

        let wide = remark_counterexample(&gf2(), 5).unwrap();
        assert!(wide.is_linear().unwrap().passed);

        assert_eq!(
            remark_counterexample(&FieldSpec::gf(3).unwrap(), 3).unwrap_err(),
            SearchError::BadParameters
        );
        assert_eq!(
            remark_counterexample(&gf2(), 2).unwrap_err(),
            SearchError::BadParameters
        );
    }

    #[test]
    fn harness_finds_no_counterexamples_in_the_plane() {
        let report = conjecture_harness(&SearchConfig::new(2, gf2())).unwrap();
        assert!(report.outcome.exhausted);
        assert_eq!(report.findings.len(), report.outcome.codes.len());
        assert!(report.bound_counterexamples.is_empty());
        assert!(report.forward_counterexamples.is_empty());
        assert!(report.converse_findings.is_empty());
    }

    #[test]
    fn assessment_of_known_codes() {
        let remark = remark_counterexample(&gf2(), 3).unwrap();
        let finding = assess_code(&remark).unwrap();
        assert!(!finding.closed_under_intersection);
        assert!(!finding.unique_indecomposable_basis);
        assert!(finding.within_power_bound);

        let coordinate = build_direct_sum_code(&axes(3)).unwrap();
        let finding = assess_code(&coordinate).unwrap();
        assert!(finding.closed_under_intersection);
        assert!(finding.unique_indecomposable_basis);
        assert!(finding.within_power_bound);
    }
}
