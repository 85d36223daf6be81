//! Subspace codes with an explicit addition table, and exhaustive checkers
//! for the linearity axioms, the lemma suite that linear codes must satisfy,
//! and the union–intersection theorem.
//!
//! The addition ⊞ is extra structure a word set may admit in zero, one, or
//! many ways, so it is always stored as an explicit table and never inferred.
//! Checkers scan all pairs or triples (M <= 64 keeps M^3 at most 262144) and
//! report the lexicographically first witness per check plus a total count.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::subspace::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("a code needs at least the zero word")]
    Empty,
    #[error("words[0] must be the zero subspace")]
    ZeroNotFirst,
    #[error("words {0} and {1} are identical")]
    DuplicateWord(usize, usize),
    #[error("word {index} does not match the code's ambient dimension or field")]
    MixedWord { index: usize },
    #[error("addition table must be {m}x{m} with entries below {m}")]
    BadTableShape { m: usize },
    #[error("operation requires an addition table")]
    MissingTable,
    #[error("operation requires the group and isometry checks to pass")]
    NotLinear,
    #[error("need at least two words")]
    TooFewWords,
    #[error("bit-words have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// M×M table of word indices defining ⊞ on a code of size M.
///
/// Construction only validates shape; the group axioms themselves are the
/// subject of the checkers, which must be able to fail.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AdditionTable(Vec<Vec<usize>>);

impl AdditionTable {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, CodeError> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) || rows.iter().flatten().any(|&e| e >= m) {
            return Err(CodeError::BadTableShape { m });
        }
        Ok(AdditionTable(rows))
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.0
    }
}

/// A set of distinct subspaces containing {0} at index 0, with an optional
/// addition table.  M = number of words.
#[derive(Debug, Clone)]
pub struct SubspaceCode {
    field: Field,
    ambient: usize,
    words: Vec<Subspace>,
    table: Option<AdditionTable>,
    index: HashMap<Subspace, usize>,
}

impl SubspaceCode {
    pub fn new(words: Vec<Subspace>, table: Option<AdditionTable>) -> Result<Self, CodeError> {
        let first = words.first().ok_or(CodeError::Empty)?;
        if !first.is_zero() {
            return Err(CodeError::ZeroNotFirst);
        }
        let field = first.field().clone();
        let ambient = first.ambient();
        let mut index = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.ambient() != ambient || w.field() != &field {
                return Err(CodeError::MixedWord { index: i });
            }
            if let Some(&prev) = index.get(w) {
                return Err(CodeError::DuplicateWord(prev, i));
            }
            index.insert(w.clone(), i);
        }
        if let Some(t) = &table {
            if t.size() != words.len() {
                return Err(CodeError::BadTableShape { m: words.len() });
            }
        }
        Ok(SubspaceCode {
            field,
            ambient,
            words,
            table,
            index,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// M, the number of words including {0}.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[Subspace] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Subspace {
        &self.words[i]
    }

    pub fn table(&self) -> Option<&AdditionTable> {
        self.table.as_ref()
    }

    /// Index of a subspace among the words, if it is one.
    pub fn find(&self, x: &Subspace) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Same code with nonzero words sorted into canonical order and the
    /// table re-indexed to match.  Two codes are the same (word set, ⊞)
    /// pair iff their canonicalized forms are identical.
    pub fn canonicalized(&self) -> SubspaceCode {
        let mut order: Vec<usize> = (1..self.words.len()).collect();
        order.sort_by(|&a, &b| self.words[a].cmp(&self.words[b]));
        let mut old_to_new = vec![0usize; self.words.len()];
        for (new_minus_1, &old) in order.iter().enumerate() {
            old_to_new[old] = new_minus_1 + 1;
        }
        let mut words = Vec::with_capacity(self.words.len());
        words.push(self.words[0].clone());
        words.extend(order.iter().map(|&old| self.words[old].clone()));
        let table = self.table.as_ref().map(|t| {
            let m = t.size();
            let mut rows = vec![vec![0usize; m]; m];
            for i in 0..m {
                for j in 0..m {
                    rows[old_to_new[i]][old_to_new[j]] = old_to_new[t.add(i, j)];
                }
            }
            AdditionTable::new(rows).expect("re-indexing preserves shape")
        });
        SubspaceCode::new(words, table).expect("re-indexing preserves validity")
    }

    fn require_table(&self) -> Result<&AdditionTable, CodeError> {
        self.table.as_ref().ok_or(CodeError::MissingTable)
    }

    fn meet(&self, i: usize, j: usize) -> Subspace {
        self.words[i]
            .intersect(&self.words[j])
            .expect("words share ambient and field")
    }

    fn join(&self, i: usize, j: usize) -> Subspace {
        self.words[i]
            .sum(&self.words[j])
            .expect("words share ambient and field")
    }

    /// dim(X_i ∩ X_j) for all pairs; distances derive from it.
    fn meet_dims(&self) -> Vec<Vec<usize>> {
        let m = self.words.len();
        let mut out = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in i..m {
                let d = self.meet(i, j).dim();
                out[i][j] = d;
                out[j][i] = d;
            }
        }
        out
    }

    fn distances(&self, meet_dims: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let m = self.words.len();
        let mut out = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in 0..m {
                out[i][j] = self.words[i].dim() + self.words[j].dim() - 2 * meet_dims[i][j];
            }
        }
        out
    }

    /// Group-structure checks: size a power of two, symmetry, identity at
    /// index 0, self-inverse diagonal, bijective rows, associativity on all
    /// M^3 triples.
    pub fn is_quasi_linear(&self) -> Result<CheckReport, CodeError> {
        let table = self.require_table()?;
        Ok(CheckReport::from_tallies(self.quasi_tallies(table), vec![]))
    }

    fn quasi_tallies(&self, t: &AdditionTable) -> Vec<Tally> {
        let m = self.words.len();
        let mut pow2 = Tally::new("prop2.pow2");
        if !m.is_power_of_two() {
            pow2.fail(&[], || format!("size {m} is not a power of 2"));
        }
        let mut symmetric = Tally::new("def1.table.symmetric");
        let mut identity = Tally::new("def1.ii.identity");
        let mut self_inverse = Tally::new("def1.iii.selfinverse");
        let mut bijective = Tally::new("def1.table.bijective");
        let mut assoc = Tally::new("def1.i.assoc");
        for i in 0..m {
            if t.add(i, 0) != i || t.add(0, i) != i {
                identity.fail(&[i], || format!("{{0}} ⊞ word {i} must be word {i}"));
            }
            if t.add(i, i) != 0 {
                self_inverse.fail(&[i], || format!("word {i} ⊞ itself must be {{0}}"));
            }
            let mut seen = vec![false; m];
            for j in 0..m {
                seen[t.add(i, j)] = true;
                if t.add(i, j) != t.add(j, i) {
                    symmetric.fail(&[i, j], || format!("table[{i}][{j}] != table[{j}][{i}]"));
                }
            }
            if seen.iter().any(|&s| !s) {
                bijective.fail(&[i], || format!("row {i} is not a permutation"));
            }
        }
        for i in 0..m {
            for j in 0..m {
                let ij = t.add(i, j);
                for k in 0..m {
                    if t.add(ij, k) != t.add(i, t.add(j, k)) {
                        assoc.fail(&[i, j, k], || {
                            format!("({i} ⊞ {j}) ⊞ {k} != {i} ⊞ ({j} ⊞ {k})")
                        });
                    }
                }
            }
        }
        vec![pow2, symmetric, identity, self_inverse, bijective, assoc]
    }

    /// Full linearity: the group checks plus the isometry condition
    /// d_S(X ⊞ Y1, X ⊞ Y2) = d_S(Y1, Y2) on all M^3 triples.
    pub fn is_linear(&self) -> Result<CheckReport, CodeError> {
        let table = self.require_table()?;
        let mut tallies = self.quasi_tallies(table);
        let dist = self.distances(&self.meet_dims());
        let m = self.words.len();
        let mut isometry = Tally::new("def1.iv.isometry");
        for x in 0..m {
            for y1 in 0..m {
                for y2 in 0..m {
                    if dist[table.add(x, y1)][table.add(x, y2)] != dist[y1][y2] {
                        isometry.fail(&[x, y1, y2], || {
                            format!(
                                "d_S({x} ⊞ {y1}, {x} ⊞ {y2}) = {} but d_S({y1}, {y2}) = {}",
                                dist[table.add(x, y1)][table.add(x, y2)],
                                dist[y1][y2]
                            )
                        });
                    }
                }
            }
        }
        tallies.push(isometry);
        Ok(CheckReport::from_tallies(tallies, vec![]))
    }

    /// Consequences every linear code must satisfy, scanned over all ordered
    /// pairs.  A violation here disproves linearity, so the suite requires
    /// only the group structure and is exactly how a failing isometry is
    /// diagnosed.
    pub fn verify_lemma_suite(&self) -> Result<CheckReport, CodeError> {
        let table = self.require_table()?;
        if !CheckReport::from_tallies(self.quasi_tallies(table), vec![]).passed {
            return Err(CodeError::NotLinear);
        }
        let meet_dims = self.meet_dims();
        let dist = self.distances(&meet_dims);
        let m = self.words.len();
        let dim = |i: usize| self.words[i].dim() as isize;

        let mut dim_formula = Tally::new("lemma2.dim");
        let mut cancel = Tally::new("lemma3.cancel");
        let mut direct_sum = Tally::new("lemma4.directsum");
        let mut split_x = Tally::new("lemma5.dim.i");
        let mut split_sum = Tally::new("lemma5.dim.ii");
        let mut bound = Tally::new("lemma6.bound");
        let mut equality = Tally::new("lemma6.equality");
        let mut nested_a = Tally::new("lemma7.a");
        let mut nested_b = Tally::new("lemma7.b");

        for i in 0..m {
            for j in 0..m {
                let s = table.add(i, j);
                if dim(s) != dist[i][j] as isize {
                    dim_formula.fail(&[i, j], || {
                        format!("dim(word {s}) = {} but d_S = {}", dim(s), dist[i][j])
                    });
                }
                if table.add(i, s) != j {
                    cancel.fail(&[i, j], || {
                        format!("{i} ⊞ ({i} ⊞ {j}) = {} instead of {j}", table.add(i, s))
                    });
                }
                if meet_dims[i][j] == 0 {
                    let vs_sum = self.join(i, j);
                    if self.words[s] != vs_sum || vs_sum.dim() != (dim(i) + dim(j)) as usize {
                        direct_sum.fail(&[i, j], || {
                            "disjoint words must satisfy X ⊞ Y = X ⊕ Y".to_string()
                        });
                    }
                }
                let x_meet_s = self.meet(i, s).dim() as isize;
                let y_meet_s = self.meet(j, s).dim() as isize;
                if dim(i) != meet_dims[i][j] as isize + x_meet_s {
                    split_x.fail(&[i, j], || {
                        format!(
                            "dim X = {} but dim(X∩Y) + dim(X∩(X⊞Y)) = {} + {}",
                            dim(i),
                            meet_dims[i][j],
                            x_meet_s
                        )
                    });
                }
                if dim(s) != x_meet_s + y_meet_s {
                    split_sum.fail(&[i, j], || {
                        format!(
                            "dim(X⊞Y) = {} but dim(X∩(X⊞Y)) + dim(Y∩(X⊞Y)) = {} + {}",
                            dim(s),
                            x_meet_s,
                            y_meet_s
                        )
                    });
                }
                if dim(s) < dim(i) - dim(j) {
                    bound.fail(&[i, j], || {
                        format!("dim(X⊞Y) = {} < dim X − dim Y = {}", dim(s), dim(i) - dim(j))
                    });
                }
                let y_in_x = meet_dims[i][j] == self.words[j].dim();
                if (dim(s) == dim(i) - dim(j)) != y_in_x {
                    equality.fail(&[i, j], || {
                        "dim(X⊞Y) = dim X − dim Y must hold exactly when Y ⊆ X".to_string()
                    });
                }
                if i != j && i != 0 && j != 0 {
                    // Proper containment: i, j, s are distinct indices here
                    // (s = i or s = j would force j = 0 or i = j).
                    let y_proper = y_in_x && j != i;
                    let s_in_x = self.meet(i, s).dim() == self.words[s].dim() && s != i;
                    if y_proper != s_in_x {
                        nested_a.fail(&[i, j], || {
                            "Y ⊂ X must hold exactly when (X⊞Y) ⊂ X".to_string()
                        });
                    }
                    if y_proper != (y_meet_s == 0) {
                        nested_b.fail(&[i, j], || {
                            "Y ⊂ X must hold exactly when Y ∩ (X⊞Y) = {0}".to_string()
                        });
                    }
                }
            }
        }
        Ok(CheckReport::from_tallies(
            vec![
                dim_formula,
                cancel,
                direct_sum,
                split_x,
                split_sum,
                bound,
                equality,
                nested_a,
                nested_b,
            ],
            vec![],
        ))
    }

    /// The union–intersection theorem on all unordered pairs: X∩Y is a word
    /// iff X+Y is; when both are, (X∩Y) ∩ (X⊞Y) = {0} and
    /// X+Y = (X⊞Y) ⊕ (X∩Y).  Pairs where both are absent with a nontrivial
    /// (X∩Y) ∩ (X⊞Y) are recorded as observations, not violations.
    pub fn verify_union_intersection(&self) -> Result<CheckReport, CodeError> {
        let table = self.require_table()?;
        if !self.is_linear()?.passed {
            return Err(CodeError::NotLinear);
        }
        let m = self.words.len();
        let mut iff = Tally::new("uit.iff");
        let mut trivial_meet = Tally::new("uit.trivialmeet");
        let mut direct_sum = Tally::new("uit.directsum");
        let mut agree = Tally::new("closure.agree");
        let mut observations = Vec::new();
        for i in 0..m {
            for j in i..m {
                let meet = self.meet(i, j);
                let join = self.join(i, j);
                let meet_idx = self.find(&meet);
                let join_idx = self.find(&join);
                if meet_idx.is_some() != join_idx.is_some() {
                    iff.fail(&[i, j], || {
                        format!(
                            "X∩Y {} a word but X+Y {}",
                            presence(meet_idx),
                            presence(join_idx)
                        )
                    });
                }
                let boxsum = &self.words[table.add(i, j)];
                let caveat = meet
                    .intersect(boxsum)
                    .expect("words share ambient and field");
                if meet_idx.is_some() && join_idx.is_some() {
                    if !caveat.is_zero() {
                        trivial_meet.fail(&[i, j], || {
                            format!("(X∩Y) ∩ (X⊞Y) has dimension {}", caveat.dim())
                        });
                    }
                    let rebuilt = boxsum.sum(&meet).expect("words share ambient and field");
                    if rebuilt != join || join.dim() != boxsum.dim() + meet.dim() {
                        direct_sum.fail(&[i, j], || {
                            "X+Y must equal (X⊞Y) ⊕ (X∩Y)".to_string()
                        });
                    }
                } else if meet_idx.is_none() && join_idx.is_none() && !caveat.is_zero() {
                    observations.push(Observation {
                        name: "uit.nonmember.meet".to_string(),
                        indices: vec![i, j],
                        detail: format!(
                            "X∩Y and X+Y both absent while (X∩Y) ∩ (X⊞Y) has dimension {}",
                            caveat.dim()
                        ),
                    });
                }
            }
        }
        if self.is_closed_under_intersection() != self.is_closed_under_sum() {
            agree.fail(&[], || {
                "closure under intersection and under sum must agree for linear codes".to_string()
            });
        }
        Ok(CheckReport::from_tallies(
            vec![iff, trivial_meet, direct_sum, agree],
            observations,
        ))
    }

    /// Pure set predicate; no table required.
    pub fn is_closed_under_intersection(&self) -> bool {
        let m = self.words.len();
        (0..m).all(|i| (i..m).all(|j| self.find(&self.meet(i, j)).is_some()))
    }

    /// Pure set predicate; no table required.
    pub fn is_closed_under_sum(&self) -> bool {
        let m = self.words.len();
        (0..m).all(|i| (i..m).all(|j| self.find(&self.join(i, j)).is_some()))
    }

    /// Minimum subspace distance over distinct pairs.
    pub fn minimum_distance(&self) -> Result<usize, CodeError> {
        let m = self.words.len();
        if m < 2 {
            return Err(CodeError::TooFewWords);
        }
        let mut best = usize::MAX;
        for i in 0..m {
            for j in i + 1..m {
                let d = self.words[i].dim() + self.words[j].dim() - 2 * self.meet(i, j).dim();
                best = best.min(d);
            }
        }
        Ok(best)
    }

    /// True iff all nonzero words share one dimension.  The mandatory {0}
    /// member is ignored: the classical constant-dimension notion predates
    /// the requirement that {0} be a codeword.
    pub fn is_constant_dimension(&self) -> bool {
        let mut dims = self.words.iter().skip(1).map(|w| w.dim());
        match dims.next() {
            None => true,
            Some(first) => dims.all(|d| d == first),
        }
    }
}

fn presence(idx: Option<usize>) -> &'static str {
    if idx.is_some() {
        "is"
    } else {
        "is not"
    }
}

/// The binary Hamming-space identities that ⊞ mimics: with * = AND,
/// ∘ = OR and + = XOR on supports, x + y = (x * y) + (x ∘ y) and
/// (x * y) * (x + y) = 0.
pub fn binary_word_identity_check(x: &[bool], y: &[bool]) -> Result<CheckReport, CodeError> {
    if x.len() != y.len() {
        return Err(CodeError::LengthMismatch(x.len(), y.len()));
    }
    let mut sum_identity = Tally::new("binary.sum.identity");
    let mut star_disjoint = Tally::new("binary.star.disjoint");
    for (pos, (&a, &b)) in x.iter().zip(y).enumerate() {
        let xor = a ^ b;
        let and = a & b;
        let or = a | b;
        if xor != (and ^ or) {
            sum_identity.fail(&[pos], || {
                format!("position {pos}: x+y differs from (x*y)+(x∘y)")
            });
        }
        if and & xor {
            star_disjoint.fail(&[pos], || {
                format!("position {pos}: (x*y)*(x+y) is nonzero")
            });
        }
    }
    Ok(CheckReport::from_tallies(
        vec![sum_identity, star_disjoint],
        vec![],
    ))
}

/// First violation found for one named check, if any, plus the total count.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// Word indices identifying the first violating pair/triple.
    pub indices: Vec<usize>,
    pub detail: String,
}

/// A recorded fact that is not a violation (e.g. the non-member caveat of
/// the union–intersection theorem).
#[derive(Debug, Clone, Serialize)]
pub struct Observation {
    pub name: String,
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<Observation>,
}

impl CheckReport {
    pub(crate) fn from_tallies(tallies: Vec<Tally>, observations: Vec<Observation>) -> Self {
        let checks: Vec<CheckOutcome> = tallies.into_iter().map(Tally::into_outcome).collect();
        CheckReport {
            passed: checks.iter().all(|c| c.passed),
            checks,
            observations,
        }
    }

    /// The failed checks only.
    pub fn violations(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn outcome(&self, check: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == check)
    }
}

/// Accumulates violations for one check; only the first builds a witness.
pub(crate) struct Tally {
    name: &'static str,
    violations: usize,
    witness: Option<Witness>,
}

impl Tally {
    pub(crate) fn new(name: &'static str) -> Self {
        Tally {
            name,
            violations: 0,
            witness: None,
        }
    }

    pub(crate) fn fail(&mut self, indices: &[usize], detail: impl FnOnce() -> String) {
        if self.witness.is_none() {
            self.witness = Some(Witness {
                indices: indices.to_vec(),
                detail: detail(),
            });
        }
        self.violations += 1;
    }

    fn into_outcome(self) -> CheckOutcome {
        CheckOutcome {
            check: self.name.to_string(),
            passed: self.violations == 0,
            violations: self.violations,
            witness: self.witness,
        }
    }
}
