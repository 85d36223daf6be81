//! Subspaces of GF(q)^n in canonical form, with exact sum, intersection,
//! inclusion, subspace distance, and enumeration of Grassmannians and the
//! full projective space.
//!
//! The reduced row echelon form of a basis is the identity of a subspace:
//! two values are equal iff their RREF matrices are identical, and every
//! container and enumeration keys on that matrix.  The zero subspace is a
//! first-class value with an empty basis.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use thiserror::Error;

use crate::field::{Field, FieldSpec};

/// Largest ambient dimension the toolkit enumerates or searches over.
pub const MAX_AMBIENT: usize = 6;
/// Cap on q^n for enumeration; keeps every exhaustive scan at desk scale.
pub const MAX_POINTS: u64 = 81;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("row {index} has length {len}, ambient dimension is {ambient}")]
    BadRowLength {
        index: usize,
        len: usize,
        ambient: usize,
    },
    #[error("entry {code} at row {row}, column {col} is not an element of the field")]
    BadEntry { row: usize, col: usize, code: u8 },
    #[error("n = {n}, q = {q} exceeds the desk-scale enumeration cap (n <= {max_n}, q^n <= {max_points})")]
    ScaleCap {
        n: usize,
        q: u8,
        max_n: usize,
        max_points: u64,
    },
    #[error("k = {k} is not a valid dimension for ambient {n}")]
    BadDimension { k: usize, n: usize },
}

/// A subspace of GF(q)^n, stored as its RREF basis.
///
/// Invariants: rows form a reduced row echelon matrix of full row rank with
/// strictly increasing pivot columns; the zero subspace has no rows.
#[derive(Clone)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<u8>>,
}

impl Subspace {
    /// The zero subspace {0} of GF(q)^n.
    pub fn zero(ambient: usize, field: &Field) -> Result<Self, SubspaceError> {
        check_ambient(ambient, field)?;
        Ok(Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
        })
    }

    /// The full space GF(q)^n.
    pub fn full(ambient: usize, field: &Field) -> Result<Self, SubspaceError> {
        check_ambient(ambient, field)?;
        let rows = (0..ambient)
            .map(|i| {
                let mut r = vec![0u8; ambient];
                r[i] = 1;
                r
            })
            .collect();
        Ok(Subspace {
            field: field.clone(),
            ambient,
            rows,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// RREF basis rows; empty for {0}.
    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// True iff the vector reduces to zero against this basis.
    pub fn contains_vector(&self, v: &[u8]) -> Result<bool, SubspaceError> {
        if v.len() != self.ambient {
            return Err(SubspaceError::DimensionMismatch {
                left: self.ambient,
                right: v.len(),
            });
        }
        for (col, &code) in v.iter().enumerate() {
            if code >= self.field.q() {
                return Err(SubspaceError::BadEntry { row: 0, col, code });
            }
        }
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = pivot_col(row);
            let factor = v[pivot];
            if factor != 0 {
                for c in pivot..self.ambient {
                    v[c] = self.field.sub(v[c], self.field.mul(factor, row[c]));
                }
            }
        }
        Ok(v.iter().all(|&x| x == 0))
    }

    /// True iff every basis row of `other` lies in this subspace.
    pub fn contains(&self, other: &Subspace) -> Result<bool, SubspaceError> {
        self.check_compat(other)?;
        for row in &other.rows {
            if !self.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest subspace containing both operands.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_compat(other)?;
        let mut rows: Vec<Vec<u8>> = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        rref_in_place(&mut rows, &self.field);
        Ok(Subspace {
            field: self.field.clone(),
            ambient: self.ambient,
            rows,
        })
    }

    /// Intersection via the Zassenhaus construction: row-reduce [X|X; Y|0];
    /// rows whose left half vanishes carry a basis of X ∩ Y on the right.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_compat(other)?;
        let n = self.ambient;
        let mut stacked: Vec<Vec<u8>> = Vec::with_capacity(self.rows.len() + other.rows.len());
        for r in &self.rows {
            let mut row = r.clone();
            row.extend_from_slice(r);
            stacked.push(row);
        }
        for r in &other.rows {
            let mut row = r.clone();
            row.extend(std::iter::repeat(0).take(n));
            stacked.push(row);
        }
        rref_in_place(&mut stacked, &self.field);
        let mut rows: Vec<Vec<u8>> = stacked
            .into_iter()
            .filter(|row| row[..n].iter().all(|&x| x == 0))
            .map(|row| row[n..].to_vec())
            .collect();
        rref_in_place(&mut rows, &self.field);
        Ok(Subspace {
            field: self.field.clone(),
            ambient: n,
            rows,
        })
    }

    /// All q^dim member vectors, in deterministic coefficient order.
    /// Exhaustive by construction; intended for small-scale oracles.
    pub fn vectors(&self) -> Vec<Vec<u8>> {
        let q = u64::from(self.field.q());
        let k = self.rows.len();
        let count = q.pow(k as u32);
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let mut v = vec![0u8; self.ambient];
            let mut rest = idx;
            for row in &self.rows {
                let coeff = (rest % q) as u8;
                rest /= q;
                if coeff != 0 {
                    for c in 0..self.ambient {
                        v[c] = self.field.add(v[c], self.field.mul(coeff, row[c]));
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// Compact row rendering for diagrams and reports, e.g. "101|011"; "0"
    /// for the zero subspace.
    pub fn label(&self) -> String {
        if self.rows.is_empty() {
            return "0".to_string();
        }
        self.rows
            .iter()
            .map(|row| row.iter().map(|c| c.to_string()).collect::<String>())
            .join("|")
    }

    fn check_compat(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.ambient != other.ambient {
            return Err(SubspaceError::DimensionMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        if self.field != other.field {
            return Err(SubspaceError::FieldMismatch);
        }
        Ok(())
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.field == other.field && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.field.hash(state);
        self.rows.hash(state);
    }
}

/// Deterministic total order: ambient, then dimension, then the flattened
/// RREF codes lexicographically.  Matches the enumeration order below.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then_with(|| self.rows.len().cmp(&other.rows.len()))
            .then_with(|| self.rows.cmp(&other.rows))
            .then_with(|| {
                (self.field.p(), self.field.m(), self.field.modulus()).cmp(&(
                    other.field.p(),
                    other.field.m(),
                    other.field.modulus(),
                ))
            })
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}; n={} over {}>", self.label(), self.ambient, self.field)
    }
}

/// RREF basis of the span of the generators.  Idempotent: canonicalizing a
/// canonical basis returns it unchanged.
pub fn canonicalize(
    generators: &[Vec<u8>],
    ambient: usize,
    field: &Field,
) -> Result<Subspace, SubspaceError> {
    check_ambient(ambient, field)?;
    for (index, g) in generators.iter().enumerate() {
        if g.len() != ambient {
            return Err(SubspaceError::BadRowLength {
                index,
                len: g.len(),
                ambient,
            });
        }
        for (col, &code) in g.iter().enumerate() {
            if code >= field.q() {
                return Err(SubspaceError::BadEntry {
                    row: index,
                    col,
                    code,
                });
            }
        }
    }
    let mut rows: Vec<Vec<u8>> = generators.to_vec();
    rref_in_place(&mut rows, field);
    Ok(Subspace {
        field: field.clone(),
        ambient,
        rows,
    })
}

/// d_S(X, Y) = dim X + dim Y − 2·dim(X ∩ Y).
pub fn subspace_distance(x: &Subspace, y: &Subspace) -> Result<usize, SubspaceError> {
    let meet = x.intersect(y)?;
    Ok(x.dim() + y.dim() - 2 * meet.dim())
}

/// All k-dimensional subspaces of GF(q)^n in deterministic order.
#[derive(Clone, Debug)]
pub struct GrassmannianIndex {
    n: usize,
    k: usize,
    field: Field,
    elements: Vec<Subspace>,
}

impl GrassmannianIndex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Subspace> {
        self.elements
    }

    /// Position of a subspace in the enumeration, if it has dimension k.
    pub fn position(&self, x: &Subspace) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }
}

/// Enumerates 𝔾_q(n, k) by pivot-column pattern: for each k-subset of pivot
/// columns, the free entries (right of a pivot, outside pivot columns) range
/// over the whole field, producing every RREF matrix exactly once.
pub fn enumerate_grassmannian(
    n: usize,
    k: usize,
    field: &Field,
) -> Result<GrassmannianIndex, SubspaceError> {
    check_enumeration_scale(n, field)?;
    if k > n {
        return Err(SubspaceError::BadDimension { k, n });
    }
    let q = u64::from(field.q());
    let mut elements = Vec::new();
    for pivots in (0..n).combinations(k) {
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        for fill in 0..q.pow(free.len() as u32) {
            let mut rows = vec![vec![0u8; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut rest = fill;
            for &(i, j) in &free {
                rows[i][j] = (rest % q) as u8;
                rest /= q;
            }
            elements.push(Subspace {
                field: field.clone(),
                ambient: n,
                rows,
            });
        }
    }
    elements.sort();
    let expected = gaussian_binomial(n, k, q);
    assert_eq!(
        elements.len() as u128,
        expected,
        "Grassmannian count must match the Gaussian binomial"
    );
    Ok(GrassmannianIndex {
        n,
        k,
        field: field.clone(),
        elements,
    })
}

/// ℙ_q(n) as the disjoint union of Grassmannians for k = 0..n, in that
/// order.  Index 0 is always {0}; the last element is the full space.
pub fn enumerate_projective_space(n: usize, field: &Field) -> Result<Vec<Subspace>, SubspaceError> {
    check_enumeration_scale(n, field)?;
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_grassmannian(n, k, field)?.into_elements());
    }
    Ok(out)
}

/// Gaussian binomial coefficient: ∏_{i=0}^{k−1} (q^{n−i} − 1) / (q^{k−i} − 1).
/// Exact in u128 at desk scale.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= u128::from(q).pow((n - i) as u32) - 1;
        den *= u128::from(q).pow((k - i) as u32) - 1;
    }
    assert_eq!(num % den, 0, "the q-binomial product is always divisible");
    num / den
}

fn check_ambient(ambient: usize, field: &Field) -> Result<(), SubspaceError> {
    if ambient > MAX_AMBIENT {
        return Err(SubspaceError::ScaleCap {
            n: ambient,
            q: field.q(),
            max_n: MAX_AMBIENT,
            max_points: MAX_POINTS,
        });
    }
    Ok(())
}

pub(crate) fn check_enumeration_scale(n: usize, field: &Field) -> Result<(), SubspaceError> {
    let q = u64::from(field.q());
    if n > MAX_AMBIENT || q.pow(n as u32) > MAX_POINTS {
        return Err(SubspaceError::ScaleCap {
            n,
            q: field.q(),
            max_n: MAX_AMBIENT,
            max_points: MAX_POINTS,
        });
    }
    Ok(())
}

fn pivot_col(row: &[u8]) -> usize {
    row.iter()
        .position(|&x| x != 0)
        .expect("basis rows are nonzero")
}

/// In-place reduction to RREF; drops zero rows.  Pivot entries end up 1 with
/// zeros above and below, pivot columns strictly increasing.
pub(crate) fn rref_in_place(rows: &mut Vec<Vec<u8>>, field: &FieldSpec) {
    let cols = match rows.first() {
        Some(r) => r.len(),
        None => return,
    };
    let mut pivot = 0;
    for col in 0..cols {
        let Some(src) = (pivot..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot, src);
        let lead = rows[pivot][col];
        if lead != 1 {
            let inv = field.inv(lead).expect("pivot entries are nonzero");
            for c in col..cols {
                rows[pivot][c] = field.mul(rows[pivot][c], inv);
            }
        }
        for r in 0..rows.len() {
            if r != pivot && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in col..cols {
                    let delta = field.mul(factor, rows[pivot][c]);
                    rows[r][c] = field.sub(rows[r][c], delta);
                }
            }
        }
        pivot += 1;
        if pivot == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
}
