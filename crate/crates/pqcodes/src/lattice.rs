//! Finite lattices of subspaces: the full projective lattice of GF(q)^n,
//! lattices induced by intersection-closed codes, and checkers for
//! modularity, distributivity, geometricity, atoms, height, and the
//! size ≤ 2^height bound for distributive lattices.
//!
//! The order is always inclusion, but meet and join are computed from the
//! order alone (greatest lower / least upper bound), so element sets that
//! are not closed under ∩ and + — pentagons, posets missing bounds — are
//! handled honestly: construction fails with the offending pair rather
//! than silently substituting ∩ or +.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::code::{CheckReport, SubspaceCode, Tally};
use crate::subspace::Subspace;

/// Largest element count a lattice may have; triple scans are cubic.
pub const MAX_LATTICE_ELEMENTS: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("element {index} does not match the first element's ambient dimension or field")]
    MixedElements { index: usize },
    #[error("elements {0} and {1} are identical")]
    DuplicateElement(usize, usize),
    #[error("{size} elements exceed the lattice cap of {cap}")]
    ScaleCap { size: usize, cap: usize },
    #[error("elements {0} and {1} have no greatest lower bound")]
    NoMeet(usize, usize),
    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(usize, usize),
    #[error("subset element {position} is not an element of the host lattice")]
    UnknownElement { position: usize },
    #[error("words {0} and {1} have an intersection outside the code")]
    NotMeetClosed(usize, usize),
    #[error("words {0} and {1} have a sum outside the code")]
    NotJoinClosed(usize, usize),
    #[error("the bound check applies to distributive lattices only")]
    NotDistributive,
    #[error(transparent)]
    Subspace(#[from] crate::subspace::SubspaceError),
}

/// Finite lattice over a deterministic element list: inclusion order plus
/// dense meet/join index tables, each entry the greatest lower / least
/// upper bound verified against the order.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    elements: Vec<Subspace>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    index: HashMap<Subspace, usize>,
}

/// Outcome of one lattice law checked over all triples.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeCheck {
    pub holds: bool,
    /// Lexicographically first violating element tuple, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LatticeWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeWitness {
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeProfile {
    pub size: usize,
    pub modular: LatticeCheck,
    pub distributive: LatticeCheck,
    pub geometric: LatticeCheck,
    pub atoms: Vec<usize>,
    pub height: usize,
}

impl FiniteLattice {
    /// Builds the lattice of the given distinct subspaces under inclusion.
    /// Fails with the first (lexicographic) pair lacking a greatest lower
    /// or least upper bound when the set is not a lattice.
    pub fn from_subspaces(elements: Vec<Subspace>) -> Result<Self, LatticeError> {
        let first = elements.first().ok_or(LatticeError::Empty)?;
        let m = elements.len();
        if m > MAX_LATTICE_ELEMENTS {
            return Err(LatticeError::ScaleCap {
                size: m,
                cap: MAX_LATTICE_ELEMENTS,
            });
        }
        let ambient = first.ambient();
        let field = first.field().clone();
        let mut index = HashMap::with_capacity(m);
        for (i, e) in elements.iter().enumerate() {
            if e.ambient() != ambient || e.field() != &field {
                return Err(LatticeError::MixedElements { index: i });
            }
            if let Some(&prev) = index.get(e) {
                return Err(LatticeError::DuplicateElement(prev, i));
            }
            index.insert(e.clone(), i);
        }

        let mut leq = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                leq[i][j] = elements[j]
                    .contains(&elements[i])
                    .expect("elements share ambient and field");
            }
        }
        // |{k : k ≤ i}| is strictly monotone along the order, which makes
        // the greatest element of any down-closed candidate set its unique
        // count-maximizer.
        let below_count: Vec<usize> = (0..m).map(|i| (0..m).filter(|&k| leq[k][i]).count()).collect();
        let above_count: Vec<usize> = (0..m).map(|i| (0..m).filter(|&k| leq[i][k]).count()).collect();

        let mut meet = vec![vec![0usize; m]; m];
        let mut join = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in 0..m {
                let lower: Vec<usize> = (0..m).filter(|&k| leq[k][i] && leq[k][j]).collect();
                let g = *lower
                    .iter()
                    .max_by_key(|&&k| below_count[k])
                    .ok_or(LatticeError::NoMeet(i.min(j), i.max(j)))?;
                if lower.iter().any(|&k| !leq[k][g]) {
                    return Err(LatticeError::NoMeet(i.min(j), i.max(j)));
                }
                meet[i][j] = g;

                let upper: Vec<usize> = (0..m).filter(|&k| leq[i][k] && leq[j][k]).collect();
                let l = *upper
                    .iter()
                    .max_by_key(|&&k| above_count[k])
                    .ok_or(LatticeError::NoJoin(i.min(j), i.max(j)))?;
                if upper.iter().any(|&k| !leq[l][k]) {
                    return Err(LatticeError::NoJoin(i.min(j), i.max(j)));
                }
                join[i][j] = l;
            }
        }

        // Folding meet (join) over all elements reaches an element below
        // (above) every other, so both bounds exist once the tables do.
        let bottom = (1..m).fold(0, |acc, i| meet[acc][i]);
        let top = (1..m).fold(0, |acc, i| join[acc][i]);
        debug_assert!((0..m).all(|x| leq[bottom][x] && leq[x][top]));

        Ok(FiniteLattice {
            elements,
            leq,
            meet,
            join,
            bottom,
            top,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Subspace {
        &self.elements[i]
    }

    pub fn position(&self, x: &Subspace) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Cover matrix: cover[i][j] iff i < j with nothing strictly between.
    fn covers(&self) -> Vec<Vec<bool>> {
        let m = self.len();
        let strict = |i: usize, j: usize| i != j && self.leq[i][j];
        let mut cover = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                cover[i][j] = strict(i, j) && !(0..m).any(|k| strict(i, k) && strict(k, j));
            }
        }
        cover
    }

    /// Elements covering the bottom: exactly one element strictly below.
    pub fn atoms(&self) -> Vec<usize> {
        let m = self.len();
        (0..m)
            .filter(|&x| x != self.bottom && (0..m).filter(|&y| y != x && self.leq[y][x]).count() == 1)
            .collect()
    }

    /// Length of the longest maximal chain from bottom to top, as the
    /// longest path in the cover DAG.
    pub fn height(&self) -> usize {
        let m = self.len();
        let cover = self.covers();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&x| (0..m).filter(|&k| self.leq[k][x]).count());
        let mut longest = vec![0usize; m];
        for &x in &order {
            for y in 0..m {
                if cover[y][x] {
                    longest[x] = longest[x].max(longest[y] + 1);
                }
            }
        }
        longest[self.top]
    }

    /// Modular law x ∨ (y ∧ z) = (x ∨ y) ∧ z on all triples with x ≤ z.
    pub fn check_modular(&self) -> LatticeCheck {
        let m = self.len();
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if self.leq[x][z] && self.join[x][self.meet[y][z]] != self.meet[self.join[x][y]][z] {
                        return LatticeCheck {
                            holds: false,
                            witness: Some(LatticeWitness {
                                indices: vec![x, y, z],
                                detail: format!(
                                    "x ≤ z but x ∨ (y ∧ z) = {} while (x ∨ y) ∧ z = {}",
                                    self.join[x][self.meet[y][z]],
                                    self.meet[self.join[x][y]][z]
                                ),
                            }),
                        };
                    }
                }
            }
        }
        LatticeCheck {
            holds: true,
            witness: None,
        }
    }

    /// Distributive law x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) on all triples.
    /// In any lattice this law and its dual hold together or fail
    /// together; both are evaluated and their agreement asserted, which
    /// catches meet/join table corruption cheaply.
    pub fn check_distributive(&self) -> LatticeCheck {
        let m = self.len();
        let mut meet_law: Option<LatticeWitness> = None;
        let mut join_law_holds = true;
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if meet_law.is_none()
                        && self.meet[x][self.join[y][z]] != self.join[self.meet[x][y]][self.meet[x][z]]
                    {
                        meet_law = Some(LatticeWitness {
                            indices: vec![x, y, z],
                            detail: format!(
                                "x ∧ (y ∨ z) = {} while (x ∧ y) ∨ (x ∧ z) = {}",
                                self.meet[x][self.join[y][z]],
                                self.join[self.meet[x][y]][self.meet[x][z]]
                            ),
                        });
                    }
                    if self.join[x][self.meet[y][z]] != self.meet[self.join[x][y]][self.join[x][z]] {
                        join_law_holds = false;
                    }
                }
            }
        }
        assert_eq!(
            meet_law.is_none(),
            join_law_holds,
            "the two distributive laws must agree on any lattice"
        );
        LatticeCheck {
            holds: meet_law.is_none(),
            witness: meet_law,
        }
    }

    /// Geometric = modular and every element is the join of the atoms
    /// below it.
    pub fn check_geometric(&self) -> LatticeCheck {
        let modular = self.check_modular();
        if !modular.holds {
            return LatticeCheck {
                holds: false,
                witness: modular.witness.map(|w| LatticeWitness {
                    indices: w.indices,
                    detail: format!("not modular: {}", w.detail),
                }),
            };
        }
        let atoms = self.atoms();
        for x in 0..self.len() {
            let joined = atoms
                .iter()
                .filter(|&&a| self.leq[a][x])
                .fold(self.bottom, |acc, &a| self.join[acc][a]);
            if joined != x {
                return LatticeCheck {
                    holds: false,
                    witness: Some(LatticeWitness {
                        indices: vec![x],
                        detail: format!("element {x} is not the join of the atoms below it ({joined})"),
                    }),
                };
            }
        }
        LatticeCheck {
            holds: true,
            witness: None,
        }
    }

    /// For distributive lattices: size ≤ 2^height.
    pub fn check_birkhoff_bound(&self) -> Result<CheckReport, LatticeError> {
        if !self.check_distributive().holds {
            return Err(LatticeError::NotDistributive);
        }
        let mut bound = Tally::new("birkhoff.bound");
        let (size, height) = (self.len(), self.height());
        // height ≥ 64 makes 2^height exceed any representable size.
        if height < 64 && size > 1usize << height {
            bound.fail(&[], || format!("size {size} exceeds 2^{height}"));
        }
        Ok(CheckReport::from_tallies(vec![bound], vec![]))
    }

    pub fn profile(&self) -> LatticeProfile {
        LatticeProfile {
            size: self.len(),
            modular: self.check_modular(),
            distributive: self.check_distributive(),
            geometric: self.check_geometric(),
            atoms: self.atoms(),
            height: self.height(),
        }
    }

    /// Hasse diagram (cover relation) in DOT format, edges bottom-up.
    pub fn to_dot(&self) -> String {
        let cover = self.covers();
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            out.push_str(&format!("  n{} [label=\"{}\"];\n", i, e.label()));
        }
        for (i, row) in cover.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c {
                    out.push_str(&format!("  n{i} -> n{j};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The lattice of all subspaces of GF(q)^n under inclusion, with
/// meet = ∩ and join = + (cross-checked element by element).
pub fn build_projective_lattice(
    n: usize,
    field: &crate::field::Field,
) -> Result<FiniteLattice, LatticeError> {
    let elements = crate::subspace::enumerate_projective_space(n, field)?;
    let lat = FiniteLattice::from_subspaces(elements)?;
    for i in 0..lat.len() {
        for j in 0..lat.len() {
            let inter = lat.elements[i].intersect(&lat.elements[j]).expect("same space");
            let sum = lat.elements[i].sum(&lat.elements[j]).expect("same space");
            assert_eq!(lat.position(&inter), Some(lat.meet[i][j]), "meet must be ∩");
            assert_eq!(lat.position(&sum), Some(lat.join[i][j]), "join must be +");
        }
    }
    Ok(lat)
}

/// Lattice on a code's words under inclusion.  Requires the word set to be
/// closed under ∩ and +; the first violating pair is reported otherwise,
/// and closure makes the order-theoretic meet and join coincide with ∩
/// and + (asserted).
pub fn build_lattice_from_code(code: &SubspaceCode) -> Result<FiniteLattice, LatticeError> {
    let m = code.len();
    for i in 0..m {
        for j in i..m {
            let inter = code.word(i).intersect(code.word(j)).expect("same space");
            if code.find(&inter).is_none() {
                return Err(LatticeError::NotMeetClosed(i, j));
            }
            let sum = code.word(i).sum(code.word(j)).expect("same space");
            if code.find(&sum).is_none() {
                return Err(LatticeError::NotJoinClosed(i, j));
            }
        }
    }
    let lat = FiniteLattice::from_subspaces(code.words().to_vec())?;
    for i in 0..m {
        for j in 0..m {
            let inter = lat.elements[i].intersect(&lat.elements[j]).expect("same space");
            let sum = lat.elements[i].sum(&lat.elements[j]).expect("same space");
            assert_eq!(lat.position(&inter), Some(lat.meet[i][j]), "meet must be ∩");
            assert_eq!(lat.position(&sum), Some(lat.join[i][j]), "join must be +");
        }
    }
    Ok(lat)
}

/// True iff the subset is closed under the host's meet and join.  Every
/// subset element must be an element of the host.
pub fn is_sublattice(subset: &[Subspace], host: &FiniteLattice) -> Result<bool, LatticeError> {
    let mut picked = Vec::with_capacity(subset.len());
    for (position, s) in subset.iter().enumerate() {
        picked.push(
            host.position(s)
                .ok_or(LatticeError::UnknownElement { position })?,
        );
    }
    let in_subset = |k: usize| picked.contains(&k);
    Ok(picked.iter().all(|&i| {
        picked
            .iter()
            .all(|&j| in_subset(host.meet(i, j)) && in_subset(host.join(i, j)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{AdditionTable, SubspaceCode};
    use crate::field::{Field, FieldSpec};
    use crate::subspace::{canonicalize, Subspace};

    fn gf2() -> Field {
        FieldSpec::gf(2).unwrap()
    }

    fn span(gens: &[&[u8]], n: usize, field: &Field) -> Subspace {
        let rows: Vec<Vec<u8>> = gens.iter().map(|g| g.to_vec()).collect();
        canonicalize(&rows, n, field).unwrap()
    }

    fn coordinate_code(n: usize) -> SubspaceCode {
        let field = gf2();
        let mut words = Vec::with_capacity(1 << n);
        for mask in 0..1u32 << n {
            let gens: Vec<Vec<u8>> = (0..n)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| {
                    let mut e = vec![0u8; n];
                    e[b] = 1;
                    e
                })
                .collect();
            words.push(canonicalize(&gens, n, &field).unwrap());
        }
        let table = AdditionTable::new(
            (0..1usize << n)
                .map(|a| (0..1usize << n).map(|b| a ^ b).collect())
                .collect(),
        )
        .unwrap();
        SubspaceCode::new(words, Some(table)).unwrap()
    }

    fn remark_code() -> SubspaceCode {
        let f = gf2();
        let words = vec![
            Subspace::zero(3, &f).unwrap(),
            span(&[&[1, 0, 0], &[0, 1, 0]], 3, &f),
            span(&[&[1, 0, 0], &[0, 0, 1]], 3, &f),
            span(&[&[1, 0, 0], &[0, 1, 1]], 3, &f),
        ];
        let table = AdditionTable::new(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        SubspaceCode::new(words, Some(table)).unwrap()
    }

    #[test]
    fn projective_plane_lattice() {
        let lat = build_projective_lattice(2, &gf2()).unwrap();
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.bottom(), 0);
        assert_eq!(lat.top(), 4);
        assert_eq!(lat.atoms(), vec![1, 2, 3]);
        assert_eq!(lat.height(), 2);
        assert!(lat.check_modular().holds);
        let dist = lat.check_distributive();
        assert!(!dist.holds);
        // First failing triple: three distinct lines x, y, z where
        // x ∧ (y ∨ z) = x but (x ∧ y) ∨ (x ∧ z) = {0}.
        let w = dist.witness.unwrap();
        assert_eq!(w.indices, vec![1, 2, 3]);
        let (x, y, z) = (w.indices[0], w.indices[1], w.indices[2]);
        assert_ne!(
            lat.meet(x, lat.join(y, z)),
            lat.join(lat.meet(x, y), lat.meet(x, z)),
            "witness must re-verify"
        );
        assert!(lat.check_geometric().holds);
        assert_eq!(
            lat.check_birkhoff_bound().unwrap_err(),
            LatticeError::NotDistributive
        );
    }

    #[test]
    fn projective_lattice_of_dimension_three() {
        let lat = build_projective_lattice(3, &gf2()).unwrap();
        let profile = lat.profile();
        assert_eq!(profile.size, 16);
        assert!(profile.modular.holds);
        assert!(!profile.distributive.holds);
        assert!(profile.geometric.holds);
        assert_eq!(profile.atoms.len(), 7);
        assert_eq!(profile.height, 3);
    }

    #[test]
    fn single_dimension_gives_two_chain() {
        let lat = build_projective_lattice(1, &FieldSpec::gf(3).unwrap()).unwrap();
        assert_eq!(lat.len(), 2);
        assert_eq!(lat.height(), 1);
        assert_eq!(lat.atoms(), vec![1]);
        let profile = lat.profile();
        assert!(profile.modular.holds && profile.distributive.holds && profile.geometric.holds);
        let report = lat.check_birkhoff_bound().unwrap();
        assert!(report.passed, "2 ≤ 2^1");
    }

    #[test]
    fn boolean_lattice_from_coordinate_code() {
        let lat = build_lattice_from_code(&coordinate_code(3)).unwrap();
        assert_eq!(lat.len(), 8);
        let profile = lat.profile();
        assert!(profile.modular.holds);
        assert!(profile.distributive.holds);
        assert!(profile.geometric.holds);
        assert_eq!(profile.atoms.len(), 3);
        assert_eq!(profile.height, 3);
        for &a in &profile.atoms {
            assert_eq!(lat.element(a).dim(), 1);
        }
        let report = lat.check_birkhoff_bound().unwrap();
        assert!(report.passed, "8 ≤ 2^3, tight");
    }

    #[test]
    fn trivial_pair_code_gives_two_chain() {
        let f = gf2();
        let code = SubspaceCode::new(
            vec![Subspace::zero(3, &f).unwrap(), Subspace::full(3, &f).unwrap()],
            None,
        )
        .unwrap();
        let lat = build_lattice_from_code(&code).unwrap();
        assert_eq!(lat.len(), 2);
        assert_eq!(lat.height(), 1);
        assert_eq!(lat.atoms(), vec![1], "the single atom is the top");
    }

    #[test]
    fn remark_code_is_not_meet_closed() {
        assert_eq!(
            build_lattice_from_code(&remark_code()).unwrap_err(),
            LatticeError::NotMeetClosed(1, 2)
        );
    }

    #[test]
    fn sublattice_membership() {
        let host = build_projective_lattice(3, &gf2()).unwrap();
        assert!(is_sublattice(coordinate_code(3).words(), &host).unwrap());
        assert!(!is_sublattice(remark_code().words(), &host).unwrap());
        let x = span(&[&[1, 1, 0]], 3, &gf2());
        assert!(is_sublattice(&[x], &host).unwrap(), "singletons are closed");
        let alien = span(&[&[1, 0, 0, 0]], 4, &gf2());
        assert_eq!(
            is_sublattice(&[alien], &host).unwrap_err(),
            LatticeError::UnknownElement { position: 0 }
        );
    }

    /// Pentagon inside GF(2)^3: {0} < ⟨e1⟩ < ⟨e1,e2⟩ < full and
    /// {0} < ⟨e3⟩ < full.  A lattice, but the classic non-modular one;
    /// note its join is not the subspace sum (⟨e1⟩ ∨ ⟨e3⟩ = full here).
    #[test]
    fn pentagon_is_a_non_modular_lattice() {
        let f = gf2();
        let lat = FiniteLattice::from_subspaces(vec![
            Subspace::zero(3, &f).unwrap(),
            span(&[&[1, 0, 0]], 3, &f),
            span(&[&[1, 0, 0], &[0, 1, 0]], 3, &f),
            span(&[&[0, 0, 1]], 3, &f),
            Subspace::full(3, &f).unwrap(),
        ])
        .unwrap();
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.join(1, 3), 4, "order-theoretic join jumps to the top");
        let modular = lat.check_modular();
        assert!(!modular.holds);
        let w = modular.witness.unwrap();
        let (x, y, z) = (w.indices[0], w.indices[1], w.indices[2]);
        assert!(lat.leq(x, z));
        assert_ne!(lat.join(x, lat.meet(y, z)), lat.meet(lat.join(x, y), z));
        assert!(!lat.check_distributive().holds);
        assert!(!lat.check_geometric().holds);
        assert_eq!(lat.height(), 3, "the longer side of the pentagon");
    }

    /// Lines ⟨e1⟩, ⟨e2⟩ under two 3-dim subspaces through their plane:
    /// the two lines have two minimal common upper bounds (and the two big
    /// subspaces two maximal common lower bounds), so this poset is not a
    /// lattice.  The pairwise scan hits the missing join of the lines
    /// first.
    #[test]
    fn poset_without_bounds_is_rejected() {
        let f = gf2();
        let err = FiniteLattice::from_subspaces(vec![
            Subspace::zero(4, &f).unwrap(),
            span(&[&[0, 1, 0, 0]], 4, &f),
            span(&[&[1, 0, 0, 0]], 4, &f),
            span(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]], 4, &f),
            span(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]], 4, &f),
            Subspace::full(4, &f).unwrap(),
        ])
        .unwrap_err();
        assert_eq!(err, LatticeError::NoJoin(1, 2));
    }

    #[test]
    fn oversized_projective_space_is_capped() {
        assert_eq!(
            build_projective_lattice(6, &gf2()).unwrap_err(),
            LatticeError::ScaleCap {
                size: 2825,
                cap: MAX_LATTICE_ELEMENTS
            }
        );
    }

    #[test]
    fn duplicate_and_empty_inputs_are_rejected() {
        let f = gf2();
        let x = span(&[&[1, 0]], 2, &f);
        assert_eq!(
            FiniteLattice::from_subspaces(vec![x.clone(), x.clone()]).unwrap_err(),
            LatticeError::DuplicateElement(0, 1)
        );
        assert_eq!(
            FiniteLattice::from_subspaces(vec![]).unwrap_err(),
            LatticeError::Empty
        );
    }

    #[test]
    fn dot_export_lists_covers() {
        let lat = build_projective_lattice(1, &gf2()).unwrap();
        let dot = lat.to_dot();
        assert!(dot.starts_with("digraph hasse {"));
        assert_eq!(dot.matches("->").count(), 1, "a 2-chain has one cover edge");
        let plane = build_projective_lattice(2, &gf2()).unwrap();
        // {0} under each line, each line under the top.
        assert_eq!(plane.to_dot().matches("->").count(), 6);
    }
}
