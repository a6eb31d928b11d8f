use std::collections::HashMap;
use std::fmt;

use super::word::{degens_are_canonical, Cell, Op, SimplexWord, WordDisplay};
use super::SimplicialError;

/// A face reference by name, as it appears in an unvalidated presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceRef {
    pub base: String,
    pub degens: Vec<usize>,
}

impl FaceRef {
    pub fn cell(base: impl Into<String>) -> Self {
        FaceRef {
            base: base.into(),
            degens: Vec::new(),
        }
    }

    pub fn degenerate(base: impl Into<String>, degens: Vec<usize>) -> Self {
        FaceRef {
            base: base.into(),
            degens,
        }
    }
}

/// Raw presentation data: named nondegenerate simplices per dimension with
/// their faces given by name. Nothing is checked until [`Presentation::build`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    /// `cells[n]` lists `(id, faces)`; vertices carry no faces.
    pub cells: Vec<Vec<(String, Vec<FaceRef>)>>,
}

/// One problem found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateId {
        id: String,
    },
    FaceCount {
        simplex: String,
        expected: usize,
        found: usize,
    },
    DanglingFace {
        simplex: String,
        face: usize,
        target: String,
    },
    FaceDimension {
        simplex: String,
        face: usize,
        expected: usize,
        found: usize,
    },
    MalformedDegeneracies {
        simplex: String,
        face: usize,
    },
    /// `d_i d_j x != d_{j-1} d_i x`.
    Identity {
        simplex: String,
        i: usize,
        j: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(f, "duplicate id {id}"),
            Violation::FaceCount {
                simplex,
                expected,
                found,
            } => {
                write!(f, "{simplex}: expected {expected} faces, found {found}")
            }
            Violation::DanglingFace {
                simplex,
                face,
                target,
            } => {
                write!(f, "{simplex}: face {face} references undeclared {target}")
            }
            Violation::FaceDimension {
                simplex,
                face,
                expected,
                found,
            } => {
                write!(
                    f,
                    "{simplex}: face {face} has dimension {found}, expected {expected}"
                )
            }
            Violation::MalformedDegeneracies { simplex, face } => {
                write!(
                    f,
                    "{simplex}: face {face} degeneracies not strictly decreasing or out of range"
                )
            }
            Violation::Identity { simplex, i, j } => {
                write!(f, "{simplex}: d_{i} d_{j} != d_{} d_{i}", j - 1)
            }
        }
    }
}

/// Result of [`validate`]; empty iff the presentation defines a simplicial set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A validated finite simplicial set given by its nondegenerate simplices.
///
/// Degenerate simplices are never stored; they are [`SimplexWord`]s over the
/// stored cells. Declaration order within a dimension fixes every basis used
/// downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    name: String,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexWord>>>,
    lookup: HashMap<String, Cell>,
}

impl Presentation {
    pub fn new(name: impl Into<String>) -> Self {
        Presentation {
            name: name.into(),
            cells: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> &mut Self {
        self.add(0, id, Vec::new())
    }

    pub fn add_simplex(&mut self, id: impl Into<String>, faces: Vec<FaceRef>) -> &mut Self {
        let dim = faces.len().saturating_sub(1);
        self.add(dim, id, faces)
    }

    /// Adds a cell in an explicit dimension (lets malformed face counts through
    /// so that validation can report them).
    pub fn add(&mut self, dim: usize, id: impl Into<String>, faces: Vec<FaceRef>) -> &mut Self {
        if self.cells.len() <= dim {
            self.cells.resize_with(dim + 1, Vec::new);
        }
        self.cells[dim].push((id.into(), faces));
        self
    }

    pub fn build(&self) -> Result<SimplicialSet, SimplicialError> {
        let (set, report) = self.resolve();
        match set {
            Some(set) if report.is_valid() => Ok(set),
            _ => Err(SimplicialError::Invalid(report)),
        }
    }

    /// Resolves names and runs every check; the set is returned whenever all
    /// references resolved, even if identities fail.
    fn resolve(&self) -> (Option<SimplicialSet>, ValidationReport) {
        let mut report = ValidationReport::default();
        let mut lookup = HashMap::new();
        for (dim, cells) in self.cells.iter().enumerate() {
            for (index, (id, _)) in cells.iter().enumerate() {
                if lookup.insert(id.clone(), Cell::new(dim, index)).is_some() {
                    report
                        .violations
                        .push(Violation::DuplicateId { id: id.clone() });
                }
            }
        }
        let mut resolvable = report.is_valid();
        let mut faces = Vec::with_capacity(self.cells.len());
        for (dim, cells) in self.cells.iter().enumerate() {
            let mut per_dim = Vec::with_capacity(cells.len());
            for (id, refs) in cells {
                let expected = if dim == 0 { 0 } else { dim + 1 };
                if refs.len() != expected {
                    report.violations.push(Violation::FaceCount {
                        simplex: id.clone(),
                        expected,
                        found: refs.len(),
                    });
                    resolvable = false;
                    per_dim.push(Vec::new());
                    continue;
                }
                let mut words = Vec::with_capacity(refs.len());
                for (i, r) in refs.iter().enumerate() {
                    let Some(&base) = lookup.get(&r.base) else {
                        report.violations.push(Violation::DanglingFace {
                            simplex: id.clone(),
                            face: i,
                            target: r.base.clone(),
                        });
                        resolvable = false;
                        continue;
                    };
                    if !degens_are_canonical(base.dim, &r.degens) {
                        report.violations.push(Violation::MalformedDegeneracies {
                            simplex: id.clone(),
                            face: i,
                        });
                        resolvable = false;
                        continue;
                    }
                    let found = base.dim + r.degens.len();
                    if found + 1 != dim {
                        report.violations.push(Violation::FaceDimension {
                            simplex: id.clone(),
                            face: i,
                            expected: dim - 1,
                            found,
                        });
                        resolvable = false;
                        continue;
                    }
                    words
                        .push(SimplexWord::new(base, r.degens.clone()).expect("checked canonical"));
                }
                per_dim.push(words);
            }
            faces.push(per_dim);
        }
        if !resolvable {
            return (None, report);
        }
        let names = self
            .cells
            .iter()
            .map(|c| c.iter().map(|(id, _)| id.clone()).collect())
            .collect();
        let set = SimplicialSet {
            name: self.name.clone(),
            names,
            faces,
            lookup,
        };
        report.violations.extend(identity_violations(&set));
        (Some(set), report)
    }
}

/// Lists every dangling reference and every failure of `d_i d_j = d_{j-1} d_i`.
pub fn validate(presentation: &Presentation) -> ValidationReport {
    presentation.resolve().1
}

fn identity_violations(set: &SimplicialSet) -> Vec<Violation> {
    let mut out = Vec::new();
    for dim in 2..set.num_dims() {
        for index in 0..set.count(dim) {
            let x = SimplexWord::cell(Cell::new(dim, index));
            for j in 1..=dim {
                for i in 0..j {
                    let lhs = set.face(&set.face(&x, j), i);
                    let rhs = set.face(&set.face(&x, i), j - 1);
                    if lhs != rhs {
                        out.push(Violation::Identity {
                            simplex: set.names[dim][index].clone(),
                            i,
                            j,
                        });
                    }
                }
            }
        }
    }
    out
}

impl SimplicialSet {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// One more than the top dimension holding a cell (0 for the empty set).
    pub fn num_dims(&self) -> usize {
        self.names.len()
    }

    /// Top dimension, `None` for the empty simplicial set.
    pub fn dim(&self) -> Option<usize> {
        self.names.iter().rposition(|c| !c.is_empty())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(Vec::len).sum()
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.count(dim)).map(move |i| Cell::new(dim, i))
    }

    pub fn all_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.num_dims()).flat_map(move |d| self.cells(d))
    }

    pub fn cell_name(&self, cell: Cell) -> &str {
        &self.names[cell.dim][cell.index]
    }

    pub fn lookup(&self, id: &str) -> Option<Cell> {
        self.lookup.get(id).copied()
    }

    pub fn word_name(&self, word: &SimplexWord) -> String {
        WordDisplay {
            word,
            name: self.cell_name(word.base()),
        }
        .to_string()
    }

    /// Stored faces of a nondegenerate cell (empty for vertices).
    pub fn cell_faces(&self, cell: Cell) -> &[SimplexWord] {
        &self.faces[cell.dim][cell.index]
    }

    /// `d_i` of an arbitrary simplex.
    ///
    /// Panics if `i > word.dim()` or the word is a vertex.
    pub fn face(&self, word: &SimplexWord, i: usize) -> SimplexWord {
        let n = word.dim();
        assert!(n >= 1 && i <= n, "d_{i} of a {n}-simplex");
        let mut eta = word.surjection();
        let value = eta.remove(i);
        let still_onto = (i > 0 && eta[i - 1] == value) || (i < eta.len() && eta[i] == value);
        if still_onto {
            return SimplexWord::from_surjection(word.base(), &eta);
        }
        // Vertex `value` of the base lost its only preimage: factor through d_value.
        for v in eta.iter_mut() {
            if *v > value {
                *v -= 1;
            }
        }
        let base_face = &self.faces[word.base().dim][word.base().index][value];
        base_face.pull_back(&eta)
    }

    /// Applies an operator sequence (innermost first) to a word and returns the
    /// canonical result.
    pub fn normalize(
        &self,
        start: &SimplexWord,
        ops: &[Op],
    ) -> Result<SimplexWord, SimplicialError> {
        let mut w = start.clone();
        for op in ops {
            w = match *op {
                Op::Degen(j) => w.degenerate(j)?,
                Op::Face(i) => {
                    if w.dim() == 0 || i > w.dim() {
                        return Err(SimplicialError::MalformedWord(format!(
                            "d_{i} applied to a {}-simplex",
                            w.dim()
                        )));
                    }
                    self.face(&w, i)
                }
            };
        }
        Ok(w)
    }

    /// Vertex `k` of a simplex, as a cell.
    pub fn vertex(&self, word: &SimplexWord, k: usize) -> Cell {
        self.restrict(word, &[k]).base()
    }

    /// The face spanned by the listed vertices (strictly increasing) of a simplex.
    pub fn restrict(&self, word: &SimplexWord, vertices: &[usize]) -> SimplexWord {
        let n = word.dim();
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut w = word.clone();
        for v in (0..=n).rev() {
            if !vertices.contains(&v) {
                w = self.face(&w, v);
            }
        }
        w
    }

    /// The edge from vertex `a` to vertex `b` (`a < b`).
    pub fn edge(&self, word: &SimplexWord, a: usize, b: usize) -> SimplexWord {
        self.restrict(word, &[a, b])
    }

    /// Every `n`-simplex, nondegenerate ones first, then by base dimension
    /// descending, base index, and degeneracy set in lexicographic order.
    pub fn all_simplices(&self, n: usize) -> Vec<SimplexWord> {
        let mut out = Vec::new();
        for m in (0..=n.min(self.num_dims().saturating_sub(1))).rev() {
            let sets = combinations(n, n - m);
            for cell in self.cells(m) {
                for set in &sets {
                    let mut degens = set.clone();
                    degens.reverse();
                    out.push(SimplexWord::new(cell, degens).expect("canonical by construction"));
                }
            }
        }
        out
    }

    /// Number of `n`-simplices including degenerate ones.
    pub fn simplex_count(&self, n: usize) -> u128 {
        (0..=n.min(self.num_dims().saturating_sub(1)))
            .map(|m| self.count(m) as u128 * binomial(n as u128, (n - m) as u128))
            .sum()
    }

    /// The raw presentation this set was built from (round-trips through
    /// [`Presentation::build`]).
    pub fn to_presentation(&self) -> Presentation {
        let mut p = Presentation::new(self.name.clone());
        for (dim, cells) in self.names.iter().enumerate() {
            for (index, id) in cells.iter().enumerate() {
                let faces = self.faces[dim][index]
                    .iter()
                    .map(|w| FaceRef::degenerate(self.cell_name(w.base()), w.degens().to_vec()))
                    .collect();
                p.add(dim, id.clone(), faces);
            }
        }
        p
    }

    /// Skips validation; for constructions that are correct by design.
    pub(crate) fn from_parts_unchecked(
        name: String,
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<SimplexWord>>>,
    ) -> Self {
        let mut names = names;
        let mut faces = faces;
        while names.last().is_some_and(Vec::is_empty) {
            names.pop();
            faces.pop();
        }
        let mut lookup = HashMap::new();
        for (dim, cells) in names.iter().enumerate() {
            for (index, id) in cells.iter().enumerate() {
                lookup.insert(id.clone(), Cell::new(dim, index));
            }
        }
        SimplicialSet {
            name,
            names,
            faces,
            lookup,
        }
    }
}

/// Re-checks the simplicial identities of an already built set.
pub fn validate_set(set: &SimplicialSet) -> ValidationReport {
    ValidationReport {
        violations: identity_violations(set),
    }
}

/// All `k`-subsets of `0..n` in lexicographic order, each increasing.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}
