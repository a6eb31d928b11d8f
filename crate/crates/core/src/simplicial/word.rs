//! Canonical degeneracy words over nondegenerate cells.
//!
//! Every simplex of a simplicial set is uniquely `s_{j_t} ... s_{j_1} x` with
//! `x` nondegenerate and `j_t > ... > j_1`. Internally a word is handled as the
//! order-preserving surjection `[n] -> [m]` it induces on vertices, which makes
//! face and degeneracy application a matter of composing maps.

use std::fmt;

use super::SimplicialError;

/// A nondegenerate simplex: its dimension and its position in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub dim: usize,
    pub index: usize,
}

impl Cell {
    pub const fn new(dim: usize, index: usize) -> Self {
        Cell { dim, index }
    }
}

/// One step of a raw operator sequence, used by [`SimplicialSet::normalize`].
///
/// [`SimplicialSet::normalize`]: super::SimplicialSet::normalize
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Face(usize),
    Degen(usize),
}

/// A simplex in canonical form: a nondegenerate base and strictly decreasing
/// degeneracy indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexWord {
    base: Cell,
    degens: Vec<usize>,
}

impl SimplexWord {
    pub fn cell(base: Cell) -> Self {
        SimplexWord {
            base,
            degens: Vec::new(),
        }
    }

    /// Builds a word from explicit indices, which must already be in canonical
    /// (strictly decreasing, in range) form.
    pub fn new(base: Cell, degens: Vec<usize>) -> Result<Self, SimplicialError> {
        if !degens_are_canonical(base.dim, &degens) {
            return Err(SimplicialError::MalformedWord(format!(
                "degeneracies {degens:?} over a {}-simplex are not strictly decreasing and in range",
                base.dim
            )));
        }
        Ok(SimplexWord { base, degens })
    }

    /// The fully degenerate `dim`-simplex on a vertex.
    pub fn degenerate_vertex(vertex: Cell, dim: usize) -> Self {
        debug_assert_eq!(vertex.dim, 0);
        SimplexWord {
            base: vertex,
            degens: (0..dim).rev().collect(),
        }
    }

    pub fn base(&self) -> Cell {
        self.base
    }

    pub fn degens(&self) -> &[usize] {
        &self.degens
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.degens.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degens.is_empty()
    }

    /// The nondegenerate cell, if the word has no degeneracies.
    pub fn as_cell(&self) -> Option<Cell> {
        if self.degens.is_empty() {
            Some(self.base)
        } else {
            None
        }
    }

    /// Vertex map `[dim] -> [base.dim]` of the word.
    pub fn surjection(&self) -> Vec<usize> {
        let n = self.dim();
        let mut eta = Vec::with_capacity(n + 1);
        let mut v = 0;
        eta.push(0);
        for j in 0..n {
            if !self.degens.contains(&j) {
                v += 1;
            }
            eta.push(v);
        }
        eta
    }

    /// Inverse of [`surjection`](Self::surjection).
    pub fn from_surjection(base: Cell, eta: &[usize]) -> Self {
        debug_assert!(eta.first() == Some(&0) && eta.last() == Some(&base.dim));
        let degens = flat_positions(eta);
        SimplexWord { base, degens }
    }

    /// Applies `s_j`.
    pub fn degenerate(&self, j: usize) -> Result<Self, SimplicialError> {
        let n = self.dim();
        if j > n {
            return Err(SimplicialError::MalformedWord(format!(
                "s_{j} applied to a {n}-simplex"
            )));
        }
        let eta = self.surjection();
        let mut out = Vec::with_capacity(n + 2);
        out.extend_from_slice(&eta[..=j]);
        out.extend_from_slice(&eta[j..]);
        Ok(SimplexWord::from_surjection(self.base, &out))
    }

    /// Pulls the word back along another surjection `theta: [k] -> [dim]`.
    pub fn pull_back(&self, theta: &[usize]) -> Self {
        let eta = self.surjection();
        let composed: Vec<usize> = theta.iter().map(|&t| eta[t]).collect();
        SimplexWord::from_surjection(self.base, &composed)
    }
}

/// Degeneracy positions `{ j : eta(j) = eta(j+1) }` in decreasing order.
pub(crate) fn flat_positions(eta: &[usize]) -> Vec<usize> {
    (0..eta.len().saturating_sub(1))
        .rev()
        .filter(|&j| eta[j] == eta[j + 1])
        .collect()
}

pub(crate) fn degens_are_canonical(base_dim: usize, degens: &[usize]) -> bool {
    if degens.windows(2).any(|w| w[0] <= w[1]) {
        return false;
    }
    // Applied innermost first: the k-th application (from the right) acts on a
    // simplex of dimension base_dim + k.
    degens
        .iter()
        .rev()
        .enumerate()
        .all(|(k, &j)| j <= base_dim + k)
}

/// Formats a word with cell names supplied by the caller.
pub(crate) struct WordDisplay<'a> {
    pub word: &'a SimplexWord,
    pub name: &'a str,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.degens.is_empty() {
            return f.write_str(self.name);
        }
        for j in &self.word.degens {
            write!(f, "s{j}")?;
        }
        write!(f, "({})", self.name)
    }
}
