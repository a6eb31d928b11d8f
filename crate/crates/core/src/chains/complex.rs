use std::fmt;

use super::ChainError;
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::simplicial::{Cell, SimplicialMap, SimplicialSet};
use crate::{BudgetExceeded, IntScalar, Limits};

/// Coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Z,
    Mod(u64),
}

impl Coeff {
    pub fn modulus<T: IntScalar>(&self) -> T {
        match self {
            Coeff::Z => T::zero(),
            Coeff::Mod(n) => T::from_u64(*n).expect("modulus fits the scalar type"),
        }
    }

    pub(crate) fn check(&self) -> Result<(), ChainError> {
        match self {
            Coeff::Mod(0) => Err(ChainError::BadCoefficients(
                "Z/0 is not allowed; use Z".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Reduces into the canonical range (`0..n`, or unchanged over `Z`).
    pub fn reduce<T: IntScalar>(&self, v: T) -> T {
        match self {
            Coeff::Z => v,
            Coeff::Mod(_) => v.mod_floor(&self.modulus()),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Z => write!(f, "Z"),
            Coeff::Mod(n) => write!(f, "Z/{n}"),
        }
    }
}

/// Normalized chain complex of a finite simplicial set in degrees
/// `0..=top`. `boundaries[n]` is `∂_n: C_n -> C_{n-1}`; `boundaries[0]` is the
/// augmentation `1 × c_0` when augmented and `0 × c_0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<T> {
    pub bases: Vec<Vec<String>>,
    pub boundaries: Vec<IntMatrix<T>>,
    pub augmented: bool,
    /// The top degree is missing its incoming boundary.
    pub truncated: bool,
}

pub fn chain_complex<T: IntScalar>(
    k: &SimplicialSet,
    max_dim: usize,
    augmented: bool,
) -> Result<ChainComplex<T>, ChainError> {
    chain_complex_with(k, max_dim, augmented, &Limits::default())
}

pub fn chain_complex_with<T: IntScalar>(
    k: &SimplicialSet,
    max_dim: usize,
    augmented: bool,
    limits: &Limits,
) -> Result<ChainComplex<T>, ChainError> {
    if max_dim > limits.max_dim {
        return Err(BudgetExceeded::new(
            "chain complex dimension",
            max_dim as u128,
            limits.max_dim,
        )
        .into());
    }
    let count = |d: usize| if d < k.num_dims() { k.count(d) } else { 0 };
    let mut bases = Vec::with_capacity(max_dim + 1);
    let mut boundaries = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        bases.push(
            (0..count(n))
                .map(|i| k.cell_name(Cell::new(n, i)).to_string())
                .collect(),
        );
        if n == 0 {
            let mut eps = IntMatrix::zeros(usize::from(augmented), count(0));
            if augmented {
                for j in 0..count(0) {
                    eps[(0, j)] = T::one();
                }
            }
            boundaries.push(eps);
            continue;
        }
        let mut m: IntMatrix<T> = IntMatrix::zeros(count(n - 1), count(n));
        for j in 0..count(n) {
            for (i, face) in k.cell_faces(Cell::new(n, j)).iter().enumerate() {
                if let Some(c) = face.as_cell() {
                    let sign = if i % 2 == 0 { T::one() } else { -T::one() };
                    m[(c.index, j)] = m[(c.index, j)].clone() + sign;
                }
            }
        }
        boundaries.push(m);
    }
    Ok(ChainComplex {
        bases,
        boundaries,
        augmented,
        truncated: count(max_dim + 1) > 0,
    })
}

impl<T: IntScalar> ChainComplex<T> {
    pub fn top(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.bases.get(n).map_or(0, Vec::len)
    }

    /// `∂_n`, with `∂_{top+1}` the zero map from the empty module.
    pub fn boundary(&self, n: usize) -> IntMatrix<T> {
        match self.boundaries.get(n) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.rank(n - 1), 0),
        }
    }

    pub fn mark_truncated(mut self) -> Self {
        self.truncated = true;
        self
    }

    /// Whether `H_n` / `H^n` is computed from complete data.
    pub fn reliable(&self, n: usize) -> bool {
        n < self.top() || (n == self.top() && !self.truncated)
    }

    /// `∂_{n-1} ∂_n = 0` for every `n`.
    pub fn check_square_zero(&self) -> bool {
        (1..=self.top()).all(|n| self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero())
    }

    /// `Σ (-1)^n rank H_n(C; Q)` from boundary ranks.
    pub fn euler_characteristic(&self) -> i64 {
        let ranks: Vec<usize> = self
            .boundaries
            .iter()
            .map(|m| smith_normal_form(m).rank)
            .collect();
        (0..=self.top())
            .map(|n| {
                let next = ranks.get(n + 1).copied().unwrap_or(0);
                let b = self.rank(n) as i64 - ranks[n] as i64 - next as i64;
                if n % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }
}

/// Per-degree matrices `f_n: C_n -> D_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<T> {
    pub matrices: Vec<IntMatrix<T>>,
}

impl<T: IntScalar> ChainMap<T> {
    pub fn identity(c: &ChainComplex<T>) -> Self {
        ChainMap {
            matrices: (0..=c.top())
                .map(|n| IntMatrix::identity(c.rank(n)))
                .collect(),
        }
    }

    pub fn zero(source: &ChainComplex<T>, target: &ChainComplex<T>) -> Self {
        let top = source.top().min(target.top());
        ChainMap {
            matrices: (0..=top)
                .map(|n| IntMatrix::zeros(target.rank(n), source.rank(n)))
                .collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap<T>) -> Result<ChainMap<T>, ChainError> {
        let top = self.matrices.len().min(other.matrices.len());
        let mut out = Vec::with_capacity(top);
        for n in 0..top {
            if other.matrices[n].cols() != self.matrices[n].rows() {
                return Err(ChainError::DimensionMismatch(format!(
                    "chain maps do not compose in degree {n}"
                )));
            }
            out.push(other.matrices[n].mul(&self.matrices[n]));
        }
        Ok(ChainMap { matrices: out })
    }

    /// `∂ f_n = f_{n-1} ∂` in every shared degree.
    pub fn commutes(&self, source: &ChainComplex<T>, target: &ChainComplex<T>) -> bool {
        (1..self
            .matrices
            .len()
            .min(source.top() + 1)
            .min(target.top() + 1))
            .all(|n| {
                target.boundaries[n].mul(&self.matrices[n])
                    == self.matrices[n - 1].mul(&source.boundaries[n])
            })
    }
}

/// Chain map of `f` in degrees `0..=max_dim`, checked against both boundaries.
pub fn induced_chain_map<T: IntScalar>(
    f: &SimplicialMap,
    max_dim: usize,
) -> Result<ChainMap<T>, ChainError> {
    let src = f.source();
    let dst = f.target();
    let count = |k: &SimplicialSet, d: usize| if d < k.num_dims() { k.count(d) } else { 0 };
    let mut matrices = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        let mut m = IntMatrix::zeros(count(dst, n), count(src, n));
        for j in 0..count(src, n) {
            if let Some(c) = f.image_of_cell(Cell::new(n, j)).as_cell() {
                m[(c.index, j)] = T::one();
            }
        }
        matrices.push(m);
    }
    let map = ChainMap { matrices };
    let cs: ChainComplex<T> = chain_complex_with(
        src,
        max_dim,
        false,
        &Limits {
            max_dim,
            ..Limits::default()
        },
    )?;
    let cd: ChainComplex<T> = chain_complex_with(
        dst,
        max_dim,
        false,
        &Limits {
            max_dim,
            ..Limits::default()
        },
    )?;
    if !map.commutes(&cs, &cd) {
        return Err(ChainError::Inconsistent(
            "induced matrices do not commute with the boundaries".into(),
        ));
    }
    Ok(map)
}

/// Checks `∂h + h∂ = g - f` in every degree where `f`, `g` and `h` are all
/// given and `∂_{n+1}` of the target exists. `h[n]: C_n -> D_{n+1}`.
pub fn chain_homotopy_check<T: IntScalar>(
    source: &ChainComplex<T>,
    target: &ChainComplex<T>,
    f: &ChainMap<T>,
    g: &ChainMap<T>,
    h: &[IntMatrix<T>],
) -> Result<bool, ChainError> {
    let degrees = f
        .matrices
        .len()
        .min(g.matrices.len())
        .min(h.len())
        .min(source.top() + 1)
        .min(target.top());
    for n in 0..degrees {
        let (fm, gm) = (&f.matrices[n], &g.matrices[n]);
        if (fm.rows(), fm.cols()) != (target.rank(n), source.rank(n))
            || (gm.rows(), gm.cols()) != (target.rank(n), source.rank(n))
        {
            return Err(ChainError::DimensionMismatch(format!(
                "chain map has the wrong shape in degree {n}"
            )));
        }
        if (h[n].rows(), h[n].cols()) != (target.rank(n + 1), source.rank(n)) {
            return Err(ChainError::DimensionMismatch(format!(
                "homotopy in degree {n} must be {}x{}, got {}x{}",
                target.rank(n + 1),
                source.rank(n),
                h[n].rows(),
                h[n].cols()
            )));
        }
    }
    for n in 0..degrees {
        let mut lhs = target.boundaries[n + 1].mul(&h[n]);
        if n > 0 {
            lhs = lhs.add(&h[n - 1].mul(&source.boundaries[n]));
        }
        if lhs != g.matrices[n].sub(&f.matrices[n]) {
            return Ok(false);
        }
    }
    Ok(true)
}
