use std::fmt;

use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::smith::{smith_normal_form, SmithForm};
use crate::IntScalar;

/// Finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `d_1 | d_2 | …` and every `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FGAbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        FGAbelianGroup {
            rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, &[])
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            n => Self::new(0, &[n]),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic summands.
    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Group presented by the given invariant factors (zeros free, ones dropped).
    pub fn from_factors<T: IntScalar>(factors: &[T]) -> Self {
        let mut g = FGAbelianGroup::default();
        for f in factors {
            if f.is_zero() {
                g.rank += 1;
            } else if !f.is_one() {
                g.torsion.push(to_bigint(&f.abs()));
            }
        }
        g.torsion.sort();
        g
    }
}

pub(crate) fn to_bigint<T: IntScalar>(v: &T) -> BigInt {
    v.to_string()
        .parse()
        .expect("integer scalar prints as an integer")
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z / B` for a sublattice `Z ⊂ Z^n` (given by a basis) and a sublattice
/// `B ⊂ Z` (given by generators). Elements of `Z` get coordinates in the
/// cyclic decomposition: free summands first, then torsion summands.
#[derive(Clone, Debug)]
pub struct Subquotient<T> {
    basis: IntMatrix<T>,
    basis_smith: SmithForm<T>,
    /// change of coordinates on `Z`: new coordinates are `transform · old`
    transform: IntMatrix<T>,
    transform_inv: IntMatrix<T>,
    /// `(index in the new coordinates, order or 0 for free)` per summand
    summands: Vec<(usize, T)>,
    group: FGAbelianGroup,
}

impl<T: IntScalar> Subquotient<T> {
    /// `basis` has independent columns spanning `Z`; every column of
    /// `relations` must lie in `Z`.
    pub fn new(basis: IntMatrix<T>, relations: &IntMatrix<T>) -> Self {
        let k = basis.cols();
        let basis_smith = smith_normal_form(&basis);
        debug_assert_eq!(basis_smith.rank, k, "basis columns are dependent");
        let coords: Vec<Vec<T>> = (0..relations.cols())
            .map(|j| {
                basis_smith
                    .solve(&relations.column(j))
                    .expect("relation outside the sublattice")
            })
            .collect();
        let rel = IntMatrix::from_columns(k, &coords);
        let s = smith_normal_form(&rel);
        let diag = s.diagonal();
        let factors: Vec<T> = (0..k)
            .map(|i| diag.get(i).cloned().unwrap_or_else(T::zero))
            .collect();
        let mut summands: Vec<(usize, T)> = factors
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_zero())
            .map(|(i, f)| (i, f.clone()))
            .collect();
        summands.extend(
            factors
                .iter()
                .enumerate()
                .filter(|(_, f)| !f.is_zero() && !f.is_one())
                .map(|(i, f)| (i, f.clone())),
        );
        let group = FGAbelianGroup::from_factors(&factors);
        Subquotient {
            basis,
            basis_smith,
            transform: s.u,
            transform_inv: s.u_inv,
            summands,
            group,
        }
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    /// Order of each summand (0 for `Z`), in coordinate order.
    pub fn orders(&self) -> Vec<T> {
        self.summands.iter().map(|(_, o)| o.clone()).collect()
    }

    /// Coordinates of the class of `z`, or `None` when `z` is not in `Z`.
    /// Torsion coordinates are reduced into `0..d`.
    pub fn coordinates(&self, z: &[T]) -> Option<Vec<T>> {
        let y = self.basis_smith.solve(z)?;
        let c = self.transform.mul_vec(&y);
        Some(
            self.summands
                .iter()
                .map(|(i, o)| {
                    if o.is_zero() {
                        c[*i].clone()
                    } else {
                        c[*i].mod_floor(o)
                    }
                })
                .collect(),
        )
    }

    /// A representative in `Z` of each summand generator.
    pub fn generators(&self) -> Vec<Vec<T>> {
        self.summands
            .iter()
            .map(|(i, _)| self.basis.mul_vec(&self.transform_inv.column(*i)))
            .collect()
    }

    /// Representative of the class with the given coordinates.
    pub fn element(&self, coords: &[T]) -> Vec<T> {
        let gens = self.generators();
        let mut out = vec![T::zero(); self.basis.rows()];
        for (g, c) in gens.iter().zip(coords) {
            for (o, x) in out.iter_mut().zip(g) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        out
    }

    pub fn is_zero_class(&self, z: &[T]) -> Option<bool> {
        self.coordinates(z).map(|c| c.iter().all(|v| v.is_zero()))
    }
}

/// Basis of `{x : M x ≡ 0 (mod n)}`; `n = 0` gives the integer kernel.
pub fn kernel_mod<T: IntScalar>(m: &IntMatrix<T>, modulus: &T) -> IntMatrix<T> {
    if modulus.is_zero() {
        return smith_normal_form(m).kernel_basis();
    }
    let mut scaled = IntMatrix::zeros(m.rows(), m.rows());
    for i in 0..m.rows() {
        scaled[(i, i)] = modulus.clone();
    }
    let k = smith_normal_form(&m.hcat(&scaled)).kernel_basis();
    // projecting away the second block is injective on this kernel
    k.top_rows(m.cols())
}

/// A basis of the lattice spanned by the columns.
pub fn column_basis<T: IntScalar>(m: &IntMatrix<T>) -> IntMatrix<T> {
    let s = smith_normal_form(m);
    // columns of M V are (U^-1 D); the first `rank` are a basis
    let mv = m.mul(&s.v);
    let cols: Vec<usize> = (0..s.rank).collect();
    mv.select_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FGAbelianGroup::new(1, &[2]).to_string(), "Z + Z/2");
        assert_eq!(FGAbelianGroup::free(2).to_string(), "Z^2");
    }

    #[test]
    fn z_mod_two() {
        let basis: IntMatrix<BigInt> = IntMatrix::identity(1);
        let rel = IntMatrix::from_i64(&[&[2]]);
        let q = Subquotient::new(basis, &rel);
        assert_eq!(q.group(), &FGAbelianGroup::cyclic(2));
        assert_eq!(
            q.coordinates(&[BigInt::from(5)]).unwrap(),
            vec![BigInt::from(1)]
        );
        assert_eq!(q.is_zero_class(&[BigInt::from(4)]), Some(true));
    }

    #[test]
    fn mixed_quotient() {
        // Z^3 / <(2,0,0), (0,0,0)> = Z^2 + Z/2
        let basis: IntMatrix<i64> = IntMatrix::identity(3);
        let rel = IntMatrix::from_i64(&[&[2, 0], &[0, 0], &[0, 0]]);
        let q = Subquotient::new(basis, &rel);
        assert_eq!(q.group(), &FGAbelianGroup::new(2, &[2]));
        for g in q.generators() {
            assert_eq!(
                q.coordinates(&g)
                    .unwrap()
                    .iter()
                    .filter(|c| **c != 0)
                    .count(),
                1
            );
        }
    }

    #[test]
    fn kernel_mod_two() {
        let m: IntMatrix<i64> = IntMatrix::from_i64(&[&[2, 1]]);
        let k = kernel_mod(&m, &2);
        assert_eq!(k.cols(), 2);
        for j in 0..2 {
            assert_eq!(m.mul_vec(&k.column(j))[0].rem_euclid(2), 0);
        }
    }
}
