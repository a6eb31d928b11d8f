use rayon::prelude::*;

use super::complex::{ChainComplex, ChainMap, Coeff};
use super::ChainError;
use crate::linalg::{kernel_mod, FGAbelianGroup, IntMatrix, Subquotient};
use crate::IntScalar;

/// One degree of homology or cohomology, with the data needed to name classes.
#[derive(Clone, Debug)]
pub struct HomologyGroup<T> {
    pub degree: usize,
    pub coeff: Coeff,
    /// False for the top degree of a truncated complex.
    pub reliable: bool,
    quotient: Subquotient<T>,
}

impl<T: IntScalar> HomologyGroup<T> {
    pub fn group(&self) -> &FGAbelianGroup {
        self.quotient.group()
    }

    /// Order of each cyclic summand (0 for `Z`), in coordinate order.
    pub fn orders(&self) -> Vec<T> {
        self.quotient.orders()
    }

    /// Coordinates of the class of a cycle, `None` if it is not a cycle.
    pub fn coordinates(&self, cycle: &[T]) -> Option<Vec<T>> {
        self.quotient.coordinates(cycle)
    }

    /// A cycle representing each summand generator.
    pub fn generators(&self) -> Vec<Vec<T>> {
        self.quotient.generators()
    }

    pub fn representative(&self, coords: &[T]) -> Vec<T> {
        let m = self.coeff.modulus::<T>();
        let raw = self.quotient.element(coords);
        if m.is_zero() {
            raw
        } else {
            raw.into_iter().map(|v| v.mod_floor(&m)).collect()
        }
    }
}

fn scaled_identity<T: IntScalar>(n: usize, s: &T) -> IntMatrix<T> {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = s.clone();
    }
    m
}

/// `ker(out) / im(inc)` with coefficients, where `out: Z^c -> Z^a` and
/// `inc: Z^b -> Z^c`.
fn subquotient<T: IntScalar>(
    out: &IntMatrix<T>,
    inc: &IntMatrix<T>,
    coeff: Coeff,
) -> Subquotient<T> {
    let m = coeff.modulus::<T>();
    let cycles = kernel_mod(out, &m);
    let relations = if m.is_zero() {
        inc.clone()
    } else {
        inc.hcat(&scaled_identity(inc.rows(), &m))
    };
    Subquotient::new(cycles, &relations)
}

/// `H_n(C; coeff)` for `n` in `degrees`, computed independently per degree.
pub fn homology<T: IntScalar>(
    c: &ChainComplex<T>,
    coeff: Coeff,
) -> Result<Vec<HomologyGroup<T>>, ChainError> {
    coeff.check()?;
    Ok((0..=c.top())
        .into_par_iter()
        .map(|n| HomologyGroup {
            degree: n,
            coeff,
            reliable: c.reliable(n),
            quotient: subquotient(&c.boundaries[n], &c.boundary(n + 1), coeff),
        })
        .collect())
}

pub fn homology_degree<T: IntScalar>(
    c: &ChainComplex<T>,
    n: usize,
    coeff: Coeff,
) -> Result<HomologyGroup<T>, ChainError> {
    coeff.check()?;
    if n > c.top() {
        return Err(ChainError::Range {
            degree: n,
            top: c.top(),
        });
    }
    Ok(HomologyGroup {
        degree: n,
        coeff,
        reliable: c.reliable(n),
        quotient: subquotient(&c.boundaries[n], &c.boundary(n + 1), coeff),
    })
}

/// A cohomology class: a cocycle representative (values on the degree basis)
/// and its coordinates in the computed cohomology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainClass<T> {
    pub degree: usize,
    pub coeff: Coeff,
    pub values: Vec<T>,
    pub coords: Vec<T>,
}

impl<T: IntScalar> CochainClass<T> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Cohomology in all degrees of a complex.
#[derive(Clone, Debug)]
pub struct Cohomology<T> {
    pub coeff: Coeff,
    pub degrees: Vec<HomologyGroup<T>>,
    coboundaries: Vec<IntMatrix<T>>,
}

pub fn cohomology<T: IntScalar>(
    c: &ChainComplex<T>,
    coeff: Coeff,
) -> Result<Cohomology<T>, ChainError> {
    coeff.check()?;
    // δ^n = ∂_{n+1}^T : C^n -> C^{n+1}
    let coboundaries: Vec<IntMatrix<T>> = (0..=c.top())
        .map(|n| c.boundary(n + 1).transpose())
        .collect();
    let degrees = (0..=c.top())
        .into_par_iter()
        .map(|n| {
            let incoming = c.boundaries[n].transpose();
            HomologyGroup {
                degree: n,
                coeff,
                reliable: c.reliable(n),
                quotient: subquotient(&coboundaries[n], &incoming, coeff),
            }
        })
        .collect();
    Ok(Cohomology {
        coeff,
        degrees,
        coboundaries,
    })
}

impl<T: IntScalar> Cohomology<T> {
    pub fn top(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn group(&self, n: usize) -> Result<&FGAbelianGroup, ChainError> {
        Ok(self.degree(n)?.group())
    }

    pub fn degree(&self, n: usize) -> Result<&HomologyGroup<T>, ChainError> {
        self.degrees.get(n).ok_or(ChainError::Range {
            degree: n,
            top: self.top(),
        })
    }

    pub fn is_cocycle(&self, n: usize, values: &[T]) -> Result<bool, ChainError> {
        let d = self.coboundaries.get(n).ok_or(ChainError::Range {
            degree: n,
            top: self.top(),
        })?;
        if values.len() != d.cols() {
            return Err(ChainError::DimensionMismatch(format!(
                "degree-{n} cochain needs {} values, got {}",
                d.cols(),
                values.len()
            )));
        }
        let m = self.coeff.modulus::<T>();
        Ok(d.mul_vec(values).iter().all(|v| {
            if m.is_zero() {
                v.is_zero()
            } else {
                v.is_multiple_of(&m)
            }
        }))
    }

    /// The class of a cocycle.
    pub fn class_of(&self, n: usize, values: &[T]) -> Result<CochainClass<T>, ChainError> {
        if !self.is_cocycle(n, values)? {
            return Err(ChainError::NotACocycle(n));
        }
        let values: Vec<T> = values
            .iter()
            .map(|v| self.coeff.reduce(v.clone()))
            .collect();
        let coords = self.degrees[n]
            .coordinates(&values)
            .expect("cocycles lie in the cycle lattice");
        Ok(CochainClass {
            degree: n,
            coeff: self.coeff,
            values,
            coords,
        })
    }

    /// A representative class for each summand generator of `H^n`.
    pub fn generators(&self, n: usize) -> Result<Vec<CochainClass<T>>, ChainError> {
        let g = self.degree(n)?;
        g.generators().iter().map(|v| self.class_of(n, v)).collect()
    }

    /// Class with the given coordinates.
    pub fn class_with_coords(&self, n: usize, coords: &[T]) -> Result<CochainClass<T>, ChainError> {
        let g = self.degree(n)?;
        self.class_of(n, &g.representative(coords))
    }
}

/// Matrix of the map induced on `H_n` in summand coordinates (columns are
/// images of source generators, torsion coordinates reduced).
pub fn induced_on_homology<T: IntScalar>(
    map: &ChainMap<T>,
    source: &HomologyGroup<T>,
    target: &HomologyGroup<T>,
) -> Result<IntMatrix<T>, ChainError> {
    let n = source.degree;
    let f = map.matrices.get(n).ok_or(ChainError::Range {
        degree: n,
        top: map.matrices.len().saturating_sub(1),
    })?;
    let cols: Vec<Vec<T>> = source
        .generators()
        .iter()
        .map(|g| {
            target
                .coordinates(&f.mul_vec(g))
                .ok_or_else(|| ChainError::Inconsistent("image of a cycle is not a cycle".into()))
        })
        .collect::<Result<_, _>>()?;
    Ok(IntMatrix::from_columns(
        target.group().num_generators(),
        &cols,
    ))
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::super::complex::chain_complex;
    use super::*;
    use crate::simplicial::{circle, delta};

    fn groups(c: &ChainComplex<BigInt>, coeff: Coeff) -> Vec<String> {
        homology(c, coeff)
            .unwrap()
            .iter()
            .map(|h| h.group().to_string())
            .collect()
    }

    #[test]
    fn circle_homology() {
        let c = chain_complex(&circle(), 1, false).unwrap();
        assert_eq!(groups(&c, Coeff::Z), vec!["Z", "Z"]);
        let co = cohomology(&c, Coeff::Z).unwrap();
        assert_eq!(co.group(1).unwrap(), &FGAbelianGroup::free(1));
    }

    #[test]
    fn simplex_is_acyclic() {
        for p in 0..=4 {
            let c = chain_complex(&delta(p), p, false).unwrap();
            let mut expect = vec!["0".to_string(); p + 1];
            expect[0] = "Z".into();
            assert_eq!(groups(&c, Coeff::Z), expect);
        }
    }

    #[test]
    fn reduced_homology_of_point() {
        let c = chain_complex(&delta(0), 0, true).unwrap();
        assert_eq!(groups(&c, Coeff::Z), vec!["0"]);
    }

    #[test]
    fn range_error() {
        let c = chain_complex::<BigInt>(&circle(), 1, false).unwrap();
        assert!(matches!(
            homology_degree(&c, 3, Coeff::Z),
            Err(ChainError::Range { .. })
        ));
    }

    #[test]
    fn mod_two_coefficients() {
        let c = chain_complex::<i64>(&circle(), 1, false).unwrap();
        let h = homology(&c, Coeff::Mod(2)).unwrap();
        assert_eq!(h[1].group(), &FGAbelianGroup::cyclic(2));
    }
}
