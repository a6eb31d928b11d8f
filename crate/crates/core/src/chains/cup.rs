use super::complex::{chain_complex_with, Coeff};
use super::homology::{cohomology, CochainClass, Cohomology};
use super::ChainError;
use crate::simplicial::{Cell, SimplexWord, SimplicialSet};
use crate::{IntScalar, Limits};

/// Alexander–Whitney product of normalized cochains given by their values on
/// nondegenerate cells; degenerate front or back faces contribute zero.
pub fn cup_cochain<T: IntScalar>(
    k: &SimplicialSet,
    p: usize,
    alpha: &[T],
    q: usize,
    beta: &[T],
    coeff: Coeff,
) -> Vec<T> {
    let n = p + q;
    let count = if n < k.num_dims() { k.count(n) } else { 0 };
    let front: Vec<usize> = (0..=p).collect();
    let back: Vec<usize> = (p..=n).collect();
    (0..count)
        .map(|i| {
            let x = SimplexWord::cell(Cell::new(n, i));
            let f = k.restrict(&x, &front);
            let b = k.restrict(&x, &back);
            match (f.as_cell(), b.as_cell()) {
                (Some(f), Some(b)) => coeff.reduce(alpha[f.index].clone() * beta[b.index].clone()),
                _ => T::zero(),
            }
        })
        .collect()
}

/// Unit 0-cocycle (1 on every vertex).
pub fn unit_cocycle<T: IntScalar>(k: &SimplicialSet) -> Vec<T> {
    vec![T::one(); if k.num_dims() > 0 { k.count(0) } else { 0 }]
}

/// `[α ∪ β]`, computed against `H^{p+q}(K)` with complete boundary data.
pub fn cup_product<T: IntScalar>(
    k: &SimplicialSet,
    alpha: &CochainClass<T>,
    beta: &CochainClass<T>,
) -> Result<CochainClass<T>, ChainError> {
    cup_product_with(k, alpha, beta, &Limits::default())
}

pub fn cup_product_with<T: IntScalar>(
    k: &SimplicialSet,
    alpha: &CochainClass<T>,
    beta: &CochainClass<T>,
    limits: &Limits,
) -> Result<CochainClass<T>, ChainError> {
    if alpha.coeff != beta.coeff {
        return Err(ChainError::BadCoefficients(format!(
            "cannot multiply {} and {} classes",
            alpha.coeff, beta.coeff
        )));
    }
    let n = alpha.degree + beta.degree;
    let co = cohomology_through(k, n, alpha.coeff, limits)?;
    let values = cup_cochain(
        k,
        alpha.degree,
        &alpha.values,
        beta.degree,
        &beta.values,
        alpha.coeff,
    );
    co.class_of(n, &values)
}

/// Cohomology through degree `n`, built with one extra degree so `H^n` is exact.
pub fn cohomology_through<T: IntScalar>(
    k: &SimplicialSet,
    n: usize,
    coeff: Coeff,
    limits: &Limits,
) -> Result<Cohomology<T>, ChainError> {
    let c = chain_complex_with(k, n + 1, false, limits)?;
    cohomology(&c, coeff)
}
