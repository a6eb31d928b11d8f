//! Characteristic classes of discrete-group principal bundles: normalized
//! group cochains, their transport to the nerve, and pullback along
//! classifying maps.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::bundles::{
    classifying_map_into, pullback_twisting, wbar_truncated, BundleError, Group, Nerve,
    TwistingFunction,
};
use crate::chains::{
    chain_complex_with, cohomology, cohomology_through, homology, ChainError, CochainClass, Coeff,
};
use crate::simplicial::{Cell, SimplexWord, SimplicialMap, SimplicialSet};
use crate::{IntScalar, Limits};

#[derive(Debug, thiserror::Error)]
pub enum CharClassError {
    #[error("cochain is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("degree {degree} needs truncation dimension at least {needed}")]
    DegreeTooHigh { degree: usize, needed: usize },
    #[error("cannot evaluate exhaustively: {0}")]
    Inexhaustible(String),
    #[error("coefficients do not match: {0}")]
    Coefficients(String),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

type Rule<E> = Arc<dyn Fn(&[E]) -> i64 + Send + Sync>;

/// Values of a group cochain on non-identity tuples.
#[derive(Clone)]
pub enum CochainValues<E> {
    /// Finite support; missing tuples are zero.
    Table(BTreeMap<Vec<E>, i64>),
    Rule(Rule<E>),
}

impl<E: fmt::Debug> fmt::Debug for CochainValues<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CochainValues::Table(t) => f.debug_tuple("Table").field(t).finish(),
            CochainValues::Rule(_) => f.write_str("Rule(..)"),
        }
    }
}

/// A normalized `k`-cochain `Γ^k → A` with trivial coefficients in `A = Z`
/// or `Z/n`.
#[derive(Clone, Debug)]
pub struct GroupCochain<G: Group> {
    pub degree: usize,
    pub group: G,
    pub coeff: Coeff,
    pub values: CochainValues<G::Elem>,
}

impl<G: Group> GroupCochain<G> {
    pub fn zero(group: G, degree: usize, coeff: Coeff) -> Self {
        GroupCochain {
            degree,
            group,
            coeff,
            values: CochainValues::Table(BTreeMap::new()),
        }
    }

    pub fn from_table(
        group: G,
        degree: usize,
        coeff: Coeff,
        entries: impl IntoIterator<Item = (Vec<G::Elem>, i64)>,
    ) -> Self {
        let mut table = BTreeMap::new();
        for (k, v) in entries {
            assert_eq!(k.len(), degree, "tuple length must equal the degree");
            table.insert(k, v);
        }
        GroupCochain {
            degree,
            group,
            coeff,
            values: CochainValues::Table(table),
        }
    }

    pub fn from_rule(
        group: G,
        degree: usize,
        coeff: Coeff,
        rule: impl Fn(&[G::Elem]) -> i64 + Send + Sync + 'static,
    ) -> Self {
        GroupCochain {
            degree,
            group,
            coeff,
            values: CochainValues::Rule(Arc::new(rule)),
        }
    }

    /// Parses entries like `"t,t" -> 1` by element names.
    pub fn from_named(
        group: G,
        degree: usize,
        coeff: Coeff,
        entries: &[(&str, i64)],
    ) -> Result<Self, CharClassError> {
        let mut table = BTreeMap::new();
        for (tuple, v) in entries {
            let elems: Option<Vec<G::Elem>> = if tuple.trim().is_empty() {
                Some(Vec::new())
            } else {
                split_tuple(tuple).iter().map(|s| group.parse(s)).collect()
            };
            let elems = elems
                .ok_or_else(|| BundleError::BadGroup(format!("cannot parse tuple {tuple}")))?;
            if elems.len() != degree {
                return Err(BundleError::BadGroup(format!(
                    "tuple {tuple} has length {}, expected {degree}",
                    elems.len()
                ))
                .into());
            }
            table.insert(elems, *v);
        }
        Ok(GroupCochain {
            degree,
            group,
            coeff,
            values: CochainValues::Table(table),
        })
    }

    /// Value on a tuple: zero when an entry is the identity, reduced
    /// modulo the coefficients.
    pub fn eval(&self, tuple: &[G::Elem]) -> i64 {
        if tuple.iter().any(|g| self.group.is_identity(g)) {
            return 0;
        }
        let v = match &self.values {
            CochainValues::Table(t) => t.get(tuple).copied().unwrap_or(0),
            CochainValues::Rule(r) => r(tuple),
        };
        reduce(self.coeff, v)
    }

    /// Bar coboundary `δc` (trivial action).
    pub fn coboundary_at(&self, tuple: &[G::Elem]) -> i64 {
        let n = tuple.len();
        assert_eq!(n, self.degree + 1, "coboundary takes one more argument");
        let mut total = self.eval(&tuple[1..]);
        for i in 1..n {
            let mut f = tuple[..i - 1].to_vec();
            f.push(self.group.mul(&tuple[i - 1], &tuple[i]));
            f.extend_from_slice(&tuple[i + 1..]);
            let v = self.eval(&f);
            total += if i % 2 == 0 { v } else { -v };
        }
        let last = self.eval(&tuple[..n - 1]);
        total += if n % 2 == 0 { last } else { -last };
        reduce(self.coeff, total)
    }

    /// `self + δb` for a `(k-1)`-cochain `b` on a finite group.
    pub fn add_coboundary(&self, b: &GroupCochain<G>) -> Result<GroupCochain<G>, CharClassError> {
        if b.degree + 1 != self.degree {
            return Err(BundleError::BadGroup("coboundary degree mismatch".into()).into());
        }
        let tuples = tuples(&self.group, self.degree)?;
        let entries: Vec<(Vec<G::Elem>, i64)> = tuples
            .into_iter()
            .map(|t| {
                let v = self.eval(&t) + b.coboundary_at(&t);
                (t, v)
            })
            .collect();
        Ok(GroupCochain::from_table(
            self.group.clone(),
            self.degree,
            self.coeff,
            entries,
        ))
    }
}

impl<G: Group> GroupCochain<G>
where
    G::Elem: Into<usize> + Copy,
{
    /// `g^i ↦ i` on a cyclic group listed as `Z/n` (elements in power order).
    pub fn identity_of_cyclic(group: G, coeff: Coeff) -> Self {
        GroupCochain::from_rule(group, 1, coeff, |t: &[G::Elem]| t[0].into() as i64)
    }
}

fn split_tuple(s: &str) -> Vec<String> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .unwrap_or(s);
    let sep = if inner.contains('|') { '|' } else { ',' };
    inner.split(sep).map(|p| p.trim().to_string()).collect()
}

fn reduce(coeff: Coeff, v: i64) -> i64 {
    match coeff {
        Coeff::Z => v,
        Coeff::Mod(n) => v.rem_euclid(n as i64),
    }
}

/// All non-identity `k`-tuples of a finite group, lexicographic.
fn tuples<G: Group>(group: &G, k: usize) -> Result<Vec<Vec<G::Elem>>, CharClassError> {
    let elems = group
        .elements()
        .ok_or_else(|| CharClassError::Inexhaustible(format!("{} is infinite", group.name())))?;
    let nonid: Vec<G::Elem> = elems
        .into_iter()
        .filter(|g| !group.is_identity(g))
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<G::Elem>| {
                nonid.iter().map(move |g| {
                    let mut u = t.clone();
                    u.push(g.clone());
                    u
                })
            })
            .collect();
    }
    Ok(out)
}

/// Exhaustive check that the bar coboundary vanishes (finite groups only).
pub fn group_cocycle_check<G: Group>(c: &GroupCochain<G>) -> Result<bool, CharClassError> {
    let all = tuples(&c.group, c.degree + 1)?;
    Ok(all.par_iter().all(|t| c.coboundary_at(t) == 0))
}

/// The cochain `(g_1, …, g_k) ↦ c(g_1, …, g_k)` on the nerve through
/// `max_dim`, with its class.
pub fn to_wbar_cochain<G: Group, T: IntScalar>(
    c: &GroupCochain<G>,
    max_dim: usize,
    limits: &Limits,
) -> Result<(Nerve<G>, CochainClass<T>), CharClassError> {
    if c.degree + 1 > max_dim {
        return Err(CharClassError::DegreeTooHigh {
            degree: c.degree,
            needed: c.degree + 1,
        });
    }
    let nerve = wbar_truncated(&c.group, max_dim, limits)?;
    let values = nerve_values(c, &nerve);
    let co = cohomology(
        &chain_complex_with::<T>(&nerve.set, max_dim, false, limits)?,
        c.coeff,
    )?;
    let class = co.class_of(c.degree, &values).map_err(|e| match e {
        ChainError::NotACocycle(n) => {
            CharClassError::NotACocycle(format!("degree {n} on {}", nerve.set.name()))
        }
        e => e.into(),
    })?;
    Ok((nerve, class))
}

fn nerve_values<G: Group, T: IntScalar>(c: &GroupCochain<G>, nerve: &Nerve<G>) -> Vec<T> {
    let k = c.degree;
    let count = if k < nerve.set.num_dims() {
        nerve.set.count(k)
    } else {
        0
    };
    (0..count)
        .map(|i| T::of(c.eval(&nerve.tuple_of(Cell::new(k, i)))))
        .collect()
}

/// Values of `f^* v` on the degree-`k` cells of the source; degenerate
/// images contribute zero.
pub fn pull_back_cochain<T: IntScalar>(f: &SimplicialMap, k: usize, values: &[T]) -> Vec<T> {
    let src = f.source();
    let count = if k < src.num_dims() { src.count(k) } else { 0 };
    (0..count)
        .map(|i| match f.image_of_cell(Cell::new(k, i)).as_cell() {
            Some(y) => values[y.index].clone(),
            None => T::zero(),
        })
        .collect()
}

/// `φ_τ^* [c]`. Finite groups go through the nerve and the classifying map;
/// presented groups evaluate `c` on consecutive edge labels directly, which
/// is the same cochain.
pub fn characteristic_class<G: Group, T: IntScalar>(
    tau: &TwistingFunction<G>,
    c: &GroupCochain<G>,
    limits: &Limits,
) -> Result<CochainClass<T>, CharClassError> {
    if tau.group() != &c.group {
        return Err(BundleError::BadTwisting("cochain is over a different group".into()).into());
    }
    let base = tau.base();
    let k = c.degree;
    let co = cohomology_through::<T>(base, k, c.coeff, limits)?;
    let values = if c.group.elements().is_some() {
        let top = base.dim().unwrap_or(0).max(k + 1);
        let (nerve, universal) = to_wbar_cochain::<G, T>(c, top, limits)?;
        let phi = classifying_map_into(tau, &nerve)?;
        pull_back_cochain(&phi, k, &universal.values)
    } else {
        if k != 1 {
            return Err(CharClassError::Inexhaustible(format!(
                "only degree-1 classes are supported for {}",
                c.group.name()
            )));
        }
        direct_values(tau, c)
    };
    co.class_of(k, &values).map_err(|e| match e {
        ChainError::NotACocycle(_) => {
            CharClassError::NotACocycle(format!("pullback to {} is not closed", base.name()))
        }
        e => e.into(),
    })
}

/// `x ↦ c(λ(x_{01}), …, λ(x_{k-1,k}))` on degree-`k` cells.
pub fn direct_values<G: Group, T: IntScalar>(
    tau: &TwistingFunction<G>,
    c: &GroupCochain<G>,
) -> Vec<T> {
    let base = tau.base();
    let k = c.degree;
    let count = if k < base.num_dims() {
        base.count(k)
    } else {
        0
    };
    (0..count)
        .map(|i| T::of(c.eval(&tau.label_tuple(&SimplexWord::cell(Cell::new(k, i))))))
        .collect()
}

/// `α(f^*τ) = f^*α(τ)` as classes on the source of `f`.
pub fn naturality_check<G: Group, T: IntScalar>(
    f: &SimplicialMap,
    tau: &TwistingFunction<G>,
    c: &GroupCochain<G>,
    limits: &Limits,
) -> Result<bool, CharClassError> {
    let k = c.degree;
    let lhs = characteristic_class::<G, T>(&pullback_twisting(f, tau)?, c, limits)?;
    let rhs_class = characteristic_class::<G, T>(tau, c, limits)?;
    let rhs = pull_back_cochain(f, k, &rhs_class.values);
    let co = cohomology_through::<T>(f.source(), k, c.coeff, limits)?;
    let diff: Vec<T> = lhs
        .values
        .iter()
        .zip(&rhs)
        .map(|(a, b)| a.clone() - b.clone())
        .collect();
    Ok(co.class_of(k, &diff)?.is_zero())
}

/// Evaluation of a degree-1 class on the generators of `H_1(K; Z)`.
pub fn evaluate_on_h1<T: IntScalar>(
    k: &SimplicialSet,
    class: &CochainClass<T>,
    limits: &Limits,
) -> Result<Vec<T>, CharClassError> {
    if class.degree != 1 {
        return Err(CharClassError::DegreeTooHigh {
            degree: class.degree,
            needed: 1,
        });
    }
    let h = homology(&chain_complex_with::<T>(k, 2, false, limits)?, Coeff::Z)?;
    Ok(h[1]
        .generators()
        .iter()
        .map(|z| {
            class.coeff.reduce(
                z.iter()
                    .zip(&class.values)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()),
            )
        })
        .collect())
}

/// `H_1(K) → π_1^{ab} → Γ → A` for a homomorphism `c: Γ → A` with `Γ`
/// abelian: each `H_1` generator is written as a sum of edge loops and
/// sent through the holonomy of each edge relative to a spanning tree.
pub fn hom_route_on_h1<G: Group, T: IntScalar>(
    tau: &TwistingFunction<G>,
    c: &GroupCochain<G>,
    limits: &Limits,
) -> Result<Vec<T>, CharClassError> {
    if c.degree != 1 {
        return Err(CharClassError::DegreeTooHigh {
            degree: c.degree,
            needed: 1,
        });
    }
    let base = tau.base();
    let h = homology(&chain_complex_with::<T>(base, 2, false, limits)?, Coeff::Z)?;
    let nv = if base.num_dims() > 0 {
        base.count(0)
    } else {
        0
    };
    let edges: Vec<(usize, usize)> = if base.num_dims() > 1 {
        base.cells(1)
            .map(|e| {
                (
                    base.cell_faces(e)[1].base().index,
                    base.cell_faces(e)[0].base().index,
                )
            })
            .collect()
    } else {
        Vec::new()
    };
    // tree transport p(v) from the first vertex of each component
    let mut p: Vec<Option<G::Elem>> = vec![None; nv];
    let group = tau.group();
    for root in 0..nv {
        if p[root].is_some() {
            continue;
        }
        p[root] = Some(group.identity());
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for (e, &(s, t)) in edges.iter().enumerate() {
                let l = &tau.labels()[e];
                let pv = p[v].clone().unwrap();
                let (w, val) = if t == v {
                    (s, group.mul(l, &pv))
                } else if s == v {
                    (t, group.mul(&group.inv(l), &pv))
                } else {
                    continue;
                };
                if p[w].is_none() {
                    p[w] = Some(val);
                    stack.push(w);
                }
            }
        }
    }
    let holonomy: Vec<i64> = edges
        .iter()
        .enumerate()
        .map(|(e, &(s, t))| {
            let (ps, pt) = (p[s].as_ref().unwrap(), p[t].as_ref().unwrap());
            c.eval(&[group.product([&group.inv(ps), &tau.labels()[e], pt])])
        })
        .collect();
    Ok(h[1]
        .generators()
        .iter()
        .map(|z| {
            c.coeff.reduce(
                z.iter()
                    .zip(&holonomy)
                    .fold(T::zero(), |acc, (a, &b)| acc + a.clone() * T::of(b)),
            )
        })
        .collect())
}
