use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use super::HomotopyError;
use crate::bundles::Group;
use crate::simplicial::{SimplexWord, SimplicialSet};

/// A simplicial group: a group in every dimension with homomorphic faces and
/// degeneracies. `dim` is always the dimension of the argument.
pub trait SimplicialGroup {
    type Elem: Clone + PartialEq + Debug;

    fn identity(&self, dim: usize) -> Self::Elem;
    fn mul(&self, dim: usize, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, dim: usize, a: &Self::Elem) -> Self::Elem;
    fn face(&self, dim: usize, a: &Self::Elem, i: usize) -> Self::Elem;
    fn degeneracy(&self, dim: usize, a: &Self::Elem, j: usize) -> Self::Elem;
}

/// A discrete group viewed as a constant simplicial group.
#[derive(Clone, Debug)]
pub struct ConstantGroup<G>(pub G);

impl<G: Group> SimplicialGroup for ConstantGroup<G> {
    type Elem = G::Elem;

    fn identity(&self, _: usize) -> G::Elem {
        self.0.identity()
    }

    fn mul(&self, _: usize, a: &G::Elem, b: &G::Elem) -> G::Elem {
        self.0.mul(a, b)
    }

    fn inv(&self, _: usize, a: &G::Elem) -> G::Elem {
        self.0.inv(a)
    }

    fn face(&self, _: usize, a: &G::Elem, _: usize) -> G::Elem {
        a.clone()
    }

    fn degeneracy(&self, _: usize, a: &G::Elem, _: usize) -> G::Elem {
        a.clone()
    }
}

/// The free simplicial abelian group `ZK`: finite integer combinations of
/// simplices (degenerate ones included).
#[derive(Clone, Debug)]
pub struct FreeAbelian(pub Arc<SimplicialSet>);

pub type Combination = BTreeMap<SimplexWord, i64>;

fn add_term(c: &mut Combination, w: SimplexWord, n: i64) {
    match c.entry(w) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += n;
            if *e.get() == 0 {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if n != 0 {
                e.insert(n);
            }
        }
    }
}

impl SimplicialGroup for FreeAbelian {
    type Elem = Combination;

    fn identity(&self, _: usize) -> Combination {
        Combination::new()
    }

    fn mul(&self, _: usize, a: &Combination, b: &Combination) -> Combination {
        let mut out = a.clone();
        for (w, n) in b {
            add_term(&mut out, w.clone(), *n);
        }
        out
    }

    fn inv(&self, _: usize, a: &Combination) -> Combination {
        a.iter().map(|(w, n)| (w.clone(), -n)).collect()
    }

    fn face(&self, _: usize, a: &Combination, i: usize) -> Combination {
        let mut out = Combination::new();
        for (w, n) in a {
            add_term(&mut out, self.0.face(w, i), *n);
        }
        out
    }

    fn degeneracy(&self, _: usize, a: &Combination, j: usize) -> Combination {
        a.iter()
            .map(|(w, n)| (w.degenerate(j).expect("degeneracy index in range"), *n))
            .collect()
    }
}

/// Horn data in a simplicial group: `faces[i]` for `i ≠ k`, each of
/// dimension `p - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupHorn<E> {
    pub p: usize,
    pub k: usize,
    pub faces: Vec<Option<E>>,
}

impl<E: Clone + PartialEq + Debug> GroupHorn<E> {
    pub fn from_faces(p: usize, k: usize, given: Vec<E>) -> Result<Self, HomotopyError> {
        if p == 0 || k > p || given.len() != p {
            return Err(HomotopyError::BadHorn(format!(
                "a Λ_{k}[{p}] horn needs {p} faces"
            )));
        }
        let mut it = given.into_iter();
        Ok(GroupHorn {
            p,
            k,
            faces: (0..=p)
                .map(|i| if i == k { None } else { it.next() })
                .collect(),
        })
    }

    pub fn is_compatible<S: SimplicialGroup<Elem = E>>(&self, g: &S) -> bool {
        if self.p < 2 {
            return true;
        }
        (0..=self.p).all(|j| {
            (0..j).all(|i| match (&self.faces[i], &self.faces[j]) {
                (Some(fi), Some(fj)) => g.face(self.p - 1, fj, i) == g.face(self.p - 1, fi, j - 1),
                _ => true,
            })
        })
    }
}

/// Filler by the standard correction recursion: work upward through the
/// faces below `k`, then downward through those above, multiplying by a
/// degeneracy that fixes one face without disturbing the ones already fixed.
pub fn moore_filler<S: SimplicialGroup>(
    g: &S,
    h: &GroupHorn<S::Elem>,
) -> Result<S::Elem, HomotopyError> {
    if !h.is_compatible(g) {
        return Err(HomotopyError::BadHorn(
            "faces violate the horn identities".into(),
        ));
    }
    let n = h.p;
    let y = |r: usize| h.faces[r].as_ref().expect("face present");
    let mut w = g.identity(n);
    for r in 0..h.k {
        let fix = g.mul(n - 1, &g.inv(n - 1, &g.face(n, &w, r)), y(r));
        w = g.mul(n, &w, &g.degeneracy(n - 1, &fix, r));
    }
    for r in (h.k + 1..=n).rev() {
        let fix = g.mul(n - 1, &g.inv(n - 1, &g.face(n, &w, r)), y(r));
        w = g.mul(n, &w, &g.degeneracy(n - 1, &fix, r - 1));
    }
    for i in (0..=n).filter(|&i| i != h.k) {
        if &g.face(n, &w, i) != y(i) {
            return Err(HomotopyError::Inconsistent(format!(
                "filler misses face {i}"
            )));
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::FiniteGroup;
    use crate::simplicial::{delta, Cell};

    #[test]
    fn identity_horn() {
        let g = ConstantGroup(FiniteGroup::cyclic(3));
        let h = GroupHorn::from_faces(3, 1, vec![0, 0, 0]).unwrap();
        assert_eq!(moore_filler(&g, &h).unwrap(), 0);
    }

    #[test]
    fn constant_z2() {
        let g = ConstantGroup(FiniteGroup::cyclic(2));
        let h = GroupHorn::from_faces(2, 1, vec![1, 1]).unwrap();
        assert_eq!(moore_filler(&g, &h).unwrap(), 1);
    }

    #[test]
    fn constant_z3_all_compatible_horns() {
        let g = ConstantGroup(FiniteGroup::cyclic(3));
        for k in 0..=2 {
            for a in 0..3 {
                for b in 0..3 {
                    let h = GroupHorn::from_faces(2, k, vec![a, b]).unwrap();
                    // constant faces: compatible iff all equal
                    assert_eq!(moore_filler(&g, &h).is_ok(), a == b);
                }
            }
        }
    }

    #[test]
    fn free_abelian_on_simplex() {
        let k = Arc::new(delta(2));
        let g = FreeAbelian(k.clone());
        let tri = SimplexWord::cell(Cell::new(2, 0));
        let faces: Vec<Combination> = (0..3)
            .map(|i| [(k.face(&tri, i), 2)].into_iter().collect())
            .collect();
        for kk in 0..=2 {
            let given: Vec<Combination> = (0..3)
                .filter(|&i| i != kk)
                .map(|i| faces[i].clone())
                .collect();
            let h = GroupHorn::from_faces(2, kk, given).unwrap();
            assert!(moore_filler(&g, &h).is_ok());
        }
    }
}
