//! Cartesian products. A nondegenerate `n`-simplex of `K × L` is a pair of
//! `n`-simplices whose degeneracy sets are disjoint.

use std::collections::HashMap;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::{combinations, SimplicialSet};
use super::word::{flat_positions, Cell, SimplexWord};
use super::SimplicialError;
use crate::{BudgetExceeded, Limits};

/// A product together with its two projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub set: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pairs: HashMap<(SimplexWord, SimplexWord), Cell>,
}

impl Product {
    /// The product simplex with the given components (same dimension).
    pub fn pair(&self, u: &SimplexWord, v: &SimplexWord) -> SimplexWord {
        pair_word(&self.pairs, u, v)
    }
}

fn pair_word(
    pairs: &HashMap<(SimplexWord, SimplexWord), Cell>,
    u: &SimplexWord,
    v: &SimplexWord,
) -> SimplexWord {
    debug_assert_eq!(u.dim(), v.dim());
    let eu = u.surjection();
    let ev = v.surjection();
    let n = u.dim();
    let common: Vec<usize> = (0..n)
        .filter(|&j| eu[j] == eu[j + 1] && ev[j] == ev[j + 1])
        .collect();
    // zeta: [n] -> [n'] collapsing the common degeneracies
    let mut zeta = Vec::with_capacity(n + 1);
    zeta.push(0usize);
    for j in 0..n {
        let last = *zeta.last().unwrap();
        zeta.push(if common.contains(&j) { last } else { last + 1 });
    }
    let n_red = *zeta.last().unwrap();
    let mut ru = vec![0usize; n_red + 1];
    let mut rv = vec![0usize; n_red + 1];
    for k in 0..=n {
        ru[zeta[k]] = eu[k];
        rv[zeta[k]] = ev[k];
    }
    let u_red = SimplexWord::from_surjection(u.base(), &ru);
    let v_red = SimplexWord::from_surjection(v.base(), &rv);
    let cell = pairs[&(u_red, v_red)];
    SimplexWord::from_surjection(cell, &zeta)
}

pub fn product(
    k: &Arc<SimplicialSet>,
    l: &Arc<SimplicialSet>,
    limits: &Limits,
) -> Result<Product, SimplicialError> {
    let kd = k.dim();
    let ld = l.dim();
    let (Some(kd), Some(ld)) = (kd, ld) else {
        let empty = Arc::new(SimplicialSet::from_parts_unchecked(
            format!("{}x{}", k.name(), l.name()),
            Vec::new(),
            Vec::new(),
        ));
        return Ok(Product {
            left: SimplicialMap::new_unchecked(empty.clone(), k.clone(), Vec::new()),
            right: SimplicialMap::new_unchecked(empty.clone(), l.clone(), Vec::new()),
            set: empty,
            pairs: HashMap::new(),
        });
    };
    let top = kd + ld;
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut comps: Vec<Vec<(SimplexWord, SimplexWord)>> = vec![Vec::new(); top + 1];
    let mut pairs = HashMap::new();
    let mut total = 0u128;
    for n in 0..=top {
        for p in 0..=n.min(kd) {
            for q in (n - p)..=n.min(ld) {
                let ka = combinations(n, n - p);
                for x in k.cells(p) {
                    for y in l.cells(q) {
                        for a in &ka {
                            let rest: Vec<usize> = (0..n).filter(|j| !a.contains(j)).collect();
                            for bi in combinations(rest.len(), n - q) {
                                let b: Vec<usize> = bi.iter().map(|&i| rest[i]).collect();
                                let u =
                                    SimplexWord::new(x, a.iter().rev().copied().collect()).unwrap();
                                let v =
                                    SimplexWord::new(y, b.iter().rev().copied().collect()).unwrap();
                                total += 1;
                                if total > limits.max_simplices as u128 {
                                    return Err(BudgetExceeded::new(
                                        "product simplices",
                                        total,
                                        limits.max_simplices,
                                    )
                                    .into());
                                }
                                let cell = Cell::new(n, comps[n].len());
                                names[n].push(format!("({},{})", k.word_name(&u), l.word_name(&v)));
                                pairs.insert((u.clone(), v.clone()), cell);
                                comps[n].push((u, v));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut faces: Vec<Vec<Vec<SimplexWord>>> = vec![Vec::new(); top + 1];
    for n in 1..=top {
        for (u, v) in &comps[n] {
            let fs = (0..=n)
                .map(|i| pair_word(&pairs, &k.face(u, i), &l.face(v, i)))
                .collect();
            faces[n].push(fs);
        }
    }
    faces[0] = vec![Vec::new(); comps[0].len()];
    let set = Arc::new(SimplicialSet::from_parts_unchecked(
        format!("{}x{}", k.name(), l.name()),
        names,
        faces,
    ));
    let left_images = comps
        .iter()
        .map(|c| c.iter().map(|(u, _)| u.clone()).collect())
        .collect();
    let right_images = comps
        .iter()
        .map(|c| c.iter().map(|(_, v)| v.clone()).collect())
        .collect();
    Ok(Product {
        left: SimplicialMap::new_unchecked(set.clone(), k.clone(), left_images),
        right: SimplicialMap::new_unchecked(set.clone(), l.clone(), right_images),
        set,
        pairs,
    })
}

/// `f × g : K × K' -> L × L'` between previously built products.
pub fn product_map(
    source: &Product,
    target: &Product,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<SimplicialMap, SimplicialError> {
    if f.source().as_ref() != source.left.target().as_ref()
        || g.source().as_ref() != source.right.target().as_ref()
        || f.target().as_ref() != target.left.target().as_ref()
        || g.target().as_ref() != target.right.target().as_ref()
    {
        return Err(SimplicialError::InvalidMap(
            "product map factors do not match the products".into(),
        ));
    }
    let set = &source.set;
    let images = (0..set.num_dims())
        .map(|d| {
            set.cells(d)
                .map(|c| {
                    let u = f.apply(source.left.image_of_cell(c));
                    let v = g.apply(source.right.image_of_cell(c));
                    target.pair(&u, &v)
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(source.set.clone(), target.set.clone(), images)
}

/// Nondegenerate pairs `(u, v)` of words of equal dimension `n` are exactly
/// those with disjoint degeneracy sets; exposed for tests.
pub fn pair_is_nondegenerate(u: &SimplexWord, v: &SimplexWord) -> bool {
    let a = flat_positions(&u.surjection());
    let b = flat_positions(&v.surjection());
    a.iter().all(|j| !b.contains(j))
}
