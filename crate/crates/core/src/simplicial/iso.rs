//! Isomorphism search between small presentations (backtracking with a
//! fewest-candidates-first choice).

use std::collections::BTreeMap;

use super::set::SimplicialSet;
use super::word::{Cell, SimplexWord};

/// `cells[d][i]` is the index in the target of the image of cell `(d, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub cells: Vec<Vec<usize>>,
}

type Signature = Vec<(usize, usize, Vec<usize>)>;

struct Side<'a> {
    set: &'a SimplicialSet,
    cofaces: Vec<Vec<Vec<(Cell, usize)>>>,
    sigs: Vec<Vec<Signature>>,
}

impl<'a> Side<'a> {
    fn new(set: &'a SimplicialSet) -> Self {
        let mut cofaces: Vec<Vec<Vec<(Cell, usize)>>> = (0..set.num_dims())
            .map(|d| vec![Vec::new(); set.count(d)])
            .collect();
        let mut sigs: Vec<Vec<Signature>> = (0..set.num_dims())
            .map(|d| vec![Vec::new(); set.count(d)])
            .collect();
        for c in set.all_cells() {
            for (i, f) in set.cell_faces(c).iter().enumerate() {
                let b = f.base();
                cofaces[b.dim][b.index].push((c, i));
                sigs[b.dim][b.index].push((c.dim, i, f.degens().to_vec()));
            }
        }
        for row in &mut sigs {
            for s in row {
                s.sort();
            }
        }
        Side { set, cofaces, sigs }
    }
}

pub fn find_isomorphism(k: &SimplicialSet, l: &SimplicialSet) -> Option<Isomorphism> {
    if k.counts() != l.counts() {
        return None;
    }
    let ks = Side::new(k);
    let ls = Side::new(l);
    // signature multisets must agree per dimension
    for d in 0..k.num_dims() {
        let mut a: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in &ks.sigs[d] {
            *a.entry(s).or_default() += 1;
        }
        let mut b: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in &ls.sigs[d] {
            *b.entry(s).or_default() += 1;
        }
        if a != b {
            return None;
        }
    }
    let mut assign: Vec<Vec<Option<usize>>> =
        (0..k.num_dims()).map(|d| vec![None; k.count(d)]).collect();
    let mut used: Vec<Vec<bool>> = (0..l.num_dims()).map(|d| vec![false; l.count(d)]).collect();
    if search(&ks, &ls, &mut assign, &mut used) {
        Some(Isomorphism {
            cells: assign
                .into_iter()
                .map(|r| r.into_iter().map(Option::unwrap).collect())
                .collect(),
        })
    } else {
        None
    }
}

pub fn isomorphic(k: &SimplicialSet, l: &SimplicialSet) -> bool {
    find_isomorphism(k, l).is_some()
}

fn relabel(w: &SimplexWord, target: usize) -> SimplexWord {
    SimplexWord::from_surjection(Cell::new(w.base().dim, target), &w.surjection())
}

fn consistent(ks: &Side, ls: &Side, assign: &[Vec<Option<usize>>], x: Cell, y: usize) -> bool {
    if ks.sigs[x.dim][x.index] != ls.sigs[x.dim][y] {
        return false;
    }
    let yc = Cell::new(x.dim, y);
    for (i, f) in ks.set.cell_faces(x).iter().enumerate() {
        let b = f.base();
        if let Some(t) = assign[b.dim][b.index] {
            if relabel(f, t) != ls.set.cell_faces(yc)[i] {
                return false;
            }
        }
    }
    for &(c, i) in &ks.cofaces[x.dim][x.index] {
        if let Some(t) = assign[c.dim][c.index] {
            let f = &ks.set.cell_faces(c)[i];
            if relabel(f, y) != ls.set.cell_faces(Cell::new(c.dim, t))[i] {
                return false;
            }
        }
    }
    true
}

fn search(
    ks: &Side,
    ls: &Side,
    assign: &mut Vec<Vec<Option<usize>>>,
    used: &mut Vec<Vec<bool>>,
) -> bool {
    let mut best: Option<(Cell, Vec<usize>)> = None;
    for x in ks.set.all_cells() {
        if assign[x.dim][x.index].is_some() {
            continue;
        }
        let cands: Vec<usize> = (0..ls.set.count(x.dim))
            .filter(|&y| !used[x.dim][y] && consistent(ks, ls, assign, x, y))
            .collect();
        if cands.is_empty() {
            return false;
        }
        let better = best.as_ref().is_none_or(|(_, b)| cands.len() < b.len());
        if better {
            let single = cands.len() == 1;
            best = Some((x, cands));
            if single {
                break;
            }
        }
    }
    let Some((x, cands)) = best else {
        return true;
    };
    for y in cands {
        assign[x.dim][x.index] = Some(y);
        used[x.dim][y] = true;
        if search(ks, ls, assign, used) {
            return true;
        }
        assign[x.dim][x.index] = None;
        used[x.dim][y] = false;
    }
    false
}
