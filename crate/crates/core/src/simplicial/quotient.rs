//! Quotients: collapsing a subcomplex to a point, and orbit spaces of free
//! finite group actions. Also disjoint unions, which the action examples need.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::SimplicialSet;
use super::word::{Cell, SimplexWord};
use super::SimplicialError;

/// `K/A` with the quotient map. An empty `A` returns `K` and the identity.
pub fn quotient_by_subcomplex(
    k: &Arc<SimplicialSet>,
    subcomplex: &BTreeSet<Cell>,
) -> Result<(Arc<SimplicialSet>, SimplicialMap), SimplicialError> {
    for &c in subcomplex {
        if c.dim >= k.num_dims() || c.index >= k.count(c.dim) {
            return Err(SimplicialError::InvalidMap(format!(
                "subcomplex cell {c:?} is not in {}",
                k.name()
            )));
        }
        for f in k.cell_faces(c) {
            if !subcomplex.contains(&f.base()) {
                return Err(SimplicialError::NotFaceClosed(format!(
                    "{} has face {} outside the subcomplex",
                    k.cell_name(c),
                    k.word_name(f)
                )));
            }
        }
    }
    if subcomplex.is_empty() {
        return Ok((k.clone(), SimplicialMap::identity(k.clone())));
    }
    let point = Cell::new(0, 0);
    let mut new_index: Vec<Vec<Option<usize>>> = Vec::new();
    let mut names: Vec<Vec<String>> = Vec::new();
    for d in 0..k.num_dims() {
        let mut row = Vec::new();
        let mut nm = Vec::new();
        if d == 0 {
            nm.push("*".to_string());
        }
        for c in k.cells(d) {
            if subcomplex.contains(&c) {
                row.push(None);
            } else {
                row.push(Some(nm.len()));
                nm.push(k.cell_name(c).to_string());
            }
        }
        new_index.push(row);
        names.push(nm);
    }
    let send = |w: &SimplexWord| -> SimplexWord {
        let b = w.base();
        match new_index[b.dim][b.index] {
            Some(i) => SimplexWord::from_surjection(Cell::new(b.dim, i), &w.surjection()),
            None => SimplexWord::degenerate_vertex(point, w.dim()),
        }
    };
    let mut faces: Vec<Vec<Vec<SimplexWord>>> = names.iter().map(|_| Vec::new()).collect();
    faces[0] = vec![Vec::new(); names[0].len()];
    for d in 1..k.num_dims() {
        for c in k.cells(d) {
            if new_index[d][c.index].is_some() {
                faces[d].push(k.cell_faces(c).iter().map(&send).collect());
            }
        }
    }
    let q = Arc::new(SimplicialSet::from_parts_unchecked(
        format!("{}/A", k.name()),
        names,
        faces,
    ));
    let images = (0..k.num_dims())
        .map(|d| k.cells(d).map(|c| send(&SimplexWord::cell(c))).collect())
        .collect();
    let map = SimplicialMap::new(k.clone(), q.clone(), images)?;
    Ok((q, map))
}

/// A right action of a finite group with elements `0..order` (0 the identity)
/// by permutations of the nondegenerate cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellAction {
    /// `perms[g][dim][i]` is the index of `cell(dim, i) · g`.
    pub perms: Vec<Vec<Vec<usize>>>,
}

impl CellAction {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn act(&self, cell: Cell, g: usize) -> Cell {
        Cell::new(cell.dim, self.perms[g][cell.dim][cell.index])
    }

    pub fn act_word(&self, w: &SimplexWord, g: usize) -> SimplexWord {
        SimplexWord::from_surjection(self.act(w.base(), g), &w.surjection())
    }

    /// Checks that every element permutes cells and commutes with faces.
    pub fn check_simplicial(&self, k: &SimplicialSet) -> Result<(), SimplicialError> {
        for (g, perm) in self.perms.iter().enumerate() {
            if perm.len() != k.num_dims() {
                return Err(SimplicialError::InvalidAction(format!(
                    "element {g}: wrong number of dimensions"
                )));
            }
            for (d, p) in perm.iter().enumerate() {
                let mut seen = vec![false; k.count(d)];
                if p.len() != k.count(d) {
                    return Err(SimplicialError::InvalidAction(format!(
                        "element {g}: wrong size in dimension {d}"
                    )));
                }
                for &t in p {
                    if t >= seen.len() || std::mem::replace(&mut seen[t], true) {
                        return Err(SimplicialError::InvalidAction(format!(
                            "element {g} is not a permutation in dimension {d}"
                        )));
                    }
                }
            }
            for c in k.all_cells() {
                let gc = self.act(c, g);
                for (i, f) in k.cell_faces(c).iter().enumerate() {
                    if &self.act_word(f, g) != &k.cell_faces(gc)[i] {
                        return Err(SimplicialError::InvalidAction(format!(
                            "element {g} does not commute with d_{i} on {}",
                            k.cell_name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// First nondegenerate cell fixed by a non-identity element.
    pub fn fixed_cell(&self, k: &SimplicialSet) -> Option<(usize, Cell)> {
        (1..self.order()).find_map(|g| k.all_cells().find(|&c| self.act(c, g) == c).map(|c| (g, c)))
    }
}

/// Orbit presentation `K/Γ` and the projection. Orbits are named after their
/// lowest-index member.
pub fn quotient_by_free_action(
    k: &Arc<SimplicialSet>,
    action: &CellAction,
) -> Result<(Arc<SimplicialSet>, SimplicialMap), SimplicialError> {
    action.check_simplicial(k)?;
    if let Some((g, c)) = action.fixed_cell(k) {
        return Err(SimplicialError::NotFree(format!(
            "element {g} fixes {}",
            k.cell_name(c)
        )));
    }
    let mut orbit_of: Vec<Vec<usize>> = Vec::new();
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut reps: Vec<Vec<Cell>> = Vec::new();
    for d in 0..k.num_dims() {
        let mut row = vec![usize::MAX; k.count(d)];
        let mut nm = Vec::new();
        let mut rp = Vec::new();
        for c in k.cells(d) {
            if row[c.index] != usize::MAX {
                continue;
            }
            let id = nm.len();
            for g in 0..action.order() {
                row[action.act(c, g).index] = id;
            }
            nm.push(k.cell_name(c).to_string());
            rp.push(c);
        }
        orbit_of.push(row);
        names.push(nm);
        reps.push(rp);
    }
    let send = |w: &SimplexWord| {
        let b = w.base();
        SimplexWord::from_surjection(Cell::new(b.dim, orbit_of[b.dim][b.index]), &w.surjection())
    };
    let faces = reps
        .iter()
        .map(|row| {
            row.iter()
                .map(|&c| k.cell_faces(c).iter().map(&send).collect())
                .collect()
        })
        .collect();
    let q = Arc::new(SimplicialSet::from_parts_unchecked(
        format!("{}/G", k.name()),
        names,
        faces,
    ));
    let images = (0..k.num_dims())
        .map(|d| k.cells(d).map(|c| send(&SimplexWord::cell(c))).collect())
        .collect();
    let map = SimplicialMap::new(k.clone(), q.clone(), images)?;
    Ok((q, map))
}

/// Disjoint union; cell names get a `#i` suffix naming the summand.
pub fn disjoint_union(parts: &[&SimplicialSet]) -> SimplicialSet {
    let dims = parts.iter().map(|p| p.num_dims()).max().unwrap_or(0);
    let mut names: Vec<Vec<String>> = vec![Vec::new(); dims];
    let mut faces: Vec<Vec<Vec<SimplexWord>>> = vec![Vec::new(); dims];
    for (s, part) in parts.iter().enumerate() {
        let offsets: Vec<usize> = (0..dims).map(|d| names[d].len()).collect();
        for d in 0..part.num_dims() {
            for c in part.cells(d) {
                names[d].push(format!("{}#{s}", part.cell_name(c)));
                let fs = part
                    .cell_faces(c)
                    .iter()
                    .map(|w| {
                        let b = w.base();
                        SimplexWord::from_surjection(
                            Cell::new(b.dim, b.index + offsets[b.dim]),
                            &w.surjection(),
                        )
                    })
                    .collect();
                faces[d].push(fs);
            }
        }
    }
    let name = parts.iter().map(|p| p.name()).collect::<Vec<_>>().join("+");
    SimplicialSet::from_parts_unchecked(name, names, faces)
}

/// `m` copies of `K`, the fold map onto `K`, and the cyclic `Z/m` action
/// shifting copies.
pub fn copies(k: &Arc<SimplicialSet>, m: usize) -> (Arc<SimplicialSet>, SimplicialMap, CellAction) {
    let parts: Vec<&SimplicialSet> = (0..m).map(|_| k.as_ref()).collect();
    let total = Arc::new(disjoint_union(&parts));
    let images = (0..k.num_dims())
        .map(|d| {
            (0..m)
                .flat_map(|_| k.cells(d).map(SimplexWord::cell))
                .collect()
        })
        .collect();
    let fold = SimplicialMap::new_unchecked(total.clone(), k.clone(), images);
    let perms = (0..m)
        .map(|g| {
            (0..k.num_dims())
                .map(|d| {
                    let n = k.count(d);
                    (0..m * n).map(|i| ((i / n + g) % m) * n + i % n).collect()
                })
                .collect()
        })
        .collect();
    (total, fold, CellAction { perms })
}
