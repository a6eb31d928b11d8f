use std::sync::Arc;

use super::set::SimplicialSet;
use super::word::{Cell, SimplexWord};
use super::SimplicialError;

/// A simplicial map, stored as the image word of every nondegenerate source
/// simplex. Images of degenerate simplices follow from the degeneracy word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    images: Vec<Vec<SimplexWord>>,
}

impl SimplicialMap {
    /// Checks dimensions and face compatibility.
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        images: Vec<Vec<SimplexWord>>,
    ) -> Result<Self, SimplicialError> {
        let map = SimplicialMap {
            source,
            target,
            images,
        };
        map.check()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        images: Vec<Vec<SimplexWord>>,
    ) -> Self {
        let map = SimplicialMap {
            source,
            target,
            images,
        };
        debug_assert!(map.check().is_ok(), "{:?}", map.check());
        map
    }

    /// Builds a map from `(source id, target word)` pairs given by name.
    pub fn from_names(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        assignment: &[(&str, &str, Vec<usize>)],
    ) -> Result<Self, SimplicialError> {
        let mut images: Vec<Vec<Option<SimplexWord>>> = (0..source.num_dims())
            .map(|d| vec![None; source.count(d)])
            .collect();
        for (src, dst, degens) in assignment {
            let cell = source
                .lookup(src)
                .ok_or_else(|| SimplicialError::UnknownId(src.to_string()))?;
            let base = target
                .lookup(dst)
                .ok_or_else(|| SimplicialError::UnknownId(dst.to_string()))?;
            images[cell.dim][cell.index] = Some(SimplexWord::new(base, degens.clone())?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(d, v)| {
                v.into_iter()
                    .enumerate()
                    .map(|(i, w)| {
                        w.ok_or_else(|| {
                            SimplicialError::InvalidMap(format!(
                                "no image for {}",
                                source.cell_name(Cell::new(d, i))
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialMap::new(source, target, images)
    }

    pub fn identity(set: Arc<SimplicialSet>) -> Self {
        let images = (0..set.num_dims())
            .map(|d| set.cells(d).map(SimplexWord::cell).collect())
            .collect();
        SimplicialMap {
            source: set.clone(),
            target: set,
            images,
        }
    }

    /// Sends everything to degeneracies of one target vertex.
    pub fn constant(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, vertex: Cell) -> Self {
        let images = (0..source.num_dims())
            .map(|d| {
                source
                    .cells(d)
                    .map(|_| SimplexWord::degenerate_vertex(vertex, d))
                    .collect()
            })
            .collect();
        SimplicialMap {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn image_of_cell(&self, cell: Cell) -> &SimplexWord {
        &self.images[cell.dim][cell.index]
    }

    pub fn images(&self) -> &Vec<Vec<SimplexWord>> {
        &self.images
    }

    /// Image of an arbitrary source simplex.
    pub fn apply(&self, word: &SimplexWord) -> SimplexWord {
        let image = self.image_of_cell(word.base());
        image.pull_back(&word.surjection())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap, SimplicialError> {
        if self.target.as_ref() != other.source.as_ref() {
            return Err(SimplicialError::InvalidMap(
                "maps are not composable".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|v| v.iter().map(|w| other.apply(w)).collect())
            .collect();
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }

    fn check(&self) -> Result<(), SimplicialError> {
        if self.images.len() != self.source.num_dims() {
            return Err(SimplicialError::InvalidMap(
                "image table has the wrong number of dimensions".into(),
            ));
        }
        for (dim, row) in self.images.iter().enumerate() {
            if row.len() != self.source.count(dim) {
                return Err(SimplicialError::InvalidMap(format!(
                    "image table has the wrong size in dimension {dim}"
                )));
            }
            for (index, image) in row.iter().enumerate() {
                let cell = Cell::new(dim, index);
                let name = self.source.cell_name(cell);
                let base = image.base();
                if base.dim >= self.target.num_dims() || base.index >= self.target.count(base.dim) {
                    return Err(SimplicialError::InvalidMap(format!(
                        "{name} maps to a missing simplex"
                    )));
                }
                if image.dim() != dim {
                    return Err(SimplicialError::InvalidMap(format!(
                        "{name} has dimension {dim} but its image has dimension {}",
                        image.dim()
                    )));
                }
                for (i, face) in self.source.cell_faces(cell).iter().enumerate() {
                    if self.apply(face) != self.target.face(image, i) {
                        return Err(SimplicialError::InvalidMap(format!(
                            "{name}: map does not commute with d_{i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::standard::{circle, cycle, delta};
    use super::*;

    #[test]
    fn wrap_map_commutes() {
        let c3 = Arc::new(cycle(3).unwrap());
        let s1 = Arc::new(circle());
        let f = SimplicialMap::from_names(
            c3,
            s1,
            &[
                ("v0", "v", vec![]),
                ("v1", "v", vec![]),
                ("v2", "v", vec![]),
                ("e0", "a", vec![]),
                ("e1", "a", vec![]),
                ("e2", "a", vec![]),
            ],
        );
        assert!(f.is_ok());
    }

    #[test]
    fn rejects_non_commuting_assignment() {
        let d1 = Arc::new(delta(1));
        let f = SimplicialMap::from_names(
            d1.clone(),
            d1,
            &[("0", "0", vec![]), ("1", "0", vec![]), ("01", "01", vec![])],
        );
        assert!(f.is_err());
    }

    #[test]
    fn composition_with_identity() {
        let s = Arc::new(circle());
        let id = SimplicialMap::identity(s.clone());
        let k = id.then(&id).unwrap();
        assert_eq!(k, id);
    }
}
