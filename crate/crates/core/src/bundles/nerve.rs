use std::collections::HashMap;
use std::sync::Arc;

use super::group::Group;
use super::twisting::{tcp_build, PrincipalBundleData, TwistingFunction};
use super::BundleError;
use crate::chains::{chain_complex_with, homology, Coeff};
use crate::homotopy::{kan_report, KanReport};
use crate::linalg::FGAbelianGroup;
use crate::simplicial::{Cell, SimplexWord, SimplicialMap, SimplicialSet};
use crate::{BudgetExceeded, Limits};

/// The nerve `W̄Γ` of a finite group up to a fixed dimension. Nondegenerate
/// `n`-simplices are the tuples `(g_1, …, g_n)` with no identity entry,
/// listed lexicographically in the group's element order.
#[derive(Clone, Debug)]
pub struct Nerve<G: Group> {
    pub group: G,
    pub set: Arc<SimplicialSet>,
    pub max_dim: usize,
    nonidentity: Vec<G::Elem>,
    position: HashMap<G::Elem, usize>,
}

impl<G: Group> Nerve<G> {
    /// Tuple of a nondegenerate cell.
    pub fn tuple_of(&self, cell: Cell) -> Vec<G::Elem> {
        let r = self.nonidentity.len();
        let mut idx = cell.index;
        let mut out = vec![self.group.identity(); cell.dim];
        for slot in out.iter_mut().rev() {
            *slot = self.nonidentity[idx % r].clone();
            idx /= r;
        }
        out
    }

    /// The simplex named by an arbitrary tuple: identity entries become
    /// degeneracies.
    pub fn word_of(&self, tuple: &[G::Elem]) -> SimplexWord {
        let r = self.nonidentity.len();
        let mut eta = Vec::with_capacity(tuple.len() + 1);
        eta.push(0);
        let mut index = 0;
        for g in tuple {
            let step = usize::from(!self.group.is_identity(g));
            if step == 1 {
                index = index * r + self.position[g];
            }
            eta.push(eta.last().unwrap() + step);
        }
        SimplexWord::from_surjection(Cell::new(*eta.last().unwrap(), index), &eta)
    }

    fn faces_of_tuple(&self, t: &[G::Elem]) -> Vec<SimplexWord> {
        let n = t.len();
        (0..=n)
            .map(|i| {
                let f: Vec<G::Elem> = if i == 0 {
                    t[1..].to_vec()
                } else if i == n {
                    t[..n - 1].to_vec()
                } else {
                    let mut f = t[..i - 1].to_vec();
                    f.push(self.group.mul(&t[i - 1], &t[i]));
                    f.extend_from_slice(&t[i + 1..]);
                    f
                };
                self.word_of(&f)
            })
            .collect()
    }
}

fn tuple_name<G: Group>(group: &G, t: &[G::Elem]) -> String {
    if t.is_empty() {
        return "*".into();
    }
    let parts: Vec<String> = t.iter().map(|g| group.format(g)).collect();
    format!("[{}]", parts.join("|"))
}

/// Nerve of a finite group through `max_dim`.
pub fn wbar_truncated<G: Group>(
    group: &G,
    max_dim: usize,
    limits: &Limits,
) -> Result<Nerve<G>, BundleError> {
    let elems = group.elements().ok_or_else(|| {
        BundleError::Unsupported(format!(
            "the nerve of {} is infinite in each dimension",
            group.name()
        ))
    })?;
    if max_dim > limits.max_dim {
        return Err(BudgetExceeded::new("nerve dimension", max_dim as u128, limits.max_dim).into());
    }
    let nonidentity: Vec<G::Elem> = elems
        .into_iter()
        .filter(|g| !group.is_identity(g))
        .collect();
    let r = nonidentity.len();
    let mut total: u128 = 0;
    for d in 0..=max_dim {
        total += (r as u128).pow(d as u32);
        if total > limits.max_simplices as u128 {
            return Err(BudgetExceeded::new("nerve simplices", total, limits.max_simplices).into());
        }
    }
    let position = nonidentity
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let mut nerve = Nerve {
        group: group.clone(),
        set: Arc::new(SimplicialSet::from_parts_unchecked(
            String::new(),
            vec![],
            vec![],
        )),
        max_dim,
        nonidentity,
        position,
    };
    let mut names = Vec::new();
    let mut faces = Vec::new();
    for d in 0..=max_dim {
        let count = if r == 0 && d > 0 { 0 } else { r.pow(d as u32) };
        let mut nm = Vec::with_capacity(count);
        let mut fs = Vec::with_capacity(count);
        for i in 0..count {
            let t = nerve.tuple_of(Cell::new(d, i));
            nm.push(tuple_name(group, &t));
            fs.push(if d == 0 {
                Vec::new()
            } else {
                nerve.faces_of_tuple(&t)
            });
        }
        names.push(nm);
        faces.push(fs);
    }
    nerve.set = Arc::new(SimplicialSet::from_parts_unchecked(
        format!("Wbar({})", group.name()),
        names,
        faces,
    ));
    Ok(nerve)
}

/// `(g) ↦ g` on the edges of the nerve.
pub fn universal_twisting<G: Group>(nerve: &Nerve<G>) -> TwistingFunction<G> {
    let labels = if nerve.set.num_dims() > 1 {
        nerve.nonidentity.clone()
    } else {
        Vec::new()
    };
    TwistingFunction::new(nerve.set.clone(), nerve.group.clone(), labels)
        .expect("universal labels satisfy the cocycle")
}

/// The universal bundle `WΓ → W̄Γ` through `max_dim`.
pub fn w_truncated<G: Group>(
    group: &G,
    max_dim: usize,
    limits: &Limits,
) -> Result<(Nerve<G>, PrincipalBundleData), BundleError> {
    let nerve = wbar_truncated(group, max_dim, limits)?;
    let order = nerve.nonidentity.len() + 1;
    let cells: usize = nerve.set.total_cells() * order;
    if cells > limits.max_simplices {
        return Err(
            BudgetExceeded::new("total simplices", cells as u128, limits.max_simplices).into(),
        );
    }
    let mut bundle = tcp_build(&universal_twisting(&nerve))?;
    bundle.total = Arc::new(
        (*bundle.total)
            .clone()
            .with_name(format!("W({})", group.name())),
    );
    bundle.projection = SimplicialMap::new(
        bundle.total.clone(),
        nerve.set.clone(),
        bundle.projection.images().clone(),
    )?;
    Ok((nerve, bundle))
}

/// `x ↦ (λ(x_{01}), …, λ(x_{n-1,n}))` into a nerve built by the caller.
pub fn classifying_map_into<G: Group>(
    tau: &TwistingFunction<G>,
    nerve: &Nerve<G>,
) -> Result<SimplicialMap, BundleError> {
    if tau.group() != &nerve.group {
        return Err(BundleError::BadTwisting(
            "nerve is over a different group".into(),
        ));
    }
    let base = tau.base();
    if let Some(d) = base.dim().filter(|&d| d > nerve.max_dim) {
        return Err(BundleError::DimensionOverflow {
            dim: d,
            max_dim: nerve.max_dim,
        });
    }
    let images = (0..base.num_dims())
        .map(|d| {
            base.cells(d)
                .map(|c| nerve.word_of(&tau.label_tuple(&SimplexWord::cell(c))))
                .collect()
        })
        .collect();
    Ok(SimplicialMap::new(base.clone(), nerve.set.clone(), images)?)
}

/// Classifying map into the nerve through `max_dim`.
pub fn classifying_map<G: Group>(
    tau: &TwistingFunction<G>,
    max_dim: usize,
    limits: &Limits,
) -> Result<(Nerve<G>, SimplicialMap), BundleError> {
    if let Some(d) = tau.base().dim().filter(|&d| d > max_dim) {
        return Err(BundleError::DimensionOverflow { dim: d, max_dim });
    }
    let nerve = wbar_truncated(tau.group(), max_dim, limits)?;
    let f = classifying_map_into(tau, &nerve)?;
    Ok((nerve, f))
}

#[derive(Clone, Debug)]
pub struct UniversalReport {
    pub max_dim: usize,
    /// Reduced `H_i(E; Z)` for `0 ≤ i < max_dim`.
    pub reduced_homology: Vec<FGAbelianGroup>,
    pub kan: KanReport,
    pub universal_evidence: bool,
}

impl UniversalReport {
    pub fn verdict(&self) -> String {
        if self.universal_evidence {
            format!("universal-evidence up to {}", self.max_dim)
        } else {
            "not universal".into()
        }
    }
}

/// Reduced homology of the total below `max_dim` and horn filling through
/// `max_dim`.
pub fn universal_check(
    b: &PrincipalBundleData,
    max_dim: usize,
    limits: &Limits,
) -> Result<UniversalReport, BundleError> {
    let c = chain_complex_with::<num_bigint::BigInt>(&b.total, max_dim, true, limits)?;
    let h = homology(&c, Coeff::Z)?;
    let reduced_homology: Vec<FGAbelianGroup> =
        h.iter().take(max_dim).map(|g| g.group().clone()).collect();
    let kan = kan_report(&b.total, max_dim, limits)?;
    let universal_evidence =
        reduced_homology.iter().all(FGAbelianGroup::is_trivial) && kan.is_kan();
    Ok(UniversalReport {
        max_dim,
        reduced_homology,
        kan,
        universal_evidence,
    })
}
