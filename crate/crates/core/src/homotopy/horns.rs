use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use super::HomotopyError;
use crate::simplicial::{Cell, SimplexWord, SimplicialMap, SimplicialSet};
use crate::{BudgetExceeded, Limits};

/// A map `Λ_k[p] -> K`: the faces `i ≠ k` of a would-be `p`-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HornInstance {
    pub p: usize,
    pub k: usize,
    /// `faces[i]` for `i ≠ k`; `faces[k]` is `None`.
    pub faces: Vec<Option<SimplexWord>>,
}

impl HornInstance {
    pub fn new(p: usize, k: usize, faces: Vec<Option<SimplexWord>>) -> Result<Self, HomotopyError> {
        if p == 0 || k > p || faces.len() != p + 1 {
            return Err(HomotopyError::BadHorn(format!(
                "need p ≥ 1, k ≤ p and p+1 face slots (p={p}, k={k})"
            )));
        }
        for (i, f) in faces.iter().enumerate() {
            match f {
                None if i != k => return Err(HomotopyError::BadHorn(format!("face {i} missing"))),
                Some(_) if i == k => {
                    return Err(HomotopyError::BadHorn(format!("face {k} must be omitted")))
                }
                Some(w) if w.dim() + 1 != p => {
                    return Err(HomotopyError::BadHorn(format!(
                        "face {i} has dimension {}",
                        w.dim()
                    )))
                }
                _ => {}
            }
        }
        Ok(HornInstance { p, k, faces })
    }

    /// Horn with faces given in order, skipping `k`.
    pub fn from_faces(p: usize, k: usize, given: Vec<SimplexWord>) -> Result<Self, HomotopyError> {
        if given.len() != p {
            return Err(HomotopyError::BadHorn(format!(
                "a {p}-horn has {p} faces, got {}",
                given.len()
            )));
        }
        let mut it = given.into_iter();
        let faces = (0..=p)
            .map(|i| if i == k { None } else { it.next() })
            .collect();
        Self::new(p, k, faces)
    }

    pub fn face(&self, i: usize) -> Option<&SimplexWord> {
        self.faces[i].as_ref()
    }

    /// The horn identities `d_i(face_j) = d_{j-1}(face_i)` for `i < j`.
    pub fn is_compatible(&self, k: &SimplicialSet) -> bool {
        if self.p < 2 {
            return true;
        }
        for j in 0..=self.p {
            for i in 0..j {
                if let (Some(fi), Some(fj)) = (&self.faces[i], &self.faces[j]) {
                    if k.face(fj, i) != k.face(fi, j - 1) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `k`-th face a filler would have.
    pub fn missing_face_boundary(&self, k: &SimplicialSet) -> Vec<SimplexWord> {
        let kk = self.k;
        (0..self.p)
            .map(|i| {
                if i < kk {
                    k.face(self.faces[i].as_ref().unwrap(), kk - 1)
                } else {
                    k.face(self.faces[i + 1].as_ref().unwrap(), kk)
                }
            })
            .collect()
    }

    pub fn describe(&self, k: &SimplicialSet) -> String {
        let faces: Vec<String> = self
            .faces
            .iter()
            .flatten()
            .map(|w| k.word_name(w))
            .collect();
        format!("p={} k={} faces ({})", self.p, self.k, faces.join(", "))
    }
}

/// Whether degenerate faces are enumerated by default in dimension `p`.
pub fn default_include_degenerate(p: usize) -> bool {
    p <= 3
}

/// All compatible horns `Λ_k[p] -> K`, faces ranging over nondegenerate
/// `(p-1)`-simplices (and degenerate ones when asked). Ordered
/// lexicographically by faces.
pub fn enumerate_horns(
    k: &SimplicialSet,
    p: usize,
    kk: usize,
    include_degenerate: bool,
    limits: &Limits,
) -> Result<Vec<HornInstance>, HomotopyError> {
    if p == 0 || kk > p {
        return Err(HomotopyError::BadHorn(format!(
            "horn Λ_{kk}[{p}] needs 1 ≤ p and k ≤ p"
        )));
    }
    if p > limits.max_dim {
        return Err(BudgetExceeded::new("horn dimension", p as u128, limits.max_dim).into());
    }
    let mut cands: Vec<SimplexWord> = k.all_simplices(p - 1);
    if !include_degenerate {
        cands.retain(|w| !w.is_degenerate());
    }
    cands.sort();
    // faces of every candidate, used for the compatibility test
    let cand_faces: Vec<Vec<SimplexWord>> = if p >= 2 {
        cands
            .iter()
            .map(|w| (0..p).map(|i| k.face(w, i)).collect())
            .collect()
    } else {
        vec![Vec::new(); cands.len()]
    };
    // candidates keyed by a single face, to prune the first constraint
    let mut by_face: HashMap<(usize, &SimplexWord), Vec<usize>> = HashMap::new();
    if p >= 2 {
        for (c, fs) in cand_faces.iter().enumerate() {
            for (i, f) in fs.iter().enumerate() {
                by_face.entry((i, f)).or_default().push(c);
            }
        }
    }
    let slots: Vec<usize> = (0..=p).filter(|&i| i != kk).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(p);
    let all: Vec<usize> = (0..cands.len()).collect();
    let mut visited: u128 = 0;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize,
        slots: &[usize],
        cands: &[SimplexWord],
        cand_faces: &[Vec<SimplexWord>],
        by_face: &HashMap<(usize, &SimplexWord), Vec<usize>>,
        all: &[usize],
        chosen: &mut Vec<usize>,
        out: &mut Vec<HornInstance>,
        p: usize,
        kk: usize,
        visited: &mut u128,
        limit: usize,
    ) -> Result<(), HomotopyError> {
        if depth == slots.len() {
            let mut faces: Vec<Option<SimplexWord>> = vec![None; p + 1];
            for (s, &c) in slots.iter().zip(chosen.iter()) {
                faces[*s] = Some(cands[c].clone());
            }
            out.push(HornInstance { p, k: kk, faces });
            if out.len() > limit {
                return Err(BudgetExceeded::new("horn instances", out.len() as u128, limit).into());
            }
            return Ok(());
        }
        let j = slots[depth];
        // constraints against earlier slots i < j: d_i(face_j) = d_{j-1}(face_i)
        let required: Vec<(usize, &SimplexWord)> = slots[..depth]
            .iter()
            .zip(chosen.iter())
            .map(|(&i, &c)| (i, &cand_faces[c][j - 1]))
            .collect();
        let pool: &[usize] = match required.first() {
            Some(&(i, w)) => by_face.get(&(i, w)).map_or(&[], Vec::as_slice),
            None => all,
        };
        for &c in pool {
            *visited += 1;
            if required.iter().all(|&(i, w)| &cand_faces[c][i] == w) {
                chosen.push(c);
                rec(
                    depth + 1,
                    slots,
                    cands,
                    cand_faces,
                    by_face,
                    all,
                    chosen,
                    out,
                    p,
                    kk,
                    visited,
                    limit,
                )?;
                chosen.pop();
            }
        }
        Ok(())
    }

    rec(
        0,
        &slots,
        &cands,
        &cand_faces,
        &by_face,
        &all,
        &mut chosen,
        &mut out,
        p,
        kk,
        &mut visited,
        limits.max_horns,
    )?;
    Ok(out)
}

/// Face tuples (with slot `k` dropped) of every `p`-simplex, for each `k`.
struct FillerIndex {
    by_k: Vec<HashMap<Vec<SimplexWord>, SimplexWord>>,
}

impl FillerIndex {
    fn new(k: &SimplicialSet, p: usize) -> Self {
        let mut by_k: Vec<HashMap<Vec<SimplexWord>, SimplexWord>> = vec![HashMap::new(); p + 1];
        if p == 0 {
            return FillerIndex { by_k };
        }
        for z in k.all_simplices(p) {
            let faces: Vec<SimplexWord> = (0..=p).map(|i| k.face(&z, i)).collect();
            Self::insert(&mut by_k, &z, &faces);
        }
        FillerIndex { by_k }
    }

    fn insert(
        by_k: &mut [HashMap<Vec<SimplexWord>, SimplexWord>],
        z: &SimplexWord,
        faces: &[SimplexWord],
    ) {
        for (kk, map) in by_k.iter_mut().enumerate() {
            let key: Vec<SimplexWord> = faces
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != kk)
                .map(|(_, f)| f.clone())
                .collect();
            map.entry(key).or_insert_with(|| z.clone());
        }
    }

    fn lookup(&self, h: &HornInstance) -> Option<&SimplexWord> {
        let key: Vec<SimplexWord> = h.faces.iter().flatten().cloned().collect();
        self.by_k[h.k].get(&key)
    }
}

/// A `p`-simplex (degenerate ones included) with the horn's faces, if any.
/// The search is exhaustive over every `p`-simplex of `K`.
pub fn find_filler(k: &SimplicialSet, h: &HornInstance) -> Option<SimplexWord> {
    k.all_simplices(h.p)
        .into_iter()
        .find(|z| (0..=h.p).all(|i| i == h.k || h.faces[i].as_ref() == Some(&k.face(z, i))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanReport {
    pub max_dim: usize,
    pub checked: usize,
    pub unfilled: Vec<HornInstance>,
}

impl KanReport {
    pub fn is_kan(&self) -> bool {
        self.unfilled.is_empty()
    }

    pub fn contains(&self, h: &HornInstance) -> bool {
        self.unfilled.contains(h)
    }
}

/// Every horn with `1 ≤ p ≤ max_dim` that has no filler. Degenerate faces are
/// enumerated per [`default_include_degenerate`].
pub fn kan_report(
    k: &SimplicialSet,
    max_dim: usize,
    limits: &Limits,
) -> Result<KanReport, HomotopyError> {
    kan_report_range(k, 1, max_dim, limits)
}

fn kan_report_range(
    k: &SimplicialSet,
    from: usize,
    max_dim: usize,
    limits: &Limits,
) -> Result<KanReport, HomotopyError> {
    if max_dim > limits.max_dim {
        return Err(
            BudgetExceeded::new("kan check dimension", max_dim as u128, limits.max_dim).into(),
        );
    }
    let jobs: Vec<(usize, usize)> = (from.max(1)..=max_dim)
        .flat_map(|p| (0..=p).map(move |kk| (p, kk)))
        .collect();
    let indices: Vec<FillerIndex> = (0..=max_dim)
        .into_par_iter()
        .map(|p| FillerIndex::new(k, p))
        .collect();
    let results: Vec<Result<(usize, Vec<HornInstance>), HomotopyError>> = jobs
        .par_iter()
        .map(|&(p, kk)| {
            let horns = enumerate_horns(k, p, kk, default_include_degenerate(p), limits)?;
            let n = horns.len();
            Ok((
                n,
                horns
                    .into_iter()
                    .filter(|h| indices[p].lookup(h).is_none())
                    .collect(),
            ))
        })
        .collect();
    let mut checked = 0;
    let mut unfilled = Vec::new();
    for r in results {
        let (n, u) = r?;
        checked += n;
        if checked > limits.max_horns {
            return Err(
                BudgetExceeded::new("horn instances", checked as u128, limits.max_horns).into(),
            );
        }
        unfilled.extend(u);
    }
    Ok(KanReport {
        max_dim,
        checked,
        unfilled,
    })
}

/// Result of [`fibrant_approx_bounded`].
#[derive(Clone, Debug)]
pub struct FibrantApprox {
    pub set: Arc<SimplicialSet>,
    pub inclusion: SimplicialMap,
    /// Number of fillers attached in each stage.
    pub attached: Vec<usize>,
    /// Horns with `1 < p ≤ max_dim` still unfilled at the end.
    pub residual: Vec<HornInstance>,
}

/// Attaches a free filler (a new `p`-simplex and a new `k`-th face) for every
/// horn with `1 < p ≤ max_dim` unfilled at the start of a stage, reusing
/// fillers attached earlier in the same stage where they apply.
pub fn fibrant_approx_bounded(
    k: &Arc<SimplicialSet>,
    max_dim: usize,
    stages: usize,
    limits: &Limits,
) -> Result<FibrantApprox, HomotopyError> {
    if stages == 0 {
        return Err(HomotopyError::BadHorn("stages must be at least 1".into()));
    }
    let mut names: Vec<Vec<String>> = (0..k.num_dims())
        .map(|d| k.cells(d).map(|c| k.cell_name(c).to_string()).collect())
        .collect();
    let mut faces: Vec<Vec<Vec<SimplexWord>>> = (0..k.num_dims())
        .map(|d| k.cells(d).map(|c| k.cell_faces(c).to_vec()).collect())
        .collect();
    let mut used: HashSet<String> = names.iter().flatten().cloned().collect();
    let mut current: SimplicialSet = (**k).clone();
    let mut attached = Vec::new();
    for stage in 0..stages {
        let report = kan_report_range(&current, 2, max_dim, limits)?;
        let mut indices: Vec<FillerIndex> = (0..=max_dim)
            .map(|p| FillerIndex::new(&current, p))
            .collect();
        let mut horns = report.unfilled;
        horns.sort();
        let mut count = 0;
        for h in &horns {
            if indices[h.p].lookup(h).is_some() {
                continue;
            }
            let p = h.p;
            while names.len() <= p {
                names.push(Vec::new());
                faces.push(Vec::new());
            }
            let total: usize = names.iter().map(Vec::len).sum();
            if total + 2 > limits.max_simplices {
                return Err(BudgetExceeded::new(
                    "fibrant approximation simplices",
                    (total + 2) as u128,
                    limits.max_simplices,
                )
                .into());
            }
            let face_name = fresh(&mut used, &format!("h{stage}_{count}"));
            let fill_name = fresh(&mut used, &format!("H{stage}_{count}"));
            let y = Cell::new(p - 1, names[p - 1].len());
            names[p - 1].push(face_name);
            faces[p - 1].push(h.missing_face_boundary(&current));
            let z = Cell::new(p, names[p].len());
            let zf: Vec<SimplexWord> = (0..=p)
                .map(|i| {
                    if i == h.k {
                        SimplexWord::cell(y)
                    } else {
                        h.faces[i].clone().unwrap()
                    }
                })
                .collect();
            names[p].push(fill_name);
            faces[p].push(zf.clone());
            FillerIndex::insert(&mut indices[p].by_k, &SimplexWord::cell(z), &zf);
            count += 1;
        }
        attached.push(count);
        current = SimplicialSet::from_parts_unchecked(
            k.name().to_string() + "^",
            names.clone(),
            faces.clone(),
        );
        if count == 0 {
            break;
        }
    }
    let residual = kan_report_range(&current, 2, max_dim, limits)?.unfilled;
    let set = Arc::new(current);
    let images = (0..k.num_dims())
        .map(|d| k.cells(d).map(SimplexWord::cell).collect())
        .collect();
    let inclusion = SimplicialMap::new(k.clone(), set.clone(), images)?;
    Ok(FibrantApprox {
        set,
        inclusion,
        attached,
        residual,
    })
}

fn fresh(used: &mut HashSet<String>, base: &str) -> String {
    let mut name = base.to_string();
    while used.contains(&name) {
        name.push('\'');
    }
    used.insert(name.clone());
    name
}
