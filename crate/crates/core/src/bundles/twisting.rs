use std::collections::BTreeSet;
use std::sync::Arc;

use super::group::Group;
use super::BundleError;
use crate::homotopy::pi0;
use crate::simplicial::{
    quotient_by_free_action, Cell, CellAction, Isomorphism, SimplexWord, SimplicialMap,
    SimplicialSet,
};

/// Edge labels in a discrete group satisfying
/// `label(d_1 σ) = label(d_2 σ) · label(d_0 σ)` on every 2-simplex.
/// Degenerate edges carry the identity.
#[derive(Clone, Debug)]
pub struct TwistingFunction<G: Group> {
    base: Arc<SimplicialSet>,
    group: G,
    labels: Vec<G::Elem>,
}

impl<G: Group> TwistingFunction<G> {
    /// `labels[i]` belongs to the `i`-th nondegenerate edge.
    pub fn new(
        base: Arc<SimplicialSet>,
        group: G,
        labels: Vec<G::Elem>,
    ) -> Result<Self, BundleError> {
        let edges = if base.num_dims() > 1 {
            base.count(1)
        } else {
            0
        };
        if labels.len() != edges {
            return Err(BundleError::BadTwisting(format!(
                "{} labels for {edges} edges",
                labels.len()
            )));
        }
        let t = TwistingFunction {
            base,
            group,
            labels,
        };
        t.check_cocycle()?;
        Ok(t)
    }

    pub fn from_names(
        base: Arc<SimplicialSet>,
        group: G,
        labels: &[(&str, &str)],
    ) -> Result<Self, BundleError> {
        let edges = if base.num_dims() > 1 {
            base.count(1)
        } else {
            0
        };
        let mut out = vec![group.identity(); edges];
        for (edge, label) in labels {
            let c = base
                .lookup(edge)
                .filter(|c| c.dim == 1)
                .ok_or_else(|| BundleError::BadTwisting(format!("{edge} is not an edge")))?;
            out[c.index] = group.parse(label).ok_or_else(|| {
                BundleError::BadTwisting(format!("{label} is not in {}", group.name()))
            })?;
        }
        Self::new(base, group, out)
    }

    pub fn trivial(base: Arc<SimplicialSet>, group: G) -> Self {
        let edges = if base.num_dims() > 1 {
            base.count(1)
        } else {
            0
        };
        let labels = vec![group.identity(); edges];
        TwistingFunction {
            base,
            group,
            labels,
        }
    }

    pub fn base(&self) -> &Arc<SimplicialSet> {
        &self.base
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn labels(&self) -> &[G::Elem] {
        &self.labels
    }

    /// Label of any 1-simplex word.
    pub fn label(&self, edge: &SimplexWord) -> G::Elem {
        match edge.as_cell() {
            Some(c) => self.labels[c.index].clone(),
            None => self.group.identity(),
        }
    }

    /// Label of the edge `(a, b)` of a simplex.
    pub fn edge_label(&self, x: &SimplexWord, a: usize, b: usize) -> G::Elem {
        self.label(&self.base.edge(x, a, b))
    }

    /// Consecutive edge labels `(λ(x_{01}), …, λ(x_{n-1,n}))`.
    pub fn label_tuple(&self, x: &SimplexWord) -> Vec<G::Elem> {
        (0..x.dim()).map(|i| self.edge_label(x, i, i + 1)).collect()
    }

    fn check_cocycle(&self) -> Result<(), BundleError> {
        if self.base.num_dims() <= 2 {
            return Ok(());
        }
        for s in self.base.cells(2) {
            let f = self.base.cell_faces(s);
            let lhs = self.label(&f[1]);
            let rhs = self.group.mul(&self.label(&f[2]), &self.label(&f[0]));
            if lhs != rhs {
                return Err(BundleError::CocycleViolation {
                    simplex: self.base.cell_name(s).to_string(),
                    detail: format!(
                        "label(d1) = {} but label(d2)·label(d0) = {}",
                        self.group.format(&lhs),
                        self.group.format(&rhs)
                    ),
                });
            }
        }
        Ok(())
    }
}

/// A principal bundle with discrete fiber: total space, base, projection and
/// a right action of a finite group (element `i` of the listing acts by
/// `action.perms[i]`).
#[derive(Clone, Debug)]
pub struct PrincipalBundleData {
    pub total: Arc<SimplicialSet>,
    pub base: Arc<SimplicialSet>,
    pub projection: SimplicialMap,
    pub action: CellAction,
    pub fiber: String,
}

impl PrincipalBundleData {
    pub fn fiber_order(&self) -> usize {
        self.action.order()
    }
}

/// Twisted cartesian product `K ×_τ Γ`. Cell `(x, g)` has index
/// `index(x) · |Γ| + position(g)`; `d_i(x, g) = (d_i x, g)` for `i < n` and
/// `d_n(x, g) = (d_n x, λ(x_{n-1,n}) · g)`; `Γ` acts by `(x, g)·h = (x, gh)`.
pub fn tcp_build<G: Group>(tau: &TwistingFunction<G>) -> Result<PrincipalBundleData, BundleError> {
    let group = &tau.group;
    let elems = group
        .elements()
        .ok_or_else(|| BundleError::Unsupported(format!("{} is infinite", group.name())))?;
    let m = elems.len();
    let pos = |g: &G::Elem| {
        elems
            .iter()
            .position(|e| e == g)
            .expect("closed under products")
    };
    let base = &tau.base;
    let mut names = Vec::with_capacity(base.num_dims());
    let mut faces = Vec::with_capacity(base.num_dims());
    for d in 0..base.num_dims() {
        let mut nm = Vec::with_capacity(base.count(d) * m);
        let mut fs = Vec::with_capacity(base.count(d) * m);
        for c in base.cells(d) {
            let x = SimplexWord::cell(c);
            for g in &elems {
                nm.push(format!("({},{})", base.cell_name(c), group.format(g)));
                if d == 0 {
                    fs.push(Vec::new());
                    continue;
                }
                let twist = group.mul(&tau.edge_label(&x, d - 1, d), g);
                let row: Vec<SimplexWord> = base
                    .cell_faces(c)
                    .iter()
                    .enumerate()
                    .map(|(i, w)| {
                        let h = if i < d { pos(g) } else { pos(&twist) };
                        SimplexWord::from_surjection(
                            Cell::new(w.base().dim, w.base().index * m + h),
                            &w.surjection(),
                        )
                    })
                    .collect();
                fs.push(row);
            }
        }
        names.push(nm);
        faces.push(fs);
    }
    let total = Arc::new(SimplicialSet::from_parts_unchecked(
        format!("{}x_t{}", base.name(), group.name()),
        names,
        faces,
    ));
    let images = (0..base.num_dims())
        .map(|d| {
            base.cells(d)
                .flat_map(|c| std::iter::repeat_n(SimplexWord::cell(c), m))
                .collect()
        })
        .collect();
    let projection = SimplicialMap::new(total.clone(), base.clone(), images)?;
    let perms = elems
        .iter()
        .map(|h| {
            (0..base.num_dims())
                .map(|d| {
                    (0..base.count(d) * m)
                        .map(|i| (i / m) * m + pos(&group.mul(&elems[i % m], h)))
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(PrincipalBundleData {
        total,
        base: base.clone(),
        projection,
        action: CellAction { perms },
        fiber: group.name(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

impl CheckReport {
    fn from(diagnostics: Vec<String>) -> Self {
        CheckReport {
            ok: diagnostics.is_empty(),
            diagnostics,
        }
    }
}

/// Free simplicial action, invariant projection, and `E/Γ ≅ K` through the
/// projection.
pub fn principal_check(b: &PrincipalBundleData) -> CheckReport {
    let mut diag = Vec::new();
    if let Err(e) = b.action.check_simplicial(&b.total) {
        diag.push(e.to_string());
        return CheckReport::from(diag);
    }
    if let Some((g, c)) = b.action.fixed_cell(&b.total) {
        diag.push(format!(
            "action is not free: element {g} fixes {}",
            b.total.cell_name(c)
        ));
        return CheckReport::from(diag);
    }
    for c in b.total.all_cells() {
        for g in 1..b.action.order() {
            if b.projection.image_of_cell(b.action.act(c, g)) != b.projection.image_of_cell(c) {
                diag.push(format!(
                    "projection is not invariant on {}",
                    b.total.cell_name(c)
                ));
            }
        }
    }
    if !diag.is_empty() {
        return CheckReport::from(diag);
    }
    let (orbits, q) = match quotient_by_free_action(&b.total, &b.action) {
        Ok(v) => v,
        Err(e) => {
            diag.push(e.to_string());
            return CheckReport::from(diag);
        }
    };
    // the map E/Γ -> K induced by the projection
    let mut images: Vec<Vec<Option<SimplexWord>>> = (0..orbits.num_dims())
        .map(|d| vec![None; orbits.count(d)])
        .collect();
    for c in b.total.all_cells() {
        let o = q.image_of_cell(c).base();
        images[o.dim][o.index] = Some(b.projection.image_of_cell(c).clone());
    }
    let images: Vec<Vec<SimplexWord>> = images
        .into_iter()
        .map(|r| r.into_iter().map(Option::unwrap).collect())
        .collect();
    let mut hit: BTreeSet<Cell> = BTreeSet::new();
    for row in &images {
        for w in row {
            match w.as_cell() {
                Some(c) if hit.insert(c) => {}
                Some(c) => diag.push(format!("two orbits map to {}", b.base.cell_name(c))),
                None => diag.push("an orbit maps to a degenerate simplex".into()),
            }
        }
    }
    if hit.len() != b.base.total_cells() {
        diag.push(format!(
            "orbit map misses {} base simplices",
            b.base.total_cells() - hit.len()
        ));
    }
    if diag.is_empty() {
        if let Err(e) = SimplicialMap::new(orbits, b.base.clone(), images) {
            diag.push(e.to_string());
        }
    }
    CheckReport::from(diag)
}

/// Every nondegenerate target simplex has exactly `m` nondegenerate
/// preimages and each face map between sheets is a bijection.
pub fn covering_check(f: &SimplicialMap, m: usize) -> CheckReport {
    let src = f.source();
    let dst = f.target();
    let mut diag = Vec::new();
    let mut sheets: Vec<Vec<Vec<Cell>>> = (0..dst.num_dims())
        .map(|d| vec![Vec::new(); dst.count(d)])
        .collect();
    for c in src.all_cells() {
        match f.image_of_cell(c).as_cell() {
            Some(y) => sheets[y.dim][y.index].push(c),
            None => diag.push(format!("{} maps to a degenerate simplex", src.cell_name(c))),
        }
    }
    for y in dst.all_cells() {
        let over = &sheets[y.dim][y.index];
        if over.len() != m {
            diag.push(format!(
                "{} has {} sheets, expected {m}",
                dst.cell_name(y),
                over.len()
            ));
            continue;
        }
        let nfaces = if y.dim == 0 { 0 } else { y.dim + 1 };
        for i in 0..nfaces {
            let fs: BTreeSet<&SimplexWord> = over.iter().map(|&x| &src.cell_faces(x)[i]).collect();
            if fs.len() != m {
                diag.push(format!("sheets over {} share face d_{i}", dst.cell_name(y)));
            }
        }
    }
    CheckReport::from(diag)
}

/// `f^* τ`: each source edge gets the label of its image.
pub fn pullback_twisting<G: Group>(
    f: &SimplicialMap,
    tau: &TwistingFunction<G>,
) -> Result<TwistingFunction<G>, BundleError> {
    if !Arc::ptr_eq(f.target(), &tau.base) && f.target().as_ref() != tau.base.as_ref() {
        return Err(BundleError::BadTwisting(
            "map target is not the twisting's base".into(),
        ));
    }
    let src = f.source();
    let labels = if src.num_dims() > 1 {
        src.cells(1)
            .map(|e| tau.label(f.image_of_cell(e)))
            .collect()
    } else {
        Vec::new()
    };
    TwistingFunction::new(src.clone(), tau.group.clone(), labels)
}

/// An isomorphism of bundles over the same base: cells of `a.total` to
/// cells of `b.total`, commuting with faces, projections and the actions.
/// Over each component of the base the choice at one vertex determines
/// everything, so at most `|Γ|` candidates per component are tried.
pub fn bundle_isomorphism(a: &PrincipalBundleData, b: &PrincipalBundleData) -> Option<Isomorphism> {
    let m = a.fiber_order();
    if a.base.as_ref() != b.base.as_ref()
        || m != b.fiber_order()
        || a.total.counts() != b.total.counts()
    {
        return None;
    }
    let base = &a.base;
    if base.num_dims() == 0 {
        return Some(Isomorphism { cells: Vec::new() });
    }
    let over = |p: &PrincipalBundleData| -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = (0..base.num_dims())
            .map(|d| vec![Vec::new(); base.count(d)])
            .collect();
        for c in p.total.all_cells() {
            if let Some(x) = p.projection.image_of_cell(c).as_cell() {
                out[x.dim][x.index].push(c.index);
            }
        }
        out
    };
    let (fa, fb) = (over(a), over(b));
    if fa.iter().chain(&fb).flatten().any(|s| s.len() != m) {
        return None;
    }
    // element carrying `from` to `to` within one free orbit
    let shift = |p: &PrincipalBundleData, from: Cell, to: Cell| {
        (0..m).find(|&g| p.action.act(from, g) == to)
    };
    let comps = pi0(base);
    let nv = base.count(0);
    let mut roots: Vec<usize> = Vec::new();
    for v in 0..nv {
        if !roots
            .iter()
            .any(|&r| comps.of_vertex[r] == comps.of_vertex[v])
        {
            roots.push(v);
        }
    }
    // edges out of each vertex: (edge, other end, vertex is the source)
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); nv];
    if base.num_dims() > 1 {
        for e in base.cells(1) {
            let f = base.cell_faces(e);
            let (s, t) = (f[1].base().index, f[0].base().index);
            adj[s].push((e.index, t, true));
            adj[t].push((e.index, s, false));
        }
    }
    let vertex_of = |p: &PrincipalBundleData, c: Cell| p.total.vertex(&SimplexWord::cell(c), 0);
    let mut choice = vec![0usize; roots.len()];
    loop {
        // image of the first vertex over each base vertex
        let mut img: Vec<Option<usize>> = vec![None; nv];
        let mut ok = true;
        for (r, &root) in roots.iter().enumerate() {
            img[root] = Some(fb[0][root][choice[r]]);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let (av, bv) = (Cell::new(0, fa[0][v][0]), Cell::new(0, img[v].unwrap()));
                for &(e, w, is_src) in &adj[v] {
                    let face = if is_src { 1 } else { 0 };
                    let other = 1 - face;
                    let ca = fa[1][e]
                        .iter()
                        .map(|&i| Cell::new(1, i))
                        .find(|&c| a.total.cell_faces(c)[face].base() == av)?;
                    let cb = fb[1][e]
                        .iter()
                        .map(|&i| Cell::new(1, i))
                        .find(|&c| b.total.cell_faces(c)[face].base() == bv)?;
                    let (ua, ub) = (
                        a.total.cell_faces(ca)[other].base(),
                        b.total.cell_faces(cb)[other].base(),
                    );
                    let g = shift(a, Cell::new(0, fa[0][w][0]), ua)?;
                    // the image of fa[0][w][0] is ub · g⁻¹
                    let target = (0..m)
                        .map(|h| b.action.act(ub, h))
                        .find(|&c| b.action.act(c, g) == ub)?;
                    match img[w] {
                        None => {
                            img[w] = Some(target.index);
                            queue.push_back(w);
                        }
                        Some(t) if t != target.index => ok = false,
                        Some(_) => {}
                    }
                }
            }
        }
        if ok {
            let candidate = extend_iso(a, b, &fa, &fb, &img, vertex_of, shift);
            if let Some(iso) = candidate {
                return Some(iso);
            }
        }
        // next combination of root choices
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < m {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            return None;
        }
    }
}

fn extend_iso(
    a: &PrincipalBundleData,
    b: &PrincipalBundleData,
    fa: &[Vec<Vec<usize>>],
    fb: &[Vec<Vec<usize>>],
    img: &[Option<usize>],
    vertex_of: impl Fn(&PrincipalBundleData, Cell) -> Cell,
    shift: impl Fn(&PrincipalBundleData, Cell, Cell) -> Option<usize>,
) -> Option<Isomorphism> {
    let send_vertex = |u: Cell| -> Option<Cell> {
        let x = a.projection.image_of_cell(u).base().index;
        let g = shift(a, Cell::new(0, fa[0][x][0]), u)?;
        Some(b.action.act(Cell::new(0, img[x]?), g))
    };
    let mut cells: Vec<Vec<usize>> = (0..a.total.num_dims())
        .map(|d| vec![usize::MAX; a.total.count(d)])
        .collect();
    for c in a.total.all_cells() {
        let x = a.projection.image_of_cell(c).base();
        let want = send_vertex(vertex_of(a, c))?;
        let t = fb[x.dim][x.index]
            .iter()
            .copied()
            .find(|&i| vertex_of(b, Cell::new(x.dim, i)) == want)?;
        cells[c.dim][c.index] = t;
    }
    let send = |c: Cell| Cell::new(c.dim, cells[c.dim][c.index]);
    for c in a.total.all_cells() {
        let faces_ok = a
            .total
            .cell_faces(c)
            .iter()
            .zip(b.total.cell_faces(send(c)))
            .all(|(f, g)| SimplexWord::from_surjection(send(f.base()), &f.surjection()) == *g);
        let equivariant =
            (0..a.fiber_order()).all(|h| send(a.action.act(c, h)) == b.action.act(send(c), h));
        if !faces_ok || !equivariant {
            return None;
        }
    }
    Some(Isomorphism { cells })
}

pub fn bundles_isomorphic(a: &PrincipalBundleData, b: &PrincipalBundleData) -> bool {
    bundle_isomorphism(a, b).is_some()
}

/// Subgroup of a finite `Γ` generated by the loop holonomies at `basepoint`:
/// the sheets over the basepoint reachable from `(basepoint, e)`.
pub fn holonomy_subgroup<G: Group>(
    tau: &TwistingFunction<G>,
    basepoint: Cell,
) -> Result<Vec<G::Elem>, BundleError> {
    let group = tau.group();
    if group.elements().is_none() {
        return Err(BundleError::Unsupported(format!(
            "{} is infinite",
            group.name()
        )));
    }
    let base = tau.base();
    let nv = if base.num_dims() > 0 {
        base.count(0)
    } else {
        0
    };
    if basepoint.dim != 0 || basepoint.index >= nv {
        return Err(BundleError::BadTwisting("basepoint is not a vertex".into()));
    }
    let edges: Vec<(usize, usize, G::Elem)> = if base.num_dims() > 1 {
        base.cells(1)
            .map(|e| {
                let f = base.cell_faces(e);
                (
                    f[1].base().index,
                    f[0].base().index,
                    tau.labels()[e.index].clone(),
                )
            })
            .collect()
    } else {
        Vec::new()
    };
    // p(v): the sheet over v joined to (basepoint, e)
    let mut p: Vec<Option<G::Elem>> = vec![None; nv];
    p[basepoint.index] = Some(group.identity());
    let mut queue = std::collections::VecDeque::from([basepoint.index]);
    while let Some(v) = queue.pop_front() {
        for (s, t, l) in &edges {
            let pv = p[v].clone().unwrap();
            let (w, value) = if *t == v {
                (*s, group.mul(l, &pv))
            } else if *s == v {
                (*t, group.mul(&group.inv(l), &pv))
            } else {
                continue;
            };
            if p[w].is_none() {
                p[w] = Some(value);
                queue.push_back(w);
            }
        }
    }
    let mut gens = BTreeSet::new();
    for (s, t, l) in &edges {
        if let (Some(ps), Some(pt)) = (&p[*s], &p[*t]) {
            gens.insert(group.product([&group.inv(ps), l, pt]));
        }
    }
    let mut sub = BTreeSet::from([group.identity()]);
    let mut frontier: Vec<G::Elem> = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = group.mul(&x, g);
            if sub.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    Ok(sub.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::super::group::FiniteGroup;
    use super::*;
    use crate::simplicial::{circle, copies, cycle, delta, isomorphic, product, SimplicialMap};
    use crate::Limits;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn twisted_circle_is_c2() {
        let s = Arc::new(circle());
        let tau = TwistingFunction::from_names(s, z2(), &[("a", "t")]).unwrap();
        let b = tcp_build(&tau).unwrap();
        assert_eq!(b.total.counts(), vec![2, 2]);
        assert!(isomorphic(&b.total, &cycle(2).unwrap()));
        assert!(principal_check(&b).ok);
        assert!(covering_check(&b.projection, 2).ok);
    }

    #[test]
    fn trivial_twisting_gives_copies() {
        let s = Arc::new(circle());
        let b = tcp_build(&TwistingFunction::trivial(s.clone(), z2())).unwrap();
        let (two, _, _) = copies(&s, 2);
        assert!(isomorphic(&b.total, &two));
    }

    #[test]
    fn torus_double_cover() {
        let s = Arc::new(circle());
        let t = product(&s, &s, &Limits::default()).unwrap().set;
        let edges: Vec<String> = t.cells(1).map(|c| t.cell_name(c).to_string()).collect();
        // edges: (s0v,a) = b-direction, (a,s0v) = a-direction, (a,a) diagonal
        let labels: Vec<usize> = edges
            .iter()
            .map(|e| usize::from(e.starts_with("(a,")))
            .collect();
        let tau = TwistingFunction::new(t.clone(), z2(), labels).unwrap();
        let b = tcp_build(&tau).unwrap();
        assert_eq!(b.total.counts(), vec![2, 6, 4]);
        assert!(principal_check(&b).ok);
    }

    #[test]
    fn cocycle_violation_is_named() {
        let d2 = Arc::new(delta(2));
        let err = TwistingFunction::from_names(d2, z2(), &[("01", "t")]).unwrap_err();
        assert!(
            matches!(err, BundleError::CocycleViolation { ref simplex, .. } if simplex == "012")
        );
    }

    #[test]
    fn trivial_action_is_not_free() {
        let s = Arc::new(circle());
        let id: Vec<Vec<usize>> = vec![vec![0], vec![0]];
        let b = PrincipalBundleData {
            total: s.clone(),
            base: s.clone(),
            projection: SimplicialMap::identity(s),
            action: CellAction {
                perms: vec![id.clone(), id],
            },
            fiber: "Z/2".into(),
        };
        let r = principal_check(&b);
        assert!(!r.ok);
        assert!(r.diagnostics[0].contains("not free"));
    }

    #[test]
    fn fold_map_is_trivial_bundle() {
        let s = Arc::new(circle());
        let (two, fold, action) = copies(&s, 2);
        let b = PrincipalBundleData {
            total: two,
            base: s,
            projection: fold.clone(),
            action,
            fiber: "Z/2".into(),
        };
        assert!(principal_check(&b).ok);
        assert!(covering_check(&fold, 2).ok);
    }

    #[test]
    fn collapse_is_not_a_covering() {
        let f = SimplicialMap::constant(Arc::new(delta(1)), Arc::new(delta(0)), Cell::new(0, 0));
        assert!(!covering_check(&f, 2).ok);
        assert!(!covering_check(&f, 1).ok);
    }

    #[test]
    fn pullback_along_identity() {
        let s = Arc::new(circle());
        let tau = TwistingFunction::from_names(s.clone(), z2(), &[("a", "t")]).unwrap();
        let p = pullback_twisting(&SimplicialMap::identity(s), &tau).unwrap();
        assert_eq!(p.labels(), tau.labels());
    }
}
