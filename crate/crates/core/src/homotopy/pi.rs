use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;

use super::HomotopyError;
use crate::linalg::{smith_normal_form, FGAbelianGroup, IntMatrix};
use crate::simplicial::{Cell, SimplexWord, SimplicialSet};

/// Connected components of the vertex graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component index of every vertex, numbered by first vertex.
    pub of_vertex: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn same(&self, a: Cell, b: Cell) -> bool {
        self.of_vertex[a.index] == self.of_vertex[b.index]
    }
}

pub fn pi0(k: &SimplicialSet) -> Components {
    let n = if k.num_dims() > 0 { k.count(0) } else { 0 };
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    if k.num_dims() > 1 {
        for e in k.cells(1) {
            let f = k.cell_faces(e);
            let (a, b) = (
                find(&mut parent, f[0].base().index),
                find(&mut parent, f[1].base().index),
            );
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut of_vertex = vec![0; n];
    let mut count = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        of_vertex[v] = label[r];
    }
    Components { of_vertex, count }
}

/// `gen^exp`; words are kept freely reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

pub type GroupWord = Vec<Letter>;

fn push_letter(w: &mut GroupWord, l: Letter) {
    if l.exp == 0 {
        return;
    }
    if let Some(last) = w.last_mut() {
        if last.gen == l.gen {
            last.exp += l.exp;
            if last.exp == 0 {
                w.pop();
            }
            return;
        }
    }
    w.push(l);
}

pub fn reduce_word(w: &[Letter]) -> GroupWord {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        push_letter(&mut out, l);
    }
    out
}

/// Free and cyclic reduction.
fn cyclic_reduce(w: &[Letter]) -> GroupWord {
    let mut w = reduce_word(w);
    while w.len() >= 2 && w[0].gen == w[w.len() - 1].gen {
        let last = w.pop().unwrap();
        w[0].exp += last.exp;
        if w[0].exp == 0 {
            w.remove(0);
        }
    }
    w
}

pub fn invert_word(w: &[Letter]) -> GroupWord {
    w.iter()
        .rev()
        .map(|l| Letter {
            gen: l.gen,
            exp: -l.exp,
        })
        .collect()
}

/// A finite presentation `<generators | relators>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<GroupWord>,
}

/// What [`GroupPresentation::recognize`] can identify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    /// Free of the given rank (rank 1 is `Z`).
    Free(usize),
    /// Finite cyclic of the given order (at least 2).
    Cyclic(u64),
    Unrecognized,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => write!(f, "1"),
            GroupKind::Free(1) => write!(f, "Z"),
            GroupKind::Free(n) => write!(f, "F{n}"),
            GroupKind::Cyclic(n) => write!(f, "Z/{n}"),
            GroupKind::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<GroupWord>) -> Result<Self, HomotopyError> {
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.gen >= generators.len()) {
                return Err(HomotopyError::BadPresentation(format!(
                    "relator uses undeclared generator {}",
                    l.gen
                )));
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    /// Parses relators like `x y X^-1 z^2`; names are whitespace separated and
    /// may carry an integer exponent.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, HomotopyError> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let mut rels = Vec::new();
        for r in relators {
            let mut w = Vec::new();
            for tok in r.split_whitespace() {
                let (name, exp) = match tok.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<i64>().map_err(|_| {
                            HomotopyError::BadPresentation(format!("bad exponent in {tok}"))
                        })?,
                    ),
                    None => (tok, 1),
                };
                let gen = gens.iter().position(|g| g == name).ok_or_else(|| {
                    HomotopyError::BadPresentation(format!("unknown generator {name}"))
                })?;
                push_letter(&mut w, Letter { gen, exp });
            }
            rels.push(w);
        }
        Self::new(gens, rels)
    }

    /// `U_3(Z)` on `x, y, z` with `z = [x, y]` central.
    pub fn heisenberg() -> Self {
        Self::parse(
            &["x", "y", "z"],
            &["x y x^-1 y^-1 z^-1", "x z x^-1 z^-1", "y z y^-1 z^-1"],
        )
        .expect("static presentation")
    }

    /// Elementary Tietze moves: drop trivial and repeated relators, and delete
    /// generators killed by a relator of the form `g^±1`.
    pub fn simplify(&self) -> GroupPresentation {
        let mut gens: Vec<Option<String>> = self.generators.iter().cloned().map(Some).collect();
        let mut rels: Vec<GroupWord> = self.relators.iter().map(|r| cyclic_reduce(r)).collect();
        loop {
            rels.retain(|r| !r.is_empty());
            let killed = rels
                .iter()
                .find(|r| r.len() == 1 && r[0].exp.abs() == 1)
                .map(|r| r[0].gen);
            let Some(g) = killed else { break };
            gens[g] = None;
            for r in &mut rels {
                let kept: Vec<Letter> = r.iter().copied().filter(|l| l.gen != g).collect();
                *r = cyclic_reduce(&kept);
            }
        }
        let mut unique: Vec<GroupWord> = Vec::new();
        for r in rels {
            let inv = cyclic_reduce(&invert_word(&r));
            if !unique.iter().any(|u| *u == r || *u == inv) {
                unique.push(r);
            }
        }
        let remap: Vec<Option<usize>> = {
            let mut next = 0;
            gens.iter()
                .map(|g| {
                    g.as_ref().map(|_| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let relators = unique
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|l| Letter {
                        gen: remap[l.gen].expect("surviving generator"),
                        exp: l.exp,
                    })
                    .collect()
            })
            .collect();
        GroupPresentation {
            generators: gens.into_iter().flatten().collect(),
            relators,
        }
    }

    /// Abelianization from the exponent-sum matrix.
    pub fn abelianization(&self) -> FGAbelianGroup {
        let n = self.generators.len();
        let mut m: IntMatrix<BigInt> = IntMatrix::zeros(self.relators.len(), n);
        for (i, r) in self.relators.iter().enumerate() {
            for l in r {
                m[(i, l.gen)] = m[(i, l.gen)].clone() + BigInt::from(l.exp);
            }
        }
        let s = smith_normal_form(&m);
        let mut factors = s.diagonal();
        factors.resize(n, BigInt::from(0));
        FGAbelianGroup::from_factors(&factors)
    }

    /// Identifies trivial, free and cyclic groups after simplification.
    pub fn recognize(&self) -> GroupKind {
        let p = self.simplify();
        match (p.generators.len(), p.relators.len()) {
            (0, _) => GroupKind::Trivial,
            (n, 0) => GroupKind::Free(n),
            (1, _) => {
                let g = p.relators.iter().fold(0u64, |acc, r| {
                    let e: i64 = r.iter().map(|l| l.exp).sum();
                    num_integer::gcd(acc, e.unsigned_abs())
                });
                match g {
                    0 => GroupKind::Free(1),
                    1 => GroupKind::Trivial,
                    n => GroupKind::Cyclic(n),
                }
            }
            _ => GroupKind::Unrecognized,
        }
    }

    pub fn word_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| match l.exp {
                1 => self.generators[l.gen].clone(),
                e => format!("{}^{e}", self.generators[l.gen]),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_string(r)).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

/// Edge-path presentation of `π_1(K, basepoint)`: one generator per
/// nondegenerate edge, spanning-tree edges trivialized, and
/// `(d_2 σ)(d_0 σ) = d_1 σ` for every nondegenerate 2-simplex.
pub fn pi1_presentation(
    k: &SimplicialSet,
    basepoint: Cell,
) -> Result<GroupPresentation, HomotopyError> {
    if basepoint.dim != 0 || k.num_dims() == 0 || basepoint.index >= k.count(0) {
        return Err(HomotopyError::BadBasepoint(format!(
            "{basepoint:?} is not a vertex"
        )));
    }
    let comps = pi0(k);
    if comps.count > 1 {
        return Err(HomotopyError::Disconnected(comps.count));
    }
    let nv = k.count(0);
    let ne = if k.num_dims() > 1 { k.count(1) } else { 0 };
    let generators: Vec<String> = (0..ne)
        .map(|i| k.cell_name(Cell::new(1, i)).to_string())
        .collect();
    // breadth-first tree; edges scanned in declaration order
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in 0..ne {
        let f = k.cell_faces(Cell::new(1, e));
        let (src, dst) = (f[1].base().index, f[0].base().index);
        incident[src].push((e, dst));
        incident[dst].push((e, src));
    }
    let mut seen = vec![false; nv];
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([basepoint.index]);
    seen[basepoint.index] = true;
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &incident[v] {
            if !seen[w] {
                seen[w] = true;
                tree.push(e);
                queue.push_back(w);
            }
        }
    }
    tree.sort_unstable();
    let mut relators: Vec<GroupWord> = tree
        .iter()
        .map(|&e| vec![Letter { gen: e, exp: 1 }])
        .collect();
    let letter = |w: &SimplexWord, exp: i64| w.as_cell().map(|c| Letter { gen: c.index, exp });
    if k.num_dims() > 2 {
        for s in k.cells(2) {
            let f = k.cell_faces(s);
            let w: Vec<Letter> = [letter(&f[2], 1), letter(&f[0], 1), letter(&f[1], -1)]
                .into_iter()
                .flatten()
                .collect();
            relators.push(reduce_word(&w));
        }
    }
    GroupPresentation::new(generators, relators)
}

pub fn abelianized_pi1(
    k: &SimplicialSet,
    basepoint: Cell,
) -> Result<FGAbelianGroup, HomotopyError> {
    Ok(pi1_presentation(k, basepoint)?.abelianization())
}
