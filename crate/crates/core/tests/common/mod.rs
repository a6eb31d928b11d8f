#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use kanforge::bundles::{FiniteGroup, Group, TwistingFunction};
use kanforge::chains::Coeff;
use kanforge::charclass::{group_cocycle_check, GroupCochain};
use kanforge::simplicial::{
    circle, cycle, delta, klein_bottle, product, quotient_by_subcomplex, torus, Cell, FaceRef,
    Presentation, SimplexWord, SimplicialMap, SimplicialSet,
};
use kanforge::Limits;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn vertex_name(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).collect()
}

/// Closure of random faces on at most `n` vertices, every vertex included.
pub fn random_complex(rng: &mut impl Rng, n: usize, max_dim: usize) -> SimplicialSet {
    let mut faces: BTreeSet<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for _ in 0..rng.gen_range(1..=4) {
        let size = rng.gen_range(2..=(max_dim + 1).min(n));
        let mut verts: Vec<usize> = (0..n).collect();
        verts.shuffle(rng);
        let mut top: Vec<usize> = verts[..size].to_vec();
        top.sort();
        close(&top, &mut faces);
    }
    let mut p = Presentation::new("random");
    let mut by_dim: Vec<Vec<&Vec<usize>>> = Vec::new();
    for f in &faces {
        if by_dim.len() < f.len() {
            by_dim.resize(f.len(), Vec::new());
        }
        by_dim[f.len() - 1].push(f);
    }
    for (d, cells) in by_dim.iter().enumerate() {
        for f in cells {
            if d == 0 {
                p.add_vertex(vertex_name(f));
            } else {
                let fs = (0..=d)
                    .map(|i| {
                        let mut g = (*f).clone();
                        g.remove(i);
                        FaceRef::cell(vertex_name(&g))
                    })
                    .collect();
                p.add_simplex(vertex_name(f), fs);
            }
        }
    }
    p.build().expect("closure of faces is a simplicial complex")
}

fn close(s: &[usize], out: &mut BTreeSet<Vec<usize>>) {
    if !out.insert(s.to_vec()) || s.len() == 1 {
        return;
    }
    for i in 0..s.len() {
        let mut t = s.to_vec();
        t.remove(i);
        close(&t, out);
    }
}

/// Face-closed set generated by a few random cells.
pub fn random_subcomplex(rng: &mut impl Rng, k: &SimplicialSet) -> BTreeSet<Cell> {
    let all: Vec<Cell> = k.all_cells().collect();
    let mut out = BTreeSet::new();
    for _ in 0..rng.gen_range(1..=2) {
        let c = *all.choose(rng).unwrap();
        close_cell(k, c, &mut out);
    }
    out
}

fn close_cell(k: &SimplicialSet, c: Cell, out: &mut BTreeSet<Cell>) {
    if out.insert(c) {
        for f in k.cell_faces(c) {
            close_cell(k, f.base(), out);
        }
    }
}

/// A small finite simplicial set drawn from several families: random
/// complexes, their quotients, standard surfaces and small products.
pub fn random_set(rng: &mut impl Rng) -> Arc<SimplicialSet> {
    match rng.gen_range(0..6) {
        0 | 1 => {
            let n = rng.gen_range(2..=5);
            Arc::new(random_complex(rng, n, 3))
        }
        2 => {
            let n = rng.gen_range(3..=5);
            let k = Arc::new(random_complex(rng, n, 2));
            let a = random_subcomplex(rng, &k);
            quotient_by_subcomplex(&k, &a).unwrap().0
        }
        3 => Arc::new(if rng.gen_bool(0.5) {
            torus()
        } else {
            klein_bottle()
        }),
        4 => {
            let pick = |r: &mut dyn rand::RngCore| match r.gen_range(0..3) {
                0 => circle(),
                1 => delta(1),
                _ => cycle(2).unwrap(),
            };
            let a = Arc::new(pick(rng));
            let b = Arc::new(pick(rng));
            product(&a, &b, &Limits::default()).unwrap().set
        }
        _ => Arc::new(cycle(rng.gen_range(1..=4)).unwrap()),
    }
}

/// `C_m -> C_n` wrapping `m / n` times (`n` divides `m`); `n = 0` targets the circle.
pub fn wrap(m: usize, n: usize) -> SimplicialMap {
    let src = Arc::new(cycle(m).unwrap());
    let (tgt, v, e): (
        Arc<SimplicialSet>,
        Box<dyn Fn(usize) -> String>,
        Box<dyn Fn(usize) -> String>,
    ) = if n == 0 {
        (
            Arc::new(circle()),
            Box::new(|_| "v".into()),
            Box::new(|_| "a".into()),
        )
    } else {
        (
            Arc::new(cycle(n).unwrap()),
            Box::new(move |i| format!("v{}", i % n)),
            Box::new(move |i| format!("e{}", i % n)),
        )
    };
    let mut pairs: Vec<(String, String, Vec<usize>)> = Vec::new();
    for i in 0..m {
        pairs.push((format!("v{i}"), v(i), vec![]));
        pairs.push((format!("e{i}"), e(i), vec![]));
    }
    let refs: Vec<(&str, &str, Vec<usize>)> = pairs
        .iter()
        .map(|(a, b, d)| (a.as_str(), b.as_str(), d.clone()))
        .collect();
    SimplicialMap::from_names(src, tgt, &refs).unwrap()
}

pub fn small_groups() -> Vec<FiniteGroup> {
    let c2 = FiniteGroup::cyclic(2);
    let c3 = FiniteGroup::cyclic(3);
    vec![
        c2.clone(),
        c3.clone(),
        FiniteGroup::cyclic(4),
        FiniteGroup::cyclic(5),
        FiniteGroup::cyclic(6),
        c2.direct_product(&c2),
        c2.direct_product(&c3),
        FiniteGroup::dihedral(3),
    ]
}

/// All degree-1 cocycles `Γ -> Z/m` (homomorphisms), by exhaustion.
pub fn degree_one_cocycles(g: &FiniteGroup, m: u64) -> Vec<GroupCochain<FiniteGroup>> {
    let n = g.size();
    let mut out = Vec::new();
    let total = (m as usize).pow(n as u32 - 1);
    for code in 0..total {
        let mut vals = vec![0i64; n];
        let mut c = code;
        for v in vals.iter_mut().skip(1) {
            *v = (c % m as usize) as i64;
            c /= m as usize;
        }
        let entries: Vec<(Vec<usize>, i64)> = (1..n).map(|x| (vec![x], vals[x])).collect();
        let cochain = GroupCochain::from_table(g.clone(), 1, Coeff::Mod(m), entries);
        if group_cocycle_check(&cochain).unwrap() {
            out.push(cochain);
        }
    }
    out
}

/// A degree-2 cocycle: a multiple of the carry cocycle on cyclic groups,
/// shifted by the coboundary of a random 1-cochain.
pub fn random_degree_two(rng: &mut impl Rng, g: &FiniteGroup, m: u64) -> GroupCochain<FiniteGroup> {
    let n = g.size();
    let cyclic = is_cyclic_standard(g);
    let k = rng.gen_range(0..m as i64);
    let base = if cyclic {
        GroupCochain::from_rule(g.clone(), 2, Coeff::Mod(m), move |t: &[usize]| {
            k * i64::from(t[0] + t[1] >= n)
        })
    } else {
        GroupCochain::zero(g.clone(), 2, Coeff::Mod(m))
    };
    let entries: Vec<(Vec<usize>, i64)> = (1..n)
        .map(|x| (vec![x], rng.gen_range(0..m as i64)))
        .collect();
    let b = GroupCochain::from_table(g.clone(), 1, Coeff::Mod(m), entries);
    base.add_coboundary(&b).unwrap()
}

/// Elements `0..n` multiply as integers mod `n`.
fn is_cyclic_standard(g: &FiniteGroup) -> bool {
    let n = g.size();
    (0..n).all(|a| (0..n).all(|b| g.table()[a][b] == (a + b) % n))
}

fn random_elem(rng: &mut impl Rng, g: &FiniteGroup) -> usize {
    rng.gen_range(0..g.size())
}

/// A random map `f: K' -> K` and twisting on `K` with group `g`.
pub fn random_map_and_twisting(
    rng: &mut impl Rng,
    g: &FiniteGroup,
) -> (SimplicialMap, TwistingFunction<FiniteGroup>) {
    match rng.gen_range(0..5) {
        0 => {
            let f = wrap(rng.gen_range(1..=4), 0);
            let tau =
                TwistingFunction::new(f.target().clone(), g.clone(), vec![random_elem(rng, g)])
                    .unwrap();
            (f, tau)
        }
        1 => {
            let n = rng.gen_range(1..=3);
            let f = wrap(n * rng.gen_range(1..=3), n);
            let labels = (0..n).map(|_| random_elem(rng, g)).collect();
            let tau = TwistingFunction::new(f.target().clone(), g.clone(), labels).unwrap();
            (f, tau)
        }
        2 => {
            let s = Arc::new(circle());
            let p = product(&s, &s, &Limits::default()).unwrap();
            let f = if rng.gen_bool(0.5) { p.left } else { p.right };
            let tau = TwistingFunction::new(s, g.clone(), vec![random_elem(rng, g)]).unwrap();
            (f, tau)
        }
        _ => {
            let t = Arc::new(torus());
            let (a, b) = loop {
                let (a, b) = (random_elem(rng, g), random_elem(rng, g));
                if g.mul(&a, &b) == g.mul(&b, &a) {
                    break (a, b);
                }
            };
            let mut labels = vec![0; 3];
            labels[t.lookup("a").unwrap().index] = a;
            labels[t.lookup("b").unwrap().index] = b;
            labels[t.lookup("c").unwrap().index] = g.mul(&a, &b);
            let tau = TwistingFunction::new(t.clone(), g.clone(), labels).unwrap();
            let f = if rng.gen_bool(0.5) {
                SimplicialMap::identity(t)
            } else {
                let edge = *["a", "b", "c"].choose(rng).unwrap();
                SimplicialMap::from_names(
                    Arc::new(circle()),
                    t,
                    &[("v", "v", vec![]), ("a", edge, vec![])],
                )
                .unwrap()
            };
            (f, tau)
        }
    }
}

pub fn word(k: &SimplicialSet, name: &str) -> SimplexWord {
    SimplexWord::cell(k.lookup(name).unwrap_or_else(|| panic!("no cell {name}")))
}

/// The two end inclusions `K -> K × Δ[1]` and the prism operator between
/// them, `h(x) = Σ (-1)^i (s_i x, γ_i)` with `γ_i` the step after `i`.
pub struct Prism {
    pub product: kanforge::simplicial::Product,
    pub bottom: SimplicialMap,
    pub top: SimplicialMap,
    pub homotopy: Vec<kanforge::linalg::IntMatrix<i64>>,
}

pub fn prism(k: &Arc<SimplicialSet>) -> Prism {
    let interval = Arc::new(delta(1));
    let p = product(
        k,
        &interval,
        &Limits {
            max_dim: 8,
            ..Limits::default()
        },
    )
    .unwrap();
    let edge = interval.lookup("01").unwrap();
    let end = |name: &str| {
        let v = interval.lookup(name).unwrap();
        let images = (0..k.num_dims())
            .map(|d| {
                k.cells(d)
                    .map(|c| p.pair(&SimplexWord::cell(c), &SimplexWord::degenerate_vertex(v, d)))
                    .collect()
            })
            .collect();
        SimplicialMap::new(k.clone(), p.set.clone(), images).unwrap()
    };
    let (bottom, top) = (end("0"), end("1"));
    let rank = |d: usize| {
        if d < p.set.num_dims() {
            p.set.count(d)
        } else {
            0
        }
    };
    let mut homotopy = Vec::new();
    for n in 0..k.num_dims() {
        let mut h = kanforge::linalg::IntMatrix::zeros(rank(n + 1), k.count(n));
        for c in k.cells(n) {
            for i in 0..=n {
                let x = SimplexWord::cell(c).degenerate(i).unwrap();
                let gamma: Vec<usize> = (0..=n + 1).map(|j| usize::from(j > i)).collect();
                let y = SimplexWord::from_surjection(edge, &gamma);
                if let Some(z) = p.pair(&x, &y).as_cell() {
                    h[(z.index, c.index)] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        homotopy.push(h);
    }
    Prism {
        product: p,
        bottom,
        top,
        homotopy,
    }
}
