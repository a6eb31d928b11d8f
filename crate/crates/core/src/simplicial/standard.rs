//! Standard simplicial sets: simplices, their boundaries and horns, the
//! one-vertex circle, the cycle graphs `C_n`, and one-vertex torus and
//! Klein bottle.

use super::set::{FaceRef, Presentation, SimplicialSet};
use super::SimplicialError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    /// `Δ[p]`
    Delta { p: usize },
    /// `∂Δ[p]`
    Boundary { p: usize },
    /// `Λ_k[p]`
    Horn { p: usize, k: usize },
    /// `Δ[1]/∂Δ[1]`: one vertex `v`, one edge `a`.
    Circle,
    /// `C_n`: vertices `v0..`, edges `e_i: v_i -> v_{i+1 mod n}`.
    Cycle { n: usize },
    /// One vertex, edges `a b c`, triangles `U = (b, c, a)`, `L = (a, c, b)`.
    Torus,
    /// One vertex, edges `a b c`, triangles `U = (b, c, a)`, `L = (a, b, c)`.
    Klein,
}

pub fn standard(kind: StandardKind) -> Result<SimplicialSet, SimplicialError> {
    match kind {
        StandardKind::Delta { p } => Ok(faces_of_simplex(format!("Delta[{p}]"), p, |_| true)),
        StandardKind::Boundary { p } => {
            if p == 0 {
                return Err(SimplicialError::InvalidParameters(
                    "boundary of Δ[0] is empty; use p ≥ 1".into(),
                ));
            }
            Ok(faces_of_simplex(format!("dDelta[{p}]"), p, |s| {
                s.len() <= p
            }))
        }
        StandardKind::Horn { p, k } => {
            if p == 0 || k > p {
                return Err(SimplicialError::InvalidParameters(format!(
                    "horn Λ_{k}[{p}] needs 0 ≤ k ≤ p, p ≥ 1"
                )));
            }
            // all proper faces except the one opposite vertex k
            Ok(faces_of_simplex(format!("Horn[{p},{k}]"), p, |s| {
                s.len() <= p && !(s.len() == p && !s.contains(&k))
            }))
        }
        StandardKind::Circle => Ok(circle()),
        StandardKind::Cycle { n } => cycle(n),
        StandardKind::Torus => Ok(torus()),
        StandardKind::Klein => Ok(klein_bottle()),
    }
}

pub fn delta(p: usize) -> SimplicialSet {
    faces_of_simplex(format!("Delta[{p}]"), p, |_| true)
}

pub fn circle() -> SimplicialSet {
    let mut pres = Presentation::new("S1");
    pres.add_vertex("v");
    pres.add_simplex("a", vec![FaceRef::cell("v"), FaceRef::cell("v")]);
    pres.build().expect("circle is valid")
}

pub fn cycle(n: usize) -> Result<SimplicialSet, SimplicialError> {
    if n == 0 {
        return Err(SimplicialError::InvalidParameters(
            "cycle length must be ≥ 1".into(),
        ));
    }
    let mut pres = Presentation::new(format!("C{n}"));
    for i in 0..n {
        pres.add_vertex(format!("v{i}"));
    }
    for i in 0..n {
        let next = (i + 1) % n;
        pres.add_simplex(
            format!("e{i}"),
            vec![
                FaceRef::cell(format!("v{next}")),
                FaceRef::cell(format!("v{i}")),
            ],
        );
    }
    pres.build()
}

fn one_vertex_surface(name: &str, upper: [&str; 3], lower: [&str; 3]) -> SimplicialSet {
    let mut pres = Presentation::new(name);
    pres.add_vertex("v");
    for e in ["a", "b", "c"] {
        pres.add_simplex(e, vec![FaceRef::cell("v"), FaceRef::cell("v")]);
    }
    pres.add_simplex("U", upper.iter().map(|&e| FaceRef::cell(e)).collect());
    pres.add_simplex("L", lower.iter().map(|&e| FaceRef::cell(e)).collect());
    pres.build().expect("surface model is valid")
}

/// Square with sides `a` (bottom, top) and `b` (left, right), diagonal `c`.
pub fn torus() -> SimplicialSet {
    one_vertex_surface("T2", ["b", "c", "a"], ["a", "c", "b"])
}

/// The torus square with one pair of sides glued reversed.
pub fn klein_bottle() -> SimplicialSet {
    one_vertex_surface("Klein", ["b", "c", "a"], ["a", "b", "c"])
}

fn vertex_set_name(s: &[usize]) -> String {
    if s.iter().all(|&v| v < 10) {
        s.iter().map(|v| v.to_string()).collect()
    } else {
        s.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// The subcomplex of `Δ[p]` spanned by vertex subsets accepted by `keep`
/// (which must be closed under taking subsets).
fn faces_of_simplex(name: String, p: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    let mut pres = Presentation::new(name);
    for size in 1..=p + 1 {
        for s in super::set::combinations(p + 1, size) {
            if !keep(&s) {
                continue;
            }
            let id = vertex_set_name(&s);
            if size == 1 {
                pres.add_vertex(id);
                continue;
            }
            let faces = (0..size)
                .map(|i| {
                    let mut t = s.clone();
                    t.remove(i);
                    FaceRef::cell(vertex_set_name(&t))
                })
                .collect();
            pres.add_simplex(id, faces);
        }
    }
    pres.build().expect("standard simplex faces are valid")
}
