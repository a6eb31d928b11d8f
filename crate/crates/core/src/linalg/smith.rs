use super::matrix::IntMatrix;
use crate::IntScalar;

/// `D = U · M · V` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries positive and forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub u: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
    pub v_inv: IntMatrix<T>,
    pub rank: usize,
}

impl<T: IntScalar> SmithForm<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<T> {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect()
    }

    /// Columns of `V` past the rank: a basis of the integer kernel.
    pub fn kernel_basis(&self) -> IntMatrix<T> {
        let cols: Vec<usize> = (self.rank..self.v.cols()).collect();
        self.v.select_columns(&cols)
    }

    /// Some integer `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let ub = self.u.mul_vec(b);
        let mut y = vec![T::zero(); self.v.cols()];
        for (i, c) in ub.iter().enumerate() {
            if i < self.rank {
                let (q, r) = c.div_rem(&self.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

struct Work<T> {
    d: IntMatrix<T>,
    u: IntMatrix<T>,
    u_inv: IntMatrix<T>,
    v: IntMatrix<T>,
    v_inv: IntMatrix<T>,
}

impl<T: IntScalar> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, target: usize, source: usize, c: &T) {
        self.d.add_row_multiple(target, source, c);
        self.u.add_row_multiple(target, source, c);
        self.u_inv.add_col_multiple(source, target, &-c.clone());
    }

    fn add_col(&mut self, target: usize, source: usize, c: &T) {
        self.d.add_col_multiple(target, source, c);
        self.v.add_col_multiple(target, source, c);
        self.v_inv.add_row_multiple(source, target, &-c.clone());
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero absolute value in the lower-right block, lowest
    /// (row, col) on ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let a = self.d[(i, j)].abs();
                if a.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    let one = a.is_one();
                    best = Some((i, j, a));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_normal_form<T: IntScalar>(m: &IntMatrix<T>) -> SmithForm<T> {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = w.pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if w.d[(i, t)].is_zero() {
                    continue;
                }
                let q = w.d[(i, t)].div_floor(&p);
                w.add_row(i, t, &-q);
                clean &= w.d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if w.d[(t, j)].is_zero() {
                    continue;
                }
                let q = w.d[(t, j)].div_floor(&p);
                w.add_col(j, t, &-q);
                clean &= w.d[(t, j)].is_zero();
            }
            if clean {
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !w.d[(i, j)].is_multiple_of(&p)));
                match bad {
                    None => break,
                    Some(i) => w.add_row(t, i, &T::one()),
                }
            } else if let Some((pi, pj)) = w.pivot(t) {
                // a remainder smaller than the pivot now sits in row or column t
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    SmithForm {
        u: w.u,
        u_inv: w.u_inv,
        d: w.d,
        v: w.v,
        v_inv: w.v_inv,
        rank: t,
    }
}
