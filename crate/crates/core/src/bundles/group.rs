use std::fmt::Debug;
use std::hash::Hash;

use super::BundleError;

/// A discrete group. Finite groups list their elements; presented infinite
/// groups answer `None` from [`Group::elements`].
pub trait Group: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;
    fn name(&self) -> String;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    fn order(&self) -> Option<usize> {
        self.elements().map(|e| e.len())
    }

    fn product<'a>(&self, items: impl IntoIterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.identity(), |acc, x| self.mul(&acc, x))
    }
}

/// A finite group as a multiplication table on `0..n`, with 0 the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Checks closure, identity, inverses and associativity.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        names: Vec<String>,
    ) -> Result<Self, BundleError> {
        let n = table.len();
        let bad = |m: String| Err(BundleError::BadGroup(m));
        if n == 0 {
            return bad("empty table".into());
        }
        if names.len() != n {
            return bad(format!("{} names for {n} elements", names.len()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&v| v >= n) {
                return bad(format!("row {i} is malformed"));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return bad("element 0 is not the identity".into());
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverses[a] = b,
                None => return bad(format!("element {} has no inverse", names[a])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        ));
                    }
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        if !names.iter().all(|s| seen.insert(s.clone())) {
            return bad("element names must be distinct".into());
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
            inverses,
            names,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n`; element `i` is `g^i` (named `t` when `n = 2`).
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let names = (0..n)
            .map(|i| match (n, i) {
                (_, 0) => "e".to_string(),
                (2, 1) => "t".to_string(),
                (_, 1) => "g".to_string(),
                (_, i) => format!("g^{i}"),
            })
            .collect();
        FiniteGroup::from_table(format!("Z/{n}"), table, names).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n`; element `i + n j` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral group needs n ≥ 1");
        let decode = |x: usize| (x % n, x / n);
        let mul = |a: usize, b: usize| {
            let (i, j) = decode(a);
            let (k, l) = decode(b);
            // r^i s^j r^k s^l = r^(i ± k) s^(j + l)
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            rot + n * ((j + l) % 2)
        };
        let table = (0..2 * n)
            .map(|a| (0..2 * n).map(|b| mul(a, b)).collect())
            .collect();
        let names = (0..2 * n)
            .map(|x| {
                let (i, j) = decode(x);
                match (i, j) {
                    (0, 0) => "e".to_string(),
                    (0, 1) => "s".to_string(),
                    (1, 0) => "r".to_string(),
                    (1, 1) => "rs".to_string(),
                    (i, 0) => format!("r^{i}"),
                    (i, _) => format!("r^{i}s"),
                }
            })
            .collect();
        FiniteGroup::from_table(format!("D{n}"), table, names).expect("dihedral table is a group")
    }

    /// Direct product; element `a + |G| b` is `(a, b)`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.table.len(), other.table.len());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.table[x % n][y % n] + n * other.table[x / n][y / n])
                    .collect()
            })
            .collect();
        let names = (0..n * m)
            .map(|x| format!("({},{})", self.names[x % n], other.names[x / n]))
            .collect();
        FiniteGroup::from_table(format!("{}x{}", self.name, other.name), table, names)
            .expect("product of groups")
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size()).all(|a| (0..self.size()).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

impl Group for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverses[*a]
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.size()).collect())
    }

    fn format(&self, a: &usize) -> String {
        self.names[*a].clone()
    }

    fn parse(&self, s: &str) -> Option<usize> {
        self.names.iter().position(|n| n == s.trim())
    }

    fn name(&self) -> String {
        self.name.clone()
    }
}

/// Finitely presented infinite groups with a normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentedGroup {
    /// `Z^m`, elements as coordinate vectors.
    Lattice(usize),
    /// `U_3(Z)`: `(a, b, c)` is the matrix `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
    Heisenberg,
}

impl PresentedGroup {
    pub fn rank(&self) -> usize {
        match self {
            PresentedGroup::Lattice(m) => *m,
            PresentedGroup::Heisenberg => 3,
        }
    }

    /// Standard generators (unit vectors; `x`, `y`, `z` for Heisenberg).
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect()
    }
}

impl Group for PresentedGroup {
    type Elem = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        match self {
            PresentedGroup::Lattice(_) => a.iter().zip(b).map(|(x, y)| x + y).collect(),
            PresentedGroup::Heisenberg => vec![a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]],
        }
    }

    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        match self {
            PresentedGroup::Lattice(_) => a.iter().map(|x| -x).collect(),
            PresentedGroup::Heisenberg => vec![-a[0], -a[1], a[0] * a[1] - a[2]],
        }
    }

    fn elements(&self) -> Option<Vec<Vec<i64>>> {
        match self {
            PresentedGroup::Lattice(0) => Some(vec![Vec::new()]),
            _ => None,
        }
    }

    fn format(&self, a: &Vec<i64>) -> String {
        let parts: Vec<String> = a.iter().map(i64::to_string).collect();
        format!("({})", parts.join(","))
    }

    fn parse(&self, s: &str) -> Option<Vec<i64>> {
        let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let v: Vec<i64> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.trim().parse().ok())
                .collect::<Option<_>>()?
        };
        (v.len() == self.rank()).then_some(v)
    }

    fn name(&self) -> String {
        match self {
            PresentedGroup::Lattice(m) => format!("Z^{m}"),
            PresentedGroup::Heisenberg => "U3(Z)".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_is_nonabelian() {
        let d3 = FiniteGroup::dihedral(3);
        assert_eq!(d3.size(), 6);
        assert!(!d3.is_abelian());
        assert!(FiniteGroup::cyclic(5).is_abelian());
    }

    #[test]
    fn rejects_non_group() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table("bad", t, vec!["e".into(), "x".into()]).is_err());
    }

    #[test]
    fn heisenberg_commutator_is_central_generator() {
        let h = PresentedGroup::Heisenberg;
        let g = h.generators();
        let (x, y, z) = (&g[0], &g[1], &g[2]);
        let comm = h.product([x, y, &h.inv(x), &h.inv(y)]);
        assert_eq!(&comm, z);
        let w = vec![3, -2, 5];
        assert_eq!(h.mul(&w, &h.inv(&w)), h.identity());
        assert_eq!(h.parse("(3,-2,5)"), Some(w));
    }
}
