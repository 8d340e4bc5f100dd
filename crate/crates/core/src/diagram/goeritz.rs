use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::CheckerboardGraph;

/// Goeritz form indexed by the non-root vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoeritzMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl GoeritzMatrix {
    pub fn determinant(&self) -> BigInt {
        let m: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        bareiss_determinant(m)
    }

    /// `|det|`, the link determinant.
    pub fn link_determinant(&self) -> BigInt {
        self.determinant().abs()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// Off-diagonal `(i, j)` is minus the signed edge count between `i` and `j`;
/// the diagonal makes full rows (root column included) sum to zero. Loops
/// contribute nothing.
pub fn goeritz_matrix(g: &CheckerboardGraph) -> GoeritzMatrix {
    let root = g.root();
    let idx: Vec<Option<usize>> = {
        let mut k = 0;
        (0..g.vertex_count())
            .map(|v| {
                (v != root).then(|| {
                    k += 1;
                    k - 1
                })
            })
            .collect()
    };
    let n = g.vertex_count() - 1;
    let mut entries = vec![vec![0i64; n]; n];
    for e in g.edges() {
        if e.u == e.v {
            continue;
        }
        let s = e.sign as i64;
        if let Some(i) = idx[e.u] {
            entries[i][i] += s;
        }
        if let Some(j) = idx[e.v] {
            entries[j][j] += s;
        }
        if let (Some(i), Some(j)) = (idx[e.u], idx[e.v]) {
            entries[i][j] -= s;
            entries[j][i] -= s;
        }
    }
    let labels = (0..g.vertex_count())
        .filter(|&v| v != root)
        .map(|v| g.names()[v].clone())
        .collect();
    GoeritzMatrix { labels, entries }
}

/// Fraction-free Gaussian elimination; the empty matrix has determinant 1.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use crate::diagram::{closure_white_graph, cycle_graph_from_params, DecoratedCycleGraph};
    use proptest::prelude::*;

    fn det(s: &str) -> BigInt {
        goeritz_matrix(&closure_white_graph(&parse_braid(s).unwrap()).unwrap()).link_determinant()
    }

    /// Cofactor expansion, for cross-checking small matrices.
    fn laplace(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * laplace(&minor)
            })
            .sum()
    }

    #[test]
    fn torus_and_unknot() {
        assert_eq!(det("s1^3 s2"), BigInt::from(3));
        assert_eq!(det("s1 s2"), BigInt::from(1));
        assert_eq!(det("s1^5 s2^-1"), BigInt::from(5));
        // figure eight
        assert_eq!(det("s1 s2^-1 s1 s2^-1"), BigInt::from(5));
    }

    #[test]
    fn split_diagrams_have_zero_determinant() {
        assert_eq!(det("s2^4"), BigInt::zero());
        assert_eq!(det("s1^3"), BigInt::zero());
    }

    #[test]
    fn mirror_negates() {
        let w = parse_braid("h s1 s2^-2 s1 s2^-1").unwrap();
        let g = goeritz_matrix(&closure_white_graph(&w).unwrap());
        let gm = goeritz_matrix(&closure_white_graph(&w.expand_fulltwist().mirror()).unwrap());
        let neg: Vec<Vec<i64>> = g
            .entries
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        assert_eq!(gm.entries, neg);
        assert_eq!(g.link_determinant(), gm.link_determinant());
        assert!(g.is_symmetric());
    }

    #[test]
    fn cycle_graph_det_matches_closure() {
        let d = DecoratedCycleGraph::new(3, vec![1, 1, 1], vec![1, 1]).unwrap();
        let a = goeritz_matrix(&cycle_graph_from_params(&d)).link_determinant();
        let b = goeritz_matrix(&closure_white_graph(&d.braid_word()).unwrap()).link_determinant();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(m in prop::collection::vec(prop::collection::vec(-4i64..5, 5), 5), n in 0usize..6) {
            let m: Vec<Vec<i64>> = m.into_iter().take(n).map(|r| r.into_iter().take(n).collect()).collect();
            let big = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(bareiss_determinant(big), BigInt::from(laplace(&m)));
        }
    }
}
