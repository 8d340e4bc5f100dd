use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::GroupPresentation;

/// `Z^free_rank + Z/d1 + ... + Z/dk` with `d1 | d2 | ... | dk`, all `d > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    #[serde(serialize_with = "big_list")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

fn big_list<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(u) => seq.serialize_element(&u)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl AbelianInvariants {
    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.torsion.len() + self.free_rank <= 1
    }
}

/// Abelian invariants from the exponent-sum matrix.
pub fn abelianize(p: &GroupPresentation) -> AbelianInvariants {
    let cols = p.generators().len();
    let m: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|r| (0..cols).map(|g| BigInt::from(r.exponent_sum(g))).collect())
        .collect();
    let diag = smith_diagonal(m, cols);
    let rank = diag.len();
    AbelianInvariants {
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
        free_rank: cols - rank,
    }
}

/// Nonzero Smith normal form diagonal entries (positive, each dividing the next).
#[allow(clippy::needless_range_loop)]
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = &a[i][t] / &a[t][t];
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = &a[t][j] / &a[t][t];
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and redo
        let p = a[t][t].clone();
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()))
        {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}
