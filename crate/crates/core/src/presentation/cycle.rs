use super::{GroupPresentation, PresentationError};
use crate::diagram::DecoratedCycleGraph;
use crate::rewriter::FreeWord;

#[derive(Clone, Copy)]
enum V {
    X(u64),
    Y(u64),
    Z,
}

/// `(u^-1 v)^e`
fn w(u: usize, v: usize, e: i64) -> FreeWord {
    FreeWord::gen(u).inverse().mul(&FreeWord::gen(v)).pow(e)
}

fn build(
    d: &DecoratedCycleGraph,
    generators: Vec<String>,
    idx: impl Fn(V) -> usize,
    extra: Vec<(String, FreeWord)>,
) -> Result<GroupPresentation, PresentationError> {
    let n = d.n();
    if n == 0 {
        return Err(PresentationError::DegenerateShape);
    }
    let m = d.m();
    let cn = d.cn();
    let (x, y) = (|i| idx(V::X(i)), |i| idx(V::Y(i)));
    let mut rels: Vec<(String, FreeWord)> = Vec::new();
    for i in 1..m {
        let r = w(x(i + 1), x(i), -1).mul(&w(x(i - 1), x(i), -1));
        rels.push((format!("r(x{i})"), r));
    }
    let y0 = y(0);
    rels.push((
        "r(y0)".into(),
        FreeWord::product([
            &w(x(1), y0, -1),
            &FreeWord::gen_pow(y0, d.a()[0] as i64),
            &w(y(1), y0, 1),
        ]),
    ));
    for i in 1..cn {
        let yi = y(i);
        let r = match d.marked(i) {
            Some(k) => FreeWord::product([
                &w(y(i - 1), yi, 1),
                &FreeWord::gen_pow(yi, d.a()[k] as i64),
                &w(y(i + 1), yi, 1),
            ]),
            None => w(y(i + 1), yi, 1).mul(&w(y(i - 1), yi, 1)),
        };
        rels.push((format!("r(y{i})"), r));
    }
    let ycn = y(cn);
    rels.push((
        format!("r(y{cn})"),
        FreeWord::product([
            &w(y(cn - 1), ycn, 1),
            &FreeWord::gen_pow(ycn, d.a()[n] as i64),
            &w(x(m - 1), ycn, -1),
        ]),
    ));
    let z = idx(V::Z);
    rels.push(("z".into(), FreeWord::gen(z)));
    let mut rz = FreeWord::identity();
    for k in (0..=n).rev() {
        rz.extend(&w(y(d.c(k)), z, d.a()[k] as i64));
    }
    rels.push(("r(z)".into(), rz));
    rels.extend(extra);
    let (labels, relators) = rels.into_iter().unzip();
    GroupPresentation::with_labels(generators, relators, labels)
}

/// The cycle-form relators on `x1..x_{m-1}, y0..y_cn, z`, with `x0` read as
/// `y0` and `x_m` as `y_cn` (so for `m = 1`, `x1` is `y_cn` and `x0` is `y0`).
pub fn cycle_presentation(d: &DecoratedCycleGraph) -> Result<GroupPresentation, PresentationError> {
    let (m, cn) = (d.m(), d.cn());
    let mut gens: Vec<String> = (1..m).map(|i| format!("x{i}")).collect();
    gens.extend((0..=cn).map(|i| format!("y{i}")));
    gens.push("z".into());
    let xs = (m - 1) as usize;
    let idx = move |v: V| match v {
        V::X(0) => xs,
        V::X(i) if i == m => xs + cn as usize,
        V::X(i) => i as usize - 1,
        V::Y(i) => xs + i as usize,
        V::Z => xs + cn as usize + 1,
    };
    build(d, gens, idx, Vec::new())
}

/// Same relators over separate generators `x0..x_m, y0..y_cn, z`, plus the
/// identifications `alias(x0) = x0 y0^-1` and `alias(xm) = x_m y_cn^-1`.
pub fn cycle_presentation_unaliased(
    d: &DecoratedCycleGraph,
) -> Result<GroupPresentation, PresentationError> {
    let (m, cn) = (d.m(), d.cn());
    let mut gens: Vec<String> = (0..=m).map(|i| format!("x{i}")).collect();
    gens.extend((0..=cn).map(|i| format!("y{i}")));
    gens.push("z".into());
    let xs = (m + 1) as usize;
    let idx = move |v: V| match v {
        V::X(i) => i as usize,
        V::Y(i) => xs + i as usize,
        V::Z => xs + cn as usize + 1,
    };
    let alias = vec![
        (
            "alias(x0)".to_string(),
            FreeWord::gen(idx(V::X(0))).mul(&FreeWord::gen(idx(V::Y(0))).inverse()),
        ),
        (
            "alias(xm)".to_string(),
            FreeWord::gen(idx(V::X(m))).mul(&FreeWord::gen(idx(V::Y(cn))).inverse()),
        ),
    ];
    build(d, gens, idx, alias)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{cycle_graph_from_params, goeritz_matrix};
    use crate::presentation::{abelianize, greene_presentation};
    use proptest::prelude::*;

    fn dcg(m: u64, a: &[u64], b: &[u64]) -> DecoratedCycleGraph {
        DecoratedCycleGraph::new(m, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn small_case_by_hand() {
        let p = cycle_presentation(&dcg(1, &[2, 2], &[1])).unwrap();
        assert_eq!(p.generators(), &["y0", "y1", "z"].map(String::from)[..]);
        let g = |s: &str| p.generator_index(s).unwrap();
        let (y0, y1) = (g("y0"), g("y1"));
        // r(y0) = (y1^-1 y0)^-1 y0^2 (y1^-1 y0), cyclically reduced to y0^2
        assert!(p
            .relator("r(y0)")
            .unwrap()
            .is_relator_equivalent(&FreeWord::gen_pow(y0, 2)));
        // r(y1) = (y0^-1 y1) y1^2 (y0^-1 y1)^-1, likewise y1^2
        assert!(p
            .relator("r(y1)")
            .unwrap()
            .is_relator_equivalent(&FreeWord::gen_pow(y1, 2)));
        assert_eq!(p.relators().len(), 4);
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(
            cycle_presentation(&dcg(3, &[2], &[])),
            Err(PresentationError::DegenerateShape)
        );
    }

    #[test]
    fn generator_count() {
        let d = dcg(3, &[1, 1, 1], &[1, 1]);
        assert_eq!(
            cycle_presentation(&d).unwrap().generators().len() as u64,
            d.generator_count()
        );
        assert_eq!(d.generator_count(), 6);
    }

    fn params() -> impl Strategy<Value = DecoratedCycleGraph> {
        (1u64..6, 1usize..4).prop_flat_map(|(m, n)| {
            (
                Just(m),
                prop::collection::vec(1u64..4, n + 1),
                prop::collection::vec(1u64..4, n),
            )
                .prop_map(|(m, a, b)| DecoratedCycleGraph::new(m, a, b).unwrap())
        })
    }

    proptest! {
        #[test]
        fn matches_greene(d in params()) {
            let cyc = cycle_presentation(&d).unwrap().kill("z").unwrap();
            let gr = greene_presentation(&cycle_graph_from_params(&d)).kill("r").unwrap();
            prop_assert!(cyc.same_relators(&gr), "{}\n{}", cyc, gr);
        }

        #[test]
        fn order_matches_determinant(d in params()) {
            let inv = abelianize(&cycle_presentation(&d).unwrap());
            let det = goeritz_matrix(&cycle_graph_from_params(&d)).link_determinant();
            if det == num_bigint::BigInt::from(0) {
                prop_assert!(inv.free_rank > 0);
            } else {
                prop_assert_eq!(inv.order(), Some(det));
            }
        }

        #[test]
        fn unaliased_has_same_abelianization(d in params()) {
            let a = abelianize(&cycle_presentation(&d).unwrap());
            let b = abelianize(&cycle_presentation_unaliased(&d).unwrap());
            prop_assert_eq!(a, b);
        }
    }
}
