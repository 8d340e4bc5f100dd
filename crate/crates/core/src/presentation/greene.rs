use super::GroupPresentation;
use crate::diagram::CheckerboardGraph;
use crate::rewriter::FreeWord;

/// One generator per vertex. The relator at `i` multiplies
/// `(x_j^-1 x_i)^sign` over the edge ends at `i` in rotation order, where `j`
/// is the far end; loops contribute nothing. The root relator `x_r` comes last.
pub fn greene_presentation(g: &CheckerboardGraph) -> GroupPresentation {
    let mut relators = Vec::new();
    let mut labels = Vec::new();
    for v in 0..g.vertex_count() {
        let mut r = FreeWord::identity();
        for &d in g.rotation(v) {
            let j = g.dart_target(d);
            let w = FreeWord::gen(j).inverse().mul(&FreeWord::gen(v));
            r.extend(&w.pow(g.edges()[d.edge].sign as i64));
        }
        relators.push(r);
        labels.push(format!("r({})", g.names()[v]));
    }
    relators.push(FreeWord::gen(g.root()));
    labels.push(g.names()[g.root()].clone());
    GroupPresentation::with_labels(g.names().to_vec(), relators, labels)
        .expect("vertex generators are declared")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use crate::diagram::{closure_white_graph, Dart, Edge};
    use crate::presentation::abelianize;
    use num_bigint::BigInt;

    fn parallel(k: usize, sign: i8) -> CheckerboardGraph {
        let edges = (0..k).map(|_| Edge { u: 1, v: 0, sign }).collect();
        let rot_v = (0..k).map(|e| Dart { edge: e, end: 0 }).collect();
        let rot_r = (0..k).rev().map(|e| Dart { edge: e, end: 1 }).collect();
        CheckerboardGraph::new(vec!["r".into(), "v".into()], edges, vec![rot_r, rot_v], 0).unwrap()
    }

    #[test]
    fn parallel_edges_give_cyclic_group() {
        let p = greene_presentation(&parallel(4, 1)).kill("r").unwrap();
        assert_eq!(p.generators(), &["v".to_string()]);
        assert!(p
            .relators()
            .iter()
            .all(|r| r.is_relator_equivalent(&FreeWord::gen_pow(0, 4))));
    }

    #[test]
    fn balanced() {
        let g = closure_white_graph(&parse_braid("h s1 s2^-2 s1 s2^-1").unwrap()).unwrap();
        let p = greene_presentation(&g);
        assert_eq!(p.generators().len() + 1, p.relators().len());
    }

    #[test]
    fn lone_root_is_trivial() {
        let g = CheckerboardGraph::new(vec!["r".into()], vec![], vec![vec![]], 0).unwrap();
        let p = greene_presentation(&g);
        assert_eq!(abelianize(&p).order(), Some(BigInt::from(1)));
    }

    #[test]
    fn trefoil_abelianizes_to_z3() {
        let g = closure_white_graph(&parse_braid("s1^3 s2").unwrap()).unwrap();
        let inv = abelianize(&greene_presentation(&g));
        assert_eq!(inv.torsion, vec![BigInt::from(3)]);
        assert_eq!(inv.free_rank, 0);
    }
}
