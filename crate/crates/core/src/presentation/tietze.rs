use super::GroupPresentation;
use crate::rewriter::{solve_relation, FreeWord};

/// Repeatedly solves the shortest relator for its highest-index generator
/// occurring exactly once, substitutes everywhere, and drops the pair;
/// trivial and repeated relators are removed along the way.
pub fn tietze_simplify(p: &GroupPresentation) -> GroupPresentation {
    let mut p = prune(p.clone());
    loop {
        let mut order: Vec<usize> = (0..p.relators.len()).collect();
        order.sort_by_key(|&i| (p.relators[i].len(), i));
        let pick = order.into_iter().find_map(|i| {
            let r = &p.relators[i];
            (0..p.generators.len())
                .rev()
                .find(|&g| r.occurrences(g) == 1)
                .map(|g| (i, g))
        });
        let Some((i, g)) = pick else { return p };
        let rel = p.relators.remove(i);
        p.labels.remove(i);
        let sol = solve_relation(&rel, g).expect("generator occurs once");
        for r in &mut p.relators {
            *r = r
                .substitute(|h| (h == g).then_some(&sol))
                .cyclically_reduced();
        }
        p = prune(p.without_generator(g));
    }
}

fn prune(mut p: GroupPresentation) -> GroupPresentation {
    let mut relators: Vec<FreeWord> = Vec::new();
    let mut labels = Vec::new();
    for (r, l) in p.relators.iter().zip(&p.labels) {
        let r = r.cyclically_reduced();
        if r.is_identity() || relators.iter().any(|q| q.is_relator_equivalent(&r)) {
            continue;
        }
        relators.push(r);
        labels.push(l.clone());
    }
    p.relators = relators;
    p.labels = labels;
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::abelianize;
    use proptest::prelude::*;

    fn pres(gens: &[&str], rels: Vec<FreeWord>) -> GroupPresentation {
        GroupPresentation::new(gens.iter().map(|s| s.to_string()).collect(), rels).unwrap()
    }

    #[test]
    fn eliminates_b() {
        let p = pres(
            &["a", "b"],
            vec![
                FreeWord::from_syllables([(0, 1), (1, -1)]),
                FreeWord::gen_pow(0, 3),
            ],
        );
        let q = tietze_simplify(&p);
        assert_eq!(q.generators(), &["a".to_string()]);
        assert_eq!(q.relators(), &[FreeWord::gen_pow(0, 3)]);
    }

    #[test]
    fn fixpoint() {
        let p = pres(
            &["a", "b"],
            vec![
                FreeWord::gen_pow(0, 2),
                FreeWord::gen_pow(1, 2),
                FreeWord::from_syllables([(0, 1), (1, 1)]).pow(3),
            ],
        );
        assert_eq!(tietze_simplify(&p), p);
    }

    fn presentation() -> impl Strategy<Value = GroupPresentation> {
        let word =
            prop::collection::vec((0usize..4, -3i64..4), 0..6).prop_map(FreeWord::from_syllables);
        prop::collection::vec(word, 0..5).prop_map(|rels| pres(&["a", "b", "c", "d"], rels))
    }

    proptest! {
        #[test]
        fn preserves_abelianization(p in presentation()) {
            prop_assert_eq!(abelianize(&tietze_simplify(&p)), abelianize(&p));
        }
    }
}
