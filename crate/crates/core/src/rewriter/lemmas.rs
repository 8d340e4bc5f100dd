//! Replayable proofs of the closed forms for cycle-form presentations.
//!
//! Every proof works over the unaliased cycle presentation (generators
//! `x0..x_m, y0..y_cn, z`) by solving relators for one generator at a time.

use serde::{Deserialize, Serialize};

use super::{
    from_syllable_list, solve_relation, to_syllable_list, EliminationStep, EliminationSystem,
    Eliminator,
};
use super::{FreeWord, RewriteError, SyllableList};
use crate::diagram::DecoratedCycleGraph;
use crate::presentation::{cycle_presentation_unaliased, GroupPresentation};

/// `target` was obtained by solving `relator = 1`; `before` must equal the solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub relator: FreeWord,
    pub target: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Equal,
    Inverse,
}

/// `after = reduce(before[substitutions])`. Words are over the transcript's
/// generators; JSON spells them as syllable lists of generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub rule: String,
    pub solved: Option<Solved>,
    pub before: FreeWord,
    pub substitutions: Vec<(usize, FreeWord)>,
    pub after: FreeWord,
    /// `after` agrees with an earlier step's `after`.
    pub agrees_with: Option<(usize, Agreement)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaTranscript {
    pub lemma: String,
    pub generators: Vec<String>,
    pub steps: Vec<ProofStep>,
}

fn substituted(
    before: &FreeWord,
    subs: &[(usize, FreeWord)],
    gens: usize,
) -> Result<FreeWord, RewriteError> {
    let mut table: Vec<Option<&FreeWord>> = vec![None; gens];
    for (g, w) in subs {
        *table
            .get_mut(*g)
            .ok_or(RewriteError::UnknownGenerator(format!("#{g}")))? = Some(w);
    }
    Ok(before.substitute(|g| table.get(g).copied().flatten()))
}

impl LemmaTranscript {
    fn new(lemma: &str, generators: Vec<String>) -> Self {
        LemmaTranscript {
            lemma: lemma.into(),
            generators,
            steps: Vec::new(),
        }
    }

    /// Records a step, failing if the substitution does not produce `after`.
    fn step(
        &mut self,
        rule: String,
        solved: Option<(&FreeWord, usize)>,
        before: &FreeWord,
        subs: &[(usize, FreeWord)],
        after: &FreeWord,
        agrees_with: Option<(usize, Agreement)>,
    ) -> Result<usize, RewriteError> {
        let names = &self.generators;
        let got = substituted(before, subs, names.len())?;
        if &got != after {
            return Err(RewriteError::VerificationFailed(format!(
                "{} ({rule}): {} reduces to {}, expected {}",
                self.lemma,
                before.display(names),
                got.display(names),
                after.display(names)
            )));
        }
        self.steps.push(ProofStep {
            rule,
            solved: solved.map(|(r, t)| Solved {
                relator: r.clone(),
                target: t,
            }),
            before: before.clone(),
            substitutions: subs.to_vec(),
            after: got,
            agrees_with,
        });
        let i = self.steps.len() - 1;
        self.check_agreement(i)?;
        Ok(i)
    }

    fn check_agreement(&self, i: usize) -> Result<(), RewriteError> {
        let Some((j, how)) = self.steps[i].agrees_with else {
            return Ok(());
        };
        if j >= i {
            return Err(RewriteError::VerificationFailed(format!(
                "step {i} refers forward to step {j}"
            )));
        }
        let (a, b) = (&self.steps[i].after, &self.steps[j].after);
        let ok = match how {
            Agreement::Equal => a == b,
            Agreement::Inverse => *a == b.inverse(),
        };
        if ok {
            Ok(())
        } else {
            Err(RewriteError::VerificationFailed(format!(
                "step {i} does not agree with step {j}"
            )))
        }
    }

    /// Re-derives every step from its recorded data alone.
    pub fn replay(&self) -> Result<(), RewriteError> {
        let n = self.generators.len();
        for (i, s) in self.steps.iter().enumerate() {
            if let Some(sol) = &s.solved {
                if sol.target >= n || solve_relation(&sol.relator, sol.target)? != s.before {
                    return Err(RewriteError::VerificationFailed(format!(
                        "step {i}: solution does not match relator"
                    )));
                }
            }
            if substituted(&s.before, &s.substitutions, n)? != s.after {
                return Err(RewriteError::VerificationFailed(format!(
                    "step {i} ({}) does not replay",
                    s.rule
                )));
            }
            self.check_agreement(i)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WireSolved {
    relator: SyllableList,
    target: String,
}

#[derive(Serialize, Deserialize)]
struct WireStep {
    rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    solved: Option<WireSolved>,
    before: SyllableList,
    substitutions: Vec<(String, SyllableList)>,
    after: SyllableList,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    agrees_with: Option<(usize, Agreement)>,
}

#[derive(Serialize, Deserialize)]
struct WireTranscript {
    lemma: String,
    generators: Vec<String>,
    steps: Vec<WireStep>,
}

impl Serialize for LemmaTranscript {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names = &self.generators;
        let sl = |w: &FreeWord| to_syllable_list(w, names);
        WireTranscript {
            lemma: self.lemma.clone(),
            generators: names.clone(),
            steps: self
                .steps
                .iter()
                .map(|p| WireStep {
                    rule: p.rule.clone(),
                    solved: p.solved.as_ref().map(|x| WireSolved {
                        relator: sl(&x.relator),
                        target: names[x.target].clone(),
                    }),
                    before: sl(&p.before),
                    substitutions: p
                        .substitutions
                        .iter()
                        .map(|(g, w)| (names[*g].clone(), sl(w)))
                        .collect(),
                    after: sl(&p.after),
                    agrees_with: p.agrees_with,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LemmaTranscript {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = WireTranscript::deserialize(d)?;
        let names = &w.generators;
        let word = |s: &SyllableList| from_syllable_list(s, names).map_err(D::Error::custom);
        let index = |n: &str| {
            names
                .iter()
                .position(|g| g == n)
                .ok_or_else(|| D::Error::custom(format!("unknown generator {n:?}")))
        };
        let mut steps = Vec::new();
        for p in &w.steps {
            let solved = match &p.solved {
                Some(x) => Some(Solved {
                    relator: word(&x.relator)?,
                    target: index(&x.target)?,
                }),
                None => None,
            };
            let mut substitutions = Vec::new();
            for (n, s) in &p.substitutions {
                substitutions.push((index(n)?, word(s)?));
            }
            steps.push(ProofStep {
                rule: p.rule.clone(),
                solved,
                before: word(&p.before)?,
                substitutions,
                after: word(&p.after)?,
                agrees_with: p.agrees_with,
            });
        }
        Ok(LemmaTranscript {
            lemma: w.lemma,
            generators: w.generators,
            steps,
        })
    }
}

fn g(i: usize) -> FreeWord {
    FreeWord::gen(i)
}

fn rel(p: &GroupPresentation, label: &str) -> usize {
    p.labels()
        .iter()
        .position(|l| l == label)
        .unwrap_or_else(|| panic!("relator {label} exists"))
}

fn step(target: String, relator: usize) -> EliminationStep {
    EliminationStep { target, relator }
}

/// Base `{y0, x1}`: `x0` from the alias, `x2..x_m` along the x-path, then
/// `y1..y_cn` forwards, and `z = 1`.
pub fn left_system(d: &DecoratedCycleGraph, p: &GroupPresentation) -> EliminationSystem {
    let (m, cn) = (d.m(), d.cn());
    let mut steps = vec![step("x0".into(), rel(p, "alias(x0)"))];
    for i in 1..m {
        steps.push(step(format!("x{}", i + 1), rel(p, &format!("r(x{i})"))));
    }
    for i in 0..cn {
        steps.push(step(format!("y{}", i + 1), rel(p, &format!("r(y{i})"))));
    }
    steps.push(step("z".into(), rel(p, "z")));
    EliminationSystem {
        name: "left".into(),
        base: vec!["y0".into(), "x1".into()],
        steps,
    }
}

/// Base `{y_cn, x_{m-1}}`: the mirror of [`left_system`].
pub fn right_system(d: &DecoratedCycleGraph, p: &GroupPresentation) -> EliminationSystem {
    let (m, cn) = (d.m(), d.cn());
    let mut steps = vec![step(format!("x{m}"), rel(p, "alias(xm)"))];
    for i in (1..m).rev() {
        steps.push(step(format!("x{}", i - 1), rel(p, &format!("r(x{i})"))));
    }
    for i in (1..=cn).rev() {
        steps.push(step(format!("y{}", i - 1), rel(p, &format!("r(y{i})"))));
    }
    steps.push(step("z".into(), rel(p, "z")));
    EliminationSystem {
        name: "right".into(),
        base: vec![format!("y{cn}"), format!("x{}", m - 1)],
        steps,
    }
}

/// Resolves only the two identifications `x0 = y0`, `x_m = y_cn`.
pub fn alias_system(d: &DecoratedCycleGraph, p: &GroupPresentation) -> EliminationSystem {
    let (m, cn) = (d.m(), d.cn());
    let mut base: Vec<String> = (1..m).map(|i| format!("x{i}")).collect();
    base.extend((0..=cn).map(|i| format!("y{i}")));
    base.push("z".into());
    EliminationSystem {
        name: "alias".into(),
        base,
        steps: vec![
            step("x0".into(), rel(p, "alias(x0)")),
            step(format!("x{m}"), rel(p, "alias(xm)")),
        ],
    }
}

/// `x_i = (x1 x0^-1)^(i-1) x1` for `0 <= i <= m`.
pub fn verify_lemma_x(m: u64) -> Result<LemmaTranscript, RewriteError> {
    if m == 0 {
        return Err(RewriteError::Precondition("m >= 1".into()));
    }
    let d = DecoratedCycleGraph::new(m, vec![1, 1], vec![1]).expect("valid parameters");
    let p = cycle_presentation_unaliased(&d).expect("n = 1");
    let x = |i: u64| p.generator_index(&format!("x{i}")).unwrap();
    let closed = |i: u64| {
        g(x(1))
            .mul(&g(x(0)).inverse())
            .pow(i as i64 - 1)
            .mul(&g(x(1)))
    };
    let mut t = LemmaTranscript::new("x", p.generators().to_vec());
    t.step(
        "closed form at i = 1".into(),
        None,
        &g(x(1)),
        &[],
        &closed(1),
        None,
    )?;
    for i in 1..m {
        let r = &p.relators()[rel(&p, &format!("r(x{i})"))];
        let before = solve_relation(r, x(i + 1))?;
        let subs = [(x(i), closed(i)), (x(i - 1), closed(i - 1))];
        t.step(
            format!("solve r(x{i}) for x{}", i + 1),
            Some((r, x(i + 1))),
            &before,
            &subs,
            &closed(i + 1),
            None,
        )?;
    }
    Ok(t)
}

/// Forward and backward closed forms along every segment `c_{k-1} .. c_k`.
pub fn verify_lemma_y(d: &DecoratedCycleGraph) -> Result<LemmaTranscript, RewriteError> {
    if d.n() == 0 {
        return Err(RewriteError::Precondition("n >= 1".into()));
    }
    lemma_y(d, &cycle_presentation_unaliased(d).expect("n >= 1"))
}

fn lemma_y(
    d: &DecoratedCycleGraph,
    p: &GroupPresentation,
) -> Result<LemmaTranscript, RewriteError> {
    let y = |i: u64| p.generator_index(&format!("y{i}")).unwrap();
    let mut t = LemmaTranscript::new("y", p.generators().to_vec());
    for k in 1..=d.n() {
        let (s, e) = (d.c(k - 1), d.c(k));
        let (u, v) = (y(s + 1), y(s));
        let fwd = |i: u64| {
            g(u).mul(&g(v).inverse())
                .pow(i as i64 - s as i64 - 1)
                .mul(&g(u))
        };
        for j in s + 1..e {
            let r = &p.relators()[rel(p, &format!("r(y{j})"))];
            let before = solve_relation(r, y(j + 1))?;
            let subs = [(y(j), fwd(j)), (y(j - 1), fwd(j - 1))];
            t.step(
                format!("segment {k} forward: solve r(y{j}) for y{}", j + 1),
                Some((r, y(j + 1))),
                &before,
                &subs,
                &fwd(j + 1),
                None,
            )?;
        }
        let (pp, q) = (y(e), y(e - 1));
        let bwd = |i: u64| {
            g(q).mul(&g(pp).inverse())
                .pow(e as i64 - 1 - i as i64)
                .mul(&g(q))
        };
        for j in (s + 1..e).rev() {
            let r = &p.relators()[rel(p, &format!("r(y{j})"))];
            let before = solve_relation(r, y(j - 1))?;
            let subs = [(y(j), bwd(j)), (y(j + 1), bwd(j + 1))];
            t.step(
                format!("segment {k} backward: solve r(y{j}) for y{}", j - 1),
                Some((r, y(j - 1))),
                &before,
                &subs,
                &bwd(j - 1),
                None,
            )?;
        }
        // the two backward shapes of y_{c_{k-1}} coincide
        let alt = g(pp).mul(&g(pp).inverse().mul(&g(q)).pow((e - s) as i64));
        let a = t.step(
            format!("segment {k}: backward form"),
            None,
            &bwd(s),
            &[],
            &bwd(s),
            None,
        )?;
        t.step(
            format!("segment {k}: alternative backward form"),
            None,
            &alt,
            &[],
            &bwd(s),
            Some((a, Agreement::Equal)),
        )?;
        // forward values fed into the backward form give y_{c_{k-1}} back
        t.step(
            format!("segment {k}: forward and backward agree"),
            None,
            &bwd(s),
            &[(pp, fwd(e)), (q, fwd(e - 1))],
            &g(v),
            None,
        )?;
    }
    Ok(t)
}

/// `y_{c_k}` as words in two base elements, with the proof of each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideWords {
    /// Names of the two base elements (`A`, `B` or `A'`, `B'`).
    pub base: [String; 2],
    /// What the base elements stand for, over the presentation generators.
    pub meaning: [SyllableList; 2],
    /// `y_{c_0}, ..., y_{c_n}` over generators `0` and `1` (the base elements).
    pub words: Vec<FreeWord>,
    pub transcript: LemmaTranscript,
}

impl SideWords {
    pub fn word(&self, k: usize) -> &FreeWord {
        &self.words[k]
    }
}

#[derive(Serialize, Deserialize)]
struct WireSide {
    base: [String; 2],
    meaning: [SyllableList; 2],
    words: Vec<SyllableList>,
    transcript: LemmaTranscript,
}

impl Serialize for SideWords {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireSide {
            base: self.base.clone(),
            meaning: self.meaning.clone(),
            words: self
                .words
                .iter()
                .map(|w| to_syllable_list(w, &self.base))
                .collect(),
            transcript: self.transcript.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SideWords {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = WireSide::deserialize(d)?;
        let words = w
            .words
            .iter()
            .map(|s| from_syllable_list(s, &w.base))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(SideWords {
            base: w.base,
            meaning: w.meaning,
            words,
            transcript: w.transcript,
        })
    }
}

/// Presentation and both elimination systems, shared across lemmas.
struct Context<'a> {
    d: &'a DecoratedCycleGraph,
    p: GroupPresentation,
    left: (EliminationSystem, Eliminator),
    right: (EliminationSystem, Eliminator),
}

impl<'a> Context<'a> {
    fn new(d: &'a DecoratedCycleGraph) -> Result<Self, RewriteError> {
        if d.n() == 0 {
            return Err(RewriteError::Precondition("n >= 1".into()));
        }
        let p = cycle_presentation_unaliased(d).expect("n >= 1");
        let ls = left_system(d, &p);
        let le = Eliminator::build(&ls, p.generators(), p.relators())?;
        let rs = right_system(d, &p);
        let re = Eliminator::build(&rs, p.generators(), p.relators())?;
        Ok(Context {
            d,
            p,
            left: (ls, le),
            right: (rs, re),
        })
    }

    fn side_words(&self, left: bool) -> Result<SideWords, RewriteError> {
        let (d, p) = (self.d, &self.p);
        let (m, n) = (d.m(), d.n());
        let (sys, elim) = if left {
            (&self.left.0, &self.left.1)
        } else {
            (&self.right.0, &self.right.1)
        };
        let gi = |s: &str| p.generator_index(s).unwrap();
        let base: [String; 2] = if left {
            ["A".into(), "B".into()]
        } else {
            ["A'".into(), "B'".into()]
        };
        let mut names = p.generators().to_vec();
        names.extend(base.iter().cloned());
        let (ia, ib) = (names.len() - 2, names.len() - 1);
        let (a_is, b_is) = if left {
            let y0 = gi("y0");
            (g(y0), g(gi("x1")).mul(&g(y0).pow(d.a()[0] as i64 - 1)))
        } else {
            let ycn = gi(&format!("y{}", d.cn()));
            (
                g(ycn),
                g(ycn)
                    .pow(d.a()[n] as i64 - 1)
                    .mul(&g(gi(&format!("x{}", m - 1)))),
            )
        };
        let mut t = LemmaTranscript::new(if left { "left" } else { "right" }, names);

        // recurrences over A, B
        let mut ys = vec![FreeWord::identity(); n + 1];
        if left {
            let mut dk = g(ib);
            ys[0] = g(ia);
            for k in 1..=n {
                ys[k] = dk.pow(d.b()[k - 1] as i64).mul(&ys[k - 1]);
                dk = dk.mul(&ys[k].pow(d.a()[k] as i64));
            }
        } else {
            let mut ek = g(ib);
            ys[n] = g(ia);
            for k in (1..=n).rev() {
                ys[k - 1] = ys[k].mul(&ek.pow(d.b()[k - 1] as i64));
                ek = ys[k - 1].pow(d.a()[k - 1] as i64).mul(&ek);
            }
        }
        let subs_ab = [(ia, a_is.clone()), (ib, b_is.clone())];
        for (k, yw) in ys.iter().enumerate() {
            let yk = gi(&format!("y{}", d.c(k)));
            let target = elim.normal_form(&g(yk));
            let i = t.step(
                format!("y{} over {}, {}", d.c(k), base[0], base[1]),
                None,
                yw,
                &subs_ab,
                &target,
                None,
            )?;
            let subs: Vec<(usize, FreeWord)> = elim
                .expansion(yk)
                .map(|w| vec![(yk, w.clone())])
                .unwrap_or_default();
            t.step(
                format!("y{} in system {}", d.c(k), sys.name),
                None,
                &g(yk),
                &subs,
                &target,
                Some((i, Agreement::Equal)),
            )?;
        }
        let gens = p.generators();
        Ok(SideWords {
            meaning: [to_syllable_list(&a_is, gens), to_syllable_list(&b_is, gens)],
            words: ys.iter().map(|w| w.relabel(|h| h - ia)).collect(),
            base,
            transcript: t,
        })
    }

    fn product_relation(&self, left: &SideWords) -> Result<LemmaTranscript, RewriteError> {
        let (d, p, elim) = (self.d, &self.p, &self.left.1);
        let mut t = LemmaTranscript::new("product", left.transcript.generators.clone());
        let ng = p.generators().len();
        let (ia, ib) = (ng, ng + 1);
        let prod_ab = FreeWord::product(
            (0..=d.n())
                .map(|k| left.word(k).relabel(|h| ng + h).pow(d.a()[k] as i64))
                .collect::<Vec<_>>()
                .iter(),
        );
        let meaning = |i: usize| {
            from_syllable_list(&left.meaning[i], p.generators()).expect("meaning over generators")
        };
        let subs_ab = [(ia, meaning(0)), (ib, meaning(1))];
        // A and B mean base words, so the substituted product is already normal
        let nf_prod = elim.normal_form(&substituted(&prod_ab, &subs_ab, ng + 2)?);
        let i = t.step(
            "product of the left words".into(),
            None,
            &prod_ab,
            &subs_ab,
            &nf_prod,
            None,
        )?;
        let rz = &p.relators()[rel(p, "r(z)")];
        let subs: Vec<(usize, FreeWord)> = (0..ng)
            .filter_map(|h| elim.expansion(h).map(|w| (h, w.clone())))
            .collect();
        t.step(
            "root relator in system left".into(),
            None,
            rz,
            &subs,
            &elim.normal_form(rz),
            Some((i, Agreement::Inverse)),
        )?;
        Ok(t)
    }
}

/// `y_{c_k}` as words in `A = y0` and `B = x1 y0^(a0-1)`.
pub fn verify_lemma_left(d: &DecoratedCycleGraph) -> Result<SideWords, RewriteError> {
    Context::new(d)?.side_words(true)
}

/// `y_{c_k}` as words in `A' = y_cn` and `B' = y_cn^(an-1) x_{m-1}`.
pub fn verify_lemma_right(d: &DecoratedCycleGraph) -> Result<SideWords, RewriteError> {
    Context::new(d)?.side_words(false)
}

/// `y0^a0 y_c1^a1 ... y_cn^an`, rewritten through the left words, is the
/// inverse of the root relator in the left system.
pub fn verify_product_relation(d: &DecoratedCycleGraph) -> Result<LemmaTranscript, RewriteError> {
    let c = Context::new(d)?;
    c.product_relation(&c.side_words(true)?)
}

/// All four cycle-form lemmas, sharing one presentation and elimination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleLemmas {
    pub y: LemmaTranscript,
    pub left: SideWords,
    pub right: SideWords,
    pub product: LemmaTranscript,
}

impl CycleLemmas {
    pub fn replay(&self) -> Result<(), RewriteError> {
        self.y.replay()?;
        self.left.transcript.replay()?;
        self.right.transcript.replay()?;
        self.product.replay()
    }
}

pub fn verify_cycle_lemmas(d: &DecoratedCycleGraph) -> Result<CycleLemmas, RewriteError> {
    let c = Context::new(d)?;
    let left = c.side_words(true)?;
    let product = c.product_relation(&left)?;
    Ok(CycleLemmas {
        y: lemma_y(d, &c.p)?,
        right: c.side_words(false)?,
        left,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dcg(m: u64, a: &[u64], b: &[u64]) -> DecoratedCycleGraph {
        DecoratedCycleGraph::new(m, a.to_vec(), b.to_vec()).unwrap()
    }

    fn last_after(t: &LemmaTranscript) -> String {
        let w = &t.steps.last().unwrap().after;
        w.display(&t.generators).to_string()
    }

    #[test]
    fn lemma_x_small() {
        let t = verify_lemma_x(2).unwrap();
        assert_eq!(last_after(&t), "x1 x0^-1 x1");
        let t = verify_lemma_x(1).unwrap();
        assert_eq!(last_after(&t), "x1");
        let t = verify_lemma_x(5).unwrap();
        assert_eq!(last_after(&t), "x1 x0^-1 x1 x0^-1 x1 x0^-1 x1 x0^-1 x1");
        t.replay().unwrap();
    }

    #[test]
    fn lemma_y_agrees() {
        for d in [
            dcg(1, &[1, 1], &[3]),
            dcg(2, &[1, 2, 1], &[1, 2]),
            dcg(1, &[2, 2], &[1]),
        ] {
            verify_lemma_y(&d).unwrap().replay().unwrap();
        }
    }

    #[test]
    fn left_and_right() {
        let d = dcg(1, &[2, 2], &[1]);
        let l = verify_lemma_left(&d).unwrap();
        assert_eq!(l.word(0), &FreeWord::gen(0));
        l.transcript.replay().unwrap();
        let d = dcg(3, &[1, 1, 1], &[1, 1]);
        let r = verify_lemma_right(&d).unwrap();
        assert_eq!(r.word(2), &FreeWord::gen(0));
        r.transcript.replay().unwrap();
    }

    #[test]
    fn bundle_matches_individual_lemmas() {
        let d = dcg(2, &[2, 1, 3], &[1, 2]);
        let all = verify_cycle_lemmas(&d).unwrap();
        assert_eq!(all.y, verify_lemma_y(&d).unwrap());
        assert_eq!(all.left, verify_lemma_left(&d).unwrap());
        assert_eq!(all.right, verify_lemma_right(&d).unwrap());
        assert_eq!(all.product, verify_product_relation(&d).unwrap());
        all.replay().unwrap();
        let back: CycleLemmas =
            serde_json::from_str(&serde_json::to_string(&all).unwrap()).unwrap();
        assert_eq!(back, all);
    }

    #[test]
    fn product_relation() {
        for d in [dcg(1, &[2, 2], &[1]), dcg(3, &[1, 1, 1], &[1, 1])] {
            verify_product_relation(&d).unwrap().replay().unwrap();
        }
        assert!(verify_product_relation(&dcg(2, &[1], &[])).is_err());
    }

    #[test]
    fn tampered_transcript_fails() {
        let mut t = verify_lemma_x(3).unwrap();
        let x1 = t.generators.iter().position(|g| g == "x1").unwrap();
        t.steps[1].after = FreeWord::gen_pow(x1, 2);
        assert!(t.replay().is_err());
    }

    #[test]
    fn transcript_json_round_trip() {
        let t = verify_lemma_y(&dcg(1, &[1, 1], &[2])).unwrap();
        let j = serde_json::to_string(&t).unwrap();
        assert!(j.contains(r#"["y1",1]"#));
        let back: LemmaTranscript = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
        back.replay().unwrap();
    }
}
