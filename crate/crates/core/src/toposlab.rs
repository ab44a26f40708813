//! Finite `Set`-valued functors on colored categories: color preservation,
//! sharp transformations, objectwise limits, the transport to the quotient,
//! right Kan extension along the projection and the resulting
//! sheafification `π*π_*`.
//!
//! Functions are compared on labels: two functions are equal when their
//! domains, codomains and graphs agree as labeled sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{ColoredCategory, Verdict};
use crate::fincat::{FiniteCategory, Functor, FunctorError, NaturalTransformation, SetFunctor};
use crate::quotient::{pi_functor, quotient_category, Caps, FiniteQuotient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToposError {
    #[error("the quotient is undecided within the completion caps")]
    Undecided,
    #[error(
        "functor is not color-preserving: morphisms {f} and {g} share a color but act differently"
    )]
    NotColorPreserving { f: usize, g: usize },
    #[error("transported map sends a label outside the value at object {object}")]
    MissingLabel { object: usize },
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
}

type Graph<'a> = BTreeMap<&'a str, &'a str>;

fn function<'a>(
    c: &FiniteCategory,
    h: &'a SetFunctor,
    f: usize,
) -> (BTreeSet<&'a str>, BTreeSet<&'a str>, Graph<'a>) {
    let a = c.arrow(f);
    (h.label_set(a.src), h.label_set(a.tgt), h.graph(c, f))
}

/// True when same-colored morphisms go to equal functions; otherwise the
/// first offending pair `(f, g)` with `f` the least member of its color.
pub fn is_color_preserving(x: &ColoredCategory, h: &SetFunctor) -> Verdict<(usize, usize)> {
    let c = x.base();
    for color in 0..x.color_count() {
        let members = x.members(color);
        let first = function(c, h, members[0]);
        if let Some(&g) = members[1..].iter().find(|&&g| function(c, h, g) != first) {
            return Verdict::no((members[0], g));
        }
    }
    Verdict::yes()
}

/// `F(x) = F(y)` as labeled sets whenever `x` and `y` are in the same object class.
pub fn values_agree_on_classes(x: &ColoredCategory, h: &SetFunctor) -> Verdict<(usize, usize)> {
    let classes = x.object_classes();
    for class in &classes.classes {
        let first = h.label_set(class[0]);
        if let Some(&y) = class[1..].iter().find(|&&y| h.label_set(y) != first) {
            return Verdict::no((class[0], y));
        }
    }
    Verdict::yes()
}

/// Label-wise equality of two functors on `c`.
pub fn functors_equal(c: &FiniteCategory, a: &SetFunctor, b: &SetFunctor) -> bool {
    (0..c.object_count()).all(|x| a.label_set(x) == b.label_set(x))
        && (0..c.morphism_count()).all(|f| a.graph(c, f) == b.graph(c, f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpTransformation {
    pub transformation: NaturalTransformation,
    /// Components agree on objects whose identities share a color.
    pub locally_constant: bool,
    /// Components agree on each object class.
    pub sharp: bool,
}

fn components_agree(
    eta: &NaturalTransformation,
    from: &SetFunctor,
    to: &SetFunctor,
    x: usize,
    y: usize,
) -> bool {
    from.label_set(x) == from.label_set(y)
        && to.label_set(x) == to.label_set(y)
        && eta.graph(x, from, to) == eta.graph(y, from, to)
}

pub fn classify_transformation(
    x: &ColoredCategory,
    from: &SetFunctor,
    to: &SetFunctor,
    eta: &NaturalTransformation,
) -> SharpTransformation {
    let n = x.base().object_count();
    let pairs = || (0..n).tuple_combinations::<(usize, usize)>();
    let locally_constant = pairs()
        .filter(|&(a, b)| x.identity_color(a) == x.identity_color(b))
        .all(|(a, b)| components_agree(eta, from, to, a, b));
    let classes = x.object_classes();
    let sharp = pairs()
        .filter(|&(a, b)| classes.same(a, b))
        .all(|(a, b)| components_agree(eta, from, to, a, b));
    SharpTransformation {
        transformation: eta.clone(),
        locally_constant,
        sharp,
    }
}

/// The pullback of `η: F ⇒ H ⇐ G: λ`, computed objectwise, with elements
/// labeled `(a,b)` and its two projections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pullback {
    pub functor: SetFunctor,
    pub left: NaturalTransformation,
    pub right: NaturalTransformation,
}

pub fn objectwise_pullback(
    c: &FiniteCategory,
    f: &SetFunctor,
    g: &SetFunctor,
    eta: &NaturalTransformation,
    lambda: &NaturalTransformation,
) -> Pullback {
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut object_sets = Vec::new();
    for x in 0..c.object_count() {
        let p: Vec<(usize, usize)> = (0..f.value(x).len())
            .cartesian_product(0..g.value(x).len())
            .filter(|&(a, b)| eta.components[x][a] == lambda.components[x][b])
            .collect();
        object_sets.push(
            p.iter()
                .map(|&(a, b)| format!("({},{})", f.value(x)[a], g.value(x)[b]))
                .collect(),
        );
        pairs.push(p);
    }
    let morphism_maps = c
        .arrows()
        .iter()
        .enumerate()
        .map(|(m, arrow)| {
            pairs[arrow.src]
                .iter()
                .map(|&(a, b)| {
                    let image = (f.morphism_maps[m][a], g.morphism_maps[m][b]);
                    pairs[arrow.tgt]
                        .iter()
                        .position(|&p| p == image)
                        .expect("naturality keeps pairs in the fiber product")
                })
                .collect()
        })
        .collect();
    let projection = |pick: fn(&(usize, usize)) -> usize| NaturalTransformation {
        components: pairs.iter().map(|p| p.iter().map(pick).collect()).collect(),
    };
    Pullback {
        functor: SetFunctor {
            object_sets,
            morphism_maps,
        },
        left: projection(|p| p.0),
        right: projection(|p| p.1),
    }
}

/// Objectwise disjoint union, with elements labeled `0:a` and `1:b`.
pub fn objectwise_coproduct(c: &FiniteCategory, f: &SetFunctor, g: &SetFunctor) -> SetFunctor {
    let object_sets = (0..c.object_count())
        .map(|x| {
            let left = f.value(x).iter().map(|a| format!("0:{a}"));
            left.chain(g.value(x).iter().map(|b| format!("1:{b}")))
                .collect()
        })
        .collect();
    let morphism_maps = c
        .arrows()
        .iter()
        .enumerate()
        .map(|(m, arrow)| {
            let offset = f.value(arrow.tgt).len();
            let left = f.morphism_maps[m].iter().copied();
            left.chain(g.morphism_maps[m].iter().map(|&j| j + offset))
                .collect()
        })
        .collect();
    SetFunctor {
        object_sets,
        morphism_maps,
    }
}

/// `H ∘ u`.
pub fn precompose(u: &Functor, c: &FiniteCategory, h: &SetFunctor) -> SetFunctor {
    SetFunctor {
        object_sets: (0..c.object_count())
            .map(|x| h.object_sets[u.object_map[x]].clone())
            .collect(),
        morphism_maps: (0..c.morphism_count())
            .map(|f| h.morphism_maps[u.morphism_map[f]].clone())
            .collect(),
    }
}

/// `π*H`: a functor on the quotient pulled back to the colored category.
pub fn pi_star(x: &ColoredCategory, q: &FiniteQuotient, h: &SetFunctor) -> SetFunctor {
    precompose(&pi_functor(x, q), x.base(), h)
}

/// The functor on the quotient with `(θF)([x]) = F(x)` and
/// `(θF)(σ) = F(f)` for any `f ∈ σ`, extended to words by composition.
pub fn transport_theta(
    x: &ColoredCategory,
    q: &FiniteQuotient,
    h: &SetFunctor,
) -> Result<SetFunctor, ToposError> {
    let c = x.base();
    h.check_shape(c)?;
    if let Some((f, g)) = is_color_preserving(x, h).witness {
        return Err(ToposError::NotColorPreserving { f, g });
    }
    let reps: Vec<usize> = (0..q.partition.len())
        .map(|k| q.partition.representative(k))
        .collect();
    let object_sets: Vec<Vec<String>> = reps.iter().map(|&r| h.object_sets[r].clone()).collect();
    let letters: Vec<HashMap<&str, &str>> = (0..x.color_count())
        .map(|s| h.graph(c, x.members(s)[0]).into_iter().collect())
        .collect();
    let qc = &q.category;
    let mut morphism_maps = Vec::with_capacity(qc.morphism_count());
    for m in 0..qc.morphism_count() {
        let arrow = qc.arrow(m);
        let target = &object_sets[arrow.tgt];
        let map = object_sets[arrow.src]
            .iter()
            .map(|label| {
                let mut current = label.as_str();
                for &s in q.words[m].iter().rev() {
                    current = letters[s]
                        .get(current)
                        .ok_or(ToposError::MissingLabel { object: arrow.src })?;
                }
                target
                    .iter()
                    .position(|t| t == current)
                    .ok_or(ToposError::MissingLabel { object: arrow.tgt })
            })
            .collect::<Result<Vec<usize>, _>>()?;
        morphism_maps.push(map);
    }
    Ok(SetFunctor {
        object_sets,
        morphism_maps,
    })
}

/// Right Kan extension along `π: C → Q`, as limits over the comma
/// categories `(q ↓ π)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightKan {
    pub functor: SetFunctor,
    /// Objects `(c, h: q → π c)` of each comma category.
    pub comma: Vec<Vec<(usize, usize)>>,
    /// Elements of each limit as families indexed like `comma`.
    pub families: Vec<Vec<Vec<usize>>>,
}

fn family_label(g: &SetFunctor, comma: &[(usize, usize)], family: &[usize]) -> String {
    let parts: Vec<&str> = comma
        .iter()
        .zip(family)
        .map(|(&(c, _), &a)| g.value(c)[a].as_str())
        .collect();
    format!("[{}]", parts.join(","))
}

/// Compatible families over one comma category, by backtracking.
fn limit(
    c: &FiniteCategory,
    qc: &FiniteCategory,
    pi: &Functor,
    g: &SetFunctor,
    comma: &[(usize, usize)],
) -> Vec<Vec<usize>> {
    let position: HashMap<(usize, usize), usize> =
        comma.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    // constraints (i, f, j): G(f)(a_i) = a_j
    let mut constraints: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); comma.len()];
    for (i, &(obj, h)) in comma.iter().enumerate() {
        for f in 0..c.morphism_count() {
            if c.src(f) != obj {
                continue;
            }
            let h2 = qc
                .compose(pi.morphism_map[f], h)
                .expect("composable in the quotient");
            let j = position[&(c.tgt(f), h2)];
            constraints[i.max(j)].push((i, f, j));
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(comma.len());
    fn go(
        g: &SetFunctor,
        comma: &[(usize, usize)],
        constraints: &[Vec<(usize, usize, usize)>],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = current.len();
        if k == comma.len() {
            out.push(current.clone());
            return;
        }
        for a in 0..g.value(comma[k].0).len() {
            current.push(a);
            let ok = constraints[k]
                .iter()
                .all(|&(i, f, j)| g.morphism_maps[f][current[i]] == current[j]);
            if ok {
                go(g, comma, constraints, current, out);
            }
            current.pop();
        }
    }
    go(g, comma, &constraints, &mut current, &mut out);
    out
}

pub fn kan_pushforward(
    c: &FiniteCategory,
    qc: &FiniteCategory,
    pi: &Functor,
    g: &SetFunctor,
) -> RightKan {
    let comma: Vec<Vec<(usize, usize)>> = (0..qc.object_count())
        .map(|q| {
            (0..c.object_count())
                .flat_map(|obj| qc.hom(q, pi.object_map[obj]).iter().map(move |&h| (obj, h)))
                .collect()
        })
        .collect();
    let families: Vec<Vec<Vec<usize>>> = comma.iter().map(|o| limit(c, qc, pi, g, o)).collect();
    let object_sets = (0..qc.object_count())
        .map(|q| {
            families[q]
                .iter()
                .map(|fam| family_label(g, &comma[q], fam))
                .collect()
        })
        .collect();
    let index: Vec<HashMap<&[usize], usize>> = families
        .iter()
        .map(|fs| {
            fs.iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect()
        })
        .collect();
    let morphism_maps = (0..qc.morphism_count())
        .map(|m| {
            let (q, q2) = (qc.src(m), qc.tgt(m));
            let slot: HashMap<(usize, usize), usize> =
                comma[q].iter().enumerate().map(|(i, &o)| (o, i)).collect();
            families[q]
                .iter()
                .map(|fam| {
                    let image: Vec<usize> = comma[q2]
                        .iter()
                        .map(|&(obj, h)| fam[slot[&(obj, qc.compose(h, m).expect("composable"))]])
                        .collect();
                    index[q2][image.as_slice()]
                })
                .collect()
        })
        .collect();
    RightKan {
        functor: SetFunctor {
            object_sets,
            morphism_maps,
        },
        comma,
        families,
    }
}

/// `π*π_*F` together with the counit `π*π_*F ⇒ F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sheafification {
    /// `π_*F` on the quotient.
    pub pushforward: SetFunctor,
    /// `π*π_*F` on the colored category.
    pub functor: SetFunctor,
    pub counit: NaturalTransformation,
}

fn pushforward_on(x: &ColoredCategory, q: &FiniteQuotient, f: &SetFunctor) -> RightKan {
    kan_pushforward(x.base(), &q.category, &pi_functor(x, q), f)
}

/// Evaluation of each family at `(c, id_{π c})`.
fn counit(x: &ColoredCategory, q: &FiniteQuotient, kan: &RightKan) -> NaturalTransformation {
    let pi = pi_functor(x, q);
    let components = (0..x.base().object_count())
        .map(|obj| {
            let k = pi.object_map[obj];
            let slot = kan.comma[k]
                .iter()
                .position(|&o| o == (obj, q.category.identity(k)))
                .expect("identity is in the comma category");
            kan.families[k].iter().map(|fam| fam[slot]).collect()
        })
        .collect();
    NaturalTransformation { components }
}

pub fn sheafify_with(
    x: &ColoredCategory,
    q: &FiniteQuotient,
    f: &SetFunctor,
) -> Result<Sheafification, ToposError> {
    let report = f.check(x.base())?;
    if !report.is_valid() {
        return Err(ToposError::NotAFunctor(report.violations[0].detail.clone()));
    }
    let kan = pushforward_on(x, q, f);
    Ok(Sheafification {
        functor: pi_star(x, q, &kan.functor),
        counit: counit(x, q, &kan),
        pushforward: kan.functor,
    })
}

/// `π*π_*F` for an arbitrary functor `F`.
pub fn sheafify(
    x: &ColoredCategory,
    f: &SetFunctor,
    caps: Caps,
) -> Result<Sheafification, ToposError> {
    let result = quotient_category(x, caps);
    let q = result.finite().ok_or(ToposError::Undecided)?;
    sheafify_with(x, q, f)
}

/// The unit `F ⇒ π*π_*F` for a color-preserving `F`: an element `a ∈ F(c)`
/// goes to the family `(c', g) ↦ (θF)(g)(a)`.
pub fn sheaf_unit(
    x: &ColoredCategory,
    q: &FiniteQuotient,
    f: &SetFunctor,
    sheafified: &Sheafification,
) -> Result<NaturalTransformation, ToposError> {
    let theta = transport_theta(x, q, f)?;
    let kan = pushforward_on(x, q, f);
    let pi = pi_functor(x, q);
    let mut components = Vec::new();
    for obj in 0..x.base().object_count() {
        let k = pi.object_map[obj];
        let index: HashMap<&[usize], usize> = kan.families[k]
            .iter()
            .enumerate()
            .map(|(i, fam)| (fam.as_slice(), i))
            .collect();
        let mut component = Vec::new();
        for label in f.value(obj) {
            let a = theta.object_sets[k]
                .iter()
                .position(|l| l == label)
                .expect("same labels");
            let family: Vec<usize> = kan.comma[k]
                .iter()
                .map(|&(c2, g)| {
                    let image = &theta.object_sets[q.category.tgt(g)][theta.morphism_maps[g][a]];
                    f.value(c2)
                        .iter()
                        .position(|l| l == image)
                        .expect("same labels")
                })
                .collect();
            component.push(index[family.as_slice()]);
        }
        components.push(component);
    }
    debug_assert_eq!(kan.functor, sheafified.pushforward);
    Ok(NaturalTransformation { components })
}

/// Every functor on `c` whose values are `{0, …, k−1}` with `k ≤ max_size`.
/// Maps are assigned morphism by morphism and composites are checked as
/// soon as all three of their morphisms are assigned.
pub fn enumerate_functors(c: &FiniteCategory, max_size: usize) -> Vec<SetFunctor> {
    let n = c.object_count();
    let arrows: Vec<usize> = (0..c.morphism_count())
        .filter(|&f| !c.is_identity(f))
        .collect();
    // position in assignment order; identities count as assigned from the start
    let mut rank = vec![0usize; c.morphism_count()];
    for (i, &f) in arrows.iter().enumerate() {
        rank[f] = i + 1;
    }
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); arrows.len() + 1];
    for (g, f, gf) in c.compose_entries() {
        checks[rank[g].max(rank[f]).max(rank[gf])].push((g, f, gf));
    }
    let labels = |k: usize| (0..k).map(|i| i.to_string()).collect::<Vec<_>>();
    let mut out = Vec::new();
    for sizes in (0..n).map(|_| 0..=max_size).multi_cartesian_product() {
        let mut maps: Vec<Vec<usize>> = (0..c.morphism_count())
            .map(|f| (0..sizes[c.src(f)]).collect())
            .collect();
        let mut found = Vec::new();
        assign(c, &arrows, &checks, &sizes, 0, &mut maps, &mut found);
        out.extend(found.into_iter().map(|morphism_maps| SetFunctor {
            object_sets: sizes.iter().map(|&k| labels(k)).collect(),
            morphism_maps,
        }));
    }
    out
}

fn assign(
    c: &FiniteCategory,
    arrows: &[usize],
    checks: &[Vec<(usize, usize, usize)>],
    sizes: &[usize],
    k: usize,
    maps: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let consistent = checks[k].iter().all(|&(g, f, gf)| {
        maps[f]
            .iter()
            .map(|&i| maps[g][i])
            .eq(maps[gf].iter().copied())
    });
    if !consistent {
        return;
    }
    if k == arrows.len() {
        out.push(maps.clone());
        return;
    }
    let f = arrows[k];
    let (s, t) = (sizes[c.src(f)], sizes[c.tgt(f)]);
    let options: Vec<Vec<usize>> = if s == 0 {
        vec![Vec::new()]
    } else {
        (0..s).map(|_| 0..t).multi_cartesian_product().collect()
    };
    for m in options {
        maps[f] = m;
        assign(c, arrows, checks, sizes, k + 1, maps, out);
    }
}

/// Every natural transformation `F ⇒ G`, by backtracking over objects.
pub fn natural_transformations(
    c: &FiniteCategory,
    from: &SetFunctor,
    to: &SetFunctor,
) -> Vec<NaturalTransformation> {
    let n = c.object_count();
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::with_capacity(n);
    fn go(
        c: &FiniteCategory,
        from: &SetFunctor,
        to: &SetFunctor,
        current: &mut Vec<Vec<usize>>,
        out: &mut Vec<NaturalTransformation>,
    ) {
        let x = current.len();
        if x == c.object_count() {
            out.push(NaturalTransformation {
                components: current.clone(),
            });
            return;
        }
        let (s, t) = (from.value(x).len(), to.value(x).len());
        let maps: Vec<Vec<usize>> = if s == 0 {
            vec![Vec::new()]
        } else {
            (0..s).map(|_| 0..t).multi_cartesian_product().collect()
        };
        for m in maps {
            current.push(m);
            let ok = c.arrows().iter().enumerate().all(|(f, a)| {
                if a.src.max(a.tgt) != x {
                    return true;
                }
                (0..from.value(a.src).len()).all(|i| {
                    to.morphism_maps[f][current[a.src][i]]
                        == current[a.tgt][from.morphism_maps[f][i]]
                })
            });
            if ok {
                go(c, from, to, current, out);
            }
            current.pop();
        }
    }
    go(c, from, to, &mut current, &mut out);
    out
}

/// `|Hom(ιF, G)|` in all functors and `|Hom(F, π*π_*G)|` among sharp
/// transformations.
pub fn adjunction_counts(
    x: &ColoredCategory,
    q: &FiniteQuotient,
    f: &SetFunctor,
    g: &SetFunctor,
) -> Result<(usize, usize), ToposError> {
    let c = x.base();
    let left = natural_transformations(c, f, g).len();
    let sheaf = sheafify_with(x, q, g)?;
    let right = natural_transformations(c, f, &sheaf.functor)
        .into_iter()
        .filter(|eta| classify_transformation(x, f, &sheaf.functor, eta).sharp)
        .count();
    Ok((left, right))
}

/// Some natural isomorphism `F ⇒ G`.
pub fn find_natural_isomorphism(
    c: &FiniteCategory,
    from: &SetFunctor,
    to: &SetFunctor,
) -> Option<NaturalTransformation> {
    if (0..c.object_count()).any(|x| from.value(x).len() != to.value(x).len()) {
        return None;
    }
    natural_transformations(c, from, to)
        .into_iter()
        .find(|eta| {
            eta.components
                .iter()
                .all(|comp| comp.iter().collect::<BTreeSet<_>>().len() == comp.len())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{group_schemoid, pullback_counterexample, PullbackExample};
    use crate::monoid::FiniteMonoid;

    fn z2() -> (ColoredCategory, FiniteQuotient) {
        let x = group_schemoid(&FiniteMonoid::cyclic(2)).unwrap();
        let q = quotient_category(&x, Caps::default())
            .finite()
            .unwrap()
            .clone();
        (x, q)
    }

    #[test]
    fn constant_functors_are_color_preserving() {
        let e = pullback_counterexample();
        assert!(is_color_preserving(&e.colored, &e.functor).holds);
        let (x, _) = z2();
        assert!(is_color_preserving(&x, &SetFunctor::constant(x.base(), &["a", "b"])).holds);
    }

    #[test]
    fn pullback_example_values_and_witness() {
        let e = pullback_counterexample();
        let c = e.colored.base();
        let p = objectwise_pullback(c, &e.functor, &e.functor, &e.eta, &e.lambda);
        assert_eq!(p.functor.value(PullbackExample::X), ["(3,3)"]);
        assert_eq!(
            p.functor.value(PullbackExample::Y),
            ["(1,1)", "(2,2)", "(3,3)"]
        );
        assert!(p.functor.check(c).unwrap().is_valid());
        let v = is_color_preserving(&e.colored, &p.functor);
        assert!(!v.holds);
        assert_eq!(v.witness, Some((PullbackExample::ID_X, PullbackExample::F)));
    }

    #[test]
    fn pullback_example_eta_is_locally_constant_but_not_sharp() {
        let e = pullback_counterexample();
        let s = classify_transformation(&e.colored, &e.functor, &e.functor, &e.eta);
        assert!(s.locally_constant);
        assert!(!s.sharp);
        let id = NaturalTransformation::identity(&e.functor);
        assert!(classify_transformation(&e.colored, &e.functor, &e.functor, &id).sharp);
    }

    #[test]
    fn pullback_over_terminal_is_product() {
        let (x, _) = z2();
        let c = x.base();
        let f = SetFunctor::constant(c, &["a", "b"]);
        let g = SetFunctor::constant(c, &["u", "v", "w"]);
        let to_one = |h: &SetFunctor| NaturalTransformation {
            components: h.object_sets.iter().map(|s| vec![0; s.len()]).collect(),
        };
        let p = objectwise_pullback(c, &f, &g, &to_one(&f), &to_one(&g));
        assert_eq!(p.functor.value(0).len(), 6);
        assert!(is_color_preserving(&x, &p.functor).holds);
    }

    #[test]
    fn theta_on_regular_action() {
        let (x, q) = z2();
        let c = x.base();
        // both objects hold {p, q}; the arrows between distinct objects swap them
        let swap = SetFunctor {
            object_sets: vec![vec!["p".into(), "q".into()]; 2],
            morphism_maps: (0..4)
                .map(|m| {
                    if m / 2 == m % 2 {
                        vec![0, 1]
                    } else {
                        vec![1, 0]
                    }
                })
                .collect(),
        };
        assert!(swap.check(c).unwrap().is_valid());
        let t = transport_theta(&x, &q, &swap).unwrap();
        assert_eq!(t.object_sets, vec![vec!["p".to_string(), "q".to_string()]]);
        let mut maps = t.morphism_maps.clone();
        maps.sort();
        assert_eq!(maps, vec![vec![0, 1], vec![1, 0]]);
        assert!(functors_equal(c, &pi_star(&x, &q, &t), &swap));
    }

    #[test]
    fn theta_rejects_non_color_preserving() {
        let e = pullback_counterexample();
        let c = e.colored.base();
        let q = quotient_category(&e.colored, Caps::default())
            .finite()
            .unwrap()
            .clone();
        let p = objectwise_pullback(c, &e.functor, &e.functor, &e.eta, &e.lambda);
        assert_eq!(
            transport_theta(&e.colored, &q, &p.functor),
            Err(ToposError::NotColorPreserving { f: 0, g: 2 })
        );
    }

    #[test]
    fn kan_along_identity_is_isomorphic_to_the_functor() {
        let (x, _) = z2();
        let c = x.base();
        for g in enumerate_functors(c, 2) {
            let kan = kan_pushforward(c, c, &Functor::identity(c), &g);
            assert!(kan.functor.check(c).unwrap().is_valid());
            assert!(find_natural_isomorphism(c, &kan.functor, &g).is_some());
        }
    }

    #[test]
    fn kan_of_terminal_is_terminal() {
        let e = pullback_counterexample();
        let q = quotient_category(&e.colored, Caps::default())
            .finite()
            .unwrap()
            .clone();
        let one = SetFunctor::constant(e.colored.base(), &["*"]);
        let s = sheafify_with(&e.colored, &q, &one).unwrap();
        assert!(s.pushforward.object_sets.iter().all(|v| v.len() == 1));
    }

    #[test]
    fn pullback_example_sheafified_is_color_preserving() {
        let e = pullback_counterexample();
        let c = e.colored.base();
        let p = objectwise_pullback(c, &e.functor, &e.functor, &e.eta, &e.lambda);
        let s = sheafify(&e.colored, &p.functor, Caps::default()).unwrap();
        assert!(s.functor.check(c).unwrap().is_valid());
        assert!(is_color_preserving(&e.colored, &s.functor).holds);
        assert!(s
            .counit
            .check(c, &s.functor, &p.functor)
            .unwrap()
            .is_valid());
        // the limit over the one-object quotient is P(x) × Fix(P(f)), of size 1 · 3
        assert_eq!(s.pushforward.value(0).len(), 3);
    }
}
