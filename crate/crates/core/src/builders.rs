//! Constructors for the standard example colored categories.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomlib::NatLen;
use crate::coloring::ColoredCategory;
use crate::fincat::{Arrow, FiniteCategory, Functor, NaturalTransformation, SetFunctor};
use crate::monoid::FiniteMonoid;
use crate::quotient::CategoryPresentation;
use crate::scheme::{as_schemoid, group_color, hamming};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuilderError {
    #[error("simplicial complexes are limited to {max} vertices, got {found}")]
    TooManyVertices { max: usize, found: usize },
    #[error("face {face:?} uses a vertex outside 0..{vertices}")]
    VertexOutOfRange { face: Vec<usize>, vertices: usize },
    #[error("face {face:?} is missing its subface {missing:?}")]
    NotClosed {
        face: Vec<usize>,
        missing: Vec<usize>,
    },
    #[error("not a group")]
    NotAGroup,
}

/// Each morphism its own color.
pub fn discrete_schemoid(c: &FiniteCategory) -> ColoredCategory {
    ColoredCategory::new(c.clone(), (0..c.morphism_count()).collect())
        .expect("a category has identities")
}

/// Objects are the elements of `g`, with one morphism `x → y` for each
/// pair (index `x * |G| + y`), colored by `y·x⁻¹`. The unit color is 0.
pub fn group_schemoid(g: &FiniteMonoid) -> Result<ColoredCategory, BuilderError> {
    if !g.is_group() {
        return Err(BuilderError::NotAGroup);
    }
    let n = g.order();
    let colors = (0..n)
        .flat_map(|x| {
            let inv = g.inverse(x).expect("group");
            (0..n).map(move |y| group_color(g.mul(y, inv), g.unit()))
        })
        .collect();
    Ok(ColoredCategory::new(FiniteCategory::indiscrete(n), colors).expect("every color occurs"))
}

pub const MAX_VERTICES: usize = 64;

/// A finite simplicial complex on vertices `0..vertices`, stored as the
/// full downward-closed family of faces as bitmasks. The empty face is
/// always present and comes first; faces are sorted by size, then by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    faces: Vec<u64>,
}

/// On-disk form: vertex count and any generating family of faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: usize,
    pub faces: Vec<Vec<usize>>,
}

fn mask_of(face: &[usize], vertices: usize) -> Result<u64, BuilderError> {
    face.iter().try_fold(0u64, |m, &v| {
        if v >= vertices {
            Err(BuilderError::VertexOutOfRange {
                face: face.to_vec(),
                vertices,
            })
        } else {
            Ok(m | 1 << v)
        }
    })
}

fn vertices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

fn sorted_faces(set: BTreeSet<u64>) -> Vec<u64> {
    let mut faces: Vec<u64> = set.into_iter().collect();
    faces.sort_by_key(|&m| (m.count_ones(), m));
    faces
}

impl SimplicialComplex {
    /// The downward closure of `generators`, plus every vertex as a face.
    pub fn generated(vertices: usize, generators: &[Vec<usize>]) -> Result<Self, BuilderError> {
        if vertices > MAX_VERTICES {
            return Err(BuilderError::TooManyVertices {
                max: MAX_VERTICES,
                found: vertices,
            });
        }
        let mut set = BTreeSet::from([0u64]);
        set.extend((0..vertices).map(|v| 1u64 << v));
        for face in generators {
            let m = mask_of(face, vertices)?;
            // all submasks of m
            let mut sub = m;
            loop {
                set.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        Ok(SimplicialComplex {
            vertices,
            faces: sorted_faces(set),
        })
    }

    /// Takes `faces` as the complete face list and rejects it unless it is
    /// closed under taking subsets. Vertices and `∅` are added if missing.
    pub fn from_faces(vertices: usize, faces: &[Vec<usize>]) -> Result<Self, BuilderError> {
        if vertices > MAX_VERTICES {
            return Err(BuilderError::TooManyVertices {
                max: MAX_VERTICES,
                found: vertices,
            });
        }
        let mut set = BTreeSet::from([0u64]);
        set.extend((0..vertices).map(|v| 1u64 << v));
        for face in faces {
            set.insert(mask_of(face, vertices)?);
        }
        for &m in &set {
            for v in vertices_of(m) {
                let below = m & !(1 << v);
                if !set.contains(&below) {
                    return Err(BuilderError::NotClosed {
                        face: vertices_of(m),
                        missing: vertices_of(below),
                    });
                }
            }
        }
        Ok(SimplicialComplex {
            vertices,
            faces: sorted_faces(set),
        })
    }

    pub fn from_file(file: &ComplexFile) -> Result<Self, BuilderError> {
        Self::generated(file.vertices, &file.faces)
    }

    /// Writes the facets (maximal faces) only.
    pub fn to_file(&self) -> ComplexFile {
        let facets = self
            .faces
            .iter()
            .filter(|&&m| m != 0 && !self.faces.iter().any(|&n| n != m && n & m == m))
            .map(|&m| vertices_of(m))
            .collect();
        ComplexFile {
            vertices: self.vertices,
            faces: facets,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, i: usize) -> Vec<usize> {
        vertices_of(self.faces[i])
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.faces.iter().map(|&m| vertices_of(m)).collect()
    }

    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        let m = mask_of(face, self.vertices).ok()?;
        self.faces.iter().position(|&f| f == m)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces
            .iter()
            .filter(|m| m.count_ones() == 2)
            .map(|&m| {
                let v = vertices_of(m);
                (v[0], v[1])
            })
            .collect()
    }

    /// Faces of dimension at most one.
    pub fn one_skeleton(&self) -> SimplicialComplex {
        SimplicialComplex {
            vertices: self.vertices,
            faces: self
                .faces
                .iter()
                .copied()
                .filter(|m| m.count_ones() <= 2)
                .collect(),
        }
    }

    /// Every complex on `0..vertices`, each exactly once.
    pub fn all_on(vertices: usize) -> Vec<SimplicialComplex> {
        assert!(vertices <= 4, "enumeration is meant for tiny vertex sets");
        // candidate faces of size >= 2
        let big: Vec<u64> = (1u64..1 << vertices)
            .filter(|m| m.count_ones() >= 2)
            .collect();
        let mut out = Vec::new();
        for choice in 0u64..1 << big.len() {
            let chosen: Vec<Vec<usize>> = (0..big.len())
                .filter(|&i| choice >> i & 1 == 1)
                .map(|i| vertices_of(big[i]))
                .collect();
            if let Ok(k) = SimplicialComplex::from_faces(vertices, &chosen) {
                out.push(k);
            }
        }
        out
    }
}

/// The face poset of `k` (inclusions `τ ⊆ ν`), where `τ → ν` has the color
/// of the face `ν ∖ τ`. Objects and colors are both indexed by faces, so
/// color 0 is `∅` and contains exactly the identities.
pub fn simplicial_schemoid(k: &SimplicialComplex) -> ColoredCategory {
    let faces = &k.faces;
    let c = FiniteCategory::from_preorder(faces.len(), |a, b| faces[a] & faces[b] == faces[a]);
    let index = |m: u64| faces.iter().position(|&f| f == m).expect("downward closed");
    let colors = c
        .arrows()
        .iter()
        .map(|a| index(faces[a.tgt] & !faces[a.src]))
        .collect();
    ColoredCategory::new(c, colors).expect("every face is ν ∖ ∅")
}

/// Weights for [`crate::quotient::growth_series`] on the presentation of
/// [`simplicial_schemoid`]: the generator of face `σ` has weight `|σ|`.
pub fn simplicial_weights(k: &SimplicialComplex) -> Vec<usize> {
    k.faces.iter().map(|m| m.count_ones() as usize).collect()
}

/// One generator `x{i}` per vertex and `x{i}·x{j} = x{j}·x{i}` for each edge.
pub fn trace_monoid_presentation(k: &SimplicialComplex) -> CategoryPresentation {
    let names: Vec<String> = (0..k.vertices).map(|i| format!("x{i}")).collect();
    let relations = k
        .edges()
        .into_iter()
        .map(|(i, j)| (vec![i, j], vec![j, i]))
        .collect();
    CategoryPresentation::monoid(&names, relations)
}

/// The finite colored category `0 ≤ 1 ≤ … ≤ len` colored by length.
pub fn nat_len_truncation(len: usize) -> ColoredCategory {
    let c = FiniteCategory::from_preorder(len + 1, |a, b| a <= b);
    let colors = c.arrows().iter().map(|a| a.tgt - a.src).collect();
    ColoredCategory::new(c, colors).expect("every length occurs")
}

/// The free category on one endomorphism, colored by length. It has no
/// finite model and is handled symbolically by the Koszul resolution.
pub fn nat_len_symbol() -> NatLen {
    NatLen
}

/// A two-object colored category on which objectwise pullbacks fail to be
/// color-preserving.
///
/// Objects `x = 0`, `y = 1`; morphisms `id_x = 0`, `id_y = 1` and
/// `f = 2 : y → y` with `f∘f = id_y`. Colors `σ = 0 = {id_x, f}` and
/// `τ = 1 = {id_y}`. `F` is constant on `U = {1, 2, 3}` with identity maps,
/// and `η, λ : F ⇒ F` are the identity on `y` while at `x`
/// `η = (1,2,3 ↦ 1,1,3)` and `λ = (1,2,3 ↦ 2,2,3)`.
#[derive(Debug, Clone)]
pub struct PullbackExample {
    pub colored: ColoredCategory,
    pub functor: SetFunctor,
    pub eta: NaturalTransformation,
    pub lambda: NaturalTransformation,
}

impl PullbackExample {
    pub const X: usize = 0;
    pub const Y: usize = 1;
    pub const ID_X: usize = 0;
    pub const ID_Y: usize = 1;
    pub const F: usize = 2;
}

pub fn pullback_counterexample() -> PullbackExample {
    let c = FiniteCategory::new(
        2,
        vec![Arrow::new(0, 0), Arrow::new(1, 1), Arrow::new(1, 1)],
        vec![0, 1],
        [(0, 0, 0), (1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)],
    )
    .expect("fixture indices in range");
    let functor = SetFunctor::constant(&c, &["1", "2", "3"]);
    let colored = ColoredCategory::new(c, vec![0, 1, 0]).expect("both colors used");
    PullbackExample {
        colored,
        functor,
        eta: NaturalTransformation {
            components: vec![vec![0, 0, 2], vec![0, 1, 2]],
        },
        lambda: NaturalTransformation {
            components: vec![vec![1, 1, 2], vec![0, 1, 2]],
        },
    }
}

/// Three objects `00, 01, 10` (indices 0, 1, 2) with an inverse pair
/// `a: 00 → 01`, `a⁻¹: 01 → 00` and single arrows `α: 00 → 10`,
/// `β: 01 → 10`; so `10` is terminal.
///
/// Colors: each identity alone (0, 1, 2), `τ = 3 = {a, a⁻¹}`, `{α} = 4`,
/// `{β} = 5`. `u` sends `ij` to the point `ij` of `H(2,2)`.
///
/// Because `id_00` and `id_01` have different colors, there is no colored
/// morphism `S̃(ℤ/2) → (C, S)` hitting `a`: it would split the identity
/// color of `S̃(ℤ/2)`.
#[derive(Debug, Clone)]
pub struct PropAppExample {
    pub colored: ColoredCategory,
    pub hamming: ColoredCategory,
    pub u: Functor,
    pub tau: usize,
}

impl PropAppExample {
    pub const A: usize = 3;
    pub const A_INV: usize = 4;
    pub const ALPHA: usize = 5;
    pub const BETA: usize = 6;
}

pub fn prop_app_example() -> PropAppExample {
    use PropAppExample as P;
    let arrows = vec![
        Arrow::new(0, 0),
        Arrow::new(1, 1),
        Arrow::new(2, 2),
        Arrow::new(0, 1),
        Arrow::new(1, 0),
        Arrow::new(0, 2),
        Arrow::new(1, 2),
    ];
    let mut compose = vec![
        (P::A_INV, P::A, 0),
        (P::A, P::A_INV, 1),
        (P::BETA, P::A, P::ALPHA),
        (P::ALPHA, P::A_INV, P::BETA),
    ];
    for (f, a) in arrows.iter().enumerate() {
        compose.push((f, a.src, f));
        if a.src != a.tgt {
            compose.push((a.tgt, f, f));
        }
    }
    let c =
        FiniteCategory::new(3, arrows, vec![0, 1, 2], compose).expect("fixture indices in range");
    let colored = ColoredCategory::new(c, vec![0, 1, 2, 3, 3, 4, 5]).expect("all colors used");

    let hamming = as_schemoid(&hamming(2, 2).expect("H(2,2)"));
    // point ij of H(2,2) has index i + 2j (first digit least significant)
    let point = [0b00, 0b10, 0b01];
    let n = 4;
    let u = Functor {
        object_map: point.to_vec(),
        morphism_map: colored
            .base()
            .arrows()
            .iter()
            .map(|a| point[a.src] * n + point[a.tgt])
            .collect(),
    };
    PropAppExample {
        colored,
        hamming,
        u,
        tau: 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{check_colored_morphism, prop_app_hypotheses};
    use crate::quotient::{build_presentation, growth_series, quotient_category, Caps};

    #[test]
    fn every_builder_is_a_valid_category() {
        let k = SimplicialComplex::generated(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let all = [
            discrete_schemoid(&FiniteCategory::indiscrete(2)),
            group_schemoid(&FiniteMonoid::symmetric(3)).unwrap(),
            simplicial_schemoid(&k),
            nat_len_truncation(3),
            pullback_counterexample().colored,
            prop_app_example().colored,
        ];
        for x in &all {
            assert!(x.base().validate().is_valid());
        }
    }

    #[test]
    fn discrete_schemoid_of_terminal_has_one_color() {
        let x = discrete_schemoid(&FiniteCategory::terminal());
        assert_eq!(x.color_count(), 1);
        let table = x.structure_constants();
        assert!(table.schemoid);
        assert!(table.nonzero_entries().iter().all(|e| e.3 == 1));
    }

    #[test]
    fn discrete_schemoid_quotient_is_the_category() {
        let cats = [
            FiniteCategory::terminal(),
            FiniteCategory::indiscrete(2),
            FiniteCategory::from_preorder(3, |a, b| a <= b),
            pullback_counterexample().colored.base().clone(),
            prop_app_example().colored.base().clone(),
        ];
        for c in cats {
            let q = quotient_category(&discrete_schemoid(&c), Caps::default());
            let q = q.finite().expect("finite");
            assert!(c.find_isomorphism(&q.category).is_some());
        }
    }

    #[test]
    fn z2_group_schemoid_shape() {
        let x = group_schemoid(&FiniteMonoid::cyclic(2)).unwrap();
        assert_eq!(x.base().object_count(), 2);
        assert_eq!(x.base().morphism_count(), 4);
        assert_eq!(x.color_count(), 2);
        assert!(x.is_naturally_colored().holds);
    }

    #[test]
    fn group_schemoid_quotients_are_the_groups() {
        let groups = [
            FiniteMonoid::cyclic(2),
            FiniteMonoid::cyclic(3),
            FiniteMonoid::cyclic(4),
            FiniteMonoid::product(&FiniteMonoid::cyclic(2), &FiniteMonoid::cyclic(2)),
            FiniteMonoid::cyclic(5),
            FiniteMonoid::cyclic(6),
            FiniteMonoid::symmetric(3),
        ];
        for g in groups {
            let x = group_schemoid(&g).unwrap();
            assert!(x.is_naturally_colored().holds);
            let q = quotient_category(&x, Caps::default());
            let q = q.finite().expect("finite");
            let m = FiniteMonoid::from_category(&q.category).unwrap();
            assert!(m.find_isomorphism(&g).is_some(), "order {}", g.order());
        }
    }

    #[test]
    fn opposite_group_convention_gives_an_isomorphic_colored_category() {
        let g = FiniteMonoid::cyclic(3);
        let x = group_schemoid(&g).unwrap();
        // x⁻¹y instead of y x⁻¹; ℤ/3 is abelian so the colorings coincide
        let n = g.order();
        let other: Vec<usize> = (0..n * n)
            .map(|m| group_color(g.mul(g.inverse(m / n).unwrap(), m % n), g.unit()))
            .collect();
        assert_eq!(x.colors(), &other[..]);
    }

    #[test]
    fn single_vertex_complex() {
        let k = SimplicialComplex::generated(1, &[]).unwrap();
        let x = simplicial_schemoid(&k);
        assert_eq!(x.base().object_count(), 2);
        assert_eq!(x.base().morphism_count(), 3);
        assert_eq!(x.color_count(), 2);
    }

    #[test]
    fn simplicial_structure_constants_are_disjoint_unions() {
        let k = SimplicialComplex::generated(3, &[vec![0, 1, 2]]).unwrap();
        let x = simplicial_schemoid(&k);
        let table = x.structure_constants();
        assert!(table.schemoid);
        assert!(x.is_naturally_colored().holds);
        let faces = &k.faces;
        for s in 0..faces.len() {
            for m in 0..faces.len() {
                for n in 0..faces.len() {
                    let disjoint_union =
                        faces[s] & faces[m] == 0 && faces[s] | faces[m] == faces[n];
                    assert_eq!(table.p(s, m, n), Some(disjoint_union as usize));
                }
            }
        }
    }

    #[test]
    fn complex_constructors() {
        assert_eq!(
            SimplicialComplex::from_faces(3, &[vec![0, 1, 2]]),
            Err(BuilderError::NotClosed {
                face: vec![0, 1, 2],
                missing: vec![1, 2]
            })
        );
        assert!(matches!(
            SimplicialComplex::generated(2, &[vec![2]]),
            Err(BuilderError::VertexOutOfRange { .. })
        ));
        let k = SimplicialComplex::generated(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.face_count(), 8);
        assert_eq!(k.to_file().faces, vec![vec![0, 1, 2]]);
        assert_eq!(SimplicialComplex::from_file(&k.to_file()).unwrap(), k);
        // on three vertices: any set of edges, or the full triangle
        let counts: Vec<usize> = (0..4).map(|n| SimplicialComplex::all_on(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 9]);
    }

    #[test]
    fn trace_monoid_small_counts() {
        let edge = SimplicialComplex::generated(2, &[vec![0, 1]]).unwrap();
        let p = trace_monoid_presentation(&edge);
        assert_eq!(growth_series(&p, &[1, 1], 2).unwrap()[2], 3);
        let free = SimplicialComplex::generated(2, &[]).unwrap();
        let p = trace_monoid_presentation(&free);
        assert_eq!(growth_series(&p, &[1, 1], 3).unwrap()[3], 8);
    }

    #[test]
    fn simplicial_presentation_matches_trace_monoid() {
        let k = SimplicialComplex::generated(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let (p, _) = build_presentation(&simplicial_schemoid(&k));
        let left = growth_series(&p, &simplicial_weights(&k), 4).unwrap();
        let t = trace_monoid_presentation(&k);
        let right = growth_series(&t, &[1; 3], 4).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn truncation_is_length_colored_and_natural() {
        let x = nat_len_truncation(3);
        let c = x.base();
        let f = (0..c.morphism_count())
            .find(|&f| c.arrow(f) == Arrow::new(0, 2))
            .unwrap();
        assert_eq!(x.color_of(f), 2);
        assert!(x.is_naturally_colored().holds);
        assert_eq!(nat_len_symbol(), NatLen);
    }

    #[test]
    fn pullback_fixture_is_not_natural() {
        let e = pullback_counterexample();
        assert!(!e.colored.is_naturally_colored().holds);
        assert!(e.functor.check(e.colored.base()).unwrap().is_valid());
        for t in [&e.eta, &e.lambda] {
            assert!(t
                .check(e.colored.base(), &e.functor, &e.functor)
                .unwrap()
                .is_valid());
        }
        assert_ne!(
            e.eta.components[PullbackExample::X],
            e.eta.components[PullbackExample::Y]
        );
    }

    #[test]
    fn prop_app_fixture() {
        let e = prop_app_example();
        let x = &e.colored;
        assert!(!x.is_naturally_colored().holds);
        assert!(!x.structure_constants().schemoid);
        assert_eq!(x.base().terminal_object(), Some(2));
        let map = check_colored_morphism(&e.u, x, &e.hamming).unwrap();
        assert_eq!(map[e.tau], 1);
        assert!(prop_app_hypotheses(&e.u, x, &e.hamming, e.tau));
        let z2 = group_schemoid(&FiniteMonoid::cyclic(2)).unwrap();
        let v = Functor {
            object_map: vec![0, 1],
            morphism_map: vec![0, PropAppExample::A, PropAppExample::A_INV, 1],
        };
        assert!(v.validate(z2.base(), x.base()).is_valid());
        assert!(check_colored_morphism(&v, &z2, x).is_err());
    }

    #[test]
    fn prop_app_cohomology_is_nonzero_but_discrete_version_is_contractible() {
        use crate::cohomlib::{schemoid_cohomology, AbelianGroup, Coefficients, ModuleSpec};
        let e = prop_app_example();
        let z2 = Coefficients::Mod(2);
        let h = schemoid_cohomology(&e.colored, &ModuleSpec::Constant, &z2, 5, Caps::default())
            .unwrap();
        assert!(h
            .groups
            .degrees
            .iter()
            .all(|g| *g == AbelianGroup::cyclic(2)));
        let k = discrete_schemoid(e.colored.base());
        let h = schemoid_cohomology(&k, &ModuleSpec::Constant, &z2, 5, Caps::default()).unwrap();
        assert_eq!(h.groups.degrees[0], AbelianGroup::cyclic(2));
        assert!(h.groups.degrees[1..].iter().all(AbelianGroup::is_zero));
    }
}
