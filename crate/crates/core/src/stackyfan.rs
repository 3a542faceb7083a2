//! Stacky fans: the triple (N, Sigma, beta) with N free of finite rank, Sigma a
//! finite rational simplicial fan whose rays span, and beta assigning an
//! integer vector b_i on each ray rho_i.
//!
//! A fan is stored as the beta vectors plus the maximal cones (sets of ray
//! indices); the face closure is derived at construction, which is canonical
//! for simplicial cones. Completeness is decided by a recursive link
//! criterion, cross-checked in the test suites by exact membership of a
//! deterministic direction sample.

use crate::lattice::{
    self, kernel_basis, primitivize, solve_rational, span_basis, IntMatrix, IntVec, RatVec,
};
use crate::polyhedra::Cone;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("rank must be at least 1")]
    BadRank,
    #[error("beta vector {index} has length {got}, expected the rank {expected}")]
    BetaLength {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("cone {cone} uses ray index {index}, but there are only {rays} rays")]
    RayIndexOutOfRange {
        cone: usize,
        index: usize,
        rays: usize,
    },
    #[error("cone {cone} repeats a ray index")]
    DuplicateRayInCone { cone: usize },
    #[error("maximal cone listed twice (positions {first} and {second})")]
    DuplicateCone { first: usize, second: usize },
    #[error("weights must be positive with gcd 1")]
    BadWeights,
    #[error("unknown catalog name: {0}")]
    UnknownName(String),
    #[error("beta entry does not fit the interchange format")]
    ValueOutOfRange,
    #[error("subgroup generator has length {got}, expected the rank {expected}")]
    GeneratorLength { got: usize, expected: usize },
}

/// A single fan-axiom failure with enough data to re-check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum FanAxiomFailure {
    ZeroBetaVector { ray: usize },
    DuplicateRayDirection { ray_a: usize, ray_b: usize },
    RayNotInAnyCone { ray: usize },
    ConeNotSimplicial { cone: Vec<usize> },
    RaysDoNotSpan,
    IntersectionNotCommonFace { cone_a: Vec<usize>, cone_b: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<FanAxiomFailure>,
    pub is_complete: bool,
}

/// The stacky fan data type. Immutable after construction; the face closure is
/// computed eagerly and the validation report lazily (compute-then-publish).
#[derive(Debug, Clone)]
pub struct StackyFan {
    rank: usize,
    beta: Vec<IntVec>,
    max_cones: Vec<BTreeSet<usize>>,
    all_cones: Vec<BTreeSet<usize>>,
    cone_ids: BTreeMap<BTreeSet<usize>, usize>,
    name: Option<String>,
    validation: OnceLock<ValidationReport>,
}

impl PartialEq for StackyFan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.beta == other.beta
            && self.max_cones == other.max_cones
            && self.name == other.name
    }
}
impl Eq for StackyFan {}

impl StackyFan {
    pub fn new(
        rank: usize,
        beta: Vec<IntVec>,
        max_cones: Vec<Vec<usize>>,
        name: Option<String>,
    ) -> Result<StackyFan, FanError> {
        if rank == 0 {
            return Err(FanError::BadRank);
        }
        for (i, b) in beta.iter().enumerate() {
            if b.len() != rank {
                return Err(FanError::BetaLength {
                    index: i,
                    got: b.len(),
                    expected: rank,
                });
            }
        }
        let r = beta.len();
        let mut canonical: Vec<BTreeSet<usize>> = Vec::with_capacity(max_cones.len());
        for (ci, cone) in max_cones.iter().enumerate() {
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != cone.len() {
                return Err(FanError::DuplicateRayInCone { cone: ci });
            }
            if let Some(&bad) = set.iter().find(|&&i| i >= r) {
                return Err(FanError::RayIndexOutOfRange {
                    cone: ci,
                    index: bad,
                    rays: r,
                });
            }
            if let Some(prev) = canonical.iter().position(|c| c == &set) {
                return Err(FanError::DuplicateCone {
                    first: prev,
                    second: ci,
                });
            }
            canonical.push(set);
        }
        canonical.sort_by(|a, b| {
            (a.len(), a.iter().collect::<Vec<_>>()).cmp(&(b.len(), b.iter().collect::<Vec<_>>()))
        });
        // Face closure: all subsets of maximal cones (canonical for simplicial
        // cones), always including the zero cone.
        let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        faces.insert(BTreeSet::new());
        for cone in &canonical {
            let idx: Vec<usize> = cone.iter().copied().collect();
            for mask in 0u64..(1u64 << idx.len()) {
                let f: BTreeSet<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                faces.insert(f);
            }
        }
        let mut all_cones: Vec<BTreeSet<usize>> = faces.into_iter().collect();
        all_cones.sort_by(|a, b| {
            (a.len(), a.iter().collect::<Vec<_>>()).cmp(&(b.len(), b.iter().collect::<Vec<_>>()))
        });
        let cone_ids = all_cones
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(StackyFan {
            rank,
            beta,
            max_cones: canonical,
            all_cones,
            cone_ids,
            name,
            validation: OnceLock::new(),
        })
    }

    pub fn from_i64(
        rank: usize,
        beta: &[Vec<i64>],
        max_cones: &[Vec<usize>],
        name: Option<&str>,
    ) -> Result<StackyFan, FanError> {
        StackyFan::new(
            rank,
            beta.iter().map(|b| lattice::int_vec(b)).collect(),
            max_cones.to_vec(),
            name.map(str::to_owned),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_rays(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &[IntVec] {
        &self.beta
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn max_cones(&self) -> &[BTreeSet<usize>] {
        &self.max_cones
    }

    /// The face closure, sorted by (number of rays, ray indices). Cone ids
    /// used across this crate are indices into this list; id 0 is the zero cone.
    pub fn all_cones(&self) -> &[BTreeSet<usize>] {
        &self.all_cones
    }

    pub fn cone_id(&self, rays: &BTreeSet<usize>) -> Option<usize> {
        self.cone_ids.get(rays).copied()
    }

    pub fn cone_rays(&self, id: usize) -> &BTreeSet<usize> {
        &self.all_cones[id]
    }

    pub fn primitive_ray(&self, i: usize) -> IntVec {
        primitivize(&self.beta[i])
    }

    /// The geometric cone spanned by the beta vectors of the given ray set.
    pub fn cone_geometry(&self, rays: &BTreeSet<usize>) -> Cone {
        let gens: Vec<IntVec> = rays.iter().map(|&i| self.beta[i].clone()).collect();
        Cone::from_generators(&gens, self.rank).expect("beta lengths checked at construction")
    }

    pub fn cone_geometry_by_id(&self, id: usize) -> Cone {
        self.cone_geometry(&self.all_cones[id])
    }

    /// Whether some maximal cone contains the given rational point.
    pub fn support_contains(&self, x: &[BigRational]) -> bool {
        self.max_cones
            .iter()
            .any(|c| self.cone_geometry(c).contains(x))
    }

    /// Full axiom check plus the completeness verdict (cached).
    pub fn validate(&self) -> &ValidationReport {
        self.validation.get_or_init(|| self.run_validation())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().ok
    }

    pub fn is_complete(&self) -> bool {
        self.validate().is_complete
    }

    fn run_validation(&self) -> ValidationReport {
        let mut failures = Vec::new();
        for (i, b) in self.beta.iter().enumerate() {
            if b.iter().all(|x| x.is_zero()) {
                failures.push(FanAxiomFailure::ZeroBetaVector { ray: i });
            }
        }
        // One beta vector per ray: distinct rays must have distinct directions.
        let prim: Vec<IntVec> = (0..self.num_rays()).map(|i| self.primitive_ray(i)).collect();
        for i in 0..prim.len() {
            for j in i + 1..prim.len() {
                if prim[i] == prim[j] && !prim[i].iter().all(|x| x.is_zero()) {
                    failures.push(FanAxiomFailure::DuplicateRayDirection { ray_a: i, ray_b: j });
                }
            }
        }
        let used: BTreeSet<usize> = self.max_cones.iter().flatten().copied().collect();
        for i in 0..self.num_rays() {
            if !used.contains(&i) {
                failures.push(FanAxiomFailure::RayNotInAnyCone { ray: i });
            }
        }
        for cone in &self.max_cones {
            let rows: Vec<IntVec> = cone.iter().map(|&i| self.beta[i].clone()).collect();
            let rank = if rows.is_empty() {
                0
            } else {
                IntMatrix::from_rows(&rows).rank()
            };
            if rank != cone.len() {
                failures.push(FanAxiomFailure::ConeNotSimplicial {
                    cone: cone.iter().copied().collect(),
                });
            }
        }
        if span_basis(&self.beta).rows() != self.rank {
            failures.push(FanAxiomFailure::RaysDoNotSpan);
        }
        if failures.is_empty() {
            // Pairwise intersections of maximal cones must be common faces;
            // for simplicial fans this propagates to all faces.
            'outer: for a in 0..self.max_cones.len() {
                for b in a + 1..self.max_cones.len() {
                    let ca = self.cone_geometry(&self.max_cones[a]);
                    let cb = self.cone_geometry(&self.max_cones[b]);
                    let inter = ca.intersection(&cb);
                    let face_of_both = inter.is_face_of(&ca).unwrap_or(false)
                        && inter.is_face_of(&cb).unwrap_or(false);
                    if !face_of_both {
                        failures.push(FanAxiomFailure::IntersectionNotCommonFace {
                            cone_a: self.max_cones[a].iter().copied().collect(),
                            cone_b: self.max_cones[b].iter().copied().collect(),
                        });
                        break 'outer;
                    }
                }
            }
        }
        let ok = failures.is_empty();
        let is_complete = ok && {
            let rays: Vec<IntVec> = (0..self.num_rays()).map(|i| self.primitive_ray(i)).collect();
            complete_rec(self.rank, &rays, &self.max_cones)
        };
        ValidationReport {
            ok,
            failures,
            is_complete,
        }
    }
}

/// Recursive link criterion for completeness of a simplicial fan:
/// in rank 1 both directions must be present; in rank n every maximal cone is
/// full-dimensional, every ridge lies in exactly two maximal cones, and the
/// link fan of every ray (star projected along the ray) is complete.
fn complete_rec(dim: usize, rays: &[IntVec], max_cones: &[BTreeSet<usize>]) -> bool {
    if max_cones.is_empty() {
        return false;
    }
    if dim == 1 {
        let mut pos = false;
        let mut neg = false;
        for cone in max_cones {
            for &i in cone {
                if rays[i][0].is_positive() {
                    pos = true;
                } else if rays[i][0].is_negative() {
                    neg = true;
                }
            }
        }
        return pos && neg;
    }
    if max_cones.iter().any(|c| c.len() != dim) {
        return false;
    }
    // Ridge condition.
    let mut ridge_count: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for cone in max_cones {
        for &drop in cone {
            let mut ridge = cone.clone();
            ridge.remove(&drop);
            *ridge_count.entry(ridge).or_insert(0) += 1;
        }
    }
    for ridge in ridge_count.keys() {
        let n = max_cones.iter().filter(|c| ridge.is_subset(c)).count();
        if n != 2 {
            return false;
        }
    }
    // Link of every ray.
    let used: BTreeSet<usize> = max_cones.iter().flatten().copied().collect();
    for &ray in &used {
        let star: Vec<&BTreeSet<usize>> = max_cones.iter().filter(|c| c.contains(&ray)).collect();
        let proj = kernel_basis(&IntMatrix::from_rows(&[rays[ray].clone()]));
        let link_rays_idx: BTreeSet<usize> = star
            .iter()
            .flat_map(|c| c.iter().copied())
            .filter(|&i| i != ray)
            .collect();
        let remap: BTreeMap<usize, usize> = link_rays_idx
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let link_rays: Vec<IntVec> = link_rays_idx
            .iter()
            .map(|&i| {
                let img: IntVec = (0..proj.rows())
                    .map(|k| lattice::dot(proj.row(k), &rays[i]))
                    .collect();
                primitivize(&img)
            })
            .collect();
        let link_cones: Vec<BTreeSet<usize>> = star
            .iter()
            .map(|c| c.iter().filter(|&&i| i != ray).map(|i| remap[i]).collect())
            .collect();
        if !complete_rec(dim - 1, &link_rays, &link_cones) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// Fan of a fake weighted projective space: n+1 rays in rank n whose beta
/// vectors satisfy sum m_i b_i = 0 with the given positive weights. The
/// lattice is the quotient of Z^{n+1} by the weight vector, presented in the
/// canonical annihilator basis.
pub fn make_fwps(weights: &[i64]) -> Result<StackyFan, FanError> {
    if weights.len() < 2 || weights.iter().any(|&w| w <= 0) {
        return Err(FanError::BadWeights);
    }
    let g = weights
        .iter()
        .fold(0i64, |acc, &w| acc.gcd(&w));
    if g != 1 {
        return Err(FanError::BadWeights);
    }
    let n = weights.len() - 1;
    let m = IntMatrix::from_i64_rows(&[weights.to_vec()]);
    // Rows of `q` are a basis of the covectors vanishing on the weight vector;
    // the quotient map Z^{n+1} -> Z^n is x |-> q x, so b_i is column i of q.
    let q = kernel_basis(&m);
    debug_assert_eq!(q.rows(), n);
    let beta: Vec<IntVec> = (0..=n).map(|i| q.col(i)).collect();
    let max_cones: Vec<Vec<usize>> = (0..=n)
        .map(|skip| (0..=n).filter(|&i| i != skip).collect())
        .collect();
    let label = format!(
        "fwps({})",
        weights
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    StackyFan::new(n, beta, max_cones, Some(label))
}

/// Quotient by a finite subgroup of the torus: the subgroup is given by
/// rational generators in N ⊗ Q, whose classes modulo N generate it. The new
/// lattice N' is generated by N together with these vectors; the beta vectors
/// are re-expressed in an HNF basis of N' and the cones are unchanged as
/// subsets of N_R.
pub fn quotient_by_subgroup(fan: &StackyFan, gens: &[RatVec]) -> Result<StackyFan, FanError> {
    let n = fan.rank();
    for g in gens {
        if g.len() != n {
            return Err(FanError::GeneratorLength {
                got: g.len(),
                expected: n,
            });
        }
    }
    if gens.is_empty() {
        return Ok(fan.clone());
    }
    // Common denominator: N' * d is an integer lattice between d*Z^n and Z^n.
    let mut d = BigInt::one();
    for g in gens {
        for x in g {
            d = d.lcm(x.denom());
        }
    }
    let mut scaled: Vec<IntVec> = Vec::new();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = d.clone();
        scaled.push(e);
    }
    for g in gens {
        scaled.push(g.iter().map(|x| x.numer() * (&d / x.denom())).collect());
    }
    let h = span_basis(&scaled); // n x n, full rank: contains d * Z^n
    debug_assert_eq!(h.rows(), n);
    // New basis vectors are rows of h / d; coordinates of b in that basis
    // solve b = c * (h / d), i.e. (h/d)^T c = b.
    let dq = BigRational::from(d.clone());
    let basis_t: Vec<RatVec> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(h[(j, i)].clone()) / &dq)
                .collect()
        })
        .collect();
    let mut new_beta: Vec<IntVec> = Vec::with_capacity(fan.num_rays());
    for b in fan.beta() {
        let rhs: RatVec = b.iter().map(|x| BigRational::from(x.clone())).collect();
        let c = solve_rational(&basis_t, &rhs).expect("basis spans the space");
        let ints: Option<IntVec> = c
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect();
        new_beta.push(ints.expect("old lattice vectors are integral in the overlattice"));
    }
    let max_cones: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    StackyFan::new(n, new_beta, max_cones, None)
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

struct CatalogEntry {
    name: &'static str,
    info: &'static str,
    rank: usize,
    beta: &'static [&'static [i64]],
    max_cones: &'static [&'static [usize]],
}

macro_rules! entry {
    ($name:literal, $info:literal, $rank:literal, [$([$($b:literal),*]),*], [$([$($c:literal),*]),*]) => {
        CatalogEntry {
            name: $name,
            info: $info,
            rank: $rank,
            beta: &[$(&[$($b),*]),*],
            max_cones: &[$(&[$($c),*]),*],
        }
    };
}

/// The sixteen rank-2 reflexive-polygon fans are face fans over the sixteen
/// lattice polygons whose unique interior lattice point is the origin; the
/// first five are the smooth toric Fano surfaces.
static CATALOG: &[CatalogEntry] = &[
    entry!("P1", "projective line", 1, [[1], [-1]], [[0], [1]]),
    entry!(
        "P2",
        "projective plane",
        2,
        [[1, 0], [0, 1], [-1, -1]],
        [[0, 1], [1, 2], [0, 2]]
    ),
    entry!(
        "P1xP1",
        "product of two projective lines",
        2,
        [[1, 0], [0, 1], [-1, 0], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]]
    ),
    entry!(
        "dP1",
        "del Pezzo surface of degree 8 (one blown-up point)",
        2,
        [[1, 0], [0, 1], [-1, 1], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]]
    ),
    entry!(
        "dP2",
        "del Pezzo surface of degree 7",
        2,
        [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]
    ),
    entry!(
        "dP3",
        "del Pezzo surface of degree 6, the reflexive hexagon",
        2,
        [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]]
    ),
    entry!(
        "nonunimodular-2d",
        "smooth complete fan that is exhaustive but not unimodular: the hull \
         of rays 1 and 2 contains ray 0, so their beta vectors span an \
         index-2 sublattice",
        2,
        [[1, 0], [1, 1], [1, -1], [-1, 0]],
        [[0, 1], [0, 2], [1, 3], [2, 3]]
    ),
    entry!(
        "nonexhaustive-3d",
        "incomplete fan over a square pyramid: the hull of rays 0,1,2 is not \
         a union of cones. The pyramid over the four rays is not simplicial, \
         so it is stored subdivided along the diagonal {0,3} into two \
         simplicial cones with the same support",
        3,
        [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [-1, -1, 1]],
        [[0, 1, 3], [0, 2, 3]]
    ),
    entry!(
        "octahedron-3d",
        "complete simplicial fan over the faces of the octahedron",
        3,
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
        [
            [0, 2, 4],
            [0, 2, 5],
            [0, 3, 4],
            [0, 3, 5],
            [1, 2, 4],
            [1, 2, 5],
            [1, 3, 4],
            [1, 3, 5]
        ]
    ),
    entry!(
        "subdivided-octahedron-3d",
        "octahedron fan with the positive octant subdivided through (1,1,1); \
         complete but not exhaustive: the hull of rays 1 and 6 is a wedge \
         that is not a union of cones",
        3,
        [
            [1, 0, 0],
            [-1, 0, 0],
            [0, 1, 0],
            [0, -1, 0],
            [0, 0, 1],
            [0, 0, -1],
            [1, 1, 1]
        ],
        [
            [0, 2, 6],
            [0, 4, 6],
            [2, 4, 6],
            [0, 2, 5],
            [0, 3, 4],
            [0, 3, 5],
            [1, 2, 4],
            [1, 2, 5],
            [1, 3, 4],
            [1, 3, 5]
        ]
    ),
    entry!(
        "nonunimodular-3d",
        "product of the nonunimodular-2d fan with a projective line; complete \
         but not unimodular",
        3,
        [
            [1, 0, 0],
            [1, 1, 0],
            [1, -1, 0],
            [-1, 0, 0],
            [0, 0, 1],
            [0, 0, -1]
        ],
        [
            [0, 1, 4],
            [0, 1, 5],
            [0, 2, 4],
            [0, 2, 5],
            [1, 3, 4],
            [1, 3, 5],
            [2, 3, 4],
            [2, 3, 5]
        ]
    ),
    // The sixteen reflexive-polygon fans, sorted by (vertices, boundary points).
    entry!(
        "reflexive-01",
        "reflexive triangle, 3 boundary points; the projective plane",
        2,
        [[1, 0], [0, 1], [-1, -1]],
        [[0, 1], [1, 2], [0, 2]]
    ),
    entry!(
        "reflexive-02",
        "reflexive triangle, 4 boundary points; weighted projective plane (1,1,2)",
        2,
        [[1, 0], [0, 1], [-1, -2]],
        [[0, 1], [1, 2], [0, 2]]
    ),
    entry!(
        "reflexive-03",
        "reflexive triangle, 6 boundary points; weighted projective plane (1,2,3)",
        2,
        [[1, 0], [0, 1], [-2, -3]],
        [[0, 1], [1, 2], [0, 2]]
    ),
    entry!(
        "reflexive-04",
        "reflexive triangle, 8 boundary points; dual of the (1,1,2) triangle",
        2,
        [[3, -1], [-1, 1], [-1, -1]],
        [[0, 1], [1, 2], [0, 2]]
    ),
    entry!(
        "reflexive-05",
        "reflexive triangle, 9 boundary points; quotient of the projective \
         plane by Z/3",
        2,
        [[2, -1], [-1, 2], [-1, -1]],
        [[0, 1], [1, 2], [0, 2]]
    ),
    entry!(
        "reflexive-06",
        "reflexive quadrilateral, 4 boundary points; product of two \
         projective lines",
        2,
        [[1, 0], [0, 1], [-1, 0], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]]
    ),
    entry!(
        "reflexive-07",
        "reflexive quadrilateral, 4 boundary points; del Pezzo of degree 8",
        2,
        [[1, 0], [0, 1], [-1, 1], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]]
    ),
    entry!(
        "reflexive-08",
        "reflexive quadrilateral, 5 boundary points",
        2,
        [[1, -1], [0, 1], [-1, 0], [-1, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]]
    ),
    entry!(
        "reflexive-09",
        "reflexive quadrilateral, 6 boundary points",
        2,
        [[1, -1], [1, 1], [-1, 0], [-1, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]]
    ),
    entry!(
        "reflexive-10",
        "reflexive quadrilateral, 7 boundary points",
        2,
        [[1, 0], [1, 2], [-2, -1], [-1, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]]
    ),
    entry!(
        "reflexive-11",
        "reflexive quadrilateral, 8 boundary points; the square, quotient of \
         the product of lines by Z/2",
        2,
        [[1, -1], [1, 1], [-1, 1], [-1, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]]
    ),
    entry!(
        "reflexive-12",
        "reflexive quadrilateral, 8 boundary points; dual of the degree-8 \
         del Pezzo quadrilateral",
        2,
        [[2, 1], [-1, 1], [-1, -1], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [0, 3]]
    ),
    entry!(
        "reflexive-13",
        "reflexive pentagon, 5 boundary points; del Pezzo of degree 7",
        2,
        [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]
    ),
    entry!(
        "reflexive-14",
        "reflexive pentagon, 6 boundary points",
        2,
        [[1, 0], [0, 1], [-1, 0], [-1, -1], [1, -1]],
        [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]
    ),
    entry!(
        "reflexive-15",
        "reflexive pentagon, 7 boundary points",
        2,
        [[1, 1], [0, 1], [-1, 0], [-1, -1], [1, -1]],
        [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]
    ),
    entry!(
        "reflexive-16",
        "reflexive hexagon, 6 boundary points; del Pezzo of degree 6",
        2,
        [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]]
    ),
];

/// A fixed named fan from the built-in catalog.
pub fn catalog(name: &str) -> Result<StackyFan, FanError> {
    let e = CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| FanError::UnknownName(name.to_owned()))?;
    let beta: Vec<Vec<i64>> = e.beta.iter().map(|b| b.to_vec()).collect();
    let cones: Vec<Vec<usize>> = e.max_cones.iter().map(|c| c.to_vec()).collect();
    StackyFan::from_i64(e.rank, &beta, &cones, Some(e.name))
}

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

pub fn catalog_info(name: &str) -> Option<&'static str> {
    CATALOG.iter().find(|e| e.name == name).map(|e| e.info)
}

/// Names of the sixteen reflexive-polygon fans.
pub fn reflexive_surface_names() -> Vec<String> {
    (1..=16).map(|k| format!("reflexive-{k:02}")).collect()
}

// ---------------------------------------------------------------------------
// Interchange format
// ---------------------------------------------------------------------------

/// The JSON fan format: ray indices are 0-based positions into "beta"; faces
/// are derived, so only maximal cones are listed.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub rank: usize,
    pub beta: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl FanJson {
    pub fn into_fan(self) -> Result<StackyFan, FanError> {
        StackyFan::from_i64(self.rank, &self.beta, &self.max_cones, self.name.as_deref())
    }

    /// Canonical form of a fan: max cones sorted, each cone's indices sorted.
    pub fn from_fan(fan: &StackyFan) -> Result<FanJson, FanError> {
        let beta: Option<Vec<Vec<i64>>> = fan
            .beta()
            .iter()
            .map(|b| b.iter().map(|x| i64::try_from(x).ok()).collect())
            .collect();
        Ok(FanJson {
            rank: fan.rank(),
            beta: beta.ok_or(FanError::ValueOutOfRange)?,
            max_cones: fan
                .max_cones()
                .iter()
                .map(|c| c.iter().copied().collect())
                .collect(),
            name: fan.name().map(str::to_owned),
        })
    }
}
