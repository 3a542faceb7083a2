//! Exact rational cones and polyhedra.
//!
//! Cones are stored in a canonical V-form: an HNF basis of the saturated
//! lineality lattice plus canonically lifted primitive representatives of the
//! extreme rays of the pointed quotient. Equal cones therefore compare equal
//! as values. H-forms are obtained by the double description method; the
//! nominal ambient dimension is small (the interesting inputs live in
//! dimension <= 4), so we keep the algorithm simple and restore minimality
//! after every step instead of tracking adjacency incrementally.

use crate::lattice::{
    self, dot, dot_rat_int, kernel_basis, primitive_from_rational, primitivize, IntMatrix, IntVec,
    RatVec,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyhedraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone is not simplicial")]
    NotSimplicial,
    #[error("the contained polyhedron is empty")]
    EmptyInput,
}

// ---------------------------------------------------------------------------
// Double description: V-form of { x : a . x >= 0 for all a }.
// ---------------------------------------------------------------------------

/// Solve A x = b over the integers via Smith normal form.
fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<IntVec> {
    let (s, u, v) = lattice::smith_normal_form(a);
    let ub: IntVec = (0..u.rows()).map(|i| dot(u.row(i), b)).collect();
    let k = s.rows().min(s.cols());
    let mut y = vec![BigInt::zero(); s.cols()];
    for i in 0..k {
        let d = &s[(i, i)];
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    for item in ub.iter().skip(k) {
        if !item.is_zero() {
            return None;
        }
    }
    let x: IntVec = (0..v.rows())
        .map(|i| (0..v.cols()).map(|j| &v[(i, j)] * &y[j]).sum())
        .collect();
    Some(x)
}

fn matrix_or_empty(rows: &[IntVec], dim: usize) -> IntMatrix {
    if rows.is_empty() {
        IntMatrix::zero(0, dim)
    } else {
        IntMatrix::from_rows(rows)
    }
}

/// Reduce `x` modulo the integer row lattice of `basis` (HNF rows): brings the
/// coordinate at each pivot column into [0, pivot). Unique coset representative.
fn reduce_mod_lattice(basis: &[IntVec], x: &[BigInt]) -> IntVec {
    let mut out = x.to_vec();
    for row in basis {
        let Some(pc) = row.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let q = out[pc].div_floor(&row[pc]);
        if q.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o -= &q * r;
        }
    }
    out
}

/// Canonicalize a generating description (lineality vectors + rays) of a cone.
/// Returns the HNF basis of the saturated lineality lattice and the sorted
/// canonical lifts of the primitive extreme rays of the pointed quotient.
/// `ineqs` must be a valid H-description of the same cone (used for the
/// extremality test).
fn canonicalize_v_form(
    lin: &[IntVec],
    rays: &[IntVec],
    ineqs: &[IntVec],
    dim: usize,
) -> (Vec<IntVec>, Vec<IntVec>) {
    // Saturated lineality lattice: double annihilator.
    let lin_mat = matrix_or_empty(lin, dim);
    let ann = kernel_basis(&lin_mat); // covectors vanishing on the lineality
    let lin_canon = kernel_basis(&ann).row_vecs();

    let ineq_mat = matrix_or_empty(ineqs, dim);
    let total_rank = ineq_mat.rank();

    // Quotient coordinates and extremality filter.
    let mut seen: Vec<IntVec> = Vec::new();
    let mut lifted: Vec<IntVec> = Vec::new();
    for r in rays {
        let qc: IntVec = (0..ann.rows()).map(|i| dot(ann.row(i), r)).collect();
        if qc.iter().all(|v| v.is_zero()) {
            continue; // inside the lineality space
        }
        let qc = primitivize(&qc);
        if seen.contains(&qc) {
            continue;
        }
        // r is an extreme ray of the quotient iff its active inequalities
        // have rank exactly one less than the full system.
        let active: Vec<IntVec> = ineqs
            .iter()
            .filter(|a| dot(a, r).is_zero())
            .cloned()
            .collect();
        let active_rank = matrix_or_empty(&active, dim).rank();
        if total_rank == 0 || active_rank != total_rank - 1 {
            continue;
        }
        // Canonical lift: integral preimage of qc, reduced modulo the
        // lineality lattice. Any lift lies in the cone.
        let lift = solve_integer(&ann, &qc).expect("annihilator pairing is perfect");
        let lift = reduce_mod_lattice(&lin_canon, &lift);
        seen.push(qc);
        lifted.push(lift);
    }
    lifted.sort();
    lifted.dedup();
    (lin_canon, lifted)
}

/// V-form of { x in R^dim : a . x >= 0 for all a in ineqs }.
/// Output is canonical (see `canonicalize_v_form`).
pub(crate) fn dual_description(ineqs: &[IntVec], dim: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    let mut lin: Vec<IntVec> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<IntVec> = Vec::new();
    let mut processed: Vec<IntVec> = Vec::new();

    for a in ineqs {
        assert_eq!(a.len(), dim, "inequality dimension mismatch");
        if a.iter().all(|v| v.is_zero()) {
            continue;
        }
        let pivot = lin.iter().position(|l| !dot(a, l).is_zero());
        if let Some(p) = pivot {
            // Reduce the lineality by one and open a new ray along it.
            let mut l0 = lin.remove(p);
            let mut al0 = dot(a, &l0);
            if al0.is_negative() {
                l0 = l0.iter().map(|v| -v).collect();
                al0 = -al0;
            }
            for l in lin.iter_mut() {
                let al = dot(a, l);
                let combined: IntVec = l
                    .iter()
                    .zip(&l0)
                    .map(|(x, y)| &al0 * x - &al * y)
                    .collect();
                *l = primitivize(&combined);
            }
            for r in rays.iter_mut() {
                let ar = dot(a, r);
                let combined: IntVec = r
                    .iter()
                    .zip(&l0)
                    .map(|(x, y)| &al0 * x - &ar * y)
                    .collect();
                *r = primitivize(&combined);
            }
            rays.push(l0);
        } else {
            // Classic step: split rays by the sign of a.
            let mut plus = Vec::new();
            let mut zero = Vec::new();
            let mut minus = Vec::new();
            for r in rays.drain(..) {
                let ar = dot(a, &r);
                if ar.is_zero() {
                    zero.push(r);
                } else if ar.is_positive() {
                    plus.push((ar, r));
                } else {
                    minus.push((ar, r));
                }
            }
            let mut next: Vec<IntVec> = Vec::new();
            for (_, r) in &plus {
                next.push(r.clone());
            }
            next.extend(zero);
            for (ap, p) in &plus {
                for (aq, q) in &minus {
                    let w: IntVec = p
                        .iter()
                        .zip(q)
                        .map(|(pv, qv)| ap * qv - aq * pv)
                        .collect();
                    let w = primitivize(&w);
                    if !w.iter().all(|v| v.is_zero()) {
                        next.push(w);
                    }
                }
            }
            rays = next;
        }
        processed.push(a.clone());
        // Restore minimality: all-pairs generation leaves non-extreme junk.
        let (l2, r2) = canonicalize_v_form(&lin, &rays, &processed, dim);
        lin = l2;
        rays = r2;
    }
    canonicalize_v_form(&lin, &rays, &processed, dim)
}

// ---------------------------------------------------------------------------
// Cone
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct HForm {
    ineqs: Vec<IntVec>,
    equalities: Vec<IntVec>,
}

/// Closed rational polyhedral cone in canonical V-form.
#[derive(Debug, Clone)]
pub struct Cone {
    dim: usize,
    lineality: Vec<IntVec>,
    rays: Vec<IntVec>,
    facets: OnceLock<HForm>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.lineality == other.lineality && self.rays == other.rays
    }
}
impl Eq for Cone {}

impl Cone {
    /// The cone spanned by the given generators. Generators are normalized to
    /// primitive integer vectors; redundant generators are removed.
    pub fn from_generators(gens: &[IntVec], dim: usize) -> Result<Cone, PolyhedraError> {
        for g in gens {
            if g.len() != dim {
                return Err(PolyhedraError::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
        }
        let prim: Vec<IntVec> = gens
            .iter()
            .map(|g| primitivize(g))
            .filter(|g| !g.iter().all(|v| v.is_zero()))
            .collect();
        // Dual first: its V-form is an H-form for the original cone.
        let (dual_lin, dual_rays) = dual_description(&prim, dim);
        let mut ineqs = dual_rays.clone();
        for l in &dual_lin {
            ineqs.push(l.clone());
            ineqs.push(l.iter().map(|v| -v).collect());
        }
        let (lin, rays) = dual_description(&ineqs, dim);
        let cone = Cone {
            dim,
            lineality: lin,
            rays,
            facets: OnceLock::new(),
        };
        let _ = cone.facets.set(HForm {
            ineqs: dual_rays,
            equalities: dual_lin,
        });
        Ok(cone)
    }

    pub fn from_rational_generators(gens: &[RatVec], dim: usize) -> Result<Cone, PolyhedraError> {
        let ints: Vec<IntVec> = gens.iter().map(|g| primitive_from_rational(g)).collect();
        Cone::from_generators(&ints, dim)
    }

    /// Cone from an H-description: { x : a.x >= 0, e.x = 0 }.
    pub fn from_inequalities(
        ineqs: &[IntVec],
        equalities: &[IntVec],
        dim: usize,
    ) -> Cone {
        let mut all = ineqs.to_vec();
        for e in equalities {
            all.push(e.clone());
            all.push(e.iter().map(|v| -v).collect());
        }
        let (lin, rays) = dual_description(&all, dim);
        let cone = Cone {
            dim,
            lineality: lin,
            rays,
            facets: OnceLock::new(),
        };
        let _ = cone.facets.set(HForm {
            ineqs: ineqs.to_vec(),
            equalities: equalities.to_vec(),
        });
        cone
    }

    pub fn origin(dim: usize) -> Cone {
        Cone::from_generators(&[], dim).expect("no generators to mismatch")
    }

    pub fn full_space(dim: usize) -> Cone {
        Cone::from_inequalities(&[], &[], dim)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Canonical primitive representatives of the extreme rays (mod lineality).
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    /// HNF basis of the saturated lineality lattice.
    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    /// Generators in the V-form sense: rays plus both signs of the lineality basis.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|v| -v).collect());
        }
        g
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        let mut rows = self.rays.clone();
        rows.extend(self.lineality.iter().cloned());
        matrix_or_empty(&rows, self.dim).rank()
    }

    fn hform(&self) -> &HForm {
        self.facets.get_or_init(|| {
            let (dual_lin, dual_rays) = dual_description(&self.generators(), self.dim);
            HForm {
                ineqs: dual_rays,
                equalities: dual_lin,
            }
        })
    }

    /// Facet inequalities (covectors nonnegative on the cone); together with
    /// `span_equalities` these cut out the cone exactly.
    pub fn facet_inequalities(&self) -> Vec<IntVec> {
        self.hform().ineqs.clone()
    }

    pub fn span_equalities(&self) -> Vec<IntVec> {
        self.hform().equalities.clone()
    }

    /// Exact membership of a rational point.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        let h = self.hform();
        h.ineqs.iter().all(|a| !dot_rat_int(x, a).is_negative())
            && h.equalities.iter().all(|e| dot_rat_int(x, e).is_zero())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        let h = self.hform();
        h.ineqs.iter().all(|a| !dot(x, a).is_negative())
            && h.equalities.iter().all(|e| dot(x, e).is_zero())
    }

    /// Polar dual { u : u.g >= 0 for all generators g }.
    pub fn dual(&self) -> Cone {
        let gens = self.generators();
        let (lin, rays) = dual_description(&gens, self.dim);
        let cone = Cone {
            dim: self.dim,
            lineality: lin,
            rays,
            facets: OnceLock::new(),
        };
        // The original generators are a valid H-form of the dual.
        let _ = cone.facets.set(HForm {
            ineqs: self.rays.clone(),
            equalities: self.lineality.clone(),
        });
        cone
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let (h1, h2) = (self.hform(), other.hform());
        let mut ineqs = h1.ineqs.clone();
        ineqs.extend(h2.ineqs.iter().cloned());
        let mut eqs = h1.equalities.clone();
        eqs.extend(h2.equalities.iter().cloned());
        Cone::from_inequalities(&ineqs, &eqs, self.dim)
    }

    /// The reflection -C.
    pub fn negated(&self) -> Cone {
        let gens: Vec<IntVec> = self
            .generators()
            .iter()
            .map(|g| g.iter().map(|v| -v).collect())
            .collect();
        Cone::from_generators(&gens, self.dim).expect("dimensions preserved")
    }

    /// Whether self is a face of the simplicial cone `sigma`, i.e. the cone on
    /// a subset of sigma's generators.
    pub fn is_face_of(&self, sigma: &Cone) -> Result<bool, PolyhedraError> {
        if !sigma.is_pointed() || sigma.span_dim() != sigma.rays.len() {
            return Err(PolyhedraError::NotSimplicial);
        }
        if !self.is_pointed() {
            return Ok(false);
        }
        Ok(self.rays.iter().all(|r| sigma.rays.contains(r)))
    }
}

// ---------------------------------------------------------------------------
// Polyhedron
// ---------------------------------------------------------------------------

/// H-form polyhedron { x : a.x >= c } with integral data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    ineqs: Vec<(IntVec, BigInt)>,
}

/// V-representation of a polyhedron: rational vertices, integral recession
/// rays, and an integral lineality basis.
#[derive(Debug, Clone)]
pub struct VRep {
    pub vertices: Vec<RatVec>,
    pub rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
}

impl Polyhedron {
    pub fn new(dim: usize, ineqs: Vec<(IntVec, BigInt)>) -> Polyhedron {
        for (a, _) in &ineqs {
            assert_eq!(a.len(), dim, "inequality dimension mismatch");
        }
        Polyhedron { dim, ineqs }
    }

    pub fn whole_space(dim: usize) -> Polyhedron {
        Polyhedron::new(dim, Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[(IntVec, BigInt)] {
        &self.ineqs
    }

    pub fn contains_point(&self, x: &[BigRational]) -> bool {
        assert_eq!(x.len(), self.dim);
        self.ineqs
            .iter()
            .all(|(a, c)| dot_rat_int(x, a) >= BigRational::from(c.clone()))
    }

    pub fn contains_int_point(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.dim);
        self.ineqs.iter().all(|(a, c)| dot(x, a) >= *c)
    }

    /// V-representation via the homogenization cone in one extra dimension.
    pub fn vrep(&self) -> VRep {
        let n = self.dim;
        let mut hom: Vec<IntVec> = Vec::with_capacity(self.ineqs.len() + 1);
        for (a, c) in &self.ineqs {
            let mut v = a.clone();
            v.push(-c.clone());
            hom.push(v);
        }
        let mut t_pos = vec![BigInt::zero(); n + 1];
        t_pos[n] = BigInt::from(1);
        hom.push(t_pos);
        let (lin, rays) = dual_description(&hom, n + 1);
        let mut vertices = Vec::new();
        let mut rec_rays = Vec::new();
        let mut lineality = Vec::new();
        for l in lin {
            debug_assert!(l[n].is_zero(), "lineality escapes t = 0");
            lineality.push(l[..n].to_vec());
        }
        for r in rays {
            let t = &r[n];
            if t.is_zero() {
                rec_rays.push(r[..n].to_vec());
            } else {
                debug_assert!(t.is_positive());
                let tq = BigRational::from(t.clone());
                vertices.push(
                    r[..n]
                        .iter()
                        .map(|x| BigRational::from(x.clone()) / &tq)
                        .collect(),
                );
            }
        }
        VRep {
            vertices,
            rays: rec_rays,
            lineality,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vrep().vertices.is_empty()
    }

    /// Whether every point of the V-representation data satisfies this
    /// polyhedron's inequalities (i.e. conv(v) + cone(rays) + span(lin) is
    /// contained in self).
    pub fn contains_vrep(&self, v: &VRep) -> bool {
        for (a, c) in &self.ineqs {
            let cq = BigRational::from(c.clone());
            for vert in &v.vertices {
                if dot_rat_int(vert, a) < cq {
                    return false;
                }
            }
            for ray in &v.rays {
                if dot(ray, a).is_negative() {
                    return false;
                }
            }
            for l in &v.lineality {
                if !dot(l, a).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Exact containment self ⊆ other. Errors if self is empty.
    pub fn is_subset_of(&self, other: &Polyhedron) -> Result<bool, PolyhedraError> {
        if self.dim != other.dim {
            return Err(PolyhedraError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let v = self.vrep();
        if v.vertices.is_empty() {
            return Err(PolyhedraError::EmptyInput);
        }
        Ok(other.contains_vrep(&v))
    }

    /// All integer points of the polyhedron with every coordinate in [-k, k],
    /// in lexicographic order. Recursive coordinate-interval propagation: the
    /// per-coordinate bounds are tightened exactly for each fixed prefix.
    pub fn lattice_points_in_box(&self, k: u64) -> Vec<IntVec> {
        let n = self.dim;
        let kk = BigInt::from(k);
        let mut out: Vec<IntVec> = Vec::new();
        if n == 0 {
            if self.ineqs.iter().all(|(_, c)| !c.is_positive()) {
                out.push(Vec::new());
            }
            return out;
        }
        let mut cur = vec![BigInt::zero(); n];
        self.enumerate_rec(0, &kk, &mut cur, &mut out);
        out
    }

    fn enumerate_rec(&self, j: usize, k: &BigInt, cur: &mut IntVec, out: &mut Vec<IntVec>) {
        let n = self.dim;
        let mut lo = -k.clone();
        let mut hi = k.clone();
        for (a, c) in &self.ineqs {
            let known: BigInt = (0..j).map(|i| &a[i] * &cur[i]).sum();
            let tail: BigInt = (j + 1..n).map(|i| a[i].abs() * k).sum();
            let bound = c - known - tail;
            let aj = &a[j];
            if aj.is_zero() {
                if bound.is_positive() {
                    return;
                }
            } else if aj.is_positive() {
                let b = bound.div_ceil(aj);
                if b > lo {
                    lo = b;
                }
            } else {
                let b = bound.div_floor(aj);
                if b < hi {
                    hi = b;
                }
            }
        }
        let mut x = lo;
        while x <= hi {
            cur[j] = x.clone();
            if j + 1 == n {
                out.push(cur.clone());
            } else {
                self.enumerate_rec(j + 1, k, cur, out);
            }
            x += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    fn cone(gens: &[Vec<i64>], dim: usize) -> Cone {
        let g: Vec<IntVec> = gens.iter().map(|v| int_vec(v)).collect();
        Cone::from_generators(&g, dim).unwrap()
    }

    #[test]
    fn from_generators_primitivizes_and_prunes() {
        let c = cone(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(c.rays(), &[int_vec(&[0, 1]), int_vec(&[1, 0])]);
        assert!(c.lineality().is_empty());

        let c = cone(&[vec![1, 0], vec![2, 0]], 2);
        assert_eq!(c.rays(), &[int_vec(&[1, 0])]);

        let c = cone(&[vec![1, 1], vec![1, -1], vec![1, 0]], 2);
        assert_eq!(c.rays(), &[int_vec(&[1, -1]), int_vec(&[1, 1])]);
    }

    #[test]
    fn contains_examples() {
        let c = cone(&[vec![1, 0], vec![0, 1]], 2);
        assert!(c.contains_int(&int_vec(&[3, 5])));
        assert!(!c.contains_int(&int_vec(&[-1, 0])));
        let c = cone(&[vec![1, 1], vec![1, -1]], 2);
        assert!(c.contains_int(&int_vec(&[1, 0])));
        for g in c.generators() {
            assert!(c.contains_int(&g));
        }
    }

    #[test]
    fn dual_examples() {
        let orthant = cone(&[vec![1, 0], vec![0, 1]], 2);
        assert_eq!(orthant.dual(), orthant);

        let origin = Cone::origin(2);
        assert_eq!(origin.dual(), Cone::full_space(2));
        assert_eq!(Cone::full_space(2).rays().len(), 0);
        assert_eq!(Cone::full_space(2).lineality().len(), 2);

        let halfplane = cone(&[vec![1, 2]], 2).dual();
        let expected = cone(&[vec![2, -1], vec![-2, 1], vec![1, 2]], 2);
        assert_eq!(halfplane, expected);
    }

    #[test]
    fn dual_involution_small() {
        let cones = vec![
            cone(&[vec![1, 0], vec![0, 1]], 2),
            cone(&[vec![1, 2]], 2),
            cone(&[vec![1, 1], vec![1, -1]], 2),
            Cone::origin(3),
            Cone::full_space(3),
            cone(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]], 3),
            cone(&[vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 1]], 3),
        ];
        for c in cones {
            assert_eq!(c.dual().dual(), c);
        }
    }

    #[test]
    fn intersection_examples() {
        let orthant = cone(&[vec![1, 0], vec![0, 1]], 2);
        let half = Cone::from_inequalities(&[int_vec(&[1, 0])], &[], 2);
        assert_eq!(orthant.intersection(&half), orthant);

        let c1 = cone(&[vec![1, 1], vec![1, -1]], 2);
        let c2 = cone(&[vec![1, 1], vec![-1, 0]], 2);
        assert_eq!(c1.intersection(&c2), cone(&[vec![1, 1]], 2));

        let r1 = cone(&[vec![1, 0]], 2);
        let r2 = cone(&[vec![-1, 0]], 2);
        assert_eq!(r1.intersection(&r2), Cone::origin(2));
    }

    #[test]
    fn face_examples() {
        let sigma = cone(&[vec![1, 0], vec![0, 1]], 2);
        assert!(cone(&[vec![1, 0]], 2).is_face_of(&sigma).unwrap());
        assert!(!cone(&[vec![1, 1]], 2).is_face_of(&sigma).unwrap());
        assert!(sigma.is_face_of(&sigma).unwrap());
        assert!(Cone::origin(2).is_face_of(&sigma).unwrap());

        let bad = cone(&[vec![1, 0], vec![-1, 0]], 2);
        assert!(matches!(
            cone(&[vec![1, 0]], 2).is_face_of(&bad),
            Err(PolyhedraError::NotSimplicial)
        ));
    }

    #[test]
    fn opposite_inequalities_collapse_to_an_equality() {
        let a = int_vec(&[1, 2]);
        let neg: IntVec = a.iter().map(|v| -v).collect();
        let via_ineqs = Cone::from_inequalities(&[a.clone(), neg], &[], 2);
        let via_equality = Cone::from_inequalities(&[], &[a], 2);
        assert_eq!(via_ineqs, via_equality);
        assert_eq!(via_ineqs.lineality().len(), 1);
        assert!(via_ineqs.rays().is_empty());
    }

    #[test]
    fn face_matches_supporting_hyperplane_view() {
        // For a simplicial cone, faces are exactly sigma ∩ {u = 0} for facet
        // covectors u, plus sigma itself.
        let sigma = cone(&[vec![1, 0, 0], vec![1, 2, 0], vec![0, 0, 1]], 3);
        for u in sigma.facet_inequalities() {
            let mut ineqs = sigma.facet_inequalities();
            ineqs.retain(|v| v != &u);
            let face = sigma.intersection(&Cone::from_inequalities(&[], &[u], 3));
            assert!(face.is_face_of(&sigma).unwrap());
        }
    }

    #[test]
    fn polyhedron_containment() {
        let p = Polyhedron::new(1, vec![(int_vec(&[1]), BigInt::from(0))]);
        let q = Polyhedron::new(1, vec![(int_vec(&[1]), BigInt::from(-1))]);
        assert!(p.is_subset_of(&q).unwrap());
        let q2 = Polyhedron::new(1, vec![(int_vec(&[1]), BigInt::from(1))]);
        assert!(!p.is_subset_of(&q2).unwrap());
        assert!(p.is_subset_of(&p).unwrap());

        let empty = Polyhedron::new(
            1,
            vec![
                (int_vec(&[1]), BigInt::from(0)),
                (int_vec(&[-1]), BigInt::from(1)),
            ],
        );
        assert!(matches!(
            empty.is_subset_of(&q),
            Err(PolyhedraError::EmptyInput)
        ));
    }

    #[test]
    fn vrep_shapes() {
        // [0, inf): one vertex, one ray.
        let p = Polyhedron::new(1, vec![(int_vec(&[1]), BigInt::from(0))]);
        let v = p.vrep();
        assert_eq!(v.vertices.len(), 1);
        assert_eq!(v.rays, vec![int_vec(&[1])]);
        assert!(v.lineality.is_empty());

        // whole line: lineality only.
        let v = Polyhedron::whole_space(1).vrep();
        assert_eq!(v.vertices.len(), 1);
        assert!(v.rays.is_empty());
        assert_eq!(v.lineality, vec![int_vec(&[1])]);

        // triangle-ish wedge with shifted apex: x >= 1, y >= 2.
        let p = Polyhedron::new(
            2,
            vec![
                (int_vec(&[1, 0]), BigInt::from(1)),
                (int_vec(&[0, 1]), BigInt::from(2)),
            ],
        );
        let v = p.vrep();
        assert_eq!(v.vertices.len(), 1);
        assert_eq!(
            v.vertices[0],
            vec![BigRational::from(BigInt::from(1)), BigRational::from(BigInt::from(2))]
        );
        assert_eq!(v.rays.len(), 2);
    }

    #[test]
    fn lattice_points_examples() {
        let p = Polyhedron::new(1, vec![(int_vec(&[1]), BigInt::from(0))]);
        let pts = p.lattice_points_in_box(5);
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], int_vec(&[0]));
        assert_eq!(pts[5], int_vec(&[5]));

        let empty = Polyhedron::new(
            1,
            vec![
                (int_vec(&[1]), BigInt::from(0)),
                (int_vec(&[-1]), BigInt::from(1)),
            ],
        );
        assert_eq!(empty.lattice_points_in_box(10).len(), 0);

        assert_eq!(Polyhedron::whole_space(1).lattice_points_in_box(3).len(), 7);

        // sorted lexicographically
        let p = Polyhedron::whole_space(2);
        let pts = p.lattice_points_in_box(1);
        assert_eq!(pts.len(), 9);
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
    }

    #[test]
    fn lattice_points_match_brute_force() {
        let p = Polyhedron::new(
            2,
            vec![
                (int_vec(&[1, 1]), BigInt::from(-1)),
                (int_vec(&[-2, 3]), BigInt::from(-4)),
                (int_vec(&[0, -1]), BigInt::from(-3)),
            ],
        );
        let fast = p.lattice_points_in_box(4);
        let mut brute = Vec::new();
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                let v = int_vec(&[x, y]);
                if p.contains_int_point(&v) {
                    brute.push(v);
                }
            }
        }
        brute.sort();
        assert_eq!(fast, brute);
    }
}
