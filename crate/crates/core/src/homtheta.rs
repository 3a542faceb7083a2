//! Characters on cones, shifted dual cones, the exact containment criterion
//! for translated duals, and hom dimensions between the theta generators
//! indexed by pairs (cone, character).
//!
//! Hom spaces between generators are semigroup algebras on the lattice points
//! of a shifted dual cone; those are infinite-dimensional when the cone is not
//! full-dimensional, so the API reports box-truncated counts together with the
//! enumerated points rather than a total dimension. Higher ext groups between
//! generators vanish identically and are exposed as a constant.

use crate::lattice::{dot, IntVec};
use crate::polyhedra::Polyhedron;
use crate::stackyfan::StackyFan;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("cone {tau} is not a face of cone {sigma}")]
    NotAFace { sigma: usize, tau: usize },
    #[error("character on cone {cone} has {got} values, expected {expected}")]
    BadCharacter {
        cone: usize,
        got: usize,
        expected: usize,
    },
    #[error("covector has length {got}, expected the fan rank {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("cone id {0} out of range")]
    BadConeId(usize),
}

/// A character on a cone: integer values on the beta generators of the cone,
/// listed in increasing ray-index order. For a simplicial cone those
/// generators are a basis of its beta sublattice, so any integer tuple is a
/// valid character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub cone: usize,
    pub values: IntVec,
}

impl Character {
    pub fn new(fan: &StackyFan, cone: usize, values: IntVec) -> Result<Character, HomError> {
        if cone >= fan.all_cones().len() {
            return Err(HomError::BadConeId(cone));
        }
        let expected = fan.cone_rays(cone).len();
        if values.len() != expected {
            return Err(HomError::BadCharacter {
                cone,
                got: values.len(),
                expected,
            });
        }
        Ok(Character { cone, values })
    }

    pub fn zero(fan: &StackyFan, cone: usize) -> Result<Character, HomError> {
        let expected = fan
            .all_cones()
            .get(cone)
            .ok_or(HomError::BadConeId(cone))?
            .len();
        Character::new(fan, cone, vec![BigInt::from(0); expected])
    }
}

/// Ext dimensions in nonzero degree between theta generators: identically 0.
pub const HIGHER_EXT_DIMENSION: usize = 0;

/// Truncated dimension data for a hom space between two generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDimension {
    /// True exactly when the target cone is not a face of the source cone.
    pub zero: bool,
    pub truncated_count: usize,
    /// The box bound: points were enumerated with all coordinates in [-k, k].
    pub box_bound: u64,
    /// The enumerated lattice points, lexicographically sorted.
    pub basis_points: Vec<IntVec>,
}

fn is_face(fan: &StackyFan, tau: usize, sigma: usize) -> bool {
    fan.cone_rays(tau).is_subset(fan.cone_rays(sigma))
}

/// Restriction of a character along a face inclusion tau ⊆ sigma: the
/// sub-tuple of values on the rays of tau.
pub fn restrict_character(
    fan: &StackyFan,
    sigma: usize,
    chi: &Character,
    tau: usize,
) -> Result<Character, HomError> {
    check_character(fan, sigma, chi)?;
    if !is_face(fan, tau, sigma) {
        return Err(HomError::NotAFace { sigma, tau });
    }
    let sigma_rays: Vec<usize> = fan.cone_rays(sigma).iter().copied().collect();
    let values: IntVec = fan
        .cone_rays(tau)
        .iter()
        .map(|i| {
            let pos = sigma_rays.iter().position(|j| j == i).expect("face rays");
            chi.values[pos].clone()
        })
        .collect();
    Character::new(fan, tau, values)
}

fn check_character(fan: &StackyFan, cone: usize, chi: &Character) -> Result<(), HomError> {
    if chi.cone != cone || cone >= fan.all_cones().len() {
        return Err(HomError::BadConeId(cone));
    }
    if chi.values.len() != fan.cone_rays(cone).len() {
        return Err(HomError::BadCharacter {
            cone,
            got: chi.values.len(),
            expected: fan.cone_rays(cone).len(),
        });
    }
    Ok(())
}

/// The shifted dual cone of tau at chi: all x with <x, b_i> >= chi_i for every
/// ray i of tau. For the zero cone this is the whole space.
pub fn shifted_dual_cone(
    fan: &StackyFan,
    tau: usize,
    chi: &Character,
) -> Result<Polyhedron, HomError> {
    check_character(fan, tau, chi)?;
    let ineqs: Vec<(IntVec, BigInt)> = fan
        .cone_rays(tau)
        .iter()
        .zip(&chi.values)
        .map(|(&i, c)| (fan.beta()[i].clone(), c.clone()))
        .collect();
    Ok(Polyhedron::new(fan.rank(), ineqs))
}

/// Both forms of the containment test for shifted dual cones:
/// `polyhedral` decides sigma^v_{chi1} ⊆ tau^v_{chi2 + xi} exactly;
/// `combinatorial` evaluates [tau ⊆ sigma and -xi ∈ tau^v_{chi2 - chi1}].
/// The two agree: the infimum of <., b> over sigma^v_{chi1} for b in tau ⊆
/// sigma is chi1(b), which yields the sign on xi.
pub fn containment_predicate(
    fan: &StackyFan,
    sigma: usize,
    chi1: &Character,
    tau: usize,
    chi2: &Character,
    xi: &IntVec,
) -> Result<(bool, bool), HomError> {
    check_character(fan, sigma, chi1)?;
    check_character(fan, tau, chi2)?;
    if xi.len() != fan.rank() {
        return Err(HomError::DimensionMismatch {
            got: xi.len(),
            expected: fan.rank(),
        });
    }
    let p = shifted_dual_cone(fan, sigma, chi1)?;
    let xi_on_tau: IntVec = fan
        .cone_rays(tau)
        .iter()
        .map(|&i| dot(xi, &fan.beta()[i]))
        .collect();
    let shifted: IntVec = chi2
        .values
        .iter()
        .zip(&xi_on_tau)
        .map(|(c, x)| c + x)
        .collect();
    let q = shifted_dual_cone(fan, tau, &Character::new(fan, tau, shifted)?)?;
    let polyhedral = q.contains_vrep(&p.vrep());

    let combinatorial = if is_face(fan, tau, sigma) {
        let chi1_tau = restrict_character(fan, sigma, chi1, tau)?;
        fan.cone_rays(tau)
            .iter()
            .zip(chi2.values.iter().zip(&chi1_tau.values))
            .all(|(&i, (c2, c1))| {
                let neg_xi = -dot(xi, &fan.beta()[i]);
                neg_xi >= c2 - c1
            })
    } else {
        false
    };
    Ok((polyhedral, combinatorial))
}

/// Hom dimension between the generators (sigma, chi1) and (tau, chi2): zero
/// unless tau is a face of sigma; otherwise the lattice points of the shifted
/// dual cone tau^v_{chi2 - chi1|tau} in the box [-k, k]^rank.
pub fn hom_dimension(
    fan: &StackyFan,
    sigma: usize,
    chi1: &Character,
    tau: usize,
    chi2: &Character,
    k: u64,
) -> Result<HomDimension, HomError> {
    check_character(fan, sigma, chi1)?;
    check_character(fan, tau, chi2)?;
    if !is_face(fan, tau, sigma) {
        return Ok(HomDimension {
            zero: true,
            truncated_count: 0,
            box_bound: k,
            basis_points: Vec::new(),
        });
    }
    let chi1_tau = restrict_character(fan, sigma, chi1, tau)?;
    let delta: IntVec = chi2
        .values
        .iter()
        .zip(&chi1_tau.values)
        .map(|(c2, c1)| c2 - c1)
        .collect();
    let poly = shifted_dual_cone(fan, tau, &Character::new(fan, tau, delta)?)?;
    let basis_points = poly.lattice_points_in_box(k);
    Ok(HomDimension {
        zero: false,
        truncated_count: basis_points.len(),
        box_bound: k,
        basis_points,
    })
}

/// Matrix of hom dimensions over a list of generators: entry (i, j) is the
/// hom data from generator i to generator j.
pub fn hom_matrix(
    fan: &StackyFan,
    generators: &[Character],
    k: u64,
) -> Result<Vec<Vec<HomDimension>>, HomError> {
    let mut out = Vec::with_capacity(generators.len());
    for src in generators {
        let mut row = Vec::with_capacity(generators.len());
        for dst in generators {
            row.push(hom_dimension(fan, src.cone, src, dst.cone, dst, k)?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Box-count of integral covectors xi realizing the polyhedral containment;
/// equals the lattice-point count of tau^v_{chi2 - chi1} in the reflected box
/// via xi -> -xi.
pub fn containment_count_in_box(
    fan: &StackyFan,
    sigma: usize,
    chi1: &Character,
    tau: usize,
    chi2: &Character,
    k: u64,
) -> Result<usize, HomError> {
    check_character(fan, sigma, chi1)?;
    check_character(fan, tau, chi2)?;
    let p = shifted_dual_cone(fan, sigma, chi1)?;
    let pv = p.vrep();
    let n = fan.rank();
    let mut count = 0usize;
    let mut xi = vec![-BigInt::from(k); n];
    let kk = BigInt::from(k);
    loop {
        let xi_on_tau: IntVec = fan
            .cone_rays(tau)
            .iter()
            .map(|&i| dot(&xi, &fan.beta()[i]))
            .collect();
        let shifted: IntVec = chi2
            .values
            .iter()
            .zip(&xi_on_tau)
            .map(|(c, x)| c + x)
            .collect();
        let q = shifted_dual_cone(fan, tau, &Character::new(fan, tau, shifted)?)?;
        if q.contains_vrep(&pv) {
            count += 1;
        }
        let mut l = 0;
        loop {
            xi[l] += 1;
            if xi[l] <= kk {
                break;
            }
            xi[l] = -kk.clone();
            l += 1;
            if l == n {
                return Ok(count);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;
    use crate::stackyfan::catalog;
    use std::collections::BTreeSet;

    fn chr(fan: &StackyFan, rays: &[usize], values: &[i64]) -> Character {
        let set: BTreeSet<usize> = rays.iter().copied().collect();
        let id = fan.cone_id(&set).expect("cone exists");
        Character::new(fan, id, int_vec(values)).unwrap()
    }

    #[test]
    fn restrict_examples() {
        let p2 = catalog("P2").unwrap();
        let sigma = chr(&p2, &[0, 1], &[3, -1]);
        let tau_id = p2.cone_id(&[0usize].into_iter().collect()).unwrap();
        let r = restrict_character(&p2, sigma.cone, &sigma, tau_id).unwrap();
        assert_eq!(r.values, int_vec(&[3]));

        let same = restrict_character(&p2, sigma.cone, &sigma, sigma.cone).unwrap();
        assert_eq!(same.values, sigma.values);

        let zero = restrict_character(&p2, sigma.cone, &sigma, 0).unwrap();
        assert!(zero.values.is_empty());

        let other = p2.cone_id(&[2usize].into_iter().collect()).unwrap();
        assert!(matches!(
            restrict_character(&p2, sigma.cone, &sigma, other),
            Err(HomError::NotAFace { .. })
        ));
    }

    #[test]
    fn shifted_dual_examples() {
        let p1 = catalog("P1").unwrap();
        let tau = chr(&p1, &[0], &[0]);
        let p = shifted_dual_cone(&p1, tau.cone, &tau).unwrap();
        assert_eq!(p.inequalities(), &[(int_vec(&[1]), BigInt::from(0))]);

        let tau = chr(&p1, &[0], &[-2]);
        let p = shifted_dual_cone(&p1, tau.cone, &tau).unwrap();
        assert_eq!(p.inequalities(), &[(int_vec(&[1]), BigInt::from(-2))]);

        let p2 = catalog("P2").unwrap();
        let tau = chr(&p2, &[0, 1], &[1, 1]);
        let p = shifted_dual_cone(&p2, tau.cone, &tau).unwrap();
        assert_eq!(
            p.inequalities(),
            &[
                (int_vec(&[1, 0]), BigInt::from(1)),
                (int_vec(&[0, 1]), BigInt::from(1))
            ]
        );

        // zero cone: whole space
        let zero = Character::zero(&p2, 0).unwrap();
        assert!(shifted_dual_cone(&p2, 0, &zero).unwrap().inequalities().is_empty());
    }

    #[test]
    fn containment_examples() {
        let p1 = catalog("P1").unwrap();
        let plus = chr(&p1, &[0], &[0]);
        let minus = chr(&p1, &[1], &[0]);

        let (poly, comb) =
            containment_predicate(&p1, plus.cone, &plus, plus.cone, &plus, &int_vec(&[-1]))
                .unwrap();
        assert!(poly && comb);
        // the literal reading with +xi would reject this xi
        assert!(dot(&int_vec(&[-1]), &p1.beta()[0]) < BigInt::from(0));

        let (poly, comb) =
            containment_predicate(&p1, plus.cone, &plus, minus.cone, &minus, &int_vec(&[5]))
                .unwrap();
        assert!(!poly && !comb);

        let (poly, comb) =
            containment_predicate(&p1, plus.cone, &plus, plus.cone, &plus, &int_vec(&[0]))
                .unwrap();
        assert!(poly && comb);
    }

    #[test]
    fn polyhedral_matches_combinatorial() {
        let fans = [catalog("P2").unwrap(), catalog("nonunimodular-2d").unwrap()];
        for fan in &fans {
            for sigma in 0..fan.all_cones().len() {
                for tau in 0..fan.all_cones().len() {
                    let chi1 = Character::new(
                        fan,
                        sigma,
                        (0..fan.cone_rays(sigma).len())
                            .map(|v| BigInt::from(v as i64 - 1))
                            .collect(),
                    )
                    .unwrap();
                    let chi2 = Character::new(
                        fan,
                        tau,
                        (0..fan.cone_rays(tau).len())
                            .map(|v| BigInt::from(1 - v as i64))
                            .collect(),
                    )
                    .unwrap();
                    for xi in [int_vec(&[0, 0]), int_vec(&[1, -2]), int_vec(&[-3, 1])] {
                        let (p, c) =
                            containment_predicate(fan, sigma, &chi1, tau, &chi2, &xi).unwrap();
                        assert_eq!(p, c, "sigma={sigma} tau={tau} xi={xi:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn hom_examples() {
        let p1 = catalog("P1").unwrap();
        let plus = chr(&p1, &[0], &[0]);
        let zero = Character::zero(&p1, 0).unwrap();

        let h = hom_dimension(&p1, plus.cone, &plus, plus.cone, &plus, 5).unwrap();
        assert!(!h.zero);
        assert_eq!(h.truncated_count, 6);
        assert_eq!(h.basis_points.first().unwrap(), &int_vec(&[0]));
        assert_eq!(h.basis_points.last().unwrap(), &int_vec(&[5]));

        let h = hom_dimension(&p1, 0, &zero, plus.cone, &plus, 5).unwrap();
        assert!(h.zero);
        assert_eq!(h.truncated_count, 0);

        let h = hom_dimension(&p1, plus.cone, &plus, 0, &zero, 3).unwrap();
        assert!(!h.zero);
        assert_eq!(h.truncated_count, 7);
    }

    #[test]
    fn hom_matrix_examples() {
        let p1 = catalog("P1").unwrap();
        let gens = vec![
            chr(&p1, &[0], &[0]),
            chr(&p1, &[1], &[0]),
            Character::zero(&p1, 0).unwrap(),
        ];
        let m = hom_matrix(&p1, &gens, 3).unwrap();
        assert_eq!(m.len(), 3);
        // zeros exactly where the target cone is not a face of the source
        assert!(!m[0][0].zero && m[0][0].truncated_count == 4);
        assert!(m[0][1].zero);
        assert!(!m[0][2].zero && m[0][2].truncated_count == 7);
        assert!(m[1][0].zero);
        assert!(m[2][0].zero && m[2][1].zero);
        assert!(!m[2][2].zero && m[2][2].truncated_count == 7);
        // diagonal entries always contain the identity
        for (i, row) in m.iter().enumerate() {
            assert!(row[i].truncated_count >= 1);
        }

        let single = vec![Character::zero(&p1, 0).unwrap()];
        let m = hom_matrix(&p1, &single, 3).unwrap();
        assert_eq!(m[0][0].truncated_count, 7); // (2k+1)^1

        let empty: Vec<Character> = Vec::new();
        assert!(hom_matrix(&p1, &empty, 3).unwrap().is_empty());
    }

    #[test]
    fn counting_containment_duality_small() {
        let p2 = catalog("P2").unwrap();
        let sigma = chr(&p2, &[0, 1], &[1, -1]);
        let tau = chr(&p2, &[0], &[2]);
        let k = 3;
        let by_containment =
            containment_count_in_box(&p2, sigma.cone, &sigma, tau.cone, &tau, k).unwrap();
        let by_points = hom_dimension(&p2, sigma.cone, &sigma, tau.cone, &tau, k)
            .unwrap()
            .truncated_count;
        assert_eq!(by_containment, by_points);
    }

    #[test]
    fn character_translation_stability() {
        // Shifting both characters by the restriction of the same integral
        // covector leaves the defining polyhedron unchanged.
        let p2 = catalog("P2").unwrap();
        let sigma_id = p2.cone_id(&[0usize, 1].into_iter().collect()).unwrap();
        let tau_id = p2.cone_id(&[1usize].into_iter().collect()).unwrap();
        let chi1 = chr(&p2, &[0, 1], &[2, -1]);
        let chi2 = chr(&p2, &[1], &[4]);
        let m = int_vec(&[3, -5]);
        let shift = |cone: usize, chi: &Character| -> Character {
            let values: IntVec = p2
                .cone_rays(cone)
                .iter()
                .zip(&chi.values)
                .map(|(&i, v)| v + dot(&m, &p2.beta()[i]))
                .collect();
            Character::new(&p2, cone, values).unwrap()
        };
        let h1 = hom_dimension(&p2, sigma_id, &chi1, tau_id, &chi2, 4).unwrap();
        let h2 = hom_dimension(
            &p2,
            sigma_id,
            &shift(sigma_id, &chi1),
            tau_id,
            &shift(tau_id, &chi2),
            4,
        )
        .unwrap();
        assert_eq!(h1, h2);

        // Shifting only the target translates the polyhedron by m exactly:
        // counts agree between the box and the shifted box.
        let delta_chi2 = shift(tau_id, &chi2);
        let p_shifted = {
            let chi1_tau = restrict_character(&p2, sigma_id, &chi1, tau_id).unwrap();
            let delta: IntVec = delta_chi2
                .values
                .iter()
                .zip(&chi1_tau.values)
                .map(|(a, b)| a - b)
                .collect();
            shifted_dual_cone(&p2, tau_id, &Character::new(&p2, tau_id, delta).unwrap()).unwrap()
        };
        let p_orig = {
            let chi1_tau = restrict_character(&p2, sigma_id, &chi1, tau_id).unwrap();
            let delta: IntVec = chi2
                .values
                .iter()
                .zip(&chi1_tau.values)
                .map(|(a, b)| a - b)
                .collect();
            shifted_dual_cone(&p2, tau_id, &Character::new(&p2, tau_id, delta).unwrap()).unwrap()
        };
        // translate-by-m bijection on a generous box
        let big = 8u64;
        let orig_pts = p_orig.lattice_points_in_box(big);
        let translated: Vec<IntVec> = orig_pts
            .iter()
            .map(|p| p.iter().zip(&m).map(|(a, b)| a + b).collect())
            .collect();
        for t in &translated {
            assert!(p_shifted.contains_int_point(t));
        }
    }

    #[test]
    fn monotone_in_box_bound() {
        let p2 = catalog("P2").unwrap();
        let sigma = chr(&p2, &[0, 1], &[0, 0]);
        let mut last = 0;
        for k in 0..5 {
            let h = hom_dimension(&p2, sigma.cone, &sigma, sigma.cone, &sigma, k).unwrap();
            assert!(h.truncated_count >= last);
            last = h.truncated_count;
        }
    }
}
