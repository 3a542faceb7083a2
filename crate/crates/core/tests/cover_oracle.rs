//! Independent oracle for the union-covering criterion in rank 2.
//!
//! Whether a convex cone equals a union of fan cones is decided in the
//! library by the face criterion (hull ∩ sigma is a face of sigma belonging
//! to the union's cone set, for every maximal sigma). In the plane the same
//! question is decidable by brute force: any gap between a union of rational
//! cones and a rational hull is a wedge bounded by two of the finitely many
//! boundary rays, and the mediant of two directions of coordinate height at
//! most H has height at most 2H, so scanning every primitive direction up to
//! twice the largest coordinate hits every nonempty gap. The two routes must
//! agree exactly.

use cragged_core::craggedness::{check_exhaustiveness, enumerate_integrality_patterns, lambda_fiber};
use cragged_core::polyhedra::Cone;
use cragged_core::stackyfan::StackyFan;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn angle_class(v: &(i64, i64)) -> u8 {
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
        0
    } else {
        1
    }
}

fn cross(a: &(i64, i64), b: &(i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn random_complete_fan_2d(rng: &mut ChaCha8Rng) -> StackyFan {
    loop {
        let k = rng.gen_range(3..=8usize);
        let mut dirs: BTreeSet<(i64, i64)> = BTreeSet::new();
        let mut attempts = 0;
        while dirs.len() < k && attempts < 200 {
            attempts += 1;
            let x = rng.gen_range(-5i64..=5);
            let y = rng.gen_range(-5i64..=5);
            if x == 0 && y == 0 {
                continue;
            }
            let g = x.gcd(&y);
            dirs.insert((x / g, y / g));
        }
        if dirs.len() < k {
            continue;
        }
        let mut dirs: Vec<(i64, i64)> = dirs.into_iter().collect();
        dirs.sort_by(|a, b| {
            angle_class(a)
                .cmp(&angle_class(b))
                .then_with(|| 0.cmp(&cross(a, b)))
        });
        if !(0..dirs.len()).all(|i| cross(&dirs[i], &dirs[(i + 1) % dirs.len()]) > 0) {
            continue;
        }
        let beta: Vec<Vec<i64>> = dirs
            .iter()
            .map(|&(x, y)| {
                let m = rng.gen_range(1i64..=3);
                vec![m * x, m * y]
            })
            .collect();
        let cones: Vec<Vec<usize>> = (0..dirs.len())
            .map(|i| vec![i, (i + 1) % dirs.len()])
            .collect();
        let fan = StackyFan::from_i64(2, &beta, &cones, None).unwrap();
        assert!(fan.is_valid() && fan.is_complete());
        return fan;
    }
}

/// All primitive directions with coordinates in [-bound, bound].
fn direction_grid(bound: i64) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if (x, y) == (0, 0) || x.gcd(&y) != 1 {
                continue;
            }
            out.push(vec![BigInt::from(x), BigInt::from(y)]);
        }
    }
    out
}

fn max_coord(fan: &StackyFan) -> i64 {
    fan.beta()
        .iter()
        .flatten()
        .map(|x| x.abs())
        .max()
        .unwrap()
        .try_into()
        .unwrap()
}

/// Brute force: is `hull` equal to the union of the fan cones drawn from
/// `allowed` (cone ids)? Exact for rank-2 fans when the grid bound is at
/// least twice the largest coordinate among hull and cone generators.
fn union_equals_hull_by_grid(
    fan: &StackyFan,
    hull: &Cone,
    allowed: &[usize],
    grid: &[Vec<BigInt>],
) -> bool {
    let cones: Vec<Cone> = allowed
        .iter()
        .map(|&id| fan.cone_geometry_by_id(id))
        .collect();
    // the union is always inside the hull; equality fails exactly when some
    // hull direction misses every allowed cone
    for d in grid {
        if hull.contains_int(d) && !cones.iter().any(|c| c.contains_int(d)) {
            return false;
        }
    }
    true
}

#[test]
fn covering_criterion_agrees_with_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(424242);
    for _ in 0..30 {
        let fan = random_complete_fan_2d(&mut rng);
        let bound = 2 * max_coord(&fan) + 1;
        let grid = direction_grid(bound);

        // exhaustiveness route: a reported witness must be refuted by the
        // grid; absence of a witness means every sampled subset is covered
        let (exhaustive, witness) = check_exhaustiveness(&fan).unwrap();
        match witness {
            Some(rays) => {
                assert!(!exhaustive);
                let hull = fan.cone_geometry(&rays.iter().copied().collect());
                let inside: Vec<usize> = (0..fan.all_cones().len())
                    .filter(|&id| {
                        fan.cone_rays(id)
                            .iter()
                            .all(|&i| hull.contains_int(&fan.beta()[i]))
                    })
                    .collect();
                assert!(
                    !union_equals_hull_by_grid(&fan, &hull, &inside, &grid),
                    "witness {rays:?} not confirmed on beta {:?}",
                    fan.beta()
                );
            }
            None => {
                assert!(exhaustive);
                for _ in 0..3 {
                    let subset: BTreeSet<usize> = (0..fan.num_rays())
                        .filter(|_| rng.gen_bool(0.5))
                        .collect();
                    let hull = fan.cone_geometry(&subset);
                    let inside: Vec<usize> = (0..fan.all_cones().len())
                        .filter(|&id| {
                            fan.cone_rays(id)
                                .iter()
                                .all(|&i| hull.contains_int(&fan.beta()[i]))
                        })
                        .collect();
                    assert!(
                        union_equals_hull_by_grid(&fan, &hull, &inside, &grid),
                        "subset {subset:?} of an exhaustive fan not covered"
                    );
                }
            }
        }

        // fiber route: the convexity verdict of each pattern fiber must match
        // the grid decision for "union of the pattern's cones equals the hull"
        for pattern in enumerate_integrality_patterns(&fan).iter().take(4) {
            let fiber = lambda_fiber(&fan, &pattern.representative_phi).unwrap();
            let rays: BTreeSet<usize> = fiber
                .s_phi
                .iter()
                .flat_map(|&id| fan.cone_rays(id).iter().copied())
                .collect();
            let hull = fan.cone_geometry(&rays);
            let by_grid = union_equals_hull_by_grid(&fan, &hull, &fiber.s_phi, &grid);
            assert_eq!(
                fiber.convex, by_grid,
                "fiber verdict disagrees with the grid oracle on beta {:?}, phi {:?}",
                fan.beta(),
                pattern.representative_phi
            );
        }
    }
}
