use anglesum::angles::{angle_sums, SamplingConfig};
use anglesum::complexes::gluing::{random_split, random_voxels};
use anglesum::complexes::glue;
use anglesum::constructions::{eval_expr, ConstructionExpr};
use anglesum::curved::{self, CurvedPolytope, Geometry};
use anglesum::relations::{check_euler, check_gram, check_perles};
use anglesum::vectors::{alpha_from_gamma, f_from_h, gamma_from_alpha, h_from_f};
use anglesum::{AlphaFVector, Error, FVector, Scalar, VPolytope};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice_points(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, d), d + 2..d + 9)
}

fn exact_hull(pts: &[Vec<i64>]) -> Option<VPolytope> {
    let p = VPolytope::hull(pts.iter().map(|v| v.iter().map(|&x| Scalar::int(x)).collect()).collect()).ok()?;
    (p.dim() == pts[0].len()).then_some(p)
}

fn unit(v: &[f64]) -> Vec<f64> {
    let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / r).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_and_gram_on_lattice_hulls(pts in lattice_points(3)) {
        let Some(p) = exact_hull(&pts) else { return Ok(()) };
        let f = p.lattice().f_vector();
        prop_assert_eq!(check_euler(&f).residual, Scalar::zero());
        let a = angle_sums(&p, &SamplingConfig::with_samples(4000)).unwrap();
        let g = check_gram(&a, None);
        prop_assert!(g.pass, "{}", g);
    }

    #[test]
    fn gram_in_four_dimensions(pts in lattice_points(4)) {
        let Some(p) = exact_hull(&pts) else { return Ok(()) };
        let a = angle_sums(&p, &SamplingConfig::with_samples(20_000)).unwrap();
        let g = check_gram(&a, None);
        prop_assert!(g.pass, "{}", g);
    }

    #[test]
    fn perles_on_simplicial_hulls(seed in any::<u64>(), n in 4usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|_| unit(&anglesum::angles::gaussian_vec(&mut rng, 3)))
            .collect();
        let Ok(p) = VPolytope::hull_f64(pts) else { return Ok(()) };
        prop_assume!(p.dim() == 3 && anglesum::facelattice::is_simplicial(p.lattice()));
        let af = AlphaFVector::new(angle_sums(&p, &SamplingConfig::default()).unwrap(), p.lattice().f_vector()).unwrap();
        for k in -1..=2 {
            let r = check_perles(&af, k, None).unwrap();
            prop_assert!(r.pass, "{}", r);
        }
    }

    #[test]
    fn h_and_f_round_trip(d in 1usize..8, inner in prop::collection::vec(0i64..200, 8)) {
        let f = FVector::polytope(d, &inner[..d]).unwrap();
        prop_assert_eq!(f_from_h(&h_from_f(&f)).unwrap(), f);
    }

    #[test]
    fn gamma_and_alpha_round_trip(d in 1usize..8, nums in prop::collection::vec((-50i64..50, 1i64..12), 8)) {
        let inner: Vec<Scalar> = nums[..d].iter().map(|&(n, m)| Scalar::ratio(n, m)).collect();
        let a = anglesum::AlphaVector::euclidean(d, inner).unwrap();
        prop_assert_eq!(alpha_from_gamma(&gamma_from_alpha(&a)), a);
    }

    #[test]
    fn constructions_satisfy_gram(
        ops in prop::collection::vec(prop::sample::select(vec!["B*", "P0", "Pinf", "P[2]", "Pinf^2"]), 1..5),
        base in prop::sample::select(vec!["point", "seg", "tri", "sq"]),
    ) {
        let expr = format!("{} {base}", ops.join(" "));
        let e: ConstructionExpr = expr.parse().unwrap();
        let again: ConstructionExpr = e.to_string().parse().unwrap();
        prop_assert_eq!(&again, &e);
        let af = match eval_expr(&e) {
            Ok(ev) => ev.af,
            // finite pyramids need a realization, which limiting nodes drop
            Err(Error::Realization(_)) => return Ok(()),
            Err(other) => return Err(TestCaseError::fail(other.to_string())),
        };
        let g = check_gram(&af.alpha, None);
        prop_assert!(g.pass, "{}", g);
        if af.alpha.is_exact() {
            prop_assert_eq!(g.residual, Scalar::zero());
        }
        prop_assert_eq!(check_euler(&af.f).residual, Scalar::zero());
    }

    #[test]
    fn refinement_keeps_characteristics(seed in any::<u64>(), d in 2usize..4, n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_voxels(d, n, &mut rng);
        let r = v.refine();
        prop_assert_eq!(r.chi_alpha(), v.chi_alpha());
        prop_assert_eq!(r.chi_boundary(), v.chi_boundary());
        prop_assert_eq!(r.flats_chi_alpha(), v.flats_chi_alpha());
    }

    #[test]
    fn gluings_obey_valuations(seed in any::<u64>(), d in 2usize..4, n in 2usize..12) {
        let (a, b) = random_split(d, n, seed);
        let g = glue(&a, &b).unwrap();
        prop_assert!(g.report.all_pass(), "{:?} {:?}", g.spec, g.report);
    }

    #[test]
    fn klein_polygons_satisfy_gram(n in 3usize..9, r in 0.05f64..0.95, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = curved::random_klein_polytope(2, n, r, &mut rng);
        let a = curved::hyperbolic_alpha(&p, &SamplingConfig::default()).unwrap();
        prop_assert!(a.volume().to_f64() > 0.0);
        let g = curved::check_generalized_gram(&a, Some(1e-9));
        prop_assert!(g.pass, "{}", g);
        for k in 0..=1 {
            prop_assert_eq!(curved::check_curved_perles(&a, k, None).unwrap().residual, Scalar::zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn spherical_tetrahedra_satisfy_gram(seed in any::<u64>(), spread in 0.2f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<Vec<f64>> = (0..4)
            .map(|_| {
                let g = anglesum::angles::gaussian_vec(&mut rng, 4);
                let mut v: Vec<f64> = g.iter().map(|x| spread * x).collect();
                v[0] = 1.0;
                unit(&v)
            })
            .collect();
        let Ok(p) = CurvedPolytope::new(Geometry::Spherical, pts) else { return Ok(()) };
        let a = curved::spherical_alpha(&p, &SamplingConfig::default()).unwrap();
        let g = curved::check_generalized_gram(&a, Some(1e-6));
        prop_assert!(g.pass, "{}", g);
        for k in -1..=2 {
            let r = curved::check_curved_perles(&a, k, Some(1e-6)).unwrap();
            prop_assert!(r.pass, "{}", r);
        }
    }
}
