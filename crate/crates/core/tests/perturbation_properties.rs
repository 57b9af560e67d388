//! Radius-monotonicity and cone preservation of the perturbation.

use rockforge_core::fixtures;
use rockforge_core::perturb::{
    epsilon_bound, perturb_rhs, verify_perturbation_properties, Provenance,
};
use rockforge_core::polytope::extreme_rays;
use rockforge_core::rational::{pow2, rat, Rational};
use rockforge_core::system::InequalitySystem;

#[test]
fn smaller_radii_keep_passing() {
    let cases = [
        (fixtures::square(), vec![rat(1), rat(0)]),
        (
            fixtures::square().with_row(vec![rat(1), rat(1)], rat(2), None),
            vec![rat(-1), rat(-1)],
        ),
    ];
    for (system, c) in &cases {
        let eps = epsilon_bound(system, c);
        for j in [0u64, 1, 4] {
            let smaller = &eps / Rational::from_integer(pow2(j));
            let p = perturb_rhs(system, &smaller, Provenance::Manual);
            let report = verify_perturbation_properties(system, &p, c).unwrap();
            assert!(report.all_pass(), "radius eps/2^{j} must pass: {report:?}");
        }
    }
}

#[test]
fn recession_cones_match_on_unbounded_fixtures() {
    let systems = [
        InequalitySystem::from_int_rows(&[&[1, 0], &[0, 1]], &[1, 1]),
        InequalitySystem::from_int_rows(&[&[1, 1], &[1, -2], &[-1, 0]], &[3, 1, 0]),
        InequalitySystem::from_int_rows(&[&[1], &[-1]], &[2, 3]),
    ];
    for system in &systems {
        let p = perturb_rhs(system, &Rational::new(1.into(), 32.into()), Provenance::Manual);
        assert_eq!(
            extreme_rays(system).unwrap(),
            extreme_rays(p.perturbed()).unwrap()
        );
    }
}
