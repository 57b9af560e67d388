//! Structural invariants of the builders beyond the acceptance checks.

use rockforge_core::construct::{
    batch_schedule_2d, batch_schedule_3d, crooked_prism, lift_objective, monotone_path_on_graph,
    rock_extension, rock_extension_batched, Mode, Sense,
};
use rockforge_core::fixtures;
use rockforge_core::polytope::{
    build_graph, check_simplicity_with, z_increasing_eccentricity,
};
use rockforge_core::rational::{rat, Rational};

#[test]
fn certified_and_practical_agree_on_conclusions() {
    let (augmented, core) = fixtures::augment(&fixtures::square());
    let practical = rock_extension(&augmented, &core, Mode::Practical, None).unwrap();
    let certified = rock_extension(&augmented, &core, Mode::Certified, None).unwrap();
    // Different coefficient vectors, same structural conclusions.
    assert_ne!(practical.coefficients(), certified.coefficients());
    for rock in [&practical, &certified] {
        let graph = build_graph(rock.system()).unwrap();
        assert!(check_simplicity_with(rock.system(), &graph).unwrap().ok);
        let top = graph.unique_max_vertex(augmented.d()).unwrap();
        let ecc = z_increasing_eccentricity(&graph, augmented.d(), top).unwrap();
        assert!(ecc <= augmented.m() - augmented.d());
    }
    assert!(practical.params().d_factor <= certified.params().d_factor);
}

#[test]
fn batched_eccentricity_grows_one_per_level() {
    for n in [6usize, 8, 10, 12] {
        let (augmented, core) = fixtures::augment(&fixtures::polygon(n));
        let schedule = batch_schedule_2d(&augmented, &core).unwrap();
        let rock = rock_extension_batched(&augmented, &core, &schedule, Mode::Practical).unwrap();
        let d = augmented.d();
        // Eccentricity of each intermediate extension, innermost first.
        let mut previous: Option<usize> = None;
        for level in (0..=schedule.batches.len()).rev() {
            let rows = schedule.level_rows(&core, level);
            let partial = rock.sub_extension(&rows);
            let graph = build_graph(&partial).unwrap();
            let top = graph.unique_max_vertex(d).unwrap();
            let ecc = z_increasing_eccentricity(&graph, d, top).unwrap();
            if let Some(prev) = previous {
                assert!(
                    ecc <= prev + 1,
                    "n={n}: level {level} eccentricity {ecc} > {prev} + 1"
                );
            }
            previous = Some(ecc);
        }
    }
}

#[test]
fn prism_lifts_every_vertex_twice_and_keeps_the_top_edge() {
    let (augmented, core) = fixtures::augment(&fixtures::square());
    let rock = rock_extension(&augmented, &core, Mode::Practical, None).unwrap();
    let prism = crooked_prism(&rock);
    let q_graph = build_graph(rock.system()).unwrap();
    let hat_graph = build_graph(prism.system()).unwrap();
    assert!(check_simplicity_with(prism.system(), &hat_graph).unwrap().ok);
    assert_eq!(hat_graph.vertex_count(), 2 * q_graph.vertex_count());

    let third = Rational::new(1.into(), 3.into());
    let mut top_pair = (None, None);
    for rec in q_graph.vertices() {
        let z = rec.point.last().unwrap().clone();
        let mut lower = rec.point.clone();
        lower.push(&z * &third);
        let mut upper = rec.point.clone();
        upper.push(rat(1) - &z * &third);
        let lower_idx = hat_graph.find_vertex(&lower);
        let upper_idx = hat_graph.find_vertex(&upper);
        assert!(lower_idx.is_some() && upper_idx.is_some(), "lift of {:?}", rec.point);
        let top = q_graph.unique_max_vertex(rock.base().d()).unwrap();
        if rec.point == q_graph.vertices()[top].point {
            top_pair = (lower_idx, upper_idx);
        }
    }
    let (Some(t0), Some(t1)) = top_pair else {
        panic!("top vertex lifts missing")
    };
    assert!(hat_graph.neighbors(t0).contains(&t1), "top copies must share an edge");
}

#[test]
fn monotone_paths_within_bound_on_triangle_pyramid() {
    let rock =
        rock_extension(&fixtures::centered_triangle(), &[0, 1, 2], Mode::Practical, None).unwrap();
    let prism = crooked_prism(&rock);
    let graph = build_graph(prism.system()).unwrap();
    let base_graph = build_graph(rock.base()).unwrap();
    for c in [[1i64, 0], [-1, 0], [0, 1], [0, -1], [2, -3]] {
        let c: Vec<Rational> = c.iter().map(|&v| rat(v)).collect();
        for sense in [Sense::Min, Sense::Max] {
            let lifted = lift_objective(&prism, &c, sense, false).unwrap();
            for rec in base_graph.vertices() {
                let start = prism.embed_base_vertex(&rec.point);
                let idx = graph.find_vertex(&start).unwrap();
                let path = monotone_path_on_graph(&graph, &lifted.c_hat, idx).unwrap();
                assert!(path.len() <= prism.path_bound());
            }
        }
    }
}

#[test]
fn three_dimensional_schedule_peels_disjoint_facets() {
    let (augmented, core) = fixtures::augment(&fixtures::truncated_cube());
    let schedule = batch_schedule_3d(&augmented, &core).unwrap();
    assert!(schedule.batches.len() >= 2, "nine facets give at least two levels");
    let total: usize =
        schedule.batches.iter().map(Vec::len).sum::<usize>() + schedule.leftover.len();
    assert_eq!(total, augmented.m() - core.len());
    // The batched build accepts the schedule and all conclusions hold.
    let rock = rock_extension_batched(&augmented, &core, &schedule, Mode::Practical).unwrap();
    let graph = build_graph(rock.system()).unwrap();
    assert!(check_simplicity_with(rock.system(), &graph).unwrap().ok);
    let d = augmented.d();
    let top = graph.unique_max_vertex(d).unwrap();
    assert!(z_increasing_eccentricity(&graph, d, top).unwrap() <= augmented.m() - d);
}
