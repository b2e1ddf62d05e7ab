//! The narrated 8-vertex execution at α = 2.

use lastree::instances::sample_instance;
use lastree::last::{RelaxSource, TraceEvent};
use lastree::{evaluate, find_last_traced, minimum_spanning_tree, shortest_path_tree, Scalar};

#[test]
fn narrated_events() {
    let g = sample_instance();
    let t_m = minimum_spanning_tree(&g, 0).unwrap();
    let t_s = shortest_path_tree(&g, 0).unwrap();
    let alpha = Scalar::integer(2);
    let run = find_last_traced(&t_m, &t_s, 0, &alpha, true).unwrap();

    let visit = |v: usize| {
        run.trace
            .iter()
            .find_map(|e| match *e {
                TraceEvent::Visit {
                    vertex,
                    estimate,
                    spt_dist,
                    adds_path,
                } if vertex == v => Some((estimate, spt_dist, adds_path)),
                _ => None,
            })
            .unwrap()
    };
    // Vertex 4 is reached at 40 against a shortest distance of 15.
    assert_eq!(visit(4), (40, 15, true));
    assert_eq!(visit(6), (40, 15, true));
    assert_eq!(run.path_vertices, vec![4, 6]);

    let add_path_relax: Vec<(usize, usize, u64)> = run
        .trace
        .iter()
        .filter_map(|e| match *e {
            TraceEvent::Relax {
                source: RelaxSource::AddPath,
                from,
                to,
                estimate,
                changed: true,
                ..
            } => Some((from, to, estimate)),
            _ => None,
        })
        .collect();
    assert!(add_path_relax.contains(&(0, 4, 15)));
    // The path to 6 runs 0, 7, 6; 7 has not been reached by the walk yet.
    assert!(add_path_relax.contains(&(0, 7, 1)));
    assert!(add_path_relax.contains(&(7, 6, 15)));
    assert_eq!(
        (run.tree.parent(6), run.tree.parent(7), run.tree.parent(4)),
        (Some(7), Some(0), Some(0))
    );

    assert_eq!(run.relax_count, 17);
    assert!(run.relax_count <= 3 * (g.n() - 1));
    assert!(run.potential.holds(&alpha, t_m.weight()));
    assert_eq!(run.charging_violations, 0);

    let met = evaluate(&g, &run.tree, t_m.weight(), 0).unwrap();
    assert!(met.stretch_within(&alpha));
    assert!(met.weight_within(&Scalar::integer(3)));
}
