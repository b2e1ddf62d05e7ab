use lastree::instances::{
    compose_union, gen_3sat, gen_lower_bound, gen_random, ratio_bound_formula, sample_instance, LowerBoundSpec,
    SatConstants, SatFormula, SatGadget,
};
use lastree::oracle::{has_last, min_beta_exhaustive, min_beta_for_alpha};
use lastree::{dijkstra, minimum_spanning_tree, Rational, Scalar};

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn spec(leaves: usize) -> LowerBoundSpec {
    LowerBoundSpec {
        alpha: Scalar::integer(2),
        epsilon: Scalar::ratio(1, 10),
        delta: Scalar::ratio(1, 100),
        leaves,
    }
}

#[test]
fn lower_bound_geometry() {
    for leaves in 1..=4 {
        let inst = gen_lower_bound(&spec(leaves)).unwrap();
        let s = inst.scale as i128;
        // MST = (α+1) + ℓ(α-1+ε) = 3 + 1.1ℓ
        let mst = minimum_spanning_tree(&inst.graph, 0).unwrap().weight();
        assert_eq!(mst, inst.predicted_mst_weight);
        assert_eq!(
            Rational::from_integer(mst as i128),
            (r(3, 1) + r(11, 10) * r(leaves as i128, 1)) * r(s, 1)
        );
        let dist = dijkstra(&inst.graph, 0).dist;
        for &leaf in &inst.leaves {
            assert_eq!(dist[leaf], Some(2 * inst.scale));
        }
        // Through the center: A + B = 2α + ε.
        assert_eq!(
            Rational::from_integer(dist[inst.center].unwrap() as i128),
            r(3, 1) * r(s, 1)
        );
        let to_leaf = inst.graph.distance(inst.center, inst.leaves[0]).unwrap().unwrap() as i128;
        assert_eq!(
            Rational::from_integer(dist[inst.center].unwrap() as i128 + to_leaf),
            r(41, 10) * r(s, 1)
        );
    }
}

#[test]
fn lower_bound_oracle_matches_enumeration() {
    let inst = gen_lower_bound(&spec(3)).unwrap();
    let fast = min_beta_for_alpha(&inst.graph, 0, &Scalar::integer(2)).unwrap();
    assert!(fast.beta >= ratio_bound_formula(r(2, 1), r(1, 10), r(1, 100), 3));
    if inst.graph.m() <= 20 {
        assert_eq!(
            fast.beta,
            min_beta_exhaustive(&inst.graph, 0, &Scalar::integer(2)).unwrap()
        );
    }
}

#[test]
fn sat_constants_meet_requirements() {
    for alpha in [r(11, 10), r(3, 2), r(2, 1), r(169, 70), r(4, 1), r(10, 1)] {
        assert!(
            SatConstants::for_alpha(alpha).satisfies_requirements(alpha),
            "alpha {alpha}"
        );
    }
}

#[test]
fn sat_gadget_mst_weight() {
    // Subdivided paths lie in every MST; each clause then hangs off a literal by B.
    let f: SatFormula = "p cnf 2 2\n1 -2 2 0\n-1 -1 2 0\n".parse().unwrap();
    let g = gen_3sat(&f, &Scalar::ratio(3, 2)).unwrap();
    let [a, b, d, e, _] = g.weights;
    let mst = minimum_spanning_tree(&g.graph, SatGadget::ROOT).unwrap().weight();
    assert_eq!(mst, d + 2 * (a + e) + 2 * b);
    assert_eq!(g.weights, [12, 18, 36, 24, 56]);
}

#[test]
fn sat_gadget_examples() {
    let alpha = Scalar::integer(2);
    let sat = SatFormula::new(1, vec![[1, 1, 1]]).unwrap();
    let unsat = SatFormula::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
    assert!(has_last(&gen_3sat(&sat, &alpha).unwrap().graph, 0, &alpha, &Scalar::one()).unwrap());
    assert!(!has_last(&gen_3sat(&unsat, &alpha).unwrap().graph, 0, &alpha, &Scalar::one()).unwrap());
    assert!(gen_3sat(&SatFormula::new(1, vec![]).unwrap(), &alpha).is_err());
}

#[test]
fn union_mst_and_beta() {
    let alpha = Scalar::integer(2);
    let g_star = gen_lower_bound(&spec(1)).unwrap().graph;
    let g_prime = gen_random(6, 10, 9, 3).unwrap();
    let b_star = min_beta_for_alpha(&g_star, 0, &alpha).unwrap().beta;
    let b_prime = min_beta_for_alpha(&g_prime, 0, &alpha).unwrap().beta;
    let m_star = minimum_spanning_tree(&g_star, 0).unwrap().weight() as i128;
    for c in [r(1, 2), r(2, 1), r(3, 7)] {
        let g = compose_union(&g_star, &g_prime, c).unwrap();
        assert_eq!(g.n(), g_star.n() + g_prime.n() - 1);
        let mst = minimum_spanning_tree(&g, 0).unwrap().weight() as i128;
        // g_star's MST is rescaled to one unit.
        let unit = Rational::new(mst, 1) / (Rational::from_integer(1) + c);
        assert_eq!(unit.denom(), &1);
        assert_eq!(unit.to_integer() % m_star, 0);
        let beta = min_beta_for_alpha(&g, 0, &alpha).unwrap().beta;
        assert_eq!(beta, (b_star + b_prime * c) / (Rational::from_integer(1) + c));
    }
    assert_eq!(compose_union(&g_star, &g_prime, r(0, 1)).unwrap(), g_star);
}

#[test]
fn generators_are_deterministic() {
    assert_eq!(gen_random(20, 40, 50, 7).unwrap(), gen_random(20, 40, 50, 7).unwrap());
    assert_ne!(gen_random(20, 40, 50, 7).unwrap(), gen_random(20, 40, 50, 8).unwrap());
    assert!(gen_random(5, 3, 5, 0).is_err());
    assert!(gen_random(5, 11, 5, 0).is_err());
}

#[test]
fn sample_instance_distances() {
    let g = sample_instance();
    let dist: Vec<u64> = dijkstra(&g, 0).dist.into_iter().map(Option::unwrap).collect();
    assert_eq!(dist, vec![0, 11, 22, 21, 15, 25, 15, 1]);
    assert_eq!(minimum_spanning_tree(&g, 0).unwrap().weight(), 60);
}
