mod common;

use proptest::prelude::*;

use paired_egress::routing::{PairList, RoutingPlan};
use paired_egress::simulation::{check_pairing, estimate_loss, propagate, traversal_depths, DepthVector};
use paired_egress::topology::{build_network, reverse_network, reverse_states, DesignKind, SwitchState, SwitchStates};
use paired_egress::route;

fn design() -> impl Strategy<Value = DesignKind> {
    prop::sample::select(DesignKind::ALL.to_vec())
}

/// A random perfect matching on `n` photons, as a partner table.
fn matching(n: usize) -> impl Strategy<Value = PairList> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(move |order| {
        let pairs: Vec<(usize, usize)> = order.chunks(2).map(|p| (p[0], p[1])).collect();
        PairList::new(n, &pairs).unwrap()
    })
}

fn demand() -> impl Strategy<Value = (usize, PairList)> {
    (1usize..=24).prop_flat_map(|h| matching(2 * h).prop_map(move |p| (2 * h, p)))
}

fn states(n: usize) -> impl Strategy<Value = SwitchStates> {
    let s = n * n.saturating_sub(2) / 4;
    prop::collection::vec(prop::bool::ANY, s)
        .prop_map(|bits| SwitchStates(bits.into_iter().map(|c| if c { SwitchState::Cross } else { SwitchState::Bar }).collect()))
}

proptest! {
    #[test]
    fn routed_demands_pair_up(d in design(), (n, pl) in demand()) {
        let plan = route(d, n, &pl).unwrap();
        let net = build_network(d, n).unwrap();
        let perm = propagate(&net, &plan.states).unwrap();
        prop_assert!(perm.is_bijection());
        prop_assert_eq!(&perm.0, &plan.permuted);
        prop_assert_eq!(perm.0.clone(), common::simulate(&net, &plan.states));
        prop_assert!(check_pairing(&perm, &pl).unwrap().ok);
        prop_assert!(plan.states.cross_count() <= n * (n - 2) / 4);
        for (j, pair) in plan.bsa_assignment.iter() {
            prop_assert_eq!(pl.partner(pair.0), pair.1);
            prop_assert_eq!(perm.0[2 * j], pair.0);
        }
    }

    #[test]
    fn depths_stay_within_switch_count(d in design(), (n, pl) in demand()) {
        let plan = route(d, n, &pl).unwrap();
        let net = build_network(d, n).unwrap();
        let depth = traversal_depths(&net, &plan.states).unwrap();
        prop_assert_eq!(depth.0.iter().sum::<usize>(), 2 * net.len());
        prop_assert!(depth.0.iter().all(|&x| x <= net.len()));
        prop_assert_eq!(depth.0.clone(), common::depths(&net, &plan.states));
    }

    #[test]
    fn propagation_is_a_bijection(d in design(), st in (2usize..=16).prop_filter("even", |n| n % 2 == 0)
        .prop_flat_map(|n| (Just(n), states(n)))) {
        let (n, s) = st;
        let net = build_network(d, n).unwrap();
        let perm = propagate(&net, &s).unwrap();
        prop_assert!(perm.is_bijection());
        prop_assert_eq!(perm.inverse().inverse(), perm.clone());
        let back = propagate(&reverse_network(&net), &reverse_states(&s)).unwrap();
        prop_assert_eq!(back, perm.inverse());
    }

    #[test]
    fn reverse_twice_is_identity(d in design(), h in 1usize..=20) {
        let net = build_network(d, 2 * h).unwrap();
        prop_assert_eq!(reverse_network(&reverse_network(&net)), net);
    }

    #[test]
    fn pair_list_text_round_trips((n, pl) in demand()) {
        let text = pl.to_string();
        prop_assert_eq!(PairList::parse(&text, n).unwrap(), pl.clone());
        prop_assert_eq!(PairList::from_partners(pl.partners().to_vec()).unwrap(), pl);
    }

    #[test]
    fn plans_round_trip_through_json(d in design(), (n, pl) in demand()) {
        let plan = route(d, n, &pl).unwrap();
        prop_assert_eq!(RoutingPlan::from_json(&plan.to_json()).unwrap(), plan);
    }

    #[test]
    fn network_json_round_trips(d in design(), h in 1usize..=16, rev in any::<bool>()) {
        let mut net = build_network(d, 2 * h).unwrap();
        if rev {
            net = reverse_network(&net);
        }
        prop_assert_eq!(paired_egress::Network::from_json(&net.to_json()).unwrap(), net);
    }

    #[test]
    fn loss_is_linear_in_depth(
        depth in prop::collection::vec(0usize..100, 1..32),
        per in 0.0f64..2.0,
        base in 0.0f64..5.0,
    ) {
        let loss = estimate_loss(&DepthVector(depth.clone()), per, base).unwrap();
        for (&d, &l) in depth.iter().zip(&loss) {
            prop_assert!((l - (base + per * d as f64)).abs() < 1e-9);
            prop_assert!(l >= base);
        }
        // deeper never means less loss
        for a in 0..depth.len() {
            for b in 0..depth.len() {
                if depth[a] <= depth[b] {
                    prop_assert!(loss[a] <= loss[b] + 1e-12);
                }
            }
        }
    }

    #[test]
    fn negative_loss_parameters_rejected(per in -5.0f64..-1e-9) {
        prop_assert!(estimate_loss(&DepthVector(vec![1, 2]), per, 0.0).is_err());
        prop_assert!(estimate_loss(&DepthVector(vec![1, 2]), 0.0, per).is_err());
    }
}
