//! Property tests over the enumerated population: order-theoretic laws,
//! duality transport, file-format round trips, and suite determinism.

use proptest::prelude::*;
use std::sync::{Arc, OnceLock};
use unilat::construct::{check_u1_conditions, construct_u1, CheckOpts, MixedFilter};
use unilat::enumerate::{enumerate_lattices, enumerate_uninorms, run_iff_suite};
use unilat::io;
use unilat::{BinOpTable, EnumConfig, Lattice, Request, UnaryOpTable};

fn lattice_pool() -> &'static Vec<Arc<Lattice>> {
    static POOL: OnceLock<Vec<Arc<Lattice>>> = OnceLock::new();
    POOL.get_or_init(|| {
        enumerate_lattices(&EnumConfig {
            max_elements: 6,
            ..EnumConfig::default()
        })
    })
}

fn uninorm_pool() -> &'static Vec<BinOpTable> {
    static POOL: OnceLock<Vec<BinOpTable>> = OnceLock::new();
    POOL.get_or_init(|| {
        let cfg = EnumConfig {
            max_elements: 5,
            max_uninorms_per_interval: 200,
            ..EnumConfig::default()
        };
        let mut pool = Vec::new();
        for lat in enumerate_lattices(&cfg) {
            let full = lat.interval(lat.bottom(), lat.top()).unwrap();
            for e in 0..lat.len() {
                let (tables, _) = enumerate_uninorms(&lat, &full, e, &cfg);
                pool.extend(tables);
            }
        }
        pool
    })
}

#[test]
fn dual_is_an_involution() {
    for lat in lattice_pool() {
        let twice = lat.dual().dual();
        assert_eq!(twice.labels(), lat.labels());
        for x in 0..lat.len() {
            assert_eq!(twice.ups_mask(x), lat.ups_mask(x), "{}", lat.name());
        }
    }
}

#[test]
fn dual_swaps_bounds_and_keeps_cover_count() {
    for lat in lattice_pool() {
        let dual = lat.dual();
        assert_eq!(dual.bottom(), lat.top());
        assert_eq!(dual.top(), lat.bottom());
        assert_eq!(dual.covers().len(), lat.covers().len());
    }
}

#[test]
fn cover_relation_rebuilds_the_same_order() {
    for lat in lattice_pool() {
        let labels: Vec<&str> = lat.labels().iter().map(|s| s.as_str()).collect();
        let covers: Vec<(&str, &str)> = lat
            .covers()
            .iter()
            .map(|&(x, y)| (labels[x], labels[y]))
            .collect();
        let rebuilt = Lattice::from_covers(lat.name(), &labels, &covers).expect("valid covers");
        for x in 0..lat.len() {
            assert_eq!(rebuilt.ups_mask(x), lat.ups_mask(x), "{}", lat.name());
        }
    }
}

#[test]
fn incomparability_masks_complement_the_order() {
    for lat in lattice_pool() {
        for a in 0..lat.len() {
            let expected = lat.full_mask() & !(lat.ups_mask(a) | lat.downs_mask(a));
            assert_eq!(lat.inc_mask(a), expected);
        }
    }
}

#[test]
fn lattice_files_round_trip_for_the_whole_population() {
    for lat in lattice_pool() {
        let text = io::print_lattice(lat);
        let raw = io::parse_lattice_raw(&text).expect("printed form parses");
        let back = io::build_lattice(&raw).expect("printed form rebuilds");
        assert_eq!(back.labels(), lat.labels());
        for x in 0..lat.len() {
            assert_eq!(back.ups_mask(x), lat.ups_mask(x));
        }
    }
}

proptest! {
    #[test]
    fn join_and_meet_satisfy_the_lattice_laws(
        li in any::<prop::sample::Index>(),
        xi in any::<prop::sample::Index>(),
        yi in any::<prop::sample::Index>(),
        zi in any::<prop::sample::Index>(),
    ) {
        let pool = lattice_pool();
        let lat = &pool[li.index(pool.len())];
        let n = lat.len();
        let (x, y, z) = (xi.index(n), yi.index(n), zi.index(n));

        prop_assert_eq!(lat.join(x, y), lat.join(y, x));
        prop_assert_eq!(lat.meet(x, y), lat.meet(y, x));
        prop_assert_eq!(lat.join(x, x), x);
        prop_assert_eq!(lat.meet(x, lat.join(x, y)), x);
        prop_assert_eq!(lat.join(x, lat.meet(x, y)), x);
        prop_assert_eq!(lat.join(lat.join(x, y), z), lat.join(x, lat.join(y, z)));
        prop_assert_eq!(lat.meet(lat.meet(x, y), z), lat.meet(x, lat.meet(y, z)));

        // The join is the least upper bound, the meet the greatest lower.
        let j = lat.join(x, y);
        prop_assert_eq!(lat.leq(x, z) && lat.leq(y, z), lat.leq(j, z));
        let m = lat.meet(x, y);
        prop_assert_eq!(lat.leq(z, x) && lat.leq(z, y), lat.leq(z, m));
    }

    #[test]
    fn canonical_unary_maps_satisfy_their_axioms(
        li in any::<prop::sample::Index>(),
        ai in any::<prop::sample::Index>(),
    ) {
        let pool = lattice_pool();
        let lat = &pool[li.index(pool.len())];
        let a = ai.index(lat.len());

        prop_assert!(UnaryOpTable::identity_op(lat.clone()).is_closure().all_pass());
        prop_assert!(UnaryOpTable::identity_op(lat.clone()).is_interior().all_pass());
        prop_assert!(UnaryOpTable::canonical_closure(lat.clone(), a).is_closure().all_pass());
        prop_assert!(UnaryOpTable::canonical_interior(lat.clone(), a).is_interior().all_pass());
    }

    #[test]
    fn closures_transport_to_interiors_on_the_dual(
        li in any::<prop::sample::Index>(),
        ai in any::<prop::sample::Index>(),
    ) {
        let pool = lattice_pool();
        let lat = &pool[li.index(pool.len())];
        let a = ai.index(lat.len());
        let dual = Arc::new(lat.dual());

        let cl = UnaryOpTable::canonical_closure(lat.clone(), a);
        let transported = cl.with_lattice(dual.clone()).expect("same labels");
        prop_assert!(transported.is_interior().all_pass());

        let int = UnaryOpTable::canonical_interior(lat.clone(), a);
        let transported = int.with_lattice(dual).expect("same labels");
        prop_assert!(transported.is_closure().all_pass());
    }

    #[test]
    fn uninorms_restrict_to_norms_on_the_neutral_intervals(
        ti in any::<prop::sample::Index>(),
    ) {
        let pool = uninorm_pool();
        let table = &pool[ti.index(pool.len())];
        let lat = table.lattice().clone();
        let e = table.declared_neutral().expect("enumerated with a neutral");

        let below = table.restrict(&lat.interval(lat.bottom(), e).unwrap()).unwrap();
        prop_assert!(below.is_tnorm().expect("closed").all_pass());

        let above = table.restrict(&lat.interval(e, lat.top()).unwrap()).unwrap();
        prop_assert!(above.is_tconorm().expect("closed").all_pass());
    }

    #[test]
    fn table_files_round_trip_for_enumerated_uninorms(
        ti in any::<prop::sample::Index>(),
    ) {
        let pool = uninorm_pool();
        let table = &pool[ti.index(pool.len())];
        let text = io::print_table(table);
        let raw = io::parse_table_raw(&text).expect("printed form parses");
        let back = io::resolve_table(&raw, table.lattice().clone()).expect("resolves");
        prop_assert!(back.table_eq(table));
        prop_assert_eq!(back.declared_neutral(), table.declared_neutral());
    }
}

#[test]
fn suite_runs_are_deterministic() {
    let cfg = EnumConfig {
        max_elements: 4,
        seed: 7,
        ..EnumConfig::default()
    };
    for claim in ["u1", "duality", "partition"] {
        let a = run_iff_suite(claim, &cfg).unwrap();
        let b = run_iff_suite(claim, &cfg).unwrap();
        assert_eq!(a.instances, b.instances, "{claim}");
        assert_eq!(a.confirmations, b.confirmations, "{claim}");
        assert_eq!(a.counterexample_count, b.counterexample_count, "{claim}");
    }
}

#[test]
fn stored_counterexamples_reverify_on_reload() {
    let cfg = EnumConfig {
        max_elements: 5,
        ..EnumConfig::default()
    };
    let res = run_iff_suite("u1-anchor-filter", &cfg).unwrap();
    assert!(
        !res.counterexamples.is_empty(),
        "the alternate reading is expected to produce counterexamples"
    );
    let opts = CheckOpts {
        mixed_filter: MixedFilter::AgainstAnchor,
        ..CheckOpts::default()
    };
    for c in &res.counterexamples {
        let req = Request {
            lat: c.lattice.clone(),
            anchor: c.anchor,
            base: c.base.clone().expect("lower-extension instance"),
            neutral: c.neutral,
            unary: None,
            allow_degenerate: false,
        };
        let report = check_u1_conditions(&req, &opts).expect("stored instance is valid");
        assert_eq!(report.all_hold(), c.conditions_hold);
        let table = construct_u1(&req).expect("stored instance is valid");
        let passes = table
            .is_uninorm(c.neutral)
            .expect("closed table")
            .all_pass();
        assert_eq!(passes, c.table_passes);
    }
}

#[test]
fn lattice_count_at_seven_matches_the_independent_oracle() {
    let cfg = EnumConfig {
        max_elements: 7,
        ..EnumConfig::default()
    };
    let lats = enumerate_lattices(&cfg);
    let count = |n: usize| lats.iter().filter(|l| l.len() == n).count();
    assert_eq!(
        (count(2), count(3), count(4), count(5), count(6), count(7)),
        (1, 1, 2, 5, 15, 53)
    );
}
