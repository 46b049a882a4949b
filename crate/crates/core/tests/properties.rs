//! Seeded property suites over random hypersurface and polynomial instances.

use std::collections::BTreeMap;

use proptest::prelude::*;
use reldep::fuzz::{generate, FuzzConfig, FuzzInstance, RingFamily};
use reldep::gtheory::{approximation_les, complete_resolution, gtor_table, proper_resolution, tate_les};
use reldep::invariants::{Bounds, ConclusionStatus, PairAnalysis, TheoremId};
use reldep::oracle::cross_check;
use reldep::resolve::{certified_projective_dimension, tor_table};

const BOUNDS: Bounds = Bounds { tor_bound: 8, tate_window: 6, max_degree: 12 };

fn pair(inst: &FuzzInstance) -> PairAnalysis {
    PairAnalysis::new(("M", &inst.m), ("N", &inst.n), &[], BOUNDS).unwrap()
}

fn params(r: i64) -> BTreeMap<String, i64> {
    BTreeMap::from([("r".to_string(), r)])
}

fn assert_holds(id: TheoremId, inst: &FuzzInstance, p: &BTreeMap<String, i64>) {
    let v = pair(inst).verify(id, p);
    assert!(
        matches!(v.conclusion_status, ConclusionStatus::Holds | ConclusionStatus::Vacuous),
        "{id} on {}: {v:?}",
        inst.describe()
    );
}

#[test]
fn upper_bound_on_thirty_instances() {
    let batch = generate(&FuzzConfig::new(30, 7)).unwrap();
    for inst in &batch.instances {
        let v = pair(inst).verify(TheoremId::T1_2Upper, &BTreeMap::new());
        assert_eq!(v.conclusion_status, ConclusionStatus::Holds, "{}", inst.describe());
    }
}

#[test]
fn relative_vanishing_for_every_r() {
    let batch = generate(&FuzzConfig::new(12, 19)).unwrap();
    for inst in &batch.instances {
        let g = pair(inst).gdim().unwrap();
        for r in 1..=g + 1 {
            assert_holds(TheoremId::P1_5, inst, &params(r));
        }
    }
}

#[test]
fn auslander_bridger_and_depth_formulas() {
    let batch = generate(&FuzzConfig::new(15, 23)).unwrap();
    for inst in &batch.instances {
        assert_holds(TheoremId::AuslanderBridger, inst, &BTreeMap::new());
        assert_holds(TheoremId::T2_2d, inst, &BTreeMap::new());
    }
}

#[test]
fn long_exact_sequences_are_exact() {
    let batch = generate(&FuzzConfig::new(10, 31)).unwrap();
    for inst in &batch.instances {
        let pr = proper_resolution(&inst.m).unwrap();
        let rel = approximation_les(&pr, &inst.n, 10).unwrap();
        assert!(rel.holds(), "{}: {:?}", inst.describe(), rel.failures);
        let g = pr.length() as i32;
        let cr = complete_resolution(&inst.m, (-2, g + 4)).unwrap();
        let tate = tate_les(&cr, &pr, &inst.n, 10).unwrap();
        assert!(tate.holds(), "{}: {:?}", inst.describe(), tate.failures);
    }
}

#[test]
fn gtor_equals_tor_over_polynomial_rings() {
    let mut cfg = FuzzConfig::new(12, 5);
    cfg.family = RingFamily::Polynomial;
    cfg.require_exact_t = false;
    let batch = generate(&cfg).unwrap();
    for inst in &batch.instances {
        let pd = certified_projective_dimension(&inst.m).unwrap().0;
        assert!(pd.value.is_finite());
        let pr = proper_resolution(&inst.m).unwrap();
        let gt = gtor_table(&pr, &inst.n, 12).unwrap();
        let tor = tor_table(&inst.m, &inst.n, 4, 12).unwrap();
        for i in 0..=4 {
            let a = gt.entry(i).map(|e| e.dims.clone()).unwrap_or_default();
            let b = tor.entry(i).map(|e| e.dims.clone()).unwrap_or_default();
            assert_eq!(a, b, "index {i} on {}", inst.describe());
        }
    }
}

#[test]
fn oracle_agrees_on_random_tables() {
    let batch = generate(&FuzzConfig::new(20, 11)).unwrap();
    for inst in &batch.instances {
        let tor = tor_table(&inst.m, &inst.n, 4, 12).unwrap();
        assert!(cross_check(&tor, 12).is_empty(), "Tor on {}", inst.describe());
        let pr = proper_resolution(&inst.m).unwrap();
        let gt = gtor_table(&pr, &inst.n, 12).unwrap();
        assert!(cross_check(&gt, 12).is_empty(), "GTor on {}", inst.describe());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn single_instances_satisfy_the_upper_bound(seed in any::<u64>()) {
        let inst = generate(&FuzzConfig::new(1, seed)).unwrap().instances.remove(0);
        let v = pair(&inst).verify(TheoremId::T1_2Upper, &BTreeMap::new());
        prop_assert_eq!(v.conclusion_status, ConclusionStatus::Holds, "{}", inst.describe());
    }

    #[test]
    fn generation_depends_only_on_seed(seed in any::<u64>()) {
        let a = generate(&FuzzConfig::new(2, seed)).unwrap();
        let b = generate(&FuzzConfig::new(2, seed)).unwrap();
        let da: Vec<String> = a.instances.iter().map(|i| i.describe()).collect();
        let db: Vec<String> = b.instances.iter().map(|i| i.describe()).collect();
        prop_assert_eq!(da, db);
    }
}
