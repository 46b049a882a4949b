//! Worked fixtures over the node F_5[x,y]/(xy) and a few neighbours.

use std::collections::BTreeMap;
use std::sync::Arc;

use reldep::fgmod::{dual, hom, tensor, PresentedModule};
use reldep::gtheory::{
    complete_resolution, g_approximation, g_dimension, gtor_table, is_totally_reflexive, proper_resolution,
    s_invariant, tate_tor_table, tate_vanishing_nonpositive, CompleteKind, TateVanishing,
};
use reldep::invariants::{t_invariant, Exactness};
use reldep::oracle::{cross_check, truncate};
use reldep::polyring::{AmbientRing, Poly};
use reldep::quotient::QuotientRing;
use reldep::resolve::{ext_table, q_invariant, tor_table, Extended};

fn ring(vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
    let s = AmbientRing::new(vars, 5).unwrap();
    let gens: Vec<Poly> = ideal.iter().map(|t| s.parse(t).unwrap()).collect();
    Arc::new(QuotientRing::new(s, &gens, false).unwrap())
}

fn node() -> Arc<QuotientRing> {
    ring(&["x", "y"], &["x*y"])
}

fn cyc(r: &Arc<QuotientRing>, gens: &[&str]) -> PresentedModule {
    let g: Vec<Poly> = gens.iter().map(|t| r.parse(t).unwrap()).collect();
    PresentedModule::cyclic(r.clone(), &g, 0).unwrap()
}

#[test]
fn node_ring_properties() {
    let r = node();
    assert_eq!((r.krull_dim(), r.depth()), (1, 1));
    assert!(r.is_hypersurface() && r.is_gorenstein() && !r.flags().regular);
    let fat = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
    assert_eq!((fat.krull_dim(), fat.depth()), (0, 0));
    assert!(!fat.is_gorenstein());
}

#[test]
fn residue_field_of_the_node() {
    let r = node();
    let k = PresentedModule::residue_field(r.clone());
    let m = PresentedModule::maximal_ideal(r.clone());
    assert_eq!(dual(&m).unwrap().mu(), 2);
    let ext = ext_table(&k, &PresentedModule::free(r.clone(), vec![0]), 2, 10).unwrap();
    assert!(ext.entry(0).unwrap().is_zero());
    assert_eq!(ext.entry(1).unwrap().total_dim(), 1);
    assert!(cross_check(&ext, 10).is_empty());
    assert_eq!(g_dimension(&k).unwrap().value, 1);
    let pr = proper_resolution(&k).unwrap();
    let gt = gtor_table(&pr, &k, 12).unwrap();
    assert!(gt.entry(1).unwrap().is_zero());
    assert_eq!(s_invariant(&gt), 0);
    let t = t_invariant(&k, &k, &[]).unwrap();
    assert_eq!((t.value, t.exactness), (1, Exactness::Exact));
    let (q, _) = q_invariant(&k, &k, 8, 10).unwrap();
    assert_eq!(q.value, Extended::Infinity);
}

#[test]
fn approximation_of_k_is_the_dual_of_m() {
    let r = node();
    let k = PresentedModule::residue_field(r.clone());
    let a = g_approximation(&k).unwrap();
    assert!(a.checks.g_totally_reflexive && a.checks.exact && a.checks.pd_x_finite);
    assert!(a.x().is_free() && a.x().ngens() == 1);
    let ms = dual(&PresentedModule::maximal_ideal(r.clone())).unwrap();
    assert_eq!(a.g().hilbert_function(10), ms.hilbert_function(10));
}

#[test]
fn transverse_lines_over_the_node() {
    let r = node();
    let a = cyc(&r, &["x"]);
    let b = cyc(&r, &["y"]);
    assert!(is_totally_reflexive(&a).unwrap().value);
    assert!(is_totally_reflexive(&b).unwrap().value);
    assert_eq!(g_dimension(&a).unwrap().value, 0);
    assert_eq!(reldep::resolve::depth(&b).unwrap(), Extended::Finite(1));
    let ab = tensor(&a, &b).unwrap();
    assert_eq!(ab.hilbert_function(4), vec![1, 0, 0, 0, 0]);
    let pr = proper_resolution(&a).unwrap();
    assert_eq!(s_invariant(&gtor_table(&pr, &b, 10).unwrap()), 0);
    let t = t_invariant(&a, &b, &[]).unwrap();
    assert_eq!((t.value, t.exactness), (-1, Exactness::Exact));
}

#[test]
fn tate_homology_of_transverse_lines_alternates() {
    let r = node();
    let a = cyc(&r, &["x"]);
    let b = cyc(&r, &["y"]);
    let cr = complete_resolution(&a, (-8, 0)).unwrap();
    assert!(matches!(cr.kind, CompleteKind::MatrixFactorization { .. }));
    let (table, cert) = tate_tor_table(&cr, &b, 12).unwrap();
    assert!(cross_check(&table, 12).is_empty());
    let observed: BTreeMap<i32, usize> = (-8..=0).map(|i| (i, table.entry(i).unwrap().total_dim())).collect();
    for (i, dim) in &observed {
        assert_eq!(*dim, if i % 2 == 0 { 1 } else { 0 }, "index {i}");
    }
    assert_eq!(cert.first_nonzero(), Some(0));
    assert!(matches!(tate_vanishing_nonpositive(&a, &b, 8, 12), TateVanishing::Refuted { .. }));
}

#[test]
fn tate_homology_of_k_never_vanishes() {
    let r = node();
    let k = PresentedModule::residue_field(r.clone());
    let cr = complete_resolution(&k, (-4, 4)).unwrap();
    let (table, _) = tate_tor_table(&cr, &k, 10).unwrap();
    assert!((-4..=4).all(|i| !table.entry(i).unwrap().is_zero()));
    assert!(cross_check(&table, 10).is_empty());
}

#[test]
fn free_modules_have_zero_tate_homology() {
    let r = node();
    let f = PresentedModule::free(r.clone(), vec![0, 2]);
    let cr = complete_resolution(&f, (-3, 3)).unwrap();
    assert_eq!(cr.kind, CompleteKind::Zero);
    let (table, cert) = tate_tor_table(&cr, &cyc(&r, &["x"]), 8).unwrap();
    assert!(table.entries.values().all(|e| e.is_zero()));
    assert_eq!(cert.nonpositive_vanishing(), Some(true));
}

#[test]
fn hom_and_kernel_examples() {
    let r = node();
    let k = PresentedModule::residue_field(r.clone());
    let rr = PresentedModule::free(r.clone(), vec![0]);
    assert!(hom(&k, &rr).unwrap().is_zero());
    let x = r.parse("x").unwrap();
    let mult = reldep::fgmod::ModuleMap::new(rr.twist(-1), rr.clone(), vec![vec![x]], 0).unwrap();
    let (ker, _) = mult.kernel().unwrap();
    let expected = cyc(&r, &["x"]).twist(-2);
    assert_eq!(ker.hilbert_function(8), expected.hilbert_function(8));
}

#[test]
fn truncation_agrees_with_hilbert_functions() {
    let r = node();
    let modules = [
        PresentedModule::residue_field(r.clone()),
        cyc(&r, &["x^2 + y^2"]),
        dual(&PresentedModule::maximal_ideal(r.clone())).unwrap(),
    ];
    for m in &modules {
        let t = truncate(m, 12);
        let lo = t.range().0;
        for d in lo..=12 {
            assert_eq!(t.dim(d), m.hilbert_value(d), "degree {d}");
        }
        assert!(t.actions_commute());
    }
}

#[test]
fn regular_ring_tor_is_koszul() {
    let s = ring(&["x", "y"], &[]);
    let k = PresentedModule::residue_field(s.clone());
    let t = tor_table(&k, &k, 3, 6).unwrap();
    let totals: Vec<usize> = (0..=3).map(|i| t.entry(i).map_or(0, |e| e.total_dim())).collect();
    assert_eq!(totals, vec![1, 2, 1, 0]);
    assert!(cross_check(&t, 6).is_empty());
}
