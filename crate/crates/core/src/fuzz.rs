//! Seeded random instances: hypersurface (or polynomial) rings in at most
//! three variables and cokernels of small homogeneous presentations.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgmod::{Columns, PresentedModule};
use crate::gtheory::g_dimension;
use crate::invariants::{t_invariant, Exactness};
use crate::polyring::{AmbientRing, Monomial, Poly};
use crate::quotient::QuotientRing;

const VAR_NAMES: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingFamily {
    /// S/(f) with f a monomial or binomial.
    Hypersurface,
    /// S itself, where every module has finite pd.
    Polynomial,
}

#[derive(Clone, Copy, Debug)]
pub struct FuzzConfig {
    pub count: usize,
    pub seed: u64,
    pub family: RingFamily,
    pub characteristic: u32,
    pub max_vars: usize,
    pub max_degree: u32,
    /// Reject pairs whose t is only a lower bound.
    pub require_exact_t: bool,
    /// Give up after this many candidates per requested instance.
    pub attempts_per_instance: usize,
}

impl FuzzConfig {
    pub fn new(count: usize, seed: u64) -> Self {
        FuzzConfig {
            count,
            seed,
            family: RingFamily::Hypersurface,
            characteristic: 5,
            max_vars: 3,
            max_degree: 3,
            require_exact_t: true,
            attempts_per_instance: 40,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FuzzInstance {
    /// Candidate index; the instance is a pure function of (seed, index).
    pub index: usize,
    pub ring: Arc<QuotientRing>,
    pub m: PresentedModule,
    pub n: PresentedModule,
}

impl FuzzInstance {
    pub fn describe(&self) -> String {
        let p = self.ring.properties();
        let ring = if p.ideal.is_empty() {
            format!("F_{}[{}]", p.characteristic, p.variables.join(","))
        } else {
            format!("F_{}[{}]/({})", p.characteristic, p.variables.join(","), p.ideal.join(", "))
        };
        format!("#{} R = {ring}; M = {}; N = {}", self.index, self.m.render(), self.n.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct FuzzBatch {
    pub instances: Vec<FuzzInstance>,
    pub rejected: Vec<Rejection>,
    pub attempts: usize,
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix).expect("few variables"));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

fn random_ring(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Result<Arc<QuotientRing>> {
    // One-variable rings are Artinian and mostly trivial; keep them rare.
    let nvars = **[1usize, 2, 2, 3, 3]
        .iter()
        .filter(|&&v| v <= cfg.max_vars)
        .collect::<Vec<_>>()
        .choose(rng)
        .expect("max_vars ≥ 1");
    let names = &VAR_NAMES[..nvars];
    let ambient = AmbientRing::new(names, cfg.characteristic)?;
    let field = ambient.field();
    let ideal = match cfg.family {
        RingFamily::Polynomial => Vec::new(),
        RingFamily::Hypersurface => {
            let d = rng.gen_range(2..=cfg.max_degree.max(2));
            let mons = monomials_of_degree(nvars, d);
            let a = *mons.choose(rng).expect("nonempty");
            let f = if mons.len() > 1 && rng.gen_bool(0.6) {
                let b = *mons.iter().filter(|&&b| b != a).collect::<Vec<_>>().choose(rng).expect("two monomials");
                let c = rng.gen_range(1..cfg.characteristic);
                Poly::from_terms(vec![(a, 1), (*b, c)], field)
            } else {
                Poly::monomial(a, 1)
            };
            vec![f]
        }
    };
    Ok(Arc::new(QuotientRing::new(ambient, &ideal, false)?))
}

fn random_form(rng: &mut ChaCha8Rng, ring: &QuotientRing, d: i32) -> Poly {
    if d < 0 {
        return Poly::zero();
    }
    let field = ring.field();
    let mons = monomials_of_degree(ring.nvars(), d as u32);
    let terms = rng.gen_range(1..=2usize.min(mons.len()));
    let picked: Vec<(Monomial, u32)> =
        mons.choose_multiple(rng, terms).map(|&m| (m, rng.gen_range(1..field.modulus()))).collect();
    ring.reduce(&Poly::from_terms(picked, field))
}

/// Cokernel of a random homogeneous presentation on 1–3 generators.
fn random_module(rng: &mut ChaCha8Rng, ring: &Arc<QuotientRing>) -> Result<PresentedModule> {
    let ngens = rng.gen_range(1..=3);
    let degrees: Vec<i32> = (0..ngens).map(|_| rng.gen_range(0..=1)).collect();
    let nrels = rng.gen_range(1..=3);
    let top = *degrees.iter().max().expect("generators");
    let mut relations: Columns = Vec::new();
    for _ in 0..nrels {
        let rd = top + rng.gen_range(1..=2);
        let col: Vec<Poly> = degrees
            .iter()
            .map(|&a| if rng.gen_bool(0.75) { random_form(rng, ring, rd - a) } else { Poly::zero() })
            .collect();
        if col.iter().any(|p| !p.is_zero()) {
            relations.push(col);
        }
    }
    PresentedModule::coker(ring.clone(), degrees, relations)
}

fn candidate(cfg: &FuzzConfig, index: usize) -> Result<FuzzInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let ring = random_ring(&mut rng, cfg)?;
    let m = random_module(&mut rng, &ring)?;
    let n = random_module(&mut rng, &ring)?;
    Ok(FuzzInstance { index, ring, m, n })
}

/// Acceptance test of the generator; `Err` carries the rejection reason.
fn admissible(cfg: &FuzzConfig, inst: &FuzzInstance) -> std::result::Result<(), String> {
    if inst.m.is_zero() || inst.n.is_zero() {
        return Err("zero module".into());
    }
    g_dimension(&inst.m).map_err(|e| format!("G-dim M: {e}"))?;
    if cfg.require_exact_t {
        let t = t_invariant(&inst.m, &inst.n, &[]).map_err(|e| format!("t: {e}"))?;
        if t.exactness != Exactness::Exact {
            return Err("t is only a lower bound (dim M ⊗ N ≥ 2)".into());
        }
    }
    Ok(())
}

/// The first `count` admissible candidates in index order; deterministic for
/// a fixed configuration regardless of thread scheduling.
pub fn generate(cfg: &FuzzConfig) -> Result<FuzzBatch> {
    let limit = cfg.count.max(1) * cfg.attempts_per_instance;
    let mut instances = Vec::new();
    let mut rejected = Vec::new();
    let mut next = 0;
    let chunk = (cfg.count * 2).max(8);
    while instances.len() < cfg.count && next < limit {
        let end = (next + chunk).min(limit);
        let results: Vec<(usize, std::result::Result<FuzzInstance, String>)> = (next..end)
            .into_par_iter()
            .map(|i| {
                let r = candidate(cfg, i).map_err(|e| format!("construction: {e}")).and_then(|inst| {
                    admissible(cfg, &inst)?;
                    Ok(inst)
                });
                (i, r)
            })
            .collect();
        for (i, r) in results {
            if instances.len() == cfg.count {
                break;
            }
            match r {
                Ok(inst) => instances.push(inst),
                Err(reason) => rejected.push(Rejection { index: i, reason }),
            }
        }
        next = end;
    }
    let attempts = instances.last().map_or(next, |l| l.index + 1).max(rejected.last().map_or(0, |r| r.index + 1));
    if instances.len() < cfg.count {
        return Err(Error::input(format!(
            "only {} of {} admissible instances in {attempts} candidates",
            instances.len(),
            cfg.count
        )));
    }
    Ok(FuzzBatch { instances, rejected, attempts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let cfg = FuzzConfig::new(6, 7);
        let a = generate(&cfg).unwrap();
        let b = generate(&cfg).unwrap();
        let da: Vec<String> = a.instances.iter().map(|i| i.describe()).collect();
        let db: Vec<String> = b.instances.iter().map(|i| i.describe()).collect();
        assert_eq!(da, db);
        assert_eq!(a.rejected, b.rejected);
        assert!(a.instances.iter().all(|i| i.ring.is_hypersurface() || i.ring.flags().regular));
    }

    #[test]
    fn polynomial_family_has_finite_pd() {
        let mut cfg = FuzzConfig::new(4, 3);
        cfg.family = RingFamily::Polynomial;
        cfg.require_exact_t = false;
        let batch = generate(&cfg).unwrap();
        for inst in &batch.instances {
            let pd = crate::resolve::certified_projective_dimension(&inst.m).unwrap().0;
            assert!(pd.value.is_finite());
        }
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 3).len(), 1);
    }
}
