//! Measure of the lifting set `Σ` on finite fiber powers.
//!
//! The free group is replaced by `L = Δₙ`, the `n`-fold fiber power of `β: H → B`, with
//! `μ = β̂`. For target tuples `b ∈ Bᵉ` and lifts `h ∈ Hᵉ`, a tuple `σ ∈ Lᵉ` lies in `Σ`
//! when `μ(σ) ≠ b` or some `θ: L → H` with `β ∘ θ = μ` sends `σ` to `h`. Inside the coset
//! `C = {σ : μ(σ) = b}` the coordinate projections already cover a fraction of at least
//! `1 − (1 − (|B|/|H|)ᵉ)ⁿ`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::fiber_power;
use crate::error::{Error, Result};
use crate::group::{enumerate_homs, Elem, FiniteGroup, GroupHom, HomConstraints};

/// Largest coset that is enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Whether to compute the exact fraction by enumerating the whole coset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exhaustive {
    /// Enumerate when the coset has at most [`EXHAUSTIVE_LIMIT`] elements.
    #[default]
    Auto,
    /// Always enumerate; fail when the coset is too large.
    Force,
    Off,
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub beta: GroupHom,
    pub e: usize,
    pub n: usize,
    pub b: Vec<Elem>,
    pub h: Vec<Elem>,
    pub trials: u64,
    pub seed: u64,
    pub exhaustive: Exhaustive,
}

impl ExperimentSpec {
    /// Checks tuple lengths and `β(hᵢ) = bᵢ`.
    pub fn validate(&self) -> Result<()> {
        if self.e == 0 || self.n == 0 || self.trials == 0 {
            return Err(Error::InvalidInput(
                "e, n and trials must be positive".into(),
            ));
        }
        if self.b.len() != self.e || self.h.len() != self.e {
            return Err(Error::InvalidInput(format!(
                "b and h must have length e = {} (got {} and {})",
                self.e,
                self.b.len(),
                self.h.len()
            )));
        }
        if !self.beta.is_surjective() {
            return Err(Error::NotSurjective("beta".into(), 0));
        }
        for (i, (&b, &h)) in self.b.iter().zip(&self.h).enumerate() {
            if h >= self.beta.source().order() || b >= self.beta.target().order() {
                return Err(Error::InvalidInput(format!("tuple entry {i} out of range")));
            }
            if self.beta.apply(h) != b {
                return Err(Error::InvalidInput(format!("beta(h[{i}]) != b[{i}]")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    /// `|Σ ∩ C| / |C|`, when the coset was enumerated.
    pub exact_fraction: Option<BigRational>,
    pub estimate: f64,
    pub std_error: f64,
    pub lower_bound: BigRational,
    pub independence_verified: bool,
    /// Number of uniform draws from `C`.
    pub samples_in_c: u64,
    /// Draws that landed in `Σ`.
    pub hits: u64,
    pub coset_size: BigUint,
    pub model_order: usize,
    pub seed: u64,
}

/// Whether `σ ∈ Σ`: either `μ(σ) ≠ β(h)` or some `θ` with `β ∘ θ = μ` maps `σ` to `h`.
pub fn sigma_membership(
    mu: &GroupHom,
    beta: &GroupHom,
    sigma: &[Elem],
    h: &[Elem],
) -> Result<bool> {
    if sigma.len() != h.len() {
        return Err(Error::InvalidInput(format!(
            "sigma has length {} but h has length {}",
            sigma.len(),
            h.len()
        )));
    }
    if **mu.target() != **beta.target() {
        return Err(Error::GroupMismatch(
            "mu and beta have different targets".into(),
        ));
    }
    let (l, hg) = (mu.source(), beta.source());
    if let Some(&bad) = sigma.iter().find(|&&s| s >= l.order()) {
        return Err(Error::InvalidElement {
            index: bad,
            order: l.order(),
        });
    }
    if let Some(&bad) = h.iter().find(|&&x| x >= hg.order()) {
        return Err(Error::InvalidElement {
            index: bad,
            order: hg.order(),
        });
    }
    if sigma
        .iter()
        .zip(h)
        .any(|(&s, &x)| mu.apply(s) != beta.apply(x))
    {
        return Ok(true);
    }
    let constraints = sigma
        .iter()
        .zip(h)
        .fold(HomConstraints::new().commuting(beta, mu), |c, (&s, &x)| {
            c.pin(s, x)
        });
    Ok(enumerate_homs(l, hg, &constraints, false)?.next().is_some())
}

/// Whether the kernels of the `θᵢ` are independent inside `ker μ`: for every subset `I`,
/// `|⋂ ker θᵢ ∩ ker μ| · |ker μ|^(|I|−1) = ∏ |ker θᵢ ∩ ker μ|`.
pub fn kernel_independence_check(
    thetas: &[GroupHom],
    beta: &GroupHom,
    mu: &GroupHom,
) -> Result<bool> {
    for (i, t) in thetas.iter().enumerate() {
        if **t.source() != **mu.source() || t.then(beta)? != *mu {
            return Err(Error::Precondition(format!(
                "theta {i} does not satisfy beta after theta = mu"
            )));
        }
    }
    if thetas.len() > 20 {
        return Err(Error::EnumerationLimit {
            size: format!("2^{}", thetas.len()),
            limit: 1 << 20,
        });
    }
    let km = mu.kernel();
    let kernels: Vec<_> = thetas
        .iter()
        .map(|t| t.kernel().intersection(&km))
        .collect();
    let total = BigUint::from(km.order());
    for subset in 1u32..(1 << thetas.len()) {
        let chosen: Vec<usize> = (0..thetas.len()).filter(|i| subset >> i & 1 == 1).collect();
        let mut inter = km.clone();
        let mut product = BigUint::one();
        for &i in &chosen {
            inter = inter.intersection(&kernels[i]);
            product *= BigUint::from(kernels[i].order());
        }
        let lhs = BigUint::from(inter.order()) * total.pow(chosen.len() as u32 - 1);
        if lhs != product {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `1 − (1 − (|B|/|H|)ᵉ)ⁿ`.
pub fn lower_bound(h_order: usize, b_order: usize, e: usize, n: usize) -> BigRational {
    let ratio = BigRational::new(b_order.into(), h_order.into());
    let one = BigRational::one();
    let miss = &one - num_traits::pow(ratio, e);
    one - num_traits::pow(miss, n)
}

struct Model {
    mu: GroupHom,
    beta: GroupHom,
    h: Vec<Elem>,
    reps: Vec<Elem>,
    kernel: Vec<Elem>,
    cache: Mutex<HashMap<Vec<Elem>, bool>>,
}

impl Model {
    fn sigma(&self, offsets: &[usize]) -> Vec<Elem> {
        let l = self.mu.source();
        self.reps
            .iter()
            .zip(offsets)
            .map(|(&r, &k)| l.mul(r, self.kernel[k]))
            .collect()
    }

    fn member(&self, sigma: Vec<Elem>) -> bool {
        if let Some(&v) = self.cache.lock().expect("cache lock").get(&sigma) {
            return v;
        }
        let v = sigma_membership(&self.mu, &self.beta, &sigma, &self.h).expect("validated model");
        self.cache.lock().expect("cache lock").insert(sigma, v);
        v
    }
}

/// Builds `Δₙ`, checks kernel independence of its projections, computes the bound, the
/// exact fraction when feasible, and a Monte Carlo estimate from `trials` uniform draws of
/// `C`. Draw `i` uses its own ChaCha stream, so the report does not depend on the number of
/// worker threads.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let delta = fiber_power(&spec.beta, spec.n)?;
    let l: &Arc<FiniteGroup> = &delta.total;
    let mu = delta.beta_hat.clone();
    let independence_verified = kernel_independence_check(&delta.projections, &spec.beta, &mu)?;
    let kernel = mu.kernel().members().to_vec();
    let reps: Vec<Elem> = spec
        .b
        .iter()
        .map(|&b| {
            l.elements()
                .find(|&x| mu.apply(x) == b)
                .expect("beta hat is surjective")
        })
        .collect();
    let coset_size = BigUint::from(kernel.len()).pow(spec.e as u32);
    let model = Model {
        mu,
        beta: spec.beta.clone(),
        h: spec.h.clone(),
        reps,
        kernel,
        cache: Mutex::new(HashMap::new()),
    };
    let enumerable = coset_size <= BigUint::from(EXHAUSTIVE_LIMIT);
    let exact_fraction = match (spec.exhaustive, enumerable) {
        (Exhaustive::Force, false) => {
            return Err(Error::EnumerationLimit {
                size: coset_size.to_string(),
                limit: EXHAUSTIVE_LIMIT,
            })
        }
        (Exhaustive::Off, _) | (Exhaustive::Auto, false) => None,
        _ => {
            let size = coset_size.to_u64().expect("below the limit");
            let k = model.kernel.len();
            let hits: u64 = (0..size)
                .into_par_iter()
                .map(|code| {
                    let mut c = code as usize;
                    let offsets: Vec<usize> = (0..spec.e)
                        .map(|_| {
                            let d = c % k;
                            c /= k;
                            d
                        })
                        .collect();
                    model.member(model.sigma(&offsets)) as u64
                })
                .sum();
            Some(BigRational::new(hits.into(), size.into()))
        }
    };
    let k = model.kernel.len();
    let hits: u64 = (0..spec.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(trial);
            let offsets: Vec<usize> = (0..spec.e).map(|_| rng.gen_range(0..k)).collect();
            model.member(model.sigma(&offsets)) as u64
        })
        .sum();
    let estimate = hits as f64 / spec.trials as f64;
    let std_error = (estimate * (1.0 - estimate) / spec.trials as f64).sqrt();
    Ok(ExperimentReport {
        exact_fraction,
        estimate,
        std_error,
        lower_bound: lower_bound(
            spec.beta.source().order(),
            spec.beta.target().order(),
            spec.e,
            spec.n,
        ),
        independence_verified,
        samples_in_c: spec.trials,
        hits,
        coset_size,
        model_order: l.order(),
        seed: spec.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn sign() -> GroupHom {
        let s3 = catalog::group("S3").unwrap();
        let c2 = catalog::group("C2").unwrap();
        enumerate_homs(&s3, &c2, &HomConstraints::new(), true)
            .unwrap()
            .next()
            .unwrap()
    }

    fn three_cycle(s3: &Arc<FiniteGroup>) -> Elem {
        s3.elements().find(|&x| s3.elem_order(x) == 3).unwrap()
    }

    #[test]
    fn bounds() {
        let frac = |num: i64, den: i64| BigRational::new(num.into(), den.into());
        assert_eq!(lower_bound(6, 2, 1, 1), frac(1, 3));
        assert_eq!(lower_bound(6, 2, 1, 3), frac(19, 27));
        assert_eq!(lower_bound(6, 2, 2, 1), frac(1, 9));
    }

    #[test]
    fn membership_basics() {
        let sg = sign();
        let s3 = sg.source().clone();
        let d1 = fiber_power(&sg, 1).unwrap();
        let h = three_cycle(&s3);
        // σ with μ(σ) ≠ β(h) is vacuously in Σ
        let odd = d1
            .total
            .elements()
            .find(|&x| d1.beta_hat.apply(x) == 1)
            .unwrap();
        assert!(sigma_membership(&d1.beta_hat, &sg, &[odd], &[h]).unwrap());
        // σ = h under the isomorphism Δ₁ ≅ H
        let sigma = d1
            .total
            .elements()
            .find(|&x| d1.projections[0].apply(x) == h)
            .unwrap();
        assert!(sigma_membership(&d1.beta_hat, &sg, &[sigma], &[h]).unwrap());
        assert!(!sigma_membership(&d1.beta_hat, &sg, &[0], &[h]).unwrap());
        assert!(sigma_membership(&d1.beta_hat, &sg, &[0, 0], &[h]).is_err());
    }

    #[test]
    fn membership_matches_exhaustion_on_delta2() {
        let sg = sign();
        let s3 = sg.source().clone();
        let d2 = fiber_power(&sg, 2).unwrap();
        // oracle: every homomorphism Δ₂ → S3 over C2, listed once
        let all: Vec<GroupHom> = enumerate_homs(&d2.total, &s3, &HomConstraints::new(), false)
            .unwrap()
            .filter(|t| t.then(&sg).unwrap() == d2.beta_hat)
            .collect();
        let mut misses = 0;
        for sigma in d2.total.elements() {
            for h in s3.elements() {
                let expect = d2.beta_hat.apply(sigma) != sg.apply(h)
                    || all.iter().any(|t| t.apply(sigma) == h);
                let got = sigma_membership(&d2.beta_hat, &sg, &[sigma], &[h]).unwrap();
                assert_eq!(got, expect);
                misses += !got as usize;
            }
        }
        assert!(misses > 0);
    }

    #[test]
    fn independence() {
        let sg = sign();
        let d2 = fiber_power(&sg, 2).unwrap();
        assert!(kernel_independence_check(&d2.projections[..1], &sg, &d2.beta_hat).unwrap());
        assert!(kernel_independence_check(&d2.projections, &sg, &d2.beta_hat).unwrap());
        let twice = vec![d2.projections[0].clone(), d2.projections[0].clone()];
        assert!(!kernel_independence_check(&twice, &sg, &d2.beta_hat).unwrap());
    }

    #[test]
    fn calibration_run_is_thread_independent() {
        let sg = sign();
        let s3 = sg.source().clone();
        let spec = ExperimentSpec {
            beta: sg,
            e: 1,
            n: 3,
            b: vec![0],
            h: vec![three_cycle(&s3)],
            trials: 2000,
            seed: 7,
            exhaustive: Exhaustive::Auto,
        };
        let report = run_experiment(&spec).unwrap();
        assert_eq!(report.model_order, 54);
        assert!(report.independence_verified);
        let exact = report.exact_fraction.clone().unwrap();
        assert!(exact >= report.lower_bound);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let again = single.install(|| run_experiment(&spec).unwrap());
        assert_eq!(again.hits, report.hits);
        let mut forced = spec.clone();
        forced.exhaustive = Exhaustive::Off;
        assert!(run_experiment(&forced).unwrap().exact_fraction.is_none());
    }
}
