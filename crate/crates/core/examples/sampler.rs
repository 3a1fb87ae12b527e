//! Random tuples in a fiber-power model: the exact fraction of lifting tuples, a Monte
//! Carlo estimate and the closed-form lower bound.

use projpair::group::{catalog, enumerate_homs, HomConstraints};
use projpair::sampler::{run_experiment, Exhaustive, ExperimentSpec};

fn main() -> projpair::Result<()> {
    let s3 = catalog::group("S3").expect("catalog");
    let c2 = catalog::group("C2").expect("catalog");
    let sign = enumerate_homs(&s3, &c2, &HomConstraints::new(), true)?
        .next()
        .expect("sign");
    let rotation = s3.generators()[1];
    for (e, n) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
        let spec = ExperimentSpec {
            beta: sign.clone(),
            e,
            n,
            b: vec![0; e],
            h: vec![rotation; e],
            trials: 10_000,
            seed: 7,
            exhaustive: Exhaustive::Auto,
        };
        let r = run_experiment(&spec)?;
        let exact = r
            .exact_fraction
            .as_ref()
            .map_or("-".to_string(), |q| q.to_string());
        println!(
            "e = {e}, n = {n}: |model| = {:>3}, |C| = {:>5}, bound {:>6}, exact {:>8}, estimate {:.4} +- {:.4}, independent {}",
            r.model_order,
            r.coset_size,
            r.lower_bound.to_string(),
            exact,
            r.estimate,
            r.std_error,
            r.independence_verified
        );
    }
    Ok(())
}
