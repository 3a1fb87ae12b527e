//! Deciding weak solvability of a double embedding problem and inspecting its diagram.

use projpair::dep::{normalize_dep, solve_weak, validate_dep, DoubleEmbeddingProblem};
use projpair::group::{catalog, enumerate_homs, FinitePair, HomConstraints, Subgroup};

fn main() -> projpair::Result<()> {
    // L = S3 with Gm a transposition subgroup, higher problem sign: S3 -> C2 against
    // itself, lower problem through the same transposition subgroup
    let s3 = catalog::group("S3").expect("catalog");
    let c2 = catalog::group("C2").expect("catalog");
    let sign = enumerate_homs(&s3, &c2, &HomConstraints::new(), true)?
        .next()
        .expect("sign");
    let t = s3.generators()[0];
    let pair = FinitePair::generated(&s3, &[t])?;
    let g = pair.distinguished().clone();
    let dep = DoubleEmbeddingProblem::new(pair, g, Subgroup::whole(&c2), sign.clone(), sign)?;
    println!(
        "|L| = {}, |Gm| = {}, |H| = {}, |G| = {}, |B| = {}, |A| = {}",
        dep.ambient().order(),
        dep.distinguished().order(),
        dep.h().order(),
        dep.g().order(),
        dep.b().order(),
        dep.a().order()
    );
    println!("diagnostics: {}", validate_dep(&dep).len());

    let all = solve_weak(&dep, true)?;
    println!("weak solutions: {}", all.len());
    for sol in &all {
        println!("  theta on generators: {:?}", sol.theta.gen_images());
    }

    // A problem whose ν misses part of B is normalized to its image first.
    let c4 = catalog::group("C4").expect("catalog");
    let c2c4 = enumerate_homs(&c2, &c4, &HomConstraints::new(), false)?
        .last()
        .expect("hom");
    let c2_pair = FinitePair::generated(&c2, &[])?;
    let raw = DoubleEmbeddingProblem::new(
        c2_pair,
        Subgroup::trivial(&c4),
        Subgroup::trivial(&c4),
        projpair::group::GroupHom::identity(&c4),
        c2c4,
    )?;
    println!("raw problem valid: {}", raw.is_valid());
    let norm = normalize_dep(&raw)?;
    println!(
        "normalized B order: {}, valid: {}",
        norm.dep.b().order(),
        norm.dep.is_valid()
    );
    if let Some(sol) = solve_weak(&norm.dep, false)?.first() {
        let lifted = norm.lift(&raw, sol)?;
        println!(
            "lifted back to the raw problem: {:?}",
            lifted.theta.gen_images()
        );
    }
    Ok(())
}
