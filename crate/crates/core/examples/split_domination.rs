//! Dominating a problem by a split one, and pushing solutions back down.

use projpair::dep::{
    dominate_split, induced_solution, is_split, solve_weak, DoubleEmbeddingProblem,
};
use projpair::group::{catalog, enumerate_homs, FinitePair, HomConstraints, Subgroup};

fn main() -> projpair::Result<()> {
    // L = S4 with Gm = A4, higher problem sign: S4 -> C2 against S3 -> C2
    let s4 = catalog::group("S4").expect("catalog");
    let s3 = catalog::group("S3").expect("catalog");
    let c2 = catalog::group("C2").expect("catalog");
    let sign4 = enumerate_homs(&s4, &c2, &HomConstraints::new(), true)?
        .next()
        .expect("sign");
    let sign3 = enumerate_homs(&s3, &c2, &HomConstraints::new(), true)?
        .next()
        .expect("sign");
    let pair = FinitePair::new(s4.clone(), sign4.kernel())?;
    let a3 = sign3.kernel();
    let dep = DoubleEmbeddingProblem::new(pair, a3, Subgroup::trivial(&c2), sign3, sign4)?;
    println!("original problem split: {}", is_split(&dep)?.is_some());

    let sol = solve_weak(&dep, false)?
        .into_iter()
        .next()
        .expect("solvable");
    let witness = dominate_split(&dep, &sol.theta, &sol.eta)?;
    let hat = &witness.dominating;
    println!(
        "dominating problem: |H^| = {}, |G^| = {}, |B^| = {}, |A^| = {}",
        hat.h().order(),
        hat.g().order(),
        hat.b().order(),
        hat.a().order()
    );
    println!("dominating problem split: {}", is_split(hat)?.is_some());
    witness.verify()?;
    println!("all faces of the domination cube commute");

    let hat_sols = solve_weak(hat, true)?;
    println!("weak solutions upstairs: {}", hat_sols.len());
    for s in &hat_sols {
        let down = induced_solution(&witness, s)?;
        down.verify(&dep)?;
    }
    println!("every one pushes down to a verified solution of the original problem");
    Ok(())
}
