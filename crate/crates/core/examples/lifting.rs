//! Prescribed lifting: two independent searches for a solution extending a given lower
//! solution, plus the finite-kernel reduction that shrinks H before searching.

use projpair::constructions::direct_product;
use projpair::dep::{
    finite_kernel_reduction, lift_via_fiber, solve_weak, solve_weak_prescribed,
    DoubleEmbeddingProblem,
};
use projpair::group::{catalog, enumerate_homs, FinitePair, GroupHom, HomConstraints};

fn main() -> projpair::Result<()> {
    // L = S3, Gm = C3, H = S3 x C2 over B = S3 by the first projection
    let s3 = catalog::group("S3").expect("catalog");
    let c2 = catalog::group("C2").expect("catalog");
    let prod = direct_product(&s3, &c2)?;
    let rotation = s3.generators()[1];
    let pair = FinitePair::generated(&s3, &[rotation])?;
    let c3 = pair.distinguished().clone();
    let g = prod.proj_left.preimage(&c3);
    let dep =
        DoubleEmbeddingProblem::new(pair, g, c3, prod.proj_left.clone(), GroupHom::identity(&s3))?;

    let gm = dep.distinguished().to_group();
    let lower = HomConstraints::new().commuting(&dep.alpha()?, &dep.mu()?);
    let etas: Vec<GroupHom> = enumerate_homs(&gm, &dep.g().to_group(), &lower, false)?.collect();
    println!("lower solutions: {}", etas.len());
    for (i, eta) in etas.iter().enumerate() {
        let direct = solve_weak_prescribed(&dep, eta)?;
        let fiber = lift_via_fiber(&dep, eta)?;
        println!(
            "  eta #{i}: direct search {}, fiber sections {}",
            direct.is_some(),
            fiber.is_some()
        );
        assert_eq!(direct.is_some(), fiber.is_some());
    }

    let red = finite_kernel_reduction(&dep)?;
    println!(
        "kernel reduction: |U| = {}, |H/U| = {}, (KG) cap (UG) = G: {}",
        red.u.order(),
        red.reduced.h().order(),
        red.kg_cap_ug_is_g
    );
    if let Some(sol) = solve_weak(&red.reduced, false)?.first() {
        let lifted = red.lift(&dep, sol)?;
        println!("reduced solution lifted: {:?}", lifted.theta.gen_images());
    }
    Ok(())
}
