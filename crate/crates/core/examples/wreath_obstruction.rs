//! The wreath-product obstruction: for a normal pair with proper nontrivial Gm, the problem
//! built from A wr G admits no solution extending the prescribed lower solution.

use projpair::dep::{lift_via_fiber, solve_weak_prescribed, wreath_obstruction_dep};
use projpair::group::{
    catalog, enumerate_homs, normal_subgroups, FinitePair, HomConstraints, Subgroup,
};

fn main() -> projpair::Result<()> {
    let targets = ["C2", "C3"];
    for ambient in ["V4", "C4", "S3", "D4", "C6"] {
        let l = catalog::group(ambient).expect("catalog");
        for gm in normal_subgroups(&l) {
            if gm.is_trivial() || gm.is_whole() {
                continue;
            }
            let pair = FinitePair::new(l.clone(), gm.clone())?;
            for a_name in targets {
                for g_name in targets {
                    let a = catalog::group(a_name).expect("catalog");
                    let g = catalog::group(g_name).expect("catalog");
                    let Some(eta) =
                        enumerate_homs(&gm.to_group(), &a, &HomConstraints::new(), true)?.next()
                    else {
                        continue;
                    };
                    let vanish = HomConstraints::new().maps_into(&gm, &Subgroup::trivial(&g));
                    let Some(nu) = enumerate_homs(&l, &g, &vanish, true)?.next() else {
                        continue;
                    };
                    let (dep, prescribed) = wreath_obstruction_dep(&pair, &eta, &nu)?;
                    let direct = solve_weak_prescribed(&dep, &prescribed)?;
                    let fiber = lift_via_fiber(&dep, &prescribed)?;
                    println!(
                        "L = {ambient}, |Gm| = {}, A = {a_name}, G = {g_name}: |A wr G| = {}, lift found: {} / {}",
                        gm.order(),
                        dep.h().order(),
                        direct.is_some(),
                        fiber.is_some()
                    );
                }
            }
        }
    }
    Ok(())
}
