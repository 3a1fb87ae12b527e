//! Normal complements, splitting over a normal subgroup of the distinguished subgroup, and
//! the Sylow obstruction in A5.

use projpair::dep::{semidirect_complement, split_over_subgroup, sylow_obstruction_check};
use projpair::group::{catalog, normal_subgroups, FinitePair, GroupHom, Subgroup};

fn main() -> projpair::Result<()> {
    for name in ["S3", "C4", "C6", "S4", "D4"] {
        let l = catalog::group(name).expect("catalog");
        let g0 = l.generators()[0];
        // a subgroup of order 2 generated by a power of the first generator
        let t = l.pow(g0, l.elem_order(g0) / 2);
        let pair = FinitePair::generated(&l, &[t])?;
        match semidirect_complement(&pair)? {
            Some(s) => println!(
                "{name} over a subgroup of order 2: complement of order {}",
                s.m.order()
            ),
            None => println!("{name} over a subgroup of order 2: no normal complement"),
        }
    }

    // split S4 over the Klein subgroup with the distinguished subgroup A4
    let s4 = catalog::group("S4").expect("catalog");
    let a4 = normal_subgroups(&s4)
        .into_iter()
        .find(|n| n.order() == 12)
        .expect("A4");
    let v4 = normal_subgroups(&s4)
        .into_iter()
        .find(|n| n.order() == 4)
        .expect("V4");
    let pair = FinitePair::new(s4.clone(), a4)?;
    for n in [Subgroup::trivial(&s4), v4] {
        match split_over_subgroup(&pair, &n)? {
            Some(s) => println!(
                "S4 with Gm = A4, N of order {}: M of order {}",
                n.order(),
                s.m.order()
            ),
            None => println!("S4 with Gm = A4, N of order {}: none", n.order()),
        }
    }

    let a5 = catalog::group("A5").expect("catalog");
    let id = GroupHom::identity(&a5);
    for p in [2, 3, 5] {
        println!(
            "A5, p = {p}: no Sylow complement: {}",
            sylow_obstruction_check(&a5, p, &id)?
        );
    }
    Ok(())
}
