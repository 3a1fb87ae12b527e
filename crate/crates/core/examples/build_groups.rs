//! Building finite groups: catalog lookups, permutation generators, explicit tables and the
//! product constructions.

use std::sync::Arc;

use projpair::constructions::{direct_product, semidirect_product, wreath_product, GroupAction};
use projpair::group::normal::{composition_factors, conjugacy_classes, derived_series};
use projpair::group::{catalog, normal_subgroups, sylow_subgroup, FiniteGroup, Permutation};

fn main() -> projpair::Result<()> {
    let s4 = catalog::group("S4").expect("catalog");
    println!(
        "{}: order {}, exponent {}",
        s4.name(),
        s4.order(),
        s4.exponent()
    );
    println!("  conjugacy classes: {}", conjugacy_classes(&s4).len());
    let orders: Vec<usize> = normal_subgroups(&s4).iter().map(|n| n.order()).collect();
    println!("  normal subgroup orders: {orders:?}");
    let derived: Vec<usize> = derived_series(&s4).iter().map(|g| g.order()).collect();
    println!("  derived series orders: {derived:?}");
    println!(
        "  Sylow 2-subgroup order: {}",
        sylow_subgroup(&s4, 2)?.order()
    );

    // D5 from two permutations of five points
    let r = Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]])?;
    let s = Permutation::from_cycles(5, &[vec![1, 4], vec![2, 3]])?;
    let d5 = Arc::new(FiniteGroup::from_permutations("D5", 5, &[r, s])?);
    let factors: Vec<usize> = composition_factors(&d5).iter().map(|f| f.order()).collect();
    println!("D5: order {}, composition factors {factors:?}", d5.order());

    let klein = FiniteGroup::from_table(
        "V4",
        &[
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ],
    )?;
    println!(
        "V4 from a table: order {}, abelian {}",
        klein.order(),
        klein.is_abelian()
    );

    let c2 = catalog::group("C2").expect("catalog");
    let c3 = catalog::group("C3").expect("catalog");
    let c6 = direct_product(&c2, &c3)?;
    println!(
        "C2 x C3: order {}, exponent {}",
        c6.group.order(),
        c6.group.exponent()
    );

    // C2 acting on C3 by inversion gives S3
    let inv = vec![c3.inv(0), c3.inv(1), c3.inv(2)];
    let action = GroupAction::from_generator_images(c2.clone(), c3.clone(), &[inv])?;
    let sd = semidirect_product(&action)?;
    println!(
        "C3 : C2 by inversion: order {}, abelian {}",
        sd.group.order(),
        sd.group.is_abelian()
    );

    let w = wreath_product(&c3, &c3)?;
    println!(
        "C3 wr C3: order {}, base order {}",
        w.group.order(),
        w.base.order()
    );
    Ok(())
}
