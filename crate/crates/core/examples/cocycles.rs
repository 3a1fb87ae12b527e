//! One-cocycles, their correspondence with sections of the semidirect product, and the
//! restriction-surjectivity test.

use projpair::cohomology::{
    all_actions, cocycle_to_section, cohomologous, enumerate_cocycles, restriction_surjective,
    restriction_surjective_classes, section_to_cocycle, Cocycle,
};
use projpair::constructions::{semidirect_product, GroupAction};
use projpair::group::{catalog, sections_of, Subgroup};

fn main() -> projpair::Result<()> {
    for (q, a) in [
        ("C2", "C3"),
        ("C2", "V4"),
        ("C3", "V4"),
        ("S3", "C3"),
        ("C4", "C2"),
    ] {
        let q = catalog::group(q).expect("catalog");
        let a = catalog::group(a).expect("catalog");
        for action in all_actions(&q, &a) {
            let sd = semidirect_product(&action)?;
            let cocycles: Vec<Cocycle> = enumerate_cocycles(&action).collect();
            let sections = sections_of(&sd.quot)?.count();
            let classes = count_classes(&cocycles)?;
            for x in &cocycles {
                let s = cocycle_to_section(x, &sd)?;
                assert_eq!(section_to_cocycle(&s, &sd)?.values(), x.values());
            }
            println!(
                "{} on {} ({}): {} cocycles, {} sections, {} classes",
                q.name(),
                a.name(),
                if action.is_trivial() {
                    "trivial"
                } else {
                    "nontrivial"
                },
                cocycles.len(),
                sections,
                classes
            );
        }
    }

    // restriction from C4 to its subgroup of order 2 with trivial coefficients in C2
    let c4 = catalog::group("C4").expect("catalog");
    let c2 = catalog::group("C2").expect("catalog");
    let action = GroupAction::trivial(&c4, &c2);
    let sub = Subgroup::generated_by(&c4, &[c4.pow(c4.generators()[0], 2)])?;
    let r = restriction_surjective(&action, &sub)?;
    println!(
        "C4 -> C2 restriction on cocycles surjective: {} ({} vs {} cocycles)",
        r.surjective, r.actor_cocycles, r.subgroup_cocycles
    );
    if let Some(w) = &r.witness {
        println!("  unextendable cocycle values: {:?}", w.values());
    }
    let rc = restriction_surjective_classes(&action, &sub)?;
    println!("  on classes: {}", rc.surjective);
    Ok(())
}

fn count_classes(cocycles: &[Cocycle]) -> projpair::Result<usize> {
    let mut reps: Vec<&Cocycle> = Vec::new();
    for x in cocycles {
        let mut seen = false;
        for r in &reps {
            if cohomologous(r, x)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(x);
        }
    }
    Ok(reps.len())
}
