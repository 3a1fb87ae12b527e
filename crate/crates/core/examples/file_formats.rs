//! Writing a problem to the JSON file format, reading it back and solving it, the same way
//! the `projpair` binary does.

use serde_json::json;

use projpair::dep::{solve_weak, wreath_obstruction_dep};
use projpair::group::{catalog, enumerate_homs, FinitePair, HomConstraints, Subgroup};
use projpair::io::{self, Loader};

fn main() -> projpair::Result<()> {
    let dir = std::env::temp_dir().join(format!("projpair-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let pair_doc = json!({"format_version": 1, "ambient": "C4", "distinguished": [[1, 1]]});
    std::fs::write(
        dir.join("pair.json"),
        serde_json::to_string_pretty(&pair_doc)?,
    )?;
    let loader = Loader::new(&dir);
    let (doc, l) = loader.read("pair.json")?;
    let pair: FinitePair = l.pair(&doc, "")?;
    println!(
        "pair: |L| = {}, |Gm| = {}",
        pair.ambient().order(),
        pair.distinguished().order()
    );

    let c2 = catalog::group("C2").expect("catalog");
    let gm = pair.distinguished();
    let eta = enumerate_homs(&gm.to_group(), &c2, &HomConstraints::new(), true)?
        .next()
        .expect("epi");
    let vanish = HomConstraints::new().maps_into(gm, &Subgroup::trivial(&c2));
    let nu = enumerate_homs(pair.ambient(), &c2, &vanish, true)?
        .next()
        .expect("epi");
    let (dep, prescribed) = wreath_obstruction_dep(&pair, &eta, &nu)?;

    let dep_doc = io::dep_json(&dep, json!({"H": {"construction": "C2 wr C2"}}));
    std::fs::write(
        dir.join("dep.json"),
        serde_json::to_string_pretty(&dep_doc)?,
    )?;
    let eta_doc =
        json!({"format_version": 1, "eta": io::subgroup_hom_json(gm, dep.g(), &prescribed)});
    std::fs::write(
        dir.join("eta.json"),
        serde_json::to_string_pretty(&eta_doc)?,
    )?;
    println!("wrote {}", dir.join("dep.json").display());
    println!("prescribed eta: {}", eta_doc["eta"]);

    let (doc, l) = loader.read("dep.json")?;
    let back = l.dep(&doc)?;
    println!(
        "read back: |H| = {}, |G| = {}",
        back.h().order(),
        back.g().order()
    );
    let sols = solve_weak(&back, false)?;
    match sols.first() {
        Some(s) => println!("first weak solution: {}", io::solution_json(&back, s)?),
        None => println!("no weak solution"),
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
