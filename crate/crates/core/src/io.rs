//! JSON file formats.
//!
//! Every document read from disk carries `"format_version": 1`. Wherever a group is
//! expected, a *group reference* may be given: a catalog name (`"S4"`), a path to a group
//! file (relative to the referencing file), or an inline group object:
//!
//! ```json
//! {"name": "V4", "kind": "permutation", "degree": 4, "generators": [[[0, 1]], [[2, 3]]]}
//! {"name": "C2", "kind": "table", "table": [[0, 1], [1, 0]]}
//! ```
//!
//! Elements are written as *generator words*: lists of 1-based generator indices, with a
//! negative entry standing for the inverse generator, so `[1, -2]` is `g₁ g₂⁻¹` and `[]` is
//! the identity. A homomorphism is `{"gen_images": [word, ...]}` with one word in the
//! target per generator of the source.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::constructions::GroupAction;
use crate::dep::{DoubleEmbeddingProblem, WeakSolution};
use crate::error::{Error, Result};
use crate::group::{catalog, Elem, FiniteGroup, FinitePair, GroupHom, Permutation, Subgroup};
use crate::sampler::{Exhaustive, ExperimentSpec};

pub const FORMAT_VERSION: u64 = 1;

fn bad(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("{path}: {msg}"))
}

/// Prefixes input errors with a location inside the document; cap errors pass through.
fn at<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::OrderCap { .. } | Error::EnumerationLimit { .. } => e,
        Error::InvalidInput(m) => Error::InvalidInput(format!("{path}.{m}")),
        other => bad(path, other),
    })
}

fn field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| bad(path, format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(path, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(path, "expected an array"))
}

/// Reads documents and resolves group references relative to a base directory.
#[derive(Clone, Debug)]
pub struct Loader {
    base: PathBuf,
}

impl Default for Loader {
    fn default() -> Self {
        Loader {
            base: PathBuf::from("."),
        }
    }
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Loader { base: base.into() }
    }

    /// Reads a JSON document, checks its format version, and returns it with a loader
    /// rooted at the document's directory.
    pub fn read(&self, path: impl AsRef<Path>) -> Result<(Value, Loader)> {
        let full = self.base.join(path.as_ref());
        let text = fs::read_to_string(&full)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", full.display())))?;
        let doc: Value = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", full.display())))?;
        check_version(&doc, &full.display().to_string())?;
        let dir = full.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((doc, Loader::new(dir)))
    }

    /// Resolves a group reference.
    pub fn group(&self, v: &Value, path: &str) -> Result<Arc<FiniteGroup>> {
        match v {
            Value::String(s) => {
                if let Some(g) = catalog::group(s) {
                    return Ok(g);
                }
                let (doc, loader) = self.read(s)?;
                loader.group_object(&doc, s)
            }
            Value::Object(_) => self.group_object(v, path),
            _ => Err(bad(
                path,
                "expected a catalog name, a file path or a group object",
            )),
        }
    }

    fn group_object(&self, v: &Value, path: &str) -> Result<Arc<FiniteGroup>> {
        let name = v
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or("G")
            .to_string();
        let kind = field(v, "kind", path)?
            .as_str()
            .ok_or_else(|| bad(path, "\"kind\" must be a string"))?;
        let group = match kind {
            "permutation" => {
                let degree = as_usize(field(v, "degree", path)?, &format!("{path}.degree"))?;
                let gens = as_array(field(v, "generators", path)?, &format!("{path}.generators"))?;
                let mut perms = Vec::with_capacity(gens.len());
                for (i, g) in gens.iter().enumerate() {
                    let gp = format!("{path}.generators[{i}]");
                    let cycles: Vec<Vec<usize>> = serde_json::from_value(g.clone())
                        .map_err(|e| bad(&gp, format!("expected a list of cycles: {e}")))?;
                    perms.push(at(&gp, Permutation::from_cycles(degree, &cycles))?);
                }
                at(path, FiniteGroup::from_permutations(name, degree, &perms))?
            }
            "table" => {
                let rows: Vec<Vec<usize>> =
                    serde_json::from_value(field(v, "table", path)?.clone())
                        .map_err(|e| bad(&format!("{path}.table"), e))?;
                match v.get("generators") {
                    Some(g) => {
                        let gens: Vec<usize> = serde_json::from_value(g.clone())
                            .map_err(|e| bad(&format!("{path}.generators"), e))?;
                        at(
                            path,
                            FiniteGroup::from_table_with_generators(name, &rows, &gens),
                        )?
                    }
                    None => at(path, FiniteGroup::from_table(name, &rows))?,
                }
            }
            other => return Err(bad(path, format!("unknown group kind \"{other}\""))),
        };
        Ok(Arc::new(group))
    }

    /// Reads a group file or reference given on the command line: a catalog name or a path.
    pub fn group_arg(&self, s: &str) -> Result<Arc<FiniteGroup>> {
        self.group(&Value::String(s.to_string()), s)
    }

    /// Reads a pair file: `{"ambient": group-ref, "distinguished": [words]}`, optionally
    /// nested under `"pair"`.
    pub fn pair(&self, v: &Value, path: &str) -> Result<FinitePair> {
        let (v, path) = match v.get("pair") {
            Some(p) => (p, format!("{path}.pair")),
            None => (v, path.to_string()),
        };
        let ambient = self.group(field(v, "ambient", &path)?, &format!("{path}.ambient"))?;
        let dist = subgroup(
            &ambient,
            field(v, "distinguished", &path)?,
            &format!("{path}.distinguished"),
        )?;
        FinitePair::new(ambient, dist)
    }

    /// Reads a problem file.
    pub fn dep(&self, v: &Value) -> Result<DoubleEmbeddingProblem> {
        let pair = self.pair(field(v, "pair", "")?, "pair")?;
        let h = self.group(field(v, "H", "")?, "H")?;
        let b = self.group(field(v, "B", "")?, "B")?;
        let g = subgroup(&h, field(v, "G", "")?, "G")?;
        let a = subgroup(&b, field(v, "A", "")?, "A")?;
        let beta = hom(&h, &b, field(v, "beta", "")?, "beta")?;
        let nu = hom(pair.ambient(), &b, field(v, "nu", "")?, "nu")?;
        DoubleEmbeddingProblem::new(pair, g, a, beta, nu)
    }

    /// Reads an action file: `{"actor", "space", "act": {"gen_images": [...]}}`. Each
    /// entry of `gen_images` is either the permutation of space elements induced by an actor
    /// generator, or `{"words": [...]}` giving the images of the space generators.
    pub fn action(&self, v: &Value) -> Result<GroupAction> {
        let actor = self.group(field(v, "actor", "")?, "actor")?;
        let space = self.group(field(v, "space", "")?, "space")?;
        let act = field(v, "act", "")?;
        let images = as_array(field(act, "gen_images", "act")?, "act.gen_images")?;
        let mut autos = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let p = format!("act.gen_images[{i}]");
            let auto = match img.get("words") {
                Some(words) => {
                    let h = hom(&space, &space, &json!({ "gen_images": words }), &p)?;
                    if !h.is_injective() {
                        return Err(bad(&p, "not an automorphism"));
                    }
                    h.map().to_vec()
                }
                None => serde_json::from_value(img.clone()).map_err(|e| bad(&p, e))?,
            };
            autos.push(auto);
        }
        at(
            "act",
            GroupAction::from_generator_images(actor, space, &autos),
        )
    }

    /// Reads an experiment file.
    pub fn experiment(&self, v: &Value) -> Result<ExperimentSpec> {
        let bv = field(v, "beta", "")?;
        let h = self.group(field(bv, "source", "beta")?, "beta.source")?;
        let b = self.group(field(bv, "target", "beta")?, "beta.target")?;
        let beta = hom(&h, &b, bv, "beta")?;
        let words = |key: &str, g: &Arc<FiniteGroup>| -> Result<Vec<Elem>> {
            as_array(field(v, key, "")?, key)?
                .iter()
                .enumerate()
                .map(|(i, w)| element(g, w, &format!("{key}[{i}]")))
                .collect()
        };
        let exhaustive = match v.get("exhaustive").and_then(Value::as_str) {
            None | Some("auto") => Exhaustive::Auto,
            Some("force") => Exhaustive::Force,
            Some("off") => Exhaustive::Off,
            Some(other) => return Err(bad("exhaustive", format!("unknown mode \"{other}\""))),
        };
        let int = |key: &str| -> Result<u64> {
            field(v, key, "")?
                .as_u64()
                .ok_or_else(|| bad(key, "expected a non-negative integer"))
        };
        Ok(ExperimentSpec {
            e: int("e")? as usize,
            n: int("n")? as usize,
            b: words("b", &b)?,
            h: words("h", &h)?,
            trials: int("trials")?,
            seed: int("seed")?,
            exhaustive,
            beta,
        })
    }
}

fn check_version(doc: &Value, path: &str) -> Result<()> {
    match doc.get("format_version").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(bad(path, format!("unsupported format_version {v}"))),
        None => Err(bad(path, "missing \"format_version\": 1")),
    }
}

/// Evaluates a generator word.
pub fn element(group: &FiniteGroup, v: &Value, path: &str) -> Result<Elem> {
    let word: Vec<i64> = serde_json::from_value(v.clone()).map_err(|_| {
        bad(
            path,
            "expected a generator word (list of signed 1-based indices)",
        )
    })?;
    at(path, group.eval_word(&word))
}

/// The subgroup generated by a list of words.
pub fn subgroup(group: &Arc<FiniteGroup>, v: &Value, path: &str) -> Result<Subgroup> {
    let elems = words(group, v, path)?;
    Subgroup::generated_by(group, &elems)
}

fn words(group: &FiniteGroup, v: &Value, path: &str) -> Result<Vec<Elem>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, w)| element(group, w, &format!("{path}[{i}]")))
        .collect()
}

/// Reads `{"gen_images": [...]}` for a map from `source` (images of its generators).
pub fn hom(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    v: &Value,
    path: &str,
) -> Result<GroupHom> {
    let images = words(
        target,
        field(v, "gen_images", path)?,
        &format!("{path}.gen_images"),
    )?;
    if images.len() != source.generators().len() {
        return Err(bad(
            path,
            format!(
                "{} generator images for a source with {} generators",
                images.len(),
                source.generators().len()
            ),
        ));
    }
    at(
        path,
        GroupHom::from_gen_images(source.clone(), target.clone(), &images),
    )
}

/// Reads a map `sub → within` given by images of the subgroup's generating words, where
/// `seeds` are the generators the subgroup was specified with.
pub fn hom_on_subgroup(
    sub: &Subgroup,
    seeds: &[Elem],
    within: &Subgroup,
    v: &Value,
    path: &str,
) -> Result<GroupHom> {
    let images = words(
        within.parent(),
        field(v, "gen_images", path)?,
        &format!("{path}.gen_images"),
    )?;
    if images.len() != seeds.len() {
        return Err(bad(
            path,
            format!("{} images for {} generators", images.len(), seeds.len()),
        ));
    }
    let mut pairs = Vec::with_capacity(seeds.len());
    for (i, (&s, &y)) in seeds.iter().zip(&images).enumerate() {
        let ly = within.local_index(y).ok_or_else(|| {
            bad(
                &format!("{path}.gen_images[{i}]"),
                "image outside the target subgroup",
            )
        })?;
        pairs.push((sub.local_index(s).expect("seed lies in its subgroup"), ly));
    }
    at(
        path,
        GroupHom::from_images(sub.to_group(), within.to_group(), &pairs),
    )
}

/// The generator seeds of the distinguished subgroup of a problem or pair file.
pub fn distinguished_seeds(loader: &Loader, doc: &Value) -> Result<Vec<Elem>> {
    let pv = doc.get("pair").unwrap_or(doc);
    let ambient = loader.group(field(pv, "ambient", "pair")?, "pair.ambient")?;
    words(
        &ambient,
        field(pv, "distinguished", "pair")?,
        "pair.distinguished",
    )
}

/// A document's payload under `key`, or the document itself.
pub fn unwrap_key<'a>(doc: &'a Value, key: &str) -> &'a Value {
    doc.get(key).unwrap_or(doc)
}

/// An element as a generator word.
pub fn word_json(group: &FiniteGroup, x: Elem) -> Value {
    json!(group.signed_word(x))
}

/// `{"gen_images": [...]}` for a homomorphism.
pub fn hom_json(hom: &GroupHom) -> Value {
    let images: Vec<Value> = hom
        .source()
        .generators()
        .iter()
        .map(|&g| word_json(hom.target(), hom.apply(g)))
        .collect();
    json!({ "gen_images": images })
}

/// A map between subgroups as `{"gen_images": [...]}`: images of `sub`'s generating words,
/// written as words in the parent of `within`.
pub fn subgroup_hom_json(sub: &Subgroup, within: &Subgroup, hom: &GroupHom) -> Value {
    let images: Vec<Value> = sub
        .generators()
        .iter()
        .map(|&x| {
            let local = sub.local_index(x).expect("generator of its subgroup");
            word_json(within.parent(), within.global(hom.apply(local)))
        })
        .collect();
    json!({ "gen_images": images })
}

/// Generating words of a subgroup.
pub fn subgroup_json(sub: &Subgroup) -> Value {
    Value::Array(
        sub.generators()
            .iter()
            .map(|&x| word_json(sub.parent(), x))
            .collect(),
    )
}

/// A group in table format, keeping its generator list so that words stay meaningful.
pub fn group_json(group: &FiniteGroup, meta: Value) -> Value {
    let mut obj = Map::new();
    obj.insert("format_version".into(), json!(FORMAT_VERSION));
    obj.insert("name".into(), json!(group.name()));
    obj.insert("kind".into(), json!("table"));
    obj.insert("table".into(), json!(group.table()));
    obj.insert("generators".into(), json!(group.generators()));
    if !meta.is_null() {
        obj.insert("meta".into(), meta);
    }
    Value::Object(obj)
}

/// A problem with every group inlined in table format.
pub fn dep_json(dep: &DoubleEmbeddingProblem, meta: Value) -> Value {
    json!({
        "format_version": FORMAT_VERSION,
        "pair": {
            "ambient": group_json(dep.ambient(), Value::Null),
            "distinguished": subgroup_json(dep.distinguished()),
        },
        "H": group_json(dep.h(), meta.get("H").cloned().unwrap_or(Value::Null)),
        "B": group_json(dep.b(), meta.get("B").cloned().unwrap_or(Value::Null)),
        "G": subgroup_json(dep.g()),
        "A": subgroup_json(dep.a()),
        "beta": hom_json(dep.beta()),
        "nu": hom_json(dep.nu()),
    })
}

/// `{"theta": {...}, "verified": true}` after re-verifying the solution.
pub fn solution_json(dep: &DoubleEmbeddingProblem, sol: &WeakSolution) -> Result<Value> {
    sol.verify(dep)?;
    Ok(json!({ "theta": hom_json(&sol.theta), "verified": true }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_references() {
        let l = Loader::default();
        assert_eq!(l.group(&json!("A5"), "g").unwrap().order(), 60);
        let v4 = json!({"name": "V4", "kind": "permutation", "degree": 4, "generators": [[[0, 1]], [[2, 3]]]});
        assert_eq!(l.group(&v4, "g").unwrap().order(), 4);
        let c2 = json!({"kind": "table", "table": [[0, 1], [1, 0]]});
        assert_eq!(l.group(&c2, "g").unwrap().order(), 2);
        let err = l
            .group(&json!({"kind": "table", "table": [[0, 1], [0, 1]]}), "H")
            .unwrap_err();
        assert!(err.to_string().contains("H"));
        assert!(l.group(&json!("no/such/file.json"), "g").is_err());
    }

    #[test]
    fn table_round_trip_keeps_words() {
        let s4 = catalog::group("S4").unwrap();
        let doc = group_json(&s4, json!({"construction": "catalog"}));
        let back = Loader::default().group(&doc, "g").unwrap();
        assert_eq!(*back, *s4);
        for x in s4.elements() {
            assert_eq!(element(&back, &word_json(&s4, x), "w").unwrap(), x);
        }
    }

    #[test]
    fn words_and_homs() {
        let s3 = catalog::group("S3").unwrap();
        let c2 = catalog::group("C2").unwrap();
        let sign = hom(&s3, &c2, &json!({"gen_images": [[1], []]}), "beta").unwrap();
        assert!(sign.is_surjective());
        let e = hom(&s3, &c2, &json!({"gen_images": [[1], [1]]}), "beta").unwrap_err();
        assert!(e.to_string().starts_with("invalid input: beta"), "{e}");
        assert!(element(&s3, &json!([3]), "w").is_err());
        assert!(element(&s3, &json!([1, -1]), "w").unwrap() == 0);
    }

    #[test]
    fn version_is_required() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.json");
        fs::write(&p, r#"{"kind": "table", "table": [[0]]}"#).unwrap();
        assert!(Loader::default().read(&p).is_err());
        fs::write(
            &p,
            r#"{"format_version": 1, "kind": "table", "table": [[0]]}"#,
        )
        .unwrap();
        let l = Loader::new(dir.path());
        assert_eq!(l.group_arg("g.json").unwrap().order(), 1);
    }
}
