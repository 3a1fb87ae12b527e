use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::perm::Permutation;

/// Index of a group element. `0` is always the identity.
pub type Elem = usize;

/// Default upper bound on the order of any group the library will materialize.
pub const DEFAULT_ORDER_CAP: usize = 5000;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

/// Current process-wide order cap.
pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

/// Replaces the process-wide order cap used by every constructor.
pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Cap check for orders computed in wide arithmetic before anything is allocated.
pub(crate) fn check_cap_u128(order: u128) -> Result<()> {
    let cap = order_cap();
    if order > cap as u128 {
        Err(Error::OrderCap {
            order: usize::try_from(order).unwrap_or(usize::MAX),
            cap,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_cap(order: usize) -> Result<()> {
    let cap = order_cap();
    if order > cap {
        Err(Error::OrderCap { order, cap })
    } else {
        Ok(())
    }
}

/// A finite group given by its full multiplication table.
///
/// Elements are `0..order`; `0` is the identity. Every group carries a non-empty
/// generating list (empty only for the trivial group) and a Schreier tree over
/// those generators, so each element has a canonical word.
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<Elem>,
    labels: Option<Vec<String>>,
    elem_order: Vec<u32>,
    tree_parent: Vec<u32>,
    tree_gen: Vec<u32>,
    bfs: Vec<Elem>,
    abelian: OnceLock<bool>,
}

impl FiniteGroup {
    /// The trivial group.
    pub fn trivial() -> Self {
        Self::from_raw("1", vec![0], Vec::new(), Some(vec!["()".into()]))
            .expect("trivial group is valid")
    }

    /// Builds the group generated by permutations of `0..degree`.
    ///
    /// Elements are enumerated breadth-first over generator words (generators tried
    /// in the order given), so the element numbering is deterministic. The generator
    /// list is kept exactly as given so that generator words stay meaningful.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        gens: &[Permutation],
    ) -> Result<Self> {
        for (index, g) in gens.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::NotPermutation { index, degree });
            }
        }
        let cap = order_cap();
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        // right[x * k + j] = index of x * gens[j]
        let mut right: Vec<u32> = Vec::new();
        let mut parent = vec![0u32];
        let mut via = vec![0u32];
        let mut i = 0;
        while i < elements.len() {
            for (j, g) in gens.iter().enumerate() {
                let y = elements[i].then(g);
                let idx = match index.get(&y) {
                    Some(&idx) => idx,
                    None => {
                        let idx = elements.len();
                        if idx + 1 > cap {
                            return Err(Error::OrderCap {
                                order: idx + 1,
                                cap,
                            });
                        }
                        index.insert(y.clone(), idx);
                        elements.push(y);
                        parent.push(i as u32);
                        via.push(j as u32);
                        idx
                    }
                };
                right.push(idx as u32);
            }
            i += 1;
        }
        let n = elements.len();
        let k = gens.len();
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            mul[x * n] = x as u32;
        }
        // BFS order equals index order, so parents are always filled first.
        for y in 1..n {
            let p = parent[y] as usize;
            let j = via[y] as usize;
            for x in 0..n {
                let xp = mul[x * n + p] as usize;
                mul[x * n + y] = right[xp * k + j];
            }
        }
        let generators: Vec<Elem> = (0..k)
            .map(|j| right[j] as usize) // identity * gens[j]
            .collect();
        let labels = elements.iter().map(|p| p.to_string()).collect();
        Self::assemble(name, mul, generators, Some(labels), false)
    }

    /// Builds a group from an explicit row-major multiplication table.
    ///
    /// Element `0` must be the identity. The table is checked to be a Latin square and
    /// associative (Light's test over a greedily chosen generating set).
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let mul = latin_square(rows)?;
        let gens = greedy_generators(rows.len(), &mul, 0..rows.len());
        lights_test(rows.len(), &mul, &gens)?;
        Self::from_raw(name, mul, gens, None)
    }

    /// Like [`FiniteGroup::from_table`], but keeps the given generator list, which must
    /// generate the whole group.
    pub fn from_table_with_generators(
        name: impl Into<String>,
        rows: &[Vec<usize>],
        generators: &[Elem],
    ) -> Result<Self> {
        let n = rows.len();
        let mul = latin_square(rows)?;
        if let Some(&g) = generators.iter().find(|&&g| g >= n) {
            return Err(Error::InvalidElement { index: g, order: n });
        }
        lights_test(n, &mul, generators)?;
        Self::assemble(name, mul, generators.to_vec(), None, false)
    }

    /// Assembles a group from a table already known to be a group table.
    ///
    /// `generators` is reduced greedily (identity and redundant entries dropped); it must
    /// generate the whole group.
    pub(crate) fn from_raw(
        name: impl Into<String>,
        mul: Vec<u32>,
        generators: Vec<Elem>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::assemble(name, mul, generators, labels, true)
    }

    fn assemble(
        name: impl Into<String>,
        mul: Vec<u32>,
        generators: Vec<Elem>,
        labels: Option<Vec<String>>,
        reduce: bool,
    ) -> Result<Self> {
        let n = (mul.len() as f64).sqrt().round() as usize;
        if n * n != mul.len() || n == 0 {
            return Err(Error::InvalidTable("table is not square".into()));
        }
        check_cap(n)?;
        let generators = if reduce {
            greedy_generators(n, &mul, generators.into_iter())
        } else {
            generators
        };
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let row = &mul[x * n..(x + 1) * n];
            match row.iter().position(|&v| v == 0) {
                Some(y) => inv[x] = y as u32,
                None => return Err(Error::InvalidTable(format!("element {x} has no inverse"))),
            }
        }
        let mut tree_parent = vec![u32::MAX; n];
        let mut tree_gen = vec![u32::MAX; n];
        tree_parent[0] = 0;
        let mut bfs = vec![0usize];
        let mut i = 0;
        while i < bfs.len() {
            let x = bfs[i];
            for (j, &g) in generators.iter().enumerate() {
                let y = mul[x * n + g] as usize;
                if tree_parent[y] == u32::MAX {
                    tree_parent[y] = x as u32;
                    tree_gen[y] = j as u32;
                    bfs.push(y);
                }
            }
            i += 1;
        }
        if bfs.len() != n {
            return Err(Error::InvalidTable(format!(
                "generators span only {} of {n} elements",
                bfs.len()
            )));
        }
        let mut elem_order = vec![0u32; n];
        for x in 0..n {
            let mut k = 1u32;
            let mut p = x;
            while p != 0 {
                p = mul[p * n + x] as usize;
                k += 1;
            }
            elem_order[x] = k;
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::InvalidInput("label count differs from order".into()));
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            order: n,
            mul,
            inv,
            generators,
            labels,
            elem_order,
            tree_parent,
            tree_gen,
            bfs,
            abelian: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        let k = k % self.elem_order(a);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `x^-1 a x`.
    pub fn conj(&self, a: Elem, x: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), a), x)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> usize {
        self.elem_order[a] as usize
    }

    pub fn exponent(&self) -> usize {
        self.elem_order
            .iter()
            .fold(1usize, |acc, &o| lcm(acc, o as usize))
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        *self.abelian.get_or_init(|| {
            self.generators.iter().all(|&a| {
                self.generators
                    .iter()
                    .all(|&b| self.mul(a, b) == self.mul(b, a))
            })
        })
    }

    /// Elements in breadth-first order from the identity over the generators.
    pub fn bfs_order(&self) -> &[Elem] {
        &self.bfs
    }

    /// Schreier-tree edge: `x = parent * generators()[gen]`, `None` for the identity.
    pub fn tree_edge(&self, x: Elem) -> Option<(Elem, usize)> {
        if x == 0 {
            None
        } else {
            Some((self.tree_parent[x] as usize, self.tree_gen[x] as usize))
        }
    }

    /// Shortest generator word (0-based generator indices) spelling `x`.
    pub fn word(&self, mut x: Elem) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, g)) = self.tree_edge(x) {
            w.push(g);
            x = p;
        }
        w.reverse();
        w
    }

    /// Evaluates a word of 1-based signed generator indices (`-k` is the inverse of
    /// generator `k`). The empty word is the identity.
    pub fn eval_word(&self, word: &[i64]) -> Result<Elem> {
        let mut acc = 0;
        for &letter in word {
            let k = letter.unsigned_abs() as usize;
            if k == 0 || k > self.generators.len() {
                return Err(Error::InvalidInput(format!(
                    "generator index {letter} out of range 1..={} for {}",
                    self.generators.len(),
                    self.name
                )));
            }
            let g = self.generators[k - 1];
            let g = if letter < 0 { self.inv(g) } else { g };
            acc = self.mul(acc, g);
        }
        Ok(acc)
    }

    /// Positive 1-based word for `x`, the inverse of [`FiniteGroup::eval_word`].
    pub fn signed_word(&self, x: Elem) -> Vec<i64> {
        self.word(x).into_iter().map(|g| g as i64 + 1).collect()
    }

    /// Membership mask of the subgroup generated by `seeds`.
    pub fn closure_mask(&self, seeds: &[Elem]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let seeds: Vec<Elem> = seeds.iter().copied().filter(|&s| s != 0).collect();
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &s in &seeds {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        mask
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    /// Fingerprint `(order, abelian, exponent)` used to screen isomorphism checks.
    pub fn fingerprint(&self) -> (usize, bool, usize) {
        (self.order, self.is_abelian(), self.exponent())
    }

    /// Exhaustively checks associativity, identity and inverses. Quadratic-by-linear;
    /// intended for validation of small groups.
    pub fn verify_axioms(&self) -> bool {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return false;
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return false;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.mul == other.mul)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

fn greedy_generators(n: usize, mul: &[u32], candidates: impl Iterator<Item = Elem>) -> Vec<Elem> {
    let mut mask = vec![false; n];
    mask[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for c in candidates {
        if c >= n || mask[c] {
            continue;
        }
        gens.push(c);
        // extend the closure by right multiplication with all generators so far
        let mut i = 0;
        let mut queue = members.clone();
        while i < queue.len() {
            let x = queue[i];
            for &g in &gens {
                let y = mul[x * n + g] as usize;
                if !mask[y] {
                    mask[y] = true;
                    queue.push(y);
                    members.push(y);
                }
            }
            i += 1;
        }
        if members.len() == n {
            break;
        }
    }
    gens
}

/// Flattens a row-major table after checking its shape, the identity at `0` and the
/// Latin-square property.
fn latin_square(rows: &[Vec<usize>]) -> Result<Vec<u32>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidTable("empty table".into()));
    }
    check_cap(n)?;
    let mut mul = vec![0u32; n * n];
    for (x, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidTable(format!(
                "row {x} has length {} instead of {n}",
                row.len()
            )));
        }
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidElement { index: v, order: n });
            }
            mul[x * n + y] = v as u32;
        }
    }
    for x in 0..n {
        if mul[x] as usize != x || mul[x * n] as usize != x {
            return Err(Error::InvalidTable("element 0 is not the identity".into()));
        }
    }
    for x in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for y in 0..n {
            let r = mul[x * n + y] as usize;
            let c = mul[y * n + x] as usize;
            if row_seen[r] || col_seen[c] {
                return Err(Error::InvalidTable(format!(
                    "row or column {x} repeats an entry"
                )));
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }
    Ok(mul)
}

/// Light's associativity test: the set of `a` with `(x a) y = x (a y)` for all `x, y` is
/// closed under products, so checking a generating set suffices.
fn lights_test(n: usize, mul: &[u32], gens: &[Elem]) -> Result<()> {
    for &a in gens {
        for x in 0..n {
            let xa = mul[x * n + a] as usize;
            for y in 0..n {
                let ay = mul[a * n + y] as usize;
                if mul[xa * n + y] != mul[x * n + ay] {
                    return Err(Error::NotAssociative(x, a, y));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    #[test]
    fn s3_from_transposition_and_three_cycle() {
        let g =
            FiniteGroup::from_permutations("S3", 3, &[perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])])
                .unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.verify_axioms());
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::from_permutations("1", 4, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    /// Independent closure count: breadth-first over permutation compositions with a set.
    fn closure_count(degree: usize, gens: &[Permutation]) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![Permutation::identity(degree)];
        seen.insert(Permutation::identity(degree));
        while let Some(x) = stack.pop() {
            for g in gens {
                for y in [x.then(g), g.then(&x)] {
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
        }
        seen.len()
    }

    #[test]
    fn a5_from_five_cycle_and_three_cycle() {
        let gens = [perm(5, &[&[0, 1, 2, 3, 4]]), perm(5, &[&[0, 1, 2]])];
        let expected = closure_count(5, &gens);
        assert_eq!(expected, 60);
        let g = FiniteGroup::from_permutations("A5", 5, &gens).unwrap();
        assert_eq!(g.order(), expected);
    }

    #[test]
    fn wrong_degree_generator_is_rejected() {
        let err = FiniteGroup::from_permutations("x", 4, &[perm(3, &[&[0, 1]])]);
        assert!(matches!(err, Err(Error::NotPermutation { .. })));
    }

    #[test]
    fn table_round_trip_and_validation() {
        // Z/3 table
        let rows = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = FiniteGroup::from_table("C3", &rows).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.table(), rows);

        // Latin square with identity 0 that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table("loop", &loop5),
            Err(Error::NotAssociative(..))
        ));

        let bad_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table("x", &bad_identity).is_err());
    }

    #[test]
    fn words_evaluate_back() {
        let g = FiniteGroup::from_permutations(
            "S4",
            4,
            &[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])],
        )
        .unwrap();
        for x in g.elements() {
            assert_eq!(g.eval_word(&g.signed_word(x)).unwrap(), x);
        }
        assert_eq!(g.eval_word(&[1, -1]).unwrap(), 0);
        assert!(g.eval_word(&[3]).is_err());
    }
}
