//! Product constructions: direct, fiber, semidirect and wreath products, fiber powers,
//! and lifting through a cartesian square.
//!
//! Product elements use a mixed-radix index over component indices with the identity at
//! `0`, so components can be read back in constant time.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{check_cap_u128, Elem, FiniteGroup, GroupHom, Subgroup};

/// `G × H` with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: Arc<FiniteGroup>,
    pub inj_left: GroupHom,
    pub inj_right: GroupHom,
    pub proj_left: GroupHom,
    pub proj_right: GroupHom,
}

/// Element `(a, b)` is stored at index `a + |G| * b`.
pub fn direct_product(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Result<DirectProduct> {
    let (m, n) = (g.order(), h.order());
    check_cap_u128(m as u128 * n as u128)?;
    let total = m * n;
    let mut mul = vec![0u32; total * total];
    for x in 0..total {
        let (xa, xb) = (x % m, x / m);
        for y in 0..total {
            let (ya, yb) = (y % m, y / m);
            mul[x * total + y] = (g.mul(xa, ya) + m * h.mul(xb, yb)) as u32;
        }
    }
    let mut gens: Vec<Elem> = g.generators().to_vec();
    gens.extend(h.generators().iter().map(|&b| m * b));
    let group = Arc::new(FiniteGroup::from_raw(
        format!("{}x{}", g.name(), h.name()),
        mul,
        gens,
        None,
    )?);
    Ok(DirectProduct {
        inj_left: GroupHom::from_map_unchecked(g.clone(), group.clone(), g.elements().collect()),
        inj_right: GroupHom::from_map_unchecked(
            h.clone(),
            group.clone(),
            h.elements().map(|b| m * b).collect(),
        ),
        proj_left: GroupHom::from_map_unchecked(
            group.clone(),
            g.clone(),
            (0..total).map(|x| x % m).collect(),
        ),
        proj_right: GroupHom::from_map_unchecked(
            group.clone(),
            h.clone(),
            (0..total).map(|x| x / m).collect(),
        ),
        group,
    })
}

/// A commuting square `total → left → base ← right ← total` that is a pullback.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub total: Arc<FiniteGroup>,
    pub left_proj: GroupHom,
    pub right_proj: GroupHom,
    pub left_base: GroupHom,
    pub right_base: GroupHom,
}

/// `H ×_Q G = {(h, g) : beta(h) = alpha(g)}` for `beta: H → Q`, `alpha: G → Q`.
pub fn fiber_product(beta: &GroupHom, alpha: &GroupHom) -> Result<FiberProduct> {
    if **beta.target() != **alpha.target() {
        return Err(Error::GroupMismatch(format!(
            "fiber product over different groups {} and {}",
            beta.target().name(),
            alpha.target().name()
        )));
    }
    let h = beta.source().clone();
    let g = alpha.source().clone();
    let q = beta.target().clone();
    let fibers_h = fibers(beta);
    let fibers_g = fibers(alpha);
    let kh = beta.kernel().order();
    let kg = alpha.kernel().order();
    let common: Vec<Elem> = q
        .elements()
        .filter(|&x| !fibers_h.0[x].is_empty() && !fibers_g.0[x].is_empty())
        .collect();
    check_cap_u128(common.len() as u128 * kh as u128 * kg as u128)?;
    let mut rank = vec![usize::MAX; q.order()];
    for (i, &x) in common.iter().enumerate() {
        rank[x] = i;
    }
    let block = kh * kg;
    let total = common.len() * block;
    let mut left = Vec::with_capacity(total);
    let mut right = Vec::with_capacity(total);
    for &x in &common {
        for pg in 0..kg {
            for ph in 0..kh {
                left.push(fibers_h.0[x][ph]);
                right.push(fibers_g.0[x][pg]);
            }
        }
    }
    let index = |a: Elem, b: Elem| -> usize {
        rank[beta.apply(a)] * block + fibers_h.1[a] + kh * fibers_g.1[b]
    };
    let mut mul = vec![0u32; total * total];
    for x in 0..total {
        for y in 0..total {
            mul[x * total + y] = index(h.mul(left[x], left[y]), g.mul(right[x], right[y])) as u32;
        }
    }
    let group = Arc::new(FiniteGroup::from_raw(
        format!("{}x_{}{}", h.name(), q.name(), g.name()),
        mul,
        (0..total).collect(),
        None,
    )?);
    Ok(FiberProduct {
        left_proj: GroupHom::from_map_unchecked(group.clone(), h, left),
        right_proj: GroupHom::from_map_unchecked(group.clone(), g, right),
        left_base: beta.clone(),
        right_base: alpha.clone(),
        total: group,
    })
}

/// Fibers of a homomorphism over each target element (sorted) and each source element's
/// position inside its fiber.
fn fibers(hom: &GroupHom) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut fib = vec![Vec::new(); hom.target().order()];
    let mut pos = vec![0; hom.source().order()];
    for x in hom.source().elements() {
        let f = &mut fib[hom.apply(x)];
        pos[x] = f.len();
        f.push(x);
    }
    (fib, pos)
}

impl FiberProduct {
    /// Recognizes an existing group `corner` with maps to `left` and `right` as the fiber
    /// product of `left_base` and `right_base`, checking that the square commutes and that
    /// `corner → left ×_Q right` is bijective.
    pub fn from_cartesian_square(
        to_left: &GroupHom,
        to_right: &GroupHom,
        left_base: &GroupHom,
        right_base: &GroupHom,
    ) -> Result<FiberProduct> {
        let corner = to_left.source().clone();
        if **to_right.source() != *corner {
            return Err(Error::GroupMismatch(
                "square maps leave different corners".into(),
            ));
        }
        let via_left = to_left.then(left_base)?;
        let via_right = to_right.then(right_base)?;
        if let Some(x) = corner
            .elements()
            .find(|&x| via_left.apply(x) != via_right.apply(x))
        {
            return Err(Error::IncompatibleAt(x));
        }
        let mut seen = HashMap::new();
        for x in corner.elements() {
            if seen
                .insert((to_left.apply(x), to_right.apply(x)), x)
                .is_some()
            {
                return Err(Error::Precondition(format!(
                    "square is not cartesian: element {x} is not determined by its projections"
                )));
            }
        }
        let (fl, _) = fibers(left_base);
        let (fr, _) = fibers(right_base);
        let pairs: usize = fl.iter().zip(&fr).map(|(a, b)| a.len() * b.len()).sum();
        if pairs != corner.order() {
            return Err(Error::Precondition(format!(
                "square is not cartesian: {} pairs but corner of order {}",
                pairs,
                corner.order()
            )));
        }
        Ok(FiberProduct {
            total: corner,
            left_proj: to_left.clone(),
            right_proj: to_right.clone(),
            left_base: left_base.clone(),
            right_base: right_base.clone(),
        })
    }

    /// The element of the total group with the given projections, if any.
    pub fn element_with(&self, left: Elem, right: Elem) -> Option<Elem> {
        self.total
            .elements()
            .find(|&x| self.left_proj.apply(x) == left && self.right_proj.apply(x) == right)
    }

    /// Checks that both projections are homomorphisms and the square commutes.
    pub fn verify(&self) -> bool {
        let via_left = self.left_proj.then(&self.left_base);
        let via_right = self.right_proj.then(&self.right_base);
        match (via_left, via_right) {
            (Ok(a), Ok(b)) => {
                a == b && self.left_proj.is_homomorphism() && self.right_proj.is_homomorphism()
            }
            _ => false,
        }
    }
}

/// Lifts a pair of homomorphisms `L → left` and `L → right` that agree over the base to the
/// unique homomorphism `L → total` of a cartesian square.
pub fn fiber_lift(
    to_left: &GroupHom,
    to_right: &GroupHom,
    square: &FiberProduct,
) -> Result<GroupHom> {
    let source = to_left.source().clone();
    if **to_right.source() != *source {
        return Err(Error::GroupMismatch(
            "lift data leave different groups".into(),
        ));
    }
    if **to_left.target() != **square.left_proj.target()
        || **to_right.target() != **square.right_proj.target()
    {
        return Err(Error::GroupMismatch(
            "lift data do not land in the square".into(),
        ));
    }
    let mut lookup = HashMap::new();
    for x in square.total.elements() {
        lookup.insert((square.left_proj.apply(x), square.right_proj.apply(x)), x);
    }
    let mut map = Vec::with_capacity(source.order());
    for l in source.elements() {
        let key = (to_left.apply(l), to_right.apply(l));
        if square.left_base.apply(key.0) != square.right_base.apply(key.1) {
            return Err(Error::IncompatibleAt(l));
        }
        match lookup.get(&key) {
            Some(&x) => map.push(x),
            None => return Err(Error::IncompatibleAt(l)),
        }
    }
    GroupHom::new(source, square.total.clone(), map)
}

/// A left action of `actor` on `space` by automorphisms, stored as a full table.
#[derive(Clone)]
pub struct GroupAction {
    actor: Arc<FiniteGroup>,
    space: Arc<FiniteGroup>,
    // act[q * |A| + a]
    table: Arc<Vec<u32>>,
}

impl std::fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupAction({} on {})",
            self.actor.name(),
            self.space.name()
        )
    }
}

impl GroupAction {
    /// Validates a full action table `act[q][a]`.
    pub fn new(
        actor: Arc<FiniteGroup>,
        space: Arc<FiniteGroup>,
        table: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        if table.len() != actor.order() || table.iter().any(|r| r.len() != space.order()) {
            return Err(Error::InvalidAction(
                "table shape does not match the groups".into(),
            ));
        }
        let flat = table
            .iter()
            .flat_map(|r| r.iter().map(|&v| v as u32))
            .collect();
        let action = GroupAction {
            actor,
            space,
            table: Arc::new(flat),
        };
        action.validate()?;
        Ok(action)
    }

    /// Extends automorphisms given on the actor's generators (each a permutation of the space
    /// elements) to a full action.
    pub fn from_generator_images(
        actor: Arc<FiniteGroup>,
        space: Arc<FiniteGroup>,
        images: &[Vec<Elem>],
    ) -> Result<Self> {
        if images.len() != actor.generators().len() {
            return Err(Error::InvalidAction(format!(
                "{} generator automorphisms given, actor has {} generators",
                images.len(),
                actor.generators().len()
            )));
        }
        let a = space.order();
        for (i, img) in images.iter().enumerate() {
            if img.len() != a || img.iter().any(|&v| v >= a) {
                return Err(Error::InvalidAction(format!(
                    "image {i} is not a map on the {a} space elements"
                )));
            }
        }
        let mut table = vec![u32::MAX; actor.order() * a];
        for (x, slot) in table[..a].iter_mut().enumerate() {
            *slot = x as u32;
        }
        for &q in actor.bfs_order().iter().skip(1) {
            let (p, gi) = actor.tree_edge(q).expect("non-identity has a tree edge");
            // act(p s, x) = act(p, act(s, x))
            for x in 0..a {
                table[q * a + x] = table[p * a + images[gi][x]];
            }
        }
        let action = GroupAction {
            actor,
            space,
            table: Arc::new(table),
        };
        action.validate()?;
        Ok(action)
    }

    pub fn trivial(actor: &Arc<FiniteGroup>, space: &Arc<FiniteGroup>) -> Self {
        let table = (0..actor.order())
            .flat_map(|_| space.elements().map(|x| x as u32))
            .collect();
        GroupAction {
            actor: actor.clone(),
            space: space.clone(),
            table: Arc::new(table),
        }
    }

    /// The parent group acting on a normal subgroup by conjugation, `q · n = q n q^-1`.
    pub fn conjugation(normal: &Subgroup) -> Result<Self> {
        if !normal.is_normal() {
            return Err(Error::NotNormal(format!("{normal:?}")));
        }
        let parent = normal.parent();
        let space = normal.to_group();
        let a = space.order();
        let mut table = Vec::with_capacity(parent.order() * a);
        for q in parent.elements() {
            for x in 0..a {
                let c = parent.conj(normal.global(x), parent.inv(q));
                table.push(normal.local_index(c).expect("normal subgroup") as u32);
            }
        }
        Ok(GroupAction {
            actor: parent.clone(),
            space,
            table: Arc::new(table),
        })
    }

    /// Pulls the action back along `hom: Q' → actor`.
    pub fn pullback(&self, hom: &GroupHom) -> Result<Self> {
        if **hom.target() != *self.actor {
            return Err(Error::GroupMismatch(
                "pullback along a map into another group".into(),
            ));
        }
        let a = self.space.order();
        let table = hom
            .source()
            .elements()
            .flat_map(|q| {
                let row = hom.apply(q) * a;
                self.table[row..row + a].to_vec()
            })
            .collect();
        Ok(GroupAction {
            actor: hom.source().clone(),
            space: self.space.clone(),
            table: Arc::new(table),
        })
    }

    /// Restriction of the action to a subgroup of the actor (as a standalone group).
    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        self.pullback(&sub.embedding())
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn space(&self) -> &Arc<FiniteGroup> {
        &self.space
    }

    #[inline]
    pub fn act(&self, q: Elem, a: Elem) -> Elem {
        self.table[q * self.space.order() + a] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.actor
            .elements()
            .all(|q| self.space.elements().all(|a| self.act(q, a) == a))
    }

    /// Checks the identity, composition and automorphism laws exhaustively.
    pub fn validate(&self) -> Result<()> {
        let (q_ord, a_ord) = (self.actor.order(), self.space.order());
        for q in 0..q_ord {
            let mut hit = vec![false; a_ord];
            for a in 0..a_ord {
                let v = self.table[q * a_ord + a];
                if v as usize >= a_ord || hit[v as usize] {
                    return Err(Error::InvalidAction(format!(
                        "act({q}, -) is not a bijection"
                    )));
                }
                hit[v as usize] = true;
            }
            for a in 0..a_ord {
                for b in 0..a_ord {
                    if self.act(q, self.space.mul(a, b))
                        != self.space.mul(self.act(q, a), self.act(q, b))
                    {
                        return Err(Error::InvalidAction(format!(
                            "act({q}, -) does not preserve the product of {a} and {b}"
                        )));
                    }
                }
            }
        }
        for a in 0..a_ord {
            if self.act(0, a) != a {
                return Err(Error::InvalidAction(
                    "identity does not act trivially".into(),
                ));
            }
        }
        for &s in self.actor.generators() {
            for q in 0..q_ord {
                let qs = self.actor.mul(q, s);
                for a in 0..a_ord {
                    if self.act(qs, a) != self.act(q, self.act(s, a)) {
                        return Err(Error::InvalidAction(format!(
                            "act({q}*{s}) differs from act({q}) after act({s})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `A ⋊ Q` with its canonical maps.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: Arc<FiniteGroup>,
    pub embed_space: GroupHom,
    pub embed_actor: GroupHom,
    pub quot: GroupHom,
    pub action: GroupAction,
}

impl SemidirectProduct {
    /// Index of `(a, q)`.
    pub fn pair(&self, a: Elem, q: Elem) -> Elem {
        a + self.action.space().order() * q
    }

    /// Components of an element.
    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        let a = self.action.space().order();
        (x % a, x / a)
    }
}

/// `A ⋊ Q` with `(a, q)(a', q') = (a · act(q, a'), q q')`; `(a, q)` sits at `a + |A| q`.
pub fn semidirect_product(action: &GroupAction) -> Result<SemidirectProduct> {
    let name = format!("{}:{}", action.space().name(), action.actor().name());
    semidirect_named(action, name)
}

fn semidirect_named(action: &GroupAction, name: String) -> Result<SemidirectProduct> {
    let space = action.space();
    let actor = action.actor();
    let (m, n) = (space.order(), actor.order());
    check_cap_u128(m as u128 * n as u128)?;
    let total = m * n;
    let mut mul = vec![0u32; total * total];
    for x in 0..total {
        let (xa, xq) = (x % m, x / m);
        for y in 0..total {
            let (ya, yq) = (y % m, y / m);
            let a = space.mul(xa, action.act(xq, ya));
            mul[x * total + y] = (a + m * actor.mul(xq, yq)) as u32;
        }
    }
    let mut gens: Vec<Elem> = space.generators().to_vec();
    gens.extend(actor.generators().iter().map(|&q| m * q));
    let group = Arc::new(FiniteGroup::from_raw(name, mul, gens, None)?);
    Ok(SemidirectProduct {
        embed_space: GroupHom::from_map_unchecked(
            space.clone(),
            group.clone(),
            space.elements().collect(),
        ),
        embed_actor: GroupHom::from_map_unchecked(
            actor.clone(),
            group.clone(),
            actor.elements().map(|q| m * q).collect(),
        ),
        quot: GroupHom::from_map_unchecked(
            group.clone(),
            actor.clone(),
            (0..total).map(|x| x / m).collect(),
        ),
        action: action.clone(),
        group,
    })
}

/// `A ≀ G = A^G ⋊ G` under the translation action, with `A` identified with the
/// coordinate subgroup at the identity of `G`.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    pub group: Arc<FiniteGroup>,
    pub base: Arc<FiniteGroup>,
    pub base_embed: GroupHom,
    pub top_quot: GroupHom,
    pub coord_embed: GroupHom,
    pub top_embed: GroupHom,
    semidirect: SemidirectProduct,
    space: Arc<FiniteGroup>,
}

impl WreathProduct {
    /// The coordinate subgroup `A^g`, i.e. functions supported on `{g}`.
    pub fn coordinate_subgroup(&self, g: Elem) -> Subgroup {
        let a = self.space.order();
        let stride = a.pow(g as u32);
        let members: Vec<Elem> = (0..a)
            .map(|x| self.semidirect.pair(x * stride, 0))
            .collect();
        Subgroup::from_members(&self.group, &members).expect("coordinate copies are subgroups")
    }

    /// Splits an element into (base function as coordinate list, top element).
    pub fn components(&self, x: Elem) -> (Vec<Elem>, Elem) {
        let (f, g) = self.semidirect.split(x);
        let a = self.space.order();
        let n = self.top_quot.target().order();
        let mut coords = Vec::with_capacity(n);
        let mut rest = f;
        for _ in 0..n {
            coords.push(rest % a);
            rest /= a;
        }
        (coords, g)
    }
}

/// Regular wreath product. Base coordinates are ordered by the element order of `G`.
pub fn wreath_product(a: &Arc<FiniteGroup>, g: &Arc<FiniteGroup>) -> Result<WreathProduct> {
    let (ao, go) = (a.order(), g.order());
    let base_order = (ao as u128).checked_pow(go as u32).unwrap_or(u128::MAX);
    check_cap_u128(base_order.saturating_mul(go as u128))?;
    let base_order = base_order as usize;
    // f = Σ f(x) a^x
    let digits = |mut f: usize| -> Vec<Elem> {
        let mut d = Vec::with_capacity(go);
        for _ in 0..go {
            d.push(f % ao);
            f /= ao;
        }
        d
    };
    let encode = |d: &[Elem]| -> usize { d.iter().rev().fold(0, |acc, &x| acc * ao + x) };
    let all_digits: Vec<Vec<Elem>> = (0..base_order).map(digits).collect();
    let mut base_mul = vec![0u32; base_order * base_order];
    for x in 0..base_order {
        for y in 0..base_order {
            let d: Vec<Elem> = all_digits[x]
                .iter()
                .zip(&all_digits[y])
                .map(|(&p, &q)| a.mul(p, q))
                .collect();
            base_mul[x * base_order + y] = encode(&d) as u32;
        }
    }
    let mut base_gens = Vec::new();
    for coord in 0..go {
        for &s in a.generators() {
            base_gens.push(s * ao.pow(coord as u32));
        }
    }
    let base = Arc::new(FiniteGroup::from_raw(
        format!("{}^{}", a.name(), go),
        base_mul,
        base_gens,
        None,
    )?);
    // (x · f)(y) = f(x^-1 y)
    let mut table = Vec::with_capacity(go);
    for x in g.elements() {
        let xi = g.inv(x);
        let row: Vec<Elem> = (0..base_order)
            .map(|f| {
                let d = &all_digits[f];
                let moved: Vec<Elem> = g.elements().map(|y| d[g.mul(xi, y)]).collect();
                encode(&moved)
            })
            .collect();
        table.push(row);
    }
    let action = GroupAction::new(g.clone(), base.clone(), table)?;
    let sd = semidirect_named(&action, format!("{}wr{}", a.name(), g.name()))?;
    let group = sd.group.clone();
    let coord_embed =
        GroupHom::from_map_unchecked(a.clone(), group.clone(), a.elements().collect());
    Ok(WreathProduct {
        base_embed: sd.embed_space.clone(),
        top_embed: sd.embed_actor.clone(),
        top_quot: sd.quot.clone(),
        coord_embed,
        base,
        group,
        semidirect: sd,
        space: a.clone(),
    })
}

/// `Δ_n = {(h_1..h_n) ∈ H^n : β(h_i) = β(h_j)}` with its coordinate projections.
#[derive(Clone, Debug)]
pub struct FiberPower {
    pub base: GroupHom,
    pub n: usize,
    pub total: Arc<FiniteGroup>,
    pub projections: Vec<GroupHom>,
    pub beta_hat: GroupHom,
}

/// Builds `Δ_n` for `beta: H → B`. Elements are ordered by their common image in `B`, then
/// by the positions of the coordinates inside that fiber (mixed radix, first coordinate
/// fastest); the all-identity tuple is element `0`.
pub fn fiber_power(beta: &GroupHom, n: usize) -> Result<FiberPower> {
    if n == 0 {
        return Err(Error::Precondition(
            "fiber power level must be positive".into(),
        ));
    }
    let h = beta.source().clone();
    let k = beta.kernel().order();
    let image: Vec<Elem> = beta.image().members().to_vec();
    let block = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    check_cap_u128(block.saturating_mul(image.len() as u128))?;
    let block = block as usize;
    let (fib, pos) = fibers(beta);
    let mut rank = vec![usize::MAX; beta.target().order()];
    for (i, &b) in image.iter().enumerate() {
        rank[b] = i;
    }
    let total = block * image.len();
    let tuples: Vec<Vec<Elem>> = (0..total)
        .map(|x| {
            let b = image[x / block];
            let mut r = x % block;
            (0..n)
                .map(|_| {
                    let p = r % k;
                    r /= k;
                    fib[b][p]
                })
                .collect()
        })
        .collect();
    let index = |t: &[Elem]| -> usize {
        let b = beta.apply(t[0]);
        rank[b] * block + t.iter().rev().fold(0, |acc, &x| acc * k + pos[x])
    };
    let mut mul = vec![0u32; total * total];
    let mut buf = vec![0; n];
    for x in 0..total {
        for y in 0..total {
            for i in 0..n {
                buf[i] = h.mul(tuples[x][i], tuples[y][i]);
            }
            mul[x * total + y] = index(&buf) as u32;
        }
    }
    let group = Arc::new(FiniteGroup::from_raw(
        format!("Delta{}({}->{})", n, h.name(), beta.target().name()),
        mul,
        (0..total).collect(),
        None,
    )?);
    let projections = (0..n)
        .map(|i| {
            GroupHom::from_map_unchecked(
                group.clone(),
                h.clone(),
                tuples.iter().map(|t| t[i]).collect(),
            )
        })
        .collect();
    let beta_hat = GroupHom::from_map_unchecked(
        group.clone(),
        beta.target().clone(),
        (0..total).map(|x| image[x / block]).collect(),
    );
    Ok(FiberPower {
        base: beta.clone(),
        n,
        total: group,
        projections,
        beta_hat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, enumerate_homs, HomConstraints};

    fn sign() -> GroupHom {
        let s3 = catalog::group("S3").unwrap();
        let c2 = catalog::group("C2").unwrap();
        enumerate_homs(&s3, &c2, &HomConstraints::new(), true)
            .unwrap()
            .next()
            .unwrap()
    }

    #[test]
    fn direct_products() {
        let c2 = catalog::group("C2").unwrap();
        let c3 = catalog::group("C3").unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        assert_eq!(v.group.order(), 4);
        assert_eq!(v.group.exponent(), 2);
        let c6 = direct_product(&c2, &c3).unwrap();
        assert!(c6.group.elements().any(|x| c6.group.elem_order(x) == 6));
        let s3 = catalog::group("S3").unwrap();
        let one = Arc::new(FiniteGroup::trivial());
        let p = direct_product(&s3, &one).unwrap();
        assert_eq!(p.group.order(), 6);
        assert!(crate::group::is_isomorphic(&p.group, &s3));
        for m in [&p.inj_left, &p.inj_right, &p.proj_left, &p.proj_right] {
            assert!(m.is_homomorphism());
        }
    }

    #[test]
    fn fiber_product_examples() {
        let c2 = catalog::group("C2").unwrap();
        let id = GroupHom::identity(&c2);
        assert_eq!(fiber_product(&id, &id).unwrap().total.order(), 2);
        let sg = sign();
        let fp = fiber_product(&sg, &sg).unwrap();
        assert_eq!(fp.total.order(), 18);
        assert!(fp.verify());
        assert!(fp.left_proj.is_surjective() && fp.right_proj.is_surjective());
        let one = Arc::new(FiniteGroup::trivial());
        let from_one = GroupHom::trivial(&one, &c2);
        let k = fiber_product(&sg, &from_one).unwrap();
        assert_eq!(k.total.order(), 3);
        assert_eq!(k.left_proj.image(), sg.kernel());
        let c3 = catalog::group("C3").unwrap();
        assert!(fiber_product(&sg, &GroupHom::identity(&c3)).is_err());
    }

    #[test]
    fn semidirect_examples() {
        let c2 = catalog::group("C2").unwrap();
        let c3 = catalog::group("C3").unwrap();
        let v4 = semidirect_product(&GroupAction::trivial(&c2, &c2)).unwrap();
        assert_eq!(v4.group.order(), 4);
        assert_eq!(v4.group.exponent(), 2);
        let inv: Vec<Elem> = c3.elements().map(|x| c3.inv(x)).collect();
        let act = GroupAction::from_generator_images(c2.clone(), c3.clone(), &[inv]).unwrap();
        let s3 = semidirect_product(&act).unwrap();
        assert_eq!(s3.group.order(), 6);
        assert!(!s3.group.is_abelian());
        assert_eq!(
            s3.embed_actor.then(&s3.quot).unwrap(),
            GroupHom::identity(&c2)
        );
        assert_eq!(s3.quot.kernel(), s3.embed_space.image());
        let one = Arc::new(FiniteGroup::trivial());
        let triv = semidirect_product(&GroupAction::trivial(&one, &c3)).unwrap();
        assert_eq!(triv.group.order(), 3);
        // an endomorphism that is not bijective is rejected
        assert!(
            GroupAction::from_generator_images(c2.clone(), c3.clone(), &[vec![0, 0, 0]]).is_err()
        );
    }

    #[test]
    fn wreath_examples() {
        let c2 = catalog::group("C2").unwrap();
        let c3 = catalog::group("C3").unwrap();
        let w = wreath_product(&c2, &c2).unwrap();
        assert_eq!(w.group.order(), 8);
        assert!(!w.group.is_abelian());
        let center = w
            .group
            .elements()
            .filter(|&z| {
                w.group
                    .elements()
                    .all(|x| w.group.mul(x, z) == w.group.mul(z, x))
            })
            .count();
        assert_eq!(center, 2);
        assert_eq!(wreath_product(&c3, &c2).unwrap().group.order(), 18);
        let one = Arc::new(FiniteGroup::trivial());
        assert_eq!(wreath_product(&c3, &one).unwrap().group.order(), 3);
        let big = wreath_product(&c3, &c3).unwrap();
        assert_eq!(big.group.order(), 81);
        // distinct coordinate copies meet trivially, and conjugating A^1 by a top element moves it
        let a1 = big.coordinate_subgroup(0);
        assert_eq!(a1, big.coord_embed.image());
        for g in 1..3 {
            let ag = big.coordinate_subgroup(g);
            assert!(a1.intersection(&ag).is_trivial());
            let t = big.top_embed.apply(g);
            assert_eq!(a1.conjugate(big.group.inv(t)), ag);
        }
        for m in [
            &big.base_embed,
            &big.top_quot,
            &big.coord_embed,
            &big.top_embed,
        ] {
            assert!(m.is_homomorphism());
        }
        let a4 = catalog::group("A4").unwrap();
        assert!(matches!(
            wreath_product(&c3, &a4),
            Err(Error::OrderCap { .. })
        ));
        let s3 = catalog::group("S3").unwrap();
        assert_eq!(wreath_product(&c2, &s3).unwrap().group.order(), 384);
    }

    #[test]
    fn fiber_powers() {
        let sg = sign();
        let d1 = fiber_power(&sg, 1).unwrap();
        assert_eq!(d1.total.order(), 6);
        assert!(d1.projections[0].is_injective());
        assert_eq!(fiber_power(&sg, 2).unwrap().total.order(), 18);
        let d3 = fiber_power(&sg, 3).unwrap();
        assert_eq!(d3.total.order(), 54);
        for p in &d3.projections {
            assert!(p.is_homomorphism());
            assert_eq!(p.then(&sg).unwrap(), d3.beta_hat);
        }
        assert!(d3.beta_hat.is_surjective());
    }

    #[test]
    fn cartesian_lift() {
        // (id, sign) exhibits S3 as the fiber product of sign and the identity of C2
        let sg = sign();
        let s3 = sg.source().clone();
        let id = GroupHom::identity(&s3);
        let square =
            FiberProduct::from_cartesian_square(&id, &sg, &sg, &GroupHom::identity(sg.target()))
                .unwrap();
        let c2 = sg.target().clone();
        let lifted = fiber_lift(&id, &sg, &square).unwrap();
        assert_eq!(lifted, id);
        // incompatible: left says identity, right says constant
        let bad = fiber_lift(&id, &GroupHom::trivial(&s3, &c2), &square);
        assert!(matches!(bad, Err(Error::IncompatibleAt(_))));
    }
}
