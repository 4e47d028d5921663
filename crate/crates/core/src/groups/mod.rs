//! Materialized finite groups.
//!
//! Every group is fully enumerated. Element ids are assigned
//! deterministically: the identity is id 0 and the remaining elements follow
//! in increasing order of their canonical descriptors. Groups up to
//! [`TABLE_ORDER_LIMIT`] elements carry a full multiplication table; larger
//! ones multiply descriptors on demand and look the product up.

pub mod abelian;
pub mod automorphism;
pub mod literal;
pub mod matrix;
pub mod perm;
pub mod subgroups;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngExt};
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::finfield::{make_field, prime_power, FieldCtx};

pub use abelian::AbelianGroup;
pub use automorphism::{automorphism_group, find_isomorphism, Automorphism};
pub use matrix::{Mat2, MatrixFamily};
pub use subgroups::SubgroupLattice;

pub type ElementId = u32;

/// Largest group order `build_group` accepts.
pub const GROUP_ORDER_CAP: u64 = 1_000_000;
/// Largest order for which the multiplication table is materialized.
pub const TABLE_ORDER_LIMIT: usize = 4096;

/// Parsed group spec: `psl2:<q>`, `sl2:<q>`, `pgl2:<q>`, `sym:<n>`,
/// `alt:<n>` or `ab:<d1>,<d2>,...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupSpec {
    Psl2(u64),
    Sl2(u64),
    Pgl2(u64),
    Sym(usize),
    Alt(usize),
    Ab(Vec<u32>),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let bad = || Error::GroupSpec(s.to_string());
        let (family, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        Ok(match family {
            "psl2" => GroupSpec::Psl2(num(arg)?),
            "sl2" => GroupSpec::Sl2(num(arg)?),
            "pgl2" => GroupSpec::Pgl2(num(arg)?),
            "sym" => GroupSpec::Sym(num(arg)? as usize),
            "alt" => GroupSpec::Alt(num(arg)? as usize),
            "ab" => GroupSpec::Ab(
                arg.split(',')
                    .map(|t| num(t).and_then(|v| u32::try_from(v).map_err(|_| bad())))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Sl2(q) => write!(f, "sl2:{q}"),
            GroupSpec::Pgl2(q) => write!(f, "pgl2:{q}"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Ab(ds) => {
                let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "ab:{}", parts.join(","))
            }
        }
    }
}

/// Concrete representation of one group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Descriptor {
    Perm(perm::Perm),
    Mat(Mat2),
    Residues(abelian::Residues),
}

#[derive(Clone, Debug)]
pub enum GroupKind {
    Perm { degree: usize },
    Matrix { field: FieldCtx, family: MatrixFamily },
    Abelian(AbelianGroup),
}

/// A fully enumerated finite group. Immutable after construction.
pub struct FiniteGroupTable {
    spec: GroupSpec,
    kind: GroupKind,
    elements: Vec<Descriptor>,
    index: HashMap<Descriptor, ElementId>,
    table: Option<Vec<ElementId>>,
    inv: Vec<ElementId>,
}

impl fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroupTable")
            .field("label", &self.label())
            .field("order", &self.order())
            .finish()
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k)).unwrap_or(u64::MAX)
}

fn check_cap(order: u64) -> Result<()> {
    if order > GROUP_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "group order",
            limit: GROUP_ORDER_CAP,
            requested: order,
        });
    }
    Ok(())
}

/// Parses a group spec and materializes the group.
pub fn build_group(spec: &str) -> Result<FiniteGroupTable> {
    FiniteGroupTable::from_spec(spec.parse()?)
}

impl FiniteGroupTable {
    pub fn from_spec(spec: GroupSpec) -> Result<FiniteGroupTable> {
        let (kind, elements) = match &spec {
            GroupSpec::Psl2(q) | GroupSpec::Sl2(q) | GroupSpec::Pgl2(q) => {
                let family = match spec {
                    GroupSpec::Psl2(_) => MatrixFamily::Psl,
                    GroupSpec::Sl2(_) => MatrixFamily::Sl,
                    _ => MatrixFamily::Pgl,
                };
                let (p, e) = prime_power(*q).ok_or(Error::NotPrimePower(*q))?;
                check_cap(matrix::family_order(family, *q))?;
                let field = make_field(p, e)?;
                let elems = matrix::enumerate(family, &field)
                    .into_iter()
                    .map(Descriptor::Mat)
                    .collect();
                (GroupKind::Matrix { field, family }, elems)
            }
            GroupSpec::Sym(n) | GroupSpec::Alt(n) => {
                let n = *n;
                if n == 0 {
                    return Err(Error::GroupSpec(format!("{spec}: degree must be positive")));
                }
                let alt = matches!(spec, GroupSpec::Alt(_));
                let order = if alt && n >= 2 { factorial(n) / 2 } else { factorial(n) };
                check_cap(order)?;
                let elems = perm::all(n)
                    .into_iter()
                    .filter(|p| !alt || perm::is_even(p))
                    .map(Descriptor::Perm)
                    .collect();
                (GroupKind::Perm { degree: n }, elems)
            }
            GroupSpec::Ab(ds) => {
                let ab = AbelianGroup::new(ds.clone())?;
                check_cap(ab.order())?;
                let elems = ab.elements().map(Descriptor::Residues).collect();
                (GroupKind::Abelian(ab), elems)
            }
        };
        Ok(Self::assemble(spec, kind, elements))
    }

    fn assemble(spec: GroupSpec, kind: GroupKind, mut elements: Vec<Descriptor>) -> FiniteGroupTable {
        let identity = identity_descriptor(&kind);
        elements.sort();
        let pos = elements.iter().position(|d| *d == identity).expect("identity enumerated");
        let id = elements.remove(pos);
        elements.insert(0, id);
        let index: HashMap<Descriptor, ElementId> = elements
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i as ElementId))
            .collect();
        let mut g = FiniteGroupTable {
            spec,
            kind,
            elements,
            index,
            table: None,
            inv: Vec::new(),
        };
        g.inv = (0..g.order() as ElementId)
            .map(|x| g.lookup(&g.inverse_descriptor(&g.elements[x as usize])))
            .collect();
        let n = g.order();
        if n <= TABLE_ORDER_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    table.push(g.mul_slow(x as ElementId, y as ElementId));
                }
            }
            g.table = Some(table);
        }
        g
    }

    fn lookup(&self, d: &Descriptor) -> ElementId {
        *self.index.get(d).expect("descriptor closed under the group law")
    }

    fn inverse_descriptor(&self, d: &Descriptor) -> Descriptor {
        match (&self.kind, d) {
            (GroupKind::Perm { .. }, Descriptor::Perm(p)) => Descriptor::Perm(perm::inverse(p)),
            (GroupKind::Matrix { field, family }, Descriptor::Mat(m)) => {
                let inv = m.inverse(field).expect("group elements are invertible");
                Descriptor::Mat(matrix::canonical(*family, field, inv))
            }
            (GroupKind::Abelian(ab), Descriptor::Residues(v)) => Descriptor::Residues(ab.neg(v)),
            _ => unreachable!("descriptor kind matches group kind"),
        }
    }

    fn mul_descriptors(&self, x: &Descriptor, y: &Descriptor) -> Descriptor {
        match (&self.kind, x, y) {
            (GroupKind::Perm { .. }, Descriptor::Perm(a), Descriptor::Perm(b)) => {
                Descriptor::Perm(perm::compose(a, b))
            }
            (GroupKind::Matrix { field, family }, Descriptor::Mat(a), Descriptor::Mat(b)) => {
                Descriptor::Mat(matrix::canonical(*family, field, a.mul(field, b)))
            }
            (GroupKind::Abelian(ab), Descriptor::Residues(a), Descriptor::Residues(b)) => {
                Descriptor::Residues(ab.add(a, b))
            }
            _ => unreachable!("descriptor kind matches group kind"),
        }
    }

    fn mul_slow(&self, x: ElementId, y: ElementId) -> ElementId {
        self.lookup(&self.mul_descriptors(&self.elements[x as usize], &self.elements[y as usize]))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn label(&self) -> String {
        self.spec.to_string()
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn descriptor(&self, x: ElementId) -> &Descriptor {
        &self.elements[x as usize]
    }

    /// Id of a descriptor, which must already be in canonical form.
    pub fn id_of(&self, d: &Descriptor) -> Option<ElementId> {
        self.index.get(d).copied()
    }

    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        match &self.table {
            Some(t) => t[x as usize * self.elements.len() + y as usize],
            None => self.mul_slow(x, y),
        }
    }

    #[inline]
    pub fn inv(&self, x: ElementId) -> ElementId {
        self.inv[x as usize]
    }

    /// `x^n` for any integer `n`.
    pub fn pow(&self, x: ElementId, n: i64) -> ElementId {
        let base = if n < 0 { self.inv(x) } else { x };
        let mut e = n.unsigned_abs();
        let (mut acc, mut b) = (self.identity(), base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `x^{-1} y x`.
    pub fn conjugate(&self, y: ElementId, x: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(x), y), x)
    }

    pub fn element_order(&self, x: ElementId) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != self.identity() {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn is_abelian_group(&self) -> bool {
        match self.kind {
            GroupKind::Abelian(_) => true,
            _ => {
                let n = self.order() as ElementId;
                (0..n).all(|x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
            }
        }
    }

    /// Bitset of `<gens>`, built by saturating under right multiplication by
    /// the generators. In a finite group the generated monoid is already the
    /// subgroup, so inverses are not needed.
    pub fn closure_bits(&self, gens: &[ElementId]) -> Bitset {
        self.extend_closure(Bitset::new(self.order()), &[self.identity()], gens, usize::MAX)
    }

    /// Saturates `seed_bits` (already containing `seed`) under right
    /// multiplication by `gens`, stopping once more than `stop_above`
    /// elements are known.
    fn extend_closure(
        &self,
        mut bits: Bitset,
        seed: &[ElementId],
        gens: &[ElementId],
        stop_above: usize,
    ) -> Bitset {
        let mut queue: Vec<ElementId> = Vec::with_capacity(self.order().min(1 << 16));
        for &s in seed {
            if bits.insert(s as usize) {
                queue.push(s);
            }
        }
        let mut count = bits.count();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if bits.insert(y as usize) {
                    queue.push(y);
                    count += 1;
                    if count > stop_above {
                        return bits;
                    }
                }
            }
        }
        bits
    }

    /// `<S>` as a sorted id list.
    pub fn closure(&self, gens: &[ElementId]) -> Vec<ElementId> {
        self.closure_bits(gens).iter().map(|i| i as ElementId).collect()
    }

    /// Whether `tuple` generates the whole group. Stops as soon as more than
    /// half the group has been reached, since no proper subgroup is that big.
    pub fn is_generating(&self, tuple: &[ElementId]) -> bool {
        let n = self.order();
        if n == 1 {
            return true;
        }
        let bits = self.extend_closure(Bitset::new(n), &[self.identity()], tuple, n / 2);
        bits.count() > n / 2
    }

    /// `{x : xg = gx}` by a full scan.
    pub fn centralizer(&self, g: ElementId) -> Vec<ElementId> {
        (0..self.order() as ElementId)
            .filter(|&x| self.mul(x, g) == self.mul(g, x))
            .collect()
    }

    /// Elements whose representative matrices commute with that of `g`
    /// exactly, not just up to a scalar. In PSL and PGL this is the image
    /// of the centralizer of a lift; for a regular semisimple `g` it is the
    /// maximal torus through `g`.
    pub fn torus_centralizer(&self, g: ElementId) -> Result<Vec<ElementId>> {
        let GroupKind::Matrix { field, .. } = &self.kind else {
            return Err(Error::NotMatrixGroup(self.label()));
        };
        let Descriptor::Mat(m) = self.descriptor(g) else { unreachable!() };
        Ok((0..self.order() as ElementId)
            .filter(|&x| {
                let Descriptor::Mat(n) = self.descriptor(x) else { unreachable!() };
                m.mul(field, n) == n.mul(field, m)
            })
            .collect())
    }

    /// Regular semisimple test for the 2x2 matrix families.
    pub fn is_regular_semisimple(&self, g: ElementId) -> Result<bool> {
        match (&self.kind, self.descriptor(g)) {
            (GroupKind::Matrix { field, .. }, Descriptor::Mat(m)) => Ok(m.is_regular_semisimple(field)),
            _ => Err(Error::NotMatrixGroup(self.label())),
        }
    }

    pub fn field(&self) -> Option<&FieldCtx> {
        match &self.kind {
            GroupKind::Matrix { field, .. } => Some(field),
            _ => None,
        }
    }

    /// A small generating set found greedily: elements are tried in
    /// decreasing order of element order and kept when they enlarge the
    /// subgroup generated so far.
    pub fn generating_set(&self) -> Vec<ElementId> {
        let n = self.order();
        let mut by_order: Vec<(usize, ElementId)> = (0..n as ElementId)
            .map(|x| (self.element_order(x), x))
            .collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut current = self.closure_bits(&[]);
        for (_, x) in by_order {
            if current.count() == n {
                break;
            }
            if current.get(x as usize) {
                continue;
            }
            gens.push(x);
            current = self.closure_bits(&gens);
        }
        gens
    }

    /// Conjugacy classes as sorted id lists, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<ElementId>> {
        let n = self.order();
        let gens = self.generating_set();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n as ElementId {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            class_of[start as usize] = cid;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let y = members[head];
                head += 1;
                for &g in &gens {
                    let z = self.conjugate(y, g);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = cid;
                        members.push(z);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Smallest `k` admitting a generating `k`-tuple.
    ///
    /// Abelian groups use the invariant-factor rank. Otherwise the search
    /// runs over prefixes of tuples, with the first entry restricted to
    /// conjugacy class representatives and each distinct prefix subgroup
    /// expanded once; an exhausted level certifies the lower bound.
    pub fn min_generators(&self) -> usize {
        let n = self.order();
        if n == 1 {
            return 0;
        }
        if let GroupKind::Abelian(ab) = &self.kind {
            return ab.rank();
        }
        if (0..n as ElementId).any(|x| self.element_order(x) == n) {
            return 1;
        }
        let reps: Vec<ElementId> = self.conjugacy_classes().iter().map(|c| c[0]).collect();
        let mut level: Vec<(Bitset, Vec<ElementId>)> = reps
            .iter()
            .map(|&x| (self.closure_bits(&[x]), vec![x]))
            .collect();
        dedup_subgroups(&mut level);
        let mut k = 1;
        loop {
            k += 1;
            let mut next = Vec::new();
            for (h, gens) in &level {
                for x in 0..n as ElementId {
                    if h.get(x as usize) {
                        continue;
                    }
                    let mut ext_gens = gens.clone();
                    ext_gens.push(x);
                    // x * <H, x> is all of <H, x>, so seeding with x suffices
                    let ext = self.extend_closure(h.clone(), &[x], &ext_gens, usize::MAX);
                    if ext.count() == n {
                        return k;
                    }
                    next.push((ext, ext_gens));
                }
            }
            dedup_subgroups(&mut next);
            level = next;
        }
    }

    /// A uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> ElementId {
        rng.random_range(0..self.order() as ElementId)
    }
}

fn dedup_subgroups(v: &mut Vec<(Bitset, Vec<ElementId>)>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|(b, _)| seen.insert(b.clone()));
}

fn identity_descriptor(kind: &GroupKind) -> Descriptor {
    match kind {
        GroupKind::Perm { degree } => Descriptor::Perm(perm::identity(*degree)),
        GroupKind::Matrix { .. } => Descriptor::Mat(Mat2::identity()),
        GroupKind::Abelian(ab) => Descriptor::Residues(ab.zero()),
    }
}
