//! Fully enumerated finite groups.
//!
//! Elements are discovered breadth-first from the identity by right
//! multiplication with the group spec's generators in their listed order, so
//! element ids (and the word attached to every element) depend only on the
//! spec. Up to `table_limit` elements the full multiplication table is
//! stored; beyond that products are evaluated by walking the word of the
//! right-hand factor through the generator table.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldTable;
use crate::matrix::Matrix;
use crate::named;
use crate::perm::Perm;
use crate::spec::{GroupSpec, Word};
use crate::subgroup::Subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// How an element was represented when the group was enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Perm(Perm),
    Matrix(Matrix),
    /// Component ids in the two factors of a direct product.
    Pair(ElementId, ElementId),
    /// Least element of the coset in the parent group.
    Coset(ElementId),
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub order_cap: usize,
    pub table_limit: usize,
}

pub const DEFAULT_ORDER_CAP: usize = 2048;

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            order_cap: DEFAULT_ORDER_CAP,
            table_limit: DEFAULT_ORDER_CAP,
        }
    }
}

impl BuildOptions {
    pub fn with_cap(order_cap: usize) -> Self {
        BuildOptions {
            order_cap,
            ..Default::default()
        }
    }
}

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

pub struct GroupTable {
    uid: u64,
    spec: GroupSpec,
    n: usize,
    ngens: usize,
    /// `right[x * ngens + s] = x * gen_s`
    right: Vec<u32>,
    parent: Vec<u32>,
    parent_gen: Vec<u32>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    labels: Vec<Label>,
    index: HashMap<Label, u32>,
    field: Option<FieldTable>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.n)
            .field("spec", &self.spec.to_string())
            .finish()
    }
}

struct Enumerated<E> {
    elements: Vec<E>,
    right: Vec<u32>,
    parent: Vec<u32>,
    parent_gen: Vec<u32>,
}

fn enumerate<E: Clone + Eq + Hash>(
    identity: E,
    gens: &[E],
    mul: impl Fn(&E, &E) -> E,
    cap: usize,
) -> Result<(Enumerated<E>, HashMap<E, u32>)> {
    let k = gens.len();
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0u32)]);
    let mut parent = vec![u32::MAX];
    let mut parent_gen = vec![u32::MAX];
    let mut right = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for (s, g) in gens.iter().enumerate() {
            let y = mul(&elements[head], g);
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    let id = elements.len() as u32;
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    index.insert(y.clone(), id);
                    elements.push(y);
                    parent.push(head as u32);
                    parent_gen.push(s as u32);
                    id
                }
            };
            right.push(id);
        }
        head += 1;
    }
    debug_assert_eq!(right.len(), elements.len() * k);
    Ok((
        Enumerated {
            elements,
            right,
            parent,
            parent_gen,
        },
        index,
    ))
}

/// Builds the group described by `spec` with default options.
pub fn build_group(spec: &GroupSpec) -> Result<GroupTable> {
    build_group_with(spec, BuildOptions::default())
}

pub fn build_group_with(spec: &GroupSpec, opts: BuildOptions) -> Result<GroupTable> {
    match spec {
        GroupSpec::PermutationGenerators { degree, generators } => {
            let gens = generators
                .iter()
                .map(|g| Perm::parse_cycles(g, *degree))
                .collect::<Result<Vec<_>>>()?;
            from_perms(spec.clone(), *degree, &gens, opts)
        }
        GroupSpec::MatrixGenerators { q, dim, generators } => {
            let field = FieldTable::new(*q)?;
            let gens = generators
                .iter()
                .map(|g| matrix_from_ints(&field, *dim, g))
                .collect::<Result<Vec<_>>>()?;
            from_matrices(spec.clone(), field, *dim, &gens, opts)
        }
        GroupSpec::Named { .. } => {
            let concrete = named::expand(spec)?;
            let mut g = build_group_with(&concrete, opts)?;
            g.spec = spec.clone();
            Ok(g)
        }
        GroupSpec::DirectProduct { left, right } => {
            let a = build_group_with(left, opts)?;
            let b = build_group_with(right, opts)?;
            direct_product(spec.clone(), &a, &b, opts)
        }
        GroupSpec::Quotient {
            parent,
            normal_generators,
        } => {
            let g = build_group_with(parent, opts)?;
            let gens = normal_generators
                .iter()
                .map(|w| g.eval_word(w))
                .collect::<Result<Vec<_>>>()?;
            let n = Subgroup::generated(&g, &gens)?;
            let (q, _) = quotient_group(&g, &n)?;
            Ok(q)
        }
    }
}

fn matrix_from_ints(field: &FieldTable, dim: usize, entries: &[i64]) -> Result<Matrix> {
    if entries.len() != dim * dim {
        return Err(Error::InvalidGenerator(format!(
            "expected {} entries for a {dim}x{dim} matrix, got {}",
            dim * dim,
            entries.len()
        )));
    }
    let q = field.size() as i64;
    let vals = entries
        .iter()
        .map(|&e| {
            if field.degree() == 1 {
                Ok(field.from_int(e))
            } else if (0..q).contains(&e) {
                Ok(e as u8)
            } else {
                Err(Error::InvalidGenerator(format!(
                    "entry {e} is not an element encoding of F_{q}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::new(dim, vals);
    if m.det(field) == 0 {
        return Err(Error::InvalidGenerator(format!("singular matrix {m:?}")));
    }
    Ok(m)
}

impl GroupTable {
    fn assemble<E: Clone + Eq + Hash>(
        spec: GroupSpec,
        en: Enumerated<E>,
        index: &HashMap<E, u32>,
        inverse: impl Fn(&E) -> E,
        label: impl Fn(&E) -> Label,
        field: Option<FieldTable>,
        opts: BuildOptions,
        ngens: usize,
    ) -> GroupTable {
        let n = en.elements.len();
        let inv = en.elements.iter().map(|e| index[&inverse(e)]).collect();
        let labels: Vec<Label> = en.elements.iter().map(label).collect();
        let lookup = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        let mut g = GroupTable {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            spec,
            n,
            ngens,
            right: en.right,
            parent: en.parent,
            parent_gen: en.parent_gen,
            table: None,
            inv,
            labels,
            index: lookup,
            field,
        };
        if n <= opts.table_limit {
            g.fill_table();
        }
        g
    }

    fn fill_table(&mut self) {
        let n = self.n;
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            t[a * n] = a as u32;
        }
        // column b = column parent(b) pushed through one generator
        for b in 1..n {
            let p = self.parent[b] as usize;
            let s = self.parent_gen[b] as usize;
            for a in 0..n {
                let ap = t[a * n + p] as usize;
                t[a * n + b] = self.right[ap * self.ngens + s];
            }
        }
        self.table = Some(t);
    }

    /// Process-unique identity of this table, used to detect subgroups of
    /// different groups being mixed.
    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.n as u32).map(ElementId)
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    /// Element ids of the generators, in the order listed.
    pub fn generators(&self) -> Vec<ElementId> {
        (0..self.ngens)
            .map(|s| ElementId(self.right[s]))
            .collect()
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.table {
            Some(t) => ElementId(t[a.index() * self.n + b.index()]),
            None => self.mul_walk(a, b),
        }
    }

    fn mul_walk(&self, a: ElementId, b: ElementId) -> ElementId {
        let mut gens = Vec::with_capacity(32);
        let mut x = b.0;
        while x != 0 {
            gens.push(self.parent_gen[x as usize]);
            x = self.parent[x as usize];
        }
        let mut acc = a.0;
        for &s in gens.iter().rev() {
            acc = self.right[acc as usize * self.ngens + s as usize];
        }
        ElementId(acc)
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        ElementId(self.inv[a.index()])
    }

    /// `g^-1 * a * g`
    #[inline]
    pub fn conj(&self, a: ElementId, g: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: ElementId, mut e: u64) -> ElementId {
        let mut base = a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: ElementId) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn check_id(&self, a: ElementId) -> Result<ElementId> {
        if a.index() < self.n {
            Ok(a)
        } else {
            Err(Error::InvalidElement(a.index()))
        }
    }

    /// Shortest word for `a` in the generators (BFS tree path).
    pub fn word(&self, a: ElementId) -> Word {
        let mut w = Vec::new();
        let mut x = a.0;
        while x != 0 {
            w.push(self.parent_gen[x as usize]);
            x = self.parent[x as usize];
        }
        w.reverse();
        w
    }

    pub fn eval_word(&self, w: &[u32]) -> Result<ElementId> {
        let mut acc = 0u32;
        for &s in w {
            if s as usize >= self.ngens {
                return Err(Error::Parse(format!(
                    "generator index {s} out of range (group has {} generators)",
                    self.ngens
                )));
            }
            acc = self.right[acc as usize * self.ngens + s as usize];
        }
        Ok(ElementId(acc))
    }

    pub fn label(&self, a: ElementId) -> &Label {
        &self.labels[a.index()]
    }

    pub fn find(&self, label: &Label) -> Option<ElementId> {
        self.index.get(label).map(|&i| ElementId(i))
    }

    /// Looks up a permutation given in cycle notation.
    pub fn find_perm(&self, cycles: &str) -> Result<ElementId> {
        let Some(Label::Perm(p0)) = self.labels.first() else {
            return Err(Error::BadParams("not a permutation group".into()));
        };
        let p = Perm::parse_cycles(cycles, p0.degree())?;
        self.find(&Label::Perm(p))
            .ok_or_else(|| Error::BadParams(format!("{cycles} is not in the group")))
    }

    /// Looks up a matrix given by row-major field-element encodings.
    pub fn find_matrix(&self, entries: &[u8]) -> Option<ElementId> {
        let Some(Label::Matrix(m0)) = self.labels.first() else {
            return None;
        };
        self.find(&Label::Matrix(Matrix::new(m0.dim(), entries.to_vec())))
    }

    pub fn field(&self) -> Option<&FieldTable> {
        self.field.as_ref()
    }

    pub fn render(&self, a: ElementId) -> String {
        match self.label(a) {
            Label::Perm(p) => p.to_string(),
            Label::Matrix(m) => format!("{m:?}"),
            Label::Pair(..) | Label::Coset(_) => {
                let w = self.word(a);
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|s| format!("g{s}"))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive check of the group axioms (only sensible for small orders).
    pub fn check_axioms(&self) -> bool {
        let e = self.identity();
        self.elements().all(|a| {
            self.mul(a, e) == a
                && self.mul(e, a) == a
                && self.mul(a, self.inv(a)) == e
                && self.mul(self.inv(a), a) == e
                && self.elements().all(|b| {
                    let ab = self.mul(a, b);
                    self.elements()
                        .all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
        })
    }
}

fn from_perms(spec: GroupSpec, degree: usize, gens: &[Perm], opts: BuildOptions) -> Result<GroupTable> {
    let (en, index) = enumerate(Perm::identity(degree), gens, |a, b| a.mul(b), opts.order_cap)?;
    Ok(GroupTable::assemble(
        spec,
        en,
        &index,
        |p| p.inverse(),
        |p| Label::Perm(p.clone()),
        None,
        opts,
        gens.len(),
    ))
}

fn from_matrices(
    spec: GroupSpec,
    field: FieldTable,
    dim: usize,
    gens: &[Matrix],
    opts: BuildOptions,
) -> Result<GroupTable> {
    let (en, index) = enumerate(
        Matrix::identity(dim),
        gens,
        |a, b| a.mul(b, &field),
        opts.order_cap,
    )?;
    Ok(GroupTable::assemble(
        spec,
        en,
        &index,
        |m| m.inverse(&field),
        |m| Label::Matrix(m.clone()),
        Some(field.clone()),
        opts,
        gens.len(),
    ))
}

fn direct_product(
    spec: GroupSpec,
    a: &GroupTable,
    b: &GroupTable,
    opts: BuildOptions,
) -> Result<GroupTable> {
    let e = ElementId::IDENTITY;
    let mut gens: Vec<(ElementId, ElementId)> =
        a.generators().into_iter().map(|x| (x, e)).collect();
    gens.extend(b.generators().into_iter().map(|y| (e, y)));
    let (en, index) = enumerate(
        (e, e),
        &gens,
        |x, y| (a.mul(x.0, y.0), b.mul(x.1, y.1)),
        opts.order_cap,
    )?;
    let k = gens.len();
    Ok(GroupTable::assemble(
        spec,
        en,
        &index,
        |x| (a.inv(x.0), b.inv(x.1)),
        |x| Label::Pair(x.0, x.1),
        None,
        opts,
        k,
    ))
}

/// Homomorphism `G -> G/N` as an element map, with the ids of both tables.
#[derive(Clone, Debug)]
pub struct Projection {
    source_uid: u64,
    target_uid: u64,
    map: Vec<ElementId>,
}

impl Projection {
    pub fn source_uid(&self) -> u64 {
        self.source_uid
    }

    pub fn target_uid(&self) -> u64 {
        self.target_uid
    }

    #[inline]
    pub fn apply(&self, a: ElementId) -> ElementId {
        self.map[a.index()]
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }
}

/// Builds `G/N` with generators the images of `G`'s generators, and the
/// projection onto it.
pub fn quotient_group(g: &GroupTable, n: &Subgroup) -> Result<(GroupTable, Projection)> {
    if n.parent_uid() != g.uid() {
        return Err(Error::ParentMismatch);
    }
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let members: Vec<ElementId> = n.elements().collect();
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x.index()] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in &members {
            coset_of[g.mul(x, m).index()] = c;
        }
    }
    let gens: Vec<u32> = g
        .generators()
        .iter()
        .map(|x| coset_of[x.index()])
        .collect();
    let (en, index) = enumerate(
        0u32,
        &gens,
        |&x, &y| coset_of[g.mul(reps[x as usize], reps[y as usize]).index()],
        usize::MAX,
    )?;
    let spec = GroupSpec::Quotient {
        parent: Box::new(g.spec().clone()),
        normal_generators: n.generators().iter().map(|&x| g.word(x)).collect(),
    };
    let k = gens.len();
    let q = GroupTable::assemble(
        spec,
        en,
        &index,
        |&x| coset_of[g.inv(reps[x as usize]).index()],
        |&x| Label::Coset(reps[x as usize]),
        None,
        BuildOptions {
            order_cap: usize::MAX,
            table_limit: BuildOptions::default().table_limit.max(g.order() / n.order()),
        },
        k,
    );
    let map = g
        .elements()
        .map(|x| ElementId(index[&coset_of[x.index()]]))
        .collect();
    let proj = Projection {
        source_uid: g.uid(),
        target_uid: q.uid(),
        map,
    };
    Ok((q, proj))
}
