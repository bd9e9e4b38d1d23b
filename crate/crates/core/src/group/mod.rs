//! Finite permutation groups, held as a complete element list with a
//! multiplication table.
//!
//! Elements are referred to by their index ([`Elem`]) into the canonically
//! sorted element list; index 0 is always the identity. All derived data
//! (conjugacy classes, classes of cyclic subgroups) is computed once at
//! construction and the group is immutable afterwards.

mod catalog;
mod perm;

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::Rational;

pub use catalog::catalog;
pub use perm::Perm;

/// Upper bound on the order of groups accepted by [`Group::closure`].
pub const MAX_ORDER: usize = 2000;

/// Index of an element in [`Group::elements`].
pub type Elem = usize;

/// A subgroup of a specific [`Group`], stored as its sorted member indices.
///
/// Equality compares member sets; the generator list is only a record of how
/// the subgroup was specified.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group_id: u64,
    members: Vec<Elem>,
    generators: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group_id == other.group_id && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group_id.hash(state);
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub(crate) fn group_id(&self) -> u64 {
        self.group_id
    }
}

/// A conjugacy class of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Elem,
    pub members: Vec<Elem>,
    pub element_order: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A conjugacy class of cyclic subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassOfSubgroups {
    /// Canonical representative `⟨generator⟩`.
    pub representative: Subgroup,
    /// Least element generating the representative.
    pub generator: Elem,
    /// Number of conjugates, `[G : N_G(rep)]`.
    pub class_size: usize,
    pub normalizer_order: usize,
}

/// All elements whose cyclic subgroup is conjugate to `⟨representative⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedElementClass {
    pub representative: Elem,
    pub members: Vec<Elem>,
}

#[derive(Clone)]
pub struct Group {
    name: Option<String>,
    id: u64,
    hash: String,
    degree: usize,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, Elem>,
    table: Vec<u32>,
    inverses: Vec<Elem>,
    orders: Vec<usize>,
    exponent: usize,
    generators: Vec<Elem>,
    named: Vec<(String, Elem)>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    cyclic_classes: Vec<ConjugacyClassOfSubgroups>,
    merged: Vec<MergedElementClass>,
    cyclic_class_of: Vec<usize>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish_non_exhaustive()
    }
}

impl Group {
    /// The group generated by `generators` acting on `degree` points.
    pub fn closure(degree: usize, generators: &[Perm]) -> Result<Group> {
        let named = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("g{}", i + 1), g.clone()))
            .collect();
        Group::from_named(None, degree, named)
    }

    /// Like [`Group::closure`] but keeps generator names for word parsing
    /// and reports.
    pub fn from_named(
        name: Option<String>,
        degree: usize,
        named: Vec<(String, Perm)>,
    ) -> Result<Group> {
        if degree == 0 {
            return Err(Error::DegreeZero);
        }
        for (gname, g) in &named {
            if g.degree() != degree {
                return Err(Error::NotBijective {
                    degree,
                    detail: format!("generator `{gname}` acts on {} points", g.degree()),
                });
            }
        }
        let gens: Vec<Perm> = named.iter().map(|(_, g)| g.clone()).collect();

        // Breadth-first closure, remembering a spanning tree of the Cayley graph.
        let mut found: Vec<Perm> = vec![Perm::identity(degree)];
        let mut tree: Vec<(usize, usize)> = vec![(0, 0)];
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        seen.insert(found[0].clone(), 0);
        let mut head = 0;
        while head < found.len() {
            for (gi, g) in gens.iter().enumerate() {
                let p = found[head].then(g);
                if !seen.contains_key(&p) {
                    if found.len() == MAX_ORDER {
                        return Err(Error::GroupTooLarge {
                            order: MAX_ORDER + 1,
                            cap: MAX_ORDER,
                        });
                    }
                    seen.insert(p.clone(), found.len());
                    found.push(p);
                    tree.push((head, gi));
                }
            }
            head += 1;
        }

        let n = found.len();
        let mut order_idx: Vec<usize> = (0..n).collect();
        order_idx.sort_by(|&a, &b| found[a].cmp(&found[b]));
        let mut rank = vec![0; n];
        for (new, &old) in order_idx.iter().enumerate() {
            rank[old] = new;
        }
        let elements: Vec<Perm> = order_idx.iter().map(|&o| found[o].clone()).collect();
        let lookup: HashMap<Perm, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();

        // Right multiplication by each generator, then the full table by
        // walking the spanning tree: x * t = (x * parent(t)) * gen(t).
        let right: Vec<Vec<Elem>> = elements
            .iter()
            .map(|x| gens.iter().map(|g| lookup[&x.then(g)]).collect())
            .collect();
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            table[x * n] = x as u32; // identity is index 0
            for (bfs, &(parent, gi)) in tree.iter().enumerate().skip(1) {
                let xp = table[x * n + rank[parent]] as usize;
                table[x * n + rank[bfs]] = right[xp][gi] as u32;
            }
        }

        let mut inverses = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                if table[x * n + y] == 0 {
                    inverses[x] = y;
                    break;
                }
            }
        }
        let orders: Vec<usize> = (0..n)
            .map(|x| {
                let mut k = 1;
                let mut p = x;
                while p != 0 {
                    p = table[p * n + x] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        let exponent = orders.iter().fold(1, |acc, &o| acc.lcm(&o));

        let mut hasher = Sha256::new();
        hasher.update((degree as u32).to_le_bytes());
        for p in &elements {
            for i in p.images() {
                hasher.update((i as u32).to_le_bytes());
            }
        }
        let digest = hasher.finalize();
        let id = u64::from_le_bytes(digest[..8].try_into().unwrap());
        let hash: String = digest.iter().map(|b| format!("{b:02x}")).collect();

        let generators: Vec<Elem> = gens.iter().map(|g| lookup[g]).collect();
        let named = named
            .into_iter()
            .map(|(s, g)| {
                let e = lookup[&g];
                (s, e)
            })
            .collect();

        let mut group = Group {
            name,
            id,
            hash,
            degree,
            elements,
            lookup,
            table,
            inverses,
            orders,
            exponent,
            generators,
            named,
            classes: Vec::new(),
            class_of: Vec::new(),
            cyclic_classes: Vec::new(),
            merged: Vec::new(),
            cyclic_class_of: Vec::new(),
        };
        group.compute_classes();
        group.compute_cyclic_classes()?;
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_id = vec![usize::MAX; n];
        let mut raw: Vec<Vec<Elem>> = Vec::new();
        for start in 0..n {
            if class_id[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut members = vec![start];
            class_id[start] = id;
            let mut head = 0;
            while head < members.len() {
                let g = members[head];
                for &x in &self.generators {
                    let c = self.conj(g, x);
                    if class_id[c] == usize::MAX {
                        class_id[c] = id;
                        members.push(c);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut classes: Vec<ConjugacyClass> = raw
            .into_iter()
            .map(|members| ConjugacyClass {
                representative: members[0],
                element_order: self.orders[members[0]],
                members,
            })
            .collect();
        classes.sort_by_key(|c| (c.element_order, c.size(), c.representative));
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for &g in &c.members {
                class_of[g] = i;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    fn compute_cyclic_classes(&mut self) -> Result<()> {
        let n = self.order();
        // Identify each element's cyclic subgroup.
        let mut ids: HashMap<Vec<Elem>, usize> = HashMap::new();
        let cyc_of: Vec<usize> = (0..n)
            .map(|g| {
                let mut pw = self.powers(g);
                pw.sort_unstable();
                let next = ids.len();
                *ids.entry(pw).or_insert(next)
            })
            .collect();
        let nsub = ids.len();
        // Conjugate elements generate conjugate subgroups and every conjugate
        // of <g> is generated by a conjugate of g, so classes of cyclic
        // subgroups are the components of this union.
        let mut parent: Vec<usize> = (0..nsub).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for class in &self.classes {
            let a = find(&mut parent, cyc_of[class.members[0]]);
            for &g in &class.members[1..] {
                let b = find(&mut parent, cyc_of[g]);
                if a != b {
                    parent[b] = a;
                }
            }
        }
        let mut comp: HashMap<usize, Vec<Elem>> = HashMap::new();
        for (g, &c) in cyc_of.iter().enumerate() {
            let root = find(&mut parent, c);
            comp.entry(root).or_default().push(g);
        }
        let mut entries = Vec::new();
        for (_, members) in comp {
            let mut subgroups: Vec<usize> = members.iter().map(|&g| cyc_of[g]).collect();
            subgroups.sort_unstable();
            subgroups.dedup();
            let generator = members[0];
            entries.push((self.orders[generator], subgroups.len(), generator, members));
        }
        entries.sort_by_key(|e| (e.0, e.1, e.2));

        let mut cyclic_class_of = vec![0; n];
        let mut cyclic_classes = Vec::new();
        let mut merged = Vec::new();
        for (i, (_, class_size, generator, members)) in entries.into_iter().enumerate() {
            for &g in &members {
                cyclic_class_of[g] = i;
            }
            let representative = self.subgroup(&[generator]);
            let normalizer = self.normalizer(&representative)?;
            if class_size * normalizer.order() != n {
                return Err(Error::defect(format!(
                    "cyclic class of {} has {class_size} conjugates but normalizer of order {}",
                    self.elements[generator],
                    normalizer.order()
                )));
            }
            cyclic_classes.push(ConjugacyClassOfSubgroups {
                representative,
                generator,
                class_size,
                normalizer_order: normalizer.order(),
            });
            merged.push(MergedElementClass {
                representative: generator,
                members,
            });
        }
        self.cyclic_classes = cyclic_classes;
        self.merged = merged;
        self.cyclic_class_of = cyclic_class_of;
        Ok(())
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Hex SHA-256 of the degree and the canonical element list.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn perm(&self, g: Elem) -> &Perm {
        &self.elements[g]
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elem> {
        self.lookup.get(p).copied()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn named_generators(&self) -> &[(String, Elem)] {
        &self.named
    }

    pub fn generator(&self, name: &str) -> Option<Elem> {
        self.named.iter().find(|(n, _)| n == name).map(|&(_, g)| g)
    }

    /// `a` then `b`.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order() + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let o = self.orders[a] as i64;
        let k = k.rem_euclid(o);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn product(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(0, |acc, g| self.mul(acc, g))
    }

    /// `x⁻¹ g x`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// The commutator `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.product([a, b, self.inv(a), self.inv(b)])
    }

    pub fn element_order(&self, g: Elem) -> usize {
        self.orders[g]
    }

    /// `g⁰, g¹, …, g^(o-1)`.
    pub fn powers(&self, g: Elem) -> Vec<Elem> {
        let mut out = vec![0];
        let mut p = g;
        while p != 0 {
            out.push(p);
            p = self.mul(p, g);
        }
        out
    }

    /// The subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[Elem]) -> Subgroup {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        assert_eq!(n % members.len(), 0, "Lagrange violated");
        let mut generators: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        generators.dedup();
        Subgroup {
            group_id: self.id,
            members,
            generators,
        }
    }

    /// The subgroup with the given member set, which must be closed.
    pub fn subgroup_from_members(&self, members: &[Elem]) -> Result<Subgroup> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut gens = Vec::new();
        let mut current = self.subgroup(&[]);
        for &g in &sorted {
            if g >= self.order() {
                return Err(Error::NotSubgroup);
            }
            if !current.contains(g) {
                gens.push(g);
                current = self.subgroup(&gens);
            }
        }
        if current.members != sorted {
            return Err(Error::NotSubgroup);
        }
        Ok(current)
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup(&self.generators)
    }

    pub fn trivial(&self) -> Subgroup {
        self.subgroup(&[])
    }

    fn check(&self, h: &Subgroup) -> Result<()> {
        if h.group_id != self.id {
            return Err(Error::NotSubgroup);
        }
        Ok(())
    }

    /// `l H l⁻¹` as a sorted member list.
    pub fn conjugate_members(&self, h: &Subgroup, l: Elem) -> Vec<Elem> {
        let li = self.inv(l);
        let mut m: Vec<Elem> = h.members.iter().map(|&x| self.conj(x, li)).collect();
        m.sort_unstable();
        m
    }

    /// `|l K l⁻¹ ∩ H|`.
    pub fn conjugate_intersection(&self, k: &Subgroup, l: Elem, h: &Subgroup) -> usize {
        let li = self.inv(l);
        k.members
            .iter()
            .filter(|&&x| h.contains(self.conj(x, li)))
            .count()
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&x| h.generators.iter().all(|&y| h.contains(self.conj(y, x))))
    }

    /// `N_G(H) = {g : g H g⁻¹ = H}`.
    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check(h)?;
        let members: Vec<Elem> = (0..self.order())
            .filter(|&g| {
                let gi = self.inv(g);
                h.generators.iter().all(|&y| h.contains(self.conj(y, gi)))
            })
            .collect();
        self.subgroup_from_members(&members)
    }

    /// One representative per left coset `gH`: the least element of each.
    pub fn left_transversal(&self, h: &Subgroup) -> Result<Vec<Elem>> {
        self.check(h)?;
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::with_capacity(self.order() / h.order());
        for g in 0..self.order() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in &h.members {
                covered[self.mul(g, x)] = true;
            }
        }
        Ok(reps)
    }

    /// Left coset index of every element: `coset[g] = i` iff `g ∈ t_i H`
    /// for the transversal `t` of [`Group::left_transversal`].
    pub fn left_coset_labels(&self, h: &Subgroup) -> Result<Vec<usize>> {
        let reps = self.left_transversal(h)?;
        let mut label = vec![0; self.order()];
        for (i, &t) in reps.iter().enumerate() {
            for &x in &h.members {
                label[self.mul(t, x)] = i;
            }
        }
        Ok(label)
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, g: Elem) -> usize {
        self.class_of[g]
    }

    /// Classes of cyclic subgroups, ordered by (subgroup order, class size,
    /// least generator). The trivial subgroup comes first.
    pub fn cyclic_subgroup_classes(&self) -> &[ConjugacyClassOfSubgroups] {
        &self.cyclic_classes
    }

    /// Parallel to [`Group::cyclic_subgroup_classes`].
    pub fn merged_classes(&self) -> &[MergedElementClass] {
        &self.merged
    }

    /// Index of the class of `⟨g⟩` among the cyclic subgroup classes.
    pub fn cyclic_class_of(&self, g: Elem) -> usize {
        self.cyclic_class_of[g]
    }

    /// Which class of cyclic subgroups `h` belongs to, if it is cyclic.
    pub fn cyclic_class_of_subgroup(&self, h: &Subgroup) -> Option<usize> {
        h.members
            .iter()
            .find(|&&g| self.orders[g] == h.order())
            .map(|&g| self.cyclic_class_of[g])
    }

    /// All conjugates of `h`, each listed once, in canonical order.
    pub fn conjugates(&self, h: &Subgroup) -> Result<Vec<Subgroup>> {
        let n = self.normalizer(h)?;
        let mut out = Vec::new();
        for l in self.left_transversal(&n)? {
            out.push(self.subgroup_from_members(&self.conjugate_members(h, l))?);
        }
        out.sort_by(|a, b| a.members.cmp(&b.members));
        Ok(out)
    }

    /// `|H\G/K|` by direct enumeration of the double cosets.
    pub fn double_cosets_direct(&self, h: &Subgroup, k: &Subgroup) -> Result<usize> {
        self.check(h)?;
        self.check(k)?;
        let mut covered = vec![false; self.order()];
        let mut count = 0;
        for g in 0..self.order() {
            if covered[g] {
                continue;
            }
            count += 1;
            for &a in &h.members {
                let ag = self.mul(a, g);
                for &b in &k.members {
                    covered[self.mul(ag, b)] = true;
                }
            }
        }
        Ok(count)
    }

    /// `Σ_{l ∈ Ω_K} [N_G(K):K] · |K^{l⁻¹} ∩ H| / |H|`, with `Ω_K` a left
    /// transversal of `N_G(K)`.
    pub fn double_cosets_transversal(&self, h: &Subgroup, k: &Subgroup) -> Result<Rational> {
        let nk = self.normalizer(k)?;
        let pkg = (nk.order() / k.order()) as i64;
        let total: usize = self
            .left_transversal(&nk)?
            .into_iter()
            .map(|l| self.conjugate_intersection(k, l, h))
            .sum();
        Ok(Rational::new(
            (pkg * total as i64).into(),
            (h.order() as i64).into(),
        ))
    }

    /// `(1/|H|) Σ_{a ∈ H} |G|·|K ∩ ā| / (|K|·|ā|)`, `ā` the class of `a`.
    pub fn double_cosets_classes(&self, h: &Subgroup, k: &Subgroup) -> Result<Rational> {
        self.check(h)?;
        self.check(k)?;
        let mut in_k = vec![0i64; self.classes.len()];
        for &b in &k.members {
            in_k[self.class_of[b]] += 1;
        }
        let g = self.order() as i64;
        let mut sum = Rational::from_integer(0.into());
        for &a in &h.members {
            let c = self.class_of[a];
            let size = self.classes[c].size() as i64;
            sum += Rational::new((g * in_k[c]).into(), (k.order() as i64 * size).into());
        }
        Ok(sum / Rational::from_integer((h.order() as i64).into()))
    }

    /// `|H\G/K|`, computed three independent ways; any disagreement is an
    /// error.
    pub fn double_coset_count(&self, h: &Subgroup, k: &Subgroup) -> Result<usize> {
        let direct = self.double_cosets_direct(h, k)?;
        let tr = self.double_cosets_transversal(h, k)?;
        let cl = self.double_cosets_classes(h, k)?;
        let d = Rational::from_integer((direct as i64).into());
        if tr != d || cl != d {
            return Err(Error::DoubleCosetMismatch {
                direct: direct.to_string(),
                transversal: tr.to_string(),
                class_formula: cl.to_string(),
            });
        }
        Ok(direct)
    }

    /// A shortest word in the named generators evaluating to `g`, with runs
    /// written as powers (`xa^2`). Inverse of [`Group::parse_element`].
    pub fn word(&self, g: Elem) -> String {
        if g == 0 || self.named.is_empty() {
            return "1".to_string();
        }
        let mut prev: Vec<Option<(Elem, usize)>> = vec![None; self.order()];
        let mut queue = std::collections::VecDeque::from([0]);
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            if x == g {
                break;
            }
            for (i, (_, s)) in self.named.iter().enumerate() {
                let y = self.mul(x, *s);
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, i));
                    queue.push_back(y);
                }
            }
        }
        let mut letters = Vec::new();
        let mut cur = g;
        while let Some((x, i)) = prev[cur] {
            letters.push(i);
            cur = x;
        }
        letters.reverse();
        let sep = if self.named.iter().all(|(n, _)| n.chars().count() == 1) {
            ""
        } else {
            "*"
        };
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < letters.len() {
            let run = letters[i..]
                .iter()
                .take_while(|&&l| l == letters[i])
                .count();
            let name = &self.named[letters[i]].0;
            parts.push(if run == 1 {
                name.clone()
            } else {
                format!("{name}^{run}")
            });
            i += run;
        }
        parts.join(sep)
    }

    /// Parses an element given either in cycle notation (`(1,2)(3,4)`) or
    /// as a word in the named generators (`x*a^2`, `xyab`, `b^-1`).
    pub fn parse_element(&self, input: &str) -> Result<Elem> {
        let s = input.trim();
        if s.starts_with('(') {
            let p = Perm::parse_cycles(s, self.degree)?;
            return self
                .index_of(&p)
                .ok_or_else(|| Error::parse(input, "permutation is not in the group"));
        }
        if s.is_empty() {
            return Err(Error::parse(input, "empty word"));
        }
        if matches!(s, "1" | "e" | "id" | "Id") && self.generator(s).is_none() {
            return Ok(0);
        }
        let mut acc = 0;
        let mut rest = s;
        while !rest.is_empty() {
            let c = rest.chars().next().unwrap();
            if c.is_whitespace() || c == '*' || c == '·' {
                rest = &rest[c.len_utf8()..];
                continue;
            }
            let (gname, g) = self
                .named
                .iter()
                .filter(|(n, _)| rest.starts_with(n.as_str()))
                .max_by_key(|(n, _)| n.len())
                .ok_or_else(|| Error::parse(input, format!("unknown generator at `{rest}`")))?;
            rest = &rest[gname.len()..];
            let mut exp: i64 = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let end = after
                    .char_indices()
                    .find(|&(i, ch)| !(ch.is_ascii_digit() || (i == 0 && ch == '-')))
                    .map_or(after.len(), |(i, _)| i);
                exp = after[..end]
                    .parse()
                    .map_err(|_| Error::parse(input, "bad exponent"))?;
                rest = &after[end..];
            }
            acc = self.mul(acc, self.pow(*g, exp));
        }
        Ok(acc)
    }
}
