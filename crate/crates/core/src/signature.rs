//! Signatures of group actions on surfaces and the existence test by
//! generating-vector search.

use std::collections::HashSet;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::Rational;

/// Default limit on the number of search nodes.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Genus of `S` from `|G|`, the quotient genus and the branch orders.
pub fn riemann_hurwitz_genus(order: usize, gamma: u64, orders: &[usize]) -> Result<u64> {
    if let Some(m) = orders.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidSignature(format!(
            "branch order {m} is below 2"
        )));
    }
    let n = Rational::from_integer(order.into());
    let mut value = &n * Rational::from_integer((gamma as i64 - 1).into()) + Rational::one();
    let half = &n / Rational::from_integer(2.into());
    for &m in orders {
        value += &half * (Rational::one() - Rational::new(1.into(), m.into()));
    }
    if !value.is_integer() || value.is_negative() {
        return Err(Error::RiemannHurwitz {
            value: value.to_string(),
        });
    }
    u64::try_from(value.to_integer()).map_err(|_| Error::RiemannHurwitz {
        value: value.to_string(),
    })
}

/// Wire form of a signature: branches with an optional element whose cyclic
/// subgroup fixes the stabilizer class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureSpec {
    pub genus: u64,
    #[serde(default)]
    pub branches: Vec<BranchSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSpec {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_rep: Option<String>,
}

impl SignatureSpec {
    pub fn is_plain(&self) -> bool {
        self.branches.iter().any(|b| b.class_rep.is_none())
    }

    /// All geometric signatures matching this specification. Branches
    /// without a `class_rep` range over every cyclic class of the right
    /// order; refinements that differ only by permuting branches are listed
    /// once.
    pub fn refinements(&self, g: &Group) -> Result<Vec<GeometricSignature>> {
        let mut options: Vec<Vec<BranchEntry>> = Vec::new();
        for b in &self.branches {
            if b.order < 2 {
                return Err(Error::InvalidSignature(format!(
                    "branch order {} is below 2",
                    b.order
                )));
            }
            match &b.class_rep {
                Some(word) => options.push(vec![BranchEntry::from_word(g, b.order, word)?]),
                None => {
                    let choices: Vec<BranchEntry> = g
                        .cyclic_subgroup_classes()
                        .iter()
                        .filter(|c| c.representative.order() == b.order)
                        .map(|c| BranchEntry::new(g, b.order, c.generator, g.word(c.generator)))
                        .collect::<Result<_>>()?;
                    if choices.is_empty() {
                        return Ok(Vec::new());
                    }
                    options.push(choices);
                }
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut idx = vec![0usize; options.len()];
        loop {
            let entries: Vec<BranchEntry> = idx
                .iter()
                .zip(&options)
                .map(|(&i, o)| o[i].clone())
                .collect();
            let mut key: Vec<(usize, usize)> = entries.iter().map(|e| (e.order, e.class)).collect();
            key.sort_unstable();
            if seen.insert(key) {
                out.push(GeometricSignature {
                    genus: self.genus,
                    entries,
                });
            }
            let mut pos = options.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < options[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// The single geometric signature this specification denotes.
    pub fn to_geometric(&self, g: &Group) -> Result<GeometricSignature> {
        if self.is_plain() {
            return Err(Error::InvalidSignature(
                "every branch needs a class_rep".into(),
            ));
        }
        Ok(self.refinements(g)?.remove(0))
    }
}

/// One branch value `[m_j, C_j]`. `stabilizer` is the literal cyclic group
/// `G_j = ⟨generator⟩` chosen inside the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchEntry {
    pub order: usize,
    /// Index into [`Group::cyclic_subgroup_classes`].
    pub class: usize,
    pub generator: Elem,
    pub stabilizer: Subgroup,
    /// How the class was given: the user's word, or a shortest word.
    pub label: String,
}

impl BranchEntry {
    pub fn new(g: &Group, order: usize, generator: Elem, label: String) -> Result<BranchEntry> {
        if order < 2 {
            return Err(Error::InvalidSignature(format!(
                "branch order {order} is below 2"
            )));
        }
        if g.element_order(generator) != order {
            return Err(Error::InvalidSignature(format!(
                "{label} has order {}, branch order is {order}",
                g.element_order(generator)
            )));
        }
        Ok(BranchEntry {
            order,
            class: g.cyclic_class_of(generator),
            generator,
            stabilizer: g.subgroup(&[generator]),
            label,
        })
    }

    pub fn from_word(g: &Group, order: usize, word: &str) -> Result<BranchEntry> {
        BranchEntry::new(g, order, g.parse_element(word)?, word.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricSignature {
    pub genus: u64,
    pub entries: Vec<BranchEntry>,
}

impl GeometricSignature {
    /// Builds a signature from `(order, generator word)` pairs.
    pub fn from_words(g: &Group, genus: u64, branches: &[(usize, &str)]) -> Result<Self> {
        let entries = branches
            .iter()
            .map(|&(m, w)| BranchEntry::from_word(g, m, w))
            .collect::<Result<_>>()?;
        Ok(GeometricSignature { genus, entries })
    }

    pub fn orders(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.order).collect()
    }

    pub fn surface_genus(&self, g: &Group) -> Result<u64> {
        riemann_hurwitz_genus(g.order(), self.genus, &self.orders())
    }

    pub fn to_spec(&self) -> SignatureSpec {
        SignatureSpec {
            genus: self.genus,
            branches: self
                .entries
                .iter()
                .map(|e| BranchSpec {
                    order: e.order,
                    class_rep: Some(e.label.clone()),
                })
                .collect(),
        }
    }
}

/// `(a₁…a_γ, b₁…b_γ, c₁…c_t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratingVector {
    pub a: Vec<Elem>,
    pub b: Vec<Elem>,
    pub c: Vec<Elem>,
}

impl GeneratingVector {
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.a.iter().chain(&self.b).chain(&self.c).copied()
    }

    /// Elementwise conjugate `x⁻¹ v x`.
    pub fn conjugate(&self, g: &Group, x: Elem) -> GeneratingVector {
        let f = |v: &Vec<Elem>| v.iter().map(|&e| g.conj(e, x)).collect();
        GeneratingVector {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
        }
    }

    /// `Π [a_i, b_i] · Π c_j`.
    pub fn product(&self, g: &Group) -> Elem {
        let comms = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(&a, &b)| g.commutator(a, b));
        g.product(comms.chain(self.c.iter().copied()))
    }
}

/// Per-condition result of [`verify_generating_vector`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub riemann_hurwitz: bool,
    pub shape: bool,
    pub orders: Vec<bool>,
    pub classes: Vec<bool>,
    pub product: bool,
    pub generates: bool,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.riemann_hurwitz
            && self.shape
            && self.orders.iter().all(|&b| b)
            && self.classes.iter().all(|&b| b)
            && self.product
            && self.generates
    }

    /// Name of the first failing condition.
    pub fn failure(&self) -> Option<&'static str> {
        if !self.riemann_hurwitz {
            Some("riemann-hurwitz")
        } else if !self.shape {
            Some("shape")
        } else if !self.orders.iter().all(|&b| b) {
            Some("orders")
        } else if !self.classes.iter().all(|&b| b) {
            Some("classes")
        } else if !self.product {
            Some("product")
        } else if !self.generates {
            Some("generation")
        } else {
            None
        }
    }
}

pub fn verify_generating_vector(
    g: &Group,
    sig: &GeometricSignature,
    v: &GeneratingVector,
) -> Verification {
    let gamma = sig.genus as usize;
    let shape = v.a.len() == gamma && v.b.len() == gamma && v.c.len() == sig.entries.len();
    let orders = sig
        .entries
        .iter()
        .zip(&v.c)
        .map(|(e, &c)| g.element_order(c) == e.order)
        .collect();
    let classes = sig
        .entries
        .iter()
        .zip(&v.c)
        .map(|(e, &c)| g.cyclic_class_of(c) == e.class)
        .collect();
    let elems: Vec<Elem> = v.elements().collect();
    Verification {
        riemann_hurwitz: sig.surface_genus(g).is_ok(),
        shape,
        orders,
        classes,
        product: v.product(g) == g.identity(),
        generates: g.subgroup(&elems).order() == g.order(),
    }
}

/// Result of a completed search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub vector: Option<GeneratingVector>,
    /// Number of elements placed during the search.
    pub nodes: u64,
}

/// Searches for the lexicographically first generating vector, ordering
/// tuples by `(a, b, c)` element indices.
///
/// Fails with [`Error::RiemannHurwitz`] when condition (i) does not hold and
/// with [`Error::BudgetExceeded`] when more than `budget` nodes are needed.
pub fn find_generating_vector(
    g: &Group,
    sig: &GeometricSignature,
    budget: u64,
) -> Result<SearchOutcome> {
    let mut found = None;
    let nodes = search(g, sig, budget, &mut |v| {
        found = Some(v.clone());
        true
    })?;
    Ok(SearchOutcome {
        vector: found,
        nodes,
    })
}

/// Calls `visit` on every generating vector in canonical order until it
/// returns `true`. Returns the node count.
pub fn search(
    g: &Group,
    sig: &GeometricSignature,
    budget: u64,
    visit: &mut dyn FnMut(&GeneratingVector) -> bool,
) -> Result<u64> {
    sig.surface_genus(g)?;
    let pools: Vec<Vec<Elem>> = sig
        .entries
        .iter()
        .map(|e| {
            (0..g.order())
                .filter(|&x| g.element_order(x) == e.order && g.cyclic_class_of(x) == e.class)
                .collect()
        })
        .collect();
    let mut s = Search {
        g,
        gamma: sig.genus as usize,
        in_last: pools.last().map(|p| {
            let mut mask = vec![false; g.order()];
            for &x in p {
                mask[x] = true;
            }
            mask
        }),
        pools,
        budget,
        nodes: 0,
        slots: Vec::new(),
        visit,
    };
    s.ab()?;
    Ok(s.nodes)
}

struct Search<'a, 'v> {
    g: &'a Group,
    gamma: usize,
    pools: Vec<Vec<Elem>>,
    in_last: Option<Vec<bool>>,
    budget: u64,
    nodes: u64,
    slots: Vec<Elem>,
    visit: &'v mut dyn FnMut(&GeneratingVector) -> bool,
}

impl Search<'_, '_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Places a₁…a_γ then b₁…b_γ over all of `G`. Returns `true` to stop.
    fn ab(&mut self) -> Result<bool> {
        let depth = self.slots.len();
        if depth == 2 * self.gamma {
            let g = self.g;
            let (a, b) = self.slots.split_at(self.gamma);
            let comm = g.product(a.iter().zip(b).map(|(&x, &y)| g.commutator(x, y)));
            return self.cs(comm);
        }
        for x in 0..self.g.order() {
            self.tick()?;
            self.slots.push(x);
            let stop = self.ab()?;
            self.slots.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Places c₁…c_{t−1} from their pools and derives c_t.
    fn cs(&mut self, prefix: Elem) -> Result<bool> {
        let j = self.slots.len() - 2 * self.gamma;
        let t = self.pools.len();
        if t == 0 {
            return self.leaf(prefix == self.g.identity());
        }
        if j + 1 == t {
            self.tick()?;
            let last = self.g.inv(prefix);
            if !self.in_last.as_ref().unwrap()[last] {
                return Ok(false);
            }
            self.slots.push(last);
            let stop = self.leaf(true);
            self.slots.pop();
            return stop;
        }
        for i in 0..self.pools[j].len() {
            let c = self.pools[j][i];
            self.tick()?;
            self.slots.push(c);
            let stop = self.cs(self.g.mul(prefix, c))?;
            self.slots.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn leaf(&mut self, relation: bool) -> Result<bool> {
        if !relation || self.g.subgroup(&self.slots).order() != self.g.order() {
            return Ok(false);
        }
        let gm = self.gamma;
        let v = GeneratingVector {
            a: self.slots[..gm].to_vec(),
            b: self.slots[gm..2 * gm].to_vec(),
            c: self.slots[2 * gm..].to_vec(),
        };
        Ok((self.visit)(&v))
    }
}

/// Orbit accounting for a point with stabilizer `p`: the orbit splits into
/// `[G : N_G(P)]` packages of `[N_G(P) : P]` points.
pub fn orbit_packages(g: &Group, p: &Subgroup) -> Result<(usize, usize)> {
    if p.is_trivial() {
        return Err(Error::TrivialStabilizer);
    }
    let n = g.normalizer(p)?;
    Ok((g.order() / n.order(), n.order() / p.order()))
}
