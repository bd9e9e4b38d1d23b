//! Exact complex character tables, their Galois classes, fixed-space
//! dimensions and Schur-index bounds.
//!
//! The table is computed with the Dixon–Schneider method: the central
//! characters `ω_χ(K) = |K|·χ(g_K)/χ(1)` are the common eigenvectors of the
//! class multiplication matrices, which split completely over a prime field
//! `F_p` with `p ≡ 1 (mod exp G)`. Once the values are known modulo `p`, the
//! eigenvalue multiplicities of every `ρ(g)` are recovered by a discrete
//! Fourier transform over the powers of `g`, which yields exact values in
//! `Q(ζ_e)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};
use crate::group::{Elem, Group, MergedElementClass, Subgroup};
use crate::modp::{choose_prime, Fp};
use crate::{Cyclotomic, Rational};

/// Catalog families whose Schur indices are known to coincide with the gcd
/// bound computed here (checked in the test suite).
pub const SCHUR_VERIFIED_FAMILIES: &[&str] =
    &["cyclic", "dihedral", "symmetric", "quaternion8", "wc3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchurSource {
    ComputedUpperBound,
    UserOverride,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: Elem,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub index: usize,
    pub degree: u64,
    /// One value per conjugacy class, in class order.
    pub values: Vec<Cyclotomic>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisClass {
    /// Character indices, ascending; the first is the representative.
    pub members: Vec<usize>,
    /// Units `k mod e` with `σ_k` fixing the representative's values.
    pub field_conductor_subgroup: Vec<u32>,
    /// `[K_U : Q]`.
    pub field_degree: usize,
    pub schur_index: u64,
    pub schur_index_source: SchurSource,
    pub frobenius_schur: i8,
}

impl GaloisClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group_id: u64,
    group_name: Option<String>,
    group_hash: String,
    order: usize,
    conductor: u32,
    prime: u64,
    classes: Vec<ClassInfo>,
    class_of: Vec<usize>,
    /// Class of `g²` for `g` in each class.
    square_class: Vec<usize>,
    characters: Vec<Character>,
    galois_classes: Vec<GaloisClass>,
    galois_class_of: Vec<usize>,
    merged_classes: Vec<MergedElementClass>,
    schur_verified: bool,
    warnings: Vec<String>,
}

impl CharacterTable {
    pub fn compute(g: &Group) -> Result<CharacterTable> {
        let classes: Vec<ClassInfo> = g
            .conjugacy_classes()
            .iter()
            .map(|c| ClassInfo {
                representative: c.representative,
                size: c.size(),
                element_order: c.element_order,
            })
            .collect();
        let class_of: Vec<usize> = (0..g.order()).map(|x| g.class_of(x)).collect();
        let conductor = g.exponent() as u32;
        let prime = choose_prime(g.order() as u64, g.exponent() as u64);
        let raw = dixon_schneider(g, &classes, &class_of, prime)?;

        let mut characters: Vec<Character> = raw
            .into_iter()
            .map(|values| Character {
                index: 0,
                degree: values[0]
                    .rational_value()
                    .ok()
                    .and_then(|q| q.to_integer().try_into().ok())
                    .unwrap_or(0),
                values,
            })
            .collect();
        characters.sort_by(canonical_order);
        for (i, c) in characters.iter_mut().enumerate() {
            c.index = i;
        }

        let mut table = CharacterTable {
            group_id: g.id(),
            group_name: g.name().map(str::to_string),
            group_hash: g.hash().to_string(),
            order: g.order(),
            conductor,
            prime,
            square_class: classes
                .iter()
                .map(|c| class_of[g.mul(c.representative, c.representative)])
                .collect(),
            classes,
            class_of,
            characters,
            galois_classes: Vec::new(),
            galois_class_of: Vec::new(),
            merged_classes: g.merged_classes().to_vec(),
            schur_verified: false,
            warnings: Vec::new(),
        };
        table.schur_verified = table.group_name.as_deref().is_some_and(|name| {
            let family = name.split('(').next().unwrap_or(name);
            SCHUR_VERIFIED_FAMILIES.contains(&family)
        });
        table.compute_galois_classes(g)?;
        Ok(table)
    }

    fn compute_galois_classes(&mut self, g: &Group) -> Result<()> {
        let e = self.conductor as i64;
        let units: Vec<i64> = (1..=e.max(1)).filter(|k| k.gcd(&e) == 1).collect();
        let nchar = self.characters.len();
        let mut class_of = vec![usize::MAX; nchar];
        let mut raw = Vec::new();
        for i in 0..nchar {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            let mut stabilizer = Vec::new();
            for &k in &units {
                let image = self.galois_image(i, k)?;
                let j = self
                    .characters
                    .iter()
                    .position(|c| c.values == image)
                    .ok_or_else(|| {
                        Error::defect("Galois conjugate of a character is not a character")
                    })?;
                if j == i {
                    stabilizer.push(k as u32);
                }
                if !members.contains(&j) {
                    members.push(j);
                }
            }
            members.sort_unstable();
            for &m in &members {
                class_of[m] = raw.len();
            }
            raw.push((members, stabilizer));
        }
        let cyclic = g.cyclic_subgroup_classes();
        if raw.len() != cyclic.len() {
            return Err(Error::defect(format!(
                "{} Galois classes but {} classes of cyclic subgroups",
                raw.len(),
                cyclic.len()
            )));
        }
        self.galois_class_of = class_of;
        let mut galois_classes = Vec::new();
        for (members, stabilizer) in raw {
            let rep = members[0];
            let mut bound = 0u64;
            for c in cyclic {
                let f = self.fixed_dim(rep, &c.representative)?;
                if f > 0 {
                    bound = bound.gcd(&f);
                }
            }
            let indicator = self.frobenius_schur_indicator(rep)?;
            if indicator == -1 && bound == 1 {
                self.warnings.push(format!(
                    "character {rep} has Frobenius-Schur indicator -1 but computed Schur bound 1"
                ));
            }
            if field_degree_mismatch(&members, &stabilizer, units.len()) {
                return Err(Error::defect("Galois orbit size differs from field degree"));
            }
            galois_classes.push(GaloisClass {
                field_degree: members.len(),
                members,
                field_conductor_subgroup: stabilizer,
                schur_index: bound,
                schur_index_source: SchurSource::ComputedUpperBound,
                frobenius_schur: indicator,
            });
        }
        self.galois_classes = galois_classes;
        Ok(())
    }

    /// Values of `χ_i^{σ_k}` where `σ_k : ζ ↦ ζ^k`.
    pub fn galois_image(&self, chi: usize, k: i64) -> Result<Vec<Cyclotomic>> {
        self.characters[chi]
            .values
            .iter()
            .map(|v| v.embed(self.conductor).galois_apply(k))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn group_name(&self) -> Option<&str> {
        self.group_name.as_deref()
    }

    pub fn group_hash(&self) -> &str {
        &self.group_hash
    }

    /// The exponent `e` of the group; all values lie in `Q(ζ_e)`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The prime used for the modular eigenvector computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_of(&self, g: Elem) -> usize {
        self.class_of[g]
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn galois_classes(&self) -> &[GaloisClass] {
        &self.galois_classes
    }

    pub fn galois_class_of(&self, chi: usize) -> usize {
        self.galois_class_of[chi]
    }

    pub fn merged_classes(&self) -> &[MergedElementClass] {
        &self.merged_classes
    }

    /// Whether the group belongs to a family where the Schur bound is known
    /// to be exact.
    pub fn schur_verified(&self) -> bool {
        self.schur_verified
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn value(&self, chi: usize, g: Elem) -> &Cyclotomic {
        &self.characters[chi].values[self.class_of[g]]
    }

    pub fn is_trivial(&self, chi: usize) -> bool {
        self.characters[chi].values.iter().all(|v| v.is_one())
    }

    /// `ker χ = {g : χ(g) = χ(1)}`.
    pub fn kernel(&self, chi: usize) -> Vec<Elem> {
        let c = &self.characters[chi];
        (0..self.class_of.len())
            .filter(|&g| c.values[self.class_of[g]] == c.values[0])
            .collect()
    }

    /// `dim Fix_H(U) = (1/|H|) Σ_{h ∈ H} χ(h)`.
    pub fn fixed_dim(&self, chi: usize, h: &Subgroup) -> Result<u64> {
        if h.group_id() != self.group_id {
            return Err(Error::NotSubgroup);
        }
        let mut counts = vec![0i64; self.classes.len()];
        for &x in h.members() {
            counts[self.class_of[x]] += 1;
        }
        let values = &self.characters[chi].values;
        let sum: Cyclotomic = counts
            .iter()
            .zip(values)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, v)| v * &Cyclotomic::from_int(c))
            .sum();
        let q = sum.rational_value()? / Rational::from_integer((h.order() as i64).into());
        to_natural(&q)
    }

    /// The Schur index of a Galois class: `override_value` if given,
    /// otherwise the gcd of the nonzero `⟨Ind_H^G 1, χ⟩` over cyclic `H`.
    pub fn schur_index(&self, galois_class: usize, override_value: Option<u64>) -> u64 {
        override_value.unwrap_or(self.galois_classes[galois_class].schur_index)
    }

    /// Replaces computed Schur indices. Keys are character indices; the
    /// override applies to the character's whole Galois class.
    pub fn with_schur_overrides(mut self, overrides: &BTreeMap<usize, u64>) -> Result<Self> {
        for (&chi, &val) in overrides {
            if chi >= self.characters.len() {
                return Err(Error::InvalidSignature(format!(
                    "Schur override for character {chi}, table has {}",
                    self.characters.len()
                )));
            }
            if val == 0 {
                return Err(Error::InvalidSignature(
                    "Schur index must be positive".into(),
                ));
            }
            let gc = &mut self.galois_classes[self.galois_class_of[chi]];
            gc.schur_index = val;
            gc.schur_index_source = SchurSource::UserOverride;
        }
        Ok(self)
    }

    /// `(1/|G|) Σ_g χ(g²)`.
    pub fn frobenius_schur_indicator(&self, chi: usize) -> Result<i8> {
        let values = &self.characters[chi].values;
        let mut sum = Cyclotomic::zero();
        for (k, info) in self.classes.iter().enumerate() {
            let sq = self.square_class[k];
            sum = &sum + &(&values[sq] * &Cyclotomic::from_int(info.size as i64));
        }
        let q = sum.rational_value()? / Rational::from_integer((self.order as i64).into());
        if !q.is_integer() || q.abs() > Rational::one() {
            return Err(Error::NotIntegral(q.to_string()));
        }
        Ok(q.to_integer().try_into().unwrap())
    }

    /// Checks both orthogonality relations exactly.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let g = Cyclotomic::from_int(self.order as i64);
        let conj: Vec<Vec<Cyclotomic>> = self
            .characters
            .iter()
            .map(|c| c.values.iter().map(|v| v.conj()).collect())
            .collect();
        for (a, ca) in self.characters.iter().enumerate() {
            for (b, cb) in conj.iter().enumerate().skip(a) {
                let s: Cyclotomic = self
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(k, info)| {
                        &(&ca.values[k] * &cb[k]) * &Cyclotomic::from_int(info.size as i64)
                    })
                    .sum();
                let expect = if a == b {
                    g.clone()
                } else {
                    Cyclotomic::zero()
                };
                if s != expect {
                    return Err(Error::defect(format!(
                        "row orthogonality fails for characters {a}, {b}"
                    )));
                }
            }
        }
        for k in 0..self.classes.len() {
            for l in k..self.classes.len() {
                let s: Cyclotomic = self
                    .characters
                    .iter()
                    .zip(&conj)
                    .map(|(c, cc)| &c.values[k] * &cc[l])
                    .sum();
                let expect = if k == l {
                    Cyclotomic::from_int((self.order / self.classes[k].size) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if s != expect {
                    return Err(Error::defect(format!(
                        "column orthogonality fails for classes {k}, {l}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn field_degree_mismatch(members: &[usize], stabilizer: &[u32], units: usize) -> bool {
    members.len() * stabilizer.len() != units
}

fn to_natural(q: &Rational) -> Result<u64> {
    if !q.is_integer() || q.is_negative() {
        return Err(Error::NotIntegral(q.to_string()));
    }
    q.to_integer()
        .try_into()
        .map_err(|_| Error::NotIntegral(q.to_string()))
}

/// Trivial character first, then by degree, then by value sequence
/// (descending in the coefficient order).
fn canonical_order(a: &Character, b: &Character) -> Ordering {
    let triv = |c: &Character| !c.values.iter().all(|v| v.is_one());
    triv(a)
        .cmp(&triv(b))
        .then(a.degree.cmp(&b.degree))
        .then_with(|| {
            for (x, y) in a.values.iter().zip(&b.values) {
                match y.canonical_cmp(x) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
}

/// Returns the irreducible characters as exact value rows (unordered).
fn dixon_schneider(
    g: &Group,
    classes: &[ClassInfo],
    class_of: &[usize],
    prime: u64,
) -> Result<Vec<Vec<Cyclotomic>>> {
    let s = classes.len();
    let n = g.order();
    let e = g.exponent() as u64;
    let f = Fp::new(prime);

    // coef[j][i][k] = #{x ∈ K_j : x⁻¹ z_k ∈ K_i}, so that
    // ω(K_j) ω(K_i) = Σ_k coef[j][i][k] ω(K_k).
    let mut coef = vec![vec![vec![0u64; s]; s]; s];
    for (k, ck) in classes.iter().enumerate() {
        let z = ck.representative;
        for x in 0..n {
            let y = g.mul(g.inv(x), z);
            coef[class_of[x]][class_of[y]][k] += 1;
        }
    }

    // Split F_p^s into common eigenspaces of all class matrices.
    let identity: Vec<Vec<u64>> = (0..s)
        .map(|i| (0..s).map(|k| u64::from(i == k)).collect())
        .collect();
    let mut spaces = vec![identity];
    let mut lines: Vec<Vec<u64>> = Vec::new();
    for mat in coef.iter().skip(1) {
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                lines.push(space.into_iter().next().unwrap());
                continue;
            }
            next.extend(split_space(f, mat, space)?);
        }
        spaces = next;
        if spaces.is_empty() {
            break;
        }
    }
    for space in spaces {
        if space.len() != 1 {
            return Err(Error::defect(
                "class matrices did not split the class algebra",
            ));
        }
        lines.extend(space);
    }
    if lines.len() != s {
        return Err(Error::defect(format!(
            "found {} characters for {s} classes",
            lines.len()
        )));
    }

    let inverse_class: Vec<usize> = classes
        .iter()
        .map(|c| class_of[g.inv(c.representative)])
        .collect();
    let isqrt = (1..)
        .take_while(|d: &u64| d * d <= n as u64)
        .last()
        .unwrap_or(1);
    let z_e = f.pow(f.primitive_root(), (prime - 1) / e);

    let mut rows_modp = Vec::with_capacity(s);
    let mut rows = Vec::with_capacity(s);
    for v in lines {
        if v[0] == 0 {
            return Err(Error::defect("central character vanishes at the identity"));
        }
        let inv0 = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, inv0)).collect();
        let mut norm = 0;
        for i in 0..s {
            let t = f.mul(w[i], w[inverse_class[i]]);
            norm = f.add(norm, f.mul(t, f.inv(f.reduce(classes[i].size as u64))));
        }
        let target = f.mul(f.reduce(n as u64), f.inv(norm));
        let degree = (1..=isqrt)
            .find(|d| f.mul(*d, *d) == target)
            .ok_or_else(|| Error::defect("no integral character degree"))?;
        let vals: Vec<u64> = (0..s)
            .map(|i| f.mul(f.mul(degree, w[i]), f.inv(f.reduce(classes[i].size as u64))))
            .collect();

        let mut exact = Vec::with_capacity(s);
        for info in classes {
            let o = info.element_order as u64;
            let z_o = f.pow(z_e, e / o);
            let powers = g.powers(info.representative);
            let inv_o = f.inv(f.reduce(o));
            let mut terms = Vec::new();
            for l in 0..o {
                let mut acc = 0;
                for (t, &pw) in powers.iter().enumerate() {
                    let tw = f.pow(z_o, (o - (l * t as u64) % o) % o);
                    acc = f.add(acc, f.mul(vals[class_of[pw]], tw));
                }
                let m = f.mul(acc, inv_o);
                if m > degree {
                    return Err(Error::defect("eigenvalue multiplicity exceeds the degree"));
                }
                if m > 0 {
                    terms.push((
                        (l * (e / o)) as i64,
                        Rational::from_integer((m as i64).into()),
                    ));
                }
            }
            exact.push(CycloNumber::from_powers(e as u32, terms));
        }
        rows_modp.push(vals);
        rows.push(exact);
    }

    // Row orthogonality modulo p is a cheap end-to-end check of the split.
    for a in 0..s {
        for b in 0..s {
            let mut sum = 0;
            for i in 0..s {
                let t = f.mul(rows_modp[a][i], rows_modp[b][inverse_class[i]]);
                sum = f.add(sum, f.mul(t, f.reduce(classes[i].size as u64)));
            }
            let expect = if a == b { f.reduce(n as u64) } else { 0 };
            if sum != expect {
                return Err(Error::defect("modular row orthogonality fails"));
            }
        }
    }
    Ok(rows)
}

/// Splits an invariant subspace (RREF basis rows) into eigenspaces of `mat`.
fn split_space(f: Fp, mat: &[Vec<u64>], mut basis: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let pivots = f.rref(&mut basis);
    let d = basis.len();
    let s = mat.len();
    // (M b)_i = Σ_k mat[i][k] b_k; coordinates of a vector in the RREF
    // basis are its entries at the pivot columns.
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..s)
                .map(|i| (0..s).fold(0, |acc, k| f.add(acc, f.mul(mat[i][k], b[k]))))
                .collect()
        })
        .collect();
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|r| (0..d).map(|c| images[c][pivots[r]]).collect())
        .collect();
    let roots = f.roots(&f.charpoly(&restricted));
    if roots.len() == 1 {
        return Ok(vec![basis]);
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, &x)| if r == c { f.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let coords = f.nullspace(&shifted);
        let mut vectors: Vec<Vec<u64>> = coords
            .iter()
            .map(|y| {
                (0..s)
                    .map(|k| (0..d).fold(0, |acc, m| f.add(acc, f.mul(y[m], basis[m][k]))))
                    .collect()
            })
            .collect();
        f.rref(&mut vectors);
        total += vectors.len();
        out.push(vectors);
    }
    if total != d {
        return Err(Error::defect("class matrix is not diagonalisable over F_p"));
    }
    Ok(out)
}
