//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A [`CycloNumber`] stores its coordinates in the power basis
//! `1, ζ, …, ζ^(φ(n)-1)`, always reduced modulo the `n`-th cyclotomic
//! polynomial, so equal numbers at equal conductor have equal coefficient
//! vectors. Values of different conductor are embedded into the lcm before
//! being combined or compared.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "conductor must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let q = cyclotomic_polynomial(d);
        p = divide_exact(&p, &q);
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, &b) in den.iter().enumerate() {
            r[i + j] -= c * b;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// An element of `Q(ζ_conductor)` with coefficients in `Q`.
#[derive(Clone, Debug)]
pub struct CycloNumber<Q> {
    conductor: u32,
    coeffs: Vec<Q>,
}

impl<Q: Scalar> CycloNumber<Q> {
    /// Reduces a dense polynomial in `ζ_n` (any length) to normal form.
    pub fn from_dense(conductor: u32, mut dense: Vec<Q>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        for i in (deg..dense.len()).rev() {
            let c = std::mem::replace(&mut dense[i], Q::zero());
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    let t = c.clone() * Q::from_int(pj);
                    dense[i - deg + j] = dense[i - deg + j].clone() - t;
                }
            }
        }
        dense.resize(deg, Q::zero());
        CycloNumber {
            conductor,
            coeffs: dense,
        }
    }

    /// `Σ c_k ζ_n^k` for the given `(k, c_k)` pairs; `k` taken mod `n`.
    pub fn from_powers(conductor: u32, terms: impl IntoIterator<Item = (i64, Q)>) -> Self {
        let n = conductor as i64;
        let mut dense = vec![Q::zero(); conductor as usize];
        for (k, c) in terms {
            let k = k.rem_euclid(n) as usize;
            dense[k] = dense[k].clone() + c;
        }
        Self::from_dense(conductor, dense)
    }

    pub fn from_rational(q: Q) -> Self {
        CycloNumber {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_int(n))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        Self::from_powers(conductor, [(k, Q::one())])
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates, length `φ(conductor)`.
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// The same number viewed in `Q(ζ_m)`; `m` must be a multiple of the
    /// conductor.
    pub fn embed(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.conductor),
            "{m} is not a multiple of {}",
            self.conductor
        );
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut dense = vec![Q::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[i * step] = c.clone();
        }
        Self::from_dense(m, dense)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.embed(m), other.embed(m))
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn rational_value(&self) -> Result<Q> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// The automorphism `ζ ↦ ζ^k`.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let n = self.conductor as i64;
        let k = k.rem_euclid(n.max(1));
        if k.gcd(&n) != 1 {
            return Err(Error::NotCoprime {
                k,
                conductor: self.conductor,
            });
        }
        Ok(Self::from_powers(
            self.conductor,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 * k, c.clone())),
        ))
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.coeffs.len();
        // Column j of the multiplication matrix is self * ζ^j.
        let cols: Vec<Self> = (0..d)
            .map(|j| self * &Self::root_of_unity(self.conductor, j as i64))
            .collect();
        let matrix: Vec<Vec<Q>> = (0..d)
            .map(|i| cols.iter().map(|c| c.coeffs[i].clone()).collect())
            .collect();
        let mut rhs = vec![Q::zero(); d];
        rhs[0] = Q::one();
        let x = scalar::solve(&matrix, &rhs)?;
        Some(CycloNumber {
            conductor: self.conductor,
            coeffs: x,
        })
    }

    /// Lexicographic comparison of power-basis coordinates at the common
    /// conductor; a total order used only to make listings deterministic.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.aligned(other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl<Q: Scalar> PartialEq for CycloNumber<Q> {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl<Q: Scalar> Eq for CycloNumber<Q> {}

impl<Q: Scalar> Add for &CycloNumber<Q> {
    type Output = CycloNumber<Q>;

    fn add(self, rhs: &CycloNumber<Q>) -> CycloNumber<Q> {
        let (a, b) = if self.conductor == rhs.conductor {
            (self.clone(), rhs.clone())
        } else {
            self.aligned(rhs)
        };
        CycloNumber {
            conductor: a.conductor,
            coeffs: a
                .coeffs
                .into_iter()
                .zip(b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<Q: Scalar> Neg for &CycloNumber<Q> {
    type Output = CycloNumber<Q>;

    fn neg(self) -> CycloNumber<Q> {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<Q: Scalar> Sub for &CycloNumber<Q> {
    type Output = CycloNumber<Q>;

    fn sub(self, rhs: &CycloNumber<Q>) -> CycloNumber<Q> {
        self + &(-rhs)
    }
}

impl<Q: Scalar> Mul for &CycloNumber<Q> {
    type Output = CycloNumber<Q>;

    fn mul(self, rhs: &CycloNumber<Q>) -> CycloNumber<Q> {
        let (a, b) = if self.conductor == rhs.conductor {
            (self.clone(), rhs.clone())
        } else {
            self.aligned(rhs)
        };
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        let mut dense = vec![Q::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] = dense[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        CycloNumber::from_dense(a.conductor, dense)
    }
}

impl<Q: Scalar> Div for &CycloNumber<Q> {
    type Output = CycloNumber<Q>;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &CycloNumber<Q>) -> CycloNumber<Q> {
        self * &rhs.inverse().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<Q: Scalar> $tr for CycloNumber<Q> {
            type Output = CycloNumber<Q>;
            fn $m(self, rhs: CycloNumber<Q>) -> CycloNumber<Q> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl<Q: Scalar> Neg for CycloNumber<Q> {
    type Output = CycloNumber<Q>;

    fn neg(self) -> CycloNumber<Q> {
        -&self
    }
}

impl<Q: Scalar> Zero for CycloNumber<Q> {
    fn zero() -> Self {
        Self::from_rational(Q::zero())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<Q: Scalar> One for CycloNumber<Q> {
    fn one() -> Self {
        Self::from_rational(Q::one())
    }
}

impl<Q: Scalar> std::iter::Sum for CycloNumber<Q> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

/// GAP-style rendering: `E(n)^k` stands for `ζ_n^k`.
impl<Q: Scalar> fmt::Display for CycloNumber<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let root = match i {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                _ => format!("E({})^{}", self.conductor, i),
            };
            if i == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&root)?;
            } else {
                write!(f, "{abs}*{root}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    conductor: u32,
    coeffs: Vec<String>,
}

impl<Q: Scalar> Serialize for CycloNumber<Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de, Q: Scalar + FromStr> Deserialize<'de> for CycloNumber<Q> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        if w.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|c| {
                c.parse::<Q>()
                    .map_err(|_| D::Error::custom(format!("bad coefficient `{c}`")))
            })
            .collect::<std::result::Result<Vec<Q>, _>>()?;
        let deg = cyclotomic_polynomial(w.conductor).len() - 1;
        if coeffs.len() != deg {
            return Err(D::Error::custom(format!(
                "expected {deg} coefficients for conductor {}",
                w.conductor
            )));
        }
        Ok(CycloNumber {
            conductor: w.conductor,
            coeffs,
        })
    }
}
