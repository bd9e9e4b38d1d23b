//! Arithmetic and dense linear algebra over a prime field `F_p`, `p < 2³¹`.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p < (1 << 31) && is_prime(p));
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, a: u64) -> u64 {
        a % self.p
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_root(self) -> u64 {
        let n = self.p - 1;
        let factors = prime_factors(n);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, n / q) != 1))
            .unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &p) in row[c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                        *x = self.sub(*x, self.mul(f, p));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{y : M y = 0}`.
    pub fn nullspace(self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = m.first().map_or(0, Vec::len);
        let mut rows = m.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; n];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, rows[r][f]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - M)`, constant term first, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(self, m: &[Vec<u64>]) -> Vec<u64> {
        let n = m.len();
        let mut h = m.to_vec();
        for col in 1..n.saturating_sub(1) {
            let Some(i) = (col..n).find(|&i| h[i][col - 1] != 0) else {
                continue;
            };
            if i != col {
                h.swap(i, col);
                for row in h.iter_mut() {
                    row.swap(i, col);
                }
            }
            let t = self.inv(h[col][col - 1]);
            for i in col + 1..n {
                let u = self.mul(h[i][col - 1], t);
                if u == 0 {
                    continue;
                }
                let source = h[col].clone();
                for (x, &y) in h[i].iter_mut().zip(&source) {
                    *x = self.sub(*x, self.mul(u, y));
                }
                for row in h.iter_mut() {
                    let d = self.mul(u, row[i]);
                    row[col] = self.add(row[col], d);
                }
            }
        }
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            // (x - h[k][k]) p_k
            let pk = &polys[k];
            let mut next = vec![0; pk.len() + 1];
            for (i, &c) in pk.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(h[k][k], c));
            }
            let mut prod = 1;
            for i in (0..k).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let coef = self.mul(h[i][k], prod);
                if coef != 0 {
                    for (d, &c) in polys[i].iter().enumerate() {
                        next[d] = self.sub(next[d], self.mul(coef, c));
                    }
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Roots of `poly` in `F_p`, by exhaustive evaluation.
    pub fn roots(self, poly: &[u64]) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(poly, x) == 0).collect()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2√order`.
pub(crate) fn choose_prime(order: u64, exponent: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime(p) && p * p > 4 * order) {
        p += exponent;
    }
    p
}
