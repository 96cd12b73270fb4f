//! Dense polynomials over `ℤ/q` for a small odd prime `q`, and their
//! factorization by distinct-degree and equal-degree splitting.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Coefficients ascending, trimmed, each in `0..q`.
pub type ModPoly = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub struct Field {
    pub q: u64,
}

impl Field {
    pub fn new(q: u64) -> Self {
        assert!(q > 2 && q < (1 << 31), "prime must be odd and below 2^31");
        Field { q }
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.q
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, a);
            }
            a = self.mulmod(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.q != 0, "inverse of zero");
        self.pow(a, self.q - 2)
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    pub fn trim(p: &mut ModPoly) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    pub fn degree(p: &ModPoly) -> Option<usize> {
        p.len().checked_sub(1)
    }

    pub fn add(&self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        let n = a.len().max(b.len());
        let mut out: ModPoly = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.q)
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn sub(&self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        let n = a.len().max(b.len());
        let mut out: ModPoly = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + self.q - b.get(i).copied().unwrap_or(0)) % self.q)
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn scale(&self, a: &ModPoly, c: u64) -> ModPoly {
        let mut out: ModPoly = a.iter().map(|&v| self.mulmod(v, c % self.q)).collect();
        Self::trim(&mut out);
        out
    }

    pub fn mul(&self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.q;
            }
        }
        Self::trim(&mut out);
        out
    }

    pub fn divrem(&self, a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(b[db]);
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mulmod(r[k + db], inv);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + self.q - self.mulmod(c, bj)) % self.q;
            }
        }
        Self::trim(&mut q);
        Self::trim(&mut r);
        (q, r)
    }

    pub fn rem(&self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &ModPoly) -> ModPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn gcd(&self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(&self, a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(&lc) => {
                let inv = self.inv(lc);
                (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
            }
        }
    }

    pub fn derivative(&self, a: &ModPoly) -> ModPoly {
        let mut out: ModPoly = a.iter().enumerate().skip(1).map(|(i, &c)| self.mulmod(c, i as u64 % self.q)).collect();
        Self::trim(&mut out);
        out
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &ModPoly, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut acc: ModPoly = self.rem(&vec![1], m);
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self, a: &ModPoly) -> bool {
        let g = self.gcd(a, &self.derivative(a));
        g.len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(d, product of all irreducible factors of degree d)`.
    pub fn distinct_degree(&self, f: &ModPoly) -> Vec<(usize, ModPoly)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: ModPoly = vec![0, 1];
        let q = BigUint::from(self.q);
        let mut w = x.clone();
        let mut d = 0;
        while Self::degree(&f).unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            w = self.powmod(&w, &q, &f);
            let g = self.gcd(&self.sub(&w, &x), &f);
            if g.len() > 1 {
                out.push((d, g.clone()));
                f = self.divrem(&f, &g).0;
                w = self.rem(&w, &f);
            }
        }
        if f.len() > 1 {
            out.push((f.len() - 1, f));
        }
        out
    }

    /// Splits a monic product of irreducibles of common degree `d`.
    ///
    /// Trial polynomials are enumerated in a fixed order, so the result is
    /// reproducible.
    pub fn equal_degree(&self, f: &ModPoly, d: usize) -> Vec<ModPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let e: BigUint = (num_traits::pow(BigUint::from(self.q), d) - BigUint::one()) >> 1;
        let mut counter: u64 = self.q;
        loop {
            let a = self.trial_poly(counter, n);
            counter += 1;
            if a.len() < 2 {
                continue;
            }
            let h = self.sub(&self.powmod(&a, &e, f), &vec![1]);
            let g = self.gcd(&h, f);
            if g.len() > 1 && g.len() < f.len() {
                let other = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d);
                out.extend(self.equal_degree(&other, d));
                return out;
            }
        }
    }

    /// Base-`q` digits of `counter` as a polynomial of degree below `n`.
    fn trial_poly(&self, mut counter: u64, n: usize) -> ModPoly {
        let mut out = Vec::new();
        while counter > 0 && out.len() < n {
            out.push(counter % self.q);
            counter /= self.q;
        }
        Self::trim(&mut out);
        out
    }

    /// Monic irreducible factors of a monic squarefree polynomial, sorted.
    pub fn factor_squarefree(&self, f: &ModPoly) -> Vec<ModPoly> {
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Number of irreducible factors of a monic squarefree polynomial,
    /// from the distinct-degree split alone.
    pub fn count_factors(&self, f: &ModPoly) -> usize {
        self.distinct_degree(f).iter().map(|(d, g)| (g.len() - 1) / d).sum()
    }
}

/// Odd primes in ascending order starting at 3.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

pub fn is_zero(p: &ModPoly) -> bool {
    p.iter().all(Zero::is_zero)
}
