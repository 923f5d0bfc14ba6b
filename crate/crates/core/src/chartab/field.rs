//! Arithmetic in a prime field `F_ℓ` with `ℓ < 2³²`, and the polynomial
//! operations needed to find eigenvalues: remainder, gcd, modular powering
//! and Cantor–Zassenhaus root splitting.

/// The prime field `Z/ℓZ`. Elements are `u64` values in `0..ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus > 2 && modulus < 1 << 32, "field modulus out of range");
        PrimeField { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.modulus != 0);
        self.pow(a, self.modulus - 2)
    }

    // Polynomials are coefficient vectors, lowest degree first, with no
    // trailing zeros (the zero polynomial is empty).

    fn trim(p: &mut Vec<u64>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    pub fn poly_eval(&self, p: &[u64], x: u64) -> u64 {
        p.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Scales `p` to leading coefficient 1.
    pub fn poly_monic(&self, p: &[u64]) -> Vec<u64> {
        let lead = self.inv(*p.last().expect("nonzero polynomial"));
        p.iter().map(|&c| self.mul(c, lead)).collect()
    }

    /// Quotient and remainder of `a / b`, `b` nonzero.
    pub fn poly_divmod(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut rem = a.to_vec();
        Self::trim(&mut rem);
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lead_inv = self.inv(*b.last().expect("nonzero divisor"));
        let mut quot = vec![0; rem.len() - b.len() + 1];
        for shift in (0..quot.len()).rev() {
            let c = self.mul(rem[shift + b.len() - 1], lead_inv);
            quot[shift] = c;
            if c != 0 {
                for (i, &bc) in b.iter().enumerate() {
                    rem[shift + i] = self.sub(rem[shift + i], self.mul(c, bc));
                }
            }
        }
        rem.truncate(b.len() - 1);
        Self::trim(&mut rem);
        (quot, rem)
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.poly_divmod(a, b).1
    }

    fn poly_mul_rem(&self, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = self.add(prod[i + j], self.mul(x, y));
            }
        }
        self.poly_rem(&prod, m)
    }

    /// `base^exp mod m`.
    pub fn poly_pow_rem(&self, base: &[u64], mut exp: u64, m: &[u64]) -> Vec<u64> {
        let mut acc = self.poly_rem(&[1], m);
        let mut base = self.poly_rem(base, m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.poly_mul_rem(&acc, &base, m);
            }
            base = self.poly_mul_rem(&base, &base, m);
            exp >>= 1;
        }
        acc
    }

    /// Monic gcd; empty when both inputs are zero.
    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        if x.is_empty() {
            x
        } else {
            self.poly_monic(&x)
        }
    }

    /// Distinct roots of `f` in the field, ascending.
    pub fn poly_roots(&self, f: &[u64]) -> Vec<u64> {
        let mut f = f.to_vec();
        Self::trim(&mut f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let f = self.poly_monic(&f);
        // gcd(f, x^ℓ − x) is the product of the distinct linear factors.
        let mut xl = self.poly_pow_rem(&[0, 1], self.modulus, &f);
        xl.resize(xl.len().max(2), 0);
        xl[1] = self.sub(xl[1], 1);
        let split = self.poly_gcd(&f, &xl);
        let mut roots = Vec::new();
        self.split_linear(split, &mut roots);
        roots.sort_unstable();
        roots
    }

    /// Roots of a monic product of distinct linear factors.
    fn split_linear(&self, g: Vec<u64>, roots: &mut Vec<u64>) {
        match g.len() {
            0 | 1 => return,
            2 => {
                roots.push(self.neg(g[0]));
                return;
            }
            _ => {}
        }
        let half = (self.modulus - 1) / 2;
        for delta in 0..self.modulus {
            let mut s = self.poly_pow_rem(&[delta, 1], half, &g);
            if s.is_empty() {
                s.push(0);
            }
            s[0] = self.sub(s[0], 1);
            let d = self.poly_gcd(&g, &s);
            if d.len() > 1 && d.len() < g.len() {
                let (q, _) = self.poly_divmod(&g, &d);
                self.split_linear(d, roots);
                self.split_linear(self.poly_monic(&q), roots);
                return;
            }
        }
        // No shift split `g`; fall back to evaluation.
        roots.extend((0..self.modulus).filter(|&x| self.poly_eval(&g, x) == 0));
    }

    /// Multiplicity of `root` in `f`, and `f / (x − root)^mult`.
    pub fn poly_deflate(&self, f: &[u64], root: u64) -> (usize, Vec<u64>) {
        let mut f = f.to_vec();
        Self::trim(&mut f);
        let lin = [self.neg(root), 1];
        let mut mult = 0;
        loop {
            let (q, r) = self.poly_divmod(&f, &lin);
            if !r.is_empty() || f.is_empty() {
                return (mult, f);
            }
            f = q;
            mult += 1;
        }
    }
}
