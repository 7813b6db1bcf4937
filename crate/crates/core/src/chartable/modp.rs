//! Arithmetic and linear algebra over the prime field F_p, p < 2³¹.

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

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Primes `p ≡ 1 (mod e)` with `p > lower`, in increasing order.
pub(crate) fn primes_congruent_one(e: u64, lower: u64) -> impl Iterator<Item = u64> {
    let start = lower / e + 1;
    (start..).map(move |k| k * e + 1).filter(|&p| is_prime(p))
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn pow(self, mut a: u64, mut k: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        r
    }
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u64 {
        let factors = prime_factors(self.p - 1);
        (2..self.p).find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1)).unwrap_or(1)
    }

    /// Basis of `{c : K c = 0}` for a `rows × cols` matrix `K`.
    pub fn nullspace(self, k: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut a: Vec<Vec<u64>> = k.to_vec();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(pr) = (row..a.len()).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(row, pr);
            let inv = self.inv(a[row][col]);
            for v in a[row].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for r in 0..a.len() {
                if r != row && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in 0..cols {
                        let t = self.mul(f, a[row][c]);
                        a[r][c] = self.sub(a[r][c], t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.len() {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = self.sub(0, a[r][free]);
            }
            basis.push(v);
        }
        basis
    }
}
