//! Small-modulus arithmetic and 2×2 matrices over prime fields.
//!
//! Matrices follow the row-vector convention used for the Sylow
//! p-subgroup throughout the crate: the element `a1^i a2^j` is the row
//! `(i, j)`, an endomorphism acts as `v ↦ v·M`, and the product `M·N`
//! means "apply `M`, then `N`".

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result
}

/// Inverse modulo a prime `m`; `None` for zero.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let a = a % m;
    if a == 0 {
        return None;
    }
    Some(pow_mod(a, m - 2, m))
}

/// Multiplicative order of `a` modulo `m`, or `None` if `a` is not a unit.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    let a = a % m;
    if a == 0 || m < 2 {
        return None;
    }
    let mut x = a;
    for k in 1..m {
        if x == 1 {
            return Some(k);
        }
        x = x * a % m;
    }
    None
}

/// Smallest `x` in `2..m` whose multiplicative order modulo `m` is `order`.
pub fn smallest_of_order(order: u64, m: u64) -> Option<u64> {
    (2..m).find(|&x| mult_order(x, m) == Some(order))
}

/// Brute-force discrete logarithm: the least `e < modulus_order` with
/// `base^e ≡ target (mod m)`.
pub fn discrete_log(base: u64, target: u64, m: u64) -> Option<u64> {
    let target = target % m;
    let mut x = 1 % m;
    for e in 0..m {
        if x == target {
            return Some(e);
        }
        x = x * base % m;
    }
    None
}

/// Reduce a signed value into `0..m`.
pub fn reduce(v: i64, m: u64) -> u64 {
    v.rem_euclid(m as i64) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub rows: [[u32; 2]; 2],
    pub p: u32,
}

impl Mat2 {
    pub fn new(rows: [[i64; 2]; 2], p: u32) -> Self {
        let r = |v: i64| reduce(v, p as u64) as u32;
        Mat2 { rows: [[r(rows[0][0]), r(rows[0][1])], [r(rows[1][0]), r(rows[1][1])]], p }
    }

    pub fn identity(p: u32) -> Self {
        Mat2::new([[1, 0], [0, 1]], p)
    }

    pub fn zero(p: u32) -> Self {
        Mat2::new([[0, 0], [0, 0]], p)
    }

    pub fn diag(x: u64, y: u64, p: u32) -> Self {
        Mat2::new([[x as i64, 0], [0, y as i64]], p)
    }

    pub fn scalar(x: u64, p: u32) -> Self {
        Mat2::diag(x, x, p)
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let p = self.p as u64;
        let a = &self.rows;
        let b = &other.rows;
        let mut out = [[0u32; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let s = a[i][0] as u64 * b[0][j] as u64 + a[i][1] as u64 * b[1][j] as u64;
                *cell = (s % p) as u32;
            }
        }
        Mat2 { rows: out, p: self.p }
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let p = self.p;
        let mut out = self.rows;
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = (out[i][j] + other.rows[i][j]) % p;
            }
        }
        Mat2 { rows: out, p }
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        let p = self.p;
        let mut out = self.rows;
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = (out[i][j] + p - other.rows[i][j]) % p;
            }
        }
        Mat2 { rows: out, p }
    }

    pub fn pow(&self, mut e: u64) -> Mat2 {
        let mut result = Mat2::identity(self.p);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn det(&self) -> u32 {
        let p = self.p as u64;
        let r = &self.rows;
        let d = (r[0][0] as u64 * r[1][1] as u64) % p + p * p - (r[0][1] as u64 * r[1][0] as u64) % p;
        (d % p) as u32
    }

    pub fn trace(&self) -> u32 {
        (self.rows[0][0] + self.rows[1][1]) % self.p
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let p = self.p as u64;
        let dinv = inv_mod(self.det() as u64, p)? as i64;
        let r = &self.rows;
        Some(Mat2::new(
            [[r[1][1] as i64 * dinv, -(r[0][1] as i64) * dinv], [-(r[1][0] as i64) * dinv, r[0][0] as i64 * dinv]],
            self.p,
        ))
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.p)
    }

    pub fn is_scalar(&self) -> bool {
        self.rows[0][1] == 0 && self.rows[1][0] == 0 && self.rows[0][0] == self.rows[1][1]
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: (u32, u32)) -> (u32, u32) {
        let p = self.p as u64;
        let r = &self.rows;
        let x = (v.0 as u64 * r[0][0] as u64 + v.1 as u64 * r[1][0] as u64) % p;
        let y = (v.0 as u64 * r[0][1] as u64 + v.1 as u64 * r[1][1] as u64) % p;
        (x as u32, y as u32)
    }

    /// Multiplicative order, if invertible.
    pub fn order(&self) -> Option<u64> {
        self.inverse()?;
        let limit = (self.p as u64).pow(4);
        let mut x = *self;
        for k in 1..=limit {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }

    /// Roots of the characteristic polynomial `x² − tr·x + det` in `F_p`,
    /// with multiplicity, ascending.
    pub fn eigenvalues(&self) -> Vec<u32> {
        let p = self.p as u64;
        let t = self.trace() as u64;
        let d = self.det() as u64;
        let mut roots = Vec::new();
        for x in 0..p {
            let v = (x * x % p + p * p - t * x % p + d) % p;
            if v == 0 {
                roots.push(x as u32);
            }
        }
        match roots.len() {
            1 => vec![roots[0], roots[0]],
            _ => roots,
        }
    }

    pub fn char_poly_irreducible(&self) -> bool {
        self.eigenvalues().is_empty()
    }
}
