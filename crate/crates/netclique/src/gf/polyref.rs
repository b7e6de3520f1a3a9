//! Reference field arithmetic on coefficient vectors.
//!
//! This is the independent route used to cross-check the Zech-table
//! arithmetic in [`super::FieldSpec`]: elements are plain coefficient
//! vectors and every operation is schoolbook polynomial arithmetic reduced
//! mod the defining polynomial. Nothing here touches the log tables.

/// Coefficient vector, ascending degree, length = extension degree.
pub type Coeffs = Vec<u32>;

/// GF(p^e) on coefficient vectors modulo `poly` (monic, ascending).
pub struct PolyField {
    pub p: u32,
    pub e: u32,
    pub poly: Vec<u32>,
}

impl PolyField {
    pub fn new(p: u32, e: u32, poly: Vec<u32>) -> PolyField {
        assert_eq!(poly.len(), e as usize + 1);
        assert_eq!(poly[e as usize], 1, "defining polynomial must be monic");
        PolyField { p, e, poly }
    }

    pub fn zero(&self) -> Coeffs {
        vec![0; self.e as usize]
    }

    pub fn one(&self) -> Coeffs {
        let mut c = self.zero();
        c[0] = 1;
        c
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Coeffs {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Coeffs {
        a.iter().map(|&x| (self.p - x % self.p) % self.p).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Coeffs {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Coeffs {
        poly_mul_mod(self.p, a, b, &self.poly)
    }

    pub fn pow(&self, a: &[u32], mut k: u64) -> Coeffs {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Inverse by a^(q-2); panics on zero.
    pub fn inv(&self, a: &[u32]) -> Coeffs {
        assert!(a.iter().any(|&c| c != 0), "inverse of zero");
        let q = (self.p as u64).pow(self.e);
        self.pow(a, q - 2)
    }
}

/// Product of two coefficient vectors reduced mod `modulus` (monic).
pub fn poly_mul_mod(p: u32, a: &[u32], b: &[u32], modulus: &[u32]) -> Coeffs {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // reduce from the top using x^e = -(modulus without leading term)
    for i in (e..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..e {
            let sub = c * modulus[j] as u64 % p as u64;
            prod[i - e + j] = (prod[i - e + j] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(e);
    prod.iter().map(|&c| c as u32).collect()
}

/// Remainder of `a` divided by monic `b` over GF(p).
pub fn poly_divrem(p: u32, a: &[u32], b: &[u32]) -> Coeffs {
    let db = degree(b);
    let mut rem: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let mut da = degree_u64(&rem);
    while da >= db && rem.iter().any(|&c| c != 0) {
        let lead = rem[da];
        for j in 0..=db {
            let sub = lead * b[j] as u64 % p as u64;
            rem[da - db + j] = (rem[da - db + j] + p as u64 - sub) % p as u64;
        }
        if da == 0 {
            break;
        }
        da = degree_u64(&rem);
    }
    rem.iter().map(|&c| c as u32).collect()
}

fn degree(a: &[u32]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn degree_u64(a: &[u64]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

/// Irreducibility over GF(p) by trial division against every monic
/// polynomial of degree at most deg/2.
pub fn poly_is_irreducible(p: u32, poly: &[u32]) -> bool {
    let e = degree(poly);
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for key in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut k = key;
            for _ in 0..d {
                div.push((k % p as u64) as u32);
                k /= p as u64;
            }
            div.push(1);
            let rem = poly_divrem(p, poly, &div);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_over_gf2() {
        assert!(poly_is_irreducible(2, &[1, 1, 1])); // x^2+x+1
        assert!(!poly_is_irreducible(2, &[1, 0, 1])); // x^2+1 = (x+1)^2
        assert!(poly_is_irreducible(2, &[1, 1, 0, 1])); // x^3+x+1
    }

    #[test]
    fn mul_mod_in_gf9() {
        // x^2 + x + 2 over GF(3): x * x = -x - 2 = 2x + 1
        let f = PolyField::new(3, 2, vec![2, 1, 1]);
        let x = vec![0, 1];
        assert_eq!(f.mul(&x, &x), vec![1, 2]);
        let inv = f.inv(&x);
        assert_eq!(f.mul(&x, &inv), f.one());
    }
}
