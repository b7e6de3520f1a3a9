//! Exact arithmetic in GF(p^e) backed by discrete-log tables.
//!
//! Elements are stored as *codes*: code 0 is the zero element, and code
//! `k` in `[1, q)` is `β^(k-1)` for the fixed primitive element β. The
//! primitive element is always the residue class of the polynomial
//! variable, so multiplication is exponent arithmetic and addition goes
//! through a Zech logarithm table (`1 + β^d = β^Z(d)`).
//!
//! Code order on nonzero elements coincides with exponent order, which the
//! orbit canonicalization in `autgroup` relies on.

use std::fmt;
use thiserror::Error;

pub mod polyref;

use polyref::poly_is_irreducible;

/// Table guard: all fields are required to satisfy `q = p^e <= 2^20`.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const ZECH_MINUS_ONE: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field order {0} exceeds the 2^20 table guard")]
    TooLarge(u64),
    #[error("no monic irreducible polynomial of degree {e} over GF({p}) has a primitive variable class")]
    NoPrimitivePolynomial { p: u32, e: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("power class of zero is undefined")]
    ZeroClass,
    #[error("{0} does not divide the multiplicative order {1}")]
    BadClassModulus(u64, u64),
    #[error("field of degree {0} has no index-2 subfield")]
    OddDegree(u32),
    #[error("incompatible field orders: {0} is not the square of {1}")]
    NotSubfieldPair(u64, u64),
    #[error("element code {0} out of range for field of order {1}")]
    BadCode(u32, u32),
}

/// A field element, identified by its code in the owning [`FieldSpec`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "0")
        } else {
            write!(f, "b^{}", self.0 - 1)
        }
    }
}

/// GF(p^e) with precomputed exp/log and Zech tables.
///
/// Immutable after construction; all operations are pure, so a spec can be
/// shared freely across threads.
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    poly: Vec<u32>,
    /// exp_packed[k] = coefficient-vector key of β^k, k in [0, q-1).
    exp_packed: Vec<u32>,
    /// code_of_packed[key] = element code.
    code_of_packed: Vec<u32>,
    /// zech[d] = z with 1 + β^d = β^z, or ZECH_MINUS_ONE when 1 + β^d = 0.
    zech: Vec<u32>,
    /// Exponent of -1 (0 in characteristic 2).
    minus_one_exp: u32,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("poly", &self.poly)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime power decomposition: returns `(p, e)` when `n = p^e`.
pub fn prime_power(n: u64) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let mut m = n;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((n as u32, 1));
    }
    let mut e = 0u32;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    if m == 1 {
        Some((p as u32, e))
    } else {
        None
    }
}

impl FieldSpec {
    /// Builds GF(p^e).
    ///
    /// For prime fields the defining polynomial is `x - g` with `g` the
    /// smallest primitive root mod p. For extensions it is the smallest
    /// monic irreducible polynomial (coefficients compared low-degree
    /// first) whose variable class is primitive. Both choices are
    /// deterministic, so element codes are reproducible across runs.
    pub fn new(p: u32, e: u32) -> Result<FieldSpec, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(GfError::ZeroDegree);
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q *= p as u64;
            if q > MAX_FIELD_ORDER {
                return Err(GfError::TooLarge(q));
            }
        }

        let poly = if e == 1 {
            let g = smallest_primitive_root(p);
            vec![(p - g) % p, 1]
        } else {
            find_primitive_polynomial(p, e)?
        };
        Ok(Self::from_polynomial(p, e, poly))
    }

    /// Builds the field from an explicit defining polynomial. The variable
    /// class must be primitive; panics otherwise (the deterministic search
    /// in [`FieldSpec::new`] guarantees it).
    pub(crate) fn from_polynomial(p: u32, e: u32, poly: Vec<u32>) -> FieldSpec {
        let q = (p as u64).pow(e) as u32;
        let walk = primitive_walk(p, e, &poly).expect("variable class must be primitive");
        let mut code_of_packed = vec![0u32; q as usize];
        for (k, &packed) in walk.iter().enumerate() {
            code_of_packed[packed as usize] = k as u32 + 1;
        }
        // Zech table: key of 1 + β^d via coefficient addition on the packed
        // low digit only touches c0, but β^d is a full vector, so add in
        // digit form.
        let m = q - 1;
        let mut zech = vec![0u32; m as usize];
        for d in 0..m {
            let key = packed_add_one(p, e, walk[d as usize]);
            if key == 0 {
                zech[d as usize] = ZECH_MINUS_ONE;
            } else {
                zech[d as usize] = code_of_packed[key as usize] - 1;
            }
        }
        let minus_one_exp = if p == 2 { 0 } else { m / 2 };
        FieldSpec {
            p,
            e,
            q,
            poly,
            exp_packed: walk,
            code_of_packed,
            zech,
            minus_one_exp,
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Multiplicative group order, q - 1.
    #[inline]
    pub fn group_order(&self) -> u32 {
        self.q - 1
    }

    /// Defining polynomial, coefficients ascending, monic.
    pub fn polynomial(&self) -> &[u32] {
        &self.poly
    }

    /// The fixed primitive element β (class of the variable for e > 1).
    #[inline]
    pub fn beta(&self) -> Fe {
        self.exp(1)
    }

    /// β^k (exponent reduced mod q-1).
    #[inline]
    pub fn exp(&self, k: u64) -> Fe {
        Fe((k % self.group_order() as u64) as u32 + 1)
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn dlog(&self, a: Fe) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(a.0 - 1)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn check_code(&self, a: Fe) -> Result<(), GfError> {
        if a.0 < self.q {
            Ok(())
        } else {
            Err(GfError::BadCode(a.0, self.q))
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let m = self.q - 1;
        let i = a.0 - 1;
        let j = b.0 - 1;
        // a + b = β^i (1 + β^(j-i))
        let d = if j >= i { j - i } else { j + m - i };
        let z = self.zech[d as usize];
        if z == ZECH_MINUS_ONE {
            Fe::ZERO
        } else {
            let mut k = i + z;
            if k >= m {
                k -= m;
            }
            Fe(k + 1)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        let m = self.q - 1;
        let mut k = a.0 - 1 + self.minus_one_exp;
        if k >= m {
            k -= m;
        }
        Fe(k + 1)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let m = self.q - 1;
        let mut k = a.0 - 1 + b.0 - 1;
        if k >= m {
            k -= m;
        }
        Fe(k + 1)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        let m = self.q - 1;
        Ok(Fe((m - (a.0 - 1)) % m + 1))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^k with integer exponent; 0^0 = 1, 0^k = 0 for k > 0, and negative
    /// exponents of zero are an error.
    pub fn pow(&self, a: Fe, k: i64) -> Result<Fe, GfError> {
        if a.is_zero() {
            return match k.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(Fe::ZERO),
                std::cmp::Ordering::Equal => Ok(Fe::ONE),
                std::cmp::Ordering::Less => Err(GfError::ZeroInverse),
            };
        }
        let m = self.group_order() as i64;
        let k = ((a.0 - 1) as i64 * (k % m)).rem_euclid(m);
        Ok(Fe(k as u32 + 1))
    }

    /// Frobenius power a^(p^i), 0 <= i < e.
    pub fn frobenius(&self, a: Fe, i: u32) -> Fe {
        debug_assert!(i < self.e);
        if a.is_zero() {
            return a;
        }
        let m = self.group_order() as u64;
        let k = (a.0 - 1) as u64 * (self.p as u64).pow(i) % m;
        Fe(k as u32 + 1)
    }

    /// The residue i mod d where a = β^i; requires a != 0 and d | (q-1).
    /// `power_class(a, 2) == 0` exactly when a is a nonzero square.
    pub fn power_class(&self, a: Fe, d: u32) -> Result<u32, GfError> {
        if a.is_zero() {
            return Err(GfError::ZeroClass);
        }
        if d == 0 || self.group_order() % d != 0 {
            return Err(GfError::BadClassModulus(d as u64, self.group_order() as u64));
        }
        Ok((a.0 - 1) % d)
    }

    pub fn is_square(&self, a: Fe) -> bool {
        a.is_zero() || (a.0 - 1) % 2 == 0
    }

    /// Order of the index-2 subfield, p^(e/2). Requires even degree.
    pub fn subfield_order(&self) -> Result<u32, GfError> {
        if self.e % 2 != 0 {
            return Err(GfError::OddDegree(self.e));
        }
        Ok((self.p as u64).pow(self.e / 2) as u32)
    }

    /// Norm to the index-2 subfield: a^(r+1) where r = p^(e/2). The result
    /// always lies in the subfield (exponent divisible by r+1, or zero).
    pub fn norm_to_subfield(&self, a: Fe) -> Result<Fe, GfError> {
        let r = self.subfield_order()?;
        let n = self.pow(a, r as i64 + 1)?;
        debug_assert!(self.in_subfield(n));
        Ok(n)
    }

    /// Membership in the index-2 subfield {0} ∪ <β^(r+1)>.
    pub fn in_subfield(&self, a: Fe) -> bool {
        if a.is_zero() {
            return true;
        }
        match self.subfield_order() {
            Ok(r) => (a.0 - 1) % (r + 1) == 0,
            Err(_) => false,
        }
    }

    /// All elements of the index-2 subfield, ascending by code.
    pub fn subfield_elements(&self) -> Result<Vec<Fe>, GfError> {
        let r = self.subfield_order()?;
        let mut out = Vec::with_capacity(r as usize);
        out.push(Fe::ZERO);
        for k in 0..r - 1 {
            out.push(self.exp((r as u64 + 1) * k as u64));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Coefficient vector (ascending) of an element.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let packed = if a.is_zero() {
            0
        } else {
            self.exp_packed[(a.0 - 1) as usize]
        };
        unpack(self.p, self.e, packed)
    }

    /// Element with the given coefficient vector.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fe {
        let mut key: u64 = 0;
        for (j, &c) in coeffs.iter().enumerate().take(self.e as usize) {
            key += (c % self.p) as u64 * (self.p as u64).pow(j as u32);
        }
        if key == 0 {
            Fe::ZERO
        } else {
            Fe(self.code_of_packed[key as usize])
        }
    }
}

/// Multiplicative embedding of GF(r) into GF(r^2): zero to zero, and the
/// generator of GF(r)* to β^(r+1). The image is exactly the index-2
/// subfield, and closure of the image under addition and multiplication is
/// checked at construction.
pub struct SubfieldEmbedding {
    map: Vec<Fe>,
    inverse: Vec<Option<Fe>>,
}

impl SubfieldEmbedding {
    pub fn new(sub: &FieldSpec, sup: &FieldSpec) -> Result<SubfieldEmbedding, GfError> {
        if sup.q() as u64 != (sub.q() as u64) * (sub.q() as u64) {
            return Err(GfError::NotSubfieldPair(sup.q() as u64, sub.q() as u64));
        }
        let r = sub.q();
        let mut map = vec![Fe::ZERO; r as usize];
        for k in 0..r - 1 {
            map[sub.exp(k as u64).0 as usize] = sup.exp((r as u64 + 1) * k as u64);
        }
        let mut inverse = vec![None; sup.q() as usize];
        for (code, &img) in map.iter().enumerate() {
            inverse[img.0 as usize] = Some(Fe(code as u32));
        }
        let emb = SubfieldEmbedding { map, inverse };
        // Image closure under field operations.
        let img: Vec<Fe> = emb.map.clone();
        for &x in &img {
            for &y in &img {
                if emb.inverse[sup.add(x, y).0 as usize].is_none()
                    || emb.inverse[sup.mul(x, y).0 as usize].is_none()
                {
                    return Err(GfError::NotSubfieldPair(sup.q() as u64, sub.q() as u64));
                }
            }
        }
        Ok(emb)
    }

    pub fn embed(&self, a: Fe) -> Fe {
        self.map[a.0 as usize]
    }

    /// Partial inverse: defined exactly on the subfield image.
    pub fn retract(&self, b: Fe) -> Option<Fe> {
        self.inverse[b.0 as usize]
    }

    pub fn image(&self) -> Vec<Fe> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img
    }
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    'outer: for g in 2..p {
        let mut x = g as u64;
        let mut ord = 1u32;
        while x != 1 {
            x = x * g as u64 % p as u64;
            ord += 1;
            if ord > p - 1 {
                continue 'outer;
            }
        }
        if ord == p - 1 {
            return g;
        }
    }
    unreachable!("prime fields always have a primitive root")
}

/// Walks β^0, β^1, ... by repeated multiplication with the variable class,
/// returning the packed keys of the full period when the class is primitive.
fn primitive_walk(p: u32, e: u32, poly: &[u32]) -> Option<Vec<u32>> {
    let q = (p as u64).pow(e);
    let m = (q - 1) as usize;
    let mut walk = Vec::with_capacity(m);
    let mut cur = vec![0u32; e as usize];
    cur[0] = 1;
    walk.push(pack(p, &cur));
    for _ in 1..m {
        mul_by_x(p, e, poly, &mut cur);
        let key = pack(p, &cur);
        if key == 1 {
            return None; // returned to 1 early: not primitive
        }
        walk.push(key);
    }
    mul_by_x(p, e, poly, &mut cur);
    if pack(p, &cur) == 1 {
        Some(walk)
    } else {
        None
    }
}

fn mul_by_x(p: u32, e: u32, poly: &[u32], cur: &mut Vec<u32>) {
    let top = cur[e as usize - 1];
    for j in (1..e as usize).rev() {
        cur[j] = cur[j - 1];
    }
    cur[0] = 0;
    if top != 0 {
        for j in 0..e as usize {
            let sub = top as u64 * poly[j] as u64 % p as u64;
            cur[j] = ((cur[j] as u64 + p as u64 - sub) % p as u64) as u32;
        }
    }
}

fn pack(p: u32, coeffs: &[u32]) -> u32 {
    let mut key: u64 = 0;
    for &c in coeffs.iter().rev() {
        key = key * p as u64 + c as u64;
    }
    key as u32
}

fn unpack(p: u32, e: u32, mut key: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(key % p);
        key /= p;
    }
    out
}

/// Packed key of 1 + element(key).
fn packed_add_one(p: u32, e: u32, key: u32) -> u32 {
    let mut coeffs = unpack(p, e, key);
    coeffs[0] = (coeffs[0] + 1) % p;
    pack(p, &coeffs)
}

/// Smallest monic irreducible polynomial of degree e over GF(p), coefficients
/// compared low-degree first, whose variable class is primitive.
fn find_primitive_polynomial(p: u32, e: u32) -> Result<Vec<u32>, GfError> {
    let total = (p as u64).pow(e);
    for key in 0..total {
        let mut poly = unpack(p, e, key as u32);
        poly.push(1); // monic
        if poly[0] == 0 {
            continue; // divisible by x
        }
        if !poly_is_irreducible(p, &poly) {
            continue;
        }
        if primitive_walk(p, e, &poly).is_some() {
            return Ok(poly);
        }
    }
    Err(GfError::NoPrimitivePolynomial { p, e })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_uses_smallest_primitive_root() {
        let f = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f.polynomial(), &[1, 1]); // x + 1 = x - 2
        assert_eq!(f.coeffs(f.beta()), vec![2]);
    }

    #[test]
    fn gf5_primitive_element_is_two() {
        // brute-force oracle: order of 2, 3, 4 mod 5
        let order = |g: u32| {
            let mut x = g;
            let mut ord = 1;
            while x != 1 {
                x = x * g % 5;
                ord += 1;
            }
            ord
        };
        assert_eq!(order(2), 4);
        let smallest = (2..5).find(|&g| order(g) == 4).unwrap();
        assert_eq!(smallest, 2);

        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.coeffs(f.beta()), vec![2]);
    }

    #[test]
    fn gf9_polynomial_is_lex_smallest_primitive() {
        // oracle: enumerate all 9 monic quadratics over GF(3), keep those
        // irreducible with a variable class of order 8
        let mut found = None;
        'outer: for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                let poly = vec![c0, c1, 1];
                if poly_is_irreducible(3, &poly) && primitive_walk(3, 2, &poly).is_some() {
                    found = Some(poly);
                    break 'outer;
                }
            }
        }
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.polynomial(), found.unwrap().as_slice());
        assert_eq!(f.q(), 9);
    }

    #[test]
    fn additive_identity_and_inverse_pairs() {
        let f = FieldSpec::new(3, 2).unwrap();
        for x in f.elements() {
            assert_eq!(f.add(x, Fe::ZERO), x);
            assert_eq!(f.add(x, f.neg(x)), Fe::ZERO);
        }
        let q = f.q() as i64;
        assert_eq!(f.mul(f.beta(), f.pow(f.beta(), q - 2).unwrap()), Fe::ONE);
    }

    #[test]
    fn gf9_exponent_arithmetic() {
        let f = FieldSpec::new(3, 2).unwrap();
        let b3 = f.exp(3);
        let b7 = f.exp(7);
        assert_eq!(f.mul(b3, b7), f.exp(2)); // β^10 = β^2
    }

    #[test]
    fn frobenius_basics() {
        let f = FieldSpec::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 0), a);
            // composing e times is the identity
            let mut x = a;
            for _ in 0..f.e() {
                x = f.frobenius(x, 1);
            }
            assert_eq!(x, a);
        }
        assert_eq!(f.frobenius(f.beta(), 1), f.exp(3));
    }

    #[test]
    fn norm_to_gf3() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.norm_to_subfield(Fe::ZERO).unwrap(), Fe::ZERO);
        assert_eq!(f.norm_to_subfield(Fe::ONE).unwrap(), Fe::ONE);
        // norm(β) = β^4, the nonidentity element of GF(3)* (that is, 2 = -1)
        let n = f.norm_to_subfield(f.beta()).unwrap();
        assert_eq!(n, f.exp(4));
        assert_eq!(n, f.neg(Fe::ONE));
    }

    #[test]
    fn squares_in_gf5() {
        let f = FieldSpec::new(5, 1).unwrap();
        // oracle: brute-force squaring of all elements
        let mut squares: Vec<Fe> = f.elements().map(|x| f.mul(x, x)).collect();
        squares.sort_unstable();
        squares.dedup();
        let by_class: Vec<Fe> = f
            .elements()
            .filter(|&x| x.is_zero() || f.power_class(x, 2).unwrap() == 0)
            .collect();
        assert_eq!(squares, by_class);
        let as_residues: Vec<u32> = squares
            .iter()
            .filter(|x| !x.is_zero())
            .map(|&x| f.coeffs(x)[0])
            .collect();
        let mut sorted = as_residues.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 4]);
    }

    #[test]
    fn minus_one_is_square_in_gf9() {
        let f = FieldSpec::new(3, 2).unwrap();
        let minus_one = f.neg(Fe::ONE);
        assert_eq!(minus_one, f.exp(4));
        assert_eq!(f.power_class(minus_one, 2).unwrap(), 0);
    }

    #[test]
    fn power_class_errors() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.power_class(Fe::ZERO, 2), Err(GfError::ZeroClass));
        assert!(matches!(
            f.power_class(Fe::ONE, 3),
            Err(GfError::BadClassModulus(3, 4))
        ));
        assert_eq!(f.power_class(Fe::ONE, 2).unwrap(), 0);
    }

    #[test]
    fn inv_zero_is_error() {
        let f = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f.inv(Fe::ZERO), Err(GfError::ZeroInverse));
        assert_eq!(f.pow(Fe::ZERO, -1), Err(GfError::ZeroInverse));
        assert_eq!(f.pow(Fe::ZERO, 0).unwrap(), Fe::ONE);
    }

    #[test]
    fn make_field_rejects_bad_input() {
        assert_eq!(FieldSpec::new(4, 1).err(), Some(GfError::NotPrime(4)));
        assert_eq!(FieldSpec::new(2, 0).err(), Some(GfError::ZeroDegree));
        assert_eq!(
            FieldSpec::new(2, 21).err(),
            Some(GfError::TooLarge(1 << 21))
        );
    }

    #[test]
    fn subfield_embedding_gf3_in_gf9() {
        let sub = FieldSpec::new(3, 1).unwrap();
        let sup = FieldSpec::new(3, 2).unwrap();
        let emb = SubfieldEmbedding::new(&sub, &sup).unwrap();
        let img = emb.image();
        assert_eq!(img.len(), 3);
        assert!(img.contains(&Fe::ZERO));
        assert!(img.contains(&Fe::ONE));
        // exhaustive closure under addition
        for &x in &img {
            for &y in &img {
                assert!(img.contains(&sup.add(x, y)));
            }
        }
    }

    #[test]
    fn embedding_commutes_with_norm() {
        for (p, e) in [(3u32, 1u32), (5, 1)] {
            let sub = FieldSpec::new(p, e).unwrap();
            let sup = FieldSpec::new(p, 2 * e).unwrap();
            let emb = SubfieldEmbedding::new(&sub, &sup).unwrap();
            for a in sub.elements() {
                let lhs = sup.norm_to_subfield(emb.embed(a)).unwrap();
                let rhs = emb.embed(sub.mul(a, a));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn beta_has_full_order() {
        for (p, e) in [(2u32, 4u32), (3, 3), (5, 2), (7, 2), (13, 1)] {
            let f = FieldSpec::new(p, e).unwrap();
            let m = f.group_order();
            let mut x = f.beta();
            for _ in 1..m {
                assert_ne!(x, Fe::ONE);
                x = f.mul(x, f.beta());
            }
            assert_eq!(x, Fe::ONE);
        }
    }

    #[test]
    fn power_class_is_additive() {
        let f = FieldSpec::new(3, 2).unwrap();
        for d in [2u32, 4, 8] {
            for a in f.elements().filter(|a| !a.is_zero()) {
                for b in f.elements().filter(|b| !b.is_zero()) {
                    let lhs = f.power_class(f.mul(a, b), d).unwrap();
                    let rhs =
                        (f.power_class(a, d).unwrap() + f.power_class(b, d).unwrap()) % d;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        // associativity and distributivity on all triples for q <= 3^4
        for (p, e) in [(2u32, 2u32), (2, 3), (3, 2), (3, 4), (5, 1), (7, 1)] {
            let f = FieldSpec::new(p, e).unwrap();
            let elems: Vec<Fe> = f.elements().collect();
            for &a in &elems {
                for &b in &elems {
                    for &c in &elems {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }
}
