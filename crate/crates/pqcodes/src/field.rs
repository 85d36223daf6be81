//! Finite fields GF(p^m) as precomputed operation tables.
//!
//! Elements are dense integer codes `0..q`: the code of a residue is itself
//! for prime fields, and for extension fields the code is the base-p digit
//! string of the polynomial coefficients, low degree first.  Code 0 is the
//! additive identity and code 1 the multiplicative identity in every field.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.  Everything downstream assumes element
/// codes fit in a `u8` and that full q^3 scans are cheap.
pub const MAX_FIELD_ORDER: u8 = 9;

/// Shared handle to an immutable field table.
pub type Field = Arc<FieldSpec>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree {0} is not supported (need 1 <= m)")]
    BadExtensionDegree(u8),
    #[error("modulus {0:?} is reducible over GF({1})")]
    ReducibleModulus(Vec<u8>, u8),
    #[error("modulus {0:?} is not monic of degree {1} with coefficients below the characteristic")]
    MalformedModulus(Vec<u8>, u8),
    #[error("field order {q} exceeds the supported cap {cap}")]
    FieldTooLarge { q: u64, cap: u8 },
    #[error("division by zero")]
    DivisionByZero,
}

/// A fully tabulated finite field GF(p^m) with q = p^m elements.
///
/// Invariants (checked exhaustively at construction): both operations are
/// commutative and associative, multiplication distributes over addition,
/// 0 and 1 are the identities, and every element has a negative and (if
/// nonzero) an inverse.
pub struct FieldSpec {
    p: u8,
    m: u8,
    q: u8,
    /// Irreducible modulus for m > 1, low degree first, length m + 1, monic.
    /// `None` exactly when m == 1.
    modulus: Option<Vec<u8>>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FieldSpec {
    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    /// Field order q = p^m.
    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u8]> {
        self.modulus.as_deref()
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        debug_assert!(a < self.q && b < self.q);
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        debug_assert!(a < self.q && b < self.q);
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn div(&self, a: u8, b: u8) -> Result<u8, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn neg(&self, a: u8) -> u8 {
        debug_assert!(a < self.q);
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8, FieldError> {
        debug_assert!(a < self.q);
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, e: u32) -> u8 {
        let mut acc = 1;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// All element codes in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    /// Base-p digits of a code, low degree first, length m.
    pub fn digits(&self, code: u8) -> Vec<u8> {
        let mut c = code;
        (0..self.m)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u8]) -> u8 {
        digits
            .iter()
            .rev()
            .fold(0u8, |acc, &d| acc * self.p + d)
    }

    /// Convenience constructor from the field order alone, using the default
    /// modulus for extension fields.
    pub fn gf(q: u8) -> Result<Field, FieldError> {
        let (p, m) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            5 => (5, 1),
            7 => (7, 1),
            8 => (2, 3),
            9 => (3, 2),
            other => {
                if u64::from(other) > u64::from(MAX_FIELD_ORDER) {
                    return Err(FieldError::FieldTooLarge {
                        q: other.into(),
                        cap: MAX_FIELD_ORDER,
                    });
                }
                return Err(FieldError::NonPrimeCharacteristic(other.into()));
            }
        };
        make_field(p, m, None)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.m.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)?;
        if let Some(md) = &self.modulus {
            write!(f, " mod {:?}", md)?;
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Builds GF(p^m) and verifies every field axiom over all element triples.
///
/// For m > 1 a monic irreducible modulus of degree m is required; when
/// `modulus` is `None` a standard default is used.  Irreducibility is checked
/// by trial division over all monic divisors of degree at most m/2.
pub fn make_field(p: u8, m: u8, modulus: Option<Vec<u8>>) -> Result<Field, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrimeCharacteristic(p.into()));
    }
    if m == 0 {
        return Err(FieldError::BadExtensionDegree(m));
    }
    let q64 = (u64::from(p)).pow(m.into());
    if q64 > u64::from(MAX_FIELD_ORDER) {
        return Err(FieldError::FieldTooLarge {
            q: q64,
            cap: MAX_FIELD_ORDER,
        });
    }
    let q = q64 as u8;

    let modulus = match (m, modulus) {
        (1, None) => None,
        (1, Some(md)) => return Err(FieldError::MalformedModulus(md, m)),
        (_, given) => {
            let md = match given {
                Some(md) => md,
                None => default_modulus(p, m),
            };
            if md.len() != m as usize + 1
                || md[m as usize] != 1
                || md.iter().any(|&c| c >= p)
            {
                return Err(FieldError::MalformedModulus(md, m));
            }
            if !is_irreducible(&md, p) {
                return Err(FieldError::ReducibleModulus(md, p));
            }
            Some(md)
        }
    };

    let qs = q as usize;
    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    let mut neg = vec![0u8; qs];
    let mut inv = vec![0u8; qs];

    for a in 0..q {
        let da = code_digits(a, p, m);
        neg[a as usize] = digits_code(&da.iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p);
        for b in 0..q {
            let db = code_digits(b, p, m);
            let sum: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
            add[a as usize * qs + b as usize] = digits_code(&sum, p);
            let prod = match &modulus {
                None => vec![(u16::from(a) * u16::from(b) % u16::from(p)) as u8],
                Some(md) => poly_rem(&poly_mul(&da, &db, p), md, p),
            };
            let mut padded = prod;
            padded.resize(m as usize, 0);
            mul[a as usize * qs + b as usize] = digits_code(&padded, p);
        }
    }
    for a in 1..q {
        let b = (1..q)
            .find(|&b| mul[a as usize * qs + b as usize] == 1)
            .expect("every nonzero element of a field has an inverse");
        inv[a as usize] = b;
    }

    let spec = FieldSpec {
        p,
        m,
        q,
        modulus,
        add,
        mul,
        neg,
        inv,
    };
    verify_axioms(&spec);
    Ok(Arc::new(spec))
}

/// Exhaustive axiom scan; q <= 9 keeps this at most 729 triples per law.
fn verify_axioms(f: &FieldSpec) {
    for a in f.elements() {
        assert_eq!(f.add(a, 0), a, "0 must be the additive identity");
        assert_eq!(f.mul(a, 1), a, "1 must be the multiplicative identity");
        assert_eq!(f.add(a, f.neg(a)), 0, "a + (-a) must vanish");
        if a != 0 {
            let ai = f.inv(a).unwrap();
            assert_eq!(f.mul(a, ai), 1, "a * a^-1 must be 1");
        }
        for b in f.elements() {
            assert_eq!(f.add(a, b), f.add(b, a), "addition must be commutative");
            assert_eq!(f.mul(a, b), f.mul(b, a), "multiplication must be commutative");
            for c in f.elements() {
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(
                    f.mul(a, f.add(b, c)),
                    f.add(f.mul(a, b), f.mul(a, c)),
                    "multiplication must distribute over addition"
                );
            }
        }
    }
}

fn is_prime(p: u8) -> bool {
    p >= 2 && (2..p).all(|d| p % d != 0)
}

fn default_modulus(p: u8, m: u8) -> Vec<u8> {
    match (p, m) {
        // x^2 + x + 1
        (2, 2) => vec![1, 1, 1],
        // x^3 + x + 1
        (2, 3) => vec![1, 1, 0, 1],
        // x^2 + 1
        (3, 2) => vec![1, 0, 1],
        // Unreachable under the order cap; reported as malformed upstream.
        _ => vec![],
    }
}

fn code_digits(code: u8, p: u8, m: u8) -> Vec<u8> {
    let mut c = code;
    (0..m)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn digits_code(digits: &[u8], p: u8) -> u8 {
    digits.iter().rev().fold(0u8, |acc, &d| acc * p + d)
}

/* Polynomial arithmetic over GF(p), coefficients low degree first. */

fn poly_trim(mut a: Vec<u8>) -> Vec<u8> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u8], b: &[u8], p: u8) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((u16::from(out[i + j]) + u16::from(x) * u16::from(y))
                % u16::from(p)) as u8;
        }
    }
    poly_trim(out)
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn poly_rem(a: &[u8], b: &[u8], p: u8) -> Vec<u8> {
    let b = poly_trim(b.to_vec());
    debug_assert!(b.last() == Some(&1), "divisor must be monic");
    let mut r = poly_trim(a.to_vec());
    while r.len() >= b.len() {
        let lead = *r.last().unwrap();
        let shift = r.len() - b.len();
        for (i, &c) in b.iter().enumerate() {
            let sub = u16::from(lead) * u16::from(c) % u16::from(p);
            r[i + shift] = ((u16::from(r[i + shift]) + u16::from(p) - sub as u16)
                % u16::from(p)) as u8;
        }
        r = poly_trim(r);
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(modulus: &[u8], p: u8) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        // Monic degree-d polynomials, enumerated by their p^d low coefficients.
        for idx in 0..(u32::from(p)).pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = idx;
            for _ in 0..d {
                g.push((c % u32::from(p)) as u8);
                c /= u32::from(p);
            }
            g.push(1);
            if poly_rem(modulus, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}
