//! Arithmetic in F_q for prime q and for q = 2^m with m <= 8.
//!
//! Elements are stored as one byte each, holding an integer in `[0, q)`. For
//! binary-extension fields the byte is the coefficient vector of a polynomial
//! over F_2 of degree below m. Multiplication and inversion go through log/exp
//! tables built once per field; the shift-and-reduce and exponentiation paths
//! are kept as the reference implementations.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// AES polynomial x^8 + x^4 + x^3 + x + 1.
pub const GF256_POLY: u16 = 0x11B;

/// How the field is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    BinaryExtension,
}

struct Tables {
    exp: Vec<u8>,
    log: Vec<u16>,
}

/// A finite field F_q with q <= 256.
///
/// Two `Field` values compare equal when they describe the same field
/// (same cardinality, kind and modulus); the lookup tables are shared.
#[derive(Clone)]
pub struct Field {
    q: u16,
    kind: FieldKind,
    modulus: u16,
    tables: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.kind == other.kind && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime => write!(f, "F_{}", self.q),
            FieldKind::BinaryExtension => write!(f, "F_{}[{:#x}]", self.q, self.modulus),
        }
    }
}

fn is_prime(p: u16) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn poly_degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

fn poly_mod(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Irreducibility over F_2 by trial division with every polynomial of
/// degree 1..=deg/2.
fn is_irreducible_f2(poly: u32) -> bool {
    let deg = poly_degree(poly);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for divisor in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_mod(poly, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u16) -> Result<Self> {
        if !(2..=256).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime in [2, 256]")));
        }
        Ok(Self::build(p, FieldKind::Prime, p))
    }

    /// F_{2^m} with the given reduction polynomial, written as a bitmask
    /// including the leading x^m term.
    pub fn binary_extension(m: u32, poly: u16) -> Result<Self> {
        if !(1..=8).contains(&m) {
            return Err(Error::InvalidField(format!("extension degree {m} not in 1..=8")));
        }
        if poly_degree(poly as u32) != m {
            return Err(Error::InvalidField(format!("polynomial {poly:#x} does not have degree {m}")));
        }
        if !is_irreducible_f2(poly as u32) {
            return Err(Error::InvalidField(format!("polynomial {poly:#x} is reducible over F_2")));
        }
        Ok(Self::build(1 << m, FieldKind::BinaryExtension, poly))
    }

    /// F_256 with [`GF256_POLY`].
    pub fn gf256() -> Self {
        Self::binary_extension(8, GF256_POLY).expect("AES polynomial is irreducible")
    }

    /// Picks the default field of cardinality `q`: the prime field when q is
    /// prime (this includes q = 2), otherwise F_{2^m} with a fixed irreducible
    /// polynomial.
    pub fn with_order(q: u16) -> Result<Self> {
        if is_prime(q) {
            return Self::prime(q);
        }
        let poly = match q {
            4 => 0x7,
            8 => 0xB,
            16 => 0x13,
            32 => 0x25,
            64 => 0x43,
            128 => 0x83,
            256 => GF256_POLY,
            _ => return Err(Error::InvalidField(format!("q = {q} is neither prime nor 2^m with m <= 8"))),
        };
        Self::binary_extension(q.trailing_zeros(), poly)
    }

    /// Rebuilds a field from its wire description (q, modulus).
    pub fn from_parts(q: u16, modulus: u16) -> Result<Self> {
        if is_prime(q) && modulus == q {
            Self::prime(q)
        } else if q.is_power_of_two() && q >= 4 {
            Self::binary_extension(q.trailing_zeros(), modulus)
        } else {
            Err(Error::InvalidField(format!("q = {q} with modulus {modulus:#x}")))
        }
    }

    fn build(q: u16, kind: FieldKind, modulus: u16) -> Self {
        let mut field = Field {
            q,
            kind,
            modulus,
            tables: Arc::new(Tables { exp: Vec::new(), log: Vec::new() }),
        };
        let order = (q - 1) as usize;
        let generator = (1..q)
            .map(|g| g as u8)
            .find(|&g| {
                let mut x = 1u8;
                for i in 1..=order {
                    x = field.mul_reference(x, g);
                    if x == 1 {
                        return i == order;
                    }
                }
                false
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u8; 2 * order];
        let mut log = vec![0u16; q as usize];
        let mut x = 1u8;
        for i in 0..order {
            exp[i] = x;
            exp[i + order] = x;
            log[x as usize] = i as u16;
            x = field.mul_reference(x, generator);
        }
        field.tables = Arc::new(Tables { exp, log });
        field
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// The prime itself, or the reduction polynomial bitmask.
    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    /// N = ceil(log2 q), the bit width used in cost formulas.
    pub fn bits(&self) -> u32 {
        u16::BITS - (self.q - 1).leading_zeros()
    }

    pub fn contains(&self, a: u8) -> bool {
        (a as u16) < self.q
    }

    /// Validates a raw integer as an element of this field.
    pub fn element(&self, value: u16) -> Result<u8> {
        if value < self.q {
            Ok(value as u8)
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        match self.kind {
            FieldKind::Prime => ((a as u16 + b as u16) % self.q) as u8,
            FieldKind::BinaryExtension => a ^ b,
        }
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        match self.kind {
            FieldKind::Prime if a != 0 => (self.q - a as u16) as u8,
            _ => a,
        }
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.tables;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Modular product for prime fields, carry-less multiply followed by
    /// polynomial reduction for extension fields.
    pub fn mul_reference(&self, a: u8, b: u8) -> u8 {
        match self.kind {
            FieldKind::Prime => ((a as u32 * b as u32) % self.q as u32) as u8,
            FieldKind::BinaryExtension => {
                let mut product = 0u32;
                for i in 0..8 {
                    if (b >> i) & 1 == 1 {
                        product ^= (a as u32) << i;
                    }
                }
                poly_mod(product, self.modulus as u32) as u8
            }
        }
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let order = self.q - 1;
        let t = &self.tables;
        Ok(t.exp[((order - t.log[a as usize]) % order) as usize])
    }

    /// a^(q-2) by square-and-multiply on [`Field::mul_reference`].
    pub fn inv_reference(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow_reference(a, (self.q - 2) as u32))
    }

    pub fn pow_reference(&self, a: u8, mut e: u32) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_reference(acc, base);
            }
            base = self.mul_reference(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn div(&self, a: u8, b: u8) -> Result<u8> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|v| v as u8)
    }
}
