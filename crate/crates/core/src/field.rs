//! Arithmetic in the small finite fields GF(2), GF(3), GF(4), GF(5) and GF(7).
//!
//! Elements are encoded as integers in `0..q`. For GF(4) the encoding is
//! `0, 1, ω, ω+1` with `ω² = ω + 1`, so addition is XOR on the encoding.
//! All arithmetic goes through precomputed lookup tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element, interpreted under some [`Field`].
pub type Elem = u8;

const MAX_Q: usize = 7;

struct Tables {
    add: [[u8; MAX_Q]; MAX_Q],
    mul: [[u8; MAX_Q]; MAX_Q],
    neg: [u8; MAX_Q],
    inv: [u8; MAX_Q],
    sqrt: [u8; MAX_Q],
}

const fn prime_tables(p: usize) -> Tables {
    let mut t = Tables {
        add: [[0; MAX_Q]; MAX_Q],
        mul: [[0; MAX_Q]; MAX_Q],
        neg: [0; MAX_Q],
        inv: [0; MAX_Q],
        sqrt: [0; MAX_Q],
    };
    let mut a = 0;
    while a < p {
        let mut b = 0;
        while b < p {
            t.add[a][b] = ((a + b) % p) as u8;
            t.mul[a][b] = ((a * b) % p) as u8;
            if (a * b) % p == 1 {
                t.inv[a] = b as u8;
            }
            if (b * b) % p == a {
                t.sqrt[a] = b as u8;
            }
            b += 1;
        }
        t.neg[a] = ((p - a) % p) as u8;
        a += 1;
    }
    t
}

const fn gf4_tables() -> Tables {
    // Polynomial basis {1, ω}: bit 0 is the constant term, bit 1 the ω term.
    const fn mul4(a: usize, b: usize) -> usize {
        let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
        // (a0 + a1 ω)(b0 + b1 ω) = a0b0 + (a0b1 + a1b0) ω + a1b1 (ω + 1)
        let c0 = (a0 & b0) ^ (a1 & b1);
        let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        c0 | (c1 << 1)
    }
    let mut t = Tables {
        add: [[0; MAX_Q]; MAX_Q],
        mul: [[0; MAX_Q]; MAX_Q],
        neg: [0; MAX_Q],
        inv: [0; MAX_Q],
        sqrt: [0; MAX_Q],
    };
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            t.add[a][b] = (a ^ b) as u8;
            let m = mul4(a, b);
            t.mul[a][b] = m as u8;
            if m == 1 {
                t.inv[a] = b as u8;
            }
            if mul4(b, b) == a {
                t.sqrt[a] = b as u8;
            }
            b += 1;
        }
        t.neg[a] = a as u8;
        a += 1;
    }
    t
}

static TABLES: [Tables; 5] = [
    prime_tables(2),
    prime_tables(3),
    gf4_tables(),
    prime_tables(5),
    prime_tables(7),
];

/// The arithmetic context of one supported finite field.
///
/// Cheap to copy; all tables are static.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Field {
    q: u8,
    p: u8,
    k: u8,
    slot: u8,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl TryFrom<u8> for Field {
    type Error = Error;
    fn try_from(q: u8) -> Result<Self> {
        Field::new(q as u32)
    }
}

impl From<Field> for u8 {
    fn from(f: Field) -> u8 {
        f.q
    }
}

/// Binary and unary field operations, for table-driven callers such as the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

impl Field {
    /// Cardinalities with built-in tables.
    pub const SUPPORTED: [u32; 5] = [2, 3, 4, 5, 7];

    pub fn new(q: u32) -> Result<Self> {
        let (p, k, slot) = match q {
            2 => (2, 1, 0),
            3 => (3, 1, 1),
            4 => (2, 2, 2),
            5 => (5, 1, 3),
            7 => (7, 1, 4),
            _ => return Err(Error::UnsupportedCardinality(q)),
        };
        Ok(Field { q: q as u8, p, k, slot })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q as u32
    }

    /// The characteristic.
    #[inline]
    pub fn p(self) -> u32 {
        self.p as u32
    }

    /// Degree over the prime field.
    #[inline]
    pub fn k(self) -> u32 {
        self.k as u32
    }

    #[inline]
    pub fn is_char2(self) -> bool {
        self.p == 2
    }

    #[inline]
    fn tables(self) -> &'static Tables {
        &TABLES[self.slot as usize]
    }

    /// All elements in encoding order.
    pub fn elements(self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    #[inline]
    pub fn add(self, a: Elem, b: Elem) -> Elem {
        self.tables().add[a as usize][b as usize]
    }

    #[inline]
    pub fn sub(self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: Elem, b: Elem) -> Elem {
        self.tables().mul[a as usize][b as usize]
    }

    #[inline]
    pub fn neg(self, a: Elem) -> Elem {
        self.tables().neg[a as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(self, a: Elem) -> Elem {
        debug_assert!(a != 0, "inverse of zero");
        self.tables().inv[a as usize]
    }

    pub fn try_inv(self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv(a))
        }
    }

    /// The unique square root in characteristic 2 (Frobenius is bijective on a
    /// finite field). In odd characteristic returns `None` for non-squares and
    /// one of the two roots otherwise.
    pub fn sqrt(self, a: Elem) -> Option<Elem> {
        let r = self.tables().sqrt[a as usize];
        if self.mul(r, r) == a {
            Some(r)
        } else {
            None
        }
    }

    /// `a + b·c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(a, self.mul(b, c))
    }

    pub fn is_valid(self, a: u32) -> bool {
        a < self.q as u32
    }

    /// Table-driven dispatch of one operation. `b` is ignored for unary ops.
    pub fn arith(self, op: ArithOp, a: Elem, b: Option<Elem>) -> Result<Elem> {
        for &x in std::iter::once(&a).chain(b.iter()) {
            if !self.is_valid(x as u32) {
                return Err(Error::InvalidElement { value: x as u32, q: self.q() });
            }
        }
        let rhs = || b.ok_or_else(|| Error::InvalidParams("binary op needs two operands".into()));
        Ok(match op {
            ArithOp::Add => self.add(a, rhs()?),
            ArithOp::Mul => self.mul(a, rhs()?),
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.try_inv(a)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<Field> {
        Field::SUPPORTED.iter().map(|&q| Field::new(q).unwrap()).collect()
    }

    #[test]
    fn make_reports_characteristic() {
        let f4 = Field::new(4).unwrap();
        assert_eq!((f4.q(), f4.p(), f4.k()), (4, 2, 2));
        let f3 = Field::new(3).unwrap();
        assert_eq!((f3.q(), f3.p(), f3.k()), (3, 3, 1));
        assert!(matches!(Field::new(6), Err(Error::UnsupportedCardinality(6))));
        assert!(Field::new(8).is_err());
    }

    #[test]
    fn worked_values() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        let f4 = Field::new(4).unwrap();
        // ω·(ω+1) = ω² + ω = 1
        assert_eq!(f4.mul(2, 3), 1);
        assert_eq!(f4.mul(2, 2), 3);
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.inv(2), 3);
        assert!(matches!(f5.try_inv(0), Err(Error::DivisionByZero)));
        assert!(matches!(f5.arith(ArithOp::Inv, 0, None), Err(Error::DivisionByZero)));
        assert_eq!(f5.arith(ArithOp::Add, 4, Some(3)).unwrap(), 2);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "{f:?} inverse of {a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0, "{f:?} has zero divisors");
                    }
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn char2_square_root_is_bijective() {
        for q in [2, 4] {
            let f = Field::new(q).unwrap();
            let mut seen = vec![0usize; q as usize];
            for y in f.elements() {
                seen[f.mul(y, y) as usize] += 1;
            }
            assert!(seen.iter().all(|&c| c == 1));
            for x in f.elements() {
                let r = f.sqrt(x).unwrap();
                assert_eq!(f.mul(r, r), x);
            }
        }
    }

    #[test]
    fn odd_char_square_roots() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.sqrt(2), None);
        assert_eq!(f.sqrt(1).map(|r| f.mul(r, r)), Some(1));
    }
}
