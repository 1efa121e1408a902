//! Arithmetic over binary extension fields `GF(2^w)`, `2 <= w <= 16`.
//!
//! [`FieldSpec`] is the serializable descriptor (width + reduction
//! polynomial, checked irreducible at construction). [`gf_mul`] is the
//! table-free shift-and-reduce reference path; [`Field`] adds log/exp
//! tables that must match the reference bit-exactly.

mod matrix;

pub use matrix::Matrix;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Element of `GF(2^w)`. The invariant `value < 2^w` is owed by the
/// constructor site; [`FieldSpec::element`] is the checked entry point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    /// Width outside the supported `2..=16` range.
    WidthOutOfRange { width: u8 },
    /// Reduction polynomial is not irreducible of the stated degree.
    ReduciblePolynomial { poly: u32 },
    /// Value does not fit in the field.
    ValueOutOfRange { value: u32, order: u32 },
    /// Division by zero or inverse of zero.
    ZeroInverse,
    /// Coefficient matrix is rank-deficient.
    SingularMatrix,
    /// Operand dimensions do not line up.
    DimensionMismatch,
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::WidthOutOfRange { width } => {
                write!(f, "field width {width} outside supported range 2..=16")
            }
            GfError::ReduciblePolynomial { poly } => {
                write!(f, "polynomial {poly:#x} is not irreducible of the stated degree")
            }
            GfError::ValueOutOfRange { value, order } => {
                write!(f, "value {value} not in [0, {order})")
            }
            GfError::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            GfError::SingularMatrix => write!(f, "singular matrix"),
            GfError::DimensionMismatch => write!(f, "matrix dimension mismatch"),
        }
    }
}

impl core::error::Error for GfError {}

/// Descriptor of `GF(2^w)`: bit width and the irreducible reduction
/// polynomial, encoded with the `x^w` term included (e.g. `0x13` is
/// `x^4 + x + 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    width: u8,
    poly: u32,
}

/// `x^16 + x^12 + x^3 + x + 1`, the customary erasure-coding polynomial
/// for `GF(2^16)`.
pub const GF2_16_POLY: u32 = 0x1100B;

/// A fixed published irreducible polynomial for each supported width.
pub fn default_polynomial(width: u8) -> Option<u32> {
    Some(match width {
        2 => 0x7,
        3 => 0xB,
        4 => 0x13,
        5 => 0x25,
        6 => 0x43,
        7 => 0x89,
        8 => 0x11D,
        9 => 0x211,
        10 => 0x409,
        11 => 0x805,
        12 => 0x1053,
        13 => 0x201B,
        14 => 0x4443,
        15 => 0x8003,
        16 => GF2_16_POLY,
        _ => return None,
    })
}

impl FieldSpec {
    /// Checks the width range and verifies irreducibility by exhaustive
    /// trial division over all factor candidates of degree `<= w/2`.
    pub fn new(width: u8, poly: u32) -> Result<FieldSpec, GfError> {
        if !(2..=16).contains(&width) {
            return Err(GfError::WidthOutOfRange { width });
        }
        if poly >> width != 1 {
            // Degree must be exactly `width`.
            return Err(GfError::ReduciblePolynomial { poly });
        }
        if !poly_is_irreducible(poly, width) {
            return Err(GfError::ReduciblePolynomial { poly });
        }
        Ok(FieldSpec { width, poly })
    }

    /// The default field: large enough for every desk-scale MDS bound.
    pub fn gf2_16() -> FieldSpec {
        FieldSpec::new(16, GF2_16_POLY).expect("default polynomial is irreducible")
    }

    pub fn width(&self) -> u8 {
        self.width
    }

    pub fn reduction_poly(&self) -> u32 {
        self.poly
    }

    /// `2^w`, the number of field elements.
    pub fn order(&self) -> u32 {
        1u32 << self.width
    }

    /// Checked element constructor.
    pub fn element(&self, value: u32) -> Result<FieldElement, GfError> {
        if value >= self.order() {
            return Err(GfError::ValueOutOfRange { value, order: self.order() });
        }
        Ok(FieldElement(value as u16))
    }
}

/// Trial division by every polynomial of degree `1..=w/2`.
fn poly_is_irreducible(poly: u32, width: u8) -> bool {
    for deg in 1..=(width / 2) as u32 {
        for low in 0..(1u32 << deg) {
            let divisor = (1 << deg) | low;
            if poly_rem(poly, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while poly_degree(a) >= db && a != 0 {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Addition is XOR; provided for symmetry with [`gf_mul`].
pub fn gf_add(a: FieldElement, b: FieldElement) -> FieldElement {
    FieldElement(a.0 ^ b.0)
}

/// Table-free carry-less multiply with interleaved reduction. This is
/// the reference path every optimized path must match bit-exactly.
pub fn gf_mul(a: FieldElement, b: FieldElement, spec: &FieldSpec) -> FieldElement {
    let w = spec.width as u32;
    let poly = spec.poly;
    let mut a = a.0 as u32;
    let b = b.0 as u32;
    let mut acc = 0u32;
    for bit in 0..w {
        if (b >> bit) & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        if (a >> w) & 1 == 1 {
            a ^= poly;
        }
    }
    FieldElement(acc as u16)
}

/// Field context with log/antilog tables; all hot paths route through
/// it. Construction cross-checks the tables against [`gf_mul`].
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    /// `exp[i] = g^i` for `i in 0..2*(order-1)`, doubling avoids a mod.
    exp: Vec<u16>,
    /// `log[v]` for `v in 1..order`; `log[0]` unused.
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("spec", &self.spec).finish()
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let order = spec.order();
        let generator = find_generator(&spec);
        let mut exp = vec![0u16; 2 * (order as usize - 1)];
        let mut log = vec![0u32; order as usize];
        let mut acc = FieldElement::ONE;
        for (i, slot) in exp.iter_mut().enumerate().take(order as usize - 1) {
            *slot = acc.0;
            log[acc.0 as usize] = i as u32;
            acc = gf_mul(acc, generator, &spec);
        }
        for i in 0..(order as usize - 1) {
            exp[order as usize - 1 + i] = exp[i];
        }
        Field { spec, exp, log }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.spec.order()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        gf_add(a, b)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let idx = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[idx as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        let n = self.order() - 1;
        let idx = (n - self.log[a.0 as usize]) % n;
        Ok(FieldElement(self.exp[idx as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

/// Smallest element generating the full multiplicative group.
fn find_generator(spec: &FieldSpec) -> FieldElement {
    let order = spec.order();
    'candidate: for g in 2..order {
        let g = FieldElement(g as u16);
        let mut acc = g;
        for _ in 1..order - 1 {
            if acc == FieldElement::ONE {
                continue 'candidate;
            }
            acc = gf_mul(acc, g, spec);
        }
        if acc == FieldElement::ONE {
            return g;
        }
    }
    unreachable!("every finite field has a generator")
}
