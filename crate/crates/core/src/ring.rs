//! Finite unital rings with an enumerable carrier.
//!
//! Four constructors cover everything the toolkit needs: `Z_n`, direct
//! products, `M2(Z_p)`, and quotients `Z_p[x]/(f)`. Every element is
//! addressed by a canonical index in `[0, |R|)` that is stable across runs,
//! so elements hash and sort deterministically. Multiplication is never
//! assumed commutative; `M2(Z_p)` is not.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::Caps;

/// Orders at or below this get cached operation tables; larger rings
/// compute by rule. `M2(Z_5)` has 625 elements and still scans in
/// milliseconds by rule, while tables for it would hold 390 625 products.
pub const TABLE_CACHE_MAX: usize = 256;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of one constructed ring; elements remember it so that elements
/// of different rings never compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u64);

/// An element handle: the owning ring's id plus the canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    ring: RingId,
    index: usize,
}

impl RingElement {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }
}

/// Abstract syntax for ring descriptions, the exchange format between the
/// command line, the catalog, and the constructors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zn(u64),
    Product(Box<RingSpec>, Box<RingSpec>),
    M2p(u64),
    /// `coeffs` lists the modulus polynomial little-endian: `coeffs[i]` is
    /// the coefficient of `x^i`. It must be monic of degree >= 1 over `Z_p`.
    QuotPoly { p: u64, coeffs: Vec<u64> },
}

impl RingSpec {
    /// Order of the ring this spec describes, without constructing it.
    pub fn order(&self) -> u128 {
        match self {
            RingSpec::Zn(n) => *n as u128,
            RingSpec::Product(a, b) => a.order().saturating_mul(b.order()),
            RingSpec::M2p(p) => (*p as u128).pow(4),
            RingSpec::QuotPoly { p, coeffs } => {
                (*p as u128).pow(coeffs.len().saturating_sub(1) as u32)
            }
        }
    }

    pub fn product(a: RingSpec, b: RingSpec) -> RingSpec {
        RingSpec::Product(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zn(n) => write!(f, "Z{n}"),
            RingSpec::Product(a, b) => write!(f, "{a} x {b}"),
            RingSpec::M2p(p) => write!(f, "M2(Z{p})"),
            RingSpec::QuotPoly { p, coeffs } => {
                write!(f, "Z{p}[x]/({})", render_poly(coeffs))
            }
        }
    }
}

fn render_poly(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match i {
            0 => format!("{c}"),
            1 if c == 1 => "x".to_string(),
            1 => format!("{c}x"),
            _ if c == 1 => format!("x^{i}"),
            _ => format!("{c}x^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

enum Repr {
    Zn {
        n: u64,
    },
    Product {
        left: FiniteRing,
        right: FiniteRing,
    },
    M2 {
        p: u64,
    },
    Quot {
        p: u64,
        /// Monic modulus, little-endian, length = degree + 1.
        modulus: Vec<u64>,
    },
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

struct Inner {
    id: RingId,
    spec: RingSpec,
    order: usize,
    zero: usize,
    one: usize,
    repr: Repr,
    tables: Option<Tables>,
}

/// A finite ring with identity. Immutable after construction; all
/// operations are pure reads, so shared use across threads is safe.
#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.inner.spec)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.spec.fmt(f)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    fn build(spec: RingSpec, order: usize, zero: usize, one: usize, repr: Repr) -> FiniteRing {
        let id = RingId(NEXT_RING_ID.fetch_add(1, Ordering::Relaxed));
        let mut inner = Inner {
            id,
            spec,
            order,
            zero,
            one,
            repr,
            tables: None,
        };
        if order <= TABLE_CACHE_MAX {
            let mut add = Vec::with_capacity(order * order);
            let mut mul = Vec::with_capacity(order * order);
            let mut neg = Vec::with_capacity(order);
            for a in 0..order {
                neg.push(rule_neg(&inner, a) as u32);
                for b in 0..order {
                    add.push(rule_add(&inner, a, b) as u32);
                    mul.push(rule_mul(&inner, a, b) as u32);
                }
            }
            inner.tables = Some(Tables { add, mul, neg });
        }
        FiniteRing {
            inner: Arc::new(inner),
        }
    }

    pub fn id(&self) -> RingId {
        self.inner.id
    }

    pub fn spec(&self) -> &RingSpec {
        &self.inner.spec
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    /// The element with the given canonical index.
    pub fn element(&self, index: usize) -> RingElement {
        assert!(
            index < self.inner.order,
            "element index {index} out of range for {} (order {})",
            self.inner.spec,
            self.inner.order
        );
        RingElement {
            ring: self.inner.id,
            index,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let id = self.inner.id;
        (0..self.inner.order).map(move |index| RingElement { ring: id, index })
    }

    pub fn zero(&self) -> RingElement {
        self.element(self.inner.zero)
    }

    pub fn one(&self) -> RingElement {
        self.element(self.inner.one)
    }

    pub fn is_zero(&self, a: RingElement) -> bool {
        self.check(a);
        a.index == self.inner.zero
    }

    pub fn is_one(&self, a: RingElement) -> bool {
        self.check(a);
        a.index == self.inner.one
    }

    fn check(&self, a: RingElement) {
        assert!(
            a.ring == self.inner.id && a.index < self.inner.order,
            "element of a different ring passed to {}",
            self.inner.spec
        );
    }

    pub fn add(&self, a: RingElement, b: RingElement) -> RingElement {
        self.check(a);
        self.check(b);
        let idx = match &self.inner.tables {
            Some(t) => t.add[a.index * self.inner.order + b.index] as usize,
            None => rule_add(&self.inner, a.index, b.index),
        };
        self.element(idx)
    }

    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        self.check(a);
        self.check(b);
        let idx = match &self.inner.tables {
            Some(t) => t.mul[a.index * self.inner.order + b.index] as usize,
            None => rule_mul(&self.inner, a.index, b.index),
        };
        self.element(idx)
    }

    pub fn neg(&self, a: RingElement) -> RingElement {
        self.check(a);
        let idx = match &self.inner.tables {
            Some(t) => t.neg[a.index] as usize,
            None => rule_neg(&self.inner, a.index),
        };
        self.element(idx)
    }

    /// Renders one element the way exports do: `Z_n` elements as their
    /// residue, everything else as the canonical index.
    pub fn describe(&self, a: RingElement) -> String {
        self.check(a);
        a.index.to_string()
    }
}

fn rule_add(inner: &Inner, a: usize, b: usize) -> usize {
    match &inner.repr {
        Repr::Zn { n } => ((a as u64 + b as u64) % n) as usize,
        Repr::Product { left, right } => {
            let rn = right.order();
            let (a1, a2) = (a / rn, a % rn);
            let (b1, b2) = (b / rn, b % rn);
            let s1 = left.add(left.element(a1), left.element(b1)).index();
            let s2 = right.add(right.element(a2), right.element(b2)).index();
            s1 * rn + s2
        }
        Repr::M2 { p } => {
            let x = m2_decode(a, *p);
            let y = m2_decode(b, *p);
            let mut z = [0u64; 4];
            for i in 0..4 {
                z[i] = (x[i] + y[i]) % p;
            }
            m2_encode(&z, *p)
        }
        Repr::Quot { p, modulus } => {
            let d = modulus.len() - 1;
            let x = poly_decode(a, *p, d);
            let y = poly_decode(b, *p, d);
            let z: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
            poly_encode(&z, *p)
        }
    }
}

fn rule_neg(inner: &Inner, a: usize) -> usize {
    match &inner.repr {
        Repr::Zn { n } => ((n - a as u64 % n) % n) as usize,
        Repr::Product { left, right } => {
            let rn = right.order();
            let n1 = left.neg(left.element(a / rn)).index();
            let n2 = right.neg(right.element(a % rn)).index();
            n1 * rn + n2
        }
        Repr::M2 { p } => {
            let x = m2_decode(a, *p);
            let z: Vec<u64> = x.iter().map(|v| (p - v % p) % p).collect();
            m2_encode(&[z[0], z[1], z[2], z[3]], *p)
        }
        Repr::Quot { p, modulus } => {
            let d = modulus.len() - 1;
            let x = poly_decode(a, *p, d);
            let z: Vec<u64> = x.iter().map(|v| (p - v % p) % p).collect();
            poly_encode(&z, *p)
        }
    }
}

fn rule_mul(inner: &Inner, a: usize, b: usize) -> usize {
    match &inner.repr {
        Repr::Zn { n } => ((a as u64 * b as u64) % n) as usize,
        Repr::Product { left, right } => {
            let rn = right.order();
            let (a1, a2) = (a / rn, a % rn);
            let (b1, b2) = (b / rn, b % rn);
            let m1 = left.mul(left.element(a1), left.element(b1)).index();
            let m2 = right.mul(right.element(a2), right.element(b2)).index();
            m1 * rn + m2
        }
        Repr::M2 { p } => {
            let x = m2_decode(a, *p);
            let y = m2_decode(b, *p);
            let z = [
                (x[0] * y[0] + x[1] * y[2]) % p,
                (x[0] * y[1] + x[1] * y[3]) % p,
                (x[2] * y[0] + x[3] * y[2]) % p,
                (x[2] * y[1] + x[3] * y[3]) % p,
            ];
            m2_encode(&z, *p)
        }
        Repr::Quot { p, modulus } => {
            let d = modulus.len() - 1;
            let x = poly_decode(a, *p, d);
            let y = poly_decode(b, *p, d);
            let mut buf = vec![0u64; 2 * d - 1];
            for (i, &xi) in x.iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                for (j, &yj) in y.iter().enumerate() {
                    buf[i + j] = (buf[i + j] + xi * yj) % p;
                }
            }
            // Fold x^k for k >= d using x^d = -(m_0 + ... + m_{d-1} x^{d-1}).
            for k in (d..buf.len()).rev() {
                let c = buf[k];
                if c == 0 {
                    continue;
                }
                buf[k] = 0;
                for j in 0..d {
                    let sub = c * modulus[j] % p;
                    buf[k - d + j] = (buf[k - d + j] + p - sub) % p;
                }
            }
            poly_encode(&buf[..d], *p)
        }
    }
}

/// Row-major matrix entries (a, b, c, d) from the base-p canonical index.
fn m2_decode(idx: usize, p: u64) -> [u64; 4] {
    let i = idx as u64;
    let p2 = p * p;
    let p3 = p2 * p;
    [i / p3, (i / p2) % p, (i / p) % p, i % p]
}

fn m2_encode(m: &[u64; 4], p: u64) -> usize {
    let p2 = p * p;
    let p3 = p2 * p;
    (m[0] * p3 + m[1] * p2 + m[2] * p + m[3]) as usize
}

/// Coefficients (little-endian, length d) from the base-p canonical index.
fn poly_decode(idx: usize, p: u64, d: usize) -> Vec<u64> {
    let mut i = idx as u64;
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        out.push(i % p);
        i /= p;
    }
    out
}

fn poly_encode(coeffs: &[u64], p: u64) -> usize {
    let mut idx = 0u64;
    for &c in coeffs.iter().rev() {
        idx = idx * p + c % p;
    }
    idx as usize
}

/// Trial-division primality. The primes here stay tiny.
pub fn is_prime(n: u64) -> bool {
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

/// `Z_n` with the canonical index of `k` being `k` itself.
pub fn make_zn(n: u64) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::InvalidSpec("Z0 is not a ring; n must be >= 1".into()));
    }
    let one = if n == 1 { 0 } else { 1 };
    Ok(FiniteRing::build(
        RingSpec::Zn(n),
        n as usize,
        0,
        one,
        Repr::Zn { n },
    ))
}

/// Direct product with componentwise operations; the canonical index of
/// `(a, b)` is `index(a) * |R2| + index(b)`.
pub fn make_product(r1: &FiniteRing, r2: &FiniteRing) -> FiniteRing {
    let order = r1
        .order()
        .checked_mul(r2.order())
        .expect("product ring order overflows usize");
    let rn = r2.order();
    let zero = r1.zero().index() * rn + r2.zero().index();
    let one = r1.one().index() * rn + r2.one().index();
    FiniteRing::build(
        RingSpec::product(r1.spec().clone(), r2.spec().clone()),
        order,
        zero,
        one,
        Repr::Product {
            left: r1.clone(),
            right: r2.clone(),
        },
    )
}

/// All 2x2 matrices over `Z_p`; the canonical index is the base-p value of
/// the row-major entries `(a, b, c, d)`.
pub fn make_m2p(p: u64) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!("M2(Z{p}) requires prime p")));
    }
    let order = (p as usize).pow(4);
    let one = m2_encode(&[1, 0, 0, 1], p);
    Ok(FiniteRing::build(
        RingSpec::M2p(p),
        order,
        0,
        one,
        Repr::M2 { p },
    ))
}

/// `Z_p[x]/(f)` for a monic `f` of degree >= 1, elements being the
/// polynomials of degree < deg f; the canonical index is the base-p value
/// of the little-endian coefficient vector.
pub fn make_quot_poly(p: u64, coeffs: &[u64]) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!(
            "Z{p}[x]/(f) requires prime p"
        )));
    }
    let reduced: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
    let degree = match reduced.iter().rposition(|&c| c != 0) {
        Some(d) => d,
        None => {
            return Err(Error::InvalidSpec(
                "modulus polynomial is zero".into(),
            ))
        }
    };
    if degree == 0 {
        return Err(Error::InvalidSpec(
            "modulus polynomial must have degree >= 1".into(),
        ));
    }
    if reduced[degree] != 1 {
        return Err(Error::InvalidSpec(format!(
            "modulus polynomial must be monic over Z{p}"
        )));
    }
    let modulus: Vec<u64> = reduced[..=degree].to_vec();
    let order = (p as usize).pow(degree as u32);
    Ok(FiniteRing::build(
        RingSpec::QuotPoly {
            p,
            coeffs: modulus.clone(),
        },
        order,
        0,
        1,
        Repr::Quot { p, modulus },
    ))
}

/// Constructs the ring a spec describes, enforcing the order cap before
/// any allocation happens.
pub fn build_ring(spec: &RingSpec, caps: &Caps) -> Result<FiniteRing> {
    let order = spec.order();
    if order > caps.max_ring_order as u128 {
        return Err(Error::CapExceeded {
            what: "ring order",
            value: order.min(usize::MAX as u128) as usize,
            cap: caps.max_ring_order,
        });
    }
    match spec {
        RingSpec::Zn(n) => make_zn(*n),
        RingSpec::Product(a, b) => {
            let left = build_ring(a, caps)?;
            let right = build_ring(b, caps)?;
            Ok(make_product(&left, &right))
        }
        RingSpec::M2p(p) => make_m2p(*p),
        RingSpec::QuotPoly { p, coeffs } => make_quot_poly(*p, coeffs),
    }
}

/// Exhaustively checks the ring axioms: commutativity and associativity of
/// addition, associativity of multiplication, two-sided distributivity,
/// identity laws, and additive inverses. Cubic in the order; meant for
/// rings of a few hundred elements.
pub fn verify_ring_axioms(ring: &FiniteRing) -> std::result::Result<(), String> {
    let n = ring.order();
    let elems: Vec<RingElement> = ring.elements().collect();
    let zero = ring.zero();
    let one = ring.one();
    if n > 1 && zero == one {
        return Err("zero equals one in a ring of order > 1".into());
    }
    for &a in &elems {
        if ring.add(a, zero) != a {
            return Err(format!("additive identity fails at {}", a.index()));
        }
        if ring.mul(a, one) != a || ring.mul(one, a) != a {
            return Err(format!("multiplicative identity fails at {}", a.index()));
        }
        if ring.add(a, ring.neg(a)) != zero {
            return Err(format!("additive inverse fails at {}", a.index()));
        }
        for &b in &elems {
            if ring.add(a, b) != ring.add(b, a) {
                return Err(format!(
                    "addition not commutative at ({}, {})",
                    a.index(),
                    b.index()
                ));
            }
            for &c in &elems {
                if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c)) {
                    return Err("addition not associative".into());
                }
                if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)) {
                    return Err("multiplication not associative".into());
                }
                let left = ring.mul(a, ring.add(b, c));
                if left != ring.add(ring.mul(a, b), ring.mul(a, c)) {
                    return Err("left distributivity fails".into());
                }
                let right = ring.mul(ring.add(a, b), c);
                if right != ring.add(ring.mul(a, c), ring.mul(b, c)) {
                    return Err("right distributivity fails".into());
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn_basics() {
        let z12 = make_zn(12).unwrap();
        assert_eq!(z12.order(), 12);
        assert_eq!(z12.one().index(), 1);
        let five = z12.element(5);
        assert!(z12.is_one(z12.mul(five, five)), "5*5 = 25 = 1 mod 12");

        let z4 = make_zn(4).unwrap();
        let two = z4.element(2);
        assert!(z4.is_zero(z4.mul(two, two)));
    }

    #[test]
    fn trivial_ring() {
        let z1 = make_zn(1).unwrap();
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.zero(), z1.one());
    }

    #[test]
    fn zn_rejects_zero_modulus() {
        assert!(matches!(make_zn(0), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn product_arithmetic() {
        let z3 = make_zn(3).unwrap();
        let z4 = make_zn(4).unwrap();
        let prod = make_product(&z3, &z4);
        assert_eq!(prod.order(), 12);
        let at = |a: usize, b: usize| a * 4 + b;
        assert_eq!(prod.one().index(), at(1, 1));
        // (1,2)^2 = (1,0): 1*1 = 1 mod 3, 2*2 = 0 mod 4
        let e = prod.element(at(1, 2));
        assert_eq!(prod.mul(e, e).index(), at(1, 0));
    }

    #[test]
    fn product_unit_count_matches_brute_force() {
        // Independent oracle: scan all 6 elements of Z2 x Z3 for two-sided
        // inverses directly.
        let z2 = make_zn(2).unwrap();
        let z3 = make_zn(3).unwrap();
        let prod = make_product(&z2, &z3);
        let units = brute_force_units(&prod);
        assert_eq!(units, 2);
    }

    #[test]
    fn crt_pair_counts_agree() {
        let z2 = make_zn(2).unwrap();
        let z3 = make_zn(3).unwrap();
        let prod = make_product(&z2, &z3);
        let z6 = make_zn(6).unwrap();
        assert_eq!(brute_force_units(&prod), brute_force_units(&z6));
        assert_eq!(
            brute_force_idempotents(&prod),
            brute_force_idempotents(&z6)
        );
    }

    fn brute_force_units(ring: &FiniteRing) -> usize {
        ring.elements()
            .filter(|&a| {
                ring.elements()
                    .any(|b| ring.is_one(ring.mul(a, b)) && ring.is_one(ring.mul(b, a)))
            })
            .count()
    }

    fn brute_force_idempotents(ring: &FiniteRing) -> usize {
        ring.elements().filter(|&a| ring.mul(a, a) == a).count()
    }

    #[test]
    fn m2_arithmetic() {
        let m = make_m2p(2).unwrap();
        assert_eq!(m.order(), 16);
        // [[1,1],[0,1]]^2 = I over Z2
        let u = m.element(0b1101); // (1,1,0,1) base 2
        assert!(m.is_one(m.mul(u, u)));
        assert!(matches!(make_m2p(4), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn m2_is_noncommutative() {
        let m = make_m2p(2).unwrap();
        let a = m.element(m2_encode(&[1, 1, 0, 1], 2));
        let b = m.element(m2_encode(&[1, 0, 1, 1], 2));
        assert_ne!(m.mul(a, b), m.mul(b, a));
    }

    #[test]
    fn quotient_arithmetic() {
        // Z2[x]/(x^2): x*x = 0 (nilpotent witness), (1+x)^2 = 1.
        let q = make_quot_poly(2, &[0, 0, 1]).unwrap();
        assert_eq!(q.order(), 4);
        let x = q.element(2);
        assert!(q.is_zero(q.mul(x, x)));
        let u = q.element(3);
        assert!(q.is_one(q.mul(u, u)));
    }

    #[test]
    fn quotient_field() {
        // Z2[x]/(x^2+x+1) = GF(4): x * (x+1) = x^2 + x = 1.
        let f4 = make_quot_poly(2, &[1, 1, 1]).unwrap();
        let x = f4.element(2);
        let x1 = f4.element(3);
        assert!(f4.is_one(f4.mul(x, x1)));
    }

    #[test]
    fn quotient_rejects_bad_moduli() {
        assert!(make_quot_poly(2, &[1]).is_err()); // degree 0
        assert!(make_quot_poly(3, &[0, 0, 2]).is_err()); // non-monic
        assert!(make_quot_poly(4, &[0, 0, 1]).is_err()); // composite p
        assert!(make_quot_poly(2, &[0]).is_err()); // zero polynomial
    }

    #[test]
    fn canonical_index_is_bijective() {
        for ring in sample_rings() {
            for i in 0..ring.order() {
                assert_eq!(ring.element(i).index(), i);
            }
        }
    }

    #[test]
    fn axioms_hold_exhaustively() {
        for ring in sample_rings() {
            assert!(ring.order() <= 512);
            verify_ring_axioms(&ring).unwrap_or_else(|e| panic!("{}: {e}", ring));
        }
    }

    fn sample_rings() -> Vec<FiniteRing> {
        let z3 = make_zn(3).unwrap();
        let z4 = make_zn(4).unwrap();
        vec![
            make_zn(1).unwrap(),
            make_zn(2).unwrap(),
            make_zn(12).unwrap(),
            make_zn(27).unwrap(),
            make_product(&z3, &z4),
            make_m2p(2).unwrap(),
            make_m2p(3).unwrap(),
            make_quot_poly(2, &[0, 0, 1]).unwrap(),
            make_quot_poly(3, &[1, 1, 1]).unwrap(),
        ]
    }

    #[test]
    fn build_ring_enforces_order_cap() {
        let caps = Caps::uniform(100);
        let err = build_ring(&RingSpec::Zn(101), &caps);
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
        assert!(build_ring(&RingSpec::Zn(100), &caps).is_ok());
    }

    #[test]
    fn spec_display_round_trips_structure() {
        let spec = RingSpec::product(RingSpec::Zn(3), RingSpec::Zn(4));
        assert_eq!(spec.to_string(), "Z3 x Z4");
        assert_eq!(RingSpec::M2p(5).to_string(), "M2(Z5)");
        let q = RingSpec::QuotPoly {
            p: 2,
            coeffs: vec![0, 0, 1],
        };
        assert_eq!(q.to_string(), "Z2[x]/(x^2)");
        let q2 = RingSpec::QuotPoly {
            p: 3,
            coeffs: vec![2, 1, 1],
        };
        assert_eq!(q2.to_string(), "Z3[x]/(x^2 + x + 2)");
    }

    #[test]
    fn elements_of_different_rings_never_equal() {
        let a = make_zn(6).unwrap();
        let b = make_zn(6).unwrap();
        assert_ne!(a.element(1), b.element(1));
    }
}
