//! Exhaustive element analysis: idempotents with orthogonality counts,
//! units with the involution / non-involution split, and the closed-form
//! counts for `M2(Z_p)`.

use crate::error::{Error, Result};
use crate::ring::{make_m2p, FiniteRing, RingElement};
use crate::Caps;

/// The units of a ring in a fixed order:
///
/// * the involutions `U' = { u : u^2 = 1 }` first, sorted by canonical
///   index;
/// * then `U''`, arranged so that position `i` and position
///   `|U| + |U'| - 1 - i` are mutually inverse (first pairs with last,
///   second with second-to-last, and so on).
///
/// That mirror arrangement is exactly the copy pairing of a shuriken graph,
/// which makes the bijection from `Cl2(R)` onto its shuriken form plain
/// index arithmetic downstream.
#[derive(Clone, Debug)]
pub struct UnitTable {
    units: Vec<RingElement>,
    inv_pos: Vec<usize>,
    involutions: usize,
    pos_by_index: Vec<usize>,
}

const NO_POS: usize = usize::MAX;

impl UnitTable {
    pub fn units(&self) -> &[RingElement] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    /// `t = |U'|`.
    pub fn involution_count(&self) -> usize {
        self.involutions
    }

    pub fn u_prime(&self) -> &[RingElement] {
        &self.units[..self.involutions]
    }

    pub fn u_double_prime(&self) -> &[RingElement] {
        &self.units[self.involutions..]
    }

    /// Table position of a unit, if the element is one.
    pub fn position(&self, u: RingElement) -> Option<usize> {
        let pos = *self.pos_by_index.get(u.index())?;
        if pos == NO_POS {
            None
        } else {
            Some(pos)
        }
    }

    pub fn is_unit(&self, u: RingElement) -> bool {
        self.position(u).is_some()
    }

    pub fn is_involution(&self, u: RingElement) -> bool {
        matches!(self.position(u), Some(p) if p < self.involutions)
    }

    pub fn inverse_pos(&self, pos: usize) -> usize {
        self.inv_pos[pos]
    }

    pub fn inverse(&self, u: RingElement) -> Option<RingElement> {
        self.position(u).map(|p| self.units[self.inv_pos[p]])
    }
}

/// Builds the unit table by scanning every element for a two-sided inverse.
/// Both products are always checked; nothing here assumes commutativity.
pub fn units(ring: &FiniteRing, caps: &Caps) -> Result<UnitTable> {
    let n = ring.order();
    if n > caps.max_ring_order {
        return Err(Error::CapExceeded {
            what: "ring order",
            value: n,
            cap: caps.max_ring_order,
        });
    }
    let one = ring.one();
    let mut inverse_of: Vec<Option<RingElement>> = vec![None; n];
    for a in ring.elements() {
        for b in ring.elements() {
            if ring.mul(a, b) == one && ring.mul(b, a) == one {
                inverse_of[a.index()] = Some(b);
                break;
            }
        }
    }

    let mut u_prime = Vec::new();
    let mut pair_firsts = Vec::new();
    let mut seen = vec![false; n];
    for a in ring.elements() {
        let Some(inv) = inverse_of[a.index()] else {
            continue;
        };
        if inv == a {
            u_prime.push(a);
        } else if !seen[a.index()] {
            // Smaller canonical index first within each inverse pair.
            seen[a.index()] = true;
            seen[inv.index()] = true;
            pair_firsts.push((a, inv));
        }
    }

    let t = u_prime.len();
    let s = 2 * pair_firsts.len();
    let mut units = u_prime;
    units.extend(pair_firsts.iter().map(|&(a, _)| a));
    units.extend(pair_firsts.iter().rev().map(|&(_, b)| b));

    let mut inv_pos = vec![0usize; t + s];
    for (pos, item) in inv_pos.iter_mut().enumerate().take(t) {
        *item = pos;
    }
    for j in 0..s {
        inv_pos[t + j] = t + s - 1 - j;
    }

    let mut pos_by_index = vec![NO_POS; n];
    for (pos, u) in units.iter().enumerate() {
        pos_by_index[u.index()] = pos;
    }

    debug_assert!(units.iter().enumerate().all(|(pos, &u)| {
        let inv = units[inv_pos[pos]];
        ring.mul(u, inv) == one && ring.mul(inv, u) == one
    }));
    debug_assert_eq!(s % 2, 0);

    Ok(UnitTable {
        units,
        inv_pos,
        involutions: t,
        pos_by_index,
    })
}

/// The idempotents of a ring in canonical-index order, together with the
/// two-sided orthogonality counts `O_e = |{ f nonzero idempotent :
/// ef = fe = 0 }|`.
#[derive(Clone, Debug)]
pub struct IdempotentTable {
    all: Vec<RingElement>,
    ortho: Vec<usize>,
    zero: RingElement,
    one: RingElement,
}

impl IdempotentTable {
    /// Every idempotent, including 0 and 1, by canonical index.
    pub fn all(&self) -> &[RingElement] {
        &self.all
    }

    /// Idempotents other than 0.
    pub fn nonzero(&self) -> Vec<RingElement> {
        self.all.iter().copied().filter(|&e| e != self.zero).collect()
    }

    /// Idempotents other than 0 and 1.
    pub fn nontrivial(&self) -> Vec<RingElement> {
        self.all
            .iter()
            .copied()
            .filter(|&e| e != self.zero && e != self.one)
            .collect()
    }

    /// `O_e` for any listed idempotent.
    pub fn ortho_count(&self, e: RingElement) -> Option<usize> {
        self.all
            .iter()
            .position(|&x| x == e)
            .map(|pos| self.ortho[pos])
    }

    pub fn is_idempotent(&self, e: RingElement) -> bool {
        self.all.contains(&e)
    }
}

/// Exhaustive idempotent scan with two-sided orthogonality counts.
pub fn idempotents(ring: &FiniteRing, caps: &Caps) -> Result<IdempotentTable> {
    let n = ring.order();
    if n > caps.max_ring_order {
        return Err(Error::CapExceeded {
            what: "ring order",
            value: n,
            cap: caps.max_ring_order,
        });
    }
    let zero = ring.zero();
    let all: Vec<RingElement> = ring.elements().filter(|&e| ring.mul(e, e) == e).collect();
    let nonzero: Vec<RingElement> = all.iter().copied().filter(|&e| e != zero).collect();
    let ortho = all
        .iter()
        .map(|&e| {
            nonzero
                .iter()
                .filter(|&&f| ring.is_zero(ring.mul(e, f)) && ring.is_zero(ring.mul(f, e)))
                .count()
        })
        .collect();
    Ok(IdempotentTable {
        all,
        ortho,
        zero,
        one: ring.one(),
    })
}

/// `|U(M2(Z_p))| = (p^2 - 1)(p^2 - p) = p^4 - p^3 - p^2 + p`.
pub fn unit_count_m2_formula(p: u64) -> u64 {
    p.pow(4) - p.pow(3) - p * p + p
}

/// `|U'(M2(Z_p))|`: 4 when p = 2, otherwise p^2 + p + 2.
pub fn involution_count_m2_formula(p: u64) -> u64 {
    if p == 2 {
        4
    } else {
        p * p + p + 2
    }
}

/// The involutions of `M2(Z_p)` split into the four parametric families of
/// solutions of `u^2 = I`:
///
/// 1. diagonal matrices with `a, d` in `{1, p-1}`;
/// 2. `b = 0`, `a = -d`, `c != 0`;
/// 3. `c = 0`, `a = -d`, `b != 0`;
/// 4. `a = -d`, `b != 0`, `c = (1 - a^2) / b`, with `a` outside `{1, p-1}`.
///
/// For p = 2 the four families degenerate (1 and p-1 coincide, so the
/// parametrizations overlap and family 4's count formula vanishes even
/// though its lone matrix exists); there the classification collapses to a
/// single family holding all four involutions.
#[derive(Clone, Debug)]
pub struct InvolutionClassification {
    pub ring: FiniteRing,
    pub families: [Vec<RingElement>; 4],
}

impl InvolutionClassification {
    pub fn family_sizes(&self) -> [usize; 4] {
        [
            self.families[0].len(),
            self.families[1].len(),
            self.families[2].len(),
            self.families[3].len(),
        ]
    }

    pub fn total(&self) -> usize {
        self.families.iter().map(Vec::len).sum()
    }
}

pub fn involutions_m2_classified(p: u64) -> Result<InvolutionClassification> {
    let ring = make_m2p(p)?;
    let enc = |a: u64, b: u64, c: u64, d: u64| {
        let p2 = p * p;
        ring.element((a * p2 * p + b * p2 + c * p + d) as usize)
    };

    let families = if p == 2 {
        let one = ring.one();
        let all: Vec<RingElement> = ring
            .elements()
            .filter(|&u| ring.mul(u, u) == one)
            .collect();
        [all, Vec::new(), Vec::new(), Vec::new()]
    } else {
        let signs = [1, p - 1];
        let mut f1 = Vec::new();
        for &a in &signs {
            for &d in &signs {
                f1.push(enc(a, 0, 0, d));
            }
        }
        let mut f2 = Vec::new();
        let mut f3 = Vec::new();
        for &a in &signs {
            let d = p - a; // a = -d with a in {1, p-1}
            for x in 1..p {
                f2.push(enc(a, 0, x, d));
                f3.push(enc(a, x, 0, d));
            }
        }
        let mut f4 = Vec::new();
        for a in 0..p {
            if a == 1 || a == p - 1 {
                continue;
            }
            let d = (p - a) % p;
            let a2 = a * a % p;
            let num = (1 + p - a2) % p; // 1 - a^2 mod p
            for b in 1..p {
                let c = num * mod_inverse(b, p) % p;
                f4.push(enc(a, b, c, d));
            }
        }
        [f1, f2, f3, f4]
    };

    let classification = InvolutionClassification { ring, families };
    debug_assert!(classification_partitions(&classification));
    Ok(classification)
}

fn mod_inverse(b: u64, p: u64) -> u64 {
    (1..p).find(|&x| b * x % p == 1).expect("b nonzero mod prime p")
}

fn classification_partitions(c: &InvolutionClassification) -> bool {
    let one = c.ring.one();
    let mut brute: Vec<RingElement> = c
        .ring
        .elements()
        .filter(|&u| c.ring.mul(u, u) == one)
        .collect();
    brute.sort();
    let mut listed: Vec<RingElement> = c.families.iter().flatten().copied().collect();
    listed.sort();
    let mut dedup = listed.clone();
    dedup.dedup();
    dedup.len() == listed.len() && listed == brute
}
