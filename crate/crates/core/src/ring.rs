use crate::error::{Error, Result};
use crate::group::CyclicGroup;

/// Default upper bound on ring order.
pub const DEFAULT_RING_CAP: usize = 64;

/// A finite associative unital ring.
///
/// The additive group is `⊕ Z_{d_i}` in mixed-radix encoding (see
/// [`CyclicGroup`]); multiplication is a dense row-major table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    group: CyclicGroup,
    mul: Vec<u32>,
    one: u32,
}

impl FiniteRing {
    /// Validates a multiplication table exhaustively.
    pub fn from_table(add_cyclic: &[u32], mul: Vec<u32>, one: u32, cap: usize) -> Result<Self> {
        let group = CyclicGroup::new(add_cyclic)?;
        let n = group.size();
        if n > cap {
            return Err(Error::SizeCap {
                what: "ring",
                size: n,
                cap,
            });
        }
        if n < 2 {
            return Err(Error::TrivialRing);
        }
        if mul.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "multiplication table has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        if let Some(pos) = mul.iter().position(|&x| x as usize >= n) {
            return Err(Error::MalformedTable(format!(
                "entry {} at position {pos} is not an element index below {n}",
                mul[pos]
            )));
        }
        if one as usize >= n {
            return Err(Error::MalformedTable(format!("identity {one} is out of range")));
        }
        let ring = FiniteRing { group, mul, one };
        ring.validate()?;
        Ok(ring)
    }

    /// `Z_n` with its usual multiplication.
    pub fn zn(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::TrivialRing);
        }
        let n64 = n as u64;
        let mul = (0..n64 * n64).map(|i| ((i / n64) * (i % n64) % n64) as u32).collect();
        FiniteRing::from_table(&[n], mul, 1 % n, usize::MAX)
    }

    /// Direct product with componentwise operations; the first factor carries the most significant digits.
    pub fn product(factors: &[FiniteRing], cap: usize) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::MalformedTable("product of no factors".into()))?;
        let mut acc = first.clone();
        for f in rest {
            acc = acc.product_with(f, cap)?;
        }
        if acc.order() > cap {
            return Err(Error::SizeCap {
                what: "ring",
                size: acc.order(),
                cap,
            });
        }
        Ok(acc)
    }

    fn product_with(&self, other: &FiniteRing, cap: usize) -> Result<Self> {
        let (a, b) = (self.order(), other.order());
        let size = a.checked_mul(b).filter(|&s| s <= cap).ok_or(Error::SizeCap {
            what: "ring",
            size: a.saturating_mul(b),
            cap,
        })?;
        let mut add_cyclic = self.add_cyclic().to_vec();
        add_cyclic.extend_from_slice(other.add_cyclic());
        let mut mul = vec![0u32; size * size];
        for x in 0..size {
            let (x1, x2) = (x / b, x % b);
            for y in 0..size {
                let (y1, y2) = (y / b, y % b);
                let p1 = self.mul(x1 as u32, y1 as u32) as usize;
                let p2 = other.mul(x2 as u32, y2 as u32) as usize;
                mul[x * size + y] = (p1 * b + p2) as u32;
            }
        }
        let one = self.one as usize * b + other.one as usize;
        let group = CyclicGroup::new(&add_cyclic)?;
        Ok(FiniteRing {
            group,
            mul,
            one: one as u32,
        })
    }

    /// The opposite ring `R^op` with `a ∘ b = b·a`.
    pub fn opposite(&self) -> FiniteRing {
        let n = self.order();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.mul[b * n + a];
            }
        }
        FiniteRing {
            group: self.group.clone(),
            mul,
            one: self.one,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.order() as u32;
        if self.one == 0 {
            return Err(Error::TrivialRing);
        }
        for x in 0..n {
            if self.mul(self.one, x) != x || self.mul(x, self.one) != x {
                return Err(Error::NoIdentity {
                    one: self.one,
                    witness: x,
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let bc = self.add(b, c);
                    if self.mul(a, bc) != self.add(self.mul(a, b), self.mul(a, c))
                        || self.mul(bc, a) != self.add(self.mul(b, a), self.mul(c, a))
                    {
                        return Err(Error::NotDistributive { a, b, c });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NonAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.group.size()
    }

    pub fn add_cyclic(&self) -> &[u32] {
        self.group.orders()
    }

    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.group.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.group.neg(a)
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn zero(&self) -> u32 {
        0
    }

    /// Flat row-major multiplication table.
    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order() as u32
    }

    /// Canonical additive generators `e_i`.
    pub fn additive_generators(&self) -> Vec<u32> {
        (0..self.group.rank()).map(|i| self.group.generator(i)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order() as u32;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `a^k` for `k ≥ 1`.
    pub fn pow(&self, a: u32, k: usize) -> u32 {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one && self.mul(b, a) == self.one)
    }
}
