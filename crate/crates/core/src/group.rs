//! Finite abelian groups in mixed-radix encoding.
//!
//! An element of `Z_{d_1} ⊕ … ⊕ Z_{d_k}` is stored as the integer index
//! `Σ a_i · w_i` with `w_k = 1` and `w_i = d_{i+1} · w_{i+1}`, so the first
//! component is the most significant digit.

use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicGroup {
    orders: Vec<u32>,
    weights: Vec<usize>,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl CyclicGroup {
    /// Builds `⊕ Z_{d_i}`; every `d_i` must be at least 2. An empty list gives the trivial group.
    pub fn new(orders: &[u32]) -> Result<Self> {
        if let Some(&d) = orders.iter().find(|&&d| d < 2) {
            return Err(Error::MalformedTable(format!("cyclic order {d} is below 2")));
        }
        let mut size = 1usize;
        for &d in orders {
            size = size
                .checked_mul(d as usize)
                .filter(|&s| s <= u32::MAX as usize)
                .ok_or(Error::SizeCap {
                    what: "additive group",
                    size: usize::MAX,
                    cap: u32::MAX as usize,
                })?;
        }
        let mut weights = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * orders[i + 1] as usize;
        }
        let mut g = CyclicGroup {
            orders: orders.to_vec(),
            weights,
            size,
            add: Vec::new(),
            neg: Vec::new(),
        };
        g.add = vec![0; size * size];
        g.neg = vec![0; size];
        let digits: Vec<Vec<u32>> = (0..size as u32).map(|x| g.digits(x)).collect();
        let mut buf = vec![0u32; orders.len()];
        for a in 0..size {
            for b in 0..size {
                for (i, slot) in buf.iter_mut().enumerate() {
                    *slot = (digits[a][i] + digits[b][i]) % orders[i];
                }
                g.add[a * size + b] = g.index(&buf);
            }
            for (i, slot) in buf.iter_mut().enumerate() {
                *slot = (orders[i] - digits[a][i]) % orders[i];
            }
            g.neg[a] = g.index(&buf);
        }
        Ok(g)
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `k · a` for any integer `k`.
    pub fn scale(&self, a: u32, k: i128) -> u32 {
        let digits = self.digits(a);
        let scaled: Vec<u32> = digits
            .iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (k.rem_euclid(d as i128) * x as i128 % d as i128) as u32)
            .collect();
        self.index(&scaled)
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let a = a as usize;
        self.orders
            .iter()
            .zip(&self.weights)
            .map(|(&d, &w)| ((a / w) % d as usize) as u32)
            .collect()
    }

    /// Index of a digit vector; digits are reduced modulo their orders.
    pub fn index(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .zip(&self.orders)
            .zip(&self.weights)
            .map(|((&x, &d), &w)| (x % d) as usize * w)
            .sum::<usize>() as u32
    }

    /// The `i`-th canonical generator (digit vector `e_i`).
    pub fn generator(&self, i: usize) -> u32 {
        self.weights[i] as u32
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.digits(a)
            .iter()
            .zip(&self.orders)
            .map(|(&x, &d)| d / gcd(x, d))
            .fold(1, lcm)
    }

    /// Exponent (lcm of the cyclic orders).
    pub fn exponent(&self) -> u32 {
        self.orders.iter().copied().fold(1, lcm)
    }
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// A cyclic decomposition of an abstract finite abelian group.
///
/// `basis[i]` (an element of the source group) has order `orders[i]`, and
/// `encode[x]` is the source element with digit vector `x` over `orders`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub orders: Vec<u32>,
    pub basis: Vec<u32>,
    pub encode: Vec<u32>,
}

/// Decomposes the group on `elements` (which must contain `zero` and be closed
/// under `add`) into cyclic factors `Z_{d_1} ⊕ … ⊕ Z_{d_k}` with `d_1 | d_2 | …`.
///
/// A polycyclic presentation is read off a greedy generating sequence and then
/// diagonalised by Smith normal form; the rows of `Q⁻¹` give the new basis.
pub fn decompose<F>(elements: &[u32], zero: u32, universe: usize, add: F) -> Result<Decomposition>
where
    F: Fn(u32, u32) -> u32,
{
    // coords[e] = normal-form coordinates of e over the generators chosen so far.
    let mut coords: Vec<Option<Vec<i128>>> = vec![None; universe];
    coords[zero as usize] = Some(Vec::new());
    let mut span = vec![zero];
    let mut gens: Vec<u32> = Vec::new();
    let mut relations: Vec<Vec<i128>> = Vec::new();
    for &e in elements {
        if coords[e as usize].is_some() {
            continue;
        }
        let t = gens.len();
        // multiples[a] = a·e
        let mut multiples = vec![zero];
        let mut cur = e;
        while coords[cur as usize].is_none() {
            multiples.push(cur);
            cur = add(cur, e);
        }
        let n = multiples.len();
        let mut rel: Vec<i128> = coords[cur as usize].clone().unwrap().iter().map(|c| -c).collect();
        rel.push(n as i128);
        relations.push(rel);
        for c in coords.iter_mut().flatten() {
            c.push(0);
        }
        let mut new_span = Vec::with_capacity(span.len() * n);
        for (a, &m) in multiples.iter().enumerate().skip(1) {
            for &s in &span {
                let x = add(s, m);
                let mut c = coords[s as usize].clone().unwrap();
                c[t] = a as i128;
                coords[x as usize] = Some(c);
                new_span.push(x);
            }
        }
        span.extend(new_span);
        gens.push(e);
    }
    if span.len() != elements.len() {
        return Err(Error::NotASubmodule(format!(
            "set of {} elements spans {} elements under addition",
            elements.len(),
            span.len()
        )));
    }
    let g = gens.len();
    let mut rel = IntMatrix::zeros(g, g);
    for (i, r) in relations.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            rel.set(i, j, v);
        }
    }
    let smith = smith_normal_form(&rel)?;
    let scale_add = |x: u32, k: i128| -> u32 {
        // k·x by doubling over the closure `add`; k is reduced mod the element's order.
        let ord = {
            let mut o = 1i128;
            let mut cur = x;
            while cur != zero {
                cur = add(cur, x);
                o += 1;
            }
            o
        };
        let mut k = k.rem_euclid(ord);
        let mut acc = zero;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = add(acc, base);
            }
            base = add(base, base);
            k >>= 1;
        }
        acc
    };
    let mut orders = Vec::new();
    let mut basis = Vec::new();
    for i in 0..g {
        let d = smith.diagonal[i];
        if d == 1 {
            continue;
        }
        let row = smith.right_inverse.row(i);
        let mut h = zero;
        for (t, &c) in row.iter().enumerate() {
            h = add(h, scale_add(gens[t], c));
        }
        orders.push(d as u32);
        basis.push(h);
    }
    // Build the encoding table by mixed-radix enumeration.
    let total: usize = orders.iter().map(|&d| d as usize).product();
    if total != elements.len() {
        return Err(Error::MalformedTable(format!(
            "decomposition order {total} does not match group order {}",
            elements.len()
        )));
    }
    let mut encode = vec![zero; total];
    let mut multiples: Vec<Vec<u32>> = Vec::with_capacity(basis.len());
    for (&b, &d) in basis.iter().zip(&orders) {
        let mut v = vec![zero];
        for _ in 1..d {
            let last = *v.last().unwrap();
            v.push(add(last, b));
        }
        multiples.push(v);
    }
    let mut digits = vec![0usize; orders.len()];
    for slot in encode.iter_mut() {
        let mut x = zero;
        for (i, &dgt) in digits.iter().enumerate() {
            x = add(x, multiples[i][dgt]);
        }
        *slot = x;
        for i in (0..orders.len()).rev() {
            digits[i] += 1;
            if digits[i] < orders[i] as usize {
                break;
            }
            digits[i] = 0;
        }
    }
    let mut seen = vec![false; universe];
    for &x in &encode {
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::MalformedTable("decomposition is not injective".into()));
        }
    }
    Ok(Decomposition {
        orders,
        basis,
        encode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_layout() {
        let g = CyclicGroup::new(&[2, 4]).unwrap();
        assert_eq!(g.size(), 8);
        assert_eq!(g.digits(5), vec![1, 1]);
        assert_eq!(g.index(&[1, 3]), 7);
        assert_eq!(g.add(5, 3), g.index(&[1, 0]));
        assert_eq!(g.neg(1), 3);
        assert_eq!(g.element_order(g.index(&[1, 2])), 2);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn rejects_degenerate_orders() {
        assert!(CyclicGroup::new(&[2, 1]).is_err());
    }

    #[test]
    fn decomposes_z2_plus_z3_as_z6() {
        let g = CyclicGroup::new(&[2, 3]).unwrap();
        let all: Vec<u32> = (0..6).collect();
        let d = decompose(&all, 0, 6, |a, b| g.add(a, b)).unwrap();
        assert_eq!(d.orders, vec![6]);
    }

    #[test]
    fn decomposes_subgroup() {
        // 2-torsion of Z2 ⊕ Z4 is Z2 ⊕ Z2.
        let g = CyclicGroup::new(&[2, 4]).unwrap();
        let sub: Vec<u32> = (0..8u32).filter(|&x| g.element_order(x) <= 2).collect();
        let d = decompose(&sub, 0, 8, |a, b| g.add(a, b)).unwrap();
        assert_eq!(d.orders, vec![2, 2]);
        let mut enc = d.encode.clone();
        enc.sort_unstable();
        assert_eq!(enc, sub);
    }
}
