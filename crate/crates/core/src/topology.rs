//! Finite topological spaces on spectrum points, stored by their closed sets.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::SubmoduleLattice;

/// A subset of at most 128 points.
pub type PointSet = u128;

pub const MAX_POINTS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    Fi,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "fi" => Ok(Variant::Fi),
            other => Err(Error::Parse(format!("unknown topology variant `{other}`"))),
        }
    }
}

pub fn bit(i: usize) -> PointSet {
    1u128 << i
}

pub fn members(s: PointSet) -> impl Iterator<Item = usize> {
    (0..MAX_POINTS).filter(move |&i| s >> i & 1 == 1)
}

pub fn count(s: PointSet) -> usize {
    s.count_ones() as usize
}

fn full_set(n: usize) -> PointSet {
    if n == MAX_POINTS {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// `𝓥^fp(L)` for every lattice member `L`, over the given points (sub ids).
pub fn varieties(lattice: &SubmoduleLattice, points: &[usize]) -> Vec<PointSet> {
    lattice
        .ids()
        .map(|l| {
            points
                .iter()
                .enumerate()
                .filter(|&(_, &k)| lattice.le(l, k))
                .fold(0, |acc, (i, _)| acc | bit(i))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteTopology {
    pub variant: Variant,
    /// Submodule ids, in canonical order; position `i` is point `i`.
    pub points: Vec<usize>,
    pub closed_sets: Vec<PointSet>,
    /// `preimages[c]` lists every submodule `L` with `𝓥(L) = closed_sets[c]`.
    pub preimages: Vec<Vec<usize>>,
    pub is_topology: bool,
    pub witness: Option<(PointSet, PointSet)>,
}

impl FiniteTopology {
    /// `ξ^fp` over all submodules, or over those flagged in `fi`.
    pub fn build(lattice: &SubmoduleLattice, points: &[usize], fi: &[bool], variant: Variant) -> Result<Self> {
        if points.len() > MAX_POINTS {
            return Err(Error::TooManyPoints(points.len()));
        }
        let vs = varieties(lattice, points);
        let mut family: BTreeMap<PointSet, Vec<usize>> = BTreeMap::new();
        for l in lattice.ids() {
            if variant == Variant::Full || fi[l] {
                family.entry(vs[l]).or_default().push(l);
            }
        }
        let (closed_sets, preimages): (Vec<PointSet>, Vec<Vec<usize>>) = family.into_iter().unzip();
        let mut witness = None;
        'outer: for (i, &a) in closed_sets.iter().enumerate() {
            for &b in &closed_sets[i + 1..] {
                if closed_sets.binary_search(&(a | b)).is_err() {
                    witness = Some((a, b));
                    break 'outer;
                }
            }
        }
        Ok(FiniteTopology {
            variant,
            points: points.to_vec(),
            closed_sets,
            preimages,
            is_topology: witness.is_none(),
            witness,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn whole(&self) -> PointSet {
        full_set(self.len())
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.closed_sets.binary_search(&s).is_ok()
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.is_closed(self.whole() & !s)
    }

    pub fn open_sets(&self) -> Vec<PointSet> {
        let mut v: Vec<PointSet> = self.closed_sets.iter().map(|&c| self.whole() & !c).collect();
        v.sort_unstable();
        v
    }

    fn require(&self) -> Result<()> {
        if self.is_topology {
            Ok(())
        } else {
            Err(Error::NotATopology)
        }
    }

    /// Position of a submodule id among the points.
    pub fn point_of(&self, sub: usize) -> Option<usize> {
        self.points.iter().position(|&p| p == sub)
    }

    /// Least closed superset of `a`.
    pub fn closure(&self, a: PointSet) -> Result<PointSet> {
        self.require()?;
        Ok(self.closed_sets.iter().filter(|&&c| c & a == a).fold(self.whole(), |acc, &c| acc & c))
    }

    /// Least open neighbourhood of point `p`.
    pub fn neighbourhood(&self, p: usize) -> PointSet {
        self.open_sets().into_iter().filter(|&u| u >> p & 1 == 1).fold(self.whole(), |acc, u| acc & u)
    }

    /// A non-empty `a` with `a ⊆ C1 ∪ C2 ⇒ a ⊆ C1 or a ⊆ C2` for closed `C1`, `C2`.
    pub fn is_irreducible_subset(&self, a: PointSet) -> bool {
        if a == 0 {
            return false;
        }
        let cs = &self.closed_sets;
        cs.iter()
            .all(|&c1| cs.iter().all(|&c2| a & !(c1 | c2) != 0 || a & !c1 == 0 || a & !c2 == 0))
    }

    /// Connectedness of `a` in the subspace topology; the empty set counts as connected.
    pub fn is_connected_subset(&self, a: PointSet) -> bool {
        let traces: Vec<PointSet> = self.closed_sets.iter().map(|&c| c & a).collect();
        !traces.iter().any(|&s| s != 0 && s != a && traces.contains(&(a & !s)))
    }

    pub fn properties(&self) -> Result<Properties> {
        self.require()?;
        let n = self.len();
        let whole = self.whole();
        let closures: Vec<PointSet> = (0..n).map(|p| self.closure(bit(p)).expect("checked")).collect();
        let opens = self.open_sets();
        let t0 = (0..n).all(|p| (p + 1..n).all(|q| closures[p] != closures[q]));
        let t1 = (0..n).all(|p| self.is_closed(bit(p)));
        let t2 = (0..n).all(|p| {
            (p + 1..n).all(|q| {
                opens.iter().any(|&u| {
                    u >> p & 1 == 1 && opens.iter().any(|&v| v >> q & 1 == 1 && u & v == 0)
                })
            })
        });
        let discrete = (0..n).all(|p| self.is_open(bit(p)));
        let connected = self.is_connected_subset(whole);
        let (irreducible, ultraconnected) = if n == 0 {
            (None, None)
        } else {
            let nonempty: Vec<PointSet> = self.closed_sets.iter().copied().filter(|&c| c != 0).collect();
            (
                Some(self.is_irreducible_subset(whole)),
                Some(nonempty.iter().all(|&a| nonempty.iter().all(|&b| a & b != 0))),
            )
        };
        let irr = self.irreducible_closed_sets();
        let sober = irr.iter().all(|c| c.generic_points.len() == 1);
        Ok(Properties {
            t0,
            t1,
            t2,
            irreducible,
            ultraconnected,
            connected,
            sober,
            discrete,
            noetherian: true,
            compact: true,
            basis_check: None,
            empty_space: n == 0,
        })
    }

    /// Every irreducible closed set with its generic points (brute force).
    pub fn irreducible_closed_sets(&self) -> Vec<IrreducibleSet> {
        self.closed_sets
            .iter()
            .copied()
            .filter(|&c| self.is_irreducible_subset(c))
            .map(|c| IrreducibleSet {
                set: c,
                generic_points: members(c)
                    .filter(|&p| self.closed_sets.iter().filter(|&&d| d >> p & 1 == 1).fold(self.whole(), |a, &d| a & d) == c)
                    .collect(),
            })
            .collect()
    }

    /// Maximal irreducible closed sets.
    pub fn components(&self) -> Vec<PointSet> {
        let irr: Vec<PointSet> = self.irreducible_closed_sets().into_iter().map(|s| s.set).collect();
        irr.iter().copied().filter(|&a| !irr.iter().any(|&b| b != a && b & a == a)).collect()
    }

    /// `edges[p]` lists `q ≠ p` with `q ∈ cl{p}`.
    pub fn specialization(&self) -> Result<SpecializationOrder> {
        self.require()?;
        let n = self.len();
        let mut above = vec![0u128; n];
        for (p, slot) in above.iter_mut().enumerate() {
            *slot = self.closure(bit(p))? & !bit(p);
        }
        let mut hasse = Vec::new();
        for p in 0..n {
            for q in members(above[p]) {
                if !members(above[p]).any(|r| r != q && above[r] >> q & 1 == 1) {
                    hasse.push((p, q));
                }
            }
        }
        Ok(SpecializationOrder { above, hasse })
    }

    /// For every point, its least open neighbourhood and the members of `g` it meets.
    pub fn locally_finite(&self, g: &[PointSet]) -> Result<LocallyFinite> {
        self.require()?;
        let witnesses = (0..self.len())
            .map(|p| {
                let u = self.neighbourhood(p);
                (u, g.iter().enumerate().filter(|&(_, &s)| s & u != 0).map(|(i, _)| i).collect())
            })
            .collect();
        Ok(LocallyFinite { holds: true, witnesses })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Properties {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
    /// `None` on the empty space.
    pub irreducible: Option<bool>,
    pub ultraconnected: Option<bool>,
    pub connected: bool,
    pub sober: bool,
    pub discrete: bool,
    pub noetherian: bool,
    pub compact: bool,
    /// Filled in by the caller, which knows the cyclic submodules.
    pub basis_check: Option<bool>,
    pub empty_space: bool,
}

impl Properties {
    pub fn irreducible(&self) -> Result<bool> {
        self.irreducible.ok_or(Error::EmptySpace)
    }

    pub fn ultraconnected(&self) -> Result<bool> {
        self.ultraconnected.ok_or(Error::EmptySpace)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibleSet {
    pub set: PointSet,
    pub generic_points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationOrder {
    /// `above[p]`: points in the closure of `{p}` other than `p`.
    pub above: Vec<PointSet>,
    pub hasse: Vec<(usize, usize)>,
}

impl SpecializationOrder {
    /// Graphviz rendering; `labels[p]` names point `p`, `boxed[p]` marks maximal points.
    pub fn to_dot(&self, labels: &[String], boxed: &[bool]) -> String {
        let mut out = String::from("digraph specialization {\n  rankdir=BT;\n");
        for (p, label) in labels.iter().enumerate() {
            let shape = if boxed[p] { "box" } else { "ellipse" };
            let _ = writeln!(out, "  p{p} [label=\"{label}\", shape={shape}];");
        }
        for &(p, q) in &self.hasse {
            let _ = writeln!(out, "  p{p} -> p{q};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocallyFinite {
    pub holds: bool,
    /// Per point: (neighbourhood, indices of members of `G` it meets).
    pub witnesses: Vec<(PointSet, Vec<usize>)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize, closed: &[PointSet]) -> FiniteTopology {
        let mut closed_sets = closed.to_vec();
        closed_sets.sort_unstable();
        FiniteTopology {
            variant: Variant::Full,
            points: (0..n).collect(),
            preimages: vec![Vec::new(); closed_sets.len()],
            closed_sets,
            is_topology: true,
            witness: None,
        }
    }

    #[test]
    fn discrete_two_points() {
        let t = space(2, &[0, 1, 2, 3]);
        let p = t.properties().unwrap();
        assert!(p.t2 && p.t1 && p.discrete && !p.connected);
        assert_eq!(p.irreducible, Some(false));
        assert_eq!(t.components(), vec![1, 2]);
    }

    #[test]
    fn sierpinski_space() {
        // closed sets ∅, {1}, {0,1}: point 0 specialises to 1.
        let t = space(2, &[0, 2, 3]);
        let p = t.properties().unwrap();
        assert!(p.t0 && !p.t1 && p.connected && p.sober);
        assert_eq!(p.irreducible, Some(true));
        let order = t.specialization().unwrap();
        assert_eq!(order.hasse, vec![(0, 1)]);
        assert_eq!(t.closure(1).unwrap(), 3);
    }

    #[test]
    fn empty_space() {
        let t = space(0, &[0]);
        let p = t.properties().unwrap();
        assert!(p.connected && p.empty_space);
        assert_eq!(p.irreducible(), Err(Error::EmptySpace));
        assert_eq!(t.closure(0).unwrap(), 0);
    }

    #[test]
    fn union_failure_is_witnessed() {
        let mut t = space(2, &[0, 1, 2]);
        t.is_topology = false;
        assert_eq!(t.properties().unwrap_err(), Error::NotATopology);
    }
}
