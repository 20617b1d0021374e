//! Cayley graphs on the additive group of a finite field whose connection
//! set is a union of cosets of the d-th powers.
//!
//! Adjacency is answered implicitly: `u ~ v` iff `log(u - v) mod d` lies in
//! the class set `J`. No adjacency matrix is built for the whole field.

pub mod clique;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Element, FieldTable};
use clique::BitGraph;

/// Default vertex cap for [`CayleyGraph::clique_number`].
pub const DEFAULT_CLIQUE_NUMBER_CAP: u64 = 4096;
/// Default size cap for the common-neighbour subgraph searched exactly.
pub const DEFAULT_EXACT_BUDGET: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GraphKind {
    /// GP(q, d): the nonzero d-th powers, `J = {0}`.
    GeneralizedPaley {
        d: u64,
    },
    /// GP*(q, d): `J = {0, ..., d/2 - 1}`, d even.
    GeneralizedPeisert {
        d: u64,
    },
    ResidueClass {
        d: u64,
        classes: Vec<u64>,
    },
}

impl GraphKind {
    pub fn d(&self) -> u64 {
        match self {
            GraphKind::GeneralizedPaley { d }
            | GraphKind::GeneralizedPeisert { d }
            | GraphKind::ResidueClass { d, .. } => *d,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            GraphKind::GeneralizedPaley { .. } => "paley",
            GraphKind::GeneralizedPeisert { .. } => "peisert",
            GraphKind::ResidueClass { .. } => "residue",
        }
    }

    /// The residue classes J of the connection set, ascending.
    pub fn classes(&self) -> Vec<u64> {
        match self {
            GraphKind::GeneralizedPaley { .. } => vec![0],
            GraphKind::GeneralizedPeisert { d } => (0..d / 2).collect(),
            GraphKind::ResidueClass { classes, .. } => {
                let mut c = classes.clone();
                c.sort_unstable();
                c.dedup();
                c
            }
        }
    }

    /// GP*(q, 2) is GP(q, 2).
    fn normalized(self) -> GraphKind {
        match self {
            GraphKind::GeneralizedPeisert { d: 2 } => GraphKind::GeneralizedPaley { d: 2 },
            other => other,
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::GeneralizedPaley { d } => write!(f, "GP(d={d})"),
            GraphKind::GeneralizedPeisert { d } => write!(f, "GP*(d={d})"),
            GraphKind::ResidueClass { d, .. } => write!(f, "Cay(d={d}, J={:?})", self.classes()),
        }
    }
}

#[derive(Clone, Debug)]
enum ClassSet {
    Zero,
    Below(u64),
    Mask(Vec<bool>),
}

impl ClassSet {
    #[inline]
    fn contains(&self, class: u64) -> bool {
        match self {
            ClassSet::Zero => class == 0,
            ClassSet::Below(h) => class < *h,
            ClassSet::Mask(m) => m[class as usize],
        }
    }
}

/// Graph descriptor JSON: `{p, E, d, kind, J, g, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    pub p: u64,
    #[serde(rename = "E")]
    pub e: u32,
    pub d: u64,
    pub kind: String,
    #[serde(rename = "J")]
    pub classes: Vec<u64>,
    pub g: Element,
    pub modulus: Vec<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Greedy,
    Exact,
}

/// CliqueReport JSON: `{clique, is_maximal, witnesses, method}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueReport {
    pub clique: Vec<Element>,
    pub is_maximal: bool,
    pub witnesses: Vec<Element>,
    pub method: Strategy,
}

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    table: Arc<FieldTable>,
    kind: GraphKind,
    d: u64,
    classes: Vec<u64>,
    set: ClassSet,
}

/// `d | (p^E - 1)/(p^r - 1)`: whether GF(p^r) is a clique of GP(p^E, d).
pub fn paley_subfield_clique_predicate(p: u64, e: u32, r: u32, d: u64) -> bool {
    let big = p.pow(e) - 1;
    let small = p.pow(r) - 1;
    big % small == 0 && (big / small) % d == 0
}

impl CayleyGraph {
    pub fn new(table: Arc<FieldTable>, kind: GraphKind) -> Result<Self> {
        let kind = kind.normalized();
        let d = kind.d();
        match &kind {
            GraphKind::GeneralizedPaley { d } if *d < 2 => {
                return Err(Error::InvalidConfig(format!("Paley graphs need d > 1 (got {d})")));
            }
            GraphKind::GeneralizedPeisert { d } if d % 2 == 1 || *d < 2 => {
                return Err(Error::OddD(*d));
            }
            GraphKind::ResidueClass { d, .. } if *d == 0 => {
                return Err(Error::InvalidConfig("d must be positive".into()));
            }
            _ => {}
        }
        let q = table.order();
        if (q - 1) % (2 * d) != 0 {
            return Err(Error::DegenerateModulus { order: q, d });
        }
        let classes = kind.classes();
        if classes.is_empty() || classes.iter().any(|&j| j >= d) {
            return Err(Error::EmptyJ);
        }
        let set = match &kind {
            GraphKind::GeneralizedPaley { .. } => ClassSet::Zero,
            GraphKind::GeneralizedPeisert { d } => ClassSet::Below(d / 2),
            GraphKind::ResidueClass { .. } => {
                let mut mask = vec![false; d as usize];
                for &j in &classes {
                    mask[j as usize] = true;
                }
                ClassSet::Mask(mask)
            }
        };
        // S = -S: -1 = g^((q-1)/2) shifts every class by the same amount.
        let shift = ((q - 1) / 2) % d;
        if !classes.iter().all(|&j| set.contains((j + shift) % d)) {
            return Err(Error::DegenerateModulus { order: q, d });
        }
        Ok(CayleyGraph {
            table,
            kind,
            d,
            classes,
            set,
        })
    }

    pub fn table(&self) -> &FieldTable {
        &self.table
    }

    pub fn table_arc(&self) -> &Arc<FieldTable> {
        &self.table
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn classes(&self) -> &[u64] {
        &self.classes
    }

    pub fn order(&self) -> u64 {
        self.table.order()
    }

    pub fn descriptor(&self) -> GraphDescriptor {
        let t = &self.table;
        GraphDescriptor {
            p: t.p(),
            e: t.degree(),
            d: self.d,
            kind: self.kind.tag().to_string(),
            classes: self.classes.clone(),
            g: t.generator(),
            modulus: t.params().modulus.clone(),
        }
    }

    /// Membership of `x` in the connection set S.
    #[inline]
    pub fn in_connection_set(&self, x: Element) -> bool {
        match self.table.log_raw(x) {
            u32::MAX => false,
            l => self.set.contains(l as u64 % self.d),
        }
    }

    /// The connection set, ascending by code.
    pub fn connection_set(&self) -> Vec<Element> {
        self.table.elements().filter(|&x| self.in_connection_set(x)).collect()
    }

    #[inline]
    fn linked(&self, u: Element, v: Element) -> bool {
        self.in_connection_set(self.table.sub(u, v))
    }

    pub fn adjacent(&self, u: Element, v: Element) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoopQuery(u.0));
        }
        Ok(self.linked(u, v))
    }

    pub fn is_clique(&self, c: &[Element]) -> bool {
        let c = dedup(c);
        c.iter()
            .enumerate()
            .all(|(i, &u)| c[i + 1..].iter().all(|&v| self.linked(u, v)))
    }

    /// Vertices outside `c` adjacent to every vertex of `c`, ascending.
    pub fn common_neighbors(&self, c: &[Element]) -> Vec<Element> {
        let c = dedup(c);
        self.table
            .elements()
            .filter(|v| c.binary_search(v).is_err())
            .filter(|&v| c.iter().all(|&a| self.linked(v, a)))
            .collect()
    }

    /// `(true, [])` if `c` is a maximal clique, else `(false, witnesses)`.
    pub fn is_maximal_clique(&self, c: &[Element]) -> Result<(bool, Vec<Element>)> {
        if !self.is_clique(c) {
            return Err(Error::NotAClique);
        }
        let w = self.common_neighbors(c);
        Ok((w.is_empty(), w))
    }

    /// Extends the clique `c` to a maximal clique.
    ///
    /// `Greedy` adds the smallest-code common neighbour until none is left.
    /// `Exact` adds a maximum clique of the common-neighbour subgraph, which
    /// gives a largest clique containing `c`; it fails if that subgraph has
    /// more than `budget` vertices.
    pub fn extend_to_maximal_clique(&self, c: &[Element], strategy: Strategy, budget: usize) -> Result<CliqueReport> {
        if !self.is_clique(c) {
            return Err(Error::NotAClique);
        }
        let cn = self.common_neighbors(c);
        let mut clique = dedup(c);
        match strategy {
            Strategy::Greedy => {
                let mut added: Vec<Element> = Vec::new();
                for v in cn {
                    if added.iter().all(|&a| self.linked(v, a)) {
                        added.push(v);
                    }
                }
                clique.extend(added);
            }
            Strategy::Exact => {
                if cn.len() > budget {
                    return Err(Error::ExactBudgetExceeded { size: cn.len(), budget });
                }
                let g = BitGraph::from_fn(cn.len(), |i, j| self.linked(cn[i], cn[j]));
                clique.extend(clique::maximum_clique(&g).into_iter().map(|i| cn[i]));
            }
        }
        clique.sort_unstable();
        Ok(CliqueReport {
            clique,
            is_maximal: true,
            witnesses: Vec::new(),
            method: strategy,
        })
    }

    /// Exact clique number, rooted at 0: ω = 1 + ω(S).
    pub fn clique_number(&self, cap: u64) -> Result<usize> {
        if self.order() > cap {
            let t = &self.table;
            return Err(Error::CapExceeded {
                p: t.p(),
                e: t.degree(),
                cap,
            });
        }
        let s = self.connection_set();
        let g = BitGraph::from_fn(s.len(), |i, j| self.linked(s[i], s[j]));
        Ok(1 + clique::clique_number(&g))
    }

    /// Whether the subfield GF(p^r) is a clique.
    pub fn subfield_is_clique(&self, r: u32) -> Result<bool> {
        let t = &self.table;
        if r == 0 || t.degree() % r != 0 {
            return Err(Error::NotADivisor { r, e: t.degree() });
        }
        let sub_group = t.p().pow(r) - 1;
        let step = (t.order() - 1) / sub_group;
        // Differences of subfield elements are exactly its nonzero elements.
        let is = (0..sub_group).all(|k| self.set.contains((k * step) % self.d));
        if let GraphKind::GeneralizedPaley { d } = self.kind {
            debug_assert_eq!(is, paley_subfield_clique_predicate(t.p(), t.degree(), r, d));
        }
        Ok(is)
    }

    /// Whether GF(p^r) is a subfield clique contained in no larger subfield clique.
    pub fn is_maximal_subfield_clique(&self, r: u32) -> Result<bool> {
        if !self.subfield_is_clique(r)? {
            return Err(Error::NotAClique);
        }
        let e = self.table.degree();
        for m in (r + 1)..=e {
            if m % r == 0 && e % m == 0 && self.subfield_is_clique(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn dedup(c: &[Element]) -> Vec<Element> {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}
