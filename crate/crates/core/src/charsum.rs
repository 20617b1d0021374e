//! Multiplicative characters of order d, exact character sums over affine
//! lines, and lower-boundedness constants of root-of-unity sets.
//!
//! A character of order d is fixed by sending the table's primitive root g
//! to exp(2πi/d), so χ(x) = ζ_d^(log x mod d). Sums are kept as integer
//! counts per root class; floating point enters only when a magnitude is
//! evaluated.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{factor, Element, FieldTable};

#[derive(Clone, Debug)]
pub struct Character {
    table: Arc<FieldTable>,
    d: u64,
}

impl Character {
    pub fn new(table: Arc<FieldTable>, d: u64) -> Result<Self> {
        let q = table.order();
        if d == 0 || (q - 1) % d != 0 {
            return Err(Error::InvalidCharacterOrder { d, order: q });
        }
        Ok(Character { table, d })
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    pub fn table(&self) -> &FieldTable {
        &self.table
    }

    /// Exponent j with χ(x) = ζ_d^j.
    pub fn class(&self, x: Element) -> Result<u64> {
        self.table.log(x).map(|l| l % self.d).ok_or(Error::ZeroArgument)
    }

    /// Σ_{a ∈ base} χ(θ + a).
    pub fn line_sum(&self, theta: Element, base: &[Element]) -> Result<RootOfUnitySum> {
        let mut sum = RootOfUnitySum::new(self.d);
        for &a in base {
            let x = self.table.add(theta, a);
            let class = self.class(x).map_err(|_| Error::ZeroEncountered(a.0))?;
            sum.push(class);
        }
        Ok(sum)
    }

    /// Restriction to the subfield GF(p^k).
    pub fn restrict(&self, k: u32) -> Result<RestrictedCharacter> {
        let e = self.table.degree();
        if k == 0 || e % k != 0 {
            return Err(Error::NotASubfield { m: k, e });
        }
        let sub_group = self.table.p().pow(k) - 1;
        let step = (self.table.order() - 1) / sub_group;
        Ok(RestrictedCharacter {
            parent: self.clone(),
            degree: k,
            step,
            generator_class: step % self.d,
        })
    }
}

/// χ restricted to GF(p^k) ⊆ GF(p^E). The subfield's own primitive root is
/// h = g^N with N = (p^E - 1)/(p^k - 1), and χ'(h^j) = ζ_d^(jN mod d).
#[derive(Clone, Debug)]
pub struct RestrictedCharacter {
    parent: Character,
    degree: u32,
    step: u64,
    generator_class: u64,
}

impl RestrictedCharacter {
    pub fn subfield_degree(&self) -> u32 {
        self.degree
    }

    /// Class of the subfield's primitive root, N mod d.
    pub fn generator_class(&self) -> u64 {
        self.generator_class
    }

    /// Order of χ' as a character of the subfield.
    pub fn order(&self) -> u64 {
        let d = self.parent.d;
        d / gcd(d, self.generator_class)
    }

    /// χ' is trivial iff d | N.
    pub fn is_trivial(&self) -> bool {
        self.generator_class == 0
    }

    /// Index j of a nonzero subfield element y = h^j.
    pub fn subfield_log(&self, y: Element) -> Result<u64> {
        let l = self.parent.table.log(y).ok_or(Error::ZeroArgument)?;
        if l % self.step != 0 {
            return Err(Error::NotASubfield {
                m: self.degree,
                e: self.parent.table.degree(),
            });
        }
        Ok(l / self.step)
    }

    pub fn class(&self, y: Element) -> Result<u64> {
        let j = self.subfield_log(y)?;
        let d = self.parent.d;
        Ok(((j % d) * self.generator_class) % d)
    }
}

/// `(χ', is_trivial)` for the restriction of `chi` to GF(p^k).
pub fn restrict_character(chi: &Character, k: u32) -> Result<(RestrictedCharacter, bool)> {
    let r = chi.restrict(k)?;
    let trivial = r.is_trivial();
    Ok((r, trivial))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A multiset of d-th roots of unity: `counts[j]` copies of ζ_d^j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOfUnitySum {
    pub d: u64,
    pub counts: Vec<u64>,
}

/// Neumaier's compensated summation.
fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

impl RootOfUnitySum {
    pub fn new(d: u64) -> Self {
        RootOfUnitySum {
            d,
            counts: vec![0; d as usize],
        }
    }

    pub fn push(&mut self, class: u64) {
        self.counts[(class % self.d) as usize] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn real(&self) -> f64 {
        let d = self.d as f64;
        compensated_sum(
            self.counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| c as f64 * (2.0 * PI * j as f64 / d).cos()),
        )
    }

    pub fn imag(&self) -> f64 {
        let d = self.d as f64;
        compensated_sum(
            self.counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| c as f64 * (2.0 * PI * j as f64 / d).sin()),
        )
    }

    pub fn magnitude(&self) -> f64 {
        self.real().hypot(self.imag())
    }
}

/// Katz report JSON: `{p, E, r, d, max_ratio, worst_theta, bound}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KatzReport {
    pub p: u64,
    #[serde(rename = "E")]
    pub e: u32,
    pub r: u32,
    pub d: u64,
    /// max |Σ_a χ(θ + a)| / ((n - 1) √(p^r)) over generating θ.
    pub max_ratio: f64,
    pub worst_theta: Element,
    /// (n - 1) √(p^r).
    pub bound: f64,
    pub thetas_checked: u64,
}

impl KatzReport {
    pub fn holds(&self) -> bool {
        self.max_ratio <= 1.0 + 1e-9
    }
}

/// Scans every θ with GF(p^r)(θ) = GF(p^E) and compares the line sum of
/// the order-d character against the Katz bound.
pub fn katz_bound_check(table: &Arc<FieldTable>, r: u32, d: u64) -> Result<KatzReport> {
    let e = table.degree();
    if r == 0 || e % r != 0 {
        return Err(Error::NotADivisor { r, e });
    }
    if r == e {
        return Err(Error::NoValidTheta);
    }
    if d == 1 {
        return Err(Error::TrivialCharacter(d));
    }
    let chi = Character::new(table.clone(), d)?;
    let n = e / r;
    let base = table.subfield_elements(r)?;
    let bound = (n - 1) as f64 * (table.p().pow(r) as f64).sqrt();

    let mut best: Option<(f64, Element)> = None;
    let mut checked = 0u64;
    for theta in table.elements() {
        if table.degree_over_base(theta, r)? != n {
            continue;
        }
        checked += 1;
        let ratio = chi.line_sum(theta, &base)?.magnitude() / bound;
        if best.is_none_or(|(b, _)| ratio > b) {
            best = Some((ratio, theta));
        }
    }
    let (max_ratio, worst_theta) = best.ok_or(Error::NoValidTheta)?;
    Ok(KatzReport {
        p: table.p(),
        e,
        r,
        d,
        max_ratio,
        worst_theta,
        bound,
        thetas_checked: checked,
    })
}

/// Character orders d > 1 admissible on GF(q): the divisors of q - 1.
pub fn nontrivial_orders(q: u64) -> Vec<u64> {
    factor::divisors(q - 1).into_iter().filter(|&d| d > 1).collect()
}

/// EpsilonResult JSON: `{d, J, epsilon_star, weights}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonResult {
    pub d: u64,
    #[serde(rename = "J")]
    pub classes: Vec<u64>,
    pub epsilon_star: f64,
    /// Convex weights over `classes` attaining `epsilon_star`.
    pub weights: Vec<f64>,
}

const HULL_EPS: f64 = 1e-12;

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Closest point to the origin on segment ab, as the weight t on b.
fn segment_foot(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (-(a.0 * dx + a.1 * dy) / len2).clamp(0.0, 1.0)
    };
    let (x, y) = (a.0 + t * dx, a.1 + t * dy);
    (x.hypot(y), t)
}

/// Distance from the origin to the convex hull of the given planar points,
/// with convex weights (indexed like `points`) of a nearest hull point.
pub fn hull_distance(points: &[(f64, f64)]) -> (f64, Vec<f64>) {
    assert!(!points.is_empty());
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&i, &j| {
        points[i]
            .0
            .total_cmp(&points[j].0)
            .then(points[i].1.total_cmp(&points[j].1))
    });
    idx.dedup_by(|a, b| {
        (points[*a].0 - points[*b].0).abs() < HULL_EPS && (points[*a].1 - points[*b].1).abs() < HULL_EPS
    });

    // Andrew's monotone chain, counter-clockwise, collinear points dropped.
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in seq {
            while hull.len() >= start + 2
                && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= HULL_EPS
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    if hull.is_empty() {
        hull.push(idx[0]);
    }

    let mut weights = vec![0.0; points.len()];
    let origin = (0.0, 0.0);
    if hull.len() >= 3 {
        let inside = (0..hull.len()).all(|k| {
            let a = points[hull[k]];
            let b = points[hull[(k + 1) % hull.len()]];
            cross(a, b, origin) >= -HULL_EPS
        });
        if inside {
            // Fan-triangulate and express the origin barycentrically.
            let a = points[hull[0]];
            for k in 1..hull.len() - 1 {
                let b = points[hull[k]];
                let c = points[hull[k + 1]];
                let area = cross(a, b, c);
                let wa = cross(b, c, origin) / area;
                let wb = cross(c, a, origin) / area;
                let wc = cross(a, b, origin) / area;
                if wa >= -HULL_EPS && wb >= -HULL_EPS && wc >= -HULL_EPS {
                    let s = wa.max(0.0) + wb.max(0.0) + wc.max(0.0);
                    weights[hull[0]] = wa.max(0.0) / s;
                    weights[hull[k]] = wb.max(0.0) / s;
                    weights[hull[k + 1]] = wc.max(0.0) / s;
                    return (0.0, weights);
                }
            }
        }
    }

    if hull.len() == 1 {
        let a = points[hull[0]];
        weights[hull[0]] = 1.0;
        return (a.0.hypot(a.1), weights);
    }
    let edges = if hull.len() == 2 { 1 } else { hull.len() };
    let (mut best, mut at) = (f64::INFINITY, (hull[0], hull[0], 0.0));
    for k in 0..edges {
        let (i, j) = (hull[k], hull[(k + 1) % hull.len()]);
        let (dist, t) = segment_foot(points[i], points[j]);
        if dist < best {
            best = dist;
            at = (i, j, t);
        }
    }
    weights[at.0] += 1.0 - at.2;
    weights[at.1] += at.2;
    // origin on the hull boundary up to rounding
    if best < HULL_EPS {
        best = 0.0;
    }
    (best, weights)
}

/// Optimal lower-boundedness constant of {ζ_d^j : j ∈ classes}: the
/// distance from the origin to the convex hull of those roots.
pub fn epsilon_star(d: u64, classes: &[u64]) -> Result<EpsilonResult> {
    if d == 0 || classes.is_empty() || classes.iter().any(|&j| j >= d) {
        return Err(Error::EmptyJ);
    }
    let points: Vec<(f64, f64)> = classes
        .iter()
        .map(|&j| {
            let a = 2.0 * PI * j as f64 / d as f64;
            (a.cos(), a.sin())
        })
        .collect();
    let (eps, weights) = hull_distance(&points);
    Ok(EpsilonResult {
        d,
        classes: classes.to_vec(),
        epsilon_star: eps,
        weights,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub d: u64,
    pub epsilon_star: f64,
    /// π/d - π/d²
    #[serde(rename = "paper_bound")]
    pub lower_bound: f64,
    /// sin(π/d)
    pub analytic: f64,
    pub holds: bool,
    pub weights: Vec<f64>,
}

/// ε* of the half circle {ζ_d^j : 0 ≤ j < d/2} against π/d - π/d² and sin(π/d).
pub fn verify_lemma_bound(d: u64) -> Result<LemmaReport> {
    if d % 2 == 1 || d < 4 {
        return Err(Error::OddD(d));
    }
    let classes: Vec<u64> = (0..d / 2).collect();
    let res = epsilon_star(d, &classes)?;
    let df = d as f64;
    let lower_bound = PI / df - PI / (df * df);
    let analytic = (PI / df).sin();
    let holds = res.epsilon_star >= lower_bound && (res.epsilon_star - analytic).abs() <= 1e-9;
    Ok(LemmaReport {
        d,
        epsilon_star: res.epsilon_star,
        lower_bound,
        analytic,
        holds,
        weights: res.weights,
    })
}
