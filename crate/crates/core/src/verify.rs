//! Case-by-case verification that maximal subfield cliques are maximal
//! cliques, with hypothesis-regime classification, conjecture instances,
//! and exhaustive parameter sweeps.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::{CayleyGraph, GraphKind, Strategy, DEFAULT_EXACT_BUDGET};
use crate::charsum;
use crate::error::{Error, Result};
use crate::ff::{self, factor, Element, FieldDescriptor, FieldTable};

/// A base field GF(q), q = p^s, inside GF(q^n), with a graph kind on GF(q^n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseParams {
    pub p: u64,
    pub s: u32,
    pub n: u32,
    pub kind: GraphKind,
}

impl CaseParams {
    pub fn new(p: u64, s: u32, n: u32, kind: GraphKind) -> Self {
        CaseParams { p, s, n, kind }
    }

    pub fn d(&self) -> u64 {
        self.kind.d()
    }

    /// Base field order q = p^s.
    pub fn q(&self) -> u64 {
        self.p.pow(self.s)
    }

    pub fn full_degree(&self) -> u32 {
        self.s * self.n
    }

    /// Checks the case invariants against a field-size cap.
    pub fn validate(&self, cap: u64) -> Result<()> {
        if self.p % 2 == 0 {
            return Err(Error::EvenP(self.p));
        }
        if !factor::is_prime(self.p) {
            return Err(Error::NonPrimeP(self.p));
        }
        if self.s == 0 {
            return Err(Error::InvalidCase("s must be at least 1".into()));
        }
        if self.n < 2 {
            return Err(Error::InvalidCase(format!("n must be at least 2 (got {})", self.n)));
        }
        let e = self.full_degree();
        let order = match self.p.checked_pow(e) {
            Some(o) if o <= cap => o,
            _ => return Err(Error::CapExceeded { p: self.p, e, cap }),
        };
        let d = self.d();
        match &self.kind {
            GraphKind::GeneralizedPaley { d } if *d < 2 => {
                return Err(Error::InvalidCase(format!("Paley graphs need d > 1 (got {d})")));
            }
            GraphKind::GeneralizedPeisert { d } if d % 2 == 1 || *d < 4 => {
                return Err(Error::OddD(*d));
            }
            _ => {}
        }
        if d == 0 || (order - 1) % (2 * d) != 0 {
            return Err(Error::DegenerateModulus { order, d });
        }
        Ok(())
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} s={} n={} {}", self.p, self.s, self.n, self.kind)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisRegime {
    /// Paley kind with q > (n-1)^2.
    Theorem1,
    /// Peisert kind with q > (n-1)^2 d^4 / (π^2 (d-1)^2).
    Theorem2,
    /// q > (n-1)^2 / ε*^2 for the lower-boundedness constant of the
    /// connection set's character image.
    Proposition {
        epsilon: f64,
    },
    BelowThreshold,
}

impl HypothesisRegime {
    pub fn is_below_threshold(&self) -> bool {
        matches!(self, HypothesisRegime::BelowThreshold)
    }

    pub fn token(&self) -> &'static str {
        match self {
            HypothesisRegime::Theorem1 => "theorem1",
            HypothesisRegime::Theorem2 => "theorem2",
            HypothesisRegime::Proposition { .. } => "proposition",
            HypothesisRegime::BelowThreshold => "below_threshold",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "consistent")]
    Consistent,
    #[serde(rename = "VIOLATION")]
    Violation,
    #[serde(rename = "counterexample_below_threshold")]
    CounterexampleBelowThreshold,
    #[serde(rename = "vacuous")]
    Vacuous,
}

impl Verdict {
    pub fn token(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Violation => "VIOLATION",
            Verdict::CounterexampleBelowThreshold => "counterexample_below_threshold",
            Verdict::Vacuous => "vacuous",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub case: CaseParams,
    pub field: FieldDescriptor,
    pub hypothesis_regime: HypothesisRegime,
    pub subfield_clique: bool,
    pub maximal_subfield_clique: bool,
    /// False unless the base subfield is a clique with no common neighbour.
    pub maximal_clique: bool,
    /// Every vertex adjacent to the whole base subfield, ascending.
    pub witnesses: Vec<Element>,
    pub extended_clique_size: Option<usize>,
    pub extended_clique: Option<Vec<Element>>,
    pub extension_method: Option<Strategy>,
    pub verdict: Verdict,
}

impl TheoremReport {
    pub fn csv_header() -> &'static str {
        "p,s,n,d,kind,verdict,extended_size"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.case.p,
            self.case.s,
            self.case.n,
            self.case.d(),
            self.case.kind.tag(),
            self.verdict,
            self.extended_clique_size.map(|s| s.to_string()).unwrap_or_default()
        )
    }
}

/// Verdict from the report booleans.
pub fn classify(regime: &HypothesisRegime, maximal_subfield_clique: bool, maximal_clique: bool) -> Verdict {
    if !maximal_subfield_clique {
        Verdict::Vacuous
    } else if maximal_clique {
        Verdict::Consistent
    } else if regime.is_below_threshold() {
        Verdict::CounterexampleBelowThreshold
    } else {
        Verdict::Violation
    }
}

/// Threshold (n-1)^2 d^4 / (π^2 (d-1)^2) for the Peisert kind.
pub fn peisert_threshold(n: u32, d: u64) -> f64 {
    let (n1, d) = ((n - 1) as f64, d as f64);
    n1 * n1 * d.powi(4) / (PI * PI * (d - 1.0) * (d - 1.0))
}

/// Which sufficient condition for maximality, if any, the case satisfies.
pub fn check_hypotheses(case: &CaseParams) -> Result<HypothesisRegime> {
    if case.n < 2 {
        return Err(Error::InvalidCase(format!("n must be at least 2 (got {})", case.n)));
    }
    let q = case.q() as f64;
    let n1 = (case.n - 1) as f64;
    match &case.kind {
        GraphKind::GeneralizedPaley { .. } => {
            if q > n1 * n1 {
                return Ok(HypothesisRegime::Theorem1);
            }
        }
        GraphKind::GeneralizedPeisert { d } => {
            if q > peisert_threshold(case.n, *d) {
                return Ok(HypothesisRegime::Theorem2);
            }
        }
        GraphKind::ResidueClass { .. } => {}
    }
    // The connection set must contain the d-th powers for the general criterion.
    let classes = case.kind.classes();
    if !classes.contains(&0) {
        return Ok(HypothesisRegime::BelowThreshold);
    }
    let eps = charsum::epsilon_star(case.d(), &classes)?.epsilon_star;
    if eps > 0.0 && q > n1 * n1 / (eps * eps) {
        Ok(HypothesisRegime::Proposition { epsilon: eps })
    } else {
        Ok(HypothesisRegime::BelowThreshold)
    }
}

/// Knobs shared by single-case verification and sweeps.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub cap: u64,
    pub exact_budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: ff::DEFAULT_FIELD_CAP,
            exact_budget: DEFAULT_EXACT_BUDGET,
        }
    }
}

pub fn verify_case(case: &CaseParams) -> Result<TheoremReport> {
    verify_case_with(case, &VerifyOptions::default())
}

pub fn verify_case_with(case: &CaseParams, opts: &VerifyOptions) -> Result<TheoremReport> {
    case.validate(opts.cap)?;
    let table = Arc::new(ff::build_field_with_cap(case.p, case.full_degree(), opts.cap)?);
    verify_case_on(&table, case, opts)
}

/// Verification against an already built GF(p^(s n)).
pub fn verify_case_on(table: &Arc<FieldTable>, case: &CaseParams, opts: &VerifyOptions) -> Result<TheoremReport> {
    case.validate(opts.cap)?;
    if table.p() != case.p || table.degree() != case.full_degree() {
        return Err(Error::InvalidCase(format!(
            "field GF({}^{}) does not match case {case}",
            table.p(),
            table.degree()
        )));
    }
    let regime = check_hypotheses(case)?;
    let graph = CayleyGraph::new(table.clone(), case.kind.clone())?;
    let r = case.s;
    let subfield_clique = graph.subfield_is_clique(r)?;
    let maximal_subfield_clique = subfield_clique && graph.is_maximal_subfield_clique(r)?;

    let mut report = TheoremReport {
        case: case.clone(),
        field: table.descriptor(),
        hypothesis_regime: regime.clone(),
        subfield_clique,
        maximal_subfield_clique,
        maximal_clique: false,
        witnesses: Vec::new(),
        extended_clique_size: None,
        extended_clique: None,
        extension_method: None,
        verdict: Verdict::Vacuous,
    };
    if !maximal_subfield_clique {
        return Ok(report);
    }

    let base = table.subfield_elements(r)?;
    let witnesses = graph.common_neighbors(&base);
    report.maximal_clique = witnesses.is_empty();
    if !witnesses.is_empty() {
        let strategy = if witnesses.len() <= opts.exact_budget {
            Strategy::Exact
        } else {
            Strategy::Greedy
        };
        let ext = graph.extend_to_maximal_clique(&base, strategy, opts.exact_budget)?;
        report.extended_clique_size = Some(ext.clique.len());
        report.extended_clique = Some(ext.clique);
        report.extension_method = Some(strategy);
    }
    report.witnesses = witnesses;
    report.verdict = classify(&regime, maximal_subfield_clique, report.maximal_clique);
    Ok(report)
}

/// Largest r | s with d | (q - 1)/(p^r - 1), where q = p^s.
pub fn conjecture_r(p: u64, s: u32, d: u64) -> Result<u32> {
    let q = p.pow(s);
    (1..=s)
        .rev()
        .filter(|r| s % r == 0)
        .find(|&r| {
            let quotient = (q - 1) / (p.pow(r) - 1);
            quotient % d == 0
        })
        .ok_or(Error::NoQualifyingR { q, d })
}

/// The conjecture instance for GP(p^s, d): base GF(p^r) with r from
/// [`conjecture_r`] and extension degree s / r.
pub fn conjecture_case(p: u64, s: u32, d: u64) -> Result<CaseParams> {
    let q = p.pow(s);
    if d < 2 || (q - 1) % (2 * d) != 0 {
        return Err(Error::DegenerateModulus { order: q, d });
    }
    let r = conjecture_r(p, s, d)?;
    Ok(CaseParams::new(p, r, s / r, GraphKind::GeneralizedPaley { d }))
}

pub fn verify_conjecture_case(p: u64, s: u32, d: u64) -> Result<TheoremReport> {
    verify_conjecture_case_with(p, s, d, &VerifyOptions::default())
}

pub fn verify_conjecture_case_with(p: u64, s: u32, d: u64, opts: &VerifyOptions) -> Result<TheoremReport> {
    verify_case_with(&conjecture_case(p, s, d)?, opts)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindTag {
    Paley,
    Peisert,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Cap on q^n.
    pub max_order: u64,
    pub n_range: (u32, u32),
    pub d_range: (u64, u64),
    pub kinds: Vec<KindTag>,
    /// Optional cap on the base order q.
    pub max_base: Option<u64>,
    /// Only keep q ≤ (n-1)^2.
    pub below_paley_threshold: bool,
    pub workers: usize,
    pub cap: u64,
    pub exact_budget: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_order: 4096,
            n_range: (2, 6),
            d_range: (2, u64::MAX),
            kinds: vec![KindTag::Paley],
            max_base: None,
            below_paley_threshold: false,
            workers: 1,
            cap: ff::DEFAULT_FIELD_CAP,
            exact_budget: DEFAULT_EXACT_BUDGET,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_order > self.cap {
            return Err(Error::InvalidConfig(format!(
                "max order {} exceeds the field cap {}",
                self.max_order, self.cap
            )));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        if self.n_range.0 < 2 {
            return Err(Error::InvalidConfig("n must be at least 2".into()));
        }
        Ok(())
    }

    /// All cases in the sweep, sorted by (p, s, n, d, kind).
    pub fn cases(&self) -> Result<Vec<CaseParams>> {
        self.validate()?;
        let mut out = Vec::new();
        let (n_lo, n_hi) = self.n_range;
        let mut root = 1u64;
        while (root + 1) * (root + 1) <= self.max_order {
            root += 1;
        }
        for p in factor::odd_primes_up_to(root) {
            let mut s = 1u32;
            while let Some(q) = p.checked_pow(s).filter(|&q| q.saturating_mul(q) <= self.max_order) {
                let base_ok = self.max_base.is_none_or(|m| q <= m);
                for n in n_lo.max(2)..=n_hi {
                    let Some(order) = q.checked_pow(n).filter(|&o| o <= self.max_order) else {
                        break;
                    };
                    if !base_ok || (self.below_paley_threshold && q > ((n - 1) as u64).pow(2)) {
                        continue;
                    }
                    for d in factor::divisors((order - 1) / 2) {
                        if d < 2 || d < self.d_range.0 || d > self.d_range.1 {
                            continue;
                        }
                        for kind in &self.kinds {
                            match kind {
                                KindTag::Paley => out.push(CaseParams::new(p, s, n, GraphKind::GeneralizedPaley { d })),
                                KindTag::Peisert if d % 2 == 0 && d >= 4 => {
                                    out.push(CaseParams::new(p, s, n, GraphKind::GeneralizedPeisert { d }))
                                }
                                KindTag::Peisert => {}
                            }
                        }
                    }
                }
                s += 1;
            }
        }
        out.sort_by(|a, b| (a.p, a.s, a.n, a.d(), a.kind.tag()).cmp(&(b.p, b.s, b.n, b.d(), b.kind.tag())));
        Ok(out)
    }
}

/// Runs every case of the sweep; reports are sorted by (p, s, n, d, kind).
pub fn sweep(config: &SweepConfig) -> Result<Vec<TheoremReport>> {
    let cases = config.cases()?;
    let opts = VerifyOptions {
        cap: config.cap,
        exact_budget: config.exact_budget,
    };

    // One table per field GF(p^(s n)), shared by all cases on that field.
    let mut by_field: BTreeMap<(u64, u32), Vec<CaseParams>> = BTreeMap::new();
    for c in cases {
        by_field.entry((c.p, c.full_degree())).or_default().push(c);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;

    let mut reports = pool.install(|| -> Result<Vec<TheoremReport>> {
        let mut all = Vec::new();
        for ((p, e), group) in by_field {
            let table = Arc::new(ff::build_field_with_cap(p, e, config.cap)?);
            let part: Result<Vec<TheoremReport>> = group.par_iter().map(|c| verify_case_on(&table, c, &opts)).collect();
            all.extend(part?);
        }
        Ok(all)
    })?;
    reports.sort_by(|a, b| {
        let ka = (a.case.p, a.case.s, a.case.n, a.case.d(), a.case.kind.tag());
        let kb = (b.case.p, b.case.s, b.case.n, b.case.d(), b.case.kind.tag());
        ka.cmp(&kb)
    });
    Ok(reports)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CounterexampleSearch {
    /// Maximal subfield cliques that are not maximal cliques, below threshold.
    pub counterexamples: Vec<TheoremReport>,
    /// The same phenomenon inside a hypothesis regime; should never occur.
    pub violations: Vec<TheoremReport>,
}

pub fn find_counterexamples(config: &SweepConfig) -> Result<CounterexampleSearch> {
    let mut out = CounterexampleSearch::default();
    for rep in sweep(config)? {
        match rep.verdict {
            Verdict::CounterexampleBelowThreshold => out.counterexamples.push(rep),
            Verdict::Violation => out.violations.push(rep),
            _ => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paley(p: u64, s: u32, n: u32, d: u64) -> CaseParams {
        CaseParams::new(p, s, n, GraphKind::GeneralizedPaley { d })
    }

    fn peisert(p: u64, s: u32, n: u32, d: u64) -> CaseParams {
        CaseParams::new(p, s, n, GraphKind::GeneralizedPeisert { d })
    }

    #[test]
    fn regimes() {
        assert_eq!(
            check_hypotheses(&peisert(3, 1, 4, 4)).unwrap(),
            HypothesisRegime::BelowThreshold
        );
        assert!((peisert_threshold(4, 4) - 25.94).abs() < 0.01);
        assert_eq!(
            check_hypotheses(&paley(5, 1, 2, 2)).unwrap(),
            HypothesisRegime::Theorem1
        );
        assert_eq!(
            check_hypotheses(&paley(3, 2, 3, 7)).unwrap(),
            HypothesisRegime::Theorem1
        );
        assert_eq!(
            check_hypotheses(&paley(3, 1, 4, 2)).unwrap(),
            HypothesisRegime::BelowThreshold
        );
        // Peisert below the theorem threshold but above the sharper ε* one:
        // n = 2, d = 4: theorem needs q > 2.88.., ε* = sin(π/4) needs q > 2.
        assert_eq!(
            check_hypotheses(&peisert(3, 1, 2, 4)).unwrap(),
            HypothesisRegime::Theorem2
        );
        let r = check_hypotheses(&peisert(7, 1, 3, 4)).unwrap();
        // 4 * 256 / (π^2 * 9) ≈ 11.53 > 7 while 4 / 0.5 = 8 > 7 too
        assert_eq!(r, HypothesisRegime::BelowThreshold);
        let r = check_hypotheses(&peisert(13, 1, 3, 4)).unwrap();
        assert_eq!(r, HypothesisRegime::Theorem2);
        let r = check_hypotheses(&peisert(9, 1, 3, 4));
        assert!(matches!(r.unwrap(), HypothesisRegime::Proposition { .. }));
    }

    #[test]
    fn verdict_table() {
        let below = HypothesisRegime::BelowThreshold;
        let t1 = HypothesisRegime::Theorem1;
        assert_eq!(classify(&t1, false, false), Verdict::Vacuous);
        assert_eq!(classify(&t1, true, true), Verdict::Consistent);
        assert_eq!(classify(&t1, true, false), Verdict::Violation);
        assert_eq!(classify(&below, true, false), Verdict::CounterexampleBelowThreshold);
        assert_eq!(classify(&below, true, true), Verdict::Consistent);
    }

    #[test]
    fn case_validation() {
        assert_eq!(paley(2, 1, 2, 3).validate(1 << 20), Err(Error::EvenP(2)));
        assert!(matches!(
            paley(13, 1, 1, 3).validate(1 << 20),
            Err(Error::InvalidCase(_))
        ));
        assert!(matches!(
            paley(13, 1, 2, 5).validate(1 << 20),
            Err(Error::DegenerateModulus { .. })
        ));
        assert_eq!(peisert(3, 1, 4, 2).validate(1 << 20), Err(Error::OddD(2)));
        assert!(matches!(
            paley(13, 1, 6, 3).validate(1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn conjecture_r_examples() {
        assert_eq!(conjecture_r(3, 4, 10).unwrap(), 2);
        assert_eq!(conjecture_r(13, 1, 3), Err(Error::NoQualifyingR { q: 13, d: 3 }));
        assert_eq!(conjecture_r(3, 2, 4).unwrap(), 1);
        assert_eq!(conjecture_r(5, 2, 3).unwrap(), 1);
    }

    #[test]
    fn gp9_paley_is_consistent() {
        let rep = verify_case(&paley(3, 1, 2, 2)).unwrap();
        assert!(rep.subfield_clique && rep.maximal_subfield_clique && rep.maximal_clique);
        assert_eq!(rep.verdict, Verdict::Consistent);
        assert!(rep.witnesses.is_empty());
    }

    #[test]
    fn gp81_peisert_counterexample() {
        let rep = verify_case(&peisert(3, 1, 4, 4)).unwrap();
        assert!(rep.maximal_subfield_clique && !rep.maximal_clique);
        assert_eq!(rep.extended_clique_size, Some(9));
        assert_eq!(rep.extension_method, Some(Strategy::Exact));
        assert_eq!(rep.verdict, Verdict::CounterexampleBelowThreshold);
    }

    #[test]
    fn vacuous_when_not_a_subfield_clique() {
        // GP(625, 6) with base F_25: 6 does not divide 26
        let rep = verify_case(&paley(5, 2, 2, 6)).unwrap();
        assert!(!rep.subfield_clique);
        assert_eq!(rep.verdict, Verdict::Vacuous);
    }

    #[test]
    fn empty_sweep() {
        let cfg = SweepConfig {
            max_order: 8,
            ..SweepConfig::default()
        };
        assert!(sweep(&cfg).unwrap().is_empty());
        let cfg = SweepConfig {
            workers: 0,
            ..SweepConfig::default()
        };
        assert!(sweep(&cfg).is_err());
    }

    #[test]
    fn sweep_case_enumeration() {
        let cfg = SweepConfig {
            max_order: 81,
            kinds: vec![KindTag::Peisert],
            ..SweepConfig::default()
        };
        let cases = cfg.cases().unwrap();
        assert!(cases.contains(&peisert(3, 1, 4, 4)));
        assert!(cases.iter().all(|c| c.validate(cfg.cap).is_ok()));
        let mut sorted = cases.clone();
        sorted.sort_by_key(|c| (c.p, c.s, c.n, c.d()));
        assert_eq!(sorted, cases);
    }
}
