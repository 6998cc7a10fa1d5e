//! Theorems about a double complex turned into mechanical checks.
//!
//! Every check returns a [`CheckReport`] whose witnesses are exact integers
//! (or flags), keyed by name. A `fails` verdict on a valid complex means one
//! of the engines disagrees with a theorem.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Bidegree};
use crate::cohomology::{all_tables, AllTables};
use crate::error::Result;
use crate::exactla::{Matrix, Scalar};
use crate::zigzag::{decompose, Decomposition};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Check {
    Frolicher,
    NonDdbarDegrees,
    UpperBound,
    CharMinus,
    DdbarLemma,
    SchweitzerPairing,
    Duality,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Frolicher,
        Check::NonDdbarDegrees,
        Check::UpperBound,
        Check::CharMinus,
        Check::DdbarLemma,
        Check::SchweitzerPairing,
        Check::Duality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Frolicher => "frolicher",
            Check::NonDdbarDegrees => "nonDdbarDegrees",
            Check::UpperBound => "upperBound",
            Check::CharMinus => "charMinus",
            Check::DdbarLemma => "ddbarLemma",
            Check::SchweitzerPairing => "schweitzerPairing",
            Check::Duality => "duality",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "notApplicable",
        })
    }
}

/// A named exact value attached to a verdict. Series are keyed by degree
/// (`"k"`) or bidegree (`"p,q"`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Bool(bool),
    Int(i64),
    Text(String),
    Series(BTreeMap<String, i64>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Bool(b) => write!(f, "{b}"),
            Witness::Int(i) => write!(f, "{i}"),
            Witness::Text(s) => f.write_str(s),
            Witness::Series(s) => {
                let items: Vec<String> = s.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                write!(f, "{{{}}}", items.join(" "))
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: Check,
    pub verdict: Verdict,
    pub witnesses: BTreeMap<String, Witness>,
}

impl CheckReport {
    fn new(check: Check) -> Self {
        CheckReport { check, verdict: Verdict::Holds, witnesses: BTreeMap::new() }
    }

    fn with(mut self, name: &str, w: Witness) -> Self {
        self.witnesses.insert(name.to_string(), w);
        self
    }

    fn not_applicable(check: Check, reason: &str) -> Self {
        CheckReport::new(check).verdict(Verdict::NotApplicable).with("reason", Witness::Text(reason.into()))
    }

    fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.witnesses.get(name)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        match self.witnesses.get(name) {
            Some(Witness::Bool(b)) => Some(*b),
            _ => None,
        }
    }

    pub fn int(&self, name: &str) -> Option<i64> {
        match self.witnesses.get(name) {
            Some(Witness::Int(i)) => Some(*i),
            _ => None,
        }
    }

    /// Entry `key` of the series `name`.
    pub fn series(&self, name: &str, key: &str) -> Option<i64> {
        match self.witnesses.get(name) {
            Some(Witness::Series(s)) => s.get(key).copied(),
            _ => None,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<18} {:<14}", self.check.name(), self.verdict.to_string())?;
        for (name, w) in &self.witnesses {
            write!(f, " {name}={w}")?;
        }
        Ok(())
    }
}

fn series<K: ToString>(values: impl IntoIterator<Item = (K, i64)>) -> Witness {
    Witness::Series(values.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// Tables and decomposition of one complex, shared by all checks.
pub struct Analysis<'a> {
    complex: &'a Bicomplex,
    tables: AllTables,
    decomposition: Decomposition,
}

impl<'a> Analysis<'a> {
    pub fn new(k: &'a Bicomplex) -> Result<Self> {
        let tables = all_tables(k)?;
        let decomposition = decompose(k)?;
        Ok(Analysis { complex: k, tables, decomposition })
    }

    pub fn tables(&self) -> &AllTables {
        &self.tables
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    fn degrees(&self) -> Vec<i32> {
        match self.complex.total_degrees() {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => Vec::new(),
        }
    }

    fn h(&self, k: i32) -> (i64, i64, i64, i64) {
        let t = &self.tables;
        (
            t.dolbeault.total_degree(k) as i64,
            t.bott_chern.total_degree(k) as i64,
            t.aeppli.total_degree(k) as i64,
            t.betti(k) as i64,
        )
    }

    fn deltas(&self) -> BTreeMap<i32, i64> {
        self.degrees()
            .into_iter()
            .map(|k| {
                let (_, bc, a, b) = self.h(k);
                (k, bc + a - 2 * b)
            })
            .collect()
    }

    pub fn run(&self, check: Check) -> CheckReport {
        match check {
            Check::Frolicher => self.frolicher(),
            Check::NonDdbarDegrees => self.non_ddbar_degrees(),
            Check::UpperBound => self.upper_bound(),
            Check::CharMinus => self.char_minus(),
            Check::DdbarLemma => self.ddbar_lemma(),
            Check::SchweitzerPairing => self.schweitzer_pairing(),
            Check::Duality => self.duality(),
        }
    }

    pub fn run_all(&self) -> Vec<CheckReport> {
        Check::ALL.iter().map(|&c| self.run(c)).collect()
    }

    /// `h^k_∂̄ ≥ b_k` for every `k`.
    pub fn frolicher(&self) -> CheckReport {
        let gaps: BTreeMap<i32, i64> = self
            .degrees()
            .into_iter()
            .map(|k| {
                let (dol, _, _, b) = self.h(k);
                (k, dol - b)
            })
            .collect();
        let mut report = CheckReport::new(Check::Frolicher).with("gap", series(gaps.clone()));
        if let Some((k, _)) = gaps.iter().find(|(_, g)| **g < 0) {
            report = report.verdict(Verdict::Fails).with("failingDegree", Witness::Int(*k as i64));
        }
        report.with("pageOneDegenerates", Witness::Bool(self.tables.frolicher.stabilization() == 1))
    }

    /// `Δ^k = h^k_BC + h^k_A − 2 b_k ≥ 0`.
    pub fn non_ddbar_degrees(&self) -> CheckReport {
        let deltas = self.deltas();
        let sum: i64 = deltas.values().sum();
        let mut report = CheckReport::new(Check::NonDdbarDegrees)
            .with("Delta", series(deltas.clone()))
            .with("sum", Witness::Int(sum))
            .with("sumZero", Witness::Bool(sum == 0));
        if let Some((k, _)) = deltas.iter().find(|(_, d)| **d < 0) {
            report = report.verdict(Verdict::Fails).with("failingDegree", Witness::Int(*k as i64));
        }
        report
    }

    /// `h^k_A ≤ m_k (h^k_∂̄ + h^{k+1}_∂̄)` and `h^k_BC ≤ m_k (h^k_∂̄ + h^{k−1}_∂̄)`
    /// with `m_k = min(k+1, 2n−k+1)`, on complexes with declared `n`,
    /// support in `[0,n]²` and a real structure.
    pub fn upper_bound(&self) -> CheckReport {
        let k = self.complex;
        let Some(n) = k.complex_dim() else {
            return CheckReport::not_applicable(Check::UpperBound, "no declared n");
        };
        if !k.has_manifold_support() {
            return CheckReport::not_applicable(Check::UpperBound, "support leaves [0,n]^2");
        }
        if !matches!(k.check_real_structure(), Ok(true)) {
            return CheckReport::not_applicable(Check::UpperBound, "no real structure");
        }
        let n = n as i32;
        let mut aeppli = BTreeMap::new();
        let mut bott_chern = BTreeMap::new();
        let mut failing = None;
        for deg in 0..=2 * n {
            let m = (deg + 1).min(2 * n - deg + 1) as i64;
            let (dol, bc, a, _) = self.h(deg);
            let slack_a = m * (dol + self.h(deg + 1).0) - a;
            let slack_bc = m * (dol + self.h(deg - 1).0) - bc;
            if (slack_a < 0 || slack_bc < 0) && failing.is_none() {
                failing = Some(deg);
            }
            aeppli.insert(deg, slack_a);
            bott_chern.insert(deg, slack_bc);
        }
        let mut report = CheckReport::new(Check::UpperBound)
            .with("slackAeppli", series(aeppli))
            .with("slackBottChern", series(bott_chern));
        if let Some(deg) = failing {
            report = report.verdict(Verdict::Fails).with("failingDegree", Witness::Int(deg as i64));
        }
        report
    }

    /// The three ∂∂̄-Lemma predicates: injectivity of `H_BC → H_A`, squares
    /// and dots only, and `ΣΔ^k = 0`.
    fn lemma_predicates(&self) -> (bool, bool, bool, Vec<Bidegree>) {
        let bc = self.tables.bott_chern.dims();
        let failing = self.tables.maps.non_injective_bc_to_aeppli(bc);
        let injective = failing.is_empty();
        let squares_and_dots = self.decomposition.squares_and_dots_only();
        let delta_zero = self.deltas().values().sum::<i64>() == 0;
        (injective, squares_and_dots, delta_zero, failing)
    }

    /// `Σ_k |h^k_BC − h^k_A| = 0` iff the ∂∂̄-Lemma holds.
    pub fn char_minus(&self) -> CheckReport {
        let diffs: BTreeMap<i32, i64> = self
            .degrees()
            .into_iter()
            .map(|k| {
                let (_, bc, a, _) = self.h(k);
                (k, bc - a)
            })
            .collect();
        let abs_sum: i64 = diffs.values().map(|d| d.abs()).sum();
        let (lemma, _, _, failing) = self.lemma_predicates();
        let mut report = CheckReport::new(Check::CharMinus)
            .with("difference", series(diffs))
            .with("absSum", Witness::Int(abs_sum))
            .with("sumZero", Witness::Bool(abs_sum == 0))
            .with("lemma", Witness::Bool(lemma));
        if (abs_sum == 0) != lemma {
            report = report.verdict(Verdict::Fails);
            if let Some(b) = failing.first() {
                report = report.with("failingBidegree", Witness::Text(b.to_string()));
            }
        }
        report
    }

    pub fn ddbar_lemma(&self) -> CheckReport {
        let (a, b, c, failing) = self.lemma_predicates();
        let mut report = CheckReport::new(Check::DdbarLemma)
            .with("injective", Witness::Bool(a))
            .with("squaresAndDots", Witness::Bool(b))
            .with("deltaZero", Witness::Bool(c));
        if let Some(first) = failing.first() {
            report = report.with("failingBidegree", Witness::Text(first.to_string()));
        }
        if a == b && b == c {
            report.with("lemma", Witness::Bool(a))
        } else {
            report.verdict(Verdict::Fails)
        }
    }

    /// The ∂∂̄-Lemma status, when the three predicates agree.
    pub fn lemma(&self) -> Option<bool> {
        let (a, b, c, _) = self.lemma_predicates();
        (a == b && b == c).then_some(a)
    }

    /// Gram matrices of `([α],[β]) ↦ ∫ α∧β` on Bott-Chern classes of
    /// complementary bidegrees; non-degeneracy must imply the ∂∂̄-Lemma.
    pub fn schweitzer_pairing(&self) -> CheckReport {
        let k = self.complex;
        let Some(product) = k.product() else {
            return CheckReport::not_applicable(Check::SchweitzerPairing, "no product structure");
        };
        let n = product.complex_dim() as i32;
        let bc = &self.tables.bott_chern;
        let reps = |b: Bidegree| -> Vec<Vec<Scalar>> { bc.representatives(b).map_or(Vec::new(), Matrix::columns) };
        let pair = |b1: Bidegree, x: &[Scalar], b2: Bidegree, y: &[Scalar]| -> Scalar {
            product.integrate(b1.shift(b2.p, b2.q), &product.multiply(b1, x, b2, y))
        };

        for &b in bc.dims().keys() {
            let dual = Bidegree::new(n - b.p - 1, n - b.q - 1);
            let exact: Vec<Vec<Scalar>> = (0..k.dim(dual))
                .map(|i| {
                    let mut e = vec![Scalar::zero(); k.dim(dual)];
                    e[i] = Scalar::one();
                    k.del_delbar(dual).mul_vec(&e)
                })
                .collect();
            let target = dual.shift(1, 1);
            for alpha in reps(b) {
                if exact.iter().any(|e| !pair(b, &alpha, target, e).is_zero()) {
                    return CheckReport::not_applicable(Check::SchweitzerPairing, "pairing not well defined")
                        .with("illDefinedAt", Witness::Text(b.to_string()));
                }
            }
        }

        let mut ranks = BTreeMap::new();
        let mut degenerate = None;
        for p in 0..=n {
            for q in 0..=n {
                let b = Bidegree::new(p, q);
                let dual = b.dual(n as usize);
                let (left, right) = (reps(b), reps(dual));
                let gram = Matrix::from_fn(left.len(), right.len(), |i, j| pair(b, &left[i], dual, &right[j]));
                let rank = gram.rank();
                if left.len() != right.len() || rank != left.len() {
                    degenerate.get_or_insert(b);
                }
                if !left.is_empty() || !right.is_empty() {
                    ranks.insert(b, rank as i64);
                }
            }
        }
        let nondegenerate = degenerate.is_none();
        let lemma = self.lemma();
        let mut report = CheckReport::new(Check::SchweitzerPairing)
            .with("gramRank", series(ranks))
            .with("nondegenerate", Witness::Bool(nondegenerate));
        if let Some(b) = degenerate {
            report = report.with("degenerateAt", Witness::Text(b.to_string()));
        }
        if let Some(l) = lemma {
            report = report.with("lemma", Witness::Bool(l));
        }
        if nondegenerate && lemma != Some(true) {
            report = report.verdict(Verdict::Fails);
        }
        report
    }

    /// Poincaré, Serre and Schweitzer symmetries when a product is present,
    /// conjugation symmetries when a valid real structure is.
    pub fn duality(&self) -> CheckReport {
        let k = self.complex;
        let t = &self.tables;
        let paired = k.product().map(|p| p.complex_dim());
        let real = matches!(k.check_real_structure(), Ok(true));
        if paired.is_none() && !real {
            return CheckReport::not_applicable(Check::Duality, "no product or real structure");
        }
        let mut report = CheckReport::new(Check::Duality);
        let mut failing: Option<String> = None;
        let mut row = |report: CheckReport, name: &str, ok: Option<String>| -> CheckReport {
            if let Some(at) = &ok {
                failing.get_or_insert_with(|| format!("{name} at {at}"));
            }
            report.with(name, Witness::Bool(ok.is_none()))
        };
        let support: Vec<Bidegree> = k.support().collect();
        let first_bad = |f: &dyn Fn(Bidegree) -> bool| support.iter().find(|&&b| !f(b)).map(|b| b.to_string());
        if let Some(n) = paired {
            let nn = 2 * n as i32;
            let betti = (0..=nn).find(|&d| t.betti(d) != t.betti(nn - d)).map(|d| d.to_string());
            report = row(report, "betti", betti);
            let serre = first_bad(&|b| t.dolbeault.dim(b) == t.dolbeault.dim(b.dual(n)));
            report = row(report, "serre", serre);
            let schweitzer = first_bad(&|b| {
                t.bott_chern.dim(b) == t.aeppli.dim(b.dual(n)) && t.aeppli.dim(b) == t.bott_chern.dim(b.dual(n))
            });
            report = row(report, "schweitzer", schweitzer);
        }
        if real {
            let dolbeault = first_bad(&|b| t.dolbeault.dim(b) == t.conj_dolbeault.dim(b.mirror()));
            report = row(report, "conjugateDolbeault", dolbeault);
            let bc = first_bad(&|b| t.bott_chern.dim(b) == t.bott_chern.dim(b.mirror()));
            report = row(report, "conjugateBottChern", bc);
            let a = first_bad(&|b| t.aeppli.dim(b) == t.aeppli.dim(b.mirror()));
            report = row(report, "conjugateAeppli", a);
        }
        if let Some(f) = failing {
            report = report.verdict(Verdict::Fails).with("failing", Witness::Text(f));
        }
        report
    }
}

pub fn frolicher_check(k: &Bicomplex) -> Result<CheckReport> {
    Ok(Analysis::new(k)?.frolicher())
}

pub fn non_ddbar_degrees(k: &Bicomplex) -> Result<CheckReport> {
    Ok(Analysis::new(k)?.non_ddbar_degrees())
}

pub fn upper_bound_check(k: &Bicomplex) -> Result<CheckReport> {
    Ok(Analysis::new(k)?.upper_bound())
}

pub fn char_minus_check(k: &Bicomplex) -> Result<CheckReport> {
    Ok(Analysis::new(k)?.char_minus())
}

pub fn ddbar_lemma_check(k: &Bicomplex) -> Result<CheckReport> {
    Ok(Analysis::new(k)?.ddbar_lemma())
}

pub fn schweitzer_pairing_check(k: &Bicomplex) -> Result<CheckReport> {
    Ok(Analysis::new(k)?.schweitzer_pairing())
}

pub fn duality_check(k: &Bicomplex) -> Result<CheckReport> {
    Ok(Analysis::new(k)?.duality())
}

/// Every check, sharing one computation of the tables and decomposition.
pub fn run_all_checks(k: &Bicomplex) -> Result<Vec<CheckReport>> {
    Ok(Analysis::new(k)?.run_all())
}
