//! Report assembly for the command-line front end.
//!
//! Each subcommand's output is a single JSON document carrying
//! [`SCHEMA_VERSION`]. Serialization is deterministic: struct fields have a
//! fixed order, maps are sorted, optional sections are omitted rather than
//! emitted as null, and timings appear only when requested, so a fixed
//! input and version produce byte-identical output.

use crate::arrangement::Arrangement;
use crate::budget;
use crate::error::{Error, Result};
use crate::fiber::{self, ReductionCertificate};
use crate::forms::{
    self, FormSystem, IndegBoundReport, TransversalityReport, TwoFormsReport,
    UnbalancedReport,
};
use crate::hilbert;
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::rees;
use crate::resolution;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

pub const SCHEMA_VERSION: u32 = 1;

/// Knobs shared by the report builders; the CLI fills these from flags.
#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    /// Largest reduction number to attempt; 0 means rank - 1 (at least 1).
    pub kmax: u32,
    /// Check the expectations the theorems pin down and record mismatches.
    pub expect_paper: bool,
    /// Attach wall-clock stage timings (breaks byte-identical output).
    pub timings: bool,
    pub timeout_gb: Option<Duration>,
    pub timeout_resolution: Option<Duration>,
    pub timeout_rees: Option<Duration>,
}

impl ReportOptions {
    fn kmax_for(&self, rank: usize) -> u32 {
        if self.kmax > 0 {
            self.kmax
        } else {
            (rank as u32).saturating_sub(1).max(1)
        }
    }
}

/// Which theorem-level expectations applied to an instance and which of
/// them failed; an empty `mismatches` list means everything checked out.
#[derive(Clone, Debug, Serialize)]
pub struct ExpectationOutcome {
    pub applicable: Vec<String>,
    pub mismatches: Vec<String>,
}

/// The full single-arrangement analysis: combinatorics, homological
/// invariants of the Jacobian ideal, the saturation comparison with the
/// fold-product ideal, and the reduction and Rees-algebra verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: serde_json::Value,
    pub rank: usize,
    pub num_forms: usize,
    pub genericity_level: usize,
    pub is_generic: bool,
    pub coloops: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub characteristic_warnings: Vec<String>,
    /// Whether the defining polynomial lies in its own Jacobian ideal
    /// (automatic away from characteristics dividing the form count).
    pub f_in_jacobian: bool,
    /// Initial degree of the Jacobian syzygy module.
    pub r_indeg: Option<u32>,
    pub regularity: i64,
    pub satiety: u32,
    pub depth: usize,
    pub projective_dimension: usize,
    /// Graded Betti numbers of the quotient, keyed "step,degree".
    pub betti: BTreeMap<String, usize>,
    /// Whether the saturation of the Jacobian ideal equals the fold ideal.
    pub saturation_equals_fold: bool,
    pub fiber_criterion: bool,
    pub reduction_found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionCertificate>,
    /// Linear type verdict; checked for rank at most 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear_type: Option<bool>,
    pub is_free: bool,
    /// Complete-intersection verdict for the Rees algebra; rank 3 only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rees_is_ci: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expectations: Option<ExpectationOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl AnalysisReport {
    pub fn expectation_mismatches(&self) -> &[String] {
        self.expectations.as_ref().map_or(&[], |e| &e.mismatches)
    }
}

fn timed<T>(
    timings: &mut Option<BTreeMap<String, u64>>,
    name: &str,
    limit: Option<Duration>,
    f: impl FnOnce() -> Result<T>,
) -> Result<T> {
    let start = Instant::now();
    let out = budget::with_stage(name, limit, f)?;
    if let Some(t) = timings.as_mut() {
        t.insert(format!("{name}_ms"), start.elapsed().as_millis() as u64);
    }
    Ok(out)
}

pub fn analyze(arr: &Arrangement, opts: &ReportOptions) -> Result<AnalysisReport> {
    let n = arr.rank();
    let m = arr.num_forms();
    let mut timings = opts.timings.then(BTreeMap::new);

    let mut characteristic_warnings = Vec::new();
    if arr.char_divides_m() {
        characteristic_warnings
            .push(format!("the characteristic divides the number of forms m = {m}"));
    }

    let j = arr.jacobian_ideal();
    let fold = arr.fold_ideal();

    let (f_in_jacobian, saturation_equals_fold, fiber_criterion, reduction) =
        timed(&mut timings, "gb", opts.timeout_gb, || {
            j.groebner_basis(MonomialOrder::DegRevLex)?;
            let f_in = j.contains_truncated(&arr.defining_polynomial())?;
            let (sat, _) = j.saturation(&Ideal::irrelevant(arr.ring()))?;
            let sat_eq = sat.equals(&fold)?;
            let fib = fiber::fiber_criterion(arr)?;
            let red = fiber::reduction_number(&j, &fold, opts.kmax_for(n))?;
            Ok((f_in, sat_eq, fib, red))
        })?;

    let (r_indeg, regularity, satiety, depth, pd, betti, is_free) =
        timed(&mut timings, "resolution", opts.timeout_resolution, || {
            let res = resolution::resolve_quotient(&j)?;
            let betti = res.betti_table();
            Ok((
                resolution::syzygy_initial_degree(&j)?,
                resolution::regularity_of_ideal(&j)?,
                resolution::satiety(&j)?,
                resolution::depth_of_quotient(&j)?,
                resolution::projective_dimension_of_quotient(&j)?,
                betti.to_string_keys(),
                rees::is_free(arr)?,
            ))
        })?;

    let (linear_type, rees_is_ci) = timed(&mut timings, "rees", opts.timeout_rees, || {
        let lt = if n <= 3 { Some(rees::is_linear_type(&j)?) } else { None };
        let ci = if n == 3 { Some(rees::rees_is_ci(arr)?) } else { None };
        Ok((lt, ci))
    })?;

    let mut report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input: arr.to_json(),
        rank: n,
        num_forms: m,
        genericity_level: arr.genericity_level(),
        is_generic: arr.is_generic(),
        coloops: arr.coloops(),
        components: arr.components(),
        characteristic_warnings,
        f_in_jacobian,
        r_indeg,
        regularity,
        satiety,
        depth,
        projective_dimension: pd,
        betti,
        saturation_equals_fold,
        fiber_criterion,
        reduction_found: reduction.is_some(),
        reduction,
        linear_type,
        is_free,
        rees_is_ci,
        expectations: None,
        timings,
    };
    if opts.expect_paper {
        report.expectations = Some(check_expectations(arr, &report));
    }
    Ok(report)
}

/// The invariants the theorems fix for recognized instance classes. Only
/// classes whose hypotheses hold are checked; anything else is left alone.
fn check_expectations(arr: &Arrangement, rep: &AnalysisReport) -> ExpectationOutcome {
    let n = rep.rank;
    let m = rep.num_forms;
    let mut applicable = Vec::new();
    let mut mismatches = Vec::new();
    let mut expect = |name: &str, ok: bool, got: String| {
        if !ok {
            mismatches.push(format!("{name}: {got}"));
        }
    };

    if !arr.char_divides_m() {
        applicable.push("euler-membership".into());
        expect(
            "euler-membership",
            rep.f_in_jacobian,
            "the defining polynomial is not in its Jacobian ideal".into(),
        );
    }

    if rep.is_generic && n >= 3 && m > n && *arr.field() == crate::field::FieldSpec::Rationals {
        applicable.push("generic-invariants".into());
        let r = (m - n + 1) as u32;
        let reg = (2 * m - n - 1) as i64;
        expect("generic r", rep.r_indeg == Some(r), format!("r_indeg {:?}, want {r}", rep.r_indeg));
        expect("generic reg", rep.regularity == reg, format!("reg {}, want {reg}", rep.regularity));
        expect(
            "generic satiety",
            i64::from(rep.satiety) == reg,
            format!("satiety {}, want {reg}", rep.satiety),
        );
        expect("generic depth", rep.depth == 0, format!("depth {}, want 0", rep.depth));
        expect("generic pd", rep.projective_dimension == n, format!("pd {}, want {n}", rep.projective_dimension));
        expect(
            "generic saturation",
            rep.saturation_equals_fold,
            "the saturation differs from the fold ideal".into(),
        );
        expect(
            "generic fiber criterion",
            rep.fiber_criterion,
            "the fiber criterion fails".into(),
        );
        expect(
            "generic reduction",
            rep.reduction.as_ref().is_some_and(|c| c.r <= (n as u32) - 1),
            format!("no reduction certificate with r <= {}", n - 1),
        );
        if let Some(lt) = rep.linear_type {
            expect("generic linear type", lt, "not of linear type".into());
        }
    }

    if n == 2 {
        applicable.push("rank-two-reduction".into());
        expect(
            "rank-two reduction",
            rep.reduction.as_ref().is_some_and(|c| c.r == 1),
            "reduction number is not 1".into(),
        );
    }

    if let (Some(free_wanted), Some(ci)) = (Some(rep.is_free), rep.rees_is_ci) {
        applicable.push("freeness-rees-equivalence".into());
        expect(
            "freeness-rees-equivalence",
            free_wanted == ci,
            format!("is_free {} but rees_is_ci {}", rep.is_free, ci),
        );
    }

    ExpectationOutcome { applicable, mismatches }
}

/// One instance's verdicts for the two conjectures.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRow {
    pub label: String,
    pub rank: usize,
    pub num_forms: usize,
    pub genericity_level: usize,
    pub char_divides_m: bool,
    pub fiber_criterion: bool,
    pub reduction_r: Option<u32>,
    /// The minimal-reduction conjecture: a certificate with r <= rank - 1.
    pub reduction_holds: bool,
    pub g_infinity: bool,
    /// The linear-type conjecture; checked for rank at most 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear_type: Option<bool>,
    /// "holds", "fails", or "expected-negative" (the characteristic
    /// divides m, where the conjectures are not asserted).
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub schema_version: u32,
    pub kmax: u32,
    pub instances: Vec<ConjectureRow>,
    pub reduction_pass: usize,
    pub reduction_total: usize,
    pub linear_type_pass: usize,
    pub linear_type_checked: usize,
    pub expected_negative: usize,
    pub all_hold: bool,
}

pub fn conjecture_row(
    label: String,
    arr: &Arrangement,
    opts: &ReportOptions,
) -> Result<ConjectureRow> {
    let n = arr.rank();
    let m = arr.num_forms();
    if n > 4 || m > 7 {
        return Err(Error::InvalidInput(format!(
            "instance {label} has rank {n} and {m} forms; the conjecture suite is \
             budgeted for rank <= 4 and m <= 7 (larger eliminations are not \
             desk-scale); trim the instance or test it in pieces"
        )));
    }
    let j = arr.jacobian_ideal();
    let fold = arr.fold_ideal();
    let kmax = opts.kmax_for(n);
    let (fiber_criterion, reduction, g_infinity) =
        budget::with_stage("gb", opts.timeout_gb, || {
            Ok((
                fiber::fiber_criterion(arr)?,
                fiber::reduction_number(&j, &fold, kmax)?,
                rees::g_infinity_check(&j)?,
            ))
        })?;
    let linear_type = budget::with_stage("rees", opts.timeout_rees, || {
        if n <= 3 { Ok(Some(rees::is_linear_type(&j)?)) } else { Ok(None) }
    })?;
    let reduction_r = reduction.as_ref().map(|c| c.r);
    let reduction_holds =
        reduction_r.is_some_and(|r| r <= (n as u32).saturating_sub(1).max(1));
    let char_divides_m = arr.char_divides_m();
    let verdict = if char_divides_m {
        "expected-negative"
    } else if reduction_holds && linear_type.unwrap_or(true) {
        "holds"
    } else {
        "fails"
    };
    Ok(ConjectureRow {
        label,
        rank: n,
        num_forms: m,
        genericity_level: arr.genericity_level(),
        char_divides_m,
        fiber_criterion,
        reduction_r,
        reduction_holds,
        g_infinity,
        linear_type,
        verdict: verdict.into(),
    })
}

pub fn conjecture_report(rows: Vec<ConjectureRow>, opts: &ReportOptions) -> ConjectureReport {
    let expected_negative = rows.iter().filter(|r| r.char_divides_m).count();
    let asserted: Vec<&ConjectureRow> =
        rows.iter().filter(|r| !r.char_divides_m).collect();
    let reduction_pass = asserted.iter().filter(|r| r.reduction_holds).count();
    let linear_type_checked =
        asserted.iter().filter(|r| r.linear_type.is_some()).count();
    let linear_type_pass =
        asserted.iter().filter(|r| r.linear_type == Some(true)).count();
    let all_hold = asserted.iter().all(|r| r.verdict == "holds");
    ConjectureReport {
        schema_version: SCHEMA_VERSION,
        kmax: opts.kmax,
        reduction_total: asserted.len(),
        reduction_pass,
        linear_type_pass,
        linear_type_checked,
        expected_negative,
        all_hold,
        instances: rows,
    }
}

/// The depth criterion outcome for one distinguished index, or the reason
/// it could not be evaluated (a smoothness precondition, typically).
#[derive(Clone, Debug, Serialize)]
pub struct UnbalancedEntry {
    pub j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<UnbalancedReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// The higher-degree-forms suite: near transversality, the two-forms
/// results when the system is a pair, the syzygy initial-degree bound, and
/// the unbalanced-degree depth criterion for every distinguished index.
#[derive(Clone, Debug, Serialize)]
pub struct FormsReport {
    pub schema_version: u32,
    pub input: serde_json::Value,
    pub degrees: Vec<u32>,
    pub characteristic_warnings: Vec<String>,
    pub transversality: TransversalityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_forms: Option<TwoFormsReport>,
    pub indeg_bound: IndegBoundReport,
    pub unbalanced: Vec<UnbalancedEntry>,
}

pub fn forms_report(fs: &FormSystem, opts: &ReportOptions) -> Result<FormsReport> {
    let field = fs.ring().field();
    let m = fs.num_forms() as u64;
    let mut characteristic_warnings = Vec::new();
    if field.char_divides(m) {
        characteristic_warnings
            .push(format!("the characteristic divides the number of forms m = {m}"));
    }
    let total: u32 = fs.degrees().iter().sum();
    for (label, k) in fs
        .degrees()
        .iter()
        .enumerate()
        .map(|(i, &d)| (format!("deg f_{i}"), u64::from(d)))
        .chain(std::iter::once(("the total degree".to_string(), u64::from(total))))
    {
        if field.char_divides(k) {
            characteristic_warnings.push(format!("the characteristic divides {label} = {k}"));
        }
    }

    let transversality = budget::with_stage("gb", opts.timeout_gb, || {
        forms::near_transversality(fs)
    })?;
    let two_forms = if fs.num_forms() == 2 {
        let (f, g) = if fs.degrees()[0] <= fs.degrees()[1] {
            (fs.form(0), fs.form(1))
        } else {
            (fs.form(1), fs.form(0))
        };
        Some(budget::with_stage("resolution", opts.timeout_resolution, || {
            forms::two_forms_suite(f, g)
        })?)
    } else {
        None
    };
    let indeg_bound = budget::with_stage("resolution", opts.timeout_resolution, || {
        forms::indeg_lower_bound_check(fs)
    })?;
    let mut unbalanced = Vec::new();
    for j in 0..fs.num_forms() {
        let entry = budget::with_stage("resolution", opts.timeout_resolution, || {
            forms::unbalanced_depth_check(fs, j)
        });
        unbalanced.push(match entry {
            Ok(report) => UnbalancedEntry { j, report: Some(report), error: None },
            Err(Error::Precondition(msg)) => {
                UnbalancedEntry { j, report: None, error: Some(msg) }
            }
            Err(e) => return Err(e),
        });
    }
    Ok(FormsReport {
        schema_version: SCHEMA_VERSION,
        input: fs.to_json(),
        degrees: fs.degrees().to_vec(),
        characteristic_warnings,
        transversality,
        two_forms,
        indeg_bound,
        unbalanced,
    })
}

/// The debug view: a reduced Groebner basis of the Jacobian ideal.
#[derive(Clone, Debug, Serialize)]
pub struct GbReport {
    pub schema_version: u32,
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_at: Option<u32>,
    pub count: usize,
    pub basis: Vec<String>,
}

pub fn gb_report(
    ideal: &Ideal,
    ord: MonomialOrder,
    max_degree: Option<u32>,
    opts: &ReportOptions,
) -> Result<GbReport> {
    let basis = budget::with_stage("gb", opts.timeout_gb, || match max_degree {
        Some(cap) => ideal.truncated_basis(ord, cap),
        None => ideal.groebner_basis(ord),
    })?;
    Ok(GbReport {
        schema_version: SCHEMA_VERSION,
        order: format!("{ord:?}"),
        truncated_at: max_degree,
        count: basis.len(),
        basis: basis.iter().map(|p| p.to_string()).collect(),
    })
}

/// Ideal-level statistics shared by the analyze pipeline and the graded
/// piece checks: exact Hilbert data of the quotient.
pub fn hilbert_summary(ideal: &Ideal) -> Result<hilbert::HilbertData> {
    hilbert::hilbert_data(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::random_generic;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;
    use crate::poly::PolynomialRing;

    fn opts() -> ReportOptions {
        ReportOptions::default()
    }

    #[test]
    fn analyze_generic_three_five() {
        let arr = random_generic(FieldSpec::Rationals, 3, 5, 11, 9).unwrap();
        let mut o = opts();
        o.expect_paper = true;
        let rep = analyze(&arr, &o).unwrap();
        assert_eq!(rep.r_indeg, Some(3));
        assert_eq!(rep.regularity, 6);
        assert_eq!(rep.satiety, 6);
        assert_eq!(rep.depth, 0);
        assert_eq!(rep.projective_dimension, 3);
        assert!(rep.saturation_equals_fold);
        assert!(rep.fiber_criterion);
        assert!(rep.reduction_found);
        assert_eq!(rep.linear_type, Some(true));
        assert!(!rep.is_free);
        assert_eq!(rep.rees_is_ci, Some(false));
        assert!(rep.expectation_mismatches().is_empty());
        let text = serde_json::to_string(&rep).unwrap();
        assert!(text.contains("\"schema_version\":1"));
        assert!(!text.contains("timings"));
    }

    #[test]
    fn analyze_is_deterministic() {
        let arr = random_generic(FieldSpec::Rationals, 3, 4, 7, 9).unwrap();
        let a = serde_json::to_string(&analyze(&arr, &opts()).unwrap()).unwrap();
        let b = serde_json::to_string(&analyze(&arr, &opts()).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn analyze_free_arrangement_flags() {
        let ring = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let forms: Vec<_> = ["x", "y", "x+y", "z"]
            .iter()
            .map(|s| parse_polynomial(&ring, s).unwrap())
            .collect();
        let arr = Arrangement::from_forms(&ring, &forms).unwrap();
        let mut o = opts();
        o.expect_paper = true;
        let rep = analyze(&arr, &o).unwrap();
        assert!(rep.is_free);
        assert_eq!(rep.rees_is_ci, Some(true));
        assert_eq!(rep.r_indeg, Some(1));
        assert!(rep.expectation_mismatches().is_empty());
    }

    #[test]
    fn conjecture_rows_aggregate() {
        let o = opts();
        let mut rows = Vec::new();
        for seed in [3, 5] {
            let arr = random_generic(FieldSpec::Rationals, 3, 5, seed, 9).unwrap();
            rows.push(conjecture_row(format!("s{seed}"), &arr, &o).unwrap());
        }
        let ring = PolynomialRing::xyzw(FieldSpec::prime(2).unwrap(), 3);
        let forms: Vec<_> = ["x", "y", "z", "x+y+z"]
            .iter()
            .map(|s| parse_polynomial(&ring, s).unwrap())
            .collect();
        let arr = Arrangement::from_forms(&ring, &forms).unwrap();
        rows.push(conjecture_row("char2".into(), &arr, &o).unwrap());
        let rep = conjecture_report(rows, &o);
        assert_eq!(rep.reduction_total, 2);
        assert_eq!(rep.reduction_pass, 2);
        assert_eq!(rep.expected_negative, 1);
        assert!(rep.all_hold);
        assert_eq!(rep.instances[2].verdict, "expected-negative");
        assert_eq!(rep.instances[2].reduction_r, None);
    }

    #[test]
    fn forms_report_on_fermat_pair() {
        let ring = PolynomialRing::xyzw(FieldSpec::Rationals, 3);
        let f = parse_polynomial(&ring, "x^2+y^2+z^2").unwrap();
        let g = parse_polynomial(&ring, "x^3+y^3+z^3").unwrap();
        let fs = FormSystem::new(&ring, vec![f, g]).unwrap();
        let rep = forms_report(&fs, &opts()).unwrap();
        assert!(rep.transversality.nearly_transversal);
        let two = rep.two_forms.as_ref().unwrap();
        assert!(two.g_squared_in_saturation);
        assert!(two.depth_is_zero);
        assert!(rep.indeg_bound.holds);
        assert_eq!(rep.unbalanced.len(), 2);
    }

    #[test]
    fn timings_only_on_request() {
        let arr = random_generic(FieldSpec::Rationals, 3, 4, 7, 9).unwrap();
        let mut o = opts();
        o.timings = true;
        let rep = analyze(&arr, &o).unwrap();
        let t = rep.timings.as_ref().unwrap();
        assert!(t.contains_key("gb_ms"));
        assert!(t.contains_key("resolution_ms"));
        assert!(t.contains_key("rees_ms"));
    }
}
