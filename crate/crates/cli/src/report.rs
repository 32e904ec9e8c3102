//! Report sections. Everything here is deterministic: no timings, no
//! worker counts, stable ordering.

use num_bigint::BigInt;
use num_rational::BigRational;
use quadric_moduli::algebra::Bidegree;
use quadric_moduli::betti::poincare_moduli;
use quadric_moduli::goldens::Goldens;
use quadric_moduli::hilbert::{
    euler_char, genus, hilb_combination, hilb_resolution, moduli_polynomial, BiPoly, ResolutionSpec,
};
use quadric_moduli::locus::{sweep, LocusRun, LocusSummary, SweepOptions};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct BettiSection {
    pub polynomial: String,
    pub coeffs: Vec<i64>,
    pub euler: i64,
    pub degree: usize,
    pub ok: bool,
}

pub fn betti_section(goldens: &Goldens) -> anyhow::Result<BettiSection> {
    let p = poincare_moduli();
    let coeffs: Vec<i64> = p.coeffs_descending().iter().map(small).collect();
    let euler = small(&p.eval_at(1));
    let degree = p.degree().unwrap_or(0);
    let ok = coeffs == goldens.poincare_coeffs()?
        && euler == goldens.euler()?
        && degree as i64 == goldens.integer("poincare_degree")?;
    Ok(BettiSection {
        polynomial: p.to_string(),
        coeffs,
        euler,
        degree,
        ok,
    })
}

fn small(n: &BigInt) -> i64 {
    i64::try_from(n).expect("fits in 64 bits")
}

/// Integers as JSON numbers, anything else as `"n/d"`.
pub fn rational_json(q: &BigRational) -> Value {
    match i64::try_from(q.to_integer()) {
        Ok(n) if q.is_integer() => Value::from(n),
        _ => Value::from(q.to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertResult {
    pub polynomial: String,
    pub chi: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<Value>,
}

impl HilbertResult {
    pub fn of(spec: &ResolutionSpec) -> Self {
        Self::from_poly(&hilb_resolution(spec), spec.curve_bidegree().is_some())
    }

    fn from_poly(p: &BiPoly, curve: bool) -> Self {
        HilbertResult {
            polynomial: p.to_string(),
            chi: rational_json(&euler_char(p)),
            genus: curve.then(|| rational_json(&genus(p))),
        }
    }

    pub fn line(&self) -> String {
        let mut s = format!("{}, chi={}", self.polynomial, self.chi);
        if let Some(g) = &self.genus {
            s.push_str(&format!(", genus={g}"));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertCheck {
    pub name: String,
    #[serde(flatten)]
    pub result: HilbertResult,
    pub expected: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertSection {
    pub checks: Vec<HilbertCheck>,
    pub ok: bool,
}

fn check(name: &str, result: HilbertResult, expected: &str) -> HilbertCheck {
    HilbertCheck {
        name: name.to_string(),
        ok: result.polynomial == expected,
        result,
        expected: expected.to_string(),
    }
}

pub fn hilbert_section(goldens: &Goldens) -> HilbertSection {
    let moduli = goldens
        .get("moduli_hilbert_polynomial")
        .and_then(|e| e.value.as_str())
        .unwrap_or("3m+2n+2")
        .to_string();
    let mut checks = vec![
        check(
            "open_stratum",
            HilbertResult::of(&ResolutionSpec::open_stratum()),
            &moduli,
        ),
        check(
            "divisor_stratum",
            HilbertResult::of(&ResolutionSpec::divisor_stratum()),
            &moduli,
        ),
    ];
    // Curves of bidegree (1, r): r m + n + 1.
    for r in 0..=4 {
        let expected = match r {
            0 => "n+1".to_string(),
            1 => "m+n+1".to_string(),
            r => format!("{r}m+n+1"),
        };
        let spec = ResolutionSpec::structure_sheaf(1, r);
        checks.push(check(&format!("curve_1_{r}"), HilbertResult::of(&spec), &expected));
    }
    let combo = hilb_combination(
        &[int(3), int(-2)],
        &[Bidegree::new(-1, -1), Bidegree::new(0, 0)],
        &moduli_polynomial(),
    )
    .expect("matching lengths");
    checks.push(check(
        "kernel_combination",
        HilbertResult::from_poly(&combo, false),
        "mn+m",
    ));
    let curve = HilbertResult::of(&ResolutionSpec::structure_sheaf(2, 3));
    let genus_ok = curve.genus == goldens.get("curve_genus").map(|e| e.value.clone());
    let mut c = check("curve_2_3", curve, "3m+2n-1");
    c.ok &= genus_ok && c.result.chi == -1;
    checks.push(c);
    let ok = checks.iter().all(|c| c.ok);
    HilbertSection { checks, ok }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, Serialize)]
pub struct RawOracle {
    pub planes: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusSection {
    #[serde(flatten)]
    pub summary: LocusSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_oracle: Option<RawOracle>,
    pub fiber_failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub golden_x_count: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub golden_moduli_count: Option<i64>,
    pub passed: bool,
}

pub fn locus_section(run: &LocusRun, goldens: &Goldens, full_oracle: bool) -> LocusSection {
    let s = &run.summary;
    let raw_oracle = full_oracle.then(|| RawOracle {
        planes: run.fibers.len(),
        passed: run
            .fibers
            .iter()
            .filter(|r| r.raw_count.is_some() && r.raw_count == r.raw_expected)
            .count(),
    });
    let golden_x_count = goldens.x_count(s.prime);
    let golden_moduli_count = goldens.moduli_count(s.prime);
    let passed = s.ok
        && raw_oracle.as_ref().is_none_or(|r| r.passed == r.planes)
        && golden_x_count.is_none_or(|g| g == s.x_count as i64)
        && golden_moduli_count.is_none_or(|g| g == s.moduli_count as i64);
    LocusSection {
        summary: s.clone(),
        raw_oracle,
        fiber_failures: run.fibers.iter().filter(|r| !r.passed()).count(),
        golden_x_count,
        golden_moduli_count,
        passed,
    }
}

pub fn run_locus(p: u32, opts: &SweepOptions) -> anyhow::Result<LocusRun> {
    Ok(sweep(p, opts)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub betti: BettiSection,
    pub hilbert: HilbertSection,
    pub locus: Vec<LocusSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub verdict: bool,
}

impl Report {
    pub fn new(
        betti: BettiSection,
        hilbert: HilbertSection,
        locus: Vec<LocusSection>,
        failure: Option<String>,
    ) -> Self {
        let verdict = failure.is_none() && betti.ok && hilbert.ok && locus.iter().all(|l| l.passed);
        Report {
            betti,
            hilbert,
            locus,
            failure,
            verdict,
        }
    }
}
