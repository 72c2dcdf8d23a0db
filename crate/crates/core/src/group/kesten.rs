use bnum::BUint;
use num_complex::Complex64;
use serde::Serialize;

use super::{CayleyBall, DiscreteGroup};
use crate::error::{Error, Result};
use crate::report::{opt_sig17, sig17, tsv_lines};
use crate::spectral::{lanczos_top, LanczosConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lanczos,
    Walks,
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lanczos" => Ok(Method::Lanczos),
            "walks" => Ok(Method::Walks),
            "both" => Ok(Method::Both),
            other => Err(Error::Parse(format!("unknown method {other:?}; expected lanczos, walks or both"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "co-amenable")]
    CoAmenable,
    #[serde(rename = "not co-amenable")]
    NotCoAmenable,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::CoAmenable => "co-amenable",
            Verdict::NotCoAmenable => "not co-amenable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct KestenOptions {
    pub radius: usize,
    pub method: Method,
    /// Slack for `estimate ≥ N − tol`.
    pub tol: f64,
    pub ball_cap: usize,
    /// Walk length `2n`; defaults to `8R` (at least 2).
    pub walk_length: Option<usize>,
    pub max_walk_length: usize,
    pub lanczos: LanczosConfig,
    /// Certified upper bound for the reduced norm of `Σ_s λ(s)`.
    pub oracle_norm: Option<f64>,
}

impl KestenOptions {
    pub fn new(radius: usize, method: Method) -> Self {
        Self {
            radius,
            method,
            tol: 1e-3,
            ball_cap: CayleyBall::<()>::DEFAULT_CAP,
            walk_length: None,
            max_walk_length: 4096,
            lanczos: LanczosConfig::default(),
            oracle_norm: None,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_oracle(mut self, norm: Option<f64>) -> Self {
        self.oracle_norm = norm;
        self
    }

    fn resolved_walk_length(&self) -> usize {
        self.walk_length.unwrap_or((8 * self.radius).max(2))
    }
}

/// Both estimates are lower bounds for the reduced norm of `Σ_s λ(s)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KestenReport {
    pub group: String,
    pub n_generators: usize,
    pub radius: usize,
    pub ball_size: usize,
    pub method: Method,
    #[serde(serialize_with = "opt_sig17")]
    pub top_eigenvalue_estimate: Option<f64>,
    pub lanczos_iterations: Option<usize>,
    #[serde(serialize_with = "opt_sig17")]
    pub walk_estimate: Option<f64>,
    pub walk_length: Option<usize>,
    /// Exact closed-walk count `w(2n)` in decimal.
    pub closed_walks: Option<String>,
    pub verdict: Verdict,
    pub oracle_used: bool,
    #[serde(serialize_with = "opt_sig17")]
    pub oracle_norm: Option<f64>,
    #[serde(serialize_with = "sig17")]
    pub tolerance: f64,
}

impl KestenReport {
    /// The better of the available lower bounds.
    pub fn estimate(&self) -> f64 {
        self.top_eigenvalue_estimate.into_iter().chain(self.walk_estimate).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `key<TAB>value` lines in field order.
    pub fn to_tsv(&self) -> String {
        tsv_lines(&serde_json::to_value(self).expect("report serializes"))
    }
}

/// Co-amenable when the estimate reaches `N − tol`; not co-amenable only when
/// a certified upper bound lies strictly below `N`; inconclusive otherwise.
pub fn co_amenability_verdict(report: &KestenReport, oracle_norm: Option<f64>, tol: f64) -> Verdict {
    let n = report.n_generators as f64;
    if oracle_norm.is_some_and(|u| u < n) {
        Verdict::NotCoAmenable
    } else if report.estimate() >= n - tol {
        Verdict::CoAmenable
    } else {
        Verdict::Inconclusive
    }
}

/// Estimates the top of the spectrum of `Σ_s λ(s)` from the radius-`R` ball.
pub fn kesten_estimate<G: DiscreteGroup + ?Sized>(group: &G, opts: &KestenOptions) -> Result<KestenReport> {
    let walk_length = opts.resolved_walk_length();
    if matches!(opts.method, Method::Walks | Method::Both) {
        check_walk_length(walk_length, opts.max_walk_length)?;
    }
    let ball = CayleyBall::build(group, opts.radius, opts.ball_cap)?;
    let n_gens = ball.n_gens;
    let mut report = KestenReport {
        group: group.name(),
        n_generators: n_gens,
        radius: opts.radius,
        ball_size: ball.len(),
        method: opts.method,
        top_eigenvalue_estimate: None,
        lanczos_iterations: None,
        walk_estimate: None,
        walk_length: None,
        closed_walks: None,
        verdict: Verdict::Inconclusive,
        oracle_used: opts.oracle_norm.is_some(),
        oracle_norm: opts.oracle_norm,
        tolerance: opts.tol,
    };
    if matches!(opts.method, Method::Lanczos | Method::Both) {
        let mut start = vec![0.0; ball.len()];
        start[0] = 1.0;
        let out = lanczos_top(ball.len(), |v, w| ball.apply_sum(v, w), &start, opts.lanczos);
        report.top_eigenvalue_estimate = Some(out.estimate);
        report.lanczos_iterations = Some(out.iterations);
    }
    if matches!(opts.method, Method::Walks | Method::Both) {
        let walks = closed_walks(&ball, walk_length, opts.max_walk_length)?;
        report.walk_estimate = Some(walks.growth_rate());
        report.walk_length = Some(walk_length);
        report.closed_walks = Some(walks.count);
    }
    if let Some(u) = opts.oracle_norm {
        if u + 1e-9 < report.estimate() {
            return Err(Error::Invalid(format!(
                "oracle norm {u} is below the certified lower bound {}",
                report.estimate()
            )));
        }
    }
    report.verdict = co_amenability_verdict(&report, opts.oracle_norm, opts.tol);
    Ok(report)
}

fn check_walk_length(len: usize, cap: usize) -> Result<()> {
    if !len.is_multiple_of(2) || len == 0 {
        return Err(Error::Invalid(format!("walk length {len} must be even and positive")));
    }
    if len > cap {
        return Err(Error::CapExceeded { what: format!("walk length {len}"), cap });
    }
    Ok(())
}

/// The number `w(2n)` of closed walks from `e` of length `2n` that stay in
/// the ball.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkCount {
    pub length: usize,
    /// Exact count in decimal.
    pub count: String,
    /// Natural logarithm of the count; `-∞` when it is zero.
    pub ln_count: f64,
}

impl WalkCount {
    /// `w(2n)^{1/(2n)}`.
    pub fn growth_rate(&self) -> f64 {
        (self.ln_count / self.length as f64).exp()
    }
}

/// Counts closed walks exactly, in fixed-width integers wide enough for
/// `|S|^{2n}`.
pub fn closed_walks<E>(ball: &CayleyBall<E>, length: usize, max_length: usize) -> Result<WalkCount> {
    check_walk_length(length, max_length)?;
    let bits = (length as f64 * (ball.n_gens.max(1) as f64).log2()).ceil() as usize + 2;
    let digits = bits.div_ceil(64);
    macro_rules! run {
        ($($w:literal),*) => {
            $(if digits <= $w {
                return Ok(count_walks::<E, $w>(ball, length));
            })*
        };
    }
    run!(1, 2, 4, 8, 16, 32, 64, 128);
    Err(Error::CapExceeded { what: format!("{bits}-bit walk counts"), cap: 128 * 64 })
}

fn count_walks<E, const W: usize>(ball: &CayleyBall<E>, length: usize) -> WalkCount {
    let n = ball.len();
    let r = ball.radius;
    let ends = &ball.sphere_ends;
    let mut cur = vec![BUint::<W>::ZERO; n];
    let mut next = vec![BUint::<W>::ZERO; n];
    cur[0] = BUint::<W>::ONE;
    // After t steps only spheres up to min(t, length − t, R) can still matter.
    let reach = |t: usize| ends[t.min(length - t).min(r)];
    for t in 0..length {
        let src = reach(t);
        let dst = reach(t + 1);
        next[..dst].fill(BUint::<W>::ZERO);
        for i in 0..src {
            let c = cur[i];
            if c.is_zero() {
                continue;
            }
            for j in 0..ball.n_gens {
                if let Some(k) = ball.neighbor(i, j) {
                    if k < dst {
                        next[k] += c;
                    }
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let w = cur[0];
    WalkCount { length, count: w.to_string(), ln_count: ln_buint(&w) }
}

fn ln_buint<const W: usize>(x: &BUint<W>) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (*x >> shift).digits()[0] as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition5Status {
    #[serde(rename = "confirmed-at-truncation")]
    ConfirmedAtTruncation,
    #[serde(rename = "violated")]
    Violated,
    #[serde(rename = "open")]
    Open,
}

impl std::fmt::Display for Condition5Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Condition5Status::ConfirmedAtTruncation => "confirmed-at-truncation",
            Condition5Status::Violated => "violated",
            Condition5Status::Open => "open",
        })
    }
}

/// The inequality `|Σ_{i=0}^N λ_i| ≤ ‖λ₀ 1 + Σ_i λ_i λ(s_i)‖` tested on a ball.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition5Report {
    pub group: String,
    pub n_generators: usize,
    pub radius: usize,
    pub ball_size: usize,
    /// `[re, im]` pairs.
    pub lambda: Vec<[f64; 2]>,
    #[serde(serialize_with = "sig17")]
    pub abs_sum: f64,
    /// Lower bound for the reduced norm.
    #[serde(serialize_with = "sig17")]
    pub truncated_norm: f64,
    pub lanczos_iterations: usize,
    #[serde(serialize_with = "opt_sig17")]
    pub oracle_upper_bound: Option<f64>,
    pub status: Condition5Status,
    #[serde(serialize_with = "sig17")]
    pub tolerance: f64,
}

impl Condition5Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_tsv(&self) -> String {
        tsv_lines(&serde_json::to_value(self).expect("report serializes"))
    }
}

/// Largest singular value of the truncated `λ₀ I + Σ λ_i L_{s_i}`, from
/// Lanczos on `B*B` started at `δ_e`, compared against `|Σ λ_i|`.
pub fn condition5_check<G: DiscreteGroup + ?Sized>(
    group: &G,
    lambda: &[Complex64],
    oracle_upper_bound: Option<f64>,
    opts: &KestenOptions,
) -> Result<Condition5Report> {
    let n_gens = group.generators().len();
    if lambda.len() != n_gens + 1 {
        return Err(Error::Invalid(format!(
            "λ has {} entries; {} has {n_gens} generators, so {} are needed",
            lambda.len(),
            group.name(),
            n_gens + 1
        )));
    }
    let ball = CayleyBall::build(group, opts.radius, opts.ball_cap)?;
    let n = ball.len();
    let mut tmp = vec![Complex64::default(); n];
    let mut start = vec![Complex64::default(); n];
    start[0] = Complex64::new(1.0, 0.0);
    let out = lanczos_top(
        n,
        |v, w| {
            ball.apply_combination(lambda, false, v, &mut tmp);
            ball.apply_combination(lambda, true, &tmp, w);
        },
        &start,
        opts.lanczos,
    );
    let truncated_norm = out.estimate.max(0.0).sqrt();
    let abs_sum = lambda.iter().sum::<Complex64>().norm();
    let status = if oracle_upper_bound.is_some_and(|u| abs_sum > u) {
        Condition5Status::Violated
    } else if truncated_norm >= abs_sum - opts.tol {
        Condition5Status::ConfirmedAtTruncation
    } else {
        Condition5Status::Open
    };
    Ok(Condition5Report {
        group: group.name(),
        n_generators: n_gens,
        radius: opts.radius,
        ball_size: n,
        lambda: lambda.iter().map(|c| [c.re, c.im]).collect(),
        abs_sum,
        truncated_norm,
        lanczos_iterations: out.iterations,
        oracle_upper_bound,
        status,
        tolerance: opts.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Builtin, FiniteGroup, FreeGroup, Lattice};
    use std::f64::consts::PI;

    fn lanczos(group: &impl DiscreteGroup, r: usize) -> f64 {
        kesten_estimate(group, &KestenOptions::new(r, Method::Lanczos)).unwrap().top_eigenvalue_estimate.unwrap()
    }

    #[test]
    fn integers_match_path_graph() {
        let est = lanczos(&Lattice { dim: 1 }, 50);
        assert!((est - 2.0 * (PI / 102.0).cos()).abs() < 1e-6, "{est}");
    }

    #[test]
    fn finite_group_reaches_generator_count() {
        let g = FiniteGroup::symmetric3();
        let r = kesten_estimate(&g, &KestenOptions::new(3, Method::Both)).unwrap();
        assert!((r.top_eigenvalue_estimate.unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(r.verdict, Verdict::CoAmenable);
        let z5 = FiniteGroup::cyclic(5).unwrap();
        assert!((lanczos(&z5, 2) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn monotone_in_radius_and_bounded() {
        for name in ["Z^2", "F_2", "Z x Z_3"] {
            let g = Builtin::parse(name).unwrap();
            let n = g.generators().len() as f64;
            let mut prev = 0.0;
            for r in 0..7 {
                let est = lanczos(&g, r);
                assert!(est + 1e-9 >= prev, "{name}: R={r} gave {est} < {prev}");
                assert!(est <= n + 1e-9);
                prev = est;
            }
        }
    }

    #[test]
    fn walks_are_exact_on_small_cases() {
        // Closed walks of length 2n on Z that stay in [-R, R]; for R ≥ n the
        // constraint is vacuous and w = C(2n, n).
        let b = CayleyBall::build(&Lattice { dim: 1 }, 10, 1000).unwrap();
        let w = closed_walks(&b, 20, 100).unwrap();
        assert_eq!(w.count, "184756");
        // F_2: 4, 28, 232 for 2n = 2, 4, 6.
        let f = CayleyBall::build(&FreeGroup::new(2).unwrap(), 3, 1000).unwrap();
        let counts: Vec<String> = [2, 4, 6].iter().map(|&l| closed_walks(&f, l, 100).unwrap().count).collect();
        assert_eq!(counts, ["4", "28", "232"]);
        // Truncation bites once 2n > 2R.
        let small = CayleyBall::build(&Lattice { dim: 1 }, 1, 1000).unwrap();
        assert_eq!(closed_walks(&small, 4, 100).unwrap().count, "4");
    }

    #[test]
    fn walk_counts_overflowing_u64_stay_exact() {
        // With R ≥ n the ball constraint is vacuous.
        let f = CayleyBall::build(&FreeGroup::new(2).unwrap(), 10, 1_000_000).unwrap();
        let w = closed_walks(&f, 20, 100).unwrap();
        assert_eq!(w.count, free_group_returns(2, 20).to_string());
        let z = CayleyBall::build(&Lattice { dim: 1 }, 60, 1000).unwrap();
        let w = closed_walks(&z, 120, 1000).unwrap();
        assert_eq!(w.count, binomial(120, 60).to_string());
    }

    fn binomial(n: u64, k: u64) -> num_bigint::BigUint {
        (0..k).fold(num_bigint::BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
    }

    /// Returns to `e` of the simple walk on the `2k`-regular tree, by the
    /// distance chain.
    fn free_group_returns(k: u64, len: usize) -> num_bigint::BigUint {
        let mut dist = vec![num_bigint::BigUint::from(0u32); len + 2];
        dist[0] = 1u32.into();
        for _ in 0..len {
            let mut next = vec![num_bigint::BigUint::from(0u32); len + 2];
            for d in 0..=len {
                if dist[d] == 0u32.into() {
                    continue;
                }
                if d == 0 {
                    next[1] += &dist[0] * (2 * k);
                } else {
                    next[d + 1] += &dist[d] * (2 * k - 1);
                    next[d - 1] += &dist[d];
                }
            }
            dist = next;
        }
        dist[0].clone()
    }

    #[test]
    fn walk_length_cap() {
        let opts = KestenOptions { walk_length: Some(5000), ..KestenOptions::new(2, Method::Walks) };
        assert!(matches!(kesten_estimate(&Lattice { dim: 1 }, &opts), Err(Error::CapExceeded { .. })));
        let odd = KestenOptions { walk_length: Some(7), ..KestenOptions::new(2, Method::Walks) };
        assert!(kesten_estimate(&Lattice { dim: 1 }, &odd).is_err());
    }

    #[test]
    fn verdicts() {
        let f2 = FreeGroup::new(2).unwrap();
        let report = kesten_estimate(&f2, &KestenOptions::new(6, Method::Lanczos)).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(!report.oracle_used);
        assert_eq!(co_amenability_verdict(&report, Some(2.0 * 3f64.sqrt()), 1e-3), Verdict::NotCoAmenable);
        let with = kesten_estimate(&f2, &KestenOptions::new(6, Method::Lanczos).with_oracle(Some(2.0 * 3f64.sqrt())));
        assert_eq!(with.unwrap().verdict, Verdict::NotCoAmenable);
        let bogus = KestenOptions::new(6, Method::Lanczos).with_oracle(Some(1.0));
        assert!(kesten_estimate(&f2, &bogus).is_err());
    }

    #[test]
    fn report_json_has_seventeen_digits() {
        let report = kesten_estimate(&Lattice { dim: 1 }, &KestenOptions::new(5, Method::Both)).unwrap();
        let json = report.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["verdict"], "inconclusive");
        assert_eq!(v["n_generators"], 2);
        let line = json.lines().find(|l| l.contains("top_eigenvalue_estimate")).unwrap();
        let digits: String = line.split(':').nth(1).unwrap().chars().take_while(|c| *c != 'e').filter(char::is_ascii_digit).collect();
        assert_eq!(digits.len(), 17, "{line}");
        assert_eq!(v["top_eigenvalue_estimate"].as_f64(), report.top_eigenvalue_estimate);
        assert!(report.to_tsv().contains("verdict\tinconclusive\n"));
    }

    #[test]
    fn condition5_identity_weight_is_tight() {
        let g = Builtin::parse("Z^2").unwrap();
        let mut lambda = vec![Complex64::new(0.0, 0.0); 5];
        lambda[0] = Complex64::new(0.6, -0.8);
        let r = condition5_check(&g, &lambda, None, &KestenOptions::new(3, Method::Lanczos)).unwrap();
        assert!((r.truncated_norm - 1.0).abs() < 1e-12);
        assert!((r.abs_sum - 1.0).abs() < 1e-12);
        assert_eq!(r.status, Condition5Status::ConfirmedAtTruncation);
    }

    #[test]
    fn condition5_rejects_wrong_length() {
        let g = Builtin::parse("F_2").unwrap();
        let lambda = vec![Complex64::new(1.0, 0.0); 4];
        assert!(condition5_check(&g, &lambda, None, &KestenOptions::new(2, Method::Lanczos)).is_err());
    }

    #[test]
    fn condition5_matches_kesten_for_uniform_weights() {
        let g = Builtin::parse("F_2").unwrap();
        let mut lambda = vec![Complex64::new(1.0, 0.0); 5];
        lambda[0] = Complex64::new(0.0, 0.0);
        let opts = KestenOptions::new(6, Method::Lanczos);
        let c5 = condition5_check(&g, &lambda, None, &opts).unwrap();
        let k = lanczos(&g, 6);
        assert!((c5.truncated_norm - k).abs() < 1e-6, "{} vs {k}", c5.truncated_norm);
        assert_eq!(c5.status, Condition5Status::Open);
        let c5 = condition5_check(&g, &lambda, Some(2.0 * 3f64.sqrt()), &opts).unwrap();
        assert_eq!(c5.status, Condition5Status::Violated);
    }
}
