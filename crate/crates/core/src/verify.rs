//! Named verification suites behind a common trait.
//!
//! Each suite checks a family of exact identities and reports one outcome
//! per law. Cases inside a law run in parallel; outcomes are collected in case
//! order, so reports are deterministic for a fixed configuration.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fockrep::{
    berezin, berezin_expansion, covariant_symbol, i_op, i_op_poly, q_map, zhat, zhat_star, FockOp,
};
use crate::qcalc::{
    box_op, box_right_form, box_tilde, d_partial, differential_twist, flip_conjugate, m0, Side, Var,
};
use crate::qpoly::{normal_order_word, swap_coefficients, Exp, Letter, NCPoly, TensorPoly, WindowedSeries};
use crate::scalar::QScalar;
use crate::star::{pk, StarEngine, StarSeries};
use crate::uqsl2::{
    check_box_equivariance, check_coproduct_relation, check_hopf_counit_antipode,
    check_involution_compat, check_module_algebra, check_relation, check_star_equivariance,
    check_well_defined, relations, words_up_to, GENERATORS,
};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Truncation order in `t`.
    pub t_order: usize,
    /// Exponent bound for generated monomials.
    pub max_degree: u32,
    /// Basis cutoff `M` of the operator representation.
    pub cutoff: usize,
    /// Window `J` for covariant symbols.
    pub window: u32,
    pub seed: u64,
    /// Number of sampled triples for the rewriting check; exhaustive when it
    /// reaches the full grid.
    pub samples: usize,
    /// When set, oracle residuals are also evaluated at `s = s0`.
    pub s0: Option<BigRational>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            t_order: 4,
            max_degree: 2,
            cutoff: 16,
            window: 6,
            seed: 0,
            samples: 10_000,
            s0: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawOutcome {
    pub law: String,
    /// The identity being checked, as a formula.
    pub anchor: String,
    pub cases: usize,
    pub failed: usize,
    /// Descriptions of the first few failing cases.
    pub failures: Vec<String>,
    pub details: Value,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "law": self.law,
            "anchor": self.anchor,
            "cases": self.cases,
            "failed": self.failed,
            "passed": self.passed(),
            "failures": self.failures,
            "details": self.details,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub laws: Vec<LawOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawOutcome::passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawOutcome> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "laws": self.laws.iter().map(LawOutcome::to_json).collect::<Vec<_>>(),
        })
    }
}

pub trait VerificationSuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, cfg: &VerifyConfig) -> SuiteReport;
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn VerificationSuite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { suites: Vec::new() }
    }

    /// All built-in suites, in report order.
    pub fn standard() -> Self {
        let mut r = SuiteRegistry::empty();
        r.register(Box::new(RewriteSuite));
        r.register(Box::new(CalculusSuite));
        r.register(Box::new(StarSuite));
        r.register(Box::new(OracleSuite));
        r.register(Box::new(BerezinSuite));
        r.register(Box::new(UqSuite));
        r
    }

    /// Adds a suite; a later registration under an existing name replaces it.
    pub fn register(&mut self, suite: Box<dyn VerificationSuite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn VerificationSuite> {
        self.suites
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownSuite(name.to_string()))
    }

    /// Runs one suite by name, or every suite for `"all"`.
    pub fn run(&self, name: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
        if name == "all" {
            return Ok(self.suites.iter().map(|s| s.run(cfg)).collect());
        }
        Ok(vec![self.get(name)?.run(cfg)])
    }
}

/// Runs `check` on every case in parallel. A case fails on `Ok(false)` or on
/// an error.
fn run_law<C: Sync>(
    law: &str,
    anchor: &str,
    cases: &[C],
    describe: impl Fn(&C) -> String + Sync,
    check: impl Fn(&C) -> Result<bool> + Sync,
) -> LawOutcome {
    let results: Vec<Option<String>> = cases
        .par_iter()
        .map(|c| match check(c) {
            Ok(true) => None,
            Ok(false) => Some(describe(c)),
            Err(e) => Some(format!("{}: {e}", describe(c))),
        })
        .collect();
    let failing: Vec<String> = results.into_iter().flatten().collect();
    LawOutcome {
        law: law.to_string(),
        anchor: anchor.to_string(),
        cases: cases.len(),
        failed: failing.len(),
        failures: failing.into_iter().take(5).collect(),
        details: Value::Null,
    }
}

/// Monomials `z^j z*^k` with `j, k <= max`.
pub fn monomials_by_exponent(max: u32) -> Vec<(u32, u32)> {
    (0..=max).flat_map(|j| (0..=max).map(move |k| (j, k))).collect()
}

/// Monomials `z^j z*^k` with `j + k <= max`.
pub fn monomials_by_degree(max: u32) -> Vec<(u32, u32)> {
    (0..=max)
        .flat_map(|j| (0..=max - j).map(move |k| (j, k)))
        .collect()
}

fn mono(e: (u32, u32)) -> NCPoly {
    NCPoly::monomial(e.0, e.1)
}

fn describe_pair(p: &((u32, u32), (u32, u32))) -> String {
    format!("{} , {}", mono(p.0), mono(p.1))
}

fn letters(j: u32, k: u32) -> Vec<Letter> {
    let mut w = vec![Letter::Z; j as usize];
    w.extend(std::iter::repeat_n(Letter::ZStar, k as usize));
    w
}

/// Random polynomial with up to `terms` terms, exponents `<= max`, and
/// small coefficients `c q^e`.
pub fn random_poly(rng: &mut ChaCha8Rng, max: u32, terms: usize) -> NCPoly {
    let mut f = NCPoly::zero();
    let count = rng.gen_range(1..=terms);
    for _ in 0..count {
        let j = rng.gen_range(0..=max);
        let k = rng.gen_range(0..=max);
        let c = rng.gen_range(-3i64..=3);
        let e = rng.gen_range(-2i64..=2);
        f.add_term((j, k), &QScalar::from_int(c) * &QScalar::q_pow(e));
    }
    f
}

pub struct RewriteSuite;

/// Triples for the associativity check: exhaustive over exponents `<= 4`
/// when `samples` covers the grid, otherwise a seeded sample.
pub fn associativity_triples(samples: usize, seed: u64) -> Vec<[(u32, u32); 3]> {
    let grid = monomials_by_exponent(4);
    let total = grid.len().pow(3);
    if samples >= total {
        let mut out = Vec::with_capacity(total);
        for &a in &grid {
            for &b in &grid {
                for &c in &grid {
                    out.push([a, b, c]);
                }
            }
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            [0; 3].map(|_: i32| grid[rng.gen_range(0..grid.len())])
        })
        .collect()
}

impl VerificationSuite for RewriteSuite {
    fn name(&self) -> &'static str {
        "rewrite"
    }

    fn summary(&self) -> &'static str {
        "normal ordering: associativity, closed-form swaps, involution"
    }

    fn run(&self, cfg: &VerifyConfig) -> SuiteReport {
        let triples = associativity_triples(cfg.samples, cfg.seed);
        let assoc = run_law(
            "associativity",
            "(f1 f2) f3 = f1 (f2 f3)",
            &triples,
            |t| format!("{} , {} , {}", mono(t[0]), mono(t[1]), mono(t[2])),
            |t| {
                let (a, b, c) = (mono(t[0]), mono(t[1]), mono(t[2]));
                Ok(a.nc_mul(&b).nc_mul(&c) == a.nc_mul(&b.nc_mul(&c)))
            },
        );
        let blocks: Vec<(u32, u32)> = monomials_by_exponent(5);
        let swaps = run_law(
            "swap closed form",
            "z*^b z^c = sum_r q^(2(b-r)(c-r)) [b r]_(q^2) [c r]_(q^2) (q^2;q^2)_r z^(c-r) z*^(b-r)",
            &blocks,
            |&(b, c)| format!("b = {b}, c = {c}"),
            |&(b, c)| {
                let mut word = vec![Letter::ZStar; b as usize];
                word.extend(std::iter::repeat_n(Letter::Z, c as usize));
                let mut closed = NCPoly::zero();
                for (r, x) in swap_coefficients(b as usize, c as usize).iter().enumerate() {
                    closed.add_term((c - r as u32, b - r as u32), x.clone());
                }
                Ok(normal_order_word(&word) == closed)
            },
        );
        let pairs = pairs(&monomials_by_exponent(cfg.max_degree.max(2)));
        let product = run_law(
            "product equals rewriting",
            "z^a z*^b . z^c z*^d = normal form of the concatenated word",
            &pairs,
            describe_pair,
            |&(a, b)| {
                let mut w = letters(a.0, a.1);
                w.extend(letters(b.0, b.1));
                Ok(mono(a).nc_mul(&mono(b)) == normal_order_word(&w))
            },
        );
        let involution = run_law(
            "involution reverses products",
            "(f1 f2)* = f2* f1*",
            &pairs,
            describe_pair,
            |&(a, b)| {
                let (f, g) = (mono(a), mono(b));
                Ok(f.nc_mul(&g).involution() == g.involution().nc_mul(&f.involution()))
            },
        );
        SuiteReport {
            suite: self.name().into(),
            laws: vec![assoc, swaps, product, involution],
        }
    }
}

fn pairs<T: Copy>(items: &[T]) -> Vec<(T, T)> {
    items
        .iter()
        .flat_map(|&a| items.iter().map(move |&b| (a, b)))
        .collect()
}

pub struct CalculusSuite;

impl VerificationSuite for CalculusSuite {
    fn name(&self) -> &'static str {
        "calculus"
    }

    fn summary(&self) -> &'static str {
        "partial derivatives, the Laplace-Beltrami operator and its tensor lift"
    }

    fn run(&self, _cfg: &VerifyConfig) -> SuiteReport {
        let deg4 = monomials_by_degree(4);
        let forms = run_law(
            "box forms agree",
            "(1 - z z*)^2 dl/dz* dl/dz f = q^2 dr/dz* dr/dz f (1 - z z*)^2",
            &deg4,
            |&e| mono(e).to_string(),
            |&e| Ok(box_op(&mono(e)) == box_right_form(&mono(e))),
        );
        let pure: Vec<(u32, u32)> = (0..=3).flat_map(|a| (0..=3).map(move |b| (a, b))).collect();
        let factor = run_law(
            "box factorizes through box_tilde",
            "box(f2(z*) f1(z)) = m0(box~(f2 (x) f1)), middle q^-2(1 - (1 + q^-2) z* (x) z + q^-2 z*^2 (x) z^2)",
            &pure,
            |&(a, b)| format!("zs^{a} , z^{b}"),
            |&(a, b)| {
                let (f2, f1) = (NCPoly::monomial(0, a), NCPoly::monomial(b, 0));
                Ok(box_op(&f2.nc_mul(&f1)) == m0(&box_tilde(&TensorPoly::pure(&f2, &f1))))
            },
        );
        let words: Vec<Vec<Letter>> = (0..=3usize)
            .flat_map(|n| {
                (0..(1u32 << n)).map(move |bits| {
                    (0..n)
                        .map(|i| if bits >> i & 1 == 1 { Letter::ZStar } else { Letter::Z })
                        .collect()
                })
            })
            .collect();
        let descend = run_law(
            "derivatives descend through the relation",
            "d(w) computed on a word equals d(normal form of w)",
            &words,
            |w| format!("{w:?}"),
            |w| {
                let nf = normal_order_word(w);
                Ok([Side::Left, Side::Right].into_iter().all(|side| {
                    [Var::Z, Var::ZStar].into_iter().all(|var| {
                        crate::qcalc::differentiate_word(w, side, var) == d_partial(&nf, side, var)
                    })
                }))
            },
        );
        let mono_pairs = pairs(&monomials_by_degree(3));
        let leibniz = run_law(
            "twisted Leibniz rule",
            "d(fg) = df sigma(g) + f dg (right); d(fg) = df g + sigma(f) dg (left)",
            &mono_pairs,
            describe_pair,
            |&(a, b)| {
                let (f, g) = (mono(a), mono(b));
                let fg = f.nc_mul(&g);
                Ok([Var::Z, Var::ZStar].into_iter().all(|var| {
                    let right = d_partial(&f, Side::Right, var).nc_mul(&differential_twist(&g, Side::Right))
                        + f.nc_mul(&d_partial(&g, Side::Right, var));
                    let left = d_partial(&f, Side::Left, var).nc_mul(&g)
                        + differential_twist(&f, Side::Left).nc_mul(&d_partial(&g, Side::Left, var));
                    d_partial(&fg, Side::Right, var) == right && d_partial(&fg, Side::Left, var) == left
                }))
            },
        );
        let tensor_pairs = pairs(&monomials_by_degree(2));
        let flip = run_law(
            "box_tilde commutes with flipped involution",
            "box~ c = c box~, c(f1 (x) f2) = f2* (x) f1*",
            &tensor_pairs,
            describe_pair,
            |&(a, b)| {
                let t = TensorPoly::pure(&mono(a), &mono(b));
                Ok(box_tilde(&flip_conjugate(&t)) == flip_conjugate(&box_tilde(&t)))
            },
        );
        SuiteReport {
            suite: self.name().into(),
            laws: vec![forms, factor, descend, leibniz, flip],
        }
    }
}

pub struct StarSuite;

impl StarSuite {
    pub fn pk_law() -> LawOutcome {
        let ks: Vec<usize> = (0..=8).collect();
        let one = QScalar::one();
        run_law(
            "p_k normalization",
            "p_0 = 1, p_1 = 1 + (1 - q^2) x, deg p_k = k, p_k(0) = 1",
            &ks,
            |k| format!("k = {k}"),
            |&k| {
                let p = pk(k);
                let shape = match k {
                    0 => p.coeffs() == [one.clone()],
                    1 => p.coeffs() == [one.clone(), &one - &QScalar::q_pow(2)],
                    _ => true,
                };
                Ok(shape && p.degree() == k && p.eval(&QScalar::zero()).is_one())
            },
        )
    }

    pub fn holomorphic_law(order: usize) -> LawOutcome {
        let engine = StarEngine::new(order);
        let cases: Vec<(u32, (u32, u32))> = (0..=3)
            .flat_map(|i| monomials_by_degree(3).into_iter().map(move |f| (i, f)))
            .collect();
        run_law(
            "holomorphic left factor",
            "z^i * f = z^i f",
            &cases,
            |(i, f)| format!("z^{i} , {}", mono(*f)),
            |&(i, f)| {
                let s = engine.star(&NCPoly::monomial(i, 0), &mono(f));
                Ok(s.coeffs()[1..].iter().all(NCPoly::is_zero))
            },
        )
    }

    pub fn associativity_law(order: usize, max: u32) -> LawOutcome {
        let engine = StarEngine::new(order);
        let grid = monomials_by_exponent(max);
        let mut triples = Vec::new();
        for &a in &grid {
            for &b in &grid {
                for &c in &grid {
                    triples.push([a, b, c]);
                }
            }
        }
        run_law(
            "associativity",
            "m(m(psi1, psi2), psi3) = m(psi1, m(psi2, psi3))",
            &triples,
            |t| format!("{} , {} , {}", mono(t[0]), mono(t[1]), mono(t[2])),
            |t| {
                let [a, b, c] = t.map(|e| StarSeries::constant(mono(e), order));
                let left = engine.m_series(&engine.m_series(&a, &b)?, &c)?;
                let right = engine.m_series(&a, &engine.m_series(&b, &c)?)?;
                Ok(left == right)
            },
        )
    }

    pub fn involution_law(order: usize, max: u32, seed: u64, count: usize) -> LawOutcome {
        let engine = StarEngine::new(order);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cases: Vec<(StarSeries, StarSeries)> = (0..count)
            .map(|_| {
                let mut series = || {
                    let coeffs = vec![random_poly(&mut rng, max, 3), random_poly(&mut rng, max, 2)];
                    StarSeries::from_coeffs(coeffs, order)
                };
                (series(), series())
            })
            .collect();
        run_law(
            "involution",
            "m(psi1, psi2)* = m(psi2*, psi1*)",
            &cases,
            |(a, b)| format!("{:?} , {:?}", a, b),
            |(a, b)| {
                let left = engine.m_series(a, b)?.involution();
                let right = engine.m_series(&b.involution(), &a.involution())?;
                Ok(left == right)
            },
        )
    }
}

impl VerificationSuite for StarSuite {
    fn name(&self) -> &'static str {
        "star"
    }

    fn summary(&self) -> &'static str {
        "p_k polynomials, holomorphic triviality, associativity, involution"
    }

    fn run(&self, cfg: &VerifyConfig) -> SuiteReport {
        let order = cfg.t_order;
        let engine = StarEngine::new(order);
        let pairs = pairs(&monomials_by_degree(3));
        let right = run_law(
            "antiholomorphic right factor",
            "f * z*^l = f z*^l",
            &pairs,
            describe_pair,
            |&(a, b)| {
                let (f, l) = (mono(a), b.1);
                let s = engine.star(&f, &NCPoly::monomial(0, l));
                Ok(s == StarSeries::constant(f.mul_right_zstar_power(l), order))
            },
        );
        SuiteReport {
            suite: self.name().into(),
            laws: vec![
                StarSuite::pk_law(),
                StarSuite::holomorphic_law(order),
                right,
                StarSuite::associativity_law(order, cfg.max_degree),
                StarSuite::involution_law(order, cfg.max_degree, cfg.seed, 100),
            ],
        }
    }
}

/// Both sides of the homomorphism check: `Q(f1 * f2)` and `I(f1) I(f2)`.
pub fn oracle_sides(
    engine: &StarEngine,
    f1: &NCPoly,
    f2: &NCPoly,
    cutoff: usize,
) -> Result<(FockOp, FockOp)> {
    let order = engine.order();
    let lhs = q_map(&engine.star(f1, f2), cutoff);
    let rhs = i_op_poly(f1, cutoff, order).mul(&i_op_poly(f2, cutoff, order))?;
    Ok((lhs, rhs))
}

/// Evaluates both operators at `s = s0` independently and subtracts in Q.
/// Returns the number of compared coefficients and how many differ.
pub fn numeric_residual_counts(lhs: &FockOp, rhs: &FockOp, s0: &BigRational) -> Result<(usize, usize)> {
    let valid = lhs.valid().min(rhs.valid());
    let mut evaluated = 0;
    let mut nonzero = 0;
    for col in 0..(valid + 1).max(0) as usize {
        let (a, b) = (lhs.column(col)?, rhs.column(col)?);
        let rows: BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
        for row in rows {
            let x = lhs.entry(row, col)?.eval(s0)?;
            let y = rhs.entry(row, col)?.eval(s0)?;
            for (u, v) in x.iter().zip(&y) {
                evaluated += 1;
                if !(u - v).is_zero() {
                    nonzero += 1;
                }
            }
        }
    }
    Ok((evaluated, nonzero))
}

pub struct OracleSuite;

impl OracleSuite {
    pub fn homomorphism_laws(cfg: &VerifyConfig) -> Vec<LawOutcome> {
        let engine = StarEngine::new(cfg.t_order);
        let cases = pairs(&monomials_by_exponent(cfg.max_degree));
        let sides: Vec<Result<(FockOp, FockOp)>> = cases
            .par_iter()
            .map(|&(a, b)| oracle_sides(&engine, &mono(a), &mono(b), cfg.cutoff))
            .collect();
        let min_valid = sides
            .iter()
            .filter_map(|r| r.as_ref().ok())
            .map(|(l, r)| l.valid().min(r.valid()))
            .min();
        let indexed: Vec<usize> = (0..cases.len()).collect();
        let mut exact = run_law(
            "homomorphism",
            "Q m(psi1, psi2) = (Q psi1)(Q psi2) mod t^(T+1)",
            &indexed,
            |&i| describe_pair(&cases[i]),
            |&i| match &sides[i] {
                Ok((l, r)) => l.agrees_with(r),
                Err(e) => Err(e.clone()),
            },
        );
        exact.details = json!({
            "t_order": cfg.t_order,
            "cutoff": cfg.cutoff,
            "min_trusted_column": min_valid,
        });
        let mut out = vec![exact];
        if let Some(s0) = &cfg.s0 {
            let counts: Vec<Result<(usize, usize)>> = sides
                .par_iter()
                .map(|r| match r {
                    Ok((l, r)) => numeric_residual_counts(l, r, s0),
                    Err(e) => Err(e.clone()),
                })
                .collect();
            let mut numeric = run_law(
                "homomorphism residuals at s0",
                "Q m(psi1, psi2) - (Q psi1)(Q psi2) = 0 at s = s0",
                &indexed,
                |&i| describe_pair(&cases[i]),
                |&i| match &counts[i] {
                    Ok((evaluated, nonzero)) => Ok(*evaluated > 0 && *nonzero == 0),
                    Err(e) => Err(e.clone()),
                },
            );
            let evaluated: usize = counts.iter().filter_map(|c| c.as_ref().ok()).map(|c| c.0).sum();
            let nonzero: usize = counts.iter().filter_map(|c| c.as_ref().ok()).map(|c| c.1).sum();
            numeric.details = json!({
                "s0": s0.to_string(),
                "evaluated_coefficients": evaluated,
                "nonzero": nonzero,
            });
            out.push(numeric);
        }
        out
    }
}

impl VerificationSuite for OracleSuite {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn summary(&self) -> &'static str {
        "the star product against composition of operators"
    }

    fn run(&self, cfg: &VerifyConfig) -> SuiteReport {
        let mut laws = OracleSuite::homomorphism_laws(cfg);
        let cutoffs = [cfg.cutoff];
        laws.push(run_law(
            "adjoint from norms",
            "zhat* z^m = ||z^m||^2 / ||z^(m-1)||^2 z^(m-1) = I(z*) z^m",
            &cutoffs,
            |m| format!("M = {m}"),
            |&m| Ok(zhat_star(m, cfg.t_order) == i_op(0, 1, m, cfg.t_order)),
        ));
        laws.push(run_law(
            "commutator at t = 0",
            "zhat* zhat - q^2 zhat zhat* = 1 - q^2 at t^0",
            &cutoffs,
            |m| format!("M = {m}"),
            |&m| {
                let t = cfg.t_order;
                let c = zhat_star(m, t)
                    .mul(&zhat(m, t))?
                    .sub(&zhat(m, t).mul(&zhat_star(m, t))?.scale(&QScalar::q_pow(2)))?;
                let want = &QScalar::one() - &QScalar::q_pow(2);
                for col in 0..(c.valid() + 1).max(0) as usize {
                    let column = c.column(col)?;
                    let diagonal_only = column.keys().eq(std::iter::once(&col));
                    if !diagonal_only || column[&col].coeff(0) != &want {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        ));
        SuiteReport {
            suite: self.name().into(),
            laws,
        }
    }
}

pub struct BerezinSuite;

impl BerezinSuite {
    pub fn expansion_law(cases: &[(u32, u32)], window: u32, cutoff: usize, order: usize) -> LawOutcome {
        run_law(
            "asymptotic expansion",
            "B(f) = f + sum_k (p_k(box) - p_(k-1)(box)) f t^k, f = z*^j z^k",
            cases,
            |&(j, k)| format!("j = {j}, k = {k}"),
            |&(j, k)| {
                let b = berezin(j, k, window, cutoff, order)?;
                let e = WindowedSeries::from_coefficients(&berezin_expansion(j, k, order), window, order);
                b.agrees_with(&e)
            },
        )
    }
}

impl VerificationSuite for BerezinSuite {
    fn name(&self) -> &'static str {
        "berezin"
    }

    fn summary(&self) -> &'static str {
        "covariant symbols and the Berezin transform against its expansion"
    }

    fn run(&self, cfg: &VerifyConfig) -> SuiteReport {
        let (w, m, t) = (cfg.window, cfg.cutoff, cfg.t_order);
        let grid = monomials_by_exponent(cfg.max_degree);
        let expansion = BerezinSuite::expansion_law(&grid, w, m, t);
        let round_trip = run_law(
            "covariant symbol inverts I",
            "symbol(I(z^j z*^k)) = z^j z*^k",
            &monomials_by_exponent(w.min(4)),
            |&e| mono(e).to_string(),
            |&(j, k)| {
                let s = covariant_symbol(&i_op(j, k, m, t), w)?;
                s.agrees_with(&WindowedSeries::from_coefficients(&[NCPoly::monomial(j, k)], w, t))
            },
        );
        let quads: Vec<[u32; 4]> = (0..16u32)
            .map(|bits| [bits & 1, bits >> 1 & 1, bits >> 2 & 1, bits >> 3 & 1])
            .flat_map(|b| {
                let mut v = vec![b];
                if b == [1, 1, 1, 1] {
                    v.push([1, 2, 1, 1]);
                    v.push([1, 1, 2, 1]);
                }
                v
            })
            .collect();
        let covariance = run_law(
            "covariance",
            "symbol(I(z^i z*^j) I(z^k z*^l)) = z^i B(z*^j z^k) z*^l",
            &quads,
            |q| format!("i = {}, j = {}, k = {}, l = {}", q[0], q[1], q[2], q[3]),
            |&[i, j, k, l]| {
                let prod = i_op(i, j, m, t).mul(&i_op(k, l, m, t))?;
                let lhs = covariant_symbol(&prod, w)?;
                let rhs = berezin(j, k, w, m, t)?
                    .mul_left_z_power(i)
                    .mul_right_zstar_power(l);
                lhs.agrees_with(&rhs)
            },
        );
        SuiteReport {
            suite: self.name().into(),
            laws: vec![expansion, round_trip, covariance],
        }
    }
}

pub struct UqSuite;

impl UqSuite {
    pub fn relation_law(max_degree: u32) -> LawOutcome {
        let rels = relations();
        let cases: Vec<(usize, (u32, u32))> = (0..rels.len())
            .flat_map(|r| monomials_by_degree(max_degree).into_iter().map(move |e| (r, e)))
            .collect();
        run_law(
            "defining relations",
            "K K^-1 = K^-1 K = 1, K E K^-1 = q^2 E, K F K^-1 = q^-2 F, EF - FE = (K - K^-1)/(q - q^-1)",
            &cases,
            |&(r, e)| format!("{} on {}", rels[r].0, mono(e)),
            |&(r, e)| Ok(check_relation(&rels[r].1, &rels[r].2, &mono(e))),
        )
    }

    pub fn grid_laws(max_degree: u32, order: usize) -> Vec<LawOutcome> {
        let monos = monomials_by_degree(max_degree);
        let singles: Vec<_> = GENERATORS
            .iter()
            .flat_map(|&g| monos.iter().map(move |&e| (g, e)))
            .collect();
        let doubles: Vec<_> = GENERATORS
            .iter()
            .flat_map(|&g| pairs(&monos).into_iter().map(move |p| (g, p)))
            .collect();
        vec![
            run_law(
                "module algebra",
                "g(f1 f2) = sum g(1)f1 g(2)f2",
                &doubles,
                |(g, p)| format!("{g} on {}", describe_pair(p)),
                |&(g, (a, b))| Ok(check_module_algebra(g, &mono(a), &mono(b))),
            ),
            run_law(
                "box equivariance",
                "g box f = box g f",
                &singles,
                |(g, e)| format!("{g} on {}", mono(*e)),
                |&(g, e)| Ok(check_box_equivariance(g, &mono(e))),
            ),
            run_law(
                "star equivariance",
                "g(f1 * f2) = sum g(1)f1 * g(2)f2 mod t^(T+1)",
                &doubles,
                |(g, p)| format!("{g} on {}", describe_pair(p)),
                |&(g, (a, b))| Ok(check_star_equivariance(g, &mono(a), &mono(b), order)),
            ),
            run_law(
                "involution compatibility",
                "(g f)* = S(g)* f*",
                &singles,
                |(g, e)| format!("{g} on {}", mono(*e)),
                |&(g, e)| Ok(check_involution_compat(g, &mono(e))),
            ),
        ]
    }
}

impl VerificationSuite for UqSuite {
    fn name(&self) -> &'static str {
        "uq"
    }

    fn summary(&self) -> &'static str {
        "the quantum group action: relations, Hopf structure, equivariance"
    }

    fn run(&self, cfg: &VerifyConfig) -> SuiteReport {
        let mut laws = vec![UqSuite::relation_law(4)];
        laws.push(run_law(
            "action descends through the relation",
            "g(z* z) = g(q^2 z z* + 1 - q^2)",
            &GENERATORS,
            |g| g.to_string(),
            |&g| Ok(check_well_defined(g)),
        ));
        laws.extend(UqSuite::grid_laws(cfg.max_degree, cfg.t_order));
        let words = words_up_to(2);
        let test_monos = monomials_by_degree(2);
        let counit_cases: Vec<(usize, (u32, u32))> = (0..words.len())
            .flat_map(|w| test_monos.iter().map(move |&e| (w, e)))
            .collect();
        laws.push(run_law(
            "counit and antipode",
            "(eps (x) id) Delta = id = (id (x) eps) Delta, m (S (x) id) Delta = eps",
            &counit_cases,
            |&(w, e)| format!("{} on {}", words[w], mono(e)),
            |&(w, e)| Ok(check_hopf_counit_antipode(&words[w], &mono(e))),
        ));
        let rels = relations();
        let tensor_cases: Vec<(usize, (Exp, Exp))> = (0..rels.len())
            .flat_map(|r| pairs(&monomials_by_degree(1)).into_iter().map(move |p| (r, p)))
            .collect();
        laws.push(run_law(
            "coproduct respects relations",
            "Delta(lhs) = Delta(rhs) on f1 (x) f2",
            &tensor_cases,
            |&(r, p)| format!("{} on {}", rels[r].0, describe_pair(&p)),
            |&(r, (a, b))| Ok(check_coproduct_relation(&rels[r].1, &rels[r].2, &mono(a), &mono(b))),
        ));
        SuiteReport {
            suite: self.name().into(),
            laws,
        }
    }
}

/// Distinct suite names, for usage messages.
pub fn suite_names() -> BTreeSet<&'static str> {
    SuiteRegistry::standard().names().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            t_order: 2,
            max_degree: 1,
            cutoff: 10,
            window: 3,
            seed: 7,
            samples: 200,
            s0: Some(BigRational::new(7.into(), 10.into())),
        }
    }

    #[test]
    fn registry_lookup() {
        let r = SuiteRegistry::standard();
        assert_eq!(r.names(), vec!["rewrite", "calculus", "star", "oracle", "berezin", "uq"]);
        assert!(matches!(r.get("nope"), Err(Error::UnknownSuite(_))));
        assert_eq!(r.run("all", &small()).unwrap().len(), 6);
    }

    #[test]
    fn every_suite_passes_at_small_size() {
        for report in SuiteRegistry::standard().run("all", &small()).unwrap() {
            for law in &report.laws {
                assert!(law.passed(), "{} / {}: {:?}", report.suite, law.law, law.failures);
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let r = SuiteRegistry::standard();
        let a = r.run("star", &small()).unwrap();
        let b = r.run("star", &small()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn a_wrong_law_is_reported() {
        let out = run_law("bad", "1 = 2", &[1, 2, 3], |x| x.to_string(), |&x| Ok(x != 2));
        assert!(!out.passed());
        assert_eq!(out.failed, 1);
        assert_eq!(out.failures, vec!["2".to_string()]);
    }

    #[test]
    fn sampled_and_exhaustive_triples() {
        assert_eq!(associativity_triples(10, 1).len(), 10);
        assert_eq!(associativity_triples(10, 1), associativity_triples(10, 1));
        assert_eq!(associativity_triples(20_000, 1).len(), 15_625);
    }

    #[test]
    fn oracle_reports_numeric_residuals() {
        let laws = OracleSuite::homomorphism_laws(&small());
        assert_eq!(laws.len(), 2);
        assert!(laws[1].passed());
        assert_eq!(laws[1].details["nonzero"], 0);
        assert!(laws[1].details["evaluated_coefficients"].as_u64().unwrap() > 100);
    }
}
