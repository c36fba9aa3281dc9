//! Command-line front end, reports and the JSON element format.
//!
//! Element JSON:
//! `{"terms":[{"coeff":{"num":[..],"den":[..]},"word":[{"i","j","p","q","depth","odd"}],"tau":t}]}`
//! where `num`/`den` are integer coefficient lists in `k`, low degree first.
//! Labels are `gl_N` matrix units (`p`, `q` null) unless the element lives
//! in the free algebra, where `(i,j)` is a `gl_l` label and `(p,q)` null as
//! well. For states, `depth` is `m` for `x[−m]` and for `ψ[−m]`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::brst::{intertwining_defect, principal_comparison, Brst};
use crate::coeff::{CoeffError, Rational, Scalar};
use crate::liealg::{kappa_b_basis, GlBasis, Shape};
use crate::pbw::{AlgElem, Flavor, Mode};
use crate::vertex::{VMode, VState, VertexAlgebra, DEFAULT_WEIGHT_BOUND};
use crate::walgebra::{self, GeneratorSet};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed element: {0}")]
    Parse(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Walg(#[from] walgebra::WalgError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One named check of a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: String) -> Report {
        Report { title, checks: Vec::new() }
    }

    pub fn push(&mut self, name: String, passed: bool, witness: Option<String>) {
        self.checks.push(Check { name, passed, witness, millis: 0 });
    }

    pub fn push_timed(&mut self, name: String, passed: bool, witness: Option<String>, start: Instant) {
        self.checks.push(Check {
            name,
            passed,
            witness,
            millis: start.elapsed().as_millis(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn render_text(&self, timing: bool) -> String {
        let mut out = format!("== {} ==\n", self.title);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}", c.name));
            if timing {
                out.push_str(&format!(" ({} ms)", c.millis));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, timing: bool) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({"name": c.name, "passed": c.passed, "witness": c.witness});
                if timing {
                    v["millis"] = json!(c.millis as u64);
                }
                v
            })
            .collect();
        json!({"title": self.title, "passed": self.passed(), "checks": checks})
    }
}

// ---------- JSON element format ----------

fn int_list(v: &[BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|c| Value::Number(serde_json::Number::from_str(&c.to_string()).expect("integer literal")))
            .collect(),
    )
}

pub fn scalar_to_json(c: &Scalar) -> Value {
    let (num, den) = c.to_integer_lists();
    json!({"num": int_list(&num), "den": int_list(&den)})
}

fn parse_int_list(v: &Value) -> Result<Vec<BigInt>, CliError> {
    let arr = v.as_array().ok_or_else(|| CliError::Parse("expected an integer list".into()))?;
    arr.iter()
        .map(|x| match x {
            Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| CliError::Parse(format!("not an integer: {n}"))),
            _ => Err(CliError::Parse("expected an integer".into())),
        })
        .collect()
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar, CliError> {
    let num = parse_int_list(&v["num"])?;
    let den = parse_int_list(&v["den"])?;
    Ok(Scalar::from_integer_lists(&num, &den)?)
}

fn label_json(x: GlBasis, depth: i64, odd: bool) -> Value {
    json!({"i": x.i, "j": x.j, "p": null, "q": null, "depth": depth, "odd": odd})
}

pub fn alg_to_json(a: &AlgElem) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .map(|(t, c)| {
            let word: Vec<Value> = t.word.iter().map(|m| label_json(m.x, m.depth as i64, false)).collect();
            json!({"coeff": scalar_to_json(c), "word": word, "tau": t.tau})
        })
        .collect();
    json!({ "terms": terms })
}

pub fn state_to_json(s: &VState) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(w, c)| {
            let word: Vec<Value> = w.iter().map(|m| label_json(m.x, -(m.label_index() as i64), m.odd)).collect();
            json!({"coeff": scalar_to_json(c), "word": word, "tau": 0})
        })
        .collect();
    json!({ "terms": terms })
}

struct RawMode {
    x: GlBasis,
    depth: i64,
    odd: bool,
}

fn raw_terms(v: &Value) -> Result<Vec<(Scalar, Vec<RawMode>, u32)>, CliError> {
    let terms = v["terms"].as_array().ok_or_else(|| CliError::Parse("missing \"terms\"".into()))?;
    let field = |m: &Value, key: &str| -> Result<i64, CliError> {
        m[key].as_i64().ok_or_else(|| CliError::Parse(format!("missing integer \"{key}\"")))
    };
    let mut out = Vec::new();
    for t in terms {
        let coeff = scalar_from_json(&t["coeff"])?;
        let tau = t["tau"].as_u64().unwrap_or(0) as u32;
        let word = t["word"].as_array().ok_or_else(|| CliError::Parse("missing \"word\"".into()))?;
        let mut modes = Vec::new();
        for m in word {
            let (i, j) = (field(m, "i")?, field(m, "j")?);
            if !(1..=255).contains(&i) || !(1..=255).contains(&j) {
                return Err(CliError::Parse(format!("index out of range in e_{i}{j}")));
            }
            if !m["p"].is_null() || !m["q"].is_null() {
                return Err(CliError::Parse("tensor labels are not accepted as input".into()));
            }
            modes.push(RawMode {
                x: GlBasis { i: i as u8, j: j as u8 },
                depth: field(m, "depth")?,
                odd: m["odd"].as_bool().unwrap_or(false),
            });
        }
        out.push((coeff, modes, tau));
    }
    Ok(out)
}

pub fn alg_from_json(v: &Value) -> Result<AlgElem, CliError> {
    let mut out = AlgElem::zero(Flavor::Enveloping);
    for (c, modes, tau) in raw_terms(v)? {
        let mut word = Vec::new();
        for m in modes {
            if m.odd || !(1..=255).contains(&m.depth) {
                return Err(CliError::Parse("enveloping modes need 1 ≤ depth and odd = false".into()));
            }
            word.push(Mode::new(m.x, m.depth as u8));
        }
        out = out.add(&AlgElem::from_word(Flavor::Enveloping, &word, tau, &c));
    }
    Ok(out)
}

pub fn state_from_json(v: &Value, va: &VertexAlgebra) -> Result<VState, CliError> {
    let mut out = VState::zero();
    for (c, modes, tau) in raw_terms(v)? {
        if tau != 0 {
            return Err(CliError::Parse("states carry no τ".into()));
        }
        let mut word = Vec::new();
        for m in modes {
            let mode = if m.odd {
                VMode::psi(m.x, -(m.depth as i16))
            } else {
                VMode::even(m.x, -(m.depth as i16))
            };
            if m.depth < 0 || (!m.odd && m.depth < 1) || va.check_mode(mode).is_err() {
                return Err(CliError::Parse(format!("invalid mode {mode}")));
            }
            word.push(mode);
        }
        out.add_scaled(&va.word(&word), &c);
    }
    Ok(out)
}

// ---------- command line ----------

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Brst,
    Miura,
    Axioms,
    QSquared,
    Intertwine,
    Leading,
    All,
}

#[derive(Parser, Debug)]
#[command(name = "walg", about = "Generators of rectangular W-algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// `k` (symbolic) or a rational value such as `3/2`
    #[arg(long, default_value = "k", global = true)]
    pub level: String,
    /// Weight bound for vertex algebra computations
    #[arg(long, default_value_t = DEFAULT_WEIGHT_BOUND, global = true)]
    pub depth_bound: u32,
    #[arg(long, default_value_t = 2024, global = true)]
    pub seed: u64,
    /// Print timings in reports
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print all W_ij^(r)
    Generators(ShapeArgs),
    /// Print the Miura images and check the factorization
    Miura(ShapeArgs),
    /// Print κ_b on the Levi basis (or all of b with --full)
    KappaTable {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        full: bool,
    },
    /// Run verification suites
    Verify {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Number of random instances for randomized suites
        #[arg(long)]
        count: Option<usize>,
    },
    /// a_(n) b for states read from JSON files
    Ope {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        from: i32,
        #[arg(long, default_value_t = 3)]
        to: i32,
    },
    /// The conformal vector for n = l = 2 and its OPE
    Conformal,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct ShapeArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub l: usize,
}

impl ShapeArgs {
    fn shape(&self) -> Result<Shape, CliError> {
        let shape = Shape::new(self.n, self.l).map_err(|e| CliError::Usage(e.to_string()))?;
        let max = walgebra::max_size();
        if shape.size() > max {
            return Err(CliError::Usage(format!(
                "n·l = {} exceeds the bound {max} (set {} to raise it)",
                shape.size(),
                walgebra::MAX_SIZE_ENV
            )));
        }
        Ok(shape)
    }
}

/// Symbolic or numeric level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Level {
    Symbolic,
    Value(Rational),
}

impl FromStr for Level {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Level, CliError> {
        if s.trim() == "k" {
            return Ok(Level::Symbolic);
        }
        Rational::from_str(s.trim())
            .map(Level::Value)
            .map_err(|_| CliError::Usage(format!("level must be `k` or a rational number, got `{s}`")))
    }
}

impl Level {
    fn apply(&self, c: &Scalar) -> Result<Scalar, CliError> {
        match self {
            Level::Symbolic => Ok(c.clone()),
            Level::Value(k0) => Ok(Scalar::from_rational(c.eval(k0)?)),
        }
    }

    fn alg(&self, a: &AlgElem) -> Result<AlgElem, CliError> {
        let mut terms = Vec::new();
        for (t, c) in a.terms() {
            terms.push((t.clone(), self.apply(c)?));
        }
        Ok(AlgElem::from_terms(a.flavor(), terms))
    }

    fn state(&self, s: &VState) -> Result<VState, CliError> {
        let mut terms = Vec::new();
        for (w, c) in s.terms() {
            terms.push((w.clone(), self.apply(c)?));
        }
        Ok(VState::from_monomials(terms))
    }
}

struct Ctx<'a> {
    format: Format,
    level: Level,
    timing: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn scalar(&self, c: &Scalar) -> Result<String, CliError> {
        let c = self.level.apply(c)?;
        Ok(match self.format {
            Format::Latex => c.to_latex(),
            _ => c.to_string(),
        })
    }

    fn alg(&self, a: &AlgElem) -> Result<Value, CliError> {
        let a = self.level.alg(a)?;
        Ok(match self.format {
            Format::Json => alg_to_json(&a),
            Format::Latex => Value::String(a.to_latex()),
            Format::Text => Value::String(a.to_string()),
        })
    }

    fn state(&self, s: &VState) -> Result<Value, CliError> {
        let s = self.level.state(s)?;
        Ok(match self.format {
            Format::Json => state_to_json(&s),
            Format::Latex => Value::String(s.to_latex()),
            Format::Text => Value::String(s.to_string()),
        })
    }

    fn line(&mut self, s: &str) -> Result<(), CliError> {
        writeln!(self.out, "{s}")?;
        Ok(())
    }

    fn emit_reports(&mut self, reports: &[Report]) -> Result<bool, CliError> {
        let ok = reports.iter().all(Report::passed);
        if self.format == Format::Json {
            let v: Vec<Value> = reports.iter().map(|r| r.to_json(self.timing)).collect();
            let doc = json!({"passed": ok, "reports": v});
            self.line(&serde_json::to_string_pretty(&doc).expect("serializable"))?;
        } else {
            for r in reports {
                let text = r.render_text(self.timing);
                write!(self.out, "{text}")?;
            }
            self.line(if ok { "ALL PASS" } else { "FAILURES" })?;
        }
        Ok(ok)
    }
}

fn text_or_json(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn generator_name(format: Format, i: usize, j: usize, r: usize) -> String {
    match format {
        Format::Latex => format!("W_{{{i}{j}}}^{{({r})}}"),
        _ => format!("W_{i}{j}^({r})"),
    }
}

fn print_table(ctx: &mut Ctx, gens: &GeneratorSet, map: impl Fn(&AlgElem) -> AlgElem, prefix: &str) -> Result<(), CliError> {
    let shape = *gens.shape();
    if ctx.format == Format::Json {
        let mut rows = Vec::new();
        for ((i, j, r), w) in gens.iter() {
            rows.push(json!({"i": i, "j": j, "r": r, "element": ctx.alg(&map(w))?}));
        }
        let doc = json!({"n": shape.n, "l": shape.l, "alpha": scalar_to_json(&ctx.level.apply(&shape.alpha())?), "generators": rows});
        return ctx.line(&serde_json::to_string_pretty(&doc).expect("serializable"));
    }
    for ((i, j, r), w) in gens.iter() {
        let name = generator_name(ctx.format, i, j, r);
        let body = text_or_json(&ctx.alg(&map(w))?);
        let line = match ctx.format {
            Format::Latex if prefix.is_empty() => format!("{name} &= {body} \\\\"),
            Format::Latex => format!("\\nu({name}) &= {body} \\\\"),
            _ if prefix.is_empty() => format!("{name} = {body}"),
            _ => format!("{prefix}({name}) = {body}"),
        };
        ctx.line(&line)?;
    }
    Ok(())
}

/// κ_b basis order: diagonal units, then the rest of the Levi part, then `m`.
pub fn kappa_basis(shape: &Shape, full: bool) -> Vec<GlBasis> {
    let size = shape.size() as u8;
    let mut basis: Vec<GlBasis> = (1..=size).map(|i| GlBasis { i, j: i }).collect();
    basis.extend(shape.basis_levi().into_iter().filter(|x| x.i != x.j));
    if full {
        basis.extend(shape.basis_m());
    }
    basis
}

fn kappa_table(ctx: &mut Ctx, shape: Shape, full: bool) -> Result<(), CliError> {
    let basis = kappa_basis(&shape, full);
    let mut rows = Vec::new();
    for &y in &basis {
        let mut row = Vec::new();
        for &x in &basis {
            row.push(ctx.level.apply(&kappa_b_basis(x, y, &shape))?);
        }
        rows.push(row);
    }
    match ctx.format {
        Format::Json => {
            let doc = json!({
                "basis": basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "rows": rows.iter().map(|r| r.iter().map(scalar_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            ctx.line(&serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        Format::Text => {
            let header: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
            ctx.line(&format!("y\\x\t{}", header.join("\t")))?;
            for (y, row) in basis.iter().zip(&rows) {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                ctx.line(&format!("{y}\t{}", cells.join("\t")))?;
            }
            Ok(())
        }
        Format::Latex => {
            let header: Vec<String> = basis.iter().map(|b| format!("$e_{{{}{}}}$", b.i, b.j)).collect();
            ctx.line(&format!(" & {} \\\\", header.join(" & ")))?;
            for (y, row) in basis.iter().zip(&rows) {
                let cells: Vec<String> = row.iter().map(|c| format!("${}$", c.to_latex())).collect();
                ctx.line(&format!("$e_{{{}{}}}$ & {} \\\\", y.i, y.j, cells.join(" & ")))?;
            }
            Ok(())
        }
    }
}

/// Vertex axioms on random homogeneous states of weight ≤ `max_weight`.
pub fn axioms_suite(shape: Shape, seed: u64, count: usize, max_weight: u32) -> Report {
    let va = VertexAlgebra::new(shape);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("vertex axioms {shape} seed {seed}"));
    for idx in 0..count {
        let start = Instant::now();
        let parities: [bool; 3] = [rng.gen_bool(0.3), rng.gen_bool(0.3), rng.gen_bool(0.3)];
        let a = va.random_state(&mut rng, max_weight, parities[0]);
        let b = va.random_state(&mut rng, max_weight, parities[1]);
        let c = va.random_state(&mut rng, max_weight, parities[2]);
        let (m, n) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let checks = [
            ("skew-symmetry", va.skew_symmetry_defect(&a, m, &b)),
            ("commutator", va.commutator_defect(&a, m, &b, n, &c)),
            ("quasi-associativity", va.quasi_associativity_defect(&a, &b, &c)),
            ("D-derivation", va.translation_defects(&a, m, &b).0),
            ("(Da)_(n)", va.translation_defects(&a, m, &b).1),
        ];
        let bad = checks.iter().find(|(_, d)| !d.is_zero());
        report.push_timed(
            format!("instance {idx}"),
            bad.is_none(),
            bad.map(|(name, d)| format!("{name}: {}", d.first_term())),
            start,
        );
    }
    report
}

/// `Q² = 0` and `[Q, D] = 0` on random states, plus every generator state.
pub fn q_squared_suite(shape: Shape, seed: u64, count: usize, max_weight: u32) -> Report {
    let q = Brst::new(shape);
    let va = q.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("Q^2 and [Q,D] {shape} seed {seed}"));
    for x in shape.basis_b() {
        for odd in [false, true] {
            if odd && !shape.in_m(x) {
                continue;
            }
            let start = Instant::now();
            let qq = q.q_apply(&q.q_on_generator(x, odd));
            let name = format!("Q^2 on {}", if odd { VMode::psi(x, 0) } else { VMode::even(x, -1) });
            report.push_timed(name, qq.is_zero(), (!qq.is_zero()).then(|| qq.first_term().to_string()), start);
        }
    }
    for idx in 0..count {
        let start = Instant::now();
        let odd = rng.gen_bool(0.3);
        let a = va.random_state(&mut rng, max_weight, odd);
        let qq = q.q_apply(&q.q_apply(&a));
        let qd = q.q_apply(&va.translate(&a)).sub(&va.translate(&q.q_apply(&a)));
        let ok = qq.is_zero() && qd.is_zero();
        let witness = (!ok).then(|| format!("{a}"));
        report.push_timed(format!("instance {idx}"), ok, witness, start);
    }
    report
}

/// `Q(a_(−1)b) = (Qa)_(−1)b + (−1)^{|a|} a_(−1)Qb` on random pairs.
pub fn derivation_suite(shape: Shape, seed: u64, count: usize) -> Report {
    let q = Brst::new(shape);
    let va = q.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("Q derivation {shape} seed {seed}"));
    for idx in 0..count {
        let start = Instant::now();
        let pa = rng.gen_bool(0.3);
        let pb = rng.gen_bool(0.3);
        let a = va.random_state(&mut rng, 2, pa);
        let b = va.random_state(&mut rng, 2, pb);
        let lhs = q.q_apply(&va.product(&a, -1, &b));
        let mut rhs = va.product(&q.q_apply(&a), -1, &b);
        rhs.add_scaled(&va.product(&a, -1, &q.q_apply(&b)), &Scalar::from_int(if pa { -1 } else { 1 }));
        let d = lhs.sub(&rhs);
        report.push_timed(format!("instance {idx}"), d.is_zero(), (!d.is_zero()).then(|| d.first_term().to_string()), start);
    }
    report
}

/// `[Q, T̃_pq(a)] = T̃_pq([Q̄, a])` for every principal generator state `a`.
pub fn intertwine_suite(shape: Shape) -> Report {
    let rect = Brst::new(shape);
    let bar = principal_comparison(shape);
    let ps = *bar.algebra().shape();
    let mut report = Report::new(format!("intertwining {shape} at level {}", shape.shifted_level()));
    for x in ps.basis_b() {
        for odd in [false, true] {
            if odd && !ps.in_m(x) {
                continue;
            }
            for p in 1..=shape.n {
                for q in 1..=shape.n {
                    let start = Instant::now();
                    let label = if odd { VMode::psi(x, 0) } else { VMode::even(x, -1) };
                    match intertwining_defect(&rect, &bar, x, odd, p, q) {
                        Ok(d) => report.push_timed(
                            format!("T~_{p}{q}({label})"),
                            d.is_zero(),
                            (!d.is_zero()).then(|| d.first_term().to_string()),
                            start,
                        ),
                        Err(e) => report.push_timed(format!("T~_{p}{q}({label})"), false, Some(e.to_string()), start),
                    }
                }
            }
        }
    }
    report
}

fn verify(ctx: &mut Ctx, shape: Shape, suite: Suite, count: Option<usize>, seed: u64) -> Result<bool, CliError> {
    let gens = walgebra::extract_generators(shape)?;
    let mut reports = Vec::new();
    let want = |s: Suite| suite == s || suite == Suite::All;
    if want(Suite::Brst) {
        reports.push(walgebra::verify_reconstruction(&gens));
        reports.push(walgebra::verify_closure(&gens));
    }
    if want(Suite::Miura) {
        reports.push(walgebra::verify_miura_factorization(&gens));
    }
    if want(Suite::Leading) {
        reports.push(walgebra::verify_homogeneity(&gens));
        reports.push(walgebra::verify_centralizer_basis(&gens));
    }
    if want(Suite::Axioms) {
        reports.push(axioms_suite(shape, seed, count.unwrap_or(200), 2));
    }
    if want(Suite::QSquared) {
        reports.push(q_squared_suite(shape, seed, count.unwrap_or(100), 3));
        reports.push(derivation_suite(shape, seed, count.unwrap_or(100).min(50)));
    }
    if want(Suite::Intertwine) {
        reports.push(intertwine_suite(shape));
    }
    ctx.emit_reports(&reports)
}

fn read_state(path: &PathBuf, va: &VertexAlgebra) -> Result<VState, CliError> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
    state_from_json(&v, va)
}

fn ope(ctx: &mut Ctx, va: &VertexAlgebra, a: &VState, b: &VState, from: i32, to: i32) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for n in from..=to {
        let p = va.nth_product(a, n, b).map_err(|e| CliError::Usage(e.to_string()))?;
        rows.push((n, p));
    }
    if ctx.format == Format::Json {
        let mut out = Vec::new();
        for (n, p) in &rows {
            out.push(json!({"n": n, "product": ctx.state(p)?}));
        }
        return ctx.line(&serde_json::to_string_pretty(&json!({ "products": out })).expect("serializable"));
    }
    for (n, p) in &rows {
        let body = text_or_json(&ctx.state(p)?);
        ctx.line(&format!("a_({n})b = {body}"))?;
    }
    Ok(())
}

fn conformal(ctx: &mut Ctx, bound: u32) -> Result<bool, CliError> {
    let shape = Shape::new(2, 2).expect("valid shape");
    let gens = walgebra::extract_generators(shape)?;
    let va = VertexAlgebra::new(shape).with_weight_bound(bound);
    let l = walgebra::conformal_vector_22(&gens, &va)?;
    let body = ctx.state(&l)?;
    if ctx.format == Format::Json {
        ctx.line(&serde_json::to_string_pretty(&json!({"L": body})).expect("serializable"))?;
    } else {
        ctx.line(&format!("L = {}", text_or_json(&body)))?;
        ctx.line(&format!("target c/2 = {}", ctx.scalar(&walgebra::central_term_22())?))?;
        ctx.line(&format!("computed c/2 = {}", ctx.scalar(&walgebra::computed_central_term_22())?))?;
    }
    let report = walgebra::verify_virasoro_22(&gens)?;
    ctx.emit_reports(&[report])
}

/// Runs the command line, writing to `out`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let level = Level::from_str(&cli.level)?;
    let mut ctx = Ctx {
        format: cli.format,
        level,
        timing: cli.timing,
        out,
    };
    match &cli.command {
        Command::Generators(s) => {
            let gens = walgebra::extract_generators(s.shape()?)?;
            print_table(&mut ctx, &gens, |w| w.clone(), "")?;
            Ok(true)
        }
        Command::Miura(s) => {
            let shape = s.shape()?;
            let gens = walgebra::extract_generators(shape)?;
            print_table(&mut ctx, &gens, |w| walgebra::miura(w, &shape), "nu")?;
            let report = walgebra::verify_miura_factorization(&gens);
            if ctx.format == Format::Json {
                return Ok(report.passed());
            }
            ctx.emit_reports(&[report])
        }
        Command::KappaTable { shape, full } => {
            kappa_table(&mut ctx, shape.shape()?, *full)?;
            Ok(true)
        }
        Command::Verify { shape, suite, count } => verify(&mut ctx, shape.shape()?, *suite, *count, cli.seed),
        Command::Ope {
            shape,
            left,
            right,
            from,
            to,
        } => {
            if from > to {
                return Err(CliError::Usage("--from must not exceed --to".into()));
            }
            let va = VertexAlgebra::new(shape.shape()?).with_weight_bound(cli.depth_bound);
            let a = read_state(left, &va)?;
            let b = read_state(right, &va)?;
            ope(&mut ctx, &va, &a, &b, *from, *to)?;
            Ok(true)
        }
        Command::Conformal => conformal(&mut ctx, cli.depth_bound),
    }
}
