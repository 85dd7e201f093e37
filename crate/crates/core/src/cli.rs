//! Batch front end: germ-description files in, Morse-pair reports out.
//!
//! Input is line oriented; `#` starts a comment:
//!
//! ```text
//! vars x y z
//! stratum O dim 0 closure x, y, z
//! stratum V dim 1 closure y, z
//! stratum W dim 2 closure x*z^2 - y^2
//! f y^2 - (x - z)^2
//! l x + 2*z
//! option seed = 7
//! ```
//!
//! A closure list of `0` declares an open stratum with no equations.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{Ideal, Multiplicity};
use crate::poly::{Polynomial, Rational};
use crate::polar::{self, CheckOutcome, GenericityReport, StratifiedGerm, Stratum, StratumAnalysis};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "structured" | "json" => Ok(OutputFormat::Structured),
            other => Err(format!("unknown output format '{other}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobOptions {
    /// Random linear forms to try when no `l` is given.
    pub random_l_attempts: u32,
    /// Random coefficients are drawn from `[-bound, bound]`.
    pub coefficient_bound: u32,
    pub output_format: OutputFormat,
    /// Largest truncation degree tried by the Milnor oracle; 0 disables it.
    pub oracle_degree_bound: u32,
    pub seed: u64,
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions {
            random_l_attempts: 5,
            coefficient_bound: 10,
            output_format: OutputFormat::Text,
            oracle_degree_bound: 12,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub germ: StratifiedGerm,
    pub f: Polynomial,
    pub l: Option<Polynomial>,
    pub options: JobOptions,
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer<'a> {
    line: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
    end_col: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^(),=".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(parse_err(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

impl Lexer<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        parse_err(self.line, self.col(), message)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.nvars());
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Ok(acc);
            };
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            first = false;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.power()?;
                    if !d.is_constant() {
                        return Err(parse_err(self.line, col, "division by a non-constant"));
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(parse_err(self.line, col, "division by zero"));
                    }
                    acc = acc.scale(&(Rational::one() / c));
                }
                // implicit multiplication: `2x`, `x y`, `3(x+1)`
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(')) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.err("expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.nvars();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(n, Rational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                let Some(i) = self.names.iter().position(|v| *v == name) else {
                    return Err(self.err(format!("undeclared variable '{name}'")));
                };
                self.pos += 1;
                Ok(Polynomial::var(n, i))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(Tok::Sym(c)) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of line")),
        }
    }

    fn poly_list(&mut self) -> Result<Vec<Polynomial>> {
        let mut out = vec![self.expr()?];
        while self.eat(',') {
            out.push(self.expr()?);
        }
        self.finish()?;
        Ok(out)
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.err("unexpected trailing input")),
        }
    }
}

/// Splits a line into its keyword and the remainder, with the column at
/// which the remainder starts.
fn split_word(s: &str, col: usize) -> (&str, &str, usize) {
    let trimmed = s.trim_start();
    let col = col + s.chars().count() - trimmed.chars().count();
    let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
    let (word, rest) = trimmed.split_at(end);
    (word, rest, col + word.chars().count())
}

fn parse_poly_line(text: &str, line: usize, col: usize, names: &[String]) -> Result<Polynomial> {
    let mut lx = Lexer {
        line,
        toks: tokenize(text, line, col)?,
        pos: 0,
        names,
        end_col: col + text.chars().count(),
    };
    let p = lx.expr()?;
    lx.finish()?;
    Ok(p)
}

fn parse_u64(value: &str, line: usize, col: usize) -> Result<u64> {
    value
        .parse()
        .map_err(|_| parse_err(line, col, format!("expected a non-negative integer, got '{value}'")))
}

pub fn parse_input(text: &str) -> Result<JobSpec> {
    let mut names: Option<Vec<String>> = None;
    let mut strata: Vec<Stratum> = Vec::new();
    let mut f: Option<Polynomial> = None;
    let mut l: Option<Polynomial> = None;
    let mut options = JobOptions::default();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let (keyword, rest, rest_col) = split_word(content, 1);
        let keyword_col = rest_col - keyword.chars().count();
        if keyword != "vars" && names.is_none() {
            return Err(parse_err(line, keyword_col, "expected 'vars' declaration first"));
        }
        match keyword {
            "vars" => {
                if names.is_some() {
                    return Err(parse_err(line, keyword_col, "duplicate 'vars' declaration"));
                }
                let mut vs: Vec<String> = Vec::new();
                for (tok, col) in tokenize(rest, line, rest_col)? {
                    match tok {
                        Tok::Ident(v) if !vs.contains(&v) => vs.push(v),
                        Tok::Ident(v) => {
                            return Err(parse_err(line, col, format!("duplicate variable '{v}'")))
                        }
                        _ => return Err(parse_err(line, col, "expected a variable name")),
                    }
                }
                if vs.is_empty() {
                    return Err(parse_err(line, rest_col, "expected at least one variable"));
                }
                names = Some(vs);
            }
            "stratum" => {
                let vars = names.as_deref().expect("checked above");
                let (name, rest, col) = split_word(rest, rest_col);
                let name_col = col - name.chars().count();
                if name.is_empty() {
                    return Err(parse_err(line, name_col, "expected a stratum name"));
                }
                if strata.iter().any(|s| s.name() == name) {
                    return Err(parse_err(line, name_col, format!("duplicate stratum name '{name}'")));
                }
                let (kw, rest, col) = split_word(rest, col);
                if kw != "dim" {
                    return Err(parse_err(line, col - kw.chars().count(), "expected 'dim'"));
                }
                let (dim, rest, col) = split_word(rest, col);
                let dim = parse_u64(dim, line, col - dim.chars().count())? as usize;
                let (kw, rest, col) = split_word(rest, col);
                if kw != "closure" {
                    return Err(parse_err(line, col - kw.chars().count(), "expected 'closure'"));
                }
                let mut lx = Lexer {
                    line,
                    toks: tokenize(rest, line, col)?,
                    pos: 0,
                    names: vars,
                    end_col: col + rest.chars().count(),
                };
                let gens = lx.poly_list()?;
                strata.push(Stratum::new(name, dim, Ideal::new(vars.len(), gens)?));
            }
            "f" | "l" => {
                let vars = names.as_deref().expect("checked above");
                let slot = if keyword == "f" { &mut f } else { &mut l };
                if slot.is_some() {
                    return Err(parse_err(line, keyword_col, format!("duplicate '{keyword}' declaration")));
                }
                let p = parse_poly_line(rest, line, rest_col, vars)?;
                if keyword == "l" && !p.is_linear_form() {
                    return Err(parse_err(line, rest_col + 1, "l must be a nonzero linear homogeneous form"));
                }
                *slot = Some(p);
            }
            "option" => {
                let Some((key, value)) = rest.split_once('=') else {
                    return Err(parse_err(line, rest_col, "expected 'option name = value'"));
                };
                let key = key.trim();
                let value_col = rest_col + key.chars().count() + 2;
                let value = value.trim();
                match key {
                    "random_l_attempts" => {
                        options.random_l_attempts = parse_u64(value, line, value_col)? as u32
                    }
                    "coefficient_bound" => {
                        let b = parse_u64(value, line, value_col)?;
                        if b == 0 {
                            return Err(parse_err(line, value_col, "coefficient_bound must be positive"));
                        }
                        options.coefficient_bound = b as u32;
                    }
                    "output_format" => {
                        options.output_format =
                            value.parse().map_err(|m: String| parse_err(line, value_col, m))?
                    }
                    "oracle_degree_bound" => {
                        options.oracle_degree_bound = parse_u64(value, line, value_col)? as u32
                    }
                    "seed" => options.seed = parse_u64(value, line, value_col)?,
                    other => {
                        return Err(parse_err(line, rest_col, format!("unknown option '{other}'")))
                    }
                }
            }
            other => {
                return Err(parse_err(line, keyword_col, format!("unknown keyword '{other}'")));
            }
        }
    }

    let Some(names) = names else {
        return Err(parse_err(last_line.max(1), 1, "missing 'vars' declaration"));
    };
    let Some(f) = f else {
        return Err(parse_err(last_line.max(1), 1, "missing 'f' declaration"));
    };
    if !f.constant_term().is_zero() {
        return Err(Error::InvalidGerm("f must vanish at the origin".into()));
    }
    let germ = StratifiedGerm::new(names, strata)?;
    Ok(JobSpec {
        germ,
        f,
        l,
        options,
    })
}

// ---------------------------------------------------------------------------
// Running

/// Where the linear form came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum LinearFormSource {
    Given,
    Random { attempt: u32 },
}

/// Draws a random linear form with coefficients in `[-bound, bound]`, not
/// all zero.
pub fn random_linear_form(rng: &mut impl Rng, nvars: usize, bound: u32) -> Polynomial {
    let bound = i64::from(bound.max(1));
    loop {
        let coeffs: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-bound..=bound)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut l = Polynomial::zero(nvars);
        for (i, c) in coeffs.into_iter().enumerate() {
            l = &l + &Polynomial::var(nvars, i).scale(&Rational::from_integer(c.into()));
        }
        return l;
    }
}

/// Picks the linear form: the given one, or the first seeded random
/// candidate that passes all genericity checks.
pub fn choose_linear_form(job: &JobSpec) -> Result<(Polynomial, LinearFormSource, Vec<StratumAnalysis>)> {
    if let Some(l) = &job.l {
        let analyses = polar::analyze(&job.germ, &job.f, l)?;
        return Ok((l.clone(), LinearFormSource::Given, analyses));
    }
    let attempts = job.options.random_l_attempts;
    let mut rng = ChaCha8Rng::seed_from_u64(job.options.seed);
    for attempt in 1..=attempts {
        let l = random_linear_form(&mut rng, job.germ.nvars(), job.options.coefficient_bound);
        let analyses = polar::analyze(&job.germ, &job.f, &l)?;
        if analyses.iter().all(StratumAnalysis::checks_passed) {
            return Ok((l, LinearFormSource::Random { attempt }, analyses));
        }
    }
    Err(Error::NoAdmissibleLinearForm { attempts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    pub name: String,
    pub dim: usize,
    pub polar_generators: Vec<String>,
    pub mult_f: Multiplicity,
    pub mult_l: Multiplicity,
    pub morse_number: Option<u64>,
    pub checks: Vec<CheckOutcome>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorsePairEntry {
    pub stratum: String,
    pub morse_number: u64,
}

/// Milnor-number cross-check for a smooth ambient germ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub degree_bound: u32,
    /// `None` when no truncation degree up to the bound was conclusive.
    pub milnor_number: Option<u64>,
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub variables: Vec<String>,
    pub f: String,
    pub l: String,
    pub l_source: LinearFormSource,
    pub strata: Vec<StratumReport>,
    pub morse_pairs: Vec<MorsePairEntry>,
    pub oracle: Option<OracleReport>,
    /// Always false: checking that each polar ideal is radical would need a
    /// radical computation. A non-reduced polar ideal overcounts.
    pub polar_reducedness_verified: bool,
    pub all_checks_passed: bool,
}

impl Report {
    /// Every stratum has a Morse number, every check passed and the oracle,
    /// if run, does not disagree.
    pub fn success(&self) -> bool {
        self.all_checks_passed
    }
}

fn stratum_report(a: &StratumAnalysis, names: &[String]) -> Result<StratumReport> {
    let basis = a.polar.groebner()?;
    let polar_generators = basis
        .generators()
        .iter()
        .map(|g| g.render_canonical(names))
        .collect();
    let (morse_number, error) = match a.morse_number() {
        Ok(m) => (Some(m), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(StratumReport {
        name: a.name.clone(),
        dim: a.dim,
        polar_generators,
        mult_f: a.mult_f,
        mult_l: a.mult_l,
        morse_number,
        checks: a.checks(),
        error,
    })
}

pub fn run(job: &JobSpec) -> Result<Report> {
    let names = job.germ.variables();
    let (l, l_source, analyses) = choose_linear_form(job)?;
    let strata = analyses
        .iter()
        .map(|a| stratum_report(a, names))
        .collect::<Result<Vec<_>>>()?;
    let morse_pairs: Vec<MorsePairEntry> = strata
        .iter()
        .filter_map(|s| {
            s.morse_number.map(|m| MorsePairEntry {
                stratum: s.name.clone(),
                morse_number: m,
            })
        })
        .collect();

    let oracle = (job.germ.is_smooth() && job.options.oracle_degree_bound > 0).then(|| {
        let bound = job.options.oracle_degree_bound;
        let milnor = polar::milnor_number(&job.f, 1, bound);
        let agrees = milnor.map(|mu| strata[0].morse_number == Some(mu));
        OracleReport {
            degree_bound: bound,
            milnor_number: milnor,
            agrees,
        }
    });

    let all_checks_passed = strata
        .iter()
        .all(|s| s.morse_number.is_some() && s.checks.iter().all(|c| c.passed))
        && oracle.as_ref().is_none_or(|o| o.agrees != Some(false));

    Ok(Report {
        variables: names.to_vec(),
        f: job.f.render(names),
        l: l.render(names),
        l_source,
        strata,
        morse_pairs,
        oracle,
        polar_reducedness_verified: false,
        all_checks_passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub variables: Vec<String>,
    pub f: String,
    pub l: String,
    pub l_source: LinearFormSource,
    pub genericity: GenericityReport,
    pub passed: bool,
}

/// Genericity checks only, without assembling Morse numbers.
pub fn run_checks(job: &JobSpec) -> Result<CheckReport> {
    let names = job.germ.variables();
    let (l, l_source, analyses) = choose_linear_form(job)?;
    let genericity = GenericityReport::from_analyses(&analyses);
    Ok(CheckReport {
        variables: names.to_vec(),
        f: job.f.render(names),
        l: l.render(names),
        l_source,
        passed: genericity.passed(),
        genericity,
    })
}

// ---------------------------------------------------------------------------
// Rendering

fn source_label(s: LinearFormSource) -> String {
    match s {
        LinearFormSource::Given => "given".into(),
        LinearFormSource::Random { attempt } => format!("random, attempt {attempt}"),
    }
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_report(report: &Report, format: OutputFormat) -> String {
    if format == OutputFormat::Structured {
        return json(report);
    }
    let mut out = String::new();
    let _ = writeln!(out, "vars {}", report.variables.join(" "));
    let _ = writeln!(out, "f = {}", report.f);
    let _ = writeln!(out, "l = {} ({})", report.l, source_label(report.l_source));
    out.push('\n');
    out.push_str("stratum dim mult_f mult_l m_V checks\n");
    for s in &report.strata {
        let m = s.morse_number.map_or("-".to_string(), |m| m.to_string());
        let failed: Vec<&str> = s.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        let checks = if failed.is_empty() {
            "pass".to_string()
        } else {
            format!("fail:{}", failed.join(","))
        };
        let _ = writeln!(out, "{} {} {} {} {} {}", s.name, s.dim, s.mult_f, s.mult_l, m, checks);
    }
    out.push('\n');
    for s in &report.strata {
        let _ = writeln!(out, "polar {}: {}", s.name, s.polar_generators.join(", "));
    }
    for s in report.strata.iter().filter(|s| s.error.is_some()) {
        let _ = writeln!(out, "error {}: {}", s.name, s.error.as_deref().unwrap_or_default());
    }
    for s in &report.strata {
        for c in s.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(out, "check {} {}: {}", s.name, c.name, c.detail);
        }
    }
    let pairs: Vec<String> = report
        .morse_pairs
        .iter()
        .map(|p| format!("({}, {})", p.stratum, p.morse_number))
        .collect();
    let _ = writeln!(out, "M(f) = {{{}}}", pairs.join(", "));
    if let Some(o) = &report.oracle {
        let verdict = match (o.milnor_number, o.agrees) {
            (Some(mu), Some(true)) => format!("milnor number {mu}, agrees"),
            (Some(mu), _) => format!("milnor number {mu}, DISAGREES"),
            (None, _) => format!("inconclusive up to degree {}", o.degree_bound),
        };
        let _ = writeln!(out, "oracle: {verdict}");
    }
    if !report.polar_reducedness_verified {
        out.push_str("note: polar ideals are not verified to be reduced\n");
    }
    let status = if report.all_checks_passed { "all checks passed" } else { "FAILED" };
    let _ = writeln!(out, "status: {status}");
    out
}

pub fn render_check_report(report: &CheckReport, format: OutputFormat) -> String {
    if format == OutputFormat::Structured {
        return json(report);
    }
    let mut out = String::new();
    let _ = writeln!(out, "l = {} ({})", report.l, source_label(report.l_source));
    for s in &report.genericity.strata {
        for c in &s.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{} {} {}: {}", s.stratum, c.name, mark, c.detail);
        }
    }
    let status = if report.passed { "all checks passed" } else { "FAILED" };
    let _ = writeln!(out, "status: {status}");
    out
}

pub fn parse_report(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}
