//! End-to-end runs: parse, normalise, classify, compute, optionally verify,
//! and collect every intermediate in a [`Report`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::asreduce;
use crate::blowup::TermId;
use crate::field::check_prime;
use crate::laurent::MAX_VARS;
use crate::parse::{max_variable_index, parse_expr, render_laurent, render_poly};
use crate::rsw::{self, Case, CoveringData, RswError};
use crate::Error;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub p: u32,
    pub f: String,
    pub g: String,
    pub h: String,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub precision: Option<u32>,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub f: String,
    pub g: String,
    pub h: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub f: String,
    pub g: String,
    pub h: String,
    /// `u` with `normalized = input + u^p - u`.
    pub witnesses: Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RswReport {
    pub k: u32,
    pub dlogt: String,
    pub dx: Vec<String>,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub K1Sp: Option<i64>,
    pub fSp: Option<i64>,
    pub K1K2: Option<i64>,
    pub gTp: Option<i64>,
    pub K4: Option<i64>,
    pub fK2: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub p: u32,
    pub input: Triple,
    pub normalized: Option<Normalized>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub r: Option<u32>,
    pub case: Option<Case>,
    pub k: Option<u32>,
    pub rsw: Option<RswReport>,
    pub integral: Option<bool>,
    pub table: Option<TableReport>,
    pub verified: Option<bool>,
    pub error: Option<ErrorReport>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_THEOREM: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Field(_) => "InvalidPrime",
        Error::Parse(_) | Error::Laurent(_) => "Parse",
        Error::ArtinSchreier(_) => "Unramified",
        Error::Rsw(RswError::NotNormalized { .. }) => "NotNormalized",
        Error::Rsw(RswError::DegenerateCaseThree) => "DegenerateCaseThree",
        Error::Rsw(RswError::ThresholdViolated { .. }) => "ThresholdViolated",
        Error::Rsw(RswError::VerificationMismatch { .. }) => "VerificationMismatch",
        Error::Blowup(_) | Error::Heisenberg(_) | Error::Oracle(_) => "Internal",
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.error.as_ref().map(|e| e.kind.as_str()) {
            None if self.verified == Some(false) => EXIT_VERIFY,
            None => EXIT_OK,
            Some("InvalidPrime" | "Parse") => EXIT_INPUT,
            Some("VerificationMismatch") => EXIT_VERIFY,
            Some(_) => EXIT_THEOREM,
        }
    }

    /// The job that reproduces this report.
    pub fn rerun_spec(&self) -> JobSpec {
        JobSpec {
            p: self.p,
            f: self.input.f.clone(),
            g: self.input.g.clone(),
            h: self.input.h.clone(),
            verify: self.verified.is_some(),
            precision: None,
            format: OutputFormat::Json,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p = {}", self.p);
        let inputs = [("f", &self.input.f), ("g", &self.input.g), ("h", &self.input.h)];
        for (i, (name, src)) in inputs.iter().enumerate() {
            let _ = write!(s, "{name} = {src}");
            if let Some(nz) = &self.normalized {
                let (v, w) = match i {
                    0 => (&nz.f, &nz.witnesses.f),
                    1 => (&nz.g, &nz.witnesses.g),
                    _ => (&nz.h, &nz.witnesses.h),
                };
                if w != "0" {
                    let _ = write!(s, "  ~>  {v}  (u = {w})");
                }
            }
            s.push('\n');
        }
        if let (Some(n), Some(m), Some(r)) = (self.n, self.m, self.r) {
            let _ = writeln!(s, "n = {n}, m = {m}, r = {r}");
        }
        if let Some(c) = self.case {
            let _ = writeln!(s, "case: {c}");
        }
        if let Some(k) = self.k {
            let _ = writeln!(s, "sw = {k}");
        }
        if let Some(r) = &self.rsw {
            let _ = writeln!(s, "rsw = {}", render_rsw(r));
        }
        if let Some(i) = self.integral {
            let _ = writeln!(s, "integral: {i}");
        }
        if let Some(t) = &self.table {
            let cell = |v: Option<i64>| v.map_or("?".to_string(), |v| v.to_string());
            let _ = writeln!(
                s,
                "table: K1Sp={} fSp={} K1K2={} gTp={} K4={} fK2={}",
                cell(t.K1Sp),
                cell(t.fSp),
                cell(t.K1K2),
                cell(t.gTp),
                cell(t.K4),
                cell(t.fK2)
            );
        }
        if let Some(v) = self.verified {
            let _ = writeln!(s, "verified: {v}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error ({}): {}", e.kind, e.message);
        }
        s
    }
}

/// `a dlog t + b_1 dx1 + ... at level k`, in the expression grammar.
pub fn render_rsw(r: &RswReport) -> String {
    let mut parts = Vec::new();
    let mut push = |c: &str, basis: String| match c {
        "0" => {}
        "1" => parts.push(basis),
        c if c.contains(" + ") => parts.push(format!("({c}) {basis}")),
        c => parts.push(format!("{c} {basis}")),
    };
    push(&r.dlogt, "dlog t".into());
    for (i, b) in r.dx.iter().enumerate() {
        push(b, format!("dx{}", i + 1));
    }
    if parts.is_empty() {
        parts.push("0".into());
    }
    format!("{} at level {}", parts.join(" + "), r.k)
}

pub fn run(job: &JobSpec) -> Report {
    let mut report = Report {
        p: job.p,
        input: Triple {
            f: job.f.clone(),
            g: job.g.clone(),
            h: job.h.clone(),
        },
        normalized: None,
        n: None,
        m: None,
        r: None,
        case: None,
        k: None,
        rsw: None,
        integral: None,
        table: None,
        verified: None,
        error: None,
    };
    if let Err(Failure { err, input }) = run_into(job, &mut report) {
        let message = match input {
            Some(name) => format!("{name}: {err}"),
            None => err.to_string(),
        };
        report.error = Some(ErrorReport {
            kind: error_kind(&err).to_string(),
            message,
        });
    }
    report
}

/// An error together with the input it concerns.
struct Failure {
    err: Error,
    input: Option<&'static str>,
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            err: e.into(),
            input: None,
        }
    }
}

fn about<E: Into<Error>>(input: &'static str) -> impl Fn(E) -> Failure {
    move |e| Failure {
        err: e.into(),
        input: Some(input),
    }
}

fn run_into(job: &JobSpec, report: &mut Report) -> Result<(), Failure> {
    check_prime(job.p)?;
    let p = job.p;
    let d = [&job.f, &job.g, &job.h]
        .iter()
        .map(|s| max_variable_index(s))
        .max()
        .unwrap_or(0)
        .min(MAX_VARS);
    let f = parse_expr(&job.f, p, d).map_err(about("f"))?;
    let g = parse_expr(&job.g, p, d).map_err(about("g"))?;
    let h = parse_expr(&job.h, p, d).map_err(about("h"))?;

    let nf = asreduce::reduce(&f).map_err(about("f"))?;
    let ng = asreduce::reduce(&g).map_err(about("g"))?;
    let nh = asreduce::reduce(&h).map_err(about("h"))?;
    report.normalized = Some(Normalized {
        f: render_laurent(&nf.f0),
        g: render_laurent(&ng.f0),
        h: render_laurent(&nh.f0),
        witnesses: Triple {
            f: render_laurent(&nf.witness),
            g: render_laurent(&ng.witness),
            h: render_laurent(&nh.witness),
        },
    });

    let c = CoveringData::new(nf.f0, ng.f0, nh.f0)?;
    report.n = Some(c.n);
    report.m = Some(c.m);
    report.r = Some(c.r);
    report.case = Some(c.case());

    let res = rsw::compute_rsw_with(&c, job.precision)?;
    report.k = Some(res.k);
    report.rsw = Some(RswReport {
        k: res.k,
        dlogt: render_poly(&res.form.a0),
        dx: res.form.b0.iter().map(render_poly).collect(),
    });
    report.integral = Some(res.integral);
    let cell = |id: TermId| {
        let v = res.table.get(id);
        v.as_integer().filter(|_| v.exact)
    };
    report.table = Some(TableReport {
        K1Sp: cell(TermId::K1Sp),
        fSp: cell(TermId::FSp),
        K1K2: cell(TermId::K1K2),
        gTp: cell(TermId::GTp),
        K4: cell(TermId::K4),
        fK2: cell(TermId::FK2),
    });

    if job.verify {
        report.verified = Some(rsw::verify_via_blowup(&c, &res, job.precision)?);
    }
    Ok(())
}
