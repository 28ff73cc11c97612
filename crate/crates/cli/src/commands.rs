//! Command dispatch: every command produces one JSON document and an exit code
//! (0 predicate true or success, 1 predicate false, 2 invalid input).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use wdforge_core::compat::{compat_check, CompatLevel, CompatReport};
use wdforge_core::decomp::is_semisimple;
use wdforge_core::functor::{tau_independence_check, wd_of};
use wdforge_core::modl::{exists_scalar_outside_cyclotomic, is_decomposed_generic_at, is_enormous, scalar_outside_cyclotomic_witness};
use wdforge_core::phin::{hodge_tate_weights, is_weakly_admissible, l_invariant};
use wdforge_core::wd::{frobenius_semisimplify, is_generic_parameter, is_isomorphic, monodromy_dominates, segments, semisimplify, Segment, WdRep};
use wdforge_core::{Error, Field, Result};

use crate::io::{self, elem_to_json, field_to_json, rational_to_json, vector_to_json, wd_to_json};

pub const SCHEMA_VERSION: u64 = 1;

const ABOUT: &str = "Exact computations with (phi, N)-modules, Weil-Deligne representations and mod-l image conditions";

const LONG_ABOUT: &str = "\
Exact computations with (phi, N)-modules, Weil-Deligne representations and mod-l image conditions.

Every command reads JSON files and writes one JSON document to standard output carrying \
\"wdforge_schema\": 1. Exit codes: 0 = predicate true or success, 1 = predicate false, \
2 = invalid input.

Normalization: automorphic parameters are taken as already normalized. The caller applies \
the |det|^(-1/2) twist before writing the input, because q^(1/2) usually lies outside the \
exact coefficient field. An unramified principal series is given by its Satake parameters \
(alpha, beta) and becomes F = diag(alpha, beta), N = 0. A Steinberg twist is given by the \
value c of its unramified character at geometric Frobenius and becomes F = diag(c, c/q), N e1 = e2. \
Frobenius matrices record the action of geometric Frobenius, with N F = q F N.";

#[derive(Parser, Debug)]
#[command(name = "wdforge", version, about = ABOUT, long_about = LONG_ABOUT)]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Ss,
    Fss,
    Monodromy,
}

impl From<Level> for CompatLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Ss => CompatLevel::Ss,
            Level::Fss => CompatLevel::Fss,
            Level::Monodromy => CompatLevel::Monodromy,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check any input document against its invariants.
    Validate { file: PathBuf },
    /// Weil-Deligne representation attached to one embedding of a (phi, N)-module.
    Wd {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        tau: usize,
    },
    /// Check that the Weil-Deligne representations at all embeddings are isomorphic.
    Tauindep { file: PathBuf },
    /// Frobenius-semisimplification.
    Fss { file: PathBuf },
    /// Semisimplification (Frobenius-semisimple with N = 0).
    Ss { file: PathBuf },
    /// Segment decomposition of the Frobenius-semisimplification.
    Segments { file: PathBuf },
    /// Isomorphism of Frobenius-semisimplifications.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Also require equal Jordan types of Frobenius.
        #[arg(long)]
        strict: bool,
    },
    /// Genericity of a two-dimensional parameter.
    Generic { file: PathBuf },
    /// L-invariant of a monodromy module.
    Linv { file: PathBuf },
    /// Weak admissibility (rank at most 2, explicit valuation data).
    Wa { file: PathBuf },
    /// Hodge-Tate weights at every embedding.
    Htweights { file: PathBuf },
    /// Whether the monodromy of the first representation is dominated by the second.
    Monodromy { first: PathBuf, second: PathBuf },
    /// Compare a Galois-side representation with an automorphic datum.
    ///
    /// The automorphic datum must already be normalized (see the top-level help).
    /// The Galois side may be a Weil-Deligne document or a (phi, N)-module,
    /// in which case the representation at --tau is used.
    Compat {
        galois: PathBuf,
        automorphic: PathBuf,
        #[arg(long, value_enum)]
        level: Level,
        #[arg(long, default_value_t = 0)]
        tau: usize,
    },
    /// Enormous-image report for a subgroup of GL2 over a finite field.
    Enormous { file: PathBuf },
    /// Decomposed-generic check at a certificate prime.
    Decgen { file: PathBuf },
    /// Search for a scalar element with nontrivial cyclotomic value.
    Scalarcert { file: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Wd { .. } => "wd",
            Command::Tauindep { .. } => "tauindep",
            Command::Fss { .. } => "fss",
            Command::Ss { .. } => "ss",
            Command::Segments { .. } => "segments",
            Command::Iso { .. } => "iso",
            Command::Generic { .. } => "generic",
            Command::Linv { .. } => "linv",
            Command::Wa { .. } => "wa",
            Command::Htweights { .. } => "htweights",
            Command::Monodromy { .. } => "monodromy",
            Command::Compat { .. } => "compat",
            Command::Enormous { .. } => "enormous",
            Command::Decgen { .. } => "decgen",
            Command::Scalarcert { .. } => "scalarcert",
        }
    }
}

/// Exit code and output document of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub doc: Value,
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "DivisionByZero",
        Error::ReduciblePolynomial(_) => "ReduciblePolynomial",
        Error::UnverifiedIrreducibility(_) => "UnverifiedIrreducibility",
        Error::InvalidField(_) => "InvalidField",
        Error::FieldMismatch => "FieldMismatch",
        Error::ShapeMismatch(_) => "ShapeMismatch",
        Error::SingularMatrix => "SingularMatrix",
        Error::NonSplitCharPoly { .. } => "NonSplitCharPoly",
        Error::RootFindingUnsupported(_) => "RootFindingUnsupported",
        Error::ValidationFailed(_) => "ValidationFailed",
        Error::WrongRank { .. } => "WrongRank",
        Error::UnsupportedRank(_) => "UnsupportedRank",
        Error::UnsupportedBase(_) => "UnsupportedBase",
        Error::NoValuationData => "NoValuationData",
        Error::InconsistentValuation(_) => "InconsistentValuation",
        Error::NotMonodromyModule(_) => "NotMonodromyModule",
        Error::IndexOutOfRange { .. } => "IndexOutOfRange",
        Error::MixedParameters(_) => "MixedParameters",
        Error::NotFrobeniusSemisimple => "NotFrobeniusSemisimple",
        Error::GroupTooLarge(_) => "GroupTooLarge",
        Error::SplittingFieldTooLarge(_) => "SplittingFieldTooLarge",
        Error::EqualCharacteristic(_) => "EqualCharacteristic",
        Error::ZeroEigenvalue => "ZeroEigenvalue",
        Error::ZeroParameter => "ZeroParameter",
        Error::UnsupportedLocalType(_) => "UnsupportedLocalType",
        Error::UnsupportedTower(_) => "UnsupportedTower",
        Error::Parse(_) => "Parse",
        Error::InvalidInput(_) => "InvalidInput",
        Error::Invariant(_) => "Invariant",
    }
}

fn problems(e: &Error) -> Vec<String> {
    match e {
        Error::ValidationFailed(ps) => ps.clone(),
        other => vec![other.to_string()],
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn predicate(flag: bool) -> i32 {
    if flag {
        0
    } else {
        1
    }
}

fn segments_json(f: &Field, segs: &[Segment]) -> Value {
    Value::Array(segs.iter().map(|s| json!({"value": elem_to_json(f, &s.value), "length": s.length})).collect())
}

fn read_wd(path: &Path) -> Result<WdRep> {
    io::wd_from_json(&read_json(path)?)
}

fn read_galois(path: &Path, tau: usize) -> Result<WdRep> {
    let v = read_json(path)?;
    if io::document_kind(&v) == Some("phin") {
        wd_of(&io::phin_from_json(&v)?.module, tau)
    } else {
        io::wd_from_json(&v)
    }
}

pub fn compat_report_json(r: &CompatReport, f: &Field) -> Value {
    json!({
        "level": r.level.name(),
        "ss_match": r.ss_match,
        "fss_match": r.fss_match,
        "monodromy_ok": r.monodromy_ok,
        "galois_segments": segments_json(f, &r.galois_segments),
        "automorphic_segments": segments_json(f, &r.automorphic_segments),
        "reason": r.reason,
        "verdict": r.verdict(),
    })
}

fn validate(path: &Path) -> Result<(i32, Value)> {
    let v = read_json(path)?;
    let kind = io::document_kind(&v).ok_or_else(|| Error::Parse("unrecognised document: no distinguishing key".into()))?;
    let checked = match kind {
        "phin" => io::phin_from_json(&v).map(|_| ()),
        "wd" => io::wd_from_json(&v).map(|_| ()),
        "automorphic" => io::datum_from_json(&v).map(|_| ()),
        "group" => io::group_from_json(&v).map(|_| ()),
        "decgen" => io::decgen_from_json(&v).and_then(|d| {
            is_decomposed_generic_at(d.p, &d.field, &d.places, d.splits_completely).map(|_| ())
        }),
        _ => io::scalarcert_from_json(&v).and_then(|d| exists_scalar_outside_cyclotomic(&d.field, &d.elements).map(|_| ())),
    };
    match checked {
        Ok(()) => Ok((0, json!({"kind": kind, "valid": true}))),
        Err(e @ Error::Parse(_)) => Err(e),
        Err(e) => Ok((1, json!({"kind": kind, "valid": false, "error_kind": error_kind(&e), "problems": problems(&e)}))),
    }
}

fn execute(cmd: &Command) -> Result<(i32, Value)> {
    match cmd {
        Command::Validate { file } => validate(file),
        Command::Wd { file, tau } => {
            let doc = io::phin_from_json(&read_json(file)?)?;
            let w = wd_of(&doc.module, *tau)?;
            Ok((0, json!({"tau": tau, "wd": wd_to_json(&w)})))
        }
        Command::Tauindep { file } => {
            let doc = io::phin_from_json(&read_json(file)?)?;
            let r = tau_independence_check(&doc.module)?;
            let pairs: Vec<Value> =
                r.pairs.iter().map(|p| json!({"i": p.i, "j": p.j, "isomorphic": p.isomorphic})).collect();
            Ok((predicate(r.independent), json!({"pairs": pairs, "independent": r.independent})))
        }
        Command::Fss { file } => {
            let w = read_wd(file)?;
            let was = is_semisimple(w.frob());
            Ok((0, json!({"input_frobenius_semisimple": was, "wd": wd_to_json(&frobenius_semisimplify(&w)?)})))
        }
        Command::Ss { file } => Ok((0, json!({"wd": wd_to_json(&semisimplify(&read_wd(file)?)?)}))),
        Command::Segments { file } => {
            let w = read_wd(file)?;
            let segs = segments(&frobenius_semisimplify(&w)?)?;
            Ok((0, json!({"input_frobenius_semisimple": is_semisimple(w.frob()), "segments": segments_json(w.field(), &segs)})))
        }
        Command::Iso { first, second, strict } => {
            let iso = is_isomorphic(&read_wd(first)?, &read_wd(second)?, *strict)?;
            Ok((predicate(iso), json!({"isomorphic": iso, "strict": strict})))
        }
        Command::Generic { file } => {
            let g = is_generic_parameter(&read_wd(file)?)?;
            Ok((predicate(g), json!({"generic": g})))
        }
        Command::Linv { file } => {
            let doc = io::phin_from_json(&read_json(file)?)?;
            let d = doc.require_filtered()?;
            let f = d.module().field();
            let r = l_invariant(d)?;
            Ok((0, json!({"l_invariant": elem_to_json(f, &r.value), "alpha": elem_to_json(f, &r.alpha), "j0": r.j0})))
        }
        Command::Wa { file } => {
            let doc = io::phin_from_json(&read_json(file)?)?;
            let d = doc.require_filtered()?;
            let f = d.module().field();
            let r = is_weakly_admissible(d)?;
            let subs: Vec<Value> = r
                .sub_objects
                .iter()
                .map(|s| {
                    json!({"line": vector_to_json(f, &s.line), "t_n": rational_to_json(&s.t_n), "t_h": rational_to_json(&s.t_h), "passes": s.passes()})
                })
                .collect();
            let doc = json!({"t_n": rational_to_json(&r.t_n), "t_h": rational_to_json(&r.t_h), "sub_objects": subs, "weakly_admissible": r.weakly_admissible});
            Ok((predicate(r.weakly_admissible), doc))
        }
        Command::Htweights { file } => {
            let doc = io::phin_from_json(&read_json(file)?)?;
            let d = doc.require_filtered()?;
            let weights = (0..d.module().f()).map(|t| hodge_tate_weights(d, t)).collect::<Result<Vec<_>>>()?;
            Ok((0, json!({"weights": weights})))
        }
        Command::Monodromy { first, second } => {
            let dom = monodromy_dominates(&read_wd(first)?, &read_wd(second)?)?;
            Ok((predicate(dom), json!({"dominates": dom})))
        }
        Command::Compat { galois, automorphic, level, tau } => {
            let g = read_galois(galois, *tau)?;
            let a = io::datum_from_json(&read_json(automorphic)?)?;
            let r = compat_check(&g, &a, (*level).into())?;
            Ok((predicate(r.verdict()), compat_report_json(&r, g.field())))
        }
        Command::Enormous { file } => {
            let g = io::group_from_json(&read_json(file)?)?;
            let r = is_enormous(&g)?;
            let big = &r.splitting_field;
            let basis = |vs: &[Vec<wdforge_core::Elem>], f: &Field| Value::Array(vs.iter().map(|v| vector_to_json(f, v)).collect());
            let doc = json!({
                "order": r.order,
                "splitting_field": field_to_json(big),
                "splitting_degree": r.splitting_degree,
                "absolutely_irreducible": r.absolutely_irreducible,
                "invariant_line": r.invariant_line.as_ref().map(|v| vector_to_json(big, v)),
                "commutant_dim": r.commutant_dim,
                "no_l_power_quotient": r.no_l_power_quotient,
                "l_power_quotient_order": r.l_power_quotient_order,
                "h0": r.cohomology.h0,
                "h0_zero": r.h0_zero,
                "fixed_vectors": basis(&r.fixed_vectors, g.field()),
                "h1": r.cohomology.h1(),
                "h1_zero": r.h1_zero,
                "h1_methods_agree": r.cohomology.methods_agree(),
                "simple_submodule_condition": r.simple_submodule_condition,
                "simple_submodules": r.simple_submodules,
                "failing_submodule": r.failing_submodule.as_ref().map(|w| basis(w, big)),
                "enormous": r.enormous,
            });
            Ok((predicate(r.enormous), doc))
        }
        Command::Decgen { file } => {
            let d = io::decgen_from_json(&read_json(file)?)?;
            let r = is_decomposed_generic_at(d.p, &d.field, &d.places, d.splits_completely)?;
            let failures: Vec<Value> = r.failures.iter().map(|x| json!({"place": x.index, "reason": x.reason})).collect();
            let doc = json!({
                "p": d.p,
                "l": d.field.characteristic(),
                "splits_completely": r.splits_completely,
                "failures": failures,
                "decomposed_generic": r.decomposed_generic,
            });
            Ok((predicate(r.decomposed_generic), doc))
        }
        Command::Scalarcert { file } => {
            let d = io::scalarcert_from_json(&read_json(file)?)?;
            let w = scalar_outside_cyclotomic_witness(&d.field, &d.elements)?;
            Ok((predicate(w.is_some()), json!({"exists": w.is_some(), "witness": w})))
        }
    }
}

/// Run one command; errors become an exit-2 document.
pub fn run(cmd: &Command) -> Outcome {
    let mut doc = Map::new();
    doc.insert("wdforge_schema".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(cmd.name()));
    let code = match execute(cmd) {
        Ok((code, Value::Object(body))) => {
            doc.extend(body);
            code
        }
        Ok((code, other)) => {
            doc.insert("result".into(), other);
            code
        }
        Err(e) => {
            doc.insert("error".into(), json!({"kind": error_kind(&e), "message": e.to_string()}));
            2
        }
    };
    Outcome { code, doc: Value::Object(doc) }
}

pub fn render(doc: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(doc).expect("JSON values always serialise")
    } else {
        serde_json::to_string(doc).expect("JSON values always serialise")
    }
}
