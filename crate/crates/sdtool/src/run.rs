//! Subcommand dispatch and the process entry point.
//!
//! Every command reads one JSON document (or, with `--batch`, one per line),
//! writes one JSON document to standard output and encodes its verdict in the
//! exit code: 0 affirmative, 1 sound negative, 2 indeterminate, 3 input
//! error. Diagnostics go to standard error only.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sdtool_core::{
    attach_point, b_membership, cayley_fiber_length, cayley_hamilton_verify, check_commute,
    chow_point, f_v_poly, polarize, random_commuting, sd_consistency, spectral_data, trace_word,
    verify_trace_identity, CommutingTuple, Error, GenProfile, MembershipResult, ZeroCycle,
};

use crate::wire;

#[derive(Debug, Parser)]
#[command(
    name = "sdtool",
    version,
    about = "Exact spectral data of commuting matrix tuples"
)]
pub struct Cli {
    /// Input file (default: standard input)
    #[arg(short = 'i', long = "input", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Newline-delimited JSON: one document per line, outputs in input order
    #[arg(long, global = true)]
    pub batch: bool,

    /// Pretty-print the output document
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether the matrices of a tuple pairwise commute
    CheckCommute,
    /// Coefficient forms of det(u I - x1 t1 - ... - xd td)
    Polarize,
    /// Joint eigenvalue 0-cycle of a commuting tuple
    SpectralData,
    /// Elementary symmetric forms of a 0-cycle
    Chow,
    /// Extend a base point by one further point of affine d-space
    Attach,
    /// Decide membership of a base point in the image of the Chow map
    Member,
    /// Check that the spectral cycle's ideal generators annihilate the tuple
    ChVerify,
    /// Trace of the monomial t1^a1 ... td^ad
    Trace,
    /// Compare a monomial trace with the weighted power sum of the cycle
    TraceIdentity,
    /// Length and flatness of the coordinate-ring fiber over a cycle
    FiberLength,
    /// Product of (v(x) - v(p))^mult over the points p of a cycle
    Fv,
    /// Compare chow(spectral-data) with polarize on one tuple
    SdCheck,
    /// Generate a pseudorandom commuting tuple
    Gen {
        /// RNG seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Shape of the generated tuple
        #[arg(long, value_enum, default_value_t = ProfileArg::Diagonal)]
        profile: ProfileArg,
        /// Size as "n,d"
        #[arg(long, default_value = "2,2", value_name = "N,D")]
        size: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Diagonal,
    Jordan,
    Polynomial,
}

impl From<ProfileArg> for GenProfile {
    fn from(p: ProfileArg) -> GenProfile {
        match p {
            ProfileArg::Diagonal => GenProfile::Diagonal,
            ProfileArg::Jordan => GenProfile::Jordan,
            ProfileArg::Polynomial => GenProfile::Polynomial,
        }
    }
}

/// Anything that makes the input unusable; reported on stderr with exit 3.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl From<wire::ParseError> for InputError {
    fn from(e: wire::ParseError) -> Self {
        InputError(e.to_string())
    }
}

/// Map a core error to a verdict document where one exists; everything else
/// is the caller's input problem.
fn error_verdict(e: Error) -> Result<(Value, u8), InputError> {
    match e {
        Error::NotCommuting(w) => Ok((
            json!({"error": "not-commuting", "witness": wire::witness_value(&w)}),
            1,
        )),
        Error::NonSplit { direction } => {
            Ok((json!({"error": "non-split", "direction": direction}), 2))
        }
        other => Err(InputError(other.to_string())),
    }
}

fn need_input(input: Option<&Value>) -> Result<&Value, InputError> {
    input.ok_or_else(|| InputError("this command requires an input document".into()))
}

fn need_object<'a>(
    v: &'a Value,
    shape: &str,
) -> Result<&'a serde_json::Map<String, Value>, InputError> {
    v.as_object()
        .ok_or_else(|| InputError(format!("expected an object with {shape}")))
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value, InputError> {
    obj.get(key)
        .ok_or_else(|| InputError(format!("{key}: missing field")))
}

fn optional_cycle(obj: &serde_json::Map<String, Value>) -> Result<Option<ZeroCycle>, InputError> {
    match obj.get("cycle") {
        Some(v) => Ok(Some(wire::parse_zero_cycle(v, "cycle")?)),
        None => Ok(None),
    }
}

fn cycle_or_spectral(ct: &CommutingTuple, cycle: Option<ZeroCycle>) -> Result<ZeroCycle, Error> {
    match cycle {
        Some(z) => Ok(z),
        None => spectral_data(ct),
    }
}

fn parse_size(s: &str) -> Result<(usize, usize), InputError> {
    let bad = || {
        InputError(format!(
            "--size expects \"n,d\" with positive integers, found {s:?}"
        ))
    };
    let (ns, ds) = s.split_once(',').ok_or_else(bad)?;
    let n = ns.trim().parse::<usize>().map_err(|_| bad())?;
    let d = ds.trim().parse::<usize>().map_err(|_| bad())?;
    if n == 0 || d == 0 {
        return Err(bad());
    }
    Ok((n, d))
}

/// Run one command on one parsed document. Returns the output document and
/// its exit code; `Err` means the input itself was unusable.
pub fn execute_one(cmd: &Command, input: Option<&Value>) -> Result<(Value, u8), InputError> {
    match cmd {
        Command::CheckCommute => {
            let t = wire::parse_matrix_tuple(need_input(input)?, "")?;
            Ok(match check_commute(&t) {
                None => (json!({"commute": true}), 0),
                Some(w) => (
                    json!({"commute": false, "witness": wire::witness_value(&w)}),
                    1,
                ),
            })
        }
        Command::Polarize => {
            let t = wire::parse_matrix_tuple(need_input(input)?, "")?;
            Ok((wire::base_point_value(&polarize(&t)), 0))
        }
        Command::SpectralData => {
            let t = wire::parse_matrix_tuple(need_input(input)?, "")?;
            match CommutingTuple::new(t).and_then(|ct| spectral_data(&ct)) {
                Ok(z) => Ok((wire::zero_cycle_value(&z), 0)),
                Err(e) => error_verdict(e),
            }
        }
        Command::Chow => {
            let z = wire::parse_zero_cycle(need_input(input)?, "")?;
            Ok((wire::base_point_value(&chow_point(&z)), 0))
        }
        Command::Attach => {
            let obj = need_object(need_input(input)?, "\"base\" and \"x\" fields")?;
            let b = wire::parse_base_point(field(obj, "base")?, "base")?;
            let x = wire::parse_rat_vec(field(obj, "x")?, "x")?;
            match attach_point(&b, &x) {
                Ok(b2) => Ok((wire::base_point_value(&b2), 0)),
                Err(e) => error_verdict(e),
            }
        }
        Command::Member => {
            let b = wire::parse_base_point(need_input(input)?, "")?;
            if b.rank() == 0 {
                return Err(InputError(
                    "a membership query needs rank at least 1".into(),
                ));
            }
            match b_membership(&b) {
                Ok(MembershipResult::Member(z)) => Ok((
                    json!({"verdict": "member", "cycle": wire::zero_cycle_value(&z)}),
                    0,
                )),
                Ok(MembershipResult::NotMember(cert)) => {
                    Ok((json!({"verdict": "not-member", "certificate": cert}), 1))
                }
                Ok(MembershipResult::Indeterminate(j)) => {
                    Ok((json!({"verdict": "indeterminate", "direction": j}), 2))
                }
                Err(e) => error_verdict(e),
            }
        }
        Command::ChVerify => {
            let obj = need_object(need_input(input)?, "a \"tuple\" field")?;
            let t = wire::parse_matrix_tuple(field(obj, "tuple")?, "tuple")?;
            let cycle = optional_cycle(obj)?;
            let outcome = CommutingTuple::new(t).and_then(|ct| {
                let z = cycle_or_spectral(&ct, cycle)?;
                cayley_hamilton_verify(&ct, &z)
            });
            match outcome {
                Ok(v) if v.ok => Ok((json!({"ok": true}), 0)),
                Ok(v) => Ok((
                    json!({"ok": false, "failing_generator": v.failing_generator}),
                    1,
                )),
                Err(e) => error_verdict(e),
            }
        }
        Command::Trace => {
            let obj = need_object(need_input(input)?, "\"tuple\" and \"a\" fields")?;
            let t = wire::parse_matrix_tuple(field(obj, "tuple")?, "tuple")?;
            let a = wire::parse_exponents(field(obj, "a")?, "a")?;
            if a.len() != t.d() {
                return Err(InputError(format!(
                    "a: expected {} exponents, found {}",
                    t.d(),
                    a.len()
                )));
            }
            Ok((json!({"trace": trace_word(&t, &a).to_string()}), 0))
        }
        Command::TraceIdentity => {
            let obj = need_object(need_input(input)?, "\"tuple\" and \"a\" fields")?;
            let t = wire::parse_matrix_tuple(field(obj, "tuple")?, "tuple")?;
            let a = wire::parse_exponents(field(obj, "a")?, "a")?;
            if a.len() != t.d() {
                return Err(InputError(format!(
                    "a: expected {} exponents, found {}",
                    t.d(),
                    a.len()
                )));
            }
            let cycle = optional_cycle(obj)?;
            let outcome = CommutingTuple::new(t).and_then(|ct| {
                let z = cycle_or_spectral(&ct, cycle)?;
                let ok = verify_trace_identity(&ct, &z, &a)?;
                Ok((ok, trace_word(&ct, &a)))
            });
            match outcome {
                Ok((ok, tr)) => Ok((
                    json!({"ok": ok, "trace": tr.to_string()}),
                    if ok { 0 } else { 1 },
                )),
                Err(e) => error_verdict(e),
            }
        }
        Command::FiberLength => {
            let z = wire::parse_zero_cycle(need_input(input)?, "")?;
            let (length, flat) = cayley_fiber_length(&z);
            Ok((json!({"length": length, "flat": flat}), 0))
        }
        Command::Fv => {
            let obj = need_object(need_input(input)?, "\"cycle\" and \"v\" fields")?;
            let z = wire::parse_zero_cycle(field(obj, "cycle")?, "cycle")?;
            let v = wire::parse_rat_vec(field(obj, "v")?, "v")?;
            match f_v_poly(&z, &v) {
                Ok(p) => Ok((wire::poly_value(&p), 0)),
                Err(e) => error_verdict(e),
            }
        }
        Command::SdCheck => {
            let t = wire::parse_matrix_tuple(need_input(input)?, "")?;
            match CommutingTuple::new(t).and_then(|ct| sd_consistency(&ct)) {
                Ok(r) => Ok((
                    json!({
                        "equal": r.equal,
                        "cycle": wire::zero_cycle_value(&r.cycle),
                        "base_from_cycle": wire::base_point_value(&r.base_from_cycle),
                        "base_from_polarization": wire::base_point_value(&r.base_from_polarization),
                    }),
                    if r.equal { 0 } else { 1 },
                )),
                Err(e) => error_verdict(e),
            }
        }
        Command::Gen {
            seed,
            profile,
            size,
        } => {
            let (n, d) = parse_size(size)?;
            let ct = random_commuting(n, d, *seed, (*profile).into())
                .map_err(|e| InputError(e.to_string()))?;
            Ok((wire::matrix_tuple_value(&ct), 0))
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, InputError> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| InputError(format!("cannot read {}: {}", p.display(), e))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| InputError(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn emit(doc: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(doc)
    } else {
        serde_json::to_string(doc)
    }
    .expect("output documents serialize");
    println!("{text}");
}

fn run(cli: Cli) -> Result<u8, InputError> {
    if let Command::Gen { .. } = cli.command {
        if cli.batch {
            return Err(InputError(
                "gen does not read input; --batch is not supported".into(),
            ));
        }
        let (doc, code) = execute_one(&cli.command, None)?;
        emit(&doc, cli.pretty);
        return Ok(code);
    }

    let text = read_input(&cli.input)?;

    if cli.batch {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        let mut worst = 0u8;
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let item = serde_json::from_str::<Value>(line)
                .map_err(|e| InputError(format!("malformed JSON: {e}")))
                .and_then(|v| execute_one(&cli.command, Some(&v)));
            let (doc, code) = match item {
                Ok(pair) => pair,
                Err(e) => {
                    eprintln!("sdtool: line {}: {}", lineno + 1, e);
                    (json!({"error": "input", "message": e.to_string()}), 3)
                }
            };
            let rendered = serde_json::to_string(&doc).expect("output documents serialize");
            writeln!(out, "{rendered}")
                .map_err(|e| InputError(format!("cannot write standard output: {e}")))?;
            worst = worst.max(code);
        }
        Ok(worst)
    } else {
        let value = serde_json::from_str::<Value>(&text)
            .map_err(|e| InputError(format!("malformed JSON: {e}")))?;
        let (doc, code) = execute_one(&cli.command, Some(&value))?;
        emit(&doc, cli.pretty);
        Ok(code)
    }
}

/// Process body: returns the exit code instead of exiting, for tests.
pub fn main_entry(cli: Cli) -> u8 {
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sdtool: {e}");
            3
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(cmd: &Command, doc: Value) -> (Value, u8) {
        execute_one(cmd, Some(&doc)).unwrap()
    }

    fn diag_pair() -> Value {
        json!({"n": 2, "d": 2, "matrices": [[[1, 0], [0, 2]], [[3, 0], [0, 4]]]})
    }

    #[test]
    fn polarize_diag_pair() {
        let (doc, code) = exec(&Command::Polarize, diag_pair());
        assert_eq!(code, 0);
        assert_eq!(doc["n"], 2);
        assert_eq!(
            doc["forms"][0]["terms"],
            json!([{"exp": [1, 0], "coef": "3"}, {"exp": [0, 1], "coef": "7"}])
        );
        assert_eq!(
            doc["forms"][1]["terms"],
            json!([
                {"exp": [2, 0], "coef": "2"},
                {"exp": [1, 1], "coef": "10"},
                {"exp": [0, 2], "coef": "12"}
            ])
        );
    }

    #[test]
    fn spectral_data_rejects_non_commuting_with_witness() {
        let e12_e21 = json!({"n": 2, "d": 2, "matrices": [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]});
        let (doc, code) = exec(&Command::SpectralData, e12_e21);
        assert_eq!(code, 1);
        assert_eq!(doc["error"], "not-commuting");
        assert_eq!(doc["witness"]["i"], 1);
        assert_eq!(doc["witness"]["j"], 2);
        assert_eq!(doc["witness"]["value"], "1");
    }

    #[test]
    fn member_verdicts_cover_all_exit_codes() {
        let zero = json!({"vars": 2, "degree": 1, "terms": []});
        let minus_st = json!({"vars": 2, "degree": 2, "terms": [{"exp": [1, 1], "coef": "-1"}]});
        let (doc, code) = exec(
            &Command::Member,
            json!({"n": 2, "d": 2, "forms": [zero.clone(), minus_st]}),
        );
        assert_eq!(code, 1);
        assert_eq!(doc["verdict"], "not-member");
        assert_eq!(doc["certificate"], "rank(c1^2-4c2) = 2");

        let minus_2ss = json!({"vars": 2, "degree": 2, "terms": [{"exp": [2, 0], "coef": "-2"}]});
        let (doc, code) = exec(
            &Command::Member,
            json!({"n": 2, "d": 2, "forms": [zero, minus_2ss]}),
        );
        assert_eq!(code, 2);
        assert_eq!(doc["verdict"], "indeterminate");
        assert_eq!(doc["direction"], 1);

        let (doc, code) = exec(&Command::Member, exec(&Command::Polarize, diag_pair()).0);
        assert_eq!(code, 0);
        assert_eq!(doc["verdict"], "member");
        assert_eq!(
            doc["cycle"]["points"],
            json!([
                {"coords": ["1", "3"], "mult": 1},
                {"coords": ["2", "4"], "mult": 1}
            ])
        );
    }

    #[test]
    fn fiber_length_of_a_double_point() {
        let fat = json!({"d": 2, "points": [{"coords": ["1", "2"], "mult": 2}]});
        let (doc, code) = exec(&Command::FiberLength, fat);
        assert_eq!(code, 0);
        assert_eq!(doc, json!({"length": 3, "flat": false}));
    }

    #[test]
    fn trace_identity_and_ch_verify_default_to_spectral_data() {
        let input = json!({"tuple": diag_pair(), "a": [2, 1]});
        let (doc, code) = exec(&Command::TraceIdentity, input);
        assert_eq!((doc["ok"].clone(), code), (json!(true), 0));
        assert_eq!(doc["trace"], "19");

        let (doc, code) = exec(&Command::ChVerify, json!({"tuple": diag_pair()}));
        assert_eq!((doc, code), (json!({"ok": true}), 0));

        let wrong = json!({
            "tuple": diag_pair(),
            "cycle": {"d": 2, "points": [{"coords": ["1", "3"], "mult": 2}]}
        });
        let (doc, code) = exec(&Command::ChVerify, wrong);
        assert_eq!(code, 1);
        assert_eq!(doc["ok"], json!(false));
        assert!(doc["failing_generator"].is_array());
    }

    #[test]
    fn attach_and_gen_and_size_parsing() {
        let rank0 = json!({"base": {"n": 0, "d": 2, "forms": []}, "x": ["5", "0"]});
        let (doc, code) = exec(&Command::Attach, rank0);
        assert_eq!(code, 0);
        assert_eq!(doc["n"], 1);
        assert_eq!(
            doc["forms"][0]["terms"],
            json!([{"exp": [1, 0], "coef": "5"}])
        );

        assert!(parse_size("3,2").unwrap() == (3, 2));
        assert!(parse_size("0,2").is_err());
        assert!(parse_size("3").is_err());
        assert!(parse_size("a,b").is_err());

        let cmd = Command::Gen {
            seed: 7,
            profile: ProfileArg::Jordan,
            size: "3,2".into(),
        };
        let (doc, code) = execute_one(&cmd, None).unwrap();
        assert_eq!(code, 0);
        let t = wire::parse_matrix_tuple(&doc, "").unwrap();
        assert!(check_commute(&t).is_none());
    }

    #[test]
    fn input_errors_carry_paths() {
        let bad = json!({"n": 2, "d": 2, "matrices": [[[1, 0], [0, 1]], [[1, 0], [0]]]});
        let e = execute_one(&Command::Polarize, Some(&bad)).unwrap_err();
        assert!(e.0.contains("matrices[1][1]"));

        let member_rank0 = json!({"n": 0, "d": 2, "forms": []});
        assert!(execute_one(&Command::Member, Some(&member_rank0)).is_err());
    }
}
