mod args;
mod sweep;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use epdescent_core::descent::rank_sha_ledger_with;
use epdescent_core::lfunction::{dirichlet_coeffs, verify_base_change, BaseField};
use epdescent_core::properties::{run_all, run_suite, SUITES};
use epdescent_core::quadfield::{make_context, FieldFamily};
use epdescent_core::reduction::{conductor, reduction_table};
use epdescent_core::torsion::torsion_subgroup;
use epdescent_core::verify::{run_criterion, Bounds};
use epdescent_core::{Error, FieldContext, FieldKind};
use serde::Serialize;

use args::{Cli, Command, DescentArgs, FieldArg, FieldArgs, Format, LseriesArgs, PrimeArgs, PropsArgs, SweepArgs, VerifyArgs};

const OK: u8 = 0;
const MISMATCH: u8 = 1;
const UNDECIDED: u8 = 2;
const USAGE: u8 = 64;
const IO_ERROR: u8 = 74;

/// A terminal condition: message for stderr and the exit code.
struct Fail(u8, String);

type Outcome = Result<u8, Fail>;

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::UndecidedLocalVerdict { .. } | Error::InconclusiveBound { .. } => UNDECIDED,
            _ => USAGE,
        };
        Fail(code, e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Fail {
        Fail(IO_ERROR, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(USAGE, msg.into())
}

fn context(f: &FieldArgs) -> Result<FieldContext, Fail> {
    let family = match f.field {
        FieldArg::Gauss => FieldFamily::Gauss,
        FieldArg::Root2 => FieldFamily::Root2,
        FieldArg::Root7 => FieldFamily::Root7,
        FieldArg::Rootq => FieldFamily::RootQ,
    };
    if f.q.is_some() && family != FieldFamily::RootQ {
        return Err(usage("-q only applies to --field rootq"));
    }
    Ok(make_context(family, f.q, f.allow_nonprincipal)?)
}

fn check_depth(depth_cap: u32) -> Result<(), Fail> {
    if depth_cap < 8 {
        return Err(usage(format!("--depth-cap must be at least 8 (got {depth_cap})")));
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Fail> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn descent(a: &DescentArgs) -> Outcome {
    check_depth(a.depth_cap)?;
    let ctx = context(&a.field)?;
    let r = rank_sha_ledger_with(a.p, &ctx, a.depth_cap)?;
    match a.format {
        Format::Json => print_json(&r)?,
        Format::Csv => {
            let e = r.expected.as_ref();
            println!("p,field,phi_dim,phihat_dim,ledger,expected_phi_dim,expected_phihat_dim,torsion,match");
            println!(
                "{},{},{},{},{},{},{},{},{}",
                r.p,
                r.field_tag,
                r.selmer_phi.dim,
                r.selmer_phihat.dim,
                r.ledger,
                e.map_or(String::new(), |e| e.phi.dim.to_string()),
                e.map_or(String::new(), |e| e.phihat.dim.to_string()),
                r.torsion,
                r.matches
            );
        }
    }
    Ok(if r.out_of_scope.is_some() || r.matches { OK } else { MISMATCH })
}

fn sweep(a: &SweepArgs) -> Outcome {
    check_depth(a.depth_cap)?;
    let ctx = context(&a.field)?;
    if a.from > a.to || sweep::primes_in(&ctx, a.from, a.to).is_empty() {
        return Err(usage(format!("no admissible primes in [{}, {}]", a.from, a.to)));
    }
    let plan = sweep::SweepPlan {
        ctx: &ctx,
        from: a.from,
        to: a.to,
        depth_cap: a.depth_cap,
        jobs: a.jobs,
        force: a.force,
    };
    let (summary, _) = sweep::run(&plan, &a.cache).map_err(|e| Fail(IO_ERROR, format!("cache {}: {e}", a.cache.display())))?;
    print_json(&summary)?;
    Ok(if summary.mismatches > 0 {
        MISMATCH
    } else if summary.undecided + summary.errors > 0 {
        UNDECIDED
    } else {
        OK
    })
}

fn lseries(a: &LseriesArgs) -> Outcome {
    if a.field != FieldArg::Gauss {
        return Err(usage("lseries compares L(E_p/Q(i), s) with L(E_p/Q, s)^2; only --field gauss applies"));
    }
    if a.bound < 2 {
        return Err(usage("--bound must be at least 2"));
    }
    FieldContext::new(FieldKind::GaussianI)?.check_p(a.p)?;
    let q = dirichlet_coeffs(a.p, BaseField::Q, a.bound);
    let k = dirichlet_coeffs(a.p, BaseField::K, a.bound);
    let q2 = q.square();
    let verdict = verify_base_change(a.p, a.bound);
    match a.format {
        Format::Csv => {
            let mut out = io::BufWriter::new(io::stdout().lock());
            writeln!(out, "norm,a_q,a_k,a_q_squared")?;
            for n in 1..=a.bound {
                writeln!(out, "{n},{},{},{}", q.get(n), k.get(n), q2.get(n))?;
            }
            writeln!(out, "# base_change={} p={} bound={}", verdict.holds, a.p, a.bound)?;
            if let Some((n, x, y)) = verdict.first_mismatch {
                writeln!(out, "# first_mismatch n={n} a_k={x} a_q_squared={y}")?;
            }
            out.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Dump<'a> {
                q: &'a [i64],
                k: &'a [i64],
                q_squared: &'a [i64],
                verdict: &'a epdescent_core::lfunction::BaseChangeReport,
            }
            print_json(&Dump { q: &q.coeffs[1..], k: &k.coeffs[1..], q_squared: &q2.coeffs[1..], verdict: &verdict })?;
        }
    }
    Ok(if verdict.holds { OK } else { MISMATCH })
}

fn reduce(a: &PrimeArgs) -> Outcome {
    let ctx = context(&a.field)?;
    ctx.check_p(a.p)?;
    let rows = reduction_table(a.p, &ctx)?;
    let all_match = rows.iter().all(|r| r.matches);
    match a.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Table<'a> {
                p: u64,
                field: String,
                rows: &'a [epdescent_core::reduction::ReductionRow],
                conductor: epdescent_core::reduction::Conductor,
                #[serde(rename = "match")]
                matches: bool,
            }
            print_json(&Table { p: a.p, field: ctx.tag(), rows: &rows, conductor: conductor(a.p, &ctx)?, matches: all_match })?;
        }
        Format::Csv => {
            println!("place,kodaira,m,f,c,v_disc,expected_kodaira,expected_m,expected_f,expected_c,expected_v_disc,match");
            for r in &rows {
                let (c, e) = (&r.computed, &r.expected);
                println!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    c.place, c.kodaira, c.m, c.f_exp, c.c, c.v_disc_min, e.kodaira, e.m, e.f_exp, e.c, e.v_disc_min, r.matches
                );
            }
        }
    }
    Ok(if all_match { OK } else { MISMATCH })
}

fn torsion(a: &PrimeArgs) -> Outcome {
    let ctx = context(&a.field)?;
    let r = torsion_subgroup(a.p, &ctx)?;
    match a.format {
        Format::Json => print_json(&r)?,
        Format::Csv => {
            println!("p,field,group,gcd,places");
            println!("{},{},{},{},{}", r.p, ctx.tag(), r.group, r.gcd, r.bound_places.len());
        }
    }
    Ok(OK)
}

fn props(a: &PropsArgs) -> Outcome {
    let reports = match &a.suite {
        Some(name) => vec![run_suite(name, a.cases, a.seed)
            .ok_or_else(|| usage(format!("unknown suite {name}; one of {}", SUITES.join(", "))))?],
        None => run_all(a.cases, a.seed),
    };
    let mut out = io::stdout().lock();
    for r in &reports {
        serde_json::to_writer(&mut out, r).map_err(io::Error::from)?;
        writeln!(out)?;
    }
    Ok(if reports.iter().all(|r| r.passed()) { OK } else { MISMATCH })
}

fn verify_paper(a: &VerifyArgs) -> Outcome {
    let mut bounds = if a.quick { Bounds::quick() } else { Bounds::default() };
    if let Some(s) = a.seed {
        bounds.seed = s;
    }
    if let Some(c) = a.cases {
        bounds.cases = c;
    }
    let ids: Vec<u8> = if a.criteria.is_empty() { (1..=8).collect() } else { a.criteria.clone() };
    let mut results = Vec::new();
    for id in ids {
        let r = run_criterion(id, &bounds).expect("criterion ids are validated by the parser");
        if !a.json {
            println!("{}", r.line());
        }
        results.push(r);
    }
    if a.json {
        print_json(&results)?;
    }
    Ok(if results.iter().all(|r| r.passed) { OK } else { MISMATCH })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let outcome = match &cli.command {
        Command::Descent(a) => descent(a),
        Command::Sweep(a) => sweep(a),
        Command::Lseries(a) => lseries(a),
        Command::Reduce(a) => reduce(a),
        Command::Torsion(a) => torsion(a),
        Command::Props(a) => props(a),
        Command::VerifyPaper(a) => verify_paper(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("epdescent: {msg}");
            ExitCode::from(code)
        }
    }
}
