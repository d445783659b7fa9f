//! Range sweeps with a JSONL cache. Workers compute records independently; the
//! caller is the single writer and appends them in ascending p.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use epdescent_core::arith::is_prime;
use epdescent_core::descent::{rank_sha_ledger_with, BranchChoice, DescentReport, Expected};
use epdescent_core::{Error, FieldContext};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Undecided,
    Error,
}

/// One line of the cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub field: String,
    pub p: u64,
    pub depth_cap: u32,
    pub status: Status,
    pub phi_dim: Option<u32>,
    pub phihat_dim: Option<u32>,
    pub ledger: Option<u32>,
    pub expected_phi_dim: Option<u32>,
    pub expected_phihat_dim: Option<u32>,
    pub case: Option<String>,
    pub s_t: Option<(i64, i64)>,
    pub phi_branch: Option<usize>,
    pub phihat_branch: Option<usize>,
    pub out_of_scope: Option<String>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub error: Option<String>,
}

impl SweepRecord {
    fn key(&self) -> (String, u64, u32) {
        (self.field.clone(), self.p, self.depth_cap)
    }

    fn from_report(r: &DescentReport, depth_cap: u32) -> SweepRecord {
        // only "A or B" rows carry a branch worth recording
        let alternatives = |side: fn(&Expected) -> usize| r.expected.as_ref().map_or(0, side);
        let either = |b: Option<&BranchChoice>, n: usize| b.filter(|_| n > 1).map(|b| b.alternative);
        SweepRecord {
            field: r.field_tag.clone(),
            p: r.p,
            depth_cap,
            status: Status::Ok,
            phi_dim: Some(r.selmer_phi.dim),
            phihat_dim: Some(r.selmer_phihat.dim),
            ledger: Some(r.ledger),
            expected_phi_dim: r.expected.as_ref().map(|e| e.phi.dim),
            expected_phihat_dim: r.expected.as_ref().map(|e| e.phihat.dim),
            case: r.expected.as_ref().map(|e| e.case.clone()),
            s_t: r.s_t,
            phi_branch: either(r.phi_branch.as_ref(), alternatives(|e| e.phi.alternatives.len())),
            phihat_branch: either(r.phihat_branch.as_ref(), alternatives(|e| e.phihat.alternatives.len())),
            out_of_scope: r.out_of_scope.clone(),
            matches: r.matches,
            error: None,
        }
    }

    fn failed(tag: &str, p: u64, depth_cap: u32, e: &Error) -> SweepRecord {
        SweepRecord {
            field: tag.into(),
            p,
            depth_cap,
            status: if matches!(e, Error::UndecidedLocalVerdict { .. }) { Status::Undecided } else { Status::Error },
            phi_dim: None,
            phihat_dim: None,
            ledger: None,
            expected_phi_dim: None,
            expected_phihat_dim: None,
            case: None,
            s_t: None,
            phi_branch: None,
            phihat_branch: None,
            out_of_scope: None,
            matches: false,
            error: Some(e.to_string()),
        }
    }
}

pub fn compute_record(p: u64, ctx: &FieldContext, depth_cap: u32) -> SweepRecord {
    match rank_sha_ledger_with(p, ctx, depth_cap) {
        Ok(r) => SweepRecord::from_report(&r, depth_cap),
        Err(e) => SweepRecord::failed(&ctx.tag(), p, depth_cap, &e),
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub field: String,
    pub from: u64,
    pub to: u64,
    pub depth_cap: u32,
    pub primes: usize,
    pub cached: usize,
    pub computed: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub undecided: usize,
    pub errors: usize,
    pub out_of_scope: usize,
    pub mismatched_primes: Vec<u64>,
    /// How often each admissible alternative of an "A or B" row was the one realized.
    pub branch_tallies: BTreeMap<String, usize>,
}

pub fn read_cache(path: &Path) -> io::Result<Vec<SweepRecord>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line).map_err(|e| {
            io::Error::new(io::ErrorKind::InvalidData, format!("{}:{}: {e}", path.display(), i + 1))
        })?;
        out.push(rec);
    }
    Ok(out)
}

fn write_lines(w: &mut impl Write, records: &[SweepRecord]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

/// Rewrite the whole cache (used by --force), via a temporary file and rename.
fn rewrite_cache(path: &Path, records: &[SweepRecord]) -> io::Result<()> {
    let tmp = path.with_extension("jsonl.tmp");
    {
        let mut f = io::BufWriter::new(File::create(&tmp)?);
        write_lines(&mut f, records)?;
    }
    fs::rename(tmp, path)
}

fn append_cache(path: &Path, records: &[SweepRecord]) -> io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let f = OpenOptions::new().create(true).append(true).open(path)?;
    write_lines(&mut io::BufWriter::new(f), records)
}

pub struct SweepPlan<'a> {
    pub ctx: &'a FieldContext,
    pub from: u64,
    pub to: u64,
    pub depth_cap: u32,
    pub jobs: usize,
    pub force: bool,
}

/// Primes in [from, to] that the field accepts.
pub fn primes_in(ctx: &FieldContext, from: u64, to: u64) -> Vec<u64> {
    (from.max(3)..=to).filter(|&p| is_prime(p) && ctx.check_p(p).is_ok()).collect()
}

pub fn run(plan: &SweepPlan, cache: &Path) -> io::Result<(Summary, Vec<SweepRecord>)> {
    let tag = plan.ctx.tag();
    let primes = primes_in(plan.ctx, plan.from, plan.to);
    let existing = read_cache(cache)?;
    let wanted: HashSet<(String, u64, u32)> = primes.iter().map(|&p| (tag.clone(), p, plan.depth_cap)).collect();

    let mut cached: BTreeMap<u64, SweepRecord> = BTreeMap::new();
    if !plan.force {
        for r in &existing {
            if wanted.contains(&r.key()) {
                cached.insert(r.p, r.clone());
            }
        }
    }
    let todo: Vec<u64> = primes.iter().copied().filter(|p| !cached.contains_key(p)).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.jobs)
        .build()
        .map_err(|e| io::Error::new(io::ErrorKind::Other, e.to_string()))?;
    let mut fresh: Vec<SweepRecord> =
        pool.install(|| todo.par_iter().map(|&p| compute_record(p, plan.ctx, plan.depth_cap)).collect());
    fresh.sort_by_key(|r| r.p);

    if plan.force {
        let mut kept: Vec<SweepRecord> = existing.into_iter().filter(|r| !wanted.contains(&r.key())).collect();
        kept.extend(fresh.iter().cloned());
        rewrite_cache(cache, &kept)?;
    } else if !fresh.is_empty() {
        append_cache(cache, &fresh)?;
    }

    let mut summary = Summary {
        field: tag,
        from: plan.from,
        to: plan.to,
        depth_cap: plan.depth_cap,
        primes: primes.len(),
        cached: cached.len(),
        computed: fresh.len(),
        ..Summary::default()
    };
    let mut all: Vec<SweepRecord> = cached.into_values().chain(fresh).collect();
    all.sort_by_key(|r| r.p);
    for r in &all {
        match r.status {
            Status::Undecided => summary.undecided += 1,
            Status::Error => summary.errors += 1,
            Status::Ok if r.out_of_scope.is_some() => summary.out_of_scope += 1,
            Status::Ok if r.matches => summary.matches += 1,
            Status::Ok => {
                summary.mismatches += 1;
                summary.mismatched_primes.push(r.p);
            }
        }
        for (side, b) in [("phi", r.phi_branch), ("phihat", r.phihat_branch)] {
            if let Some(b) = b {
                *summary.branch_tallies.entry(format!("{side}:{b}")).or_default() += 1;
            }
        }
    }
    Ok((summary, all))
}
