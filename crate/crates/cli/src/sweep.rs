//! Batch sweeps: a key-value config expands into (p, f, J, e) jobs that run
//! on a bounded worker pool and append line-delimited JSON records. Re-runs
//! skip jobs already present in the output file, so sweeps are resumable.

use std::collections::{HashSet, VecDeque};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use fthresh_core::{threshold_interval_budgeted, Ideal, PrimeField, Ring};

use crate::output::ThresholdOutput;

pub const SCHEMA: &str = "fthresh/1";

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct SweepJob {
    pub cmd: String,
    pub p: u64,
    pub vars: Vec<String>,
    pub f: String,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub e: u32,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct SweepRecord {
    pub schema: String,
    pub job: SweepJob,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outputs: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: f64,
    pub version: String,
    pub hash: String,
}

/// The deterministic content hash covers the job echo and the outputs (or
/// the error), never timing or tool version.
pub fn content_hash(
    job: &SweepJob,
    outputs: Option<&serde_json::Value>,
    error: Option<&str>,
) -> String {
    #[derive(Serialize)]
    struct Hashed<'a> {
        job: &'a SweepJob,
        outputs: Option<&'a serde_json::Value>,
        error: Option<&'a str>,
    }
    let canonical = serde_json::to_string(&Hashed {
        job,
        outputs,
        error,
    })
    .expect("record serialization cannot fail");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Debug)]
pub struct SweepConfig {
    pub primes: Vec<u64>,
    pub vars: Vec<String>,
    pub polys: Vec<String>,
    pub ideals: Vec<Vec<String>>,
    pub e_range: (u32, u32),
    pub out: PathBuf,
}

/// Plain-text key-value config; `#` starts a comment. `f` and `J` repeat.
pub fn parse_config(text: &str, base_dir: &Path) -> Result<SweepConfig, String> {
    let mut primes = Vec::new();
    let mut vars = Vec::new();
    let mut polys = Vec::new();
    let mut ideals = Vec::new();
    let mut e_range = None;
    let mut out = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "primes" | "p" => {
                for part in value.split(',') {
                    let p: u64 = part
                        .trim()
                        .parse()
                        .map_err(|_| format!("line {}: bad prime {:?}", lineno + 1, part))?;
                    primes.push(p);
                }
            }
            "vars" | "v" => {
                vars = value.split(',').map(|s| s.trim().to_string()).collect();
            }
            "f" => polys.push(value.to_string()),
            "J" | "j" => {
                ideals.push(value.split(',').map(|s| s.trim().to_string()).collect());
            }
            "e" => {
                let range = match value.split_once("..") {
                    Some((lo, hi)) => {
                        let lo: u32 = lo
                            .trim()
                            .parse()
                            .map_err(|_| format!("line {}: bad e range", lineno + 1))?;
                        let hi: u32 = hi
                            .trim()
                            .parse()
                            .map_err(|_| format!("line {}: bad e range", lineno + 1))?;
                        (lo, hi)
                    }
                    None => {
                        let hi: u32 = value
                            .parse()
                            .map_err(|_| format!("line {}: bad e value", lineno + 1))?;
                        (1, hi)
                    }
                };
                if range.0 < 1 || range.1 < range.0 {
                    return Err(format!("line {}: empty e range", lineno + 1));
                }
                e_range = Some(range);
            }
            "out" => out = Some(base_dir.join(value)),
            other => return Err(format!("line {}: unknown key {:?}", lineno + 1, other)),
        }
    }

    let config = SweepConfig {
        primes,
        vars,
        polys,
        ideals,
        e_range: e_range.ok_or("missing key: e")?,
        out: out.ok_or("missing key: out")?,
    };
    if config.primes.is_empty() {
        return Err("missing key: primes".into());
    }
    if config.vars.is_empty() {
        return Err("missing key: vars".into());
    }
    if config.polys.is_empty() {
        return Err("at least one f line is required".into());
    }
    if config.ideals.is_empty() {
        return Err("at least one J line is required".into());
    }
    Ok(config)
}

pub fn expand_jobs(config: &SweepConfig) -> Vec<SweepJob> {
    let mut jobs = Vec::new();
    for &p in &config.primes {
        for f in &config.polys {
            for j in &config.ideals {
                let gens = if j.len() == 1 && j[0] == "@m" {
                    config.vars.clone()
                } else {
                    j.clone()
                };
                for e in config.e_range.0..=config.e_range.1 {
                    jobs.push(SweepJob {
                        cmd: "threshold".into(),
                        p,
                        vars: config.vars.clone(),
                        f: f.clone(),
                        j: gens.clone(),
                        e,
                    });
                }
            }
        }
    }
    jobs
}

fn job_key(job: &SweepJob) -> String {
    serde_json::to_string(job).expect("job serialization cannot fail")
}

/// Keys of jobs already recorded in the output file.
pub fn existing_job_keys(path: &Path) -> HashSet<String> {
    let mut keys = HashSet::new();
    if let Ok(file) = std::fs::File::open(path) {
        for line in BufReader::new(file).lines().map_while(|l| l.ok()) {
            if let Ok(record) = serde_json::from_str::<SweepRecord>(&line) {
                keys.insert(job_key(&record.job));
            }
        }
    }
    keys
}

pub fn run_job(job: &SweepJob, budget: u64) -> SweepRecord {
    let started = Instant::now();
    let result = (|| -> fthresh_core::Result<serde_json::Value> {
        let field = PrimeField::new(job.p)?;
        let ring = Ring::new(field, job.vars.clone())?;
        let f = fthresh_core::parse_poly(&job.f, &ring)?;
        let gens = job
            .j
            .iter()
            .map(|g| fthresh_core::parse_poly(g, &ring))
            .collect::<Result<Vec<_>, _>>()?;
        let ideal = Ideal::new(&ring, gens);
        let est = threshold_interval_budgeted(&f, &ideal, job.e, budget)?;
        Ok(serde_json::to_value(ThresholdOutput::from_estimate(&est)).expect("serializable"))
    })();
    let timing_ms = started.elapsed().as_secs_f64() * 1000.0;
    let (outputs, error) = match result {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let hash = content_hash(job, outputs.as_ref(), error.as_deref());
    SweepRecord {
        schema: SCHEMA.into(),
        job: job.clone(),
        outputs,
        error,
        timing_ms,
        version: env!("CARGO_PKG_VERSION").into(),
        hash,
    }
}

pub struct SweepSummary {
    pub appended: usize,
    pub skipped: usize,
    pub errors: usize,
    pub out: PathBuf,
}

/// Run all jobs not yet present in the output file on `workers` threads and
/// append their records. A single writer serializes file appends.
pub fn run_sweep(
    config: &SweepConfig,
    workers: usize,
    budget: u64,
) -> Result<SweepSummary, String> {
    let all_jobs = expand_jobs(config);
    if all_jobs.is_empty() {
        return Err("config expands to zero jobs".into());
    }
    let existing = existing_job_keys(&config.out);
    let pending: VecDeque<SweepJob> = all_jobs
        .iter()
        .filter(|j| !existing.contains(&job_key(j)))
        .cloned()
        .collect();
    let skipped = all_jobs.len() - pending.len();

    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&config.out)
        .map_err(|e| format!("cannot open {}: {}", config.out.display(), e))?;

    let queue = Mutex::new(pending);
    let (sender, receiver) = mpsc::channel::<SweepRecord>();
    let workers = workers.max(1);

    let mut appended = 0usize;
    let mut errors = 0usize;
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let sender = sender.clone();
            let queue = &queue;
            scope.spawn(move || loop {
                let job = match queue.lock().expect("queue poisoned").pop_front() {
                    Some(job) => job,
                    None => break,
                };
                let record = run_job(&job, budget);
                if sender.send(record).is_err() {
                    break;
                }
            });
        }
        drop(sender);
        for record in receiver {
            if record.error.is_some() {
                errors += 1;
            }
            let line = serde_json::to_string(&record).expect("record serialization cannot fail");
            if let Err(e) = writeln!(file, "{}", line) {
                eprintln!("write failed: {}", e);
                break;
            }
            appended += 1;
        }
    });

    Ok(SweepSummary {
        appended,
        skipped,
        errors,
        out: config.out.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let text = "\
# demo sweep
primes = 2, 3, 5
vars = x
f = x
J = x
e = 1..3
out = results.jsonl
";
        let config = parse_config(text, Path::new("/tmp")).unwrap();
        assert_eq!(config.primes, vec![2, 3, 5]);
        assert_eq!(config.e_range, (1, 3));
        assert_eq!(expand_jobs(&config).len(), 9);
    }

    #[test]
    fn config_errors() {
        assert!(parse_config("primes = 2\n", Path::new(".")).is_err());
        assert!(parse_config("bogus = 1\n", Path::new(".")).is_err());
        assert!(parse_config("e = 3..1\n", Path::new(".")).is_err());
    }

    #[test]
    fn maximal_ideal_shortcut_expands() {
        let text = "primes=5\nvars=x,y\nf=x*y\nJ=@m\ne=1\nout=o.jsonl\n";
        let config = parse_config(text, Path::new(".")).unwrap();
        let jobs = expand_jobs(&config);
        assert_eq!(jobs[0].j, vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn hash_ignores_timing() {
        let job = SweepJob {
            cmd: "threshold".into(),
            p: 5,
            vars: vec!["x".into()],
            f: "x".into(),
            j: vec!["x".into()],
            e: 1,
        };
        let mut a = run_job(&job, 1_000_000);
        let b = run_job(&job, 1_000_000);
        a.timing_ms = 12345.0;
        assert_eq!(a.hash, b.hash);
        assert!(a.outputs.is_some());
    }
}
