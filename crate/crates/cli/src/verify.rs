use std::io::Write;
use std::process::ExitCode;

use clap::{Args, ValueEnum};
use fflv_core::characters::qchar_verify;
use fflv_core::marked_poset::{abs_verify, fflv_marked_poset, n1_report, random_marked_poset};
use fflv_core::polytope::{minkowski_verify, slice_verify};
use fflv_core::straightening::straightening_sweep;
use fflv_core::{DominantWeight, Family, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{CliResult, FamilyArg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Minkowski,
    Abs,
    Slice,
    Qchar,
    Straightening,
    #[value(name = "n1-formula")]
    N1Formula,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::Minkowski => "minkowski",
            Target::Abs => "abs",
            Target::Slice => "slice",
            Target::Qchar => "qchar",
            Target::Straightening => "straightening",
            Target::N1Formula => "n1-formula",
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    /// both families if absent (minkowski, abs)
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// check this rank only
    #[arg(long, conflicts_with = "max_n")]
    n: Option<usize>,
    /// check ranks 1..=max-n (k ≤ max-n for n1-formula)
    #[arg(long, default_value_t = 2)]
    max_n: usize,
    /// bound on every m_i
    #[arg(long, default_value_t = 2)]
    max_coeff: u32,
    /// random marked posets checked by `abs`
    #[arg(long, default_value_t = 100)]
    random: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// print only the summary line
    #[arg(long)]
    summary_only: bool,
}

fn weights(n: usize, max: u32) -> Vec<DominantWeight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(DominantWeight::new).collect()
}

struct Report<'a, W: Write> {
    target: &'static str,
    out: &'a mut W,
    quiet: bool,
    instances: usize,
    counterexample: Option<Value>,
}

impl<W: Write> Report<'_, W> {
    fn record(&mut self, instance: Value, verdict: &Verdict) -> CliResult<()> {
        self.instances += 1;
        let mut line = json!({ "target": self.target, "instance": instance });
        match verdict {
            Verdict::Pass => line["status"] = "pass".into(),
            Verdict::Fail { reason, witness } => {
                line["status"] = "fail".into();
                line["reason"] = reason.clone().into();
                line["witness"] = witness.clone();
                if self.counterexample.is_none() {
                    self.counterexample = Some(line.clone());
                }
            }
        }
        if !self.quiet {
            writeln!(self.out, "{line}")?;
        }
        Ok(())
    }

    fn finish(self, extra: Option<(&str, Value)>) -> CliResult<ExitCode> {
        let status = if self.counterexample.is_none() { "pass" } else { "fail" };
        let mut summary = json!({
            "target": self.target,
            "instances": self.instances,
            "status": status,
            "counterexample": self.counterexample,
        });
        if let Some((key, value)) = extra {
            summary[key] = value;
        }
        writeln!(self.out, "{summary}")?;
        Ok(if self.counterexample.is_none() { ExitCode::SUCCESS } else { ExitCode::from(1) })
    }
}

pub fn run(args: VerifyArgs, out: &mut impl Write) -> CliResult<ExitCode> {
    let ranks: Vec<usize> = match args.n {
        Some(n) => vec![n],
        None => (1..=args.max_n).collect(),
    };
    let families: Vec<Family> = match args.family {
        Some(f) => vec![f.into()],
        None => vec![Family::Even, Family::Odd],
    };
    let mut report = Report {
        target: args.target.name(),
        out,
        quiet: args.summary_only,
        instances: 0,
        counterexample: None,
    };

    match args.target {
        Target::Minkowski => {
            for &family in &families {
                for &n in &ranks {
                    let ws = weights(n, args.max_coeff);
                    for lam in &ws {
                        for mu in &ws {
                            let v = minkowski_verify(family, n, lam, mu)?;
                            report.record(json!({ "family": family, "n": n, "lambda": lam, "mu": mu }), &v)?;
                        }
                    }
                }
            }
        }
        Target::Abs => {
            for &family in &families {
                for &n in &ranks {
                    for lam in weights(n, args.max_coeff) {
                        let v = abs_verify(&fflv_marked_poset(family, n, &lam)?)?;
                        report.record(json!({ "family": family, "n": n, "lambda": lam }), &v)?;
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            for k in 0..args.random {
                let p = random_marked_poset(&mut rng, 8, 3);
                let v = abs_verify(&p)?;
                report.record(json!({ "random": k, "seed": args.seed, "poset": p.to_json() }), &v)?;
            }
        }
        Target::Slice => {
            for &n in &ranks {
                for lam in weights(n, args.max_coeff) {
                    let v = slice_verify(n, &lam)?;
                    report.record(json!({ "n": n, "lambda": lam }), &v)?;
                }
            }
        }
        Target::Qchar => {
            for &n in &ranks {
                for lam in weights(n, args.max_coeff) {
                    let v = qchar_verify(n, &lam)?;
                    report.record(json!({ "n": n, "lambda": lam }), &v)?;
                }
            }
        }
        Target::Straightening => {
            for &n in &ranks {
                for case in straightening_sweep(n, args.max_coeff)? {
                    let instance = json!({ "n": n, "lambda": case.lambda, "path": case.path, "s": case.s });
                    report.record(instance, &case.verdict)?;
                }
            }
        }
        Target::N1Formula => {
            let k_max = ranks.iter().copied().max().unwrap_or(1);
            let reports = n1_report(k_max, args.max_coeff)?;
            let mut passing = Vec::new();
            for r in &reports {
                if !args.summary_only {
                    writeln!(report.out, "{}", json!({ "target": report.target, "candidate": r }))?;
                }
                report.instances += r.instances;
                if r.passed && r.ks.len() + 1 == k_max {
                    passing.push(r.attachment.clone());
                }
            }
            if passing.is_empty() {
                report.counterexample = Some(json!({ "reason": "no attachment matches the formula" }));
            }
            return report.finish(Some(("passing", json!(passing))));
        }
    }
    report.finish(None)
}
