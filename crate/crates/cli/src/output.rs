//! Output shapes for the CLI. Rationals always serialize as exact strings
//! like "5/7", never as floats.

use serde::Serialize;

use fthresh_core::{CorrespondenceReport, Ideal, TestIdealProfile, ThresholdEstimate};

#[derive(Serialize)]
pub struct NuOutput {
    pub nu: u64,
}

#[derive(Serialize)]
pub struct ThresholdOutput {
    pub nu: u64,
    pub level: u32,
    pub lower: String,
    pub upper: String,
    pub degenerate: bool,
}

impl ThresholdOutput {
    pub fn from_estimate(est: &ThresholdEstimate) -> Self {
        ThresholdOutput {
            nu: est.nu,
            level: est.level,
            lower: est.lower.to_string(),
            upper: est.upper.to_string(),
            degenerate: est.degenerate,
        }
    }

    pub fn plain(&self) -> String {
        let mut line = format!(
            "e={} nu={} interval=[{}, {}]",
            self.level, self.nu, self.lower, self.upper
        );
        if self.degenerate {
            line.push_str(" (degenerate: f lies in J^[p^e])");
        }
        line
    }
}

/// Field order is load-bearing: serialized verbatim onto stdout.
#[derive(Serialize)]
pub struct FptOutput {
    pub lower: String,
    pub upper: String,
    pub guess: String,
}

#[derive(Serialize)]
pub struct FedderOutput {
    pub f_pure: bool,
}

#[derive(Serialize)]
pub struct TestIdealOutput {
    pub t: String,
    pub generators: Vec<String>,
}

pub fn ideal_generators(ideal: &Ideal) -> Vec<String> {
    ideal
        .groebner_basis()
        .iter()
        .map(|g| g.to_string())
        .collect()
}

#[derive(Serialize)]
pub struct ProfileEntryOutput {
    pub t: String,
    pub generators: Vec<String>,
}

#[derive(Serialize)]
pub struct JumpOutput {
    pub from: String,
    pub to: String,
}

#[derive(Serialize)]
pub struct JumpsOutput {
    pub level: u32,
    pub entries: Vec<ProfileEntryOutput>,
    pub jumps: Vec<JumpOutput>,
}

impl JumpsOutput {
    pub fn from_profile(profile: &TestIdealProfile) -> Self {
        JumpsOutput {
            level: profile.level,
            entries: profile
                .entries
                .iter()
                .map(|(t, tau)| ProfileEntryOutput {
                    t: t.to_string(),
                    generators: ideal_generators(tau),
                })
                .collect(),
            jumps: profile
                .jumps
                .iter()
                .map(|(lo, hi)| JumpOutput {
                    from: lo.to_string(),
                    to: hi.to_string(),
                })
                .collect(),
        }
    }

    pub fn plain(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&format!(
                "t={}\ttau=({})\n",
                entry.t,
                entry.generators.join(", ")
            ));
        }
        if self.jumps.is_empty() {
            out.push_str("no jumps detected\n");
        }
        for jump in &self.jumps {
            out.push_str(&format!("jump in ({}, {}]\n", jump.from, jump.to));
        }
        out.pop();
        out
    }
}

#[derive(Serialize)]
pub struct CheckOutput {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerifyOutput {
    pub passed: bool,
    pub retried: bool,
    pub checks: Vec<CheckOutput>,
    pub skipped: Vec<CheckOutput>,
    pub jumps: Vec<JumpOutput>,
}

impl VerifyOutput {
    pub fn from_report(report: &CorrespondenceReport) -> Self {
        let convert = |c: &fthresh_core::CheckOutcome| CheckOutput {
            label: c.label.clone(),
            passed: c.passed,
            detail: c.detail.clone(),
        };
        VerifyOutput {
            passed: report.all_passed(),
            retried: report.retried,
            checks: report
                .group_a
                .iter()
                .chain(&report.group_b)
                .chain(&report.group_c)
                .map(convert)
                .collect(),
            skipped: report.skipped.iter().map(convert).collect(),
            jumps: report
                .profile
                .jumps
                .iter()
                .map(|(lo, hi)| JumpOutput {
                    from: lo.to_string(),
                    to: hi.to_string(),
                })
                .collect(),
        }
    }

    pub fn plain(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            out.push_str(&format!(
                "[{}] {}: {}\n",
                if check.passed { "PASS" } else { "FAIL" },
                check.label,
                check.detail
            ));
        }
        for s in &self.skipped {
            out.push_str(&format!("[SKIP] {}: {}\n", s.label, s.detail));
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "verify: {} ({}/{} checks{})",
            if self.passed { "PASS" } else { "FAIL" },
            passed,
            self.checks.len(),
            if self.retried { ", E+1 retry used" } else { "" }
        ));
        out
    }
}
