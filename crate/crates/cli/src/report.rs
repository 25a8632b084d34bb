//! JSON documents printed by the subcommands.

use anyhow::Result;
use bdr_core::decider::{Decision, Reason};
use bdr_core::oracle::{self, DEFAULT_ORACLE_BUDGET, EXHAUSTIVE_LIMIT};
use bdr_core::reduction::{ReductionInstance, Role, RoundtripReport};
use bdr_core::{DegreeSequence, Verdict};
use serde::Serialize;

#[derive(Serialize)]
pub struct SplitOutput {
    pub u_indices: Vec<usize>,
    pub v_indices: Vec<usize>,
}

#[derive(Serialize)]
pub struct DecideOutput {
    pub verdict: Verdict,
    pub reason: Reason,
    pub split: Option<SplitOutput>,
    /// Edges as pairs of sequence positions.
    pub realization: Option<Vec<(usize, usize)>>,
    pub region: Option<&'static str>,
}

impl DecideOutput {
    pub fn new(d: &Decision) -> Self {
        DecideOutput {
            verdict: d.verdict,
            reason: d.reason,
            split: d.split.as_ref().map(|s| SplitOutput {
                u_indices: s.u_indices(),
                v_indices: s.v_indices(),
            }),
            realization: d.realization.as_ref().map(|g| g.labeled_edges()),
            region: d.region.map(|r| r.name()),
        }
    }
}

#[derive(Serialize)]
pub struct ReduceOutput {
    pub r: String,
    pub c1_tilde: String,
    pub c2_tilde: String,
    pub n: usize,
    pub d_prime: Vec<usize>,
    /// Shifted entries point at their position in the input file.
    pub roles: Vec<Role>,
}

impl ReduceOutput {
    pub fn new(inst: &ReductionInstance) -> Self {
        let roles = inst
            .roles
            .iter()
            .map(|role| match *role {
                Role::Shifted { source } => Role::Shifted {
                    source: inst.source_positions[source],
                },
                other => other,
            })
            .collect();
        ReduceOutput {
            r: inst.r.to_string(),
            c1_tilde: inst.c1_tilde.to_string(),
            c2_tilde: inst.c2_tilde.to_string(),
            n: inst.n,
            d_prime: inst.d_prime.degrees().to_vec(),
            roles,
        }
    }
}

#[derive(Serialize)]
pub struct VerifyOutput {
    pub sum: usize,
    pub n: usize,
    pub d_prime_len: usize,
    pub source_verdict: Verdict,
    pub padded_verdict: Verdict,
    pub verdicts_agree: bool,
    /// Whether the lifted witness realizes the padded sequence; null when
    /// the source is not bipartite.
    pub lift_ok: Option<bool>,
    /// Whether the projected exact-search witness realizes the source; null
    /// when the padded sequence is not bipartite or the audit failed.
    pub projection_ok: Option<bool>,
    /// Why the exact-search witness could not be projected.
    pub projection_audit: Option<String>,
    pub passed: bool,
}

impl VerifyOutput {
    pub fn new(rep: &RoundtripReport) -> Self {
        let (projection_ok, projection_audit) = match &rep.projection {
            None => (None, None),
            Some(Ok(ok)) => (Some(*ok), None),
            Some(Err(e)) => (None, Some(e.to_string())),
        };
        VerifyOutput {
            sum: rep.instance.sum,
            n: rep.instance.n,
            d_prime_len: rep.instance.d_prime.len(),
            source_verdict: rep.source.verdict,
            padded_verdict: rep.padded.verdict,
            verdicts_agree: rep.verdicts_agree(),
            lift_ok: rep.lift_ok,
            projection_ok,
            projection_audit,
            passed: rep.passed(),
        }
    }
}

#[derive(Serialize)]
pub struct OracleOutput {
    pub brute_force: bool,
    /// Null above the exhaustive search's size limit.
    pub exhaustive: Option<bool>,
}

impl OracleOutput {
    pub fn new(seq: &DegreeSequence) -> Result<Self> {
        Ok(OracleOutput {
            brute_force: oracle::brute_force_bipartite_realizable(seq, DEFAULT_ORACLE_BUDGET)?,
            exhaustive: if seq.len() <= EXHAUSTIVE_LIMIT {
                Some(oracle::exhaustive_graph_search(seq)?)
            } else {
                None
            },
        })
    }
}
