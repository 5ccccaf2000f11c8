//! Report assembly: one structure serving both the machine-readable JSON
//! output and the human-readable text rendering, field for field.

use serde::Serialize;

use crate::document::{group_to_doc, GroupDoc, OperatorDocument};
use crate::operator::Verdict;
use crate::scalar::Field;
use crate::subgroup::ClosedSubgroup;
use crate::verify::{OracleReport, ZeroSetReport};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: ToolInfo,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator_echo: Option<OperatorDocument>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo { name: "liouville", version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub dimension: usize,
    pub dense: bool,
    pub trivial: bool,
    #[serde(flatten)]
    pub decomposition: GroupDoc,
}

impl GroupSummary {
    pub fn new(g: &ClosedSubgroup) -> Self {
        GroupSummary {
            dimension: g.dim(),
            dense: g.is_dense(),
            trivial: g.is_trivial(),
            decomposition: group_to_doc(g),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictDoc {
    pub liouville: bool,
    pub degenerate: bool,
    pub period_group: GroupSummary,
    pub support_group: GroupSummary,
    pub c_mu: Vec<String>,
    pub effective_drift: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_d_form: Option<OneDFormDoc>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleDoc {
    pub xi: Vec<String>,
    /// Human-readable description of the bounded nonconstant solution.
    pub solution: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessDoc {
    pub h_normal: Vec<String>,
    pub c: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OneDFormDoc {
    pub g: String,
    pub atoms: Vec<OneDAtomDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OneDAtomDoc {
    pub position: String,
    pub weight: String,
    pub n: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilator_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_set: Option<ZeroSetReport>,
}

pub fn verdict_doc(v: &Verdict) -> VerdictDoc {
    VerdictDoc {
        liouville: v.liouville,
        degenerate: v.degenerate,
        period_group: GroupSummary::new(&v.period_group),
        support_group: GroupSummary::new(&v.support_group),
        c_mu: v.c_mu.iter().map(|s| s.render()).collect(),
        effective_drift: v.effective_drift.iter().map(|s| s.render()).collect(),
        counterexample: v.counterexample.as_ref().map(|ce| {
            let xi: Vec<String> = ce.xi.iter().map(|s| s.render()).collect();
            CounterexampleDoc {
                solution: format!("u(x) = cos(2*pi * ({}) . x)", xi.join(", ")),
                xi,
            }
        }),
        witness: v.witness.as_ref().map(|w| WitnessDoc {
            h_normal: w.h_normal.iter().map(|s| s.render()).collect(),
            c: w.c.iter().map(|s| s.render()).collect(),
        }),
        one_d_form: v.one_d_form.as_ref().map(|f| OneDFormDoc {
            g: f.g.render(),
            atoms: f
                .atom_table
                .iter()
                .map(|a| OneDAtomDoc {
                    position: a.position.render(),
                    weight: format!("{}", a.weight),
                    n: format!("{}", a.n),
                })
                .collect(),
        }),
        notes: v.notes.clone(),
    }
}

/// The assumptions block: independence assertions for transcendental
/// fields and the truncation caveat for atomic measures.
pub fn assumptions(field: &Field, op_has_atoms: bool, degenerate: bool) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(a) = field.independence_assertion() {
        out.push(a.to_string());
    }
    if op_has_atoms {
        out.push(
            "the measure is taken exactly as given; if it truncates an intended infinite \
             support, the verdict applies to the truncation only"
                .to_string(),
        );
    }
    if degenerate {
        out.push("degenerate operator L = 0: the verdict is the trivial one".to_string());
    }
    out
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Text rendering mirroring every field of the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: &str| {
            out.push_str(line);
            out.push('\n');
        };
        push(&mut out, &format!("{} {} — {}", self.tool.name, self.tool.version, self.command));
        if let Some(seed) = self.seed {
            push(&mut out, &format!("seed: {seed}"));
        }
        if let Some(v) = &self.verdict {
            push(&mut out, "");
            push(
                &mut out,
                &format!("Liouville property: {}", if v.liouville { "HOLDS" } else { "FAILS" }),
            );
            if v.degenerate {
                push(&mut out, "  (degenerate operator L = 0)");
            }
            push(&mut out, &format!("c_mu            : ({})", v.c_mu.join(", ")));
            push(&mut out, &format!("effective drift : ({})", v.effective_drift.join(", ")));
            push(&mut out, &render_group("support group G_mu", &v.support_group));
            push(&mut out, &render_group("period group", &v.period_group));
            if let Some(ce) = &v.counterexample {
                push(&mut out, &format!("counterexample  : {}", ce.solution));
                push(&mut out, &format!("  xi = ({})", ce.xi.join(", ")));
            }
            if let Some(w) = &v.witness {
                push(
                    &mut out,
                    &format!(
                        "witness         : supp(mu)+W inside H + cZ, H = ({})^perp, c = ({})",
                        w.h_normal.join(", "),
                        w.c.join(", ")
                    ),
                );
            }
            if let Some(f) = &v.one_d_form {
                push(&mut out, &format!("1-d lattice form: g = {}", f.g));
                for a in &f.atoms {
                    push(
                        &mut out,
                        &format!("  atom at {} = {}*g with weight {}", a.position, a.n, a.weight),
                    );
                }
            }
            for n in &v.notes {
                push(&mut out, &format!("note: {n}"));
            }
        }
        if let Some(g) = &self.group {
            push(&mut out, "");
            push(&mut out, &render_group("closure", g));
            push(&mut out, &format!("dense: {}", g.dense));
        }
        if let Some(ver) = &self.verification {
            push(&mut out, "");
            push(&mut out, "verification:");
            if let Some(r) = ver.annihilator_residual {
                push(&mut out, &format!("  annihilator residual |psi(2 pi xi)| = {r:.3e}"));
            }
            if let Some(z) = &ver.zero_set {
                push(
                    &mut out,
                    &format!(
                        "  zero family: {} samples, max residual {:.3e}, pass = {}",
                        z.n_samples, z.zero_family_max_residual, z.zero_family_pass
                    ),
                );
                push(
                    &mut out,
                    &format!(
                        "  perturbed: min |psi| = {:.3e}, mean |psi| = {:.3e}, max Re psi = {:.3e}",
                        z.perturbed_min_margin, z.perturbed_mean_margin, z.perturbed_max_re
                    ),
                );
            }
        }
        if let Some(o) = &self.oracle {
            push(&mut out, "");
            push(&mut out, "density oracle:");
            push(
                &mut out,
                &format!(
                    "  confined = {}, covered_fraction = {:.4}, N = {}, eps = {}, targets = {}, \
                     seed = {}",
                    o.confined, o.covered_fraction, o.n_max, o.eps, o.targets, o.seed
                ),
            );
            push(&mut out, &format!("  max generator distance = {:.3e}", o.max_generator_distance));
            for n in &o.notes {
                push(&mut out, &format!("  note: {n}"));
            }
        }
        if !self.assumptions.is_empty() {
            push(&mut out, "");
            push(&mut out, "assumptions:");
            for a in &self.assumptions {
                push(&mut out, &format!("  - {a}"));
            }
        }
        out
    }
}

fn render_group(label: &str, g: &GroupSummary) -> String {
    let mut s = format!("{label} (d = {}):", g.dimension);
    if g.trivial {
        s.push_str(" {0}");
        return s;
    }
    if g.dense {
        s.push_str(" R^d (dense)");
    }
    s.push('\n');
    s.push_str("  V basis      :");
    if g.decomposition.v_basis.is_empty() {
        s.push_str(" (none)");
    }
    for v in &g.decomposition.v_basis {
        s.push_str(&format!(" ({})", v.join(", ")));
    }
    s.push('\n');
    s.push_str("  lattice basis:");
    if g.decomposition.lattice_basis.is_empty() {
        s.push_str(" (none)");
    }
    for v in &g.decomposition.lattice_basis {
        s.push_str(&format!(" ({})", v.join(", ")));
    }
    s
}
