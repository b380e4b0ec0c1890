//! File-driven problem documents: a JSON description names a problem kind
//! and its payload; `run` dispatches to the matching computation and
//! assembles a deterministic report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::divergence::{rd_chain, ChainGrades};
use crate::error::{Error, Result};
use crate::grading::GradingFunction;
use crate::oracle::{brute_force_maxent, exhaustive_min_chain};
use crate::powerset::{is_equilateral, rd_powerset, subordinate_additive, EQUILATERAL_TOL};
use crate::solvers::{
    evaluate_objective, solve_cardinality_dependent, solve_linear_constraints, solve_quotas,
    solve_quotas_costs, CardinalityAnchors, ConstraintSystem, CostSpec, MrdpSolution, Partition,
    SolutionCase,
};
use crate::space::EventSpace;

/// The supported problem kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    RdChain,
    RdPowerset,
    Entropy,
    Cardinality,
    Quotas,
    QuotasCosts,
    Linear,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::RdChain => "rd_chain",
            ProblemKind::RdPowerset => "rd_powerset",
            ProblemKind::Entropy => "entropy",
            ProblemKind::Cardinality => "cardinality",
            ProblemKind::Quotas => "quotas",
            ProblemKind::QuotasCosts => "quotas_costs",
            ProblemKind::Linear => "linear",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "rd_chain" => ProblemKind::RdChain,
            "rd_powerset" => ProblemKind::RdPowerset,
            "entropy" => ProblemKind::Entropy,
            "cardinality" => ProblemKind::Cardinality,
            "quotas" => ProblemKind::Quotas,
            "quotas_costs" => ProblemKind::QuotasCosts,
            "linear" => ProblemKind::Linear,
            _ => return None,
        })
    }
}

/// A structurally validated problem, ready to run.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemDoc {
    RdChain {
        space: EventSpace,
        f: ChainGrades,
        g: ChainGrades,
    },
    RdPowerset {
        space: EventSpace,
        measure: GradingFunction,
    },
    Entropy {
        space: EventSpace,
        measure: GradingFunction,
    },
    Cardinality {
        space: EventSpace,
        anchors: CardinalityAnchors,
    },
    Quotas {
        space: EventSpace,
        partition: Partition,
    },
    QuotasCosts {
        space: EventSpace,
        partition: Partition,
        costs: CostSpec,
    },
    Linear {
        space: EventSpace,
        system: ConstraintSystem,
    },
}

impl ProblemDoc {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemDoc::RdChain { .. } => ProblemKind::RdChain,
            ProblemDoc::RdPowerset { .. } => ProblemKind::RdPowerset,
            ProblemDoc::Entropy { .. } => ProblemKind::Entropy,
            ProblemDoc::Cardinality { .. } => ProblemKind::Cardinality,
            ProblemDoc::Quotas { .. } => ProblemKind::Quotas,
            ProblemDoc::QuotasCosts { .. } => ProblemKind::QuotasCosts,
            ProblemDoc::Linear { .. } => ProblemKind::Linear,
        }
    }

    pub fn space(&self) -> &EventSpace {
        match self {
            ProblemDoc::RdChain { space, .. }
            | ProblemDoc::RdPowerset { space, .. }
            | ProblemDoc::Entropy { space, .. }
            | ProblemDoc::Cardinality { space, .. }
            | ProblemDoc::Quotas { space, .. }
            | ProblemDoc::QuotasCosts { space, .. }
            | ProblemDoc::Linear { space, .. } => space,
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    kind: String,
    elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chain: Option<RawChain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<RawSubsetGrade>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    anchors: Option<Vec<(usize, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rates: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    costs: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constraints: Option<RawConstraints>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawChain {
    f: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawSubsetGrade {
    subset: Vec<String>,
    value: f64,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawConstraints {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn resolve_subset(space: &EventSpace, labels: &[String], path: &str) -> Result<u32> {
    let mut mask = 0u32;
    for label in labels {
        let index = space
            .index_of(label)
            .ok_or_else(|| Error::UnknownElement {
                label: label.clone(),
            })?;
        let bit = 1u32 << index;
        if mask & bit != 0 {
            return Err(schema(path, format!("label {label:?} listed twice")));
        }
        mask |= bit;
    }
    Ok(mask)
}

/// Parses and validates a JSON problem document. Syntax failures come back
/// as [`Error::Parse`], structural failures as [`Error::Schema`] with a
/// field path, and unresolvable labels as [`Error::UnknownElement`].
pub fn parse_problem(text: &str) -> Result<ProblemDoc> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|err| {
        use serde_json::error::Category;
        match err.classify() {
            Category::Syntax | Category::Eof | Category::Io => Error::Parse(err.to_string()),
            Category::Data => schema("$", err.to_string()),
        }
    })?;

    let kind = ProblemKind::parse(&raw.kind)
        .ok_or_else(|| schema("kind", format!("unknown problem kind {:?}", raw.kind)))?;

    if raw.elements.is_empty() {
        return Err(schema("elements", "at least one element is required"));
    }
    if raw.elements.len() > 31 {
        return Err(schema("elements", "at most 31 elements are supported"));
    }
    for (i, label) in raw.elements.iter().enumerate() {
        if raw.elements[..i].contains(label) {
            return Err(schema(format!("elements[{i}]"), "duplicate element label"));
        }
    }
    let space = EventSpace::new(raw.elements.clone())?;
    let n = space.n();

    // Exactly the payload fields of the requested kind may be present.
    let allowed: &[&str] = match kind {
        ProblemKind::RdChain => &["chain"],
        ProblemKind::RdPowerset | ProblemKind::Entropy => &["table"],
        ProblemKind::Cardinality => &["anchors"],
        ProblemKind::Quotas => &["blocks", "quotas"],
        ProblemKind::QuotasCosts => &["blocks", "quotas", "rates", "costs"],
        ProblemKind::Linear => &["constraints"],
    };
    let present: [(&str, bool); 7] = [
        ("chain", raw.chain.is_some()),
        ("table", raw.table.is_some()),
        ("anchors", raw.anchors.is_some()),
        ("blocks", raw.blocks.is_some()),
        ("quotas", raw.quotas.is_some()),
        ("rates", raw.rates.is_some()),
        ("costs", raw.costs.is_some()),
    ];
    for (field, is_present) in present {
        let wanted = allowed.contains(&field);
        if wanted && !is_present {
            return Err(schema(
                field,
                format!("required for kind {:?}", kind.as_str()),
            ));
        }
        if !wanted && is_present {
            return Err(schema(
                field,
                format!("not allowed for kind {:?}", kind.as_str()),
            ));
        }
    }
    if (kind == ProblemKind::Linear) != raw.constraints.is_some() {
        return Err(schema(
            "constraints",
            if kind == ProblemKind::Linear {
                "required for kind \"linear\""
            } else {
                "only allowed for kind \"linear\""
            },
        ));
    }

    match kind {
        ProblemKind::RdChain => {
            let chain = raw.chain.unwrap();
            if chain.f.len() != n + 1 {
                return Err(schema(
                    "chain.f",
                    format!("expected {} grades for {} elements", n + 1, n),
                ));
            }
            let f = ChainGrades::new(chain.f)?;
            let g = match chain.g {
                Some(values) => {
                    if values.len() != n + 1 {
                        return Err(schema(
                            "chain.g",
                            format!("expected {} grades for {} elements", n + 1, n),
                        ));
                    }
                    ChainGrades::new(values)?
                }
                None => ChainGrades::ordinal(n),
            };
            Ok(ProblemDoc::RdChain { space, f, g })
        }
        ProblemKind::RdPowerset | ProblemKind::Entropy => {
            let entries = raw.table.unwrap();
            let size = 1usize << n;
            let mut values = vec![f64::NAN; size];
            let mut seen = vec![false; size];
            for (i, entry) in entries.iter().enumerate() {
                let path = format!("table[{i}].subset");
                let mask = resolve_subset(&space, &entry.subset, &path)?;
                if seen[mask as usize] {
                    return Err(schema(path, "subset listed twice"));
                }
                seen[mask as usize] = true;
                values[mask as usize] = entry.value;
            }
            if let Some(missing) = seen.iter().position(|&s| !s) {
                return Err(schema(
                    "table",
                    format!(
                        "missing subset {{{}}}",
                        space.subset_labels(missing as u32).join(", ")
                    ),
                ));
            }
            let measure = GradingFunction::table(n, values)?;
            if kind == ProblemKind::RdPowerset {
                Ok(ProblemDoc::RdPowerset { space, measure })
            } else {
                Ok(ProblemDoc::Entropy { space, measure })
            }
        }
        ProblemKind::Cardinality => {
            let pairs = raw.anchors.unwrap();
            let anchors = CardinalityAnchors::new(pairs)?;
            if anchors.n() != n {
                return Err(schema(
                    "anchors",
                    format!("last anchor must sit at cardinality {n}"),
                ));
            }
            Ok(ProblemDoc::Cardinality { space, anchors })
        }
        ProblemKind::Quotas | ProblemKind::QuotasCosts => {
            let blocks = raw.blocks.unwrap();
            let quotas = raw.quotas.unwrap();
            let mut index_blocks = Vec::with_capacity(blocks.len());
            for (k, block) in blocks.iter().enumerate() {
                let mut indices = Vec::with_capacity(block.len());
                for label in block {
                    let index =
                        space
                            .index_of(label)
                            .ok_or_else(|| Error::UnknownElement {
                                label: label.clone(),
                            })?;
                    indices.push(index);
                }
                if indices.is_empty() {
                    return Err(schema(format!("blocks[{k}]"), "block is empty"));
                }
                index_blocks.push(indices);
            }
            let partition = Partition::new(index_blocks, quotas)?;
            if partition.n() != n {
                return Err(schema("blocks", "blocks must cover every element"));
            }
            if kind == ProblemKind::Quotas {
                Ok(ProblemDoc::Quotas { space, partition })
            } else {
                let rates = raw.rates.unwrap();
                if rates.len() != n {
                    return Err(schema(
                        "rates",
                        format!("expected one rate per element ({n})"),
                    ));
                }
                let costs = CostSpec::new(rates, raw.costs.unwrap())?;
                if costs.costs().len() != partition.block_count() {
                    return Err(schema(
                        "costs",
                        format!("expected one cost per block ({})", partition.block_count()),
                    ));
                }
                Ok(ProblemDoc::QuotasCosts {
                    space,
                    partition,
                    costs,
                })
            }
        }
        ProblemKind::Linear => {
            let raw_constraints = raw.constraints.unwrap();
            for (k, row) in raw_constraints.rows.iter().enumerate() {
                if row.len() != n {
                    return Err(schema(
                        format!("constraints.rows[{k}]"),
                        format!("expected {n} coefficients"),
                    ));
                }
            }
            let system = ConstraintSystem::new(raw_constraints.rows, raw_constraints.rhs)?;
            Ok(ProblemDoc::Linear { space, system })
        }
    }
}

/// Canonical JSON text for a parsed problem; `parse_problem` of the output
/// yields an equal document.
pub fn render_problem(doc: &ProblemDoc) -> String {
    let space = doc.space();
    let mut raw = RawProblem {
        kind: doc.kind().as_str().to_string(),
        elements: space.labels().to_vec(),
        chain: None,
        table: None,
        anchors: None,
        blocks: None,
        quotas: None,
        rates: None,
        costs: None,
        constraints: None,
    };
    match doc {
        ProblemDoc::RdChain { f, g, .. } => {
            raw.chain = Some(RawChain {
                f: f.values().to_vec(),
                g: Some(g.values().to_vec()),
            });
        }
        ProblemDoc::RdPowerset { measure, .. } | ProblemDoc::Entropy { measure, .. } => {
            let size = 1u32 << space.n();
            raw.table = Some(
                (0..size)
                    .map(|mask| RawSubsetGrade {
                        subset: space
                            .subset_labels(mask)
                            .iter()
                            .map(|s| s.to_string())
                            .collect(),
                        value: measure.value(mask),
                    })
                    .collect(),
            );
        }
        ProblemDoc::Cardinality { anchors, .. } => {
            raw.anchors = Some(anchors.pairs().to_vec());
        }
        ProblemDoc::Quotas { partition, .. } => {
            raw.blocks = Some(blocks_to_labels(partition, space));
            raw.quotas = Some(partition.quotas().to_vec());
        }
        ProblemDoc::QuotasCosts {
            partition, costs, ..
        } => {
            raw.blocks = Some(blocks_to_labels(partition, space));
            raw.quotas = Some(partition.quotas().to_vec());
            raw.rates = Some(costs.rates().to_vec());
            raw.costs = Some(costs.costs().to_vec());
        }
        ProblemDoc::Linear { system, .. } => {
            raw.constraints = Some(RawConstraints {
                rows: system.rows().to_vec(),
                rhs: system.rhs().to_vec(),
            });
        }
    }
    serde_json::to_string_pretty(&raw).expect("report serialization cannot fail")
}

fn blocks_to_labels(partition: &Partition, space: &EventSpace) -> Vec<Vec<String>> {
    partition
        .blocks()
        .iter()
        .map(|block| block.iter().map(|&j| space.label(j).to_string()).collect())
        .collect()
}

/// Options for [`run_with`]: the equilateral check and the brute-force
/// cross-check are opt-in.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub check_equilateral: bool,
    pub oracle_restarts: Option<u32>,
}

/// The rendered outcome of a problem run.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: ProblemKind,
    pub case: Option<SolutionCase>,
    pub objective: f64,
    /// Per-element increments, in element order.
    pub f: Option<Vec<(String, f64)>>,
    pub multipliers: Option<Vec<f64>>,
    pub residual: Option<f64>,
    pub argmin_chain: Option<Vec<String>>,
    pub spread: Option<f64>,
    pub agreement_gap: Option<f64>,
}

/// Runs a problem with default options.
pub fn run(doc: &ProblemDoc) -> Result<Report> {
    run_with(doc, &RunOptions::default())
}

fn labeled(space: &EventSpace, values: &[f64]) -> Vec<(String, f64)> {
    space
        .labels()
        .iter()
        .zip(values)
        .map(|(label, &v)| (label.clone(), v))
        .collect()
}

fn solution_report(kind: ProblemKind, space: &EventSpace, solution: &MrdpSolution) -> Report {
    Report {
        kind,
        case: Some(solution.case),
        objective: solution.objective,
        f: Some(labeled(space, &solution.f)),
        multipliers: Some(solution.multipliers.clone()),
        residual: Some(solution.residual),
        argmin_chain: None,
        spread: None,
        agreement_gap: None,
    }
}

/// Runs a problem and assembles its report. Numeric fields are carried at
/// full precision; rendering rounds to 12 significant digits.
pub fn run_with(doc: &ProblemDoc, options: &RunOptions) -> Result<Report> {
    let mut report = match doc {
        ProblemDoc::RdChain { space, f, g } => {
            let value = rd_chain(f, g)?;
            Report {
                kind: ProblemKind::RdChain,
                case: None,
                objective: value,
                f: Some(labeled(space, &f.increments())),
                multipliers: None,
                residual: None,
                argmin_chain: None,
                spread: None,
                agreement_gap: None,
            }
        }
        ProblemDoc::RdPowerset { space, measure } | ProblemDoc::Entropy { space, measure } => {
            let natural = GradingFunction::cardinality(space.n());
            let result = rd_powerset(measure, &natural, space)?;
            let objective = match doc {
                // The entropy kind insists on a normalized measure.
                ProblemDoc::Entropy { .. } => crate::powerset::entropy_powerset(measure)?,
                _ => result.value,
            };
            let subordinate = subordinate_additive(measure, &result.argmin_chain)?;
            let increments: Vec<f64> = (0..space.n())
                .map(|j| subordinate.value(1 << j))
                .collect();
            Report {
                kind: doc.kind(),
                case: None,
                objective,
                f: Some(labeled(space, &increments)),
                multipliers: None,
                residual: None,
                argmin_chain: Some(
                    result
                        .argmin_chain
                        .labels(space)
                        .iter()
                        .map(|s| s.to_string())
                        .collect(),
                ),
                spread: Some(result.per_chain_spread),
                agreement_gap: None,
            }
        }
        ProblemDoc::Cardinality { space, anchors } => {
            let profile = solve_cardinality_dependent(anchors)?;
            let increments: Vec<f64> = match &profile {
                GradingFunction::CardinalityProfile { profile } => {
                    profile.windows(2).map(|w| w[1] - w[0]).collect()
                }
                _ => unreachable!("cardinality solver yields a profile"),
            };
            let residual = anchors
                .pairs()
                .iter()
                .map(|&(nk, mk)| (profile.value(((1u64 << nk) - 1) as u32) - mk).abs())
                .fold(0.0, f64::max);
            Report {
                kind: ProblemKind::Cardinality,
                case: Some(SolutionCase::Interior),
                objective: evaluate_objective(&increments)?,
                f: Some(labeled(space, &increments)),
                multipliers: None,
                residual: Some(residual),
                argmin_chain: None,
                spread: None,
                agreement_gap: None,
            }
        }
        ProblemDoc::Quotas { space, partition } => {
            let solution = solve_quotas(partition)?;
            solution_report(ProblemKind::Quotas, space, &solution)
        }
        ProblemDoc::QuotasCosts {
            space,
            partition,
            costs,
        } => {
            let solution = solve_quotas_costs(partition, costs)?;
            solution_report(ProblemKind::QuotasCosts, space, &solution)
        }
        ProblemDoc::Linear { space, system } => {
            let solution = solve_linear_constraints(system)?;
            solution_report(ProblemKind::Linear, space, &solution)
        }
    };

    if options.check_equilateral && report.spread.is_none() {
        let space = doc.space();
        let grading = match doc {
            ProblemDoc::Cardinality { anchors, .. } => Some(solve_cardinality_dependent(anchors)?),
            ProblemDoc::Quotas { .. } | ProblemDoc::QuotasCosts { .. } | ProblemDoc::Linear { .. } => {
                let f: Vec<f64> = report.f.as_ref().unwrap().iter().map(|(_, v)| *v).collect();
                Some(GradingFunction::element_additive(f)?)
            }
            _ => None,
        };
        if let Some(grading) = grading {
            let check = is_equilateral(&grading, space, EQUILATERAL_TOL)?;
            report.spread = Some(check.spread);
        }
    }
    if !options.check_equilateral {
        // The spread is reported only on request.
        report.spread = None;
    }

    if let Some(restarts) = options.oracle_restarts {
        let gap = match doc {
            ProblemDoc::RdChain { .. } => None,
            ProblemDoc::RdPowerset { space, measure } | ProblemDoc::Entropy { space, measure } => {
                let natural = GradingFunction::cardinality(space.n());
                let exhaustive = exhaustive_min_chain(measure, &natural, space)?;
                Some((exhaustive.value - report.objective).abs())
            }
            ProblemDoc::Cardinality { anchors, .. } => {
                let system = ConstraintSystem::from_anchors(anchors);
                let oracle = brute_force_maxent(&system, restarts)?
                    .with_reference_objective(report.objective);
                oracle.agreement_gap
            }
            ProblemDoc::Quotas { partition, .. } => {
                let system = ConstraintSystem::from_partition(partition);
                let oracle = brute_force_maxent(&system, restarts)?
                    .with_reference_objective(report.objective);
                oracle.agreement_gap
            }
            ProblemDoc::QuotasCosts {
                partition, costs, ..
            } => {
                let system = ConstraintSystem::from_partition_with_costs(partition, costs);
                let oracle = brute_force_maxent(&system, restarts)?
                    .with_reference_objective(report.objective);
                oracle.agreement_gap
            }
            ProblemDoc::Linear { system, .. } => {
                let oracle =
                    brute_force_maxent(system, restarts)?.with_reference_objective(report.objective);
                oracle.agreement_gap
            }
        };
        report.agreement_gap = gap;
    }

    Ok(report)
}

/// Rounds to 12 significant digits; report output stays diffable without
/// trailing-bit noise.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0; // drops the sign of -0.0
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("round-trip of finite float")
}

fn fmt12(x: f64) -> String {
    let rounded = sig12(x);
    if rounded == 0.0 {
        "0".to_string()
    } else {
        format!("{rounded}")
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    kind: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<&'a str>,
    objective: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<BTreeMap<&'a str, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    multipliers: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    argmin_chain: Option<Vec<&'a str>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spread: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agreement_gap: Option<f64>,
}

impl Report {
    /// JSON rendering: fixed field order, label-sorted `f` map, numbers
    /// rounded to 12 significant digits. Identical runs yield identical
    /// bytes.
    pub fn to_json(&self) -> String {
        let view = JsonReport {
            kind: self.kind.as_str(),
            case: self.case.as_ref().map(SolutionCase::as_str),
            objective: sig12(self.objective),
            f: self.f.as_ref().map(|pairs| {
                pairs
                    .iter()
                    .map(|(label, v)| (label.as_str(), sig12(*v)))
                    .collect()
            }),
            multipliers: self
                .multipliers
                .as_ref()
                .map(|ms| ms.iter().map(|&m| sig12(m)).collect()),
            residual: self.residual.map(sig12),
            argmin_chain: self
                .argmin_chain
                .as_ref()
                .map(|chain| chain.iter().map(String::as_str).collect()),
            spread: self.spread.map(sig12),
            agreement_gap: self.agreement_gap.map(sig12),
        };
        serde_json::to_string_pretty(&view).expect("report serialization cannot fail")
    }

    /// Plain-text rendering with the same determinism guarantees.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("kind: {}\n", self.kind.as_str()));
        if let Some(case) = &self.case {
            out.push_str(&format!("case: {}\n", case.as_str()));
        }
        out.push_str(&format!("objective: {}\n", fmt12(self.objective)));
        if let Some(pairs) = &self.f {
            out.push_str("f:\n");
            for (label, value) in pairs {
                out.push_str(&format!("  {label} = {}\n", fmt12(*value)));
            }
        }
        if let Some(multipliers) = &self.multipliers {
            let rendered: Vec<String> = multipliers.iter().map(|&m| fmt12(m)).collect();
            out.push_str(&format!("multipliers: [{}]\n", rendered.join(", ")));
        }
        if let Some(residual) = self.residual {
            out.push_str(&format!("residual: {}\n", fmt12(residual)));
        }
        if let Some(chain) = &self.argmin_chain {
            out.push_str(&format!("argmin_chain: [{}]\n", chain.join(", ")));
        }
        if let Some(spread) = self.spread {
            out.push_str(&format!("spread: {}\n", fmt12(spread)));
        }
        if let Some(gap) = self.agreement_gap {
            out.push_str(&format!("agreement_gap: {}\n", fmt12(gap)));
        }
        out
    }
}

/// Process exit code for an error, per the documented table: 2 for input
/// problems, 3 for infeasibility, 4 for numerical failures.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Infeasible { .. } | Error::NoFeasiblePoint => 3,
        Error::SpaceTooLarge { .. }
        | Error::NoSignMix
        | Error::RootBracketFailure
        | Error::RankDeficient { .. }
        | Error::DualDivergence { .. } => 4,
        _ => 2,
    }
}
