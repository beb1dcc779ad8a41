//! Reports. Each report is one serializable value; the text form is
//! rendered from the same value, so both carry the same numbers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use fusionring::center::{self, BranchOutcome, ObstructionReport, Verdict};
use fusionring::codegrees::formal_codegrees;
use fusionring::enumerate::{canonical_form, SearchResult, SearchSpec, SearchStats};
use fusionring::exactnum::RealNumber;
use fusionring::format::{self, LocatedViolation, ParseError};
use fusionring::fusion::{Combination, FusionRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// Invalid, obstructed or not isomorphic.
    Negative = 1,
    Usage = 2,
    /// An exactness fallback left the answer open.
    Undecided = 3,
}

pub trait Report {
    fn json(&self) -> Value;
    fn text(&self) -> String;
    fn status(&self) -> Status;
}

pub struct Failure {
    pub status: Status,
    kind: &'static str,
    message: String,
    violations: Vec<LocatedViolation>,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure { status: Status::Usage, kind: "usage", message, violations: vec![] }
    }

    pub fn parse(file: &str, e: ParseError) -> Self {
        Failure { status: Status::Usage, kind: "parse", message: format!("{file}: {e}"), violations: vec![] }
    }

    pub fn invalid(file: &str, violations: Vec<LocatedViolation>) -> Self {
        let message = format!("{file}: not a fusion ring ({} violated identities)", violations.len());
        Failure { status: Status::Negative, kind: "validation", message, violations }
    }

    fn computation(message: String) -> Self {
        Failure { status: Status::Negative, kind: "computation", message, violations: vec![] }
    }

    pub fn json(&self) -> Value {
        json!({ "error": self.kind, "message": self.message, "violations": self.violations })
    }

    pub fn text(&self) -> String {
        let mut s = format!("error: {}\n", self.message);
        for v in &self.violations {
            let _ = writeln!(s, "  {v}");
        }
        s
    }
}

/// A serializable report with a fixed exit status.
struct Plain<T> {
    data: T,
    status: Status,
    render: fn(&T) -> String,
}

impl<T: Serialize> Report for Plain<T> {
    fn json(&self) -> Value {
        serde_json::to_value(&self.data).expect("reports serialize")
    }

    fn text(&self) -> String {
        (self.render)(&self.data)
    }

    fn status(&self) -> Status {
        self.status
    }
}

#[derive(Serialize)]
pub struct CheckData {
    ring: String,
    valid: bool,
    rank: usize,
    names: Vec<String>,
    self_dual: bool,
    commutative: bool,
    pointed: bool,
    max_coeff: u32,
}

pub fn check(r: &FusionRing) -> impl Report {
    let data = CheckData {
        ring: r.name().into(),
        valid: true,
        rank: r.rank(),
        names: r.names().to_vec(),
        self_dual: r.is_self_dual(),
        commutative: r.is_commutative(),
        pointed: r.is_pointed(),
        max_coeff: r.max_coeff(),
    };
    Plain {
        data,
        status: Status::Ok,
        render: |d| {
            format!(
                "ring {}: valid fusion ring of rank {}\nself-dual: {}\ncommutative: {}\npointed: {}\nmax coefficient: {}\n",
                d.ring, d.rank, d.self_dual, d.commutative, d.pointed, d.max_coeff
            )
        },
    }
}

#[derive(Serialize)]
struct Labeled {
    label: String,
    value: RealNumber,
}

#[derive(Serialize)]
pub struct FpdimData {
    ring: String,
    dims: Vec<Labeled>,
    total: RealNumber,
    exact: bool,
}

pub fn fpdim(r: &FusionRing) -> Result<impl Report, Failure> {
    let fp = r.fpdim().map_err(|e| Failure::computation(e.to_string()))?;
    let dims = fp.dims.iter().enumerate().map(|(i, d)| Labeled { label: r.label(i).into(), value: d.clone() }).collect();
    let exact = fp.exact;
    Ok(Plain {
        data: FpdimData { ring: r.name().into(), dims, total: fp.total, exact },
        status: if exact { Status::Ok } else { Status::Undecided },
        render: |d| {
            let mut s = format!("ring {}\n", d.ring);
            for l in &d.dims {
                let _ = writeln!(s, "FPdim({}) = {}", l.label, l.value);
            }
            let _ = writeln!(s, "FPdim(R) = {}", d.total);
            if !d.exact {
                s.push_str("numeric: interval enclosures used\n");
            }
            s
        },
    })
}

#[derive(Serialize)]
struct Component {
    labels: Vec<String>,
    fpdim: RealNumber,
}

#[derive(Serialize)]
pub struct GradingData {
    ring: String,
    order: usize,
    components: Vec<Component>,
    group_table: Vec<Vec<usize>>,
    elementary_abelian_2: bool,
}

pub fn grading(r: &FusionRing) -> Result<impl Report, Failure> {
    let g = r.universal_grading().map_err(|e| Failure::computation(e.to_string()))?;
    let labels = |c: &[usize]| c.iter().map(|&i| r.label(i).to_string()).collect();
    let components =
        g.components.iter().zip(&g.component_fpdims).map(|(c, d)| Component { labels: labels(c), fpdim: d.clone() }).collect();
    let data = GradingData {
        ring: r.name().into(),
        order: g.order(),
        components,
        group_table: g.group_table.clone(),
        elementary_abelian_2: g.is_elementary_abelian_2(),
    };
    Ok(Plain {
        data,
        status: Status::Ok,
        render: |d| {
            let mut s = format!("ring {}\nuniversal grading group of order {}\n", d.ring, d.order);
            for (k, c) in d.components.iter().enumerate() {
                let _ = writeln!(s, "component {k}: {} (FPdim {})", c.labels.join(" "), c.fpdim);
            }
            s.push_str("group table:\n");
            for row in &d.group_table {
                let _ = writeln!(s, "  {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            }
            let _ = writeln!(s, "elementary abelian 2-group: {}", d.elementary_abelian_2);
            s
        },
    })
}

#[derive(Serialize)]
struct Multiple {
    value: RealNumber,
    multiplicity: usize,
}

#[derive(Serialize)]
pub struct CodegreeData {
    ring: String,
    codegrees: String,
    values: Vec<Multiple>,
    polynomial: String,
    exact: bool,
}

pub fn codegrees(r: &FusionRing) -> Result<impl Report, Failure> {
    let s = formal_codegrees(r).map_err(|e| Failure::computation(e.to_string()))?;
    let data = CodegreeData {
        ring: r.name().into(),
        codegrees: s.render(),
        values: s.values.iter().map(|(v, m)| Multiple { value: v.clone(), multiplicity: *m }).collect(),
        polynomial: s.source_poly.to_string(),
        exact: s.exact,
    };
    let exact = data.exact;
    Ok(Plain {
        data,
        status: if exact { Status::Ok } else { Status::Undecided },
        render: |d| {
            let mut s = format!("ring {}\nformal codegrees: {}\ncharacteristic polynomial: {}\n", d.ring, d.codegrees, d.polynomial);
            if !d.exact {
                s.push_str("numeric: interval enclosures used\n");
            }
            s
        },
    })
}

pub struct Obstruction {
    report: ObstructionReport,
    text: String,
}

impl Report for Obstruction {
    fn json(&self) -> Value {
        serde_json::to_value(&self.report).expect("reports serialize")
    }

    fn text(&self) -> String {
        self.text.clone()
    }

    fn status(&self) -> Status {
        match self.report.verdict {
            Verdict::Pass => Status::Ok,
            Verdict::Obstructed => Status::Negative,
            Verdict::Undecided => Status::Undecided,
        }
    }
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn obstruct(r: &FusionRing) -> Obstruction {
    let rep = center::obstruct(r);
    let mut s = format!("ring {}\nassumptions:\n", rep.ring);
    for a in &rep.assumptions {
        let _ = writeln!(s, "  - {a}");
    }
    if let Some(c) = &rep.codegrees {
        let _ = writeln!(s, "formal codegrees: {}", c.render());
    }
    if let Some(f) = &rep.fpdim {
        let _ = writeln!(s, "FPdim(R) = {f}");
    }
    if !rep.unit_dims.is_empty() {
        let _ = writeln!(s, "I(1) summand dimensions: {}", join(&rep.unit_dims));
    }
    s.push_str("F(I(x)):\n");
    for (x, row) in rep.profile.fi.iter().enumerate() {
        let _ = writeln!(s, "  F(I({})) = {}", r.label(x), r.render(&Combination(row.clone())));
    }
    for (k, b) in rep.branches.iter().enumerate() {
        let status = match &b.outcome {
            BranchOutcome::Feasible { .. } => "feasible".to_string(),
            BranchOutcome::Infeasible { stage, .. } => format!("rejected at I({})", r.label(*stage)),
            BranchOutcome::Unknown { .. } => "unknown".to_string(),
        };
        let _ = writeln!(s, "branch {}: {status}", k + 1);
        for d in &b.branch.decompositions {
            let parts: Vec<String> =
                d.parts.iter().map(|(id, m)| if *m == 1 { id.clone() } else { format!("{m}*{id}") }).collect();
            let _ = writeln!(s, "  I({}) = {}", r.label(d.stage), parts.join(" + "));
        }
        for sm in &b.branch.summands {
            let _ = writeln!(s, "  {}: FPdim {}, F = {}", sm.id, sm.fdim, r.render(&sm.image));
        }
        match &b.outcome {
            BranchOutcome::Infeasible { witness, .. } => {
                let _ = writeln!(s, "  witness: {witness}");
            }
            BranchOutcome::Feasible { assignment } => {
                for e in &b.equations {
                    let _ = writeln!(s, "  equation: {e}");
                }
                for (id, t) in assignment {
                    let _ = writeln!(s, "  theta({id}): {t}");
                }
            }
            BranchOutcome::Unknown { reason } => {
                let _ = writeln!(s, "  {reason}");
            }
        }
    }
    if let (Some(d), Some(t)) = (&rep.center_dims, &rep.dim_square_total) {
        let _ = writeln!(s, "center summands: {}", d.len());
        let _ = writeln!(s, "center dimensions: {}", join(d));
        let _ = writeln!(s, "sum of squared dimensions: {t}");
    }
    for d in &rep.diagnostics {
        let _ = writeln!(s, "diagnostic: {d}");
    }
    let _ = writeln!(s, "verdict: {}", rep.verdict);
    Obstruction { report: rep, text: s }
}

#[derive(Serialize)]
pub struct DocumentData {
    ring: String,
    rank: usize,
    output: Option<PathBuf>,
    document: String,
}

/// A ring document, printed unless it went to a file.
pub fn document(r: &FusionRing, output: Option<PathBuf>) -> impl Report {
    let data = DocumentData { ring: r.name().into(), rank: r.rank(), output, document: format::serialize(r) };
    Plain {
        data,
        status: Status::Ok,
        render: |d| match &d.output {
            Some(p) => format!("wrote {} (rank {}) to {}\n", d.ring, d.rank, p.display()),
            None => d.document.clone(),
        },
    }
}

#[derive(Serialize)]
pub struct IsoData {
    a: String,
    b: String,
    isomorphic: bool,
    /// Image in `b` of each basis element of `a`.
    permutation: Option<Vec<(String, String)>>,
}

pub fn iso(a: &FusionRing, b: &FusionRing) -> impl Report {
    let perm = FusionRing::isomorphic(a, b);
    let permutation =
        perm.as_ref().map(|p| p.iter().enumerate().map(|(i, &j)| (a.label(i).to_string(), b.label(j).to_string())).collect());
    let data = IsoData { a: a.name().into(), b: b.name().into(), isomorphic: perm.is_some(), permutation };
    let status = if data.isomorphic { Status::Ok } else { Status::Negative };
    Plain {
        data,
        status,
        render: |d| match &d.permutation {
            Some(p) => {
                let maps: Vec<String> = p.iter().map(|(x, y)| format!("{x} -> {y}")).collect();
                format!("{} and {} are isomorphic: {}\n", d.a, d.b, maps.join(", "))
            }
            None => format!("{} and {} are not isomorphic\n", d.a, d.b),
        },
    }
}

/// First 16 hex digits of the SHA-256 of the canonical document.
pub fn canonical_hash(r: &FusionRing) -> String {
    let doc = format::serialize(&canonical_form(r).with_name("canonical"));
    Sha256::digest(doc.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
pub struct EnumeratedRing {
    pub name: String,
    pub hash: String,
    pub dims: Vec<RealNumber>,
    pub fpdim: RealNumber,
    pub grading_order: Option<usize>,
    pub pointed: bool,
}

#[derive(Serialize)]
pub struct Enumeration {
    spec: SearchSpec,
    completeness: String,
    stats: SearchStats,
    output: Option<PathBuf>,
    pub rings: Vec<EnumeratedRing>,
}

impl Enumeration {
    /// Tab-separated index: hash, name, FPdim, dims, grading order.
    pub fn index(&self) -> String {
        let mut s = String::from("hash\tname\tfpdim\tdims\tgrading_order\n");
        for e in &self.rings {
            let order = e.grading_order.map(|o| o.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", e.hash, e.name, e.fpdim, join(&e.dims), order);
        }
        s
    }
}

impl Report for Enumeration {
    fn json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    fn text(&self) -> String {
        let sp = &self.spec;
        let mut s = format!(
            "rank {}, coefficients <= {}: {} rings ({})\n",
            sp.rank,
            sp.max_coeff,
            self.rings.len(),
            self.completeness
        );
        let _ = writeln!(
            s,
            "nodes {}, valid tensors {}, before dedup {}, removed by obstruction {}",
            self.stats.nodes, self.stats.valid, self.stats.before_dedup, self.stats.obstructed
        );
        for e in &self.rings {
            let _ = writeln!(s, "{} {}: FPdim {}; dims {}", e.hash, e.name, e.fpdim, join(&e.dims));
        }
        if let Some(p) = &self.output {
            let _ = writeln!(s, "wrote {} ring files and index.tsv to {}", self.rings.len(), p.display());
        }
        s
    }

    fn status(&self) -> Status {
        Status::Ok
    }
}

pub fn enumeration(res: &SearchResult, output: Option<&Path>) -> Enumeration {
    let rings = res
        .rings
        .iter()
        .map(|r| {
            let fp = r.fpdim().expect("enumerated rings are valid");
            EnumeratedRing {
                name: r.name().into(),
                hash: canonical_hash(r),
                dims: fp.dims,
                fpdim: fp.total,
                grading_order: r.universal_grading().ok().map(|g| g.order()),
                pointed: r.is_pointed(),
            }
        })
        .collect();
    Enumeration {
        spec: res.spec.clone(),
        completeness: res.completeness(),
        stats: res.stats.clone(),
        output: output.map(Path::to_path_buf),
        rings,
    }
}
