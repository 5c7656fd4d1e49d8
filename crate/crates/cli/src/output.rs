//! JSON report shapes. Field order is declaration order and every
//! collection is emitted in a deterministic order, so identical inputs
//! produce byte-identical output.

use serde::Serialize;

use hyperbound_core::bounds::{BoundReport, Hypotheses};
use hyperbound_core::curves::QuadraticPoint;
use hyperbound_core::family::FamilyVerification;
use hyperbound_core::poly::IntPoly;
use hyperbound_core::BigRational;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn rat(q: &BigRational) -> String {
    q.to_string()
}

#[derive(Serialize)]
pub struct CurveInfo {
    pub command: &'static str,
    pub version: &'static str,
    pub file: String,
    pub equation: String,
    pub genus: usize,
    pub discriminant: String,
    /// Whether the model has no x^2g term; height and minimality are only
    /// defined for depressed models and are null otherwise.
    pub depressed: bool,
    pub height: Option<String>,
    pub minimal: Option<bool>,
    /// Prime p with p^(2i) dividing a_i for all i >= 2, when one exists.
    pub minimality_witness: Option<u64>,
    pub prime_bound: u64,
    pub good_primes: Vec<u64>,
}

#[derive(Serialize)]
pub struct CurveCount {
    pub command: &'static str,
    pub version: &'static str,
    pub file: String,
    pub p: u64,
    pub m: usize,
    pub field_order: u64,
    pub count: u64,
}

#[derive(Serialize)]
pub struct QuadraticSearch {
    pub command: &'static str,
    pub version: &'static str,
    pub file: String,
    pub bound: u32,
    pub count: usize,
    pub points: Vec<QuadraticPointJson>,
}

/// One point (x, y) with coordinates a + b sqrt(disc), encoded as the
/// rational pair [a, b].
#[derive(Serialize)]
pub struct QuadraticPointJson {
    pub disc: String,
    pub x: [String; 2],
    pub y: [String; 2],
}

impl QuadraticPointJson {
    pub fn from_point(p: &QuadraticPoint) -> Self {
        QuadraticPointJson {
            disc: p.disc.to_string(),
            x: [rat(&p.x.a), rat(&p.x.b)],
            y: [rat(&p.y.a), rat(&p.y.b)],
        }
    }
}

#[derive(Serialize)]
pub struct MixedVolume {
    pub command: &'static str,
    pub version: &'static str,
    pub file: String,
    pub dim: usize,
    pub polytopes: usize,
    pub mixed_volume: String,
}

#[derive(Serialize)]
pub struct NewtonPolygon {
    pub command: &'static str,
    pub version: &'static str,
    pub file: String,
    pub m: String,
    /// Vertex list of the polygon, or null when no exponent can tie for
    /// the minimum anywhere on the weight region.
    pub newton_polygon: Option<Vec<Vec<String>>>,
}

#[derive(Serialize)]
pub struct Bound {
    pub command: &'static str,
    pub version: &'static str,
    pub file: String,
    pub curve: String,
    pub genus: usize,
    pub d: u32,
    pub p: u64,
    pub hypotheses: Vec<String>,
    pub configurations: Vec<Configuration>,
    pub crude: Option<String>,
    pub refined: bool,
    pub tuple_bound: String,
    pub point_bound: String,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
pub struct Configuration {
    pub class: String,
    pub radius: Vec<String>,
    pub mixed_radii: bool,
    pub vanishing_order: u32,
    pub ordered_count: String,
    pub stabilizer: u32,
    pub unordered_count: String,
    pub active: bool,
    pub note: Option<String>,
}

pub fn hypothesis_names(h: &Hypotheses) -> Vec<String> {
    let mut names = Vec::new();
    if h.rank_le_1 {
        names.push(String::from("Mordell-Weil rank at most 1"));
    }
    if h.geometrically_simple {
        names.push(String::from("geometrically simple Jacobian"));
    }
    if h.condition_dagger {
        names.push(String::from("zero-dimensional vanishing loci"));
    }
    names.push(format!("good reduction at {}", h.good_reduction_at));
    names
}

impl Bound {
    pub fn from_report(command: &'static str, file: String, report: &BoundReport) -> Self {
        Bound {
            command,
            version: VERSION,
            file,
            curve: report.curve.clone(),
            genus: report.genus,
            d: report.d,
            p: report.p,
            hypotheses: hypothesis_names(&report.hypotheses),
            configurations: report
                .configurations
                .iter()
                .map(|c| Configuration {
                    class: c.label.clone(),
                    radius: c.radii.iter().map(rat).collect(),
                    mixed_radii: c.mixed_radii,
                    vanishing_order: c.vanishing_order,
                    ordered_count: c.ordered_count.to_string(),
                    stabilizer: c.stabilizer,
                    unordered_count: c.unordered_count.to_string(),
                    active: c.active,
                    note: c.note.map(String::from),
                })
                .collect(),
            crude: report.crude.as_ref().map(|b| b.to_string()),
            refined: report.refined,
            tuple_bound: report.tuple_bound.to_string(),
            point_bound: report.point_bound.to_string(),
            notes: report.notes.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct FamilySweep {
    pub command: &'static str,
    pub version: &'static str,
    pub g_min: u64,
    pub g_max: u64,
    pub all_passed: bool,
    pub records: Vec<FamilyRecord>,
}

#[derive(Serialize)]
pub struct FamilyRecord {
    pub genus: u64,
    pub branch: String,
    pub equation: String,
    pub squarefree: bool,
    pub points_f3: u64,
    pub points_f9: u64,
    pub f9_structure: bool,
    pub exponent_consistent: bool,
    pub passed: bool,
}

impl FamilyRecord {
    pub fn from_parts(equation: String, v: &FamilyVerification) -> Self {
        FamilyRecord {
            genus: v.genus,
            branch: String::from(v.branch.description()),
            equation,
            squarefree: v.squarefree,
            points_f3: v.points_f3,
            points_f9: v.points_f9,
            f9_structure: v.f9_structure,
            exponent_consistent: v.exponent_consistent,
            passed: v.passed(),
        }
    }
}

pub fn equation_string(f: &IntPoly) -> String {
    format!("y^2 = {}", f.display("x"))
}
