//! The subcommands. Each returns a JSON object and the exit status it earns.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use toricarc::arc::ratfun::RationalFunction;
use toricarc::arc::series::{Order, TruncatedSeries};
use toricarc::arc::{
    construct_divisorial_arc, divisorial::divisoriality_test_seeded, parse_rational_function, Coordinate, SymbolicArc, Verdict,
};
use toricarc::cone::Cone;
use toricarc::essential::{essential_divisors, nash_components_pretoric, PretoricInput};
use toricarc::fan::Fan;
use toricarc::linalg::IntVector;
use toricarc::mckay::{essential_count_bound_check, mckay_correspondence, quotient_index, AbelianGroupAction};
use toricarc::semigroup::{is_normal, pretoric_lattice, saturation, SemigroupPresentation};
use toricarc::valuation::{arc_order, monomial_valuation, monomial_valuation_q, LaurentPolynomial};

use crate::io::*;

pub struct Report {
    pub body: Map<String, Value>,
    pub exit: u8,
}

impl Report {
    fn ok(body: Value) -> Report {
        Report::with_exit(body, 0)
    }

    fn with_exit(body: Value, exit: u8) -> Report {
        match body {
            Value::Object(body) => Report { body, exit },
            _ => unreachable!("reports are objects"),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanInput {
    rays: Vec<Vec<JInt>>,
    #[serde(default)]
    cones: Option<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeInput {
    rays: Vec<Vec<JInt>>,
}

fn ray_list(rays: &[Vec<JInt>]) -> CliResult<Vec<IntVector>> {
    let rays: Vec<IntVector> = rays.iter().map(|r| ints(r)).collect();
    let n = rays.first().map(Vec::len).ok_or_else(|| input_err("at least one ray is required"))?;
    if n == 0 || rays.iter().any(|r| r.len() != n) {
        return Err(input_err("rays must be nonempty and of equal length"));
    }
    Ok(rays)
}

fn build_cone(rays: &[IntVector]) -> CliResult<Cone> {
    Cone::from_rays(rays).map_err(input_err)
}

fn build_fan(input: &FanInput) -> CliResult<Fan> {
    let rays = ray_list(&input.rays)?;
    let all: Vec<Vec<usize>> = vec![(0..rays.len()).collect()];
    let mut cones = Vec::new();
    for idx in input.cones.as_ref().unwrap_or(&all) {
        let gens: Vec<IntVector> =
            idx.iter().map(|&i| rays.get(i).cloned().ok_or_else(|| input_err(format!("ray index {i} out of range")))).collect::<CliResult<_>>()?;
        cones.push(build_cone(&gens)?);
    }
    Fan::new(cones).map_err(input_err)
}

fn fan_json(f: &Fan) -> Value {
    let rays = f.rays();
    let cones: Vec<Vec<usize>> = f
        .maximal_cones()
        .iter()
        .map(|c| c.rays().iter().map(|r| rays.iter().position(|x| x == r).expect("ray of the fan")).collect())
        .collect();
    json!({ "rays": mat_json(&rays), "cones": cones })
}

fn multiplicities(f: &Fan) -> Value {
    Value::Array(f.multiplicities().iter().map(|m| m.as_ref().map_or(Value::Null, int_json)).collect())
}

pub fn resolve(text: &str, avoid: Option<&str>) -> CliResult<Report> {
    let input: FanInput = parse_json(text)?;
    let fan = build_fan(&input)?;
    let resolved = match avoid {
        Some(s) => {
            let v: Vec<BigInt> = s
                .split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| input_err(format!("--avoid expects integers, got {s:?}"))))
                .collect::<CliResult<_>>()?;
            fan.resolve_avoiding_ray(&v).map_err(compute_err)?
        }
        None => fan.resolve(),
    };
    let smooth = resolved.is_smooth_fan();
    let refines = resolved.refines(&fan);
    if !smooth || !refines {
        return Err(compute_err("resolution is not a smooth refinement"));
    }
    let before: BTreeSet<IntVector> = fan.rays().into_iter().collect();
    let added: Vec<IntVector> = resolved.rays().into_iter().filter(|r| !before.contains(r)).collect();
    let mut body = json!({
        "input": fan_json(&fan),
        "fan": fan_json(&resolved),
        "multiplicities_before": multiplicities(&fan),
        "multiplicities_after": multiplicities(&resolved),
        "added_rays": mat_json(&added),
        "smooth": smooth,
        "refines": refines,
    });
    if fan.is_smooth_fan() {
        body["note"] = json!("already smooth");
    }
    Ok(Report::ok(body))
}

pub fn essential(text: &str) -> CliResult<Report> {
    let input: ConeInput = parse_json(text)?;
    let c = build_cone(&ray_list(&input.rays)?)?;
    let report = essential_divisors(&c).map_err(compute_err)?;
    let faces: Vec<&Vec<usize>> = report.singular_faces.iter().map(|f| &f.ray_indices).collect();
    let mut body = json!({
        "cone": { "rays": mat_json(c.rays()) },
        "singular_faces": faces,
        "essential": mat_json(&report.minimal_points),
        "count": report.minimal_points.len(),
        "dilation": report.candidate_box_bound,
        "oracle_verified": report.oracle_verified,
    });
    if report.singular_faces.is_empty() {
        body["note"] = json!("cone is smooth: no essential divisors");
    }
    Ok(Report::with_exit(body, if report.oracle_verified { 0 } else { 2 }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NashInput {
    rays: Vec<Vec<JInt>>,
    marked: Vec<Vec<Vec<JInt>>>,
}

pub fn nash(text: &str) -> CliResult<Report> {
    let input: NashInput = parse_json(text)?;
    let c = build_cone(&ray_list(&input.rays)?)?;
    let marked: Vec<Vec<IntVector>> = input.marked.iter().map(|f| f.iter().map(|g| ints(g)).collect()).collect();
    let p = PretoricInput::new(c.clone(), &marked).map_err(input_err)?;
    let r = nash_components_pretoric(&p).map_err(compute_err)?;
    let equal = r.nash_points == r.essential_points;
    let body = json!({
        "cone": { "rays": mat_json(c.rays()) },
        "barycenters": mat_json(&r.barycenters),
        "normalization_essential": mat_json(&r.normalization_essential),
        "nash_points": mat_json(&r.nash_points),
        "essential_points": mat_json(&r.essential_points),
        "r": r.barycenters.len(),
        "w": r.w,
        "count": r.nash_points.len(),
        "bijection": r.bijection && equal,
    });
    Ok(Report::with_exit(body, if r.bijection && equal { 0 } else { 2 }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    n: usize,
    d: u64,
    generators: Vec<Vec<i64>>,
}

pub fn mckay(text: &str, sl_age1: bool, bound_check: bool) -> CliResult<Report> {
    let input: GroupInput = parse_json(text)?;
    let g = AbelianGroupAction::new(input.n, input.d, &input.generators).map_err(input_err)?;
    let classes = mckay_correspondence(&g, sl_age1).map_err(compute_err)?;
    let classes: Vec<Value> = classes
        .iter()
        .map(|c| json!({ "element": c.element, "v": rat_vec_json(&c.v), "age": rat_string(&c.age) }))
        .collect();
    let mut body = json!({
        "n": g.n(),
        "d": g.d(),
        "generators": g.generators(),
        "order": g.order(),
        "index": int_json(&quotient_index(&g).map_err(compute_err)?),
        "sl_age1": sl_age1,
        "classes": classes,
    });
    let mut exit = 0;
    if bound_check {
        let b = essential_count_bound_check(&g).map_err(compute_err)?;
        if !b.ok || !b.oracle_verified {
            exit = 2;
        }
        body["bound_check"] = json!({
            "count": b.count,
            "bound": b.bound,
            "ok": b.ok,
            "oracle_verified": b.oracle_verified,
            "points": b.points.iter().map(|p| rat_vec_json(p)).collect::<Vec<_>>(),
        });
    }
    Ok(Report::with_exit(body, exit))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuateInput {
    v: Vec<JRat>,
    f: String,
}

pub fn valuate(text: &str) -> CliResult<Report> {
    let input: ValuateInput = parse_json(text)?;
    let v: Vec<_> = input.v.iter().map(|q| q.0.clone()).collect();
    if v.is_empty() {
        return Err(input_err("v must be nonempty"));
    }
    let f = LaurentPolynomial::parse(&input.f, v.len()).map_err(input_err)?;
    let value = if v.iter().all(|q| q.denom().is_one()) {
        let vi: Vec<BigInt> = v.iter().map(|q| q.numer().clone()).collect();
        int_json(&monomial_valuation(&vi, &f).map_err(compute_err)?)
    } else {
        Value::from(rat_string(&monomial_valuation_q(&v, &f).map_err(compute_err)?))
    };
    Ok(Report::ok(json!({ "v": rat_vec_json(&v), "f": f.to_string(), "valuation": value })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateInput {
    name: String,
    coefficients: Vec<String>,
    /// Coefficients are known modulo `t^precision`; absent means exact.
    #[serde(default)]
    precision: Option<usize>,
    #[serde(default = "yes")]
    on_center: bool,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialInput {
    v: Vec<JInt>,
    #[serde(default)]
    q: Option<JInt>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcInput {
    #[serde(default)]
    symbols: Vec<String>,
    #[serde(default)]
    residue: Vec<String>,
    #[serde(default)]
    coordinates: Option<Vec<CoordinateInput>>,
    #[serde(default)]
    monomial: Option<MonomialInput>,
    #[serde(default)]
    truncation: Option<usize>,
    #[serde(default)]
    functions: Vec<String>,
}

fn build_arc(input: &ArcInput) -> CliResult<SymbolicArc> {
    match (&input.coordinates, &input.monomial) {
        (Some(coords), None) => {
            let symbols = input.symbols.clone();
            let residue = input
                .residue
                .iter()
                .map(|s| symbols.iter().position(|x| x == s).ok_or_else(|| input_err(format!("residue symbol {s} is not declared"))))
                .collect::<CliResult<BTreeSet<usize>>>()?;
            let mut out = Vec::with_capacity(coords.len());
            for c in coords {
                let coeffs = c
                    .coefficients
                    .iter()
                    .map(|s| parse_rational_function(s, &symbols).map_err(input_err))
                    .collect::<CliResult<Vec<_>>>()?;
                let series = match c.precision {
                    Some(p) => TruncatedSeries::truncated(coeffs, p, RationalFunction::zero()),
                    None => TruncatedSeries::exact(coeffs, RationalFunction::zero()),
                };
                out.push(Coordinate { name: c.name.clone(), series, on_center: c.on_center });
            }
            SymbolicArc::new(symbols, residue, out).map_err(input_err)
        }
        (None, Some(m)) => {
            let q = m.q.as_ref().map_or_else(BigInt::one, |q| q.0.clone());
            construct_divisorial_arc(&ints(&m.v), &q).map_err(input_err)
        }
        _ => Err(input_err("give exactly one of `coordinates` and `monomial`")),
    }
}

fn order_json(o: Order) -> Value {
    match o {
        Order::Exact(k) => Value::from(k),
        Order::AtLeast(k) => Value::from(format!(">={k}")),
        Order::Infinite => Value::from("infinite"),
    }
}

pub fn arc_check(text: &str, seed: u64, truncation: Option<usize>) -> CliResult<Report> {
    let input: ArcInput = parse_json(text)?;
    let mut arc = build_arc(&input)?;
    if let Some(t) = truncation.or(input.truncation) {
        arc = arc.with_truncation(t);
    }
    let verdict = divisoriality_test_seeded(&arc, seed);
    let names: Vec<&str> = arc.coordinates().iter().map(|c| c.name.as_str()).collect();
    let mut body = json!({
        "coordinates": names,
        "truncation": arc.truncation(),
        "verdict": format!("{:?}", verdict.kind),
    });
    if let Some(w) = &verdict.witness {
        body["stage"] = json!(format!("{:?}", w.stage));
        body["last_coordinate"] = json!(names[w.last_coordinate]);
        body["indices"] = json!(w.indices.iter().map(|&(i, j)| json!([names[i], j])).collect::<Vec<_>>());
        body["extension_degree"] = json!(w.extension_degree);
        if let Some(v) = &w.lattice_point {
            body["v"] = vec_json(v);
        }
    }
    if let Some(r) = &verdict.reason {
        body["reason"] = json!(r);
    }
    if !input.functions.is_empty() {
        let mut orders = Vec::with_capacity(input.functions.len());
        for s in &input.functions {
            let f = LaurentPolynomial::parse(s, names.len()).map_err(input_err)?;
            let o = arc_order(&arc, &f).map_err(compute_err)?;
            orders.push(json!({ "f": f.to_string(), "order": order_json(o) }));
        }
        body["orders"] = Value::Array(orders);
    }
    let exit = if verdict.kind == Verdict::Unknown { 2 } else { 0 };
    Ok(Report::with_exit(body, exit))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupInput {
    generators: Vec<Vec<JInt>>,
}

pub fn saturate(text: &str) -> CliResult<Report> {
    let input: SemigroupInput = parse_json(text)?;
    let gens = ray_list(&input.generators)?;
    let s = SemigroupPresentation::new(gens[0].len(), &gens).map_err(input_err)?;
    let sat = saturation(&s).map_err(compute_err)?;
    let own: BTreeSet<&IntVector> = s.generators().iter().collect();
    let added: Vec<IntVector> = sat.generators().iter().filter(|g| !own.contains(g)).cloned().collect();
    let normal = is_normal(&s).map_err(compute_err)?;
    let pretoric = match pretoric_lattice(&s) {
        Ok(p) => json!({
            "lattice": p.lattice.basis().iter().map(|r| rat_vec_json(r)).collect::<Vec<_>>(),
            "hilbert_basis": mat_json(&p.hilbert_basis),
            "certified": p.certified,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let body = json!({
        "semigroup": { "generators": mat_json(s.generators()) },
        "saturation": { "generators": mat_json(sat.generators()) },
        "added": mat_json(&added),
        "normal": normal,
        "pretoric": pretoric,
    });
    Ok(Report::ok(body))
}
