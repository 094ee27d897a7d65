use std::path::Path;

use serde_json::{json, Value};

use galrel_core::arakelov::{
    arakelov_genus, brauer_inputs, check_brauer_identity, check_genus_relation, regulator, Provenance, INFINITE_CONVENTION,
};
use galrel_core::exact::abelian::p_valuation;
use galrel_core::exact::Ball;
use galrel_core::extension::GaloisExtension;
use galrel_core::field::torsion::{nu_valuation, torsion_units};
use galrel_core::field::{NumberField, PlaceKind};
use galrel_core::group::subgroups::is_normal;
use galrel_core::group::{build_group, find_relations, verify_relation};
use galrel_core::ideal::galois::{galois_action_on_classes, idempotent_trace_on_classgroup};
use galrel_core::ideal::{class_group_with_units, lambda_table, zeta_partial, ClassGroup};
use galrel_core::input::FieldSpec;
use galrel_core::theta::{eta, eta_relation_residual, place_weights, BVariant, InfiniteDivisor};
use galrel_core::{corpus, Error, Result};

use crate::report::{fmt_ball, Report, Section, Status};

/// A field description from a JSON file, or a bundled corpus name.
pub fn load_spec(arg: &str) -> Result<FieldSpec> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")))?;
        return FieldSpec::from_json(&text);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    corpus::fixture(stem).map_err(|_| Error::InvalidInput(format!("{arg}: no such file or bundled field")))
}

fn build_ext(spec: &FieldSpec, bits: u32) -> Result<GaloisExtension> {
    let k = spec.build(bits)?;
    let hints = spec.hints(&k)?;
    GaloisExtension::new(k, hints.as_deref())
}

fn label(ext: &GaloisExtension, i: usize) -> String {
    format!("{} {}", ext.subgroup_label(i), ext.subfields[i].field.name())
}

fn coeffs_text(c: &[i64]) -> String {
    let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

fn primes_of(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    out
}

fn invariants_text(cg: &ClassGroup) -> String {
    let inv = cg.structure.invariants();
    if inv.is_empty() {
        "trivial".into()
    } else {
        inv.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

pub fn relations(group: &str, bits: u32) -> Result<Report> {
    let g = build_group(group)?;
    let (subs, rels) = find_relations(&g);
    let mut report = Report::new("relations", g.name(), bits);
    let mut s = Section::new("subgroups", &["H", "order", "elements", "normal"]);
    let mut sub_json = Vec::new();
    for (i, h) in subs.iter().enumerate() {
        let normal = is_normal(&g, h);
        let elems: Vec<String> = h.elements().iter().map(|x| x.to_string()).collect();
        s.push(vec![format!("H{i}"), h.order().to_string(), format!("{{{}}}", elems.join(",")), normal.to_string()]);
        sub_json.push(json!({"index": i, "order": h.order(), "elements": h.elements(), "normal": normal}));
    }
    report.sections.push(s);
    let mut r = Section::new("relations sum_H r_H eps_H = 0", &["relation", "coefficients (H0..)", "check"]);
    let mut rel_json = Vec::new();
    for (j, rel) in rels.iter().enumerate() {
        let ok = verify_relation(&g, &subs, rel).is_zero();
        report.absorb(Status::from_bool(ok));
        r.push(vec![j.to_string(), coeffs_text(&rel.coeffs), Status::from_bool(ok).name().into()]);
        rel_json.push(json!({"coefficients": rel.coeffs, "vanishes": ok}));
    }
    if rels.is_empty() {
        report.notes.push("no nontrivial relations".into());
    }
    report.sections.push(r);
    report.data = json!({"group": g.name(), "order": g.order(), "subgroups": sub_json, "relations": rel_json});
    Ok(report)
}

struct FieldRow {
    json: Value,
    cells: Vec<String>,
    status: Status,
}

fn field_row(label: &str, k: &NumberField, unit: Option<&galrel_core::field::Elt>) -> Result<FieldRow> {
    let (r, s) = k.signature();
    let t = torsion_units(k)?;
    let g = arakelov_genus(k, t.order);
    let mut status = Status::Pass;
    let (cl_json, cl_cell, reg_json, reg_cell) = match regulator(k, unit) {
        Ok((units, reg)) => {
            let cg = class_group_with_units(k, units)?;
            (
                json!({"invariants": cg.structure.invariants(), "order": cg.order(), "provenance": Provenance::ClassGroup}),
                invariants_text(&cg),
                serde_json::to_value(&reg).expect("serializable"),
                fmt_ball(&reg.value),
            )
        }
        Err(e @ Error::Unsupported(_)) => {
            status = Status::Unsupported;
            let msg = json!({"unsupported": e.to_string()});
            (msg.clone(), "unsupported".into(), msg, "unsupported".into())
        }
        Err(e) => return Err(e),
    };
    let json = json!({
        "subgroup": label,
        "field": k.name(),
        "degree": k.degree(),
        "r": r,
        "s": s,
        "unit_rank": k.unit_rank(),
        "discriminant": k.discriminant().to_string(),
        "w": {"value": t.order, "provenance": Provenance::Enumeration},
        "class_group": cl_json,
        "regulator": reg_json,
        "genus": {"value": g.value.mid, "radius": g.value.rad, "provenance": Provenance::Exact},
    });
    let cells = vec![
        label.to_string(),
        k.name().to_string(),
        r.to_string(),
        s.to_string(),
        k.unit_rank().to_string(),
        k.discriminant().to_string(),
        t.order.to_string(),
        cl_cell,
        reg_cell,
        fmt_ball(&g.value),
    ];
    Ok(FieldRow { json, cells, status })
}

pub fn invariants(field: &str, bits: u32) -> Result<Report> {
    let spec = load_spec(field)?;
    let mut report = Report::new("invariants", &spec.name, bits);
    let mut s = Section::new("invariants", &["H", "field", "r", "s", "lambda", "d", "w", "Cl", "Reg", "g"]);
    let mut rows = Vec::new();
    let mut push = |report: &mut Report, row: FieldRow| {
        report.absorb(row.status);
        s.push(row.cells);
        rows.push(row.json);
    };
    match build_ext(&spec, bits) {
        Ok(ext) => {
            let unit = spec.unit(&ext.field)?;
            for i in 0..ext.subgroups.len() {
                let u = if i == ext.trivial_index() { unit.as_ref() } else { None };
                let row = field_row(&ext.subgroup_label(i), &ext.subfields[i].field, u)?;
                push(&mut report, row);
            }
        }
        Err(Error::Unsupported(msg)) => {
            // not Galois: report the field alone
            let k = spec.build(bits)?;
            let unit = spec.unit(&k)?;
            report.notes.push(msg);
            let row = field_row("-", &k, unit.as_ref())?;
            push(&mut report, row);
        }
        Err(e) => return Err(e),
    }
    report.sections.push(s);
    report.notes.push("g = log(w sqrt|d| / (2^r (2 pi)^s)); Cl from an exhaustive search below the Minkowski bound".into());
    report.data = json!({"fields": rows});
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Lambda,
    ClassGroup,
    Torsion,
    Genus,
    Brauer,
    Zeta,
    Eta,
}

impl std::str::FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Check> {
        Ok(match s {
            "lambda" => Check::Lambda,
            "classgroup" => Check::ClassGroup,
            "torsion" => Check::Torsion,
            "genus" => Check::Genus,
            "brauer" => Check::Brauer,
            "zeta" => Check::Zeta,
            "eta" => Check::Eta,
            _ => return Err(Error::InvalidInput(format!("unknown check {s:?}"))),
        })
    }
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Lambda => "lambda",
            Check::ClassGroup => "classgroup",
            Check::Torsion => "torsion",
            Check::Genus => "genus",
            Check::Brauer => "brauer",
            Check::Zeta => "zeta",
            Check::Eta => "eta",
        }
    }
}

pub struct VerifyOptions {
    pub check: Check,
    pub prime: Option<u64>,
    pub variant: BVariant,
    pub tol: Option<f64>,
    pub cutoff: u64,
}

struct Rows {
    section: Section,
    json: Vec<Value>,
}

impl Rows {
    fn new(title: &str, columns: &[&str]) -> Rows {
        Rows { section: Section::new(title, columns), json: vec![] }
    }

    fn push(&mut self, report: &mut Report, status: Status, cells: Vec<String>, mut json: Value) {
        report.absorb(status);
        let mut cells = cells;
        cells.push(status.name().into());
        self.section.push(cells);
        json["status"] = json!(status);
        self.json.push(json);
    }
}

pub fn verify(ext_arg: &str, opts: &VerifyOptions, bits: u32) -> Result<Report> {
    let spec = load_spec(ext_arg)?;
    let ext = build_ext(&spec, bits)?;
    let mut report = Report::new(&format!("verify {}", opts.check.name()), ext.field.name(), bits);
    let mut sub_section = Section::new("subgroups", &["H", "subgroup", "fixed field", "degree"]);
    for i in 0..ext.subgroups.len() {
        let k = &ext.subfields[i].field;
        sub_section.push(vec![format!("H{i}"), ext.subgroup_label(i), k.name().into(), k.degree().to_string()]);
    }
    report.sections.push(sub_section);
    if ext.relations.is_empty() {
        report.notes.push("the group has no nontrivial relations; nothing to check".into());
    }
    let rows = match opts.check {
        Check::Lambda => verify_lambda(&ext, &mut report),
        Check::ClassGroup => verify_classgroup(&ext, &spec, opts, &mut report)?,
        Check::Torsion => verify_torsion(&ext, opts, &mut report)?,
        Check::Genus => verify_genus(&ext, opts, &mut report)?,
        Check::Brauer => verify_brauer(&ext, &spec, opts, &mut report)?,
        Check::Zeta => verify_zeta(&ext, opts, &mut report)?,
        Check::Eta => verify_eta(&ext, opts, &mut report)?,
    };
    let subgroups: Vec<Value> = (0..ext.subgroups.len())
        .map(|i| json!({"index": i, "elements": ext.subgroups[i].elements(), "field": ext.subfields[i].field.name()}))
        .collect();
    let relations: Vec<&Vec<i64>> = ext.relations.iter().map(|r| &r.coeffs).collect();
    report.data = json!({"subgroups": subgroups, "relations": relations, "rows": rows.json});
    report.sections.push(rows.section);
    Ok(report)
}

fn verify_lambda(ext: &GaloisExtension, report: &mut Report) -> Rows {
    let lam: Vec<i64> = ext.subfields.iter().map(|s| s.field.unit_rank() as i64).collect();
    let mut rows = Rows::new("sum_H r_H lambda_H (unit ranks)", &["relation", "coefficients", "lambda_H", "sum", "status"]);
    for (j, rel) in ext.relations.iter().enumerate() {
        let sum = rel.pair(&lam);
        rows.push(
            report,
            Status::from_bool(sum == 0),
            vec![j.to_string(), coeffs_text(&rel.coeffs), coeffs_text(&lam), sum.to_string()],
            json!({"relation": j, "lambda": lam, "sum": sum}),
        );
    }
    rows
}

/// Class groups of every fixed field; `None` where the unit rank is out of
/// reach.
fn subfield_class_groups(ext: &GaloisExtension, spec: &FieldSpec) -> Result<Vec<std::result::Result<ClassGroup, String>>> {
    let unit = spec.unit(&ext.field)?;
    ext.subfields
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let u = if i == ext.trivial_index() { unit.as_ref() } else { None };
            match regulator(&s.field, u) {
                Ok((units, _)) => Ok(Ok(class_group_with_units(&s.field, units)?)),
                Err(e @ Error::Unsupported(_)) => Ok(Err(e.to_string())),
                Err(e) => Err(e),
            }
        })
        .collect()
}

fn verify_classgroup(ext: &GaloisExtension, spec: &FieldSpec, opts: &VerifyOptions, report: &mut Report) -> Result<Rows> {
    let order = ext.group.order() as u64;
    let mut rows = Rows::new(
        "sum_H r_H lambda_(H,p,n) and traces of eps_H on Cl(L)",
        &["relation", "p", "n", "lambda_(H,p,n)", "value", "status"],
    );
    let cls = subfield_class_groups(ext, spec)?;
    if let Some((i, Err(msg))) = cls.iter().enumerate().find(|(_, c)| c.is_err()) {
        rows.push(report, Status::Unsupported, vec!["-".into(), "-".into(), "-".into(), label(ext, i), msg.clone()], json!({"unsupported": msg}));
        return Ok(rows);
    }
    let cls: Vec<&ClassGroup> = cls.iter().map(|c| c.as_ref().expect("checked above")).collect();
    let primes = match opts.prime {
        Some(p) => vec![p],
        None => {
            let mut ps: Vec<u64> = cls.iter().flat_map(|c| primes_of(c.order())).filter(|p| order % p != 0).collect();
            ps.sort();
            ps.dedup();
            if ps.is_empty() {
                report.notes.push("no prime coprime to |G| divides a class number".into());
            }
            ps
        }
    };
    for p in primes {
        if order % p == 0 {
            let msg = Error::WildCase { p, order: order as usize }.to_string();
            rows.push(report, Status::Unsupported, vec!["-".into(), p.to_string(), "-".into(), "-".into(), msg.clone()], json!({"p": p, "unsupported": msg}));
            continue;
        }
        let max_level = cls.iter().flat_map(|c| c.structure.invariants().iter().map(|&d| p_valuation(d, p))).max().unwrap_or(0);
        let tables: Vec<_> = cls.iter().map(|c| lambda_table(&c.structure)).collect();
        for n in 1..=max_level {
            let lam: Vec<i64> = tables.iter().map(|t| t.get(p, n) as i64).collect();
            for (j, rel) in ext.relations.iter().enumerate() {
                let sum = rel.pair(&lam);
                rows.push(
                    report,
                    Status::from_bool(sum == 0),
                    vec![j.to_string(), p.to_string(), n.to_string(), coeffs_text(&lam), format!("sum {sum}")],
                    json!({"relation": j, "p": p, "n": n, "lambda": lam, "sum": sum}),
                );
            }
        }
        // ε_H on the layers of Cl(L) has rank λ_(H,p,n)
        let top = cls[ext.trivial_index()];
        if max_level > 0 {
            let action = galois_action_on_classes(&ext.field, top, &ext.auts, &ext.group)?;
            for n in 1..=max_level {
                let mut ranks = Vec::new();
                let mut ok = true;
                for (i, h) in ext.subgroups.iter().enumerate() {
                    let t = idempotent_trace_on_classgroup(&action, h.elements(), p, n)?;
                    ok &= t.rank == tables[i].get(p, n);
                    ranks.push(t.rank as i64);
                }
                rows.push(
                    report,
                    Status::from_bool(ok),
                    vec!["trace".into(), p.to_string(), n.to_string(), coeffs_text(&ranks), "rank eps_H = lambda_H".into()],
                    json!({"trace": true, "p": p, "n": n, "ranks": ranks}),
                );
            }
        }
    }
    Ok(rows)
}

fn verify_torsion(ext: &GaloisExtension, opts: &VerifyOptions, report: &mut Report) -> Result<Rows> {
    let order = ext.group.order() as u64;
    let ts = ext.subfields.iter().map(|s| torsion_units(&s.field)).collect::<Result<Vec<_>>>()?;
    let w: Vec<i64> = ts.iter().map(|t| t.order as i64).collect();
    let mut rows = Rows::new("sum_H r_H nu(H,p)", &["relation", "p", "w_H", "nu(H,p)", "sum", "status"]);
    let primes = match opts.prime {
        Some(p) => vec![p],
        None => {
            let ps: Vec<u64> = primes_of(ts[ext.trivial_index()].order).into_iter().filter(|p| order % p != 0).collect();
            if ps.is_empty() {
                report.notes.push("no prime coprime to |G| divides w(L)".into());
            }
            ps
        }
    };
    for p in primes {
        if order % p == 0 {
            let msg = Error::WildCase { p, order: order as usize }.to_string();
            rows.push(report, Status::Unsupported, vec!["-".into(), p.to_string(), coeffs_text(&w), "-".into(), msg.clone()], json!({"p": p, "unsupported": msg}));
            continue;
        }
        let nu: Vec<i64> = ts.iter().map(|t| nu_valuation(t, p) as i64).collect();
        for (j, rel) in ext.relations.iter().enumerate() {
            let sum = rel.pair(&nu);
            rows.push(
                report,
                Status::from_bool(sum == 0),
                vec![j.to_string(), p.to_string(), coeffs_text(&w), coeffs_text(&nu), sum.to_string()],
                json!({"relation": j, "p": p, "w": w, "nu": nu, "sum": sum}),
            );
        }
    }
    Ok(rows)
}

fn within(b: &Ball, tol: f64) -> bool {
    b.mid.abs() + b.rad <= tol
}

fn verify_genus(ext: &GaloisExtension, opts: &VerifyOptions, report: &mut Report) -> Result<Rows> {
    let tol = opts.tol.unwrap_or(1e-12);
    let w = ext.subfields.iter().map(|s| torsion_units(&s.field).map(|t| t.order)).collect::<Result<Vec<_>>>()?;
    let mut rows = Rows::new("sum_H n_H (g_H - log w_H)", &["relation", "residual", "term by term", "gcd(|H|,w_L)=1", "status"]);
    for (j, rel) in ext.relations.iter().enumerate() {
        let g = check_genus_relation(ext, rel, &w)?;
        let ok = within(&g.residual, tol) && g.residual_direct.contains_zero();
        rows.push(
            report,
            Status::from_bool(ok),
            vec![j.to_string(), fmt_ball(&g.residual), fmt_ball(&g.residual_direct), g.coprime.to_string()],
            json!({"relation": j, "tol": tol, "report": g}),
        );
    }
    Ok(rows)
}

fn verify_brauer(ext: &GaloisExtension, spec: &FieldSpec, opts: &VerifyOptions, report: &mut Report) -> Result<Rows> {
    let tol = opts.tol.unwrap_or(1e-10);
    let unit = spec.unit(&ext.field)?;
    let mut rows = Rows::new("sum_H r_H (log h + log Reg - log w)", &["relation", "residual", "grouped", "routes agree", "status"]);
    for (j, rel) in ext.relations.iter().enumerate() {
        let inputs = match brauer_inputs(ext, rel, unit.as_ref()) {
            Ok(x) => x,
            Err(e @ Error::Unsupported(_)) => {
                let msg = e.to_string();
                rows.push(report, Status::Unsupported, vec![j.to_string(), "-".into(), "-".into(), msg.clone()], json!({"relation": j, "unsupported": msg}));
                continue;
            }
            Err(e) => return Err(e),
        };
        let b = check_brauer_identity(ext, rel, &inputs)?;
        let ok = within(&b.residual, tol) && b.routes_agree();
        rows.push(
            report,
            Status::from_bool(ok),
            vec![j.to_string(), fmt_ball(&b.residual), fmt_ball(&b.residual_grouped), b.routes_agree().to_string()],
            json!({"relation": j, "tol": tol, "report": b}),
        );
    }
    Ok(rows)
}

fn verify_zeta(ext: &GaloisExtension, opts: &VerifyOptions, report: &mut Report) -> Result<Rows> {
    let sigma = 2.0;
    let z = ext.subfields.iter().map(|s| zeta_partial(&s.field, sigma, opts.cutoff)).collect::<Result<Vec<_>>>()?;
    let mut rows = Rows::new(
        &format!("sum_H r_H log zeta_(L^H)({sigma}) truncated at norm {}", opts.cutoff),
        &["relation", "sum", "tail estimate", "status"],
    );
    for (j, rel) in ext.relations.iter().enumerate() {
        let mut sum = Ball::ZERO;
        let mut tail = 0.0;
        for (i, r) in rel.support() {
            sum = sum + z[i].value.ln().scale(r as f64);
            tail += r.unsigned_abs() as f64 * z[i].tail_estimate / z[i].value.lower();
        }
        let ok = sum.mid.abs() + sum.rad <= tail;
        rows.push(
            report,
            Status::from_bool(ok),
            vec![j.to_string(), fmt_ball(&sum), format!("{tail:.3e}")],
            json!({"relation": j, "sigma": sigma, "cutoff": opts.cutoff, "sum": sum, "tail_estimate": tail, "partials": z}),
        );
    }
    report.notes.push("the tail is an estimate assuming at most [K:Q] ideals of each norm, not a certificate".into());
    Ok(rows)
}

fn verify_eta(ext: &GaloisExtension, opts: &VerifyOptions, report: &mut Report) -> Result<Rows> {
    let tol = opts.tol.unwrap_or(1e-8);
    let zero = InfiniteDivisor::zero(&ext.field);
    let mut rows = Rows::new(
        &format!("sum_H n_H eta_(B(H))(L^H), variant {}", opts.variant.name()),
        &["relation", "residual", "grouped by element", "routes agree", "status"],
    );
    for (j, rel) in ext.relations.iter().enumerate() {
        match eta_relation_residual(ext, rel, opts.variant, &zero, tol) {
            Ok(r) => rows.push(
                report,
                Status::Report,
                vec![j.to_string(), fmt_ball(&r.residual), fmt_ball(&r.residual_grouped), r.routes_agree.to_string()],
                json!({"relation": j, "report": r}),
            ),
            Err(e @ (Error::Budget(_) | Error::Unsupported(_))) => {
                let msg = e.to_string();
                rows.push(report, Status::Unsupported, vec![j.to_string(), "-".into(), "-".into(), msg.clone()], json!({"relation": j, "unsupported": msg}));
            }
            Err(e) => return Err(e),
        }
    }
    report.notes.push("eta residuals are reported, not asserted to vanish".into());
    Ok(rows)
}

/// Infinite coefficients from inline JSON or a file: either an array with
/// one number per place or `{"infinite": [...]}`.
pub fn parse_divisor(arg: &str, k: &NumberField) -> Result<InfiniteDivisor> {
    let text = if Path::new(arg).exists() {
        std::fs::read_to_string(arg).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("divisor: {e}")))?;
    let arr = match &v {
        Value::Array(a) => a,
        Value::Object(o) => match o.get("infinite") {
            Some(Value::Array(a)) => a,
            _ => return Err(Error::InvalidInput("divisor object needs an \"infinite\" array".into())),
        },
        _ => return Err(Error::InvalidInput("divisor must be an array of numbers".into())),
    };
    let coeffs = arr
        .iter()
        .map(|x| x.as_f64().filter(|f| f.is_finite()).ok_or_else(|| Error::InvalidInput(format!("divisor coefficient {x} is not a number"))))
        .collect::<Result<Vec<_>>>()?;
    InfiniteDivisor::from_f64(k, &coeffs)
}

pub fn eta_command(field: &str, divisor: &str, tol: f64, bits: u32) -> Result<Report> {
    let spec = load_spec(field)?;
    let k = spec.build(bits)?;
    let d = parse_divisor(divisor, &k)?;
    let e = eta(&k, &d, tol)?;
    let mut report = Report::new("eta", k.name(), bits);
    let weights = place_weights(&k, &d);
    let mut s = Section::new("places", &["place", "kind", "coefficient", "weight"]);
    for ((pl, a), w) in k.places().iter().zip(&d.coeffs).zip(&weights) {
        let kind = match pl.kind {
            PlaceKind::Real => "real",
            PlaceKind::Complex => "complex",
        };
        s.push(vec![pl.index.to_string(), kind.into(), fmt_ball(a), fmt_ball(w)]);
    }
    report.sections.push(s);
    let mut v = Section::new("eta", &["value", "partial sum", "tail bound", "radius^2", "points"]);
    v.push(vec![fmt_ball(&e.value), fmt_ball(&e.partial), format!("{:.3e}", e.tail_bound), format!("{:.6}", e.radius_sq), e.points.to_string()]);
    report.sections.push(v);
    report.status = Status::from_bool(e.tail_bound <= tol);
    report.notes.push(format!("infinite divisor convention: {INFINITE_CONVENTION}"));
    report.data = json!({"tol": tol, "divisor": d, "weights": weights, "eta": e});
    Ok(report)
}
