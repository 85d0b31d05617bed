//! The `cone`, `compare`, `energy` and `catalog-list` subcommands.

use serde_json::json;
use weylbach::catalog::{catalog, lookup};
use weylbach::hirzebruch::{calabi_energy_class_over_pi, compare_across_structures};
use weylbach::lattice::{self, change_basis, compatible_structures, format_rational, integer, is_kahler, parse_rational};
use weylbach::quadrature::{calabi_energy_numeric, weyl_energy_numeric, EnergyReport};
use weylbach::{CohomologyClass, Error, Geometry, Result, WeylPart};

use crate::output::{num, opt_num, CommandResult, Csv, Status};
use crate::Functional;

fn class_from(k: u32, p: &str, q: &str) -> Result<CohomologyClass> {
    Ok(CohomologyClass::new(k, parse_rational(p)?, parse_rational(q)?))
}

pub fn cone(k: u32, p: &str, q: &str) -> Result<CommandResult> {
    let class = class_from(k, p, q)?;
    let kahler = is_kahler(&class);
    let transformed = if kahler {
        compatible_structures(&class)?.into_iter().map(|n| change_basis(&class, n)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let verdict = if kahler { "Kähler" } else { "not Kähler" };
    let bound = (class.p != integer(0))
        .then(|| integer(2) * &class.q / &class.p - integer(k.into()))
        .map(|b| format_rational(&b));

    let mut csv = Csv::new(&["kahler", "n", "p", "q"]);
    for c in &transformed {
        csv.push(vec!["true".into(), c.k.to_string(), format_rational(&c.p), format_rational(&c.q)]);
    }
    if !kahler {
        csv.push(vec!["false".into(), String::new(), String::new(), String::new()]);
    }
    let ns: Vec<String> = transformed.iter().map(|c| c.k.to_string()).collect();
    let log = vec![if kahler {
        format!("{class} on F_{k}: Kähler; compatible structures n = {}", ns.join(", "))
    } else {
        format!("{class} on F_{k}: not Kähler")
    }];
    Ok(CommandResult {
        status: Status::Ok,
        json: json!({
            "command": "cone",
            "class": class,
            "kahler": kahler,
            "verdict": verdict,
            "bound": bound,
            "rows": transformed.iter().map(|c| json!({
                "n": c.k,
                "p": format_rational(&c.p),
                "q": format_rational(&c.q),
            })).collect::<Vec<_>>(),
        }),
        csv,
        log,
    })
}

pub fn compare(k: u32, p: &str, q: &str) -> Result<CommandResult> {
    let cmp = compare_across_structures(&class_from(k, p, q)?)?;
    let mut json = cmp.to_json();
    json["command"] = json!("compare");

    let mut csv = Csv::new(&["n", "p", "q", "a", "energy_over_pi", "energy_over_pi_float", "energy"]);
    for r in &cmp.rows {
        csv.push(vec![
            r.n.to_string(),
            format_rational(&r.class.p),
            format_rational(&r.class.q),
            format_rational(&r.a),
            format_rational(&r.energy_over_pi),
            num(lattice::to_f64(&r.energy_over_pi)),
            num(r.energy),
        ]);
    }
    let distinct = match cmp.distinct_energies() {
        Some(d) => format!("distinct_energies = {d}"),
        None => "distinct_energies: not applicable (one compatible structure)".into(),
    };
    let mut log = vec![format!("{} compatible structure(s) for {}", cmp.rows.len(), cmp.class), distinct];
    if let Some(m) = cmp.minimizer() {
        log.push(format!("least energy on F_{}: {} pi", m.n, format_rational(&m.energy_over_pi)));
    }
    Ok(CommandResult { status: Status::Ok, json, csv, log })
}

fn functional_name(f: Functional) -> &'static str {
    match f {
        Functional::Calabi => "calabi",
        Functional::Weyl => "weyl",
        Functional::WeylPlus => "weyl-plus",
    }
}

const ENERGY_HEADER: [&str; 8] =
    ["source", "functional", "provenance", "value", "error_estimate", "value_over_pi", "resolution", "reference"];

pub fn energy(entry: Option<&str>, class: Option<&str>, functional: Functional, resolution: usize) -> Result<CommandResult> {
    match (entry, class) {
        (Some(name), None) => energy_numeric(name, functional, resolution),
        (None, Some(spec)) => energy_formula(spec, functional),
        _ => Err(Error::InvalidParameter("ambiguous source: give exactly one of --entry or --class".into())),
    }
}

fn energy_numeric(name: &str, functional: Functional, resolution: usize) -> Result<CommandResult> {
    let entry = lookup(name)?;
    let g = entry.geometry;
    let report: EnergyReport = match functional {
        Functional::Calabi => calabi_energy_numeric(&g, resolution)?,
        Functional::Weyl => weyl_energy_numeric(&g, WeylPart::Full, resolution)?,
        Functional::WeylPlus => weyl_energy_numeric(&g, WeylPart::Plus, resolution)?,
    };
    // every catalog metric has constant scalar curvature
    let s = entry.constants.scalar;
    let reference = match functional {
        Functional::Calabi => Some(s * s * entry.constants.volume),
        Functional::WeylPlus if g.complex_structure().is_some() => Some(s * s * entry.constants.volume / 24.0),
        _ => None,
    };
    let mut csv = Csv::new(&ENERGY_HEADER);
    csv.push(vec![
        name.to_string(),
        functional_name(functional).into(),
        "numeric".into(),
        num(report.value),
        num(report.error_estimate),
        String::new(),
        resolution.to_string(),
        opt_num(reference),
    ]);
    Ok(CommandResult {
        status: Status::Ok,
        json: json!({
            "command": "energy",
            "source": {"entry": name},
            "functional": functional_name(functional),
            "provenance": "numeric",
            "value": report.value,
            "error_estimate": report.error_estimate,
            "nodes": report.nodes,
            "resolution": resolution,
            "convention": report.convention,
            "reference": reference,
        }),
        csv,
        log: vec![format!(
            "{} energy of {name}: {} (resolution {resolution}, estimated error {})",
            functional_name(functional),
            num(report.value),
            num(report.error_estimate)
        )],
    })
}

fn energy_formula(spec: &str, functional: Functional) -> Result<CommandResult> {
    let class = CohomologyClass::parse(spec)?;
    let calabi = calabi_energy_class_over_pi(&class)?;
    let over_pi = match functional {
        Functional::Calabi => calabi,
        Functional::WeylPlus => calabi / integer(24),
        Functional::Weyl => {
            return Err(Error::Unsupported(
                "the full Weyl energy is not determined by the class; use --functional weyl-plus or an --entry".into(),
            ))
        }
    };
    let value = lattice::to_f64(&over_pi) * std::f64::consts::PI;
    let mut csv = Csv::new(&ENERGY_HEADER);
    csv.push(vec![
        class.to_string(),
        functional_name(functional).into(),
        "formula".into(),
        num(value),
        String::new(),
        format_rational(&over_pi),
        String::new(),
        String::new(),
    ]);
    Ok(CommandResult {
        status: Status::Ok,
        json: json!({
            "command": "energy",
            "source": {"class": class},
            "functional": functional_name(functional),
            "provenance": "formula",
            "value": value,
            "value_over_pi": format_rational(&over_pi),
        }),
        csv,
        log: vec![format!("{} energy of {class}: {} pi", functional_name(functional), format_rational(&over_pi))],
    })
}

pub fn catalog_list() -> Result<CommandResult> {
    let entries = catalog();
    let mut csv = Csv::new(&["name", "kahler", "scalar", "volume", "area1", "area2", "is_einstein", "is_csck"]);
    let mut rows = Vec::new();
    for e in &entries {
        let c = &e.constants;
        csv.push(vec![
            e.name.clone(),
            e.is_kahler().to_string(),
            num(c.scalar),
            num(c.volume),
            opt_num(c.areas.map(|a| a.0)),
            opt_num(c.areas.map(|a| a.1)),
            c.is_einstein.to_string(),
            c.is_csck.to_string(),
        ]);
        rows.push(json!({
            "name": e.name,
            "kahler": e.is_kahler(),
            "constants": c,
        }));
    }
    Ok(CommandResult {
        status: Status::Ok,
        json: json!({"command": "catalog-list", "entries": rows}),
        csv,
        log: vec![format!("{} catalog entries", entries.len())],
    })
}
