use std::fmt::Write;

use burnside_core::biset::{diagonal_induce, diagonal_restrict, gamma};
use burnside_core::burnside::{BurnsideElement, BurnsideRing, Inversion};
use burnside_core::ring::RingSpec;
use burnside_core::separability::{
    commutant_basis, derivation_space, functor_separability, ring_separability, Obstruction, SeparabilityVerdict,
    Witness,
};
use burnside_core::{Config, Group, GroupSpec, Result};
use serde_json::{json, Value};

use crate::{Claim, Command, GroupCommand, RingArgs};

/// Output of one command, in both renderings.
pub struct Report {
    pub text: String,
    pub json: Value,
}

pub fn run(command: &Command, config: &Config) -> Result<Report> {
    match command {
        Command::Group { command: GroupCommand::Info(a) } => info(&build(&a.spec, config)?, config),
        Command::Subgroups(a) => subgroups(&burnside(&a.spec, config)?),
        Command::Tom(a) => tom(&burnside(&a.spec, config)?),
        Command::Idempotents(a) => idempotents(&burnside(&a.spec, config)?, a.ring),
        Command::Gamma { args, invert } => gamma_report(&burnside(&args.spec, config)?, args.ring, *invert),
        Command::MackeyCheck(a) => mackey(&build(&a.spec, config)?, config),
        Command::Separable { claim: Claim::Ring(a) } => {
            verdict(&ring_separability(&burnside(&a.spec, config)?, a.ring, config)?)
        }
        Command::Separable { claim: Claim::Functor(a) } => {
            verdict(&functor_separability(&burnside(&a.spec, config)?, a.ring)?)
        }
        Command::Commutant(RingArgs { spec, ring }) => {
            let c = commutant_basis(&build(spec, config)?, *ring, config)?;
            let mut text = String::new();
            match c.dimension() {
                Some(d) => writeln!(text, "solution space over {ring}: dimension {d}").unwrap(),
                None => {
                    writeln!(text, "solution space over {ring}: spanned by {} elements", c.solutions.len()).unwrap()
                }
            }
            for s in &c.solutions {
                writeln!(text, "  {s}").unwrap();
            }
            writeln!(text, "equals the span of the diagonal classes: {}", yes_no(c.matches_diagonal_span)).unwrap();
            Ok(Report { text, json: c.to_json() })
        }
        Command::Derivations(RingArgs { spec, ring }) => {
            let d = derivation_space(&burnside(spec, config)?, *ring)?;
            let mut text = String::new();
            if d.is_zero() {
                writeln!(text, "every derivation of {ring}B({}) is zero", d.burnside.group()).unwrap();
            } else {
                writeln!(text, "derivations of {ring}B({}) spanned by:", d.burnside.group()).unwrap();
                for m in &d.basis {
                    let images: Vec<String> = (0..d.burnside.rank())
                        .map(|j| {
                            let x = d.burnside.basis(*ring, j);
                            format!("[{}] -> {}", d.burnside.label(j), d.apply(m, &x).expect("square"))
                        })
                        .collect();
                    writeln!(text, "  {}", images.join(", ")).unwrap();
                }
            }
            Ok(Report { text, json: d.to_json() })
        }
    }
}

fn build(spec: &str, config: &Config) -> Result<Group> {
    GroupSpec::parse(spec)?.build(config)
}

fn burnside(spec: &str, config: &Config) -> Result<BurnsideRing> {
    BurnsideRing::new(&build(spec, config)?, config)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn info(g: &Group, config: &Config) -> Result<Report> {
    let b = BurnsideRing::new(g, config)?;
    let lat = b.lattice();
    let classes = g.element_classes().len();
    let json = json!({
        "group": g.label(),
        "order": g.order(),
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "generators": g.generators(),
        "element_classes": classes,
        "subgroups": lat.subgroups().len(),
        "subgroup_classes": lat.class_count(),
    });
    let mut text = String::new();
    writeln!(text, "group            {}", g.label()).unwrap();
    writeln!(text, "order            {}", g.order()).unwrap();
    writeln!(text, "exponent         {}", g.exponent()).unwrap();
    writeln!(text, "abelian          {}", yes_no(g.is_abelian())).unwrap();
    writeln!(text, "element classes  {classes}").unwrap();
    writeln!(text, "subgroups        {} in {} classes", lat.subgroups().len(), lat.class_count()).unwrap();
    Ok(Report { text, json })
}

fn subgroups(b: &BurnsideRing) -> Result<Report> {
    let lat = b.lattice();
    let mut rows = Vec::new();
    let mut text = format!(
        "{:<8} {:>6} {:>6} {:>6} {:>11} {:>7}  generators\n",
        "class", "order", "index", "size", "normalizer", "normal"
    );
    for (c, class) in lat.classes().iter().enumerate() {
        let h = lat.representative(c);
        let gens = h.generators();
        rows.push(json!({
            "label": class.label,
            "order": h.order(),
            "index": h.index(),
            "size": class.members.len(),
            "normalizer_order": h.normalizer().order(),
            "normal": h.is_normal(),
            "generators": gens,
        }));
        let gens: Vec<String> = gens.iter().map(ToString::to_string).collect();
        writeln!(
            text,
            "{:<8} {:>6} {:>6} {:>6} {:>11} {:>7}  {}",
            class.label,
            h.order(),
            h.index(),
            class.members.len(),
            h.normalizer().order(),
            yes_no(h.is_normal()),
            gens.join(" ")
        )
        .unwrap();
    }
    Ok(Report { text, json: json!({ "group": b.group().label(), "classes": rows }) })
}

fn tom(b: &BurnsideRing) -> Result<Report> {
    let t = b.table_of_marks();
    let width = t.labels.iter().map(String::len).max().unwrap_or(1).max(3);
    let mut text = format!("{:<width$}", "");
    for l in &t.labels {
        write!(text, " {l:>width$}").unwrap();
    }
    text.push('\n');
    for (l, row) in t.labels.iter().zip(&t.entries) {
        write!(text, "{l:<width$}").unwrap();
        for x in row {
            write!(text, " {x:>width$}").unwrap();
        }
        text.push('\n');
    }
    Ok(Report { text, json: t.to_json() })
}

fn idempotents(b: &BurnsideRing, ring: RingSpec) -> Result<Report> {
    let es = b.idempotents(ring)?;
    let mut text = String::new();
    let mut list = Vec::new();
    for (h, e) in es.iter().enumerate() {
        writeln!(text, "e[{}] = {e}", b.label(h)).unwrap();
        list.push(json!({ "class": b.label(h), "element": e.to_json() }));
    }
    Ok(Report { text, json: json!({ "group": b.group().label(), "ring": ring.to_string(), "idempotents": list }) })
}

fn gamma_report(b: &BurnsideRing, ring: RingSpec, invert: bool) -> Result<Report> {
    let gm = gamma(b, ring);
    let mut text = format!("Gamma = {gm}\n");
    let mut json = json!({ "group": b.group().label(), "ring": ring.to_string(), "gamma": gm.to_json() });
    if invert {
        match gm.invert() {
            Inversion::Inverse(inv) => {
                let product = gm.multiply(&inv)?;
                writeln!(text, "Gamma^-1 = {inv}").unwrap();
                writeln!(text, "Gamma * Gamma^-1 = {product}").unwrap();
                json["invertible"] = json!(true);
                json["inverse"] = inv.to_json();
                json["product"] = product.to_json();
            }
            Inversion::NotInvertible(o) => {
                writeln!(text, "Gamma is not invertible over {ring}: {}", obstruction_text(&o.to_json())).unwrap();
                json["invertible"] = json!(false);
                json["obstruction"] = o.to_json();
            }
        }
    }
    Ok(Report { text, json })
}

fn obstruction_text(o: &Value) -> String {
    match o["kind"].as_str() {
        Some("non-unit-mark") => format!(
            "its mark at {} is {}, not a unit",
            o["class"].as_str().unwrap_or("?"),
            o["mark"].as_str().unwrap_or("?")
        ),
        Some("non-integral-pullback") => format!(
            "the ghost inverse has coefficient {} at {}",
            o["value"].as_str().unwrap_or("?"),
            o["class"].as_str().unwrap_or("?")
        ),
        Some(kind) => kind.replace('-', " "),
        None => String::new(),
    }
}

fn mackey(g: &Group, config: &Config) -> Result<Report> {
    let b = BurnsideRing::new(g, config)?;
    let bb = BurnsideRing::new(&g.direct_product(g, config)?, config)?;
    let ring = RingSpec::Integers;
    let gm = gamma(&b, ring);
    let mut text = String::new();
    let mut checks = Vec::new();
    let mut holds = true;
    for k in 0..b.rank() {
        let a = b.basis(ring, k);
        let lhs: BurnsideElement = diagonal_restrict(&diagonal_induce(&a, &bb)?, &b)?;
        let rhs = gm.multiply(&a)?;
        let equal = lhs == rhs;
        holds &= equal;
        writeln!(text, "[{}]: {lhs} {} {rhs}", b.label(k), if equal { "=" } else { "!=" }).unwrap();
        checks.push(json!({ "class": b.label(k), "lhs": lhs.to_json(), "rhs": rhs.to_json(), "equal": equal }));
    }
    writeln!(text, "identity holds: {}", yes_no(holds)).unwrap();
    Ok(Report { text, json: json!({ "group": g.label(), "holds": holds, "checks": checks }) })
}

fn verdict(v: &SeparabilityVerdict) -> Result<Report> {
    let what = match v.claim {
        burnside_core::separability::Claim::Ring => format!("{}B({})", v.ring, v.group),
        burnside_core::separability::Claim::Functor => format!("the functor {}B_{}", v.ring, v.group),
    };
    let mut text = format!("{what} is {}separable\n", if v.separable { "" } else { "not " });
    if let Some(g) = &v.gamma {
        writeln!(text, "Gamma = {g}").unwrap();
    }
    match &v.witness {
        Some(Witness::Casimir(u)) => writeln!(text, "Casimir element: {}", u.to_json()["coeffs"]).unwrap(),
        Some(Witness::GammaInverse(a)) => writeln!(text, "Gamma^-1 = {a}").unwrap(),
        None => {}
    }
    match &v.obstruction {
        Some(Obstruction::Linear { order, certificate }) => writeln!(
            text,
            "|G| = {order} is not a unit; no Casimir element exists, certificate {}",
            certificate.to_json()
        )
        .unwrap(),
        Some(Obstruction::Gamma(o)) => {
            writeln!(text, "Gamma is not invertible: {}", obstruction_text(&o.to_json())).unwrap()
        }
        None => {}
    }
    Ok(Report { text, json: v.to_json() })
}
