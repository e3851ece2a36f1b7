use alcove::affine_weyl::{
    bruhat_leq, bruhat_leq_subword, element_label, extended_word, hasse_dot, length, length_formula, lower_interval,
    omega_group, theta_fixes_facet, weak_bruhat_leq, word_labels, ElementJson,
};
use alcove::coords::{format_rational_vec, parse_rational_list};
use alcove::good_position::{
    good_position_chamber, restricted_system, theta_stable_chamber, verify_prop44, GoodPositionReport,
};
use alcove::kottwitz::{
    admissible_set, admissible_set_parahoric, dominance_leq, galois_average, kappa, mu_natural, newton_point, AdmRow,
};
use alcove::root_system::RootSystemJson;
use alcove::sweep::{parse_suites, run, Execution, SweepSpec};
use alcove::{Alcove, Coweight, Element, Error, Facet, RootSystem};
use serde::Serialize;

use crate::output::{csv_rows, json, CliError, Output};
use crate::{ElementArgs, Format, SystemArgs};

type Res<T> = Result<T, CliError>;

fn labels(sys: &SystemArgs) -> Res<Vec<String>> {
    let mut out = sys.system.clone();
    match (&sys.kind, sys.rank) {
        (Some(k), Some(r)) => out.push(format!("{}{r}", k.to_uppercase())),
        (None, None) => {}
        _ => return Err(CliError::Usage("--type and --rank go together".into())),
    }
    Ok(out)
}

fn system(sys: &SystemArgs) -> Res<RootSystem> {
    match labels(sys)?.as_slice() {
        [one] => Ok(RootSystem::parse(one)?),
        [] => Err(CliError::Usage(
            "a root system is required (--type and --rank, or --system)".into(),
        )),
        _ => Err(CliError::Usage("this command takes a single root system".into())),
    }
}

fn rationals(rs: &RootSystem, s: &str) -> Res<Vec<alcove::Q>> {
    let v = parse_rational_list(s)?;
    rs.check_dim(v.len())?;
    Ok(v)
}

fn lambda(rs: &RootSystem, el: &ElementArgs) -> Res<Coweight> {
    match &el.lambda {
        Some(s) => Ok(Coweight::from_rationals(&rationals(rs, s)?)?),
        None => Ok(Coweight::zero(rs.rank())),
    }
}

/// JSON element or bare automorphism name; numeric translations are
/// accepted alongside strings.
pub fn parse_element(rs: &RootSystem, s: &str) -> Res<Element> {
    let s = s.trim();
    if !s.starts_with('{') {
        return Ok(Element::linear(rs, rs.named_automorphism(s)?));
    }
    let mut v: serde_json::Value = serde_json::from_str(s).map_err(|e| CliError::Usage(format!("bad element: {e}")))?;
    if let Some(serde_json::Value::Array(t)) = v.get_mut("translation") {
        for x in t.iter_mut() {
            if let serde_json::Value::Number(n) = x {
                *x = serde_json::Value::String(n.to_string());
            }
        }
    }
    let ej: ElementJson = serde_json::from_value(v).map_err(|e| CliError::Usage(format!("bad element: {e}")))?;
    Ok(Element::from_json(rs, &ej)?)
}

fn theta(rs: &RootSystem, el: &ElementArgs) -> Res<Element> {
    match &el.theta {
        Some(s) => parse_element(rs, s),
        None => Ok(Element::identity(rs)),
    }
}

fn alcove_of(rs: &RootSystem, el: &ElementArgs) -> Res<Alcove> {
    match &el.alcove {
        Some(s) => Ok(Alcove::from_rationals(rs, &rationals(rs, s)?)?),
        None => Ok(Alcove::fundamental(rs)),
    }
}

fn facet(rs: &RootSystem, s: &str) -> Res<Facet> {
    Ok(Facet::new(rs, rationals(rs, s)?)?)
}

fn no_dot(format: Format) -> Res<()> {
    if format == Format::Dot {
        return Err(CliError::Usage(
            "dot output is only available for bruhat and adm".into(),
        ));
    }
    Ok(())
}

fn coweight_text(c: &Coweight) -> String {
    c.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn point_text(c: &Alcove) -> Vec<String> {
    format_rational_vec(&c.point().to_rationals())
}

fn done(text: String) -> Res<Output> {
    Ok(Output { text, ok: true })
}

#[derive(Serialize)]
struct Describe {
    system: RootSystemJson,
    positive_roots: usize,
    weyl_order: usize,
    automorphisms: usize,
    diagram_automorphisms: usize,
    omega_order: usize,
    facets: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct RootRow {
    index: usize,
    root: String,
    coroot: String,
    positive: bool,
    height: i64,
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn describe(sys: &SystemArgs, format: Format) -> Res<Output> {
    no_dot(format)?;
    let rs = system(sys)?;
    if format == Format::Csv {
        let rows: Vec<RootRow> = (0..rs.num_roots())
            .map(|i| RootRow {
                index: i,
                root: join(rs.root(i)),
                coroot: join(rs.coroot(i)),
                positive: rs.is_positive(i),
                height: rs.height(i),
            })
            .collect();
        return done(csv_rows(&rows)?);
    }
    let d = Describe {
        system: rs.to_json(),
        positive_roots: rs.num_positive(),
        weyl_order: rs.weyl_group().len(),
        automorphisms: rs.automorphism_group().len(),
        diagram_automorphisms: rs.diagram_automorphisms().len(),
        omega_order: omega_group(&rs, &Alcove::fundamental(&rs)).len(),
        facets: rs
            .fundamental_facets()
            .iter()
            .map(|f| format_rational_vec(f.coords()))
            .collect(),
    };
    done(json(&d))
}

#[derive(Serialize)]
struct LenOut {
    system: String,
    alcove: Vec<String>,
    element: ElementJson,
    canonical: String,
    length: u64,
    reduced_word: String,
    omega: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    length_formula: Option<u64>,
}

pub fn len(sys: &SystemArgs, el: &ElementArgs, facet_arg: Option<&str>, format: Format) -> Res<Output> {
    no_dot(format)?;
    let rs = system(sys)?;
    let c = alcove_of(&rs, el)?;
    let lam = lambda(&rs, el)?;
    let th = theta(&rs, el)?;
    let eta = &Element::translation(&rs, &lam) * &th;
    let (word, gamma) = extended_word(&rs, &eta, &c);
    let l = length(&rs, &eta, &c);
    let formula = match facet_arg {
        Some(f) => Some(length_formula(&rs, &lam, &th, &facet(&rs, f)?, &c)?),
        None => None,
    };
    let out = LenOut {
        system: rs.label().to_string(),
        alcove: point_text(&c),
        element: eta.to_json(),
        canonical: eta.canonical(&rs),
        length: l,
        reduced_word: word_labels(&word, &c).join(" "),
        omega: gamma.canonical(&rs),
        length_formula: formula,
    };
    let ok = formula.is_none_or(|f| f == l);
    let text = match format {
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                system: &'a str,
                canonical: &'a str,
                length: u64,
                reduced_word: &'a str,
                omega: &'a str,
                length_formula: Option<u64>,
            }
            csv_rows(&[Row {
                system: &out.system,
                canonical: &out.canonical,
                length: out.length,
                reduced_word: &out.reduced_word,
                omega: &out.omega,
                length_formula: out.length_formula,
            }])?
        }
        _ => json(&out),
    };
    Ok(Output { text, ok })
}

#[derive(Serialize)]
struct Node {
    label: String,
    canonical: String,
    length: u64,
}

#[derive(Serialize)]
struct Comparison {
    element: String,
    recursion: bool,
    subword: bool,
    weak: bool,
}

#[derive(Serialize)]
struct BruhatOut {
    system: String,
    alcove: Vec<String>,
    top: String,
    length: u64,
    interval: Vec<Node>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<Comparison>,
}

pub fn bruhat(sys: &SystemArgs, el: &ElementArgs, compare: Option<&str>, format: Format) -> Res<Output> {
    let rs = system(sys)?;
    let c = alcove_of(&rs, el)?;
    let top = &Element::translation(&rs, &lambda(&rs, el)?) * &theta(&rs, el)?;
    let interval = lower_interval(&rs, &top, &c);
    let comparison = match compare {
        Some(s) => {
            let x = parse_element(&rs, s)?;
            Some(Comparison {
                element: x.canonical(&rs),
                recursion: bruhat_leq(&rs, &x, &top, &c),
                subword: bruhat_leq_subword(&rs, &x, &top, &c),
                weak: weak_bruhat_leq(&rs, &x, &top, &c),
            })
        }
        None => None,
    };
    let ok = comparison
        .as_ref()
        .is_none_or(|k| k.recursion == k.subword && (!k.weak || k.recursion));
    let nodes: Vec<Node> = interval
        .iter()
        .map(|e| Node {
            label: element_label(&rs, e, &c),
            canonical: e.canonical(&rs),
            length: length(&rs, e, &c),
        })
        .collect();
    let text = match format {
        Format::Dot => hasse_dot(&rs, &interval, &c),
        Format::Csv => csv_rows(&nodes)?,
        Format::Json => json(&BruhatOut {
            system: rs.label().to_string(),
            alcove: point_text(&c),
            top: top.canonical(&rs),
            length: length(&rs, &top, &c),
            interval: nodes,
            comparison,
        }),
    };
    Ok(Output { text, ok })
}

#[derive(Serialize)]
struct AdmOut {
    system: String,
    mu: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    facet: Option<Vec<String>>,
    alcove: Vec<String>,
    size: usize,
    elements: Vec<AdmRow>,
}

pub fn adm(sys: &SystemArgs, el: &ElementArgs, facet_arg: Option<&str>, format: Format) -> Res<Output> {
    let rs = system(sys)?;
    let c = alcove_of(&rs, el)?;
    let mu = lambda(&rs, el)?;
    let (elements, f) = match facet_arg {
        Some(s) => {
            let f = facet(&rs, s)?;
            (
                admissible_set_parahoric(&rs, &mu, &f, &c)?,
                Some(format_rational_vec(f.coords())),
            )
        }
        None => (admissible_set(&rs, &mu, &c).elements, None),
    };
    let rows: Vec<AdmRow> = elements.iter().map(|e| AdmRow::new(&rs, e, &c)).collect();
    let text = match format {
        Format::Dot => hasse_dot(&rs, &elements, &c),
        Format::Csv => csv_rows(&rows)?,
        Format::Json => json(&AdmOut {
            system: rs.label().to_string(),
            mu: coweight_text(&mu),
            facet: f,
            alcove: point_text(&c),
            size: rows.len(),
            elements: rows,
        }),
    };
    done(text)
}

#[derive(Serialize)]
struct BgmuOut {
    system: String,
    element: String,
    mu: String,
    diagram: String,
    newton_point: Vec<String>,
    galois_average: Vec<String>,
    dominated: bool,
    kappa: String,
    mu_natural: String,
    kappa_matches: bool,
    in_b_g_mu: bool,
}

pub fn bgmu(sys: &SystemArgs, el: &ElementArgs, diagram: &str, format: Format) -> Res<Output> {
    no_dot(format)?;
    let rs = system(sys)?;
    let c = alcove_of(&rs, el)?;
    let mu = lambda(&rs, el)?;
    let eta = theta(&rs, el)?;
    let theta0 = rs.named_automorphism(diagram)?;
    let nu = newton_point(&rs, &eta);
    let avg = galois_average(&rs, &mu, &theta0)?;
    let dominated = dominance_leq(&rs, &nu, &avg)?;
    let k = kappa(&rs, &eta, &c);
    let m = mu_natural(&rs, &mu, &theta0, &c);
    let out = BgmuOut {
        system: rs.label().to_string(),
        element: eta.canonical(&rs),
        mu: coweight_text(&mu),
        diagram: diagram.to_string(),
        newton_point: format_rational_vec(&nu),
        galois_average: format_rational_vec(&avg),
        dominated,
        kappa: k.canonical(&rs),
        mu_natural: m.canonical(&rs),
        kappa_matches: k == m,
        in_b_g_mu: dominated && k == m,
    };
    let text = match format {
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                system: &'a str,
                element: &'a str,
                mu: &'a str,
                newton_point: String,
                galois_average: String,
                dominated: bool,
                kappa_matches: bool,
                in_b_g_mu: bool,
            }
            csv_rows(&[Row {
                system: &out.system,
                element: &out.element,
                mu: &out.mu,
                newton_point: out.newton_point.join(","),
                galois_average: out.galois_average.join(","),
                dominated: out.dominated,
                kappa_matches: out.kappa_matches,
                in_b_g_mu: out.in_b_g_mu,
            }])?
        }
        _ => json(&out),
    };
    done(text)
}

#[derive(Serialize)]
struct GoodposOut {
    system: String,
    facet: Vec<String>,
    lambda: String,
    theta: String,
    constructed: bool,
    report: GoodPositionReport,
}

pub fn goodpos(sys: &SystemArgs, el: &ElementArgs, facet_arg: &str, format: Format) -> Res<Output> {
    no_dot(format)?;
    let rs = system(sys)?;
    let f = facet(&rs, facet_arg)?;
    let lam = lambda(&rs, el)?;
    let th = theta(&rs, el)?;
    if !theta_fixes_facet(&rs, &th, &f) {
        return Err(Error::FacetNotStable.into());
    }
    let constructed = el.alcove.is_none();
    let c = if constructed {
        let restricted = restricted_system(&rs, &f, &lam, &th)?;
        let c_flt = theta_stable_chamber(&rs, &restricted, th.linear_part())?;
        let chamber = good_position_chamber(&rs, &f, &lam, &th, &c_flt)?;
        Alcove::from_facet_chamber(&rs, &f, &chamber)?
    } else {
        alcove_of(&rs, el)?
    };
    let report = verify_prop44(&rs, &f, &lam, &th, &c)?;
    let ok = if constructed {
        report.good_position_holds
            && report.length_additivity_holds
            && report.bruhat_comparison_holds
            && report.bruhat_subword_holds
            && report.weak_bruhat_holds
            && report.formula_matches
    } else {
        report.consistent()
    };
    let out = GoodposOut {
        system: rs.label().to_string(),
        facet: format_rational_vec(f.coords()),
        lambda: coweight_text(&lam),
        theta: th.canonical(&rs),
        constructed,
        report,
    };
    let text = match format {
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                system: &'a str,
                facet: String,
                lambda: &'a str,
                theta: &'a str,
                alcove: String,
                length_t_lambda: u64,
                length_t_lambda_theta: u64,
                length_theta: u64,
                good_position: bool,
                additive: bool,
                bruhat: bool,
                weak_bruhat: bool,
            }
            let r = &out.report;
            csv_rows(&[Row {
                system: &out.system,
                facet: out.facet.join(","),
                lambda: &out.lambda,
                theta: &out.theta,
                alcove: r.alcove.join(","),
                length_t_lambda: r.length_t_lambda,
                length_t_lambda_theta: r.length_t_lambda_theta,
                length_theta: r.length_theta,
                good_position: r.good_position_holds,
                additive: r.length_additivity_holds,
                bruhat: r.bruhat_comparison_holds,
                weak_bruhat: r.weak_bruhat_holds,
            }])?
        }
        _ => json(&out),
    };
    Ok(Output { text, ok })
}

pub struct VerifyOpts {
    pub suites: Vec<String>,
    pub bound: i64,
    pub theta_bound: i64,
    pub ball_length: u64,
    pub facets: Vec<String>,
    pub keep_cases: bool,
    pub timing: bool,
    pub sequential: bool,
}

pub fn verify(sys: &SystemArgs, opts: VerifyOpts, format: Format) -> Res<Output> {
    no_dot(format)?;
    let systems = labels(sys)?;
    let mut extra_facets = vec![];
    for f in &opts.facets {
        extra_facets.push(parse_rational_list(f)?);
    }
    for label in &systems {
        let rs = RootSystem::parse(label)?;
        for f in &extra_facets {
            Facet::new(&rs, f.clone())?;
        }
    }
    let spec = SweepSpec {
        systems,
        bound: opts.bound,
        theta_bound: opts.theta_bound,
        extra_facets,
        suites: parse_suites(&opts.suites.join(","))?,
        ball_length: opts.ball_length,
        keep_cases: opts.keep_cases || format == Format::Csv,
        timing: opts.timing,
        execution: if opts.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
    };
    let report = run(&spec)?;
    let text = match format {
        Format::Csv => csv_rows(&report.records())?,
        _ => json(&report),
    };
    Ok(Output {
        text,
        ok: report.all_passed(),
    })
}
