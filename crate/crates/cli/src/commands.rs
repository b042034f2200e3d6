use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use shearlab::geometry::{
    g2_cocal_check, half_flat_check, kahler_check, nijenhuis, phi_stability, symplectic_check,
    ComplexStructure, Definiteness, Metric,
};
use shearlab::linalg::Matrix;
use shearlab::notation::{parse_form, parse_vector, Bindings};
use shearlab::rational::parse_q;
use shearlab::search::{enumerate_f0, SearchSpec};
use shearlab::shear::{apply_twist, candidate, ds_form, validate_shear, ShearData, ShearReport};
use shearlab::{KForm, LieAlgebra, Monomial, Q};

use crate::document::{load, parse_assignment, Loaded};
use crate::report::{algebra_json, algebra_text, form_json, mark, q_json, vector_json, CliError, Exit, Report};

#[derive(Parser, Debug)]
#[command(name = "shearlab", version, about = "Exact twist and shear constructions on Lie algebras")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Bind a parameter used as `[name]` in the document or in form flags.
    #[arg(long = "set", value_name = "NAME=VALUE", global = true, allow_hyphen_values = true)]
    pub set: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobi identity, series and classification.
    AlgebraCheck(Source),
    /// Validate and perform a shear.
    Shear {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        shear: ShearFlags,
        /// Print the condition table only.
        #[arg(long)]
        validate_only: bool,
    },
    /// Twist a nilpotent algebra.
    Twist {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Transfer a form with `d_S`.
    FormDs {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        shear: ShearFlags,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Check a geometric structure.
    CheckStructure(StructureFlags),
    /// Enumerate valid deformation forms.
    Search(SearchFlags),
    /// Rational eigenlines of the action on the last lower central term.
    ShearLines(Source),
}

#[derive(Args, Debug)]
pub struct Source {
    /// Path to an algebra document, or the document itself when it starts
    /// with `(` or `{`.
    #[arg(allow_hyphen_values = true)]
    pub algebra: String,
}

#[derive(Args, Debug)]
pub struct ShearFlags {
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub f0: String,
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub eta_g: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StructureType {
    Symplectic,
    Kahler,
    HalfFlat,
    G2Cocal,
    G2Phi,
}

#[derive(Args, Debug)]
pub struct StructureFlags {
    #[command(flatten)]
    pub source: Source,
    #[arg(long = "type", value_enum)]
    pub kind: StructureType,
    /// Defaults to `e12 + e34 + ...` for kahler and half-flat.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
    /// Defaults to `e136 + e145 + e235 - e246`.
    #[arg(long, allow_hyphen_values = true)]
    pub rho_minus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub psi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    /// Gram matrix, rows separated by `;`. Defaults to the identity.
    #[arg(long, allow_hyphen_values = true)]
    pub metric: Option<String>,
    /// Matrix of J, rows separated by `;`; column j is J E_j. Defaults to
    /// J E1 = E2, J E3 = E4, ...
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
}

#[derive(Args, Debug)]
pub struct SearchFlags {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub a: String,
    /// Comma-separated rationals.
    #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
    pub coefficients: String,
    /// Comma-separated 2-monomials such as `e12,e13`. Defaults to every
    /// `e_ij` avoiding the support of X.
    #[arg(long)]
    pub support: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub max_terms: usize,
    /// A form to keep closed; may be repeated.
    #[arg(long, allow_hyphen_values = true)]
    pub preserve: Vec<String>,
    #[arg(long, default_value_t = shearlab::search::DEFAULT_CAP)]
    pub cap: u128,
}

pub fn execute(cli: &Cli) -> Report {
    let name = command_name(&cli.command);
    let mut report = Report::new(name, echo(cli));
    let sets: Result<Vec<(String, Q)>, CliError> = cli.set.iter().map(|s| parse_assignment(s)).collect();
    let outcome = sets.and_then(|sets| match &cli.command {
        Command::AlgebraCheck(src) => algebra_check(&mut report, &src.algebra, &sets),
        Command::Shear {
            source,
            shear,
            validate_only,
        } => cmd_shear(&mut report, &source.algebra, &sets, shear, *validate_only),
        Command::Twist { source, alpha, f } => cmd_twist(&mut report, &source.algebra, &sets, alpha, f),
        Command::FormDs { source, shear, form } => cmd_form_ds(&mut report, &source.algebra, &sets, shear, form),
        Command::CheckStructure(flags) => cmd_check_structure(&mut report, &sets, flags),
        Command::Search(flags) => cmd_search(&mut report, &sets, flags),
        Command::ShearLines(src) => cmd_shear_lines(&mut report, &src.algebra, &sets),
    });
    if let Err(e) = outcome {
        report.fail(e);
    }
    report
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::AlgebraCheck(_) => "algebra-check",
        Command::Shear { .. } => "shear",
        Command::Twist { .. } => "twist",
        Command::FormDs { .. } => "form-ds",
        Command::CheckStructure(_) => "check-structure",
        Command::Search(_) => "search",
        Command::ShearLines(_) => "shear-lines",
    }
}

fn echo(cli: &Cli) -> Map<String, Value> {
    let mut m = Map::new();
    let mut put = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    if !cli.set.is_empty() {
        put("set", json!(cli.set));
    }
    let shear = |put: &mut dyn FnMut(&str, Value), s: &ShearFlags| {
        put("x", json!(s.x));
        put("alpha", json!(s.alpha));
        put("f0", json!(s.f0));
        put("a", json!(s.a));
        if let Some(e) = &s.eta_g {
            put("eta_g", json!(e));
        }
    };
    match &cli.command {
        Command::AlgebraCheck(s) | Command::ShearLines(s) => put("algebra", json!(s.algebra)),
        Command::Shear {
            source,
            shear: s,
            validate_only,
        } => {
            put("algebra", json!(source.algebra));
            shear(&mut put, s);
            put("validate_only", json!(validate_only));
        }
        Command::Twist { source, alpha, f } => {
            put("algebra", json!(source.algebra));
            put("alpha", json!(alpha));
            put("f", json!(f));
        }
        Command::FormDs { source, shear: s, form } => {
            put("algebra", json!(source.algebra));
            shear(&mut put, s);
            put("form", json!(form));
        }
        Command::CheckStructure(f) => {
            put("algebra", json!(f.source.algebra));
            put("type", json!(f.kind.to_possible_value().map(|v| v.get_name().to_string())));
            for (k, v) in [
                ("omega", &f.omega),
                ("rho_minus", &f.rho_minus),
                ("psi", &f.psi),
                ("phi", &f.phi),
                ("metric", &f.metric),
                ("j", &f.j),
            ] {
                if let Some(v) = v {
                    put(k, json!(v));
                }
            }
        }
        Command::Search(f) => {
            put("algebra", json!(f.source.algebra));
            put("x", json!(f.x));
            put("alpha", json!(f.alpha));
            put("a", json!(f.a));
            put("coefficients", json!(f.coefficients));
            if let Some(s) = &f.support {
                put("support", json!(s));
            }
            put("max_terms", json!(f.max_terms));
            put("preserve", json!(f.preserve));
            put("cap", json!(f.cap.to_string()));
        }
    }
    m
}

fn load_into(report: &mut Report, source: &str, sets: &[(String, Q)]) -> Result<Loaded, CliError> {
    let loaded = load(source, sets)?;
    report.digest = Some(loaded.digest.clone());
    Ok(loaded)
}

fn require_lie(g: &LieAlgebra) -> Result<(), CliError> {
    let j = g.jacobi_check();
    match j.failures.first() {
        None => Ok(()),
        Some((k, dd)) => Err(CliError {
            exit: Exit::Jacobi,
            message: format!("Jacobi identity fails: d(d e{k}) = {dd}"),
        }),
    }
}

fn algebra_check(report: &mut Report, source: &str, sets: &[(String, Q)]) -> Result<(), CliError> {
    let Loaded { algebra: g, .. } = load_into(report, source, sets)?;
    report.set("algebra", algebra_json(&g));
    report.line(format!("algebra: {}", algebra_text(&g)));
    let jac = g.jacobi_check();
    let failures: Vec<Value> = jac
        .failures
        .iter()
        .map(|(k, dd)| json!({ "k": k, "dd": form_json(dd) }))
        .collect();
    report.set("jacobi", json!({ "passed": jac.passed(), "failures": failures }));
    report.line(format!("{} Jacobi identity (d^2 = 0)", mark(jac.passed())));
    for (k, dd) in &jac.failures {
        report.line(format!("  d(d e{k}) = {dd}"));
    }
    if !jac.passed() {
        return Err(CliError {
            exit: Exit::Jacobi,
            message: "Jacobi identity fails".into(),
        });
    }
    let series = g.series()?;
    let c = g.classify()?;
    let dims = |v: &[shearlab::linalg::Subspace]| v.iter().map(|s| s.dim()).collect::<Vec<_>>();
    let witness = g.almost_abelian_witness();
    report.set(
        "classification",
        json!({
            "abelian": c.abelian,
            "nilpotent": c.nilpotent,
            "solvable": c.solvable,
            "almost_abelian": c.almost_abelian,
            "almost_abelian_witness": witness.as_ref().map(form_json),
            "derived_dim": c.derived_dim,
            "step_length": c.step_length,
            "derived_length": c.derived_length,
        }),
    );
    report.set(
        "series",
        json!({
            "lower_central_dims": dims(&series.lower_central),
            "derived_dims": dims(&series.derived),
        }),
    );
    let opt = |o: Option<usize>| o.map_or("none".to_string(), |v| v.to_string());
    report.line(format!("abelian: {}", c.abelian));
    report.line(format!("nilpotent: {} (step {})", c.nilpotent, opt(c.step_length)));
    report.line(format!("solvable: {} (derived length {})", c.solvable, opt(c.derived_length)));
    report.line(format!("derived algebra dimension: {}", c.derived_dim));
    match &witness {
        Some(w) => report.line(format!("almost abelian: true (abelian ideal ker {w})")),
        None => report.line("almost abelian: false"),
    }
    report.line(format!("lower central dims: {:?}", dims(&series.lower_central)));
    report.line(format!("derived dims: {:?}", dims(&series.derived)));
    Ok(())
}

fn shear_data(g: &LieAlgebra, params: &Bindings, flags: &ShearFlags) -> Result<ShearData, CliError> {
    let n = g.dim();
    let x = parse_vector(&flags.x, n, params)?;
    let alpha = parse_form(&flags.alpha, n, Some(1), params)?;
    let f0 = parse_form(&flags.f0, n, Some(2), params)?;
    let a = parse_q(&flags.a)?;
    let mut data = ShearData::new(x, alpha, f0, a)?;
    if let Some(e) = &flags.eta_g {
        data = data.with_eta_g(parse_form(e, n, Some(1), params)?)?;
    }
    Ok(data)
}

fn shear_report(report: &mut Report, r: &ShearReport) {
    let conditions: Vec<Value> = r
        .conditions
        .iter()
        .map(|c| {
            json!({
                "condition": c.kind.label(),
                "required": c.kind.required(),
                "passed": c.passed,
                "residual": c.residual.as_ref().map(form_json),
            })
        })
        .collect();
    report.set(
        "shear",
        json!({
            "valid": r.valid,
            "eta": form_json(&r.eta_str),
            "f": form_json(&r.f_str),
            "f_eff": form_json(&r.f_eff),
            "eta_prime": form_json(&r.eta_prime),
            "f_prime": form_json(&r.f_prime),
            "eta0": form_json(&r.eta_0),
            "eta_tilde": form_json(&r.eta_tilde),
            "f_tilde": form_json(&r.f_tilde),
            "nu": form_json(&r.nu),
            "eta_bracket": form_json(&r.eta_bracket),
            "conditions": conditions,
        }),
    );
    for line in r.to_string().lines() {
        report.line(line);
    }
}

fn validated(report: &mut Report, g: &LieAlgebra, data: &ShearData) -> Result<(), CliError> {
    let r = validate_shear(g, data)?;
    shear_report(report, &r);
    if !r.valid {
        let failed: Vec<&str> = r.failed_required().iter().map(|k| k.label()).collect();
        return Err(CliError {
            exit: Exit::InvalidData,
            message: format!("invalid shear: {}", failed.join("; ")),
        });
    }
    Ok(())
}

fn cmd_shear(
    report: &mut Report,
    source: &str,
    sets: &[(String, Q)],
    flags: &ShearFlags,
    validate_only: bool,
) -> Result<(), CliError> {
    let Loaded { algebra: g, params, .. } = load_into(report, source, sets)?;
    require_lie(&g)?;
    let data = shear_data(&g, &params, flags)?;
    validated(report, &g, &data)?;
    if !validate_only {
        let h = candidate(&g, &data)?;
        require_lie(&h)?;
        report.set("sheared", algebra_json(&h));
        report.line(format!("sheared: {}", algebra_text(&h)));
    }
    Ok(())
}

fn cmd_twist(report: &mut Report, source: &str, sets: &[(String, Q)], alpha: &str, f: &str) -> Result<(), CliError> {
    let Loaded { algebra: g, params, .. } = load_into(report, source, sets)?;
    require_lie(&g)?;
    let n = g.dim();
    let alpha = parse_form(alpha, n, Some(1), &params)?;
    let f = parse_form(f, n, Some(2), &params)?;
    let t = apply_twist(&g, &alpha, &f)?;
    report.set("twisted", algebra_json(&t));
    report.line(format!("twisted: {}", algebra_text(&t)));
    Ok(())
}

fn cmd_form_ds(
    report: &mut Report,
    source: &str,
    sets: &[(String, Q)],
    flags: &ShearFlags,
    form: &str,
) -> Result<(), CliError> {
    let Loaded { algebra: g, params, .. } = load_into(report, source, sets)?;
    require_lie(&g)?;
    let data = shear_data(&g, &params, flags)?;
    let sigma = parse_form(form, g.dim(), None, &params)?;
    let ds = ds_form(&g, &data, &sigma)?;
    let d = g.d(&sigma)?;
    let contracted = if sigma.degree() == 0 {
        KForm::zero(g.dim(), 0)
    } else {
        sigma.interior(&data.x)?
    };
    report.set(
        "form_ds",
        json!({
            "form": form_json(&sigma),
            "d": form_json(&d),
            "x_contraction": form_json(&contracted),
            "ds": form_json(&ds),
            "closed_after": ds.is_zero(),
        }),
    );
    report.line(format!("d = {d}"));
    report.line(format!("X contracted = {contracted}"));
    report.line(format!("d_S = {ds}"));
    let r = validate_shear(&g, &data)?;
    report.set("shear_valid", json!(r.valid));
    if !r.valid {
        shear_report(report, &r);
        return Err(CliError {
            exit: Exit::InvalidData,
            message: "shear data is not valid; d_S does not describe a Lie algebra".into(),
        });
    }
    Ok(())
}

fn parse_matrix(text: &str, n: usize) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<Q>> = text
        .split(';')
        .map(|row| row.split(',').map(|c| parse_q(c.trim()).map_err(CliError::from)).collect())
        .collect::<Result<_, _>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::usage(format!("expected a {n}x{n} matrix")));
    }
    Ok(rows)
}

fn standard_omega(n: usize) -> KForm {
    let mut w = KForm::zero(n, 2);
    for p in (0..n / 2).map(|i| 2 * i) {
        w.add_term(Monomial::from_mask(0b11 << p), Q::from_integer(1.into()));
    }
    w
}

fn cmd_check_structure(report: &mut Report, sets: &[(String, Q)], f: &StructureFlags) -> Result<(), CliError> {
    let Loaded { algebra: g, params, .. } = load_into(report, &f.source.algebra, sets)?;
    require_lie(&g)?;
    let n = g.dim();
    let get = |flag: &Option<String>, name: &str, degree: usize| -> Result<KForm, CliError> {
        let text = flag
            .as_ref()
            .ok_or_else(|| CliError::usage(format!("--{name} is required for this structure")))?;
        Ok(parse_form(text, n, Some(degree), &params)?)
    };
    let passed = match f.kind {
        StructureType::Symplectic => {
            let omega = get(&f.omega, "omega", 2)?;
            let r = symplectic_check(&g, &omega)?;
            report.set(
                "symplectic",
                json!({
                    "closed": r.closed,
                    "nondegenerate": r.nondegenerate(),
                    "top_power": form_json(&r.top_power),
                }),
            );
            report.line(format!("{} d omega = 0", mark(r.closed)));
            report.line(format!("{} omega^{} = {} is nonzero", mark(r.nondegenerate()), n / 2, r.top_power));
            r.passed()
        }
        StructureType::Kahler => {
            let omega = match &f.omega {
                Some(_) => get(&f.omega, "omega", 2)?,
                None => standard_omega(n),
            };
            let metric = match &f.metric {
                Some(m) => Metric::new(parse_matrix(m, n)?)?,
                None => Metric::euclidean(n),
            };
            let j = match &f.j {
                Some(m) => ComplexStructure::new(parse_matrix(m, n)?)?,
                None => ComplexStructure::standard(n)?,
            };
            let r = kahler_check(&g, &metric, &j, &omega)?;
            let nij: Vec<Value> = nijenhuis(&g, &j)?
                .nonzero()
                .map(|((a, b), v)| json!({ "i": a, "j": b, "value": vector_json(v) }))
                .collect();
            report.set(
                "kahler",
                json!({
                    "positive_definite": r.positive_definite,
                    "metric_compatible": r.metric_compatible,
                    "omega_compatible": r.omega_compatible,
                    "closed": r.closed,
                    "integrable": r.integrable,
                    "nijenhuis_nonzero": nij,
                }),
            );
            report.line(format!("omega = {omega}"));
            report.line(format!("{} metric positive definite", mark(r.positive_definite)));
            report.line(format!("{} g(J., J.) = g", mark(r.metric_compatible)));
            report.line(format!("{} omega = g(J., .)", mark(r.omega_compatible)));
            report.line(format!("{} d omega = 0", mark(r.closed)));
            report.line(format!("{} Nijenhuis tensor vanishes", mark(r.integrable)));
            r.passed()
        }
        StructureType::HalfFlat => {
            let omega = match &f.omega {
                Some(_) => get(&f.omega, "omega", 2)?,
                None => standard_omega(n),
            };
            let rho = match &f.rho_minus {
                Some(_) => get(&f.rho_minus, "rho-minus", 3)?,
                None => parse_form("e136 + e145 + e235 - e246", n, Some(3), &params)?,
            };
            let r = half_flat_check(&g, &omega, &rho)?;
            report.set(
                "half_flat",
                json!({
                    "co_symplectic": r.co_symplectic,
                    "rho_minus_closed": r.rho_minus_closed,
                    "compatible": r.compatible,
                }),
            );
            report.line(format!("{} d(omega^2) = 0", mark(r.co_symplectic)));
            report.line(format!("{} d rho_minus = 0", mark(r.rho_minus_closed)));
            report.line(format!("omega ^ rho_minus = 0: {}", r.compatible));
            r.passed()
        }
        StructureType::G2Cocal => {
            let psi = get(&f.psi, "psi", 4)?;
            let closed = g2_cocal_check(&g, &psi)?;
            let dpsi = g.d(&psi)?;
            report.set("g2_cocal", json!({ "closed": closed, "d_psi": form_json(&dpsi) }));
            report.line(format!("{} d psi = 0", mark(closed)));
            if !closed {
                report.line(format!("  d psi = {dpsi}"));
            }
            closed
        }
        StructureType::G2Phi => {
            let phi = get(&f.phi, "phi", 3)?;
            let s = phi_stability(&phi)?;
            let b: Vec<Value> = s.b.iter().map(|r| Value::Array(r.iter().map(q_json).collect())).collect();
            let def = match s.definiteness {
                Definiteness::Positive => "positive",
                Definiteness::Negative => "negative",
                Definiteness::Neither => "indefinite-or-degenerate",
            };
            report.set("g2_phi", json!({ "b": b, "definiteness": def, "stable": s.stable() }));
            report.line(format!("{} B is definite ({def})", mark(s.stable())));
            s.stable()
        }
    };
    report.set("passed", json!(passed));
    report.line(format!("structure: {}", if passed { "PASS" } else { "FAIL" }));
    Ok(())
}

fn cmd_search(report: &mut Report, sets: &[(String, Q)], f: &SearchFlags) -> Result<(), CliError> {
    let Loaded { algebra: g, params, .. } = load_into(report, &f.source.algebra, sets)?;
    require_lie(&g)?;
    let n = g.dim();
    let coefficients = f
        .coefficients
        .split(',')
        .map(|c| parse_q(c.trim()).map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;
    let support = match &f.support {
        None => None,
        Some(s) => Some(
            s.split(',')
                .map(|w| {
                    let form = parse_form(w.trim(), n, Some(2), &params)?;
                    match form.terms().next() {
                        Some((m, _)) if form.num_terms() == 1 => Ok(*m),
                        _ => Err(CliError::usage(format!("`{w}` is not a single monomial"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let spec = SearchSpec {
        x: parse_vector(&f.x, n, &params)?,
        alpha: parse_form(&f.alpha, n, Some(1), &params)?,
        base: g,
        a: parse_q(&f.a)?,
        coefficients,
        support,
        max_terms: f.max_terms,
        preserve: f
            .preserve
            .iter()
            .map(|p| parse_form(p, n, None, &params))
            .collect::<Result<_, _>>()?,
        cap: f.cap,
    };
    let size = spec.space_size()?;
    report.set("space_size", json!(size.to_string()));
    let hits = enumerate_f0(&spec)?;
    let list: Vec<Value> = hits
        .iter()
        .map(|h| json!({ "f0": form_json(&h.f0), "sheared": algebra_json(&h.sheared) }))
        .collect();
    report.set("count", json!(hits.len()));
    report.set("hits", Value::Array(list));
    report.line(format!("candidates: {size}"));
    report.line(format!("valid: {}", hits.len()));
    for h in &hits {
        report.line(format!("F0 = {}  ->  {}", h.f0, algebra_text(&h.sheared)));
    }
    Ok(())
}

fn cmd_shear_lines(report: &mut Report, source: &str, sets: &[(String, Q)]) -> Result<(), CliError> {
    let Loaded { algebra: g, .. } = load_into(report, source, sets)?;
    require_lie(&g)?;
    let lines = g.find_shear_lines()?;
    let spaces: Vec<Value> = lines
        .eigenspaces
        .iter()
        .map(|e| {
            json!({
                "eigenvalues": e.eigenvalues.iter().map(q_json).collect::<Vec<_>>(),
                "basis": e.basis.iter().map(vector_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    report.set(
        "shear_lines",
        json!({
            "generators": lines.generators.iter().map(vector_json).collect::<Vec<_>>(),
            "target": lines.target.iter().map(vector_json).collect::<Vec<_>>(),
            "eigenspaces": spaces,
            "unrepresentable": lines.unrepresentable,
        }),
    );
    let join = |v: &[shearlab::Vector]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    report.line(format!("generators: {}", join(&lines.generators)));
    report.line(format!("target: {}", join(&lines.target)));
    for e in &lines.eigenspaces {
        let ev: Vec<String> = e.eigenvalues.iter().map(shearlab::rational::fmt_q).collect();
        report.line(format!("eigenvalues ({}): {}", ev.join(", "), join(&e.basis)));
    }
    if lines.unrepresentable {
        report.line("some eigenvalues are not rational and are omitted");
    }
    Ok(())
}
