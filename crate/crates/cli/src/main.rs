//! Command-line front end: every library operation behind one binary with
//! text or JSON output. Exit codes: 0 ok, 1 domain/budget error, 2 usage.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use drinfeld_forge::cheb::{cheb_bound_check, effective_degree_search, split_counts, ChebParams};
use drinfeld_forge::cm::{class_number_lower_bound, ImaginaryQuadExt, OrderR};
use drinfeld_forge::extfield::ExtField;
use drinfeld_forge::field::Field;
use drinfeld_forge::finmod::{psi_r, smith_normal_form, MatA};
use drinfeld_forge::isogeny::{
    cyclic_isogenies, degree_bound, hecke_degree_index, hecke_image_j, isogeny_graph, GraphTarget,
};
use drinfeld_forge::matk::{mobius_action, sigma_generator, verify_translation, AffinePoint};
use drinfeld_forge::poly::{IdealA, PolyA};
use drinfeld_forge::ratfunc::{KField, RatFunc};
use drinfeld_forge::text::{
    parse_extension, parse_module, parse_poly, parse_ratfunc, parse_skew, ParsedModule,
};
use drinfeld_forge::{ForgeError, Fq, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "drinfeld-forge",
    version,
    about = "Exact arithmetic for Drinfeld modules, isogeny graphs and function-field class groups"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiply two twisted polynomials over K = F_q(T)
    SkewMul {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// coefficient-field variable name
        #[arg(long, default_value = "T")]
        var: String,
    },
    /// Evaluate phi_a for a module literal
    PhiA {
        #[arg(long)]
        module: String,
        #[arg(long)]
        a: String,
    },
    /// n-torsion of a module over a finite A-field
    Torsion {
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: String,
    },
    /// All cyclic n-isogenies out of a module over a finite A-field
    Isogenies {
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: String,
    },
    /// Hecke image T_p(j) over L = A/(ch)
    HeckeImage {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ch: String,
        #[arg(long)]
        j: String,
        #[arg(long)]
        p: String,
    },
    /// Hecke degree by projective-line enumeration
    HeckeDegree {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: String,
    },
    /// The degree function psi_r(n)
    Psi {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: String,
    },
    /// Smith normal form of a matrix over A = F_q[T]
    Snf {
        #[arg(long)]
        q: u64,
        /// rows separated by ';', entries by ','
        #[arg(long)]
        matrix: String,
    },
    /// Class number of y^2 = f(T)
    ClassNumber {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
    },
    /// The full class group as reduced Mumford representatives
    Pic {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
    },
    /// |Pic(R)| for the order of conductor c
    PicOrder {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        c: String,
    },
    /// CM height as the exact pair (H^r, r)
    CmHeight {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        r: u32,
    },
    /// Residual test for a prime p (optionally in an order)
    Residual {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        p: String,
    },
    /// The class-group translation action of a prime above p
    PicAction {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        p: String,
    },
    /// Isogeny graph of T_p over L = A/(ch), with crater summary
    Volcano {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ch: String,
        #[arg(long)]
        p: String,
    },
    /// Verify the translation generator sigma_i^n(a)
    SigmaVerify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        a: String,
        /// the polynomial N in t = diag(N, 1, ..., 1)
        #[arg(long)]
        npol: String,
        /// comma-separated rational functions; defaults to the origin
        #[arg(long)]
        omega: Option<String>,
    },
    /// The modular-polynomial degree bound
    DegreeBound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        deg_m: u64,
        /// comma-separated positive weights
        #[arg(long)]
        w: String,
    },
    /// Split-prime counting table for degrees 1..=t
    ChebCount {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        t: usize,
    },
    /// The strong Cebotarev bound at degree t
    ChebCheck {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        t: usize,
        /// genus override for composita
        #[arg(long)]
        g_m: Option<u64>,
    },
    /// Effective degree search over the two inequalities
    EffectiveT {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        c3: String,
        #[arg(long)]
        c_eps: String,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        g_prime: u64,
        #[arg(long)]
        log_c: String,
        #[arg(long)]
        log_m_x: String,
        #[arg(long)]
        c_bez: String,
        #[arg(long)]
        deg_t_x: String,
        #[arg(long)]
        n_exp: String,
        #[arg(long)]
        f_deg: String,
        #[arg(long)]
        n_c: u64,
        #[arg(long)]
        bound: u64,
    },
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse()
            .map_err(|_| ForgeError::Parse(format!("bad integer '{}'", t.trim())))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den == BigInt::from(0) {
                return Err(ForgeError::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn rat_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn finite_field(q: u64, ch: &str) -> Result<(ExtField<Fq>, Vec<u64>, PolyA)> {
    let fq = Fq::new(q)?;
    let ch = parse_poly(&fq, ch)?;
    if !ch.is_irreducible() {
        return Err(ForgeError::Parse("ch must be irreducible".into()));
    }
    let field = ExtField::new(fq, ch.c.clone(), "T")?;
    let t = field.gen();
    Ok((field, t, ch))
}

fn extension(q: u64, f: &str) -> Result<ImaginaryQuadExt> {
    Ok(parse_extension(&format!("q={q}; y^2 = {f}"))?.ext)
}

fn order(q: u64, f: &str, c: &str) -> Result<OrderR> {
    let ext = extension(q, f)?;
    let c = parse_poly(ext.fq(), c)?;
    OrderR::new(&ext, &c)
}

fn run(cmd: Cmd) -> Result<(Value, String)> {
    match cmd {
        Cmd::SkewMul { q, a, b, var } => {
            let fq = Fq::new(q)?;
            let k = KField::with_var(&fq, &var);
            let gamma = k.gen();
            let pa = parse_skew(&k, &gamma, &a, &var)?;
            let pb = parse_skew(&k, &gamma, &b, &var)?;
            let prod = pa.mul(&pb)?;
            let text = prod.to_text();
            Ok((json!({ "product": text }), text))
        }
        Cmd::PhiA { module, a } => {
            let text = match parse_module(&module)? {
                ParsedModule::Generic(phi) => {
                    let a = parse_poly(phi.field.fq(), &a)?;
                    phi.phi_a(&a)?.to_text()
                }
                ParsedModule::Finite(phi) => {
                    let a = parse_poly(phi.field.fq(), &a)?;
                    phi.phi_a(&a)?.to_text()
                }
            };
            Ok((json!({ "phi_a": text }), text))
        }
        Cmd::Torsion { module, n } => {
            let ParsedModule::Finite(phi) = parse_module(&module)? else {
                return Err(ForgeError::Domain(
                    "torsion points need a finite A-field (L = A/(ch))".into(),
                ));
            };
            let n = IdealA::new(&parse_poly(phi.field.fq(), &n)?);
            let ts = phi.torsion_space(&n)?;
            let gens = ts.generators()?;
            let gen_labels: Vec<String> = gens
                .iter()
                .map(|g| ts.ext.format_el(&ts.point(g)))
                .collect();
            let text = format!(
                "extension degree {}\ndimension {}\ncardinality {}\ngenerators: {}",
                ts.d,
                ts.dim(),
                ts.cardinality(),
                gen_labels.join(", ")
            );
            Ok((
                json!({
                    "extension_degree": ts.d,
                    "dimension": ts.dim(),
                    "cardinality": ts.cardinality().to_string(),
                    "generators": gen_labels,
                }),
                text,
            ))
        }
        Cmd::Isogenies { module, n } => {
            let ParsedModule::Finite(phi) = parse_module(&module)? else {
                return Err(ForgeError::Domain(
                    "isogeny enumeration needs a finite A-field (L = A/(ch))".into(),
                ));
            };
            let n = IdealA::new(&parse_poly(phi.field.fq(), &n)?);
            let ci = cyclic_isogenies(&phi, &n)?;
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for iso in &ci.isogenies {
                let u = iso.u.to_text();
                let target: Vec<String> =
                    iso.target.g.iter().map(|g| ci.ext.format_el(g)).collect();
                lines.push(format!("u = {u}; target = [{}]", target.join(", ")));
                items.push(json!({ "u": u, "target": target }));
            }
            let text = format!("{} isogenies\n{}", ci.isogenies.len(), lines.join("\n"));
            Ok((
                json!({ "count": ci.isogenies.len(), "isogenies": items }),
                text,
            ))
        }
        Cmd::HeckeImage { q, ch, j, p } => {
            let (field, t, chp) = finite_field(q, &ch)?;
            let j = parse_poly(field.fq(), &j)?.rem(&chp)?.c;
            let p = IdealA::new(&parse_poly(field.fq(), &p)?);
            let img = hecke_image_j(&field, &t, &j, &p)?;
            let labels: Vec<String> = img
                .values
                .iter()
                .map(|v| match img.ext.try_to_base(v) {
                    Some(b) => field.format_el(&b),
                    None => format!(
                        "minpoly {}",
                        drinfeld_forge::drinfeld::min_poly_over_fq(&img.ext, v)
                    ),
                })
                .collect();
            let text = labels.join("\n");
            Ok((json!({ "count": labels.len(), "values": labels }), text))
        }
        Cmd::HeckeDegree { q, r, n } => {
            let fq = Fq::new(q)?;
            let n = IdealA::new(&parse_poly(&fq, &n)?);
            let d = hecke_degree_index(r, &n)?;
            Ok((json!({ "degree": d.to_string() }), d.to_string()))
        }
        Cmd::Psi { q, r, n } => {
            let fq = Fq::new(q)?;
            let n = IdealA::new(&parse_poly(&fq, &n)?);
            let v = psi_r(&n, r)?;
            Ok((json!({ "psi": v.to_string() }), v.to_string()))
        }
        Cmd::Snf { q, matrix } => {
            let fq = Fq::new(q)?;
            let rows: Vec<&str> = matrix.split(';').collect();
            let mut entries = Vec::new();
            let mut cols = None;
            for row in &rows {
                let cells: Vec<&str> = row.split(',').collect();
                match cols {
                    None => cols = Some(cells.len()),
                    Some(c) if c != cells.len() => {
                        return Err(ForgeError::Parse("ragged matrix".into()))
                    }
                    _ => {}
                }
                for cell in cells {
                    entries.push(parse_poly(&fq, cell)?);
                }
            }
            let m = MatA::new(&fq, rows.len(), cols.unwrap_or(0), entries)?;
            let snf = smith_normal_form(&m);
            let factors: Vec<String> = snf.factors.iter().map(|f| f.to_text("T")).collect();
            let text = factors.join(", ");
            Ok((json!({ "factors": factors }), text))
        }
        Cmd::ClassNumber { q, f } => {
            let e = extension(q, &f)?;
            let h = e.class_number()?;
            let lb = class_number_lower_bound(q, e.genus() as u32);
            let text = format!("h = {h} (lower bound {})", rat_text(&lb));
            Ok((
                json!({ "h": h, "genus": e.genus(), "lower_bound": rat_text(&lb) }),
                text,
            ))
        }
        Cmd::Pic { q, f } => {
            let g = extension(q, &f)?.pic_group()?;
            let els: Vec<String> = g.elements().iter().map(|d| d.to_string()).collect();
            let text = format!("order {}\n{}", g.len(), els.join("\n"));
            Ok((json!({ "order": g.len(), "elements": els }), text))
        }
        Cmd::PicOrder { q, f, c } => {
            let h = order(q, &f, &c)?.pic_order()?;
            Ok((json!({ "pic_order": h }), h.to_string()))
        }
        Cmd::CmHeight { q, f, c, r } => {
            let h = order(q, &f, &c)?.cm_height(r)?;
            let text = format!("H^r = {}, r = {}", h.pow, h.r);
            Ok((json!({ "h_pow_r": h.pow.to_string(), "r": h.r }), text))
        }
        Cmd::Residual { q, f, c, p } => {
            let e = extension(q, &f)?;
            let p = IdealA::new(&parse_poly(e.fq(), &p)?);
            let split = e.split_type(&p)?;
            let residual = match &c {
                Some(c) => order(q, &f, c)?.is_residual(&p)?,
                None => e.is_residual(&p)?,
            };
            let text = format!("{split:?} residual={residual}");
            Ok((
                json!({ "split_type": format!("{split:?}"), "residual": residual }),
                text,
            ))
        }
        Cmd::PicAction { q, f, p } => {
            let e = extension(q, &f)?;
            let g = e.pic_group()?;
            let p = IdealA::new(&parse_poly(e.fq(), &p)?);
            let act = g.pic_action(&p)?;
            let text = format!(
                "class {}\norder {}\npermutation {:?}",
                act.class, act.order, act.perm
            );
            Ok((
                json!({
                    "class": act.class.to_string(),
                    "order": act.order,
                    "permutation": act.perm,
                }),
                text,
            ))
        }
        Cmd::Volcano { q, ch, p } => {
            let (field, t, _) = finite_field(q, &ch)?;
            let p = IdealA::new(&parse_poly(field.fq(), &p)?);
            let graph = isogeny_graph(&field, &t, &p)?;
            let mut lines = Vec::new();
            for v in &graph.vertices {
                lines.push(format!(
                    "vertex {} ordinary={}",
                    v.j_label, v.ordinary
                ));
            }
            for (i, out) in graph.edges.iter().enumerate() {
                let src = &graph.vertices[i].j_label;
                for e in out {
                    let dst = match e {
                        GraphTarget::Internal(k) => graph.vertices[*k as usize].j_label.clone(),
                        GraphTarget::External(m) => format!("external({m})"),
                    };
                    lines.push(format!("edge {src} {dst} {}", p.gen));
                }
            }
            let craters = graph.craters();
            let crater_lengths: Vec<usize> = craters.iter().map(|c| c.len()).collect();
            let out_degree = graph.edges.first().map(|e| e.len()).unwrap_or(0);
            lines.push(format!(
                "summary vertices={} out_degree={} crater_lengths={:?}",
                graph.vertices.len(),
                out_degree,
                crater_lengths
            ));
            let text = lines.join("\n");
            Ok((
                json!({
                    "vertices": graph.vertices.len(),
                    "out_degree": out_degree,
                    "crater_lengths": crater_lengths,
                    "dump": lines,
                }),
                text,
            ))
        }
        Cmd::SigmaVerify {
            q,
            r,
            i,
            n,
            a,
            npol,
            omega,
        } => {
            let fq = Fq::new(q)?;
            let a = parse_poly(&fq, &a)?;
            let npol = parse_poly(&fq, &npol)?;
            let omega = match omega {
                Some(s) => AffinePoint::new(
                    s.split(',')
                        .map(|c| parse_ratfunc(&fq, c, "T"))
                        .collect::<Result<Vec<RatFunc>>>()?,
                ),
                None => AffinePoint::origin(&fq, r),
            };
            let g = sigma_generator(i, n, &a, &npol, r)?;
            let holds = verify_translation(i, n, &a, &npol, r, &omega)?;
            let moved = mobius_action(&g, &omega)?;
            let moved_text: Vec<String> =
                moved.coords.iter().map(|c| c.to_text("T")).collect();
            let text = format!(
                "matrix {}\nimage ({})\nholds {holds}",
                g.to_text("T"),
                moved_text.join(", ")
            );
            Ok((
                json!({
                    "matrix": g.to_text("T"),
                    "image": moved_text,
                    "holds": holds,
                }),
                text,
            ))
        }
        Cmd::DegreeBound { q, n, r, deg_m, w } => {
            let fq = Fq::new(q)?;
            let n = IdealA::new(&parse_poly(&fq, &n)?);
            let w: Vec<u64> = w
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| ForgeError::Parse(format!("bad weight '{x}'")))
                })
                .collect::<Result<Vec<u64>>>()?;
            let b = degree_bound(&n, r, &num_bigint::BigUint::from(deg_m), &w)?;
            Ok((json!({ "bound": b.to_string() }), b.to_string()))
        }
        Cmd::ChebCount { q, f, t } => {
            let fq = Fq::new(q)?;
            let f = parse_poly(&fq, &f)?;
            let mut lines = vec!["t pi main rhs_sq verdict".to_string()];
            let mut rows = Vec::new();
            for ti in 1..=t {
                let c = split_counts(ti, &f)?;
                let b = cheb_bound_check(ti, &f, None)?;
                lines.push(format!(
                    "{ti} {} {} {} {}",
                    b.pi,
                    rat_text(&b.main_term),
                    rat_text(&b.rhs_sq),
                    if b.holds { "ok" } else { "FAIL" }
                ));
                rows.push(json!({
                    "t": ti,
                    "split": c.split,
                    "inert": c.inert,
                    "ramified": c.ramified,
                    "main_term": rat_text(&b.main_term),
                    "rhs_sq": rat_text(&b.rhs_sq),
                    "holds": b.holds,
                }));
            }
            Ok((json!({ "rows": rows }), lines.join("\n")))
        }
        Cmd::ChebCheck { q, f, t, g_m } => {
            let fq = Fq::new(q)?;
            let f = parse_poly(&fq, &f)?;
            let b = cheb_bound_check(t, &f, g_m)?;
            let text = format!(
                "t={} pi={} lhs={} rhs_sq={} holds={}",
                b.t,
                b.pi,
                rat_text(&b.lhs),
                rat_text(&b.rhs_sq),
                b.holds
            );
            Ok((
                json!({
                    "t": b.t,
                    "pi": b.pi,
                    "main_term": rat_text(&b.main_term),
                    "lhs": rat_text(&b.lhs),
                    "rhs_sq": rat_text(&b.rhs_sq),
                    "holds": b.holds,
                }),
                text,
            ))
        }
        Cmd::EffectiveT {
            q,
            r,
            c1,
            c2,
            c3,
            c_eps,
            eps,
            g_prime,
            log_c,
            log_m_x,
            c_bez,
            deg_t_x,
            n_exp,
            f_deg,
            n_c,
            bound,
        } => {
            let params = ChebParams {
                q,
                r,
                c1: parse_rational(&c1)?,
                c2: parse_rational(&c2)?,
                c3: parse_rational(&c3)?,
                c_eps: parse_rational(&c_eps)?,
                eps: parse_rational(&eps)?,
                g_prime,
                log_c: parse_rational(&log_c)?,
                log_m_x: parse_rational(&log_m_x)?,
                c_bez: parse_rational(&c_bez)?,
                deg_t_x: parse_rational(&deg_t_x)?,
                n_exp: parse_rational(&n_exp)?,
                f_deg: parse_rational(&f_deg)?,
                n_c,
            };
            let found = effective_degree_search(&params, bound)?;
            let text = match found {
                Some(t) => format!("t = {t}"),
                None => "none".to_string(),
            };
            Ok((json!({ "t": found }), text))
        }
    }
}

/// Print to stdout, tolerating a closed pipe.
fn emit(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((payload, text)) => {
            match cli.format {
                Format::Text => emit(&text),
                Format::Json => emit(
                    &json!({ "status": "ok", "payload": payload, "diagnostics": [] }).to_string(),
                ),
            }
            std::process::exit(0);
        }
        Err(e) => {
            let code = match e {
                ForgeError::Parse(_) => 2,
                _ => 1,
            };
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => emit(
                    &json!({
                        "status": "error",
                        "payload": {},
                        "diagnostics": [e.to_string()],
                    })
                    .to_string(),
                ),
            }
            std::process::exit(code);
        }
    }
}
