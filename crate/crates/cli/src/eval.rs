use std::collections::BTreeMap;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use num_complex::Complex;
use rayon::prelude::*;
use serde_json::json;
use superzeta_core::lax_phillips::{
    det_closed, det_from_superzeta, det_star_constant, det_star_from_zprime, higher_depth_det,
    script_g1, zeta_b, DeterminantResult, Side,
};
use superzeta_core::special::cx::{from_c64, to_c64};
use superzeta_core::special::{barnes_g, hurwitz_zeta, log_g1, milnor_gamma, Dd};
use superzeta_core::superzeta::{QuadratureSpec, SuperzetaValue};
use superzeta_core::surface::scattering::scattering_phi_with_tail;
use superzeta_core::surface::selberg::{default_l_max, selberg_log_z};
use superzeta_core::surface::{GeodesicTable, SurfaceConfig};
use superzeta_core::Complex64;

use crate::context::{load_config, load_table, CliError, LoadedConfig, LoadedTable};
use crate::manifest::RunManifest;
use crate::output::{render_records, write_output, Record};
use crate::GlobalOpts;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// Hurwitz zeta(s, z).
    ZetaH,
    /// Barnes G(z).
    Barnes,
    /// G1(z) at --vol or the configuration's volume.
    G1,
    /// Milnor gamma Gamma_r(z).
    Milnor,
    /// Selberg Z(s) from the geodesic table.
    Selberg,
    /// Scattering determinant phi(s).
    Phi,
    /// Superzeta zeta_B+(s, z).
    ZetaBPlus,
    /// Superzeta zeta_B-(s, z).
    ZetaBMinus,
    /// det(zI - (I/2 + B)).
    DetPlus,
    /// det(zI - (I/2 - B)).
    DetMinus,
    /// Depth-r determinant, r = --r (a positive integer).
    DetDepth,
    /// DET* from --zprime, the value Z'(1).
    DetStar,
    /// Closed-form superzeta of G1, script_G1(s, z).
    ScriptG1,
}

impl Function {
    fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }

    /// The variable swept by a grid when --grid-var is absent.
    fn default_grid_var(self) -> &'static str {
        match self {
            Function::Selberg | Function::Phi => "s",
            Function::DetStar => "zprime",
            _ => "z",
        }
    }

    fn needs_table(self) -> bool {
        matches!(
            self,
            Function::Selberg
                | Function::ZetaBPlus
                | Function::ZetaBMinus
                | Function::DetPlus
                | Function::DetMinus
                | Function::DetDepth
        )
    }

    fn needs_config(self) -> bool {
        !matches!(self, Function::ZetaH | Function::Barnes | Function::Milnor)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DetPath {
    /// Upsilon times the complete zeta function.
    Closed,
    /// exp of minus the s-derivative of zeta_B at 0.
    Superzeta,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Function name, e.g. zeta-h, det-plus.
    pub function: String,
    /// Complex argument s as "a", "a,b" or "a+bi".
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Milnor order, or the depth for det-depth.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Volume for g1 and script-g1; defaults to the configuration's.
    #[arg(long)]
    pub vol: Option<f64>,
    /// Z'(1) for det-star.
    #[arg(long, allow_hyphen_values = true)]
    pub zprime: Option<f64>,
    /// Route for det-plus and det-minus.
    #[arg(long, value_enum, default_value_t = DetPath::Closed)]
    pub path: DetPath,
    /// Real-part sweep "start:stop:count" of the grid variable.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_re: Option<String>,
    /// Imaginary-part sweep "start:stop:count" of the grid variable.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_im: Option<String>,
    /// Which argument the grid sweeps (s, z, r or zprime).
    #[arg(long)]
    pub grid_var: Option<String>,
}

/// Accepts "a", "a,b" and anything num-complex parses ("1+2i", "-3i").
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let t = text.trim();
    let bad = || CliError::Usage(format!("cannot parse complex number {text:?}"));
    if let Some((a, b)) = t.split_once(',') {
        let re = a.trim().parse::<f64>().map_err(|_| bad())?;
        let im = b.trim().parse::<f64>().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    Complex64::from_str(t).map_err(|_| bad())
}

#[derive(Clone, Debug, PartialEq)]
struct Sweep {
    start: f64,
    stop: f64,
    count: usize,
}

impl Sweep {
    fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("grid spec {text:?} is not start:stop:count"));
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let start = parts[0].trim().parse::<f64>().map_err(|_| bad())?;
        let stop = parts[1].trim().parse::<f64>().map_err(|_| bad())?;
        let count = parts[2].trim().parse::<usize>().map_err(|_| bad())?;
        if count == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        Ok(Sweep { start, stop, count })
    }

    fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|k| self.start + h * k as f64).collect()
    }
}

/// One evaluation point: values of the named complex arguments.
type Point = BTreeMap<&'static str, Complex64>;

fn base_point(args: &EvalArgs) -> Result<Point, CliError> {
    let mut p = Point::new();
    if let Some(s) = &args.s {
        p.insert("s", parse_complex(s)?);
    }
    if let Some(z) = &args.z {
        p.insert("z", parse_complex(z)?);
    }
    if let Some(r) = &args.r {
        p.insert("r", parse_complex(r)?);
    }
    if let Some(zp) = args.zprime {
        p.insert("zprime", Complex64::new(zp, 0.0));
    }
    Ok(p)
}

fn grid_key(name: &str) -> Result<&'static str, CliError> {
    match name {
        "s" => Ok("s"),
        "z" => Ok("z"),
        "r" => Ok("r"),
        "zprime" => Ok("zprime"),
        other => Err(CliError::Usage(format!("unknown grid variable {other:?}"))),
    }
}

fn expand(
    args: &EvalArgs,
    f: Function,
    base: Point,
) -> Result<(Vec<Point>, Option<&'static str>), CliError> {
    if args.grid_re.is_none() && args.grid_im.is_none() {
        if args.grid_var.is_some() {
            return Err(CliError::Usage(
                "--grid-var needs --grid-re or --grid-im".into(),
            ));
        }
        return Ok((vec![base], None));
    }
    let var = grid_key(args.grid_var.as_deref().unwrap_or(f.default_grid_var()))?;
    let fixed = base.get(var).copied().unwrap_or_default();
    let res = match &args.grid_re {
        Some(g) => Sweep::parse(g)?.points(),
        None => vec![fixed.re],
    };
    let ims = match &args.grid_im {
        Some(g) => Sweep::parse(g)?.points(),
        None => vec![fixed.im],
    };
    let mut pts = Vec::with_capacity(res.len() * ims.len());
    for &x in &res {
        for &y in &ims {
            let mut p = base.clone();
            p.insert(var, Complex64::new(x, y));
            pts.push(p);
        }
    }
    Ok((pts, Some(var)))
}

fn arg(p: &Point, name: &str, f: Function) -> Result<Complex64, CliError> {
    p.get(name)
        .copied()
        .ok_or_else(|| CliError::Usage(format!("{} needs --{name}", f.name())))
}

fn real_arg(p: &Point, name: &str, f: Function) -> Result<f64, CliError> {
    let v = arg(p, name, f)?;
    if v.im != 0.0 {
        return Err(CliError::Usage(format!(
            "--{name} must be real for {}",
            f.name()
        )));
    }
    Ok(v.re)
}

fn dd(z: Complex64) -> Complex<Dd> {
    from_c64(z)
}

/// Inputs needed by the evaluations, loaded once.
struct Context {
    config: Option<LoadedConfig>,
    table: Option<LoadedTable>,
    quad: QuadratureSpec,
}

impl Context {
    fn config(&self) -> &SurfaceConfig {
        &self.config.as_ref().expect("config loaded").config
    }

    fn table(&self) -> &GeodesicTable {
        &self.table.as_ref().expect("table loaded").table
    }
}

struct Value {
    v: Complex64,
    err: f64,
    method: String,
    extra: BTreeMap<String, serde_json::Value>,
}

impl Value {
    fn plain(v: Complex64, err: f64, method: &str) -> Self {
        Value {
            v,
            err,
            method: method.into(),
            extra: BTreeMap::new(),
        }
    }

    /// Error taken as the distance to the same function in double-double.
    fn against_dd(v: Complex64, w: Complex<Dd>, method: &str) -> Self {
        let err = (v - to_c64(w)).norm().max(f64::EPSILON * v.norm());
        Value::plain(v, err, method)
    }

    fn superzeta(sz: SuperzetaValue) -> Self {
        let method = serde_json::to_value(sz.method)
            .ok()
            .and_then(|m| m.as_str().map(str::to_string))
            .unwrap_or_default();
        Value::plain(sz.value, sz.abs_error, &method)
    }

    fn determinant(d: DeterminantResult) -> Self {
        let method = serde_json::to_value(d.method)
            .ok()
            .and_then(|m| m.as_str().map(str::to_string))
            .unwrap_or_default();
        let mut v = Value::plain(d.value, d.error * d.value.norm(), &method);
        v.extra
            .insert("log_value".into(), json!([d.log_value.re, d.log_value.im]));
        v.extra.insert("log_abs_error".into(), json!(d.error));
        v.extra.insert(
            "upsilon_factor".into(),
            json!([d.upsilon_factor.re, d.upsilon_factor.im]),
        );
        v.extra.insert(
            "zeta_factor".into(),
            json!([d.zeta_side_factor.re, d.zeta_side_factor.im]),
        );
        v
    }
}

fn evaluate(f: Function, p: &Point, args: &EvalArgs, ctx: &Context) -> Result<Value, CliError> {
    let vol = || args.vol.unwrap_or_else(|| ctx.config().vol());
    Ok(match f {
        Function::ZetaH => {
            let (s, z) = (arg(p, "s", f)?, arg(p, "z", f)?);
            Value::against_dd(
                hurwitz_zeta(s, z)?,
                hurwitz_zeta(dd(s), dd(z))?,
                "euler-maclaurin",
            )
        }
        Function::Barnes => {
            let z = arg(p, "z", f)?;
            Value::against_dd(barnes_g(z)?, barnes_g(dd(z))?, "asymptotic")
        }
        Function::G1 => {
            let (z, vol) = (arg(p, "z", f)?, vol());
            Value::against_dd(
                log_g1(z, vol)?.exp(),
                cx_exp(log_g1(dd(z), vol)?),
                "closed-form",
            )
        }
        Function::Milnor => {
            let (r, z) = (arg(p, "r", f)?, arg(p, "z", f)?);
            Value::against_dd(
                milnor_gamma(r, z)?,
                milnor_gamma(dd(r), dd(z))?,
                "hurwitz-derivative",
            )
        }
        Function::Selberg => {
            let s = arg(p, "s", f)?;
            let table = ctx.table();
            let lv = selberg_log_z(s, table, default_l_max(s.re, table, 1e-15))?;
            let v = lv.value.exp();
            let mut out = Value::plain(v, v.norm() * lv.error(), "euler-product");
            out.extra
                .insert("log_value".into(), json!([lv.value.re, lv.value.im]));
            out
        }
        Function::Phi => {
            let s = arg(p, "s", f)?;
            let sv = scattering_phi_with_tail(s, ctx.config(), usize::MAX)?;
            let err = sv.tail + 16.0 * f64::EPSILON * sv.value.norm();
            Value::plain(sv.value, err, "closed-form")
        }
        Function::ZetaBPlus | Function::ZetaBMinus => {
            let side = if f == Function::ZetaBPlus {
                Side::Plus
            } else {
                Side::Minus
            };
            let (s, z) = (arg(p, "s", f)?, arg(p, "z", f)?);
            Value::superzeta(zeta_b(side, s, z, ctx.table(), ctx.config(), &ctx.quad)?)
        }
        Function::DetPlus | Function::DetMinus => {
            let side = if f == Function::DetPlus {
                Side::Plus
            } else {
                Side::Minus
            };
            let z = arg(p, "z", f)?;
            let d = match args.path {
                DetPath::Closed => det_closed(side, z, ctx.table(), ctx.config())?,
                DetPath::Superzeta => {
                    det_from_superzeta(side, z, ctx.table(), ctx.config(), &ctx.quad)?
                }
            };
            Value::determinant(d)
        }
        Function::DetDepth => {
            let z = arg(p, "z", f)?;
            let r = real_arg(p, "r", f)?;
            if !(r >= 1.0 && r.fract() == 0.0 && r <= 64.0) {
                return Err(CliError::Usage(format!(
                    "det-depth needs an integer --r in 1..=64, got {r}"
                )));
            }
            let h = higher_depth_det(r as u32, z, ctx.table(), ctx.config(), &ctx.quad)?;
            let v = h.value();
            let mut out = Value::plain(v, h.error * v.norm(), "closed-form");
            out.extra.insert(
                "log_value".into(),
                json!([h.log_closed.re, h.log_closed.im]),
            );
            out.extra.insert(
                "log_superzeta".into(),
                json!([h.log_superzeta.re, h.log_superzeta.im]),
            );
            out.extra
                .insert("path_disagreement".into(), json!(h.path_disagreement));
            out.extra.insert(
                "mellin_quadrature".into(),
                json!([h.mellin_quadrature.re, h.mellin_quadrature.im]),
            );
            out.extra.insert(
                "mellin_dirichlet".into(),
                json!([h.mellin_dirichlet.re, h.mellin_dirichlet.im]),
            );
            out
        }
        Function::DetStar => {
            let zp = real_arg(p, "zprime", f)?;
            let v = det_star_from_zprime(zp, ctx.config())?;
            let mut out = Value::plain(
                Complex64::new(v, 0.0),
                4.0 * f64::EPSILON * v.abs(),
                "closed-form",
            );
            out.extra
                .insert("constant".into(), json!(det_star_constant(ctx.config())));
            out
        }
        Function::ScriptG1 => {
            let (s, z, vol) = (arg(p, "s", f)?, arg(p, "z", f)?, vol());
            let v = script_g1(s, z, vol)?;
            let w = (hurwitz_zeta(dd(s) - Dd::from_f64(1.0), dd(z))?
                - (dd(z) - Dd::from_f64(0.5)) * hurwitz_zeta(dd(s), dd(z))?)
                * Dd::from_f64(vol / std::f64::consts::PI);
            Value::against_dd(v, w, "closed-form")
        }
    })
}

fn cx_exp(z: Complex<Dd>) -> Complex<Dd> {
    superzeta_core::special::cx::exp(z)
}

fn inputs_json(p: &Point) -> BTreeMap<String, serde_json::Value> {
    p.iter()
        .map(|(k, v)| (k.to_string(), json!([v.re, v.im])))
        .collect()
}

pub fn run(opts: &GlobalOpts, args: &EvalArgs) -> Result<(), CliError> {
    let f = Function::from_str(&args.function, false).map_err(|_| {
        let names: Vec<String> = Function::value_variants()
            .iter()
            .map(|v| v.name())
            .collect();
        CliError::Usage(format!(
            "unknown function {:?}; expected one of {}",
            args.function,
            names.join(", ")
        ))
    })?;
    let base = base_point(args)?;
    let (points, grid_var) = expand(args, f, base)?;

    let vol_given = matches!(f, Function::G1 | Function::ScriptG1) && args.vol.is_some();
    let config = if f.needs_config() && !vol_given {
        Some(load_config(opts)?)
    } else {
        None
    };
    let table = if f.needs_table() {
        Some(load_table(opts)?)
    } else {
        None
    };
    let ctx = Context {
        config,
        table,
        quad: QuadratureSpec::default(),
    };

    let mut manifest = RunManifest::new(format!("eval {}", f.name()), opts.format);
    if let Some(c) = &ctx.config {
        manifest.config = Some(c.source.clone());
        manifest
            .input_hashes
            .insert("config".into(), c.hash.clone());
    }
    if let Some(t) = &ctx.table {
        manifest.table = Some(t.source.clone());
        manifest
            .input_hashes
            .insert("table".into(), t.table.content_hash());
    }
    if let Some(var) = grid_var {
        manifest.grid = Some(format!(
            "{var} re={} im={}",
            args.grid_re.as_deref().unwrap_or("fixed"),
            args.grid_im.as_deref().unwrap_or("fixed")
        ));
    }
    let mut args_seen: BTreeMap<String, String> = BTreeMap::new();
    for (k, v) in [("s", &args.s), ("z", &args.z), ("r", &args.r)] {
        if let Some(v) = v {
            args_seen.insert(k.into(), v.clone());
        }
    }
    if let Some(v) = args.vol {
        args_seen.insert("vol".into(), v.to_string());
    }
    if let Some(v) = args.zprime {
        args_seen.insert("zprime".into(), v.to_string());
    }
    let args_text = serde_json::to_string(&args_seen).unwrap_or_default();
    manifest.input_hashes.insert(
        "arguments".into(),
        crate::context::sha256_hex(args_text.as_bytes()),
    );
    let manifest = manifest.seal();

    let results: Vec<Result<Record, CliError>> = points
        .par_iter()
        .map(|p| {
            let v = evaluate(f, p, args, &ctx)?;
            Ok(Record {
                operation: f.name(),
                inputs: inputs_json(p),
                value_re: v.v.re,
                value_im: v.v.im,
                abs_error: v.err,
                method: v.method,
                extra: v.extra,
            })
        })
        .collect();
    let records = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let text = render_records(&manifest, &records, grid_var.is_some(), opts.format);
    write_output(opts.out.as_deref(), &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("1.5,-2").unwrap(), Complex64::new(1.5, -2.0));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("-3i").unwrap(), Complex64::new(0.0, -3.0));
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn sweep_points() {
        let s = Sweep::parse("1:2:3").unwrap();
        assert_eq!(s.points(), vec![1.0, 1.5, 2.0]);
        assert_eq!(Sweep::parse("-1:1:1").unwrap().points(), vec![-1.0]);
        assert!(Sweep::parse("1:2").is_err());
        assert!(Sweep::parse("1:2:0").is_err());
    }
}
