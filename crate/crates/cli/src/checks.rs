use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use num_complex::Complex;
use serde::Serialize;
use serde_json::json;
use superzeta_core::lax_phillips::{
    det_from_superzeta, det_plus, det_star_constant, det_star_constant_upsilon_route,
    higher_depth_det, phi_quotient, zeta_b, Side, ZETA_PRIME_M1,
};
use superzeta_core::special::cx::from_c64;
use superzeta_core::special::{
    barnes_g, bernoulli_polynomial, hurwitz_zeta, log_g1, milnor_gamma, polygamma, Dd,
};
use superzeta_core::superzeta::{
    barnes_family, g1_asymptotics, residue_at, residue_of, superzeta_direct, voros_continue,
    voros_log_det, QuadratureSpec,
};
use superzeta_core::surface::scattering::scattering_phi;
use superzeta_core::surface::selberg::{default_l_max, euler_product, selberg_log_z};
use superzeta_core::surface::{enumerate_primitive_classes, EnumerationLimits, GeodesicTable};
use superzeta_core::{Complex64, Error};

use crate::context::{load_config, load_table, CliError, LoadedConfig, LoadedTable};
use crate::manifest::RunManifest;
use crate::output::{num, write_output};
use crate::{Format, GlobalOpts};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Special,
    Voros,
    Surface,
    Determinants,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Special => "special",
            Suite::Voros => "voros",
            Suite::Surface => "surface",
            Suite::Determinants => "determinants",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Special,
                Suite::Voros,
                Suite::Surface,
                Suite::Determinants,
            ],
            s => vec![s],
        }
    }

    fn needs_table(self) -> bool {
        matches!(self, Suite::Surface | Suite::Determinants | Suite::All)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub suite: &'static str,
    pub name: &'static str,
    /// Largest measured error; infinite when a step failed outright.
    pub error: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn dd(z: Complex64) -> Complex<Dd> {
    from_c64(z)
}

fn dd_norm(z: Complex<Dd>) -> f64 {
    z.re.to_f64().hypot(z.im.to_f64())
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

struct Harness<'a> {
    tol_override: Option<f64>,
    results: Vec<Assertion>,
    suite: &'static str,
    config: Option<&'a LoadedConfig>,
    table: Option<&'a LoadedTable>,
    quad: QuadratureSpec,
}

impl Harness<'_> {
    /// Runs one assertion; an error from the numerics counts as a failure.
    fn check<F>(&mut self, name: &'static str, tol: f64, f: F)
    where
        F: FnOnce(&Self) -> Result<f64, Error>,
    {
        let tol = self.tol_override.unwrap_or(tol);
        let start = Instant::now();
        let (error, note) = match f(self) {
            Ok(e) if e.is_nan() => (f64::INFINITY, Some("NaN error".to_string())),
            Ok(e) => (e, None),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        let pass = error < tol;
        eprintln!(
            "{} {}/{}: error {:.3e} vs tol {:.1e} ({:.2}s){}",
            if pass { "PASS" } else { "FAIL" },
            self.suite,
            name,
            error,
            tol,
            start.elapsed().as_secs_f64(),
            note.as_deref()
                .map(|n| format!(" [{n}]"))
                .unwrap_or_default()
        );
        self.results.push(Assertion {
            suite: self.suite,
            name,
            error,
            tol,
            pass,
            note,
        });
    }

    fn cfg(&self) -> &superzeta_core::surface::SurfaceConfig {
        &self.config.expect("config loaded").config
    }

    fn table(&self) -> &GeodesicTable {
        &self.table.expect("table loaded").table
    }
}

fn sample_points() -> Vec<Complex64> {
    let mut v = Vec::new();
    for &x in &[0.3, 1.0, 2.5, 4.0, 7.5, 9.7] {
        for &y in &[-3.0, 0.0, 1.25] {
            v.push(c(x, y));
        }
    }
    v
}

fn special(h: &mut Harness) {
    h.check("hurwitz-bernoulli", 1e-11, |_| {
        let mut worst: f64 = 0.0;
        for z in sample_points() {
            for n in 0..=6usize {
                let s = dd(c(-(n as f64), 0.0));
                let b = bernoulli_polynomial(n + 1, dd(z))? / Dd::from_f64((n + 1) as f64);
                worst = worst.max(dd_norm(hurwitz_zeta(s, dd(z))? + b));
            }
        }
        Ok(worst)
    });
    h.check("hurwitz-polygamma", 1e-11, |_| {
        let mut worst: f64 = 0.0;
        for z in sample_points() {
            for n in 1..=6u32 {
                let fact: f64 = (1..=n).map(f64::from).product();
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                let h = hurwitz_zeta(dd(c((n + 1) as f64, 0.0)), dd(z))?;
                worst = worst.max(dd_norm(
                    polygamma(n, dd(z))? - h * Dd::from_f64(sign * fact),
                ));
            }
        }
        Ok(worst)
    });
    h.check("zeta-2", 1e-14, |_| {
        Ok((hurwitz_zeta(c(2.0, 0.0), c(1.0, 0.0))? - PI * PI / 6.0).norm())
    });
    h.check("milnor-depth-1", 1e-12, |_| {
        Ok((milnor_gamma(c(1.0, 0.0), c(1.0, 0.0))? - 1.0 / (2.0 * PI).sqrt()).norm())
    });
    h.check("barnes-superfactorials", 1e-12, |_| {
        let mut worst: f64 = 0.0;
        for (n, want) in [
            (1.0, 1.0),
            (2.0, 1.0),
            (3.0, 1.0),
            (4.0, 2.0),
            (5.0, 12.0),
            (6.0, 288.0),
        ] {
            worst = worst.max(rel(barnes_g(c(n, 0.0))?, c(want, 0.0)));
        }
        Ok(worst)
    });
    h.check("zeta-prime-minus-1", 1e-9, |_| {
        let zeta = |s: f64| hurwitz_zeta(c(s, 0.0), c(1.0, 0.0)).map(|v| v.re);
        let d =
            |k: f64| -> Result<f64, Error> { Ok((zeta(-1.0 + k)? - zeta(-1.0 - k)?) / (2.0 * k)) };
        let fd = (4.0 * d(1e-3)? - d(2e-3)?) / 3.0;
        Ok((fd - *ZETA_PRIME_M1).abs())
    });
}

fn script_g1_closed(s: Complex64, z: Complex64, vol: f64) -> Result<Complex64, Error> {
    Ok((hurwitz_zeta(s - 1.0, z)? - (z - 0.5) * hurwitz_zeta(s, z)?) * (vol / PI))
}

fn voros(h: &mut Harness) {
    let vol = h.cfg().vol();
    h.check("g1-continuation", 1e-8, |h| {
        let asym = g1_asymptotics(vol)?;
        let mut worst: f64 = 0.0;
        for s in [-1.5, -0.5, 0.0, 0.5, 1.5, 2.5] {
            for z in [1.5, 2.0, 3.0, 5.0, 10.0] {
                let (s, z) = (c(s, 0.0), c(z, 0.0));
                let v = voros_continue(s, z, &asym, &h.quad)?.value;
                worst = worst.max((v - script_g1_closed(s, z, vol)?).norm());
            }
        }
        Ok(worst)
    });
    h.check("overlap-strip", 1e-9, |h| {
        let (zeros, asym) = barnes_family();
        let mut worst: f64 = 0.0;
        for s_re in [2.2, 2.5, 2.8] {
            for z in [c(1.7, 0.3), c(3.0, 0.0), c(6.0, -2.0)] {
                let s = c(s_re, 0.5);
                let a = voros_continue(s, z, &asym, &h.quad)?;
                let b = superzeta_direct(s, z, &zeros)?;
                if (a.value - b.value).norm() > a.abs_error + b.abs_error + 1e-13 {
                    return Ok(f64::INFINITY);
                }
                let z1 = z + 1.0;
                let exact = hurwitz_zeta(s - 1.0, z1)? - z * hurwitz_zeta(s, z1)?;
                worst = worst
                    .max((a.value - exact).norm())
                    .max((b.value - exact).norm());
            }
        }
        Ok(worst)
    });
    h.check("g1-regularized-product", 1e-8, |h| {
        let ln2pi = (2.0 * PI).ln();
        let mut worst: f64 = 0.0;
        for vol in [vol, 2.0 * vol] {
            let asym = g1_asymptotics(vol)?;
            let w = vol / (2.0 * PI);
            for x in [1.5, 2.0, 3.0, 5.0] {
                let z = c(x, 0.0);
                let lhs = voros_log_det(z, &asym, &h.quad)?.value.exp();
                let expo = w * (2.0 * x * ln2pi + 2.0 * *ZETA_PRIME_M1 - 0.5 * ln2pi);
                let rhs = (log_g1(z, vol)? - expo).exp();
                worst = worst.max(rel(lhs, rhs));
            }
        }
        Ok(worst)
    });
    h.check("g1-residues", 1e-6, |h| {
        // zeros -n of multiplicity w(2n+1): residues 2w at s = 2 and w(1-2z) at s = 1
        let asym = g1_asymptotics(vol)?;
        let w = vol / (2.0 * PI);
        let mut worst: f64 = 0.0;
        for x in [2.0, 3.0, 5.0] {
            let z = c(x, 0.0);
            let r2 = residue_at(c(2.0, 0.0), z, &asym, &h.quad)?.value;
            let r1 = residue_at(c(1.0, 0.0), z, &asym, &h.quad)?.value;
            worst = worst
                .max(rel(r2, c(2.0 * w, 0.0)))
                .max(rel(r1, c(w * (1.0 - 2.0 * x), 0.0)));
        }
        Ok(worst)
    });
}

fn surface(h: &mut Harness) {
    h.check("table-valid", 0.5, |h| h.table().validate().map(|()| 0.0));
    if h.table().max_norm > 34.0 {
        h.check("ab-class-norm", 1e-12, |h| {
            let want = 17.0 + 12.0 * 2f64.sqrt();
            let e = h.table().entries.iter().find(|e| e.trace == Some(6));
            Ok(e.filter(|e| e.count >= 2)
                .map_or(f64::INFINITY, |e| (e.norm - want).abs() / want))
        });
    }
    let x = h.table().max_norm.min(1e4);
    h.check("enumeration-invariants", 0.5, |_| {
        let e = enumerate_primitive_classes(x, &EnumerationLimits::default())?;
        e.check_primitivity()?;
        e.check_inverse_pairing()?;
        e.check_conjugation_invariance()?;
        Ok(0.0)
    });
    h.check("rebuild-determinism", 0.5, |h| {
        let a = GeodesicTable::build(x, &EnumerationLimits::default())?;
        let b = GeodesicTable::build(x, &EnumerationLimits::default())?;
        let same = a.to_csv() == b.to_csv() && a.content_hash() == b.content_hash();
        let matches_loaded =
            h.table().max_norm > 1e4 || h.table().content_hash() == a.content_hash();
        Ok(if same && matches_loaded { 0.0 } else { 1.0 })
    });
    h.check("euler-product", 1e-12, |h| {
        let t = h.table();
        let mut worst: f64 = 0.0;
        for s in [c(3.0, 0.0), c(2.5, 4.0)] {
            let lz = selberg_log_z(s, t, default_l_max(s.re, t, 1e-16))?.value;
            worst = worst.max(rel(euler_product(s, t, 80)?, lz.exp()));
        }
        Ok(worst)
    });
    h.check("selberg-conjugation", 1e-13, |h| {
        let t = h.table();
        let s = c(2.2, 1.7);
        let l = default_l_max(s.re, t, 1e-16);
        let a = selberg_log_z(s, t, l)?.value;
        let b = selberg_log_z(s.conj(), t, l)?.value;
        Ok((a - b.conj()).norm())
    });
}

fn determinants(h: &mut Harness) {
    h.check("dual-path", 1e-6, |h| {
        let mut worst: f64 = 0.0;
        for x in [1.5, 2.0, 3.0, 4.0] {
            for y in [-1.0, 0.0, 1.0] {
                let z = c(x, y);
                let a = det_plus(z, h.table(), h.cfg())?;
                let b = det_from_superzeta(Side::Plus, z, h.table(), h.cfg(), &h.quad)?;
                worst = worst.max(rel(b.value, a.value));
            }
        }
        Ok(worst)
    });
    h.check("phi-quotient", 1e-10, |h| {
        let mut worst: f64 = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                let z = c(1.5 + 4.5 * i as f64 / 4.0, -2.0 + j as f64);
                worst = worst.max(rel(
                    phi_quotient(z, h.table(), h.cfg())?,
                    scattering_phi(z, h.cfg())?,
                ));
            }
        }
        Ok(worst)
    });
    h.check("higher-depth", 1e-6, |h| {
        let mut worst: f64 = 0.0;
        for r in 1..=3 {
            for x in [2.0, 3.0, 4.0] {
                let d = higher_depth_det(r, c(x, 0.0), h.table(), h.cfg(), &h.quad)?;
                worst = worst
                    .max(d.path_disagreement)
                    .max(rel(d.mellin_quadrature, d.mellin_dirichlet));
            }
        }
        Ok(worst)
    });
    h.check("zeta-b-residues", 1e-4, |h| {
        let vol = h.cfg().vol();
        let cusps = h.cfg().cusps as f64;
        let mut worst: f64 = 0.0;
        for side in [Side::Plus, Side::Minus] {
            for x in [2.0, 3.0, 5.0] {
                let z = c(x, 0.0);
                let f = |s: Complex64| Ok(zeta_b(side, s, z, h.table(), h.cfg(), &h.quad)?.value);
                let r2 = residue_of(f, c(2.0, 0.0), 1e-3)?.value;
                let r1 = residue_of(f, c(1.0, 0.0), 1e-3)?.value;
                worst = worst
                    .max(rel(r2, c(-vol / PI, 0.0)))
                    .max(rel(r1, c(vol / PI * (x - 0.5) + cusps, 0.0)));
            }
        }
        Ok(worst)
    });
    h.check("det-star-constant", 1e-12, |h| {
        let cfg = h.cfg();
        let w = cfg.vol() / (2.0 * PI);
        let ln2pi = (2.0 * PI).ln();
        let want =
            (0.5 * cfg.cusps as f64 * 2f64.ln() + w * (2.0 * *ZETA_PRIME_M1 + 1.5 * ln2pi)).exp();
        let a = (det_star_constant(cfg) - want).abs() / want;
        let ratio = det_star_constant(cfg) / det_star_constant_upsilon_route(cfg);
        let b = (ratio - (w * ln2pi).exp()).abs() / ratio;
        Ok(a.max(b))
    });
}

fn render(manifest: &RunManifest, results: &[Assertion], format: Format) -> String {
    let failed = results.iter().filter(|a| !a.pass).count();
    match format {
        Format::Json => {
            let mut suites = serde_json::Map::new();
            for a in results {
                let e = suites.entry(a.suite).or_insert(json!(0.0));
                if a.error > e.as_f64().unwrap_or(0.0) || !a.error.is_finite() {
                    *e = json!(if a.error.is_finite() {
                        json!(a.error)
                    } else {
                        json!("inf")
                    });
                }
            }
            let body = json!({
                "manifest": manifest,
                "checks": results,
                "summary": { "total": results.len(), "failed": failed, "max_error": suites },
            });
            let mut s = serde_json::to_string_pretty(&body).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# manifest: {}",
                serde_json::to_string(manifest).unwrap_or_default()
            );
            let _ = writeln!(s, "suite,name,error,tol,status");
            for a in results {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    a.suite,
                    a.name,
                    num(a.error),
                    num(a.tol),
                    if a.pass { "PASS" } else { "FAIL" }
                );
            }
            s
        }
    }
}

pub fn run(opts: &GlobalOpts, suite: Suite, tol: Option<f64>) -> Result<(), CliError> {
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tol must be positive and finite, got {t}"
            )));
        }
    }
    let config = load_config(opts)?;
    let table = if suite.needs_table() {
        Some(load_table(opts)?)
    } else {
        None
    };

    let mut manifest = RunManifest::new(format!("check {}", suite.name()), opts.format);
    manifest.config = Some(config.source.clone());
    manifest
        .input_hashes
        .insert("config".into(), config.hash.clone());
    if let Some(t) = &table {
        manifest.table = Some(t.source.clone());
        manifest
            .input_hashes
            .insert("table".into(), t.table.content_hash());
    }
    if let Some(t) = tol {
        manifest.tolerances.insert("all".into(), t);
    }
    let manifest = manifest.seal();

    let mut h = Harness {
        tol_override: tol,
        results: Vec::new(),
        suite: "",
        config: Some(&config),
        table: table.as_ref(),
        quad: QuadratureSpec::default(),
    };
    for s in suite.members() {
        h.suite = s.name();
        match s {
            Suite::Special => special(&mut h),
            Suite::Voros => voros(&mut h),
            Suite::Surface => surface(&mut h),
            Suite::Determinants => determinants(&mut h),
            Suite::All => unreachable!("expanded by members()"),
        }
    }
    let text = render(&manifest, &h.results, opts.format);
    write_output(opts.out.as_deref(), &text)?;
    let failed = h.results.iter().filter(|a| !a.pass).count();
    if failed > 0 {
        return Err(CliError::CheckFailed(failed));
    }
    Ok(())
}
