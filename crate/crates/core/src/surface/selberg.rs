//! Selberg zeta function and its relatives from a norm table, in the
//! half-plane of absolute convergence.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::table::GeodesicTable;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelbergValue {
    pub value: Complex64,
    /// Bound on the discarded l > l_max terms.
    pub l_tail: f64,
    /// Heuristic size of the norm tail beyond the cutoff, from the change
    /// between cutoffs X/2 and X.
    pub norm_tail: f64,
}

impl SelbergValue {
    pub fn error(&self) -> f64 {
        self.l_tail + self.norm_tail
    }
}

fn check_half_plane(s: Complex64) -> Result<()> {
    if !(s.re > 1.0) {
        return Err(Error::domain(format!(
            "Euler product needs Re s > 1, got {s}"
        )));
    }
    Ok(())
}

/// Smallest l_max with N_min^{-l Re s} < 0.01 tol.
pub fn default_l_max(s_re: f64, table: &GeodesicTable, tol: f64) -> u32 {
    match table.min_norm() {
        None => 1,
        Some(n) => {
            let per = n.ln() * s_re;
            let need = ((0.01 * tol).ln().abs() / per).ceil();
            need.clamp(1.0, 200.0) as u32
        }
    }
}

/// sum over table and 1 <= l <= l_max of weight(l, N, log N) N^{-l s},
/// with the matching l-tail bound and X/2-versus-X tail estimate.
fn table_sum<W>(s: Complex64, table: &GeodesicTable, l_max: u32, weight: W) -> SelbergValue
where
    W: Fn(u32, f64, f64) -> f64,
{
    let half = 0.5 * table.max_norm;
    let mut total = Complex64::new(0.0, 0.0);
    let mut upper = Complex64::new(0.0, 0.0);
    let mut l_tail = 0.0;
    for e in &table.entries {
        let ln = e.log_norm;
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 1..=l_max {
            let x = -(l as f64) * ln;
            acc += (s * x).exp() * weight(l, e.norm, ln);
        }
        let lt = (l_max + 1) as f64;
        // geometric bound on l > l_max using the ratio N^{-Re s}
        let q = (-s.re * ln).exp();
        let w = weight(l_max + 1, e.norm, ln).abs();
        l_tail += e.count as f64 * w * (-lt * s.re * ln).exp() / (1.0 - q);
        let v = acc * e.count as f64;
        total += v;
        if e.norm > half {
            upper += v;
        }
    }
    SelbergValue {
        value: total,
        l_tail,
        norm_tail: upper.norm(),
    }
}

/// log Z(s) = -sum_{P0} sum_l N^{-ls} / (l (1 - N^{-l})).
pub fn selberg_log_z(s: Complex64, table: &GeodesicTable, l_max: u32) -> Result<SelbergValue> {
    check_half_plane(s)?;
    Ok(table_sum(s, table, l_max, |l, n, _| {
        -1.0 / (l as f64 * (1.0 - n.powi(-(l as i32))))
    }))
}

/// k-th s-derivative of log Z.
pub fn selberg_log_derivative(
    k: u32,
    s: Complex64,
    table: &GeodesicTable,
    l_max: u32,
) -> Result<SelbergValue> {
    check_half_plane(s)?;
    Ok(table_sum(s, table, l_max, |l, n, ln| {
        let lf = l as f64;
        -(-lf * ln).powi(k as i32) / (lf * (1.0 - n.powi(-(l as i32))))
    }))
}

/// log Z^{(r)}(s) = -sum_{P0} sum_l N^{-ls} / (l^r (log N)^{r-1} (1 - N^{-l})).
pub fn poly_selberg_log(
    r: u32,
    s: Complex64,
    table: &GeodesicTable,
    l_max: u32,
) -> Result<SelbergValue> {
    if r == 0 {
        return Err(Error::domain("depth r must be positive"));
    }
    check_half_plane(s)?;
    Ok(table_sum(s, table, l_max, |l, n, ln| {
        let lf = l as f64;
        -1.0 / (lf.powi(r as i32) * ln.powi(r as i32 - 1) * (1.0 - n.powi(-(l as i32))))
    }))
}

/// sum over primes P (all powers) of Lambda(P) N(P)^{-z} (log N(P))^{-r},
/// which equals -log Z^{(r)}(z).
pub fn lambda_dirichlet(
    r: u32,
    z: Complex64,
    table: &GeodesicTable,
    l_max: u32,
) -> Result<SelbergValue> {
    let v = poly_selberg_log(r, z, table, l_max)?;
    Ok(SelbergValue {
        value: -v.value,
        ..v
    })
}

/// The truncated Euler product prod_{P0} prod_{n <= n_cut} (1 - N^{-(s+n)}).
pub fn euler_product(s: Complex64, table: &GeodesicTable, n_cut: u32) -> Result<Complex64> {
    check_half_plane(s)?;
    let mut logp = Complex64::new(0.0, 0.0);
    for e in &table.entries {
        for n in 0..=n_cut {
            let t = ((s + n as f64) * -e.log_norm).exp();
            logp += (Complex64::new(1.0, 0.0) - t).ln() * e.count as f64;
        }
    }
    Ok(logp.exp())
}

/// A sum of exponentials sum_k c_k e^{-y lambda_k} in y >= 0, together with
/// its evaluator and Taylor data at y = 0.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExpSum {
    pub terms: Vec<(Complex64, f64)>,
}

impl ExpSum {
    /// (Z'/Z)(z + y) = sum_{P0, l} count log N / (1 - N^{-l}) N^{-l(z+y)}.
    pub fn selberg_log_derivative(z: Complex64, table: &GeodesicTable, l_max: u32) -> Self {
        let mut terms = Vec::with_capacity(table.entries.len() * l_max as usize);
        for e in &table.entries {
            for l in 1..=l_max {
                let lam = l as f64 * e.log_norm;
                let w = e.count as f64 * e.log_norm / (1.0 - e.norm.powi(-(l as i32)));
                terms.push(((z * -lam).exp() * w, lam));
            }
        }
        ExpSum { terms }
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(c, lam)| c * (-y * lam).exp())
            .sum()
    }

    /// j-th Taylor coefficient at 0.
    pub fn taylor(&self, j: usize) -> Complex64 {
        let mut fact = 1.0;
        for i in 1..=j {
            fact *= i as f64;
        }
        self.terms
            .iter()
            .map(|&(c, lam)| c * (-lam).powi(j as i32))
            .sum::<Complex64>()
            / fact
    }

    /// Smallest decay rate.
    pub fn min_rate(&self) -> Option<f64> {
        self.terms.iter().map(|t| t.1).reduce(f64::min)
    }
}
