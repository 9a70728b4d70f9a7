//! The `moments` command.

use mslevy::moments::{carleman_diagnostic, ln_stieltjes_moment};
use mslevy::multiscale::one_sided_pair;
use mslevy::specfun::SeriesControl;

use crate::error::{CliError, CliResult, Context};
use crate::manifest::RunManifest;

/// Parses an inclusive order range `n0..n1`.
pub fn parse_orders(s: &str) -> CliResult<(u32, u32)> {
    let bad = || CliError::usage(format!("--orders expects n0..n1, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let n0: u32 = a.trim().parse().map_err(|_| bad())?;
    let n1: u32 = b.trim().parse().map_err(|_| bad())?;
    if n1 < n0 {
        return Err(CliError::usage(format!("empty order range {n0}..{n1}")));
    }
    Ok((n0, n1))
}

pub struct MomentArgs {
    pub alpha1: f64,
    pub alpha2: f64,
    pub t: f64,
    pub orders: String,
    pub terms: u32,
}

pub fn moments(a: &MomentArgs) -> CliResult<String> {
    let (n0, n1) = parse_orders(&a.orders)?;
    if !(a.t > 0.0 && a.t.is_finite()) {
        return Err(CliError::usage(format!("t = {} must be positive", a.t)));
    }
    let pair = one_sided_pair(a.alpha1, a.alpha2).map_err(|e| CliError::usage(e.to_string()))?;
    let n_max = a.terms.max(n1);
    for n in 1..=n_max {
        let l = ln_stieltjes_moment(&pair, n, a.t).context(|| format!("moment of order {n}"))?;
        if !l.is_finite() {
            return Err(CliError::numeric(
                &format!("moment of order {n}"),
                mslevy::Error::Overflow(format!("ln rho({n}) = {l}")),
            ));
        }
    }
    let r = carleman_diagnostic(&pair, a.t, n_max, &SeriesControl::default())
        .context(|| "carleman_diagnostic".into())?;
    let m = RunManifest::new("moments", "moments-csv/1")
        .param("alpha1", a.alpha1)
        .param("alpha2", a.alpha2)
        .param("t", a.t)
        .param("orders", format!("{n0}..{n1}"))
        .param("terms", n_max)
        .column("n", "plumbing")
        .column("rho", "stieltjes_moment")
        .column("carleman_term", "carleman")
        .column("partial_sum", "carleman");
    let mut s = m.header();
    s.push_str(&r.to_csv_orders(n0, n1));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_ranges() {
        assert_eq!(parse_orders("0..5").unwrap(), (0, 5));
        assert_eq!(parse_orders("3..3").unwrap(), (3, 3));
        assert!(parse_orders("5..2").is_err());
        assert!(parse_orders("5").is_err());
        assert!(parse_orders("a..2").is_err());
    }
}
