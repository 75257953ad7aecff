//! The `bounds` command: evaluates one bound function over a grid of
//! arguments.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::Args;
use formstrength::algebra::{BoundValue, CharClass};
use formstrength::bounds::{self, BMode, DEFAULT_EXACT_CAP};
use serde_json::{json, Value};

use crate::output::{csv_string, Format, Outcome};

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// alpha, alpha-eta, A2, etaA2, K3, K4, J2, J3, A3, J-from-K, etaA3,
    /// etaA-SJ, etaA-SJrank, B2, etaB2, pd-quadrics, etaB, C, mvclpse.
    function: String,
    /// Arguments take a value `3`, a range `1..5` or a list `1,4,9`.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    n1: Option<String>,
    #[arg(long)]
    n2: Option<String>,
    #[arg(long)]
    n3: Option<String>,
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    i: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// Dimension sequence, e.g. `0,0,1`.
    #[arg(long)]
    delta: Option<String>,
    /// Characteristic class: not23, 2 or 3.
    #[arg(long, default_value = "not23")]
    cc: CharClass,
    /// dominating or exact (for etaB).
    #[arg(long, default_value = "dominating")]
    mode: String,
    /// Largest distributed count in exact mode.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: u64,
    /// Values with more digits go to a side file.
    #[arg(long, default_value_t = 200)]
    digits_limit: usize,
    /// Directory for side files.
    #[arg(long, default_value = ".")]
    side_dir: PathBuf,
}

fn parse_values(s: &str) -> anyhow::Result<Vec<u64>> {
    let bad = || anyhow!("bad argument list `{s}`");
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a > b {
            bail!(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

enum Cells {
    One(BoundValue),
    Many(Vec<BoundValue>),
    Pair(BoundValue, BoundValue),
}

type Point = BTreeMap<&'static str, u64>;

struct Function {
    name: &'static str,
    /// Grid parameters; a trailing `?` marks an optional one.
    params: &'static [&'static str],
    uses_delta: bool,
}

const FUNCTIONS: &[Function] = &[
    Function { name: "alpha", params: &["n"], uses_delta: false },
    Function { name: "alpha-eta", params: &["eta", "n"], uses_delta: false },
    Function { name: "A2", params: &["n1", "n2"], uses_delta: false },
    Function { name: "etaA2", params: &["eta", "n1", "n2"], uses_delta: false },
    Function { name: "K3", params: &["k"], uses_delta: false },
    Function { name: "K4", params: &["k"], uses_delta: false },
    Function { name: "J2", params: &["k"], uses_delta: false },
    Function { name: "J3", params: &["k"], uses_delta: false },
    Function { name: "A3", params: &["n"], uses_delta: false },
    Function { name: "J-from-K", params: &["i", "k"], uses_delta: false },
    Function { name: "etaA3", params: &["eta", "n1", "n2", "n3"], uses_delta: false },
    Function { name: "etaA-SJ", params: &["eta"], uses_delta: true },
    Function { name: "etaA-SJrank", params: &["eta"], uses_delta: true },
    Function { name: "B2", params: &["n1", "n2"], uses_delta: false },
    Function { name: "etaB2", params: &["eta?", "n1", "n2"], uses_delta: false },
    Function { name: "pd-quadrics", params: &["n"], uses_delta: false },
    Function { name: "etaB", params: &["eta?"], uses_delta: true },
    Function { name: "C", params: &["r", "s", "d", "eta?"], uses_delta: false },
    Function { name: "mvclpse", params: &["a", "k", "m"], uses_delta: false },
];

fn lookup(name: &str) -> anyhow::Result<&'static Function> {
    let key = name.to_ascii_lowercase().replace('_', "-");
    FUNCTIONS
        .iter()
        .find(|f| f.name.to_ascii_lowercase() == key)
        .ok_or_else(|| anyhow!(formstrength::Error::InvalidArgument(format!("unknown bound function `{name}`"))))
}

impl BoundsArgs {
    fn raw(&self, p: &str) -> Option<&String> {
        match p {
            "n" => self.n.as_ref(),
            "k" => self.k.as_ref(),
            "n1" => self.n1.as_ref(),
            "n2" => self.n2.as_ref(),
            "n3" => self.n3.as_ref(),
            "eta" => self.eta.as_ref(),
            "i" => self.i.as_ref(),
            "r" => self.r.as_ref(),
            "s" => self.s.as_ref(),
            "d" => self.d.as_ref(),
            "a" => self.a.as_ref(),
            "m" => self.m.as_ref(),
            _ => None,
        }
    }
}

fn grid(func: &Function, args: &BoundsArgs) -> anyhow::Result<Vec<Point>> {
    let mut points = vec![Point::new()];
    for p in func.params {
        let (name, optional) = match p.strip_suffix('?') {
            Some(n) => (n, true),
            None => (*p, false),
        };
        let name: &'static str = FUNCTIONS
            .iter()
            .flat_map(|f| f.params.iter())
            .map(|q| q.trim_end_matches('?'))
            .find(|q| *q == name)
            .expect("listed parameter");
        let values = match args.raw(name) {
            Some(s) => parse_values(s)?,
            None if optional => continue,
            None => bail!(formstrength::Error::InvalidArgument(format!("{} needs --{name}", func.name))),
        };
        points = points
            .into_iter()
            .flat_map(|pt| {
                values.iter().map(move |&v| {
                    let mut q = pt.clone();
                    q.insert(name, v);
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

fn small(v: u64, what: &str) -> anyhow::Result<u32> {
    u32::try_from(v).with_context(|| format!("{what} = {v} is too large"))
}

fn evaluate(func: &Function, pt: &Point, delta: &[u64], args: &BoundsArgs) -> anyhow::Result<Cells> {
    let g = |p: &str| pt[p];
    let eta = pt.get("eta").map(|&e| small(e, "eta")).transpose()?;
    let cc = args.cc;
    let one = |v: formstrength::Result<BoundValue>| -> anyhow::Result<Cells> { Ok(Cells::One(v?)) };
    match func.name {
        "alpha" => one(bounds::alpha(g("n"))),
        "alpha-eta" => one(bounds::alpha_eta(small(g("eta"), "eta")?, g("n"))),
        "A2" => one(bounds::a2(g("n1"), g("n2"))),
        "etaA2" => one(bounds::eta_a2(small(g("eta"), "eta")?, g("n1"), g("n2"))),
        "K3" => one(bounds::k3(cc, g("k"))),
        "K4" => one(bounds::k4(cc, g("k"))),
        "J2" => Ok(Cells::One(bounds::j2(g("k")))),
        "J3" => Ok(Cells::One(bounds::j3(cc, g("k")))),
        "A3" => one(bounds::a3(cc, g("n"))),
        "J-from-K" => one(bounds::j_from_k(small(g("i"), "i")?, g("k"))),
        "etaA3" => Ok(Cells::Many(
            bounds::eta_a3(small(g("eta"), "eta")?, g("n1"), g("n2"), g("n3"), cc)?.0,
        )),
        "etaA-SJ" => Ok(Cells::Many(bounds::eta_a_sj(small(g("eta"), "eta")?, delta, cc)?.0)),
        "etaA-SJrank" => Ok(Cells::Many(bounds::eta_a_sjrank(small(g("eta"), "eta")?, delta, cc)?.0)),
        "B2" => one(bounds::eta_b2(None, g("n1"), g("n2"))),
        "etaB2" => one(bounds::eta_b2(eta, g("n1"), g("n2"))),
        "pd-quadrics" => one(bounds::pd_bound_quadrics(g("n"))),
        "etaB" => {
            let mode = match args.mode.as_str() {
                "exact" => BMode::Exact { cap: args.cap },
                other => other.parse()?,
            };
            one(bounds::eta_b_general(eta, delta, mode, cc))
        }
        "C" => one(bounds::c_bound(g("r"), g("s"), g("d"), eta, cc)),
        "mvclpse" => {
            let (km, bm) = bounds::mvclpse_params(g("a"), g("k"), small(g("m"), "m")?);
            Ok(Cells::Pair(km, bm))
        }
        _ => unreachable!("listed function"),
    }
}

struct SideFiles<'a> {
    dir: &'a Path,
    limit: usize,
}

impl SideFiles<'_> {
    /// The decimal string, or `{"digits", "file"}` with the digits written out.
    fn cell(&self, v: &BoundValue, stem: &str) -> anyhow::Result<Value> {
        let s = v.to_string();
        if s.len() <= self.limit {
            return Ok(Value::String(s));
        }
        let path = self.dir.join(format!("{stem}.txt"));
        std::fs::write(&path, format!("{s}\n")).with_context(|| format!("writing {}", path.display()))?;
        Ok(json!({ "digits": s.len(), "file": path.display().to_string() }))
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(o) => format!("{} digits in {}", o["digits"], o["file"].as_str().unwrap_or("")),
        Value::Array(a) => format!("({})", a.iter().map(cell_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

pub fn run(args: &BoundsArgs, format: Format) -> anyhow::Result<Outcome> {
    let func = lookup(&args.function)?;
    let delta: Vec<u64> = match (&args.delta, func.uses_delta) {
        (Some(s), true) => s.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>()
            .map_err(|_| anyhow!(formstrength::Error::InvalidArgument(format!("bad dimension sequence `{s}`"))))?,
        (None, true) => bail!(formstrength::Error::InvalidArgument(format!("{} needs --delta", func.name))),
        _ => Vec::new(),
    };
    let audited = matches!(func.name, "B2" | "etaB2");
    let side = SideFiles {
        dir: &args.side_dir,
        limit: args.digits_limit,
    };
    let mut rows = Vec::new();
    for pt in grid(func, args)? {
        let mut arg_list: Vec<String> = pt.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if func.uses_delta {
            arg_list.push(format!("delta=({})", delta.iter().map(u64::to_string).collect::<Vec<_>>().join(",")));
        }
        let stem = format!("{}_{}", func.name, arg_list.join("_").replace(['=', '(', ')', ','], "-"));
        let value = match evaluate(func, &pt, &delta, args)? {
            Cells::One(v) => side.cell(&v, &stem)?,
            Cells::Many(vs) => Value::Array(
                vs.iter()
                    .enumerate()
                    .map(|(i, v)| side.cell(v, &format!("{stem}_{}", i + 1)))
                    .collect::<anyhow::Result<_>>()?,
            ),
            Cells::Pair(a, b) => json!({
                "k_m": side.cell(&a, &format!("{stem}_k"))?,
                "b_m": side.cell(&b, &format!("{stem}_b"))?,
            }),
        };
        let mut row = json!({ "args": pt, "value": value });
        if func.uses_delta {
            row["args"]["delta"] = json!(delta);
        }
        if audited {
            let eta = if func.name == "B2" { None } else { pt.get("eta").map(|&e| e as u32) };
            let a = bounds::eta_b2_audit(eta, pt["n1"], pt["n2"])?;
            row["closed_form"] = json!(a.closed_form.to_string());
            row["discrepancy"] = json!(a.discrepancy.to_string());
            row["differs"] = json!(a.differs());
            row["clamped"] = json!(a.clamped);
        }
        rows.push((arg_list.join(" "), row));
    }
    let stdout = match format {
        Format::Json => {
            let doc = json!({
                "function": func.name,
                "rows": rows.iter().map(|(_, r)| r.clone()).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            let mut header = vec!["function", "args", "value"];
            if audited {
                header.extend(["closed_form", "discrepancy", "clamped"]);
            }
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(a, r)| {
                    let mut line = vec![func.name.to_string(), a.clone(), cell_text(&r["value"])];
                    if audited {
                        for key in ["closed_form", "discrepancy", "clamped"] {
                            line.push(cell_text(&r[key]));
                        }
                    }
                    line
                })
                .collect();
            csv_string(&header, &table)?
        }
    };
    Ok(Outcome::text(stdout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_values("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_values("1,4,9").unwrap(), vec![1, 4, 9]);
        assert_eq!(parse_values("7").unwrap(), vec![7]);
        assert!(parse_values("5..2").is_err());
        assert!(parse_values("x").is_err());
    }

    #[test]
    fn names_are_case_insensitive() {
        assert_eq!(lookup("etab2").unwrap().name, "etaB2");
        assert_eq!(lookup("pd_quadrics").unwrap().name, "pd-quadrics");
        assert!(lookup("nope").is_err());
    }
}
