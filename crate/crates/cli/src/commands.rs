use serde::Serialize;
use serde_json::{json, Value};

use nchrr_core::constructors::{frobenius_check, orbifold_gram, orbifold_gram_direct, ringel_chi};
use nchrr_core::euler::{euler_chain, hrr_verify, pair};
use nchrr_core::hochschild::{b, hh0_basis_labels, hh_dimensions, reduce_hh0};
use nchrr_core::json::ChainSpec;
use nchrr_core::perfect::chi;
use nchrr_core::random;
use nchrr_core::{DgAlgebra, HochschildChain, SparseMatrix};

use crate::workspace::Workspace;

/// A finished report. `ok` is false when a verification failed.
pub struct Output {
    pub ok: bool,
    pub json: Value,
    pub text: String,
}

/// Errors that are the caller's fault, such as unknown names.
#[derive(Debug)]
pub struct UsageError(pub String);

type CmdResult = Result<Output, UsageError>;

fn lookup<'a, T>(map: &'a std::collections::BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T, UsageError> {
    map.get(name).ok_or_else(|| UsageError(format!("no valid {kind} named {name:?}")))
}

/// Names to run on: the one requested, or every entry.
fn selection<T>(map: &std::collections::BTreeMap<String, T>, kind: &str, name: Option<&str>) -> Result<Vec<String>, UsageError> {
    match name {
        Some(n) => lookup(map, kind, n).map(|_| vec![n.to_string()]),
        None => Ok(map.keys().cloned().collect()),
    }
}

fn matrix_strings(m: &SparseMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

fn matrix_text(m: &SparseMatrix) -> String {
    let rows: Vec<String> = matrix_strings(m).into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

/// `c a0[a1|...|an]` with basis labels, terms in basis order.
pub fn chain_text(alg: &DgAlgebra, c: &HochschildChain) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let labels = alg.labels();
    let mut out = String::new();
    for (k, (w, x)) in c.terms().iter().enumerate() {
        let neg = x.is_negative();
        let mag = if neg { -x.clone() } else { x.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(&labels[w.a0]);
        if !w.letters.is_empty() {
            let ls: Vec<&str> = w.letters.iter().map(|&l| labels[l].as_str()).collect();
            out.push_str(&format!("[{}]", ls.join("|")));
        }
    }
    out
}

pub fn validate(ws: &Workspace) -> CmdResult {
    let ok = ws.failures.is_empty();
    let mut text = String::new();
    for f in &ws.failures {
        text.push_str(&format!("FAIL {}: {}\n", f.object, f.message));
    }
    text.push_str(&format!(
        "{} algebras, {} groups, {} modules, {} Frobenius data, {} chains valid\n",
        ws.algebras.len(),
        ws.groups.len(),
        ws.modules.len(),
        ws.frobenius.len(),
        ws.chains.len()
    ));
    Ok(Output {
        ok,
        json: json!({
            "ok": ok,
            "failures": ws.failures,
            "valid": {
                "algebras": ws.algebras.keys().collect::<Vec<_>>(),
                "groups": ws.groups.keys().collect::<Vec<_>>(),
                "modules": ws.modules.keys().collect::<Vec<_>>(),
                "frobenius": ws.frobenius.keys().collect::<Vec<_>>(),
                "chains": ws.chains.keys().collect::<Vec<_>>(),
            }
        }),
        text,
    })
}

pub fn hrr(ws: &Workspace, m: Option<&str>, n: Option<&str>) -> CmdResult {
    let pairs: Vec<(String, String)> = match (m, n) {
        (Some(m), Some(n)) => {
            let (a, c) = (lookup(&ws.modules, "module", m)?, lookup(&ws.modules, "module", n)?);
            if a.algebra != c.algebra {
                return Err(UsageError(format!("{m:?} and {n:?} live over different algebras")));
            }
            vec![(m.to_string(), n.to_string())]
        }
        (None, None) => {
            let mut out = Vec::new();
            for (a, x) in &ws.modules {
                for (c, y) in &ws.modules {
                    if x.algebra == y.algebra {
                        out.push((a.clone(), c.clone()));
                    }
                }
            }
            out
        }
        _ => return Err(UsageError("give both --m and --n, or neither".into())),
    };
    let mut ok = true;
    let mut results = Vec::new();
    let mut text = String::new();
    for (a, c) in &pairs {
        let report = hrr_verify(&ws.modules[a].module, &ws.modules[c].module).map_err(|e| UsageError(format!("{a}, {c}: {e}")))?;
        ok &= report.equal;
        text.push_str(&format!(
            "chi({a}, {c}) = {}  pairing = {}  tensor = {}  {}\n",
            report.chi_oracle,
            report.pairing,
            report.rr1_tensor,
            if report.equal { "equal" } else { "MISMATCH" }
        ));
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["m"] = json!(a);
        v["n"] = json!(c);
        results.push(v);
    }
    let json = if m.is_some() {
        results.pop().expect("one pair")
    } else {
        json!({ "ok": ok, "results": results })
    };
    Ok(Output { ok, json, text })
}

pub fn eu(ws: &Workspace, module: Option<&str>) -> CmdResult {
    let mut results = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for name in selection(&ws.modules, "module", module)? {
        let entry = &ws.modules[&name];
        let alg = &ws.algebras[&entry.algebra];
        let c = euler_chain(&entry.module).map_err(|e| UsageError(format!("{name}: {e}")))?;
        let cycle = b(alg, &c).is_zero();
        ok &= cycle;
        let mut v = json!({
            "module": name,
            "algebra": entry.algebra,
            "chain": ChainSpec::from_chain(&c),
            "text": chain_text(alg, &c),
            "cycle": cycle,
        });
        text.push_str(&format!("eu({name}) = {}\n", chain_text(alg, &c)));
        if alg.has_zero_differential() {
            let coords = reduce_hh0(alg, &c.length_zero()).map_err(|e| UsageError(e.to_string()))?;
            let coords: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
            let labels = hh0_basis_labels(alg);
            text.push_str(&format!("  in HH_0 on [{}]: [{}]\n", labels.join(", "), coords.join(", ")));
            v["hh0"] = json!({ "basis": labels, "coordinates": coords });
        }
        results.push(v);
    }
    Ok(Output {
        ok,
        json: json!({ "ok": ok, "results": results }),
        text,
    })
}

pub fn pair_cmd(ws: &Workspace, left: Option<&str>, right: Option<&str>) -> CmdResult {
    let pairs: Vec<(String, String)> = match (left, right) {
        (Some(l), Some(r)) => {
            let (x, y) = (lookup(&ws.chains, "chain", l)?, lookup(&ws.chains, "chain", r)?);
            if x.algebra != y.algebra {
                return Err(UsageError(format!("{l:?} and {r:?} live over different algebras")));
            }
            vec![(l.to_string(), r.to_string())]
        }
        (None, None) => {
            let mut out = Vec::new();
            for (a, x) in &ws.chains {
                for (c, y) in &ws.chains {
                    if x.algebra == y.algebra {
                        out.push((a.clone(), c.clone()));
                    }
                }
            }
            out
        }
        _ => return Err(UsageError("give both --left and --right, or neither".into())),
    };
    let mut ok = true;
    let mut results = Vec::new();
    let mut text = String::new();
    for (l, r) in pairs {
        let alg = &ws.algebras[&ws.chains[&l].algebra];
        match pair(alg, &ws.chains[&l].chain, &ws.chains[&r].chain) {
            Ok((value, path)) => {
                text.push_str(&format!("<{l}, {r}> = {value}  ({})\n", serde_json::to_value(path).expect("path")).replace('"', ""));
                results.push(json!({ "left": l, "right": r, "value": value.to_string(), "path": path }));
            }
            Err(e) => {
                ok = false;
                text.push_str(&format!("<{l}, {r}>: {e}\n"));
                results.push(json!({ "left": l, "right": r, "error": e.to_string() }));
            }
        }
    }
    Ok(Output {
        ok,
        json: json!({ "ok": ok, "results": results }),
        text,
    })
}

pub fn hh(ws: &Workspace, algebra: Option<&str>, degrees: &[i64], bar_cap: usize) -> CmdResult {
    let mut results = Vec::new();
    let mut text = String::new();
    for name in selection(&ws.algebras, "algebra", algebra)? {
        let alg = &ws.algebras[&name];
        for &n in degrees {
            let d = hh_dimensions(alg, n, bar_cap).map_err(|e| UsageError(e.to_string()))?;
            text.push_str(&format!(
                "dim HH({name}) in degree {n} = {}{}\n",
                d.dimension,
                if d.exact { "" } else { "  (truncated, not certified exact)" }
            ));
            results.push(json!({ "algebra": name, "degree": n, "dimension": d.dimension, "exact": d.exact }));
        }
    }
    Ok(Output {
        ok: true,
        json: json!({ "ok": true, "bar_cap": bar_cap, "results": results }),
        text,
    })
}

#[derive(Serialize)]
struct RingelCase {
    m: String,
    n: String,
    ringel: String,
    chi: i64,
    equal: bool,
}

pub fn ringel(ws: &Workspace, quiver: Option<&str>, trials: usize, seed: u64) -> CmdResult {
    let mut rng = random::rng(seed);
    let mut ok = true;
    let mut results = Vec::new();
    let mut text = String::new();
    for name in selection(&ws.quivers, "quiver", quiver)? {
        let q = &ws.quivers[&name];
        let d = q.homdim_matrix();
        let err = |e: nchrr_core::constructors::DirectedError| UsageError(format!("{name}: {e}"));
        let mut modules = Vec::new();
        for i in 0..q.objects() {
            let label = &q.data().objects[i];
            modules.push((format!("S{label}"), q.simple_representation(i).map_err(err)?));
        }
        for i in 0..q.objects() {
            let label = &q.data().objects[i];
            modules.push((format!("P{label}"), q.projective_representation(i).map_err(err)?));
        }
        for t in 0..trials {
            modules.push((format!("random{t}"), q.random_module(&mut rng).map_err(err)?));
        }
        let resolved = modules
            .iter()
            .map(|(l, m)| Ok((l.clone(), q.dim_vector(m), q.resolution(m).map_err(err)?)))
            .collect::<Result<Vec<_>, UsageError>>()?;
        let mut cases = Vec::new();
        // simples and projectives against each other; random modules in consecutive pairs
        let fixed = 2 * q.objects();
        let mut index_pairs: Vec<(usize, usize)> = (0..fixed).flat_map(|i| (0..fixed).map(move |j| (i, j))).collect();
        index_pairs.extend((0..trials).map(|t| (fixed + t, fixed + (t + 1) % trials.max(1))));
        for (i, j) in index_pairs {
            let (lm, dm, pm) = &resolved[i];
            let (ln, dn, pn) = &resolved[j];
            let r = ringel_chi(dm, dn, &d).map_err(err)?;
            let c = chi(pm, pn).map_err(|e| UsageError(e.to_string()))?;
            let equal = r == ws.field.from_i64(c);
            ok &= equal;
            cases.push(RingelCase {
                m: lm.clone(),
                n: ln.clone(),
                ringel: r.to_string(),
                chi: c,
                equal,
            });
        }
        let agreed = cases.iter().filter(|c| c.equal).count();
        text.push_str(&format!("{name}: {agreed}/{} Ringel values agree with chi\n", cases.len()));
        for c in cases.iter().filter(|c| !c.equal) {
            text.push_str(&format!("  MISMATCH chi({}, {}) = {} but Ringel gives {}\n", c.m, c.n, c.chi, c.ringel));
        }
        results.push(json!({ "quiver": name, "homdims": matrix_strings(&d), "cases": cases, "agreed": agreed }));
    }
    Ok(Output {
        ok,
        json: json!({ "ok": ok, "seed": seed, "results": results }),
        text,
    })
}

pub fn orbifold(ws: &Workspace, group: Option<&str>) -> CmdResult {
    let mut ok = true;
    let mut results = Vec::new();
    let mut text = String::new();
    let names: Vec<String> = match group {
        Some(_) => selection(&ws.groups, "group", group)?,
        None => ws.groups.iter().filter(|(_, g)| g.action.is_some()).map(|(n, _)| n.clone()).collect(),
    };
    for name in names {
        let g = &ws.groups[&name];
        let chars = orbifold_gram(g).map_err(|e| UsageError(format!("{name}: {e}")))?;
        let direct = orbifold_gram_direct(g).map_err(|e| UsageError(format!("{name}: {e}")))?;
        let equal = chars == direct;
        ok &= equal;
        text.push_str(&format!("{name}: {}{}\n", matrix_text(&chars), if equal { "" } else { "  MISMATCH with direct supertrace" }));
        results.push(json!({
            "group": name,
            "gram": matrix_strings(&chars),
            "direct": matrix_strings(&direct),
            "equal": equal,
        }));
    }
    Ok(Output {
        ok,
        json: json!({ "ok": ok, "results": results }),
        text,
    })
}

pub fn frobenius(ws: &Workspace, name: Option<&str>, trials: usize, seed: u64) -> CmdResult {
    let mut rng = random::rng(seed);
    let mut ok = true;
    let mut results = Vec::new();
    let mut text = String::new();
    for n in selection(&ws.frobenius, "Frobenius datum", name)? {
        let report = frobenius_check(&ws.frobenius[&n], trials, &mut rng);
        // graded data are reported but not held to the identity
        if !report.experimental {
            ok &= report.passed();
        }
        text.push_str(&format!(
            "{n}: {}/{} agreements; gamma copairing {}, symmetric {}; Phi identity {}, cyclic {}{}\n",
            report.agreed,
            report.trials,
            report.gamma_copairing,
            report.gamma_symmetric,
            report.phi_identity,
            report.phi_cyclic,
            if report.experimental { "  (experimental: graded)" } else { "" }
        ));
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["name"] = json!(n);
        results.push(v);
    }
    Ok(Output {
        ok,
        json: json!({ "ok": ok, "seed": seed, "results": results }),
        text,
    })
}
