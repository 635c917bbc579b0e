use num_bigint::BigInt;
use serde_json::{json, Value};

use super::report::{group_json, int_json, ints_json, Report};
use super::{parse_inputs, Command, Loaded, Verb};
use crate::binomial_ring::{MultiIndex, RingSpec};
use crate::delta_cochains::{bar_construction, cohomology, Cochain, FiniteMagma};
use crate::error::{Error, Result};
use crate::free_dga::{d0_closed_form, single_variable_homotopy, Differential, GeneratorSet, TensorElem};
use crate::massey_magnus::{cross_validate, triple_massey_named, SimplicialAlgebra};
use crate::minimal_model::{build_model, compare_kappa, kappa, realize_group, GroupAudit, ModelStage, WordBasis};
use crate::par;

/// Validates, loads the inputs and dispatches.
pub fn run(cmd: &Command) -> Result<Report> {
    cmd.validate()?;
    let inputs = parse_inputs(&cmd.inputs, cmd.ring)?;
    let ring = inputs.first().map_or(cmd.ring.unwrap_or(RingSpec::Z), |l| l.ring());
    let mut r = Report::new(cmd.verb.name(), ring);
    match cmd.verb {
        Verb::Cohomology => cohomology_cmd(&mut r, &inputs[0])?,
        Verb::MinimalModel => minimal_model_cmd(&mut r, &inputs[0], cmd)?,
        Verb::Kappa => kappa_cmd(&mut r, &inputs[0], cmd)?,
        Verb::Compare => compare_cmd(&mut r, &inputs[0], &inputs[1], cmd)?,
        Verb::Massey => massey_cmd(&mut r, &inputs[0], cmd)?,
        Verb::GroupRealize => group_cmd(&mut r, &inputs[0], cmd)?,
        Verb::Bar => bar_cmd(&mut r, cmd)?,
        Verb::VerifyAxioms => axioms_cmd(&mut r, inputs.first(), cmd)?,
    }
    Ok(r)
}

fn counts(l: &Loaded) -> Vec<usize> {
    (0..=l.delta.dim()).map(|k| l.delta.count(k)).collect()
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(sep)
}

fn tuple(v: &[BigInt]) -> String {
    format!("({})", join(v, ", "))
}

fn cohomology_cmd(r: &mut Report, l: &Loaded) -> Result<()> {
    let c = counts(l);
    r.line(format!("cells: {}", join(&c, " ")));
    let mut groups = Vec::new();
    for k in 0..c.len() {
        let h = cohomology(&l.delta, k)?;
        r.line(format!("H^{k} = {}", h.invariants));
        groups.push(group_json(&h.invariants));
    }
    r.set("cells", json!(c));
    r.set("cohomology", Value::Array(groups));
    Ok(())
}

fn stage_json(s: &ModelStage, d2: Option<usize>) -> Value {
    let names = s.names();
    let new: Vec<Value> = (0..names.len())
        .filter(|&g| s.diff.gens().levels[g] == s.n && s.n > 1)
        .map(|g| json!({ "generator": names[g], "d": s.diff.tau()[g].render(names) }))
        .collect();
    json!({
        "n": s.n,
        "generators": names,
        "differential": new,
        "h2": group_json(&s.h2.invariants),
        "h2_route": s.h2.route,
        "kernel": group_json(&s.analysis.kernel),
        "cokernel": group_json(&s.analysis.cokernel),
        "complete": s.complete,
        "d_squared_checked": d2,
    })
}

fn minimal_model_cmd(r: &mut Report, l: &Loaded, cmd: &Command) -> Result<()> {
    let o = &cmd.options;
    let stages = build_model(&l.delta, o.stages, o.exec)?;
    let mut out = Vec::new();
    for s in &stages {
        let names = s.names();
        r.line(format!("stage {}: generators {}", s.n, names.join(" ")));
        for g in 0..names.len() {
            if s.n > 1 && s.diff.gens().levels[g] == s.n {
                r.line(format!("  d({}) = {}", names[g], s.diff.tau()[g].render(names)));
            }
        }
        r.line(format!("  H^2(M_{}) = {} [{}]", s.n, s.h2.invariants, s.h2.route));
        r.line(format!("  ker H^2(rho_{}) = {}", s.n, s.analysis.kernel));
        r.line(format!("  coker H^2(rho_{}) = {}", s.n, s.analysis.cokernel));
        let rep = s.diff.check_d_squared(o.weight_cap, o.exec);
        if let Some((idx, v)) = &rep.failure {
            return Err(Error::Internal(format!(
                "d^2 != 0 on {} at stage {}: {}",
                idx.render(names),
                s.n,
                v.render(names)
            )));
        }
        r.line(format!("  d^2 = 0 on {} basis elements of weight <= {}", rep.checked, o.weight_cap));
        out.push(stage_json(s, Some(rep.checked)));
    }
    let last = stages.last().expect("nonempty");
    r.line(format!("complete: {}", if last.complete { "yes" } else { "no" }));
    r.set("stages", Value::Array(out));
    r.set("complete", json!(last.complete));
    Ok(())
}

fn kappa_cmd(r: &mut Report, l: &Loaded, cmd: &Command) -> Result<()> {
    let stages = build_model(&l.delta, cmd.options.stages, cmd.options.exec)?;
    let mut out = Vec::new();
    for s in &stages {
        let k = kappa(s);
        r.line(format!("coker H^2(rho_{}) = {}", k.n, k.cokernel));
        r.line(format!("kappa_{} = {}", k.n, k.torsion));
        out.push(json!({ "n": k.n, "cokernel": group_json(&k.cokernel), "kappa": group_json(&k.torsion) }));
    }
    r.set("stages", Value::Array(out));
    Ok(())
}

fn compare_cmd(r: &mut Report, a: &Loaded, b: &Loaded, cmd: &Command) -> Result<()> {
    let o = &cmd.options;
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring().to_string(), b.ring().to_string()));
    }
    let ka = kappa(build_model(&a.delta, o.stages, o.exec)?.last().expect("nonempty"));
    let kb = kappa(build_model(&b.delta, o.stages, o.exec)?.last().expect("nonempty"));
    let v = compare_kappa(&ka, &kb, o.forget_torsion);
    r.line(format!("A: {} coker H^2(rho_{}) = {}", a.name, ka.n, ka.cokernel));
    r.line(format!("B: {} coker H^2(rho_{}) = {}", b.name, kb.n, kb.cokernel));
    if o.forget_torsion {
        r.line("torsion forgotten");
    }
    r.line(format!("verdict: {v}"));
    r.set("a", json!({ "n": ka.n, "cokernel": group_json(&ka.cokernel) }));
    r.set("b", json!({ "n": kb.n, "cokernel": group_json(&kb.cokernel) }));
    r.set("forget_torsion", json!(o.forget_torsion));
    r.set("verdict", json!(v.to_string()));
    Ok(())
}

fn massey_cmd(r: &mut Report, l: &Loaded, cmd: &Command) -> Result<()> {
    let o = &cmd.options;
    let x = &l.delta;
    let h1 = cohomology(x, 1)?;
    // duals of the generators with vanishing exponent sums; a basis of H¹ once there are enough
    let duals: Option<(Vec<Cochain>, Vec<String>)> = l.presentation().and_then(|p| {
        let pc = crate::delta_cochains::presentation_complex(p, x.ring()).ok()?;
        Some((0..p.gens.len()).filter_map(|g| Some((pc.generator_dual(g)?, p.gens[g].clone()))).unzip())
    });
    let (basis, how) = match duals {
        Some((d, names)) if d.len() == h1.generators.len() => (d, format!("duals of {}", names.join(" "))),
        _ => (
            h1.generators.iter().map(|g| Cochain::from_dense(x.ring(), 1, &g.rep)).collect(),
            "cohomology basis".to_string(),
        ),
    };
    let m = basis.len();
    let alg = SimplicialAlgebra::new(x, basis.clone())?;
    r.line(format!("H^1 basis: {} ({how})", (1..=m).map(|i| format!("u{i}")).collect::<Vec<_>>().join(" ")));
    r.line(format!("H^2 = {}", alg.h2().invariants));
    let axes: Vec<String> =
        alg.h2().generators.iter().map(|g| g.order.as_ref().map_or("Z".to_string(), |o| format!("Z/{o}"))).collect();
    r.line(format!("H^2 coordinates: ({})", axes.join(", ")));
    let triples: Vec<[usize; 3]> = if o.triples.is_empty() {
        (0..m * m * m).map(|i| [i / (m * m) + 1, i / m % m + 1, i % m + 1]).collect()
    } else {
        o.triples.clone()
    };
    if let Some(t) = triples.iter().find(|t| t.iter().any(|&i| i > m)) {
        return Err(Error::OutOfRange(format!("triple {t:?} with H^1 of rank {m}")));
    }
    let results = par::map(o.exec, &triples, |t| {
        let names = t.map(|i| format!("u{i}"));
        let u = [&basis[t[0] - 1], &basis[t[1] - 1], &basis[t[2] - 1]];
        triple_massey_named(&alg, u, [&names[0], &names[1], &names[2]])
    });
    let mut out = Vec::new();
    for (t, res) in triples.iter().zip(results) {
        let name = format!("<u{},u{},u{}>", t[0], t[1], t[2]);
        match res {
            Ok(res) => {
                let ind = if res.indeterminacy.is_empty() {
                    "0".to_string()
                } else {
                    res.indeterminacy.iter().map(|v| tuple(v)).collect::<Vec<_>>().join(" ")
                };
                r.line(format!("{name} = {} mod {ind}", tuple(&res.coords)));
                out.push(json!({
                    "triple": t,
                    "coordinates": ints_json(&res.coords),
                    "indeterminacy": res.indeterminacy.iter().map(|v| ints_json(v)).collect::<Vec<_>>(),
                }));
            }
            Err(Error::Precondition(msg)) => {
                r.line(format!("{name} undefined: {msg}"));
                out.push(json!({ "triple": t, "undefined": msg }));
            }
            Err(e) => return Err(e),
        }
    }
    r.set("h1_basis", json!(how));
    r.set("h2", group_json(&alg.h2().invariants));
    r.set("triples", Value::Array(out));
    if let (Some(p), RingSpec::Z) = (l.presentation(), x.ring()) {
        let cv = cross_validate(p, o.exec)?;
        let cal = |c: Option<crate::massey_magnus::Calibration>| c.map_or("all zero".to_string(), |c| c.to_string());
        r.line(format!("magnus check: {} cup values agree, calibration {}", cv.cups.len(), cal(cv.cup)));
        r.line(format!("magnus check: {} massey values agree, calibration {}", cv.masseys.len(), cal(cv.massey)));
        r.set(
            "magnus",
            json!({
                "cup_calibration": cal(cv.cup),
                "cup_values": cv.cups.len(),
                "massey_calibration": cal(cv.massey),
                "massey_values": cv.masseys.len(),
            }),
        );
    }
    Ok(())
}

fn group_cmd(r: &mut Report, l: &Loaded, cmd: &Command) -> Result<()> {
    let o = &cmd.options;
    let stages = build_model(&l.delta, o.stages, o.exec)?;
    let s = stages.last().expect("nonempty");
    let g = realize_group(&s.diff, o.radius, o.exec)?;
    r.line(format!("stage {}: generators {}", s.n, g.names.join(" ")));
    for (lvl, names) in &g.tower {
        r.line(format!("level {lvl}: {}", names.join(" ")));
    }
    for line in g.render_law() {
        r.line(format!("mu {line}"));
    }
    let audit = match &g.audit {
        GroupAudit::Exhaustive { elements } => {
            r.line(format!("group axioms verified exhaustively on {elements} elements"));
            json!({ "exhaustive": elements })
        }
        GroupAudit::NoCounterexample { radius, elements } => {
            r.line(format!("no counterexample to the group axioms on [-{radius},{radius}]^{} ({elements} points)", g.names.len()));
            json!({ "radius": radius, "points": elements })
        }
    };
    if let Some(ord) = g.order() {
        r.line(format!("order = {ord}"));
        r.set("order", int_json(&ord));
    }
    r.set("generators", json!(g.names));
    r.set("law", json!(g.render_law()));
    r.set("tower", Value::Array(g.tower.iter().map(|(l, n)| json!({ "level": l, "generators": n })).collect()));
    r.set("audit", audit);
    Ok(())
}

/// `Zp:3`, `Z/4`, or a comma-separated product of these.
pub fn parse_group(spec: &str) -> Result<FiniteMagma> {
    let mut out: Option<FiniteMagma> = None;
    for part in spec.split(',') {
        let part = part.trim();
        let m: usize = part
            .strip_prefix("Zp:")
            .or_else(|| part.strip_prefix("Z/"))
            .and_then(|s| s.parse().ok())
            .filter(|&m| m >= 1)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("bad group `{part}`") })?;
        let c = FiniteMagma::cyclic(m);
        out = Some(match out {
            Some(g) => g.product(&c),
            None => c,
        });
    }
    out.ok_or_else(|| Error::Parse { line: 0, msg: "empty group".into() })
}

fn bar_cmd(r: &mut Report, cmd: &Command) -> Result<()> {
    let spec = cmd.options.group.as_deref().expect("validated");
    let g = parse_group(spec)?;
    let d = cmd.options.max_dim;
    let x = bar_construction(&g, d, r.ring)?;
    let c: Vec<usize> = (0..=d).map(|k| x.count(k)).collect();
    r.line(format!("group: {spec} (order {})", g.size()));
    r.line(format!("cells: {}", join(&c, " ")));
    let mut groups = Vec::new();
    for k in 0..d {
        let h = cohomology(&x, k)?;
        r.line(format!("H^{k} = {}", h.invariants));
        groups.push(group_json(&h.invariants));
    }
    r.set("group", json!(spec));
    r.set("cells", json!(c));
    r.set("cohomology", Value::Array(groups));
    Ok(())
}

// words ζ_{i1}⊗…⊗ζ_{il} in one variable of total weight ≤ cap, other than 1 and x
fn single_variable_t1(cap: u32) -> Vec<TensorElem> {
    let z = RingSpec::Z;
    (1..=3)
        .flat_map(|len| WordBasis::weighted(&[1], len, if len == 1 { 2 } else { 0 }, cap, None).words)
        .map(|w| TensorElem::word(z, w.0))
        .collect()
}

fn axioms_cmd(r: &mut Report, input: Option<&Loaded>, cmd: &Command) -> Result<()> {
    let o = &cmd.options;
    let z = RingSpec::Z;
    let d0 = Differential::zero(z, GeneratorSet::flat(["x", "y"]));
    let rep = d0.check_d_squared(o.weight_cap, o.exec);
    if !rep.passed() {
        return Err(Error::Internal("d_0^2 != 0 on T({x,y})".into()));
    }
    r.line(format!("d_0 on {{x,y}}: d^2 = 0 on {} basis elements of weight <= {}", rep.checked, o.weight_cap));
    let idx = MultiIndex::enumerate(2, o.weight_cap, None);
    let bad = par::find_first(o.exec, idx.len(), |i| (d0.d_basis(&idx[i]) != d0_closed_form(z, &idx[i])).then_some(()));
    if let Some((i, ())) = bad {
        return Err(Error::Internal(format!("closed form of d_0 fails on {}", idx[i].render(d0.names()))));
    }
    r.line(format!("d_0 closed form: agrees on {} multi-indices", idx.len()));
    let one = Differential::zero(z, GeneratorSet::flat(["x"]));
    let words = single_variable_t1(o.weight_cap);
    for u in &words {
        let hu = single_variable_homotopy(u)?;
        let a = if hu.is_zero() { TensorElem::zero(z) } else { one.apply_d(&hu)? };
        let b = single_variable_homotopy(&one.apply_d(u)?)?;
        if a.add(&b) != *u {
            return Err(Error::Internal(format!("d_0 h + h d_0 != id on {}", u.render(one.names()))));
        }
    }
    r.line(format!("d_0 h + h d_0 = id on {} words of T_1", words.len()));
    let mut checks = json!({
        "d_squared": rep.checked,
        "closed_form": idx.len(),
        "chain_homotopy": words.len(),
    });
    if let Some(l) = input {
        r.line(format!("{}: face identities hold", l.name));
        let mut stages = Vec::new();
        for s in build_model(&l.delta, o.stages, o.exec)? {
            let rep = s.diff.check_d_squared(o.weight_cap, o.exec);
            if !rep.passed() {
                return Err(Error::Internal(format!("d^2 != 0 at stage {}", s.n)));
            }
            r.line(format!("stage {}: d^2 = 0 on {} basis elements", s.n, rep.checked));
            stages.push(json!({ "n": s.n, "d_squared": rep.checked }));
        }
        checks["stages"] = Value::Array(stages);
    }
    r.set("checks", checks);
    Ok(())
}
