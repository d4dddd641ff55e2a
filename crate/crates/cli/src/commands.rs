use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rb_renorm::birkhoff::{
    atkinson_closed_form_table, atkinson_solve, degree_cutoff, phi_minus_nonrecursive, Character,
};
use rb_renorm::graph::{catalog, FeynmanGraph};
use rb_renorm::hopf::{GeneratorRegistry, HopfElement, HopfError, Monomial, RegistryConfig, TensorElement};
use rb_renorm::motive::{self, Arrangement, BlowupStep, KauszStratum, LefschetzPolynomial};
use rb_renorm::rb::{rb_defect, AlgebraContextSpec, RBAlgebraDescriptor, RbAlgebra, RbElement, RbKind, RotaBaxterAlgebra};
use rb_renorm::symanzik::{self, SymanzikData};
use rb_renorm::MultiPoly;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{read, read_json, CliError};

/// The generator library preloaded into every registry.
pub const LIBRARY: &[(&str, &str)] = &[
    ("B", "bubble"),
    ("gamma2", "double_bubble"),
    ("sunset", "sunset"),
    ("triangle", "triangle"),
    ("eye", "eye"),
    ("chain3", "bubble_chain3"),
    ("chain4", "bubble_chain4"),
    ("X", "nested_eye"),
    ("tadpole", "tadpole"),
];

pub fn run(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Graph(c) => graph(c),
        Command::Hopf(c) => hopf(c),
        Command::Birkhoff(c) => birkhoff(c),
        Command::Symanzik(c) => symanzik(c),
        Command::Motive(c) => motive(c),
        Command::Rb(c) => rb(c, cli.seed),
    }
}

fn load_graph(path: &Path) -> Result<FeynmanGraph, CliError> {
    Ok(FeynmanGraph::from_json_value(read_json(path)?)?)
}

fn edge_ids(g: &FeynmanGraph, s: rb_renorm::graph::EdgeSet) -> Value {
    Value::from(s.iter().map(|i| serde_json::to_value(&g.edges()[i].id).expect("labels serialize")).collect::<Vec<_>>())
}

fn graph(cmd: GraphCmd) -> Result<Value, CliError> {
    match cmd {
        GraphCmd::Info { file, dim } => {
            let g = load_graph(&file)?;
            let connected = g.is_connected();
            Ok(json!({
                "vertices": g.num_vertices(),
                "internal_edges": g.num_edges(),
                "external_edges": g.legs().len(),
                "loops": g.loop_number(),
                "connected": connected,
                "one_pi": g.is_one_pi(),
                "edge_connectivity": if connected { g.edge_connectivity()? } else { None },
                "superficial_degree": g.superficial_degree(dim),
                "canonical_key": g.canonical_key().ok().map(|k| k.as_slice().to_vec()),
            }))
        }
        GraphCmd::Divergent { file, dim, even } => {
            let g = load_graph(&file)?;
            let subs: Vec<Value> = g
                .divergent_subgraphs(dim, even)?
                .into_iter()
                .map(|s| {
                    json!({
                        "edges": edge_ids(&g, s),
                        "loops": g.subgraph_loop_number(s),
                        "superficial_degree": g.subgraph_superficial_degree(s, dim),
                    })
                })
                .collect();
            Ok(json!({ "subgraphs": subs }))
        }
        GraphCmd::Trees { file } => {
            let g = load_graph(&file)?;
            let trees: Vec<Value> = g.spanning_trees()?.into_iter().map(|t| edge_ids(&g, t)).collect();
            Ok(json!({ "count": trees.len(), "trees": trees }))
        }
        GraphCmd::Catalog { name: None } => Ok(json!({ "names": catalog::NAMES })),
        GraphCmd::Catalog { name: Some(n) } => catalog::by_name(&n)
            .map(|g| g.to_json_value())
            .ok_or_else(|| CliError::Input(format!("no built-in graph named {n:?}"))),
    }
}

/// Registry with the library (unless disabled) and the given graph files;
/// returns the names the files were registered or matched under.
fn build_registry(args: &RegistryArgs) -> Result<(GeneratorRegistry, Vec<String>), CliError> {
    let config = RegistryConfig { dim: args.dim, even_only: args.even, ..RegistryConfig::default() };
    let reg = GeneratorRegistry::new(config);
    if !args.no_library {
        for (name, cat) in LIBRARY {
            match reg.register(name, catalog::by_name(cat).expect("library graphs exist")) {
                Ok(()) | Err(HopfError::OddEdgeCount(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    let mut names = Vec::new();
    for path in &args.graphs {
        let g = load_graph(path)?;
        let key = g.canonical_key()?;
        let existing = reg.names().into_iter().find(|n| {
            reg.graph(n).ok().and_then(|h| h.canonical_key().ok()).as_ref() == Some(&key)
        });
        let name = match existing {
            Some(n) => n,
            None => {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph").to_string();
                reg.register(&stem, g)?;
                stem
            }
        };
        names.push(name);
    }
    Ok((reg, names))
}

fn target_name(target: &Target, files: &[String]) -> Result<String, CliError> {
    target
        .name
        .clone()
        .or_else(|| files.last().cloned())
        .ok_or_else(|| CliError::Input("give a generator with --name or a graph file with --graph".into()))
}

fn generator_graphs<'a>(reg: &GeneratorRegistry, names: impl IntoIterator<Item = &'a String>) -> Result<Value, CliError> {
    let mut out = serde_json::Map::new();
    for n in names {
        out.insert(n.clone(), reg.graph(n)?.to_json_value());
    }
    Ok(Value::Object(out))
}

fn tensor_names(t: &TensorElement) -> Vec<String> {
    let mut v: Vec<String> = t.terms().flat_map(|(legs, _)| legs.iter().flat_map(|m| m.factors().to_vec())).collect();
    v.sort();
    v.dedup();
    v
}

/// `(ε⊗id)t` or `(id⊗ε)t` for a two-leg tensor.
fn counit_leg(t: &TensorElement, leg: usize) -> HopfElement {
    HopfElement::from_terms(
        t.terms().filter(|(legs, _)| legs[leg].is_one()).map(|(legs, c)| (legs[1 - leg].clone(), c.clone())),
    )
}

fn hopf(cmd: HopfCmd) -> Result<Value, CliError> {
    match cmd {
        HopfCmd::Coproduct { target, reduced } => {
            let (reg, files) = build_registry(&target.registry)?;
            let name = target_name(&target, &files)?;
            let x = HopfElement::generator(name.as_str());
            let t = if reduced { reg.reduced_coproduct(&x)? } else { reg.coproduct(&x)? };
            Ok(json!({
                "generator": name,
                "coproduct": t.to_string(),
                "terms": t.to_json_value(),
                "generators": generator_graphs(&reg, &tensor_names(&t))?,
            }))
        }
        HopfCmd::Antipode { target } => {
            let (reg, files) = build_registry(&target.registry)?;
            let name = target_name(&target, &files)?;
            let s = reg.antipode(&HopfElement::generator(name.as_str()))?;
            let mut names: Vec<String> = s.terms().flat_map(|(m, _)| m.factors().to_vec()).collect();
            names.sort();
            names.dedup();
            Ok(json!({
                "generator": name,
                "antipode": s.to_string(),
                "terms": s.to_json_value(),
                "generators": generator_graphs(&reg, &names)?,
            }))
        }
        HopfCmd::Check { target } => {
            let (reg, files) = build_registry(&target.registry)?;
            let name = target_name(&target, &files)?;
            let x = HopfElement::generator(name.as_str());
            let d = reg.coproduct(&x)?;
            let coassociative = reg.coproduct_on_leg(&d, 0)? == reg.coproduct_on_leg(&d, 1)?;
            let counit = counit_leg(&d, 0) == x && counit_leg(&d, 1) == x;
            let eps = HopfElement::scalar(x.counit());
            let antipode = reg.antipode_on_leg(&d, 0)?.multiply_legs() == eps
                && reg.antipode_on_leg(&d, 1)?.multiply_legs() == eps;
            Ok(json!({
                "generator": name,
                "coassociative": coassociative,
                "counit": counit,
                "antipode": antipode,
            }))
        }
        HopfCmd::Library { registry } => {
            let (reg, _) = build_registry(&registry)?;
            let names = reg.names();
            let degrees: BTreeMap<String, usize> =
                names.iter().map(|n| Ok((n.clone(), reg.degree(n)?))).collect::<Result<_, HopfError>>()?;
            Ok(json!({ "degrees": degrees, "generators": generator_graphs(&reg, &names)? }))
        }
    }
}

fn load_character(path: &Path, registry: &RegistryArgs) -> Result<Character<RbAlgebra>, CliError> {
    let (reg, _) = build_registry(registry)?;
    Ok(Character::from_json(&read(path)?, Arc::new(reg))?)
}

fn birkhoff(cmd: BirkhoffCmd) -> Result<Value, CliError> {
    match cmd {
        BirkhoffCmd::Factorize { character, registry, names, verify, nonrecursive } => {
            let phi = load_character(&character, &registry)?;
            let alg = phi.algebra();
            let names = if names.is_empty() { phi.values().keys().cloned().collect() } else { names };
            let mut out = serde_json::Map::new();
            for n in &names {
                let (minus, plus) = phi.factorize(n)?;
                let mut entry = json!({
                    "phi": alg.element_to_json(phi.value(n)?),
                    "phi_minus": alg.element_to_json(&minus),
                    "phi_plus": alg.element_to_json(&plus),
                    "display": {"phi": phi.value(n)?.to_string(), "phi_minus": minus.to_string(), "phi_plus": plus.to_string()},
                });
                if verify {
                    let v = phi.verify(&HopfElement::generator(n.as_str()))?;
                    entry["verify"] = json!({"holds": v.holds, "defect": alg.element_to_json(&v.defect)});
                }
                if nonrecursive {
                    // Ineligible targets are reported in place so the recursive result still prints.
                    entry["nonrecursive"] = match phi_minus_nonrecursive(&phi, n) {
                        Ok(m) => json!({"phi_minus": alg.element_to_json(&m), "agrees": m == minus}),
                        Err(e) => json!({"error": e.to_string()}),
                    };
                }
                out.insert(n.clone(), entry);
            }
            Ok(json!({
                "target": serde_json::to_value(alg.descriptor()).map_err(|e| CliError::Json(e.to_string()))?,
                "factorization": out,
                "generators": generator_graphs(phi.registry(), &names)?,
            }))
        }
        BirkhoffCmd::Atkinson { character, registry, depth } => {
            let phi = load_character(&character, &registry)?;
            let alg = phi.algebra();
            let depth = match depth {
                Some(d) => d,
                None => degree_cutoff()?,
            };
            let sol = atkinson_solve(&phi, depth)?;
            let table = |t: &BTreeMap<Monomial, RbElement>| -> Value {
                Value::Object(t.iter().map(|(m, v)| (m.to_string(), alg.element_to_json(v))).collect())
            };
            let defects_vanish = sol.defects(alg)?.values().all(|d| alg.is_zero(d));
            let closed = if alg.absorbing_projection() {
                let c = atkinson_closed_form_table(&phi, depth)?;
                Value::from(c.table() == sol.left.table())
            } else {
                Value::Null
            };
            Ok(json!({
                "depth": depth,
                "left": table(sol.left.table()),
                "right": table(sol.right.table()),
                "defects_vanish": defects_vanish,
                "closed_form_agrees": closed,
            }))
        }
    }
}

fn poly_json(p: &MultiPoly) -> Value {
    Value::from(p.to_string())
}

fn matrix_json(m: &[Vec<MultiPoly>]) -> Value {
    Value::from(m.iter().map(|row| row.iter().map(poly_json).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn symanzik(cmd: SymanzikCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        SymanzikCmd::Psi { file } => {
            let p = symanzik::psi(&load_graph(&file)?)?;
            json!({"psi": p.to_string()})
        }
        SymanzikCmd::Matrix { file } => {
            let g = load_graph(&file)?;
            let m = symanzik::graph_matrix(&g)?;
            let det = symanzik::matrix_det(&m, g.num_edges());
            json!({"matrix": matrix_json(&m), "det": det.to_string(), "matrix_tree": det == symanzik::psi(&g)?})
        }
        SymanzikCmd::Second { file } => {
            let p = symanzik::second_symanzik(&load_graph(&file)?)?;
            json!({"second": p.to_string(), "second_terms": p.to_term_list()})
        }
        SymanzikCmd::Upsilon { file } => {
            let u = symanzik::upsilon_matrix(&load_graph(&file)?)?;
            json!({"rank": symanzik::rank_of_rows(&u), "upsilon": u})
        }
        SymanzikCmd::Embedding { file } => {
            serde_json::to_value(symanzik::upsilon_embedding_tests(&load_graph(&file)?)?).expect("report serializes")
        }
        SymanzikCmd::Eta { file, dim } => {
            serde_json::to_value(symanzik::eta_form(&load_graph(&file)?, dim)?).expect("spec serializes")
        }
        SymanzikCmd::All { file, dim } => {
            let g = load_graph(&file)?;
            let d = SymanzikData::new(&g)?;
            json!({
                "psi": d.psi.to_string(),
                "matrix": matrix_json(&d.matrix),
                "second": d.second.to_string(),
                "eta": d.eta,
                "upsilon": symanzik::upsilon_matrix(&g)?,
                "embedding": serde_json::to_value(symanzik::upsilon_embedding_tests(&g)?).expect("report serializes"),
                "eta_form": match symanzik::eta_form(&g, dim) {
                    Ok(s) => serde_json::to_value(s).expect("spec serializes"),
                    Err(e) => json!({"error": e.to_string()}),
                },
            })
        }
    })
}

fn class(c: LefschetzPolynomial) -> Value {
    Value::from(c.to_string())
}

fn motive(cmd: MotiveCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        MotiveCmd::Projective { n } => class(motive::projective_class(n)?),
        MotiveCmd::Gl { l } => class(motive::gl_class(l)?),
        MotiveCmd::Grass { d, n } => class(motive::grassmannian_class(d, n)?),
        MotiveCmd::Arrangement { file } => {
            let a = Arrangement::from_json(&read(&file)?)?;
            json!({
                "char_poly": motive::char_poly(&a)?.to_string(),
                "class": motive::arrangement_class(&a)?.to_string(),
            })
        }
        MotiveCmd::Sigma { l, g } => {
            let a = motive::sigma_arrangement(l, g)?;
            let mut v = a.to_json_value();
            v["components"] = Value::from(a.len());
            v
        }
        MotiveCmd::PoleBound { n, l, dim } => Value::from(motive::pole_order_bound(n, l, dim)?),
        MotiveCmd::Blowup { class: c, steps } => {
            let x: LefschetzPolynomial = c.parse()?;
            let steps: Vec<BlowupStep> =
                serde_json::from_value(read_json(&steps)?).map_err(|e| CliError::Json(e.to_string()))?;
            class(motive::blowup_class(&x, &steps)?)
        }
        MotiveCmd::Kausz { l, strata } => {
            let strata: Vec<KauszStratum> = match strata {
                Some(p) => serde_json::from_value(read_json(&p)?).map_err(|e| CliError::Json(e.to_string()))?,
                None => Vec::new(),
            };
            class(motive::kausz_class(l, &strata)?)
        }
    })
}

fn build_algebra(a: &AlgebraArgs) -> Result<RbAlgebra, CliError> {
    let desc: RBAlgebraDescriptor = match &a.algebra {
        Some(p) => serde_json::from_value(read_json(p)?).map_err(|e| CliError::Json(e.to_string()))?,
        None => {
            let kind: RbKind = serde_json::from_value(Value::from(a.kind.as_str()))
                .map_err(|_| CliError::Input(format!("unknown algebra kind {:?}", a.kind)))?;
            RBAlgebraDescriptor::new(kind, AlgebraContextSpec { ambient: a.ambient, divisors: a.divisors, ..Default::default() })
        }
    };
    Ok(desc.build()?)
}

fn rb(cmd: RbCmd, seed: u64) -> Result<Value, CliError> {
    match cmd {
        RbCmd::Check { algebra, pairs } => {
            let alg = build_algebra(&algebra)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = 0usize;
            for _ in 0..pairs {
                let x = alg.random_element(&mut rng);
                let y = alg.random_element(&mut rng);
                if !alg.is_zero(&rb_defect(&alg, &x, &y)?) {
                    failures += 1;
                }
            }
            Ok(json!({
                "kind": alg.kind().to_string(),
                "pairs": pairs,
                "seed": seed,
                "failures": failures,
                "holds": failures == 0,
            }))
        }
        RbCmd::Polar { algebra, element } => {
            let alg = build_algebra(&algebra)?;
            let x = alg.element_from_json(&read_json(&element)?)?;
            let t = alg.polar(&x);
            let r = alg.regular(&x)?;
            Ok(json!({
                "polar": alg.element_to_json(&t),
                "regular": alg.element_to_json(&r),
                "display": {"polar": t.to_string(), "regular": r.to_string()},
            }))
        }
        RbCmd::Residue { algebra, element, indices } => {
            let alg = build_algebra(&algebra)?;
            let RbAlgebra::Log(forms) = &alg else {
                return Err(CliError::Input(format!("residues need a log-form algebra, not {}", alg.kind())));
            };
            let RbElement::Form(w) = alg.element_from_json(&read_json(&element)?)? else {
                unreachable!("log-form algebras parse forms")
            };
            let r = forms.iterated_residue(&w, &indices)?;
            let out = RbElement::Form(r);
            Ok(json!({"residue": alg.element_to_json(&out), "display": out.to_string()}))
        }
    }
}
