//! Command-line driver: parsing, dispatch, and output encoding.
//!
//! Exit codes: 0 for success or a passing verification, 1 for a verification
//! that ran and failed, 2 for input errors (syntax, semantics, boundaries).
//! Randomized commands take a seed (default 0) and echo it in their output.

use clap::{Parser, Subcommand};

use crate::dsl::{
    algebra_json, element_json, morphism_json, parse_algebra, parse_element, parse_morphism,
    parse_morphism_shape,
};
use crate::engine::{self, MorphismSampler, TangentReport};
use crate::instances::diff::{canonical_diffobj, check_diffobj, derivative};
use crate::instances::{
    NModAction, NModCategory, NModMorphism, NModObject, NatMatrix, TrivialAction, WeilCat,
    WeilSelfAction,
};
use crate::limits::{self, LimitsError, Square};
use crate::sample::{self, SampleBounds};
use crate::space;
use crate::weil::{check_hom, compose as compose_weil, HomVerdict, Natural, WeilAlgebra,
    WeilMorphism};

#[derive(Parser)]
#[command(name = "weilcat", version, about = "Exact arithmetic for Weil algebras, their limits, and tangent structures")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize an element of an algebra.
    Normalize { algebra: String, element: String },
    /// Compose two morphisms, outer first: compose G F prints G∘F.
    Compose { outer: String, inner: String },
    /// Check whether generator images define a morphism.
    CheckHom { morphism: String },
    /// Tensor two algebras, or two morphisms if the arguments start with '['.
    Tensor { left: String, right: String },
    /// Lift a cone through a designated pullback square.
    PullbackLift {
        /// `vertical` or `foundational <algebra> <m> <n>` (one quoted value).
        #[arg(long)]
        square: String,
        leg_right: String,
        leg_bottom: String,
    },
    /// Verify a designated square against sampled cones.
    VerifyPullback {
        /// `vertical` or `foundational <algebra> <m> <n>` (one quoted value).
        #[arg(long)]
        square: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// The space functor of a morphism.
    Phitilde { morphism: String },
    /// Decompose the expansion of a composite into alive and dead summands.
    Alpha { phi1: String, phi2: String },
    /// Check the two collapse routes of a triple agree.
    CheckCoherence {
        phi1: String,
        phi2: String,
        phi3: String,
    },
    /// Run the action-law and pullback-preservation suites on an instance.
    CheckTangent {
        #[arg(long, value_parser = ["trivial", "weil-self", "nmod"])]
        instance: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Check a differential object in the ℕ-module instance.
    DiffobjCheck {
        /// Carrier rank of the canonical object.
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Replacement row for p̂, comma-separated; must have 2·rank entries.
        #[arg(long)]
        phat: Option<String>,
    },
    /// The derivative of an ℕ-linear map between canonical carriers.
    Derivative {
        /// Matrix like `[1 0 2; 0 1 1]`; rows = target rank, cols = source rank.
        matrix: String,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command, cli.json) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    use std::io::Write;
    let rendered = if json {
        serde_json::to_string_pretty(&value).expect("reports serialize")
    } else {
        text
    };
    // A closed pipe (weilcat ... | head) is an ordinary end of output.
    if writeln!(std::io::stdout().lock(), "{rendered}").is_err() {
        std::process::exit(0);
    }
}

fn parse_square(spec: &str) -> Result<Square, String> {
    let words: Vec<&str> = spec.split_whitespace().collect();
    match words.as_slice() {
        ["vertical"] => Ok(limits::vertical_square()),
        ["foundational", base, m, n] => {
            let base = parse_algebra(base).map_err(|e| e.to_string())?;
            let m: u32 = m.parse().map_err(|_| format!("bad m '{m}'"))?;
            let n: u32 = n.parse().map_err(|_| format!("bad n '{n}'"))?;
            limits::foundational_square(&base, m, n).map_err(|e| e.to_string())
        }
        _ => Err("--square takes `vertical` or `foundational <algebra> <m> <n>`".to_string()),
    }
}

fn parse_nat_matrix(input: &str) -> Result<NatMatrix, String> {
    let inner = input.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(NatMatrix::zero(0, 0));
    }
    let mut rows: Vec<Vec<Natural>> = Vec::new();
    for row in inner.split(';') {
        let entries = row
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Natural>()
                    .map_err(|_| format!("bad matrix entry '{tok}'"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(entries);
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err("ragged matrix rows".to_string());
    }
    let entries = rows;
    Ok(NatMatrix::from_fn(entries.len(), cols, |r, c| {
        entries[r][c].clone()
    }))
}

fn weil_samples(seed: u64) -> (Vec<WeilAlgebra>, Vec<WeilMorphism>, Vec<WeilMorphism>) {
    let mut rng = sample::rng_from_seed(seed);
    let bounds = SampleBounds::default();
    let mut morphisms = Vec::new();
    for _ in 0..6 {
        morphisms.extend(sample::morphism_chain(&mut rng, 2, &bounds));
    }
    let mut objects = vec![WeilAlgebra::nat(), WeilAlgebra::w()];
    for f in &morphisms {
        if !objects.contains(f.source()) {
            objects.push(f.source().clone());
        }
    }
    objects.truncate(6);
    let extra = sample::morphism_chain(&mut rng, 3, &bounds);
    (objects, morphisms, extra)
}

fn nmod_samples(seed: u64) -> (Vec<NModObject>, Vec<NModMorphism>, Vec<WeilMorphism>) {
    let objects: Vec<NModObject> = (0..=2).map(NModObject::from_rank).collect();
    let mut morphisms = Vec::new();
    for (i, x) in objects.iter().enumerate() {
        morphisms.extend(NModCategory.sample_morphisms_into(x, seed.wrapping_add(i as u64), 4));
    }
    let mut rng = sample::rng_from_seed(seed.wrapping_add(101));
    // The module-rank of act_obj(A, M) scales with the basis of A, and the
    // strictness law tensors two sampled algebras, so keep them tight.
    let extra = sample::morphism_chain(&mut rng, 3, &SampleBounds::tight());
    (objects, morphisms, extra)
}

fn run_tangent(instance: &str, seed: u64, budget: usize) -> Result<TangentReport, String> {
    match instance {
        "trivial" => {
            let action = TrivialAction::new(WeilCat);
            let (objects, morphisms, extra) = weil_samples(seed);
            engine::run_full_check(&action, &objects, &morphisms, &extra, seed, budget)
        }
        "weil-self" => {
            let action = WeilSelfAction::new();
            let (objects, morphisms, extra) = weil_samples(seed);
            engine::run_full_check(&action, &objects, &morphisms, &extra, seed, budget)
        }
        "nmod" => {
            let action = NModAction::new();
            let (objects, morphisms, extra) = nmod_samples(seed);
            engine::run_full_check(&action, &objects, &morphisms, &extra, seed, budget)
        }
        other => Err(format!("unknown instance '{other}'")),
    }
}

fn verdict_exit(passed: bool) -> i32 {
    if passed {
        0
    } else {
        1
    }
}

fn dispatch(command: Command, json: bool) -> Result<i32, String> {
    match command {
        Command::Normalize { algebra, element } => {
            let a = parse_algebra(&algebra).map_err(|e| e.to_string())?;
            let e = parse_element(&element, &a).map_err(|e| e.to_string())?;
            emit(
                json,
                serde_json::json!({ "ambient": algebra_json(&a), "element": element_json(&e) }),
                e.to_string(),
            );
            Ok(0)
        }
        Command::Compose { outer, inner } => {
            let g = parse_morphism(&outer).map_err(|e| e.to_string())?;
            let f = parse_morphism(&inner).map_err(|e| e.to_string())?;
            let composite = compose_weil(&g, &f).map_err(|e| e.to_string())?;
            emit(json, morphism_json(&composite), composite.to_string());
            Ok(0)
        }
        Command::CheckHom { morphism } => {
            let (source, target, images) =
                parse_morphism_shape(&morphism).map_err(|e| e.to_string())?;
            match check_hom(&source, &target, &images).map_err(|e| e.to_string())? {
                HomVerdict::Hom => {
                    emit(json, serde_json::json!({ "hom": true }), "pass".to_string());
                    Ok(0)
                }
                HomVerdict::Violation { i, j, product } => {
                    emit(
                        json,
                        serde_json::json!({
                            "hom": false,
                            "witness": { "i": i, "j": j, "product": element_json(&product) },
                        }),
                        format!(
                            "fail: images of related generators x{i}, x{j} have product {product}"
                        ),
                    );
                    Ok(1)
                }
            }
        }
        Command::Tensor { left, right } => {
            if left.trim_start().starts_with('[') {
                let f = parse_morphism(&left).map_err(|e| e.to_string())?;
                let g = parse_morphism(&right).map_err(|e| e.to_string())?;
                let t = f.tensor(&g);
                emit(json, morphism_json(&t), t.to_string());
            } else {
                let a = parse_algebra(&left).map_err(|e| e.to_string())?;
                let b = parse_algebra(&right).map_err(|e| e.to_string())?;
                let t = a.tensor(&b);
                emit(json, algebra_json(&t), t.to_string());
            }
            Ok(0)
        }
        Command::PullbackLift {
            square,
            leg_right,
            leg_bottom,
        } => {
            let square = parse_square(&square)?;
            let leg_right = parse_morphism(&leg_right).map_err(|e| e.to_string())?;
            let leg_bottom = parse_morphism(&leg_bottom).map_err(|e| e.to_string())?;
            let cone = limits::Cone::new(leg_right, leg_bottom).map_err(|e| e.to_string())?;
            match limits::lift_cone(&square, &cone) {
                Ok(lift) => {
                    emit(json, morphism_json(&lift), lift.to_string());
                    Ok(0)
                }
                Err(LimitsError::Uncertified(reason)) => {
                    emit(
                        json,
                        serde_json::json!({ "lifted": false, "reason": reason }),
                        format!("no unique lift: {reason}"),
                    );
                    Ok(1)
                }
                Err(other) => Err(other.to_string()),
            }
        }
        Command::VerifyPullback {
            square,
            seed,
            budget,
        } => {
            let square = parse_square(&square)?;
            let report = limits::verify_pullback_seeded(&square, seed, budget);
            emit(json, report.to_json(), report.to_string());
            Ok(verdict_exit(report.passed()))
        }
        Command::Phitilde { morphism } => {
            let phi = parse_morphism(&morphism).map_err(|e| e.to_string())?;
            let functor = space::phitilde(&phi).map_err(|e| e.to_string())?;
            emit(json, functor.to_json(), functor.to_string());
            Ok(0)
        }
        Command::Alpha { phi1, phi2 } => {
            let phi1 = parse_morphism(&phi1).map_err(|e| e.to_string())?;
            let phi2 = parse_morphism(&phi2).map_err(|e| e.to_string())?;
            match space::alpha(&phi1, &phi2) {
                Ok(result) => {
                    let mut text = format!(
                        "widetilde: {}\nexpansion: {}",
                        result.widetilde, result.expansion
                    );
                    for (i, (map, zeta)) in result
                        .inclusion
                        .maps()
                        .iter()
                        .zip(&result.zeta)
                        .enumerate()
                    {
                        text.push_str(&format!(
                            "\ncomponent x{}: alive summands {:?}, zeta {}",
                            i + 1,
                            map,
                            zeta
                        ));
                    }
                    emit(json, result.to_json(), text);
                    Ok(0)
                }
                Err(space::SpaceError::StructuralViolation(reason)) => {
                    emit(
                        json,
                        serde_json::json!({ "passed": false, "reason": reason }),
                        format!("decomposition violated: {reason}"),
                    );
                    Ok(1)
                }
                Err(other) => Err(other.to_string()),
            }
        }
        Command::CheckCoherence { phi1, phi2, phi3 } => {
            let phi1 = parse_morphism(&phi1).map_err(|e| e.to_string())?;
            let phi2 = parse_morphism(&phi2).map_err(|e| e.to_string())?;
            let phi3 = parse_morphism(&phi3).map_err(|e| e.to_string())?;
            let report =
                space::check_alpha_coherence(&phi1, &phi2, &phi3).map_err(|e| e.to_string())?;
            emit(json, report.to_json(), report.to_string());
            Ok(verdict_exit(report.passed))
        }
        Command::CheckTangent {
            instance,
            seed,
            budget,
        } => {
            let report = run_tangent(&instance, seed, budget)?;
            emit(json, report.to_json(), report.to_string());
            Ok(verdict_exit(report.passed()))
        }
        Command::DiffobjCheck { rank, phat } => {
            let mut d = canonical_diffobj(&NModObject::from_rank(rank));
            if let Some(csv) = phat {
                let entries = csv
                    .split(',')
                    .map(|tok| {
                        tok.trim()
                            .parse::<u64>()
                            .map_err(|_| format!("bad p̂ entry '{tok}'"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if entries.len() != rank * 2 * rank {
                    return Err(format!(
                        "p̂ for rank {rank} is a {rank}x{} matrix, so --phat needs {} row-major entries, got {}",
                        2 * rank,
                        rank * 2 * rank,
                        entries.len()
                    ));
                }
                let rows = entries.chunks(2 * rank).map(<[u64]>::to_vec).collect();
                d.phat = NModMorphism::new(
                    NModObject::from_rank(2 * rank),
                    NModObject::from_rank(rank),
                    NatMatrix::from_rows(rows)?,
                )?;
            }
            let report = check_diffobj(&d, &NModAction::new()).map_err(|e| e.to_string())?;
            emit(json, report.to_json(), report.to_string());
            Ok(verdict_exit(report.passed()))
        }
        Command::Derivative { matrix } => {
            let matrix = parse_nat_matrix(&matrix)?;
            let src = canonical_diffobj(&NModObject::from_rank(matrix.cols()));
            let tgt = canonical_diffobj(&NModObject::from_rank(matrix.rows()));
            let f = NModMorphism::new(
                src.carrier.clone(),
                tgt.carrier.clone(),
                matrix,
            )
            .map_err(|e| e.to_string())?;
            let grad = derivative(&NModAction::new(), &f, &src, &tgt)?;
            emit(json, grad.to_json(), grad.to_string());
            Ok(0)
        }
    }
}
