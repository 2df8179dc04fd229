//! Command grammar and JSON rendering for the `bzf` tool.
//!
//! ```text
//! eval <element> ('*' <element>)*
//! closure <set> (';' <set>)*        | closure '{' <set> (';' <set>)* '}'
//! classify <family>
//! green <element> <element> [R|L|H|D|J]
//! order <element> <element>
//! map <morphism> <element>
//! check-hom <morphism> <element> <element>
//! oracle-check
//! selftest [<suite>]
//!
//! morphism := sigma | ext-bicyclic | matrix-units | brandt | reindex <nat>
//! ```
//!
//! Without `--family`, element commands work in the closure of the sets they
//! mention.

use std::collections::BTreeSet;

use bicyclic::classify::{classify, ClassifyError, IsoType};
use bicyclic::family::{is_omega_closed, Family, FamilyError};
use bicyclic::morphisms::{
    progression_reindex, require_singletons, sigma_hom, to_brandt, ExtBicyclicIso, MatrixUnitsIso,
    MorphismError,
};
use bicyclic::omega_sets::EpSet;
use bicyclic::selftest::{run_suite, SelfTestConfig, Suite, SuiteReport};
use bicyclic::semigroup::{
    green, green_witness, Element, GreenRelation, SemigroupCtx, SemigroupError,
};
use bicyclic::syntax::{parse_family, Cursor, FamilyExpr, SyntaxError};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Morphism {
    Sigma,
    ExtBicyclic,
    MatrixUnits,
    Brandt,
    Reindex { to: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Eval {
        factors: Vec<Element>,
    },
    Closure {
        sets: Vec<EpSet>,
    },
    Classify {
        family: FamilyExpr,
    },
    Green {
        a: Element,
        b: Element,
        rel: Option<GreenRelation>,
    },
    Order {
        a: Element,
        b: Element,
    },
    Map {
        morphism: Morphism,
        element: Element,
    },
    CheckHom {
        morphism: Morphism,
        a: Element,
        b: Element,
    },
    OracleCheck,
    SelfTest {
        suite: Option<Suite>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    pub window: u64,
    pub max_family: usize,
    pub family: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        let st = SelfTestConfig::default();
        Options {
            seed: st.seed,
            samples: st.samples,
            window: st.window,
            max_family: bicyclic::family::DEFAULT_MEMBER_CAP,
            family: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{message}")]
    Domain { code: &'static str, message: String },
    #[error("self-test failed")]
    SelfTestFailed(Value),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } => 1,
            CliError::Syntax(_) => 2,
            CliError::SelfTestFailed(_) => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Syntax(e) => json!({"error": {
                "code": "syntax",
                "line": e.line,
                "col": e.col,
                "expected": e.expected,
            }}),
            CliError::Domain { code, message } => {
                json!({"error": {"code": code, "message": message}})
            }
            CliError::SelfTestFailed(report) => report.clone(),
        }
    }
}

fn domain(code: &'static str, e: impl ToString) -> CliError {
    CliError::Domain {
        code,
        message: e.to_string(),
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        let code = match e {
            SemigroupError::SetNotInFamily(_) => "set_not_in_family",
            SemigroupError::EmptyTriple => "empty_triple",
            SemigroupError::NoZero => "no_zero",
            SemigroupError::EmptyOutsideFamily => "empty_outside_family",
            SemigroupError::NotIdempotent(_) => "not_idempotent",
            SemigroupError::NotRelated(..) => "not_related",
        };
        domain(code, e)
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        let code = match e {
            FamilyError::NoMembers => "no_members",
            FamilyError::NotOmegaClosed(_) => "not_omega_closed",
            FamilyError::ClosureDiverged { .. } => "closure_diverged",
        };
        domain(code, e)
    }
}

impl From<MorphismError> for CliError {
    fn from(e: MorphismError) -> Self {
        let code = match e {
            MorphismError::ZeroInFamily => "zero_in_family",
            MorphismError::WrongIsoType(_) => "wrong_iso_type",
            MorphismError::NotSingletonSet(_) => "not_singleton_set",
            MorphismError::WrongProgression { .. } => "wrong_progression",
            MorphismError::UnknownMorphism(_) => "unknown_morphism",
        };
        domain(code, e)
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        domain("infinite_family", e)
    }
}

fn morphism(c: &mut Cursor<'_>) -> Result<Morphism, SyntaxError> {
    let expected = "morphism (`sigma`, `ext-bicyclic`, `matrix-units`, `brandt` or `reindex <n>`)";
    let save = c.clone();
    match c.ident() {
        Some("sigma") => Ok(Morphism::Sigma),
        Some("ext-bicyclic") => Ok(Morphism::ExtBicyclic),
        Some("matrix-units") => Ok(Morphism::MatrixUnits),
        Some("brandt") => Ok(Morphism::Brandt),
        Some("reindex") => Ok(Morphism::Reindex { to: c.nat()? }),
        _ => Err(save.error(expected)),
    }
}

fn set_list(c: &mut Cursor<'_>) -> Result<Vec<EpSet>, SyntaxError> {
    let mut sets = vec![c.set()?];
    while c.eat(';') {
        if c.at_end() || c.peek() == Some('}') {
            break;
        }
        sets.push(c.set()?);
    }
    Ok(sets)
}

fn closure_args(c: &mut Cursor<'_>) -> Result<Vec<EpSet>, SyntaxError> {
    let start = c.clone();
    let bare = set_list(c).and_then(|sets| c.expect_end().map(|_| sets));
    match bare {
        Ok(sets) => Ok(sets),
        Err(first) => {
            *c = start;
            if !c.eat('{') {
                return Err(first);
            }
            let sets = set_list(c)?;
            c.expect('}')?;
            Ok(sets)
        }
    }
}

pub fn parse(input: &str) -> Result<Command, SyntaxError> {
    let mut c = Cursor::new(input);
    let save = c.clone();
    let cmd = match c.ident() {
        Some("eval") => Command::Eval {
            factors: c.product()?,
        },
        Some("closure") => Command::Closure {
            sets: closure_args(&mut c)?,
        },
        Some("classify") => Command::Classify { family: c.family()? },
        Some("green") => {
            let a = c.element()?;
            let b = c.element()?;
            let rel = if c.at_end() {
                None
            } else {
                let at = c.clone();
                let word = c.ident().unwrap_or("");
                Some(word.parse().map_err(|_| at.error("relation R, L, H, D or J"))?)
            };
            Command::Green { a, b, rel }
        }
        Some("order") => Command::Order {
            a: c.element()?,
            b: c.element()?,
        },
        Some("map") => Command::Map {
            morphism: morphism(&mut c)?,
            element: c.element()?,
        },
        Some("check-hom") => Command::CheckHom {
            morphism: morphism(&mut c)?,
            a: c.element()?,
            b: c.element()?,
        },
        Some("oracle-check") => Command::OracleCheck,
        Some("selftest") => {
            let suite = if c.at_end() {
                None
            } else {
                let at = c.clone();
                let word = c.ident().unwrap_or("");
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Some(
                    word.parse()
                        .map_err(|_| at.error(format!("suite name ({})", names.join(", "))))?,
                )
            };
            Command::SelfTest { suite }
        }
        _ => {
            return Err(save.error(
                "command (eval, closure, classify, green, order, map, check-hom, oracle-check, selftest)",
            ))
        }
    };
    c.expect_end()?;
    Ok(cmd)
}

fn sets_of<'a>(elements: impl IntoIterator<Item = &'a Element>) -> BTreeSet<EpSet> {
    elements
        .into_iter()
        .filter_map(|e| e.set().cloned())
        .collect()
}

/// The context for element commands: `--family` if given, otherwise the
/// closure of the mentioned sets (`{∅}` when there are none).
fn context(opts: &Options, elements: &[&Element]) -> Result<SemigroupCtx, CliError> {
    let ctx = match &opts.family {
        Some(src) => parse_family(src)?.build(opts.max_family)?,
        None => {
            let mut sets = sets_of(elements.iter().copied());
            if sets.is_empty() {
                sets.insert(EpSet::empty());
            }
            SemigroupCtx::new(Family::close_capped(sets, opts.max_family)?)
        }
    };
    for e in elements {
        ctx.validate(e)?;
    }
    Ok(ctx)
}

fn morphism_value(m: &Morphism, ctx: &SemigroupCtx, a: &Element) -> Result<Value, CliError> {
    Ok(match m {
        Morphism::Sigma => json!(sigma_hom(ctx, a)?),
        Morphism::ExtBicyclic => json!(ExtBicyclicIso::new(ctx)?.apply(a)?.to_string()),
        Morphism::MatrixUnits => {
            let (unit, omega) = MatrixUnitsIso::new(ctx)?.apply_omega(a)?;
            json!({"unit": unit.to_string(), "omega": omega.map(|(x, y)| [x, y])})
        }
        Morphism::Brandt => json!(to_brandt(a)?.to_string()),
        Morphism::Reindex { to } => {
            let progression = match a.set() {
                None => None,
                Some(set) => Some(
                    set.as_arith_progression()
                        .ok_or(MorphismError::WrongIsoType("progression_reindex"))?,
                ),
            };
            match progression {
                None => json!(Element::Zero.to_string()),
                Some((from, step)) => {
                    json!(progression_reindex(a, from, *to, step)?.to_string())
                }
            }
        }
    })
}

/// Context for a morphism: Brandt always works over all singletons.
fn morphism_context(
    m: &Morphism,
    opts: &Options,
    elements: &[&Element],
) -> Result<SemigroupCtx, CliError> {
    match m {
        Morphism::Brandt => {
            let ctx = match &opts.family {
                Some(src) => parse_family(src)?.build(opts.max_family)?,
                None => SemigroupCtx::singletons(),
            };
            require_singletons(&ctx)?;
            for e in elements {
                ctx.validate(e)?;
            }
            Ok(ctx)
        }
        _ => context(opts, elements),
    }
}

/// Image of the product of `a` and `b` in the target semigroup.
fn target_product(
    m: &Morphism,
    ctx: &SemigroupCtx,
    a: &Element,
    b: &Element,
) -> Result<Value, CliError> {
    Ok(match m {
        Morphism::Sigma => json!(sigma_hom(ctx, a)? + sigma_hom(ctx, b)?),
        Morphism::ExtBicyclic => {
            let iso = ExtBicyclicIso::new(ctx)?;
            json!((iso.apply(a)? * iso.apply(b)?).to_string())
        }
        Morphism::MatrixUnits => {
            let iso = MatrixUnitsIso::new(ctx)?;
            let unit = iso.apply(a)? * iso.apply(b)?;
            let (_, omega) = iso.apply_omega(&iso.preimage(unit))?;
            json!({"unit": unit.to_string(), "omega": omega.map(|(x, y)| [x, y])})
        }
        Morphism::Brandt => json!((to_brandt(a)? * to_brandt(b)?).to_string()),
        Morphism::Reindex { to } => {
            let (ha, hb) = (morphism_value(m, ctx, a)?, morphism_value(m, ctx, b)?);
            let parse = |v: &Value| -> Result<Element, CliError> {
                Ok(v.as_str().unwrap_or_default().parse::<Element>()?)
            };
            let (ha, hb) = (parse(&ha)?, parse(&hb)?);
            let target = context(
                &Options {
                    family: None,
                    ..Options::default()
                },
                &[&ha, &hb],
            )?;
            let step = [&ha, &hb]
                .iter()
                .find_map(|e| e.set().and_then(EpSet::as_arith_progression))
                .map(|(_, step)| step);
            // With both images zero any target works.
            let target = match step {
                Some(step) => {
                    SemigroupCtx::new(Family::close([EpSet::progression(*to, step)
                        .map_err(|e| domain("wrong_progression", e))?])?)
                }
                None => target,
            };
            json!(target.multiply(&ha, &hb)?.to_string())
        }
    })
}

fn report_json(r: &SuiteReport) -> Value {
    let properties: Vec<Value> = r
        .properties
        .iter()
        .map(|p| {
            let mut v = json!({
                "name": p.name,
                "passed": p.passed,
                "failed": p.failed,
            });
            if let Some(seed) = p.failing_seed {
                v["failing_seed"] = json!(seed);
                v["failure"] = json!(p.failure);
            }
            v
        })
        .collect();
    json!({
        "suite": r.suite.name(),
        "ok": r.ok(),
        "seed": r.seed,
        "properties": properties,
    })
}

fn run_suites(suites: &[Suite], opts: &Options) -> Result<Value, CliError> {
    let cfg = SelfTestConfig {
        samples: opts.samples,
        seed: opts.seed,
        window: opts.window,
    };
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &cfg)).collect();
    let ok = reports.iter().all(SuiteReport::ok);
    let value = json!({
        "ok": ok,
        "seed": opts.seed,
        "samples": opts.samples,
        "window": opts.window,
        "suites": reports.iter().map(report_json).collect::<Vec<_>>(),
    });
    if ok {
        Ok(value)
    } else {
        Err(CliError::SelfTestFailed(value))
    }
}

fn strings<'a>(items: impl IntoIterator<Item = &'a EpSet>) -> Vec<String> {
    items.into_iter().map(EpSet::to_string).collect()
}

pub fn run(cmd: &Command, opts: &Options) -> Result<Value, CliError> {
    match cmd {
        Command::Eval { factors } => {
            let refs: Vec<&Element> = factors.iter().collect();
            let ctx = context(opts, &refs)?;
            let result = ctx.product(factors.iter())?.expect("at least one factor");
            Ok(json!({"result": result.to_string()}))
        }
        Command::Closure { sets } => {
            let family = Family::close_capped(sets.iter().cloned(), opts.max_family)?;
            Ok(json!({
                "result": strings(family.members()),
                "size": family.len(),
                "omega_closed": is_omega_closed(family.members()),
            }))
        }
        Command::Classify { family } => {
            let ctx = family.build(opts.max_family)?;
            let report = classify(&ctx);
            let members = ctx.finite_family().map(|f| strings(f.members()));
            let (i0, j0) = match report.iso_type {
                IsoType::ZeroBisimpleProgression { i0, j0 } => (Some(i0), Some(j0)),
                _ => (None, None),
            };
            let witnesses: serde_json::Map<String, Value> = report
                .witnesses
                .iter()
                .map(|(k, w)| {
                    (
                        k.to_string(),
                        json!({"left": w.left.to_string(), "right": w.right.to_string()}),
                    )
                })
                .collect();
            Ok(json!({
                "family": members,
                "iso_type": report.iso_type.name(),
                "i0": i0,
                "j0": j0,
                "has_zero": report.has_zero,
                "has_identity": report.has_identity,
                "simple": report.simple,
                "zero_simple": report.zero_simple,
                "bisimple": report.bisimple,
                "zero_bisimple": report.zero_bisimple,
                "e_unitary": report.e_unitary,
                "contains_extended_bicyclic": report.contains_extended_bicyclic,
                "zero_bisimple_branch": report.zero_bisimple_branch.map(|b| b.name()),
                "nonzero_d_classes": report.nonzero_d_classes,
                "witnesses": witnesses,
            }))
        }
        Command::Green { a, b, rel } => {
            let ctx = context(opts, &[a, b])?;
            let one = |rel: GreenRelation| -> Result<Value, CliError> {
                let related = green(a, b, rel);
                let witness = match rel {
                    GreenRelation::R | GreenRelation::L | GreenRelation::D if related => {
                        let w = green_witness(a, b, rel)?;
                        let verified = ctx.check_witness(a, b, &w)?;
                        json!({"x": w.x.to_string(), "y": w.y.to_string(), "verified": verified})
                    }
                    _ => Value::Null,
                };
                Ok(json!({"result": related, "witness": witness}))
            };
            match rel {
                Some(rel) => one(*rel),
                None => {
                    let mut all = serde_json::Map::new();
                    for rel in GreenRelation::ALL {
                        all.insert(rel.to_string(), one(rel)?);
                    }
                    Ok(Value::Object(all))
                }
            }
        }
        Command::Order { a, b } => {
            let ctx = context(opts, &[a, b])?;
            let criterion = a.natural_leq(b);
            let by_product = ctx.natural_leq_by_product(a, b)?;
            Ok(json!({"result": criterion, "agrees_with_product": criterion == by_product}))
        }
        Command::Map { morphism, element } => {
            let ctx = morphism_context(morphism, opts, &[element])?;
            Ok(json!({"result": morphism_value(morphism, &ctx, element)?}))
        }
        Command::CheckHom { morphism, a, b } => {
            let ctx = morphism_context(morphism, opts, &[a, b])?;
            let ab = ctx.multiply(a, b)?;
            let image = morphism_value(morphism, &ctx, &ab)?;
            let expected = target_product(morphism, &ctx, a, b)?;
            Ok(json!({
                "result": image == expected,
                "product": ab.to_string(),
                "image_of_product": image,
                "product_of_images": expected,
            }))
        }
        Command::OracleCheck => run_suites(&[Suite::Oracle], opts),
        Command::SelfTest { suite } => match suite {
            Some(s) => run_suites(&[*s], opts),
            None => run_suites(&Suite::ALL, opts),
        },
    }
}

/// Parses and runs `input`, returning the JSON value and the exit code.
pub fn execute(input: &str, opts: &Options) -> (Value, i32) {
    match parse(input)
        .map_err(CliError::from)
        .and_then(|cmd| run(&cmd, opts))
    {
        Ok(v) => (v, 0),
        Err(e) => (e.to_json(), e.exit_code()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_commands() {
        assert!(
            matches!(parse("eval (0,0;[0)) * (1,1;[0))"), Ok(Command::Eval { factors }) if factors.len() == 2)
        );
        assert!(matches!(
            parse("classify closure{ {0,1} }"),
            Ok(Command::Classify {
                family: FamilyExpr::Closure(_)
            })
        ));
        assert!(matches!(
            parse("green (0,3;{2}) (0,7;{2}) R"),
            Ok(Command::Green {
                rel: Some(GreenRelation::R),
                ..
            })
        ));
        assert!(matches!(
            parse("map reindex 0 0"),
            Ok(Command::Map {
                morphism: Morphism::Reindex { to: 0 },
                ..
            })
        ));
        assert_eq!(
            parse("selftest oracle"),
            Ok(Command::SelfTest {
                suite: Some(Suite::Oracle)
            })
        );
        assert_eq!(parse("closure {0,1}; [3)"), parse("closure {{0,1}; [3)}"));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse("green (0,3;{2}) (0,7;{2}) Q").unwrap_err();
        assert_eq!((e.line, e.col), (1, 27));
        let e = parse("frobnicate").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
    }
}
