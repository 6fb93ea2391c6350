//! Instance files: algebras, bimodules, triangular algebras and tasks in one
//! TOML document.
//!
//! ```toml
//! schema = "hochwerk-instance/1"
//! name = "t3"
//!
//! [algebras.Q]
//! builtin = "field"
//!
//! [bimodules.M]
//! left = "Q"
//! right = "Q"
//! dim = 1
//! left_act = [[["1"]]]
//! right_act = [[["1"]]]
//!
//! [triangular.T]
//! a = "Q"
//! m = "M"
//! b = "Q"
//!
//! [[tasks]]
//! op = "verify"
//! suite = "thm3.1"
//! triangular = "T"
//! coeff = "T*"
//! max_degree = 3
//! ```
//!
//! A triangular entry `T` registers the algebra `T` and the bimodules `T.m`
//! (the off-diagonal block as a `T`-bimodule) and `T.nested1`, `T.nested2`,
//! .. on demand. Wherever a bimodule is expected, an algebra name means its
//! regular bimodule and a trailing `*` means the dual.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::linalg::{parse_rat, Rat, RatMatrix};
use crate::samples::builtin_algebra;
use crate::theorems::Suite;
use crate::triangular::{build_triangular, m_as_t_bimodule, nested_as_t_bimodule, nested_triangular, TriangularData};

pub const INSTANCE_SCHEMA: &str = "hochwerk-instance/1";

/// The fixture used when no `--instance` is given.
pub const BUNDLED_T3: &str = include_str!("../../fixtures/t3.instance");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse { line: usize, field: String, message: String },
    #[error("validation failed for `{field}`: {diagnostic}")]
    Validation { field: String, diagnostic: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RatLit {
    Int(i64),
    Str(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    schema: Spanned<String>,
    name: Option<String>,
    #[serde(default)]
    algebras: BTreeMap<String, Spanned<RawAlgebra>>,
    #[serde(default)]
    bimodules: BTreeMap<String, Spanned<RawBimodule>>,
    #[serde(default)]
    triangular: BTreeMap<String, Spanned<RawTriangular>>,
    #[serde(default)]
    tasks: Vec<Spanned<RawTask>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    builtin: Option<Spanned<String>>,
    dim: Option<usize>,
    unit: Option<Vec<RatLit>>,
    mult: Option<Vec<Vec<Vec<RatLit>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBimodule {
    left: Spanned<String>,
    right: Spanned<String>,
    dim: usize,
    left_act: Vec<Vec<Vec<RatLit>>>,
    right_act: Vec<Vec<Vec<RatLit>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriangular {
    a: Spanned<String>,
    m: Spanned<String>,
    b: Spanned<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    op: Spanned<String>,
    suite: Option<Spanned<String>>,
    triangular: Option<Spanned<String>>,
    algebra: Option<Spanned<String>>,
    coeff: Option<Spanned<String>>,
    m: Option<Spanned<String>>,
    y: Option<Spanned<String>>,
    x: Option<Spanned<String>>,
    max_degree: Option<usize>,
    nesting: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    Verify {
        suite: Suite,
        triangular: String,
        coeff: Option<String>,
        max_degree: Option<usize>,
        nesting: Option<usize>,
    },
    Cohomology { algebra: String, coeff: String, max_degree: Option<usize> },
    Homology { algebra: String, coeff: String, max_degree: Option<usize> },
    Ext { algebra: String, m: String, y: String, max_degree: Option<usize> },
    Tor { algebra: String, x: String, m: String, max_degree: Option<usize> },
    Trace { algebra: String },
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub triangular: BTreeMap<String, TriangularData>,
    pub tasks: Vec<Task>,
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        self.src[..span.start.min(self.src.len())].matches('\n').count() + 1
    }

    fn err(&self, span: Range<usize>, field: impl Into<String>, message: impl Into<String>) -> InstanceError {
        InstanceError::Parse {
            line: self.line(span),
            field: field.into(),
            message: message.into(),
        }
    }

    fn rat(&self, lit: &RatLit, span: &Range<usize>, field: &str) -> Result<Rat, InstanceError> {
        match lit {
            RatLit::Int(n) => Ok(Rat::from_integer((*n).into())),
            RatLit::Str(s) => parse_rat(s).ok_or_else(|| self.err(span.clone(), field, format!("not a rational: {s:?}"))),
        }
    }

    fn matrix(&self, rows: &[Vec<RatLit>], dim: usize, span: &Range<usize>, field: &str) -> Result<RatMatrix, InstanceError> {
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(self.err(span.clone(), field, format!("expected a {dim}x{dim} matrix")));
        }
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|v| self.rat(v, span, field)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RatMatrix::from_dense(dim, dim, &dense))
    }
}

fn validation(field: &str, diag: impl std::fmt::Debug + std::fmt::Display) -> InstanceError {
    InstanceError::Validation {
        field: field.to_string(),
        diagnostic: format!("{diag:?}: {diag}"),
    }
}

impl Instance {
    pub fn read(path: &std::path::Path) -> Result<Instance, InstanceError> {
        let src = std::fs::read_to_string(path).map_err(|e| InstanceError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Instance::parse(&src)
    }

    pub fn bundled() -> Instance {
        Instance::parse(BUNDLED_T3).expect("bundled fixture is valid")
    }

    pub fn parse(src: &str) -> Result<Instance, InstanceError> {
        let ctx = Ctx { src };
        let raw: RawInstance = toml::from_str(src).map_err(|e| InstanceError::Parse {
            line: e.span().map_or(0, |s| ctx.line(s)),
            field: String::new(),
            message: e.message().to_string(),
        })?;
        if raw.schema.get_ref() != INSTANCE_SCHEMA {
            return Err(ctx.err(raw.schema.span(), "schema", format!("expected {INSTANCE_SCHEMA:?}")));
        }
        let mut inst = Instance {
            name: raw.name.unwrap_or_else(|| "instance".to_string()),
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            triangular: BTreeMap::new(),
            tasks: Vec::new(),
        };
        for (name, spanned) in &raw.algebras {
            let field = format!("algebras.{name}");
            let alg = parse_algebra(&ctx, spanned.get_ref(), spanned.span(), &field)?;
            alg.validate().map_err(|e| validation(&field, e))?;
            inst.algebras.insert(name.clone(), Arc::new(alg));
        }
        // Bimodules and triangular algebras may refer to each other; resolve
        // both to a fixpoint.
        let mut pending_b: Vec<_> = raw.bimodules.iter().collect();
        let mut pending_t: Vec<_> = raw.triangular.iter().collect();
        loop {
            let before = pending_b.len() + pending_t.len();
            let mut rest = Vec::new();
            for (name, spanned) in pending_b {
                let rb = spanned.get_ref();
                if declared(&inst.algebras, &rb.left) && declared(&inst.algebras, &rb.right) {
                    inst.add_bimodule(&ctx, name, spanned)?;
                } else {
                    rest.push((name, spanned));
                }
            }
            pending_b = rest;
            let mut rest = Vec::new();
            for (name, spanned) in pending_t {
                let rt = spanned.get_ref();
                let ready = declared(&inst.algebras, &rt.a)
                    && declared(&inst.algebras, &rt.b)
                    && inst.bimodules.contains_key(rt.m.get_ref());
                if ready {
                    inst.add_triangular(&ctx, name, spanned)?;
                } else {
                    rest.push((name, spanned));
                }
            }
            pending_t = rest;
            if pending_b.len() + pending_t.len() == before {
                break;
            }
        }
        // Whatever is left has a dangling reference; building it reports where.
        if let Some((name, spanned)) = pending_b.first() {
            inst.add_bimodule(&ctx, name, spanned)?;
        }
        if let Some((name, spanned)) = pending_t.first() {
            inst.add_triangular(&ctx, name, spanned)?;
        }
        for (i, spanned) in raw.tasks.iter().enumerate() {
            let task = inst.parse_task(&ctx, spanned.get_ref(), &format!("tasks[{i}]"))?;
            inst.tasks.push(task);
        }
        Ok(inst)
    }

    fn add_bimodule(&mut self, ctx: &Ctx, name: &str, spanned: &Spanned<RawBimodule>) -> Result<(), InstanceError> {
        let field = format!("bimodules.{name}");
        let raw_b = spanned.get_ref();
        if self.triangular.contains_key(name) {
            return Err(ctx.err(spanned.span(), &field, "name already in use"));
        }
        let left = self.algebra_ref(ctx, &raw_b.left, &format!("{field}.left"))?;
        let right = self.algebra_ref(ctx, &raw_b.right, &format!("{field}.right"))?;
        let span = spanned.span();
        let acts = |mats: &[Vec<Vec<RatLit>>], n: usize, which: &str| -> Result<Vec<RatMatrix>, InstanceError> {
            let f = format!("{field}.{which}");
            if mats.len() != n {
                return Err(ctx.err(span.clone(), &f, format!("expected {n} action matrices, got {}", mats.len())));
            }
            mats.iter().map(|m| ctx.matrix(m, raw_b.dim, &span, &f)).collect()
        };
        let left_act = acts(&raw_b.left_act, left.dim(), "left_act")?;
        let right_act = acts(&raw_b.right_act, right.dim(), "right_act")?;
        let bm = Bimodule::new(left, right, raw_b.dim, left_act, right_act).map_err(|e| validation(&field, e))?;
        bm.validate().map_err(|e| validation(&field, e))?;
        self.bimodules.insert(name.to_string(), bm);
        Ok(())
    }

    fn add_triangular(&mut self, ctx: &Ctx, name: &str, spanned: &Spanned<RawTriangular>) -> Result<(), InstanceError> {
        let field = format!("triangular.{name}");
        let rt = spanned.get_ref();
        if self.algebras.contains_key(name) || self.bimodules.contains_key(name) {
            return Err(ctx.err(spanned.span(), &field, "name already in use"));
        }
        let a = self.algebra_ref(ctx, &rt.a, &format!("{field}.a"))?;
        let b = self.algebra_ref(ctx, &rt.b, &format!("{field}.b"))?;
        let m = self
            .bimodules
            .get(rt.m.get_ref())
            .cloned()
            .ok_or_else(|| ctx.err(rt.m.span(), format!("{field}.m"), format!("unknown bimodule {:?}", rt.m.get_ref())))?;
        let td = build_triangular(a, m, b).map_err(|e| validation(&field, e))?;
        self.algebras.insert(name.to_string(), td.t.clone());
        self.bimodules
            .insert(format!("{name}.m"), m_as_t_bimodule(&td).map_err(|e| validation(&field, e))?);
        self.triangular.insert(name.to_string(), td);
        Ok(())
    }

    fn algebra_ref(&self, ctx: &Ctx, name: &Spanned<String>, field: &str) -> Result<Arc<Algebra>, InstanceError> {
        self.algebras
            .get(name.get_ref())
            .cloned()
            .ok_or_else(|| ctx.err(name.span(), field, format!("unknown algebra {:?}", name.get_ref())))
    }

    /// Resolves a bimodule name: a declared bimodule, `T.nestedK` for a
    /// triangular `T`, `name*` for a dual, or an algebra name for its
    /// regular bimodule.
    pub fn bimodule(&self, name: &str) -> Option<Bimodule> {
        if let Some(b) = self.bimodules.get(name) {
            return Some(b.clone());
        }
        if let Some(base) = name.strip_suffix('*') {
            return self.bimodule(base).map(|b| b.dual());
        }
        if let Some((t, depth)) = name.split_once(".nested") {
            let td = self.triangular.get(t)?;
            let depth: usize = depth.parse().ok().filter(|&d| d > 0)?;
            let nested = nested_triangular(td, depth).ok()?;
            return nested_as_t_bimodule(td, &nested).ok();
        }
        self.algebras.get(name).map(|a| Bimodule::regular(a.clone()))
    }

    fn names_bimodule(&self, name: &str) -> bool {
        if let Some((t, depth)) = name.split_once(".nested") {
            return self.triangular.contains_key(t) && depth.parse::<usize>().is_ok_and(|d| d > 0);
        }
        match name.strip_suffix('*') {
            Some(base) => self.names_bimodule(base),
            None => self.bimodules.contains_key(name) || self.algebras.contains_key(name),
        }
    }

    fn parse_task(&self, ctx: &Ctx, raw: &RawTask, field: &str) -> Result<Task, InstanceError> {
        let need = |v: &Option<Spanned<String>>, key: &str| -> Result<String, InstanceError> {
            v.as_ref()
                .map(|s| s.get_ref().clone())
                .ok_or_else(|| ctx.err(raw.op.span(), format!("{field}.{key}"), "missing"))
        };
        let check_alg = |v: &Option<Spanned<String>>, key: &str| -> Result<String, InstanceError> {
            let name = need(v, key)?;
            let span = v.as_ref().expect("present").span();
            if !self.algebras.contains_key(&name) {
                return Err(ctx.err(span, format!("{field}.{key}"), format!("unknown algebra {name:?}")));
            }
            Ok(name)
        };
        let check_bim = |v: &Option<Spanned<String>>, key: &str| -> Result<String, InstanceError> {
            let name = need(v, key)?;
            let span = v.as_ref().expect("present").span();
            if !self.names_bimodule(&name) {
                return Err(ctx.err(span, format!("{field}.{key}"), format!("unknown bimodule {name:?}")));
            }
            Ok(name)
        };
        let max_degree = raw.max_degree;
        Ok(match raw.op.get_ref().as_str() {
            "verify" => {
                let suite_name = need(&raw.suite, "suite")?;
                let suite = Suite::from_id(&suite_name).ok_or_else(|| {
                    ctx.err(raw.suite.as_ref().expect("present").span(), format!("{field}.suite"), format!("unknown suite {suite_name:?}"))
                })?;
                let triangular = need(&raw.triangular, "triangular")?;
                if !self.triangular.contains_key(&triangular) {
                    let span = raw.triangular.as_ref().expect("present").span();
                    return Err(ctx.err(span, format!("{field}.triangular"), format!("unknown triangular algebra {triangular:?}")));
                }
                let coeff = match raw.coeff {
                    Some(_) => Some(check_bim(&raw.coeff, "coeff")?),
                    None => None,
                };
                Task::Verify {
                    suite,
                    triangular,
                    coeff,
                    max_degree,
                    nesting: raw.nesting,
                }
            }
            "cohomology" => Task::Cohomology {
                algebra: check_alg(&raw.algebra, "algebra")?,
                coeff: check_bim(&raw.coeff, "coeff")?,
                max_degree,
            },
            "homology" => Task::Homology {
                algebra: check_alg(&raw.algebra, "algebra")?,
                coeff: check_bim(&raw.coeff, "coeff")?,
                max_degree,
            },
            "ext" => Task::Ext {
                algebra: check_alg(&raw.algebra, "algebra")?,
                m: check_bim(&raw.m, "m")?,
                y: check_bim(&raw.y, "y")?,
                max_degree,
            },
            "tor" => Task::Tor {
                algebra: check_alg(&raw.algebra, "algebra")?,
                x: check_bim(&raw.x, "x")?,
                m: check_bim(&raw.m, "m")?,
                max_degree,
            },
            "trace" => Task::Trace {
                algebra: check_alg(&raw.algebra, "algebra")?,
            },
            other => return Err(ctx.err(raw.op.span(), format!("{field}.op"), format!("unknown operation {other:?}"))),
        })
    }
}

fn parse_algebra(ctx: &Ctx, raw: &RawAlgebra, span: Range<usize>, field: &str) -> Result<Algebra, InstanceError> {
    if let Some(name) = &raw.builtin {
        if raw.dim.is_some() || raw.mult.is_some() || raw.unit.is_some() {
            return Err(ctx.err(span, field, "`builtin` excludes `dim`, `unit` and `mult`"));
        }
        return builtin_algebra(name.get_ref())
            .ok_or_else(|| ctx.err(name.span(), format!("{field}.builtin"), format!("unknown builtin {:?}", name.get_ref())));
    }
    let dim = raw.dim.ok_or_else(|| ctx.err(span.clone(), format!("{field}.dim"), "missing"))?;
    let mult = raw.mult.as_ref().ok_or_else(|| ctx.err(span.clone(), format!("{field}.mult"), "missing"))?;
    let mf = format!("{field}.mult");
    let constants = mult
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(|x| ctx.rat(x, &span, &mf)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let unit = raw
        .unit
        .as_ref()
        .map(|u| u.iter().map(|x| ctx.rat(x, &span, &format!("{field}.unit"))).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    Algebra::new(dim, &constants, unit).map_err(|e| validation(field, e))
}

fn declared<V>(map: &BTreeMap<String, V>, name: &Spanned<String>) -> bool {
    map.contains_key(name.get_ref())
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "schema = \"hochwerk-instance/1\"\n";

    #[test]
    fn bundled_fixture_parses() {
        let inst = Instance::bundled();
        assert_eq!(inst.triangular["T"].dim(), 3);
        assert!(inst.bimodule("T*").is_some());
        assert!(inst.bimodule("T.nested1").is_some());
        assert!(inst.bimodule("T.m").is_some());
        assert!(inst.bimodule("nope").is_none());
    }

    #[test]
    fn explicit_algebra() {
        let src = format!(
            "{HEADER}[algebras.D]\ndim = 2\nunit = [\"1\", \"1\"]\nmult = [[[\"1\",\"0\"],[\"0\",\"0\"]], [[\"0\",\"0\"],[0,1]]]\n"
        );
        let inst = Instance::parse(&src).unwrap();
        assert_eq!(inst.algebras["D"].as_ref(), &Algebra::diagonal(2));
    }

    #[test]
    fn non_associative_table_is_a_validation_error() {
        // e0 e0 = e1, e1 e0 = e1, everything else 0: (e0 e0) e0 = e1 but e0 (e0 e0) = 0.
        let src = format!(
            "{HEADER}[algebras.N]\ndim = 2\nmult = [[[0,1],[0,0]], [[0,1],[0,0]]]\n"
        );
        match Instance::parse(&src).unwrap_err() {
            InstanceError::Validation { field, diagnostic } => {
                assert_eq!(field, "algebras.N");
                assert!(diagnostic.starts_with("NotAssociative"), "{diagnostic}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dangling_algebra_name_is_a_parse_error() {
        let src = format!(
            "{HEADER}[algebras.Q]\nbuiltin = \"field\"\n\n[bimodules.M]\nleft = \"Q\"\nright = \"R\"\ndim = 1\nleft_act = [[[1]]]\nright_act = [[[1]]]\n"
        );
        match Instance::parse(&src).unwrap_err() {
            InstanceError::Parse { line, field, .. } => {
                assert_eq!(field, "bimodules.M.right");
                assert_eq!(line, 7);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_rational_and_syntax() {
        let src = format!("{HEADER}[algebras.X]\ndim = 1\nmult = [[[\"1/0\"]]]\n");
        assert!(matches!(Instance::parse(&src), Err(InstanceError::Parse { .. })));
        assert!(matches!(Instance::parse("schema = "), Err(InstanceError::Parse { line: 1, .. })));
        let wrong = "schema = \"other/1\"\n";
        assert!(matches!(Instance::parse(wrong), Err(InstanceError::Parse { .. })));
    }

    #[test]
    fn unknown_task_reference() {
        let src = format!("{HEADER}[algebras.Q]\nbuiltin = \"field\"\n\n[[tasks]]\nop = \"cohomology\"\nalgebra = \"Q\"\ncoeff = \"Z*\"\n");
        match Instance::parse(&src).unwrap_err() {
            InstanceError::Parse { line, field, .. } => {
                assert_eq!((line, field.as_str()), (8, "tasks[0].coeff"));
            }
            other => panic!("{other:?}"),
        }
    }
}
