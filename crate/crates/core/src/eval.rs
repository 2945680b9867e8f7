//! Evaluation of parsed expressions.
//!
//! Values live at three levels: single elements of `P_G`, orthogonal sets,
//! and Cuntz-Krieger classes. Binary operations promote both operands to
//! the higher level; `|` always produces at least a set.

use std::fmt;

use thiserror::Error;

use crate::ck::{CkElement, CkError, CkSemigroup};
use crate::element::GisElement;
use crate::graph::DirectedGraph;
use crate::lenz::DEFAULT_MAX_ARROW_DEPTH;
use crate::ortho::{OrthoError, OrthoSet};
use crate::syntax::{parse_expr, Expr, ParseError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Element(GisElement),
    Set(OrthoSet),
    Ck(CkElement),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    NotOrthogonal(#[from] OrthoError),
    #[error(transparent)]
    Ck(#[from] CkError),
}

impl Value {
    pub fn display<'a>(&'a self, graph: &'a DirectedGraph) -> ValueDisplay<'a> {
        ValueDisplay { graph, value: self }
    }

    /// The orthogonal set this value stands for; classes give their
    /// representative.
    pub fn to_set(&self) -> OrthoSet {
        match self {
            Value::Element(s) => OrthoSet::iota(s),
            Value::Set(a) => a.clone(),
            Value::Ck(c) => c.rep().clone(),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Value::Element(_) => 0,
            Value::Set(_) => 1,
            Value::Ck(_) => 2,
        }
    }
}

pub struct ValueDisplay<'a> {
    graph: &'a DirectedGraph,
    value: &'a Value,
}

impl fmt::Display for ValueDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Value::Element(s) => write!(f, "{}", s.display(self.graph)),
            Value::Set(a) => write!(f, "{}", a.display(self.graph)),
            Value::Ck(c) => write!(f, "{}", c.display(self.graph)),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Evaluator<'g> {
    graph: &'g DirectedGraph,
    max_arrow_depth: usize,
}

impl<'g> Evaluator<'g> {
    pub fn new(graph: &'g DirectedGraph) -> Self {
        Evaluator {
            graph,
            max_arrow_depth: DEFAULT_MAX_ARROW_DEPTH,
        }
    }

    pub fn with_max_arrow_depth(mut self, depth: usize) -> Self {
        self.max_arrow_depth = depth;
        self
    }

    fn ck(&self) -> Result<CkSemigroup<'g>, CkError> {
        Ok(CkSemigroup::new(self.graph)?.with_max_arrow_depth(self.max_arrow_depth))
    }

    pub fn eval_str(&self, src: &str) -> Result<Value, EvalError> {
        let expr = parse_expr(self.graph, src)?;
        self.eval(&expr)
    }

    pub fn eval(&self, expr: &Expr) -> Result<Value, EvalError> {
        match expr {
            Expr::Element(s) => Ok(Value::Element(s.clone())),
            Expr::Set(list) => Ok(Value::Set(OrthoSet::new_in(self.graph, list.iter().cloned())?)),
            Expr::Ck(list) => {
                let set = OrthoSet::new_in(self.graph, list.iter().cloned())?;
                Ok(Value::Ck(self.ck()?.class_of(&set)))
            }
            Expr::Inverse(inner) => Ok(match self.eval(inner)? {
                Value::Element(s) => Value::Element(s.inverse()),
                Value::Set(a) => Value::Set(a.inverse()),
                Value::Ck(c) => Value::Ck(self.ck()?.inverse(&c)),
            }),
            Expr::Product(items) => {
                let mut acc = self.eval(&items[0])?;
                for item in &items[1..] {
                    acc = self.multiply(&acc, &self.eval(item)?)?;
                }
                Ok(acc)
            }
            Expr::Join(items) => {
                let mut acc = self.eval(&items[0])?;
                for item in &items[1..] {
                    acc = self.join(&acc, &self.eval(item)?)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn multiply(&self, a: &Value, b: &Value) -> Result<Value, EvalError> {
        Ok(match (a, b) {
            (Value::Element(s), Value::Element(t)) => Value::Element(s.multiply(t)),
            _ if a.level().max(b.level()) == 1 => Value::Set(a.to_set().product(&b.to_set())),
            _ => {
                let ck = self.ck()?;
                Value::Ck(ck.multiply(&ck.class_of(&a.to_set()), &ck.class_of(&b.to_set())))
            }
        })
    }

    pub fn join(&self, a: &Value, b: &Value) -> Result<Value, EvalError> {
        if a.level().max(b.level()) <= 1 {
            return Ok(Value::Set(a.to_set().ortho_join_in(self.graph, &b.to_set())?));
        }
        let ck = self.ck()?;
        Ok(Value::Ck(ck.join(&ck.class_of(&a.to_set()), &ck.class_of(&b.to_set()))?))
    }
}
