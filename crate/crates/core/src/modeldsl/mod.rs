//! Approximation models: integer-parameter expressions `Z*^n → R`.
//!
//! Concrete syntax (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ['-'] atom
//! atom   := INT | PARAM | 'log2' | 'log3'
//!         | 'sqrt' '(' expr ')' | 'root' '(' INT ',' expr ')' | '(' expr ')'
//! PARAM  := 'a' [1-9] [0-9]?
//! ```
//!
//! Integer literals are part of the model; only `a`-parameters count toward
//! the size of an approximation. Models are stored in canonical form: the
//! two operands of every `+` and `*` node are ordered by node kind, then by
//! their rendering. No other rewriting is ever applied, since algebraically
//! equivalent forms of one approximation have different measures.

mod eval;
mod parser;
mod printer;

use std::cmp::Ordering;
use std::fmt;

pub use eval::{evaluate, evaluate_i64, Domain, RealDomain};
pub(crate) use eval::check_params;

use crate::error::{Error, Result};

/// Expression tree of a model. Parameters are 1-based (`a1` is `Param(1)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModelExpr {
    Int(u64),
    Param(usize),
    Log2,
    Log3,
    Neg(Box<ModelExpr>),
    Add(Box<ModelExpr>, Box<ModelExpr>),
    Sub(Box<ModelExpr>, Box<ModelExpr>),
    Mul(Box<ModelExpr>, Box<ModelExpr>),
    Div(Box<ModelExpr>, Box<ModelExpr>),
    Sqrt(Box<ModelExpr>),
    Root(u32, Box<ModelExpr>),
}

impl ModelExpr {
    fn kind_rank(&self) -> u8 {
        match self {
            ModelExpr::Param(_) => 0,
            ModelExpr::Int(_) => 1,
            ModelExpr::Log2 | ModelExpr::Log3 => 2,
            ModelExpr::Neg(_) => 3,
            ModelExpr::Sqrt(_) => 4,
            ModelExpr::Root(..) => 5,
            ModelExpr::Mul(..) => 6,
            ModelExpr::Div(..) => 7,
            ModelExpr::Add(..) => 8,
            ModelExpr::Sub(..) => 9,
        }
    }

    fn canonical_order(a: &ModelExpr, b: &ModelExpr) -> Ordering {
        a.kind_rank()
            .cmp(&b.kind_rank())
            .then_with(|| printer::render(a).cmp(&printer::render(b)))
    }

    /// Orders the operands of commutative nodes, bottom-up.
    pub fn canonicalize(self) -> ModelExpr {
        use ModelExpr::*;
        let sorted = |a: ModelExpr, b: ModelExpr| {
            let (a, b) = (a.canonicalize(), b.canonicalize());
            if ModelExpr::canonical_order(&a, &b) == Ordering::Greater {
                (Box::new(b), Box::new(a))
            } else {
                (Box::new(a), Box::new(b))
            }
        };
        match self {
            Add(a, b) => {
                let (a, b) = sorted(*a, *b);
                Add(a, b)
            }
            Mul(a, b) => {
                let (a, b) = sorted(*a, *b);
                Mul(a, b)
            }
            Sub(a, b) => Sub(Box::new(a.canonicalize()), Box::new(b.canonicalize())),
            Div(a, b) => Div(Box::new(a.canonicalize()), Box::new(b.canonicalize())),
            Neg(a) => Neg(Box::new(a.canonicalize())),
            Sqrt(a) => Sqrt(Box::new(a.canonicalize())),
            Root(k, a) => Root(k, Box::new(a.canonicalize())),
            leaf => leaf,
        }
    }

    fn collect_params(&self, out: &mut Vec<usize>) {
        use ModelExpr::*;
        match self {
            Param(i) => out.push(*i),
            Int(_) | Log2 | Log3 => {}
            Neg(a) | Sqrt(a) | Root(_, a) => a.collect_params(out),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
        }
    }
}

/// A parsed model of `arity` parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model {
    expr: ModelExpr,
    arity: usize,
    source_text: String,
}

impl Model {
    /// Builds a model from an expression tree, checking the parameter and
    /// divisor invariants and canonicalizing.
    pub fn from_expr(expr: ModelExpr, source_text: impl Into<String>) -> Result<Model> {
        check_no_zero_divisor(&expr)?;
        let mut idx = Vec::new();
        expr.collect_params(&mut idx);
        idx.sort_unstable();
        idx.dedup();
        let arity = idx.len();
        if let Some(missing) = (1..=arity).find(|i| idx[i - 1] != *i) {
            return Err(Error::ParameterGap(missing));
        }
        if arity == 0 {
            return Err(Error::Syntax {
                pos: 0,
                msg: "a model needs at least one parameter".into(),
            });
        }
        Ok(Model {
            expr: expr.canonicalize(),
            arity,
            source_text: source_text.into(),
        })
    }

    pub fn expr(&self) -> &ModelExpr {
        &self.expr
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    /// Canonical text form; see [`format_model`].
    pub fn canonical_text(&self) -> String {
        printer::render(&self.expr)
    }

    /// `a1/a2`, the rational model.
    pub fn is_rational_model(&self) -> bool {
        matches!(&self.expr, ModelExpr::Div(a, b)
            if **a == ModelExpr::Param(1) && **b == ModelExpr::Param(2))
    }

    pub fn rational() -> Model {
        parse_model("a1/a2").expect("rational model parses")
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Model> {
        parse_model(s)
    }
}

fn check_no_zero_divisor(e: &ModelExpr) -> Result<()> {
    use ModelExpr::*;
    match e {
        Div(_, b) if **b == Int(0) => Err(Error::ZeroDivisor),
        Int(_) | Param(_) | Log2 | Log3 => Ok(()),
        Neg(a) | Sqrt(a) | Root(_, a) => check_no_zero_divisor(a),
        Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => {
            check_no_zero_divisor(a)?;
            check_no_zero_divisor(b)
        }
    }
}

/// Parses model text into a canonical [`Model`].
pub fn parse_model(text: &str) -> Result<Model> {
    let expr = parser::parse(text)?;
    Model::from_expr(expr, text)
}

/// Canonical text of a model: no whitespace, commutative operands ordered,
/// and only the parentheses needed to reproduce the tree.
pub fn format_model(model: &Model) -> String {
    model.canonical_text()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classic_models_parse_with_expected_arity() {
        assert_eq!(parse_model("a1/a2").unwrap().arity(), 2);
        assert_eq!(parse_model("a1 + a2*sqrt(2)").unwrap().arity(), 2);
        assert_eq!(parse_model("a1 + a2*sqrt(a3)").unwrap().arity(), 3);
        assert_eq!(parse_model("a1/(a2 + a3*log2 + a4*log3)").unwrap().arity(), 4);
        assert!(parse_model("a1/a2").unwrap().is_rational_model());
        assert!(!parse_model("a2/a1").unwrap().is_rational_model());
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_model(&parse_model("a1 /a2").unwrap()), "a1/a2");
        assert_eq!(
            format_model(&parse_model("sqrt(sqrt(a2))*a1").unwrap()),
            "a1*sqrt(sqrt(a2))"
        );
        assert_eq!(format_model(&parse_model("a1-(a2-a3)").unwrap()), "a1-(a2-a3)");
        assert_eq!(format_model(&parse_model("(a1-a2)-a3").unwrap()), "a1-a2-a3");
        assert_eq!(format_model(&parse_model("a1/(a2*a3)").unwrap()), "a1/(a2*a3)");
        assert_eq!(format_model(&parse_model("-(a1*a2)").unwrap()), "-(a1*a2)");
        assert_eq!(format_model(&parse_model("root( 3 , a1 )").unwrap()), "root(3,a1)");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_model("a1 + a3"), Err(Error::ParameterGap(2))));
        assert!(matches!(parse_model("a1/0"), Err(Error::ZeroDivisor)));
        assert!(matches!(parse_model("a1/(0)"), Err(Error::ZeroDivisor)));
        assert!(matches!(parse_model("a1 a2"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_model("a1 +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_model("a0"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_model("a100"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_model("root(1, a1)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_model("2*a1a2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_model("log5"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_model("3"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_model("2 a1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn fixture_models_round_trip() {
        let texts = [
            "sqrt(a1)+sqrt(a2)",
            "a1/a2*sqrt(a3)",
            "sqrt(a1/a2 - a3*sqrt(a4))",
            "a1/a2*(a3+sqrt(a4))",
            "a1 - a2/a3*sqrt(a4/a5)",
            "a1 + sqrt(a2/a3*sqrt(a4) - sqrt(a5) - 4*sqrt(a6) + a7)",
            "a1/(a2 + a3*log2 + a4*log3)",
            "-root(3, -a1) * (a2 - -a3)",
        ];
        for text in texts {
            let m = parse_model(text).unwrap();
            let again = parse_model(&format_model(&m)).unwrap();
            assert_eq!(again.expr(), m.expr(), "{text}");
        }
    }

    fn arb_expr() -> impl Strategy<Value = ModelExpr> {
        let leaf = prop_oneof![
            (1usize..4).prop_map(ModelExpr::Param),
            (0u64..20).prop_map(ModelExpr::Int),
            Just(ModelExpr::Log2),
            Just(ModelExpr::Log3),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| ModelExpr::Neg(Box::new(a))),
                inner.clone().prop_map(|a| ModelExpr::Sqrt(Box::new(a))),
                (2u32..5, inner.clone()).prop_map(|(k, a)| ModelExpr::Root(k, Box::new(a))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ModelExpr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ModelExpr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ModelExpr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner).prop_map(|(a, b)| ModelExpr::Div(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_format_round_trip(e in arb_expr()) {
            if let Ok(m) = Model::from_expr(e, "") {
                let text = format_model(&m);
                let back = parse_model(&text).unwrap();
                prop_assert_eq!(back.expr(), m.expr());
                prop_assert_eq!(format_model(&back), text);
            }
        }
    }
}
