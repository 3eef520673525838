use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::term::Iri;

/// A variable in an estimand. Primed copies are summation indices distinct
/// from the intervened value of the same node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub node: Iri,
    pub primes: u8,
}

impl Var {
    pub fn new(node: Iri) -> Self {
        Self { node, primes: 0 }
    }

    pub fn primed(node: Iri) -> Self {
        Self { node, primes: 1 }
    }
}

/// Observational expression tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    /// `P(target | given)`; `given` may be empty.
    Prob { target: Vec<Var>, given: Vec<Var> },
    SumOver { vars: Vec<Var>, body: Box<Expr> },
    Product(Vec<Expr>),
    Difference(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn prob(target: impl IntoIterator<Item = Var>, given: impl IntoIterator<Item = Var>) -> Self {
        Expr::Prob { target: target.into_iter().collect(), given: given.into_iter().collect() }
    }

    pub fn sum(vars: impl IntoIterator<Item = Var>, body: Expr) -> Self {
        let vars: Vec<Var> = vars.into_iter().collect();
        if vars.is_empty() {
            body
        } else {
            Expr::SumOver { vars, body: Box::new(body) }
        }
    }

    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Expr::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().expect("one factor")
        } else {
            Expr::Product(flat)
        }
    }

    /// Free (unsummed) variables.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            Expr::Prob { target, given } => target.iter().chain(given).cloned().collect(),
            Expr::SumOver { vars, body } => {
                let mut free = body.free_vars();
                for v in vars {
                    free.remove(v);
                }
                free
            }
            Expr::Product(fs) => fs.iter().flat_map(Expr::free_vars).collect(),
            Expr::Difference(a, b) => {
                let mut free = a.free_vars();
                free.extend(b.free_vars());
                free
            }
        }
    }

    /// Text such as `sum_{Z} P(Y|X,Z) * P(Z)`.
    pub fn render(&self, name: &dyn Fn(&Iri) -> String) -> String {
        let mut out = String::new();
        self.render_into(&mut out, name);
        out
    }

    fn render_into(&self, out: &mut String, name: &dyn Fn(&Iri) -> String) {
        let var = |out: &mut String, v: &Var| {
            out.push_str(&name(&v.node));
            for _ in 0..v.primes {
                out.push('\'');
            }
        };
        let list = |out: &mut String, vs: &[Var]| {
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                var(out, v);
            }
        };
        match self {
            Expr::Prob { target, given } => {
                out.push_str("P(");
                list(out, target);
                if !given.is_empty() {
                    out.push('|');
                    list(out, given);
                }
                out.push(')');
            }
            Expr::SumOver { vars, body } => {
                out.push_str("sum_{");
                list(out, vars);
                out.push_str("} ");
                body.render_into(out, name);
            }
            Expr::Product(fs) => {
                for (i, f) in fs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" * ");
                    }
                    let wrap = matches!(f, Expr::Difference(..)) || (matches!(f, Expr::SumOver { .. }) && i + 1 < fs.len());
                    if wrap {
                        out.push('(');
                    }
                    f.render_into(out, name);
                    if wrap {
                        out.push(')');
                    }
                }
            }
            Expr::Difference(a, b) => {
                a.render_into(out, name);
                out.push_str(" - ");
                let wrap = matches!(**b, Expr::Difference(..));
                if wrap {
                    out.push('(');
                }
                b.render_into(out, name);
                if wrap {
                    out.push(')');
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    BackDoor,
    FrontDoor,
    InstrumentalVariable,
    DoCalculus,
    Unidentified,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::BackDoor => "back-door",
            Strategy::FrontDoor => "front-door",
            Strategy::InstrumentalVariable => "instrumental-variable",
            Strategy::DoCalculus => "do-calculus",
            Strategy::Unidentified => "unidentified",
        }
    }
}

/// One rewrite applied while deriving an estimand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    /// 1, 2 or 3 for the do-calculus rules; 0 for conditioning expansion.
    pub rule: u8,
    pub detail: String,
}

/// The identified form of `P(effect | do(cause))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimand {
    pub cause: Iri,
    pub effect: Iri,
    pub strategy: Strategy,
    /// `None` when unidentified or when no nonparametric closed form exists.
    pub expr: Option<Expr>,
    pub adjustment: Option<BTreeSet<Iri>>,
    pub mediators: Option<BTreeSet<Iri>>,
    pub instruments: Vec<Iri>,
    pub derivation: Vec<DerivationStep>,
}

impl Estimand {
    pub fn unidentified(cause: Iri, effect: Iri) -> Self {
        Self {
            cause,
            effect,
            strategy: Strategy::Unidentified,
            expr: None,
            adjustment: None,
            mediators: None,
            instruments: Vec::new(),
            derivation: Vec::new(),
        }
    }

    pub fn is_identified(&self) -> bool {
        self.expr.is_some()
    }

    /// Rendered expression, or a tag when there is none.
    pub fn render(&self, name: &dyn Fn(&Iri) -> String) -> String {
        match (&self.expr, self.strategy) {
            (Some(e), _) => e.render(name),
            (None, Strategy::InstrumentalVariable) => {
                let mut s = String::from("IV(");
                for (i, z) in self.instruments.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    s.push_str(&name(z));
                }
                s.push_str(") no nonparametric closed form");
                s
            }
            (None, _) => "unidentified".to_string(),
        }
    }

    pub fn render_local(&self) -> String {
        self.render(&|i: &Iri| i.local_name().to_string())
    }
}
