use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Polynomial endofunctor of free modules built from the four power atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctorSpec {
    Lambda(u32),
    Sym(u32),
    DividedPower(u32),
    TensorPower(u32),
    Identity,
    Zero,
    DirectSum(Box<FunctorSpec>, Box<FunctorSpec>),
    TensorProduct(Box<FunctorSpec>, Box<FunctorSpec>),
    /// `Compose(f, g)` is `f ∘ g`: apply `g` first.
    Compose(Box<FunctorSpec>, Box<FunctorSpec>),
}

/// Homogeneity of a spec: the zero functor is homogeneous of every degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

impl FunctorSpec {
    pub fn sum(a: FunctorSpec, b: FunctorSpec) -> Self {
        FunctorSpec::DirectSum(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: FunctorSpec, b: FunctorSpec) -> Self {
        FunctorSpec::TensorProduct(Box::new(a), Box::new(b))
    }

    pub fn compose(outer: FunctorSpec, inner: FunctorSpec) -> Self {
        FunctorSpec::Compose(Box::new(outer), Box::new(inner))
    }

    /// Structural degree: atoms have degree `r`, tensor products add, compositions
    /// multiply, sums take the maximum.
    pub fn degree(&self) -> u32 {
        use FunctorSpec::*;
        match self {
            Lambda(r) | Sym(r) | DividedPower(r) | TensorPower(r) => *r,
            Identity => 1,
            Zero => 0,
            DirectSum(a, b) => a.degree().max(b.degree()),
            TensorProduct(a, b) => a.degree() + b.degree(),
            Compose(a, b) => a.degree() * b.degree(),
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        use FunctorSpec::*;
        use Homogeneity as H;
        match self {
            Lambda(r) | Sym(r) | DividedPower(r) | TensorPower(r) => H::Degree(*r),
            Identity => H::Degree(1),
            Zero => H::Zero,
            DirectSum(a, b) => match (a.homogeneity(), b.homogeneity()) {
                (H::Zero, x) | (x, H::Zero) => x,
                (H::Degree(x), H::Degree(y)) if x == y => H::Degree(x),
                _ => H::Mixed,
            },
            TensorProduct(a, b) => match (a.homogeneity(), b.homogeneity()) {
                (H::Zero, _) | (_, H::Zero) => H::Zero,
                (H::Degree(x), H::Degree(y)) => H::Degree(x + y),
                _ => H::Mixed,
            },
            Compose(a, b) => match (a.homogeneity(), b.homogeneity()) {
                (H::Zero, _) => H::Zero,
                // F(0) may be nonzero when F has a constant part
                (H::Degree(x), H::Zero) => {
                    if x == 0 {
                        H::Degree(0)
                    } else {
                        H::Zero
                    }
                }
                (H::Degree(x), H::Degree(y)) => H::Degree(x * y),
                _ => H::Mixed,
            },
        }
    }

    /// `F(0) = 0`.
    pub fn is_zero_preserving(&self) -> bool {
        super::basis::rank_of(self, 0) == 0
    }

    pub fn parse(text: &str) -> Result<Self> {
        let tokens: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty functor spec".into()));
        }
        let mut p = Parser { t: &tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != tokens.len() {
            return Err(Error::Parse(format!("unexpected {:?} at position {}", tokens[p.pos], p.pos)));
        }
        Ok(e)
    }
}

impl FromStr for FunctorSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

struct Parser<'a> {
    t: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.t.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FunctorSpec> {
        let mut e = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            e = FunctorSpec::sum(e, self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<FunctorSpec> {
        let mut e = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            e = FunctorSpec::tensor(e, self.factor()?);
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<FunctorSpec> {
        let a = self.atom()?;
        if self.peek() == Some('@') {
            self.pos += 1;
            return Ok(FunctorSpec::compose(a, self.factor()?));
        }
        Ok(a)
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at position {start}")));
        }
        let s: String = self.t[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("number {s} out of range")))
    }

    fn atom(&mut self) -> Result<FunctorSpec> {
        let Some(c) = self.peek() else {
            return Err(Error::Parse("unexpected end of functor spec".into()));
        };
        self.pos += 1;
        match c {
            'L' => Ok(FunctorSpec::Lambda(self.number()?)),
            'S' => Ok(FunctorSpec::Sym(self.number()?)),
            'G' => Ok(FunctorSpec::DividedPower(self.number()?)),
            'T' => Ok(FunctorSpec::TensorPower(self.number()?)),
            'I' => Ok(FunctorSpec::Identity),
            '0' => Ok(FunctorSpec::Zero),
            '(' => {
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse(format!("expected ')' at position {}", self.pos)));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected {other:?} at position {}", self.pos - 1))),
        }
    }
}

impl fmt::Display for FunctorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctorSpec::*;
        match self {
            Lambda(r) => write!(f, "L{r}"),
            Sym(r) => write!(f, "S{r}"),
            DividedPower(r) => write!(f, "G{r}"),
            TensorPower(r) => write!(f, "T{r}"),
            Identity => write!(f, "I"),
            Zero => write!(f, "0"),
            DirectSum(a, b) => write!(f, "({a}+{b})"),
            TensorProduct(a, b) => write!(f, "({a}*{b})"),
            Compose(a, b) => write!(f, "({a}@{b})"),
        }
    }
}
