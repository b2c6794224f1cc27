use std::collections::BTreeSet;
use std::fmt;

/// A formal motive expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Motive {
    Variety(String),
    Tate(i64),
    Sum(Vec<Motive>),
    Tensor(Vec<Motive>),
    Twist(Box<Motive>, i64),
    SummandOf {
        parent: Box<Motive>,
        cert: Option<String>,
    },
}

impl Motive {
    pub fn variety(id: impl Into<String>) -> Self {
        Motive::Variety(id.into())
    }

    /// Twists by `n`, folding nested twists and Tate objects.
    pub fn twist(self, n: i64) -> Self {
        match self {
            _ if n == 0 => self,
            Motive::Tate(k) => Motive::Tate(k + n),
            Motive::Twist(inner, k) if k + n == 0 => *inner,
            Motive::Twist(inner, k) => Motive::Twist(inner, k + n),
            other => Motive::Twist(Box::new(other), n),
        }
    }

    /// `1 + 1(-1) + .. + 1(-r)`, the motive of `P^r`.
    pub fn tate_sum(r: u32) -> Self {
        Motive::Sum((0..=r as i64).map(|i| Motive::Tate(-i)).collect())
    }

    /// Variety ids appearing anywhere in the expression.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Motive::Variety(id) => {
                out.insert(id.clone());
            }
            Motive::Tate(_) => {}
            Motive::Sum(xs) | Motive::Tensor(xs) => xs.iter().for_each(|x| x.collect_atoms(out)),
            Motive::Twist(m, _) => m.collect_atoms(out),
            Motive::SummandOf { parent, .. } => parent.collect_atoms(out),
        }
    }

    /// Certificate ids referenced by `summand(.., by=..)` nodes.
    pub fn cert_refs(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs(&self, out: &mut BTreeSet<String>) {
        match self {
            Motive::Variety(_) | Motive::Tate(_) => {}
            Motive::Sum(xs) | Motive::Tensor(xs) => xs.iter().for_each(|x| x.collect_refs(out)),
            Motive::Twist(m, _) => m.collect_refs(out),
            Motive::SummandOf { parent, cert } => {
                out.extend(cert.iter().cloned());
                parent.collect_refs(out);
            }
        }
    }

    /// Formal iff every atom is: Tate objects always are, and sums,
    /// tensors, twists and summands preserve formality.
    pub fn is_formal_given(&self, formal: &dyn Fn(&str) -> bool) -> bool {
        self.atoms().iter().all(|a| formal(a))
    }

    pub fn map_atoms(&self, f: &dyn Fn(&str) -> String) -> Self {
        match self {
            Motive::Variety(id) => Motive::Variety(f(id)),
            Motive::Tate(n) => Motive::Tate(*n),
            Motive::Sum(xs) => Motive::Sum(xs.iter().map(|x| x.map_atoms(f)).collect()),
            Motive::Tensor(xs) => Motive::Tensor(xs.iter().map(|x| x.map_atoms(f)).collect()),
            Motive::Twist(m, n) => Motive::Twist(Box::new(m.map_atoms(f)), *n),
            Motive::SummandOf { parent, cert } => Motive::SummandOf {
                parent: Box::new(parent.map_atoms(f)),
                cert: cert.clone(),
            },
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // prec: 0 = sum context, 1 = tensor operand, 2 = twist operand
        match self {
            Motive::Variety(id) => write!(f, "M({id})"),
            Motive::Tate(n) => write!(f, "1({n})"),
            Motive::Sum(xs) if xs.is_empty() => f.write_str("0"),
            Motive::Tensor(xs) if xs.is_empty() => f.write_str("1(0)"),
            Motive::Sum(xs) => join(f, xs, " + ", 0, prec > 0),
            Motive::Tensor(xs) => join(f, xs, " * ", 1, prec > 1),
            Motive::Twist(m, n) => {
                m.fmt_prec(f, 2)?;
                write!(f, "({n})")
            }
            Motive::SummandOf { parent, cert } => {
                write!(f, "summand(")?;
                parent.fmt_prec(f, 0)?;
                if let Some(c) = cert {
                    write!(f, ", by={c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn join(f: &mut fmt::Formatter<'_>, xs: &[Motive], sep: &str, inner: u8, paren: bool) -> fmt::Result {
    if paren {
        f.write_str("(")?;
    }
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        x.fmt_prec(f, inner + 1)?;
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Motive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Parses the expression grammar
///
/// ```text
/// sum     := tensor ("+" tensor)*
/// tensor  := postfix ("*" postfix)*
/// postfix := atom ("(" int ")")*
/// atom    := "M(" ident ")" | "1(" int ")" | "0"
///          | "summand(" sum ["," "by=" ident] ")" | "(" sum ")"
/// ```
pub fn parse_motive(src: &str) -> Result<Motive, String> {
    let mut p = Parser { src, pos: 0 };
    let m = p.sum()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(format!("unexpected '{}' at column {}", &src[p.pos..], p.pos + 1));
    }
    Ok(m)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), String> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(format!("expected '{tok}' at column {}", self.pos + 1))
        }
    }

    fn ident(&mut self) -> Result<String, String> {
        self.skip_ws();
        let len = self
            .rest()
            .char_indices()
            .take_while(|&(i, c)| c == '_' || c.is_ascii_alphabetic() || (i > 0 && (c.is_ascii_digit() || c == '.')))
            .count();
        if len == 0 {
            return Err(format!("expected an identifier at column {}", self.pos + 1));
        }
        let id = self.rest()[..len].to_string();
        self.pos += len;
        Ok(id)
    }

    fn int(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
            .count();
        let n = rest[..len]
            .parse()
            .map_err(|_| format!("expected an integer at column {}", self.pos + 1))?;
        self.pos += len;
        Ok(n)
    }

    fn sum(&mut self) -> Result<Motive, String> {
        let mut xs = vec![self.tensor()?];
        while self.eat("+") {
            xs.push(self.tensor()?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Motive::Sum(xs) })
    }

    fn tensor(&mut self) -> Result<Motive, String> {
        let mut xs = vec![self.postfix()?];
        while self.eat("*") {
            xs.push(self.postfix()?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Motive::Tensor(xs) })
    }

    fn postfix(&mut self) -> Result<Motive, String> {
        let mut m = self.atom()?;
        while self.eat("(") {
            let n = self.int()?;
            self.expect(")")?;
            m = m.twist(n);
        }
        Ok(m)
    }

    fn atom(&mut self) -> Result<Motive, String> {
        if self.eat("M(") {
            let id = self.ident()?;
            self.expect(")")?;
            Ok(Motive::Variety(id))
        } else if self.eat("1(") {
            let n = self.int()?;
            self.expect(")")?;
            Ok(Motive::Tate(n))
        } else if self.eat("summand(") {
            let parent = self.sum()?;
            let cert = if self.eat(",") {
                self.expect("by=")?;
                Some(self.ident()?)
            } else {
                None
            };
            self.expect(")")?;
            Ok(Motive::SummandOf {
                parent: Box::new(parent),
                cert,
            })
        } else if self.eat("(") {
            let m = self.sum()?;
            self.expect(")")?;
            Ok(m)
        } else if self.eat("0") {
            Ok(Motive::Sum(Vec::new()))
        } else {
            Err(format!("expected a motive at column {}", self.pos + 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twists_compose() {
        let m = Motive::variety("X").twist(-1).twist(-2);
        assert_eq!(m, Motive::Twist(Box::new(Motive::variety("X")), -3));
        assert_eq!(Motive::Tate(0).twist(-2), Motive::Tate(-2));
        assert_eq!(Motive::variety("X").twist(3).twist(-3), Motive::variety("X"));
    }

    #[test]
    fn parse_and_print() {
        for src in [
            "1(0) + 1(-1) + 1(-2)",
            "M(P2) + 1(-1)",
            "M(X) * M(Y)",
            "(M(X) + M(Y)) * M(Z)",
            "M(X)(-1)",
            "(M(X) + 1(0))(-2)",
            "(M(X) * M(Y))(-1)",
            "summand(M(X.hilb2)(-1), by=c3)",
            "summand(M(X) * M(X))",
        ] {
            let m = parse_motive(src).unwrap();
            assert_eq!(m.to_string(), src);
            assert_eq!(parse_motive(&m.to_string()).unwrap(), m);
        }
    }

    #[test]
    fn precedence() {
        let m = parse_motive("M(A) + M(B) * M(C)").unwrap();
        assert_eq!(
            m,
            Motive::Sum(vec![
                Motive::variety("A"),
                Motive::Tensor(vec![Motive::variety("B"), Motive::variety("C")])
            ])
        );
        assert_eq!(parse_motive("1(0)(-1)").unwrap(), Motive::Tate(-1));
    }

    #[test]
    fn errors_carry_columns() {
        let err = parse_motive("M(X) + ").unwrap_err();
        assert!(err.contains("column"), "{err}");
        assert!(parse_motive("M(X) M(Y)").is_err());
    }

    #[test]
    fn atoms_and_refs() {
        let m = parse_motive("summand(M(A) * M(B), by=c1) + M(A)(-1) + 1(-3)").unwrap();
        assert_eq!(m.atoms().into_iter().collect::<Vec<_>>(), ["A", "B"]);
        assert_eq!(m.cert_refs().into_iter().collect::<Vec<_>>(), ["c1"]);
    }
}
