//! The catalog expression language: specific poset classes plus combinators.
//!
//! Canonical vertex orders are frozen so that color strings are
//! deterministic:
//! * chains are emitted bottom-up;
//! * multipartite parts in parameter order, each part in index order;
//! * lattices and cubes by ascending mask / tuple value;
//! * `D(n)`: bottom, antichain, top; `V(n)`: bottom, antichain;
//! * `S(r,s,t)`: lower chain bottom-up, antichain, upper chain bottom-up;
//! * `SD(s,t)`: bottom, first chain bottom-up, second chain bottom-up, top;
//! * `SE(n)`: singletons by index, then co-singletons by excluded index;
//! * `LAM`: the two minimal vertices, then the maximum;
//!   `VEE`: the minimum, then the two maximal vertices;
//! * `NPOSET`: (w, x, y, z) with w<y, x<y, x<z;
//!   `HOOK`: (x, y, z, w) with x<y<z and x<w;
//! * `colored(e, s)` assigns `s` left-to-right in the order above;
//!   `ALT("rbr"|"brb", t)` is the alternating chain with the stated bottom.

use crate::error::ParseError;
use crate::poset::{ColoredPoset, Poset, MAX_VERTICES};
use crate::Color;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogExpr {
    Chain(u32),
    Antichain(u32),
    ChainComp(Vec<u32>),
    K(Vec<u32>),
    Q(u32),
    Diamond(u32),
    Fork(u32),
    Spindle(u32, u32, u32),
    Sd(u32, u32),
    StdExample(u32),
    Cube(u32, u32),
    Lambda,
    Vee,
    NPoset,
    Hook,
    Par(Box<CatalogExpr>, Box<CatalogExpr>),
    Ser(Box<CatalogExpr>, Box<CatalogExpr>),
    Glue(Box<CatalogExpr>, Box<CatalogExpr>),
    Colored(Box<CatalogExpr>, String),
    Alt(Color, u32),
}

impl std::fmt::Display for CatalogExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use CatalogExpr::*;
        let list = |xs: &[u32]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Chain(t) => write!(f, "C({t})"),
            Antichain(t) => write!(f, "A({t})"),
            ChainComp(ts) => write!(f, "CC({})", list(ts)),
            K(ts) => write!(f, "K({})", list(ts)),
            Q(n) => write!(f, "Q({n})"),
            Diamond(n) => write!(f, "D({n})"),
            Fork(n) => write!(f, "V({n})"),
            Spindle(r, s, t) => write!(f, "S({r},{s},{t})"),
            Sd(s, t) => write!(f, "SD({s},{t})"),
            StdExample(n) => write!(f, "SE({n})"),
            Cube(n, t) => write!(f, "CUBE({n},{t})"),
            Lambda => write!(f, "LAM"),
            Vee => write!(f, "VEE"),
            NPoset => write!(f, "NPOSET"),
            Hook => write!(f, "HOOK"),
            Par(a, b) => write!(f, "par({a},{b})"),
            Ser(a, b) => write!(f, "ser({a},{b})"),
            Glue(a, b) => write!(f, "glue({a},{b})"),
            Colored(e, s) => write!(f, "colored({e},\"{s}\")"),
            Alt(Color::Red, t) => write!(f, "ALT(\"rbr\",{t})"),
            Alt(Color::Blue, t) => write!(f, "ALT(\"brb\",{t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Built {
    Plain(Poset),
    Colored(ColoredPoset),
}

impl Built {
    pub fn len(&self) -> usize {
        match self {
            Built::Plain(p) => p.len(),
            Built::Colored(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn poset(&self) -> &Poset {
        match self {
            Built::Plain(p) => p,
            Built::Colored(c) => &c.poset,
        }
    }

    pub fn colors(&self) -> Option<&[Color]> {
        match self {
            Built::Plain(_) => None,
            Built::Colored(c) => Some(&c.colors),
        }
    }

    pub fn expect_plain(self) -> Poset {
        match self {
            Built::Plain(p) => p,
            Built::Colored(_) => panic!("expected an uncolored poset"),
        }
    }

    pub fn expect_colored(self) -> ColoredPoset {
        match self {
            Built::Plain(_) => panic!("expected a colored poset"),
            Built::Colored(c) => c,
        }
    }
}

fn arity(e: &'static str, msg: impl Into<String>) -> ParseError {
    ParseError::Arity(e, msg.into())
}

fn check_size(e: &'static str, n: usize) -> Result<(), ParseError> {
    if n == 0 || n > MAX_VERTICES {
        Err(arity(e, format!("{n} vertices, supported range is 1..=16")))
    } else {
        Ok(())
    }
}

/// Builds the poset (or colored poset) denoted by `expr`, with vertices in
/// the module-level canonical order.
pub fn build(expr: &CatalogExpr) -> Result<Built, ParseError> {
    use CatalogExpr::*;
    match expr {
        Chain(t) => {
            check_size("C", *t as usize)?;
            Ok(Built::Plain(Poset::chain(*t as usize)))
        }
        Antichain(t) => {
            check_size("A", *t as usize)?;
            Ok(Built::Plain(Poset::antichain(*t as usize)))
        }
        ChainComp(ts) => {
            if ts.is_empty() || ts.iter().any(|&t| t == 0) {
                return Err(arity("CC", "need chain lengths ≥ 1"));
            }
            check_size("CC", ts.iter().map(|&t| t as usize).sum())?;
            let mut p = Poset::chain(ts[0] as usize);
            for &t in &ts[1..] {
                p = p.parallel(&Poset::chain(t as usize));
            }
            Ok(Built::Plain(p))
        }
        K(ts) => {
            if ts.is_empty() || ts.iter().any(|&t| t == 0) {
                return Err(arity("K", "need part sizes ≥ 1"));
            }
            check_size("K", ts.iter().map(|&t| t as usize).sum())?;
            let mut p = Poset::antichain(ts[0] as usize);
            for &t in &ts[1..] {
                p = p.series(&Poset::antichain(t as usize));
            }
            Ok(Built::Plain(p))
        }
        Q(n) => {
            let sz = 1usize
                .checked_shl(*n)
                .filter(|&s| s <= MAX_VERTICES)
                .ok_or_else(|| arity("Q", "dimension capped at 4 (16 vertices)"))?;
            let mut pairs = Vec::new();
            for a in 0..sz {
                for b in 0..sz {
                    if a != b && a & b == a {
                        pairs.push((a, b));
                    }
                }
            }
            Ok(Built::Plain(Poset::from_relations(sz, &pairs).expect("subset order")))
        }
        Diamond(n) => {
            check_size("D", *n as usize + 2)?;
            if *n == 0 {
                return Err(arity("D", "antichain part must be nonempty"));
            }
            let mid = Poset::antichain(*n as usize);
            let p = Poset::chain(1).series(&mid).series(&Poset::chain(1));
            Ok(Built::Plain(p))
        }
        Fork(n) => {
            check_size("V", *n as usize + 1)?;
            if *n == 0 {
                return Err(arity("V", "antichain part must be nonempty"));
            }
            Ok(Built::Plain(Poset::chain(1).series(&Poset::antichain(*n as usize))))
        }
        Spindle(r, s, t) => {
            if *s == 0 {
                return Err(arity("S", "middle antichain must be nonempty"));
            }
            check_size("S", (*r + *s + *t) as usize)?;
            let mut p: Option<Poset> = if *r > 0 { Some(Poset::chain(*r as usize)) } else { None };
            let mid = Poset::antichain(*s as usize);
            p = Some(match p {
                Some(lo) => lo.series(&mid),
                None => mid,
            });
            if *t > 0 {
                p = Some(p.unwrap().series(&Poset::chain(*t as usize)));
            }
            Ok(Built::Plain(p.unwrap()))
        }
        Sd(s, t) => {
            if *s == 0 || *t == 0 {
                return Err(arity("SD", "both chains must be nonempty"));
            }
            check_size("SD", (*s + *t) as usize + 2)?;
            let mid = Poset::chain(*s as usize).parallel(&Poset::chain(*t as usize));
            Ok(Built::Plain(Poset::chain(1).series(&mid).series(&Poset::chain(1))))
        }
        StdExample(n) => {
            let n = *n as usize;
            if n < 3 {
                return Err(arity("SE", "needs n ≥ 3 so the two layers are distinct"));
            }
            check_size("SE", 2 * n)?;
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        pairs.push((i, n + j)); // {i+1} ⊂ [n]∖{j+1} iff i ≠ j
                    }
                }
            }
            Ok(Built::Plain(Poset::from_relations(2 * n, &pairs).expect("standard example")))
        }
        Cube(n, t) => {
            if *t == 0 {
                return Err(arity("CUBE", "alphabet size t must be ≥ 1"));
            }
            let sz = (*t as usize).checked_pow(*n).filter(|&s| s <= MAX_VERTICES);
            let sz = sz.ok_or_else(|| arity("CUBE", "t^n exceeds 16 vertices"))?;
            let n = *n as usize;
            let t = *t as usize;
            let digits = |mut v: usize| -> Vec<usize> {
                let mut d = vec![0; n];
                for slot in d.iter_mut() {
                    *slot = v % t;
                    v /= t;
                }
                d
            };
            let mut pairs = Vec::new();
            for a in 0..sz {
                for b in 0..sz {
                    if a != b {
                        let (da, db) = (digits(a), digits(b));
                        if da.iter().zip(&db).all(|(x, y)| x <= y) {
                            pairs.push((a, b));
                        }
                    }
                }
            }
            Ok(Built::Plain(Poset::from_relations(sz, &pairs).expect("domination order")))
        }
        Lambda => Ok(Built::Plain(
            Poset::from_relations(3, &[(0, 2), (1, 2)]).expect("lambda"),
        )),
        Vee => Ok(Built::Plain(
            Poset::from_relations(3, &[(0, 1), (0, 2)]).expect("vee"),
        )),
        NPoset => Ok(Built::Plain(
            Poset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).expect("n-poset"),
        )),
        Hook => Ok(Built::Plain(
            Poset::from_relations(4, &[(0, 1), (1, 2), (0, 3)]).expect("hook"),
        )),
        Par(a, b) => {
            let (pa, pb) = (build(a)?.expect_plain_or(a)?, build(b)?.expect_plain_or(b)?);
            check_size("par", pa.len() + pb.len())?;
            Ok(Built::Plain(pa.parallel(&pb)))
        }
        Ser(a, b) => {
            let (pa, pb) = (build(a)?.expect_plain_or(a)?, build(b)?.expect_plain_or(b)?);
            check_size("ser", pa.len() + pb.len())?;
            Ok(Built::Plain(pa.series(&pb)))
        }
        Glue(a, b) => {
            let (pa, pb) = (build(a)?.expect_plain_or(a)?, build(b)?.expect_plain_or(b)?);
            Ok(Built::Plain(pa.glue(&pb)?))
        }
        Colored(e, s) => {
            let p = build(e)?.expect_plain_or(e)?;
            let colors: Option<Vec<Color>> = s.chars().map(Color::from_char).collect();
            let colors = colors.ok_or_else(|| arity("colored", "color string must match [br]+"))?;
            Ok(Built::Colored(ColoredPoset::new(p, colors)?))
        }
        Alt(start, t) => {
            check_size("ALT", *t as usize)?;
            let p = Poset::chain(*t as usize);
            let colors = (0..*t)
                .map(|i| if i % 2 == 0 { *start } else { start.flip() })
                .collect();
            Ok(Built::Colored(ColoredPoset::new(p, colors).expect("lengths match")))
        }
    }
}

trait ExpectPlain {
    fn expect_plain_or(self, e: &CatalogExpr) -> Result<Poset, ParseError>;
}

impl ExpectPlain for Built {
    fn expect_plain_or(self, _e: &CatalogExpr) -> Result<Poset, ParseError> {
        match self {
            Built::Plain(p) => Ok(p),
            Built::Colored(_) => Err(ParseError::Expected(
                "an uncolored subexpression (colored posets only at the top level)",
            )),
        }
    }
}

/// Parses the poset DSL. Whitespace-insensitive, keywords case-sensitive.
///
/// Grammar: `expr := atom | par(expr,expr) | ser(expr,expr) | glue(expr,expr)
/// | colored(expr,"[br]+")`.
pub fn parse(input: &str) -> Result<CatalogExpr, ParseError> {
    let mut p = Parser { chars: input.char_indices().collect(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        let (off, c) = p.chars[p.pos];
        return Err(ParseError::UnexpectedChar(c, off));
    }
    Ok(e)
}

/// Convenience: parse and build in one step.
pub fn parse_and_build(input: &str) -> Result<Built, ParseError> {
    build(&parse(input)?)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(ParseError::UnexpectedChar(c, self.chars[self.pos].0)),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if self.pos == start {
            return match self.chars.get(self.pos) {
                Some(&(off, c)) => Err(ParseError::UnexpectedChar(c, off)),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        Ok(self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return match self.chars.get(self.pos) {
                Some(&(off, c)) => Err(ParseError::UnexpectedChar(c, off)),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| ParseError::Expected("a number"))
    }

    fn number_list(&mut self) -> Result<Vec<u32>, ParseError> {
        let mut ns = vec![self.number()?];
        while self.peek() == Some(',') {
            self.eat(',')?;
            ns.push(self.number()?);
        }
        Ok(ns)
    }

    fn string_lit(&mut self) -> Result<String, ParseError> {
        self.eat('"')?;
        let mut s = String::new();
        loop {
            match self.chars.get(self.pos) {
                Some(&(_, '"')) => {
                    self.pos += 1;
                    return Ok(s);
                }
                Some(&(_, c)) => {
                    s.push(c);
                    self.pos += 1;
                }
                None => return Err(ParseError::UnexpectedEnd),
            }
        }
    }

    fn expr(&mut self) -> Result<CatalogExpr, ParseError> {
        let name = self.ident()?;
        match name.as_str() {
            "LAM" => return Ok(CatalogExpr::Lambda),
            "VEE" => return Ok(CatalogExpr::Vee),
            "NPOSET" => return Ok(CatalogExpr::NPoset),
            "HOOK" => return Ok(CatalogExpr::Hook),
            _ => {}
        }
        self.eat('(')?;
        let out = match name.as_str() {
            "C" => CatalogExpr::Chain(self.number()?),
            "A" => CatalogExpr::Antichain(self.number()?),
            "CC" => CatalogExpr::ChainComp(self.number_list()?),
            "K" => CatalogExpr::K(self.number_list()?),
            "Q" => CatalogExpr::Q(self.number()?),
            "D" => CatalogExpr::Diamond(self.number()?),
            "V" => CatalogExpr::Fork(self.number()?),
            "S" => {
                let ns = self.number_list()?;
                if ns.len() != 3 {
                    return Err(ParseError::Arity("S", "expects (r,s,t)".into()));
                }
                CatalogExpr::Spindle(ns[0], ns[1], ns[2])
            }
            "SD" => {
                let ns = self.number_list()?;
                if ns.len() != 2 {
                    return Err(ParseError::Arity("SD", "expects (s,t)".into()));
                }
                CatalogExpr::Sd(ns[0], ns[1])
            }
            "SE" => CatalogExpr::StdExample(self.number()?),
            "CUBE" => {
                let ns = self.number_list()?;
                if ns.len() != 2 {
                    return Err(ParseError::Arity("CUBE", "expects (n,t)".into()));
                }
                CatalogExpr::Cube(ns[0], ns[1])
            }
            "par" | "ser" | "glue" => {
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                let (a, b) = (Box::new(a), Box::new(b));
                match name.as_str() {
                    "par" => CatalogExpr::Par(a, b),
                    "ser" => CatalogExpr::Ser(a, b),
                    _ => CatalogExpr::Glue(a, b),
                }
            }
            "colored" => {
                let e = self.expr()?;
                self.eat(',')?;
                self.skip_ws();
                let s = self.string_lit()?;
                CatalogExpr::Colored(Box::new(e), s)
            }
            "ALT" => {
                self.skip_ws();
                let pat = self.string_lit()?;
                let start = match pat.as_str() {
                    "rbr" => Color::Red,
                    "brb" => Color::Blue,
                    _ => return Err(ParseError::Arity("ALT", "pattern must be \"rbr\" or \"brb\"".into())),
                };
                self.eat(',')?;
                CatalogExpr::Alt(start, self.number()?)
            }
            _ => return Err(ParseError::UnknownAtom(name)),
        };
        self.eat(')')?;
        Ok(out)
    }
}
