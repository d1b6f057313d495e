//! Construction expressions: a small term language naming permutation groups.
//!
//! ```text
//! expr := "cyc(" int ")" | "sym(" int ")" | "alt(" int ")" | "dih(" int ")"
//!       | "table(" name ")" | "reg(" name ")" | "hol(" name ")"
//!       | "diag(" name "," int ")"
//!       | ("dp" | "wri" | "wrp") "(" expr "," expr ")"
//!       | "coset(" expr "," string ")"
//! ```
//!
//! Whitespace between tokens is ignored. Error offsets are 1-based character
//! positions; an unexpected end of input is reported one past the last
//! character. Table names are those accepted by [`CayleyTable::by_name`].

use std::fmt;

use crate::cayley::{CayleyTable, DEFAULT_TABLE_BUDGET};
use crate::construct::{self, DEFAULT_MAX_DEGREE};
use crate::error::{budget, Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Cyclic group generated by an n-cycle.
    Cyc(usize),
    Sym(usize),
    Alt(usize),
    /// Dihedral group of order 2n on the vertices of an n-gon.
    Dih(usize),
    /// The named abstract group in its natural action.
    Table(String),
    /// The named abstract group acting on itself by right multiplication.
    Reg(String),
    Dp(Box<Expr>, Box<Expr>),
    /// Imprimitive wreath product `x ≀ y`.
    Wri(Box<Expr>, Box<Expr>),
    /// Wreath product `x ≀ y` in product action.
    Wrp(Box<Expr>, Box<Expr>),
    Hol(String),
    Diag(String, usize),
    /// Action of `x` on the right cosets of the subgroup with the given
    /// `;`-separated generators.
    Coset(Box<Expr>, String),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Cyc(n) => write!(f, "cyc({n})"),
            Expr::Sym(n) => write!(f, "sym({n})"),
            Expr::Alt(n) => write!(f, "alt({n})"),
            Expr::Dih(n) => write!(f, "dih({n})"),
            Expr::Table(s) => write!(f, "table({s})"),
            Expr::Reg(s) => write!(f, "reg({s})"),
            Expr::Dp(a, b) => write!(f, "dp({a},{b})"),
            Expr::Wri(a, b) => write!(f, "wri({a},{b})"),
            Expr::Wrp(a, b) => write!(f, "wrp({a},{b})"),
            Expr::Hol(s) => write!(f, "hol({s})"),
            Expr::Diag(s, m) => write!(f, "diag({s},{m})"),
            Expr::Coset(a, g) => write!(f, "coset({a},\"{g}\")"),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    /// Open constructor parentheses.
    depth: usize,
}

impl Parser {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Expr {
            offset: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            None if self.depth > 0 => Err(self.error(format!("unbalanced parenthesis: expected '{want}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
        }
    }

    fn word(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.chars.get(self.pos) {
                None => self.error("unexpected end of input"),
                Some(c) => self.error(format!("unexpected '{c}'")),
            });
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let w = self.word()?;
        w.parse().map_err(|_| Error::Expr {
            offset: start + 1,
            msg: format!("expected an integer, found '{w}'"),
        })
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        let w = self.word()?;
        CayleyTable::by_name(&w).map_err(|_| Error::Expr {
            offset: start + 1,
            msg: format!("unknown table name '{w}'"),
        })?;
        Ok(w)
    }

    fn string(&mut self) -> Result<String> {
        self.expect('"')?;
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| c != '"') {
            self.pos += 1;
        }
        if self.pos == self.chars.len() {
            return Err(self.error("unterminated string"));
        }
        let s = self.chars[start..self.pos].iter().collect();
        self.pos += 1;
        Ok(s)
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        let head = self.word()?;
        self.expect('(')?;
        self.depth += 1;
        let e = match head.as_str() {
            "cyc" => Expr::Cyc(self.int()?),
            "sym" => Expr::Sym(self.int()?),
            "alt" => Expr::Alt(self.int()?),
            "dih" => Expr::Dih(self.int()?),
            "table" => Expr::Table(self.name()?),
            "reg" => Expr::Reg(self.name()?),
            "hol" => Expr::Hol(self.name()?),
            "diag" => {
                let name = self.name()?;
                self.expect(',')?;
                Expr::Diag(name, self.int()?)
            }
            "dp" | "wri" | "wrp" => {
                let a = Box::new(self.expr()?);
                self.expect(',')?;
                let b = Box::new(self.expr()?);
                match head.as_str() {
                    "dp" => Expr::Dp(a, b),
                    "wri" => Expr::Wri(a, b),
                    _ => Expr::Wrp(a, b),
                }
            }
            "coset" => {
                let a = Box::new(self.expr()?);
                self.expect(',')?;
                Expr::Coset(a, self.string()?)
            }
            _ => {
                return Err(Error::Expr {
                    offset: start + 1,
                    msg: format!("unknown constructor '{head}'"),
                })
            }
        };
        if self.peek() == Some(',') {
            return Err(self.error(format!("too many arguments to '{head}'")));
        }
        self.expect(')')?;
        self.depth -= 1;
        Ok(e)
    }
}

/// Limits applied while elaborating an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildLimits {
    pub max_degree: usize,
    /// Largest table whose automorphism group is enumerated.
    pub max_table: usize,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits {
            max_degree: DEFAULT_MAX_DEGREE,
            max_table: DEFAULT_TABLE_BUDGET,
        }
    }
}

/// An elaborated group, with a regular normal subgroup when the construction
/// provides one explicitly.
#[derive(Clone, Debug)]
pub struct Built {
    pub group: PermGroup,
    pub regular_normal: Option<PermGroup>,
}

impl Expr {
    pub fn build(&self, limits: &BuildLimits) -> Result<PermGroup> {
        Ok(self.build_with_rns(limits)?.group)
    }

    pub fn build_with_rns(&self, limits: &BuildLimits) -> Result<Built> {
        let check = |n: usize| {
            if n == 0 {
                Err(Error::InvalidArgument("degree must be positive".into()))
            } else if n > limits.max_degree {
                Err(budget("degree", limits.max_degree as u64))
            } else {
                Ok(n)
            }
        };
        let built = match self {
            Expr::Cyc(n) => {
                let g = PermGroup::cyclic(check(*n)?);
                Built {
                    regular_normal: Some(g.clone()),
                    group: g,
                }
            }
            Expr::Sym(n) => plain(PermGroup::symmetric(check(*n)?)),
            Expr::Alt(n) => plain(PermGroup::alternating(check(*n)?)),
            Expr::Dih(n) => {
                let n = check(*n)?;
                let g = PermGroup::dihedral(n);
                let rns = if n >= 3 { PermGroup::cyclic(n) } else { g.clone() };
                Built {
                    group: g,
                    regular_normal: Some(rns),
                }
            }
            Expr::Table(name) => plain(natural_action(name)?),
            Expr::Reg(name) => {
                let g = construct::regular_action(&CayleyTable::by_name(name)?);
                check(g.degree())?;
                Built {
                    regular_normal: Some(g.clone()),
                    group: g,
                }
            }
            Expr::Hol(name) => {
                let t = CayleyTable::by_name(name)?;
                check(t.order())?;
                Built {
                    group: construct::holomorph(&t, limits.max_table)?,
                    regular_normal: Some(construct::regular_action(&t)),
                }
            }
            Expr::Diag(name, m) => {
                let t = CayleyTable::by_name(name)?;
                let group = construct::diagonal_group(&t, *m, limits.max_degree, limits.max_table)?;
                // coordinate right multiplications are normal only when the
                // twist, which moves the quotiented factor, centralizes them
                let regular_normal = if t.is_abelian() {
                    let coords = PermGroup::trivial(*m);
                    Some(construct::wreath_product_action(
                        &construct::regular_action(&t),
                        &coords,
                        limits.max_degree,
                    )?)
                } else {
                    None
                };
                Built { group, regular_normal }
            }
            Expr::Dp(a, b) => {
                let (a, b) = (a.build_with_rns(limits)?, b.build_with_rns(limits)?);
                check(a.group.degree() * b.group.degree())?;
                Built {
                    group: construct::direct_product(&a.group, &b.group),
                    regular_normal: a
                        .regular_normal
                        .zip(b.regular_normal)
                        .map(|(x, y)| construct::direct_product(&x, &y)),
                }
            }
            Expr::Wri(a, b) => {
                let (a, b) = (a.build(limits)?, b.build(limits)?);
                check(a.degree() * b.degree())?;
                plain(construct::wreath_imprimitive(&a, &b).0)
            }
            Expr::Wrp(a, b) => {
                let (a, b) = (a.build_with_rns(limits)?, b.build(limits)?);
                let group = construct::wreath_product_action(&a.group, &b, limits.max_degree)?;
                // N^m is normalized by the coordinate permutations
                let regular_normal = match a.regular_normal {
                    Some(n) => {
                        let coords = PermGroup::trivial(b.degree());
                        Some(construct::wreath_product_action(&n, &coords, limits.max_degree)?)
                    }
                    None => None,
                };
                Built { group, regular_normal }
            }
            Expr::Coset(a, gens) => {
                let g = a.build(limits)?;
                let h_gens = gens
                    .split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| Perm::parse(s, g.degree()))
                    .collect::<Result<Vec<_>>>()?;
                let h = PermGroup::new(g.degree(), h_gens)?;
                if !h.is_subgroup_of(&g) {
                    return Err(Error::NotSubgroup("coset generators do not lie in the group".into()));
                }
                let index = &g.order() / &h.order();
                let index = usize::try_from(index).map_err(|_| budget("degree", limits.max_degree as u64))?;
                check(index)?;
                plain(g.coset_action(&h)?)
            }
        };
        Ok(built)
    }
}

fn plain(group: PermGroup) -> Built {
    Built {
        group,
        regular_normal: None,
    }
}

/// Named groups in their smallest standard action; products of names act on
/// pairs. Dihedral groups of order at least 6 act on polygon vertices, and
/// groups without a smaller standard action act regularly.
fn natural_action(name: &str) -> Result<PermGroup> {
    CayleyTable::by_name(name)?;
    let mut acc: Option<PermGroup> = None;
    for factor in name.trim().to_ascii_lowercase().split('x') {
        let g = match factor {
            "s3" => PermGroup::symmetric(3),
            "s4" => PermGroup::symmetric(4),
            "a4" => PermGroup::alternating(4),
            "a5" => PermGroup::alternating(5),
            _ if factor.starts_with('c') => PermGroup::cyclic(factor[1..].parse().expect("validated")),
            _ if factor.starts_with('d') && factor[1..].parse::<usize>().is_ok_and(|k| k >= 6) => {
                PermGroup::dihedral(factor[1..].parse::<usize>().expect("validated") / 2)
            }
            _ => construct::regular_action(&CayleyTable::by_name(factor)?),
        };
        acc = Some(match acc {
            None => g,
            Some(a) => construct::direct_product(&a, &g),
        });
    }
    Ok(acc.expect("at least one factor"))
}
