//! Expression parser for algebra elements.
//!
//! Grammar (whitespace-insensitive except inside names):
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := rational ('*' factor)*  |  factor ('*' factor)*
//! factor  := primary ['^' nat]
//! primary := '(' expr ')' | name trailing-star*
//! ```
//!
//! A `*` directly after a primary is the involution when the character after
//! it does not begin a new factor (a letter or `(`), and multiplication
//! otherwise: `a*a` is `a·a`, `a**a` is `(a*)·a`, and a trailing `a*` is the
//! dual arrow. Names resolve in order: exact letter name, `e_<label>` vertex
//! idempotent, user definition, `d<arrow>` alias for the dual arrow. A bare
//! rational denotes that multiple of the identity (the sum of all vertex
//! idempotents).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::{Ctx, NCPoly};
use crate::scalar::ScalarDomain;
use crate::{Error, Result};

pub type Defines<D> = BTreeMap<String, NCPoly<D>>;

pub fn parse_expr<D: ScalarDomain>(
    ctx: Ctx<'_, D>,
    text: &str,
    defines: &Defines<D>,
) -> Result<NCPoly<D>> {
    let mut p = Parser { ctx, text: text.as_bytes(), pos: 0, defines };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a, D: ScalarDomain> {
    ctx: Ctx<'a, D>,
    text: &'a [u8],
    pos: usize,
    defines: &'a Defines<D>,
}

impl<'a, D: ScalarDomain> Parser<'a, D> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("at byte {} of expression: {}", self.pos, msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    /// Character immediately after the current one, with no whitespace skip:
    /// the involution/multiplication disambiguation is deliberately sensitive
    /// to an intervening space.
    fn peek_at(&self, off: usize) -> Option<u8> {
        self.text.get(self.pos + off).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NCPoly<D>> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            let _ = self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg(self.ctx.dom);
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(self.ctx.dom, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(self.ctx.dom, &t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NCPoly<D>> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let q = self.rational()?;
                let c = self.ctx.dom.from_ratio(&q)?;
                NCPoly::identity(self.ctx).scale(self.ctx.dom, &c)
            }
            _ => self.factor()?,
        };
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = acc.mul(self.ctx, &f, None);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCPoly<D>> {
        let mut p = self.primary()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let n = self.natural()? as usize;
            p = p.pow(self.ctx, n, None);
        }
        Ok(p)
    }

    fn primary(&mut self) -> Result<NCPoly<D>> {
        self.skip_ws();
        let mut p = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                e
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                self.resolve(&name)?
            }
            Some(c) if c.is_ascii_digit() => {
                return Err(self.err("a number may only lead a term"));
            }
            _ => return Err(self.err("expected a name, `(`, or a number")),
        };
        // Trailing stars: involution unless the star starts a multiplication.
        while self.peek() == Some(b'*') && !starts_factor(self.peek_at(1)) {
            self.pos += 1;
            p = p.star(self.ctx)?;
        }
        Ok(p)
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .map(|c| c.is_ascii_alphanumeric() || c == b'_')
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn resolve(&self, name: &str) -> Result<NCPoly<D>> {
        if let Some(r) = self.ctx.dq.letter_rank(name) {
            return Ok(NCPoly::letter(self.ctx, r));
        }
        if let Some(label) = name.strip_prefix("e_") {
            if let Ok(l) = label.parse::<u32>() {
                let v = self
                    .ctx
                    .dq
                    .vertex_index(l)
                    .ok_or_else(|| self.err(&format!("unknown vertex {l}")))?;
                return Ok(NCPoly::idempotent(self.ctx.dom, v));
            }
        }
        if let Some(p) = self.defines.get(name) {
            return Ok(p.clone());
        }
        if let Some(base) = name.strip_prefix('d') {
            if let Some(r) = self.ctx.dq.arrow_rank(base) {
                if let Some(d) = self.ctx.dq.dual_rank(r) {
                    return Ok(NCPoly::letter(self.ctx, d));
                }
            }
        }
        Err(self.err(&format!("unknown name {name:?}")))
    }

    fn natural(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.err("number out of range"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.natural()?;
        let mut q = BigRational::from(BigInt::from(num));
        if self.peek() == Some(b'/') && self.peek_at(1).map(|c| c.is_ascii_digit()) == Some(true) {
            self.pos += 1;
            let den = self.natural()?;
            if den == 0 {
                return Err(self.err("zero denominator"));
            }
            q /= BigRational::from(BigInt::from(den));
        }
        Ok(q)
    }
}

fn starts_factor(c: Option<u8>) -> bool {
    matches!(c, Some(b'(')) || matches!(c, Some(c) if c.is_ascii_alphabetic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{builtin_dynkin, DoubledQuiver, DynkinType, Quiver};
    use crate::scalar::{PrimeField, Rationals};

    fn ctx_d4() -> DoubledQuiver {
        DoubledQuiver::double(builtin_dynkin(DynkinType::D, 4).unwrap()).unwrap()
    }

    #[test]
    fn star_disambiguation() {
        let dq = ctx_d4();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let none = Defines::new();
        // a*a* = a · a*
        let p = parse_expr(ctx, "a*a*", &none).unwrap();
        let a = NCPoly::letter(ctx, dq.arrow_rank("a").unwrap());
        let astar = a.star(ctx).unwrap();
        assert_eq!(p, a.mul(ctx, &astar, None));
        // a**a = (a*) · a
        let q = parse_expr(ctx, "a**a", &none).unwrap();
        assert_eq!(q, astar.mul(ctx, &a, None));
        // da is an alias for a*
        assert_eq!(parse_expr(ctx, "da", &none).unwrap(), astar);
        assert_eq!(parse_expr(ctx, "da*a", &none).unwrap(), q);
        // (a*)^2 via a*^2
        let sq = parse_expr(ctx, "a*^2", &none).unwrap();
        assert_eq!(sq, astar.mul(ctx, &astar, None));
        assert!(sq.is_zero(), "a* a* does not compose in D4");
    }

    #[test]
    fn rationals_idempotents_and_signs() {
        let dq = ctx_d4();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let none = Defines::new();
        let p = parse_expr(ctx, "e_3 - 1/2*a**a + 2*b**b", &none).unwrap();
        let e3 = NCPoly::idempotent(&dom, dq.vertex_index(3).unwrap());
        let a = dq.arrow_rank("a").unwrap();
        let b = dq.arrow_rank("b").unwrap();
        let alpha = NCPoly::letter(ctx, dq.dual_rank(a).unwrap())
            .mul(ctx, &NCPoly::letter(ctx, a), None);
        let beta = NCPoly::letter(ctx, dq.dual_rank(b).unwrap())
            .mul(ctx, &NCPoly::letter(ctx, b), None);
        let expect = e3
            .sub(&dom, &alpha.scale(&dom, &dom.from_ratio(&"1/2".parse().unwrap()).unwrap()))
            .add(&dom, &beta.scale(&dom, &dom.from_i64(2)));
        assert_eq!(p, expect);
        // Round trip through display.
        let shown = p.display(ctx);
        assert_eq!(parse_expr(ctx, &shown, &none).unwrap(), p);
    }

    #[test]
    fn bare_numbers_scale_the_identity() {
        let q = Quiver::new(
            vec![1],
            vec![
                crate::quiver::Arrow { name: "x".into(), source: 1, target: 1 },
                crate::quiver::Arrow { name: "y".into(), source: 1, target: 1 },
            ],
        )
        .unwrap();
        let dq = DoubledQuiver::free(q).unwrap();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let none = Defines::new();
        let p = parse_expr(ctx, "(1 + x*y)^2", &none).unwrap();
        let x = NCPoly::letter(ctx, dq.letter_rank("x").unwrap());
        let y = NCPoly::letter(ctx, dq.letter_rank("y").unwrap());
        let xy = x.mul(ctx, &y, None);
        let expect = NCPoly::identity(ctx)
            .add(&dom, &xy.scale(&dom, &dom.from_i64(2)))
            .add(&dom, &xy.mul(ctx, &xy, None));
        assert_eq!(p, expect);
    }

    #[test]
    fn prime_field_coefficients() {
        let dq = ctx_d4();
        let dom = PrimeField::new(5).unwrap();
        let ctx = Ctx::new(&dq, &dom);
        let none = Defines::new();
        let p = parse_expr(ctx, "1/2*a", &none).unwrap();
        let (w, c) = &p.terms()[0];
        assert_eq!(*c, 3u64); // 1/2 = 3 in F_5
        assert_eq!(w, &ctx.letter_word(dq.arrow_rank("a").unwrap()));
        let two = PrimeField::new(2).unwrap();
        let ctx2 = Ctx::new(&dq, &two);
        assert!(parse_expr(ctx2, "1/2*a", &none).is_err());
    }

    #[test]
    fn defines_resolve_in_order() {
        let dq = ctx_d4();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let mut defs = Defines::new();
        let inner = parse_expr(ctx, "1 - 1/2*a**a", &defs).unwrap();
        defs.insert("p".to_string(), inner.clone());
        let p = parse_expr(ctx, "a*p", &defs).unwrap();
        let a = NCPoly::letter(ctx, dq.arrow_rank("a").unwrap());
        assert_eq!(p, a.mul(ctx, &inner, None));
    }

    #[test]
    fn squared_idempotent_and_errors() {
        let dq = ctx_d4();
        let dom = Rationals;
        let ctx = Ctx::new(&dq, &dom);
        let none = Defines::new();
        let e = parse_expr(ctx, "e_3^2", &none).unwrap();
        assert_eq!(e, NCPoly::idempotent(&dom, dq.vertex_index(3).unwrap()));
        assert!(parse_expr(ctx, "e_9", &none).is_err());
        assert!(parse_expr(ctx, "z", &none).is_err());
        assert!(parse_expr(ctx, "a +", &none).is_err());
        assert!(parse_expr(ctx, "a b", &none).is_err());
        assert!(parse_expr(ctx, "1/0", &none).is_err());
    }
}
