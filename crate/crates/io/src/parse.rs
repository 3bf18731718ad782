//! Recursive-descent parser over the token stream. Entries inside blocks
//! end with `;` (optional immediately before the closing brace). Scalar
//! literals never contain names, and the indeterminate spelling `l` is
//! reserved, so a coefficient ends exactly where a basis name begins.

use crate::ast::*;
use crate::lexer::{tokenize, Token, TokenKind};
use crate::ParseError;
use rbhom_core::scalar::{rat, Poly, Rat, Scalar, MAX_DEGREE};

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    p.document()
}

/// Parse one scalar literal; the whole input must be consumed.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let v = p.scalar()?;
    p.expect_eof()?;
    Ok(v)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            col: t.col,
            expected: expected.to_string(),
            found: t.kind.describe(),
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if &self.peek().kind == kind {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.next())
        } else {
            Err(self.error(expected))
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.peek().kind == TokenKind::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<Spanned<String>, ParseError> {
        match &self.peek().kind {
            TokenKind::Ident(s) => {
                let sp = Spanned { value: s.clone(), line: self.peek().line, col: self.peek().col };
                self.next();
                Ok(sp)
            }
            _ => Err(self.error(expected)),
        }
    }

    /// Entity names exclude the reserved indeterminate spelling.
    fn name(&mut self, expected: &str) -> Result<Spanned<String>, ParseError> {
        let sp = self.ident(expected)?;
        if sp.value == "l" {
            return Err(ParseError {
                line: sp.line,
                col: sp.col,
                expected: expected.to_string(),
                found: "reserved identifier `l`".into(),
            });
        }
        Ok(sp)
    }

    fn uint(&mut self, expected: &str) -> Result<Spanned<usize>, ParseError> {
        match &self.peek().kind {
            TokenKind::Int(s) => {
                let line = self.peek().line;
                let col = self.peek().col;
                let value: usize = s.parse().map_err(|_| ParseError {
                    line,
                    col,
                    expected: expected.to_string(),
                    found: format!("integer `{s}` out of range"),
                })?;
                self.next();
                Ok(Spanned { value, line, col })
            }
            _ => Err(self.error(expected)),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<Token, ParseError> {
        match &self.peek().kind {
            TokenKind::Ident(s) if s == word => Ok(self.next()),
            _ => Err(self.error(&format!("keyword `{word}`"))),
        }
    }

    fn end_entry(&mut self) -> Result<(), ParseError> {
        if self.eat(&TokenKind::Semi) {
            return Ok(());
        }
        if self.peek().kind == TokenKind::RBrace {
            return Ok(());
        }
        Err(self.error("`;`"))
    }

    fn document(&mut self) -> Result<Document, ParseError> {
        let mut doc = Document::empty();
        loop {
            match &self.peek().kind {
                TokenKind::Eof => return Ok(doc),
                TokenKind::Ident(word) => match word.as_str() {
                    "import" => {
                        self.next();
                        let t = self.next();
                        let TokenKind::Str(path) = t.kind else {
                            return Err(ParseError {
                                line: t.line,
                                col: t.col,
                                expected: "quoted import path".into(),
                                found: t.kind.describe(),
                            });
                        };
                        doc.imports.push(Spanned { value: path, line: t.line, col: t.col });
                        if !self.eat(&TokenKind::Semi) {
                            return Err(self.error("`;`"));
                        }
                    }
                    "semigroup" => {
                        self.next();
                        doc.blocks.push(Block::Semigroup(self.semigroup_block()?));
                    }
                    "algebra" => {
                        self.next();
                        doc.blocks.push(Block::Algebra(self.algebra_block()?));
                    }
                    "datum" => {
                        self.next();
                        doc.blocks.push(Block::Datum(self.datum_block()?));
                    }
                    "pair" => {
                        self.next();
                        doc.blocks.push(Block::Pair(self.pair_block()?));
                    }
                    "deformation" => {
                        self.next();
                        doc.blocks.push(Block::Deformation(self.deformation_block()?));
                    }
                    "flagrow" => {
                        self.next();
                        doc.blocks.push(Block::FlagRow(self.flagrow_block()?));
                    }
                    "grid" => {
                        self.next();
                        doc.blocks.push(Block::Grid(self.grid_block()?));
                    }
                    _ => return Err(self.error("a block keyword (semigroup, algebra, datum, pair, deformation, flagrow, grid) or `import`")),
                },
                _ => return Err(self.error("a block keyword or end of input")),
            }
        }
    }

    fn semigroup_block(&mut self) -> Result<SemigroupBlock, ParseError> {
        let name = self.name("semigroup name")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        let mut elements = Vec::new();
        let mut table = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            let key = self.ident("`elements` or `table`")?;
            self.expect(TokenKind::Colon, "`:`")?;
            match key.value.as_str() {
                "elements" => {
                    elements.push(self.name("element name")?);
                    while self.eat(&TokenKind::Comma) {
                        elements.push(self.name("element name")?);
                    }
                }
                "table" => {
                    let a = self.name("element name")?;
                    self.expect(TokenKind::Star, "`*`")?;
                    let b = self.name("element name")?;
                    self.expect(TokenKind::Equals, "`=`")?;
                    let c = self.name("element name")?;
                    table.push((a, b, c));
                }
                _ => {
                    return Err(ParseError {
                        line: key.line,
                        col: key.col,
                        expected: "`elements` or `table`".into(),
                        found: format!("`{}`", key.value),
                    })
                }
            }
            self.end_entry()?;
        }
        Ok(SemigroupBlock { name, elements, table })
    }

    fn algebra_block(&mut self) -> Result<AlgebraBlock, ParseError> {
        let name = self.name("algebra name")?;
        self.keyword("over")?;
        self.keyword("QL")?;
        self.keyword("weight")?;
        let weight = self.scalar()?;
        self.keyword("uses")?;
        let semigroup = self.name("semigroup name")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        let mut dim = None;
        let mut basis = Vec::new();
        let mut mul = Vec::new();
        let mut theta = Vec::new();
        let mut ops = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            let key = self.ident("`dim`, `basis`, `mul`, `theta`, or `P`")?;
            match key.value.as_str() {
                "dim" => {
                    self.expect(TokenKind::Colon, "`:`")?;
                    dim = Some(self.uint("dimension")?);
                }
                "basis" => {
                    self.expect(TokenKind::Colon, "`:`")?;
                    basis.push(self.name("basis name")?);
                    while self.eat(&TokenKind::Comma) {
                        basis.push(self.name("basis name")?);
                    }
                }
                "mul" => {
                    self.expect(TokenKind::Colon, "`:`")?;
                    let a = self.name("basis name")?;
                    self.expect(TokenKind::Star, "`*`")?;
                    let b = self.name("basis name")?;
                    self.expect(TokenKind::Equals, "`=`")?;
                    let items = self.items()?;
                    mul.push((a, b, items));
                }
                "theta" => {
                    self.expect(TokenKind::Colon, "`:`")?;
                    let a = self.name("basis name")?;
                    self.expect(TokenKind::Arrow, "`->`")?;
                    theta.push((a, self.items()?));
                }
                "P" => {
                    self.expect(TokenKind::LBracket, "`[`")?;
                    let op = self.name("semigroup element")?;
                    self.expect(TokenKind::RBracket, "`]`")?;
                    self.expect(TokenKind::Colon, "`:`")?;
                    let a = self.name("basis name")?;
                    self.expect(TokenKind::Arrow, "`->`")?;
                    ops.push((op, a, self.items()?));
                }
                _ => {
                    return Err(ParseError {
                        line: key.line,
                        col: key.col,
                        expected: "`dim`, `basis`, `mul`, `theta`, or `P`".into(),
                        found: format!("`{}`", key.value),
                    })
                }
            }
            self.end_entry()?;
        }
        let dim = dim.ok_or_else(|| self.error("`dim` entry before the closing brace"))?;
        Ok(AlgebraBlock { name, weight, semigroup, dim, basis, mul, theta, ops })
    }

    fn tensor_entry(&mut self, key: Spanned<String>, two_args: bool) -> Result<TensorEntry, ParseError> {
        let op = if self.eat(&TokenKind::LBracket) {
            let op = self.name("semigroup element")?;
            self.expect(TokenKind::RBracket, "`]`")?;
            Some(op)
        } else {
            None
        };
        self.expect(TokenKind::Colon, "`:`")?;
        let mut args = vec![self.name("basis name")?];
        if two_args {
            self.expect(TokenKind::Pipe, "`|`")?;
            args.push(self.name("basis name")?);
        }
        self.expect(TokenKind::Arrow, "`->`")?;
        let items = self.items()?;
        Ok(TensorEntry { key, op, args, items })
    }

    fn datum_entries(&mut self, allowed: &[&str]) -> Result<Vec<TensorEntry>, ParseError> {
        let mut entries = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            let key = self.ident("a tensor entry keyword")?;
            if !allowed.contains(&key.value.as_str()) {
                return Err(ParseError {
                    line: key.line,
                    col: key.col,
                    expected: format!("one of {}", allowed.join(", ")),
                    found: format!("`{}`", key.value),
                });
            }
            let two_args = matches!(key.value.as_str(), "tri_l" | "tri_r" | "harp_r" | "harp_l" | "f" | "mul_V");
            let entry = self.tensor_entry(key, two_args)?;
            entries.push(entry);
            self.end_entry()?;
        }
        Ok(entries)
    }

    fn datum_block(&mut self) -> Result<DatumBlock, ParseError> {
        let name = self.name("datum name")?;
        self.keyword("base")?;
        let base = self.name("algebra name")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        let mut vdim = None;
        let mut vbasis = Vec::new();
        let mut entries = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            let key = self.ident("`vdim`, `vbasis`, or a tensor keyword")?;
            match key.value.as_str() {
                "vdim" => {
                    self.expect(TokenKind::Colon, "`:`")?;
                    vdim = Some(self.uint("complement dimension")?);
                }
                "vbasis" => {
                    self.expect(TokenKind::Colon, "`:`")?;
                    vbasis.push(self.name("basis name")?);
                    while self.eat(&TokenKind::Comma) {
                        vbasis.push(self.name("basis name")?);
                    }
                }
                "tri_l" | "tri_r" | "harp_r" | "harp_l" | "f" | "mul_V" => {
                    let two = true;
                    entries.push(self.tensor_entry(key, two)?);
                }
                "Q" | "P_V" | "eta" | "theta_V" => {
                    entries.push(self.tensor_entry(key, false)?);
                }
                _ => {
                    return Err(ParseError {
                        line: key.line,
                        col: key.col,
                        expected: "`vdim`, `vbasis`, or a tensor keyword".into(),
                        found: format!("`{}`", key.value),
                    })
                }
            }
            self.end_entry()?;
        }
        let vdim = vdim.ok_or_else(|| self.error("`vdim` entry before the closing brace"))?;
        Ok(DatumBlock { name, base, vdim, vbasis, entries })
    }

    fn pair_block(&mut self) -> Result<PairBlock, ParseError> {
        let name = self.name("pair name")?;
        self.keyword("base")?;
        let base = self.name("algebra name")?;
        self.keyword("second")?;
        let second = self.name("algebra name")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        let entries = self.datum_entries(&["tri_l", "tri_r", "harp_r", "harp_l"])?;
        Ok(PairBlock { name, base, second, entries })
    }

    fn deformation_block(&mut self) -> Result<DeformationBlock, ParseError> {
        let name = self.name("deformation name")?;
        self.keyword("datum")?;
        let datum = self.name("datum name")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        let mut entries = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            let key = self.ident("`d`")?;
            if key.value != "d" {
                return Err(ParseError {
                    line: key.line,
                    col: key.col,
                    expected: "`d`".into(),
                    found: format!("`{}`", key.value),
                });
            }
            self.expect(TokenKind::Colon, "`:`")?;
            let arg = self.name("complement basis name")?;
            self.expect(TokenKind::Arrow, "`->`")?;
            entries.push((arg, self.items()?));
            self.end_entry()?;
        }
        Ok(DeformationBlock { name, datum, entries })
    }

    fn flagrow_block(&mut self) -> Result<FlagRowBlock, ParseError> {
        let name = self.name("flagrow name")?;
        self.keyword("base")?;
        let base = self.name("algebra name")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        self.keyword("row")?;
        self.expect(TokenKind::Colon, "`:`")?;
        // Row ids like `3a` lex as an integer immediately followed by an
        // identifier; join them when adjacent.
        let row = match &self.peek().kind {
            TokenKind::Int(s) => {
                let mut sp =
                    Spanned { value: s.clone(), line: self.peek().line, col: self.peek().col };
                self.next();
                if let TokenKind::Ident(suffix) = &self.peek().kind {
                    let adjacent = self.peek().line == sp.line
                        && self.peek().col == sp.col + sp.value.len();
                    if adjacent {
                        sp.value.push_str(suffix);
                        self.next();
                    }
                }
                sp
            }
            TokenKind::Ident(s) => {
                let sp = Spanned { value: s.clone(), line: self.peek().line, col: self.peek().col };
                self.next();
                sp
            }
            _ => return Err(self.error("a row id")),
        };
        self.end_entry()?;
        self.expect(TokenKind::RBrace, "`}`")?;
        Ok(FlagRowBlock { name, base, row })
    }

    fn grid_block(&mut self) -> Result<GridBlock, ParseError> {
        let name = self.name("grid name")?;
        self.keyword("base")?;
        let base = self.name("algebra name")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        let mut fields = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            let key = self.ident("a grid field")?;
            let op = if self.eat(&TokenKind::LBracket) {
                let op = self.name("semigroup element")?;
                self.expect(TokenKind::RBracket, "`]`")?;
                Some(op)
            } else {
                None
            };
            self.expect(TokenKind::Colon, "`:`")?;
            let mut values = vec![self.scalar()?];
            while self.eat(&TokenKind::Comma) {
                values.push(self.scalar()?);
            }
            fields.push((key, op, values));
            self.end_entry()?;
        }
        Ok(GridBlock { name, base, fields })
    }

    /// Sum of coefficient-name items. A bare `0` denotes the zero sum.
    fn items(&mut self) -> Result<Vec<Item>, ParseError> {
        if matches!(&self.peek().kind, TokenKind::Int(s) if s == "0")
            && matches!(self.peek2().kind, TokenKind::Semi | TokenKind::RBrace)
        {
            self.next();
            return Ok(Vec::new());
        }
        let mut items = vec![self.item(false)?];
        loop {
            if self.eat(&TokenKind::Plus) {
                items.push(self.item(false)?);
            } else if self.eat(&TokenKind::Minus) {
                items.push(self.item(true)?);
            } else {
                return Ok(items);
            }
        }
    }

    fn item(&mut self, negate: bool) -> Result<Item, ParseError> {
        let coeff = if self.scalar_starts() {
            self.scalar()?
        } else {
            Scalar::one()
        };
        let coeff = if negate { -&coeff } else { coeff };
        let name = self.name("basis name")?;
        Ok((coeff, name))
    }

    fn scalar_starts(&self) -> bool {
        matches!(
            &self.peek().kind,
            TokenKind::Int(_) | TokenKind::LParen | TokenKind::Minus
        ) || matches!(&self.peek().kind, TokenKind::Ident(s) if s == "l")
    }

    /// scalar := poly | "(" poly ")" "/" "(" poly ")"
    fn scalar(&mut self) -> Result<Scalar, ParseError> {
        if self.peek().kind == TokenKind::LParen {
            let t = self.next();
            let num = self.poly()?;
            self.expect(TokenKind::RParen, "`)`")?;
            self.expect(TokenKind::Slash, "`/`")?;
            self.expect(TokenKind::LParen, "`(`")?;
            let den = self.poly()?;
            self.expect(TokenKind::RParen, "`)`")?;
            return Scalar::ratio(num, den).map_err(|e| ParseError {
                line: t.line,
                col: t.col,
                expected: "a nonzero denominator".into(),
                found: e.to_string(),
            });
        }
        Ok(Scalar::from_poly(self.poly()?))
    }

    /// poly := term { ("+"|"-") term }, where a term never contains a
    /// name, so an identifier other than `l` ends the polynomial.
    fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match &self.peek().kind {
                TokenKind::Plus if self.term_follows() => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                TokenKind::Minus if self.term_follows() => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Whether the token after a `+`/`-` starts a term rather than an
    /// item of an enclosing sum.
    fn term_follows(&self) -> bool {
        matches!(&self.peek2().kind, TokenKind::Int(_))
            || matches!(&self.peek2().kind, TokenKind::Ident(s) if s == "l")
    }

    /// term := rational | rational "*" mono | mono
    fn term(&mut self) -> Result<Poly, ParseError> {
        if matches!(&self.peek().kind, TokenKind::Ident(s) if s == "l") {
            return self.mono(Rat::from_integer(1.into()));
        }
        let c = self.rational()?;
        if self.eat(&TokenKind::Star) {
            return self.mono(c);
        }
        Ok(Poly::constant(c))
    }

    /// mono := "l" | "l" "^" uint
    fn mono(&mut self, coeff: Rat) -> Result<Poly, ParseError> {
        let t = self.next();
        if !matches!(&t.kind, TokenKind::Ident(s) if s == "l") {
            return Err(ParseError {
                line: t.line,
                col: t.col,
                expected: "`l`".into(),
                found: t.kind.describe(),
            });
        }
        let mut exp = 1usize;
        if self.eat(&TokenKind::Caret) {
            let e = self.uint("exponent")?;
            if e.value > MAX_DEGREE {
                return Err(ParseError {
                    line: e.line,
                    col: e.col,
                    expected: format!("exponent at most {MAX_DEGREE}"),
                    found: e.value.to_string(),
                });
            }
            exp = e.value;
        }
        Ok(Poly::monomial(coeff, exp))
    }

    /// rational := ["-"] uint [ "/" uint ]
    fn rational(&mut self) -> Result<Rat, ParseError> {
        let negative = self.eat(&TokenKind::Minus);
        let n = self.uint("an integer")?;
        let mut den = 1usize;
        if self.peek().kind == TokenKind::Slash
            && matches!(self.peek2().kind, TokenKind::Int(_))
        {
            self.next();
            let d = self.uint("a positive denominator")?;
            if d.value == 0 {
                return Err(ParseError {
                    line: d.line,
                    col: d.col,
                    expected: "a positive denominator".into(),
                    found: "0".into(),
                });
            }
            den = d.value;
        }
        let mut v = rat(n.value as i64, den as i64);
        if negative {
            v = -v;
        }
        Ok(v)
    }
}
