//! Hand-written recursive-descent parser for session scripts.
//!
//! Comments run from `#` or `//` to the end of the line. Polynomial entries are
//! captured as text up to the next top-level `,`, `]`, `)` or `;` and parsed
//! later against their ring.

use std::str::FromStr;

use reldep::invariants::TheoremId;

use crate::ast::*;
use crate::error::CliError;

type PResult<T> = Result<T, CliError>;

struct Parser {
    chars: Vec<char>,
    i: usize,
    line: usize,
    column: usize,
}

pub fn parse_script(text: &str) -> PResult<Script> {
    let mut p = Parser { chars: text.chars().collect(), i: 0, line: 1, column: 1 };
    let mut items = Vec::new();
    loop {
        p.skip_trivia();
        if p.peek().is_none() {
            break;
        }
        items.push(p.item()?);
    }
    Ok(Script { items })
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, column: self.column }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            let comment = c == '#' || (c == '/' && self.chars.get(self.i + 1) == Some(&'/'));
            if comment {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn expect(&mut self, ch: char) -> PResult<()> {
        self.skip_trivia();
        if self.peek() == Some(ch) {
            self.bump();
            Ok(())
        } else {
            Err(CliError::syntax(self.pos(), format!("expected `{ch}`, found {}", self.found())))
        }
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_trivia();
        if self.peek() == Some(ch) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn at(&mut self, ch: char) -> bool {
        self.skip_trivia();
        self.peek() == Some(ch)
    }

    fn ident(&mut self) -> PResult<Name> {
        self.skip_trivia();
        let pos = self.pos();
        if !self.peek().is_some_and(is_ident_start) {
            return Err(CliError::syntax(pos, format!("expected a name, found {}", self.found())));
        }
        let mut text = String::new();
        while let Some(c) = self.peek().filter(|&c| is_ident_char(c)) {
            text.push(c);
            self.bump();
        }
        Ok(Name { text, pos })
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let name = self.ident()?;
        if name.text == kw {
            Ok(())
        } else {
            Err(CliError::syntax(name.pos, format!("expected `{kw}`, found `{}`", name.text)))
        }
    }

    fn int(&mut self) -> PResult<i64> {
        self.skip_trivia();
        let pos = self.pos();
        let mut text = String::new();
        if self.peek() == Some('-') {
            text.push('-');
            self.bump();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
        }
        text.parse().map_err(|_| CliError::syntax(pos, format!("expected an integer, found `{text}`")))
    }

    fn poly(&mut self) -> PResult<PolyText> {
        self.skip_trivia();
        let pos = self.pos();
        let mut text = String::new();
        let mut depth = 0usize;
        while let Some(c) = self.peek() {
            match c {
                '(' => depth += 1,
                ')' if depth > 0 => depth -= 1,
                ',' | ']' | ')' | ';' | '[' if depth == 0 => break,
                _ => {}
            }
            if !c.is_whitespace() {
                text.push(c);
            }
            self.bump();
        }
        if text.is_empty() {
            return Err(CliError::syntax(pos, format!("expected a polynomial, found {}", self.found())));
        }
        Ok(PolyText { text, pos })
    }

    /// Comma-separated items up to `close` (consumed); may be empty.
    fn list<T>(&mut self, close: char, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn item(&mut self) -> PResult<Item> {
        let head = self.ident()?;
        let item = match head.text.as_str() {
            "ring" => Item::Ring(self.ring()?),
            "module" => Item::Module(self.module()?),
            "prime" => Item::Prime(self.prime()?),
            "report" => Item::Command(self.command(CommandKind::Report, head.pos)?),
            "verify" => {
                let id = self.theorem_id()?;
                Item::Command(self.command(CommandKind::Verify(id), head.pos)?)
            }
            "tor" => Item::Command(self.command(CommandKind::Tor, head.pos)?),
            "gtor" => Item::Command(self.command(CommandKind::GTor, head.pos)?),
            "tate" => Item::Command(self.command(CommandKind::Tate, head.pos)?),
            "fuzz" => Item::Command(self.command(CommandKind::Fuzz, head.pos)?),
            other => {
                return Err(CliError::syntax(head.pos, format!("expected a declaration or command, found `{other}`")))
            }
        };
        self.expect(';')?;
        Ok(item)
    }

    fn ring(&mut self) -> PResult<RingDecl> {
        let name = self.ident()?;
        self.expect('=')?;
        self.keyword("char")?;
        let pos = self.pos();
        let characteristic = u32::try_from(self.int()?)
            .map_err(|_| CliError::syntax(pos, "characteristic must be a nonnegative integer"))?;
        self.expect(',')?;
        self.keyword("vars")?;
        self.expect('[')?;
        let vars = self.list(']', Self::ident)?;
        let mut decl = RingDecl { name, characteristic, vars, quotient: Vec::new(), golod: false };
        let mut seen_quotient = false;
        while self.eat(',') {
            let opt = self.ident()?;
            match opt.text.as_str() {
                "quotient" if !seen_quotient && !decl.golod => {
                    self.expect('(')?;
                    decl.quotient = self.list(')', Self::poly)?;
                    seen_quotient = true;
                }
                "golod" if !decl.golod => decl.golod = true,
                other => {
                    return Err(CliError::syntax(opt.pos, format!("unexpected ring option `{other}`")));
                }
            }
        }
        Ok(decl)
    }

    fn module(&mut self) -> PResult<ModuleDecl> {
        let name = self.ident()?;
        self.expect('=')?;
        self.keyword("coker")?;
        let ring = self.ident()?;
        self.skip_trivia();
        let matrix_pos = self.pos();
        self.expect('[')?;
        let rows = self.list(']', |p| {
            p.expect('[')?;
            p.list(']', Self::poly)
        })?;
        if rows.is_empty() {
            return Err(CliError::syntax(matrix_pos, "a presentation needs at least one generator row"));
        }
        if let Some(k) = rows.iter().position(|r| r.len() != rows[0].len()) {
            return Err(CliError::syntax(
                matrix_pos,
                format!("row {} has {} entries, row 1 has {}", k + 1, rows[k].len(), rows[0].len()),
            ));
        }
        let degrees = if self.at('d') {
            self.keyword("degrees")?;
            self.expect('[')?;
            let pos = self.pos();
            let ds = self.list(']', Self::int)?;
            let ds = ds
                .into_iter()
                .map(|d| i32::try_from(d).map_err(|_| CliError::syntax(pos, "degree out of range")))
                .collect::<PResult<Vec<_>>>()?;
            Some(ds)
        } else {
            None
        };
        Ok(ModuleDecl { name, ring, rows, degrees, matrix_pos })
    }

    fn prime(&mut self) -> PResult<PrimeDecl> {
        let name = self.ident()?;
        self.expect('=')?;
        self.expect('(')?;
        let gens = self.list(')', Self::poly)?;
        Ok(PrimeDecl { name, gens })
    }

    fn theorem_id(&mut self) -> PResult<TheoremId> {
        self.skip_trivia();
        let pos = self.pos();
        let mut text = String::new();
        while let Some(c) = self.peek().filter(|&c| c.is_ascii_alphanumeric() || c == '.' || c == '-') {
            text.push(c);
            self.bump();
        }
        TheoremId::from_str(&text).map_err(|_| {
            let known: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
            CliError::syntax(pos, format!("unknown result id `{text}` (known: {})", known.join(", ")))
        })
    }

    fn command(&mut self, kind: CommandKind, pos: Pos) -> PResult<Command> {
        self.expect('(')?;
        let args = self.list(')', |p| {
            let name = p.ident()?;
            p.skip_trivia();
            let value = if p.peek().is_some_and(|c| c.is_ascii_digit() || c == '-') { Some(p.int()?) } else { None };
            Ok(Arg { name, value })
        })?;
        let mut params = Vec::new();
        if !self.at(';') {
            loop {
                let name = self.ident()?;
                self.expect('=')?;
                let value = self.int()?;
                params.push(Param { name, value });
                if !self.eat(',') {
                    break;
                }
            }
        }
        Ok(Command { kind, pos, args, params })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODE: &str = "ring R = char 5, vars [x,y], quotient (x*y); module k = coker R [[x, y]]; report(k, k);";

    #[test]
    fn three_items() {
        let s = parse_script(NODE).unwrap();
        assert_eq!(s.items.len(), 3);
        let Item::Module(m) = &s.items[1] else { panic!() };
        assert_eq!(m.rows.len(), 1);
        assert_eq!(m.rows[0].len(), 2);
    }

    #[test]
    fn positions_and_comments() {
        let s = parse_script("# header\nring R = char 5, vars [x];\n  // note\n  tor(A, B) bound = 3;").unwrap();
        let Item::Command(c) = &s.items[1] else { panic!() };
        assert_eq!((c.pos.line, c.pos.column), (4, 3));
        assert_eq!(c.param("bound"), Some(3));
        assert_eq!(c.args[1].name.pos.column, 10);
    }

    #[test]
    fn verify_ids_and_keyword_args() {
        let s = parse_script("verify T1.2-upper (A, B); verify P1.5(A,k) r = 0; fuzz(count 30, seed 7, polynomial);")
            .unwrap();
        let Item::Command(c) = &s.items[0] else { panic!() };
        assert_eq!(c.kind, CommandKind::Verify(TheoremId::T1_2Upper));
        let Item::Command(f) = &s.items[2] else { panic!() };
        assert_eq!(f.keyword_arg("count").unwrap().value, Some(30));
        assert_eq!(f.keyword_arg("polynomial").unwrap().value, None);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_script("ring R = char 5, vars [x,y]\nmodule").unwrap_err();
        let CliError::Syntax { pos, message } = e else { panic!("{e:?}") };
        assert_eq!(pos.line, 2);
        assert!(message.contains("expected `;`"), "{message}");
        let e = parse_script("verify T9.9 (A, B);").unwrap_err();
        assert!(e.to_string().contains("unknown result id `T9.9`"));
        let e = parse_script("module M = coker R [[x, y], [x]];").unwrap_err();
        assert!(e.to_string().contains("row 2 has 1 entries"));
    }

    #[test]
    fn render_round_trip() {
        let src = "ring R = char 5, vars [x, y, z], quotient (x^2 + 2*y*z), golod;\n\
                   module M = coker R [[x, y^2], [z, 0]] degrees [0, 1];\n\
                   prime P = (x, y);\n\
                   verify T1.4A (M, M) k = 1, r = 2;\n\
                   tate(M, M) lo = -4, hi = 2;";
        let s = parse_script(src).unwrap();
        let again = parse_script(&render(&s)).unwrap();
        assert_eq!(s, again);
        assert_eq!(render(&s), render(&again));
    }
}
