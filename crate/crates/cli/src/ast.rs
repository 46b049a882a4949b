//! Syntax tree of a session script and its canonical rendering.

use std::fmt;

use reldep::invariants::TheoremId;

/// Source position (1-based). Positions are metadata: they compare equal so
/// that a re-parsed rendering equals the original tree.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

/// Polynomial source text with whitespace removed; parsed once the ring is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyText {
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: Name,
    pub characteristic: u32,
    pub vars: Vec<Name>,
    pub quotient: Vec<PolyText>,
    pub golod: bool,
}

/// `coker R [[row], ...]`: one row per generator, one column per relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: Name,
    pub ring: Name,
    pub rows: Vec<Vec<PolyText>>,
    /// Explicit generator degrees; inferred from the entries when absent.
    pub degrees: Option<Vec<i32>>,
    pub matrix_pos: Pos,
}

/// A prime of the most recently declared ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDecl {
    pub name: Name,
    pub gens: Vec<PolyText>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Report,
    Verify(TheoremId),
    Tor,
    GTor,
    Tate,
    Fuzz,
}

impl CommandKind {
    pub fn keyword(self) -> &'static str {
        match self {
            CommandKind::Report => "report",
            CommandKind::Verify(_) => "verify",
            CommandKind::Tor => "tor",
            CommandKind::GTor => "gtor",
            CommandKind::Tate => "tate",
            CommandKind::Fuzz => "fuzz",
        }
    }
}

/// `NAME` or `NAME INT` inside the argument list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub name: Name,
    pub value: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: Name,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    pub pos: Pos,
    pub args: Vec<Arg>,
    pub params: Vec<Param>,
}

impl Command {
    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.iter().find(|p| p.name.text == key).map(|p| p.value)
    }

    pub fn keyword_arg(&self, key: &str) -> Option<&Arg> {
        self.args.iter().find(|a| a.name.text == key)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Ring(RingDecl),
    Module(ModuleDecl),
    Prime(PrimeDecl),
    Command(Command),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub items: Vec<Item>,
}

fn join<T>(xs: &[T], f: impl Fn(&T) -> String) -> String {
    xs.iter().map(f).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Ring(r) => {
                write!(
                    f,
                    "ring {} = char {}, vars [{}]",
                    r.name.text,
                    r.characteristic,
                    join(&r.vars, |v| v.text.clone())
                )?;
                if !r.quotient.is_empty() {
                    write!(f, ", quotient ({})", join(&r.quotient, |p| p.text.clone()))?;
                }
                if r.golod {
                    f.write_str(", golod")?;
                }
            }
            Item::Module(m) => {
                let rows = join(&m.rows, |row| format!("[{}]", join(row, |p| p.text.clone())));
                write!(f, "module {} = coker {} [{rows}]", m.name.text, m.ring.text)?;
                if let Some(d) = &m.degrees {
                    write!(f, " degrees [{}]", join(d, |x| x.to_string()))?;
                }
            }
            Item::Prime(p) => write!(f, "prime {} = ({})", p.name.text, join(&p.gens, |g| g.text.clone()))?,
            Item::Command(c) => {
                f.write_str(c.kind.keyword())?;
                if let CommandKind::Verify(id) = c.kind {
                    write!(f, " {id}")?;
                }
                let args = join(&c.args, |a| match a.value {
                    Some(v) => format!("{} {v}", a.name.text),
                    None => a.name.text.clone(),
                });
                write!(f, "({args})")?;
                if !c.params.is_empty() {
                    write!(f, " {}", join(&c.params, |p| format!("{} = {}", p.name.text, p.value)))?;
                }
            }
        }
        f.write_str(";")
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}

/// Canonical text of a script; `parse_script(&render(s))` equals `s`.
pub fn render(script: &Script) -> String {
    script.to_string()
}
