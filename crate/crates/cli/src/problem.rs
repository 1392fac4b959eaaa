//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! vars: z1 z2
//! mode: germ
//! g1: z1^2 + z2^3
//! window: 0..12
//! ```
//!
//! Keys: `vars`, `mode` (`germ`, `laurent`, `partials`), `g1`..`gk` or `f`
//! (with `mode: partials`), `window`, `minimal-M`, `fan-dump`, `checks`,
//! `series`, and the Gröbner caps `max-pairs`, `max-degree`.

use std::fmt;
use std::path::PathBuf;

use nfw_core::polycore::parse_polynomial;
use nfw_core::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Germ,
    Laurent,
    Partials,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Germ => "germ",
            Mode::Laurent => "laurent",
            Mode::Partials => "partials",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub vars: Vec<String>,
    pub mode: Mode,
    /// `g_1, …, g_k` as written; in partials mode, the single entry `f`.
    pub polys: Vec<(String, Poly)>,
    pub window: Option<(i64, i64)>,
    pub minimal_m: bool,
    pub fan_dump: Option<PathBuf>,
    pub checks: Option<Vec<String>>,
    pub series: Option<Vec<String>>,
    pub max_pairs: Option<usize>,
    pub max_degree: Option<i64>,
}

impl Problem {
    /// The system the theorems are applied to: the given `g_i`, or the
    /// partial derivatives of `f`.
    pub fn generators(&self) -> Result<Vec<Poly>, String> {
        match self.mode {
            Mode::Partials => {
                let f = &self.polys[0].1;
                (0..f.nvars())
                    .map(|i| f.partial_derivative(i).map_err(|e| e.to_string()))
                    .collect()
            }
            _ => Ok(self.polys.iter().map(|(_, p)| p.clone()).collect()),
        }
    }

    pub fn f(&self) -> Option<&Poly> {
        (self.mode == Mode::Partials).then(|| &self.polys[0].1)
    }
}

/// A parse error with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ProblemError {}

pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .trim()
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

fn list(s: &str) -> Vec<String> {
    s.split([',', ' '])
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(String::from)
        .collect()
}

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
    /// 1-based column of the first character of `value`.
    column: usize,
}

pub fn parse(text: &str) -> Result<Problem, ProblemError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            let column = raw.len() - raw.trim_start().len() + 1;
            return Err(ProblemError {
                line,
                column,
                message: "expected `key: value`".into(),
            });
        };
        let start = key.len() + 1 + (rest.len() - rest.trim_start().len());
        entries.push(Entry {
            line,
            key: key.trim(),
            value: rest.trim(),
            column: start + 1,
        });
    }

    let err = |e: &Entry, message: String| ProblemError {
        line: e.line,
        column: e.column,
        message,
    };
    let mut seen = std::collections::BTreeSet::new();
    for e in &entries {
        if !seen.insert(e.key) {
            return Err(err(e, format!("duplicate key {:?}", e.key)));
        }
    }
    let find = |k: &str| entries.iter().find(|e| e.key == k);

    let vars_entry = find("vars").ok_or(ProblemError {
        line: 1,
        column: 1,
        message: "missing `vars`".into(),
    })?;
    let vars = list(vars_entry.value);
    if vars.is_empty() {
        return Err(err(vars_entry, "no variables declared".into()));
    }
    for (i, v) in vars.iter().enumerate() {
        if !v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(err(vars_entry, format!("bad variable name {v:?}")));
        }
        if vars[..i].contains(v) {
            return Err(err(vars_entry, format!("variable {v:?} declared twice")));
        }
    }

    let mode = match find("mode") {
        None => Mode::Germ,
        Some(e) => match e.value {
            "germ" => Mode::Germ,
            "laurent" => Mode::Laurent,
            "partials" => Mode::Partials,
            other => return Err(err(e, format!("unknown mode {other:?}"))),
        },
    };

    let poly = |e: &Entry| -> Result<Poly, ProblemError> {
        parse_polynomial(e.value, &vars).map_err(|pe| ProblemError {
            line: e.line,
            column: e.column + e.value[..pe.offset.min(e.value.len())].chars().count(),
            message: pe.kind.to_string(),
        })
    };

    let mut polys = Vec::new();
    let mut indexed: Vec<(usize, &Entry)> = Vec::new();
    let mut window = None;
    let mut minimal_m = false;
    let mut fan_dump = None;
    let mut checks = None;
    let mut series = None;
    let mut max_pairs = None;
    let mut max_degree = None;
    for e in &entries {
        match e.key {
            "vars" | "mode" | "f" => {}
            "window" => window = Some(parse_window(e.value).map_err(|m| err(e, m))?),
            "minimal-M" => {
                minimal_m = parse_bool(e.value)
                    .ok_or_else(|| err(e, format!("expected true or false, got {:?}", e.value)))?
            }
            "fan-dump" => fan_dump = Some(PathBuf::from(e.value)),
            "checks" => checks = Some(list(e.value)),
            "series" => series = Some(list(e.value)),
            "max-pairs" => {
                max_pairs = Some(
                    e.value
                        .parse()
                        .map_err(|_| err(e, format!("expected a count, got {:?}", e.value)))?,
                )
            }
            "max-degree" => {
                max_degree = Some(
                    e.value
                        .parse()
                        .map_err(|_| err(e, format!("expected a degree, got {:?}", e.value)))?,
                )
            }
            k => match k
                .strip_prefix('g')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&d| d >= 1)
            {
                Some(idx) => indexed.push((idx, e)),
                None => {
                    return Err(ProblemError {
                        line: e.line,
                        column: 1,
                        message: format!("unknown key {k:?}"),
                    })
                }
            },
        }
    }

    if mode == Mode::Partials {
        let e = find("f").ok_or(ProblemError {
            line: 1,
            column: 1,
            message: "mode partials needs `f`".into(),
        })?;
        if let Some((_, g)) = indexed.first() {
            return Err(err(g, "mode partials takes `f`, not `g` entries".into()));
        }
        polys.push(("f".to_string(), poly(e)?));
    } else {
        if let Some(e) = find("f") {
            return Err(err(e, "`f` needs `mode: partials`".into()));
        }
        indexed.sort_by_key(|(i, _)| *i);
        for (pos, (idx, e)) in indexed.iter().enumerate() {
            if *idx != pos + 1 {
                return Err(ProblemError {
                    line: e.line,
                    column: 1,
                    message: format!("expected g{}, found g{idx}", pos + 1),
                });
            }
            polys.push((e.key.to_string(), poly(e)?));
        }
        if polys.is_empty() {
            return Err(ProblemError {
                line: 1,
                column: 1,
                message: "no polynomials `g1`, `g2`, …".into(),
            });
        }
    }

    Ok(Problem {
        vars,
        mode,
        polys,
        window,
        minimal_m,
        fan_dump,
        checks,
        series,
        max_pairs,
        max_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let p = parse("vars: z1 z2\nmode: germ\ng1: z1^2 + z2^3\nwindow: 0..12\n").unwrap();
        assert_eq!(p.vars, ["z1", "z2"]);
        assert_eq!(p.mode, Mode::Germ);
        assert_eq!(p.window, Some((0, 12)));
        assert_eq!(p.polys.len(), 1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse("# cusp\n\nvars: x y  # two\ng1: x^2 + y^3\n").unwrap();
        assert_eq!(p.vars, ["x", "y"]);
    }

    #[test]
    fn partials_mode() {
        let p = parse("vars: z1 z2\nmode: partials\nf: z1^3 + z2^4\n").unwrap();
        let gs = p.generators().unwrap();
        assert_eq!(gs.len(), 2);
        assert!(p.f().is_some());
    }

    #[test]
    fn polynomial_errors_carry_positions() {
        let e = parse("vars: z1 z2\ng1: z1^2 + * z2\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        let e = parse("vars: z1 z2\ng1: z1 + w\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("unknown variable"), "{e}");
    }

    #[test]
    fn structural_errors() {
        assert_eq!(parse("vars: z1\ng2: z1\n").unwrap_err().line, 2);
        assert_eq!(parse("vars: z1\ng1: z1\ng1: z1^2\n").unwrap_err().line, 3);
        assert_eq!(
            parse("vars: z1\ng1: z1\nwindow: 5..1\n").unwrap_err().line,
            3
        );
        assert_eq!(parse("vars: z1\nbogus line\n").unwrap_err().line, 2);
        assert!(parse("g1: z1\n").is_err());
        assert!(parse("vars: z1\nf: z1^2\n").is_err());
    }
}
