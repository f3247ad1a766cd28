use std::fmt;

use quiver_core::{Arrow, Quiver, Violation, WeightForms, WeightSpec};
use thiserror::Error;

/// A parse or validation failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub id: String,
    /// 1-based vertex numbers as written.
    pub tail: usize,
    pub head: usize,
}

/// A quiver, a dimension vector and the weights of the semi-invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub vertices: usize,
    pub arrows: Vec<ArrowDecl>,
    pub beta: Vec<i64>,
    pub weights: Vec<WeightSpec>,
    pub m: Option<Vec<i64>>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        let sep = c.is_whitespace() || c == ':';
        match (start, sep) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
        if c == ':' {
            out.push(Token { text: ":", column: line[..i].chars().count() + 1 });
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn ints(line: usize, toks: &[Token<'_>]) -> Result<Vec<i64>, ParseError> {
    toks.iter()
        .map(|t| t.text.parse::<i64>().map_err(|_| err(line, t.column, format!("expected an integer, found {:?}", t.text))))
        .collect()
}

#[derive(Default)]
struct Lines {
    vertices: Option<usize>,
    beta: Option<usize>,
    m: Option<usize>,
    arrows: Vec<usize>,
    weights: Vec<usize>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, ParseError> {
        let mut vertices = None;
        let mut arrows = Vec::new();
        let mut beta = None;
        let mut weights = Vec::new();
        let mut m = None;
        let mut at = Lines::default();
        let mut last_line = 0;

        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            last_line = ln;
            let line = raw.split('#').next().unwrap_or("");
            let toks = tokens(line);
            let Some(kw) = toks.first() else { continue };
            let rest = &toks[1..];
            let once = |slot: &mut Option<usize>, name: &str| {
                if let Some(prev) = *slot {
                    return Err(err(ln, kw.column, format!("{name} already given on line {prev}")));
                }
                *slot = Some(ln);
                Ok(())
            };
            match kw.text {
                "vertices" => {
                    once(&mut at.vertices, "vertices")?;
                    if rest.len() != 1 {
                        return Err(err(ln, kw.column, format!("vertices takes 1 value, found {}", rest.len())));
                    }
                    let n = rest[0]
                        .text
                        .parse::<usize>()
                        .map_err(|_| err(ln, rest[0].column, format!("expected a vertex count, found {:?}", rest[0].text)))?;
                    vertices = Some(n);
                }
                "arrow" => {
                    let n = vertices.ok_or_else(|| err(ln, kw.column, "arrow before vertices"))?;
                    // arrow <id> : <tail> -> <head>
                    if rest.len() != 5 || rest[1].text != ":" || rest[3].text != "->" {
                        let col = rest.first().map_or(kw.column, |t| t.column);
                        return Err(err(ln, col, "expected `arrow <id>: <tail> -> <head>`"));
                    }
                    let end = |t: &Token<'_>| {
                        t.text
                            .parse::<usize>()
                            .ok()
                            .filter(|v| (1..=n).contains(v))
                            .ok_or_else(|| err(ln, t.column, format!("unknown vertex {:?} (vertices are 1..{n})", t.text)))
                    };
                    arrows.push(ArrowDecl { id: rest[0].text.to_string(), tail: end(&rest[2])?, head: end(&rest[4])? });
                    at.arrows.push(ln);
                }
                "beta" | "alpha" | "alphastar" | "sigma" | "m" => {
                    let n = vertices.ok_or_else(|| err(ln, kw.column, format!("{} before vertices", kw.text)))?;
                    let values = ints(ln, rest)?;
                    if kw.text == "m" {
                        once(&mut at.m, "m")?;
                        m = Some(values);
                        continue;
                    }
                    if values.len() != n {
                        return Err(err(ln, kw.column, format!("{} has {} entries, expected {n}", kw.text, values.len())));
                    }
                    match kw.text {
                        "beta" => {
                            once(&mut at.beta, "beta")?;
                            if let Some(t) = rest.iter().zip(&values).find(|(_, v)| **v < 0).map(|(t, _)| t) {
                                return Err(err(ln, t.column, "dimensions must be nonnegative"));
                            }
                            beta = Some(values);
                        }
                        "alpha" => weights.push(WeightSpec::Alpha(values)),
                        "alphastar" => weights.push(WeightSpec::AlphaStar(values)),
                        _ => weights.push(WeightSpec::Sigma(values)),
                    }
                    if kw.text != "beta" {
                        at.weights.push(ln);
                    }
                }
                other => return Err(err(ln, kw.column, format!("unknown keyword {other:?}"))),
            }
        }

        let eof = last_line + 1;
        let vertices = vertices.ok_or_else(|| err(eof, 1, "missing `vertices`"))?;
        let beta = beta.ok_or_else(|| err(eof, 1, "missing `beta`"))?;
        if weights.is_empty() {
            return Err(err(eof, 1, "missing weight (`alpha`, `alphastar` or `sigma`)"));
        }
        if let (Some(mv), Some(ln)) = (&m, at.m) {
            if mv.len() != weights.len() {
                return Err(err(ln, 1, format!("m has {} entries, expected {} (one per weight)", mv.len(), weights.len())));
            }
            if mv.iter().any(|&x| x < 0) {
                return Err(err(ln, 1, "exponents must be nonnegative"));
            }
        }
        let p = ProblemFile { vertices, arrows, beta, weights, m };
        let q = p.quiver().map_err(|vs| {
            let v = &vs[0];
            let ln = violation_line(v, &p.arrows, &at.arrows).unwrap_or(at.vertices.unwrap_or(1));
            err(ln, 1, vs.iter().map(Violation::to_string).collect::<Vec<_>>().join("; "))
        })?;
        for (k, w) in p.weights.iter().enumerate() {
            let forms = q.convert_weight(w).map_err(|e| err(at.weights[k], 1, e.to_string()))?;
            let value = Quiver::pair(&forms.sigma, &p.beta);
            if value != 0 {
                return Err(err(
                    at.weights[k],
                    1,
                    format!("weight {} has σ(β) = {value}, expected 0 (σ = {:?})", k + 1, forms.sigma),
                ));
            }
        }
        Ok(p)
    }

    pub fn labels(&self) -> Vec<String> {
        (1..=self.vertices).map(|i| i.to_string()).collect()
    }

    pub fn quiver(&self) -> Result<Quiver, Vec<Violation>> {
        let arrows: Vec<Arrow> =
            self.arrows.iter().map(|a| Arrow { id: a.id.clone(), tail: a.tail - 1, head: a.head - 1 }).collect();
        Quiver::new(self.labels(), arrows).map_err(|e| match e {
            quiver_core::QuiverError::Invalid(vs) => vs,
            other => unreachable!("quiver construction only reports violations: {other}"),
        })
    }

    /// All three forms of every weight. Call only on a parsed file.
    pub fn weight_forms(&self, q: &Quiver) -> Vec<WeightForms> {
        self.weights.iter().map(|w| q.convert_weight(w).expect("validated on parse")).collect()
    }

    pub fn alphas(&self, q: &Quiver) -> Vec<Vec<i64>> {
        self.weight_forms(q).into_iter().map(|f| f.alpha).collect()
    }

    /// The exponent tuple, (1,…,1) when absent.
    pub fn exponents(&self) -> Vec<i64> {
        self.m.clone().unwrap_or_else(|| vec![1; self.weights.len()])
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn violation_line(v: &Violation, arrows: &[ArrowDecl], lines: &[usize]) -> Option<usize> {
    let by_id = |id: &str| arrows.iter().rposition(|a| a.id == id).map(|k| lines[k]);
    match v {
        Violation::DuplicateArrow(id) | Violation::Loop { arrow: id, .. } | Violation::UnknownEndpoint { arrow: id, .. } => {
            by_id(id)
        }
        Violation::Cycle(vs) => {
            let inside = |x: usize| vs.contains(&x.to_string());
            arrows.iter().rposition(|a| inside(a.tail) && inside(a.head)).map(|k| lines[k])
        }
        Violation::DuplicateVertex(_) => None,
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.vertices)?;
        for a in &self.arrows {
            writeln!(f, "arrow {}: {} -> {}", a.id, a.tail, a.head)?;
        }
        writeln!(f, "beta {}", join(&self.beta))?;
        for w in &self.weights {
            match w {
                WeightSpec::Alpha(v) => writeln!(f, "alpha {}", join(v))?,
                WeightSpec::AlphaStar(v) => writeln!(f, "alphastar {}", join(v))?,
                WeightSpec::Sigma(v) => writeln!(f, "sigma {}", join(v))?,
            }
        }
        if let Some(m) = &self.m {
            writeln!(f, "m {}", join(m))?;
        }
        Ok(())
    }
}
