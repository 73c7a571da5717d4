use crate::loops::{EdgeIdeal, IdealLoop, LoopStep};
use crate::perm::Perm4;
use crate::tri::Triangulation;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SerError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Table(#[from] crate::tri::TableError),
    #[error("json: {0}")]
    Json(String),
}

/// A parsed record: a triangulation, optionally with a loop line and an
/// attached surface vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub tri: Triangulation,
    pub knot: Option<IdealLoop>,
    pub surface: Option<Vec<BigInt>>,
}

/// Text form, one record per line:
/// `tri <tetCount>`, then `<t>: <p>(<perm>) ...` per tetrahedron with `-`
/// for an unglued face, optionally `loop <e><s> ...` and
/// `surf <3n entries>`.
pub fn write_text(rec: &Record) -> String {
    let mut out = String::new();
    let n = rec.tri.tet_count();
    out.push_str(&format!("tri {n}\n"));
    for t in 0..n {
        out.push_str(&format!("{t}:"));
        for f in 0..4u8 {
            match rec.tri.gluing(t, f) {
                None => out.push_str(" -"),
                Some(g) => out.push_str(&format!(" {}({})", g.tet, g.perm.digits())),
            }
        }
        out.push('\n');
    }
    if let Some(knot) = &rec.knot {
        out.push_str("loop");
        for s in &knot.steps {
            out.push_str(&format!(" {}{}", s.edge, s.sign_char()));
        }
        out.push('\n');
    }
    if let Some(surf) = &rec.surface {
        out.push_str("surf");
        for v in surf {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

pub fn parse_text(text: &str) -> Result<Record, SerError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, first) = lines
        .next()
        .ok_or(SerError::Syntax { line: 0, msg: "empty input".into() })?;
    let n: usize = first
        .trim()
        .strip_prefix("tri")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or(SerError::Syntax { line: ln + 1, msg: "expected 'tri <tetCount>'".into() })?;
    let mut table = vec![[None; 4]; n];
    let mut knot = None;
    let mut surface = None;
    let mut seen = 0usize;
    for (ln, line) in lines {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("loop") {
            let mut steps = Vec::new();
            for tok in rest.split_whitespace() {
                let (num, sign) = tok.split_at(tok.len() - 1);
                let edge: usize = num.parse().map_err(|_| SerError::Syntax {
                    line: ln + 1,
                    msg: format!("bad loop step '{tok}'"),
                })?;
                let forward = match sign {
                    "+" => true,
                    "-" => false,
                    _ => {
                        return Err(SerError::Syntax {
                            line: ln + 1,
                            msg: format!("bad loop sign '{sign}'"),
                        })
                    }
                };
                steps.push(LoopStep { edge, forward });
            }
            knot = Some(IdealLoop { steps });
            continue;
        }
        if let Some(rest) = line.strip_prefix("surf") {
            let entries: Result<Vec<BigInt>, _> =
                rest.split_whitespace().map(|s| s.parse::<BigInt>()).collect();
            surface = Some(entries.map_err(|e| SerError::Syntax {
                line: ln + 1,
                msg: format!("bad surface entry: {e}"),
            })?);
            continue;
        }
        let (head, rest) = line.split_once(':').ok_or(SerError::Syntax {
            line: ln + 1,
            msg: "expected '<t>: ...'".into(),
        })?;
        let t: usize = head.trim().parse().map_err(|_| SerError::Syntax {
            line: ln + 1,
            msg: format!("bad tetrahedron index '{head}'"),
        })?;
        if t >= n {
            return Err(SerError::Syntax { line: ln + 1, msg: format!("tetrahedron {t} out of range") });
        }
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(SerError::Syntax { line: ln + 1, msg: "expected 4 face entries".into() });
        }
        for (f, tok) in toks.iter().enumerate() {
            if *tok == "-" {
                continue;
            }
            let open = tok.find('(').ok_or(SerError::Syntax {
                line: ln + 1,
                msg: format!("bad face entry '{tok}'"),
            })?;
            let partner: usize = tok[..open].parse().map_err(|_| SerError::Syntax {
                line: ln + 1,
                msg: format!("bad partner in '{tok}'"),
            })?;
            let digits = tok[open + 1..].strip_suffix(')').ok_or(SerError::Syntax {
                line: ln + 1,
                msg: format!("unterminated permutation in '{tok}'"),
            })?;
            let perm = Perm4::from_digits(digits).ok_or(SerError::Syntax {
                line: ln + 1,
                msg: format!("bad permutation '{digits}'"),
            })?;
            table[t][f] = Some((partner, perm));
        }
        seen += 1;
    }
    if seen != n {
        return Err(SerError::Syntax { line: 0, msg: format!("expected {n} tetrahedron lines, got {seen}") });
    }
    let tri = Triangulation::from_gluings(table)?;
    Ok(Record { tri, knot, surface })
}

/// JSON mirror of the text form.
#[derive(Serialize, Deserialize)]
struct JsonRecord {
    #[serde(rename = "tetCount")]
    tet_count: usize,
    gluings: Vec<[Option<(usize, String)>; 4]>,
    #[serde(rename = "loop", skip_serializing_if = "Option::is_none")]
    knot: Option<Vec<(usize, char)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    surf: Option<Vec<String>>,
}

pub fn write_json(rec: &Record) -> String {
    let jr = JsonRecord {
        tet_count: rec.tri.tet_count(),
        gluings: rec
            .tri
            .raw_table()
            .into_iter()
            .map(|row| row.map(|g| g.map(|(t, p)| (t, p.digits()))))
            .collect(),
        knot: rec
            .knot
            .as_ref()
            .map(|k| k.steps.iter().map(|s| (s.edge, s.sign_char())).collect()),
        surf: rec.surface.as_ref().map(|s| s.iter().map(|v| v.to_string()).collect()),
    };
    serde_json::to_string(&jr).expect("record serializes")
}

pub fn parse_json(text: &str) -> Result<Record, SerError> {
    let jr: JsonRecord = serde_json::from_str(text).map_err(|e| SerError::Json(e.to_string()))?;
    let mut table = vec![[None; 4]; jr.tet_count];
    for (t, row) in jr.gluings.iter().enumerate() {
        if t >= jr.tet_count {
            return Err(SerError::Json("gluing rows exceed tetCount".into()));
        }
        for (f, entry) in row.iter().enumerate() {
            if let Some((partner, digits)) = entry {
                let perm = Perm4::from_digits(digits)
                    .ok_or_else(|| SerError::Json(format!("bad permutation '{digits}'")))?;
                table[t][f] = Some((*partner, perm));
            }
        }
    }
    let tri = Triangulation::from_gluings(table)?;
    let knot = match jr.knot {
        None => None,
        Some(steps) => {
            let mut out = Vec::new();
            for (edge, sign) in steps {
                let forward = match sign {
                    '+' => true,
                    '-' => false,
                    _ => return Err(SerError::Json(format!("bad loop sign '{sign}'"))),
                };
                out.push(LoopStep { edge, forward });
            }
            Some(IdealLoop { steps: out })
        }
    };
    let surface = match jr.surf {
        None => None,
        Some(entries) => {
            let parsed: Result<Vec<BigInt>, _> = entries.iter().map(|s| s.parse()).collect();
            Some(parsed.map_err(|e| SerError::Json(format!("bad surface entry: {e}")))?)
        }
    };
    Ok(Record { tri, knot, surface })
}

impl Record {
    pub fn from_edge_ideal(e: &EdgeIdeal) -> Record {
        Record { tri: e.tri.clone(), knot: Some(e.knot.clone()), surface: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Record {
        let e = crate::build::unknot_edge_ideal();
        Record { tri: e.tri, knot: Some(e.knot), surface: Some(vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)]) }
    }

    #[test]
    fn text_round_trip() {
        let rec = sample();
        let text = write_text(&rec);
        let back = parse_text(&text).unwrap();
        assert_eq!(back, rec);
        // Bit-exact second pass.
        assert_eq!(write_text(&back), text);
    }

    #[test]
    fn json_round_trip() {
        let rec = sample();
        let js = write_json(&rec);
        let back = parse_json(&js).unwrap();
        assert_eq!(back, rec);
        assert_eq!(write_json(&back), js);
    }

    #[test]
    fn bad_perm_named_in_error() {
        let text = "tri 1\n0: 0(0102) - - -\n";
        assert!(matches!(parse_text(text), Err(SerError::Syntax { .. })));
    }
}
