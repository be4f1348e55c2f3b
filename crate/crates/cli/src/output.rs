//! CSV codec for result rows.

use std::io::Write;

use crate::CliError;

pub const HEADER: [&str; 16] = [
    "kind",
    "model",
    "alpha",
    "m",
    "n_users",
    "pool_size",
    "selection",
    "theta",
    "beta",
    "ranking",
    "method",
    "value",
    "error",
    "n_samples",
    "seed",
    "runtime_ms",
];

pub const ERROR_METHOD: &str = "error";

/// One CSV record. Absent fields serialize as empty cells. `message` is
/// only set on error rows and travels as a `# error:` comment line written
/// just before the row.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultRow {
    pub kind: String,
    pub model: Option<String>,
    pub alpha: Option<f64>,
    pub m: Option<f64>,
    pub n_users: Option<usize>,
    pub pool_size: Option<usize>,
    pub selection: Option<Vec<usize>>,
    pub theta: Option<f64>,
    pub beta: Option<f64>,
    pub ranking: Option<String>,
    pub method: String,
    pub value: Option<f64>,
    pub error: Option<f64>,
    pub n_samples: Option<u64>,
    pub seed: Option<u64>,
    pub runtime_ms: Option<f64>,
    pub message: Option<String>,
}

impl ResultRow {
    pub fn is_error(&self) -> bool {
        self.method == ERROR_METHOD
    }

    /// The row as it reads back after encoding: floats rounded to 9
    /// significant digits.
    pub fn rounded(&self) -> Self {
        let r = |x: Option<f64>| x.map(round9);
        Self {
            alpha: r(self.alpha),
            m: r(self.m),
            theta: r(self.theta),
            beta: r(self.beta),
            value: r(self.value),
            error: r(self.error),
            runtime_ms: r(self.runtime_ms),
            ..self.clone()
        }
    }

    fn record(&self) -> [String; 16] {
        let f = |x: Option<f64>| x.map(fmt_float).unwrap_or_default();
        let i = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
        [
            self.kind.clone(),
            self.model.clone().unwrap_or_default(),
            f(self.alpha),
            f(self.m),
            i(self.n_users.map(|v| v as u64)),
            i(self.pool_size.map(|v| v as u64)),
            self.selection.as_deref().map(fmt_selection).unwrap_or_default(),
            f(self.theta),
            f(self.beta),
            self.ranking.clone().unwrap_or_default(),
            self.method.clone(),
            f(self.value),
            f(self.error),
            i(self.n_samples),
            i(self.seed),
            f(self.runtime_ms),
        ]
    }

    fn from_record(rec: &csv::StringRecord) -> Result<Self, String> {
        if rec.len() != HEADER.len() {
            return Err(format!("expected {} fields, found {}", HEADER.len(), rec.len()));
        }
        let s = |k: usize| Some(rec[k].to_string()).filter(|v| !v.is_empty());
        let f = |k: usize| opt_parse::<f64>(&rec[k], HEADER[k]);
        let u = |k: usize| opt_parse::<u64>(&rec[k], HEADER[k]);
        let z = |k: usize| opt_parse::<usize>(&rec[k], HEADER[k]);
        Ok(Self {
            kind: rec[0].to_string(),
            model: s(1),
            alpha: f(2)?,
            m: f(3)?,
            n_users: z(4)?,
            pool_size: z(5)?,
            selection: s(6).map(|v| parse_selection(&v)).transpose()?,
            theta: f(7)?,
            beta: f(8)?,
            ranking: s(9),
            method: rec[10].to_string(),
            value: f(11)?,
            error: f(12)?,
            n_samples: u(13)?,
            seed: u(14)?,
            runtime_ms: f(15)?,
            message: None,
        })
    }
}

fn opt_parse<T: std::str::FromStr>(s: &str, field: &str) -> Result<Option<T>, String> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| format!("bad {field} `{s}`"))
}

pub fn round9(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// 9 significant digits, shortest form; exponent notation for very small
/// and very large magnitudes.
pub fn fmt_float(x: f64) -> String {
    let r = round9(x);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn fmt_selection(ranks: &[usize]) -> String {
    ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("-")
}

pub fn parse_selection(s: &str) -> Result<Vec<usize>, String> {
    s.split(['-', ','])
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad rank `{t}` in selection `{s}`"))
        })
        .collect()
}

fn encode<I, T>(fields: I) -> Result<Vec<u8>, CliError>
where
    I: IntoIterator<Item = T>,
    T: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).map_err(|e| CliError::Output(e.to_string()))?;
    w.into_inner().map_err(|e| CliError::Output(e.to_string()))
}

/// Writes `# ` comment lines, the header and the rows.
pub fn write_csv<W: Write>(mut out: W, comments: &[String], rows: &[ResultRow]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Output(e.to_string());
    for c in comments {
        writeln!(out, "# {c}").map_err(io)?;
    }
    out.write_all(&encode(HEADER)?).map_err(io)?;
    for row in rows {
        if let Some(msg) = row.message.as_deref().filter(|_| row.is_error()) {
            writeln!(out, "# error: {}", msg.replace('\n', " ")).map_err(io)?;
        }
        out.write_all(&encode(row.record())?).map_err(io)?;
    }
    out.flush().map_err(io)
}

pub fn to_csv_string(comments: &[String], rows: &[ResultRow]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, comments, rows).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}

/// Parses CSV text written by [`write_csv`]. Returns the leading comment
/// lines (without `# `) and the rows, with error messages reattached.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<ResultRow>), String> {
    let mut comments = Vec::new();
    let mut messages = Vec::new();
    let mut seen_header = false;
    for line in text.lines() {
        match line.strip_prefix('#') {
            Some(c) => {
                let c = c.strip_prefix(' ').unwrap_or(c);
                match c.strip_prefix("error: ") {
                    Some(m) if seen_header => messages.push(m.to_string()),
                    _ if !seen_header => comments.push(c.to_string()),
                    _ => {}
                }
            }
            None => seen_header = true,
        }
    }
    let mut rd = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = rd.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(format!(
            "unexpected header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        ));
    }
    let mut messages = messages.into_iter();
    let mut rows = Vec::new();
    for rec in rd.records() {
        let mut row = ResultRow::from_record(&rec.map_err(|e| e.to_string())?)?;
        if row.is_error() {
            row.message = messages.next();
        }
        rows.push(row);
    }
    Ok((comments, rows))
}

/// Aligned plain-text summary of the rows, for the terminal.
pub fn summary_table(rows: &[ResultRow]) -> String {
    let cols = [
        "kind", "model", "alpha", "m", "N", "sel", "theta", "beta", "ranking", "value", "error",
    ];
    let mut table: Vec<[String; 11]> = vec![cols.map(String::from)];
    for r in rows {
        let rec = r.record();
        let sel = match (&r.selection, r.pool_size) {
            (Some(s), Some(m)) => format!("{}/{}", fmt_selection(s), m),
            _ => String::new(),
        };
        let value = if r.is_error() {
            "error".to_string()
        } else {
            rec[11].clone()
        };
        table.push([
            rec[0].clone(),
            rec[1].clone(),
            rec[2].clone(),
            rec[3].clone(),
            rec[4].clone(),
            sel,
            rec[7].clone(),
            rec[8].clone(),
            rec[9].clone(),
            value,
            rec[12].clone(),
        ]);
    }
    let widths: Vec<usize> = (0..cols.len())
        .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &table {
        let line: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<ResultRow> {
        vec![
            ResultRow {
                kind: "accuracy-analytic".into(),
                model: Some("mcp".into()),
                alpha: Some(4.0),
                m: Some(1.0),
                n_users: Some(2),
                method: "series".into(),
                value: Some(std::f64::consts::FRAC_PI_4),
                error: Some(3.2e-11),
                ..Default::default()
            },
            ResultRow {
                kind: "accuracy-mc".into(),
                model: Some("ppp-voronoi".into()),
                alpha: Some(2.5),
                m: Some(0.5),
                n_users: Some(2),
                pool_size: Some(3),
                selection: Some(vec![1, 3]),
                method: "monte-carlo".into(),
                value: Some(0.92159),
                error: Some(0.000850069832),
                n_samples: Some(100_000),
                seed: Some(u64::MAX),
                runtime_ms: Some(1234.5678901),
                ..Default::default()
            },
            ResultRow {
                kind: "accuracy-analytic".into(),
                model: Some("tcp".into()),
                alpha: Some(1.5),
                method: ERROR_METHOD.into(),
                message: Some("alpha: must exceed 2".into()),
                ..Default::default()
            },
            ResultRow {
                kind: "coverage-uplink-near".into(),
                model: Some("mcp".into()),
                theta: Some(0.1),
                beta: Some(0.0),
                ranking: Some("msp-first-term".into()),
                method: "monte-carlo".into(),
                value: Some(1e-7 / 3.0),
                error: Some(0.0),
                ..Default::default()
            },
        ]
    }

    #[test]
    fn header_is_exact() {
        let text = to_csv_string(&[], &[]);
        assert_eq!(
            text,
            "kind,model,alpha,m,n_users,pool_size,selection,theta,beta,ranking,method,value,error,n_samples,seed,runtime_ms\n"
        );
    }

    #[test]
    fn round_trip() {
        let rows = sample_rows();
        let comments = vec!["preset fig6".to_string(), "seed=1".to_string()];
        let text = to_csv_string(&comments, &rows);
        let (c, back) = read_csv(&text).unwrap();
        assert_eq!(c, comments);
        let expect: Vec<ResultRow> = rows.iter().map(ResultRow::rounded).collect();
        assert_eq!(back, expect);
        assert_eq!(to_csv_string(&c, &back), text);
    }

    #[test]
    fn floats_keep_nine_digits() {
        assert_eq!(fmt_float(std::f64::consts::FRAC_PI_4), "0.785398163");
        assert_eq!(fmt_float(4.0), "4");
        assert_eq!(fmt_float(2.5), "2.5");
        assert_eq!(fmt_float(1234.5678901), "1234.56789");
        assert_eq!(fmt_float(1e-7 / 3.0), "3.33333333e-8");
        assert_eq!(fmt_float(0.00012), "0.00012");
        assert_eq!(fmt_float(0.0), "0");
    }

    #[test]
    fn selection_codec() {
        assert_eq!(fmt_selection(&[1, 3]), "1-3");
        assert_eq!(parse_selection("1-3").unwrap(), vec![1, 3]);
        assert_eq!(parse_selection("2,4,5").unwrap(), vec![2, 4, 5]);
        assert!(parse_selection("1-x").is_err());
    }

    #[test]
    fn error_rows_carry_comment() {
        let text = to_csv_string(&[], &sample_rows());
        assert!(text.contains("# error: alpha: must exceed 2\naccuracy-analytic,tcp,1.5,,,,,,,,error,,,,,\n"));
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_csv("a,b\n1,2\n").is_err());
    }

    #[test]
    fn summary_lists_rows() {
        let t = summary_table(&sample_rows());
        assert_eq!(t.lines().count(), 5);
        assert!(t.contains("1-3/3"));
    }
}
