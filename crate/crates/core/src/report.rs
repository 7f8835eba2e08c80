//! Report records and their line-oriented JSON / CSV serialization.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    ThmD,
    Holder,
    Prop1,
    Convexity,
    Constants,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Thm1,
        TheoremId::Thm2,
        TheoremId::Thm3,
        TheoremId::Thm4,
        TheoremId::ThmD,
        TheoremId::Holder,
        TheoremId::Prop1,
        TheoremId::Convexity,
        TheoremId::Constants,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm1 => "thm1",
            TheoremId::Thm2 => "thm2",
            TheoremId::Thm3 => "thm3",
            TheoremId::Thm4 => "thm4",
            TheoremId::ThmD => "thmD",
            TheoremId::Holder => "holder",
            TheoremId::Prop1 => "prop1",
            TheoremId::Convexity => "convexity",
            TheoremId::Constants => "constants",
        }
    }

    /// Needs Hölder exponents.
    pub fn uses_pq(self) -> bool {
        matches!(self, TheoremId::Thm3 | TheoremId::Thm4 | TheoremId::Holder | TheoremId::Prop1)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s.trim())
            .ok_or_else(|| Error::Parse { literal: s.to_string(), reason: "unknown theorem id".into() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    PreconditionFailed,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::PreconditionFailed => "precondition_failed",
            Status::Error => "error",
        }
    }
}

/// One verification result. `details` holds named intermediate values and
/// is not part of the serialized schema.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub alpha: f64,
    pub interval: (f64, f64),
    pub function: String,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub lhs: f64,
    pub rhs_paper: Option<f64>,
    pub rhs_engine: Option<f64>,
    pub residual: Option<f64>,
    pub satisfied_paper: Option<bool>,
    pub satisfied_engine: Option<bool>,
    pub margin_engine: Option<f64>,
    pub status: Status,
    pub note: String,
    pub details: Vec<(String, f64)>,
}

impl TheoremReport {
    pub fn new(theorem: TheoremId, alpha: f64, interval: (f64, f64), function: impl Into<String>) -> Self {
        TheoremReport {
            theorem,
            alpha,
            interval,
            function: function.into(),
            p: None,
            q: None,
            lhs: f64::NAN,
            rhs_paper: None,
            rhs_engine: None,
            residual: None,
            satisfied_paper: None,
            satisfied_engine: None,
            margin_engine: None,
            status: Status::Ok,
            note: String::new(),
            details: Vec::new(),
        }
    }

    pub fn with_pq(mut self, p: f64, q: f64) -> Self {
        self.p = Some(p);
        self.q = Some(q);
        self
    }

    /// Record an error in place of a result.
    pub fn failed(mut self, err: &Error) -> Self {
        self.status = Status::Error;
        self.note = err.to_string();
        self
    }

    pub fn detail(&self, key: &str) -> Option<f64> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub(crate) fn push_detail(&mut self, key: &str, value: f64) {
        self.details.push((key.to_string(), value));
    }

    pub(crate) fn append_note(&mut self, text: &str) {
        if !self.note.is_empty() {
            self.note.push_str("; ");
        }
        self.note.push_str(text);
    }

    /// Counted as a violation: a computed result whose engine verdict is false.
    pub fn is_violation(&self) -> bool {
        self.status == Status::Ok && self.satisfied_engine == Some(false)
    }

    pub fn is_satisfied(&self) -> bool {
        self.status == Status::Ok && self.satisfied_engine == Some(true)
    }
}

pub const COLUMNS: [&str; 15] = [
    "theorem",
    "alpha",
    "interval",
    "function",
    "p",
    "q",
    "lhs",
    "rhs_paper",
    "rhs_engine",
    "residual",
    "satisfied_paper",
    "satisfied_engine",
    "margin_engine",
    "status",
    "note",
];

/// 17 significant digits; non-finite values become `null`.
fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map_or_else(|| "null".to_string(), num)
}

fn opt_bool(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "null",
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

pub fn to_json_line(r: &TheoremReport) -> String {
    format!(
        concat!(
            "{{\"theorem\":{},\"alpha\":{},\"interval\":[{},{}],\"function\":{},\"p\":{},\"q\":{},",
            "\"lhs\":{},\"rhs_paper\":{},\"rhs_engine\":{},\"residual\":{},\"satisfied_paper\":{},",
            "\"satisfied_engine\":{},\"margin_engine\":{},\"status\":{},\"note\":{}}}"
        ),
        json_str(r.theorem.as_str()),
        num(r.alpha),
        num(r.interval.0),
        num(r.interval.1),
        json_str(&r.function),
        opt_num(r.p),
        opt_num(r.q),
        num(r.lhs),
        opt_num(r.rhs_paper),
        opt_num(r.rhs_engine),
        opt_num(r.residual),
        opt_bool(r.satisfied_paper),
        opt_bool(r.satisfied_engine),
        opt_num(r.margin_engine),
        json_str(r.status.as_str()),
        json_str(&r.note),
    )
}

pub fn write_json<W: Write>(mut out: W, records: &[TheoremReport]) -> std::io::Result<()> {
    for r in records {
        writeln!(out, "{}", to_json_line(r))?;
    }
    Ok(())
}

fn csv_cell(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => num(x),
        _ => String::new(),
    }
}

pub fn write_csv<W: Write>(out: W, records: &[TheoremReport]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in records {
        let bool_cell = |b: Option<bool>| b.map_or(String::new(), |b| b.to_string());
        w.write_record([
            r.theorem.as_str().to_string(),
            num(r.alpha),
            format!("[{},{}]", num(r.interval.0), num(r.interval.1)),
            r.function.clone(),
            csv_cell(r.p),
            csv_cell(r.q),
            csv_cell(Some(r.lhs)),
            csv_cell(r.rhs_paper),
            csv_cell(r.rhs_engine),
            csv_cell(r.residual),
            bool_cell(r.satisfied_paper),
            bool_cell(r.satisfied_engine),
            csv_cell(r.margin_engine),
            r.status.as_str().to_string(),
            r.note.clone(),
        ])?;
    }
    w.flush()
}

/// Deterministic emission order: (theorem, α, function, interval, p, q).
/// The sort is stable, so records that tie keep their generation order.
pub fn sort_records(records: &mut [TheoremReport]) {
    records.sort_by(|x, y| {
        x.theorem
            .cmp(&y.theorem)
            .then(x.alpha.total_cmp(&y.alpha))
            .then_with(|| x.function.cmp(&y.function))
            .then(x.interval.0.total_cmp(&y.interval.0))
            .then(x.interval.1.total_cmp(&y.interval.1))
            .then(x.p.unwrap_or(f64::NAN).total_cmp(&y.p.unwrap_or(f64::NAN)))
            .then(x.q.unwrap_or(f64::NAN).total_cmp(&y.q.unwrap_or(f64::NAN)))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TheoremReport {
        let mut r = TheoremReport::new(TheoremId::Thm3, 0.5, (0.0, 1.0), "poly:0,0,1").with_pq(2.0, 2.0);
        r.lhs = 1.0 / 6.0;
        r.rhs_paper = Some(0.75);
        r.rhs_engine = Some(f64::INFINITY);
        r.satisfied_engine = Some(true);
        r.note = "quote \" and\nnewline".into();
        r
    }

    #[test]
    fn json_line_layout() {
        let line = to_json_line(&sample());
        assert_eq!(
            line,
            concat!(
                r#"{"theorem":"thm3","alpha":5.0000000000000000e-1,"interval":[0.0000000000000000e0,1.0000000000000000e0],"#,
                r#""function":"poly:0,0,1","p":2.0000000000000000e0,"q":2.0000000000000000e0,"lhs":1.6666666666666666e-1,"#,
                r#""rhs_paper":7.5000000000000000e-1,"rhs_engine":null,"residual":null,"satisfied_paper":null,"#,
                r#""satisfied_engine":true,"margin_engine":null,"status":"ok","note":"quote \" and\nnewline"}"#
            )
        );
        let parsed: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(parsed["lhs"].as_f64().unwrap(), 1.0 / 6.0);
        assert_eq!(parsed.as_object().unwrap().len(), COLUMNS.len());
    }

    #[test]
    fn floats_round_trip_bit_exact() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, f64::MAX] {
            let s = num(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), COLUMNS);
        let row = rd.records().next().unwrap().unwrap();
        assert_eq!(&row[0], "thm3");
        assert_eq!(&row[8], "");
        assert_eq!(&row[11], "true");
        assert_eq!(&row[14], "quote \" and\nnewline");
    }

    #[test]
    fn theorem_ids_parse() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!("thm5".parse::<TheoremId>().is_err());
    }

    #[test]
    fn sort_is_stable_and_keyed() {
        let mk = |t, a: f64, f: &str| TheoremReport::new(t, a, (0.0, 1.0), f);
        let mut v = vec![
            mk(TheoremId::Thm2, 0.5, "b"),
            mk(TheoremId::Thm1, 1.0, "a"),
            mk(TheoremId::Thm1, 0.5, "b"),
            mk(TheoremId::Thm1, 0.5, "a"),
        ];
        v[3].note = "first".into();
        let mut dup = mk(TheoremId::Thm1, 0.5, "a");
        dup.note = "second".into();
        v.push(dup);
        sort_records(&mut v);
        let keys: Vec<_> = v.iter().map(|r| (r.theorem, r.alpha, r.function.as_str(), r.note.as_str())).collect();
        assert_eq!(
            keys,
            vec![
                (TheoremId::Thm1, 0.5, "a", "first"),
                (TheoremId::Thm1, 0.5, "a", "second"),
                (TheoremId::Thm1, 0.5, "b", ""),
                (TheoremId::Thm1, 1.0, "a", ""),
                (TheoremId::Thm2, 0.5, "b", ""),
            ]
        );
    }
}
