//! Transaction-log ingestion and temporal aggregation into windowed networks.
//!
//! A log is a sequence of timestamped bilateral trades. Aggregation buckets
//! trades into calendar windows (day, ISO week, month, quarter, or one static
//! window spanning the whole log) and binarizes each bucket: an undirected
//! edge joins two parties iff at least one trade ran between them in either
//! direction during the window. Parties with no trade in a window are absent
//! from that window's network.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, Duration, NaiveDate, NaiveDateTime, Weekday};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, RowIssue};
use crate::graph::Network;

/// One bilateral trade. The amount is retained but plays no role in
/// binarization.
#[derive(Debug, Clone, PartialEq)]
pub struct TransactionRecord {
    pub timestamp: NaiveDateTime,
    pub lender: String,
    pub borrower: String,
    pub amount: f64,
}

pub type TransactionLog = Vec<TransactionRecord>;

/// Aggregation granularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Day,
    Week,
    Month,
    Quarter,
    Static,
}

impl Scale {
    pub fn as_str(self) -> &'static str {
        match self {
            Scale::Day => "day",
            Scale::Week => "week",
            Scale::Month => "month",
            Scale::Quarter => "quarter",
            Scale::Static => "static",
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "day" => Ok(Scale::Day),
            "week" => Ok(Scale::Week),
            "month" => Ok(Scale::Month),
            "quarter" => Ok(Scale::Quarter),
            "static" => Ok(Scale::Static),
            other => Err(Error::InvalidConfig(format!("unknown scale `{other}`"))),
        }
    }
}

/// One aggregated window: label, inclusive date bounds, binarized network,
/// and the number of log records bucketed into it.
#[derive(Debug, Clone)]
pub struct Window {
    pub label: String,
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub network: Network,
    pub trade_count: usize,
}

/// Chronologically ordered windows at one scale.
#[derive(Debug, Clone)]
pub struct WindowedNetworkSeries {
    pub scale: Scale,
    pub windows: Vec<Window>,
    /// Trades with lender == borrower, dropped from edge formation.
    pub self_trades_dropped: usize,
}

/// How to treat malformed transaction rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    /// Any malformed row fails the whole parse, all offenders listed.
    Strict,
    /// Malformed rows are skipped and reported.
    Lenient,
}

/// Outcome of a transaction-CSV parse.
#[derive(Debug)]
pub struct ParsedLog {
    pub log: TransactionLog,
    /// Rows skipped in lenient mode (always empty under strict).
    pub skipped: Vec<RowIssue>,
}

const TRANSACTION_HEADER: [&str; 4] = ["timestamp", "lender", "borrower", "amount"];

/// Parse `timestamp,lender,borrower,amount` CSV text.
///
/// Timestamps are ISO-8601: `2006-01-31T14:05:00` (an offset suffix or a
/// space separator is tolerated; a bare date means midnight). Amounts must be
/// finite and positive. Record order in the returned log follows the file.
pub fn parse_transactions(text: &str, mode: ParseMode) -> Result<ParsedLog> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::BadHeader {
            expected: TRANSACTION_HEADER.join(","),
            found: e.to_string(),
        })?
        .clone();
    if headers.len() != 4
        || headers
            .iter()
            .zip(TRANSACTION_HEADER)
            .any(|(h, e)| h.trim() != e)
    {
        return Err(Error::BadHeader {
            expected: TRANSACTION_HEADER.join(","),
            found: headers.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut log = Vec::new();
    let mut issues = Vec::new();
    for rec in reader.records() {
        let row = match rec {
            Ok(row) => row,
            Err(e) => {
                issues.push(RowIssue {
                    line: e.position().map(|p| p.line()).unwrap_or(0),
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        match parse_row(&row) {
            Ok(record) => log.push(record),
            Err(message) => issues.push(RowIssue { line, message }),
        }
    }
    match (mode, issues.is_empty()) {
        (ParseMode::Strict, false) => Err(Error::MalformedRows(issues)),
        _ => Ok(ParsedLog { log, skipped: issues }),
    }
}

fn parse_row(row: &csv::StringRecord) -> std::result::Result<TransactionRecord, String> {
    if row.len() != 4 {
        return Err(format!("expected 4 fields, got {}", row.len()));
    }
    let timestamp = parse_timestamp(row.get(0).unwrap().trim())?;
    let lender = row.get(1).unwrap().trim();
    let borrower = row.get(2).unwrap().trim();
    if lender.is_empty() || borrower.is_empty() {
        return Err("lender and borrower must be non-empty".into());
    }
    let raw_amount = row.get(3).unwrap().trim();
    let amount: f64 = raw_amount
        .parse()
        .map_err(|_| format!("bad amount `{raw_amount}`"))?;
    if !amount.is_finite() || amount <= 0.0 {
        return Err(format!("amount must be positive and finite, got `{raw_amount}`"));
    }
    Ok(TransactionRecord {
        timestamp,
        lender: lender.to_string(),
        borrower: borrower.to_string(),
        amount,
    })
}

fn parse_timestamp(s: &str) -> std::result::Result<NaiveDateTime, String> {
    if let Ok(dt) = chrono::DateTime::parse_from_rfc3339(s) {
        return Ok(dt.naive_local());
    }
    for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f"] {
        if let Ok(dt) = NaiveDateTime::parse_from_str(s, fmt) {
            return Ok(dt);
        }
    }
    if let Ok(d) = NaiveDate::parse_from_str(s, "%Y-%m-%d") {
        return Ok(d.and_hms_opt(0, 0, 0).unwrap());
    }
    Err(format!("bad timestamp `{s}`"))
}

/// Label and inclusive date bounds of the window containing `date`.
pub fn window_bounds(date: NaiveDate, scale: Scale) -> (String, NaiveDate, NaiveDate) {
    match scale {
        Scale::Day => (date.format("%Y-%m-%d").to_string(), date, date),
        Scale::Week => {
            let iso = date.iso_week();
            let start = NaiveDate::from_isoywd_opt(iso.year(), iso.week(), Weekday::Mon).unwrap();
            (
                format!("{}-W{:02}", iso.year(), iso.week()),
                start,
                start + Duration::days(6),
            )
        }
        Scale::Month => {
            let start = NaiveDate::from_ymd_opt(date.year(), date.month(), 1).unwrap();
            (
                date.format("%Y-%m").to_string(),
                start,
                last_day_of_month(date.year(), date.month()),
            )
        }
        Scale::Quarter => {
            let q = (date.month0() / 3) + 1;
            let first_month = (q - 1) * 3 + 1;
            let start = NaiveDate::from_ymd_opt(date.year(), first_month, 1).unwrap();
            (
                format!("{}-Q{q}", date.year()),
                start,
                last_day_of_month(date.year(), first_month + 2),
            )
        }
        Scale::Static => ("static".to_string(), date, date),
    }
}

fn last_day_of_month(year: i32, month: u32) -> NaiveDate {
    let (ny, nm) = if month == 12 { (year + 1, 1) } else { (year, month + 1) };
    NaiveDate::from_ymd_opt(ny, nm, 1).unwrap() - Duration::days(1)
}

/// Aggregate a log into windowed binary networks at the given scale.
///
/// Windows with no edges (no trades, or self-trades only) are omitted.
/// Records enter windows by timestamp regardless of log order, so out-of-order
/// input yields the same series as sorted input.
pub fn aggregate(log: &[TransactionRecord], scale: Scale) -> Result<WindowedNetworkSeries> {
    if log.is_empty() {
        return Err(Error::EmptyLog);
    }

    struct Bucket {
        label: String,
        end: NaiveDate,
        edges: std::collections::BTreeSet<(String, String)>,
        trade_count: usize,
    }

    let mut buckets: BTreeMap<NaiveDate, Bucket> = BTreeMap::new();
    let mut self_trades = 0usize;
    let static_bounds = if scale == Scale::Static {
        let min = log.iter().map(|r| r.timestamp.date()).min().unwrap();
        let max = log.iter().map(|r| r.timestamp.date()).max().unwrap();
        Some((min, max))
    } else {
        None
    };

    for record in log {
        let date = record.timestamp.date();
        let (label, start, end) = match static_bounds {
            Some((min, max)) => ("static".to_string(), min, max),
            None => window_bounds(date, scale),
        };
        let bucket = buckets.entry(start).or_insert_with(|| Bucket {
            label,
            end,
            edges: Default::default(),
            trade_count: 0,
        });
        bucket.trade_count += 1;
        if record.lender == record.borrower {
            self_trades += 1;
            continue;
        }
        let (a, b) = if record.lender <= record.borrower {
            (record.lender.clone(), record.borrower.clone())
        } else {
            (record.borrower.clone(), record.lender.clone())
        };
        bucket.edges.insert((a, b));
    }

    let mut windows = Vec::with_capacity(buckets.len());
    for (start, bucket) in buckets {
        if bucket.edges.is_empty() {
            continue;
        }
        let network =
            Network::from_edges(bucket.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))?;
        windows.push(Window {
            label: bucket.label,
            start,
            end: bucket.end,
            network,
            trade_count: bucket.trade_count,
        });
    }
    Ok(WindowedNetworkSeries {
        scale,
        windows,
        self_trades_dropped: self_trades,
    })
}

/// File name under which a window's edge list is emitted.
pub fn edge_file_name(scale: Scale, label: &str) -> String {
    format!("{}_{}.edges", scale.as_str(), label)
}

/// Render the per-window manifest: `window_label,start,end,n_nodes,n_edges`.
pub fn manifest_csv(series: &WindowedNetworkSeries) -> String {
    let mut out = String::from("window_label,start,end,n_nodes,n_edges\n");
    for w in &series.windows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            w.label,
            w.start.format("%Y-%m-%d"),
            w.end.format("%Y-%m-%d"),
            w.network.node_count(),
            w.network.edge_count()
        ));
    }
    out
}
