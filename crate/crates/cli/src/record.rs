//! Output records and their tsv / jsonl encodings.
//!
//! tsv columns: `n S l1 elements square_pairs total_pairs`, elements joined by
//! commas, followed by one `key=value` column per meta entry. jsonl carries
//! every integer value as a decimal string.

use std::collections::BTreeMap;
use std::io::{self, Write};

use pairsquare::sets::{PairReport, TripleReport};
use pairsquare::{Integer, SquareSet};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Set,
    Candidate,
    Prob,
    Report,
}

/// Square-root witness for the elements at `i`, `j` (and `k` for triples).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub root: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub kind: Kind,
    pub n: usize,
    pub elements: Vec<String>,
    pub sum: String,
    pub l1: String,
    pub square_pairs: usize,
    pub total_pairs: usize,
    pub roots: Vec<Root>,
    pub meta: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Jsonl,
}

impl ResultRecord {
    pub fn empty(kind: Kind) -> Self {
        ResultRecord {
            kind,
            n: 0,
            elements: Vec::new(),
            sum: "0".into(),
            l1: "0".into(),
            square_pairs: 0,
            total_pairs: 0,
            roots: Vec::new(),
            meta: BTreeMap::new(),
        }
    }

    fn for_set(kind: Kind, set: &SquareSet) -> Self {
        ResultRecord {
            n: set.len(),
            elements: set.elements().iter().map(ToString::to_string).collect(),
            sum: set.sum().to_string(),
            l1: set.l1_norm().to_string(),
            ..ResultRecord::empty(kind)
        }
    }

    pub fn with_pairs(kind: Kind, set: &SquareSet, report: &PairReport) -> Self {
        let mut record = ResultRecord::for_set(kind, set);
        record.square_pairs = report.square_pairs;
        record.total_pairs = report.total_pairs;
        record.roots = report
            .entries
            .iter()
            .filter_map(|e| {
                Some(Root {
                    i: e.i,
                    j: e.j,
                    k: None,
                    root: e.root.as_ref()?.to_string(),
                })
            })
            .collect();
        record
    }

    pub fn with_triples(kind: Kind, set: &SquareSet, report: &TripleReport) -> Self {
        let mut record = ResultRecord::for_set(kind, set);
        record.square_pairs = report.square_triples;
        record.total_pairs = report.total_triples;
        record.roots = report
            .entries
            .iter()
            .filter_map(|e| {
                Some(Root {
                    i: e.i,
                    j: e.j,
                    k: Some(e.k),
                    root: e.root.as_ref()?.to_string(),
                })
            })
            .collect();
        record.meta("mode", "triples")
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    /// Structural checks: sorted elements, counts in range, and every root
    /// squaring back to its element sum.
    pub fn check_invariants(&self) -> Result<(), String> {
        let parse = |s: &str| {
            s.parse::<Integer>()
                .map_err(|_| format!("non-integer {s:?}"))
        };
        let elements = self
            .elements
            .iter()
            .map(|s| parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!(
                "elements not strictly ascending: {:?}",
                self.elements
            ));
        }
        if self.square_pairs > self.total_pairs {
            return Err(format!(
                "{} square of {}",
                self.square_pairs, self.total_pairs
            ));
        }
        if elements.len() != self.n {
            return Err(format!("n = {} but {} elements", self.n, elements.len()));
        }
        for root in &self.roots {
            let pick = |idx: usize| {
                elements
                    .get(idx)
                    .cloned()
                    .ok_or_else(|| format!("root index {idx} out of range"))
            };
            let mut sum = pick(root.i)? + pick(root.j)?;
            if let Some(k) = root.k {
                sum += pick(k)?;
            }
            let r = parse(&root.root)?;
            if &r * &r != sum {
                return Err(format!("root {} does not square to {sum}", root.root));
            }
        }
        Ok(())
    }

    pub fn to_tsv(&self) -> String {
        let mut line = format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.sum,
            self.l1,
            self.elements.join(","),
            self.square_pairs,
            self.total_pairs
        );
        for (key, value) in &self.meta {
            line.push('\t');
            line.push_str(key);
            line.push('=');
            line.push_str(value);
        }
        line
    }

    pub fn to_jsonl(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        let line = match format {
            Format::Tsv => self.to_tsv(),
            Format::Jsonl => self.to_jsonl(),
        };
        writeln!(out, "{line}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pairsquare::sets::verify_pairs;

    fn record(literal: &str) -> ResultRecord {
        let set: SquareSet = literal.parse().unwrap();
        ResultRecord::with_pairs(Kind::Set, &set, &verify_pairs(&set))
    }

    #[test]
    fn tsv_columns() {
        assert_eq!(
            record("-40,65,104,296").to_tsv(),
            "4\t425\t505\t-40,65,104,296\t6\t6"
        );
        let with_meta = record("-2,3,6").meta("w", 2).meta("anchor", "1,2");
        assert_eq!(
            with_meta.to_tsv(),
            "3\t7\t11\t-2,3,6\t3\t3\tanchor=1,2\tw=2"
        );
    }

    #[test]
    fn jsonl_uses_decimal_strings() {
        let line = record("-15863902,17798783,21126338,49064546,82221218,447422978").to_jsonl();
        assert!(line.starts_with(r#"{"kind":"set","n":6,"elements":["-15863902","#));
        assert!(line.contains(r#""sum":"601769961""#));
        let back: ResultRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back.to_jsonl(), line);
    }

    #[test]
    fn invariant_checks() {
        let good = record("-2,3,6");
        assert!(good.check_invariants().is_ok());
        let mut bad = good.clone();
        bad.roots[0].root = "2".into();
        assert!(bad.check_invariants().is_err());
        let mut bad = good.clone();
        bad.elements.swap(0, 1);
        assert!(bad.check_invariants().is_err());
        let mut bad = good;
        bad.square_pairs = 4;
        assert!(bad.check_invariants().is_err());
    }
}
