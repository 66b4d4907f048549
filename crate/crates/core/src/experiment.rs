//! A/B analysis of title variants: selection (clicked or not) and
//! questionnaire-based evaluation on the User Engagement Scale.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::{levene_test, pooled_t_test, summarize, welch_t_test, GroupSummary, LeveneResult, TTestResult};

/// Questionnaire dimensions, one fixture item per dimension by default.
pub const UES_DIMENSIONS: [(&str, &str); 5] = [
    ("novelty_aesthetic_appeal", "interest and curiosity evoked; visual appeal"),
    ("focused_attention", "concentration and absorption in the content"),
    ("felt_involvement", "being drawn in and enjoying the interaction"),
    ("perceived_usability", "affective and cognitive effort responses"),
    ("endurability_reward", "overall success and willingness to return or recommend"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Original,
    Treatment,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Treatment => "treatment",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s.trim().to_ascii_lowercase().as_str() {
            "original" => Ok(Variant::Original),
            "treatment" => Ok(Variant::Treatment),
            other => Err(Error::Invalid(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UesResponse {
    pub response_id: String,
    pub variant: Variant,
    pub selected: bool,
    /// Item answers on a 1..=5 scale, in questionnaire order.
    pub items: Vec<u8>,
}

/// Mean of the coded items; reverse-coded items map `x -> 6 - x`.
///
/// `reverse_items` holds 0-based item indices.
pub fn ues_score(response: &UesResponse, reverse_items: &BTreeSet<usize>) -> Result<f64> {
    if response.items.is_empty() {
        return Err(Error::TooFewObservations { needed: 1, got: 0 });
    }
    let mut total = 0u32;
    for (index, &value) in response.items.iter().enumerate() {
        if !(1..=5).contains(&value) {
            return Err(Error::OutOfScale {
                index,
                value: value.into(),
            });
        }
        let coded = if reverse_items.contains(&index) { 6 - value } else { value };
        total += u32::from(coded);
    }
    Ok(f64::from(total) / response.items.len() as f64)
}

/// Parse a response log: a header row with `response_id`, `variant`,
/// `selected` and `item_1..item_k`, comma- or tab-delimited. Lines
/// starting with `#` are comments.
pub fn parse_response_log(text: &str, origin: &str) -> Result<Vec<UesResponse>> {
    let header_line = text
        .lines()
        .find(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let delimiter = if header_line.contains('\t') { b'\t' } else { b',' };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header_lineno = text.lines().position(|l| l == header_line).map_or(1, |i| i + 1);
    let headers = reader
        .headers()
        .map_err(|e| Error::malformed(origin, header_lineno, e.to_string()))?
        .clone();
    let column = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::malformed(origin, header_lineno, format!("missing column {name}")))
    };
    let id_col = column("response_id")?;
    let variant_col = column("variant")?;
    let selected_col = column("selected")?;
    let mut item_cols: BTreeMap<usize, usize> = BTreeMap::new();
    for (col, name) in headers.iter().enumerate() {
        if let Some(k) = name.strip_prefix("item_").and_then(|k| k.parse::<usize>().ok()) {
            item_cols.insert(k, col);
        }
    }
    if item_cols.keys().copied().ne(1..=item_cols.len()) {
        return Err(Error::malformed(origin, header_lineno, "item columns must be item_1..item_k"));
    }

    let mut responses = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::malformed(origin, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |msg: String| Error::malformed(origin, line, msg);
        let field = |col: usize| record.get(col).unwrap_or("");
        let variant = field(variant_col).parse::<Variant>().map_err(|e| bad(e.to_string()))?;
        let selected = match field(selected_col) {
            "1" => true,
            "0" => false,
            other => return Err(bad(format!("selected must be 0 or 1, got {other:?}"))),
        };
        let items = item_cols
            .values()
            .map(|&col| match field(col).parse::<u8>() {
                Ok(v) if (1..=5).contains(&v) => Ok(v),
                _ => Err(bad(format!("item value {:?} not in 1..=5", field(col)))),
            })
            .collect::<Result<Vec<u8>>>()?;
        responses.push(UesResponse {
            response_id: field(id_col).to_string(),
            variant,
            selected,
            items,
        });
    }
    Ok(responses)
}

pub fn read_response_log(path: &Path) -> Result<Vec<UesResponse>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_response_log(&text, &path.display().to_string())
}

/// Render responses in the log format parsed by [`parse_response_log`].
pub fn write_response_log(responses: &[UesResponse]) -> String {
    let k = responses.iter().map(|r| r.items.len()).max().unwrap_or(0);
    let mut out = String::from("response_id,variant,selected");
    for i in 1..=k {
        let _ = write!(out, ",item_{i}");
    }
    out.push('\n');
    for r in responses {
        let _ = write!(out, "{},{},{}", r.response_id, r.variant, u8::from(r.selected));
        for v in &r.items {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupPair {
    pub original: GroupSummary,
    pub treatment: GroupSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionAnalysis {
    pub groups: GroupPair,
    pub levene: LeveneResult,
    pub equal_variances_assumed: TTestResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationAnalysis {
    pub groups: GroupPair,
    pub levene: LeveneResult,
    pub equal_variances_assumed: TTestResult,
    pub equal_variances_not_assumed: TTestResult,
}

/// Differences are always original minus treatment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub selection: SelectionAnalysis,
    pub evaluation: EvaluationAnalysis,
}

pub fn analyze_experiment(responses: &[UesResponse], reverse_items: &BTreeSet<usize>) -> Result<ExperimentReport> {
    if responses.is_empty() {
        return Err(Error::TooFewObservations { needed: 2, got: 0 });
    }
    let mut selection: BTreeMap<Variant, Vec<f64>> = BTreeMap::new();
    let mut evaluation: BTreeMap<Variant, Vec<f64>> = BTreeMap::new();
    for r in responses {
        selection
            .entry(r.variant)
            .or_default()
            .push(if r.selected { 1.0 } else { 0.0 });
        evaluation.entry(r.variant).or_default().push(ues_score(r, reverse_items)?);
    }
    let group = |map: &BTreeMap<Variant, Vec<f64>>, v: Variant| -> Result<Vec<f64>> {
        map.get(&v).cloned().ok_or(Error::MissingVariant(v.as_str()))
    };
    let sel_o = group(&selection, Variant::Original)?;
    let sel_t = group(&selection, Variant::Treatment)?;
    let ues_o = group(&evaluation, Variant::Original)?;
    let ues_t = group(&evaluation, Variant::Treatment)?;

    let sel_groups = GroupPair {
        original: summarize(&sel_o)?,
        treatment: summarize(&sel_t)?,
    };
    let ues_groups = GroupPair {
        original: summarize(&ues_o)?,
        treatment: summarize(&ues_t)?,
    };
    Ok(ExperimentReport {
        selection: SelectionAnalysis {
            groups: sel_groups,
            levene: levene_test(&sel_o, &sel_t)?,
            equal_variances_assumed: pooled_t_test(&sel_groups.original, &sel_groups.treatment)?,
        },
        evaluation: EvaluationAnalysis {
            groups: ues_groups,
            levene: levene_test(&ues_o, &ues_t)?,
            equal_variances_assumed: pooled_t_test(&ues_groups.original, &ues_groups.treatment)?,
            equal_variances_not_assumed: welch_t_test(&ues_groups.original, &ues_groups.treatment)?,
        },
    })
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text tables in the usual statistics-package layout.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let groups = |out: &mut String, title: &str, g: &GroupPair| {
            let _ = writeln!(out, "{title}");
            let _ = writeln!(out, "{:<12}{:>6}{:>10}{:>12}{:>12}", "variant", "n", "mean", "sd", "se_mean");
            for (name, s) in [("original", g.original), ("treatment", g.treatment)] {
                let _ = writeln!(out, "{name:<12}{:>6}{:>10.4}{:>12.5}{:>12.5}", s.n, s.mean, s.sd, s.se_mean);
            }
            out.push('\n');
        };
        let test_header = |out: &mut String, title: &str| {
            let _ = writeln!(out, "{title}");
            let _ = writeln!(
                out,
                "{:<28}{:>9}{:>8}{:>9}{:>10}{:>14}{:>12}{:>11}{:>11}",
                "", "F", "sig", "t", "df", "sig_2_tailed", "mean_diff", "ci95_low", "ci95_up"
            );
        };
        let test_row = |out: &mut String, label: &str, lev: Option<&LeveneResult>, t: &TTestResult| {
            let (f, sig) = match lev {
                Some(l) => (format!("{:.3}", l.f), format!("{:.3}", l.p)),
                None => (String::new(), String::new()),
            };
            let _ = writeln!(
                out,
                "{label:<28}{f:>9}{sig:>8}{:>9.3}{:>10.3}{:>14.3e}{:>12.5}{:>11.5}{:>11.5}",
                t.t, t.df, t.p_two_tailed, t.mean_diff, t.ci95_lower, t.ci95_upper
            );
            let _ = writeln!(out, "{:<28}std_error_difference = {:.5}", "", t.se_diff);
        };

        groups(&mut out, "Selection statistics", &self.selection.groups);
        test_header(&mut out, "Selection t-test");
        test_row(
            &mut out,
            "equal variances assumed",
            Some(&self.selection.levene),
            &self.selection.equal_variances_assumed,
        );
        out.push('\n');
        groups(&mut out, "Evaluation statistics", &self.evaluation.groups);
        test_header(&mut out, "Evaluation t-test");
        test_row(
            &mut out,
            "equal variances assumed",
            Some(&self.evaluation.levene),
            &self.evaluation.equal_variances_assumed,
        );
        test_row(
            &mut out,
            "equal variances not assumed",
            None,
            &self.evaluation.equal_variances_not_assumed,
        );
        out
    }
}
