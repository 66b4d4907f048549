#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use sticky_words::corpus::{
    build_context_model, build_pop_model, read_pop_entries, read_titles, Fingerprint, FrequencyModel,
};
use sticky_words::{Resources, SentimentLexicon, Stopwords, Thesaurus, Title};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_model() -> FrequencyModel {
    let titles = read_titles(&fixture("context_titles.txt")).unwrap();
    let entries = read_pop_entries(&fixture("pop_keywords.tsv")).unwrap();
    FrequencyModel {
        context: build_context_model(&titles).unwrap(),
        popularity: build_pop_model(&entries).unwrap(),
        fingerprint: Fingerprint::new(&Stopwords::english(), 3),
    }
}

/// Models, lexicon and thesaurus built from the shipped fixture files.
pub fn fixture_resources() -> Resources {
    Resources::builder()
        .model(fixture_model())
        .lexicon(SentimentLexicon::load(&fixture("lexicon.tsv")).unwrap())
        .thesaurus(Thesaurus::load(&fixture("thesaurus.tsv")).unwrap())
        .build()
        .unwrap()
}

pub fn golden_titles() -> Vec<Title> {
    read_titles(&fixture("golden_titles.txt")).unwrap()
}

/// (original, treatment) rows of the expected dataset.
pub fn golden_expected() -> Vec<(String, String)> {
    std::fs::read_to_string(fixture("golden_expected.tsv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect()
}

fn letters(mut n: usize) -> String {
    let mut s = String::new();
    for _ in 0..3 {
        s.push((b'a' + (n % 26) as u8) as char);
        n /= 26;
    }
    s
}

/// Resources where every word `base<xyz>` has exactly one sticky synonym
/// `star<xyz>`, plus a batch of titles covering `words` such words.
pub fn synthetic_resources(words: usize) -> (Resources, Vec<Title>) {
    let originals: Vec<String> = (0..words).map(|i| format!("base{}", letters(i))).collect();
    let replacements: Vec<String> = (0..words).map(|i| format!("star{}", letters(i))).collect();

    let mut context: Vec<Title> = (0..20).map(|i| Title::new(format!("c{i}"), "plain context words")).collect();
    context.push(Title::new("c-last", originals.join(" ")));
    let entries: Vec<(String, Option<u64>)> = replacements
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), Some(100 + i as u64)))
        .collect();
    let model = FrequencyModel {
        context: build_context_model(&context).unwrap(),
        popularity: build_pop_model(&entries).unwrap(),
        fingerprint: Fingerprint::new(&Stopwords::english(), 3),
    };
    let mut lexicon = SentimentLexicon::new();
    let mut thesaurus = Thesaurus::new();
    for (o, r) in originals.iter().zip(&replacements) {
        lexicon.insert(r, 0.5).unwrap();
        thesaurus.insert(o, r);
    }
    let resources = Resources::builder()
        .model(model)
        .lexicon(lexicon)
        .thesaurus(thesaurus)
        .build()
        .unwrap();
    let titles = originals
        .chunks(5)
        .enumerate()
        .map(|(i, chunk)| Title::new(format!("t{i}"), chunk.join(" ")))
        .collect();
    (resources, titles)
}

/// Brute-force document frequency: scan every document for the word.
pub fn brute_force_df(docs: &[String]) -> BTreeMap<String, u64> {
    let vocabulary: BTreeSet<&str> = docs.iter().flat_map(|d| d.split(' ')).collect();
    vocabulary
        .into_iter()
        .map(|w| {
            let n = docs.iter().filter(|d| d.split(' ').any(|x| x == w)).count() as u64;
            (w.to_string(), n)
        })
        .collect()
}

/// Brute-force popularity counts: credit each keyword's count to every
/// distinct word it contains.
pub fn brute_force_counts(entries: &[(String, u64)]) -> BTreeMap<String, u64> {
    let vocabulary: BTreeSet<&str> = entries.iter().flat_map(|(k, _)| k.split(' ')).collect();
    vocabulary
        .into_iter()
        .map(|w| {
            let n = entries
                .iter()
                .filter(|(k, _)| k.split(' ').any(|x| x == w))
                .map(|(_, c)| c)
                .sum();
            (w.to_string(), n)
        })
        .collect()
}

/// Textbook two-sample formulas evaluated directly on raw data, with
/// t quantiles from an independent distribution library.
pub mod textbook {
    use statrs::distribution::{ContinuousCDF, StudentsT};

    pub struct Raw {
        pub t: f64,
        pub df: f64,
        pub p: f64,
        pub mean_diff: f64,
        pub se: f64,
        pub ci: (f64, f64),
    }

    fn mean(x: &[f64]) -> f64 {
        let mut s = 0.0;
        for v in x {
            s += v;
        }
        s / x.len() as f64
    }

    fn var(x: &[f64]) -> f64 {
        let m = mean(x);
        let mut s = 0.0;
        for v in x {
            s += (v - m) * (v - m);
        }
        s / (x.len() as f64 - 1.0)
    }

    /// Quantile by Newton iterations on the reference CDF.
    pub fn t_crit(df: f64) -> f64 {
        let dist = StudentsT::new(0.0, 1.0, df).unwrap();
        let mut x = dist.inverse_cdf(0.975);
        for _ in 0..20 {
            use statrs::distribution::Continuous;
            let step = (dist.cdf(x) - 0.975) / dist.pdf(x);
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        x
    }

    fn finish(mean_diff: f64, se: f64, df: f64) -> Raw {
        let t = mean_diff / se;
        let dist = StudentsT::new(0.0, 1.0, df).unwrap();
        let p = 2.0 * dist.cdf(-t.abs());
        let half = t_crit(df) * se;
        Raw {
            t,
            df,
            p,
            mean_diff,
            se,
            ci: (mean_diff - half, mean_diff + half),
        }
    }

    pub fn pooled(a: &[f64], b: &[f64]) -> Raw {
        let (n1, n2) = (a.len() as f64, b.len() as f64);
        let sp2 = ((n1 - 1.0) * var(a) + (n2 - 1.0) * var(b)) / (n1 + n2 - 2.0);
        finish(mean(a) - mean(b), (sp2 * (1.0 / n1 + 1.0 / n2)).sqrt(), n1 + n2 - 2.0)
    }

    pub fn welch(a: &[f64], b: &[f64]) -> Raw {
        let (n1, n2) = (a.len() as f64, b.len() as f64);
        let (q1, q2) = (var(a) / n1, var(b) / n2);
        let df = (q1 + q2).powi(2) / (q1 * q1 / (n1 - 1.0) + q2 * q2 / (n2 - 1.0));
        finish(mean(a) - mean(b), (q1 + q2).sqrt(), df)
    }

    /// One-way ANOVA F on absolute deviations from group means.
    pub fn levene_f(a: &[f64], b: &[f64]) -> f64 {
        let za: Vec<f64> = a.iter().map(|x| (x - mean(a)).abs()).collect();
        let zb: Vec<f64> = b.iter().map(|x| (x - mean(b)).abs()).collect();
        let all: Vec<f64> = za.iter().chain(&zb).copied().collect();
        let grand = mean(&all);
        let n = all.len() as f64;
        let ssb = za.len() as f64 * (mean(&za) - grand).powi(2) + zb.len() as f64 * (mean(&zb) - grand).powi(2);
        let ssw: f64 = za.iter().map(|z| (z - mean(&za)).powi(2)).sum::<f64>()
            + zb.iter().map(|z| (z - mean(&zb)).powi(2)).sum::<f64>();
        (ssb / 1.0) / (ssw / (n - 2.0))
    }
}
