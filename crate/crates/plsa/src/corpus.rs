//! Sparse bag-of-words corpora and the UCI docword/vocab file format.
//!
//! A corpus is a sparse document-term count matrix: entries `(d, w, n(d,w))`
//! with per-document token totals. Documents and terms are dense 0-based ids.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use thiserror::Error;

/// Errors raised while building or parsing a corpus.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: malformed header, expected a positive integer, got {got:?}")]
    MalformedHeader { line: usize, got: String },
    #[error("line {line}: expected \"doc term count\", got {got:?}")]
    MalformedEntry { line: usize, got: String },
    #[error("line {line}: count must be a positive integer, got {got:?}")]
    InvalidCount { line: usize, got: String },
    #[error("line {line}: {what} id {value} out of range [1, {max}]")]
    IdOutOfRange {
        line: usize,
        what: &'static str,
        value: u64,
        max: usize,
    },
    #[error("docword lists {got} entries but header declares nnz = {declared}")]
    NnzMismatch { declared: usize, got: usize },
    #[error("vocabulary has {got} terms but docword header declares {declared}")]
    VocabSizeMismatch { declared: usize, got: usize },
    #[error("vocabulary line {line}: empty term")]
    EmptyTerm { line: usize },
    #[error("vocabulary line {line}: duplicate term {term:?}")]
    DuplicateTerm { line: usize, term: String },
    #[error("document {doc} (1-based) has no tokens")]
    EmptyDocument { doc: usize },
    #[error("duplicate entry for document {doc}, term {term}")]
    DuplicateEntry { doc: usize, term: usize },
    #[error("entry (doc {doc}, term {term}) outside corpus dimensions {docs}x{terms}")]
    EntryOutOfBounds {
        doc: usize,
        term: usize,
        docs: usize,
        terms: usize,
    },
    #[error("corpus must have at least one document and one term")]
    EmptyCorpus,
    #[error("{labels} document labels for {docs} documents")]
    LabelCountMismatch { labels: usize, docs: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Ordered set of distinct terms; index of a term is its 0-based id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn new(terms: Vec<String>) -> Result<Self, CorpusError> {
        if terms.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        let mut index = HashMap::with_capacity(terms.len());
        for (i, term) in terms.iter().enumerate() {
            if term.is_empty() {
                return Err(CorpusError::EmptyTerm { line: i + 1 });
            }
            if index.insert(term.clone(), i).is_some() {
                return Err(CorpusError::DuplicateTerm {
                    line: i + 1,
                    term: term.clone(),
                });
            }
        }
        Ok(Self { terms, index })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, id: usize) -> &str {
        &self.terms[id]
    }

    pub fn id(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }
}

/// One nonzero cell of the document-term count matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub doc: usize,
    pub term: usize,
    pub count: u64,
}

/// Immutable sparse document-term count matrix.
///
/// Entries are sorted by `(doc, term)`, each pair appears once, every count
/// is at least 1, and every document has at least one token.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    n_docs: usize,
    n_terms: usize,
    entries: Vec<CorpusEntry>,
    doc_totals: Vec<u64>,
    doc_labels: Option<Vec<String>>,
}

impl Corpus {
    /// Builds a corpus from unaggregated entries, validating all invariants.
    pub fn new(
        n_docs: usize,
        n_terms: usize,
        mut entries: Vec<CorpusEntry>,
        doc_labels: Option<Vec<String>>,
    ) -> Result<Self, CorpusError> {
        if n_docs == 0 || n_terms == 0 {
            return Err(CorpusError::EmptyCorpus);
        }
        if let Some(labels) = &doc_labels {
            if labels.len() != n_docs {
                return Err(CorpusError::LabelCountMismatch {
                    labels: labels.len(),
                    docs: n_docs,
                });
            }
        }
        entries.sort_unstable_by_key(|e| (e.doc, e.term));
        let mut doc_totals = vec![0u64; n_docs];
        for (i, e) in entries.iter().enumerate() {
            if e.doc >= n_docs || e.term >= n_terms {
                return Err(CorpusError::EntryOutOfBounds {
                    doc: e.doc,
                    term: e.term,
                    docs: n_docs,
                    terms: n_terms,
                });
            }
            if e.count == 0 {
                return Err(CorpusError::InvalidCount {
                    line: i + 1,
                    got: "0".into(),
                });
            }
            if i > 0 && entries[i - 1].doc == e.doc && entries[i - 1].term == e.term {
                return Err(CorpusError::DuplicateEntry {
                    doc: e.doc,
                    term: e.term,
                });
            }
            doc_totals[e.doc] += e.count;
        }
        for (d, &total) in doc_totals.iter().enumerate() {
            if total == 0 {
                return Err(CorpusError::EmptyDocument { doc: d + 1 });
            }
        }
        Ok(Self {
            n_docs,
            n_terms,
            entries,
            doc_totals,
            doc_labels,
        })
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    /// Entries sorted by `(doc, term)`.
    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    /// Token total of one document.
    pub fn doc_total(&self, doc: usize) -> u64 {
        self.doc_totals[doc]
    }

    pub fn doc_totals(&self) -> &[u64] {
        &self.doc_totals
    }

    pub fn doc_labels(&self) -> Option<&[String]> {
        self.doc_labels.as_deref()
    }

    /// Token count of the whole corpus.
    pub fn total_tokens(&self) -> u64 {
        self.doc_totals.iter().sum()
    }

    /// Returns a copy with every count multiplied by `factor`.
    pub fn scale_counts(&self, factor: u64) -> Result<Self, CorpusError> {
        let entries = self
            .entries
            .iter()
            .map(|e| CorpusEntry {
                doc: e.doc,
                term: e.term,
                count: e.count * factor,
            })
            .collect();
        Self::new(self.n_docs, self.n_terms, entries, self.doc_labels.clone())
    }
}

fn read_header_line(
    lines: &mut impl Iterator<Item = io::Result<String>>,
    line_no: &mut usize,
) -> Result<usize, CorpusError> {
    loop {
        *line_no += 1;
        let line = match lines.next() {
            Some(line) => line?,
            None => {
                return Err(CorpusError::MalformedHeader {
                    line: *line_no,
                    got: "<end of file>".into(),
                })
            }
        };
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        return text.parse::<usize>().map_err(|_| CorpusError::MalformedHeader {
            line: *line_no,
            got: text.to_string(),
        });
    }
}

/// Parses the UCI bag-of-words pair: a docword stream (three header lines
/// `D`, `W`, `NNZ`, then `NNZ` lines of 1-based `d w count`) and a vocabulary
/// stream with exactly `W` terms, one per line.
///
/// Repeated `(d, w)` lines are summed. Every declared document must end up
/// with at least one token.
pub fn parse_uci_bow(
    docword: impl BufRead,
    vocab: impl BufRead,
) -> Result<(Corpus, Vocabulary), CorpusError> {
    let mut lines = docword.lines();
    let mut line_no = 0usize;
    let n_docs = read_header_line(&mut lines, &mut line_no)?;
    let n_terms = read_header_line(&mut lines, &mut line_no)?;
    let nnz = read_header_line(&mut lines, &mut line_no)?;
    if n_docs == 0 || n_terms == 0 {
        return Err(CorpusError::EmptyCorpus);
    }

    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut seen = 0usize;
    for line in lines {
        line_no += 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        seen += 1;
        if seen > nnz {
            return Err(CorpusError::NnzMismatch {
                declared: nnz,
                got: seen,
            });
        }
        let mut fields = text.split_whitespace();
        let (Some(d_str), Some(w_str), Some(c_str), None) = (
            fields.next(),
            fields.next(),
            fields.next(),
            fields.next(),
        ) else {
            return Err(CorpusError::MalformedEntry {
                line: line_no,
                got: text.to_string(),
            });
        };
        let doc_1 = d_str.parse::<u64>().map_err(|_| CorpusError::MalformedEntry {
            line: line_no,
            got: text.to_string(),
        })?;
        let term_1 = w_str.parse::<u64>().map_err(|_| CorpusError::MalformedEntry {
            line: line_no,
            got: text.to_string(),
        })?;
        let count = c_str.parse::<u64>().map_err(|_| CorpusError::InvalidCount {
            line: line_no,
            got: c_str.to_string(),
        })?;
        if doc_1 < 1 || doc_1 > n_docs as u64 {
            return Err(CorpusError::IdOutOfRange {
                line: line_no,
                what: "document",
                value: doc_1,
                max: n_docs,
            });
        }
        if term_1 < 1 || term_1 > n_terms as u64 {
            return Err(CorpusError::IdOutOfRange {
                line: line_no,
                what: "term",
                value: term_1,
                max: n_terms,
            });
        }
        if count == 0 {
            return Err(CorpusError::InvalidCount {
                line: line_no,
                got: c_str.to_string(),
            });
        }
        *counts
            .entry((doc_1 as usize - 1, term_1 as usize - 1))
            .or_insert(0) += count;
    }
    if seen != nnz {
        return Err(CorpusError::NnzMismatch {
            declared: nnz,
            got: seen,
        });
    }

    let vocab_terms: Vec<String> = vocab
        .lines()
        .map(|l| l.map(|s| s.trim_end().to_string()))
        .collect::<io::Result<_>>()?;
    if vocab_terms.len() != n_terms {
        return Err(CorpusError::VocabSizeMismatch {
            declared: n_terms,
            got: vocab_terms.len(),
        });
    }
    let vocabulary = Vocabulary::new(vocab_terms)?;

    let entries = counts
        .into_iter()
        .map(|((doc, term), count)| CorpusEntry { doc, term, count })
        .collect();
    let corpus = Corpus::new(n_docs, n_terms, entries, None)?;
    Ok((corpus, vocabulary))
}

/// Writes a corpus in UCI docword format (1-based ids, sorted by doc then term).
pub fn write_uci_bow(corpus: &Corpus, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "{}", corpus.n_docs())?;
    writeln!(out, "{}", corpus.n_terms())?;
    writeln!(out, "{}", corpus.entries().len())?;
    for e in corpus.entries() {
        writeln!(out, "{} {} {}", e.doc + 1, e.term + 1, e.count)?;
    }
    Ok(())
}
