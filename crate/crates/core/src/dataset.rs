//! Labeled datasets and the UCR archive's label-first delimited text format.
//!
//! Each nonempty line is `label<delim>v1<delim>v2...`. Labels are kept as
//! exact tokens. Values are written with Rust's shortest round-trip float
//! formatting, so `read(write(d)) == d` holds bit for bit.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::series::{Label, TimeSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub label: Label,
    pub series: TimeSeries,
}

impl Instance {
    pub fn new(label: impl Into<Label>, series: TimeSeries) -> Self {
        Self {
            label: label.into(),
            series,
        }
    }
}

/// A nonempty, ordered collection of labeled series.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    name: Option<String>,
    instances: Vec<Instance>,
    class_order: Vec<Label>,
}

impl LabeledDataset {
    /// Builds a dataset; classes are ordered by first appearance.
    pub fn new(instances: Vec<Instance>) -> Result<Self> {
        if instances.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut class_order: Vec<Label> = Vec::new();
        for inst in &instances {
            if !class_order.contains(&inst.label) {
                class_order.push(inst.label.clone());
            }
        }
        Ok(Self {
            name: None,
            instances,
            class_order,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn into_instances(self) -> Vec<Instance> {
        self.instances
    }

    pub fn class_order(&self) -> &[Label] {
        &self.class_order
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.class_order.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.instances.iter().map(|i| &i.label)
    }

    /// Position of `label` in the class order.
    pub fn class_index(&self, label: &Label) -> Option<usize> {
        self.class_order.iter().position(|l| l == label)
    }

    /// Indices of the instances carrying `label`, in dataset order.
    pub fn members_of(&self, label: &Label) -> Vec<usize> {
        self.instances
            .iter()
            .enumerate()
            .filter(|(_, inst)| &inst.label == label)
            .map(|(i, _)| i)
            .collect()
    }

    /// Per-class instance counts, in class order.
    pub fn class_counts(&self) -> Vec<(Label, usize)> {
        self.class_order
            .iter()
            .map(|l| {
                (
                    l.clone(),
                    self.instances.iter().filter(|i| &i.label == l).count(),
                )
            })
            .collect()
    }
}

/// Picks tab if the first nonempty line contains one, comma otherwise.
pub fn detect_delimiter(text: &str) -> char {
    text.lines()
        .find(|l| !l.trim().is_empty())
        .map(|l| if l.contains('\t') { '\t' } else { ',' })
        .unwrap_or(',')
}

/// Parses a dataset. `delimiter = None` auto-detects tab vs. comma from the
/// first nonempty line. Blank lines are skipped; CRLF is accepted.
pub fn read_dataset<R: BufRead>(mut source: R, delimiter: Option<char>) -> Result<LabeledDataset> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    parse_dataset(&text, delimiter)
}

pub fn parse_dataset(text: &str, delimiter: Option<char>) -> Result<LabeledDataset> {
    let delim = delimiter.unwrap_or_else(|| detect_delimiter(text));
    let mut instances = Vec::new();

    for (lineno, raw) in text.split('\n').enumerate() {
        let line = lineno + 1;
        let content = raw.strip_suffix('\r').unwrap_or(raw);
        if content.trim().is_empty() {
            continue;
        }
        let mut fields = content.split(delim);
        let label = fields.next().unwrap_or_default().trim();
        if label.is_empty() {
            return Err(Error::Parse {
                line,
                column: 1,
                message: "empty label".into(),
            });
        }

        let mut values = Vec::new();
        for (k, field) in fields.enumerate() {
            let column = k + 2;
            let token = field.trim();
            let value: f64 = token.parse().map_err(|_| Error::Parse {
                line,
                column,
                message: if token.is_empty() {
                    "missing value".into()
                } else {
                    format!("`{token}` is not a number")
                },
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("non-finite value `{token}`"),
                });
            }
            values.push(value);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                line,
                column: 2,
                message: "expected at least one value after the label".into(),
            });
        }
        instances.push(Instance::new(label, TimeSeries::from_trusted(values)));
    }

    if instances.is_empty() {
        return Err(Error::EmptyDataset);
    }
    LabeledDataset::new(instances)
}

/// Writes one line per instance, LF-terminated.
pub fn write_dataset<W: Write>(
    dataset: &LabeledDataset,
    mut sink: W,
    delimiter: char,
) -> Result<()> {
    let mut buf = String::new();
    for inst in dataset.instances() {
        buf.clear();
        buf.push_str(inst.label.as_str());
        for v in inst.series.values() {
            buf.push(delimiter);
            buf.push_str(&v.to_string());
        }
        buf.push('\n');
        sink.write_all(buf.as_bytes())?;
    }
    sink.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comma() {
        let d = parse_dataset("1,0.5,0.7\n2,0.1,0.2\n", Some(',')).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.class_order(), &[Label::from("1"), Label::from("2")]);
        assert!(d.instances().iter().all(|i| i.series.len() == 2));
        assert_eq!(d.instances()[0].series.values(), &[0.5, 0.7]);
    }

    #[test]
    fn parses_tab() {
        let d = parse_dataset("1\t0.5\t0.7\n", Some('\t')).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.instances()[0].series.len(), 2);
    }

    #[test]
    fn auto_detects_and_accepts_crlf() {
        let d = parse_dataset("a\t1\t2\r\n\r\nb\t3\r\n", None).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.instances()[1].series.values(), &[3.0]);
        assert_eq!(detect_delimiter("\n\n1,2,3"), ',');
    }

    #[test]
    fn labels_are_exact_tokens() {
        let d = parse_dataset("1,0\n1.0,0\n01,0\n", None).unwrap();
        assert_eq!(d.num_classes(), 3);
    }

    #[test]
    fn errors_name_line_and_column() {
        assert_eq!(
            parse_dataset("1,abc\n", Some(',')).unwrap_err(),
            Error::Parse {
                line: 1,
                column: 2,
                message: "`abc` is not a number".into()
            }
        );
        assert!(matches!(
            parse_dataset("1,0\n\n2,0,NaN\n", None),
            Err(Error::Parse {
                line: 3,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_dataset("1,0,,2\n", None),
            Err(Error::Parse {
                line: 1,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_dataset("1\n", None),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dataset(",1\n", None),
            Err(Error::Parse { column: 1, .. })
        ));
        assert_eq!(parse_dataset("", None), Err(Error::EmptyDataset));
        assert_eq!(parse_dataset("\n \n", None), Err(Error::EmptyDataset));
    }

    #[test]
    fn empty_dataset_rejected() {
        assert_eq!(LabeledDataset::new(vec![]), Err(Error::EmptyDataset));
    }

    #[test]
    fn write_is_byte_stable() {
        let d = parse_dataset("1,0.5\n", None).unwrap();
        let mut first = Vec::new();
        let mut second = Vec::new();
        write_dataset(&d, &mut first, ',').unwrap();
        write_dataset(&d, &mut second, ',').unwrap();
        assert_eq!(first, b"1,0.5\n");
        assert_eq!(first, second);
    }

    #[test]
    fn class_bookkeeping() {
        let d = parse_dataset("b,1\na,2\nb,3\n", None).unwrap();
        assert_eq!(d.members_of(&"b".into()), vec![0, 2]);
        assert_eq!(d.class_counts(), vec![("b".into(), 2), ("a".into(), 1)]);
        assert_eq!(d.class_index(&"a".into()), Some(1));
    }
}
