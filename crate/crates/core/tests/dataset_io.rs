use dbaug_core::dataset::{parse_dataset, write_dataset};
use dbaug_core::{read_dataset, Instance, LabeledDataset, TimeSeries};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6f64..1e6,
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        Just(0.0),
        Just(-0.0),
    ]
}

fn dataset() -> impl Strategy<Value = LabeledDataset> {
    let label = "[A-Za-z0-9_.+-]{1,6}";
    prop::collection::vec((label, prop::collection::vec(finite(), 1..20)), 1..12).prop_map(|rows| {
        LabeledDataset::new(
            rows.into_iter()
                .map(|(l, v)| Instance::new(l, TimeSeries::new(v).unwrap()))
                .collect(),
        )
        .unwrap()
    })
}

fn bits(d: &LabeledDataset) -> Vec<(String, Vec<u64>)> {
    d.instances()
        .iter()
        .map(|i| {
            (
                i.label.to_string(),
                i.series.values().iter().map(|v| v.to_bits()).collect(),
            )
        })
        .collect()
}

proptest! {
    #[test]
    fn write_then_read_is_identity(d in dataset(), tab in any::<bool>()) {
        let delim = if tab { '\t' } else { ',' };
        let mut buf = Vec::new();
        write_dataset(&d, &mut buf, delim).unwrap();
        let back = read_dataset(buf.as_slice(), None).unwrap();
        prop_assert_eq!(bits(&back), bits(&d));
        prop_assert_eq!(back.class_order(), d.class_order());

        let mut again = Vec::new();
        write_dataset(&back, &mut again, delim).unwrap();
        prop_assert_eq!(buf, again);
    }

    #[test]
    fn parser_is_total(text in "[0-9a-z,.\t\n\r -]{0,80}") {
        // Either a dataset or a positioned diagnostic; never a panic.
        match parse_dataset(&text, None) {
            Ok(d) => prop_assert!(!d.is_empty()),
            Err(e) => prop_assert!(!e.to_string().is_empty()),
        }
    }
}

#[test]
fn write_failure_is_reported() {
    struct Broken;
    impl std::io::Write for Broken {
        fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
            Err(std::io::Error::other("disk full"))
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }
    let d = parse_dataset("1,0.5\n", None).unwrap();
    assert!(matches!(
        write_dataset(&d, Broken, ','),
        Err(dbaug_core::Error::Io(_))
    ));
}
