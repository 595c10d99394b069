use dbaug_core::{average_posteriors, Label, ProbabilityMatrix};
use proptest::prelude::*;

fn matrix(classes: usize) -> impl Strategy<Value = ProbabilityMatrix> {
    prop::collection::vec(prop::collection::vec(0.001f64..1.0, classes), 0..20).prop_map(
        move |raw| {
            let rows = raw
                .into_iter()
                .map(|r| {
                    let s: f64 = r.iter().sum();
                    r.into_iter().map(|v| v / s).collect()
                })
                .collect();
            let order = (0..classes).map(|c| Label::new(format!("c{c}"))).collect();
            ProbabilityMatrix::new(order, rows).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn self_average_keeps_argmax(m in (2usize..6).prop_flat_map(matrix)) {
        let (avg, labels) = average_posteriors(&m, &m).unwrap();
        prop_assert_eq!(labels, m.argmax_labels());
        prop_assert_eq!(avg, m);
    }

    #[test]
    fn averaged_rows_stay_normalized(pair in (2usize..6).prop_flat_map(|c| (matrix(c), matrix(c)))) {
        let (a, b) = pair;
        let n = a.num_rows().min(b.num_rows());
        let trim = |m: &ProbabilityMatrix| {
            ProbabilityMatrix::new(m.class_order().to_vec(), m.rows()[..n].to_vec()).unwrap()
        };
        let (avg, _) = average_posteriors(&trim(&a), &trim(&b)).unwrap();
        for row in avg.rows() {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        }
        prop_assert!(ProbabilityMatrix::new(avg.class_order().to_vec(), avg.rows().to_vec()).is_ok());
    }
}
