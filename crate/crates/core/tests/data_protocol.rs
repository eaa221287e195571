use std::io::Write;
use std::path::PathBuf;

use plknn::data::{
    load_dataset, stratified_splits, CategoricalPolicy, ColumnRef, DatasetSpec, ImputePolicy,
    SplitPlan,
};
use plknn::{fit_plknn, Classifier, Dataset, Error, PlknnModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn wine() -> Dataset {
    load_dataset(&DatasetSpec::new(
        "WN",
        data_file("wine.data"),
        ColumnRef::Index(0),
    ))
    .unwrap()
}

fn bco(impute: ImputePolicy) -> Dataset {
    let mut spec = DatasetSpec::new(
        "BCO",
        data_file("breast-cancer-wisconsin.data"),
        ColumnRef::Index(10),
    );
    spec.ignore_columns = vec![ColumnRef::Index(0)];
    spec.impute = impute;
    load_dataset(&spec).unwrap()
}

fn temp_csv(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn wine_shape() {
    let ds = wine();
    assert_eq!((ds.len(), ds.dim(), ds.class_count()), (178, 13, 3));
    assert_eq!(ds.class_counts(), vec![59, 71, 48]);
    assert_eq!(ds.class_names(), &["1", "2", "3"]);
}

#[test]
fn breast_cancer_missing_values() {
    let dropped = bco(ImputePolicy::DropRows);
    assert_eq!(
        (dropped.len(), dropped.dim(), dropped.class_count()),
        (683, 9, 2)
    );
    let imputed = bco(ImputePolicy::Median);
    assert_eq!(imputed.len(), 699);
    assert!(imputed.features().iter().all(|v| v.is_finite()));
}

#[test]
fn other_bundled_files_load() {
    let mut wdbc = DatasetSpec::new("WDBC", data_file("wdbc.csv"), ColumnRef::Index(30));
    wdbc.positive_class = Some("M".into());
    let ds = load_dataset(&wdbc).unwrap();
    assert_eq!((ds.len(), ds.dim()), (569, 30));
    assert_eq!(wdbc.positive_index(&ds).unwrap(), ds.minority_class());

    let mm = load_dataset(&DatasetSpec::new(
        "MM",
        data_file("mammographic.csv"),
        ColumnRef::Index(5),
    ))
    .unwrap();
    assert_eq!((mm.len(), mm.dim(), mm.class_count()), (830, 5, 2));

    let spectf = load_dataset(&DatasetSpec::new(
        "SP",
        data_file("SPECTF.csv"),
        ColumnRef::Index(0),
    ))
    .unwrap();
    assert_eq!(
        (spectf.len(), spectf.dim(), spectf.class_count()),
        (267, 44, 2)
    );
}

#[test]
fn two_row_file_with_missing_marker() {
    let f = temp_csv("1.0,?,a\n3.0,4.0,b\n");
    let ds = load_dataset(&DatasetSpec::new("tiny", f.path(), ColumnRef::Index(2))).unwrap();
    assert_eq!(ds.len(), 2);
    assert_eq!(ds.row(0), &[1.0, 4.0]);

    let mut drop = DatasetSpec::new("tiny", f.path(), ColumnRef::Index(2));
    drop.impute = ImputePolicy::DropRows;
    // dropping the only row of class `a` leaves a single class
    assert!(load_dataset(&drop).is_err());
}

#[test]
fn header_names_and_categoricals() {
    let f = temp_csv("sex,age,class\nm,30,x\nf,41,y\nm,?,x\n");
    let mut spec = DatasetSpec::new("h", f.path(), ColumnRef::Name("class".into()));
    spec.has_header = true;
    let ds = load_dataset(&spec).unwrap();
    assert_eq!(ds.feature_names(), &["sex", "age"]);
    assert_eq!(
        ds.rows().map(|r| r[0]).collect::<Vec<_>>(),
        vec![0.0, 1.0, 0.0]
    );
    assert_eq!(ds.row(2)[1], 35.5);

    spec.categorical = CategoricalPolicy::Error;
    match load_dataset(&spec) {
        Err(Error::Ingest { row, column, .. }) => assert_eq!((row, column.as_str()), (2, "sex")),
        other => panic!("expected ingest error, got {other:?}"),
    }
}

#[test]
fn ingestion_errors_carry_context() {
    let ragged = temp_csv("1,2,a\n1,b\n");
    match load_dataset(&DatasetSpec::new("r", ragged.path(), ColumnRef::Index(2))) {
        Err(Error::Ingest { row, .. }) => assert_eq!(row, 2),
        other => panic!("expected ragged-row error, got {other:?}"),
    }
    let ok = temp_csv("1,2,a\n3,4,b\n");
    assert!(matches!(
        load_dataset(&DatasetSpec::new("u", ok.path(), ColumnRef::Index(7))),
        Err(Error::Ingest { .. })
    ));
    let all_missing = temp_csv("1,?,a\n3,?,b\n");
    match load_dataset(&DatasetSpec::new(
        "m",
        all_missing.path(),
        ColumnRef::Index(2),
    )) {
        Err(Error::Ingest { column, .. }) => assert_eq!(column, "#1"),
        other => panic!("expected all-missing error, got {other:?}"),
    }
    assert!(matches!(
        load_dataset(&DatasetSpec::new(
            "x",
            "/nonexistent/file.csv",
            ColumnRef::Index(0)
        )),
        Err(Error::Io { .. })
    ));
}

#[test]
fn splits_stay_within_one_sample_of_class_proportions() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let fractions = [0.7, 0.15, 0.15];
    for _ in 0..200 {
        let classes = rng.gen_range(2..6);
        let sizes: Vec<usize> = (0..classes).map(|_| rng.gen_range(3..80)).collect();
        let labels: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| vec![c; n])
            .collect();
        let m = labels.len();
        let ds = Dataset::new(
            "strat",
            (0..m).map(|i| vec![i as f64]).collect(),
            labels,
            (0..classes).map(|c| c.to_string()).collect(),
        )
        .unwrap();
        let plan = SplitPlan {
            n_folds: 3,
            seed: rng.gen(),
            ..SplitPlan::default()
        };
        for split in stratified_splits(&ds, &plan).unwrap() {
            let mut all: Vec<usize> = split.parts().concat();
            all.sort_unstable();
            assert_eq!(all, (0..m).collect::<Vec<_>>());
            for (p, part) in split.parts().iter().enumerate() {
                assert!(part.windows(2).all(|w| w[0] < w[1]));
                for (c, &size) in sizes.iter().enumerate() {
                    let got = part.iter().filter(|&&i| ds.label(i) == c).count() as f64;
                    assert!((got - fractions[p] * size as f64).abs() < 1.0 + 1e-9);
                }
            }
        }
    }
}

#[test]
fn folds_differ_but_repeat() {
    let ds = Dataset::new(
        "hundred",
        (0..100).map(|i| vec![i as f64]).collect(),
        (0..100).map(|i| i % 2).collect(),
        vec!["a".into(), "b".into()],
    )
    .unwrap();
    let plan = SplitPlan {
        n_folds: 20,
        seed: 7,
        ..SplitPlan::default()
    };
    let a = stratified_splits(&ds, &plan).unwrap();
    assert_eq!(a, stratified_splits(&ds, &plan).unwrap());
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            assert_ne!(a[i], a[j]);
        }
    }
}

#[test]
fn load_split_recombine_is_bit_exact() {
    let ds = wine();
    for split in stratified_splits(&ds, &SplitPlan::default()).unwrap() {
        let (tr, va, te) = split.materialize(&ds);
        for (part, idx) in [&tr, &va, &te].into_iter().zip(split.parts()) {
            for (k, &i) in idx.iter().enumerate() {
                let a: Vec<u64> = part.row(k).iter().map(|v| v.to_bits()).collect();
                let b: Vec<u64> = ds.row(i).iter().map(|v| v.to_bits()).collect();
                assert_eq!(a, b);
                assert_eq!(part.label(k), ds.label(i));
            }
        }
    }
}

#[test]
fn fitted_model_round_trips_through_json() {
    let model = fit_plknn(&wine()).unwrap();
    let text = serde_json::to_string(&model).unwrap();
    let back: PlknnModel = serde_json::from_str(&text).unwrap();
    assert_eq!(back, model);
    let q = wine().row(10).to_vec();
    assert_eq!(back.predict(&q).unwrap(), model.predict(&q).unwrap());
}
