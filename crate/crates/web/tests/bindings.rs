use frechet_web::{closed_distance, free_space, generate};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

fn flat(v: &Value) -> Vec<f64> {
    v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn page_flow() {
    let a = flat(&parse(generate("noisy-polygon", 24, 1)));
    let b = flat(&parse(generate("noisy-polygon", 18, 2)));
    let r = parse(closed_distance(&a, &b, "logstar", "euclidean"));
    let d = r["distance"].as_f64().unwrap();
    let sort = parse(closed_distance(&a, &b, "sort", "euclidean"));
    assert_eq!(sort["distance"].as_f64().unwrap(), d);

    // At the distance the threshold diagram keeps a cycle; the mask agrees
    // with the live count.
    let fs = parse(free_space(&a, &b, "euclidean", d));
    let live = fs["mask"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x.as_bool().unwrap())
        .count();
    assert_eq!(fs["live"].as_u64().unwrap() as usize, live);
    assert!(live > 0);
    for cell in fs["path"].as_array().unwrap() {
        let (i, j) = (
            cell[0].as_u64().unwrap() as usize,
            cell[1].as_u64().unwrap() as usize,
        );
        assert!(fs["mask"][(i - 1) * 18 + (j - 1)].as_bool().unwrap());
    }

    let below = parse(free_space(&a, &b, "euclidean", d * (1.0 - 1e-12)));
    assert_eq!(below["live"], 0);
}
