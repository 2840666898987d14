use toric_ko_web::{analyze_text, base_svg, e2_svg, examples_json, polygon_text};

#[test]
fn examples_list_every_bundled_input() {
    let v: serde_json::Value = serde_json::from_str(&examples_json()).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"cube"));
    assert_eq!(names.len(), toric_ko::library::BUNDLED.len());
}

#[test]
fn analyze_cube() {
    let text = toric_ko::library::bundled("cube").unwrap().text;
    let v: serde_json::Value = serde_json::from_str(&analyze_text(text).unwrap()).unwrap();
    assert_eq!(v["results"]["h_vector"], serde_json::json!([1, 3, 3, 1]));
    assert!(e2_svg(text).unwrap().contains("<circle"));
}

#[test]
fn errors_are_messages() {
    let err = analyze_text("n = 2\nbogus\n").unwrap_err();
    assert!(err.contains("line 2"), "{err}");
    assert!(base_svg("ko", 4, 4).is_err());
}

#[test]
fn generated_polygon_analyzes() {
    let text = polygon_text(9, 3).unwrap();
    let v: serde_json::Value = serde_json::from_str(&analyze_text(&text).unwrap()).unwrap();
    assert_eq!(v["results"]["real_dimension"], 4);
    assert!(base_svg("m", 12, 6).unwrap().starts_with("<svg"));
}
