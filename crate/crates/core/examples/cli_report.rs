//! Drive the command line in-process and read back the JSON report.

fn main() {
    let dir = std::env::temp_dir().join("confsec-example");
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let poset = concat!(env!("CARGO_MANIFEST_DIR"), "/data/circle4.json");
    let code = confsec::cli::run(["confsec", "--json", report.to_str().unwrap(), "finite", "sec", "--poset", poset]);
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    println!("exit {code}, kind {}, sec {}", value["kind"], value["result"]["value"]);
}
