use std::path::PathBuf;

use equilef_cli::{run, EXIT_INVALID, EXIT_OK};

fn info_s3() -> i32 {
    let g = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/s3.group");
    run(["equilef", "info", g.to_str().unwrap()]).code
}

#[test]
fn group_cap_is_read_from_the_environment() {
    std::env::set_var("EQUILEF_GROUP_CAP", "4");
    let capped = info_s3();
    std::env::set_var("EQUILEF_GROUP_CAP", "64");
    let normal = info_s3();
    std::env::remove_var("EQUILEF_GROUP_CAP");
    assert_eq!(capped, EXIT_INVALID);
    assert_eq!(normal, EXIT_OK);
}
