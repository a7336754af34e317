//! Compiles a small C program against the generated header and the static
//! library built next to this test binary.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "conesum.h"

int main(void) {
    const int64_t rays[] = {1, 0, 0, 1, -1, 0, 0, -1};
    const size_t offsets[] = {0, 2, 4, 6, 8};
    const size_t indices[] = {0, 1, 1, 2, 2, 3, 3, 0};
    ConesumFan *fan = NULL;
    if (conesum_fan_new(2, rays, 4, offsets, indices, 4, &fan) != CONESUM_STATUS_OK) return 1;
    int64_t c[3];
    size_t len = 0;
    if (conesum_chi_y(fan, c, 3, &len) != CONESUM_STATUS_OK) return 2;
    printf("%zu %lld %lld %lld\n", len, (long long)c[0], (long long)c[1], (long long)c[2]);
    conesum_fan_free(fan);

    ConesumCone *cone = NULL;
    if (conesum_cone_new(2, rays, 2, &cone) != CONESUM_STATUS_OK) return 3;
    char *s = NULL;
    if (conesum_interior_sum(cone, CONESUM_FORMAT_TEXT, &s) != CONESUM_STATUS_OK) return 4;
    printf("%s\n", s);
    conesum_string_free(s);
    conesum_cone_free(cone);

    if (conesum_cone_new(2, NULL, 1, &cone) != CONESUM_STATUS_NULL_POINTER) return 5;
    printf("%s\n", conesum_last_error());
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.join("libconesum_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("ffi_smoke.c");
    let exe = dir.join("ffi_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "3 1 -2 1");
    assert_eq!(lines[1], "(-1)^2 * 1/(S[(1,0)]*S[(0,1)]) * (1 + S[(1,0)] + S[(0,1)] + S[(1,0)]*S[(0,1)])");
    assert_eq!(lines[2], "rays is null");
}
