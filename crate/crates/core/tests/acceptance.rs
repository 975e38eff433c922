//! Acceptance checks; prints one PASS or FAIL line per criterion.

fn main() {
    let stdout = std::io::stdout();
    let ok = snowteam::selftest::run_all(&mut stdout.lock()).expect("stdout is writable");
    if !ok {
        std::process::exit(1);
    }
}
