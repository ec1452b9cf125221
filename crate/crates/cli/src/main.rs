use std::io::Write;
use std::process::ExitCode;

/// Elimination recurses deeply on larger inputs.
const STACK_BYTES: usize = 256 << 20;

fn main() -> ExitCode {
    let limits = std::env::var(sperkit::LIMITS_ENV).ok();
    let out = std::thread::Builder::new()
        .stack_size(STACK_BYTES)
        .spawn(move || sperkit::run(std::env::args_os(), limits.as_deref()))
        .expect("spawn worker thread")
        .join()
        .expect("worker thread panicked");
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
