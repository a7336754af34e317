use clap::Parser;

fn main() {
    let args = conesum::cli::Args::parse();
    let out = conesum::cli::run(&args, &mut std::io::stdin().lock());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
