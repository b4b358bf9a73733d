use mapspace::verify::run_acceptance;

fn main() {
    let results = run_acceptance(|r| println!("{}", r.line()));
    let failed: Vec<usize> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    println!("acceptance: {} of {} criteria pass", results.len() - failed.len(), results.len());
    if results.len() != 11 || !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
