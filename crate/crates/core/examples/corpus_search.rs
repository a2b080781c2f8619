//! Regenerates the searched entries of the bundled loop corpus.
//!
//! ```text
//! cargo run --example corpus_search -- <ip7|ip8|lip> [out-dir]
//! ```

use std::path::PathBuf;

use linext::search::{find_loop, LoopQuery};

fn main() {
    let mut args = std::env::args().skip(1);
    let which = args.next().unwrap_or_else(|| "ip7".into());
    let out = args.next().map(PathBuf::from);
    let (name, found) = match which.as_str() {
        "ip7" => ("ip7", find_loop(linext::corpus::IP7_QUERY)),
        "ip8" => ("ip8", find_loop(linext::corpus::IP8_QUERY)),
        "lip" => {
            let hit = (2..=8).find_map(|order| {
                find_loop(LoopQuery {
                    order,
                    ..linext::corpus::LIP_ONLY_QUERY
                })
            });
            ("lip", hit)
        }
        other => {
            eprintln!("unknown query {other:?}");
            std::process::exit(2);
        }
    };
    let Some(lp) = found else {
        eprintln!("no loop found");
        std::process::exit(1);
    };
    let text = linext::io::emit_loop(&lp);
    match out {
        Some(dir) => {
            std::fs::write(dir.join(format!("{name}.loop")), text).expect("write corpus file")
        }
        None => print!("{text}"),
    }
}
