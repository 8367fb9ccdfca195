//! Deduplicate the subterms of a corpus: one hashing session spans every term,
//! so equivalent subterms of different terms collapse too.

use alphahash::commands::dedup;
use alphahash::generate::{gen_balanced, gen_grown_closed, gen_linear};
use alphahash::{parse_corpus, HashMode};

fn main() -> Result<(), alphahash::Error> {
    let text = r"
\0
\\(0 1)
\((\0 \\(0 2)) \(0 1))
\((\0 \\(0 1)) \(0 1))
\(\((0 1) \(1 2)) \\((0 2) \(1 3)))
";
    let mut corpus = parse_corpus(text)?;
    println!("hand-written: {}", dedup(&corpus, HashMode::Exact)?);

    corpus.push(gen_linear(200));
    corpus.push(gen_balanced(8));
    for seed in 0..20 {
        corpus.push(gen_grown_closed(300, seed)?);
    }
    for mode in [HashMode::Fast, HashMode::Exact] {
        println!("{mode:?} with generated terms: {}", dedup(&corpus, mode)?);
    }
    Ok(())
}
