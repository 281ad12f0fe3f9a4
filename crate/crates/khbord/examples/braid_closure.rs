//! Plat and trace closures of braid words, printed as PD codes.

use khbord::khovanov::{braid_to_diagram, determinant, parse_braid_word, Closure};

fn main() {
    let cases = [("1 1 1", 2, Closure::Trace), ("2 2 2", 4, Closure::Plat), ("1 -2 1 -2", 3, Closure::Trace)];
    for (word, strands, closure) in cases {
        let w = parse_braid_word(word).expect("braid word");
        let d = braid_to_diagram(&w, strands, closure).expect("valid closure");
        let pd: Vec<String> = d.pd().iter().map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3])).collect();
        println!("[{word}] on {strands} strands, {closure} closure: {} component(s)", d.components());
        println!("  {}", pd.join(" "));
        if d.components() == 1 {
            println!("  det {}", determinant(&d).expect("a knot"));
        }
    }
}
