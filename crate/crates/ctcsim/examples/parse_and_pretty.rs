//! Parse a DSL source, inspect the AST, and print its canonical form.
//!
//! ```bash
//! cargo run --example parse_and_pretty
//! ```

use ctcsim::dsl::{parse, pretty, validate};

fn main() {
    let source = "
        program demo
        ttreg tt init -1 domain auto

        # One time-travel register, one guard, one loop.
          receive tt -> p
          if p > 1 and input mod p == 0 goto FINAL
        LOOP: p = p + 1
          if input mod p == 0 goto FINAL
          goto LOOP
        FINAL: send tt p
          output p
          halt
    ";

    let program = parse(source).expect("demo source parses");
    println!("name:       {}", program.name);
    println!("registers:  {}", program.registers.len());
    println!("statements: {}", program.statements.len());
    println!("labels:     {:?}", program.labels.keys().collect::<Vec<_>>());
    println!("valid:      {}", validate(&program).is_valid());

    println!("\ncanonical form:\n{}", pretty(&program));

    // The canonical form is a fixed point of parse-then-pretty.
    let reparsed = parse(&pretty(&program)).unwrap();
    assert_eq!(program, reparsed);
    println!("roundtrip: parse(pretty(p)) == p");

    // Malformed input never panics; it yields one diagnostic with a line.
    let err = parse("program broken\ngoto NOWHERE").unwrap_err();
    println!("\ndiagnostic for a broken program: {err}");
}
