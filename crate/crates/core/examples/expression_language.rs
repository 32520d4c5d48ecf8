//! The slot expression language: parsing, printing, evaluation and errors.
//!
//!     cargo run --example expression_language

use hybrid_chaos::expr::Var;
use hybrid_chaos::{parse, EvalEnv};

fn main() {
    let src = "15*tanh(r*x+z)+sin(w)+12*cos(r*x)";
    let e = parse(src).unwrap();
    let vars: Vec<_> = e.variables().iter().map(|v| v.name()).collect();
    println!("{src}\n  parsed as {e}\n  uses {vars:?}");

    let env = EvalEnv::new().with(Var::R, 0.5).with(Var::X, 0.1).with(Var::Z, 0.3).with(Var::W, 0.4);
    println!("  = {} at r=0.5, x=0.1, z=0.3, w=0.4", e.eval(&env).unwrap());

    // ^ is right-associative and binds tighter than unary minus
    for src in ["2^3^2", "-2^2", "cot(pi/4)", "log(e)"] {
        println!("{src} = {}", parse(src).unwrap().eval(&EvalEnv::new()).unwrap());
    }

    let f = parse("cosh(p)").unwrap();
    println!("cosh(p) at p=1: {}", f.eval(&EvalEnv::unary(1.0)).unwrap());

    for bad in ["sin(2*", "2**x", "foo(x)", "x y"] {
        println!("{bad:>8}: {}", parse(bad).unwrap_err());
    }
    println!("unbound: {}", parse("x+y").unwrap().eval(&EvalEnv::unary(0.0)).unwrap_err());
}
