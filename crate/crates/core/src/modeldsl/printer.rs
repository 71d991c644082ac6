use super::ModelExpr;

// Binding strength: sums 1, products 2, unary minus 3, atoms 4.
fn level(e: &ModelExpr) -> u8 {
    match e {
        ModelExpr::Add(..) | ModelExpr::Sub(..) => 1,
        ModelExpr::Mul(..) | ModelExpr::Div(..) => 2,
        ModelExpr::Neg(_) => 3,
        _ => 4,
    }
}

fn wrap(out: &mut String, e: &ModelExpr, parens: bool) {
    if parens {
        out.push('(');
        write(out, e);
        out.push(')');
    } else {
        write(out, e);
    }
}

fn binary(out: &mut String, a: &ModelExpr, op: char, b: &ModelExpr, lvl: u8) {
    wrap(out, a, level(a) < lvl);
    out.push(op);
    // Operators are left-associative, so a right operand at the same level
    // needs parentheses to keep its grouping.
    wrap(out, b, level(b) <= lvl);
}

fn write(out: &mut String, e: &ModelExpr) {
    match e {
        ModelExpr::Int(v) => out.push_str(&v.to_string()),
        ModelExpr::Param(i) => {
            out.push('a');
            out.push_str(&i.to_string());
        }
        ModelExpr::Log2 => out.push_str("log2"),
        ModelExpr::Log3 => out.push_str("log3"),
        ModelExpr::Neg(a) => {
            out.push('-');
            wrap(out, a, level(a) < 4);
        }
        ModelExpr::Add(a, b) => binary(out, a, '+', b, 1),
        ModelExpr::Sub(a, b) => binary(out, a, '-', b, 1),
        ModelExpr::Mul(a, b) => binary(out, a, '*', b, 2),
        ModelExpr::Div(a, b) => binary(out, a, '/', b, 2),
        ModelExpr::Sqrt(a) => {
            out.push_str("sqrt(");
            write(out, a);
            out.push(')');
        }
        ModelExpr::Root(k, a) => {
            out.push_str("root(");
            out.push_str(&k.to_string());
            out.push(',');
            write(out, a);
            out.push(')');
        }
    }
}

pub(super) fn render(e: &ModelExpr) -> String {
    let mut s = String::new();
    write(&mut s, e);
    s
}
