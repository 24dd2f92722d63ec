use std::fmt::Write;

use super::Term;

/// Canonical compact text; `parse_term` inverts it.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    go(t, &mut out);
    out
}

fn go(t: &Term, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(&x.0),
        Term::CoApp(y, m) => {
            let _ = write!(out, "{y}(");
            go(m, out);
            out.push(')');
        }
        Term::ConnectTo(m) => unary("connect_to", m, out),
        Term::Casel(m) => unary("casel", m, out),
        Term::Caser(m) => unary("caser", m, out),
        Term::Postp1(m) => unary("postp", m, out),
        Term::Par(a, b) => {
            out.push_str("par(");
            go(a, out);
            out.push(',');
            go(b, out);
            out.push(')');
        }
        Term::Mkc(m, y) => {
            out.push_str("mkc(");
            go(m, out);
            let _ = write!(out, ",{y})");
        }
        Term::Nil => out.push_str("[]"),
        Term::List1(m) => {
            out.push('[');
            go(m, out);
            out.push(']');
        }
        Term::List2(a, b) => {
            out.push('[');
            go(a, out);
            out.push(',');
            go(b, out);
            out.push(']');
        }
        Term::Postp2(y, body, anchor) => {
            let _ = write!(out, "postp({y} -> ");
            go(body, out);
            out.push_str(", ");
            go(anchor, out);
            out.push(')');
        }
        Term::Store(s) => {
            out.push_str("store([");
            seq(&s.pterms, out);
            out.push_str("];[");
            seq(&s.guarded, out);
            out.push_str("];[");
            let gs: Vec<String> = s.guards.iter().map(|g| g.to_string()).collect();
            out.push_str(&gs.join(","));
            let _ = write!(out, "];{};", s.bound);
            go(&s.anchor, out);
            out.push(')');
        }
    }
}

fn unary(kw: &str, m: &Term, out: &mut String) {
    out.push_str(kw);
    out.push('(');
    go(m, out);
    out.push(')');
}

fn seq(ts: &[Term], out: &mut String) {
    for (i, t) in ts.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        go(t, out);
    }
}
