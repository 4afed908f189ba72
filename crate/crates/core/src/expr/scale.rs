//! Parser for time-scale specs:
//!
//! ```text
//! scale := term ('u' term)*
//! term  := '[' real ',' real ']' | '{' real (',' real)* '}' | 'hZ(' h ';' a ';' b ')'
//! ```

use super::cursor::Cursor;
use crate::error::{Error, Result};
use crate::timescale::{uniform_points, Segment, TimeScale};

pub fn parse_scale(src: &str) -> Result<TimeScale> {
    let mut cur = Cursor::new(src);
    let mut segments = Vec::new();
    loop {
        term(&mut cur, &mut segments)?;
        cur.skip_ws();
        let mark = cur.pos();
        match cur.ident() {
            Some(sep) if sep == "u" => continue,
            Some(other) => return Err(cur.error_at(mark, format!("expected 'u', found '{other}'"))),
            None => {}
        }
        if let Some(c) = cur.peek() {
            return Err(cur.error_here(format!("expected 'u', found '{c}'")));
        }
        break;
    }
    TimeScale::new(segments)
}

fn term(cur: &mut Cursor, out: &mut Vec<Segment>) -> Result<()> {
    cur.skip_ws();
    let start = cur.pos();
    match cur.peek() {
        Some('[') => {
            cur.bump();
            let lo = cur.signed_number()?;
            cur.expect(',')?;
            let hi = cur.signed_number()?;
            cur.expect(']')?;
            out.push(Segment::new(lo, hi)?);
        }
        Some('{') => {
            cur.bump();
            loop {
                out.push(Segment::point(cur.signed_number()?)?);
                if !cur.eat(',') {
                    break;
                }
            }
            cur.expect('}')?;
        }
        Some(_) => match cur.ident() {
            Some(name) if name == "hZ" => {
                cur.expect('(')?;
                let h_pos = {
                    cur.skip_ws();
                    cur.pos()
                };
                let h = cur.signed_number()?;
                cur.expect(';')?;
                let a = cur.signed_number()?;
                cur.expect(';')?;
                let b = cur.signed_number()?;
                cur.expect(')')?;
                let pts = uniform_points(h, a, b).map_err(|e| match e {
                    // report positionally only when the step itself is malformed
                    Error::InvalidStep { .. } if h <= 0.0 => e,
                    Error::InvalidStep { .. } => {
                        cur.error_at(h_pos, "hZ window has too many points")
                    }
                    other => other,
                })?;
                out.extend(pts.into_iter().map(|p| Segment { lo: p, hi: p }));
            }
            Some(name) => {
                return Err(cur.error_at(start, format!("unknown scale term '{name}'")));
            }
            None => {
                let c = cur.peek().unwrap_or(' ');
                return Err(cur.error_here(format!("expected '[', '{{' or 'hZ(', found '{c}'")));
            }
        },
        None => return Err(cur.error_here("expected a scale term, found end of input")),
    }
    Ok(())
}
