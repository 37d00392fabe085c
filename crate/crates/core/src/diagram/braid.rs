use std::fmt;

use super::{Diagram, GaussCode, Passage, Provenance};
use crate::error::{Error, Result};

/// A braid word on `strands` strands; letter `(i, s)` is `σ_i^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::domain(format!("a braid needs at least 2 strands, got {strands}")));
        }
        for &(i, s) in &letters {
            if i == 0 || i >= strands {
                return Err(Error::domain(format!("generator s{i} outside B{strands}")));
            }
            if s != 1 && s != -1 {
                return Err(Error::domain(format!("letter sign must be +1 or -1, got {s}")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }
}

/// Canonical text form, runs of equal letters collapsed: `B2: s1^-4`.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        let mut k = 0;
        while k < self.letters.len() {
            let (i, s) = self.letters[k];
            let run = self.letters[k..].iter().take_while(|&&l| l == (i, s)).count();
            let exp = run as i64 * s as i64;
            if exp == 1 {
                write!(f, " s{i}")?;
            } else {
                write!(f, " s{i}^{exp}")?;
            }
            k += run;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_spaces(&mut self) -> bool {
        let start = self.pos;
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().unwrap().len_utf8();
        }
        self.pos > start
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse { position: start, message: "number too large".into() })
    }
}

/// Parses `B<strands>: s<i>(^<±k>)? ...`.
pub fn braid_word_parse(text: &str) -> Result<BraidWord> {
    let mut cur = Cursor { text, pos: 0 };
    cur.skip_spaces();
    cur.expect('B')?;
    let strands_at = cur.pos;
    let strands = cur.number()? as usize;
    if strands < 2 {
        return Err(Error::Parse { position: strands_at, message: "need at least 2 strands".into() });
    }
    cur.skip_spaces();
    cur.expect(':')?;
    let mut letters = Vec::new();
    loop {
        let spaced = cur.skip_spaces();
        if cur.peek().is_none() {
            break;
        }
        if !spaced {
            return Err(cur.err("terms must be separated by spaces"));
        }
        cur.expect('s')?;
        let gen_at = cur.pos;
        let i = cur.number()? as usize;
        if i == 0 || i >= strands {
            return Err(Error::Parse {
                position: gen_at,
                message: format!("generator s{i} outside B{strands}"),
            });
        }
        let mut exp: i64 = 1;
        if cur.peek() == Some('^') {
            cur.pos += 1;
            let negative = match cur.peek() {
                Some('-') => {
                    cur.pos += 1;
                    true
                }
                Some('+') => {
                    cur.pos += 1;
                    false
                }
                _ => false,
            };
            let exp_at = cur.pos;
            let k = cur.number()?;
            if k == 0 {
                return Err(Error::Parse { position: exp_at, message: "exponent must be nonzero".into() });
            }
            let k = i64::try_from(k).map_err(|_| Error::Parse { position: exp_at, message: "exponent too large".into() })?;
            exp = if negative { -k } else { k };
        }
        let s = exp.signum() as i8;
        letters.extend(std::iter::repeat_n((i, s), exp.unsigned_abs() as usize));
    }
    BraidWord::new(strands, letters)
}

/// Trace closure with strands running top to bottom.
///
/// At `σ_i` the strand in position `i + 1` (1-based) passes over to position
/// `i`; at `σ_i^{-1}` the strand in position `i` passes over. Crossing `c` is
/// letter `c` and carries the letter's sign.
pub fn braid_closure(w: &BraidWord) -> Diagram {
    let code = closure_code(w);
    Diagram::from_code(code, Some(Provenance::BraidClosure { word: w.to_string() }))
        .expect("braid closures are planar")
}

fn closure_code(w: &BraidWord) -> GaussCode {
    let mut done = vec![false; w.strands];
    let mut components = Vec::new();
    for start in 0..w.strands {
        if done[start] {
            continue;
        }
        let mut passages = Vec::new();
        let mut top = start;
        loop {
            done[top] = true;
            let mut pos = top;
            for (c, &(i, s)) in w.letters.iter().enumerate() {
                let (left, right) = (i - 1, i);
                if pos == left || pos == right {
                    let over = if s > 0 { pos == right } else { pos == left };
                    passages.push(Passage { crossing: c, over });
                    pos = if pos == left { right } else { left };
                }
            }
            top = pos;
            if top == start {
                break;
            }
        }
        components.push(passages);
    }
    let signs = w.letters.iter().map(|&(_, s)| s).collect();
    GaussCode::new(components, signs).expect("closure visits every crossing twice")
}

/// `T(2, n)` as the closure of `σ_1^n`.
pub fn torus_diagram(n: u64) -> Result<Diagram> {
    if n < 2 {
        return Err(Error::domain(format!("T(2, n) needs n >= 2, got {n}")));
    }
    let w = BraidWord::new(2, vec![(1, 1); n as usize])?;
    let d = Diagram::from_code(closure_code(&w), Some(Provenance::Torus { p: 2, q: n }))?;
    Ok(d.with_twist_regions(vec![(0..n as usize).collect()]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let w = braid_word_parse("B2: s1^5").unwrap();
        assert_eq!(w.strands(), 2);
        assert_eq!(w.letters(), &[(1, 1); 5]);
        assert_eq!(braid_word_parse("B2: s1^-4").unwrap().letters(), &[(1, -1); 4]);
        assert_eq!(braid_word_parse("B3: s1 s2^-1").unwrap().letters(), &[(1, 1), (2, -1)]);
        assert_eq!(braid_word_parse("B3:").unwrap().letters(), &[]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let cases = [
            ("X2: s1", 0),
            ("B2 s1", 3),
            ("B2: t1", 4),
            ("B2: s2", 5),
            ("B2: s1^0", 7),
            ("B2: s1s1", 6),
            ("B1: s1", 1),
        ];
        for (text, at) in cases {
            match braid_word_parse(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, at, "{text}"),
                other => panic!("{text}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for text in ["B2: s1^5", "B2: s1^-4", "B3: s1 s2^-1", "B4: s3 s1^2 s2^-3"] {
            let w = braid_word_parse(text).unwrap();
            assert_eq!(w.to_string(), text);
            assert_eq!(braid_word_parse(&w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn closures_of_sigma_one_powers() {
        for (n, comps) in [(1u64, 1usize), (3, 1), (4, 2)] {
            let d = braid_closure(&braid_word_parse(&format!("B2: s1^{n}")).unwrap());
            assert_eq!(d.num_arcs() as u64, n);
            assert_eq!(d.num_crossings() as u64, n);
            assert_eq!(d.components(), comps);
        }
    }

    #[test]
    fn torus_matches_braid_closure() {
        for n in 2..=12u64 {
            let t = torus_diagram(n).unwrap();
            let b = braid_closure(&braid_word_parse(&format!("B2: s1^{n}")).unwrap());
            assert_eq!(t.arcs(), b.arcs());
            assert_eq!(t.crossings(), b.crossings());
            assert_eq!(t.components(), if n % 2 == 1 { 1 } else { 2 });
            assert_eq!(t.provenance(), &Provenance::Torus { p: 2, q: n });
            for (c, x) in t.crossings().iter().enumerate() {
                let n = n as usize;
                assert_eq!((x.over, x.under_in, x.under_out), ((c + 1) % n, c, (c + 2) % n));
            }
        }
        assert!(matches!(torus_diagram(1), Err(Error::Domain(_))));
    }

    #[test]
    fn three_strand_closures_are_planar() {
        for text in ["B3: s1 s2^-1 s1 s2^-1", "B3: s1^2 s2^3", "B4: s1 s2 s3", "B3: s1 s1 s2^-1"] {
            let d = braid_closure(&braid_word_parse(text).unwrap());
            assert!(d.gauss_code().unwrap().is_planar(), "{text}");
            assert!(d.validate().valid, "{text}");
        }
        // figure-eight knot
        assert_eq!(braid_closure(&braid_word_parse("B3: s1 s2^-1 s1 s2^-1").unwrap()).components(), 1);
        // one untouched strand closes to a free loop
        let d = braid_closure(&braid_word_parse("B3: s1^3").unwrap());
        assert_eq!(d.components(), 2);
        assert_eq!(d.num_arcs(), 4);
    }
}
