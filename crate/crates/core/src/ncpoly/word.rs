use std::cmp::Ordering;
use std::fmt;

/// A single letter of a word: one of the variables `x1..xg` or the direction
/// symbol `h`.
///
/// The derived order puts every variable before `h`, and variables by index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    X(u16),
    H,
}

impl Letter {
    /// JSON letter code: `h` is 0, `x_i` is `i`.
    pub fn code(self) -> u32 {
        match self {
            Letter::X(i) => u32::from(i),
            Letter::H => 0,
        }
    }

    pub fn from_code(code: u32) -> Option<Letter> {
        match code {
            0 => Some(Letter::H),
            i => u16::try_from(i).ok().map(Letter::X),
        }
    }

    pub fn is_h(self) -> bool {
        matches!(self, Letter::H)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(i) => write!(f, "x{i}"),
            Letter::H => f.write_str("h"),
        }
    }
}

/// A monomial index: a finite sequence of letters. The empty word is the
/// multiplicative identity.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// Word over variables only, given 1-based indices.
    pub fn from_vars(indices: &[u16]) -> Word {
        Word(indices.iter().map(|&i| Letter::X(i)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn h_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_h()).count()
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Largest variable index used, 0 for words without variables.
    pub fn max_var(&self) -> usize {
        self.0
            .iter()
            .filter_map(|l| match l {
                Letter::X(i) => Some(usize::from(*i)),
                Letter::H => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn with_letter(&self, pos: usize, letter: Letter) -> Word {
        let mut letters = self.0.clone();
        letters[pos] = letter;
        Word(letters)
    }

    /// All `g^d` words of length `d` over `x1..xg`, in canonical order.
    pub fn enumerate(g: usize, d: usize) -> Vec<Word> {
        let alphabet: Vec<Letter> = (1..=g as u16).map(Letter::X).collect();
        Self::enumerate_over(&alphabet, d)
    }

    pub(crate) fn enumerate_over(alphabet: &[Letter], d: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..d {
            let mut next = Vec::with_capacity(out.len() * alphabet.len());
            for w in &out {
                for &l in alphabet {
                    let mut letters = w.0.clone();
                    letters.push(l);
                    next.push(Word(letters));
                }
            }
            out = next;
        }
        out
    }

    /// Text form used by the polynomial grammar, e.g. `x1^2*h*x2`; the empty
    /// word renders as `1`.
    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if run == 1 {
                parts.push(l.to_string());
            } else {
                parts.push(format!("{l}^{run}"));
            }
            i += run;
        }
        parts.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized as its rendered text, e.g. `"x1^2*h"`.
impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}
