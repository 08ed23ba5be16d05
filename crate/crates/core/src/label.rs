use std::fmt;

/// Puncture color: interior (closed) or on a boundary (open).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Closed,
    Open,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Closed => "closed",
            Color::Open => "open",
        }
    }
}

/// Inputs sort before outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Input,
    Output,
}

/// A puncture label such as `3i` or `1o`. The derived order is
/// `(polarity, index)`, which every canonical form relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub polarity: Polarity,
    pub index: u32,
}

impl Label {
    pub const fn input(index: u32) -> Self {
        Label { polarity: Polarity::Input, index }
    }

    pub const fn output(index: u32) -> Self {
        Label { polarity: Polarity::Output, index }
    }

    pub fn is_input(self) -> bool {
        self.polarity == Polarity::Input
    }

    pub fn is_output(self) -> bool {
        self.polarity == Polarity::Output
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.polarity {
            Polarity::Input => 'i',
            Polarity::Output => 'o',
        };
        write!(f, "{}{}", self.index, p)
    }
}

/// Shorthand used throughout the tests: `lbl("2i")`.
pub fn lbl(text: &str) -> Label {
    let (num, pol) = text.split_at(text.len() - 1);
    let index = num.parse().expect("label index");
    match pol {
        "i" => Label::input(index),
        "o" => Label::output(index),
        _ => panic!("bad label {text}"),
    }
}
