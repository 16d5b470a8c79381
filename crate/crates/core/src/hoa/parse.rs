use std::collections::HashMap;

use super::lexer::{tokenize, Tok, Token};
use crate::automaton::{Alphabet, ColorSet, StateAccAutomaton, Transition};
use crate::automaton::{Sgra, MAX_COLORS};
use crate::error::{Error, Result};

enum Label {
    True,
    False,
    Ap(usize),
    Not(Box<Label>),
    And(Vec<Label>),
    Or(Vec<Label>),
}

impl Label {
    fn eval(&self, valuation: usize) -> bool {
        match self {
            Label::True => true,
            Label::False => false,
            Label::Ap(i) => valuation >> i & 1 == 1,
            Label::Not(l) => !l.eval(valuation),
            Label::And(ls) => ls.iter().all(|l| l.eval(valuation)),
            Label::Or(ls) => ls.iter().any(|l| l.eval(valuation)),
        }
    }
}

enum Acc {
    True,
    False,
    Fin(usize),
    Inf(usize),
    Negated,
    And(Vec<Acc>),
    Or,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.tokens[self.pos];
        Error::syntax(t.line, t.column, message)
    }

    fn expect_punct(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Punct(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}', found {:?}", self.peek())))
        }
    }

    fn int(&mut self) -> Result<usize> {
        match *self.peek() {
            Tok::Int(v) => {
                self.next();
                Ok(v)
            }
            ref other => Err(self.error(format!("expected an integer, found {other:?}"))),
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn label_or(&mut self) -> Result<Label> {
        let mut parts = vec![self.label_and()?];
        while self.eat_punct('|') {
            parts.push(self.label_and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Label::Or(parts) })
    }

    fn label_and(&mut self) -> Result<Label> {
        let mut parts = vec![self.label_not()?];
        while self.eat_punct('&') {
            parts.push(self.label_not()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Label::And(parts) })
    }

    fn label_not(&mut self) -> Result<Label> {
        if self.eat_punct('!') {
            return Ok(Label::Not(Box::new(self.label_not()?)));
        }
        match self.peek().clone() {
            Tok::Ident(w) if w == "t" => {
                self.next();
                Ok(Label::True)
            }
            Tok::Ident(w) if w == "f" => {
                self.next();
                Ok(Label::False)
            }
            Tok::Int(i) => {
                self.next();
                Ok(Label::Ap(i))
            }
            Tok::Alias(name) => Err(Error::Unsupported(format!("alias @{name}"))),
            Tok::Punct('(') => {
                self.next();
                let inner = self.label_or()?;
                self.expect_punct(')')?;
                Ok(inner)
            }
            other => Err(self.error(format!("unexpected {other:?} in label"))),
        }
    }

    fn acc_or(&mut self) -> Result<Acc> {
        let mut parts = vec![self.acc_and()?];
        while self.eat_punct('|') {
            parts.push(self.acc_and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Acc::Or })
    }

    fn acc_and(&mut self) -> Result<Acc> {
        let mut parts = vec![self.acc_atom()?];
        while self.eat_punct('&') {
            parts.push(self.acc_atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Acc::And(parts) })
    }

    fn acc_atom(&mut self) -> Result<Acc> {
        match self.peek().clone() {
            Tok::Ident(w) if w == "t" => {
                self.next();
                Ok(Acc::True)
            }
            Tok::Ident(w) if w == "f" => {
                self.next();
                Ok(Acc::False)
            }
            Tok::Ident(w) if w == "Fin" || w == "Inf" => {
                self.next();
                self.expect_punct('(')?;
                let negated = self.eat_punct('!');
                let set = self.int()?;
                self.expect_punct(')')?;
                Ok(match (negated, w.as_str()) {
                    (true, _) => Acc::Negated,
                    (false, "Fin") => Acc::Fin(set),
                    _ => Acc::Inf(set),
                })
            }
            Tok::Punct('(') => {
                self.next();
                let inner = self.acc_or()?;
                self.expect_punct(')')?;
                Ok(inner)
            }
            other => Err(self.error(format!("unexpected {other:?} in acceptance condition"))),
        }
    }

    /// Optional `{i j ...}` acceptance signature.
    fn acc_sig(&mut self, declared: usize) -> Result<Vec<usize>> {
        let mut sets = Vec::new();
        if !self.eat_punct('{') {
            return Ok(sets);
        }
        while !self.eat_punct('}') {
            let set = self.int()?;
            if set >= declared {
                return Err(self.error(format!("acceptance set {set} not declared")));
            }
            sets.push(set);
        }
        Ok(sets)
    }

    fn skip_header_values(&mut self) {
        while !matches!(self.peek(), Tok::Header(_) | Tok::Body | Tok::Eof) {
            self.next();
        }
    }
}

/// Maps HOA acceptance sets to internal colors: the Fin set to 0, the Inf
/// sets to `1..` in formula order.
struct AccMapping {
    color_of_set: HashMap<usize, u32>,
    num_colors: u32,
    fin_used: bool,
}

fn flatten(acc: Acc, atoms: &mut Vec<Acc>) -> Result<()> {
    match acc {
        Acc::And(parts) => {
            for p in parts {
                flatten(p, atoms)?;
            }
            Ok(())
        }
        Acc::True => Ok(()),
        Acc::Or => Err(Error::UnsupportedAcceptance("disjunction".into())),
        Acc::False => Err(Error::UnsupportedAcceptance("f (empty acceptance)".into())),
        Acc::Negated => Err(Error::UnsupportedAcceptance("negated acceptance set".into())),
        atom => {
            atoms.push(atom);
            Ok(())
        }
    }
}

fn map_acceptance(acc: Acc) -> Result<AccMapping> {
    let mut atoms = Vec::new();
    flatten(acc, &mut atoms)?;
    let mut color_of_set = HashMap::new();
    let mut fin_used = false;
    let mut next = 1;
    for atom in &atoms {
        if let Acc::Fin(set) = *atom {
            if fin_used {
                return Err(Error::UnsupportedAcceptance("more than one Fin atom".into()));
            }
            fin_used = true;
            color_of_set.insert(set, 0);
        }
    }
    for atom in &atoms {
        if let Acc::Inf(set) = *atom {
            if color_of_set.insert(set, next).is_some() {
                return Err(Error::UnsupportedAcceptance(format!("set {set} used twice")));
            }
            next += 1;
        }
    }
    if next > MAX_COLORS {
        return Err(Error::Capacity(format!("more than {} Inf atoms", MAX_COLORS - 1)));
    }
    Ok(AccMapping {
        color_of_set,
        num_colors: next,
        fin_used,
    })
}

struct Edge {
    src: usize,
    label: Label,
    dst: usize,
    sets: Vec<usize>,
}

/// Parses one HOA v1 automaton with explicit transition labels.
pub fn parse_hoa(input: &str, max_aps: usize) -> Result<Sgra> {
    let mut p = Parser {
        tokens: tokenize(input)?,
        pos: 0,
    };
    match p.next().tok {
        Tok::Header(h) if h == "HOA" => {}
        other => return Err(p.error(format!("expected 'HOA:', found {other:?}"))),
    }
    match p.next().tok {
        Tok::Ident(v) if v == "v1" => {}
        other => return Err(p.error(format!("unsupported HOA version {other:?}"))),
    }
    let mut states = None;
    let mut initial = Vec::new();
    let mut aps: Option<Vec<String>> = None;
    let mut acceptance = None;
    loop {
        let header = match p.peek().clone() {
            Tok::Header(h) => h,
            Tok::Body => {
                p.next();
                break;
            }
            other => return Err(p.error(format!("expected a header item or --BODY--, found {other:?}"))),
        };
        p.next();
        match header.as_str() {
            "States" => states = Some(p.int()?),
            "Start" => {
                initial.push(p.int()?);
                if *p.peek() == Tok::Punct('&') {
                    return Err(Error::Unsupported("alternating initial states".into()));
                }
            }
            "AP" => {
                let count = p.int()?;
                let mut names = Vec::with_capacity(count);
                for _ in 0..count {
                    match p.next().tok {
                        Tok::Str(s) => names.push(s),
                        other => return Err(p.error(format!("expected an AP name, found {other:?}"))),
                    }
                }
                if names.len() > max_aps {
                    return Err(Error::Capacity(format!(
                        "{} atomic propositions exceed the limit of {max_aps}",
                        names.len()
                    )));
                }
                aps = Some(names);
            }
            "Acceptance" => {
                let declared = p.int()?;
                let formula = p.acc_or()?;
                acceptance = Some((declared, formula));
            }
            "Alias" => return Err(Error::Unsupported("aliases".into())),
            _ => p.skip_header_values(),
        }
    }
    let (declared, formula) = acceptance.ok_or_else(|| p.error("missing Acceptance header"))?;
    let mapping = map_acceptance(formula)?;
    let aps = aps.unwrap_or_default();

    let mut edges = Vec::new();
    let mut state_sets: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut max_state = initial.iter().copied().max();
    loop {
        match p.peek().clone() {
            Tok::End => {
                p.next();
                break;
            }
            Tok::Abort => return Err(Error::Unsupported("--ABORT--".into())),
            Tok::Header(h) if h == "State" => {
                p.next();
            }
            other => return Err(p.error(format!("expected 'State:' or --END--, found {other:?}"))),
        }
        if *p.peek() == Tok::Punct('[') {
            return Err(Error::Unsupported("state labels".into()));
        }
        let src = p.int()?;
        if let Tok::Str(_) = p.peek() {
            p.next();
        }
        let sets = p.acc_sig(declared)?;
        if state_sets.insert(src, sets).is_some() {
            return Err(p.error(format!("state {src} defined twice")));
        }
        max_state = max_state.max(Some(src));
        loop {
            match p.peek() {
                Tok::Punct('[') => {}
                Tok::Int(_) => return Err(Error::Unsupported("implicit edge labels".into())),
                _ => break,
            }
            let at = p.pos;
            p.next();
            let label = p.label_or()?;
            p.expect_punct(']')?;
            let dst = p.int()?;
            if *p.peek() == Tok::Punct('&') {
                return Err(Error::Unsupported("alternating transitions".into()));
            }
            let sets = p.acc_sig(declared)?;
            max_state = max_state.max(Some(dst));
            edges.push((at, Edge { src, label, dst, sets }));
        }
    }
    if *p.peek() != Tok::Eof {
        return Err(Error::Unsupported("content after --END-- (automaton streams)".into()));
    }

    let num_states = match states {
        Some(n) => {
            if let Some(m) = max_state.filter(|&m| m >= n) {
                return Err(Error::InvalidAutomaton(format!("state {m} out of range for States: {n}")));
            }
            n
        }
        None => max_state.map_or(0, |m| m + 1),
    };
    let colors = |sets: &[usize]| -> ColorSet {
        sets.iter()
            .filter_map(|s| mapping.color_of_set.get(s).copied())
            .collect()
    };
    let mut transitions = Vec::new();
    for (pos, e) in &edges {
        check_label_aps(&e.label, aps.len()).map_err(|ap| {
            let t = &p.tokens[*pos];
            Error::syntax(t.line, t.column, format!("AP index {ap} out of range"))
        })?;
        let c = colors(&e.sets);
        for v in 0..1usize << aps.len() {
            if e.label.eval(v) {
                transitions.push(Transition::new(e.src, v, e.dst, c));
            }
        }
    }
    let mut state_marks = vec![ColorSet::EMPTY; num_states];
    for (q, sets) in &state_sets {
        state_marks[*q] = colors(sets);
    }
    StateAccAutomaton {
        alphabet: Alphabet::from_aps(aps),
        num_states,
        initial,
        transitions,
        state_marks,
        num_colors: mapping.num_colors,
        fin_used: mapping.fin_used,
    }
    .push_state_acceptance()
}

fn check_label_aps(label: &Label, num_aps: usize) -> std::result::Result<(), usize> {
    match label {
        Label::Ap(i) if *i >= num_aps => Err(*i),
        Label::Not(l) => check_label_aps(l, num_aps),
        Label::And(ls) | Label::Or(ls) => ls.iter().try_for_each(|l| check_label_aps(l, num_aps)),
        _ => Ok(()),
    }
}
