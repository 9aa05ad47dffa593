//! Seeded generator of annotated protocols.
//!
//! Produces `.txt` / `.ann` pairs in the same standoff format the corpus
//! reader consumes, covering every corpus relation class. Used for runnable
//! examples, property tests and the offline end-to-end check.

use std::fs;
use std::io;
use std::path::Path;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{parse_standoff, Document};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub min_steps: usize,
    pub max_steps: usize,
    /// Chance that a step is padded with a long run of filler words.
    pub long_step_prob: f64,
    /// Chance of a filler word before each slot.
    pub filler_prob: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            min_steps: 4,
            max_steps: 10,
            long_step_prob: 0.1,
            filler_prob: 0.15,
        }
    }
}

/// One generated protocol in standoff form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthProtocol {
    pub doc_id: String,
    pub text: String,
    pub ann: String,
}

impl SynthProtocol {
    pub fn parse(&self) -> Result<Document, ParseError> {
        parse_standoff(&self.text, &self.ann, &self.doc_id)
    }
}

const REAGENTS: &[&str] = &[
    "water",
    "PBS",
    "ethanol",
    "buffer",
    "TE buffer",
    "lysis buffer",
    "cells",
    "DNA",
    "master mix",
    "primers",
    "agarose",
    "sample",
    "supernatant",
    "medium",
    "trypsin",
];
const AMOUNTS: &[&str] = &["5 mL", "10 µl", "200 µl", "1 ml", "50 ul", "2 volumes"];
const CONCENTRATIONS: &[&str] = &["70%", "1X", "10 mM", "0.5 M", "2%"];
const LOCATIONS: &[&str] = &["tube", "plate", "flask", "column", "well", "beaker"];
const DEVICES: &[&str] = &["pipette", "vortex", "centrifuge", "thermocycler", "scale"];
const SPEEDS: &[&str] = &["13,000 rpm", "500 x g", "max speed", "3000 rpm"];
const TIMES: &[&str] = &["5 min", "30 seconds", "1 hour", "overnight", "10 minutes"];
const TEMPERATURES: &[&str] = &["37°C", "room temperature", "4 °C", "95 °C", "on ice"];
const MODIFIERS: &[&str] = &["gently", "carefully", "slowly", "fresh", "sterile"];
const MEASURE_TYPES: &[&str] = &["OD", "absorbance", "volume", "concentration"];
const NUMERICALS: &[&str] = &["3", "two", "5", "twice"];
const PARTS: &[&str] = &["lid", "bottom", "wall", "cap"];
const FILLERS: &[&str] = &[
    "then",
    "briefly",
    "again",
    "now",
    "next",
    "if needed",
    "as before",
    "immediately",
];
const LONG_FILLER: &[&str] = &[
    "making",
    "sure",
    "that",
    "no",
    "bubbles",
    "form",
    "and",
    "that",
    "the",
    "liquid",
    "stays",
    "at",
    "the",
    "bottom",
    "while",
    "you",
    "work",
    "through",
    "each",
    "of",
    "the",
    "remaining",
    "samples",
    "in",
    "order",
];

struct Builder<'r> {
    rng: &'r mut ChaCha8Rng,
    config: SynthConfig,
    text: String,
    chars: usize,
    line_start: bool,
    next_t: usize,
    next_r: usize,
    next_e: usize,
    t_lines: Vec<String>,
    link_lines: Vec<String>,
    /// Reagent-like mentions available for coreference.
    reagents: Vec<String>,
}

impl<'r> Builder<'r> {
    fn new(rng: &'r mut ChaCha8Rng, config: SynthConfig) -> Self {
        Self {
            rng,
            config,
            text: String::new(),
            chars: 0,
            line_start: true,
            next_t: 1,
            next_r: 1,
            next_e: 1,
            t_lines: Vec::new(),
            link_lines: Vec::new(),
            reagents: Vec::new(),
        }
    }

    fn append(&mut self, s: &str) {
        self.text.push_str(s);
        self.chars += s.chars().count();
    }

    fn space(&mut self) {
        if !self.line_start {
            self.append(" ");
        }
        self.line_start = false;
    }

    fn word(&mut self, w: &str) {
        self.space();
        self.append(w);
    }

    fn punct(&mut self, p: &str) {
        self.append(p);
        self.line_start = false;
    }

    fn maybe_filler(&mut self) {
        if self.rng.random_bool(self.config.filler_prob) {
            let w = *FILLERS.choose(self.rng).unwrap();
            self.word(w);
        }
    }

    fn entity(&mut self, ty: &str, surface: &str) -> String {
        self.maybe_filler();
        self.space();
        let start = self.chars;
        self.append(surface);
        let id = format!("T{}", self.next_t);
        self.next_t += 1;
        self.t_lines
            .push(format!("{id}\t{ty} {start} {}\t{surface}", self.chars));
        id
    }

    fn pick(&mut self, ty: &str, pool: &[&str]) -> String {
        let s = *pool.choose(self.rng).unwrap();
        self.entity(ty, s)
    }

    fn reagent(&mut self) -> String {
        let id = self.pick("Reagent", REAGENTS);
        self.reagents.push(id.clone());
        id
    }

    fn relation(&mut self, label: &str, head: &str, tail: &str) {
        let id = format!("R{}", self.next_r);
        self.next_r += 1;
        self.link_lines
            .push(format!("{id}\t{label} Arg1:{head} Arg2:{tail}"));
    }

    fn event(&mut self, trigger: &str, args: &[(&str, &str)]) {
        let id = format!("E{}", self.next_e);
        self.next_e += 1;
        let mut line = format!("{id}\tAction:{trigger}");
        let mut used: Vec<&str> = Vec::new();
        for (role, arg) in args {
            let n = used.iter().filter(|r| *r == role).count();
            used.push(role);
            // repeated roles carry a disambiguating digit
            if n == 0 {
                line.push_str(&format!(" {role}:{arg}"));
            } else {
                line.push_str(&format!(" {role}{}:{arg}", n + 1));
            }
        }
        self.link_lines.push(line);
    }

    fn end_step(&mut self) {
        if self.rng.random_bool(self.config.long_step_prob) {
            let n = self.rng.random_range(8..LONG_FILLER.len());
            self.punct(",");
            for w in &LONG_FILLER[..n] {
                self.word(w);
            }
        }
        self.punct(".");
        self.append("\n");
        self.line_start = true;
    }

    fn step(&mut self) {
        match self.rng.random_range(0..12) {
            0 => {
                let a = self.entity("Action", "Add");
                let amt = self.pick("Amount", AMOUNTS);
                self.word("of");
                let r = self.reagent();
                self.word("to");
                self.word("the");
                let loc = self.pick("Location", LOCATIONS);
                self.event(&a, &[("Acts-On", &r), ("Site", &loc)]);
                self.relation("Measure", &r, &amt);
            }
            1 => {
                let verb = *["Centrifuge", "Spin"].choose(self.rng).unwrap();
                let a = self.entity("Action", verb);
                self.word("at");
                let s = self.pick("Speed", SPEEDS);
                self.word("for");
                let t = self.pick("Time", TIMES);
                self.event(&a, &[("Setting", &s), ("Setting", &t)]);
            }
            2 => {
                let a = self.entity("Action", "Incubate");
                self.word("the");
                let loc = self.pick("Location", LOCATIONS);
                let temp = self.pick("Temperature", TEMPERATURES);
                self.word("for");
                let t = self.pick("Time", TIMES);
                self.event(&a, &[("Site", &loc), ("Setting", &temp), ("Setting", &t)]);
            }
            3 => {
                let verb = *["Mix", "Vortex", "Stir"].choose(self.rng).unwrap();
                let a = self.entity("Action", verb);
                let m = self.pick("Modifier", MODIFIERS);
                self.word("using");
                self.word("a");
                let d = self.pick("Device", DEVICES);
                self.event(&a, &[("Using", &d)]);
                self.relation("Mod-Link", &a, &m);
            }
            4 => {
                let a = self.entity("Action", "Resuspend");
                self.word("the");
                self.word("pellet");
                self.word("in");
                let amt = self.pick("Amount", AMOUNTS);
                let c = self.pick("Concentration", CONCENTRATIONS);
                let r = self.reagent();
                self.event(&a, &[("Acts-On", &r)]);
                self.relation("Measure", &r, &amt);
                self.relation("Measure", &r, &c);
            }
            5 => {
                let a = self.entity("Action", "Repeat");
                let n = self.pick("Numerical", NUMERICALS);
                self.word("times");
                self.relation("Count", &a, &n);
            }
            6 => {
                let a = self.entity("Action", "Transfer");
                self.word("the");
                let r1 = self.reagent();
                self.word("or");
                let r2 = self.reagent();
                self.word("into");
                self.word("a");
                let loc = self.pick("Location", LOCATIONS);
                self.event(&a, &[("Acts-On", &r1), ("Acts-On", &r2), ("Site", &loc)]);
                self.relation("Or", &r1, &r2);
            }
            7 => {
                let a = self.entity("Action", "Measure");
                self.word("the");
                let mt = self.pick("Measure-Type", MEASURE_TYPES);
                self.word("of");
                self.word("the");
                let r = self.reagent();
                self.event(&a, &[("Measure-Type-Link", &mt), ("Acts-On", &r)]);
            }
            8 => {
                let verb = *["Discard", "Remove", "Keep"].choose(self.rng).unwrap();
                let a = self.entity("Action", verb);
                self.word("the");
                let earlier = self.reagents.choose(self.rng).cloned();
                let m = self.entity("Mention", "it");
                self.event(&a, &[("Acts-On", &m)]);
                if let Some(r) = earlier {
                    self.relation("Coreference-Link", &m, &r);
                }
            }
            9 => {
                let a = self.entity("Action", "Label");
                self.word("the");
                let part = self.pick("Location", PARTS);
                self.word("of");
                self.word("each");
                let loc = self.pick("Location", LOCATIONS);
                self.event(&a, &[("Site", &part)]);
                self.relation("Meronym", &part, &loc);
            }
            10 => {
                let a = self.entity("Action", "Combine");
                let r1 = self.reagent();
                self.word("and");
                let r2 = self.reagent();
                self.word("to");
                self.word("make");
                let p = self.entity("Reagent", "the mix");
                self.reagents.push(p.clone());
                self.event(&a, &[("Acts-On", &r1), ("Acts-On", &r2), ("Product", &p)]);
            }
            _ => {
                let a = self.entity("Action", "Allow");
                self.word("the");
                let r = self.reagent();
                self.word("to");
                let a2 = self.entity("Action", "settle");
                self.word("in");
                self.word("a");
                let kind = *["glass", "plastic"].choose(self.rng).unwrap();
                let t = self.entity("Reagent", kind);
                let loc = self.pick("Location", LOCATIONS);
                self.event(&a, &[("Commands", &a2), ("Acts-On", &r)]);
                self.relation("Of-Type", &loc, &t);
            }
        }
        self.end_step();
    }

    fn finish(self) -> (String, String) {
        let mut ann = self.t_lines.join("\n");
        for l in &self.link_lines {
            ann.push('\n');
            ann.push_str(l);
        }
        ann.push('\n');
        (self.text, ann)
    }
}

/// Generate one protocol: a title line followed by annotated steps.
pub fn generate_protocol(
    rng: &mut ChaCha8Rng,
    doc_id: &str,
    config: &SynthConfig,
) -> SynthProtocol {
    let steps = rng.random_range(config.min_steps..=config.max_steps.max(config.min_steps));
    let mut b = Builder::new(rng, config.clone());
    b.word("Protocol");
    b.word(doc_id);
    b.append("\n");
    b.line_start = true;
    for _ in 0..steps {
        b.step();
    }
    let (text, ann) = b.finish();
    SynthProtocol {
        doc_id: doc_id.to_string(),
        text,
        ann,
    }
}

/// `n` protocols named `protocol_000` onward from one seed.
pub fn generate_corpus(seed: u64, n: usize, config: &SynthConfig) -> Vec<SynthProtocol> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| generate_protocol(&mut rng, &format!("protocol_{i:03}"), config))
        .collect()
}

pub fn write_corpus(dir: &Path, protocols: &[SynthProtocol]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for p in protocols {
        fs::write(dir.join(format!("{}.txt", p.doc_id)), &p.text)?;
        fs::write(dir.join(format!("{}.ann", p.doc_id)), &p.ann)?;
    }
    Ok(())
}

pub fn parse_all(protocols: &[SynthProtocol]) -> Result<Vec<Document>, ParseError> {
    protocols.iter().map(SynthProtocol::parse).collect()
}
