#![allow(dead_code)]

use std::path::PathBuf;

use macl::frame::{Context, Mode, MultiAdjointFrame};
use rand::Rng;

pub const FRAMES: [&str; 9] = [
    "crisp_formal",
    "godel_formal",
    "lukasiewicz_formal",
    "mixed_formal",
    "mixed_property",
    "mixed_object",
    "boolean_formal",
    "boolean_property",
    "boolean_object",
];

/// Frame and context fixtures that belong together.
pub const PAIRS: [(&str, &str); 12] = [
    ("crisp_formal", "crisp_identity"),
    ("crisp_formal", "crisp_context"),
    ("godel_formal", "c3_context"),
    ("lukasiewicz_formal", "c3_context"),
    ("mixed_formal", "c3_context"),
    ("mixed_formal", "mixed_context"),
    ("mixed_property", "mixed_context"),
    ("mixed_object", "mixed_context"),
    ("mixed_object", "c3_context"),
    ("boolean_formal", "boolean_context"),
    ("boolean_property", "boolean_context"),
    ("boolean_object", "boolean_context"),
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn frame(name: &str) -> MultiAdjointFrame {
    MultiAdjointFrame::from_json(&read_fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn context(name: &str, frame: &MultiAdjointFrame) -> Context {
    Context::from_json(&read_fixture(name), frame).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every fixture frame under every mode whose role assignment it admits.
pub fn frames_all_modes() -> Vec<(String, MultiAdjointFrame)> {
    let mut out = Vec::new();
    for name in FRAMES {
        let f = frame(name);
        for mode in Mode::ALL {
            if let Ok(g) = f.with_mode(mode) {
                out.push((format!("{name}@{mode}"), g));
            }
        }
    }
    out
}

pub fn random_context<R: Rng>(rng: &mut R, frame: &MultiAdjointFrame, max_x: usize, max_y: usize) -> Context {
    let nx = rng.random_range(0..=max_x);
    let ny = rng.random_range(0..=max_y);
    let p = frame.p().elements().len();
    Context::new(
        (0..nx).map(|i| format!("x{i}")).collect(),
        (0..ny).map(|i| format!("y{i}")).collect(),
        (0..ny).map(|_| rng.random_range(1..=frame.len())).collect(),
        (0..nx * ny).map(|_| rng.random_range(0..p)).collect(),
    )
    .unwrap()
}

/// A crisp context as bitmasks: `rows[x]` is the set of objects related to `x`.
#[derive(Debug, Clone)]
pub struct Crisp {
    pub nx: usize,
    pub ny: usize,
    pub rows: Vec<u32>,
}

impl Crisp {
    pub fn random<R: Rng>(rng: &mut R, max: usize) -> Self {
        let nx = rng.random_range(0..=max);
        let ny = rng.random_range(0..=max);
        let rows = (0..nx).map(|_| rng.random_range(0..(1u32 << ny))).collect();
        Self { nx, ny, rows }
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn to_context(&self) -> Context {
        Context::new(
            (0..self.nx).map(|i| format!("x{i}")).collect(),
            (0..self.ny).map(|i| format!("y{i}")).collect(),
            vec![1; self.ny],
            (0..self.nx)
                .flat_map(|x| (0..self.ny).map(move |y| (x, y)))
                .map(|(x, y)| usize::from(self.related(x, y)))
                .collect(),
        )
        .unwrap()
    }

    fn all(n: usize) -> u32 {
        ((1u64 << n) - 1) as u32
    }

    /// Objects having every attribute in `a`.
    pub fn extent(&self, a: u32) -> u32 {
        (0..self.nx)
            .filter(|&x| a >> x & 1 == 1)
            .fold(Self::all(self.ny), |acc, x| acc & self.rows[x])
    }

    /// Attributes shared by every object in `b`.
    pub fn intent(&self, b: u32) -> u32 {
        (0..self.nx)
            .filter(|&x| self.rows[x] & b == b)
            .fold(0, |acc, x| acc | 1 << x)
    }

    /// Attributes related to some object in `b`.
    pub fn possibility(&self, b: u32) -> u32 {
        (0..self.nx)
            .filter(|&x| self.rows[x] & b != 0)
            .fold(0, |acc, x| acc | 1 << x)
    }

    /// Objects whose attributes all lie in `a`.
    pub fn necessity(&self, a: u32) -> u32 {
        (0..self.ny)
            .filter(|&y| (0..self.nx).all(|x| !self.related(x, y) || a >> x & 1 == 1))
            .fold(0, |acc, y| acc | 1 << y)
    }

    /// Attributes all of whose objects lie in `b`.
    pub fn attr_necessity(&self, b: u32) -> u32 {
        (0..self.nx)
            .filter(|&x| self.rows[x] & !b == 0)
            .fold(0, |acc, x| acc | 1 << x)
    }

    /// Objects related to some attribute in `a`.
    pub fn obj_possibility(&self, a: u32) -> u32 {
        (0..self.nx)
            .filter(|&x| a >> x & 1 == 1)
            .fold(0, |acc, x| acc | self.rows[x])
    }

    /// Classical concepts of each mode as `(attribute set, object set)`, with
    /// the fixed side ordered by inclusion (reverse inclusion for objects).
    pub fn concepts(&self, mode: Mode) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        match mode {
            Mode::Formal => {
                for a in 0..=Self::all(self.nx) {
                    let e = self.extent(a);
                    if self.intent(e) == a {
                        out.push((a, e));
                    }
                }
            }
            Mode::PropertyOriented => {
                for b in 0..=Self::all(self.ny) {
                    let a = self.possibility(b);
                    if self.necessity(a) == b {
                        out.push((a, b));
                    }
                }
            }
            Mode::ObjectOriented => {
                for b in 0..=Self::all(self.ny) {
                    let a = self.attr_necessity(b);
                    if self.obj_possibility(a) == b {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }
}

pub fn mask(values: &[String]) -> u32 {
    values.iter().enumerate().fold(0, |acc, (i, v)| {
        assert!(v == "0" || v == "1", "not a crisp value: {v}");
        acc | u32::from(v == "1") << i
    })
}
