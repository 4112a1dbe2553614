//! Vanishing verdicts from Teleman quantization, Serre duality and Euler
//! characteristics, and the answers they give to the collection questions.
//!
//! Cohomology of a bundle `F` is split into three buckets: `H⁰`, the middle
//! range `H¹ … H^{D−1}` and the top group `H^D`. The rules are applied in a
//! fixed order:
//!
//! 1. `TelemanDirect`: the Teleman inequality holds for `F` on every stratum,
//!    so the middle and top buckets vanish.
//! 2. `SerrePartner`: it holds for `F^∨(−rH)`, so by Serre duality `H⁰` and the
//!    middle bucket vanish.
//! 3. `ChiZero` / `ChiNonzero`: when exactly one of `H⁰` or `H^D` is left
//!    undecided, `χ(F)` equals its dimension up to sign.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::betti::hochschild_zero;
use crate::bundle::BundleExpression;
use crate::catalog::{self, Instance};
use crate::chow::HrrContext;
use crate::error::{Error, Result};
use crate::quiver::{
    canonical_stability, moduli_dimension, DimensionVector, Linearisation, Quiver, StabilityParameter,
};
use crate::teleman::TelemanContext;

/// What is known about a range of cohomology groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Vanishes,
    Nonzero,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Vanishes => "vanishes",
            Status::Nonzero => "nonzero",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// A rule that contributed to a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Evidence {
    TelemanDirect,
    SerrePartner,
    ChiZero,
    ChiNonzero,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Evidence::TelemanDirect => "teleman",
            Evidence::SerrePartner => "serre",
            Evidence::ChiZero => "chi=0",
            Evidence::ChiNonzero => "chi!=0",
        })
    }
}

/// The ranges a collection question can require to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Range {
    /// `H⁰`.
    H0,
    /// `H^{≥1}`.
    Higher,
    /// Every `H^k`.
    All,
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Range::H0 => "H^0",
            Range::Higher => "H^>=1",
            Range::All => "H^*",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingVerdict {
    pub bundle: BundleExpression,
    pub h0: Status,
    pub middle: Status,
    pub top: Status,
    pub evidence: Vec<Evidence>,
    /// Present when the `χ` rule was consulted.
    pub chi: Option<BigInt>,
}

impl VanishingVerdict {
    /// `H^{≥1}`: vanishes when the middle and top buckets do.
    pub fn higher(&self) -> Status {
        match (self.middle, self.top) {
            (Status::Vanishes, Status::Vanishes) => Status::Vanishes,
            (Status::Nonzero, _) | (_, Status::Nonzero) => Status::Nonzero,
            _ => Status::Inconclusive,
        }
    }

    pub fn all(&self) -> Status {
        match (self.h0, self.higher()) {
            (Status::Vanishes, Status::Vanishes) => Status::Vanishes,
            (Status::Nonzero, _) | (_, Status::Nonzero) => Status::Nonzero,
            _ => Status::Inconclusive,
        }
    }

    pub fn range(&self, r: Range) -> Status {
        match r {
            Range::H0 => self.h0,
            Range::Higher => self.higher(),
            Range::All => self.all(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Question {
    A,
    B,
    C,
    TheoremD,
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Question::A => "A",
            Question::B => "B",
            Question::C => "C",
            Question::TheoremD => "D",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Answer {
    Positive,
    Negative,
    Inconclusive,
}

impl Answer {
    /// Exit code convention: 0, 1, 2.
    pub fn exit_code(self) -> i32 {
        match self {
            Answer::Positive => 0,
            Answer::Negative => 1,
            Answer::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Positive => "positive",
            Answer::Negative => "negative",
            Answer::Inconclusive => "inconclusive",
        })
    }
}

/// One vanishing a question needs, with the verdict found for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Requirement {
    pub range: Range,
    pub verdict: VanishingVerdict,
}

impl Requirement {
    pub fn status(&self) -> Status {
        self.verdict.range(self.range)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionVerdict {
    pub question: Question,
    pub answer: Answer,
    /// The objects of the collection the question is about, in order.
    pub collection: Vec<String>,
    pub predicted_collection_length: usize,
    pub hh0: u64,
    /// The collection is longer than `HH₀` allows.
    pub hochschild_obstruction: bool,
    /// `min t* = r − 1` settled the question without any vanishing checks.
    pub by_theorem_d_criterion: bool,
    pub requirements: Vec<Requirement>,
}

/// Verdicts for one moduli problem, with shared Teleman data and a lazily
/// built Chow presentation.
pub struct SodContext {
    quiver: Quiver,
    d: DimensionVector,
    theta: StabilityParameter,
    a: Linearisation,
    teleman: TelemanContext,
    dimension: usize,
    hh0: u64,
    hrr: OnceLock<std::result::Result<HrrContext, Error>>,
    cache: Mutex<HashMap<BundleExpression, VanishingVerdict>>,
}

impl SodContext {
    pub fn new(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter, a: &Linearisation) -> Result<Self> {
        let teleman = TelemanContext::new(q, d, theta)?;
        if a.entries().len() != d.len() {
            return Err(Error::Length { expected: d.len(), got: a.entries().len() });
        }
        Ok(SodContext {
            quiver: q.clone(),
            d: d.clone(),
            theta: theta.clone(),
            a: a.clone(),
            dimension: moduli_dimension(q, d)?,
            hh0: hochschild_zero(q, d, theta)?,
            teleman,
            hrr: OnceLock::new(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_instance(inst: &Instance) -> Result<Self> {
        Self::new(&inst.quiver, &inst.d, &inst.theta, &inst.linearisation)
    }

    pub fn index(&self) -> i64 {
        self.teleman.index()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn hh0(&self) -> u64 {
        self.hh0
    }

    pub fn teleman(&self) -> &TelemanContext {
        &self.teleman
    }

    pub fn hrr(&self) -> Result<&HrrContext> {
        self.hrr
            .get_or_init(|| HrrContext::new(&self.quiver, &self.d, &self.theta, &self.a))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn teleman_holds(&self, f: &BundleExpression) -> Result<bool> {
        Ok(self.teleman.report(f, Some(&self.a))?.satisfied())
    }

    pub fn vanishing_verdict(&self, f: &BundleExpression) -> Result<VanishingVerdict> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(f) {
            return Ok(v.clone());
        }
        let v = self.compute_verdict(f)?;
        self.cache.lock().expect("cache lock").insert(f.clone(), v.clone());
        Ok(v)
    }

    fn compute_verdict(&self, f: &BundleExpression) -> Result<VanishingVerdict> {
        use Status::*;
        let dim = self.dimension;
        let mut v = VanishingVerdict {
            bundle: f.clone(),
            h0: Inconclusive,
            // no middle range below dimension 2, no higher range on a point
            middle: if dim <= 1 { Vanishes } else { Inconclusive },
            top: if dim == 0 { Vanishes } else { Inconclusive },
            evidence: Vec::new(),
            chi: None,
        };
        if self.teleman_holds(f)? {
            v.middle = Vanishes;
            v.top = Vanishes;
            v.evidence.push(Evidence::TelemanDirect);
        }
        if dim >= 1 && self.teleman_holds(&f.serre_partner(self.index()))? {
            v.h0 = Vanishes;
            v.middle = Vanishes;
            v.evidence.push(Evidence::SerrePartner);
        }
        let open_h0 = v.h0 == Inconclusive && v.middle == Vanishes && v.top == Vanishes;
        let open_top = v.top == Inconclusive && v.middle == Vanishes && v.h0 == Vanishes;
        if open_h0 || open_top {
            let chi = self.hrr()?.euler_characteristic(f)?;
            let status = if chi.is_zero() { Vanishes } else { Nonzero };
            v.evidence.push(if chi.is_zero() { Evidence::ChiZero } else { Evidence::ChiNonzero });
            if open_h0 {
                v.h0 = status;
            } else {
                v.top = status;
            }
            v.chi = Some(chi);
        }
        Ok(v)
    }

    fn objects(&self, twists: std::ops::Range<i64>, with_o: bool) -> Vec<String> {
        let n = self.quiver.vertex_count();
        let mut out = Vec::new();
        for s in twists {
            let tw = |base: String| if s == 0 { base } else { format!("{base}({s}H)") };
            if with_o {
                out.push(tw("O".into()));
            }
            for i in 1..=n {
                out.push(tw(format!("U{i}")));
            }
        }
        out
    }

    fn assemble(
        &self,
        question: Question,
        collection: Vec<String>,
        families: &[(BundleExpression, Range)],
    ) -> Result<QuestionVerdict> {
        let len = collection.len();
        let mut verdict = QuestionVerdict {
            question,
            answer: Answer::Inconclusive,
            collection,
            predicted_collection_length: len,
            hh0: self.hh0,
            hochschild_obstruction: len as u64 > self.hh0,
            by_theorem_d_criterion: false,
            requirements: Vec::new(),
        };
        if verdict.hochschild_obstruction {
            verdict.answer = Answer::Negative;
            return Ok(verdict);
        }
        for (f, range) in families {
            let v = self.vanishing_verdict(f)?;
            verdict.requirements.push(Requirement { range: *range, verdict: v });
        }
        let statuses: Vec<Status> = verdict.requirements.iter().map(Requirement::status).collect();
        verdict.answer = if statuses.contains(&Status::Nonzero) {
            Answer::Negative
        } else if statuses.iter().all(|s| *s == Status::Vanishes) {
            Answer::Positive
        } else {
            Answer::Inconclusive
        };
        Ok(verdict)
    }

    fn n(&self) -> usize {
        self.quiver.vertex_count()
    }

    fn families_a(&self) -> Vec<(BundleExpression, Range)> {
        (0..self.n()).map(|i| (BundleExpression::udual(i), Range::All)).collect()
    }

    fn families_b(&self) -> Vec<(BundleExpression, Range)> {
        let (n, r) = (self.n(), self.index());
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for s in 1..r {
                    out.push((BundleExpression::hom(i, j).twist(-s), Range::All));
                }
            }
        }
        for s in 1..r {
            out.push((BundleExpression::trivial().twist(-s), Range::All));
        }
        for i in 0..n {
            for s in 1..r {
                out.push((BundleExpression::u(i).twist(-s), Range::All));
            }
        }
        for i in 0..n {
            for t in 0..r {
                out.push((BundleExpression::udual(i).twist(-t), Range::All));
            }
        }
        out
    }

    /// `O, U₁, …, U_n` is exceptional: `H^*(U_i^∨) = 0` for every `i`.
    pub fn question_a(&self) -> Result<QuestionVerdict> {
        self.assemble(Question::A, self.objects(0..1, true), &self.families_a())
    }

    /// The `r` twisted copies of `O, U₁, …, U_n` form an exceptional
    /// collection. For `r = 1` this is question A.
    pub fn question_b(&self) -> Result<QuestionVerdict> {
        let r = self.index();
        if r == 1 {
            let mut v = self.question_a()?;
            v.question = Question::B;
            return Ok(v);
        }
        self.assemble(Question::B, self.objects(0..r, true), &self.families_b())
    }

    /// The collection of question B, or of question A when B is refuted or
    /// `r = 1`, is strongly exceptional.
    pub fn question_c(&self) -> Result<QuestionVerdict> {
        let (n, r) = (self.n(), self.index());
        let b = if r >= 2 { Some(self.question_b()?) } else { None };
        let use_b = matches!(&b, Some(v) if v.answer != Answer::Negative);
        let mut families;
        let collection;
        if use_b {
            collection = self.objects(0..r, true);
            families = self.families_b();
            for i in 0..n {
                for j in 0..n {
                    for s in 1..r {
                        families.push((BundleExpression::hom(i, j).twist(s), Range::Higher));
                    }
                }
            }
            for s in 1..r {
                families.push((BundleExpression::trivial().twist(s), Range::Higher));
            }
            for i in 0..n {
                for s in 1..r {
                    families.push((BundleExpression::udual(i).twist(s), Range::Higher));
                }
            }
            for i in 0..n {
                for t in 0..r {
                    families.push((BundleExpression::u(i).twist(t), Range::Higher));
                }
            }
        } else {
            collection = self.objects(0..1, true);
            families = self.families_a();
            for i in 0..n {
                families.push((BundleExpression::u(i), Range::Higher));
            }
        }
        self.assemble(Question::C, collection, &families)
    }

    /// The `r` twisted copies of `U₁, …, U_n` form a strongly exceptional
    /// collection. Decided by `min t* = r − 1` at the canonical stability
    /// parameter when that holds, otherwise by the vanishing checks.
    pub fn theorem_d(&self) -> Result<QuestionVerdict> {
        let (n, r) = (self.n(), self.index());
        let collection = self.objects(0..r, false);
        let canonical = canonical_stability(&self.quiver, &self.d)? == self.theta;
        if canonical && collection.len() as u64 <= self.hh0 && self.teleman.theorem_d_criterion()? {
            return Ok(QuestionVerdict {
                question: Question::TheoremD,
                answer: Answer::Positive,
                predicted_collection_length: collection.len(),
                collection,
                hh0: self.hh0,
                hochschild_obstruction: false,
                by_theorem_d_criterion: true,
                requirements: Vec::new(),
            });
        }
        let mut families = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for s in 1..r {
                    families.push((BundleExpression::hom(i, j).twist(-s), Range::All));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for s in 1..r {
                    families.push((BundleExpression::hom(i, j).twist(s), Range::Higher));
                }
            }
        }
        self.assemble(Question::TheoremD, collection, &families)
    }

    pub fn question(&self, q: Question) -> Result<QuestionVerdict> {
        match q {
            Question::A => self.question_a(),
            Question::B => self.question_b(),
            Question::C => self.question_c(),
            Question::TheoremD => self.theorem_d(),
        }
    }
}

pub fn vanishing_verdict(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
    a: &Linearisation,
    f: &BundleExpression,
) -> Result<VanishingVerdict> {
    SodContext::new(q, d, theta, a)?.vanishing_verdict(f)
}

pub fn question_a(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter, a: &Linearisation) -> Result<QuestionVerdict> {
    SodContext::new(q, d, theta, a)?.question_a()
}

pub fn question_b(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter, a: &Linearisation) -> Result<QuestionVerdict> {
    SodContext::new(q, d, theta, a)?.question_b()
}

pub fn question_c(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter, a: &Linearisation) -> Result<QuestionVerdict> {
    SodContext::new(q, d, theta, a)?.question_c()
}

/// Whether `H⁰(U_i^∨) = 0` for both vertices of the `m`-Kronecker moduli
/// space of dimension vector `(2, 3)` at the canonical stability parameter.
pub fn mkronecker_h0_condition(m: usize, a: &[i64]) -> Result<Answer> {
    if m < 3 {
        return Err(Error::Precondition(format!("the m-Kronecker condition needs m ≥ 3, got m = {m}")));
    }
    let mut inst = catalog::m_kronecker(m);
    inst.linearisation = Linearisation::new(a.to_vec(), &inst.d)?;
    let ctx = SodContext::from_instance(&inst)?;
    let mut answer = Answer::Positive;
    for i in 0..2 {
        match ctx.vanishing_verdict(&BundleExpression::udual(i))?.h0 {
            Status::Vanishes => {}
            Status::Nonzero => return Ok(Answer::Negative),
            Status::Inconclusive => answer = Answer::Inconclusive,
        }
    }
    Ok(answer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ctx(inst: &Instance) -> SodContext {
        SodContext::from_instance(inst).unwrap()
    }

    #[test]
    fn structure_sheaf_has_sections() {
        let c = ctx(&catalog::recurring_example());
        let v = c.vanishing_verdict(&BundleExpression::trivial()).unwrap();
        assert_eq!(v.h0, Status::Nonzero);
        assert_eq!(v.higher(), Status::Vanishes);
        assert_eq!(v.chi, Some(BigInt::from(1)));
    }

    #[test]
    fn recurring_example_verdicts() {
        let c = ctx(&catalog::recurring_example());
        for i in 0..2 {
            let v = c.vanishing_verdict(&BundleExpression::u(i).twist(-1)).unwrap();
            assert_eq!(v.all(), Status::Vanishes);
            assert_eq!(v.evidence[0], Evidence::TelemanDirect);
            let v = c.vanishing_verdict(&BundleExpression::udual(i).twist(-1)).unwrap();
            assert_eq!(v.all(), Status::Vanishes);
            assert!(v.evidence.contains(&Evidence::SerrePartner));
        }
        for q in [Question::A, Question::B, Question::C] {
            assert_eq!(c.question(q).unwrap().answer, Answer::Positive, "{q}");
        }
        assert_eq!(c.question_b().unwrap().predicted_collection_length, 9);
    }

    #[test]
    fn hochschild_gate() {
        let p1 = ctx(&catalog::projective_line());
        let a = p1.question_a().unwrap();
        assert_eq!(a.answer, Answer::Negative);
        assert!(a.hochschild_obstruction);
        assert_eq!((a.predicted_collection_length, a.hh0), (3, 2));
        let p2 = ctx(&catalog::del_pezzos()[0]);
        let b = p2.question_b().unwrap();
        assert_eq!((b.answer, b.predicted_collection_length, b.hh0), (Answer::Negative, 9, 3));
    }

    #[test]
    fn del_pezzos_answer_question_a() {
        for inst in catalog::del_pezzos() {
            let v = ctx(&inst).question_a().unwrap();
            assert_eq!(v.answer, Answer::Positive, "{}", inst.name);
            assert_eq!(v.predicted_collection_length as u64, v.hh0, "{}", inst.name);
        }
    }

    #[test]
    fn threefold_and_fivefold() {
        let c3 = ctx(&catalog::fano_threefold());
        assert_eq!(c3.question_a().unwrap().answer, Answer::Positive);
        assert_eq!(c3.question_b().unwrap().answer, Answer::Negative);
        let qc = c3.question_c().unwrap();
        assert_eq!((qc.answer, qc.predicted_collection_length), (Answer::Positive, 4));
        let c5 = ctx(&catalog::fano_fivefold());
        let b = c5.question_b().unwrap();
        assert_eq!((b.answer, b.predicted_collection_length, b.hh0), (Answer::Positive, 12, 12));
        assert_eq!(c5.question_c().unwrap().answer, Answer::Positive);
    }

    #[test]
    fn vanishing_implies_zero_euler_characteristic() {
        let c = ctx(&catalog::m_kronecker(3));
        for req in c.question_c().unwrap().requirements {
            if req.verdict.all() == Status::Vanishes {
                let chi = c.hrr().unwrap().euler_characteristic(&req.verdict.bundle).unwrap();
                assert!(chi.is_zero(), "{}", req.verdict.bundle);
            }
        }
    }

    #[test]
    fn m_kronecker_small_cases() {
        assert_eq!(mkronecker_h0_condition(3, &[2, -1]).unwrap(), Answer::Positive);
        assert!(mkronecker_h0_condition(2, &[2, -1]).is_err());
        let c = ctx(&catalog::m_kronecker(3));
        let qc = c.question_c().unwrap();
        assert_eq!((qc.answer, qc.predicted_collection_length), (Answer::Positive, 9));
        let d = c.theorem_d().unwrap();
        assert_eq!((d.answer, d.predicted_collection_length), (Answer::Positive, 6));
        assert!(!d.by_theorem_d_criterion);
    }
}
