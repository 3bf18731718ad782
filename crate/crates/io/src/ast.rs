//! Syntax-level document model. Names are unresolved strings with source
//! positions; scalar literals are already exact field elements.

use rbhom_core::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Spanned<T> {
    pub value: T,
    pub line: usize,
    pub col: usize,
}

impl<T> Spanned<T> {
    pub fn new(value: T) -> Spanned<T> {
        Spanned { value, line: 0, col: 0 }
    }
}

/// Coefficient-name pair in a sum on the right of an entry.
pub type Item = (Scalar, Spanned<String>);

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub imports: Vec<Spanned<String>>,
    pub blocks: Vec<Block>,
}

impl Document {
    pub fn empty() -> Document {
        Document { imports: Vec::new(), blocks: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Block {
    Semigroup(SemigroupBlock),
    Algebra(AlgebraBlock),
    Datum(DatumBlock),
    Pair(PairBlock),
    Deformation(DeformationBlock),
    FlagRow(FlagRowBlock),
    Grid(GridBlock),
}

impl Block {
    pub fn name(&self) -> &Spanned<String> {
        match self {
            Block::Semigroup(b) => &b.name,
            Block::Algebra(b) => &b.name,
            Block::Datum(b) => &b.name,
            Block::Pair(b) => &b.name,
            Block::Deformation(b) => &b.name,
            Block::FlagRow(b) => &b.name,
            Block::Grid(b) => &b.name,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemigroupBlock {
    pub name: Spanned<String>,
    pub elements: Vec<Spanned<String>>,
    /// (left, right, product) element names.
    pub table: Vec<(Spanned<String>, Spanned<String>, Spanned<String>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraBlock {
    pub name: Spanned<String>,
    pub weight: Scalar,
    pub semigroup: Spanned<String>,
    pub dim: Spanned<usize>,
    pub basis: Vec<Spanned<String>>,
    /// mul: xi * xj = items
    pub mul: Vec<(Spanned<String>, Spanned<String>, Vec<Item>)>,
    /// theta: xi -> items
    pub theta: Vec<(Spanned<String>, Vec<Item>)>,
    /// `P[w]: xi -> items`
    pub ops: Vec<(Spanned<String>, Spanned<String>, Vec<Item>)>,
}

/// Datum tensor entry: keyword, optional operator tag, one or two
/// arguments, and the value sum.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorEntry {
    pub key: Spanned<String>,
    pub op: Option<Spanned<String>>,
    pub args: Vec<Spanned<String>>,
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DatumBlock {
    pub name: Spanned<String>,
    pub base: Spanned<String>,
    pub vdim: Spanned<usize>,
    pub vbasis: Vec<Spanned<String>>,
    pub entries: Vec<TensorEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairBlock {
    pub name: Spanned<String>,
    pub base: Spanned<String>,
    pub second: Spanned<String>,
    pub entries: Vec<TensorEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationBlock {
    pub name: Spanned<String>,
    pub datum: Spanned<String>,
    /// d: vp -> items
    pub entries: Vec<(Spanned<String>, Vec<Item>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlagRowBlock {
    pub name: Spanned<String>,
    pub base: Spanned<String>,
    pub row: Spanned<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridBlock {
    pub name: Spanned<String>,
    pub base: Spanned<String>,
    /// field name, optional operator tag, value list.
    pub fields: Vec<(Spanned<String>, Option<Spanned<String>>, Vec<Scalar>)>,
}
