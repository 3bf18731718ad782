//! Regenerate the canonical fixture files. Run from the workspace root:
//!
//! ```text
//! cargo run -p rbhom-io --example gen_fixtures -- fixtures
//! ```
//!
//! Well-formed fixtures are emitted through the serializer, so they are
//! canonical by construction; the malformed set is written verbatim along
//! with the golden error listing produced by the parser.

use rbhom_core::linalg::Matrix;
use rbhom_core::sample;
use rbhom_core::table2;
use rbhom_io::ast::{Block, Document, FlagRowBlock, GridBlock, Spanned};
use std::path::Path;

fn sp(s: &str) -> Spanned<String> {
    Spanned::new(s.to_string())
}

fn write(path: &Path, content: &str) {
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    std::fs::write(path, content).unwrap();
    println!("wrote {}", path.display());
}

fn example_2_3(dir: &Path) {
    let r = sample::base_r();
    let mut doc = Document::empty();
    doc.blocks.push(Block::Semigroup(rbhom_io::semigroup_block("S", &r.semigroup)));
    doc.blocks.push(Block::Algebra(rbhom_io::algebra_block("R", &r, "S")));
    doc.blocks.push(Block::Algebra(rbhom_io::algebra_block("B", &sample::base_b(), "S")));
    doc.blocks.push(Block::Algebra(rbhom_io::algebra_block("E", &sample::algebra_e(), "S")));
    write(&dir.join("example_2_3.alg"), &rbhom_io::serialize(&doc));
}

fn direct_sum(dir: &Path) {
    let r = sample::base_r();
    let datum = sample::direct_sum_datum(&r, &sample::base_b());
    let mut doc = Document::empty();
    doc.blocks.push(Block::Semigroup(rbhom_io::semigroup_block("S", &r.semigroup)));
    doc.blocks.push(Block::Algebra(rbhom_io::algebra_block("R", &r, "S")));
    doc.blocks.push(Block::Datum(rbhom_io::datum_block("dsum", &datum, "R")));
    write(&dir.join("direct_sum.dat"), &rbhom_io::serialize(&doc));
}

fn row10(dir: &Path) {
    let r = sample::base_r();
    let mut doc = Document::empty();
    doc.blocks.push(Block::Semigroup(rbhom_io::semigroup_block("S", &r.semigroup)));
    doc.blocks.push(Block::Algebra(rbhom_io::algebra_block("R", &r, "S")));
    doc.blocks.push(Block::FlagRow(FlagRowBlock {
        name: sp("row10"),
        base: sp("R"),
        row: sp("10"),
    }));
    write(&dir.join("row10.dat"), &rbhom_io::serialize(&doc));
}

fn table3_grid(dir: &Path) {
    let r = sample::base_r();
    let zero = rbhom_core::Scalar::zero();
    let one = rbhom_core::Scalar::one();
    let neg_l = -&rbhom_core::Scalar::lambda();
    let zero_one = vec![zero.clone(), one.clone()];
    let mut doc = Document::empty();
    doc.blocks.push(Block::Semigroup(rbhom_io::semigroup_block("S", &r.semigroup)));
    doc.blocks.push(Block::Algebra(rbhom_io::algebra_block("R", &r, "S")));
    doc.blocks.push(Block::Grid(GridBlock {
        name: sp("patterns"),
        base: sp("R"),
        fields: vec![
            (sp("l"), None, zero_one.clone()),
            (sp("r"), None, zero_one.clone()),
            (sp("t_r"), None, zero_one.clone()),
            (sp("t_l"), None, zero_one),
            (sp("a1"), None, vec![zero.clone()]),
            (sp("k1"), None, vec![one.clone()]),
            (sp("b"), Some(sp("e")), vec![zero.clone()]),
            (sp("b"), Some(sp("s")), vec![zero.clone()]),
            (sp("k"), Some(sp("e")), vec![neg_l.clone()]),
            (sp("k"), Some(sp("s")), vec![neg_l]),
            (sp("a2"), None, vec![zero]),
            (sp("k2"), None, vec![one]),
        ],
    }));
    write(&dir.join("table3.grid"), &rbhom_io::serialize(&doc));
}

fn pair_1100(dir: &Path) {
    let pair = sample::pattern_pair((1, 1, 0, 0));
    let mut doc = Document::empty();
    doc.blocks.push(Block::Semigroup(rbhom_io::semigroup_block("S", &pair.r.semigroup)));
    doc.blocks.push(Block::Algebra(rbhom_io::algebra_block("R", &pair.r, "S")));
    doc.blocks.push(Block::Algebra(rbhom_io::algebra_block("B", &pair.v, "S")));
    doc.blocks.push(Block::Pair(rbhom_io::pair_block("mp", &pair, "R", "B")));
    write(&dir.join("pair_1100.pair"), &rbhom_io::serialize(&doc));
}

fn deform_case(dir: &Path) {
    let spec = table2::row_by_id("10").unwrap();
    let params: table2::Params = [
        ("k2".to_string(), rbhom_core::sample::q(1, 2)),
        ("tr".to_string(), rbhom_core::sample::int(3)),
    ]
    .into_iter()
    .collect();
    let datum = table2::instantiate_tuple(&table2::reference_base(), &spec.tuple, &params)
        .unwrap()
        .to_datum("e2");
    let dm = rbhom_core::deform::DeformationMap::new(
        datum.clone(),
        Matrix::from_cols(&[vec![rbhom_core::sample::int(-3)]]),
    )
    .unwrap();
    let mut doc = Document::empty();
    doc.blocks.push(Block::Semigroup(rbhom_io::semigroup_block("S", &datum.base.semigroup)));
    doc.blocks.push(Block::Algebra(rbhom_io::algebra_block("R", &datum.base, "S")));
    doc.blocks.push(Block::Datum(rbhom_io::datum_block("row10_half", &datum, "R")));
    doc.blocks.push(Block::Deformation(rbhom_io::deformation_block(
        "dmap",
        &dm,
        "row10_half",
    )));
    write(&dir.join("deform_case.dat"), &rbhom_io::serialize(&doc));
}

const MALFORMED: [(&str, &str); 20] = [
    ("m01.alg", "widget W { }\n"),
    ("m02.alg", "semigroup S\n  elements: e ;\n}\n"),
    ("m03.alg", "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n"),
    ("m04.alg", "semigroup S {\n  elements: e $ ;\n}\n"),
    ("m05.alg", "import \"other.alg\n"),
    ("m06.alg", "semigroup S {\n  elements: e\n  table: e*e = e ;\n}\n"),
    (
        "m07.alg",
        "semigroup S {\n  elements: e, e ;\n  table: e*e = e ;\n  table: e*e = e ;\n}\n",
    ),
    ("m08.alg", "semigroup S {\n  elements: e ;\n  table: e*x = e ;\n}\n"),
    ("m09.alg", "semigroup S {\n  elements: e, s ;\n  table: e*e = e ;\n}\n"),
    (
        "m10.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra A over QL weight l uses S {\n  dim: 2 ;\n  basis: e1 ;\n}\n",
    ),
    (
        "m11.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra A over QL weight l uses S {\n  dim: 2 ;\n  basis: e1, e2 ;\n  mul: e1*e1 = 1 e3 ;\n}\n",
    ),
    (
        "m12.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra A over QL weight l uses S {\n  dim: 1 ;\n  basis: e1 ;\n  P[z]: e1 -> 1 e1 ;\n}\n",
    ),
    ("m13.alg", "datum d base missing {\n  vdim: 1 ;\n  vbasis: v1 ;\n}\n"),
    (
        "m14.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra A over QL weight l^70 uses S {\n  dim: 1 ;\n  basis: e1 ;\n}\n",
    ),
    (
        "m15.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra A over QL weight (l)/(0) uses S {\n  dim: 1 ;\n  basis: e1 ;\n}\n",
    ),
    (
        "m16.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra A over QL weight 1/0 uses S {\n  dim: 1 ;\n  basis: e1 ;\n}\n",
    ),
    (
        "m17.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra A over QL weight l uses S {\n  dim: 1 ;\n  basis: l ;\n}\n",
    ),
    (
        "m18.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra S over QL weight l uses S {\n  dim: 1 ;\n  basis: e1 ;\n}\n",
    ),
    (
        "m19.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra A over QL weight l uses S {\n  dim: 1 ;\n  basis: e1 ;\n}\n\ndatum d base A {\n  vbasis: v1 ;\n}\n",
    ),
    (
        "m20.alg",
        "semigroup S {\n  elements: e ;\n  table: e*e = e ;\n}\n\nalgebra A over QL weight l uses S {\n  dim: 1 ;\n  basis: e1 ;\n  theta: e1 > 1 e1 ;\n}\n",
    ),
];

fn malformed(dir: &Path) {
    let mdir = dir.join("malformed");
    let mut golden = String::new();
    for (name, content) in MALFORMED {
        write(&mdir.join(name), content);
        let error = match rbhom_io::parse(content) {
            Err(e) => e.to_string(),
            Ok(doc) => match rbhom_io::resolve(&doc) {
                Err(e) => e.to_string(),
                Ok(_) => panic!("{name} unexpectedly parses and resolves"),
            },
        };
        golden.push_str(&format!("{name}: {error}\n"));
    }
    write(&mdir.join("expected.txt"), &golden);
}

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "fixtures".to_string());
    let dir = Path::new(&arg);
    example_2_3(dir);
    direct_sum(dir);
    row10(dir);
    table3_grid(dir);
    pair_1100(dir);
    deform_case(dir);
    malformed(dir);
}
