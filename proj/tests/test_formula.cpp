#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geoseq/formula.hpp"

using namespace geoseq;

TEST_CASE("precedence: | binds tighter than ->") {
    FormulaPtr f = parse_formula("A | B -> C");
    REQUIRE(f->conn == Conn::Imp);
    CHECK(f->lhs->conn == Conn::Or);
    CHECK(f->lhs->lhs->atom == "A");
    CHECK(f->lhs->rhs->atom == "B");
    CHECK(f->rhs->atom == "C");
    CHECK(render_formula(f) == "A | B -> C");
}

TEST_CASE("negation desugars to implication into bot") {
    FormulaPtr f = parse_formula("~A");
    REQUIRE(f->conn == Conn::Imp);
    CHECK(f->lhs->atom == "A");
    CHECK(f->rhs->conn == Conn::Bot);
    CHECK(is_negation(f));
    CHECK(formula_equal(f, mk_neg(mk_atom("A"))));
    CHECK(render_formula(f) == "~A");
}

TEST_CASE("-> is right-associative, & and | left-associative") {
    FormulaPtr imp = parse_formula("A -> B -> C");
    REQUIRE(imp->conn == Conn::Imp);
    CHECK(imp->lhs->atom == "A");
    CHECK(imp->rhs->conn == Conn::Imp);

    FormulaPtr con = parse_formula("A & B & C");
    REQUIRE(con->conn == Conn::And);
    CHECK(con->lhs->conn == Conn::And);
    CHECK(con->rhs->atom == "C");

    FormulaPtr dis = parse_formula("A | B | C");
    REQUIRE(dis->conn == Conn::Or);
    CHECK(dis->lhs->conn == Conn::Or);
}

TEST_CASE("parenthesized implications inside disjunction") {
    FormulaPtr f = parse_formula("(A -> B) | (B -> A)");
    REQUIRE(f->conn == Conn::Or);
    CHECK(f->lhs->conn == Conn::Imp);
    CHECK(f->rhs->conn == Conn::Imp);
    CHECK(render_formula(f) == "(A -> B) | (B -> A)");
    CHECK(formula_equal(parse_formula(render_formula(f)), f));
}

TEST_CASE("keywords and identifiers") {
    CHECK(parse_formula("bot")->conn == Conn::Bot);
    CHECK(parse_formula("top")->conn == Conn::Top);
    FormulaPtr a = parse_formula("A1_x");
    CHECK(a->conn == Conn::Atom);
    CHECK(a->atom == "A1_x");
    // "bottom" is an ordinary atom, not the keyword plus trailing junk
    CHECK(parse_formula("bottom")->conn == Conn::Atom);
}

TEST_CASE("mixed negation precedence") {
    FormulaPtr f = parse_formula("~A & B");
    REQUIRE(f->conn == Conn::And);
    CHECK(is_negation(f->lhs));
    FormulaPtr g = parse_formula("~(A & B)");
    REQUIRE(is_negation(g));
    CHECK(g->lhs->conn == Conn::And);
    CHECK(render_formula(g) == "~(A & B)");
    FormulaPtr h = parse_formula("~~A");
    CHECK(is_negation(h));
    CHECK(is_negation(h->lhs));
    CHECK(render_formula(h) == "~~A");
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("A |"), ParseError);
    CHECK_THROWS_AS(parse_formula("(A"), ParseError);
    CHECK_THROWS_AS(parse_formula("A)"), ParseError);
    // "||" is not disjunction: it belongs to the geometric-axiom grammar
    CHECK_THROWS_AS(parse_formula("A || B"), ParseError);
}

TEST_CASE("total order and hash agree with equality") {
    FormulaPtr a = parse_formula("A -> B");
    FormulaPtr b = parse_formula("A -> B");
    FormulaPtr c = parse_formula("B -> A");
    CHECK(formula_equal(a, b));
    CHECK(formula_hash(a) == formula_hash(b));
    CHECK(!formula_equal(a, c));
    CHECK((formula_less(a, c) || formula_less(c, a)));
    CHECK(!formula_less(a, b));
    CHECK(!formula_less(b, a));
}

TEST_CASE("subformulas deduplicate") {
    FormulaPtr f = parse_formula("(A | B) -> (A | B)");
    CHECK(subformulas(f).size() == 4); // itself, A|B, A, B
    CHECK(formula_size(f) == 7);
    std::set<std::string> atoms;
    collect_atoms(f, atoms);
    CHECK(atoms == std::set<std::string>{"A", "B"});
}

TEST_CASE("latex rendering") {
    CHECK(render_formula_latex(parse_formula("~A")) == "\\neg A");
    CHECK(render_formula_latex(parse_formula("A & B -> C")) == "A \\land B \\supset C");
    CHECK(render_formula_latex(parse_formula("(A -> B) | C")) == "(A \\supset B) \\lor C");
}

namespace {

FormulaPtr random_formula(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> leaf(0, 3);
    std::uniform_int_distribution<int> node(0, 4);
    if (depth == 0 || node(rng) == 0) {
        switch (leaf(rng)) {
        case 0: return mk_atom("A");
        case 1: return mk_atom("B");
        case 2: return mk_atom("C");
        default: return mk_bot();
        }
    }
    switch (node(rng)) {
    case 1: return mk_and(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 2: return mk_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 3: return mk_imp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default: return mk_neg(random_formula(rng, depth - 1));
    }
}

} // namespace

TEST_CASE("property: parse after render is the identity") {
    std::mt19937 rng(20260818);
    for (int trial = 0; trial < 500; ++trial) {
        FormulaPtr f = random_formula(rng, 6);
        std::string text = render_formula(f);
        FormulaPtr g = parse_formula(text);
        CHECK_MESSAGE(formula_equal(f, g), "round-trip failed on: ", text);
    }
}
