#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "geoseq/kripke.hpp"

using namespace geoseq;

// ---------------------------------------------------------------- axioms ---

static const char* kLin = "true => x<=y || y<=x";
static const char* kSym = "x<=y => y<=x";
static const char* kDir = "true => ex z. x<=z & y<=z";
static const char* kBd2 = "x<=y, y<=z => y<=x || z<=y";

TEST_CASE("frame axiom parsing: linearity") {
    GeometricImplication gi = parse_geometric(kLin);
    REQUIRE(gi.uni_vars == std::vector<Label>{"x", "y"});
    CHECK(gi.hypothesis.empty());
    REQUIRE(gi.alternatives.size() == 2);
    CHECK(gi.alternatives[0].ex_vars.empty());
    CHECK(gi.alternatives[0].atoms == RelMultiset{{"x", "y"}});
    CHECK(gi.alternatives[1].atoms == RelMultiset{{"y", "x"}});
    CHECK(render_geometric(gi) == kLin);
}

TEST_CASE("frame axiom parsing: symmetry") {
    GeometricImplication gi = parse_geometric(kSym);
    REQUIRE(gi.uni_vars == std::vector<Label>{"x", "y"});
    CHECK(gi.hypothesis == RelMultiset{{"x", "y"}});
    REQUIRE(gi.alternatives.size() == 1);
    CHECK(gi.alternatives[0].atoms == RelMultiset{{"y", "x"}});
    CHECK(render_geometric(gi) == kSym);
}

TEST_CASE("frame axiom parsing: directedness binds its witness") {
    GeometricImplication gi = parse_geometric(kDir);
    REQUIRE(gi.uni_vars == std::vector<Label>{"x", "y"}); // z is bound, not universal
    REQUIRE(gi.alternatives.size() == 1);
    CHECK(gi.alternatives[0].ex_vars == std::vector<Label>{"z"});
    CHECK(gi.alternatives[0].atoms == (RelMultiset{{"x", "z"}, {"y", "z"}}));
    CHECK(render_geometric(gi) == kDir);
}

TEST_CASE("frame axiom parsing: bounded depth 2") {
    GeometricImplication gi = parse_geometric(kBd2);
    REQUIRE(gi.uni_vars == std::vector<Label>{"x", "y", "z"});
    CHECK(gi.hypothesis == (RelMultiset{{"x", "y"}, {"y", "z"}}));
    REQUIRE(gi.alternatives.size() == 2);
    CHECK(gi.alternatives[0].atoms == RelMultiset{{"y", "x"}});
    CHECK(gi.alternatives[1].atoms == RelMultiset{{"z", "y"}});
    CHECK(render_geometric(gi) == kBd2);
}

TEST_CASE("frame axiom parsing: errors") {
    CHECK_THROWS_AS(parse_geometric("x<=y"), ParseError);           // missing =>
    CHECK_THROWS_AS(parse_geometric("x<=y => "), ParseError);       // empty alternative
    CHECK_THROWS_AS(parse_geometric("true => x<=y extra"), ParseError);
    CHECK_THROWS_AS(parse_geometric("true => ex . x<=y"), ParseError);
    CHECK_THROWS_AS(parse_geometric("x<=y => ex x. x<=y"), ParseError); // shadowing

    GeometricImplication bad;
    bad.uni_vars = {"x"};
    bad.alternatives.push_back({{}, {{"x", "u"}}}); // u undeclared
    CHECK_THROWS_AS(validate_geometric(bad), ParseError);
}

TEST_CASE("axiom files: one axiom per line, # comments") {
    auto gis = parse_axiom_file("# frame conditions\n" + std::string(kLin) + "\n\n  " + kSym +
                                " # inline note\n");
    REQUIRE(gis.size() == 2);
    CHECK(render_geometric(gis[0]) == kLin);
    CHECK(render_geometric(gis[1]) == kSym);
}

// ---------------------------------------------------------------- models ---

TEST_CASE("model text round trip") {
    KripkeModel m = parse_model("worlds: w0 w1; rel: w0<=w1; val: w0={}, w1={A}");
    REQUIRE(m.n == 2);
    CHECK(m.rel[0][0]); // reflexive closure implied
    CHECK(m.rel[1][1]);
    CHECK(m.rel[0][1]);
    CHECK_FALSE(m.rel[1][0]);
    CHECK(m.val[0].empty());
    CHECK(m.val[1] == std::set<std::string>{"A"});
    CHECK(is_preorder(m));
    CHECK(is_monotone(m));
    CHECK(render_model(m) == "worlds: w0 w1; rel: w0<=w1; val: w0={}, w1={A}");
    CHECK(model_equal(parse_model(render_model(m)), m));
}

TEST_CASE("model text implies transitive closure") {
    KripkeModel m = parse_model("worlds: a b c; rel: a<=b, b<=c; val: a={}, b={}, c={}");
    CHECK(m.rel[0][2]);
    CHECK(is_preorder(m));
}

TEST_CASE("model text rejects bad input") {
    CHECK_THROWS(parse_model("worlds: a b; rel: a<=b; val: a={A}, b={}")); // not monotone
    CHECK_THROWS(parse_model("worlds: a a; rel:; val: a={}"));             // duplicate world
    CHECK_THROWS(parse_model("worlds: a; rel: a<=b; val: a={}"));          // unknown world
    CHECK_THROWS(parse_model("worlds: ; rel:; val:"));                     // no worlds
}

TEST_CASE("model text defaults and separators") {
    KripkeModel m = parse_model("worlds: a b; rel:; val: b={A, B}");
    CHECK(m.val[0].empty()); // unlisted world gets the empty valuation
    CHECK(m.val[1] == (std::set<std::string>{"A", "B"}));
    CHECK_FALSE(m.rel[0][1]);
}

// --------------------------------------------------------------- forcing ---

static KripkeModel chain2() {
    return parse_model("worlds: w0 w1; rel: w0<=w1; val: w0={}, w1={A}");
}

TEST_CASE("forcing basics on one world") {
    KripkeModel m = parse_model("worlds: w; rel:; val: w={A}");
    CHECK(forces(m, 0, parse_formula("A")));
    CHECK_FALSE(forces(m, 0, parse_formula("B")));
    CHECK_FALSE(forces(m, 0, parse_formula("bot")));
    CHECK(forces(m, 0, parse_formula("top")));
    CHECK(forces(m, 0, parse_formula("A & top")));
    CHECK(forces(m, 0, parse_formula("B | A")));
}

TEST_CASE("forcing on the two-world chain refutes excluded middle") {
    KripkeModel m = chain2();
    CHECK_FALSE(forces(m, 0, parse_formula("A")));
    CHECK(forces(m, 1, parse_formula("A")));
    // ~A fails at w0 because the later world w1 forces A
    CHECK_FALSE(forces(m, 0, parse_formula("~A")));
    CHECK_FALSE(forces(m, 0, parse_formula("A | ~A")));
    CHECK(forces(m, 1, parse_formula("A | ~A")));
    // no reachable world forces ~A, so ~~A holds vacuously at w0
    CHECK(forces(m, 0, parse_formula("~~A")));
}

TEST_CASE("monotonicity persists from atoms to all formulas") {
    std::mt19937 rng(20260818);
    auto random_formula = [&](auto&& self, int depth) -> FormulaPtr {
        int pick = static_cast<int>(rng() % (depth <= 0 ? 2 : 6));
        switch (pick) {
        case 0: return mk_atom(rng() % 2 ? "A" : "B");
        case 1: return rng() % 2 ? mk_bot() : mk_top();
        case 2: return mk_and(self(self, depth - 1), self(self, depth - 1));
        case 3: return mk_or(self(self, depth - 1), self(self, depth - 1));
        default: return mk_imp(self(self, depth - 1), self(self, depth - 1));
        }
    };
    std::vector<FormulaPtr> fs;
    for (int i = 0; i < 25; ++i) fs.push_back(random_formula(random_formula, 4));
    int models = 0;
    enumerate_models(3, {"A", "B"}, {}, [&](const KripkeModel& m) {
        ++models;
        if (models % 7 != 0) return; // sample; the space is large
        for (const auto& f : fs)
            for (int x = 0; x < m.n; ++x)
                for (int y = 0; y < m.n; ++y)
                    if (m.rel[x][y] && forces(m, x, f)) CHECK(forces(m, y, f));
    });
    CHECK(models > 100);
}

// ---------------------------------------------------- labelled evaluation ---

TEST_CASE("labelled evaluation: identity sequents hold") {
    LabelledSequent s = parse_labelled_sequent("x:A => x:A");
    CHECK(eval_labelled(chain2(), s));
    CHECK(eval_labelled(parse_model("worlds: w; rel:; val: w={}"), s));
}

TEST_CASE("labelled evaluation: atoms persist along the relation") {
    LabelledSequent s = parse_labelled_sequent("x<=y ; x:A => y:A");
    enumerate_models(3, {"A"}, {},
                     [&](const KripkeModel& m) { CHECK(eval_labelled(m, s)); });
}

TEST_CASE("labelled evaluation: excluded middle fails on the chain") {
    LabelledSequent s = parse_labelled_sequent("=> x:(A | ~A)");
    CHECK_FALSE(eval_labelled(chain2(), s));
    // the violation is at w0; the assignment sending x to w1 satisfies it
    LabelledSequent at_w1 = parse_labelled_sequent("=> x:(A | ~A), x:B");
    CHECK_FALSE(eval_labelled(chain2(), at_w1)); // still refuted via w0
}

TEST_CASE("labelled evaluation: empty sequent is invalid") {
    LabelledSequent s = parse_labelled_sequent("=>");
    CHECK_FALSE(eval_labelled(chain2(), s));
}

// ------------------------------------------------ simply labelled / hyper ---

TEST_CASE("simply labelled evaluation basics") {
    SimplyLabelledSequent id = parse_sls_sequent("x:A => x:A");
    SimplyLabelledSequent bot = parse_sls_sequent("=> x:bot");
    enumerate_models(3, {"A"}, {}, [&](const KripkeModel& m) {
        CHECK(eval_sls(m, id));
        CHECK_FALSE(eval_sls(m, bot)); // top antecedent, bot succedent: never
    });
}

TEST_CASE("simply labelled evaluation: empty sequent warns and fails") {
    SimplyLabelledSequent s = parse_sls_sequent("=>");
    std::string warning;
    CHECK_FALSE(eval_sls(chain2(), s, &warning));
    CHECK(!warning.empty());
}

TEST_CASE("unfolded example sequent is valid in all small models") {
    SimplyLabelledSequent s = parse_sls_sequent(
        "x:(A | B), y:(A | B), x:(B -> C), y:(B -> C) => x:A, x:C, y:C");
    int models = 0;
    enumerate_models(3, {"A", "B", "C"}, {}, [&](const KripkeModel& m) {
        ++models;
        CHECK(eval_sls(m, s));
    });
    CHECK(models > 0);
}

TEST_CASE("hypersequent evaluation basics") {
    Hypersequent ok = parse_hypersequent("A => A || => B");
    Hypersequent empties = parse_hypersequent("=> || =>");
    enumerate_models(2, {"A", "B"}, {}, [&](const KripkeModel& m) {
        CHECK(eval_hypersequent(m, ok));
        CHECK_FALSE(eval_hypersequent(m, empties)); // empty components are never true
    });
}

TEST_CASE("hypersequent and slice evaluation agree through the translation") {
    std::mt19937 rng(7);
    auto rand_sls = [&]() {
        const char* labs[] = {"x", "y", "z"};
        const char* fs[] = {"A", "B", "A -> B", "A | B", "~A", "A & B", "bot"};
        SimplyLabelledSequent s;
        int na = 1 + rng() % 3, ns = rng() % 3;
        for (int i = 0; i < na; ++i)
            lfs_insert(s.ante, {labs[rng() % 3], parse_formula(fs[rng() % 7])});
        for (int i = 0; i < ns; ++i)
            lfs_insert(s.succ, {labs[rng() % 3], parse_formula(fs[rng() % 7])});
        return s;
    };
    std::vector<KripkeModel> ms;
    enumerate_models(2, {"A", "B"}, {}, [&](const KripkeModel& m) { ms.push_back(m); });
    for (int t = 0; t < 60; ++t) {
        SimplyLabelledSequent s = rand_sls();
        Hypersequent h = sls_to_hs(s, nullptr);
        for (const auto& m : ms) CHECK(eval_hypersequent(m, h) == eval_sls(m, s));
    }
}

// ---------------------------------------------------------- frame checks ---

static KripkeModel fork3() {
    return parse_model("worlds: r a b; rel: r<=a, r<=b; val: r={}, a={}, b={}");
}

TEST_CASE("frame checks on specific models") {
    KripkeModel one = parse_model("worlds: w; rel:; val: w={}");
    KripkeModel fork = fork3();
    KripkeModel chain = chain2();
    auto lin = parse_geometric(kLin);
    auto sym = parse_geometric(kSym);
    auto dir = parse_geometric(kDir);
    CHECK(check_frame(one, lin));
    CHECK(check_frame(one, sym));
    CHECK(check_frame(one, dir));
    CHECK(check_frame(chain, lin));
    CHECK_FALSE(check_frame(chain, sym));
    CHECK(check_frame(chain, dir));
    // the two leaves of the fork are incomparable and share no upper bound
    CHECK_FALSE(check_frame(fork, lin));
    CHECK_FALSE(check_frame(fork, dir));
    CHECK_FALSE(check_frame(fork, sym));
}

TEST_CASE("frame checks match hand-written relational predicates") {
    auto lin = parse_geometric(kLin);
    auto sym = parse_geometric(kSym);
    auto dir = parse_geometric(kDir);
    auto bd2 = parse_geometric(kBd2);
    enumerate_models(3, {}, {}, [&](const KripkeModel& m) {
        bool total = true, symmetric = true, directed = true, depth2 = true;
        for (int a = 0; a < m.n; ++a)
            for (int b = 0; b < m.n; ++b) {
                if (!m.rel[a][b] && !m.rel[b][a]) total = false;
                if (m.rel[a][b] && !m.rel[b][a]) symmetric = false;
                bool join = false;
                for (int c = 0; c < m.n; ++c)
                    if (m.rel[a][c] && m.rel[b][c]) join = true;
                if (!join) directed = false;
                for (int c = 0; c < m.n; ++c)
                    if (m.rel[a][b] && m.rel[b][c] && !m.rel[b][a] && !m.rel[c][b])
                        depth2 = false;
            }
        CHECK(check_frame(m, lin) == total);
        CHECK(check_frame(m, sym) == symmetric);
        CHECK(check_frame(m, dir) == directed);
        CHECK(check_frame(m, bd2) == depth2);
    });
}

// ----------------------------------------------------------- enumeration ---

TEST_CASE("enumeration counts on one world") {
    int with_atom = 0, without = 0;
    enumerate_models(1, {"A"}, {}, [&](const KripkeModel&) { ++with_atom; });
    enumerate_models(1, {}, {}, [&](const KripkeModel&) { ++without; });
    CHECK(with_atom == 2);
    CHECK(without == 1);
}

TEST_CASE("enumeration yields only valid, distinct models") {
    std::set<std::string> seen;
    enumerate_models(2, {"A"}, {}, [&](const KripkeModel& m) {
        CHECK(is_preorder(m));
        CHECK(is_monotone(m));
        CHECK(seen.insert(render_model(m)).second);
    });
    // 1 world: 2 valuations; 2 worlds: discrete 4, two chains 3 each, full 2
    CHECK(seen.size() == 2 + 4 + 3 + 3 + 2);
}

TEST_CASE("enumeration count under symmetry, cross-checked independently") {
    int streamed = 0;
    enumerate_models(2, {"A"}, {parse_geometric(kSym)},
                     [&](const KripkeModel&) { ++streamed; });

    // independent oracle: walk every reflexive-symmetric-transitive boolean
    // matrix on n <= 2 worlds and every monotone 1-atom valuation directly
    int direct = 0;
    for (int n = 1; n <= 2; ++n) {
        for (unsigned bits = 0; bits < (1u << (n * n)); ++bits) {
            auto at = [&](int i, int j) { return (bits >> (i * n + j)) & 1u; };
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                if (!at(i, i)) ok = false;
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n && ok; ++j) {
                    if (at(i, j) && !at(j, i)) ok = false;
                    for (int k = 0; k < n && ok; ++k)
                        if (at(i, j) && at(j, k) && !at(i, k)) ok = false;
                }
            if (!ok) continue;
            for (unsigned v = 0; v < (1u << n); ++v) {
                bool mono = true;
                for (int i = 0; i < n && mono; ++i)
                    for (int j = 0; j < n && mono; ++j)
                        if (at(i, j) && ((v >> i) & 1u) && !((v >> j) & 1u)) mono = false;
                if (mono) ++direct;
            }
        }
    }
    CHECK(streamed == direct);
    CHECK(streamed == 8); // 1 world: 2; 2 worlds: discrete 4 + cluster 2
}

// ----------------------------------------------------------- countermodels ---

TEST_CASE("countermodel: excluded middle gives the two-world chain") {
    auto r = find_countermodel(parse_labelled_sequent("=> x:(A | ~A)"), 2, {});
    REQUIRE(r.has_value());
    CHECK(render_model(r->model) == "worlds: w0 w1; rel: w0<=w1; val: w0={}, w1={A}");
    REQUIRE(r->assignment.count("x"));
    CHECK(r->assignment.at("x") == 0);
    CHECK_FALSE(eval_labelled(r->model, parse_labelled_sequent("=> x:(A | ~A)")));
}

TEST_CASE("countermodel: linearity formula gives the three-world fork") {
    LabelledSequent gd = parse_labelled_sequent("=> x:((A -> B) | (B -> A))");
    CHECK_FALSE(find_countermodel(gd, 2, {}).has_value()); // needs three worlds
    auto r = find_countermodel(gd, 3, {});
    REQUIRE(r.has_value());
    CHECK(render_model(r->model) ==
          "worlds: w0 w1 w2; rel: w0<=w1, w0<=w2; val: w0={}, w1={A}, w2={B}");
    CHECK(r->assignment.at("x") == 0);
    // on linear frames the formula is valid, so no countermodel exists
    CHECK_FALSE(find_countermodel(gd, 3, {parse_geometric(kLin)}).has_value());
}

TEST_CASE("countermodel: valid sequents have none") {
    CHECK_FALSE(find_countermodel(parse_labelled_sequent("x:A => x:A"), 3, {}).has_value());
    CHECK_FALSE(find_countermodel(parse_labelled_sequent("x<=y ; x:A => y:A"), 3, {}).has_value());
}

TEST_CASE("countermodel works for slice and hypersequent goals") {
    auto r = find_countermodel(parse_sls_sequent("=> x:bot"), 2, {});
    REQUIRE(r.has_value());
    CHECK(r->model.n == 1);
    CHECK(r->assignment.empty());
    auto h = find_countermodel(parse_hypersequent("=> A || => B"), 2, {});
    REQUIRE(h.has_value());
    CHECK_FALSE(find_countermodel(parse_hypersequent("A => A || => B"), 2, {}).has_value());
}
