#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geoseq/sequent.hpp"

using namespace geoseq;

TEST_CASE("parse labelled sequent with relational part and greedy formula bodies") {
    LabelledSequent s = parse_labelled_sequent("x<=y ; x:A|B, x:B->C => x:A, y:C");
    REQUIRE(s.rels.size() == 1);
    CHECK(s.rels[0] == RelAtom{"x", "y"});
    REQUIRE(s.ante.size() == 2);
    // greedy body: "x:A|B" is x:(A|B)
    CHECK(lfs_contains(s.ante, {"x", parse_formula("A|B")}));
    CHECK(lfs_contains(s.ante, {"x", parse_formula("B->C")}));
    REQUIRE(s.succ.size() == 2);
    CHECK(lfs_contains(s.succ, {"x", parse_formula("A")}));
    CHECK(lfs_contains(s.succ, {"y", parse_formula("C")}));
}

TEST_CASE("parse simply labelled and hypersequent forms") {
    SimplyLabelledSequent s = parse_sls_sequent("=> x:A");
    CHECK(s.ante.empty());
    REQUIRE(s.succ.size() == 1);
    CHECK(s.succ[0].lab == "x");

    Hypersequent h = parse_hypersequent("A => B || => C");
    REQUIRE(h.comps.size() == 2);
    CHECK(h.comps[0].ante.size() == 1);
    CHECK(h.comps[0].succ.size() == 1);
    CHECK(h.comps[1].ante.empty());
    REQUIRE(h.comps[1].succ.size() == 1);
    CHECK(formula_equal(h.comps[1].succ[0], mk_atom("C")));
}

TEST_CASE("labelled parse errors") {
    CHECK_THROWS_AS(parse_labelled_sequent("x<=y x:A => x:A"), ParseError); // missing ';'
    CHECK_THROWS_AS(parse_labelled_sequent("x:A => x:A extra"), ParseError);
    CHECK_THROWS_AS(parse_sls_sequent("x<=y ; => x:A"), ParseError);
    CHECK_NOTHROW(parse_labelled_sequent("; x:A => x:A")); // empty relational part, explicit ';'
    CHECK_NOTHROW(parse_labelled_sequent("=>"));
    CHECK_NOTHROW(parse_labelled_sequent("x<=y ; =>"));
}

TEST_CASE("duplicates are kept: multiset semantics") {
    SimplyLabelledSequent s = parse_sls_sequent("x:A, x:A => x:A");
    CHECK(s.ante.size() == 2);
    CHECK(lfs_count(s.ante, {"x", mk_atom("A")}) == 2);
    LabelledSequent t = parse_labelled_sequent("x<=y, x<=y ; => x:A");
    CHECK(t.rels.size() == 2);
}

TEST_CASE("transitive closure") {
    RelMultiset r1 = {{"x", "y"}, {"y", "z"}};
    RelMultiset c1 = transitive_closure(r1);
    CHECK(c1 == RelMultiset{{"x", "y"}, {"x", "z"}, {"y", "z"}});

    CHECK(transitive_closure({}).empty());

    RelMultiset r2 = {{"x", "y"}, {"x", "z"}};
    CHECK(transitive_closure(r2) == r2); // already closed

    // a cycle closes into self-loops
    RelMultiset r3 = transitive_closure({{"x", "y"}, {"y", "x"}});
    CHECK(ms_contains(r3, RelAtom{"x", "x"}, rel_less));
    CHECK(ms_contains(r3, RelAtom{"y", "y"}, rel_less));

    // idempotence and monotonicity
    CHECK(transitive_closure(c1) == c1);
    CHECK(ms_subset(r1, c1, rel_less));

    CHECK(rel_successors(c1, "x") == std::vector<Label>{"y", "z"});
    CHECK(rel_predecessors(c1, "z") == std::vector<Label>{"x", "y"});
}

TEST_CASE("slices keep multiplicity and exact label") {
    LfMultiset ms;
    lfs_insert(ms, {"x", mk_atom("A")});
    lfs_insert(ms, {"y", mk_atom("A")});
    lfs_insert(ms, {"x", mk_atom("B")});
    LfMultiset sx = slice(ms, "x");
    CHECK(sx.size() == 2);
    CHECK(slice(LfMultiset{}, "x").empty());
    LfMultiset dup;
    lfs_insert(dup, {"x", mk_atom("A")});
    lfs_insert(dup, {"x", mk_atom("A")});
    CHECK(slice(dup, "x").size() == 2);
}

TEST_CASE("subset modulo permutation: pinned cases") {
    auto lfs = [](const std::string& text) {
        return parse_sls_sequent(text + " =>").ante;
    };
    std::map<Label, Label> pi;
    CHECK(subset_modulo_perm(lfs("x:A"), lfs("y:A, y:B"), &pi));
    CHECK(pi == std::map<Label, Label>{{"x", "y"}});

    CHECK(!subset_modulo_perm(lfs("x:A, x:B"), lfs("y:A, z:B")));

    CHECK(subset_modulo_perm(lfs("x:A, y:B"), lfs("u:B, v:A, v:C"), &pi));
    CHECK(pi == std::map<Label, Label>{{"x", "v"}, {"y", "u"}});
}

namespace {

std::size_t lfs_find_idx(const std::vector<Label>& labs, const Label& l) {
    return std::lower_bound(labs.begin(), labs.end(), l) - labs.begin();
}

// reference implementation: try every injective map from g1's labels into g2's
bool subset_brute(const LfMultiset& g1, const LfMultiset& g2) {
    std::vector<Label> l1 = labels_of_lfs(g1), l2 = labels_of_lfs(g2);
    if (l1.empty()) return true;
    if (l1.size() > l2.size()) return false;
    std::vector<int> choice(l1.size(), 0);
    std::function<bool(std::size_t, std::vector<bool>&)> go = [&](std::size_t i,
                                                                  std::vector<bool>& used) {
        if (i == l1.size()) {
            LfMultiset renamed;
            for (const auto& lf : g1) lfs_insert(renamed, {l2[choice[lfs_find_idx(l1, lf.lab)]], lf.f});
            return lfs_subset(renamed, g2);
        }
        for (std::size_t j = 0; j < l2.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            choice[i] = static_cast<int>(j);
            if (go(i + 1, used)) return true;
            used[j] = false;
        }
        return false;
    };
    std::vector<bool> used(l2.size(), false);
    return go(0, used);
}

std::mt19937 rng(987654);

LfMultiset random_lfs(int max_items, int max_labels) {
    static const std::vector<FormulaPtr> pool = {mk_atom("A"), mk_atom("B"), mk_atom("C"),
                                                 mk_neg(mk_atom("A"))};
    std::uniform_int_distribution<int> nitems(0, max_items);
    std::uniform_int_distribution<int> nf(0, static_cast<int>(pool.size()) - 1);
    std::uniform_int_distribution<int> nl(0, max_labels - 1);
    LfMultiset out;
    int n = nitems(rng);
    for (int i = 0; i < n; ++i)
        lfs_insert(out, {"l" + std::to_string(nl(rng)), pool[nf(rng)]});
    return out;
}

SimplyLabelledSequent random_sls(int max_items, int max_labels) {
    return {random_lfs(max_items, max_labels), random_lfs(max_items, max_labels)};
}

// exhaustive bijection search between the two label sets
bool alpha_equal_brute(const SimplyLabelledSequent& a, const SimplyLabelledSequent& b) {
    std::vector<Label> la = labels_of(a), lb = labels_of(b);
    if (la.size() != lb.size()) return false;
    std::sort(lb.begin(), lb.end());
    do {
        std::map<Label, Label> pi;
        for (std::size_t i = 0; i < la.size(); ++i) pi[la[i]] = lb[i];
        LfMultiset ra, rs;
        for (const auto& lf : a.ante) lfs_insert(ra, {pi[lf.lab], lf.f});
        for (const auto& lf : a.succ) lfs_insert(rs, {pi[lf.lab], lf.f});
        if (lfs_equal(ra, b.ante) && lfs_equal(rs, b.succ)) return true;
    } while (std::next_permutation(lb.begin(), lb.end()));
    return false;
}

} // namespace

TEST_CASE("subset modulo permutation agrees with brute force") {
    for (int t = 0; t < 500; ++t) {
        LfMultiset g1 = random_lfs(4, 3), g2 = random_lfs(5, 4);
        CHECK(subset_modulo_perm(g1, g2) == subset_brute(g1, g2));
        CHECK(subset_modulo_perm(g1, g1)); // reflexive
    }
}

TEST_CASE("canonicalize_labels pinned cases") {
    SimplyLabelledSequent s = canonicalize_labels(parse_sls_sequent("a:A => b:A"));
    CHECK(render_sequent(s) == "v0:A => v1:A");

    SimplyLabelledSequent once = canonicalize_labels(parse_sls_sequent("q:B, p:A =>"));
    CHECK(seq_equal(canonicalize_labels(once), once));

    auto c1 = canonicalize_labels(parse_sls_sequent("x:A, y:B =>"));
    auto c2 = canonicalize_labels(parse_sls_sequent("p:A, q:B =>"));
    CHECK(seq_equal(c1, c2));
    // crossed naming: still the same sequent modulo permutation
    auto c3 = canonicalize_labels(parse_sls_sequent("p:B, q:A =>"));
    CHECK(seq_equal(c1, c3));
}

TEST_CASE("canonicalize_labels equality coincides with bijection search") {
    for (int t = 0; t < 300; ++t) {
        SimplyLabelledSequent a = random_sls(4, 3), b = random_sls(4, 3);
        bool canon = seq_equal(canonicalize_labels(a), canonicalize_labels(b));
        CHECK_MESSAGE(canon == alpha_equal_brute(a, b), "on: ", render_sequent(a), "  vs  ",
                      render_sequent(b));
    }
}

TEST_CASE("hypersequent to sls and back") {
    SimplyLabelledSequent s = hs_to_sls(parse_hypersequent("A => B || => C"));
    CHECK(render_sequent(s) == "v0:A => v0:B, v1:C");

    Hypersequent rt = sls_to_hs(hs_to_sls(parse_hypersequent("A => B")));
    CHECK(render_hypersequent(rt) == "A => B");

    // the two-label unfolding regroups into a two-component hypersequent
    SimplyLabelledSequent unf =
        parse_sls_sequent("x:A|B, y:A|B, x:B->C, y:B->C => x:A, x:C, y:C");
    Hypersequent h = sls_to_hs(unf);
    CHECK(h.comps.size() == 2);
    CHECK(render_hypersequent(h) == "A | B, B -> C => A, C || A | B, B -> C => C");

    std::string warning;
    Hypersequent empty = sls_to_hs(parse_sls_sequent("=>"), &warning);
    CHECK(empty.comps.size() == 1);
    CHECK(!warning.empty());
}

TEST_CASE("hs_to_sls then sls_to_hs preserves the component multiset") {
    std::uniform_int_distribution<int> ncomp(1, 3);
    for (int t = 0; t < 200; ++t) {
        Hypersequent h;
        int n = ncomp(rng);
        for (int i = 0; i < n; ++i) {
            // keep every component nonempty so no grouping collapses
            Component c;
            fs_insert(c.ante, mk_atom("A" + std::to_string(t % 3)));
            if (t % 2) fs_insert(c.succ, mk_atom("B"));
            h.comps.push_back(c);
        }
        Hypersequent rt = sls_to_hs(hs_to_sls(h));
        REQUIRE(rt.comps.size() == h.comps.size());
        auto key = [](const Component& c) {
            return render_hypersequent(Hypersequent{{c}});
        };
        std::multiset<std::string> k1, k2;
        for (const auto& c : h.comps) k1.insert(key(c));
        for (const auto& c : rt.comps) k2.insert(key(c));
        CHECK(k1 == k2);
    }
}

TEST_CASE("render round-trips") {
    for (const char* text : {"x<=y ; => x:A", "=> x:A", "x:A => y:B", "=>",
                             "x<=y, y<=z ; x:(A -> B) => y:C, y:C"}) {
        LabelledSequent s = parse_labelled_sequent(text);
        CHECK(render_sequent(s) == text);
        CHECK(seq_equal(parse_labelled_sequent(render_sequent(s)), s));
    }
    for (const char* text : {"A => B || => C", "=> A | B", "A, B => || C =>"}) {
        Hypersequent h = parse_hypersequent(text);
        CHECK(render_hypersequent(h) == text);
        CHECK(hs_equal(parse_hypersequent(render_hypersequent(h)), h));
    }
}

TEST_CASE("property: parse after render is the identity on random sequents") {
    for (int t = 0; t < 300; ++t) {
        SimplyLabelledSequent s = random_sls(5, 3);
        CHECK(seq_equal(parse_sls_sequent(render_sequent(s)), s));
    }
}
