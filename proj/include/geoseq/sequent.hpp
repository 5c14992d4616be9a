#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geoseq/formula.hpp"

namespace geoseq {

using Label = std::string;

// Relational atom x<=y between labels.
struct RelAtom {
    Label lo, hi;
    friend bool operator==(const RelAtom& a, const RelAtom& b) = default;
    friend auto operator<=>(const RelAtom& a, const RelAtom& b) = default;
};

struct LabelledFormula {
    Label lab;
    FormulaPtr f;
};

int lf_compare(const LabelledFormula& a, const LabelledFormula& b);
bool lf_equal(const LabelledFormula& a, const LabelledFormula& b);
bool lf_less(const LabelledFormula& a, const LabelledFormula& b);

// Multisets are kept as sorted vectors; all operations preserve sortedness.
template <typename T, typename Less>
void ms_insert(std::vector<T>& ms, T v, Less less) {
    ms.insert(std::upper_bound(ms.begin(), ms.end(), v, less), std::move(v));
}

template <typename T, typename Less>
bool ms_erase_one(std::vector<T>& ms, const T& v, Less less) {
    auto it = std::lower_bound(ms.begin(), ms.end(), v, less);
    if (it == ms.end() || less(v, *it)) return false;
    ms.erase(it);
    return true;
}

template <typename T, typename Less>
int ms_count(const std::vector<T>& ms, const T& v, Less less) {
    auto [lo, hi] = std::equal_range(ms.begin(), ms.end(), v, less);
    return static_cast<int>(hi - lo);
}

template <typename T, typename Less>
bool ms_contains(const std::vector<T>& ms, const T& v, Less less) {
    return ms_count(ms, v, less) > 0;
}

// Multiset difference a - b (removes one occurrence per occurrence in b).
template <typename T, typename Less>
std::vector<T> ms_diff(std::vector<T> a, const std::vector<T>& b, Less less) {
    for (const auto& v : b) ms_erase_one(a, v, less);
    return a;
}

template <typename T, typename Less>
std::vector<T> ms_union(std::vector<T> a, const std::vector<T>& b, Less less) {
    for (const auto& v : b) ms_insert(a, v, less);
    return a;
}

// Sub-multiset test: every element of a occurs in b with at least a's multiplicity.
template <typename T, typename Less>
bool ms_subset(const std::vector<T>& a, const std::vector<T>& b, Less less) {
    auto rest = b;
    for (const auto& v : a)
        if (!ms_erase_one(rest, v, less)) return false;
    return true;
}

inline bool rel_less(const RelAtom& a, const RelAtom& b) { return a < b; }

using RelMultiset = std::vector<RelAtom>;
using LfMultiset = std::vector<LabelledFormula>;
using FormulaMultiset = std::vector<FormulaPtr>;

void lfs_insert(LfMultiset& ms, LabelledFormula v);
bool lfs_erase_one(LfMultiset& ms, const LabelledFormula& v);
bool lfs_contains(const LfMultiset& ms, const LabelledFormula& v);
int lfs_count(const LfMultiset& ms, const LabelledFormula& v);
LfMultiset lfs_diff(const LfMultiset& a, const LfMultiset& b);
LfMultiset lfs_union(const LfMultiset& a, const LfMultiset& b);
bool lfs_subset(const LfMultiset& a, const LfMultiset& b);
bool lfs_equal(const LfMultiset& a, const LfMultiset& b);

void fs_insert(FormulaMultiset& ms, FormulaPtr v);
bool fs_erase_one(FormulaMultiset& ms, const FormulaPtr& v);
FormulaMultiset fs_diff(const FormulaMultiset& a, const FormulaMultiset& b);
FormulaMultiset fs_union(const FormulaMultiset& a, const FormulaMultiset& b);
bool fs_subset(const FormulaMultiset& a, const FormulaMultiset& b);
bool fs_equal(const FormulaMultiset& a, const FormulaMultiset& b);

// Labelled sequent  Σ ; Γ => Δ.
struct LabelledSequent {
    RelMultiset rels;
    LfMultiset ante, succ;
};
bool seq_equal(const LabelledSequent& a, const LabelledSequent& b);

// Simply labelled sequent  Γ => Δ (no relational part).
struct SimplyLabelledSequent {
    LfMultiset ante, succ;
};
bool seq_equal(const SimplyLabelledSequent& a, const SimplyLabelledSequent& b);

// One hypersequent component  Γ => Δ over plain formulas.
struct Component {
    FormulaMultiset ante, succ;
};
bool component_equal(const Component& a, const Component& b);

struct Hypersequent {
    std::vector<Component> comps;
};
bool hs_equal(const Hypersequent& a, const Hypersequent& b);

// All labels occurring anywhere, sorted and deduplicated.
std::vector<Label> labels_of(const LabelledSequent& s);
std::vector<Label> labels_of(const SimplyLabelledSequent& s);
std::vector<Label> labels_of_rels(const RelMultiset& rels);
std::vector<Label> labels_of_lfs(const LfMultiset& ms);

// Γ|x: the sub-multiset with label exactly x.
LfMultiset slice(const LfMultiset& ms, const Label& x);
// Same, with labels erased (sorted formula multiset).
FormulaMultiset erased_slice(const LfMultiset& ms, const Label& x);

// Smallest transitively closed superset, returned as a sorted set.
RelMultiset transitive_closure(const RelMultiset& rels);
// Successors {y : x<=y in rels} / predecessors {y : y<=x in rels}.
std::vector<Label> rel_successors(const RelMultiset& rels, const Label& x);
std::vector<Label> rel_predecessors(const RelMultiset& rels, const Label& x);

// True iff some injective relabelling pi of g1's labels makes pi(g1) a
// sub-multiset of g2; returns the witness when found.
bool subset_modulo_perm(const LfMultiset& g1, const LfMultiset& g2,
                        std::map<Label, Label>* witness = nullptr);

// Deterministic alpha-normal form with labels v0,v1,...; two sequents are
// equal modulo label permutation iff their canonical forms are equal.
SimplyLabelledSequent canonicalize_labels(const SimplyLabelledSequent& s);
LabelledSequent canonicalize_labels(const LabelledSequent& s);

// Lexicographically least label of the family w0,w1,... not in `used`.
Label fresh_label(const std::set<Label>& used);
std::set<Label> label_set(const LabelledSequent& s);
std::set<Label> label_set(const SimplyLabelledSequent& s);

// Hypersequent components become label slices v0,v1,... and back.
SimplyLabelledSequent hs_to_sls(const Hypersequent& h);
// Groups by label, one component per occurring label. An empty sequent yields
// one empty component and sets *warning (empty components carry no content).
Hypersequent sls_to_hs(const SimplyLabelledSequent& s, std::string* warning = nullptr);

LabelledSequent parse_labelled_sequent(const std::string& text);
SimplyLabelledSequent parse_sls_sequent(const std::string& text);
Hypersequent parse_hypersequent(const std::string& text);

std::string render_labelled_formula(const LabelledFormula& lf);
std::string render_sequent(const LabelledSequent& s);
std::string render_sequent(const SimplyLabelledSequent& s);
std::string render_hypersequent(const Hypersequent& h);
std::string render_sequent_latex(const LabelledSequent& s);
std::string render_sequent_latex(const SimplyLabelledSequent& s);
std::string render_hypersequent_latex(const Hypersequent& h);

} // namespace geoseq
