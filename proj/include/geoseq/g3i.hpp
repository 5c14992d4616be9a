#pragma once

#include "proof.hpp"
#include "rules.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geoseq {

// Proof checking accepts either the primitive rules only (strict) or
// additionally explicit nodes for the admissible rules (permissive):
// weakening, contraction, cut and the two order rules l_mono/r_mono.
enum class CheckMode { strict, permissive };

struct CheckResult {
    bool ok = true;
    std::string error;     // first failing node, human-readable
    std::vector<int> path; // premise indices from the root to that node
};

struct SearchBudget {
    int max_depth = 50;
    int max_labels = 8;
    int max_sequent_size = 80;
};

// refuted = the strategy exhausted every applicable rule without a budget
// cutoff; exhausted = some branch hit max_depth/max_labels/max_sequent_size.
// Neither is a semantic non-derivability certificate for this calculus.
enum class SearchStatus { proved, refuted, exhausted };

struct SearchResult {
    SearchStatus status = SearchStatus::exhausted;
    ProofPtr proof;    // set iff status == proved
    long long nodes = 0;
};

// Relational parts are treated with set semantics throughout the engine.
RelMultiset rel_set(RelMultiset rels);
RelMultiset rel_set_union(RelMultiset a, const RelMultiset& b);
bool rel_member(const RelMultiset& rels, const RelAtom& r);
LabelledSequent normalize_sequent(LabelledSequent s);

// Rule ids: ax, l_bot, l_and, r_and, l_or, r_or, l_imp, r_imp, refl, trans,
// the names of logic.labelled_rules, and (permissive) weak, contr, cut,
// l_mono, r_mono.
CheckResult check_proof(const ProofPtr& p, const LogicSpec& logic, CheckMode mode);

// Backward saturation search: closure rules first, then invertible logical
// rules, then refl/trans saturation, then l_imp/r_imp, then the geometric
// rules; loops are pruned on label-canonical set-collapsed forms.
SearchResult prove(const LabelledSequent& s, const LogicSpec& logic, const SearchBudget& b);

// All backward-applicable rule instances at s, as (rule id, instantiated
// premises, subst witness); used by the search and exposed for inspection.
struct RuleInstance {
    std::string rule;
    std::vector<LabelledSequent> premises;
    std::map<std::string, std::string> subst;
};
std::vector<RuleInstance> applicable_rules(const LabelledSequent& s, const LogicSpec& logic);

// Renames every label through sub (labels missing from sub stay fixed).
// Internal fresh labels are renamed apart first, so capture cannot occur; the
// result proves the renamed endsequent and preserves checkability.
ProofPtr subst_labels_proof(const ProofPtr& p, const std::map<Label, Label>& sub);

// Admissible weakening, implemented by decoration: no explicit weak nodes are
// introduced, so strict proofs stay strict.
ProofPtr weaken_proof_rel(const ProofPtr& p, const RelAtom& r);
ProofPtr weaken_proof(const ProofPtr& p, const LabelledFormula& lf, bool in_succ);

// Admissible contraction: removes one of (at least) two occurrences of lf on
// the given side, by the usual permutation/inversion argument. Strictness is
// preserved. Throws std::invalid_argument if lf does not occur twice.
ProofPtr contract_proof(const ProofPtr& p, const LabelledFormula& lf, bool in_succ);

// Inversions (height-preserving up to decoration); each returns a proof of
// the inverted sequent. `occ` names the occurrence to invert.
ProofPtr invert_l_and(const ProofPtr& p, const LabelledFormula& occ);
ProofPtr invert_r_and(const ProofPtr& p, const LabelledFormula& occ, bool right_conjunct);
ProofPtr invert_l_or(const ProofPtr& p, const LabelledFormula& occ, bool right_disjunct);
ProofPtr invert_r_or(const ProofPtr& p, const LabelledFormula& occ);
ProofPtr invert_r_imp(const ProofPtr& p, const LabelledFormula& occ, const Label& fresh);

// Derivation of x<=y ; x:A => y:A (monotonicity along the order), strict.
// A must be top-free: the calculus has no rules for the verum constant.
ProofPtr mono_proof(const Label& x, const Label& y, const FormulaPtr& a);

// The admissible order rules, realized with an explicit cut against
// mono_proof, so the output checks in permissive mode.
//   left:  from  x<=y,S ; G, x:A, y:A => D   conclude  x<=y,S ; G, x:A => D
//   right: from  x<=y,S ; G => D, x:A, y:A   conclude  x<=y,S ; G => D, y:A
// If a is null the first matching formula is used.
enum class RelRuleKind { left, right };
ProofPtr derived_rel_rule(const ProofPtr& p, RelRuleKind kind, const RelAtom& rel,
                          FormulaPtr a = nullptr);

} // namespace geoseq
