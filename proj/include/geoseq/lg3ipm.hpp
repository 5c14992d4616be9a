#pragma once

// Simply labelled sequent calculus engine: proof checking, bounded backward
// search, and the admissible-rule transforms used by the proof translation
// from the relational labelled calculus.
//
// Strict rule ids:
//   ax, l_bot, l_and, r_and, l_or, r_or, l_imp, r_imp
//   + the structural rules of the active logic (sls_rules), with "lin"
//     injected when use_lin is set and the logic does not already carry it
//   + "ec"/"ew": the simply labelled images of the hypersequent external
//     rules (duplicate one label's slices at a fresh label / drop one label's
//     slices), available only when the effective structural-rule set is
//     nonempty.  Without them the structural rules cannot engage a second
//     label from a single-label endsequent (every instance would have a
//     premise equal to its conclusion).
//
// Permissive mode additionally accepts explicit admissible-rule nodes:
//   weak        conclusion = premise plus some formulas
//   contr       conclusion = premise with one fewer copy of a formula
//   subst       conclusion = image of premise under the node's label map
//   l_imp_keep  left implication keeping the principal in both premises
//   r_imp_keep  right implication analysed at a fresh copy of the label
//   rc_imp      drops x:B from the succedent beside x:(B' -> B)
//   r_subset    drops x:A from the succedent beside y:A, provided the erased
//               antecedent slice of x is contained in that of y

#include "g3i.hpp"
#include "proof.hpp"
#include "rules.hpp"
#include "sequent.hpp"

#include <map>
#include <string>
#include <vector>

namespace geoseq {

// Structural rules in force for a logic: its own sls_rules, plus lin when
// requested and absent.
std::vector<SlsRuleSchema> effective_sls_rules(const LogicSpec& logic, bool use_lin);

// The lin schema itself (as generated for the linearity frame axiom).
const SlsRuleSchema& lin_sls_rule();

// ---- checking ----

CheckResult check_sls_proof(const SlsProofPtr& p, const LogicSpec& logic,
                            CheckMode mode, bool use_lin = true);

// ---- search ----

struct SlsRuleInstance {
    std::string rule;
    std::vector<SimplyLabelledSequent> premises;
    // Structural/ec instances record the schema-label assignment.
    std::map<std::string, std::string> subst;
};

// All backward-applicable strict-rule instances, in search order.  No-op
// instances (a premise equal to the conclusion up to duplicate copies) are
// skipped, as are left-implication instances already saturated in the goal.
std::vector<SlsRuleInstance> applicable_sls_rules(const SimplyLabelledSequent& s,
                                                  const LogicSpec& logic, bool use_lin);

struct SlsSearchResult {
    SearchStatus status = SearchStatus::exhausted;
    SlsProofPtr proof;      // set iff status == proved
    long long nodes = 0;    // sequents expanded
};

// Bounded backward search over the strict rules.  Every instance at a node is
// explored before the node is declared refuted, so `refuted` is an honest
// exhaustive refutation; label growth (ec, fresh-label structural rules) is
// bounded by b.max_labels and any skipped instance demotes `refuted` to
// `exhausted`.
SlsSearchResult prove_sls(const SimplyLabelledSequent& s, const LogicSpec& logic,
                          bool use_lin, const SearchBudget& b);

// ---- admissible-rule transforms ----
//
// Each returns a proof of the transformed endsequent that passes
// check_sls_proof(permissive).  Corner cases that the structural recursion
// cannot push through are resolved by a bounded strict re-search of the
// target sequent and, failing that, by an explicit permissive node; both
// fallbacks are counted in transform_stats so coverage gaps surface.

struct TransformStats {
    long long subst_fallbacks = 0;     // permissive subst nodes emitted
    long long rc_imp_fallbacks = 0;    // permissive rc_imp nodes emitted
    long long r_subset_fallbacks = 0;  // permissive r_subset nodes emitted
    long long research_rescues = 0;    // corner cases closed by re-search
};
TransformStats& transform_stats();
void reset_transform_stats();

// Apply a label substitution to a whole proof; labels introduced inside the
// proof are renamed apart from the substitution's range.
SlsProofPtr subst_sls_labels(const SlsProofPtr& p, const LogicSpec& logic, bool use_lin,
                             const std::map<Label, Label>& sub);

// Weakening as decoration: every sequent in the proof gains the additions.
SlsProofPtr weaken_sls(const SlsProofPtr& p, const LfMultiset& ante_add,
                       const LfMultiset& succ_add);

// Contraction: rewrite p into a proof of `target`, which must differ from
// p's endsequent only by dropping duplicate copies (same underlying set per
// side).
SlsProofPtr contract_sls_onto(const SlsProofPtr& p, const LogicSpec& logic, bool use_lin,
                              const SimplyLabelledSequent& target);
SlsProofPtr contract_sls(const SlsProofPtr& p, const LogicSpec& logic, bool use_lin,
                         const LabelledFormula& dup, bool in_succ);

// Inversions of the invertible logical rules (occ names the principal
// occurrence in p's endsequent).
SlsProofPtr invert_sls_l_and(const SlsProofPtr& p, const LabelledFormula& occ);
SlsProofPtr invert_sls_r_and(const SlsProofPtr& p, const LabelledFormula& occ, bool right_conjunct);
SlsProofPtr invert_sls_l_or(const SlsProofPtr& p, const LabelledFormula& occ, bool right_disjunct);
SlsProofPtr invert_sls_r_or(const SlsProofPtr& p, const LabelledFormula& occ);

// Drops a succedent bottom: from Γ => Δ, x:⊥ derive Γ => Δ.
SlsProofPtr r_bot_elim(const SlsProofPtr& p, const Label& x);

// Drops x:B beside x:(A->B) on the right: from Γ => Δ, x:B, x:(A->B) derive
// Γ => Δ, x:(A->B).
SlsProofPtr rc_imp(const SlsProofPtr& p, const LogicSpec& logic, bool use_lin,
                   const Label& x, const FormulaPtr& imp);

// Drops x:A beside y:A on the right (x != y), provided the erased antecedent
// slice of x is contained in that of y: from Γ => Δ, x:A, y:A derive
// Γ => Δ, y:A.  The _many form drops several such pairs in one traversal.
struct SubsetPair {
    Label x, y;
    FormulaPtr a;
};
SlsProofPtr r_subset_mp(const SlsProofPtr& p, const LogicSpec& logic, bool use_lin,
                        const Label& x, const Label& y, const FormulaPtr& a);
SlsProofPtr r_subset_mp_many(const SlsProofPtr& p, const LogicSpec& logic, bool use_lin,
                             std::vector<SubsetPair> pairs);

// ---- derived-rule constructors ----

// Explicit nodes for the kept-principal implication variants.
SlsProofPtr sls_l_imp_keep(const Label& x, const FormulaPtr& imp,
                           const SlsProofPtr& p0, const SlsProofPtr& p1);
SlsProofPtr sls_r_imp_keep(const Label& x, const FormulaPtr& imp, const Label& fresh_w,
                           const SlsProofPtr& q);

// Parallel disjunction analysis across several labels (uses lin): from
//   pa : x1:A,..,xn:A, Γ => Δ     pb : x1:B,..,xn:B, Γ => Δ
// derive x1:(A|B),..,xn:(A|B), Γ => Δ.
SlsProofPtr l_or_parallel(const std::vector<Label>& xs, const FormulaPtr& a, const FormulaPtr& b,
                          const SlsProofPtr& pa, const SlsProofPtr& pb);

// Parallel conjunction introduction: from
//   pa : Γ => Δ, x1:A,..,xn:A     pb : Γ => Δ, x1:B,..,xn:B
// derive Γ => Δ, x1:(A&B),..,xn:(A&B), provided the erased antecedent slice
// of each xi is contained in that of xn.
SlsProofPtr r_and_parallel(const std::vector<Label>& xs, const FormulaPtr& a, const FormulaPtr& b,
                           const SlsProofPtr& pa, const SlsProofPtr& pb,
                           const LogicSpec& logic, bool use_lin);

}  // namespace geoseq
