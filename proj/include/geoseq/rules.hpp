#pragma once

#include <map>
#include <string>
#include <vector>

#include "geoseq/formula.hpp"
#include "geoseq/geometric.hpp"
#include "geoseq/sequent.hpp"

namespace geoseq {

// Structural rule over labelled sequents: the conclusion's relational part
// contains the pattern below, and premiss i extends it with added atoms,
// whose existential witnesses must be fresh.
struct LabelledRuleSchema {
    std::string name;
    std::vector<Label> uni_vars; // schematic labels, sorted
    RelMultiset conclusion_rels;
    struct Premiss {
        std::vector<Label> fresh;
        RelMultiset added_rels;
    };
    std::vector<Premiss> premisses;
};

// Structural rule over hypersequents: components carry multiset variables
// G_i/D_i (one pair per schematic label, index = position in the sorted
// label list) next to a shared context H. Each component remembers which
// labels it covers; a multi-label component is a merged cluster.
struct HsComponentPattern {
    std::vector<Label> labels;
    std::vector<int> ante, succ; // sorted, deduplicated variable indices

    bool operator==(const HsComponentPattern&) const = default;
};
struct HsRuleSchema {
    std::string name;
    std::vector<Label> principal_labels;
    std::vector<HsComponentPattern> conclusion;
    std::vector<std::vector<HsComponentPattern>> premisses;
    bool context_sharing = true; // H appears in every premiss
};

// The same rule over simply labelled sequents: per-label slice patterns with
// slice-completeness side conditions (the labels listed in
// ante_slice_complete/succ_slice_complete must not occur in the respective
// context). A side none of the premisses move is absorbed into the context.
struct SlsSlicePattern {
    std::vector<int> ante, succ;

    bool operator==(const SlsSlicePattern&) const = default;
};
struct SlsRuleSchema {
    std::string name;
    std::vector<Label> principal_labels;
    std::map<Label, SlsSlicePattern> conclusion;
    struct Premiss {
        std::map<Label, SlsSlicePattern> slices;
        std::vector<Label> fresh;       // labels that must not occur in the conclusion
        std::map<Label, Label> merged;  // vanished conclusion label -> representative
    };
    std::vector<Premiss> premisses;
    bool ante_absorbed = false;
    bool succ_absorbed = false;
    std::vector<Label> ante_slice_complete;
    std::vector<Label> succ_slice_complete;
};

LabelledRuleSchema to_labelled_rule(const GeometricImplication& gi, const std::string& name);
HsRuleSchema to_hypersequent_rule(const GeometricImplication& gi, const std::string& name);
SlsRuleSchema hs_rule_to_sls_rule(const HsRuleSchema& r);

struct RuleAnalysis {
    bool linear_conclusion; // no multiset variable occurs twice in the conclusion
};
RuleAnalysis analyze_rule(const HsRuleSchema& r);

std::string render_rule(const LabelledRuleSchema& r);
std::string render_rule(const HsRuleSchema& r);
std::string render_rule(const SlsRuleSchema& r);

// A logic = a name plus frame axioms plus the rules generated from them.
struct LogicSpec {
    std::string name;
    std::vector<GeometricImplication> axioms;
    std::vector<LabelledRuleSchema> labelled_rules;
    std::vector<HsRuleSchema> hs_rules;
    std::vector<SlsRuleSchema> sls_rules;
    FormulaPtr characteristic; // the formula the axiom class is known by; null if none
};

std::vector<std::string> builtin_logic_names();
LogicSpec builtin_logic(const std::string& name);
LogicSpec logic_from_axioms(const std::string& name,
                            const std::vector<GeometricImplication>& axioms);

} // namespace geoseq
