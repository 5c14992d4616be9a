#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geoseq/geometric.hpp"
#include "geoseq/sequent.hpp"

namespace geoseq {

// Finite Kripke model: worlds 0..n-1, a preorder `rel`, and a monotone
// valuation `val` (world -> set of atoms forced there).
struct KripkeModel {
    int n = 0;
    std::vector<std::vector<bool>> rel;
    std::vector<std::set<std::string>> val;

    bool related(int a, int b) const { return rel[a][b]; }
};

bool model_equal(const KripkeModel& a, const KripkeModel& b);
bool is_preorder(const KripkeModel& m);
bool is_monotone(const KripkeModel& m);

// Text format: "worlds: w0 w1; rel: w0<=w1; val: w0={}, w1={A}".
// The reflexive-transitive closure of `rel:` is implied.
KripkeModel parse_model(const std::string& text);
std::string render_model(const KripkeModel& m);

// Forcing relation (Kripke clauses; ~A abbreviates A -> bot).
bool forces(const KripkeModel& m, int w, const FormulaPtr& f);

// Frame-axiom check: every assignment of the universal variables that
// satisfies the hypothesis admits some alternative with an existential
// witness among the worlds.
bool check_frame(const KripkeModel& m, const GeometricImplication& gi);
bool check_frame_all(const KripkeModel& m, const std::vector<GeometricImplication>& gis);

// Validity of a labelled sequent: for every label assignment h consistent
// with the relational part, some antecedent member fails or some succedent
// member holds under h.
bool eval_labelled(const KripkeModel& m, const LabelledSequent& s);

// Validity of a simply labelled sequent / hypersequent: some component
// (label slice) has its antecedent conjunction not globally forced or its
// succedent disjunction globally forced.
bool eval_sls(const KripkeModel& m, const SimplyLabelledSequent& s,
              std::string* warning = nullptr);
bool eval_hypersequent(const KripkeModel& m, const Hypersequent& h);

// Enumerates every model with 1..max_worlds worlds (preorder frames,
// monotone valuations over `atoms`) satisfying all frame axioms. Enumeration
// cost is exponential; max_worlds is capped at 5.
void enumerate_models(int max_worlds, const std::vector<std::string>& atoms,
                      const std::vector<GeometricImplication>& frame,
                      const std::function<void(const KripkeModel&)>& cb);

struct Countermodel {
    KripkeModel model;
    std::map<Label, int> assignment; // labelled goals only; empty otherwise
};

std::optional<Countermodel> find_countermodel(const LabelledSequent& goal, int max_worlds,
                                              const std::vector<GeometricImplication>& frame);
std::optional<Countermodel> find_countermodel(const SimplyLabelledSequent& goal, int max_worlds,
                                              const std::vector<GeometricImplication>& frame);
std::optional<Countermodel> find_countermodel(const Hypersequent& goal, int max_worlds,
                                              const std::vector<GeometricImplication>& frame);

} // namespace geoseq
