#include "geoseq/lg3ipm.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace geoseq {

namespace {

int seq_size(const SimplyLabelledSequent& s) {
    return static_cast<int>(s.ante.size() + s.succ.size());
}

bool is_proper_atom(const FormulaPtr& f) { return f->conn == Conn::Atom; }

LfMultiset lfs_plus(LfMultiset ms, const LabelledFormula& lf) {
    lfs_insert(ms, lf);
    return ms;
}

LfMultiset lfs_minus(LfMultiset ms, const LabelledFormula& lf) {
    bool ok = lfs_erase_one(ms, lf);
    assert(ok);
    (void)ok;
    return ms;
}

// Distinct labelled formulas of ms whose formula has the given connective.
std::vector<LabelledFormula> distinct_with_conn(const LfMultiset& ms, Conn c) {
    std::vector<LabelledFormula> out;
    for (const auto& lf : ms) {
        if (lf.f->conn != c) continue;
        if (!out.empty() && lf_equal(out.back(), lf)) continue; // ms is sorted
        out.push_back(lf);
    }
    return out;
}

Label map_label(const std::map<Label, Label>& sub, const Label& l) {
    auto it = sub.find(l);
    return it == sub.end() ? l : it->second;
}

LfMultiset map_lfs(const LfMultiset& ms, const std::map<Label, Label>& sub) {
    LfMultiset out;
    for (const auto& lf : ms) lfs_insert(out, {map_label(sub, lf.lab), lf.f});
    return out;
}

SimplyLabelledSequent map_sls(const SimplyLabelledSequent& s, const std::map<Label, Label>& sub) {
    return {map_lfs(s.ante, sub), map_lfs(s.succ, sub)};
}

SimplyLabelledSequent set_collapse(const SimplyLabelledSequent& s) {
    SimplyLabelledSequent t;
    for (const auto& lf : s.ante)
        if (!lfs_contains(t.ante, lf)) lfs_insert(t.ante, lf);
    for (const auto& lf : s.succ)
        if (!lfs_contains(t.succ, lf)) lfs_insert(t.succ, lf);
    return t;
}

bool sls_equal(const SimplyLabelledSequent& a, const SimplyLabelledSequent& b) {
    return lfs_equal(a.ante, b.ante) && lfs_equal(a.succ, b.succ);
}

// ---------------------------------------------------------------------------
// Structural-rule instantiation, shared by the checker and the search. The
// freshness side conditions (x,y # Γ',Δ') mean that for every principal label
// the named multiset variables capture the label's whole slice, so the
// variable values can be solved from the conclusion's slices.
// ---------------------------------------------------------------------------

struct SchemaAssignment {
    std::map<Label, Label> sigma;             // schema label -> actual label
    std::map<int, FormulaMultiset> ante_vars; // solved antecedent variables
    std::map<int, FormulaMultiset> succ_vars; // solved succedent variables
};

// Solves the variables of one side from the conclusion slices, triangular
// fixpoint: repeatedly pick a principal label whose pattern has at most one
// unsolved variable.
bool solve_side(const SlsRuleSchema& r, const SimplyLabelledSequent& s, bool ante_side,
                SchemaAssignment& out) {
    const auto& complete = ante_side ? r.ante_slice_complete : r.succ_slice_complete;
    auto& vals = ante_side ? out.ante_vars : out.succ_vars;
    std::set<Label> pending(complete.begin(), complete.end());
    bool progress = true;
    while (!pending.empty() && progress) {
        progress = false;
        for (auto it = pending.begin(); it != pending.end();) {
            const Label& v = *it;
            const auto& pat = ante_side ? r.conclusion.at(v).ante : r.conclusion.at(v).succ;
            std::vector<int> unknown;
            FormulaMultiset known;
            for (int var : pat) {
                auto kv = vals.find(var);
                if (kv == vals.end())
                    unknown.push_back(var);
                else
                    known = fs_union(known, kv->second);
            }
            if (unknown.size() > 1) {
                ++it;
                continue;
            }
            FormulaMultiset target =
                erased_slice(ante_side ? s.ante : s.succ, out.sigma.at(v));
            if (!fs_subset(known, target)) return false;
            if (unknown.empty()) {
                if (!fs_equal(known, target)) return false;
            } else {
                vals[unknown[0]] = fs_diff(target, known);
            }
            it = pending.erase(it);
            progress = true;
        }
    }
    return pending.empty();
}

bool solve_schema(const SlsRuleSchema& r, const SimplyLabelledSequent& s,
                  SchemaAssignment& out) {
    return solve_side(r, s, true, out) && solve_side(r, s, false, out);
}

// Builds the premise sequents of a solved instance. Context formulas at
// non-principal labels carry over; a principal label's slice on a
// slice-complete side is regenerated from the patterns, while on an absorbed
// side it carries over (following the premiss's label merges).
std::vector<SimplyLabelledSequent> build_premises(const SlsRuleSchema& r,
                                                  const SchemaAssignment& a,
                                                  const SimplyLabelledSequent& s) {
    std::map<Label, Label> inv; // actual principal label -> schema label
    for (const auto& v : r.principal_labels) inv[a.sigma.at(v)] = v;
    std::set<Label> ante_complete(r.ante_slice_complete.begin(), r.ante_slice_complete.end());
    std::set<Label> succ_complete(r.succ_slice_complete.begin(), r.succ_slice_complete.end());

    std::vector<SimplyLabelledSequent> prems;
    for (const auto& pi : r.premisses) {
        SimplyLabelledSequent prem;
        auto carry = [&](const LfMultiset& src, LfMultiset& dst, const std::set<Label>& complete) {
            for (const auto& lf : src) {
                auto iv = inv.find(lf.lab);
                if (iv == inv.end()) {
                    lfs_insert(dst, lf);
                    continue;
                }
                const Label& v = iv->second;
                if (complete.count(v)) continue; // regenerated from patterns
                auto mg = pi.merged.find(v);
                Label dest = mg == pi.merged.end() ? lf.lab : a.sigma.at(mg->second);
                lfs_insert(dst, {dest, lf.f});
            }
        };
        carry(s.ante, prem.ante, ante_complete);
        carry(s.succ, prem.succ, succ_complete);
        for (const auto& [v, pat] : pi.slices) {
            const Label& actual = a.sigma.at(v);
            for (int var : pat.ante)
                for (const auto& f : a.ante_vars.at(var)) lfs_insert(prem.ante, {actual, f});
            for (int var : pat.succ)
                for (const auto& f : a.succ_vars.at(var)) lfs_insert(prem.succ, {actual, f});
        }
        prems.push_back(std::move(prem));
    }
    return prems;
}

} // namespace

// ---------------------------------------------------------------------------
// Effective rule set
// ---------------------------------------------------------------------------

const SlsRuleSchema& lin_sls_rule() {
    static const SlsRuleSchema rule = [] {
        for (const auto& r : builtin_logic("gd").sls_rules)
            if (r.name == "lin") return r;
        throw std::logic_error("gd logic lacks the lin rule");
    }();
    return rule;
}

std::vector<SlsRuleSchema> effective_sls_rules(const LogicSpec& logic, bool use_lin) {
    std::vector<SlsRuleSchema> rules = logic.sls_rules;
    if (use_lin) {
        bool have = false;
        for (const auto& r : rules) have = have || r.name == "lin";
        if (!have) rules.push_back(lin_sls_rule());
    }
    return rules;
}

// ---------------------------------------------------------------------------
// Proof checking
// ---------------------------------------------------------------------------

namespace {

struct SlsChecker {
    const LogicSpec& logic;
    CheckMode mode;
    bool use_lin;
    std::vector<SlsRuleSchema> structural;
    CheckResult result;

    SlsChecker(const LogicSpec& l, CheckMode m, bool lin)
        : logic(l), mode(m), use_lin(lin), structural(effective_sls_rules(l, lin)) {}

    bool fail(const std::vector<int>& path, const std::string& rule, const std::string& why) {
        result.ok = false;
        result.path = path;
        result.error = "rule '" + rule + "': " + why;
        return false;
    }

    const SlsRuleSchema* find_structural(const std::string& name) const {
        for (const auto& r : structural)
            if (r.name == name) return &r;
        return nullptr;
    }

    static bool check_ax(const SimplyLabelledSequent& c) {
        for (const auto& lf : c.ante)
            if (is_proper_atom(lf.f) && lfs_contains(c.succ, lf)) return true;
        return false;
    }

    static bool check_l_bot(const SimplyLabelledSequent& c) {
        for (const auto& lf : c.ante)
            if (lf.f->conn == Conn::Bot) return true;
        return false;
    }

    bool check_structural(const SlsProofPtr& p, const SlsRuleSchema& r,
                          const std::vector<int>& path) {
        const SimplyLabelledSequent& c = p->conclusion;
        if (p->premises.size() != r.premisses.size())
            return fail(path, p->rule, "expected " + std::to_string(r.premisses.size()) +
                                           " premisses, got " +
                                           std::to_string(p->premises.size()));
        std::set<Label> concl_labels = label_set(c);
        // fresh-label candidates: premise labels outside the conclusion
        std::set<Label> fresh_cands;
        for (const auto& q : p->premises)
            for (const auto& l : labels_of(q->conclusion))
                if (!concl_labels.count(l)) fresh_cands.insert(l);

        auto try_sigma = [&](std::map<Label, Label> sigma) -> bool {
            // enumerate images for the fresh labels of each premiss
            std::vector<Label> fresh_schema;
            for (const auto& pi : r.premisses)
                for (const auto& fv : pi.fresh) fresh_schema.push_back(fv);
            std::vector<Label> cands(fresh_cands.begin(), fresh_cands.end());
            std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
                if (i == fresh_schema.size()) {
                    SchemaAssignment a{sigma, {}, {}};
                    if (!solve_schema(r, c, a)) return false;
                    auto expected = build_premises(r, a, c);
                    for (std::size_t k = 0; k < expected.size(); ++k)
                        if (!sls_equal(expected[k], p->premises[k]->conclusion)) return false;
                    return true;
                }
                for (const auto& l : cands) {
                    bool used = false;
                    for (const auto& [sv, al] : sigma) used = used || al == l;
                    if (used) continue;
                    sigma[fresh_schema[i]] = l;
                    if (go(i + 1)) return true;
                    sigma.erase(fresh_schema[i]);
                }
                return false;
            };
            return go(0);
        };

        // substitution hint first, then exhaustive assignment of principals
        {
            std::map<Label, Label> sigma;
            bool complete = true;
            for (const auto& v : r.principal_labels) {
                auto it = p->subst.find(v);
                if (it == p->subst.end()) {
                    complete = false;
                    break;
                }
                sigma[v] = it->second;
            }
            if (complete && try_sigma(sigma)) return true;
        }
        std::vector<Label> cand(concl_labels.begin(), concl_labels.end());
        std::vector<std::size_t> idx(r.principal_labels.size(), 0);
        while (!cand.empty()) {
            std::map<Label, Label> sigma;
            bool injective = true;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                for (std::size_t j = 0; j < i; ++j) injective = injective && idx[i] != idx[j];
                sigma[r.principal_labels[i]] = cand[idx[i]];
            }
            if (injective && try_sigma(sigma)) return true;
            std::size_t k = idx.size();
            while (k > 0 && ++idx[k - 1] == cand.size()) idx[--k] = 0;
            if (k == 0) break;
        }
        return fail(path, p->rule, "no instantiation of the rule schema matches the premisses");
    }

    bool check_node(const SlsProofPtr& p, std::vector<int>& path) {
        const SimplyLabelledSequent& c = p->conclusion;
        const std::string& rule = p->rule;
        auto arity = [&](std::size_t n) {
            if (p->premises.size() == n) return true;
            return fail(path, rule, "expected " + std::to_string(n) + " premisses");
        };
        auto prem = [&](std::size_t i) -> const SimplyLabelledSequent& {
            return p->premises[i]->conclusion;
        };
        // accepts the node if some principal occurrence yields these premises
        auto match_principal = [&](Conn conn, bool in_succ,
                                   auto&& expected) -> bool {
            for (const auto& occ :
                 distinct_with_conn(in_succ ? c.succ : c.ante, conn)) {
                std::vector<SimplyLabelledSequent> exp = expected(occ);
                bool ok = true;
                for (std::size_t i = 0; i < exp.size(); ++i)
                    ok = ok && sls_equal(exp[i], prem(i));
                if (ok) return true;
            }
            return false;
        };

        if (rule == "ax") {
            if (!arity(0)) return false;
            if (!check_ax(c))
                return fail(path, rule, "no x:P on both sides with P atomic");
        } else if (rule == "l_bot") {
            if (!arity(0)) return false;
            if (!check_l_bot(c)) return fail(path, rule, "no x:bot in the antecedent");
        } else if (rule == "l_and") {
            if (!arity(1)) return false;
            bool ok = match_principal(Conn::And, false, [&](const LabelledFormula& occ) {
                LfMultiset a = lfs_minus(c.ante, occ);
                lfs_insert(a, {occ.lab, occ.f->lhs});
                lfs_insert(a, {occ.lab, occ.f->rhs});
                return std::vector<SimplyLabelledSequent>{{a, c.succ}};
            });
            if (!ok) return fail(path, rule, "premiss does not split a conjunction on the left");
        } else if (rule == "r_and") {
            if (!arity(2)) return false;
            bool ok = match_principal(Conn::And, true, [&](const LabelledFormula& occ) {
                LfMultiset base = lfs_minus(c.succ, occ);
                return std::vector<SimplyLabelledSequent>{
                    {c.ante, lfs_plus(base, {occ.lab, occ.f->lhs})},
                    {c.ante, lfs_plus(base, {occ.lab, occ.f->rhs})}};
            });
            if (!ok) return fail(path, rule, "premisses do not split a conjunction on the right");
        } else if (rule == "l_or") {
            if (!arity(2)) return false;
            bool ok = match_principal(Conn::Or, false, [&](const LabelledFormula& occ) {
                LfMultiset base = lfs_minus(c.ante, occ);
                return std::vector<SimplyLabelledSequent>{
                    {lfs_plus(base, {occ.lab, occ.f->lhs}), c.succ},
                    {lfs_plus(base, {occ.lab, occ.f->rhs}), c.succ}};
            });
            if (!ok) return fail(path, rule, "premisses do not split a disjunction on the left");
        } else if (rule == "r_or") {
            if (!arity(1)) return false;
            bool ok = match_principal(Conn::Or, true, [&](const LabelledFormula& occ) {
                LfMultiset s = lfs_minus(c.succ, occ);
                lfs_insert(s, {occ.lab, occ.f->lhs});
                lfs_insert(s, {occ.lab, occ.f->rhs});
                return std::vector<SimplyLabelledSequent>{{c.ante, s}};
            });
            if (!ok) return fail(path, rule, "premiss does not split a disjunction on the right");
        } else if (rule == "l_imp") {
            if (!arity(2)) return false;
            bool ok = match_principal(Conn::Imp, false, [&](const LabelledFormula& occ) {
                return std::vector<SimplyLabelledSequent>{
                    {c.ante, lfs_plus(c.succ, {occ.lab, occ.f->lhs})},
                    {lfs_plus(lfs_minus(c.ante, occ), {occ.lab, occ.f->rhs}), c.succ}};
            });
            if (!ok) return fail(path, rule, "premisses do not analyse an implication on the left");
        } else if (rule == "r_imp") {
            if (!arity(1)) return false;
            bool ok = match_principal(Conn::Imp, true, [&](const LabelledFormula& occ) {
                // the premise deletes the principal label's whole succedent slice
                LfMultiset s = lfs_diff(c.succ, slice(c.succ, occ.lab));
                lfs_insert(s, {occ.lab, occ.f->rhs});
                return std::vector<SimplyLabelledSequent>{
                    {lfs_plus(c.ante, {occ.lab, occ.f->lhs}), s}};
            });
            if (!ok)
                return fail(path, rule,
                            "premiss does not analyse an implication on the right "
                            "(the principal label's succedent slice must be deleted)");
        } else if (rule == "ec" || rule == "ew") {
            if (mode == CheckMode::strict && structural.empty())
                return fail(path, rule, "external rule without structural rules in force");
            if (!arity(1)) return false;
            if (rule == "ec") {
                // premise duplicates one label's slices at a label new to the
                // conclusion
                std::set<Label> cl = label_set(c);
                bool ok = false;
                for (const auto& v : labels_of(prem(0))) {
                    if (cl.count(v)) continue;
                    SimplyLabelledSequent rest{lfs_diff(prem(0).ante, slice(prem(0).ante, v)),
                                               lfs_diff(prem(0).succ, slice(prem(0).succ, v))};
                    if (!sls_equal(rest, c)) continue;
                    for (const auto& u : labels_of(c))
                        if (fs_equal(erased_slice(prem(0).ante, v), erased_slice(c.ante, u)) &&
                            fs_equal(erased_slice(prem(0).succ, v), erased_slice(c.succ, u)))
                            ok = true;
                }
                if (!ok)
                    return fail(path, rule,
                                "premiss is not the conclusion plus a copy of one label's slices");
            } else {
                // premise is the conclusion minus one label's slices
                bool ok = false;
                for (const auto& v : labels_of(c)) {
                    SimplyLabelledSequent rest{lfs_diff(c.ante, slice(c.ante, v)),
                                               lfs_diff(c.succ, slice(c.succ, v))};
                    if (sls_equal(rest, prem(0))) ok = true;
                }
                if (!ok)
                    return fail(path, rule, "premiss is not the conclusion minus one label's slices");
            }
        } else if (const SlsRuleSchema* r = find_structural(rule)) {
            if (!check_structural(p, *r, path)) return false;
        } else if (rule == "weak" || rule == "contr" || rule == "subst" || rule == "l_imp_keep" ||
                   rule == "r_imp_keep" || rule == "rc_imp" || rule == "r_subset") {
            if (mode == CheckMode::strict)
                return fail(path, rule, "admissible-rule node in strict mode");
            if (!arity(rule == "l_imp_keep" ? 2 : 1)) return false;
            if (rule == "weak") {
                if (!lfs_subset(prem(0).ante, c.ante) || !lfs_subset(prem(0).succ, c.succ))
                    return fail(path, rule, "premiss is not contained in the conclusion");
            } else if (rule == "contr") {
                bool ok = lfs_subset(c.ante, prem(0).ante) && lfs_subset(c.succ, prem(0).succ);
                for (const auto& lf : prem(0).ante) ok = ok && lfs_contains(c.ante, lf);
                for (const auto& lf : prem(0).succ) ok = ok && lfs_contains(c.succ, lf);
                if (!ok) return fail(path, rule, "premiss is not a duplication of the conclusion");
            } else if (rule == "subst") {
                if (p->subst.empty())
                    return fail(path, rule, "substitution node carries no label map");
                if (!sls_equal(map_sls(prem(0), p->subst), c))
                    return fail(path, rule, "conclusion is not the substituted premiss");
            } else if (rule == "l_imp_keep") {
                bool ok = false;
                for (const auto& occ : distinct_with_conn(c.ante, Conn::Imp)) {
                    SimplyLabelledSequent e0{c.ante, lfs_plus(c.succ, {occ.lab, occ.f->lhs})};
                    SimplyLabelledSequent e1{lfs_plus(c.ante, {occ.lab, occ.f->rhs}), c.succ};
                    ok = ok || (sls_equal(e0, prem(0)) && sls_equal(e1, prem(1)));
                }
                if (!ok)
                    return fail(path, rule,
                                "premisses do not analyse a left implication with the principal kept");
            } else if (rule == "r_imp_keep") {
                // the premise re-analyses x:(A->B) at a label w new to the
                // conclusion, copying x's antecedent slice to w
                std::set<Label> cl = label_set(c);
                bool ok = false;
                for (const auto& occ : distinct_with_conn(c.succ, Conn::Imp)) {
                    for (const auto& w : labels_of(prem(0))) {
                        if (cl.count(w)) continue;
                        LfMultiset a = c.ante;
                        for (const auto& f : erased_slice(c.ante, occ.lab))
                            lfs_insert(a, {w, f});
                        lfs_insert(a, {w, occ.f->lhs});
                        SimplyLabelledSequent e{a, lfs_plus(c.succ, {w, occ.f->rhs})};
                        ok = ok || sls_equal(e, prem(0));
                    }
                }
                if (!ok)
                    return fail(path, rule,
                                "premiss does not analyse a right implication at a fresh label");
            } else if (rule == "rc_imp") {
                auto d = lfs_diff(prem(0).succ, c.succ);
                bool ok = d.size() == 1 && lfs_equal(prem(0).ante, c.ante) &&
                          lfs_equal(prem(0).succ, lfs_plus(c.succ, d[0]));
                if (ok) {
                    bool witness = false;
                    for (const auto& lf : c.succ)
                        if (lf.lab == d[0].lab && lf.f->conn == Conn::Imp &&
                            formula_equal(lf.f->rhs, d[0].f))
                            witness = true;
                    ok = witness;
                }
                if (!ok)
                    return fail(path, rule,
                                "premiss does not add x:B beside a right implication x:(A->B)");
            } else { // r_subset
                auto d = lfs_diff(prem(0).succ, c.succ);
                bool ok = d.size() == 1 && lfs_equal(prem(0).ante, c.ante) &&
                          lfs_equal(prem(0).succ, lfs_plus(c.succ, d[0]));
                if (ok) {
                    bool witness = false;
                    for (const auto& lf : c.succ)
                        if (lf.lab != d[0].lab && formula_equal(lf.f, d[0].f) &&
                            fs_subset(erased_slice(c.ante, d[0].lab),
                                      erased_slice(c.ante, lf.lab)))
                            witness = true;
                    ok = witness;
                }
                if (!ok)
                    return fail(path, rule,
                                "premiss does not add x:A beside y:A with ante|x contained in ante|y");
            }
        } else {
            return fail(path, rule, "unknown rule");
        }

        for (std::size_t i = 0; i < p->premises.size(); ++i) {
            path.push_back(static_cast<int>(i));
            if (!check_node(p->premises[i], path)) return false;
            path.pop_back();
        }
        return true;
    }
};

} // namespace

CheckResult check_sls_proof(const SlsProofPtr& p, const LogicSpec& logic, CheckMode mode,
                            bool use_lin) {
    SlsChecker ck(logic, mode, use_lin);
    std::vector<int> path;
    ck.check_node(p, path);
    return ck.result;
}

// ---------------------------------------------------------------------------
// Backward proof search
// ---------------------------------------------------------------------------

namespace {

std::string instance_key(const SlsRuleInstance& inst) {
    std::string key;
    for (const auto& prem : inst.premises)
        key += render_sequent(canonicalize_labels(set_collapse(prem))) + " ## ";
    return key;
}

bool rule_is_invertible(const std::string& rule) {
    return rule == "l_and" || rule == "r_or" || rule == "r_and" || rule == "l_or" ||
           rule == "l_imp";
}

} // namespace

std::vector<SlsRuleInstance> applicable_sls_rules(const SimplyLabelledSequent& s,
                                                  const LogicSpec& logic, bool use_lin) {
    std::vector<SlsRuleInstance> out;
    std::set<std::string> seen; // dedupe instances with identical premise lists
    std::string concl_key = render_sequent(canonicalize_labels(set_collapse(s)));
    auto add = [&](SlsRuleInstance inst) {
        for (const auto& prem : inst.premises)
            if (render_sequent(canonicalize_labels(set_collapse(prem))) == concl_key)
                return; // a no-op premise makes the instance useless
        if (seen.insert(instance_key(inst)).second) out.push_back(std::move(inst));
    };

    if (SlsChecker::check_ax(s)) out.push_back({"ax", {}, {}});
    if (SlsChecker::check_l_bot(s)) out.push_back({"l_bot", {}, {}});

    for (const auto& occ : distinct_with_conn(s.ante, Conn::And)) {
        LfMultiset a = lfs_minus(s.ante, occ);
        lfs_insert(a, {occ.lab, occ.f->lhs});
        lfs_insert(a, {occ.lab, occ.f->rhs});
        add({"l_and", {{a, s.succ}}, {}});
    }
    for (const auto& occ : distinct_with_conn(s.succ, Conn::Or)) {
        LfMultiset ss = lfs_minus(s.succ, occ);
        lfs_insert(ss, {occ.lab, occ.f->lhs});
        lfs_insert(ss, {occ.lab, occ.f->rhs});
        add({"r_or", {{s.ante, ss}}, {}});
    }
    for (const auto& occ : distinct_with_conn(s.succ, Conn::And)) {
        LfMultiset base = lfs_minus(s.succ, occ);
        add({"r_and",
             {{s.ante, lfs_plus(base, {occ.lab, occ.f->lhs})},
              {s.ante, lfs_plus(base, {occ.lab, occ.f->rhs})}},
             {}});
    }
    for (const auto& occ : distinct_with_conn(s.ante, Conn::Or)) {
        LfMultiset base = lfs_minus(s.ante, occ);
        add({"l_or",
             {{lfs_plus(base, {occ.lab, occ.f->lhs}), s.succ},
              {lfs_plus(base, {occ.lab, occ.f->rhs}), s.succ}},
             {}});
    }
    for (const auto& occ : distinct_with_conn(s.ante, Conn::Imp)) {
        // saturation guard: skip once the premises would add nothing new
        if (lfs_contains(s.succ, {occ.lab, occ.f->lhs}) ||
            lfs_contains(s.ante, {occ.lab, occ.f->rhs}))
            continue;
        add({"l_imp",
             {{s.ante, lfs_plus(s.succ, {occ.lab, occ.f->lhs})},
              {lfs_plus(lfs_minus(s.ante, occ), {occ.lab, occ.f->rhs}), s.succ}},
             {}});
    }
    for (const auto& occ : distinct_with_conn(s.succ, Conn::Imp)) {
        LfMultiset ss = lfs_diff(s.succ, slice(s.succ, occ.lab));
        lfs_insert(ss, {occ.lab, occ.f->rhs});
        add({"r_imp", {{lfs_plus(s.ante, {occ.lab, occ.f->lhs}), ss}}, {}});
    }

    // structural rules: injective assignments of principal labels
    auto rules = effective_sls_rules(logic, use_lin);
    std::vector<Label> labs = labels_of(s);
    std::set<Label> used_names = label_set(s);
    for (const auto& r : rules) {
        std::vector<std::size_t> idx(r.principal_labels.size(), 0);
        while (!labs.empty()) {
            bool injective = true;
            SchemaAssignment a;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                for (std::size_t j = 0; j < i; ++j) injective = injective && idx[i] != idx[j];
                a.sigma[r.principal_labels[i]] = labs[idx[i]];
            }
            if (injective) {
                // images for fresh premiss labels
                std::set<Label> used = used_names;
                for (const auto& pi : r.premisses)
                    for (const auto& fv : pi.fresh) {
                        Label fl = fresh_label(used);
                        used.insert(fl);
                        a.sigma[fv] = fl;
                    }
                if (solve_schema(r, s, a)) {
                    SlsRuleInstance inst{r.name, build_premises(r, a, s), {}};
                    for (const auto& [v, l] : a.sigma) inst.subst[v] = l;
                    add(std::move(inst));
                }
            }
            std::size_t k = idx.size();
            while (k > 0 && ++idx[k - 1] == labs.size()) idx[--k] = 0;
            if (k == 0) break;
        }
    }

    // label duplication (external contraction), only useful alongside
    // structural rules
    if (!rules.empty()) {
        for (const auto& u : labs) {
            LfMultiset da = slice(s.ante, u), ds = slice(s.succ, u);
            if (da.empty() && ds.empty()) continue;
            Label v = fresh_label(used_names);
            SimplyLabelledSequent prem = s;
            for (const auto& lf : da) lfs_insert(prem.ante, {v, lf.f});
            for (const auto& lf : ds) lfs_insert(prem.succ, {v, lf.f});
            add({"ec", {prem}, {{"x", u}, {"y", v}}});
        }
    }
    return out;
}

namespace {

enum class Out { proved, refuted_clean, refuted_loopy, cutoff };

struct SlsSearcher {
    const LogicSpec& logic;
    bool use_lin;
    SearchBudget budget;
    std::set<std::string> refuted_memo;
    long long nodes = 0;

    std::string canon_key(const SimplyLabelledSequent& s) {
        // set-collapsed and label-canonical; sound because weakening,
        // contraction and injective relabelling are admissible
        return render_sequent(canonicalize_labels(set_collapse(s)));
    }

    Out search(const SimplyLabelledSequent& s, int depth, std::vector<std::string>& path,
               SlsProofPtr& proof) {
        ++nodes;
        for (const auto& lf : s.ante) {
            if (is_proper_atom(lf.f) && lfs_contains(s.succ, lf)) {
                proof = mk_sls_proof("ax", s, {}, {{"x", lf.lab}});
                return Out::proved;
            }
            if (lf.f->conn == Conn::Bot) {
                proof = mk_sls_proof("l_bot", s, {}, {{"x", lf.lab}});
                return Out::proved;
            }
        }

        if (depth >= budget.max_depth || seq_size(s) > budget.max_sequent_size)
            return Out::cutoff;
        std::string key = canon_key(s);
        if (refuted_memo.count(key)) return Out::refuted_clean;
        if (std::find(path.begin(), path.end(), key) != path.end()) return Out::refuted_loopy;

        auto instances = applicable_sls_rules(s, logic, use_lin);
        bool budget_skipped = false, any_cutoff = false, any_loopy = false;
        path.push_back(key);
        Out verdict = Out::refuted_clean;
        for (const auto& inst : instances) {
            if (inst.rule == "ax" || inst.rule == "l_bot") continue; // handled above
            bool over_labels = false;
            for (const auto& prem : inst.premises)
                if (static_cast<int>(labels_of(prem).size()) > budget.max_labels)
                    over_labels = true;
            if (over_labels) {
                budget_skipped = true;
                continue;
            }
            std::vector<SlsProofPtr> children;
            Out o = Out::proved;
            for (const auto& prem : inst.premises) {
                SlsProofPtr child;
                o = search(prem, depth + 1, path, child);
                if (o != Out::proved) break;
                children.push_back(child);
            }
            if (o == Out::proved) {
                path.pop_back();
                proof = mk_sls_proof(inst.rule, s, std::move(children), inst.subst);
                return Out::proved;
            }
            if (o == Out::cutoff) any_cutoff = true;
            if (o == Out::refuted_loopy) any_loopy = true;
            // an invertible rule decides the sequent by itself
            if (rule_is_invertible(inst.rule)) {
                path.pop_back();
                if (o == Out::refuted_clean) refuted_memo.insert(key);
                return o;
            }
        }
        path.pop_back();
        if (budget_skipped || any_cutoff)
            verdict = Out::cutoff;
        else if (any_loopy)
            verdict = Out::refuted_loopy;
        else
            refuted_memo.insert(key);
        return verdict;
    }
};

} // namespace

SlsSearchResult prove_sls(const SimplyLabelledSequent& s, const LogicSpec& logic, bool use_lin,
                          const SearchBudget& b) {
    // iterative deepening: shallow proofs are found before deep dead ends are
    // explored, and a pass that completes without hitting the budget is a
    // genuine refutation; clean refutations are depth-independent, so the memo
    // carries over between passes
    SlsSearcher searcher{logic, use_lin, b};
    SlsSearchResult res;
    for (int d = 1; d <= b.max_depth; ++d) {
        searcher.budget.max_depth = d;
        std::vector<std::string> path;
        SlsProofPtr proof;
        Out o = searcher.search(s, 0, path, proof);
        res.nodes = searcher.nodes;
        switch (o) {
        case Out::proved:
            res.status = SearchStatus::proved;
            res.proof = proof;
            return res;
        case Out::refuted_clean:
        case Out::refuted_loopy:
            res.status = SearchStatus::refuted;
            return res;
        case Out::cutoff:
            res.status = SearchStatus::exhausted;
            break;
        }
    }
    return res;
}

} // namespace geoseq
