#include "geoseq/g3i.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace geoseq {

RelMultiset rel_set(RelMultiset rels) {
    std::sort(rels.begin(), rels.end());
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
    return rels;
}

RelMultiset rel_set_union(RelMultiset a, const RelMultiset& b) {
    for (const auto& r : b) a.push_back(r);
    return rel_set(std::move(a));
}

bool rel_member(const RelMultiset& rels, const RelAtom& r) {
    return std::find(rels.begin(), rels.end(), r) != rels.end();
}

LabelledSequent normalize_sequent(LabelledSequent s) {
    s.rels = rel_set(std::move(s.rels));
    return s;
}

namespace {

bool rels_equal(const RelMultiset& a, const RelMultiset& b) {
    return rel_set(a) == rel_set(b);
}

RelMultiset rel_diff(const RelMultiset& a, const RelMultiset& b) {
    RelMultiset out;
    for (const auto& r : rel_set(a))
        if (!rel_member(b, r)) out.push_back(r);
    return out;
}

int seq_size(const LabelledSequent& s) {
    return static_cast<int>(s.rels.size() + s.ante.size() + s.succ.size());
}

bool is_proper_atom(const FormulaPtr& f) { return f->conn == Conn::Atom; }

// Labels that annotate a formula, as opposed to occurring only in rels.
std::vector<Label> formula_labels(const LabelledSequent& s) {
    std::set<Label> labs;
    for (const auto& lf : s.ante) labs.insert(lf.lab);
    for (const auto& lf : s.succ) labs.insert(lf.lab);
    return {labs.begin(), labs.end()};
}

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

LfMultiset one(const LabelledFormula& lf) { return LfMultiset{lf}; }

LfMultiset two(const LabelledFormula& a, const LabelledFormula& b) {
    LfMultiset ms;
    lfs_insert(ms, a);
    lfs_insert(ms, b);
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

RelMultiset map_rels(const RelMultiset& rels, const std::map<Label, Label>& sub) {
    RelMultiset out;
    for (const auto& r : rels) out.push_back({map_label(sub, r.lo), map_label(sub, r.hi)});
    return rel_set(std::move(out));
}

LfMultiset map_lfs(const LfMultiset& ms, const std::map<Label, Label>& sub) {
    LfMultiset out;
    for (const auto& lf : ms) lfs_insert(out, {map_label(sub, lf.lab), lf.f});
    return out;
}

LabelledSequent map_sequent(const LabelledSequent& s, const std::map<Label, Label>& sub) {
    return {map_rels(s.rels, sub), map_lfs(s.ante, sub), map_lfs(s.succ, sub)};
}

} // namespace

// ---------------------------------------------------------------------------
// Proof checking
// ---------------------------------------------------------------------------

namespace {

struct Checker {
    const LogicSpec& logic;
    CheckMode mode;
    std::map<std::string, const LabelledRuleSchema*> geo;
    CheckResult result;

    explicit Checker(const LogicSpec& l, CheckMode m) : logic(l), mode(m) {
        for (const auto& r : l.labelled_rules) geo[r.name] = &r;
    }

    bool fail(const std::vector<int>& path, const std::string& rule, const std::string& why) {
        result.ok = false;
        result.path = path;
        result.error = "rule '" + rule + "': " + why;
        return false;
    }

    static bool check_ax(const LabelledSequent& c) {
        for (const auto& lf : c.ante) {
            if (!is_proper_atom(lf.f)) continue;
            for (const auto& rg : c.succ)
                if (formula_equal(lf.f, rg.f) && rel_member(c.rels, {lf.lab, rg.lab}))
                    return true;
        }
        return false;
    }

    static bool check_l_bot(const LabelledSequent& c) {
        for (const auto& lf : c.ante)
            if (lf.f->conn == Conn::Bot) return true;
        return false;
    }

    static bool matches(const LabelledSequent& prem, const RelMultiset& rels,
                        const LfMultiset& ante, const LfMultiset& succ) {
        return rels_equal(prem.rels, rels) && lfs_equal(prem.ante, ante) &&
               lfs_equal(prem.succ, succ);
    }

    // Locates images for the premiss's fresh variables among the premise's
    // new labels (injective, outside the conclusion) and matches exactly.
    static bool match_geo_premiss(const LabelledRuleSchema::Premiss& sp,
                                  const LabelledSequent& prem, const LabelledSequent& c,
                                  const std::set<Label>& concl_labels,
                                  std::map<Label, Label> si) {
        if (!lfs_equal(prem.ante, c.ante) || !lfs_equal(prem.succ, c.succ)) return false;
        std::vector<Label> cands;
        for (const auto& pr : rel_set(prem.rels)) {
            if (rel_member(c.rels, pr)) continue;
            for (const Label& l : {pr.lo, pr.hi})
                if (!concl_labels.count(l) &&
                    std::find(cands.begin(), cands.end(), l) == cands.end())
                    cands.push_back(l);
        }
        std::set<Label> used;
        std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
            if (i == sp.fresh.size()) {
                RelMultiset expected = c.rels;
                for (const auto& a : sp.added_rels)
                    expected.push_back({map_label(si, a.lo), map_label(si, a.hi)});
                return rels_equal(prem.rels, expected);
            }
            for (const auto& l : cands) {
                if (used.count(l)) continue;
                si[sp.fresh[i]] = l;
                used.insert(l);
                if (go(i + 1)) return true;
                used.erase(l);
                si.erase(sp.fresh[i]);
            }
            return false;
        };
        return go(0);
    }

    bool check_geometric(const ProofPtr& p, const LabelledRuleSchema& r,
                         const std::vector<int>& path) {
        const LabelledSequent& c = p->conclusion;
        if (p->premises.size() != r.premisses.size())
            return fail(path, p->rule, "expected " + std::to_string(r.premisses.size()) +
                                           " premisses, got " +
                                           std::to_string(p->premises.size()));
        std::set<Label> concl_labels;
        for (const auto& l : labels_of(c)) concl_labels.insert(l);

        auto try_sigma = [&](const std::map<Label, Label>& sigma) -> bool {
            for (const auto& a : r.conclusion_rels)
                if (!rel_member(c.rels, {map_label(sigma, a.lo), map_label(sigma, a.hi)}))
                    return false;
            for (std::size_t i = 0; i < r.premisses.size(); ++i)
                if (!match_geo_premiss(r.premisses[i], p->premises[i]->conclusion, c,
                                       concl_labels, sigma))
                    return false;
            return true;
        };

        // substitution hint first, then exhaustive assignment
        {
            std::map<Label, Label> sigma;
            bool complete = true;
            for (const auto& v : r.uni_vars) {
                auto it = p->subst.find(v);
                if (it == p->subst.end()) {
                    complete = false;
                    break;
                }
                sigma[v] = it->second;
            }
            if (complete && try_sigma(sigma)) return true;
        }
        std::set<Label> cand_set = concl_labels;
        for (const auto& q : p->premises)
            for (const auto& l : labels_of(q->conclusion)) cand_set.insert(l);
        std::vector<Label> cand(cand_set.begin(), cand_set.end());
        if (cand.empty()) cand.push_back("w0"); // vacuous rule over an empty sequent
        std::vector<std::size_t> idx(r.uni_vars.size(), 0);
        while (true) {
            std::map<Label, Label> sigma;
            for (std::size_t i = 0; i < idx.size(); ++i) sigma[r.uni_vars[i]] = cand[idx[i]];
            if (try_sigma(sigma)) return true;
            std::size_t k = idx.size();
            while (k > 0 && ++idx[k - 1] == cand.size()) idx[--k] = 0;
            if (k == 0) break;
        }
        return fail(path, p->rule, "no instantiation of the rule schema matches the premisses");
    }

    bool check_node(const ProofPtr& p, std::vector<int>& path) {
        const LabelledSequent& c = p->conclusion;
        const std::string& rule = p->rule;
        auto arity = [&](std::size_t n) {
            if (p->premises.size() == n) return true;
            return fail(path, rule, "expected " + std::to_string(n) + " premisses");
        };

        if (rule == "ax") {
            if (!arity(0)) return false;
            if (!check_ax(c))
                return fail(path, rule, "no x:P / y:P pair with x<=y in the relational part");
        } else if (rule == "l_bot") {
            if (!arity(0)) return false;
            if (!check_l_bot(c)) return fail(path, rule, "no x:bot in the antecedent");
        } else if (rule == "l_and") {
            if (!arity(1)) return false;
            const auto& prem = p->premises[0]->conclusion;
            bool ok = false;
            for (const auto& lf : distinct_with_conn(c.ante, Conn::And)) {
                auto ante = lfs_plus(lfs_plus(lfs_minus(c.ante, lf), {lf.lab, lf.f->lhs}),
                                     {lf.lab, lf.f->rhs});
                if (matches(prem, c.rels, ante, c.succ)) { ok = true; break; }
            }
            if (!ok) return fail(path, rule, "premiss does not decompose a conjunction");
        } else if (rule == "r_and") {
            if (!arity(2)) return false;
            bool ok = false;
            for (const auto& lf : distinct_with_conn(c.succ, Conn::And)) {
                auto base = lfs_minus(c.succ, lf);
                if (matches(p->premises[0]->conclusion, c.rels, c.ante,
                            lfs_plus(base, {lf.lab, lf.f->lhs})) &&
                    matches(p->premises[1]->conclusion, c.rels, c.ante,
                            lfs_plus(base, {lf.lab, lf.f->rhs}))) { ok = true; break; }
            }
            if (!ok) return fail(path, rule, "premisses do not split a succedent conjunction");
        } else if (rule == "l_or") {
            if (!arity(2)) return false;
            bool ok = false;
            for (const auto& lf : distinct_with_conn(c.ante, Conn::Or)) {
                auto base = lfs_minus(c.ante, lf);
                if (matches(p->premises[0]->conclusion, c.rels,
                            lfs_plus(base, {lf.lab, lf.f->lhs}), c.succ) &&
                    matches(p->premises[1]->conclusion, c.rels,
                            lfs_plus(base, {lf.lab, lf.f->rhs}), c.succ)) { ok = true; break; }
            }
            if (!ok) return fail(path, rule, "premisses do not split an antecedent disjunction");
        } else if (rule == "r_or") {
            if (!arity(1)) return false;
            const auto& prem = p->premises[0]->conclusion;
            bool ok = false;
            for (const auto& lf : distinct_with_conn(c.succ, Conn::Or)) {
                auto succ = lfs_plus(lfs_plus(lfs_minus(c.succ, lf), {lf.lab, lf.f->lhs}),
                                     {lf.lab, lf.f->rhs});
                if (matches(prem, c.rels, c.ante, succ)) { ok = true; break; }
            }
            if (!ok) return fail(path, rule, "premiss does not decompose a disjunction");
        } else if (rule == "l_imp") {
            if (!arity(2)) return false;
            bool ok = false;
            for (const auto& lf : distinct_with_conn(c.ante, Conn::Imp)) {
                for (const auto& r : rel_set(c.rels)) {
                    if (r.lo != lf.lab) continue;
                    // both premisses keep the principal implication
                    if (matches(p->premises[0]->conclusion, c.rels, c.ante,
                                lfs_plus(c.succ, {r.hi, lf.f->lhs})) &&
                        matches(p->premises[1]->conclusion, c.rels,
                                lfs_plus(c.ante, {r.hi, lf.f->rhs}), c.succ)) { ok = true; break; }
                }
                if (ok) break;
            }
            if (!ok)
                return fail(path, rule, "premisses do not match any x:(A->B), x<=y instance");
        } else if (rule == "r_imp") {
            if (!arity(1)) return false;
            const auto& prem = p->premises[0]->conclusion;
            auto extra = rel_diff(prem.rels, c.rels);
            if (extra.size() != 1 || !rel_diff(c.rels, prem.rels).empty())
                return fail(path, rule, "premiss must add exactly one relational atom");
            std::set<Label> used;
            for (const auto& l : labels_of(c)) used.insert(l);
            const Label& x = extra[0].lo;
            const Label& y = extra[0].hi;
            if (used.count(y)) return fail(path, rule, "label '" + y + "' is not fresh");
            bool ok = false;
            for (const auto& lf : distinct_with_conn(c.succ, Conn::Imp)) {
                if (lf.lab != x) continue;
                if (matches(prem, rel_set_union(c.rels, {extra[0]}),
                            lfs_plus(c.ante, {y, lf.f->lhs}),
                            lfs_plus(lfs_minus(c.succ, lf), {y, lf.f->rhs}))) { ok = true; break; }
            }
            if (!ok) return fail(path, rule, "premiss does not match any succedent implication");
        } else if (rule == "refl") {
            if (!arity(1)) return false;
            const auto& prem = p->premises[0]->conclusion;
            auto extra = rel_diff(prem.rels, c.rels);
            bool shape = lfs_equal(prem.ante, c.ante) && lfs_equal(prem.succ, c.succ) &&
                         rel_diff(c.rels, prem.rels).empty();
            // a no-op instance is accepted so decoration transforms stay valid
            if (!shape || extra.size() > 1 || (extra.size() == 1 && extra[0].lo != extra[0].hi))
                return fail(path, rule, "premiss must add at most one reflexive atom");
        } else if (rule == "trans") {
            if (!arity(1)) return false;
            const auto& prem = p->premises[0]->conclusion;
            auto extra = rel_diff(prem.rels, c.rels);
            bool shape = lfs_equal(prem.ante, c.ante) && lfs_equal(prem.succ, c.succ) &&
                         rel_diff(c.rels, prem.rels).empty();
            if (!shape || extra.size() > 1)
                return fail(path, rule, "premiss must add at most one relational atom");
            if (extra.size() == 1) {
                bool chain = false;
                for (const auto& r : c.rels)
                    if (r.lo == extra[0].lo && rel_member(c.rels, {r.hi, extra[0].hi})) {
                        chain = true;
                        break;
                    }
                if (!chain)
                    return fail(path, rule, "added atom is not a composition of conclusion atoms");
            }
        } else if (geo.count(rule)) {
            if (!check_geometric(p, *geo.at(rule), path)) return false;
        } else if (rule == "weak" || rule == "contr" || rule == "cut" || rule == "l_mono" ||
                   rule == "r_mono") {
            if (mode == CheckMode::strict)
                return fail(path, rule, "admissible-rule node in strict mode");
            if (rule == "weak") {
                if (!arity(1)) return false;
                const auto& prem = p->premises[0]->conclusion;
                if (!rel_diff(prem.rels, c.rels).empty() || !lfs_subset(prem.ante, c.ante) ||
                    !lfs_subset(prem.succ, c.succ))
                    return fail(path, rule, "premiss is not contained in the conclusion");
            } else if (rule == "contr") {
                if (!arity(1)) return false;
                const auto& prem = p->premises[0]->conclusion;
                bool ok = rels_equal(prem.rels, c.rels) && lfs_subset(c.ante, prem.ante) &&
                          lfs_subset(c.succ, prem.succ);
                // only duplicates may be removed
                for (const auto& lf : prem.ante) ok = ok && lfs_contains(c.ante, lf);
                for (const auto& lf : prem.succ) ok = ok && lfs_contains(c.succ, lf);
                if (!ok) return fail(path, rule, "premiss is not a duplication of the conclusion");
            } else if (rule == "cut") {
                if (!arity(2)) return false;
                const auto& p0 = p->premises[0]->conclusion;
                const auto& p1 = p->premises[1]->conclusion;
                auto d0 = lfs_diff(p0.succ, c.succ);
                auto d1 = lfs_diff(p1.ante, c.ante);
                bool ok = d0.size() == 1 && d1.size() == 1 && lf_equal(d0[0], d1[0]) &&
                          rels_equal(p0.rels, c.rels) && rels_equal(p1.rels, c.rels) &&
                          lfs_equal(p0.ante, c.ante) &&
                          lfs_equal(p0.succ, lfs_plus(c.succ, d0[0])) &&
                          lfs_equal(p1.succ, c.succ) &&
                          lfs_equal(p1.ante, lfs_plus(c.ante, d1[0]));
                if (!ok) return fail(path, rule, "premisses do not share a single cut formula");
            } else if (rule == "l_mono") {
                if (!arity(1)) return false;
                const auto& prem = p->premises[0]->conclusion;
                auto d = lfs_diff(prem.ante, c.ante);
                bool ok = d.size() == 1 && rels_equal(prem.rels, c.rels) &&
                          lfs_equal(prem.succ, c.succ) &&
                          lfs_equal(prem.ante, lfs_plus(c.ante, d[0]));
                if (ok) {
                    bool witness = false;
                    for (const auto& lf : c.ante)
                        if (formula_equal(lf.f, d[0].f) && rel_member(c.rels, {lf.lab, d[0].lab}))
                            witness = true;
                    ok = witness;
                }
                if (!ok) return fail(path, rule, "premiss does not copy a formula up the order");
            } else { // r_mono
                if (!arity(1)) return false;
                const auto& prem = p->premises[0]->conclusion;
                auto d = lfs_diff(prem.succ, c.succ);
                bool ok = d.size() == 1 && rels_equal(prem.rels, c.rels) &&
                          lfs_equal(prem.ante, c.ante) &&
                          lfs_equal(prem.succ, lfs_plus(c.succ, d[0]));
                if (ok) {
                    bool witness = false;
                    for (const auto& lf : c.succ)
                        if (formula_equal(lf.f, d[0].f) && rel_member(c.rels, {d[0].lab, lf.lab}))
                            witness = true;
                    ok = witness;
                }
                if (!ok) return fail(path, rule, "premiss does not copy a formula down the order");
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

CheckResult check_proof(const ProofPtr& p, const LogicSpec& logic, CheckMode mode) {
    Checker ck(logic, mode);
    std::vector<int> path;
    ck.check_node(p, path);
    return ck.result;
}

// ---------------------------------------------------------------------------
// Backward proof search
// ---------------------------------------------------------------------------

namespace {

// Label order used for geometric instantiation: labels that carry formulas
// first, so productive instances are proposed before fresh-label churn.
std::vector<Label> instantiation_candidates(const LabelledSequent& s) {
    std::vector<Label> cand = formula_labels(s);
    for (const auto& l : labels_of(s))
        if (std::find(cand.begin(), cand.end(), l) == cand.end()) cand.push_back(l);
    return cand;
}

void push_geometric_instances(const LabelledSequent& s, const LabelledRuleSchema& r,
                              std::vector<RuleInstance>& out) {
    std::vector<Label> cand = instantiation_candidates(s);
    if (cand.empty()) return;
    std::set<Label> used;
    for (const auto& l : labels_of(s)) used.insert(l);

    const std::size_t nv = r.uni_vars.size();
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> idx(nv, 0);
    while (true) {
        tuples.push_back(idx);
        std::size_t k = nv;
        while (k > 0 && ++idx[k - 1] == cand.size()) idx[--k] = 0;
        if (k == 0) break;
    }
    // injective instances over early (formula-bearing) labels first
    std::stable_sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
        auto key = [](const std::vector<std::size_t>& t) {
            std::set<std::size_t> distinct(t.begin(), t.end());
            std::size_t mx = 0;
            for (auto v : t) mx = std::max(mx, v);
            return std::tuple<bool, std::size_t>(distinct.size() != t.size(), mx);
        };
        return key(a) < key(b);
    });

    for (const auto& t : tuples) {
        std::map<Label, Label> sigma;
        for (std::size_t i = 0; i < nv; ++i) sigma[r.uni_vars[i]] = cand[t[i]];
        bool hyp = true;
        for (const auto& a : r.conclusion_rels)
            if (!rel_member(s.rels, {map_label(sigma, a.lo), map_label(sigma, a.hi)})) {
                hyp = false;
                break;
            }
        if (!hyp) continue;
        RuleInstance inst;
        inst.rule = r.name;
        for (const auto& [k, v] : sigma) inst.subst[k] = v;
        std::set<Label> used_here = used;
        bool degenerate = r.premisses.empty();
        for (const auto& schema_prem : r.premisses) {
            std::map<Label, Label> si = sigma;
            for (const auto& fv : schema_prem.fresh) {
                Label f = fresh_label(used_here);
                used_here.insert(f);
                si[fv] = f;
                inst.subst[fv] = f;
            }
            RelMultiset added;
            for (const auto& a : schema_prem.added_rels)
                added.push_back({map_label(si, a.lo), map_label(si, a.hi)});
            RelMultiset merged = rel_set_union(s.rels, added);
            if (merged.size() == rel_set(s.rels).size() && schema_prem.fresh.empty()) {
                degenerate = true; // this premiss would equal the conclusion
                break;
            }
            inst.premises.push_back({merged, s.ante, s.succ});
        }
        if (degenerate) continue;
        out.push_back(std::move(inst));
    }
}

} // namespace

std::vector<RuleInstance> applicable_rules(const LabelledSequent& s0, const LogicSpec& logic) {
    LabelledSequent s = normalize_sequent(s0);
    std::vector<RuleInstance> out;

    // closure rules
    bool closed = false;
    for (const auto& lf : s.ante) {
        if (closed || !is_proper_atom(lf.f)) continue;
        for (const auto& rg : s.succ)
            if (formula_equal(lf.f, rg.f) && rel_member(s.rels, {lf.lab, rg.lab})) {
                out.push_back({"ax", {}, {{"x", lf.lab}, {"y", rg.lab}}});
                closed = true;
                break;
            }
    }
    for (const auto& lf : s.ante)
        if (lf.f->conn == Conn::Bot) {
            out.push_back({"l_bot", {}, {{"x", lf.lab}}});
            break;
        }

    // invertible single-premiss logical rules
    for (const auto& lf : distinct_with_conn(s.ante, Conn::And)) {
        auto ante = lfs_plus(lfs_plus(lfs_minus(s.ante, lf), {lf.lab, lf.f->lhs}),
                             {lf.lab, lf.f->rhs});
        out.push_back({"l_and", {{s.rels, ante, s.succ}}, {{"x", lf.lab}}});
    }
    for (const auto& lf : distinct_with_conn(s.succ, Conn::Or)) {
        auto succ = lfs_plus(lfs_plus(lfs_minus(s.succ, lf), {lf.lab, lf.f->lhs}),
                             {lf.lab, lf.f->rhs});
        out.push_back({"r_or", {{s.rels, s.ante, succ}}, {{"x", lf.lab}}});
    }
    // invertible branching logical rules
    for (const auto& lf : distinct_with_conn(s.succ, Conn::And)) {
        auto base = lfs_minus(s.succ, lf);
        out.push_back({"r_and",
                       {{s.rels, s.ante, lfs_plus(base, {lf.lab, lf.f->lhs})},
                        {s.rels, s.ante, lfs_plus(base, {lf.lab, lf.f->rhs})}},
                       {{"x", lf.lab}}});
    }
    for (const auto& lf : distinct_with_conn(s.ante, Conn::Or)) {
        auto base = lfs_minus(s.ante, lf);
        out.push_back({"l_or",
                       {{s.rels, lfs_plus(base, {lf.lab, lf.f->lhs}), s.succ},
                        {s.rels, lfs_plus(base, {lf.lab, lf.f->rhs}), s.succ}},
                       {{"x", lf.lab}}});
    }

    // relational saturation: refl for labels that carry formulas, then trans
    for (const auto& l : formula_labels(s))
        if (!rel_member(s.rels, {l, l})) {
            out.push_back(
                {"refl", {{rel_set_union(s.rels, {{l, l}}), s.ante, s.succ}}, {{"x", l}}});
            break;
        }
    {
        bool found = false;
        for (const auto& r1 : s.rels) {
            for (const auto& r2 : s.rels) {
                if (r1.hi != r2.lo || rel_member(s.rels, {r1.lo, r2.hi})) continue;
                out.push_back({"trans",
                               {{rel_set_union(s.rels, {{r1.lo, r2.hi}}), s.ante, s.succ}},
                               {{"x", r1.lo}, {"y", r1.hi}, {"z", r2.hi}}});
                found = true;
                break;
            }
            if (found) break;
        }
    }

    // l_imp: every x:(A->B) with every x<=y in the relational part; instances
    // whose case split is already recorded on the branch (y:A in the
    // succedent or y:B in the antecedent) are saturated and omitted
    for (const auto& lf : distinct_with_conn(s.ante, Conn::Imp)) {
        for (const auto& r : rel_set(s.rels)) {
            if (r.lo != lf.lab) continue;
            if (lfs_contains(s.succ, {r.hi, lf.f->lhs}) ||
                lfs_contains(s.ante, {r.hi, lf.f->rhs}))
                continue;
            out.push_back({"l_imp",
                           {{s.rels, s.ante, lfs_plus(s.succ, {r.hi, lf.f->lhs})},
                            {s.rels, lfs_plus(s.ante, {r.hi, lf.f->rhs}), s.succ}},
                           {{"x", lf.lab}, {"y", r.hi}}});
        }
    }

    // r_imp: one fresh label per succedent implication
    {
        std::set<Label> used;
        for (const auto& l : labels_of(s)) used.insert(l);
        for (const auto& lf : distinct_with_conn(s.succ, Conn::Imp)) {
            Label y = fresh_label(used);
            out.push_back({"r_imp",
                           {{rel_set_union(s.rels, {{lf.lab, y}}),
                             lfs_plus(s.ante, {y, lf.f->lhs}),
                             lfs_plus(lfs_minus(s.succ, lf), {y, lf.f->rhs})}},
                           {{"x", lf.lab}, {"y", y}}});
        }
    }

    // geometric extension rules, productive instances only
    for (const auto& r : logic.labelled_rules) push_geometric_instances(s, r, out);

    return out;
}

namespace {

enum class Out { proved, refuted_clean, refuted_loopy, cutoff };

struct Searcher {
    const LogicSpec& logic;
    SearchBudget budget;
    std::set<std::string> refuted_memo;
    long long nodes = 0;

    std::string canon_key(const LabelledSequent& s) {
        // set-collapsed and label-canonical; sound because weakening and
        // contraction are admissible
        LabelledSequent t;
        t.rels = rel_set(s.rels);
        for (const auto& lf : s.ante)
            if (!lfs_contains(t.ante, lf)) lfs_insert(t.ante, lf);
        for (const auto& lf : s.succ)
            if (!lfs_contains(t.succ, lf)) lfs_insert(t.succ, lf);
        return render_sequent(canonicalize_labels(t));
    }

    Out search(const LabelledSequent& s, int depth, std::vector<std::string>& path,
               ProofPtr& proof) {
        ++nodes;
        // closure rules end the branch
        for (const auto& lf : s.ante) {
            if (!is_proper_atom(lf.f)) continue;
            for (const auto& rg : s.succ)
                if (formula_equal(lf.f, rg.f) && rel_member(s.rels, {lf.lab, rg.lab})) {
                    proof = mk_proof("ax", s, {}, {{"x", lf.lab}, {"y", rg.lab}});
                    return Out::proved;
                }
        }
        for (const auto& lf : s.ante)
            if (lf.f->conn == Conn::Bot) {
                proof = mk_proof("l_bot", s, {}, {{"x", lf.lab}});
                return Out::proved;
            }

        if (depth >= budget.max_depth || seq_size(s) > budget.max_sequent_size)
            return Out::cutoff;
        std::string key = canon_key(s);
        if (refuted_memo.count(key)) return Out::refuted_clean;
        if (std::find(path.begin(), path.end(), key) != path.end()) return Out::refuted_loopy;

        // commit to the first applicable instance the budget allows; every
        // rule is invertible, so the commitment is also sound for refutation
        auto instances = applicable_rules(s, logic);
        const RuleInstance* chosen = nullptr;
        bool budget_skipped = false;
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
            chosen = &inst;
            break;
        }
        if (!chosen) return budget_skipped ? Out::cutoff : Out::refuted_clean;

        path.push_back(key);
        std::vector<ProofPtr> children;
        Out combined = Out::proved;
        for (const auto& prem : chosen->premises) {
            ProofPtr child;
            Out o = search(prem, depth + 1, path, child);
            if (o == Out::proved) {
                children.push_back(child);
                continue;
            }
            combined = o;
            break;
        }
        path.pop_back();
        if (combined == Out::proved) {
            proof = mk_proof(chosen->rule, s, std::move(children), chosen->subst);
            return Out::proved;
        }
        if (combined == Out::refuted_clean) refuted_memo.insert(key);
        return combined;
    }
};

} // namespace

SearchResult prove(const LabelledSequent& s, const LogicSpec& logic, const SearchBudget& b) {
    Searcher searcher{logic, b};
    std::vector<std::string> path;
    ProofPtr proof;
    Out o = searcher.search(normalize_sequent(s), 0, path, proof);
    SearchResult res;
    res.nodes = searcher.nodes;
    switch (o) {
    case Out::proved:
        res.status = SearchStatus::proved;
        res.proof = proof;
        break;
    case Out::refuted_clean:
    case Out::refuted_loopy:
        res.status = SearchStatus::refuted;
        break;
    case Out::cutoff:
        res.status = SearchStatus::exhausted;
        break;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Admissible-rule transforms
// ---------------------------------------------------------------------------

namespace {

void collect_labels(const ProofPtr& p, std::set<Label>& out) {
    for (const auto& l : labels_of(p->conclusion)) out.insert(l);
    for (const auto& q : p->premises) collect_labels(q, out);
}

// Renames via sub at every node. Labels first occurring above a node are
// binders: they are renamed apart when they collide with `forbidden` or with
// the image of a label in scope, and are otherwise shielded from sub.
ProofPtr subst_rec(const ProofPtr& p, const std::map<Label, Label>& sub,
                   const std::set<Label>& forbidden, std::set<Label>& avoid) {
    LabelledSequent concl = map_sequent(p->conclusion, sub);
    std::set<Label> own;
    for (const auto& l : labels_of(p->conclusion)) own.insert(l);

    std::vector<ProofPtr> children;
    std::map<Label, Label> binder_renames; // shared across premisses
    for (const auto& q : p->premises) {
        std::map<Label, Label> csub = sub;
        for (const auto& l : labels_of(q->conclusion)) {
            if (own.count(l)) continue; // in scope: mapped by csub as-is
            auto it = binder_renames.find(l);
            if (it != binder_renames.end()) {
                csub[l] = it->second;
                continue;
            }
            bool collide = forbidden.count(l) > 0;
            for (const auto& k : own)
                if (k != l && map_label(sub, k) == l) collide = true;
            Label pick = l;
            if (collide) {
                pick = fresh_label(avoid);
                avoid.insert(pick);
            }
            binder_renames[l] = pick;
            csub[l] = pick; // overrides any stale entry of sub for l
        }
        children.push_back(subst_rec(q, csub, forbidden, avoid));
    }
    std::map<std::string, std::string> nsubst;
    for (const auto& [k, v] : p->subst) {
        auto it = binder_renames.find(v);
        nsubst[k] = it != binder_renames.end() ? it->second : map_label(sub, v);
    }
    return mk_proof(p->rule, std::move(concl), std::move(children), std::move(nsubst));
}

// Renames internal binders away from the given labels, changing nothing else.
ProofPtr rename_apart(const ProofPtr& p, const std::set<Label>& clashing) {
    std::set<Label> avoid = clashing;
    collect_labels(p, avoid);
    return subst_rec(p, {}, clashing, avoid);
}

// Decorates every sequent in the tree with the additions; internal binders
// are renamed apart first so eigenvariable conditions survive.
ProofPtr weaken_many(const ProofPtr& p, const RelMultiset& rels, const LfMultiset& ante,
                     const LfMultiset& succ) {
    std::set<Label> add_labels;
    for (const auto& r : rels) {
        add_labels.insert(r.lo);
        add_labels.insert(r.hi);
    }
    for (const auto& lf : ante) add_labels.insert(lf.lab);
    for (const auto& lf : succ) add_labels.insert(lf.lab);

    std::function<ProofPtr(const ProofPtr&)> rec = [&](const ProofPtr& q) -> ProofPtr {
        LabelledSequent c = q->conclusion;
        c.rels = rel_set_union(c.rels, rels);
        c.ante = lfs_union(c.ante, ante);
        c.succ = lfs_union(c.succ, succ);
        std::vector<ProofPtr> children;
        for (const auto& r : q->premises) children.push_back(rec(r));
        return mk_proof(q->rule, std::move(c), std::move(children), q->subst);
    };
    return rec(rename_apart(p, add_labels));
}

// ---- inversions -----------------------------------------------------------

// Is occ the principal formula of this node under its own rule?
bool principal_matches(const ProofPtr& p, const LabelledFormula& occ, bool in_succ) {
    const LabelledSequent& c = p->conclusion;
    const std::string& r = p->rule;
    if (in_succ) {
        if (r == "r_and" && occ.f->conn == Conn::And && lfs_contains(c.succ, occ)) {
            auto base = lfs_minus(c.succ, occ);
            return p->premises.size() == 2 &&
                   lfs_equal(p->premises[0]->conclusion.succ,
                             lfs_plus(base, {occ.lab, occ.f->lhs})) &&
                   lfs_equal(p->premises[1]->conclusion.succ,
                             lfs_plus(base, {occ.lab, occ.f->rhs}));
        }
        if (r == "r_or" && occ.f->conn == Conn::Or && lfs_contains(c.succ, occ)) {
            auto expect = lfs_plus(lfs_plus(lfs_minus(c.succ, occ), {occ.lab, occ.f->lhs}),
                                   {occ.lab, occ.f->rhs});
            return p->premises.size() == 1 && lfs_equal(p->premises[0]->conclusion.succ, expect);
        }
        if (r == "r_imp" && occ.f->conn == Conn::Imp && lfs_contains(c.succ, occ)) {
            if (p->premises.size() != 1) return false;
            const auto& prem = p->premises[0]->conclusion;
            auto extra = rel_diff(prem.rels, c.rels);
            if (extra.size() != 1 || extra[0].lo != occ.lab) return false;
            return lfs_equal(prem.ante, lfs_plus(c.ante, {extra[0].hi, occ.f->lhs})) &&
                   lfs_equal(prem.succ,
                             lfs_plus(lfs_minus(c.succ, occ), {extra[0].hi, occ.f->rhs}));
        }
        return false;
    }
    if (r == "l_and" && occ.f->conn == Conn::And && lfs_contains(c.ante, occ)) {
        auto expect = lfs_plus(lfs_plus(lfs_minus(c.ante, occ), {occ.lab, occ.f->lhs}),
                               {occ.lab, occ.f->rhs});
        return p->premises.size() == 1 && lfs_equal(p->premises[0]->conclusion.ante, expect);
    }
    if (r == "l_or" && occ.f->conn == Conn::Or && lfs_contains(c.ante, occ)) {
        auto base = lfs_minus(c.ante, occ);
        return p->premises.size() == 2 &&
               lfs_equal(p->premises[0]->conclusion.ante,
                         lfs_plus(base, {occ.lab, occ.f->lhs})) &&
               lfs_equal(p->premises[1]->conclusion.ante,
                         lfs_plus(base, {occ.lab, occ.f->rhs}));
    }
    return false;
}

// Shared inversion walker: removes one occurrence of occ and adds the given
// formulas throughout; at a node where occ is principal for stop_rule the
// indicated premise subtree already proves the target.
ProofPtr invert_walk(const ProofPtr& p, const LabelledFormula& occ, bool in_succ,
                     const LfMultiset& add_ante, const LfMultiset& add_succ,
                     const std::string& stop_rule, int take_premise) {
    const LabelledSequent& c = p->conclusion;
    auto transform = [&](const LabelledSequent& s) {
        LabelledSequent t = s;
        if (in_succ) {
            t.succ = lfs_union(lfs_minus(t.succ, occ), add_succ);
            t.ante = lfs_union(t.ante, add_ante);
        } else {
            t.ante = lfs_union(lfs_minus(t.ante, occ), add_ante);
            t.succ = lfs_union(t.succ, add_succ);
        }
        return t;
    };

    if (p->rule == stop_rule && principal_matches(p, occ, in_succ))
        return p->premises[static_cast<std::size_t>(take_premise)];

    if (p->rule == "weak") {
        const auto& prem = p->premises[0]->conclusion;
        bool present = in_succ ? lfs_contains(prem.succ, occ) : lfs_contains(prem.ante, occ);
        if (!present) return mk_proof("weak", transform(c), {p->premises[0]}, p->subst);
        return mk_proof("weak", transform(c),
                        {invert_walk(p->premises[0], occ, in_succ, add_ante, add_succ,
                                     stop_rule, take_premise)},
                        p->subst);
    }
    if (p->rule == "contr") {
        const auto& prem = p->premises[0]->conclusion;
        int k = in_succ ? lfs_count(c.succ, occ) : lfs_count(c.ante, occ);
        int m = in_succ ? lfs_count(prem.succ, occ) : lfs_count(prem.ante, occ);
        if (m > k && k < 2)
            throw std::invalid_argument("inversion through a collapsing contraction node");
        ProofPtr child = invert_walk(p->premises[0], occ, in_succ, add_ante, add_succ,
                                     stop_rule, take_premise);
        // child retains m-1 >= k-1 occurrences; the node absorbs the surplus
        return mk_proof("contr", transform(c), {child}, p->subst);
    }

    // every other rule keeps context occurrences in all premisses
    std::vector<ProofPtr> children;
    for (const auto& q : p->premises)
        children.push_back(
            invert_walk(q, occ, in_succ, add_ante, add_succ, stop_rule, take_premise));
    return mk_proof(p->rule, transform(c), std::move(children), p->subst);
}

} // namespace

ProofPtr subst_labels_proof(const ProofPtr& p, const std::map<Label, Label>& sub) {
    std::set<Label> avoid;
    collect_labels(p, avoid);
    std::set<Label> forbidden;
    for (const auto& [k, v] : sub) {
        avoid.insert(k);
        avoid.insert(v);
        forbidden.insert(v);
    }
    return subst_rec(p, sub, forbidden, avoid);
}

ProofPtr weaken_proof_rel(const ProofPtr& p, const RelAtom& r) {
    return weaken_many(p, {r}, {}, {});
}

ProofPtr weaken_proof(const ProofPtr& p, const LabelledFormula& lf, bool in_succ) {
    if (in_succ) return weaken_many(p, {}, {}, one(lf));
    return weaken_many(p, {}, one(lf), {});
}

ProofPtr invert_l_and(const ProofPtr& p, const LabelledFormula& occ) {
    assert(occ.f->conn == Conn::And);
    return invert_walk(rename_apart(p, {occ.lab}), occ, false,
                       two({occ.lab, occ.f->lhs}, {occ.lab, occ.f->rhs}), {}, "l_and", 0);
}

ProofPtr invert_r_and(const ProofPtr& p, const LabelledFormula& occ, bool right_conjunct) {
    assert(occ.f->conn == Conn::And);
    return invert_walk(rename_apart(p, {occ.lab}), occ, true, {},
                       one({occ.lab, right_conjunct ? occ.f->rhs : occ.f->lhs}), "r_and",
                       right_conjunct ? 1 : 0);
}

ProofPtr invert_l_or(const ProofPtr& p, const LabelledFormula& occ, bool right_disjunct) {
    assert(occ.f->conn == Conn::Or);
    return invert_walk(rename_apart(p, {occ.lab}), occ, false,
                       one({occ.lab, right_disjunct ? occ.f->rhs : occ.f->lhs}), {}, "l_or",
                       right_disjunct ? 1 : 0);
}

ProofPtr invert_r_or(const ProofPtr& p, const LabelledFormula& occ) {
    assert(occ.f->conn == Conn::Or);
    return invert_walk(rename_apart(p, {occ.lab}), occ, true, {},
                       two({occ.lab, occ.f->lhs}, {occ.lab, occ.f->rhs}), "r_or", 0);
}

ProofPtr invert_r_imp(const ProofPtr& p0, const LabelledFormula& occ, const Label& fresh) {
    assert(occ.f->conn == Conn::Imp);
    std::set<Label> used;
    collect_labels(p0, used);
    if (used.count(fresh)) throw std::invalid_argument("invert_r_imp: label not fresh");
    ProofPtr p = rename_apart(p0, {fresh, occ.lab});

    // removes occ, adds occ.lab<=fresh, fresh:A / fresh:B throughout; an
    // r_imp node principal on occ yields its premise up to renaming
    std::function<ProofPtr(const ProofPtr&)> walk = [&](const ProofPtr& q) -> ProofPtr {
        const LabelledSequent& c = q->conclusion;
        auto transformed = [&](const LabelledSequent& s) {
            LabelledSequent t = s;
            t.rels = rel_set_union(t.rels, {{occ.lab, fresh}});
            t.ante = lfs_plus(t.ante, {fresh, occ.f->lhs});
            t.succ = lfs_plus(lfs_minus(t.succ, occ), {fresh, occ.f->rhs});
            return t;
        };
        if (q->rule == "r_imp" && principal_matches(q, occ, true)) {
            const auto& prem = q->premises[0]->conclusion;
            auto extra = rel_diff(prem.rels, c.rels);
            return subst_labels_proof(q->premises[0], {{extra[0].hi, fresh}});
        }
        if (q->rule == "weak") {
            const auto& prem = q->premises[0]->conclusion;
            if (!lfs_contains(prem.succ, occ))
                return mk_proof("weak", transformed(c), {q->premises[0]}, q->subst);
            return mk_proof("weak", transformed(c), {walk(q->premises[0])}, q->subst);
        }
        if (q->rule == "contr") {
            const auto& prem = q->premises[0]->conclusion;
            int k = lfs_count(c.succ, occ), m = lfs_count(prem.succ, occ);
            if (m > k && k < 2)
                throw std::invalid_argument("inversion through a collapsing contraction node");
            return mk_proof("contr", transformed(c), {walk(q->premises[0])}, q->subst);
        }
        std::vector<ProofPtr> children;
        for (const auto& r : q->premises) children.push_back(walk(r));
        return mk_proof(q->rule, transformed(c), std::move(children), q->subst);
    };
    return walk(p);
}

ProofPtr contract_proof(const ProofPtr& p, const LabelledFormula& lf, bool in_succ) {
    const LabelledSequent& c = p->conclusion;
    int count = in_succ ? lfs_count(c.succ, lf) : lfs_count(c.ante, lf);
    if (count < 2) throw std::invalid_argument("contract_proof: formula does not occur twice");

    auto contracted = [&](const LabelledSequent& s) {
        LabelledSequent t = s;
        if (in_succ)
            t.succ = lfs_minus(t.succ, lf);
        else
            t.ante = lfs_minus(t.ante, lf);
        return t;
    };
    LabelledSequent target = contracted(c);
    const std::string& r = p->rule;

    // leaves stay leaves: at least one occurrence remains
    if (r == "ax" || r == "l_bot") return mk_proof(r, target, {}, p->subst);

    if (principal_matches(p, lf, in_succ)) {
        if (r == "l_and") {
            ProofPtr inv = invert_l_and(p->premises[0], lf);
            LabelledFormula a{lf.lab, lf.f->lhs}, b{lf.lab, lf.f->rhs};
            return mk_proof("l_and", target,
                            {contract_proof(contract_proof(inv, a, false), b, false)},
                            p->subst);
        }
        if (r == "r_and") {
            LabelledFormula a{lf.lab, lf.f->lhs}, b{lf.lab, lf.f->rhs};
            ProofPtr pa = contract_proof(invert_r_and(p->premises[0], lf, false), a, true);
            ProofPtr pb = contract_proof(invert_r_and(p->premises[1], lf, true), b, true);
            return mk_proof("r_and", target, {pa, pb}, p->subst);
        }
        if (r == "l_or") {
            LabelledFormula a{lf.lab, lf.f->lhs}, b{lf.lab, lf.f->rhs};
            ProofPtr pa = contract_proof(invert_l_or(p->premises[0], lf, false), a, false);
            ProofPtr pb = contract_proof(invert_l_or(p->premises[1], lf, true), b, false);
            return mk_proof("l_or", target, {pa, pb}, p->subst);
        }
        if (r == "r_or") {
            ProofPtr inv = invert_r_or(p->premises[0], lf);
            LabelledFormula a{lf.lab, lf.f->lhs}, b{lf.lab, lf.f->rhs};
            return mk_proof("r_or", target,
                            {contract_proof(contract_proof(inv, a, true), b, true)}, p->subst);
        }
        if (r == "r_imp") {
            // invert the context copy inside the premise, merge the two fresh
            // labels, contract the doubled side formulas
            const auto& prem = p->premises[0]->conclusion;
            auto extra = rel_diff(prem.rels, c.rels);
            const Label& y = extra[0].hi;
            std::set<Label> used;
            collect_labels(p, used);
            Label z = fresh_label(used);
            ProofPtr merged = subst_labels_proof(invert_r_imp(p->premises[0], lf, z), {{z, y}});
            merged = contract_proof(merged, {y, lf.f->lhs}, false);
            merged = contract_proof(merged, {y, lf.f->rhs}, true);
            return mk_proof("r_imp", target, {merged}, p->subst);
        }
    }
    if (r == "contr") // the node simply absorbs one more duplicate
        return mk_proof("contr", target, {p->premises[0]}, p->subst);
    if (r == "weak") {
        const auto& prem = p->premises[0]->conclusion;
        int m = in_succ ? lfs_count(prem.succ, lf) : lfs_count(prem.ante, lf);
        ProofPtr child = p->premises[0];
        if (m > count - 1) child = contract_proof(child, lf, in_succ);
        return mk_proof("weak", target, {child}, p->subst);
    }
    // context rules (including l_imp, whose principal persists): recurse
    std::vector<ProofPtr> children;
    for (const auto& q : p->premises) children.push_back(contract_proof(q, lf, in_succ));
    return mk_proof(r, target, std::move(children), p->subst);
}

ProofPtr mono_proof(const Label& x, const Label& y, const FormulaPtr& a) {
    LabelledSequent root{{{x, y}}, {{x, a}}, {{y, a}}};
    switch (a->conn) {
    case Conn::Atom:
        return mk_proof("ax", root, {}, {{"x", x}, {"y", y}});
    case Conn::Bot:
        return mk_proof("l_bot", root, {}, {{"x", x}});
    case Conn::Top:
        throw std::invalid_argument("mono_proof: no rules for the verum constant");
    case Conn::And: {
        LabelledSequent s1 = root;
        s1.ante = two({x, a->lhs}, {x, a->rhs});
        ProofPtr pa = weaken_proof(mono_proof(x, y, a->lhs), {x, a->rhs}, false);
        ProofPtr pb = weaken_proof(mono_proof(x, y, a->rhs), {x, a->lhs}, false);
        return mk_proof("l_and", root, {mk_proof("r_and", s1, {pa, pb}, {{"x", y}})},
                        {{"x", x}});
    }
    case Conn::Or: {
        auto branch = [&](const FormulaPtr& d, const FormulaPtr& other) {
            LabelledSequent s{root.rels, one({x, d}), root.succ};
            return mk_proof("r_or", s, {weaken_proof(mono_proof(x, y, d), {y, other}, true)},
                            {{"x", y}});
        };
        return mk_proof("l_or", root, {branch(a->lhs, a->rhs), branch(a->rhs, a->lhs)},
                        {{"x", x}});
    }
    case Conn::Imp: {
        std::set<Label> used{x, y};
        Label z = fresh_label(used);
        // r_imp on y:(B->C), close the order up to z, then l_imp on x:(B->C)
        LabelledSequent s1{rel_set_union(root.rels, {{y, z}}), two({x, a}, {z, a->lhs}),
                           one({z, a->rhs})};
        RelMultiset r2 = rel_set_union(s1.rels, {{x, z}});
        LabelledSequent s2{r2, s1.ante, s1.succ};
        RelMultiset r3 = rel_set_union(r2, {{z, z}});
        LabelledSequent s3{r3, s1.ante, s1.succ};
        RelMultiset context_rels = rel_diff(r3, {{z, z}});
        ProofPtr left = weaken_many(mono_proof(z, z, a->lhs), context_rels, one({x, a}),
                                    one({z, a->rhs}));
        ProofPtr right = weaken_many(mono_proof(z, z, a->rhs), context_rels,
                                     two({x, a}, {z, a->lhs}), {});
        ProofPtr limp = mk_proof("l_imp", s3, {left, right}, {{"x", x}, {"y", z}});
        ProofPtr refl = mk_proof("refl", s2, {limp}, {{"x", z}});
        // when x == y the transitivity step would add nothing and is omitted
        ProofPtr up =
            x == y ? refl : mk_proof("trans", s1, {refl}, {{"x", x}, {"y", y}, {"z", z}});
        return mk_proof("r_imp", root, {up}, {{"x", y}, {"y", z}});
    }
    }
    throw std::logic_error("mono_proof: unhandled connective");
}

ProofPtr derived_rel_rule(const ProofPtr& p, RelRuleKind kind, const RelAtom& rel, FormulaPtr a) {
    const LabelledSequent& s = p->conclusion;
    if (!rel_member(s.rels, rel))
        throw std::invalid_argument("derived_rel_rule: relational atom not present");
    const Label& x = rel.lo;
    const Label& y = rel.hi;

    if (kind == RelRuleKind::left) {
        if (!a) {
            for (const auto& lf : s.ante)
                if (lf.lab == x && lfs_contains(s.ante, {y, lf.f})) { a = lf.f; break; }
        }
        if (!a || !lfs_contains(s.ante, {x, a}) || !lfs_contains(s.ante, {y, a}))
            throw std::invalid_argument("derived_rel_rule: premiss shape mismatch");
        LabelledSequent concl = s;
        concl.ante = lfs_minus(concl.ante, {y, a});
        // cut against the monotonicity derivation of x:A => y:A
        ProofPtr mono = mono_proof(x, y, a);
        ProofPtr p0 = weaken_many(mono, rel_diff(concl.rels, mono->conclusion.rels),
                                  lfs_diff(concl.ante, one({x, a})), concl.succ);
        return mk_proof("cut", concl, {p0, p}, {{"x", x}, {"y", y}});
    }
    if (!a) {
        for (const auto& lf : s.succ)
            if (lf.lab == x && lfs_contains(s.succ, {y, lf.f})) { a = lf.f; break; }
    }
    if (!a || !lfs_contains(s.succ, {x, a}) || !lfs_contains(s.succ, {y, a}))
        throw std::invalid_argument("derived_rel_rule: premiss shape mismatch");
    LabelledSequent concl = s;
    concl.succ = lfs_minus(concl.succ, {x, a});
    ProofPtr mono = mono_proof(x, y, a);
    ProofPtr p1 = weaken_many(mono, rel_diff(concl.rels, mono->conclusion.rels), concl.ante,
                              lfs_diff(concl.succ, one({y, a})));
    return mk_proof("cut", concl, {p, p1}, {{"x", x}, {"y", y}});
}

} // namespace geoseq
