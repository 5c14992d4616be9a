#include "geoseq/rules.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace geoseq {

namespace {

RelMultiset closure_without_reflexive(const RelMultiset& rels) {
    RelMultiset closed = transitive_closure(rels);
    RelMultiset out;
    for (const auto& r : closed)
        if (r.lo != r.hi) ms_insert(out, r, rel_less);
    return out;
}

bool rels_contain(const RelMultiset& rels, const Label& lo, const Label& hi) {
    return ms_contains(rels, RelAtom{lo, hi}, rel_less);
}

// Builds the schematic components over a relation set: one component per
// label, monotone flow along each pair (the lower label's antecedent
// variable into the higher's antecedent, the higher's succedent variable
// into the lower's succedent), then symmetric pairs merged into clusters.
// Fresh labels carry no variables of their own and get empty succedents.
std::vector<HsComponentPattern> build_components(const RelMultiset& rels,
                                                 const std::vector<Label>& principal,
                                                 const std::vector<Label>& fresh) {
    std::vector<Label> all = principal;
    all.insert(all.end(), fresh.begin(), fresh.end());
    auto var_of = [&](const Label& l) -> int {
        auto it = std::find(principal.begin(), principal.end(), l);
        return it == principal.end() ? -1 : static_cast<int>(it - principal.begin());
    };

    std::map<Label, std::set<int>> ante, succ;
    for (const auto& l : all) {
        if (var_of(l) >= 0) {
            ante[l].insert(var_of(l));
            succ[l].insert(var_of(l));
        } else {
            ante[l]; // fresh label: component exists but starts empty
            succ[l];
        }
    }
    for (const auto& r : rels) {
        int lo_var = var_of(r.lo), hi_var = var_of(r.hi);
        if (lo_var >= 0) ante[r.hi].insert(lo_var);
        if (hi_var >= 0 && var_of(r.lo) >= 0) succ[r.lo].insert(hi_var);
    }
    // no succedent variables on the components of fresh labels
    for (const auto& l : fresh) succ[l].clear();

    // cluster labels linked by a symmetric pair
    std::map<Label, Label> parent;
    for (const auto& l : all) parent[l] = l;
    std::function<Label(const Label&)> find = [&](const Label& l) -> Label {
        return parent[l] == l ? l : parent[l] = find(parent[l]);
    };
    for (const auto& r : rels)
        if (rels_contain(rels, r.hi, r.lo)) parent[find(r.lo)] = find(r.hi);

    std::vector<HsComponentPattern> comps;
    std::set<Label> done;
    for (const auto& l : all) {
        Label root = find(l);
        if (done.count(root)) continue;
        done.insert(root);
        HsComponentPattern c;
        std::set<int> a, s;
        for (const auto& m : all)
            if (find(m) == root) {
                c.labels.push_back(m);
                a.insert(ante[m].begin(), ante[m].end());
                s.insert(succ[m].begin(), succ[m].end());
            }
        std::sort(c.labels.begin(), c.labels.end());
        c.ante.assign(a.begin(), a.end());
        c.succ.assign(s.begin(), s.end());
        bool duplicate = false;
        for (const auto& prev : comps)
            if (prev.labels == c.labels && prev.ante == c.ante && prev.succ == c.succ)
                duplicate = true;
        if (!duplicate) comps.push_back(std::move(c));
    }
    return comps;
}

} // namespace

LabelledRuleSchema to_labelled_rule(const GeometricImplication& gi, const std::string& name) {
    LabelledRuleSchema r;
    r.name = name;
    r.uni_vars = gi.uni_vars;
    std::sort(r.uni_vars.begin(), r.uni_vars.end());
    r.conclusion_rels = gi.hypothesis;
    for (const auto& alt : gi.alternatives) {
        LabelledRuleSchema::Premiss p;
        p.fresh = alt.ex_vars;
        p.added_rels = alt.atoms;
        r.premisses.push_back(std::move(p));
    }
    return r;
}

HsRuleSchema to_hypersequent_rule(const GeometricImplication& gi, const std::string& name) {
    HsRuleSchema r;
    r.name = name;
    r.principal_labels = gi.uni_vars;
    std::sort(r.principal_labels.begin(), r.principal_labels.end());
    r.conclusion = build_components(closure_without_reflexive(gi.hypothesis),
                                    r.principal_labels, {});
    for (const auto& alt : gi.alternatives) {
        RelMultiset rels = gi.hypothesis;
        for (const auto& a : alt.atoms) ms_insert(rels, a, rel_less);
        std::vector<Label> fresh = alt.ex_vars;
        std::sort(fresh.begin(), fresh.end());
        r.premisses.push_back(
            build_components(closure_without_reflexive(rels), r.principal_labels, fresh));
    }
    return r;
}

namespace {

// True when no premiss moves, merges, or copies any variable of the chosen
// side: then that side is pure context and the slice patterns drop out.
bool side_untouched(const HsRuleSchema& r, bool succ_side) {
    auto pattern_of = [&](const HsComponentPattern& c) { return succ_side ? c.succ : c.ante; };
    std::map<Label, std::pair<std::vector<Label>, std::vector<int>>> concl;
    for (const auto& c : r.conclusion)
        for (const auto& l : c.labels) concl[l] = {c.labels, pattern_of(c)};
    for (const auto& prem : r.premisses) {
        for (const auto& c : prem) {
            bool has_principal = false;
            for (const auto& l : c.labels)
                if (concl.count(l)) has_principal = true;
            if (!has_principal) {
                // a component of fresh labels must be empty on this side
                if (!pattern_of(c).empty()) return false;
                continue;
            }
            for (const auto& l : c.labels) {
                auto it = concl.find(l);
                if (it == concl.end()) return false; // fresh label merged in
                if (it->second.first != c.labels || it->second.second != pattern_of(c))
                    return false;
            }
        }
    }
    return true;
}

} // namespace

SlsRuleSchema hs_rule_to_sls_rule(const HsRuleSchema& r) {
    SlsRuleSchema s;
    s.name = r.name;
    s.principal_labels = r.principal_labels;
    s.ante_absorbed = side_untouched(r, false);
    s.succ_absorbed = side_untouched(r, true);

    auto pattern = [&](const HsComponentPattern& c) {
        SlsSlicePattern p;
        if (!s.ante_absorbed) p.ante = c.ante;
        if (!s.succ_absorbed) p.succ = c.succ;
        return p;
    };

    // a merged conclusion cluster keeps its content at every member label
    // (their slices coincide); a merged premiss cluster lives only at its
    // representative, the least principal member
    for (const auto& c : r.conclusion)
        for (const auto& l : c.labels) s.conclusion[l] = pattern(c);

    std::set<Label> principal(r.principal_labels.begin(), r.principal_labels.end());
    for (const auto& prem : r.premisses) {
        SlsRuleSchema::Premiss p;
        for (const auto& c : prem) {
            Label rep;
            for (const auto& l : c.labels)
                if (principal.count(l) && (rep.empty() || l < rep)) rep = l;
            if (rep.empty()) rep = c.labels.front(); // all-fresh component
            p.slices[rep] = pattern(c);
            for (const auto& l : c.labels)
                if (l != rep && principal.count(l)) p.merged[l] = rep;
            for (const auto& l : c.labels)
                if (!principal.count(l) && l == rep) p.fresh.push_back(l);
        }
        std::sort(p.fresh.begin(), p.fresh.end());
        s.premisses.push_back(std::move(p));
    }

    if (!s.ante_absorbed) s.ante_slice_complete = r.principal_labels;
    if (!s.succ_absorbed) s.succ_slice_complete = r.principal_labels;
    return s;
}

RuleAnalysis analyze_rule(const HsRuleSchema& r) {
    std::map<int, int> ante_uses, succ_uses;
    for (const auto& c : r.conclusion) {
        for (int v : c.ante) ++ante_uses[v];
        for (int v : c.succ) ++succ_uses[v];
    }
    for (const auto& [v, n] : ante_uses)
        if (n > 1) return {false};
    for (const auto& [v, n] : succ_uses)
        if (n > 1) return {false};
    return {true};
}

namespace {

std::string rels_text(const RelMultiset& rels) {
    std::string out;
    for (std::size_t i = 0; i < rels.size(); ++i) {
        if (i) out += ", ";
        out += rels[i].lo + "<=" + rels[i].hi;
    }
    return out;
}

std::string hs_component_text(const HsComponentPattern& c) {
    std::string out;
    for (std::size_t i = 0; i < c.ante.size(); ++i)
        out += (i ? ", G" : "G") + std::to_string(c.ante[i] + 1);
    out += out.empty() ? "=>" : " =>";
    for (std::size_t i = 0; i < c.succ.size(); ++i)
        out += (i ? ", D" : " D") + std::to_string(c.succ[i] + 1);
    return out;
}

std::string hs_line(const std::vector<HsComponentPattern>& comps) {
    std::string out = "H";
    for (const auto& c : comps) out += " | " + hs_component_text(c);
    return out;
}

std::string sls_line(const SlsRuleSchema& r, const std::map<Label, SlsSlicePattern>& slices) {
    std::string out;
    auto add = [&](const std::string& piece) {
        if (!out.empty()) out += ", ";
        out += piece;
    };
    for (const auto& [l, p] : slices)
        for (int v : p.ante) add(l + ":G" + std::to_string(v + 1));
    add(r.ante_absorbed ? "G" : "G'");
    out += " => ";
    std::string rhs = r.succ_absorbed ? "D" : "D'";
    for (const auto& [l, p] : slices)
        for (int v : p.succ) rhs += ", " + l + ":D" + std::to_string(v + 1);
    return out + rhs;
}

std::string join_labels(const std::vector<Label>& ls) {
    std::string out;
    for (std::size_t i = 0; i < ls.size(); ++i) out += (i ? "," : "") + ls[i];
    return out;
}

} // namespace

std::string render_rule(const LabelledRuleSchema& r) {
    std::ostringstream out;
    out << "rule " << r.name << " (labelled):\n";
    std::string concl = rels_text(r.conclusion_rels);
    std::string concl_tail = (concl.empty() ? "" : concl + ", ") + "S ; G => D";
    for (const auto& p : r.premisses) {
        std::string added = rels_text(p.added_rels);
        out << "  premiss:     " << (added.empty() ? "" : added + ", ") << concl_tail;
        if (!p.fresh.empty()) out << "   (" << join_labels(p.fresh) << " fresh)";
        out << "\n";
    }
    out << "  conclusion:  " << concl_tail << "\n";
    return out.str();
}

std::string render_rule(const HsRuleSchema& r) {
    std::ostringstream out;
    out << "rule " << r.name << " (hypersequent):\n";
    for (const auto& p : r.premisses) out << "  premiss:     " << hs_line(p) << "\n";
    out << "  conclusion:  " << hs_line(r.conclusion) << "\n";
    return out.str();
}

std::string render_rule(const SlsRuleSchema& r) {
    std::ostringstream out;
    out << "rule " << r.name << " (simply labelled):\n";
    for (const auto& p : r.premisses) {
        out << "  premiss:     " << sls_line(r, p.slices);
        std::string notes;
        for (const auto& [from, to] : p.merged)
            notes += (notes.empty() ? "" : "; ") + ("merges " + from + " into " + to);
        if (!p.fresh.empty())
            notes += (notes.empty() ? "" : "; ") + join_labels(p.fresh) + " fresh";
        if (!notes.empty()) out << "   (" << notes << ")";
        out << "\n";
    }
    out << "  conclusion:  " << sls_line(r, r.conclusion) << "\n";
    std::string conds;
    if (!r.ante_slice_complete.empty() && !r.succ_slice_complete.empty())
        conds = join_labels(r.ante_slice_complete) + " fresh for G',D'";
    else if (!r.ante_slice_complete.empty())
        conds = join_labels(r.ante_slice_complete) + " fresh for G'";
    else if (!r.succ_slice_complete.empty())
        conds = join_labels(r.succ_slice_complete) + " fresh for D'";
    if (!conds.empty()) out << "  side conditions: " << conds << "\n";
    return out.str();
}

std::vector<std::string> builtin_logic_names() {
    return {"int", "jankov", "gd", "bd2", "class"};
}

LogicSpec logic_from_axioms(const std::string& name,
                            const std::vector<GeometricImplication>& axioms) {
    LogicSpec spec;
    spec.name = name;
    spec.axioms = axioms;
    for (std::size_t i = 0; i < axioms.size(); ++i) {
        std::string rule_name = "geo" + std::to_string(i + 1);
        spec.labelled_rules.push_back(to_labelled_rule(axioms[i], rule_name));
        spec.hs_rules.push_back(to_hypersequent_rule(axioms[i], rule_name));
        spec.sls_rules.push_back(hs_rule_to_sls_rule(spec.hs_rules.back()));
    }
    return spec;
}

LogicSpec builtin_logic(const std::string& name) {
    auto make = [&](const char* axiom, const char* rule_name, const char* characteristic) {
        LogicSpec spec;
        spec.name = name;
        if (axiom) {
            spec.axioms.push_back(parse_geometric(axiom));
            spec.labelled_rules.push_back(to_labelled_rule(spec.axioms[0], rule_name));
            spec.hs_rules.push_back(to_hypersequent_rule(spec.axioms[0], rule_name));
            spec.sls_rules.push_back(hs_rule_to_sls_rule(spec.hs_rules[0]));
        }
        if (characteristic) spec.characteristic = parse_formula(characteristic);
        return spec;
    };
    if (name == "int") return make(nullptr, nullptr, nullptr);
    if (name == "jankov") return make("true => ex z. x<=z & y<=z", "dir", "~A | ~~A");
    if (name == "gd") return make("true => x<=y || y<=x", "lin", "(A -> B) | (B -> A)");
    if (name == "bd2")
        return make("x<=y, y<=z => y<=x || z<=y", "bd2", "B | (B -> (A | ~A))");
    if (name == "class") return make("x<=y => y<=x", "sym", "A | ~A");
    throw std::invalid_argument("unknown logic '" + name +
                                "' (known: int, jankov, gd, bd2, class)");
}

} // namespace geoseq
