#include "geoseq/sequent.hpp"

#include <cassert>
#include <functional>

namespace geoseq {

int lf_compare(const LabelledFormula& a, const LabelledFormula& b) {
    int c = a.lab.compare(b.lab);
    if (c != 0) return c < 0 ? -1 : 1;
    return formula_compare(a.f, b.f);
}
bool lf_equal(const LabelledFormula& a, const LabelledFormula& b) { return lf_compare(a, b) == 0; }
bool lf_less(const LabelledFormula& a, const LabelledFormula& b) { return lf_compare(a, b) < 0; }

namespace {
const auto lf_lt = [](const LabelledFormula& a, const LabelledFormula& b) { return lf_less(a, b); };
const auto f_lt = [](const FormulaPtr& a, const FormulaPtr& b) { return formula_less(a, b); };
} // namespace

void lfs_insert(LfMultiset& ms, LabelledFormula v) { ms_insert(ms, std::move(v), lf_lt); }
bool lfs_erase_one(LfMultiset& ms, const LabelledFormula& v) { return ms_erase_one(ms, v, lf_lt); }
bool lfs_contains(const LfMultiset& ms, const LabelledFormula& v) { return ms_contains(ms, v, lf_lt); }
int lfs_count(const LfMultiset& ms, const LabelledFormula& v) { return ms_count(ms, v, lf_lt); }
LfMultiset lfs_diff(const LfMultiset& a, const LfMultiset& b) { return ms_diff(a, b, lf_lt); }
LfMultiset lfs_union(const LfMultiset& a, const LfMultiset& b) { return ms_union(a, b, lf_lt); }
bool lfs_subset(const LfMultiset& a, const LfMultiset& b) { return ms_subset(a, b, lf_lt); }
bool lfs_equal(const LfMultiset& a, const LfMultiset& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (lf_compare(a[i], b[i]) != 0) return false;
    return true;
}

void fs_insert(FormulaMultiset& ms, FormulaPtr v) { ms_insert(ms, std::move(v), f_lt); }
bool fs_erase_one(FormulaMultiset& ms, const FormulaPtr& v) { return ms_erase_one(ms, v, f_lt); }
FormulaMultiset fs_diff(const FormulaMultiset& a, const FormulaMultiset& b) { return ms_diff(a, b, f_lt); }
FormulaMultiset fs_union(const FormulaMultiset& a, const FormulaMultiset& b) { return ms_union(a, b, f_lt); }
bool fs_subset(const FormulaMultiset& a, const FormulaMultiset& b) { return ms_subset(a, b, f_lt); }
bool fs_equal(const FormulaMultiset& a, const FormulaMultiset& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (formula_compare(a[i], b[i]) != 0) return false;
    return true;
}

bool seq_equal(const LabelledSequent& a, const LabelledSequent& b) {
    return a.rels == b.rels && lfs_equal(a.ante, b.ante) && lfs_equal(a.succ, b.succ);
}
bool seq_equal(const SimplyLabelledSequent& a, const SimplyLabelledSequent& b) {
    return lfs_equal(a.ante, b.ante) && lfs_equal(a.succ, b.succ);
}
bool component_equal(const Component& a, const Component& b) {
    return fs_equal(a.ante, b.ante) && fs_equal(a.succ, b.succ);
}
bool hs_equal(const Hypersequent& a, const Hypersequent& b) {
    if (a.comps.size() != b.comps.size()) return false;
    for (std::size_t i = 0; i < a.comps.size(); ++i)
        if (!component_equal(a.comps[i], b.comps[i])) return false;
    return true;
}

std::vector<Label> labels_of_rels(const RelMultiset& rels) {
    std::set<Label> s;
    for (const auto& r : rels) {
        s.insert(r.lo);
        s.insert(r.hi);
    }
    return {s.begin(), s.end()};
}

std::vector<Label> labels_of_lfs(const LfMultiset& ms) {
    std::set<Label> s;
    for (const auto& lf : ms) s.insert(lf.lab);
    return {s.begin(), s.end()};
}

std::vector<Label> labels_of(const LabelledSequent& s) {
    std::set<Label> all;
    for (const auto& r : s.rels) {
        all.insert(r.lo);
        all.insert(r.hi);
    }
    for (const auto& lf : s.ante) all.insert(lf.lab);
    for (const auto& lf : s.succ) all.insert(lf.lab);
    return {all.begin(), all.end()};
}

std::vector<Label> labels_of(const SimplyLabelledSequent& s) {
    std::set<Label> all;
    for (const auto& lf : s.ante) all.insert(lf.lab);
    for (const auto& lf : s.succ) all.insert(lf.lab);
    return {all.begin(), all.end()};
}

LfMultiset slice(const LfMultiset& ms, const Label& x) {
    LfMultiset out;
    for (const auto& lf : ms)
        if (lf.lab == x) out.push_back(lf);
    return out;
}

FormulaMultiset erased_slice(const LfMultiset& ms, const Label& x) {
    FormulaMultiset out;
    for (const auto& lf : ms)
        if (lf.lab == x) out.push_back(lf.f);
    // slices of a sorted LfMultiset are already formula-sorted
    return out;
}

RelMultiset transitive_closure(const RelMultiset& rels) {
    std::vector<Label> labs = labels_of_rels(rels);
    auto idx = [&](const Label& l) {
        return std::lower_bound(labs.begin(), labs.end(), l) - labs.begin();
    };
    std::size_t n = labs.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& r : rels) adj[idx(r.lo)][idx(r.hi)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (adj[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (adj[k][j]) adj[i][j] = true;
    RelMultiset out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (adj[i][j]) out.push_back({labs[i], labs[j]});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Label> rel_successors(const RelMultiset& rels, const Label& x) {
    std::set<Label> s;
    for (const auto& r : rels)
        if (r.lo == x) s.insert(r.hi);
    return {s.begin(), s.end()};
}

std::vector<Label> rel_predecessors(const RelMultiset& rels, const Label& x) {
    std::set<Label> s;
    for (const auto& r : rels)
        if (r.hi == x) s.insert(r.lo);
    return {s.begin(), s.end()};
}

namespace {

bool subset_perm_rec(const std::vector<Label>& g1labs, std::size_t i,
                     const std::vector<std::pair<Label, FormulaMultiset>>& g1slices,
                     const std::vector<std::pair<Label, FormulaMultiset>>& g2slices,
                     std::vector<bool>& used, std::map<Label, Label>& pi) {
    if (i == g1labs.size()) return true;
    const auto& need = g1slices[i].second;
    for (std::size_t j = 0; j < g2slices.size(); ++j) {
        if (used[j]) continue;
        if (!ms_subset(need, g2slices[j].second, f_lt)) continue;
        used[j] = true;
        pi[g1labs[i]] = g2slices[j].first;
        if (subset_perm_rec(g1labs, i + 1, g1slices, g2slices, used, pi)) return true;
        used[j] = false;
        pi.erase(g1labs[i]);
    }
    return false;
}

} // namespace

bool subset_modulo_perm(const LfMultiset& g1, const LfMultiset& g2,
                        std::map<Label, Label>* witness) {
    std::vector<Label> l1 = labels_of_lfs(g1), l2 = labels_of_lfs(g2);
    if (l1.empty()) {
        if (witness) witness->clear();
        return true;
    }
    if (l1.size() > l2.size()) return false;
    std::vector<std::pair<Label, FormulaMultiset>> s1, s2;
    for (const auto& l : l1) s1.push_back({l, erased_slice(g1, l)});
    for (const auto& l : l2) s2.push_back({l, erased_slice(g2, l)});
    std::vector<bool> used(l2.size(), false);
    std::map<Label, Label> pi;
    if (subset_perm_rec(l1, 0, s1, s2, used, pi)) {
        if (witness) *witness = pi;
        return true;
    }
    return false;
}

namespace {

// Enumerate all ways to assign canonical indices respecting signature classes,
// returning the render-minimal renaming. `classes` are label groups sorted by a
// label-independent signature; indices are assigned blockwise.
template <typename RenderFn>
std::map<Label, Label> minimal_class_renaming(const std::vector<std::vector<Label>>& classes,
                                              RenderFn render) {
    std::map<Label, Label> best;
    std::string best_text;
    std::vector<std::vector<Label>> perms = classes; // working copy, permuted in place
    std::function<void(std::size_t)> go = [&](std::size_t ci) {
        if (ci == perms.size()) {
            std::map<Label, Label> pi;
            int next = 0;
            for (const auto& cls : perms)
                for (const auto& l : cls) pi[l] = "v" + std::to_string(next++);
            std::string text = render(pi);
            if (best.empty() || text < best_text) {
                best = pi;
                best_text = text;
            }
            return;
        }
        std::sort(perms[ci].begin(), perms[ci].end());
        do {
            go(ci + 1);
        } while (std::next_permutation(perms[ci].begin(), perms[ci].end()));
    };
    go(0);
    return best;
}

LfMultiset rename_lfs(const LfMultiset& ms, const std::map<Label, Label>& pi) {
    LfMultiset out;
    for (const auto& lf : ms) {
        auto it = pi.find(lf.lab);
        lfs_insert(out, {it == pi.end() ? lf.lab : it->second, lf.f});
    }
    return out;
}

RelMultiset rename_rels(const RelMultiset& rels, const std::map<Label, Label>& pi) {
    RelMultiset out;
    for (const auto& r : rels) {
        auto a = pi.find(r.lo), b = pi.find(r.hi);
        out.push_back({a == pi.end() ? r.lo : a->second, b == pi.end() ? r.hi : b->second});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string slice_signature(const LfMultiset& ante, const LfMultiset& succ, const Label& l) {
    std::string sig = "[";
    for (const auto& f : erased_slice(ante, l)) sig += render_formula(f) + ",";
    sig += "][";
    for (const auto& f : erased_slice(succ, l)) sig += render_formula(f) + ",";
    sig += "]";
    return sig;
}

std::vector<std::vector<Label>> group_by_signature(const std::vector<Label>& labs,
                                                   const std::function<std::string(const Label&)>& sig) {
    std::map<std::string, std::vector<Label>> groups;
    for (const auto& l : labs) groups[sig(l)].push_back(l);
    std::vector<std::vector<Label>> out;
    for (auto& [_, g] : groups) out.push_back(std::move(g));
    return out;
}

} // namespace

SimplyLabelledSequent canonicalize_labels(const SimplyLabelledSequent& s) {
    std::vector<Label> labs = labels_of(s);
    auto classes = group_by_signature(
        labs, [&](const Label& l) { return slice_signature(s.ante, s.succ, l); });
    auto pi = minimal_class_renaming(classes, [&](const std::map<Label, Label>& m) {
        return render_sequent(SimplyLabelledSequent{rename_lfs(s.ante, m), rename_lfs(s.succ, m)});
    });
    return {rename_lfs(s.ante, pi), rename_lfs(s.succ, pi)};
}

LabelledSequent canonicalize_labels(const LabelledSequent& s) {
    std::vector<Label> labs = labels_of(s);
    auto classes = group_by_signature(labs, [&](const Label& l) {
        // degrees are label-name-independent, slices refine further
        int in = 0, out = 0;
        for (const auto& r : s.rels) {
            if (r.hi == l) ++in;
            if (r.lo == l) ++out;
        }
        return slice_signature(s.ante, s.succ, l) + "#" + std::to_string(in) + "/" +
               std::to_string(out);
    });
    auto pi = minimal_class_renaming(classes, [&](const std::map<Label, Label>& m) {
        return render_sequent(LabelledSequent{rename_rels(s.rels, m), rename_lfs(s.ante, m),
                                              rename_lfs(s.succ, m)});
    });
    return {rename_rels(s.rels, pi), rename_lfs(s.ante, pi), rename_lfs(s.succ, pi)};
}

Label fresh_label(const std::set<Label>& used) {
    for (int i = 0;; ++i) {
        Label cand = "w" + std::to_string(i);
        if (!used.count(cand)) return cand;
    }
}

std::set<Label> label_set(const LabelledSequent& s) {
    auto v = labels_of(s);
    return {v.begin(), v.end()};
}

std::set<Label> label_set(const SimplyLabelledSequent& s) {
    auto v = labels_of(s);
    return {v.begin(), v.end()};
}

SimplyLabelledSequent hs_to_sls(const Hypersequent& h) {
    SimplyLabelledSequent out;
    for (std::size_t i = 0; i < h.comps.size(); ++i) {
        Label l = "v" + std::to_string(i);
        for (const auto& f : h.comps[i].ante) lfs_insert(out.ante, {l, f});
        for (const auto& f : h.comps[i].succ) lfs_insert(out.succ, {l, f});
    }
    return out;
}

Hypersequent sls_to_hs(const SimplyLabelledSequent& s, std::string* warning) {
    Hypersequent out;
    std::vector<Label> labs = labels_of(s);
    if (labs.empty()) {
        out.comps.push_back({});
        if (warning)
            *warning = "sequent mentions no label; emitting one empty component "
                       "(an empty component carries no content and is safely ignored)";
        return out;
    }
    for (const auto& l : labs)
        out.comps.push_back({erased_slice(s.ante, l), erased_slice(s.succ, l)});
    return out;
}

namespace {

struct SeqLexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }
    bool peek_str(const char* tok) {
        skip_ws();
        std::size_t n = std::string_view(tok).size();
        return s.compare(pos, n, tok) == 0;
    }
    bool eat(const char* tok) {
        if (!peek_str(tok)) return false;
        pos += std::string_view(tok).size();
        return true;
    }
    void expect(const char* tok) {
        if (!eat(tok)) throw ParseError(std::string("expected '") + tok + "'", pos);
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        auto is_start = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
        auto is_char = [&](char c) { return is_start(c) || (c >= '0' && c <= '9') || c == '_'; };
        if (pos >= s.size() || !is_start(s[pos])) throw ParseError("expected identifier", pos);
        while (pos < s.size() && is_char(s[pos])) ++pos;
        return s.substr(start, pos - start);
    }
    // "=>" but not "<=" confusion; caller ensures context
    bool peek_seq_arrow() { return peek_str("=>"); }
    bool peek_rel_after_ident() {
        // lookahead from current pos: ident already consumed by caller via save/restore
        skip_ws();
        return peek_str("<=");
    }
};

// Comma-separated labelled formulas, ending before "=>", "||", or end.
LfMultiset parse_lfs(SeqLexer& lx) {
    LfMultiset out;
    while (!lx.at_end() && !lx.peek_seq_arrow() && !lx.peek_str("||")) {
        Label lab = lx.ident();
        lx.expect(":");
        std::size_t p = lx.pos;
        FormulaPtr f = parse_formula_at(lx.s, p);
        lx.pos = p;
        lfs_insert(out, {lab, f});
        if (!lx.eat(",")) break;
    }
    return out;
}

FormulaMultiset parse_fs(SeqLexer& lx) {
    FormulaMultiset out;
    while (!lx.at_end() && !lx.peek_seq_arrow() && !lx.peek_str("||")) {
        std::size_t p = lx.pos;
        FormulaPtr f = parse_formula_at(lx.s, p);
        lx.pos = p;
        fs_insert(out, f);
        if (!lx.eat(",")) break;
    }
    return out;
}

} // namespace

LabelledSequent parse_labelled_sequent(const std::string& text) {
    SeqLexer lx{text};
    LabelledSequent out;
    // relational atoms: ident '<=' ident, comma-separated
    bool parsed_rel = false;
    for (;;) {
        lx.skip_ws();
        std::size_t save = lx.pos;
        if (lx.at_end() || lx.peek_seq_arrow() || lx.peek_str(";")) break;
        std::string l;
        try {
            l = lx.ident();
        } catch (const ParseError&) {
            break;
        }
        if (!lx.peek_str("<=")) {
            lx.pos = save; // it was a labelled formula, not a relatom
            break;
        }
        lx.expect("<=");
        Label r = lx.ident();
        ms_insert(out.rels, RelAtom{l, r}, rel_less);
        parsed_rel = true;
        if (!lx.eat(",")) break;
    }
    bool saw_semi = lx.eat(";");
    if (parsed_rel && !saw_semi) throw ParseError("expected ';' after relational atoms", lx.pos);
    out.ante = parse_lfs(lx);
    lx.expect("=>");
    out.succ = parse_lfs(lx);
    if (!lx.at_end()) throw ParseError("trailing input", lx.pos);
    return out;
}

SimplyLabelledSequent parse_sls_sequent(const std::string& text) {
    if (text.find(';') != std::string::npos || text.find("<=") != std::string::npos)
        throw ParseError("relational part not allowed in a simply labelled sequent", 0);
    SeqLexer lx{text};
    SimplyLabelledSequent out;
    out.ante = parse_lfs(lx);
    lx.expect("=>");
    out.succ = parse_lfs(lx);
    if (!lx.at_end()) throw ParseError("trailing input", lx.pos);
    return out;
}

Hypersequent parse_hypersequent(const std::string& text) {
    SeqLexer lx{text};
    Hypersequent out;
    for (;;) {
        Component c;
        c.ante = parse_fs(lx);
        lx.expect("=>");
        c.succ = parse_fs(lx);
        out.comps.push_back(std::move(c));
        if (!lx.eat("||")) break;
    }
    if (!lx.at_end()) throw ParseError("trailing input", lx.pos);
    return out;
}

std::string render_labelled_formula(const LabelledFormula& lf) {
    bool paren = (lf.f->conn == Conn::And || lf.f->conn == Conn::Or ||
                  (lf.f->conn == Conn::Imp && !is_negation(lf.f)));
    std::string body = render_formula(lf.f);
    return lf.lab + ":" + (paren ? "(" + body + ")" : body);
}

namespace {

std::string join_lfs(const LfMultiset& ms) {
    std::string out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i) out += ", ";
        out += render_labelled_formula(ms[i]);
    }
    return out;
}

std::string join_fs(const FormulaMultiset& ms) {
    std::string out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i) out += ", ";
        out += render_formula(ms[i]);
    }
    return out;
}

} // namespace

std::string render_sequent(const LabelledSequent& s) {
    std::string out;
    if (!s.rels.empty()) {
        for (std::size_t i = 0; i < s.rels.size(); ++i) {
            if (i) out += ", ";
            out += s.rels[i].lo + "<=" + s.rels[i].hi;
        }
        out += " ; ";
    }
    if (!s.ante.empty()) out += join_lfs(s.ante) + " ";
    out += "=>";
    if (!s.succ.empty()) out += " " + join_lfs(s.succ);
    return out;
}

std::string render_sequent(const SimplyLabelledSequent& s) {
    std::string out;
    if (!s.ante.empty()) out += join_lfs(s.ante) + " ";
    out += "=>";
    if (!s.succ.empty()) out += " " + join_lfs(s.succ);
    return out;
}

std::string render_hypersequent(const Hypersequent& h) {
    std::string out;
    for (std::size_t i = 0; i < h.comps.size(); ++i) {
        if (i) out += " || ";
        const auto& c = h.comps[i];
        if (!c.ante.empty()) out += join_fs(c.ante) + " ";
        out += "=>";
        if (!c.succ.empty()) out += " " + join_fs(c.succ);
    }
    return out;
}

namespace {

std::string join_lfs_latex(const LfMultiset& ms) {
    std::string out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i) out += ", ";
        out += ms[i].lab + "{:}" + render_formula_latex(ms[i].f);
    }
    return out;
}

} // namespace

std::string render_sequent_latex(const LabelledSequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.rels.size(); ++i) {
        if (i) out += ", ";
        out += s.rels[i].lo + " \\sqsubseteq " + s.rels[i].hi;
    }
    out += " ; ";
    out += join_lfs_latex(s.ante);
    out += " \\Rightarrow ";
    out += join_lfs_latex(s.succ);
    return out;
}

std::string render_sequent_latex(const SimplyLabelledSequent& s) {
    return join_lfs_latex(s.ante) + " \\Rightarrow " + join_lfs_latex(s.succ);
}

std::string render_hypersequent_latex(const Hypersequent& h) {
    std::string out;
    for (std::size_t i = 0; i < h.comps.size(); ++i) {
        if (i) out += " \\mid ";
        const auto& c = h.comps[i];
        for (std::size_t j = 0; j < c.ante.size(); ++j)
            out += (j ? ", " : "") + render_formula_latex(c.ante[j]);
        out += " \\Rightarrow ";
        for (std::size_t j = 0; j < c.succ.size(); ++j)
            out += (j ? ", " : "") + render_formula_latex(c.succ[j]);
    }
    return out;
}

} // namespace geoseq
