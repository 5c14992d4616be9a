#include "geoseq/kripke.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace geoseq {

namespace {

// Odometer over {0..base-1}^k, rightmost digit fastest. A do/while loop with
// this as the condition visits every tuple once (k = 0 gives one empty tuple).
bool advance_tuple(std::vector<int>& idx, int base) {
    for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
        if (++idx[i] < base) return true;
        idx[i] = 0;
    }
    return false;
}

void take_preorder_closure(KripkeModel& m) {
    for (int i = 0; i < m.n; ++i) m.rel[i][i] = true;
    for (int k = 0; k < m.n; ++k)
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j)
                if (m.rel[i][k] && m.rel[k][j]) m.rel[i][j] = true;
}

} // namespace

bool model_equal(const KripkeModel& a, const KripkeModel& b) {
    return a.n == b.n && a.rel == b.rel && a.val == b.val;
}

bool is_preorder(const KripkeModel& m) {
    for (int i = 0; i < m.n; ++i)
        if (!m.rel[i][i]) return false;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            for (int k = 0; k < m.n; ++k)
                if (m.rel[i][j] && m.rel[j][k] && !m.rel[i][k]) return false;
    return true;
}

bool is_monotone(const KripkeModel& m) {
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (m.rel[i][j])
                for (const auto& a : m.val[i])
                    if (m.val[j].find(a) == m.val[j].end()) return false;
    return true;
}

namespace {

// Tiny scanner for the model text format.
struct MScan {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                     text[pos] == '\n' || text[pos] == '\r'))
            ++pos;
    }
    bool try_eat(const std::string& s) {
        skip_ws();
        if (text.compare(pos, s.size(), s) == 0) {
            pos += s.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& s) {
        if (!try_eat(s))
            throw std::runtime_error("model parse error at position " + std::to_string(pos) +
                                     ": expected '" + s + "'");
    }
    bool ident_start(char c) const {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_';
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && ident_start(text[pos])) ++pos;
        if (pos == start)
            throw std::runtime_error("model parse error at position " + std::to_string(pos) +
                                     ": expected a name");
        return text.substr(start, pos - start);
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
};

} // namespace

KripkeModel parse_model(const std::string& text) {
    MScan sc{text};
    sc.expect("worlds:");
    std::vector<std::string> names;
    std::map<std::string, int> index;
    while (!sc.peek(';')) {
        std::string w = sc.ident();
        if (index.count(w)) throw std::runtime_error("duplicate world name '" + w + "'");
        index[w] = static_cast<int>(names.size());
        names.push_back(w);
    }
    if (names.empty()) throw std::runtime_error("model needs at least one world");
    sc.expect(";");

    KripkeModel m;
    m.n = static_cast<int>(names.size());
    m.rel.assign(m.n, std::vector<bool>(m.n, false));
    m.val.assign(m.n, {});

    auto world_of = [&](const std::string& w) {
        auto it = index.find(w);
        if (it == index.end()) throw std::runtime_error("unknown world '" + w + "'");
        return it->second;
    };

    sc.expect("rel:");
    bool first = true;
    while (!sc.peek(';')) {
        if (!first) sc.expect(",");
        first = false;
        std::string lo = sc.ident();
        sc.expect("<=");
        std::string hi = sc.ident();
        m.rel[world_of(lo)][world_of(hi)] = true;
    }
    sc.expect(";");

    sc.expect("val:");
    std::set<std::string> seen;
    first = true;
    while (!sc.done()) {
        if (!first) sc.expect(",");
        first = false;
        std::string w = sc.ident();
        if (!seen.insert(w).second)
            throw std::runtime_error("duplicate valuation entry for world '" + w + "'");
        sc.expect("=");
        sc.expect("{");
        while (!sc.peek('}')) {
            m.val[world_of(w)].insert(sc.ident());
            if (sc.peek(',')) sc.try_eat(","); // atoms may be comma- or space-separated
        }
        sc.expect("}");
    }

    // the written relation only generates the preorder
    take_preorder_closure(m);
    if (!is_monotone(m))
        throw std::runtime_error("model is not monotone: some related pair drops an atom");
    return m;
}

std::string render_model(const KripkeModel& m) {
    std::ostringstream out;
    out << "worlds:";
    for (int i = 0; i < m.n; ++i) out << " w" << i;
    out << "; rel:";
    bool first = true;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != j && m.rel[i][j]) {
                out << (first ? " " : ", ") << "w" << i << "<=w" << j;
                first = false;
            }
    out << "; val:";
    for (int i = 0; i < m.n; ++i) {
        out << (i == 0 ? " " : ", ") << "w" << i << "={";
        bool fa = true;
        for (const auto& a : m.val[i]) {
            out << (fa ? "" : " ") << a;
            fa = false;
        }
        out << "}";
    }
    return out.str();
}

bool forces(const KripkeModel& m, int w, const FormulaPtr& f) {
    assert(w >= 0 && w < m.n);
    switch (f->conn) {
    case Conn::Atom:
        return m.val[w].find(f->atom) != m.val[w].end();
    case Conn::Bot:
        return false;
    case Conn::Top:
        return true;
    case Conn::And:
        return forces(m, w, f->lhs) && forces(m, w, f->rhs);
    case Conn::Or:
        return forces(m, w, f->lhs) || forces(m, w, f->rhs);
    case Conn::Imp:
        // at every related world, the antecedent carries over to the consequent
        for (int v = 0; v < m.n; ++v)
            if (m.rel[w][v] && forces(m, v, f->lhs) && !forces(m, v, f->rhs)) return false;
        return true;
    }
    return false;
}

bool check_frame(const KripkeModel& m, const GeometricImplication& gi) {
    std::map<Label, int> h;
    std::vector<int> uni(gi.uni_vars.size(), 0);
    do {
        h.clear();
        for (std::size_t i = 0; i < gi.uni_vars.size(); ++i) h[gi.uni_vars[i]] = uni[i];
        bool hyp = true;
        for (const auto& ra : gi.hypothesis)
            if (!m.rel[h[ra.lo]][h[ra.hi]]) {
                hyp = false;
                break;
            }
        if (!hyp) continue;
        // hypothesis holds: some alternative must have an existential witness
        bool some_alt = false;
        for (const auto& alt : gi.alternatives) {
            std::vector<int> ex(alt.ex_vars.size(), 0);
            do {
                auto g = h;
                for (std::size_t i = 0; i < alt.ex_vars.size(); ++i) g[alt.ex_vars[i]] = ex[i];
                bool ok = true;
                for (const auto& ra : alt.atoms)
                    if (!m.rel[g[ra.lo]][g[ra.hi]]) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    some_alt = true;
                    break;
                }
            } while (advance_tuple(ex, m.n));
            if (some_alt) break;
        }
        if (!some_alt) return false;
    } while (advance_tuple(uni, m.n));
    return true;
}

bool check_frame_all(const KripkeModel& m, const std::vector<GeometricImplication>& gis) {
    for (const auto& gi : gis)
        if (!check_frame(m, gi)) return false;
    return true;
}

namespace {

// First assignment (labels sorted, odometer order) that is consistent with
// the relational part yet forces all of the antecedent and none of the
// succedent; such an assignment refutes the sequent in m.
std::optional<std::map<Label, int>> labelled_violation(const KripkeModel& m,
                                                       const LabelledSequent& s) {
    std::vector<Label> labs = labels_of(s);
    std::vector<int> idx(labs.size(), 0);
    do {
        std::map<Label, int> h;
        for (std::size_t i = 0; i < labs.size(); ++i) h[labs[i]] = idx[i];
        bool consistent = true;
        for (const auto& ra : s.rels)
            if (!m.rel[h[ra.lo]][h[ra.hi]]) {
                consistent = false;
                break;
            }
        if (!consistent) continue;
        bool violates = true;
        for (const auto& lf : s.ante)
            if (!forces(m, h[lf.lab], lf.f)) {
                violates = false;
                break;
            }
        if (violates)
            for (const auto& lf : s.succ)
                if (forces(m, h[lf.lab], lf.f)) {
                    violates = false;
                    break;
                }
        if (violates) return h;
    } while (advance_tuple(idx, m.n));
    return std::nullopt;
}

bool component_true(const KripkeModel& m, const FormulaMultiset& ante,
                    const FormulaMultiset& succ) {
    // antecedent conjunction globally forced? (empty = top, trivially so)
    for (int w = 0; w < m.n; ++w)
        for (const auto& f : ante)
            if (!forces(m, w, f)) return true;
    // succedent disjunction globally forced? (empty = bot, never, as n >= 1)
    for (int w = 0; w < m.n; ++w) {
        bool some = false;
        for (const auto& f : succ)
            if (forces(m, w, f)) {
                some = true;
                break;
            }
        if (!some) return false;
    }
    return true;
}

} // namespace

bool eval_labelled(const KripkeModel& m, const LabelledSequent& s) {
    return !labelled_violation(m, s).has_value();
}

bool eval_sls(const KripkeModel& m, const SimplyLabelledSequent& s, std::string* warning) {
    std::vector<Label> labs = labels_of(s);
    if (labs.empty()) {
        if (warning)
            *warning = "sequent mentions no label; it holds in no model (an empty component "
                       "carries no content)";
        return false;
    }
    for (const auto& x : labs)
        if (component_true(m, erased_slice(s.ante, x), erased_slice(s.succ, x))) return true;
    return false;
}

bool eval_hypersequent(const KripkeModel& m, const Hypersequent& h) {
    for (const auto& c : h.comps)
        if (component_true(m, c.ante, c.succ)) return true;
    return false;
}

namespace {

// Deterministic stream: world count ascending, relation bitmask ascending,
// then per-atom upward-closed valuations by odometer. Stops early when the
// callback returns true.
bool enumerate_until(int max_worlds, const std::vector<std::string>& atoms,
                     const std::vector<GeometricImplication>& frame,
                     const std::function<bool(const KripkeModel&)>& cb) {
    int cap = std::min(max_worlds, 5); // documented implementation cap
    for (int n = 1; n <= cap; ++n) {
        std::vector<std::pair<int, int>> offdiag;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) offdiag.emplace_back(i, j);
        for (std::uint64_t mask = 0; mask < (1ull << offdiag.size()); ++mask) {
            KripkeModel base;
            base.n = n;
            base.rel.assign(n, std::vector<bool>(n, false));
            for (int i = 0; i < n; ++i) base.rel[i][i] = true;
            for (std::size_t b = 0; b < offdiag.size(); ++b)
                if (mask & (1ull << b)) base.rel[offdiag[b].first][offdiag[b].second] = true;
            // keep only relations that are already transitively closed, so
            // each preorder shows up exactly once
            bool transitive = true;
            for (int i = 0; i < n && transitive; ++i)
                for (int j = 0; j < n && transitive; ++j)
                    for (int k = 0; k < n && transitive; ++k)
                        if (base.rel[i][j] && base.rel[j][k] && !base.rel[i][k])
                            transitive = false;
            if (!transitive) continue;
            if (!check_frame_all(base, frame)) continue;
            base.val.assign(n, {});
            // monotone valuations assign each atom an upward-closed world set
            std::vector<unsigned> upsets;
            for (unsigned ws = 0; ws < (1u << n); ++ws) {
                bool closed = true;
                for (int i = 0; i < n && closed; ++i)
                    if (ws & (1u << i))
                        for (int j = 0; j < n; ++j)
                            if (base.rel[i][j] && !(ws & (1u << j))) {
                                closed = false;
                                break;
                            }
                if (closed) upsets.push_back(ws);
            }
            std::vector<int> idx(atoms.size(), 0);
            do {
                KripkeModel m = base;
                for (std::size_t a = 0; a < atoms.size(); ++a)
                    for (int w = 0; w < n; ++w)
                        if (upsets[idx[a]] & (1u << w)) m.val[w].insert(atoms[a]);
                if (cb(m)) return true;
            } while (advance_tuple(idx, static_cast<int>(upsets.size())));
        }
    }
    return false;
}

std::vector<std::string> atoms_of_lfs(const LfMultiset& a, const LfMultiset& b) {
    std::set<std::string> s;
    for (const auto& lf : a) collect_atoms(lf.f, s);
    for (const auto& lf : b) collect_atoms(lf.f, s);
    return {s.begin(), s.end()};
}

} // namespace

void enumerate_models(int max_worlds, const std::vector<std::string>& atoms,
                      const std::vector<GeometricImplication>& frame,
                      const std::function<void(const KripkeModel&)>& cb) {
    enumerate_until(max_worlds, atoms, frame, [&](const KripkeModel& m) {
        cb(m);
        return false;
    });
}

std::optional<Countermodel> find_countermodel(const LabelledSequent& goal, int max_worlds,
                                              const std::vector<GeometricImplication>& frame) {
    std::optional<Countermodel> r;
    enumerate_until(max_worlds, atoms_of_lfs(goal.ante, goal.succ), frame,
                    [&](const KripkeModel& m) {
                        auto v = labelled_violation(m, goal);
                        if (v) {
                            r = Countermodel{m, *v};
                            return true;
                        }
                        return false;
                    });
    return r;
}

std::optional<Countermodel> find_countermodel(const SimplyLabelledSequent& goal, int max_worlds,
                                              const std::vector<GeometricImplication>& frame) {
    std::optional<Countermodel> r;
    enumerate_until(max_worlds, atoms_of_lfs(goal.ante, goal.succ), frame,
                    [&](const KripkeModel& m) {
                        if (!eval_sls(m, goal)) {
                            r = Countermodel{m, {}};
                            return true;
                        }
                        return false;
                    });
    return r;
}

std::optional<Countermodel> find_countermodel(const Hypersequent& goal, int max_worlds,
                                              const std::vector<GeometricImplication>& frame) {
    std::set<std::string> s;
    for (const auto& c : goal.comps) {
        for (const auto& f : c.ante) collect_atoms(f, s);
        for (const auto& f : c.succ) collect_atoms(f, s);
    }
    std::optional<Countermodel> r;
    enumerate_until(max_worlds, {s.begin(), s.end()}, frame, [&](const KripkeModel& m) {
        if (!eval_hypersequent(m, goal)) {
            r = Countermodel{m, {}};
            return true;
        }
        return false;
    });
    return r;
}

} // namespace geoseq
