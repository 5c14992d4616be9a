#include "geoseq/geometric.hpp"

#include <algorithm>
#include <set>

namespace geoseq {

namespace {

struct GiLexer {
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
        return s.compare(pos, std::string_view(tok).size(), tok) == 0;
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
};

RelAtom parse_relatom(GiLexer& lx) {
    Label a = lx.ident();
    lx.expect("<=");
    Label b = lx.ident();
    return {a, b};
}

void note_var(std::vector<Label>& uni, const std::set<Label>& bound, const Label& v) {
    if (bound.count(v)) return;
    if (std::find(uni.begin(), uni.end(), v) == uni.end()) uni.push_back(v);
}

} // namespace

GeometricImplication parse_geometric(const std::string& text) {
    GiLexer lx{text};
    GeometricImplication gi;
    if (!lx.eat("true")) {
        do {
            RelAtom r = parse_relatom(lx);
            note_var(gi.uni_vars, {}, r.lo);
            note_var(gi.uni_vars, {}, r.hi);
            ms_insert(gi.hypothesis, r, rel_less);
        } while (lx.eat(","));
    }
    lx.expect("=>");
    do {
        Alternative alt;
        std::set<Label> bound;
        if (lx.eat("ex")) {
            // variables up to the terminating '.'
            while (!lx.peek_str(".")) {
                Label v = lx.ident();
                if (bound.count(v)) throw ParseError("duplicate existential variable " + v, lx.pos);
                bound.insert(v);
                alt.ex_vars.push_back(v);
            }
            lx.expect(".");
            if (alt.ex_vars.empty()) throw ParseError("'ex' without variables", lx.pos);
        }
        do {
            RelAtom r = parse_relatom(lx);
            note_var(gi.uni_vars, bound, r.lo);
            note_var(gi.uni_vars, bound, r.hi);
            ms_insert(alt.atoms, r, rel_less);
        } while (lx.eat("&"));
        gi.alternatives.push_back(std::move(alt));
    } while (lx.eat("||"));
    if (!lx.at_end()) throw ParseError("trailing input", lx.pos);
    validate_geometric(gi);
    return gi;
}

std::string render_geometric(const GeometricImplication& gi) {
    std::string out;
    if (gi.hypothesis.empty()) {
        out += "true";
    } else {
        for (std::size_t i = 0; i < gi.hypothesis.size(); ++i) {
            if (i) out += ", ";
            out += gi.hypothesis[i].lo + "<=" + gi.hypothesis[i].hi;
        }
    }
    out += " => ";
    for (std::size_t i = 0; i < gi.alternatives.size(); ++i) {
        if (i) out += " || ";
        const Alternative& alt = gi.alternatives[i];
        if (!alt.ex_vars.empty()) {
            out += "ex";
            for (const auto& v : alt.ex_vars) out += " " + v;
            out += ". ";
        }
        for (std::size_t j = 0; j < alt.atoms.size(); ++j) {
            if (j) out += " & ";
            out += alt.atoms[j].lo + "<=" + alt.atoms[j].hi;
        }
    }
    return out;
}

void validate_geometric(const GeometricImplication& gi) {
    std::set<Label> uni(gi.uni_vars.begin(), gi.uni_vars.end());
    if (uni.size() != gi.uni_vars.size()) throw ParseError("duplicate universal variable", 0);
    if (gi.alternatives.empty()) throw ParseError("no alternatives", 0);
    for (const auto& r : gi.hypothesis)
        if (!uni.count(r.lo) || !uni.count(r.hi))
            throw ParseError("hypothesis uses undeclared variable", 0);
    for (const auto& alt : gi.alternatives) {
        std::set<Label> bound(alt.ex_vars.begin(), alt.ex_vars.end());
        if (bound.size() != alt.ex_vars.size())
            throw ParseError("duplicate existential variable", 0);
        for (const auto& v : alt.ex_vars)
            if (uni.count(v))
                throw ParseError("existential variable shadows universal " + v, 0);
        if (alt.atoms.empty()) throw ParseError("empty alternative", 0);
        for (const auto& r : alt.atoms)
            if (!uni.count(r.lo) && !bound.count(r.lo))
                throw ParseError("atom uses undeclared variable " + r.lo, 0);
            else if (!uni.count(r.hi) && !bound.count(r.hi))
                throw ParseError("atom uses undeclared variable " + r.hi, 0);
    }
}

std::vector<GeometricImplication> parse_axiom_file(const std::string& contents) {
    std::vector<GeometricImplication> out;
    std::size_t start = 0;
    while (start <= contents.size()) {
        std::size_t end = contents.find('\n', start);
        std::string line = contents.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (!blank) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            out.push_back(parse_geometric(line));
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

} // namespace geoseq
