#include "geoseq/formula.hpp"

#include <cassert>
#include <functional>

namespace geoseq {

FormulaPtr mk_atom(const std::string& name) {
    assert(!name.empty());
    return std::make_shared<Formula>(Conn::Atom, name, nullptr, nullptr);
}

FormulaPtr mk_bot() {
    static const FormulaPtr b = std::make_shared<Formula>(Conn::Bot, "", nullptr, nullptr);
    return b;
}

FormulaPtr mk_top() {
    static const FormulaPtr t = std::make_shared<Formula>(Conn::Top, "", nullptr, nullptr);
    return t;
}

FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
    assert(a && b);
    return std::make_shared<Formula>(Conn::And, "", std::move(a), std::move(b));
}

FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
    assert(a && b);
    return std::make_shared<Formula>(Conn::Or, "", std::move(a), std::move(b));
}

FormulaPtr mk_imp(FormulaPtr a, FormulaPtr b) {
    assert(a && b);
    return std::make_shared<Formula>(Conn::Imp, "", std::move(a), std::move(b));
}

FormulaPtr mk_neg(FormulaPtr a) { return mk_imp(std::move(a), mk_bot()); }

int formula_compare(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->conn != b->conn) return a->conn < b->conn ? -1 : 1;
    switch (a->conn) {
    case Conn::Atom: return a->atom.compare(b->atom);
    case Conn::Bot:
    case Conn::Top: return 0;
    default: {
        int c = formula_compare(a->lhs, b->lhs);
        if (c != 0) return c;
        return formula_compare(a->rhs, b->rhs);
    }
    }
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) { return formula_compare(a, b) == 0; }
bool formula_less(const FormulaPtr& a, const FormulaPtr& b) { return formula_compare(a, b) < 0; }

std::size_t formula_hash(const FormulaPtr& a) {
    std::size_t h = static_cast<std::size_t>(a->conn) * 1099511628211ULL;
    switch (a->conn) {
    case Conn::Atom: h ^= std::hash<std::string>{}(a->atom); break;
    case Conn::Bot:
    case Conn::Top: break;
    default:
        h ^= formula_hash(a->lhs) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= formula_hash(a->rhs) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

int formula_size(const FormulaPtr& a) {
    switch (a->conn) {
    case Conn::Atom:
    case Conn::Bot:
    case Conn::Top: return 1;
    default: return 1 + formula_size(a->lhs) + formula_size(a->rhs);
    }
}

void collect_atoms(const FormulaPtr& a, std::set<std::string>& out) {
    switch (a->conn) {
    case Conn::Atom: out.insert(a->atom); break;
    case Conn::Bot:
    case Conn::Top: break;
    default:
        collect_atoms(a->lhs, out);
        collect_atoms(a->rhs, out);
    }
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& a) {
    std::vector<FormulaPtr> out;
    std::function<void(const FormulaPtr&)> go = [&](const FormulaPtr& f) {
        for (const auto& g : out)
            if (formula_equal(g, f)) return;
        out.push_back(f);
        if (f->conn == Conn::And || f->conn == Conn::Or || f->conn == Conn::Imp) {
            go(f->lhs);
            go(f->rhs);
        }
    };
    go(a);
    return out;
}

bool is_negation(const FormulaPtr& a) {
    return a->conn == Conn::Imp && a->rhs->conn == Conn::Bot;
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    // True if "->" starts here (after whitespace).
    bool peek_arrow() {
        skip_ws();
        return pos + 1 < s.size() && s[pos] == '-' && s[pos + 1] == '>';
    }
    // True if a single '|' starts here; "||" belongs to the geometric-axiom grammar.
    bool peek_or() {
        skip_ws();
        return pos < s.size() && s[pos] == '|' && !(pos + 1 < s.size() && s[pos + 1] == '|');
    }
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }

FormulaPtr parse_imp(Lexer& lx);

FormulaPtr parse_primary(Lexer& lx) {
    lx.skip_ws();
    if (lx.pos >= lx.s.size()) throw ParseError("expected formula", lx.pos);
    char c = lx.s[lx.pos];
    if (c == '~') {
        ++lx.pos;
        return mk_neg(parse_primary(lx));
    }
    if (c == '(') {
        ++lx.pos;
        FormulaPtr f = parse_imp(lx);
        lx.skip_ws();
        if (lx.pos >= lx.s.size() || lx.s[lx.pos] != ')')
            throw ParseError("expected ')'", lx.pos);
        ++lx.pos;
        return f;
    }
    if (ident_start(c)) {
        std::size_t start = lx.pos;
        while (lx.pos < lx.s.size() && ident_char(lx.s[lx.pos])) ++lx.pos;
        std::string name = lx.s.substr(start, lx.pos - start);
        if (name == "bot") return mk_bot();
        if (name == "top") return mk_top();
        return mk_atom(name);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", lx.pos);
}

FormulaPtr parse_and(Lexer& lx) {
    FormulaPtr f = parse_primary(lx);
    while (lx.peek() == '&') {
        ++lx.pos;
        f = mk_and(f, parse_primary(lx));
    }
    return f;
}

FormulaPtr parse_or(Lexer& lx) {
    FormulaPtr f = parse_and(lx);
    while (lx.peek_or()) {
        ++lx.pos;
        f = mk_or(f, parse_and(lx));
    }
    return f;
}

FormulaPtr parse_imp(Lexer& lx) {
    FormulaPtr f = parse_or(lx);
    if (lx.peek_arrow()) {
        lx.pos += 2;
        return mk_imp(f, parse_imp(lx)); // right-associative
    }
    return f;
}

int precedence(const FormulaPtr& f) {
    switch (f->conn) {
    case Conn::Imp: return is_negation(f) ? 4 : 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    default: return 4;
    }
}

// prec: minimum precedence printable without parentheses in this position.
void render_rec(const FormulaPtr& f, int prec, std::string& out) {
    int mine = precedence(f);
    bool paren = mine < prec;
    if (paren) out += '(';
    if (is_negation(f)) {
        out += '~';
        render_rec(f->lhs, 4, out);
    } else {
        switch (f->conn) {
        case Conn::Atom: out += f->atom; break;
        case Conn::Bot: out += "bot"; break;
        case Conn::Top: out += "top"; break;
        case Conn::And:
            render_rec(f->lhs, 3, out);
            out += " & ";
            render_rec(f->rhs, 4, out); // left-associative: right child needs higher
            break;
        case Conn::Or:
            render_rec(f->lhs, 2, out);
            out += " | ";
            render_rec(f->rhs, 3, out);
            break;
        case Conn::Imp:
            render_rec(f->lhs, 2, out); // right-associative: left child needs higher
            out += " -> ";
            render_rec(f->rhs, 1, out);
            break;
        }
    }
    if (paren) out += ')';
}

void render_latex_rec(const FormulaPtr& f, int prec, std::string& out) {
    int mine = precedence(f);
    bool paren = mine < prec;
    if (paren) out += '(';
    if (is_negation(f)) {
        out += "\\neg ";
        render_latex_rec(f->lhs, 4, out);
    } else {
        switch (f->conn) {
        case Conn::Atom: out += f->atom; break;
        case Conn::Bot: out += "\\bot"; break;
        case Conn::Top: out += "\\top"; break;
        case Conn::And:
            render_latex_rec(f->lhs, 3, out);
            out += " \\land ";
            render_latex_rec(f->rhs, 4, out);
            break;
        case Conn::Or:
            render_latex_rec(f->lhs, 2, out);
            out += " \\lor ";
            render_latex_rec(f->rhs, 3, out);
            break;
        case Conn::Imp:
            render_latex_rec(f->lhs, 2, out);
            out += " \\supset ";
            render_latex_rec(f->rhs, 1, out);
            break;
        }
    }
    if (paren) out += ')';
}

} // namespace

FormulaPtr parse_formula_at(const std::string& text, std::size_t& pos) {
    Lexer lx{text, pos};
    FormulaPtr f = parse_imp(lx);
    pos = lx.pos;
    return f;
}

FormulaPtr parse_formula(const std::string& text) {
    std::size_t pos = 0;
    FormulaPtr f = parse_formula_at(text, pos);
    Lexer lx{text, pos};
    if (!lx.at_end()) throw ParseError("trailing input", lx.pos);
    return f;
}

std::string render_formula(const FormulaPtr& a) {
    std::string out;
    render_rec(a, 1, out);
    return out;
}

std::string render_formula_latex(const FormulaPtr& a) {
    std::string out;
    render_latex_rec(a, 1, out);
    return out;
}

} // namespace geoseq
