#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoseq {

// Propositional connectives. Negation is not a constructor: ~A is sugar for A -> bot.
enum class Conn { Atom, Bot, Top, And, Or, Imp };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Conn conn;
    std::string atom;    // valid iff conn == Atom
    FormulaPtr lhs, rhs; // valid iff conn is And/Or/Imp

    Formula(Conn c, std::string a, FormulaPtr l, FormulaPtr r)
        : conn(c), atom(std::move(a)), lhs(std::move(l)), rhs(std::move(r)) {}
};

FormulaPtr mk_atom(const std::string& name);
FormulaPtr mk_bot();
FormulaPtr mk_top();
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_imp(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_neg(FormulaPtr a); // builds a -> bot

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);
// Total order; used to keep multisets canonically sorted.
bool formula_less(const FormulaPtr& a, const FormulaPtr& b);
int formula_compare(const FormulaPtr& a, const FormulaPtr& b);
std::size_t formula_hash(const FormulaPtr& a);

// Number of connective/atom nodes.
int formula_size(const FormulaPtr& a);
void collect_atoms(const FormulaPtr& a, std::set<std::string>& out);
// All subformulas, deduplicated, including the formula itself.
std::vector<FormulaPtr> subformulas(const FormulaPtr& a);

// True when the formula is X -> bot for some X (printed as ~X).
bool is_negation(const FormulaPtr& a);

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t at)
        : std::runtime_error(msg + " at position " + std::to_string(at)), pos(at) {}
};

// Grammar: imp := or ('->' imp)? ; or := and ('|' and)* ; and := neg ('&' neg)*
// neg := '~' neg | atom | 'bot' | 'top' | '(' imp ')'
// '->' is right-associative, '&' and '|' left-associative, '~' binds tightest.
// "||" is never consumed as disjunction (it separates geometric alternatives).
FormulaPtr parse_formula(const std::string& text);
// Parse starting at pos; leaves pos after the formula. Used by sequent parsers.
FormulaPtr parse_formula_at(const std::string& text, std::size_t& pos);

// Minimal-parenthesis printer; parse_formula(render_formula(f)) == f.
std::string render_formula(const FormulaPtr& a);
std::string render_formula_latex(const FormulaPtr& a);

} // namespace geoseq
