#pragma once

#include <string>
#include <vector>

#include "geoseq/sequent.hpp"

namespace geoseq {

// One disjunct of a geometric implication's conclusion: ex z1 .. zk . a1 & .. & am
struct Alternative {
    std::vector<Label> ex_vars;
    RelMultiset atoms;
};

// forall x1..xn ( hypothesis => alt1 || .. || altk ), variables implicitly
// universal; hypothesis `true` is the empty conjunction.
struct GeometricImplication {
    std::vector<Label> uni_vars; // in order of first occurrence
    RelMultiset hypothesis;
    std::vector<Alternative> alternatives;
};

// Grammar: hyp '=>' alt ('||' alt)*; hyp = 'true' | relatom (',' relatom)*;
// alt = ['ex' var+ '.'] relatom ('&' relatom)*
GeometricImplication parse_geometric(const std::string& text);
std::string render_geometric(const GeometricImplication& gi);

// Checks well-formedness: existential variables are distinct from universal
// ones and every atom only uses declared variables. Throws ParseError.
void validate_geometric(const GeometricImplication& gi);

// One implication per line; '#' starts a comment.
std::vector<GeometricImplication> parse_axiom_file(const std::string& contents);

} // namespace geoseq
