#pragma once

#include <map>
#include <string>

#include "primwit/formula.hpp"

namespace primwit {

using VarEnv = std::map<std::string, Nat>;

// Value of a term under the standard semantics; exact and total. Throws
// Error on an unbound variable or a constant missing from the assignment.
Nat eval_term(const Term& t, const Assignment& a, const VarEnv& env = {});

// Three-valued bounded evaluation. Quantifiers range over {0..bound}; a
// sentence is decided True/False only when that is sound:
//   - an existential with a witness <= bound is True;
//   - a universal with a counterexample <= bound is False;
//   - a universal that merely holds up to the bound stays UnknownUpTo;
//   - quantifier chains guarded by an equation with one closed side are
//     decided exactly by enumerating the equation's finitely many solutions
//     (every variable occurring in t1 with t1 = c is itself <= c there).
// Throws Error when s is not closed under a.
Verdict eval_bounded(const Sentence& s, const Assignment& a, const Nat& bound);

}  // namespace primwit
