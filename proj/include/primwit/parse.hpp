#pragma once

#include <cstddef>
#include <string>

#include "primwit/formula.hpp"

namespace primwit {

struct ParseError : Error {
  std::size_t position;  // byte offset into the input
  ParseError(std::size_t pos, const std::string& message)
      : Error("parse error at offset " + std::to_string(pos) + ": " + message),
        position(pos) {}
};

// Concrete syntax (documented in the README):
//   terms        0 | S(t) | S^n(0) | c<k> | <var> | t + t | t * t | (t)
//   atoms        t = t  and the comparisons t <= t, t < t, t >= t, t > t,
//                t != t (comparisons expand to the exists-abbreviation,
//                != to negated equality)
//   connectives  ~F | F /\ F | F \/ F | F -> F    (binding in that order,
//                -> right-associative)
//   quantifiers  forall v F | exists v F          (scope extends maximally
//                to the right)
// Parsed terms have successor chains over 0 folded into compact numerals.
Sentence parse(const std::string& text);

Term parse_term_text(const std::string& text);

}  // namespace primwit
