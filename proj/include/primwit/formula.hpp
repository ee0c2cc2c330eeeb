#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "primwit/nat.hpp"

namespace primwit {

// Terms and sentences of the language {+, *, S, 0, =} enriched with
// constant symbols c1, c2, ... All values are immutable after construction;
// handles share structure and are cheap to copy.

struct Zero {};
struct Numeral { Nat value; };  // compact S...S0 with `value` applications
struct Var { std::string name; };
struct Const { int index; };    // c_i, index >= 1
struct Succ;
struct Add;
struct Mul;

using TermVariant = std::variant<Zero, Numeral, Var, Const, Succ, Add, Mul>;
struct TermNode;

class Term {
 public:
  static Term zero();
  static Term numeral(Nat n);
  static Term var(std::string name);
  static Term constant(int index);  // throws Error if index < 1
  static Term succ(Term t);
  static Term add(Term lhs, Term rhs);
  static Term mul(Term lhs, Term rhs);

  const TermVariant& node() const;

  bool operator==(const Term& other) const;

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct Succ { Term child; };
struct Add { Term lhs, rhs; };
struct Mul { Term lhs, rhs; };
struct TermNode { TermVariant v; };

inline const TermVariant& Term::node() const { return node_->v; }

struct Eq { Term lhs, rhs; };
struct Not;
struct And;
struct Or;
struct Implies;
struct ForAll;
struct Exists;

using SentenceVariant =
    std::variant<Eq, Not, And, Or, Implies, ForAll, Exists>;
struct SentenceNode;

class Sentence {
 public:
  static Sentence eq(Term lhs, Term rhs);
  static Sentence negate(Sentence s);
  static Sentence conj(Sentence lhs, Sentence rhs);
  static Sentence disj(Sentence lhs, Sentence rhs);
  static Sentence implies(Sentence lhs, Sentence rhs);
  static Sentence forall(std::string var, Sentence body);
  static Sentence exists(std::string var, Sentence body);

  const SentenceVariant& node() const;

  bool operator==(const Sentence& other) const;

 private:
  explicit Sentence(std::shared_ptr<const SentenceNode> n)
      : node_(std::move(n)) {}
  std::shared_ptr<const SentenceNode> node_;
};

struct Not { Sentence sub; };
struct And { Sentence lhs, rhs; };
struct Or { Sentence lhs, rhs; };
struct Implies { Sentence lhs, rhs; };
struct ForAll { std::string var; Sentence body; };
struct Exists { std::string var; Sentence body; };
struct SentenceNode { SentenceVariant v; };

inline const SentenceVariant& Sentence::node() const { return node_->v; }

// Comparisons are surface syntax only; they expand to the primitive
// abbreviation  a <= b  :=  exists z (a + z = b)  with a fresh z, keeping
// the core language free of relation symbols beyond equality.
Sentence desugar_le(const Term& a, const Term& b);  // a <= b
Sentence desugar_lt(const Term& a, const Term& b);  // a <  b
Sentence desugar_ge(const Term& a, const Term& b);  // a >= b
Sentence desugar_gt(const Term& a, const Term& b);  // a >  b

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Sentence& s);
std::set<int> constant_indices(const Term& t);
std::set<int> constant_indices(const Sentence& s);

// Folds successor chains over numerals: S(Numeral(n)) -> Numeral(n+1),
// Zero -> Numeral(0). Parsed and generated sentences are already in this
// form; apply to hand-built ASTs before structural comparison.
Term normalize_numerals(const Term& t);
Sentence normalize_numerals(const Sentence& s);

struct RenderOptions {
  // Numerals below the cap print as nested S(...(0)); at or above it they
  // print compactly as S^n(0). Both forms parse back to the same AST.
  unsigned numeral_expansion_cap = 32;
};

std::string render(const Term& t, const RenderOptions& opts = {});
std::string render(const Sentence& s, const RenderOptions& opts = {});

// ---------------------------------------------------------------------------
// Assignments and verdicts
// ---------------------------------------------------------------------------

// Interpretation of the constant symbols c_1..c_n; indices are contiguous
// from 1.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<Nat> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  bool has(int index) const {
    return index >= 1 && static_cast<std::size_t>(index) <= values_.size();
  }
  const Nat& at(int index) const;  // throws Error when missing

 private:
  std::vector<Nat> values_;  // values_[i - 1] interprets c_i
};

// Three-valued truth for bounded evaluation. UnknownUpTo(b) records that a
// quantifier was truncated at b without a witnessing decision.
struct Verdict {
  enum class Kind { True, False, Unknown };
  Kind kind = Kind::Unknown;
  Nat bound = 0;  // meaningful only for Unknown

  static Verdict truth(bool b) {
    return Verdict{b ? Kind::True : Kind::False, 0};
  }
  static Verdict unknown(Nat bound) {
    return Verdict{Kind::Unknown, std::move(bound)};
  }
  bool is_true() const { return kind == Kind::True; }
  bool is_false() const { return kind == Kind::False; }
  bool decided() const { return kind != Kind::Unknown; }

  bool operator==(const Verdict& o) const {
    return kind == o.kind && (kind != Kind::Unknown || bound == o.bound);
  }
};

std::string to_string(const Verdict& v);
// Inverse of to_string: "True", "False", "UnknownUpTo(<n>)".
Verdict verdict_from_string(const std::string& s);

}  // namespace primwit
