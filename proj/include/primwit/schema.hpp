#pragma once

#include <optional>
#include <string>
#include <vector>

#include "primwit/formula.hpp"

namespace primwit {

enum class SchemaKind { Alpha, Beta, Gamma, Omega, Sigma };

std::string to_string(SchemaKind kind);
std::optional<SchemaKind> schema_kind_from_string(const std::string& s);

// Identity of a schema instance: alpha_i, beta_i, gamma_{i,p}, omega_{i,p},
// sigma_p. The prime parameter is verified at construction.
struct SchemaTag {
  SchemaKind kind = SchemaKind::Alpha;
  int i = 0;  // >= 1; 0 for sigma (which has no constant)
  Nat p = 0;  // prime; 0 for alpha/beta

  bool operator==(const SchemaTag& o) const {
    return kind == o.kind && i == o.i && p == o.p;
  }
};

// "alpha:1", "gamma:2:5", "sigma:7".
std::string to_string(const SchemaTag& tag);
SchemaTag schema_tag_from_string(const std::string& s);

// Validates the tag's parameter ranges and primality. Throws Error.
SchemaTag make_tag(SchemaKind kind, int i, const Nat& p);

struct TaggedSentence {
  Sentence sentence;
  std::optional<SchemaTag> tag;

  // Demotes the sentence to generic bounded-only evaluation.
  TaggedSentence untagged() const { return {sentence, std::nullopt}; }
};

// Sentence families. alpha(1) is  c1 >= SS0  (in expanded form) and
// alpha(i) is  c_i > c_{i-1}  for i >= 2; beta asserts that any product
// decomposition of c_i is trivial; gamma says no multiple of p equals
// c_i + 2; omega says c_i is p-1 plus a multiple of p; sigma is the
// constant-free bridge from the omega shape to the gamma shape.
TaggedSentence alpha(int i);
TaggedSentence beta(int i);
TaggedSentence gamma(int i, const Nat& p);
TaggedSentence omega(int i, const Nat& p);
TaggedSentence sigma(const Nat& p);

struct FragmentSpec {
  int n = 1;
  int k = 1;
};

// {alpha_i, beta_i, gamma_{i,p} : i <= n, p <= p_k}, grouped by i with
// alpha, beta first and the gamma row in ascending prime order. Size is
// n * (k + 2). Throws Error unless n, k >= 1.
std::vector<TaggedSentence> theta(const FragmentSpec& spec);

// {omega_{i,p} : i <= n, p <= p_k}, grouped by i, primes ascending; n * k
// sentences.
std::vector<TaggedSentence> omega_block(const FragmentSpec& spec);

struct SchemaEvalOptions {
  // sigma is a universal statement; its evaluation scans an initial segment
  // and reports the bound rather than claiming unbounded truth.
  Nat sigma_scan_bound = 10000;
};

// Exact decision through the schema's arithmetic characterization:
//   alpha by comparison, beta by primality-or-{0,1} membership, gamma by
//   p not dividing c_i + 2, omega by c_i = p-1 (mod p). sigma scans
//   z <= sigma_scan_bound and returns UnknownUpTo on success. Throws Error
//   for an untagged sentence.
Verdict eval_schema(const TaggedSentence& s, const Assignment& a,
                    const SchemaEvalOptions& opts = {});

// True iff no z <= bound refutes sigma_p, checked by modular arithmetic
// independent of the sentence evaluator.
bool sigma_holds_up_to(const Nat& p, const Nat& bound);

// Recognizes the canonical form of a schema instance (as produced by the
// generators or by parsing their rendering) and recovers its tag.
std::optional<SchemaTag> match_schema(const Sentence& s);

}  // namespace primwit
