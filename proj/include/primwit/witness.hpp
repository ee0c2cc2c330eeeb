#pragma once

#include <string>
#include <vector>

#include "primwit/formula.hpp"
#include "primwit/number_theory.hpp"
#include "primwit/schema.hpp"

namespace primwit {

// The per-unknown congruence block  y = p - 1 (mod p)  for every prime
// p <= p_k; the blocks are identical across unknowns. Throws Error unless
// n, k >= 1.
std::vector<ModularSystem> build_system(int n, int k);

// The ascending solutions m * P_k - 1 of one congruence block, m = 1, 2, ...
class SolutionStream {
 public:
  explicit SolutionStream(int k);

  const Nat& primorial_value() const { return primorial_; }
  Nat value_at(const Nat& m) const;  // m >= 1
  Nat next();                        // value_at(1), value_at(2), ... in order

 private:
  Nat primorial_;
  Nat next_m_ = 1;
};

struct SearchPolicy {
  Nat max_progression_index = 10000000;  // give up beyond this m
  int extra_mr_rounds = 16;              // on top of Baillie-PSW
  unsigned segment_width = 64;           // m-range chunk per worker task
  unsigned threads = 0;                  // 0: PRIMWIT_THREADS or hardware
};

// Search hit an operational limit; never a mathematical conclusion.
struct SearchExhausted : Error {
  int needed = 0;
  int found = 0;
  Nat max_index;
  SearchExhausted(int needed_, int found_, Nat max_index_);
};

struct WitnessEntry {
  int index = 0;          // i of the constant c_i this value interprets
  Nat progression_index;  // m with value == m * primorial - 1
  Nat value;
  std::string regime;     // "deterministic" or "probable"
};

struct VerdictEntry {
  SchemaTag tag;
  Verdict verdict;
};

struct WitnessCertificate {
  int n = 0;
  int k = 0;
  Nat primorial_value;
  std::vector<WitnessEntry> witnesses;
  std::vector<VerdictEntry> verdicts;  // theta block then omega block
  std::string tool_version;

  Assignment assignment() const;
};

// The n smallest primes in the solution progression, in ascending order,
// packaged with verdicts for theta(n, k) and the omega block. Deterministic
// for any thread count. Throws SearchExhausted when the policy's
// max_progression_index is reached first.
WitnessCertificate find_witnesses(int n, int k, const SearchPolicy& policy = {});

struct CertificateFormatError : Error {
  using Error::Error;
};

// Canonical serialization: single JSON object, fixed key order, big
// naturals as decimal strings, newline-terminated. Byte-identical for equal
// certificates.
std::string certificate_to_json(const WitnessCertificate& cert);

// Strict parse of the canonical format; throws CertificateFormatError on
// malformed input (hostile input allowed).
WitnessCertificate certificate_from_json(const std::string& text);

struct CheckItem {
  std::string name;
  bool passed = false;
  bool structural = false;  // shape problems, as opposed to mathematical
  std::string detail;
};

struct VerificationReport {
  bool accepted = false;
  std::vector<CheckItem> checks;

  bool structural_failure() const {
    for (const auto& c : checks)
      if (c.structural && !c.passed) return true;
    return false;
  }
};

// Recomputes everything the certificate claims: index shape, progression
// formula, ascending order, primality and regime, every alpha/beta/gamma/
// omega verdict, and the omega-to-gamma implication instances.
VerificationReport verify_certificate(const WitnessCertificate& cert);

}  // namespace primwit
