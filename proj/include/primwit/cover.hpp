#pragma once

#include <string>
#include <vector>

#include "primwit/schema.hpp"
#include "primwit/witness.hpp"

namespace primwit {

// The minimal fragment parameters containing a finite set of schema tags:
// n is the largest constant index, k the largest prime index among the
// gamma tags (1 when there are none).
struct FragmentCover {
  std::vector<SchemaTag> requested;
  int n = 1;
  int k = 1;
};

struct CoverOptions {
  // omega sentences drive the construction but are not fragment members;
  // requesting them directly is rejected unless explicitly allowed.
  bool allow_omega = false;
};

// Throws Error for an empty tag list or a tag outside the fragment language
// (sigma always; omega unless allowed).
FragmentCover cover(const std::vector<SchemaTag>& tags,
                    const CoverOptions& opts = {});

struct Demonstration {
  FragmentCover fragment;
  WitnessCertificate certificate;
  std::vector<VerdictEntry> verdicts;  // one per requested tag, same order
  // The surrounding axioms hold in the standard model by construction; only
  // the constant sentences are checked. Recorded here for the report.
  std::string assumption_note;

  bool all_true() const {
    for (const auto& v : verdicts)
      if (!v.verdict.is_true()) return false;
    return true;
  }
};

// Runs the witness search for the covering fragment, then evaluates exactly
// the requested sentences under the witness assignment.
Demonstration demonstrate(const std::vector<SchemaTag>& tags,
                          const SearchPolicy& policy = {},
                          const CoverOptions& opts = {});

// Tag lists as JSON arrays: [{"kind":"gamma","i":1,"p":5}, ...]; "p" may be
// omitted (or null) for alpha/beta. Throws Error on malformed input.
std::vector<SchemaTag> tags_from_json(const std::string& text);
std::string tags_to_json(const std::vector<SchemaTag>& tags);

// 1-based index of p in the prime sequence; throws Error when p is not
// prime.
std::size_t prime_index(const Nat& p);

}  // namespace primwit
