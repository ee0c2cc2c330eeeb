#include "primwit/witness.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <thread>

#include <json.hpp>

#include "primwit/version.hpp"

namespace primwit {

using ojson = nlohmann::ordered_json;

std::vector<ModularSystem> build_system(int n, int k) {
  if (n < 1 || k < 1) throw Error("build_system: n and k must be >= 1");
  ModularSystem block;
  for (auto p : first_primes(static_cast<std::size_t>(k)))
    block.constraints.push_back({Nat(p - 1), Nat(p)});
  return std::vector<ModularSystem>(static_cast<std::size_t>(n), block);
}

SolutionStream::SolutionStream(int k) {
  if (k < 1) throw Error("solution_stream: k must be >= 1");
  primorial_ = primorial(static_cast<std::size_t>(k)).value;
}

Nat SolutionStream::value_at(const Nat& m) const {
  if (m < 1) throw Error("solution_stream: progression index starts at 1");
  return m * primorial_ - 1;
}

Nat SolutionStream::next() {
  Nat v = value_at(next_m_);
  ++next_m_;
  return v;
}

// ---------------------------------------------------------------------------
// Witness search
// ---------------------------------------------------------------------------

SearchExhausted::SearchExhausted(int needed_, int found_, Nat max_index_)
    : Error("witness search exhausted: found " + std::to_string(found_) +
            " of " + std::to_string(needed_) +
            " primes with progression index <= " + to_decimal(max_index_)),
      needed(needed_),
      found(found_),
      max_index(std::move(max_index_)) {}

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("PRIMWIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct Hit {
  Nat m;
  Nat value;
  bool deterministic;
};

// Scans progression indices [lo, hi] and reports the primes found, in order.
std::vector<Hit> scan_chunk(const Nat& primorial_value, const Nat& lo,
                            const Nat& hi, int extra_rounds) {
  std::vector<Hit> hits;
  for (Nat m = lo; m <= hi; ++m) {
    Nat value = m * primorial_value - 1;
    PrimalityResult pr = is_prime(value, extra_rounds);
    if (pr.passed()) hits.push_back({m, value, pr.deterministic()});
  }
  return hits;
}

}  // namespace

Assignment WitnessCertificate::assignment() const {
  std::vector<Nat> values;
  values.reserve(witnesses.size());
  for (const auto& w : witnesses) values.push_back(w.value);
  return Assignment(std::move(values));
}

WitnessCertificate find_witnesses(int n, int k, const SearchPolicy& policy) {
  if (n < 1 || k < 1) throw Error("find_witnesses: n and k must be >= 1");
  if (policy.max_progression_index < n)
    throw Error("find_witnesses: max_progression_index must be >= n");

  const Nat P = primorial(static_cast<std::size_t>(k)).value;
  const Nat& max_m = policy.max_progression_index;
  const unsigned threads = resolve_threads(policy.threads);
  const unsigned width = std::max(1u, policy.segment_width);

  std::vector<WitnessEntry> found;
  Nat next_start = 1;
  while (static_cast<int>(found.size()) < n && next_start <= max_m) {
    // One batch of `threads` chunks; joining in chunk order keeps the result
    // identical for every thread count.
    std::vector<std::future<std::vector<Hit>>> batch;
    for (unsigned c = 0; c < threads && next_start <= max_m; ++c) {
      Nat lo = next_start;
      Nat hi = std::min(Nat(lo + width - 1), max_m);
      next_start = hi + 1;
      batch.push_back(std::async(std::launch::async, scan_chunk, std::cref(P),
                                 lo, hi, policy.extra_mr_rounds));
    }
    for (auto& fut : batch) {
      for (Hit& hit : fut.get()) {
        if (static_cast<int>(found.size()) >= n) break;
        WitnessEntry entry;
        entry.index = static_cast<int>(found.size()) + 1;
        entry.progression_index = std::move(hit.m);
        entry.value = std::move(hit.value);
        entry.regime = hit.deterministic ? "deterministic" : "probable";
        found.push_back(std::move(entry));
      }
    }
  }
  if (static_cast<int>(found.size()) < n)
    throw SearchExhausted(n, static_cast<int>(found.size()), max_m);

  WitnessCertificate cert;
  cert.n = n;
  cert.k = k;
  cert.primorial_value = P;
  cert.witnesses = std::move(found);
  cert.tool_version = kToolVersion;

  Assignment a = cert.assignment();
  for (const auto& ts : theta({n, k}))
    cert.verdicts.push_back({*ts.tag, eval_schema(ts, a)});
  for (const auto& ts : omega_block({n, k}))
    cert.verdicts.push_back({*ts.tag, eval_schema(ts, a)});
  for (const auto& v : cert.verdicts)
    if (!v.verdict.is_true())
      throw Error("find_witnesses: internal verification failed for " +
                  to_string(v.tag));
  return cert;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string certificate_to_json(const WitnessCertificate& cert) {
  ojson j;
  j["n"] = cert.n;
  j["k"] = cert.k;
  j["primorial"] = to_decimal(cert.primorial_value);
  ojson witnesses = ojson::array();
  for (const auto& w : cert.witnesses) {
    ojson e;
    e["i"] = w.index;
    e["m"] = to_decimal(w.progression_index);
    e["value"] = to_decimal(w.value);
    e["regime"] = w.regime;
    witnesses.push_back(std::move(e));
  }
  j["witnesses"] = std::move(witnesses);
  ojson verdicts = ojson::array();
  for (const auto& v : cert.verdicts) {
    ojson e;
    e["schema"] = to_string(v.tag.kind);
    e["i"] = v.tag.i;
    if (v.tag.kind == SchemaKind::Gamma || v.tag.kind == SchemaKind::Omega) {
      if (!v.tag.p.fits_ulong_p())
        throw Error("certificate: prime parameter too large to serialize");
      e["p"] = static_cast<std::uint64_t>(v.tag.p.get_ui());
    } else {
      e["p"] = nullptr;
    }
    e["verdict"] = to_string(v.verdict);
    verdicts.push_back(std::move(e));
  }
  j["verdicts"] = std::move(verdicts);
  j["tool_version"] = cert.tool_version;
  return j.dump() + "\n";
}

namespace {

[[noreturn]] void format_fail(const std::string& what) {
  throw CertificateFormatError("certificate: " + what);
}

void expect_keys(const ojson& obj, std::initializer_list<const char*> keys,
                 const std::string& where) {
  if (!obj.is_object()) format_fail(where + " must be an object");
  std::size_t expected = 0;
  for (const char* key : keys) {
    if (!obj.contains(key)) format_fail(where + " is missing key \"" + key + "\"");
    ++expected;
  }
  if (obj.size() != expected)
    format_fail(where + " has unexpected extra keys");
}

int get_small_int(const ojson& v, const std::string& where) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 1000000)
    format_fail(where + " must be a small nonnegative integer");
  return static_cast<int>(v.get<std::uint64_t>());
}

Nat get_decimal(const ojson& v, const std::string& where) {
  if (!v.is_string()) format_fail(where + " must be a decimal string");
  try {
    return nat_from_decimal(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    format_fail(where + ": " + e.what());
  }
}

}  // namespace

WitnessCertificate certificate_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    format_fail(std::string("invalid JSON: ") + e.what());
  }
  expect_keys(j, {"n", "k", "primorial", "witnesses", "verdicts", "tool_version"},
              "certificate");

  WitnessCertificate cert;
  cert.n = get_small_int(j["n"], "\"n\"");
  cert.k = get_small_int(j["k"], "\"k\"");
  if (cert.n < 1 || cert.k < 1) format_fail("n and k must be >= 1");
  cert.primorial_value = get_decimal(j["primorial"], "\"primorial\"");

  if (!j["witnesses"].is_array()) format_fail("\"witnesses\" must be an array");
  for (const auto& e : j["witnesses"]) {
    expect_keys(e, {"i", "m", "value", "regime"}, "witness entry");
    WitnessEntry w;
    w.index = get_small_int(e["i"], "witness \"i\"");
    w.progression_index = get_decimal(e["m"], "witness \"m\"");
    w.value = get_decimal(e["value"], "witness \"value\"");
    if (!e["regime"].is_string()) format_fail("witness \"regime\" must be a string");
    w.regime = e["regime"].get<std::string>();
    if (w.regime != "deterministic" && w.regime != "probable")
      format_fail("witness \"regime\" must be \"deterministic\" or \"probable\"");
    cert.witnesses.push_back(std::move(w));
  }

  if (!j["verdicts"].is_array()) format_fail("\"verdicts\" must be an array");
  for (const auto& e : j["verdicts"]) {
    expect_keys(e, {"schema", "i", "p", "verdict"}, "verdict entry");
    if (!e["schema"].is_string()) format_fail("verdict \"schema\" must be a string");
    auto kind = schema_kind_from_string(e["schema"].get<std::string>());
    if (!kind || *kind == SchemaKind::Sigma)
      format_fail("verdict \"schema\" must be alpha, beta, gamma, or omega");
    int i = get_small_int(e["i"], "verdict \"i\"");
    Nat p = 0;
    if (*kind == SchemaKind::Gamma || *kind == SchemaKind::Omega) {
      if (!e["p"].is_number_unsigned())
        format_fail("verdict \"p\" must be a nonnegative integer");
      p = Nat(e["p"].get<std::uint64_t>());
    } else if (!e["p"].is_null()) {
      format_fail("verdict \"p\" must be null for alpha and beta");
    }
    SchemaTag tag;
    try {
      tag = make_tag(*kind, i, p);
    } catch (const Error& err) {
      format_fail(std::string("bad verdict tag: ") + err.what());
    }
    Verdict verdict;
    if (!e["verdict"].is_string()) format_fail("\"verdict\" must be a string");
    try {
      verdict = verdict_from_string(e["verdict"].get<std::string>());
    } catch (const Error& err) {
      format_fail(std::string("bad verdict value: ") + err.what());
    }
    cert.verdicts.push_back({tag, verdict});
  }

  if (!j["tool_version"].is_string())
    format_fail("\"tool_version\" must be a string");
  cert.tool_version = j["tool_version"].get<std::string>();
  return cert;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

VerificationReport verify_certificate(const WitnessCertificate& cert) {
  VerificationReport report;
  auto check = [&](const std::string& name, bool passed, bool structural,
                   const std::string& detail = "") {
    report.checks.push_back({name, passed, structural, detail});
    return passed;
  };

  bool shape_ok =
      check("header-shape", cert.n >= 1 && cert.k >= 1, true,
            "n and k must be >= 1");
  bool indices_ok = cert.witnesses.size() == static_cast<std::size_t>(cert.n);
  for (std::size_t idx = 0; idx < cert.witnesses.size(); ++idx)
    indices_ok = indices_ok &&
                 cert.witnesses[idx].index == static_cast<int>(idx) + 1;
  shape_ok = check("witness-indices", indices_ok, true,
                   "witness indices must be exactly 1..n") && shape_ok;

  bool coverage_ok = false;
  if (shape_ok) {
    std::vector<SchemaTag> expected;
    for (const auto& ts : theta({cert.n, cert.k})) expected.push_back(*ts.tag);
    for (const auto& ts : omega_block({cert.n, cert.k}))
      expected.push_back(*ts.tag);
    coverage_ok = expected.size() == cert.verdicts.size();
    for (std::size_t idx = 0; coverage_ok && idx < expected.size(); ++idx)
      coverage_ok = cert.verdicts[idx].tag == expected[idx];
  }
  check("verdict-coverage", coverage_ok, true,
        "verdicts must list the theta block then the omega block");

  if (!shape_ok) {
    report.accepted = false;
    return report;
  }

  const Nat P = primorial(static_cast<std::size_t>(cert.k)).value;
  check("primorial-value", cert.primorial_value == P, false,
        "primorial field must equal the product of the first k primes");

  bool ascending = true;
  for (std::size_t idx = 1; idx < cert.witnesses.size(); ++idx)
    ascending = ascending &&
                cert.witnesses[idx - 1].value < cert.witnesses[idx].value;
  check("ascending-order", ascending, false,
        "witness values must be strictly ascending");

  for (const auto& w : cert.witnesses) {
    const std::string suffix = " i=" + std::to_string(w.index);
    bool formula_ok = w.progression_index >= 1 &&
                      w.value == w.progression_index * P - 1;
    check("progression-formula" + suffix, formula_ok, false,
          "value must equal m * primorial - 1");
    PrimalityResult pr = is_prime(w.value);
    check("primality" + suffix, pr.passed(), false,
          pr.passed() ? "" : to_decimal(w.value) + " is not prime");
    const bool expect_deterministic =
        w.value < deterministic_primality_threshold();
    const std::string expected_regime =
        expect_deterministic ? "deterministic" : "probable";
    check("primality-regime" + suffix, w.regime == expected_regime, false,
          "expected regime " + expected_regime);
  }

  if (coverage_ok) {
    Assignment a = cert.assignment();
    std::vector<Verdict> recomputed;
    bool all_true = true;
    for (const auto& v : cert.verdicts) {
      TaggedSentence ts = [&] {
        switch (v.tag.kind) {
          case SchemaKind::Alpha: return alpha(v.tag.i);
          case SchemaKind::Beta: return beta(v.tag.i);
          case SchemaKind::Gamma: return gamma(v.tag.i, v.tag.p);
          default: return omega(v.tag.i, v.tag.p);
        }
      }();
      Verdict actual = eval_schema(ts, a);
      recomputed.push_back(actual);
      bool ok = actual.is_true() && v.verdict.is_true();
      all_true = all_true && ok;
      check("schema " + to_string(v.tag), ok, false,
            ok ? "" : "recomputed " + to_string(actual) + ", recorded " +
                          to_string(v.verdict));
    }
    (void)all_true;

    // The omega-to-gamma implication instances, checked from the recomputed
    // verdicts.
    auto find_verdict = [&](SchemaKind kind, int i, const Nat& p) -> Verdict {
      for (std::size_t idx = 0; idx < cert.verdicts.size(); ++idx)
        if (cert.verdicts[idx].tag.kind == kind &&
            cert.verdicts[idx].tag.i == i && cert.verdicts[idx].tag.p == p)
          return recomputed[idx];
      return Verdict::unknown(0);
    };
    for (const auto& v : cert.verdicts) {
      if (v.tag.kind != SchemaKind::Omega) continue;
      Verdict om = find_verdict(SchemaKind::Omega, v.tag.i, v.tag.p);
      Verdict ga = find_verdict(SchemaKind::Gamma, v.tag.i, v.tag.p);
      bool ok = !om.is_true() || ga.is_true();
      check("omega-implies-gamma i=" + std::to_string(v.tag.i) +
                " p=" + to_decimal(v.tag.p),
            ok, false, "");
    }
  }

  report.accepted = true;
  for (const auto& c : report.checks) report.accepted = report.accepted && c.passed;
  return report;
}

}  // namespace primwit
