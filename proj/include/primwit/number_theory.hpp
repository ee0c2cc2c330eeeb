#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "primwit/nat.hpp"

namespace primwit {

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

// All primes <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// p_k under 1-based indexing: nth_prime(1) == 2. Throws Error for k == 0.
std::uint64_t nth_prime(std::size_t k);

// First k primes 2, 3, 5, ..., p_k.
std::vector<std::uint64_t> first_primes(std::size_t k);

// Segmented sieve driving a callback; visits every prime <= limit in
// ascending order. Memory stays bounded by the segment size.
void for_each_prime(std::uint64_t limit,
                    const std::function<void(std::uint64_t)>& visit);

std::uint64_t count_primes(std::uint64_t limit);

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

struct PrimalityResult {
  enum class Kind { Prime, Composite, ProbablePrime };
  enum class Witness { None, BelowTwo, Factor, MillerRabinBase };

  Kind kind = Kind::Composite;
  Witness witness_kind = Witness::None;
  Nat witness = 0;   // factor, or the MR base exposing compositeness
  int rounds = 0;    // extra MR rounds run in the probable-prime regime

  bool passed() const { return kind != Kind::Composite; }
  bool deterministic() const { return kind != Kind::ProbablePrime; }
};

// Numbers below this bound get a deterministic verdict (fixed Miller-Rabin
// base set); 2^64.
const Nat& deterministic_primality_threshold();

// Deterministic below 2^64; Baillie-PSW plus extra_rounds Miller-Rabin
// rounds above, always labeled ProbablePrime there.
PrimalityResult is_prime(const Nat& n, int extra_rounds = 16);

// ---------------------------------------------------------------------------
// Congruence systems
// ---------------------------------------------------------------------------

struct Congruence {
  Nat residue;
  Nat modulus;  // >= 2
};

struct ModularSystem {
  std::vector<Congruence> constraints;
};

struct CrtSolution {
  Nat residue;  // 0 <= residue < modulus
  Nat modulus;  // lcm of the input moduli
};

struct CrtConflict {
  std::size_t first;  // indices of a directly conflicting constraint pair
  std::size_t second;
};

using CrtResult = std::variant<CrtSolution, CrtConflict>;

// General CRT: moduli need not be coprime; merges pairwise with gcd
// consistency. Inconsistent systems report a conflicting pair. The empty
// system solves to (0, 1). Throws Error if a constraint violates
// residue < modulus or modulus < 2.
CrtResult crt_solve(const ModularSystem& sys);

// ---------------------------------------------------------------------------
// Primorials and rough shifts
// ---------------------------------------------------------------------------

struct Primorial {
  std::size_t k = 0;
  Nat value = 1;  // p_1 * p_2 * ... * p_k
};

// Product of the first k primes. Throws Error for k == 0.
Primorial primorial(std::size_t k);

// Euler phi of the kth primorial: (p_1 - 1)(p_2 - 1)...(p_k - 1).
Nat primorial_totient(std::size_t k);

// True iff no prime p <= p_k divides q + 2.
bool rough_shift_check(const Nat& q, std::size_t k);

}  // namespace primwit
