#include "primwit/number_theory.hpp"

#include <algorithm>
#include <cmath>

namespace primwit {

namespace {

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

constexpr std::uint64_t kSegmentSize = 1u << 18;

}  // namespace

void for_each_prime(std::uint64_t limit,
                    const std::function<void(std::uint64_t)>& visit) {
  if (limit < 2) return;
  const auto sqrt_limit =
      static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const auto base = simple_sieve(sqrt_limit);
  for (std::uint64_t p : base)
    if (p <= limit) visit(p);

  std::vector<char> segment(kSegmentSize);
  for (std::uint64_t low = sqrt_limit + 1; low <= limit; low += kSegmentSize) {
    const std::uint64_t high = std::min(low + kSegmentSize - 1, limit);
    std::fill(segment.begin(), segment.begin() + (high - low + 1), 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = ((low + p - 1) / p) * p;
      for (std::uint64_t j = start; j <= high; j += p) segment[j - low] = 0;
    }
    for (std::uint64_t v = low; v <= high; ++v)
      if (segment[v - low]) visit(v);
  }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for_each_prime(limit, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

std::uint64_t count_primes(std::uint64_t limit) {
  std::uint64_t n = 0;
  for_each_prime(limit, [&](std::uint64_t) { ++n; });
  return n;
}

std::uint64_t nth_prime(std::size_t k) {
  if (k == 0) throw Error("nth_prime: k must be >= 1 (1-based indexing)");
  // p_k < k (ln k + ln ln k) for k >= 6; small k handled by the floor.
  double kd = static_cast<double>(k);
  std::uint64_t limit = 16;
  if (k >= 6)
    limit = static_cast<std::uint64_t>(kd * (std::log(kd) + std::log(std::log(kd)))) + 16;
  for (;;) {
    auto primes = primes_up_to(limit);
    if (primes.size() >= k) return primes[k - 1];
    limit *= 2;
  }
}

std::vector<std::uint64_t> first_primes(std::size_t k) {
  if (k == 0) return {};
  auto limit = nth_prime(k);
  auto primes = primes_up_to(limit);
  primes.resize(k);
  return primes;
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

const Nat& deterministic_primality_threshold() {
  static const Nat threshold = Nat(1) << 64;
  return threshold;
}

namespace {

// Strong probable prime test to the given base. Returns true when n passes.
// Precondition: n odd, n > 2, 1 < base < n - 1 not required (handled by caller
// reducing the base mod n; bases congruent to 0, +-1 pass trivially).
bool miller_rabin_pass(const Nat& n, const Nat& base) {
  Nat b = base % n;
  if (b == 0 || b == 1 || b == n - 1) return true;
  Nat d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  Nat x;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Strong Lucas probable prime test with Selfridge's parameter choice.
// Precondition: n odd, n > 2, not a perfect square, gcd checks done upstream.
bool strong_lucas_pass(const Nat& n) {
  // Find D in 5, -7, 9, -11, ... with jacobi(D, n) == -1.
  Nat d = 5;
  for (;;) {
    int j = mpz_jacobi(d.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(d) != n) return false;  // shares a factor with n
    d = (d > 0) ? -(d + 2) : -(d - 2);
  }
  // P = 1, Q = (1 - D) / 4.
  Nat q = (1 - d) / 4;

  Nat delta = n + 1;
  unsigned long s = mpz_scan1(delta.get_mpz_t(), 0);
  Nat t = delta >> s;

  // Compute U_t, V_t (mod n) by the binary double-and-add chain.
  Nat u = 0, v = 2, qk = 1;
  const Nat inv2 = [&] {
    Nat r;
    Nat two = 2;
    mpz_invert(r.get_mpz_t(), two.get_mpz_t(), n.get_mpz_t());
    return r;
  }();
  const auto bits = mpz_sizeinbase(t.get_mpz_t(), 2);
  for (auto i = static_cast<long>(bits); i-- > 0;) {
    // (U, V) <- (U*V, V^2 - 2*Q^k), doubling the index.
    u = (u * v) % n;
    v = (v * v - 2 * qk) % n;
    qk = (qk * qk) % n;
    if (mpz_tstbit(t.get_mpz_t(), static_cast<unsigned long>(i))) {
      // Index +1: U' = (P*U + V)/2, V' = (D*U + P*V)/2 with P = 1.
      Nat u1 = ((u + v) % n * inv2) % n;
      Nat v1 = ((d * u + v) % n * inv2) % n;
      u = u1;
      v = v1;
      qk = (qk * q) % n;
    }
  }
  auto norm = [&](Nat& x) {
    x %= n;
    if (x < 0) x += n;
  };
  norm(u);
  norm(v);
  norm(qk);

  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = (v * v - 2 * qk) % n;
    norm(v);
    if (v == 0) return true;
    qk = (qk * qk) % n;
  }
  return false;
}

const std::uint64_t kTrialPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                      29, 31, 37, 41, 43, 47, 53, 59, 61};

// Deterministic for n < 4,759,123,141.
const std::uint64_t kSmallBases[] = {2, 7, 61};
// Deterministic for n < 2^64 (first twelve primes as bases).
const std::uint64_t kWideBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

PrimalityResult is_prime(const Nat& n, int extra_rounds) {
  PrimalityResult r;
  if (n < 2) {
    r.kind = PrimalityResult::Kind::Composite;
    r.witness_kind = PrimalityResult::Witness::BelowTwo;
    r.witness = n;
    return r;
  }
  for (std::uint64_t p : kTrialPrimes) {
    if (Nat(p) * p > n) {
      r.kind = PrimalityResult::Kind::Prime;
      return r;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      if (n == p) {
        r.kind = PrimalityResult::Kind::Prime;
        return r;
      }
      r.kind = PrimalityResult::Kind::Composite;
      r.witness_kind = PrimalityResult::Witness::Factor;
      r.witness = p;
      return r;
    }
  }

  const bool deterministic = n < deterministic_primality_threshold();
  if (deterministic) {
    const bool narrow = n < Nat("4759123141");
    const auto* bases = narrow ? kSmallBases : kWideBases;
    const std::size_t count =
        narrow ? std::size(kSmallBases) : std::size(kWideBases);
    for (std::size_t i = 0; i < count; ++i) {
      if (!miller_rabin_pass(n, Nat(bases[i]))) {
        r.kind = PrimalityResult::Kind::Composite;
        r.witness_kind = PrimalityResult::Witness::MillerRabinBase;
        r.witness = bases[i];
        return r;
      }
    }
    r.kind = PrimalityResult::Kind::Prime;
    return r;
  }

  // Baillie-PSW: strong base-2 test plus strong Lucas, then extra rounds.
  if (!miller_rabin_pass(n, 2)) {
    r.kind = PrimalityResult::Kind::Composite;
    r.witness_kind = PrimalityResult::Witness::MillerRabinBase;
    r.witness = 2;
    return r;
  }
  if (mpz_perfect_square_p(n.get_mpz_t()) || !strong_lucas_pass(n)) {
    // No compact base witness from the Lucas side; report the test family.
    r.kind = PrimalityResult::Kind::Composite;
    r.witness_kind = PrimalityResult::Witness::None;
    r.witness = 0;
    return r;
  }
  // Extra rounds with fixed odd prime bases keep results reproducible.
  auto extra_bases = first_primes(static_cast<std::size_t>(
      extra_rounds > 0 ? extra_rounds + 1 : 1));
  for (std::size_t i = 1; i < extra_bases.size(); ++i) {
    if (!miller_rabin_pass(n, Nat(extra_bases[i]))) {
      r.kind = PrimalityResult::Kind::Composite;
      r.witness_kind = PrimalityResult::Witness::MillerRabinBase;
      r.witness = extra_bases[i];
      return r;
    }
  }
  r.kind = PrimalityResult::Kind::ProbablePrime;
  r.rounds = extra_rounds;
  return r;
}

// ---------------------------------------------------------------------------
// CRT
// ---------------------------------------------------------------------------

namespace {

bool congruences_compatible(const Congruence& a, const Congruence& b) {
  Nat g;
  mpz_gcd(g.get_mpz_t(), a.modulus.get_mpz_t(), b.modulus.get_mpz_t());
  return (a.residue - b.residue) % g == 0;
}

}  // namespace

CrtResult crt_solve(const ModularSystem& sys) {
  for (const auto& c : sys.constraints) {
    if (c.modulus < 2) throw Error("crt_solve: modulus must be >= 2");
    if (c.residue < 0 || c.residue >= c.modulus)
      throw Error("crt_solve: residue must satisfy 0 <= r < m");
  }

  Nat residue = 0, modulus = 1;
  for (std::size_t j = 0; j < sys.constraints.size(); ++j) {
    const auto& c = sys.constraints[j];
    Nat g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
               modulus.get_mpz_t(), c.modulus.get_mpz_t());
    Nat diff = c.residue - residue;
    if (diff % g != 0) {
      // Pairwise solvability is equivalent to global solvability for
      // integer congruences, so a direct conflicting pair always exists.
      for (std::size_t a = 0; a < sys.constraints.size(); ++a)
        for (std::size_t b = a + 1; b < sys.constraints.size(); ++b)
          if (!congruences_compatible(sys.constraints[a], sys.constraints[b]))
            return CrtConflict{a, b};
      return CrtConflict{0, j};  // unreachable
    }
    Nat lcm = modulus / g * c.modulus;
    // x = residue + modulus * s * (diff / g)  solves both congruences.
    Nat x = residue + modulus * ((s * (diff / g)) % (c.modulus / g));
    x %= lcm;
    if (x < 0) x += lcm;
    residue = x;
    modulus = lcm;
  }
  return CrtSolution{residue, modulus};
}

// ---------------------------------------------------------------------------
// Primorials
// ---------------------------------------------------------------------------

Primorial primorial(std::size_t k) {
  if (k == 0) throw Error("primorial: k must be >= 1");
  Primorial result;
  result.k = k;
  for (std::uint64_t p : first_primes(k)) result.value *= p;
  return result;
}

Nat primorial_totient(std::size_t k) {
  if (k == 0) throw Error("primorial_totient: k must be >= 1");
  Nat phi = 1;
  for (std::uint64_t p : first_primes(k)) phi *= (p - 1);
  return phi;
}

bool rough_shift_check(const Nat& q, std::size_t k) {
  if (k == 0) throw Error("rough_shift_check: k must be >= 1");
  const Nat shifted = q + 2;
  for (std::uint64_t p : first_primes(k))
    if (mpz_divisible_ui_p(shifted.get_mpz_t(), p)) return false;
  return true;
}

}  // namespace primwit
