#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace primwit {

// Natural numbers are arbitrary precision throughout; primorials and
// witness values outgrow 64 bits around k = 16.
using Nat = mpz_class;

inline std::string to_decimal(const Nat& n) { return n.get_str(10); }

inline Nat nat_from_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty decimal string");
  for (char c : s)
    if (c < '0' || c > '9')
      throw std::invalid_argument("not a decimal natural: " + s);
  return Nat(s, 10);
}

// Base error for this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace primwit
