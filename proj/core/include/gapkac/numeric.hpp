// Copyright 2026 The gapkac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gapkac {

// Arbitrary precision nonnegative integer. Primorials, CRT solutions and
// matrix entries overflow 64 bits even for toy parameters.
using Natural = mpz_class;

// Exact fraction, always kept canonical (lowest terms, positive denominator).
using Ratio = mpq_class;

// Raised when an argument lies outside the mathematical domain of an
// operation (iterated log <= 0, m < 20 for omega*, c = -1 mod s, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a request exceeds a configured resource ceiling.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Natural natural(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t),
                "LP64 platform expected");
  return Natural(static_cast<unsigned long>(v));
}

inline bool fits_u64(const Natural& n) {
  return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Natural& n) {
  if (!fits_u64(n)) throw DomainError("value does not fit in 64 bits");
  return static_cast<std::uint64_t>(n.get_ui());
}

inline Ratio ratio(const Natural& num, const Natural& den) {
  Ratio r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Natural& n) { return n.get_str(10); }

// "a/b" always, including integers ("1/1") so the format is uniform.
inline std::string to_string(const Ratio& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

// Natural log of a positive big integer without converting through double
// (which would overflow past ~1e308).
double log_natural(const Natural& n);

}  // namespace gapkac
