// Copyright 2026 The Rescue Games Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rescue/rational.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "rescue/error.hpp"

namespace rescue {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::kInvalidArgument, "zero denominator");
  value_ = mpq_class(static_cast<long>(num), 1);
  value_ /= mpq_class(static_cast<long>(den), 1);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    fail(ErrorKind::kInvalidArgument,
         "malformed rational '" + std::string(text) +
             "' (expected \"num/den\" with integer parts)");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    fail(ErrorKind::kInvalidArgument,
         "zero denominator in '" + std::string(text) + "'");
  }
  Rational r;
  r.value_ = mpq_class(n, d);
  r.value_.canonicalize();
  if (negative) r.value_ = -r.value_;
  return r;
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) fail(ErrorKind::kInvalidArgument, "non-finite value");
  Rational r;
  r.value_ = mpq_class(value);
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorKind::kInvalidArgument, "division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::to_decimal(int significant_digits) const {
  // mpf keeps enough precision for values whose double image would underflow.
  mpf_class f(value_, 256);
  char* raw = nullptr;
  const int len = gmp_asprintf(&raw, "%.*Fg", significant_digits, f.get_mpf_t());
  std::string out = len >= 0 ? std::string(raw, static_cast<std::size_t>(len))
                             : std::string();
  void (*free_fn)(void*, size_t) = nullptr;
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(raw, static_cast<std::size_t>(len) + 1);
  return out;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational binomial(std::size_t n, std::size_t k) {
  if (k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational::parse(b.get_str());
}

}  // namespace rescue
