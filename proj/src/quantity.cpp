// Copyright 2026 The fenet Authors
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

#include "fenet/quantity.hpp"

#include <cstdlib>
#include <limits>

#include "fenet/error.hpp"

namespace fenet {

namespace {

using u128 = unsigned __int128;

constexpr int kMaxExponent = 9;
constexpr u128 kMantissaLimit = static_cast<u128>(1) << 120;

u128 pow10_u128(int e) {
  u128 v = 1;
  for (int i = 0; i < e; ++i) v *= 10;
  return v;
}

// |rounded - exact| / exact > tol, evaluated on integers: err * 1e9 > exact
// for the default tolerance. Other tolerances fall back to long double.
bool too_coarse(u128 err, u128 exact, double tol) {
  if (err == 0) return false;
  if (exact == 0) return true;
  if (tol == 1e-9) return err * 1000000000u > exact;
  return static_cast<long double>(err) >
         static_cast<long double>(exact) * static_cast<long double>(tol);
}

Quantity to_signed(u128 magnitude, bool negative, std::string_view text) {
  if (magnitude > static_cast<u128>(std::numeric_limits<Quantity>::max()))
    fail(ErrorKind::Bounds, "value out of range: " + std::string(text));
  auto v = static_cast<Quantity>(magnitude);
  return negative ? -v : v;
}

}  // namespace

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Invariant: return "invariant violation";
    case ErrorKind::InvalidInstance: return "invalid instance";
    case ErrorKind::Bounds: return "bounds exceeded";
    case ErrorKind::UnknownId: return "unknown id";
    case ErrorKind::NotOptimal: return "not optimal";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

std::int64_t Scale::factor() const {
  return static_cast<std::int64_t>(pow10_u128(exponent));
}

Scale Scale::from_exponent(int exponent) {
  if (exponent < 0 || exponent > kMaxExponent)
    fail(ErrorKind::InvalidArgument,
         "scale exponent must be in [0, 9], got " + std::to_string(exponent));
  return Scale{exponent};
}

Scale Scale::parse(std::string_view text) {
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view exp_part;
  if (text.starts_with("1e")) exp_part = text.substr(2);
  else if (text.starts_with("10^")) exp_part = text.substr(3);
  if (!exp_part.empty()) {
    if (!digits_only(exp_part) || exp_part.size() > 2)
      fail(ErrorKind::InvalidArgument, "bad scale: " + std::string(text));
    return from_exponent(std::atoi(std::string(exp_part).c_str()));
  }
  if (!digits_only(text) || text[0] != '1')
    fail(ErrorKind::InvalidArgument,
         "scale must be a power of ten: " + std::string(text));
  for (char c : text.substr(1))
    if (c != '0')
      fail(ErrorKind::InvalidArgument,
           "scale must be a power of ten: " + std::string(text));
  return from_exponent(static_cast<int>(text.size()) - 1);
}

Scale Scale::from_env() {
  const char* v = std::getenv("FE_SCALE");
  if (v == nullptr || *v == '\0') return Scale{};
  return parse(v);
}

bool operator==(const Scale& a, const Scale& b) {
  return a.exponent == b.exponent;
}

Quantity parse_decimal(std::string_view text, Scale scale,
                       double max_rel_error) {
  std::size_t p = 0;
  bool negative = false;
  if (p < text.size() && (text[p] == '-' || text[p] == '+')) {
    negative = text[p] == '-';
    ++p;
  }
  u128 mantissa = 0;
  int frac_digits = 0;
  int int_count = 0;
  int frac_count = 0;
  bool dot = false;
  for (; p < text.size(); ++p) {
    char c = text[p];
    if (c == '.') {
      if (dot) break;
      dot = true;
      continue;
    }
    if (c < '0' || c > '9') break;
    if (mantissa >= kMantissaLimit)
      fail(ErrorKind::Bounds, "too many digits: " + std::string(text));
    mantissa = mantissa * 10 + static_cast<unsigned>(c - '0');
    if (dot) {
      ++frac_digits;
      ++frac_count;
    } else {
      ++int_count;
    }
  }
  if (int_count + frac_count == 0)
    fail(ErrorKind::Parse, "not a decimal number: '" + std::string(text) + "'");
  long exp10 = 0;
  if (p < text.size() && (text[p] == 'e' || text[p] == 'E')) {
    ++p;
    bool eneg = false;
    if (p < text.size() && (text[p] == '-' || text[p] == '+')) {
      eneg = text[p] == '-';
      ++p;
    }
    std::size_t start = p;
    for (; p < text.size() && text[p] >= '0' && text[p] <= '9'; ++p) {
      exp10 = exp10 * 10 + (text[p] - '0');
      if (exp10 > 1000) fail(ErrorKind::Bounds, "exponent too large: " + std::string(text));
    }
    if (p == start) fail(ErrorKind::Parse, "bad exponent: " + std::string(text));
    if (eneg) exp10 = -exp10;
  }
  if (p != text.size())
    fail(ErrorKind::Parse, "not a decimal number: '" + std::string(text) + "'");

  long shift = scale.exponent + exp10 - frac_digits;
  if (mantissa == 0) return 0;
  if (shift >= 0) {
    if (shift > 30) fail(ErrorKind::Bounds, "value out of range: " + std::string(text));
    u128 f = pow10_u128(static_cast<int>(shift));
    if (mantissa > (static_cast<u128>(1) << 100) / f)
      fail(ErrorKind::Bounds, "value out of range: " + std::string(text));
    return to_signed(mantissa * f, negative, text);
  }
  if (-shift > 36) {
    fail(ErrorKind::Parse, "value '" + std::string(text) +
                               "' is not representable at scale 1e" +
                               std::to_string(scale.exponent));
  }
  u128 div = pow10_u128(static_cast<int>(-shift));
  u128 q = mantissa / div;
  u128 r = mantissa % div;
  if (r * 2 >= div) ++q;
  u128 back = q * div;
  u128 err = back > mantissa ? back - mantissa : mantissa - back;
  if (too_coarse(err, mantissa, max_rel_error))
    fail(ErrorKind::Parse, "value '" + std::string(text) +
                               "' is not representable at scale 1e" +
                               std::to_string(scale.exponent) +
                               " (relative quantization error above tolerance)");
  return to_signed(q, negative, text);
}

std::string format_decimal(Quantity value, Scale scale) {
  bool negative = value < 0;
  u128 mag = negative ? static_cast<u128>(-(static_cast<__int128>(value)))
                      : static_cast<u128>(value);
  auto f = static_cast<u128>(scale.factor());
  u128 whole = mag / f;
  u128 frac = mag % f;
  std::string out = negative ? "-" : "";
  std::string w;
  if (whole == 0) w = "0";
  while (whole > 0) {
    w.insert(w.begin(), static_cast<char>('0' + static_cast<int>(whole % 10)));
    whole /= 10;
  }
  out += w;
  if (frac != 0) {
    std::string fs(static_cast<std::size_t>(scale.exponent), '0');
    for (int i = scale.exponent - 1; i >= 0; --i) {
      fs[static_cast<std::size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
      frac /= 10;
    }
    while (!fs.empty() && fs.back() == '0') fs.pop_back();
    out += "." + fs;
  }
  return out;
}

Quantity quantize_ratio(std::int64_t num, std::int64_t den, Scale scale,
                        double max_rel_error) {
  if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  bool negative = (num < 0) != (den < 0);
  u128 n = static_cast<u128>(num < 0 ? -static_cast<__int128>(num) : num);
  u128 d = static_cast<u128>(den < 0 ? -static_cast<__int128>(den) : den);
  u128 scaled = n * static_cast<u128>(scale.factor());
  u128 q = scaled / d;
  u128 r = scaled % d;
  if (r * 2 >= d) ++q;
  u128 back = q * d;
  u128 err = back > scaled ? back - scaled : scaled - back;
  if (too_coarse(err, scaled, max_rel_error))
    fail(ErrorKind::Parse, std::to_string(num) + "/" + std::to_string(den) +
                               " is not representable at scale 1e" +
                               std::to_string(scale.exponent));
  return to_signed(q, negative, std::to_string(num) + "/" + std::to_string(den));
}

Quantity checked_add(Quantity a, Quantity b) {
  Quantity r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::Bounds, "quantity overflow");
  return r;
}

Quantity checked_mul(Quantity a, Quantity b) {
  Quantity r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Bounds, "quantity overflow");
  return r;
}

double to_double(Quantity value, Scale scale) {
  return static_cast<double>(value) / static_cast<double>(scale.factor());
}

}  // namespace fenet
