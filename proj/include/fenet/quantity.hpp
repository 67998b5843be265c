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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fenet {

// Distances, backlogs and delays are integers in units of 10^-exponent.
// Demands and capacities are plain integers.
using Quantity = std::int64_t;

struct Scale {
  int exponent = 6;

  std::int64_t factor() const;

  static Scale from_exponent(int exponent);
  // Reads FE_SCALE ("1000000", "1e6" or "10^6"); falls back to 10^6.
  static Scale from_env();
  // Parses the same spellings FE_SCALE accepts.
  static Scale parse(std::string_view text);
};

bool operator==(const Scale& a, const Scale& b);

// Exact decimal parse, e.g. "0.4" -> 400000 at exponent 6. A value that
// cannot be represented is rounded only when the relative error stays
// within max_rel_error; otherwise it is rejected.
Quantity parse_decimal(std::string_view text, Scale scale,
                       double max_rel_error = 1e-9);

// Inverse of parse_decimal, trailing zeros trimmed: 400000 -> "0.4".
std::string format_decimal(Quantity value, Scale scale);

// Exact rational num/den rounded to the scale, with the same rejection rule.
Quantity quantize_ratio(std::int64_t num, std::int64_t den, Scale scale,
                        double max_rel_error = 1e-9);

Quantity checked_add(Quantity a, Quantity b);
Quantity checked_mul(Quantity a, Quantity b);

double to_double(Quantity value, Scale scale);

}  // namespace fenet
