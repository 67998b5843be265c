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

// Build-time check of the reconstructed figure instances. A mismatch fails
// the build with the full report.

#include <cstdio>

#include "fenet/generators.hpp"

int main() {
  using namespace fenet;
  const Scale s{};
  const Quantity u = s.factor();
  int bad = 0;
  for (const auto& c : {check_line_noncontig(s), check_tree2(100 * u, u, s), check_tree_r3(100 * u, u, s)}) {
    if (!c.ok()) {
      std::fprintf(stderr, "figure reconstruction mismatch\n%s\n", c.report(s).c_str());
      ++bad;
    }
  }
  return bad == 0 ? 0 : 1;
}
