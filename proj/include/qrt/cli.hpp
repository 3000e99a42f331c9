// Copyright 2026 The qrt Authors
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

#include <iosfwd>
#include <string>
#include <vector>

#include "qrt/monotones.hpp"

namespace qrt::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kInfinite = 3 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// start:stop:step, inclusive of stop up to roundoff.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  static Grid parse(const std::string& text);
  std::vector<double> values() const;
};

/// Comma-separated reals. "a,b,...,z" extends the ratio b/a geometrically up to z.
std::vector<double> parse_real_list(const std::string& text);

/// %.9g, or "inf".
std::string format_real(double value);

/// CSV gamma,omega,eps_threshold,m_at_eps for the amplitude-damped |+> family.
std::string sweep_coherence_damping(const std::vector<double>& gammas, double epsilon,
                                    const NumericPolicy& policy = NumericPolicy::from_environment());

/// CSV epsilon,omega,n_lower for `rho` against the T-state target.
std::string sweep_magic_overhead(const DensityMatrix& rho, const std::vector<double>& epsilons,
                                 const NumericPolicy& policy = NumericPolicy::from_environment());

}  // namespace qrt::cli
