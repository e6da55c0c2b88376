// Copyright 2026 The dressed-cool Authors
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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dressed_cool/dynamics.hpp"
#include "dressed_cool/sweep.hpp"

namespace dressed_cool {

inline constexpr const char* kSweepHeader = "p_d_db,delta_q_mhz,n_bar,sx,sy,sz,s_theta,gamma_fit,converged";

/// Shortest round-trippable text with at most 9 significant digits,
/// independent of the global locale. Infinities print as inf / -inf.
std::string format_number(double value);

/// '#'-prefixed metadata lines followed by the header and one row per grid
/// point, LF line endings. delta_q is written in MHz, gamma_fit in 1/us.
void write_csv(const SweepTable& table, std::ostream& out, bool timestamps = true);
void write_csv(const SweepTable& table, const std::filesystem::path& path, bool timestamps = true);

/// t_us followed by one column per observable.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

struct CsvTable {
  std::vector<std::string> comments;  // '#' lines without the marker
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Numeric column by header name; throws ValidationError when missing or
  /// unparsable.
  std::vector<double> column(const std::string& name) const;
};

/// Plain comma-separated reader (no quoting). Rows must match the header width.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace dressed_cool
