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

#include "dressed_cool/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dressed_cool/errors.hpp"
#include "dressed_cool/units.hpp"

namespace dressed_cool {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 9);
  std::string s(buf.data(), res.ptr);
  // Trim the trailing zeros and dangling point that %g-style output keeps.
  const auto exp_pos = s.find('e');
  std::string mantissa = s.substr(0, exp_pos);
  const std::string exponent = exp_pos == std::string::npos ? "" : s.substr(exp_pos);
  if (mantissa.find('.') != std::string::npos) {
    while (!mantissa.empty() && mantissa.back() == '0') mantissa.pop_back();
    if (!mantissa.empty() && mantissa.back() == '.') mantissa.pop_back();
  }
  return mantissa + exponent;
}

void write_csv(const SweepTable& table, std::ostream& out, bool timestamps) {
  const auto& m = table.meta;
  const auto& p = m.params;
  const auto line = [&](const std::string& key, const std::string& value) {
    out << "# " << key << ": " << value << '\n';
  };
  line("code_version", m.code_version);
  line("mode", std::string(to_string(m.mode)));
  line("chi_mhz", format_number(units::angular_to_mhz(p.chi)));
  line("kappa_mhz", format_number(units::angular_to_mhz(p.kappa)));
  line("omega_r_mhz", format_number(units::angular_to_mhz(p.omega_r_rabi)));
  line("delta_c_mhz", format_number(units::angular_to_mhz(p.delta_c)));
  line("gamma_down_per_us", format_number(p.gamma_down));
  line("gamma_up_per_us", format_number(p.gamma_up));
  line("gamma_phi_per_us", format_number(p.gamma_phi));
  line("theta_deg", format_number(m.theta * 180.0 / std::numbers::pi));
  line("tomography_scale", format_number(m.tomography_scale));
  line("grid", std::to_string(m.n_power) + " x " + std::to_string(m.n_detuning));
  if (timestamps) {
    line("started", m.started);
    line("finished", m.finished);
  }
  out << kSweepHeader << '\n';
  for (const auto& r : table.rows) {
    out << format_number(r.p_d_db) << ',' << format_number(units::angular_to_mhz(r.delta_q)) << ','
        << format_number(r.n_bar) << ',' << format_number(r.sx) << ',' << format_number(r.sy) << ','
        << format_number(r.sz) << ',' << format_number(r.s_theta) << ',' << format_number(r.gamma_fit) << ','
        << (r.converged ? 1 : 0) << '\n';
  }
}

void write_csv(const SweepTable& table, const std::filesystem::path& path, bool timestamps) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file " + path.string());
  write_csv(table, out, timestamps);
  if (!out) throw ValidationError("failed writing " + path.string());
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  out << "t_us";
  for (const auto& name : trajectory.names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    out << format_number(trajectory.times[i]);
    for (const auto& series : trajectory.values) out << ',' << format_number(series[i]);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      t.comments.push_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
      continue;
    }
    auto fields = split(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ValidationError("csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(t.header.size()) + " fields, got " + std::to_string(fields.size()));
    }
    t.rows.push_back(std::move(fields));
  }
  if (t.header.empty()) throw ValidationError("csv input has no header line");
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file " + path.string());
  return read_csv(in);
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ValidationError("csv has no column '" + name + "'");
  const auto idx = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string& s = rows[r][idx];
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw ValidationError("csv column '" + name + "' row " + std::to_string(r + 1) + ": not a number: '" + s +
                            "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace dressed_cool
