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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include "dressed_cool/acceptance.hpp"
#include "dressed_cool/csv.hpp"
#include "dressed_cool/errors.hpp"
#include "dressed_cool/units.hpp"

namespace dc = dressed_cool;
using dc::units::mhz_to_angular;

namespace {

// German-style punctuation: decimal comma, dot grouping after every digit.
struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\1"; }
};

dc::SweepTable small_table() {
  dc::SweepGrid g;
  g.fixed = dc::reference_params(1.0);
  g.mode = dc::SweepMode::kRatesAnalyticMap;
  g.power_axis_db = {-3.0, 0.0, 3.0};
  g.detuning_axis = {mhz_to_angular(-1.0), mhz_to_angular(0.5), mhz_to_angular(1.25), mhz_to_angular(10.0)};
  return dc::run_sweep(g, {1, false});
}

std::string render(const dc::SweepTable& t, bool timestamps = false) {
  std::ostringstream os;
  dc::write_csv(t, os, timestamps);
  return os.str();
}

}  // namespace

TEST(FormatNumber, ShortestTrimmed) {
  EXPECT_EQ(dc::format_number(0.0), "0");
  EXPECT_EQ(dc::format_number(1.0), "1");
  EXPECT_EQ(dc::format_number(-0.25), "-0.25");
  EXPECT_EQ(dc::format_number(0.938), "0.938");
  EXPECT_EQ(dc::format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(dc::format_number(1.5e-12), "1.5e-12");
  EXPECT_EQ(dc::format_number(2.0e20), "2e+20");
  EXPECT_EQ(dc::format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(dc::format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(WriteCsv, EmptyTableHasMetadataAndHeaderOnly) {
  dc::SweepTable t;
  t.meta.params = dc::reference_params(1.0);
  const std::string text = render(t);
  std::istringstream in(text);
  const dc::CsvTable parsed = dc::read_csv(in);
  EXPECT_TRUE(parsed.rows.empty());
  EXPECT_EQ(parsed.header.size(), 9u);
  EXPECT_NE(text.find(std::string(dc::kSweepHeader) + "\n"), std::string::npos);
  EXPECT_EQ(parsed.comments.front(), "code_version: " + std::string(dc::kVersion));
  bool has_kappa = false;
  for (const auto& c : parsed.comments) has_kappa = has_kappa || c == "kappa_mhz: 4.3";
  EXPECT_TRUE(has_kappa);
  EXPECT_EQ(text.find("started"), std::string::npos);
}

TEST(WriteCsv, RoundTripsRows) {
  const dc::SweepTable t = small_table();
  std::istringstream in(render(t));
  const dc::CsvTable parsed = dc::read_csv(in);
  ASSERT_EQ(parsed.rows.size(), t.rows.size());
  const auto sx = parsed.column("sx");
  const auto dq = parsed.column("delta_q_mhz");
  const auto power = parsed.column("p_d_db");
  const auto conv = parsed.column("converged");
  const auto fit = parsed.column("gamma_fit");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_NEAR(sx[i], t.rows[i].sx, 1e-9 * std::max(1.0, std::abs(t.rows[i].sx)));
    EXPECT_NEAR(mhz_to_angular(dq[i]), t.rows[i].delta_q, 1e-8);
    EXPECT_EQ(power[i], t.rows[i].p_d_db);
    EXPECT_EQ(conv[i], 1.0);
    EXPECT_TRUE(std::isnan(fit[i]));
  }
  EXPECT_EQ(dq[1], 0.5);
  EXPECT_EQ(dq[2], 1.25);
}

TEST(WriteCsv, RepeatedSweepsAreByteIdentical) {
  EXPECT_EQ(render(small_table()), render(small_table()));
}

TEST(WriteCsv, TimestampsOnlyWhenRequested) {
  dc::SweepTable t = small_table();
  t.meta.started = "2026-01-01T00:00:00Z";
  t.meta.finished = "2026-01-01T00:00:01Z";
  const std::string with = render(t, true);
  EXPECT_NE(with.find("# started: 2026-01-01T00:00:00Z\n"), std::string::npos);
  EXPECT_EQ(render(t, false).find("started"), std::string::npos);
}

TEST(WriteCsv, LineFeedsOnly) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "dressed_cool_lf_test.csv";
  dc::write_csv(small_table(), path, false);
  std::ifstream in(path, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(bytes.find('\r'), std::string::npos);
  EXPECT_EQ(bytes.back(), '\n');
  std::filesystem::remove(path);
}

TEST(WriteCsv, IndependentOfLocale) {
  const std::string reference = render(small_table());
  const std::locale comma(std::locale::classic(), new CommaDecimal);
  const std::locale previous = std::locale::global(comma);
  std::ostringstream os;
  os.imbue(comma);
  dc::write_csv(small_table(), os, false);
  std::istringstream in(os.str());
  in.imbue(comma);
  const dc::CsvTable parsed = dc::read_csv(in);
  std::locale::global(previous);
  EXPECT_EQ(os.str(), reference);
  EXPECT_EQ(parsed.column("p_d_db").front(), -3.0);
}

TEST(ReadCsv, RejectsMalformedInput) {
  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(dc::read_csv(ragged), dc::ValidationError);
  std::istringstream empty("# only a comment\n");
  EXPECT_THROW(dc::read_csv(empty), dc::ValidationError);
  std::istringstream words("t_us,sx\n0,abc\n");
  const dc::CsvTable t = dc::read_csv(words);
  EXPECT_THROW(t.column("sx"), dc::ValidationError);
  EXPECT_THROW(t.column("sy"), dc::ValidationError);
  EXPECT_EQ(t.column("t_us"), std::vector<double>{0.0});
}

TEST(ReadCsv, AcceptsCrLf) {
  std::istringstream in("t_us,sx\r\n0,0.5\r\n1,0.25\r\n");
  const dc::CsvTable t = dc::read_csv(in);
  EXPECT_EQ(t.column("sx"), (std::vector<double>{0.5, 0.25}));
}

TEST(TrajectoryCsv, WritesHeaderAndColumns) {
  dc::Trajectory traj;
  traj.times = {0.0, 0.5};
  traj.names = {"sx", "photons"};
  traj.values = {{0.1, 0.2}, {0.0, 1.0}};
  std::ostringstream os;
  dc::write_trajectory_csv(traj, os);
  EXPECT_EQ(os.str(), "t_us,sx,photons\n0,0.1,0\n0.5,0.2,1\n");
}
