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
#include <limits>
#include <numbers>

#include "dressed_cool/acceptance.hpp"
#include "dressed_cool/errors.hpp"
#include "dressed_cool/rates.hpp"
#include "dressed_cool/sweep.hpp"
#include "dressed_cool/units.hpp"

namespace dc = dressed_cool;
using dc::units::angular_to_mhz;
using dc::units::mhz_to_angular;

namespace {

dc::SweepGrid analytic_grid(double delta_c_mhz) {
  dc::SweepGrid g;
  g.fixed = dc::reference_params(1.0);
  g.fixed.delta_c = mhz_to_angular(delta_c_mhz);
  g.mode = dc::SweepMode::kRatesAnalyticMap;
  return g;
}

std::vector<double> mhz_axis(double start, double step, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(mhz_to_angular(start + step * i));
  return out;
}

}  // namespace

TEST(PowerConversion, RoundTrip) {
  EXPECT_DOUBLE_EQ(dc::photons_from_power_db(0.0), 1.0);
  EXPECT_NEAR(dc::photons_from_power_db(10.0), 10.0, 1e-12);
  EXPECT_NEAR(dc::photons_from_power_db(-10.0), 0.1, 1e-15);
  EXPECT_EQ(dc::photons_from_power_db(-std::numeric_limits<double>::infinity()), 0.0);
  for (double n : {0.01, 0.25, 1.0, 3.31, 40.0}) {
    EXPECT_NEAR(dc::photons_from_power_db(dc::power_db_from_photons(n)), n, 1e-12 * n);
  }
}

TEST(SweepMode, NamesRoundTrip) {
  for (auto m : {dc::SweepMode::kSteadyTomography, dc::SweepMode::kCoolingRate, dc::SweepMode::kRatesAnalyticMap}) {
    EXPECT_EQ(dc::sweep_mode_from_string(dc::to_string(m)), m);
  }
  EXPECT_THROW(dc::sweep_mode_from_string("heatmap"), dc::ValidationError);
}

TEST(SweepGrid, RejectsBadAxes) {
  dc::SweepGrid g = analytic_grid(-9.0);
  g.power_axis_db = {0.0};
  EXPECT_THROW(g.validate(), dc::ValidationError);  // empty detuning axis
  g.detuning_axis = {0.0, 0.0};
  EXPECT_THROW(g.validate(), dc::ValidationError);
  g.detuning_axis = {0.0, std::nan("")};
  EXPECT_THROW(g.validate(), dc::ValidationError);
  g.detuning_axis = {1.0, 0.0, -1.0};
  EXPECT_NO_THROW(g.validate());
  g.power_axis_db = {std::numeric_limits<double>::infinity()};
  EXPECT_THROW(g.validate(), dc::ValidationError);
}

TEST(RunSweep, SinglePointMatchesReferencePurity) {
  dc::SweepGrid g;
  g.fixed = dc::reference_params(1.0);
  g.power_axis_db = {0.0};
  g.detuning_axis = {-2.0 * g.fixed.chi};  // on the Stark line, dq' = 0
  const dc::SweepTable t = dc::run_sweep(g, {1, false});
  ASSERT_EQ(t.rows.size(), 1u);
  const dc::SweepRow& row = t.at(0, 0);
  EXPECT_TRUE(row.converged) << row.error;
  EXPECT_NEAR(row.sx, 0.94, 0.03);
  EXPECT_NEAR(row.n_bar, 1.0, 1e-12);
  EXPECT_TRUE(std::isnan(row.gamma_fit));
  EXPECT_NEAR(row.s_theta, row.sx, 1e-12);
  EXPECT_TRUE(t.meta.started.empty());
}

TEST(RunSweep, NoPhotonsGivesNoCooling) {
  dc::SweepGrid g;
  g.fixed = dc::reference_params(1.0);
  g.power_axis_db = {-std::numeric_limits<double>::infinity()};
  g.detuning_axis = {0.0};
  const dc::SweepRow row = dc::run_sweep(g, {1, false}).at(0, 0);
  ASSERT_TRUE(row.converged) << row.error;
  EXPECT_EQ(row.n_bar, 0.0);
  EXPECT_NEAR(row.sx, 0.0, 0.01);
}

TEST(RunSweep, WorkerCountDoesNotChangeResults) {
  dc::SweepGrid g;
  g.fixed = dc::reference_params(1.0);
  g.power_axis_db = {-10.0, -5.5, -1.0, 3.5, 8.0};
  g.detuning_axis = mhz_axis(-5.0, 5.0, 5);
  const dc::SweepTable one = dc::run_sweep(g, {1, false});
  const dc::SweepTable four = dc::run_sweep(g, {4, false});
  ASSERT_EQ(one.rows.size(), 25u);
  ASSERT_EQ(four.rows.size(), 25u);
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    EXPECT_EQ(one.rows[i].sx, four.rows[i].sx);
    EXPECT_EQ(one.rows[i].sz, four.rows[i].sz);
    EXPECT_EQ(one.rows[i].p_d_db, four.rows[i].p_d_db);
    EXPECT_EQ(one.rows[i].delta_q, four.rows[i].delta_q);
  }
  EXPECT_EQ(one.at(2, 3).p_d_db, -1.0);
  EXPECT_EQ(one.at(2, 3).delta_q, mhz_to_angular(10.0));
  EXPECT_THROW(one.at(5, 0), dc::ValidationError);
}

TEST(RunSweep, FailedPointIsReportedNotThrown) {
  dc::SweepGrid g = analytic_grid(-9.0);
  g.fixed.omega_r_rabi = 0.0;
  g.power_axis_db = {0.0};
  g.detuning_axis = {-2.0 * g.fixed.chi};  // dq' = 0 with no drive: theta undefined
  const dc::SweepRow row = dc::run_sweep(g, {1, false}).at(0, 0);
  EXPECT_FALSE(row.converged);
  EXPECT_FALSE(row.error.empty());
}

TEST(RunSweep, TimestampsRecordedWhenEnabled) {
  dc::SweepGrid g = analytic_grid(-9.0);
  g.power_axis_db = {0.0};
  g.detuning_axis = {0.0};
  const dc::SweepTable t = dc::run_sweep(g, {1, true});
  EXPECT_EQ(t.meta.started.size(), 20u);
  EXPECT_EQ(t.meta.started.back(), 'Z');
  EXPECT_FALSE(t.meta.finished.empty());
}

// Flipping the cavity detuning swaps the cooling and heating sidebands, so
// with no intrinsic qubit relaxation the whole map changes sign.
TEST(RunSweep, RedBlueMapsAreOpposite) {
  for (double dc_mhz : {-6.0, -9.0, -14.0}) {
    dc::SweepGrid red = analytic_grid(dc_mhz);
    red.fixed.gamma_down = red.fixed.gamma_up = red.fixed.gamma_phi = 0.0;
    red.power_axis_db = {-10.0, -4.0, 2.0, 8.0};
    red.detuning_axis = mhz_axis(-5.0, 2.5, 9);
    dc::SweepGrid blue = red;
    blue.fixed.delta_c = -red.fixed.delta_c;
    const dc::SweepTable r = dc::run_sweep(red, {1, false});
    const dc::SweepTable b = dc::run_sweep(blue, {1, false});
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      ASSERT_TRUE(r.rows[i].converged && b.rows[i].converged);
      EXPECT_NEAR(r.rows[i].sx + b.rows[i].sx, 0.0, 1e-12) << "delta_c " << dc_mhz << " row " << i;
    }
  }
}

// The purest point of each power row sits on the Stark-shifted resonance.
TEST(RunSweep, PeakFollowsStarkLine) {
  dc::SweepGrid g = analytic_grid(-9.0);
  g.power_axis_db = {-10.0, -6.0, -2.0, 2.0, 6.0, 8.0};
  const double step_mhz = 0.5;
  g.detuning_axis = mhz_axis(-5.0, step_mhz, 41);
  const dc::SweepTable t = dc::run_sweep(g, {1, false});
  const auto line = dc::stark_line(g.power_axis_db, g.fixed.chi);
  for (std::size_t ip = 0; ip < g.power_axis_db.size(); ++ip) {
    std::size_t best = 0;
    for (std::size_t iq = 0; iq < g.detuning_axis.size(); ++iq) {
      if (t.at(ip, iq).sx > t.at(ip, best).sx) best = iq;
    }
    EXPECT_LE(std::abs(angular_to_mhz(g.detuning_axis[best] - line[ip].second)), step_mhz + 1e-9)
        << "power " << g.power_axis_db[ip] << " dB";
  }
}

// Along a detuning cut at fixed theta the projection peaks where the dressed
// splitting matches the cavity detuning.
TEST(RunSweep, ThetaOptimumMatchesCavityDetuning) {
  for (const auto& [delta_c_mhz, omega_mhz] : {std::pair{-15.0, 9.0}, {-12.0, 5.0}, {-20.0, 12.0}}) {
    dc::SweepGrid g = analytic_grid(delta_c_mhz);
    g.fixed.omega_r_rabi = mhz_to_angular(omega_mhz);
    const double expected = angular_to_mhz(dc::optimal_theta_detuning(g.fixed.delta_c, g.fixed.omega_r_rabi));
    g.theta = std::atan2(omega_mhz, expected);
    g.power_axis_db = {0.0};
    const double step_mhz = 0.5;
    for (int i = 0; i <= 60; ++i) g.detuning_axis.push_back(mhz_to_angular(step_mhz * i) - 2.0 * g.fixed.chi);
    const dc::SweepTable t = dc::run_sweep(g, {1, false});
    std::size_t best = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (t.rows[i].s_theta > t.rows[best].s_theta) best = i;
    }
    EXPECT_NEAR(step_mhz * static_cast<double>(best), expected, 2.0 * step_mhz) << "delta_c " << delta_c_mhz;
  }
}

TEST(StarkLine, ShiftIsMinusTwoChiN) {
  const double chi = mhz_to_angular(-0.66);
  const auto line = dc::stark_line({-std::numeric_limits<double>::infinity(), dc::power_db_from_photons(3.6)}, chi);
  ASSERT_EQ(line.size(), 2u);
  EXPECT_EQ(line[0].second, 0.0);
  EXPECT_NEAR(angular_to_mhz(line[1].second), 4.752, 1e-9);
  const auto doubled = dc::stark_line({0.0}, 2.0 * chi);
  EXPECT_NEAR(doubled[0].second, 2.0 * dc::stark_line({0.0}, chi)[0].second, 1e-12);
}

TEST(OptimalTheta, KnownValues) {
  const double w = mhz_to_angular(9.0);
  EXPECT_NEAR(dc::optimal_theta_detuning(-w, w), 0.0, 1e-12);
  EXPECT_NEAR(angular_to_mhz(dc::optimal_theta_detuning(mhz_to_angular(-15.0), w)), 12.0, 1e-9);
  EXPECT_NEAR(dc::optimal_theta_detuning(mhz_to_angular(-15.0), 0.0), mhz_to_angular(15.0), 1e-12);
  EXPECT_THROW(dc::optimal_theta_detuning(mhz_to_angular(-5.0), w), dc::ValidationError);
}

TEST(TomographyScale, ScalesBlochComponents) {
  dc::SweepTable t;
  t.rows.resize(1);
  t.rows[0].sx = 0.94;
  t.rows[0].sz = -0.1;
  t.rows[0].s_theta = 0.94;
  const dc::SweepTable same = dc::apply_tomography_scale(t, 1.0);
  EXPECT_EQ(same.rows[0].sx, 0.94);
  EXPECT_EQ(same.meta.tomography_scale, 1.0);
  const dc::SweepTable scaled = dc::apply_tomography_scale(t, 0.8);
  EXPECT_NEAR(scaled.rows[0].sx, 0.752, 1e-15);
  EXPECT_NEAR(scaled.rows[0].sz, -0.08, 1e-15);
  EXPECT_NEAR(scaled.rows[0].s_theta, 0.752, 1e-15);
  EXPECT_NEAR(scaled.meta.tomography_scale, 0.8, 1e-15);
  const dc::SweepTable twice = dc::apply_tomography_scale(scaled, 0.8);
  EXPECT_NEAR(twice.meta.tomography_scale, 0.64, 1e-15);
  EXPECT_NEAR(twice.rows[0].sx, 0.94 * 0.64, 1e-15);
  for (double bad : {0.0, -0.5, 1.5, std::nan("")}) {
    EXPECT_THROW(dc::apply_tomography_scale(t, bad), dc::ValidationError);
  }
}
