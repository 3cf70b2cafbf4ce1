// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccsched/beamforming.hpp"
#include "ccsched/core.hpp"

namespace ccsched {

/// Post-filter quantities of one (stream, receiving user) pair, normalized
/// to unit per-stream power and unit noise power.
struct StreamLink {
  MulticastGroup group;
  int instance = 0;
  User user = 0;
  double leakage = 0.0;     // sum of |f U^H H_k w_s|^2 over streams s not for k
  double noise_gain = 0.0;  // ||f||^2

  /// SINR with per-stream power p and noise power n0.
  double sinr(double p, double n0) const;
};

/// Zero-forcing receive filters (inverse of each user's effective matrix)
/// applied to a nullspace beamformer solution.
std::vector<StreamLink> stream_links(const ScheduleColumn& column,
                                     std::span<const User> served_users,
                                     const ChannelRealization& channels,
                                     const BeamformerSolution& solution);

struct StreamSinr {
  MulticastGroup group;
  int instance = 0;
  User user = 0;
  double sinr = 0.0;
  double leakage_power = 0.0;
};

/// Equal power split power_total / sum_T theta_T per stream.
std::vector<StreamSinr> stream_sinrs(const ScheduleColumn& column,
                                     std::span<const User> served_users,
                                     const ChannelRealization& channels,
                                     const BeamformerSolution& solution,
                                     double power_total, double noise_power);

/// Common rate of a column: min over streams of log2(1 + SINR).
double column_rate(std::span<const StreamSinr> sinrs);

/// K / sum_i 1/(theta * R(i)); zero if any column rate is zero.
double symmetric_rate(std::span<const double> column_rates, int K, std::int64_t theta);

struct RatePoint {
  double snr_db = 0.0;
  std::vector<double> per_column_rate;  // mean over trials
  double symmetric_rate = 0.0;          // mean over trials
  double std_symmetric_rate = 0.0;
  double min_column_rate = 0.0;  // mean over trials of min_i R(i)
  int trials = 0;
  std::uint64_t seed = 0;
};

struct SweepOptions {
  int trials = 200;
  std::uint64_t seed = 7;
  CombinerPolicy policy = CombinerPolicy::kChannelAligned;
};

/// Mean symmetric rate per SNR point. Channel draws depend only on (seed,
/// trial, column), so every SNR point sees the same realizations.
std::vector<RatePoint> snr_sweep(const ScheduleTable& table, std::span<const double> snr_grid_db,
                                 const SweepOptions& options = {});

/// Symmetric rate of one channel trial at an absolute power (noise power 1).
double trial_symmetric_rate(const ScheduleTable& table, double power_total,
                            std::uint64_t seed, std::uint64_t trial,
                            CombinerPolicy policy = CombinerPolicy::kChannelAligned);

/// Least-squares slope of mean symmetric rate against snr_db over [from, to].
double high_snr_slope(std::span<const RatePoint> points, double from_db, double to_db);

/// "start:step:stop" (inclusive) or a comma-separated list.
std::vector<double> parse_snr_grid(const std::string& spec);

}  // namespace ccsched
