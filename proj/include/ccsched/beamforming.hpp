// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccsched/core.hpp"

namespace ccsched {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Per-user G x L channels with i.i.d. CN(0,1) entries, reproducible from seed.
struct ChannelRealization {
  std::map<User, CMatrix> H;
  double noise_power = 1.0;
  std::uint64_t seed = 0;

  static ChannelRealization draw(std::span<const User> users, int G, int L,
                                 std::uint64_t seed, double noise_power = 1.0);
};

enum class CombinerPolicy {
  kRandomOrthonormal,  // Haar-random G x beta_k
  kChannelAligned,     // top-beta_k left singular vectors of H_k
};

std::string to_string(CombinerPolicy policy);

/// One transmitted stream: the instance-th copy of group T.
struct StreamBeam {
  MulticastGroup group;
  int instance = 0;
  CVector w;
};

struct BeamformerSolution {
  CombinerPolicy policy = CombinerPolicy::kRandomOrthonormal;
  std::map<User, CMatrix> combiners;  // G x beta_k
  std::vector<StreamBeam> streams;
  std::map<MulticastGroup, int> nullity;
  std::map<MulticastGroup, int> expected_nullity;  // L - sum_{k' not in T} beta_k'
};

/// Receive combiners for every served user. Throws kRejectedParameters if some
/// beta_k exceeds G.
std::map<User, CMatrix> draw_combiners(const ColumnProfile& profile,
                                       const ChannelRealization& channels,
                                       CombinerPolicy policy, std::uint64_t seed);

/// Stack of U_k'^H H_k' over served users k' outside T (rows follow user order).
CMatrix interference_channel(const MulticastGroup& group, const ColumnProfile& profile,
                             const std::map<User, CMatrix>& combiners,
                             const ChannelRealization& channels);

/// Nullspace zero-forcing beamformers for a column: theta_T orthonormal
/// nullspace directions per group. Throws kNullityDeficient when the computed
/// nullity is below theta_T.
BeamformerSolution build_beamformers(const ScheduleColumn& column,
                                     std::span<const User> served_users,
                                     const ChannelRealization& channels,
                                     CombinerPolicy policy = CombinerPolicy::kRandomOrthonormal,
                                     std::uint64_t combiner_seed = 0);

struct NumericTolerance {
  double leakage = 1e-9;
  double sigma = 1e-6;
};

struct NumericFailure {
  User user = 0;
  MulticastGroup group;
  std::string what;
};

struct NumericReport {
  double max_leakage = 0.0;
  double min_sigma = 0.0;
  bool stream_counts_ok = true;
  bool nullity_ok = true;
  std::vector<NumericFailure> failures;

  bool pass() const { return failures.empty(); }
};

/// Checks that every stream is nulled at users outside its group, that each
/// user's effective beta_k x beta_k matrix is invertible, that the stream
/// counts match beta_k and that nullities follow rank-nullity.
NumericReport verify_numeric(const ScheduleColumn& column, std::span<const User> served_users,
                             const ChannelRealization& channels,
                             const BeamformerSolution& solution,
                             const NumericTolerance& tol = {});

struct TableNumericFailure {
  int trial = 0;
  int column = 0;  // 1-based
  User user = 0;
  MulticastGroup group;
  std::string what;
};

struct TableNumericReport {
  int trials = 0;
  int columns_checked = 0;
  int failed_columns = 0;
  int nullity_deficient = 0;
  int nullity_mismatches = 0;
  double max_leakage = 0.0;
  double min_sigma = 0.0;
  std::vector<TableNumericFailure> failures;  // first failure only

  bool pass() const { return failed_columns == 0; }
};

/// Runs verify_numeric on every column for `trials` independent channel draws.
/// Channel and combiner seeds derive from (seed, trial * columns + column).
TableNumericReport verify_table_numeric(const ScheduleTable& table, int trials,
                                        std::uint64_t seed, const NumericTolerance& tol = {},
                                        CombinerPolicy policy = CombinerPolicy::kRandomOrthonormal);

}  // namespace ccsched
