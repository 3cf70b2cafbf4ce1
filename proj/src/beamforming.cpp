// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include "ccsched/beamforming.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "ccsched/linalg.hpp"
#include "ccsched/seed.hpp"

namespace ccsched {

ChannelRealization ChannelRealization::draw(std::span<const User> users, int G, int L,
                                            std::uint64_t seed, double noise_power) {
  ChannelRealization out;
  out.seed = seed;
  out.noise_power = noise_power;
  std::mt19937_64 rng(seed);
  for (User k : users) out.H[k] = linalg::gaussian<std::complex<double>>(G, L, rng);
  return out;
}

std::string to_string(CombinerPolicy policy) {
  return policy == CombinerPolicy::kChannelAligned ? "channel-aligned" : "random-orthonormal";
}

std::map<User, CMatrix> draw_combiners(const ColumnProfile& profile,
                                       const ChannelRealization& channels,
                                       CombinerPolicy policy, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<User, CMatrix> combiners;
  for (const auto& [k, beta] : profile.beta) {
    const CMatrix& H = channels.H.at(k);
    if (beta > H.rows()) {
      throw Error(ErrorKind::kRejectedParameters,
                  "user " + std::to_string(k) + " has beta_k=" + std::to_string(beta) +
                      " > G=" + std::to_string(H.rows()));
    }
    if (policy == CombinerPolicy::kChannelAligned) {
      combiners[k] = linalg::dominant_left_subspace(H, beta);
    } else {
      combiners[k] = linalg::random_orthonormal<std::complex<double>>(H.rows(), beta, rng);
    }
  }
  return combiners;
}

CMatrix interference_channel(const MulticastGroup& group, const ColumnProfile& profile,
                             const std::map<User, CMatrix>& combiners,
                             const ChannelRealization& channels) {
  Eigen::Index rows = 0;
  Eigen::Index L = 0;
  for (const auto& [k, beta] : profile.beta) {
    L = channels.H.at(k).cols();
    if (!group.contains(k)) rows += beta;
  }
  CMatrix stacked(rows, L);
  Eigen::Index row = 0;
  for (const auto& [k, beta] : profile.beta) {
    if (group.contains(k) || beta == 0) continue;
    stacked.middleRows(row, beta) = combiners.at(k).adjoint() * channels.H.at(k);
    row += beta;
  }
  return stacked;
}

BeamformerSolution build_beamformers(const ScheduleColumn& column,
                                     std::span<const User> served_users,
                                     const ChannelRealization& channels,
                                     CombinerPolicy policy, std::uint64_t combiner_seed) {
  const ColumnProfile profile = column_multiplicities(column, served_users);
  BeamformerSolution solution;
  solution.policy = policy;
  solution.combiners = draw_combiners(profile, channels, policy, combiner_seed);
  for (const auto& [group, theta] : profile.theta) {
    const CMatrix hbar = interference_channel(group, profile, solution.combiners, channels);
    const CMatrix basis = linalg::nullspace_basis(hbar);
    const int nullity = static_cast<int>(basis.cols());
    solution.nullity[group] = nullity;
    solution.expected_nullity[group] = static_cast<int>(std::max<Eigen::Index>(0, hbar.cols() - hbar.rows()));
    if (nullity < theta) {
      throw Error(ErrorKind::kNullityDeficient,
                  "group " + group.str() + " needs " + std::to_string(theta) +
                      " directions, nullspace has " + std::to_string(nullity));
    }
    for (int inst = 0; inst < theta; ++inst) {
      solution.streams.push_back(StreamBeam{group, inst, basis.col(inst)});
    }
  }
  return solution;
}

NumericReport verify_numeric(const ScheduleColumn& column, std::span<const User> served_users,
                             const ChannelRealization& channels,
                             const BeamformerSolution& solution, const NumericTolerance& tol) {
  const ColumnProfile profile = column_multiplicities(column, served_users);
  NumericReport report;
  report.min_sigma = std::numeric_limits<double>::infinity();

  for (const auto& s : solution.streams) {
    for (const auto& [k, beta] : profile.beta) {
      if (beta == 0 || s.group.contains(k)) continue;
      const double leak =
          (solution.combiners.at(k).adjoint() * (channels.H.at(k) * s.w)).norm();
      report.max_leakage = std::max(report.max_leakage, leak);
      if (leak > tol.leakage) {
        report.failures.push_back({k, s.group, "interference leakage above tolerance"});
      }
    }
  }

  for (const auto& [k, beta] : profile.beta) {
    if (beta == 0) continue;
    std::vector<const StreamBeam*> own;
    for (const auto& s : solution.streams) {
      if (s.group.contains(k)) own.push_back(&s);
    }
    if (static_cast<int>(own.size()) != beta) {
      report.stream_counts_ok = false;
      report.failures.push_back({k, {}, "stream count differs from beta_k"});
      continue;
    }
    CMatrix precoders(channels.H.at(k).cols(), beta);
    for (int j = 0; j < beta; ++j) precoders.col(j) = own[j]->w;
    const CMatrix effective = solution.combiners.at(k).adjoint() * channels.H.at(k) * precoders;
    const double sigma = linalg::smallest_singular_value(effective);
    report.min_sigma = std::min(report.min_sigma, sigma);
    if (sigma <= tol.sigma) {
      report.failures.push_back({k, {}, "effective matrix not invertible"});
    }
  }
  if (!std::isfinite(report.min_sigma)) report.min_sigma = 0.0;

  for (const auto& [group, nullity] : solution.nullity) {
    if (nullity != solution.expected_nullity.at(group)) {
      report.nullity_ok = false;
      report.failures.push_back({0, group, "nullity differs from L - outside streams"});
    }
  }
  return report;
}

TableNumericReport verify_table_numeric(const ScheduleTable& table, int trials,
                                        std::uint64_t seed, const NumericTolerance& tol,
                                        CombinerPolicy policy) {
  TableNumericReport report;
  report.trials = trials;
  report.min_sigma = std::numeric_limits<double>::infinity();
  const auto ncols = static_cast<std::uint64_t>(table.column_count());
  for (int trial = 0; trial < trials; ++trial) {
    for (std::uint64_t c = 0; c < ncols; ++c) {
      const std::uint64_t index = static_cast<std::uint64_t>(trial) * ncols + c;
      const auto channels = ChannelRealization::draw(table.users, table.params.G, table.params.L,
                                                     derive_seed(seed, "channel", index));
      const auto& column = table.columns[c];
      ++report.columns_checked;
      try {
        const auto solution = build_beamformers(column, table.users, channels, policy,
                                                derive_seed(seed, "combiner", index));
        const auto column_report = verify_numeric(column, table.users, channels, solution, tol);
        report.max_leakage = std::max(report.max_leakage, column_report.max_leakage);
        report.min_sigma = std::min(report.min_sigma, column_report.min_sigma);
        if (!column_report.nullity_ok) ++report.nullity_mismatches;
        if (!column_report.pass()) {
          ++report.failed_columns;
          if (report.failures.empty()) {
            const auto& f = column_report.failures.front();
            report.failures.push_back({trial, static_cast<int>(c) + 1, f.user, f.group, f.what});
          }
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNullityDeficient) throw;
        ++report.failed_columns;
        ++report.nullity_deficient;
        if (report.failures.empty()) {
          report.failures.push_back({trial, static_cast<int>(c) + 1, 0, {}, e.what()});
        }
      }
    }
  }
  if (!std::isfinite(report.min_sigma)) report.min_sigma = 0.0;
  return report;
}

}  // namespace ccsched
