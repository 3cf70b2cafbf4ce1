// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#include "ccsched/rate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ccsched/seed.hpp"
#include "ccsched/theorem1.hpp"

namespace ccsched {

double StreamLink::sinr(double p, double n0) const {
  const double denom = p * leakage + n0 * noise_gain;
  if (p <= 0.0) return 0.0;
  return denom > 0.0 ? p / denom : std::numeric_limits<double>::infinity();
}

std::vector<StreamLink> stream_links(const ScheduleColumn& column,
                                     std::span<const User> served_users,
                                     const ChannelRealization& channels,
                                     const BeamformerSolution& solution) {
  const ColumnProfile profile = column_multiplicities(column, served_users);
  std::vector<StreamLink> links;
  for (const auto& [k, beta] : profile.beta) {
    if (beta == 0) continue;
    const CMatrix combined = solution.combiners.at(k).adjoint() * channels.H.at(k);
    std::vector<const StreamBeam*> own;
    std::vector<const StreamBeam*> foreign;
    for (const auto& s : solution.streams) {
      (s.group.contains(k) ? own : foreign).push_back(&s);
    }
    if (static_cast<int>(own.size()) != beta) {
      throw Error(ErrorKind::kVerificationFailure,
                  "user " + std::to_string(k) + " stream count differs from beta_k");
    }
    CMatrix effective(beta, beta);
    for (int j = 0; j < beta; ++j) effective.col(j) = combined * own[j]->w;
    const Eigen::FullPivLU<CMatrix> lu(effective);
    if (!lu.isInvertible()) {
      throw Error(ErrorKind::kVerificationFailure,
                  "user " + std::to_string(k) + " effective matrix is singular");
    }
    const CMatrix filter = lu.inverse();
    for (int j = 0; j < beta; ++j) {
      StreamLink link;
      link.group = own[j]->group;
      link.instance = own[j]->instance;
      link.user = k;
      link.noise_gain = filter.row(j).squaredNorm();
      for (const auto* s : foreign) {
        link.leakage += std::norm((filter.row(j) * (combined * s->w))(0));
      }
      links.push_back(std::move(link));
    }
  }
  return links;
}

std::vector<StreamSinr> stream_sinrs(const ScheduleColumn& column,
                                     std::span<const User> served_users,
                                     const ChannelRealization& channels,
                                     const BeamformerSolution& solution,
                                     double power_total, double noise_power) {
  const double p = solution.streams.empty()
                       ? 0.0
                       : power_total / static_cast<double>(solution.streams.size());
  std::vector<StreamSinr> out;
  for (const auto& link : stream_links(column, served_users, channels, solution)) {
    out.push_back(StreamSinr{link.group, link.instance, link.user,
                             link.sinr(p, noise_power), p * link.leakage});
  }
  return out;
}

double column_rate(std::span<const StreamSinr> sinrs) {
  double rate = std::numeric_limits<double>::infinity();
  for (const auto& s : sinrs) rate = std::min(rate, std::log2(1.0 + s.sinr));
  return sinrs.empty() ? 0.0 : rate;
}

double symmetric_rate(std::span<const double> column_rates, int K, std::int64_t theta) {
  double total_time = 0.0;
  for (double r : column_rates) {
    if (r <= 0.0) return 0.0;
    total_time += 1.0 / (static_cast<double>(theta) * r);
  }
  return total_time > 0.0 ? K / total_time : 0.0;
}

namespace {

// Links for every column of one trial; independent of the transmit power.
std::vector<std::vector<StreamLink>> trial_links(const ScheduleTable& table,
                                                 std::uint64_t seed, std::uint64_t trial,
                                                 CombinerPolicy policy) {
  std::vector<std::vector<StreamLink>> out;
  const auto columns = static_cast<std::uint64_t>(table.column_count());
  for (std::uint64_t i = 0; i < columns; ++i) {
    const auto task = trial * columns + i;
    const auto channels = ChannelRealization::draw(table.users, table.params.G, table.params.L,
                                                   derive_seed(seed, "channel", task));
    const auto& col = table.columns[i];
    const auto solution = build_beamformers(col, table.users, channels, policy,
                                            derive_seed(seed, "combiner", task));
    out.push_back(stream_links(col, table.users, channels, solution));
  }
  return out;
}

double rate_from_links(const std::vector<StreamLink>& links, double p) {
  double rate = std::numeric_limits<double>::infinity();
  for (const auto& l : links) rate = std::min(rate, std::log2(1.0 + l.sinr(p, 1.0)));
  return links.empty() ? 0.0 : rate;
}

double stream_power(const ScheduleColumn& col, double power_total) {
  return col.groups.empty() ? 0.0 : power_total / static_cast<double>(col.size());
}

}  // namespace

double trial_symmetric_rate(const ScheduleTable& table, double power_total, std::uint64_t seed,
                            std::uint64_t trial, CombinerPolicy policy) {
  const auto links = trial_links(table, seed, trial, policy);
  std::vector<double> rates;
  for (std::size_t i = 0; i < links.size(); ++i) {
    rates.push_back(rate_from_links(links[i], stream_power(table.columns[i], power_total)));
  }
  return symmetric_rate(rates, table.params.K, total_subpacketization(table));
}

std::vector<RatePoint> snr_sweep(const ScheduleTable& table, std::span<const double> snr_grid_db,
                                 const SweepOptions& options) {
  if (!theorem1_check(table).pass()) {
    throw Error(ErrorKind::kVerificationFailure, "table fails the symbolic decodability check");
  }
  if (options.trials < 1) {
    throw Error(ErrorKind::kRejectedParameters, "trials must be >= 1");
  }
  const std::size_t n_points = snr_grid_db.size();
  const std::size_t n_cols = table.columns.size();
  const std::int64_t theta = total_subpacketization(table);
  std::vector<std::vector<double>> rsym(n_points);
  std::vector<std::vector<double>> col_sum(n_points, std::vector<double>(n_cols, 0.0));
  std::vector<double> min_sum(n_points, 0.0);

  for (int trial = 0; trial < options.trials; ++trial) {
    const auto links =
        trial_links(table, options.seed, static_cast<std::uint64_t>(trial), options.policy);
    for (std::size_t s = 0; s < n_points; ++s) {
      const double power = std::pow(10.0, snr_grid_db[s] / 10.0);
      std::vector<double> rates(n_cols);
      for (std::size_t i = 0; i < n_cols; ++i) {
        rates[i] = rate_from_links(links[i], stream_power(table.columns[i], power));
        col_sum[s][i] += rates[i];
      }
      min_sum[s] += rates.empty() ? 0.0 : *std::min_element(rates.begin(), rates.end());
      rsym[s].push_back(symmetric_rate(rates, table.params.K, theta));
    }
  }

  std::vector<RatePoint> points;
  for (std::size_t s = 0; s < n_points; ++s) {
    RatePoint point;
    point.snr_db = snr_grid_db[s];
    point.trials = options.trials;
    point.seed = options.seed;
    const double n = options.trials;
    for (double v : col_sum[s]) point.per_column_rate.push_back(v / n);
    point.min_column_rate = min_sum[s] / n;
    const double mean = std::accumulate(rsym[s].begin(), rsym[s].end(), 0.0) / n;
    double var = 0.0;
    for (double v : rsym[s]) var += (v - mean) * (v - mean);
    point.symmetric_rate = mean;
    point.std_symmetric_rate = options.trials > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    points.push_back(std::move(point));
  }
  return points;
}

double high_snr_slope(std::span<const RatePoint> points, double from_db, double to_db) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : points) {
    if (p.snr_db < from_db || p.snr_db > to_db) continue;
    sx += p.snr_db;
    sy += p.symmetric_rate;
    sxx += p.snr_db * p.snr_db;
    sxy += p.snr_db * p.symmetric_rate;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom == 0.0) {
    throw Error(ErrorKind::kRejectedParameters, "slope needs two distinct SNR points in range");
  }
  return (n * sxy - sx * sy) / denom;
}

std::vector<double> parse_snr_grid(const std::string& spec) {
  auto bad = [&] {
    return Error(ErrorKind::kRejectedParameters, "invalid SNR grid \"" + spec + "\"");
  };
  std::vector<double> grid;
  try {
    if (spec.find(':') != std::string::npos) {
      std::vector<double> parts;
      std::stringstream in(spec);
      std::string item;
      while (std::getline(in, item, ':')) parts.push_back(std::stod(item));
      if (parts.size() != 3 || parts[1] <= 0 || parts[2] < parts[0]) throw bad();
      const int steps = static_cast<int>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
      for (int i = 0; i <= steps; ++i) grid.push_back(parts[0] + i * parts[1]);
    } else {
      std::stringstream in(spec);
      std::string item;
      while (std::getline(in, item, ',')) grid.push_back(std::stod(item));
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (grid.empty()) throw bad();
  return grid;
}

}  // namespace ccsched
