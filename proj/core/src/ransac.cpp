#include "aim/ransac.hpp"

#include "aim/kabsch.hpp"
#include "parallel.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace aim {

namespace {

struct WindowPair {
  Eigen::Matrix3Xd source;
  Eigen::Matrix3Xd target;
};

Eigen::Matrix3Xd gather_columns(const Eigen::Matrix3Xd& frame, const std::vector<int>& ids) {
  Eigen::Matrix3Xd out(3, static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = frame.col(ids[i]);
  }
  return out;
}

std::vector<WindowPair> build_windows(const TrajectorySet& traj, const std::vector<int>& ids,
                                      const RansacConfig& config) {
  std::vector<WindowPair> out;
  out.reserve(config.windows.size());
  for (const Window& w : config.windows) {
    const std::size_t a = traj.nearest_frame(w.t_a);
    const std::size_t b = traj.nearest_frame(w.t_b);
    if (a == b) {
      throw std::invalid_argument("ransac: window (" + std::to_string(w.t_a) + ", " +
                                  std::to_string(w.t_b) +
                                  ") collapses to a single frame after snapping");
    }
    out.push_back({gather_columns(traj.frames[a], ids), gather_columns(traj.frames[b], ids)});
  }
  return out;
}

void validate_ids(const std::vector<int>& ids, Eigen::Index point_count) {
  if (ids.empty()) {
    throw std::invalid_argument("ransac: empty trajectory id list");
  }
  std::vector<int> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0 || sorted.back() >= point_count) {
    throw std::invalid_argument("ransac: trajectory id out of range");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("ransac: duplicate trajectory id");
  }
}

// Minimal 3-point fit of every window for one sample. The RNG stream is a
// pure function of (seed, model_index, sample), so any thread may evaluate
// any sample and results never depend on the scheduling.
std::optional<std::vector<RigidTransform>> minimal_fit(const std::vector<WindowPair>& windows,
                                                       std::uint64_t seed,
                                                       std::uint64_t model_index,
                                                       std::uint64_t sample, Eigen::Index m) {
  detail::Rng rng = detail::Rng::derive(seed, model_index, sample);
  const auto u = static_cast<std::uint64_t>(m);
  Eigen::Index i0 = static_cast<Eigen::Index>(rng.next_below(u));
  Eigen::Index i1 = i0;
  while (i1 == i0) i1 = static_cast<Eigen::Index>(rng.next_below(u));
  Eigen::Index i2 = i0;
  while (i2 == i0 || i2 == i1) i2 = static_cast<Eigen::Index>(rng.next_below(u));

  std::vector<RigidTransform> fits;
  fits.reserve(windows.size());
  CorrespondenceSet corr;
  corr.source.resize(3, 3);
  corr.target.resize(3, 3);
  for (const WindowPair& w : windows) {
    corr.source.col(0) = w.source.col(i0);
    corr.source.col(1) = w.source.col(i1);
    corr.source.col(2) = w.source.col(i2);
    corr.target.col(0) = w.target.col(i0);
    corr.target.col(1) = w.target.col(i1);
    corr.target.col(2) = w.target.col(i2);
    try {
      fits.push_back(kabsch_fit(corr));
    } catch (const RankDeficiencyError&) {
      return std::nullopt;
    }
  }
  return fits;
}

void score_transforms(const std::vector<RigidTransform>& fits,
                      const std::vector<WindowPair>& windows, Eigen::ArrayXd& errors,
                      Eigen::Matrix3Xd& scratch) {
  errors.setZero();
  const double weight = 1.0 / static_cast<double>(windows.size());
  for (std::size_t w = 0; w < windows.size(); ++w) {
    detail::add_weighted_errors(fits[w].rotation, fits[w].translation, windows[w].source,
                                windows[w].target, weight, errors, scratch);
  }
}

struct Candidate {
  Eigen::Index count = -1;  // -1 marks a degenerate sample
  double error_sum = 0.0;
};

std::optional<PartHypothesis> fit_one_model_impl(const TrajectorySet& traj,
                                                 const std::vector<int>& ids,
                                                 const RansacConfig& config,
                                                 std::uint64_t model_index) {
  const Eigen::Index m = static_cast<Eigen::Index>(ids.size());
  const Eigen::Index min_support = std::max<Eigen::Index>(
      config.min_support,
      static_cast<Eigen::Index>(
          std::ceil(config.min_support_fraction * static_cast<double>(m))));
  if (m < 3 || m < min_support) return std::nullopt;

  const std::vector<WindowPair> windows = build_windows(traj, ids, config);
  const double eps = config.inlier_threshold;
  const auto samples = static_cast<std::size_t>(config.samples_per_model);

  // Hypothesis sweep: every sample records (inlier count, inlier error sum);
  // both are computed per sample in column order, so the fill is
  // embarrassingly parallel and thread-count invariant.
  std::vector<Candidate> candidates(samples);
  detail::parallel_chunks(samples, [&](int, std::size_t begin, std::size_t end) {
    Eigen::ArrayXd errors(m);
    Eigen::Matrix3Xd scratch(3, m);
    for (std::size_t s = begin; s < end; ++s) {
      const auto fits = minimal_fit(windows, config.rng_seed, model_index, s, m);
      if (!fits) continue;
      score_transforms(*fits, windows, errors, scratch);
      Eigen::Index count = 0;
      double sum = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (errors[i] < eps) {
          ++count;
          sum += errors[i];
        }
      }
      candidates[s] = {count, sum};
    }
  });

  // Winner: largest consensus, then lower mean error (equal counts compare
  // by sum), then lexicographically smallest member set, then sample order.
  std::size_t best = 0;
  for (std::size_t s = 1; s < samples; ++s) {
    const Candidate& a = candidates[s];
    const Candidate& b = candidates[best];
    if (a.count > b.count || (a.count == b.count && a.error_sum < b.error_sum)) best = s;
  }
  if (candidates[best].count < std::max<Eigen::Index>(min_support, 3)) return std::nullopt;

  Eigen::ArrayXd errors(m);
  Eigen::Matrix3Xd scratch(3, m);
  const auto inlier_rows = [&](std::size_t s) {
    std::vector<Eigen::Index> rows;
    const auto fits = minimal_fit(windows, config.rng_seed, model_index, s, m);
    score_transforms(*fits, windows, errors, scratch);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (errors[i] < eps) rows.push_back(i);
    }
    return rows;
  };

  std::vector<Eigen::Index> rows = inlier_rows(best);
  std::vector<int> members(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) members[i] = ids[rows[i]];
  std::sort(members.begin(), members.end());
  for (std::size_t s = best + 1; s < samples; ++s) {
    if (candidates[s].count != candidates[best].count ||
        candidates[s].error_sum != candidates[best].error_sum) {
      continue;
    }
    const std::vector<Eigen::Index> tied_rows = inlier_rows(s);
    std::vector<int> tied(tied_rows.size());
    for (std::size_t i = 0; i < tied_rows.size(); ++i) tied[i] = ids[tied_rows[i]];
    std::sort(tied.begin(), tied.end());
    if (tied < members) {
      members = std::move(tied);
      rows = tied_rows;
    }
  }

  // Re-fit on the full consensus set, then re-score the whole pool with the
  // refined transforms: members at or over the threshold drop back out, and
  // pool points the refined fit explains are admitted. Iterate to a fixed
  // point so the final transforms are estimated from exactly the reported
  // member set. A minimal-sample hypothesis can cover only part of a rigid
  // block; without re-admission the refined model would strand the rest of
  // that block in the pool for later models to absorb. The scan-admit loop
  // could in principle cycle, so after a generous cap it falls back to
  // drop-only passes, which shrink monotonically and must terminate.
  std::vector<RigidTransform> fits(windows.size());
  Eigen::ArrayXd member_errors;
  const double weight = 1.0 / static_cast<double>(windows.size());
  const auto refit_on_rows = [&]() -> bool {
    const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
    CorrespondenceSet corr;
    corr.source.resize(3, k);
    corr.target.resize(3, k);
    member_errors = Eigen::ArrayXd::Zero(k);
    Eigen::Matrix3Xd member_scratch(3, k);
    try {
      for (std::size_t w = 0; w < windows.size(); ++w) {
        for (Eigen::Index i = 0; i < k; ++i) {
          corr.source.col(i) = windows[w].source.col(rows[i]);
          corr.target.col(i) = windows[w].target.col(rows[i]);
        }
        fits[w] = kabsch_fit(corr);
        detail::add_weighted_errors(fits[w].rotation, fits[w].translation, corr.source,
                                    corr.target, weight, member_errors, member_scratch);
      }
    } catch (const RankDeficiencyError&) {
      return false;
    }
    return true;
  };

  constexpr int k_rescan_cap = 100;
  for (int pass = 0;; ++pass) {
    if (static_cast<Eigen::Index>(rows.size()) < std::max<Eigen::Index>(min_support, 3)) {
      return std::nullopt;
    }
    if (!refit_on_rows()) return std::nullopt;
    std::vector<Eigen::Index> next;
    next.reserve(rows.size());
    if (pass < k_rescan_cap) {
      score_transforms(fits, windows, errors, scratch);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (errors[i] < eps) next.push_back(i);
      }
    } else {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (member_errors[static_cast<Eigen::Index>(i)] < eps) next.push_back(rows[i]);
      }
    }
    if (next == rows) break;
    rows = std::move(next);
  }

  PartHypothesis out;
  out.member_ids.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.member_ids[i] = ids[rows[i]];
  std::sort(out.member_ids.begin(), out.member_ids.end());
  out.transforms = std::move(fits);
  out.mean_residual = member_errors.mean();
  return out;
}

}  // namespace

void RansacConfig::validate() const {
  if (!(inlier_threshold > 0.0) || !std::isfinite(inlier_threshold)) {
    throw std::invalid_argument("ransac config: inlier_threshold must be positive and finite");
  }
  if (samples_per_model < 1) {
    throw std::invalid_argument("ransac config: samples_per_model must be >= 1");
  }
  if (max_models < 1) {
    throw std::invalid_argument("ransac config: max_models must be >= 1");
  }
  if (min_support < 3) {
    throw std::invalid_argument("ransac config: min_support must be >= 3 (minimal sample size)");
  }
  if (!(min_support_fraction >= 0.0 && min_support_fraction <= 1.0)) {
    throw std::invalid_argument("ransac config: min_support_fraction must lie in [0, 1]");
  }
  if (windows.empty()) {
    throw std::invalid_argument("ransac config: need at least one window");
  }
  for (const Window& w : windows) {
    if (!std::isfinite(w.t_a) || !std::isfinite(w.t_b) || !(w.t_a < w.t_b)) {
      throw std::invalid_argument("ransac config: window times must be finite with t_a < t_b");
    }
  }
}

std::optional<PartHypothesis> fit_one_model(const TrajectorySet& trajectories,
                                            const std::vector<int>& ids,
                                            const RansacConfig& config,
                                            std::uint64_t model_index) {
  trajectories.validate();
  config.validate();
  validate_ids(ids, trajectories.point_count());
  return fit_one_model_impl(trajectories, ids, config, model_index);
}

SegmentationResult sequential_fit(const TrajectorySet& trajectories,
                                  const RansacConfig& config) {
  std::vector<int> ids(static_cast<std::size_t>(trajectories.point_count()));
  std::iota(ids.begin(), ids.end(), 0);
  return sequential_fit(trajectories, std::move(ids), config);
}

SegmentationResult sequential_fit(const TrajectorySet& trajectories, std::vector<int> ids,
                                  const RansacConfig& config) {
  trajectories.validate();
  config.validate();
  validate_ids(ids, trajectories.point_count());
  std::sort(ids.begin(), ids.end());

  SegmentationResult result;
  std::vector<int> remaining = std::move(ids);
  for (int round = 0; round < config.max_models; ++round) {
    if (static_cast<int>(remaining.size()) < std::max(config.min_support, 3)) break;
    auto hypothesis =
        fit_one_model_impl(trajectories, remaining, config, static_cast<std::uint64_t>(round));
    if (!hypothesis) break;
    std::vector<int> next;
    next.reserve(remaining.size() - hypothesis->member_ids.size());
    std::set_difference(remaining.begin(), remaining.end(), hypothesis->member_ids.begin(),
                        hypothesis->member_ids.end(), std::back_inserter(next));
    remaining = std::move(next);
    result.parts.push_back(std::move(*hypothesis));
  }
  result.unassigned_ids = std::move(remaining);
  return result;
}

}  // namespace aim
