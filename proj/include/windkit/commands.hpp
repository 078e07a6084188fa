#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "windkit/core.hpp"
#include "windkit/csv.hpp"
#include "windkit/interpolate.hpp"
#include "windkit/stats.hpp"

namespace windkit::cmd {

inline constexpr std::uint64_t kDefaultSeed = 20151001;

/// Options shared by every subcommand. Re-running a command with identical
/// options over identical inputs reproduces every output file byte for byte.
struct Options {
    std::filesystem::path data_dir;
    std::filesystem::path out_dir;
    std::optional<InterpMethod> fill;                       // repair missing samples first
    SplineBoundary qs_boundary = SplineBoundary::NotAKnot;  // spline variant for --fill qs
    std::uint64_t seed = kDefaultSeed;                      // comparator randomness
    std::vector<Diagnostic>* warnings = nullptr;            // optional sink for read warnings
};

/// Every emitted file plus the canonical command that generated it; written
/// to <out_dir>/manifest.json by each command.
struct ReportBundle {
    std::string command;
    std::filesystem::path out_dir;
    std::vector<std::string> files; // relative to out_dir, manifest included
};

/// Per-site speed/gust histograms, direction wind roses and moment summaries.
ReportBundle stats(const Options& opt);

/// Auto-correlation table of one site variable with a moment-matched Gaussian
/// comparator under identical lags. max_lag < 0 selects the full frame
/// (n_days - 1).
ReportBundle acf(const Options& opt, const SiteId& site, WindVar var, int max_lag = -1,
                 AcfNormalization norm = AcfNormalization::Segment);

/// Per-site variable-pair correlation table and the cross-site matrix.
ReportBundle xcorr(const Options& opt, WindVar var);

/// Least-squares model identification; emits the serialized model, the fit
/// report and the per-day actual/predicted/residual table. With no `inputs`
/// given, every other site joins in dataset order; an empty list fits a pure
/// auto-regression on the target alone. A holdout fraction in (0, 1) trains
/// on the leading days only and adds an out-of-sample report over the tail;
/// the default is in-sample scoring on the full frame.
ReportBundle fit(const Options& opt, const SiteId& target, WindVar var, int m, int k,
                 std::optional<std::vector<SiteId>> inputs = std::nullopt,
                 double holdout = 0.0);

/// Fits every (m, k) combination, emits the comparison table sorted by FPE
/// ascending plus the best model and its per-day table.
ReportBundle scan(const Options& opt, const SiteId& target, WindVar var,
                  const std::vector<int>& m_set, const std::vector<int>& k_set,
                  std::optional<std::vector<SiteId>> inputs = std::nullopt);

/// Replays a saved model over the dataset and emits the next-day prediction
/// from the latest available window.
ReportBundle forecast(const Options& opt, const std::filesystem::path& model_file);

} // namespace windkit::cmd
