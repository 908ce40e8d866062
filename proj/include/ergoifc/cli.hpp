#pragma once

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ergoifc/channel.hpp"

namespace ergoifc::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kMalformedInput = 2, kPrecondition = 3 };

/// Maps library exceptions to process exit codes.
int exit_code_for(const std::exception& e);

/// "a:b:step" (inclusive) or a comma list; result must be nonempty and ascending.
std::vector<double> parse_grid(std::string_view text);

struct RunConfig {
  std::string channel_path;
  std::uint64_t seed = 1;
  std::size_t samples = 20000;
  double tol = 1e-6;
  std::string output_path;  ///< empty: standard output
  std::string scheme = "auto";
  std::string figure;
  std::vector<double> sigma2_grid;
  std::vector<double> p1_grid;
  std::vector<double> mu_grid;
  /// Budget of the uniformly strong sep-gap channels.
  double power = 1.0;

  /// Throws InvalidInput when an invariant fails.
  void validate() const;
};

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sumcap(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_figure(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Fixed-point rendering used in every CSV cell.
std::string fmt(double v);

/// "p1:p2;p1:p2;..."
std::string encode_policy(const PowerPolicy& policy);

struct EvsThreshold {
  double p_max = 0.0;
  bool feasible = false;  ///< condition holds at the resolution floor
  bool capped = false;    ///< condition still holds at the cap
};

inline constexpr double kThresholdResolution = 1e-3;
inline constexpr double kThresholdCap = 100.0;

/**
 * Largest common budget (P, P) at which the very-strong condition holds, by
 * bisection on [resolution, cap].  Assumes the condition fails beyond the
 * threshold once it fails.
 */
EvsThreshold evs_max_power(const FadingProcess& process);

/// One-sided binary channel: direct gains 1, g21 = 0, g12 = h1 w.p. p1 else h2.
/// States with zero probability are dropped.
FadingProcess binary_one_sided_channel(double h1, double h2, double p1);

}  // namespace ergoifc::cli
