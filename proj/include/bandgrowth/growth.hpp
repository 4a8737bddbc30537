#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bandgrowth/curve.hpp"
#include "bandgrowth/window_matrix.hpp"

namespace bandgrowth {

/// W_s(c): matrices for which c*n^s is a growth curve.
struct FiltrationLevel {
  double s;
  double c;

  FiltrationLevel(double s, double c);
};

bool membership(const WindowMatrix& w, const FiltrationLevel& level);

/// Smallest c with profile(k) <= c*k^s for all k <= valid_to (0 for the zero matrix).
double minimal_constant(const WindowMatrix& w, double s);

struct PowerGrowthSample {
  std::size_t m;
  double n;
  double bound;  // b_m(n)
  double ratio;  // b_m(n) / (m^{1/(1-s)} n^s)
};

/// Growth of (W_s(c))^m measured by iterating
///   b_1(n) = c n^s,   b_{m+1}(n) = b_m(n) + c (n + b_m(n))^s
/// and fitting the least d with b_m(n) <= d m^{1/(1-s)} n^s on the grid.
struct PowerGrowthReport {
  double c = 0;
  double s = 0;
  std::size_t m_max = 0;
  std::vector<double> n_samples;
  double d = 0;
  double worst_ratio = 0;
  std::size_t worst_m = 0;
  double worst_n = 0;
  bool exponential_regime = false;  // s == 1, report-only
  bool pass = false;
  std::vector<PowerGrowthSample> samples;
};

/// Throws ExponentOutOfRange for s outside [0,1), unless report_only is set and s == 1.
PowerGrowthReport power_growth_check(double c, double s, std::size_t m_max, std::span<const double> n_samples,
                                     bool report_only = false);

struct ExponentFit {
  double c = 0;
  double s = 0;
  double residual = 0;  // RMS of log residuals
  std::size_t points = 0;
};

inline constexpr std::size_t kDefaultBurnIn = 16;

/// Least-squares fit of log g(k) against log k over k >= skip with g(k) >= 1.
/// values[0] is g(1).  Throws ZeroProfile on an all-zero profile and
/// InsufficientData with fewer than 8 usable points.
ExponentFit fit_exponent(std::span<const double> values, std::size_t skip = kDefaultBurnIn);
/// Profile overload; only positions up to exact_to are used when exact_only is set.
ExponentFit fit_exponent(const BandProfile& profile, std::size_t skip = kDefaultBurnIn, bool exact_only = false);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;  // coefficient of determination; 1 when y is constant and fitted exactly
};

/// Ordinary least squares y = slope*x + intercept.  InsufficientData below 2 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace bandgrowth
