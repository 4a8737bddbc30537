#include "bandgrowth/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bandgrowth/error.hpp"

namespace bandgrowth {

GrowthCurve GrowthCurve::power(double c, double s) {
  if (!(c > 0)) throw Error(ErrorKind::OutOfRange, "power curve constant must be positive");
  if (!(s >= 0 && s <= 1)) throw Error(ErrorKind::ExponentOutOfRange, "power curve exponent must lie in [0,1]");
  return GrowthCurve(Power{c, s});
}

GrowthCurve GrowthCurve::table(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::OutOfRange, "table curve needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) throw Error(ErrorKind::OutOfRange, "table curve values must be nonnegative");
    if (i > 0 && values[i] < values[i - 1]) throw Error(ErrorKind::OutOfRange, "table curve must be nondecreasing");
  }
  return GrowthCurve(Table{std::move(values)});
}

GrowthCurve GrowthCurve::from_profile(const BandProfile& profile) {
  std::vector<double> v(std::max<std::size_t>(profile.size(), 1), 0.0);
  double run = 0;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    run = std::max(run, static_cast<double>(profile.g[k]));
    v[k] = run;
  }
  return GrowthCurve(Table{std::move(v)});
}

double GrowthCurve::operator()(double n) const {
  if (auto p = std::get_if<Power>(&v_)) return p->c * std::pow(n, p->s);
  if (auto t = std::get_if<Table>(&v_)) {
    const auto& v = t->values;
    double idx = std::floor(n + kBoundSlack);
    if (idx < 1) return v.front();
    if (idx >= static_cast<double>(v.size())) return v.back();
    return v[static_cast<std::size_t>(idx) - 1];
  }
  const auto& c = std::get<Composed>(v_);
  const GrowthCurve& g = *c.g;
  const GrowthCurve& h = *c.h;
  const double gn = g(n);
  const double hn = h(n);
  return std::max(gn + h(n + gn), hn + g(n + hn));
}

GrowthCurve::Kind GrowthCurve::kind() const noexcept {
  if (std::holds_alternative<Power>(v_)) return Kind::power;
  if (std::holds_alternative<Table>(v_)) return Kind::table;
  return Kind::composed;
}

double GrowthCurve::constant() const {
  if (auto p = std::get_if<Power>(&v_)) return p->c;
  throw Error(ErrorKind::ConfigMismatch, "constant() requires a power curve");
}

double GrowthCurve::exponent() const {
  if (auto p = std::get_if<Power>(&v_)) return p->s;
  throw Error(ErrorKind::ConfigMismatch, "exponent() requires a power curve");
}

std::string GrowthCurve::describe() const {
  std::ostringstream os;
  if (auto p = std::get_if<Power>(&v_)) {
    os << "power(c=" << p->c << ", s=" << p->s << ")";
  } else if (auto t = std::get_if<Table>(&v_)) {
    os << "table(len=" << t->values.size() << ", max=" << t->values.back() << ")";
  } else {
    const auto& c = std::get<Composed>(v_);
    os << "compose(" << c.g->describe() << ", " << c.h->describe() << ")";
  }
  return os.str();
}

GrowthCurve compose_product(const GrowthCurve& g, const GrowthCurve& h) {
  return GrowthCurve(GrowthCurve::Composed{std::make_shared<const GrowthCurve>(g), std::make_shared<const GrowthCurve>(h)});
}

FiltrationLevel::FiltrationLevel(double s_, double c_) : s(s_), c(c_) {
  if (!(c > 0)) throw Error(ErrorKind::OutOfRange, "filtration constant must be positive");
  if (!(s >= 0 && s <= 1)) throw Error(ErrorKind::ExponentOutOfRange, "filtration exponent must lie in [0,1]");
}

bool membership(const WindowMatrix& w, const FiltrationLevel& level) { return verify_growth(w, level.c, level.s); }

double minimal_constant(const WindowMatrix& w, double s) {
  const auto p = band_profile(w);
  double c = 0;
  for (std::size_t k = 1; k <= w.valid_to(); ++k) {
    if (p(k) == 0) continue;
    c = std::max(c, static_cast<double>(p(k)) / std::pow(static_cast<double>(k), s));
  }
  return c;
}

PowerGrowthReport power_growth_check(double c, double s, std::size_t m_max, std::span<const double> n_samples,
                                     bool report_only) {
  if (!(c > 0)) throw Error(ErrorKind::OutOfRange, "constant must be positive");
  if (s < 0 || s > 1 || (s == 1 && !report_only)) {
    throw Error(ErrorKind::ExponentOutOfRange, "power growth check needs 0 <= s < 1 (s = 1 grows exponentially)");
  }
  if (m_max < 1 || n_samples.empty()) throw Error(ErrorKind::OutOfRange, "empty sampling grid");

  PowerGrowthReport rep;
  rep.c = c;
  rep.s = s;
  rep.m_max = m_max;
  rep.n_samples.assign(n_samples.begin(), n_samples.end());
  rep.exponential_regime = s == 1;

  for (double n : n_samples) {
    double b = c * std::pow(n, s);
    for (std::size_t m = 1; m <= m_max; ++m) {
      if (m > 1) b += c * std::pow(n + b, s);
      double scale = rep.exponential_regime ? std::pow(2.0, static_cast<double>(m)) * n
                                            : std::pow(static_cast<double>(m), 1.0 / (1.0 - s)) * std::pow(n, s);
      double ratio = b / scale;
      rep.samples.push_back({m, n, b, ratio});
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_m = m;
        rep.worst_n = n;
      }
    }
  }
  rep.d = rep.worst_ratio;
  rep.pass = std::isfinite(rep.d) && !rep.exponential_regime;
  for (const auto& smp : rep.samples) {
    const double scale = smp.bound / smp.ratio;
    if (smp.bound > rep.d * scale * (1 + kBoundSlack)) rep.pass = false;
  }
  return rep;
}

ExponentFit fit_exponent(std::span<const double> values, std::size_t skip) {
  bool any = std::any_of(values.begin(), values.end(), [](double v) { return v > 0; });
  if (!any) throw Error(ErrorKind::ZeroProfile, "profile is identically zero (bandwidth 0)");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t k = std::max<std::size_t>(skip, 1); k <= values.size(); ++k) {
    double g = values[k - 1];
    if (g < 1) continue;
    double x = std::log(static_cast<double>(k));
    double y = std::log(g);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 8) throw Error(ErrorKind::InsufficientData, "need at least 8 positions with g(k) >= 1 after burn-in");
  const double nn = static_cast<double>(cnt);
  const double denom = nn * sxx - sx * sx;
  ExponentFit fit;
  fit.points = cnt;
  fit.s = denom > 0 ? (nn * sxy - sx * sy) / denom : 0.0;
  const double intercept = (sy - fit.s * sx) / nn;
  fit.c = std::exp(intercept);
  double ss = 0;
  for (std::size_t k = std::max<std::size_t>(skip, 1); k <= values.size(); ++k) {
    double g = values[k - 1];
    if (g < 1) continue;
    double r = std::log(g) - (intercept + fit.s * std::log(static_cast<double>(k)));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / nn);
  return fit;
}

ExponentFit fit_exponent(const BandProfile& profile, std::size_t skip, bool exact_only) {
  const std::size_t len = exact_only ? profile.exact_to : profile.size();
  std::vector<double> v(len);
  for (std::size_t k = 0; k < len; ++k) v[k] = static_cast<double>(profile.g[k]);
  return fit_exponent(std::span<const double>(v), skip);
}

}  // namespace bandgrowth

namespace bandgrowth {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw Error(ErrorKind::InsufficientData, "a line needs at least 2 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw Error(ErrorKind::InsufficientData, "all x values coincide");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    sse += e * e;
  }
  f.r2 = syy == 0 ? 1.0 : 1 - sse / syy;
  return f;
}

}  // namespace bandgrowth
