#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace bandgrowth {

struct BandProfile;

/// A growth curve g: N -> R+, either c*n^s or a nondecreasing table.
///
/// Tables are 1-based (values[0] is g(1)); lookups past the end clamp to the
/// last entry, and real arguments are floored since positions are integers.
class GrowthCurve {
 public:
  enum class Kind { power, table, composed };

  static GrowthCurve power(double c, double s);
  static GrowthCurve table(std::vector<double> values);
  /// Nondecreasing extension (running max) of a measured profile.
  static GrowthCurve from_profile(const BandProfile& profile);

  double operator()(double n) const;

  Kind kind() const noexcept;
  /// Only meaningful for power curves.
  double constant() const;
  double exponent() const;

  std::string describe() const;

 private:
  struct Power {
    double c;
    double s;
  };
  struct Table {
    std::vector<double> values;
  };
  struct Composed {
    std::shared_ptr<const GrowthCurve> g;
    std::shared_ptr<const GrowthCurve> h;
  };

  explicit GrowthCurve(std::variant<Power, Table, Composed> v) : v_(std::move(v)) {}

  friend GrowthCurve compose_product(const GrowthCurve& g, const GrowthCurve& h);

  std::variant<Power, Table, Composed> v_;
};

/// Curve bounding x*y when g bounds x and h bounds y:
///   f(n) = max( g(n) + h(n + g(n)), h(n) + g(n + h(n)) ).
/// The first term controls the row of the product, the second its column.
GrowthCurve compose_product(const GrowthCurve& g, const GrowthCurve& h);

}  // namespace bandgrowth
