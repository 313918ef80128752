#include "starflow/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "starflow/error.hpp"
#include "starflow/kernels.hpp"

namespace starflow {
namespace {

double legendre(int l, double x) { return std::legendre(static_cast<unsigned>(l), x); }

// Unit-maximum associated Legendre function.
class ScaledLegendre {
 public:
  ScaledLegendre(int l, int m) : l_(static_cast<unsigned>(l)), m_(static_cast<unsigned>(std::abs(m))) {
    constexpr int samples = 4001;
    for (int k = 0; k < samples; ++k) {
      const double x = -1.0 + 2.0 * k / (samples - 1);
      peak_ = std::max(peak_, std::abs(std::assoc_legendre(l_, m_, x)));
    }
    if (!(peak_ > 0.0)) peak_ = 1.0;
  }
  double operator()(double x) const { return std::assoc_legendre(l_, m_, x) / peak_; }

 private:
  unsigned l_, m_;
  double peak_ = 0.0;
};

double ovaloid_log_radius(const InitialShapeSpec& spec, double theta) {
  const double a = spec.radius;
  const double c = spec.radius * spec.elongation;
  const double s = spec.offset;
  const double ct = std::cos(theta), st = std::sin(theta);
  // Points r xi with (r sin)^2 / a^2 + (r cos + s)^2 / c^2 = 1.
  const double A = st * st / (a * a) + ct * ct / (c * c);
  const double B = 2.0 * s * ct / (c * c);
  const double C = s * s / (c * c) - 1.0;
  const double disc = std::sqrt(B * B - 4.0 * A * C);
  const double r = B >= 0.0 ? -2.0 * C / (B + disc) : (-B + disc) / (2.0 * A);
  return std::log(r);
}

InitialShapeSpec scaled(const InitialShapeSpec& spec, double s) {
  InitialShapeSpec out = spec;
  out.eps *= s;
  for (Harmonic& h : out.harmonics) h.coeff *= s;
  return out;
}

bool admissible(const InitialShapeSpec& spec, const GridPtr& grid) {
  const ScalarField rho = sample_shape(spec, grid);
  return geometry_extrema(*grid, rho.values(), 2.0).admissible;
}

}  // namespace

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::sphere: return "sphere";
    case ShapeKind::perturbed_sphere: return "perturbed_sphere";
    case ShapeKind::offcenter_ovaloid: return "offcenter_ovaloid";
    case ShapeKind::custom_harmonics: return "custom_harmonics";
  }
  return "?";
}

ShapeKind shape_kind_from_string(const std::string& name) {
  for (ShapeKind k : {ShapeKind::sphere, ShapeKind::perturbed_sphere, ShapeKind::offcenter_ovaloid,
                      ShapeKind::custom_harmonics}) {
    if (name == to_string(k)) return k;
  }
  throw ConfigError("shape: unknown kind '" + name +
                    "' (expected sphere, perturbed_sphere, offcenter_ovaloid or custom_harmonics)");
}

void InitialShapeSpec::validate() const {
  if (!(std::isfinite(radius) && radius > 0.0)) throw ConfigError("radius: must be positive");
  if (!std::isfinite(eps)) throw ConfigError("eps: must be finite");
  if (mode < 0) throw ConfigError("mode: must be nonnegative");
  if (kind == ShapeKind::offcenter_ovaloid) {
    if (!(std::isfinite(elongation) && elongation > 0.0)) throw ConfigError("elongation: must be positive");
    if (!(std::isfinite(offset) && std::abs(offset) < radius * elongation)) {
      throw ConfigError("offset: origin must lie inside the ovaloid (|offset| < radius * elongation)");
    }
  }
  for (const Harmonic& h : harmonics) {
    if (h.l < 0 || std::abs(h.m) > h.l) throw ConfigError("harmonics: need 0 <= |m| <= l");
    if (!std::isfinite(h.coeff)) throw ConfigError("harmonics: coefficient must be finite");
  }
}

ScalarField sample_shape(const InitialShapeSpec& spec, const GridPtr& grid) {
  spec.validate();
  const SphereGrid& g = *grid;
  const double base = std::log(spec.radius);
  std::vector<double> values(g.size(), base);

  switch (spec.kind) {
    case ShapeKind::sphere:
      break;
    case ShapeKind::perturbed_sphere:
      for (std::size_t k = 0; k < values.size(); ++k) {
        values[k] += spec.eps * legendre(spec.mode, std::cos(g.theta(g.row_of(k))));
      }
      break;
    case ShapeKind::offcenter_ovaloid:
      for (std::size_t k = 0; k < values.size(); ++k) {
        values[k] = ovaloid_log_radius(spec, g.theta(g.row_of(k)));
      }
      break;
    case ShapeKind::custom_harmonics:
      for (const Harmonic& h : spec.harmonics) {
        if (h.m != 0 && g.mode() == GridMode::axisymmetric) {
          throw ConfigError("harmonics: m != 0 needs a full2d grid");
        }
        const ScaledLegendre p(h.l, h.m);
        for (std::size_t k = 0; k < values.size(); ++k) {
          const double phi = g.phi(g.col_of(k));
          double angular = 1.0;
          if (h.m > 0) angular = std::cos(h.m * phi);
          if (h.m < 0) angular = std::sin(-h.m * phi);
          values[k] += h.coeff * p(std::cos(g.theta(g.row_of(k)))) * angular;
        }
      }
      break;
  }
  return ScalarField(grid, std::move(values));
}

double max_admissible_scale(const InitialShapeSpec& spec, const GridPtr& grid) {
  if (admissible(spec, grid)) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    (admissible(scaled(spec, mid), grid) ? lo : hi) = mid;
  }
  return lo;
}

ScalarField make_initial_field(const InitialShapeSpec& spec, const GridPtr& grid) {
  ScalarField rho = sample_shape(spec, grid);
  if (geometry_extrema(*grid, rho.values(), 2.0).admissible) return rho;

  std::ostringstream msg;
  msg << "initial shape " << to_string(spec.kind) << " leaves Gamma_2 on this grid";
  if (spec.kind == ShapeKind::perturbed_sphere || spec.kind == ShapeKind::custom_harmonics) {
    const double s = max_admissible_scale(spec, grid);
    msg << "; largest admissible amplitude scale is " << s;
    if (spec.kind == ShapeKind::perturbed_sphere) msg << " (eps <= " << s * spec.eps << ")";
  }
  throw Error(ErrorCategory::admissibility, msg.str());
}

double ovaloid_ratio(const InitialShapeSpec& spec) {
  spec.validate();
  if (spec.kind != ShapeKind::offcenter_ovaloid) throw ConfigError("ovaloid_ratio: not an ovaloid");
  constexpr int samples = 20001;
  double lo = INFINITY, hi = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double r = std::exp(ovaloid_log_radius(spec, M_PI * k / (samples - 1)));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi / lo;
}

}  // namespace starflow
