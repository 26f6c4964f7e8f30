#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "folia/chart.hpp"
#include "folia/foliation.hpp"

namespace folia {

// Parameters for a zoo entry; unspecified keys take the entry's defaults.
// periodic_leaves selects the compact-leaf (toroidal) chart variant where one
// exists.
struct ZooParams {
  std::map<std::string, double> values;
  bool periodic_leaves = false;

  double get(const std::string& key, double dflt) const {
    auto it = values.find(key);
    return it == values.end() ? dflt : it->second;
  }
};

// A witness spacetime: metric, canonical foliation, and what is known about
// it by construction.
struct Spacetime {
  std::string name;
  std::string description;
  std::shared_ptr<const MetricField> metric;
  Foliation foliation;
  std::optional<double> curvature_constant;  // sectional curvature if constant
  bool geodesic_normal = false;  // canonical N geodesic by construction
  ZooParams params;              // resolved parameters, defaults filled in
};

// Entries: minkowski, minkowski_tilted, minkowski_hyperboloids,
// robertson_walker, de_sitter_flat_slicing, anti_de_sitter_chart,
// slab_counterexample, static_lapse_torus.
Spacetime zoo_build(const std::string& name, const ZooParams& params = {});

const std::vector<std::string>& zoo_names();

namespace detail {

// C^4 warp profile used by the slab entry: zero for z <= lo, constant for
// z >= hi, in between the exact antiderivative of amp * (4u(1-u))^4 with
// u = (z-lo)/(hi-lo).
template <class S>
S slab_warp(const S& z, double lo, double hi, double amp) {
  const double w = hi - lo;
  const double zz = scalar_value(z);
  if (zz <= lo) return S(0.0);
  if (zz >= hi) return S(amp * 256.0 * w / 630.0);
  S u = (z - lo) * (1.0 / w);
  S prim = powi(u, 5) * (1.0 / 5.0) - powi(u, 6) * (2.0 / 3.0) +
           powi(u, 7) * (6.0 / 7.0) - powi(u, 8) * 0.5 + powi(u, 9) * (1.0 / 9.0);
  return prim * (amp * 256.0 * w);
}

}  // namespace detail

}  // namespace folia
