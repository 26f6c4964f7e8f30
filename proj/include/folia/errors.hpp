#pragma once

#include <stdexcept>
#include <string>

namespace folia {

enum class Errc {
  out_of_domain,
  signature_violation,
  invalid_params,
  singular_metric,
  not_unit_timelike,
  bad_frame_vector,
  not_spacelike_leaf,
  degenerate_frame,
  not_leaf_tangent,
  left_domain,
  not_geodesic_normal,
  not_constant_curvature,
  non_compact_leaf,
  empty_sample_set,
  no_unique_signature,
  bound_violated,
  regime_violation,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::out_of_domain: return "out_of_domain";
    case Errc::signature_violation: return "signature_violation";
    case Errc::invalid_params: return "invalid_params";
    case Errc::singular_metric: return "singular_metric";
    case Errc::not_unit_timelike: return "not_unit_timelike";
    case Errc::bad_frame_vector: return "bad_frame_vector";
    case Errc::not_spacelike_leaf: return "not_spacelike_leaf";
    case Errc::degenerate_frame: return "degenerate_frame";
    case Errc::not_leaf_tangent: return "not_leaf_tangent";
    case Errc::left_domain: return "left_domain";
    case Errc::not_geodesic_normal: return "not_geodesic_normal";
    case Errc::not_constant_curvature: return "not_constant_curvature";
    case Errc::non_compact_leaf: return "non_compact_leaf";
    case Errc::empty_sample_set: return "empty_sample_set";
    case Errc::no_unique_signature: return "no_unique_signature";
    case Errc::bound_violated: return "bound_violated";
    case Errc::regime_violation: return "regime_violation";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace folia
