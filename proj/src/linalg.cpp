#include "folia/linalg.hpp"

#include <Eigen/Dense>

namespace folia {

static Eigen::MatrixXd to_eigen(const SquareMat<double>& m) {
  Eigen::MatrixXd e(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
  return e;
}

std::vector<double> sym_eigenvalues(const SquareMat<double>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    raise(Errc::singular_metric, "symmetric eigensolve failed");
  std::vector<double> out(m.dim());
  for (int i = 0; i < m.dim(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

Inertia sym_inertia(const SquareMat<double>& m, double tol) {
  Inertia sig;
  for (double ev : sym_eigenvalues(m)) {
    if (ev < -tol)
      ++sig.negative;
    else if (ev > tol)
      ++sig.positive;
    else
      ++sig.zero;
  }
  return sig;
}

}  // namespace folia
