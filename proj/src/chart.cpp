#include "folia/chart.hpp"

namespace folia {

Tensor3<double> metric_partials(const MetricField& metric, const ChartPoint& p) {
  auto xd = seed_directions<double>(p);
  auto gj = metric.eval_at<D1>(xd);
  return grads(gj, metric.dim());
}

}  // namespace folia
