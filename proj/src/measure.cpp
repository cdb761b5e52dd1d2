#include "cdlab/measure.hpp"

namespace cdlab {

DecaySeries weak_star_decay(const Measure<double>& mu, const LatticeFunction& f, int n_max) {
  CDLAB_OP("weak_star_decay");
  if (!mu.on_integers()) throw ConstructionError("weak_star_decay: measure must live on Z");
  if (!mu.is_probability()) throw ConstructionError("weak_star_decay: measure must be a probability");
  if (n_max < 1) throw ConstructionError("weak_star_decay: N must be >= 1");
  DecaySeries out;
  const auto support = mu.support();
  out.degenerate = support.size() == 1 && mu.lo() + support.front() == 0;

  Measure<double> power = mu;
  out.values.reserve(static_cast<size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) power = convolve(power, mu);
    double pairing = 0.0;
    for (Eigen::Index i = 0; i < power.size(); ++i) pairing += power[i] * f.at(power.lo() + i);
    out.values.push_back(pairing);
  }
  return out;
}

}  // namespace cdlab
