#include "credit/divergence.hpp"

#include <cmath>

#include "credit/table.hpp"

namespace credit {

void write_decay_curve_csv(std::ostream& out, const DecayCurve& curve, std::optional<double> homogeneous_eta,
                           double delta2) {
  out << "step,distance_to_end,chi2_measured,chi2_theory\n";
  for (const auto& point : curve.values) {
    out << point.step << ',' << curve.horizon - point.step << ',' << format_real(point.chi2) << ',';
    if (homogeneous_eta) {
      out << format_real(std::pow(*homogeneous_eta, point.step - curve.start_step) * delta2);
    }
    out << '\n';
  }
}

}  // namespace credit
