// Acceptance checks: one PASS/FAIL line per criterion, sub-check details below it.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "credit/contraction.hpp"
#include "credit/divergence.hpp"
#include "credit/experiments.hpp"
#include "credit/horizon.hpp"
#include "credit/inspection.hpp"
#include "credit/markov.hpp"
#include "credit/objectives.hpp"
#include "credit/random.hpp"
#include "credit/table.hpp"
#include "credit/width.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::vector<std::string> details;
  bool ok = true;

  void check(bool pass, const std::string& what) {
    ok = ok && pass;
    details.push_back(std::string(pass ? "  ok   " : "  MISS ") + what);
  }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), pattern, a, b, c);
  return buffer;
}

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string csv_of(const credit::ResultTable& table) {
  std::ostringstream out;
  credit::emit_csv(table, out);
  return out.str();
}

void criterion1(Criterion& c) {
  const auto start = Clock::now();
  const auto table = credit::run_decay({});
  double worst = 0.0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    worst = std::max(worst, std::abs(table.real(r, "chi2_measured") - table.real(r, "chi2_theory")));
  }
  c.check(worst <= 1e-9, fmt("max |chi2 - eta^(H-u) * 9| = %.3g <= 1e-9", worst));
  for (const auto& fit : table.metadata["summary"]["fits"]) {
    const double r2 = fit["r2"].get<double>();
    c.check(r2 > 0.999, fmt("eta=%.2f R^2 = %.12f > 0.999", fit["eta"].get<double>(), r2));
  }
  const double t = seconds_since(start);
  c.check(t < 1.0, fmt("runtime %.3f s < 1 s", t));
}

void criterion2(Criterion& c) {
  const auto start = Clock::now();
  const auto table = credit::run_width({}, 20250101, 1);
  const double t = seconds_since(start);
  const std::size_t last = table.rows.size() - 1;
  const double weff = table.real(last, "weff_empirical");
  c.check(table.real(last, "W") == 256.0 && weff >= 6.2 && weff <= 6.9, fmt("W=256 empirical W_eff = %.4f in [6.2, 6.9]", weff));
  c.check(std::abs(table.real(last, "weff_theory") - 6.52) < 0.005, fmt("theory %.4f ~ 6.52", table.real(last, "weff_theory")));
  c.check(weff < 1.0 / 0.15, fmt("below cap 1/rho = %.4f", 1.0 / 0.15));
  c.check(t < 30.0, fmt("runtime %.2f s < 30 s", t));
}

void criterion3(Criterion& c) {
  const std::array<int, 4> widths{10, 50, 100, 500};
  const std::array<double, 4> expected{3.6, 4.6, 4.8, 5.0};
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const double w = credit::effective_width(widths[i], 0.2);
    const double rounded = std::round(w * 10.0) / 10.0;
    c.check(rounded == expected[i], fmt("W=%.0f: %.4f rounds to %.1f", widths[i], w, expected[i]));
  }
}

void criterion4(Criterion& c) {
  const double h09 = credit::critical_horizon_simplified(1e6, 0.1, 0.9);
  c.check(std::abs(h09 - 110.0) <= 0.5, fmt("eta=0.9 simplified H_crit = %.4f within 110 +- 0.5", h09));
  const double h07 = credit::critical_horizon_simplified(1e6, 0.1, 0.7);
  c.check(std::abs(h07 - 32.0) <= 0.5, fmt("eta=0.7 simplified H_crit = %.4f within 32 +- 0.5", h07));
  const double semi = credit::critical_horizon({1e4, 0.2, 0.1, 0.85});
  c.check(std::abs(semi - 48.1) <= 0.1, fmt("semiconductor H_crit = %.4f within 48.1 +- 0.1", semi));
  const int m = credit::min_inspections(50, semi);
  c.check(m == 1, fmt("min_inspections(50, H_crit) = %.0f", m));
}

void criterion5(Criterion& c) {
  const auto start = Clock::now();
  const auto table = credit::run_horizon({}, 11, 1);
  const double t = seconds_since(start);
  double acc_d1 = -1.0;
  int first_low = -1;
  bool eta08_above = true;
  double eta08_min = 1.0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const double eta = table.real(r, "eta");
    const int d = static_cast<int>(table.real(r, "distance"));
    const double acc = table.real(r, "accuracy");
    if (std::abs(eta - 0.7) < 1e-12) {
      if (d == 1) {
        acc_d1 = acc;
      }
      if (first_low < 0 && acc <= 0.55) {
        first_low = d;
      }
    } else if (std::abs(eta - 0.8) < 1e-12 && d >= 1) {
      eta08_above = eta08_above && acc > 0.55;
      eta08_min = std::min(eta08_min, acc);
    }
  }
  c.check(std::abs(acc_d1 - 0.89) <= 0.05, fmt("eta=0.7 accuracy at distance 1 = %.4f within 0.89 +- 0.05", acc_d1));
  c.check(first_low >= 0 && first_low <= 26, fmt("eta=0.7 first distance with accuracy <= 0.55 = %.0f (need <= 26)", first_low));
  c.check(eta08_above, fmt("eta=0.8 accuracy > 0.55 through distance 40 (min %.4f)", eta08_min));
  c.check(t < 120.0, fmt("runtime %.2f s < 120 s", t));
}

void criterion6(Criterion& c) {
  const auto start = Clock::now();
  const auto table = credit::run_inspection({}, 7, 1);
  const double t = seconds_since(start);
  const std::array<double, 4> targets{0.41, 0.77, 0.77, 0.69};
  const std::array<const char*, 4> names{"{5,10,15}", "{2,4,6}", "{14,16,18}", "{2,13,14}"};
  const double uniform = table.real(0, "worst_error");
  bool lowest = true;
  for (std::size_t s = 0; s < 4; ++s) {
    const double e = table.real(s, "worst_error");
    if (s > 0) {
      lowest = lowest && uniform < e;
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%s worst-case error %.4f within %.2f +- 0.10", names[s], e, targets[s]);
    c.check(std::abs(e - targets[s]) <= 0.10, line);
  }
  c.check(lowest, "uniform worst-case error strictly lowest");
  c.check(t < 60.0, fmt("runtime %.2f s < 60 s", t));
}

void criterion7(Criterion& c) {
  const auto start = Clock::now();
  const auto table = credit::run_oracle({}, 5);
  const double t = seconds_since(start);
  long long gap_rows = 0;
  long long greedy_rows = 0;
  long long gap_bad = 0;
  long long greedy_bad = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const bool equal = table.real(r, "scheduler_value") == table.real(r, "oracle_value");
    if (table.real(r, "check") == 0.0) {
      ++gap_rows;
      gap_bad += equal ? 0 : 1;
    } else {
      ++greedy_rows;
      greedy_bad += equal ? 0 : 1;
    }
  }
  c.check(gap_bad == 0, fmt("min_gap_value equals exhaustive minimum on %.0f (H, m) pairs", gap_rows));
  c.check(greedy_bad == 0 && greedy_rows == 200, fmt("greedy cardinality equals exhaustive minimum on %.0f random vectors", greedy_rows));
  c.check(t < 60.0, fmt("runtime %.2f s < 60 s", t));
}

void criterion8(Criterion& c) {
  credit::Kernel::Matrix m(3, 3);
  m << 0.85, 0.14, 0.01, 0.55, 0.35, 0.10, 0.20, 0.30, 0.50;
  const credit::Kernel manufacturing(m);
  const double alpha = credit::dobrushin_alpha(manufacturing);
  const double bound = credit::dobrushin_bound(manufacturing);
  c.check(std::abs(alpha - 0.35) < 1e-12 && std::abs(bound - 0.65) < 1e-12,
          fmt("manufacturing alpha = %.6f, bound = %.6f", alpha, bound));

  m << 0.7, 0.2, 0.1, 0.3, 0.4, 0.3, 0.1, 0.2, 0.7;
  const double diversity = credit::diversity_bound(credit::Kernel(m));
  c.check(std::abs(diversity - 0.7) < 1e-12, fmt("reasoning diversity bound = %.6f", diversity));

  std::vector<double> etas(11, 0.6);
  etas.insert(etas.end(), 39, 0.95);
  const double gamma = credit::feasibility_threshold(1000, 0.3, 0.1);
  const auto schedule = credit::greedy_schedule(etas, gamma);
  c.check(schedule.times() == std::vector<int>{16}, fmt("service greedy schedule = {16} (size %.0f)", schedule.size()));
  c.check(gamma >= 5.90 && gamma <= 5.92, fmt("service Gamma = %.4f in [5.90, 5.92]", gamma));

  const double two_state = credit::two_state_exact(0.1);
  c.check(std::abs(two_state - 0.64) < 1e-12, fmt("two-state exact eta(0.1) = %.6f", two_state));
}

void criterion9(Criterion& c) {
  c.check(credit::j_add(0.99, 100) == 99.0, "j_add(0.99, 100) == 99 exactly");
  const double jm = credit::j_mult(0.99, 100);
  c.check(jm >= 0.3660 && jm <= 0.3661, fmt("j_mult(0.99, 100) = %.6f in [0.3660, 0.3661]", jm));
  const double ga = credit::grad_attenuation(0.95, 100);
  c.check(ga >= 0.0062 && ga <= 0.0063, fmt("grad_attenuation(0.95, 100) = %.6f in [0.0062, 0.0063]", ga));

  const auto table = credit::run_mismatch({}, 3, 1);
  const double sampled = table.real(0, "fraction_sampled");
  const double exact = table.real(0, "exact");
  const double se = table.real(0, "standard_error");
  c.check(std::abs(sampled - exact) <= 3.0 * se, fmt("mostly-correct-but-wrong %.5f vs exact %.5f (3 SE = %.5f)", sampled, exact, 3.0 * se));

  double worst = 0.0;
  const double h = 1e-6;
  for (double p : {0.2, 0.5, 0.9, 0.99}) {
    for (double lambda : {0.0, 0.3, 0.7, 1.0}) {
      const double fd = (credit::j_interp(p + h, 100, lambda).value - credit::j_interp(p - h, 100, lambda).value) / (2.0 * h);
      const double analytic = credit::j_interp(p, 100, lambda).gradient;
      worst = std::max(worst, std::abs(fd - analytic) / std::abs(analytic));
    }
  }
  c.check(worst <= 1e-5, fmt("max relative finite-difference gap %.3g <= 1e-5", worst));
}

Eigen::VectorXd dirichlet(credit::Engine& engine, int size) {
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) {
    v[i] = -std::log(1.0 - credit::uniform01(engine));
  }
  return v / v.sum();
}

void criterion10(Criterion& c) {
  const auto start = Clock::now();
  auto engine = credit::make_engine(2024);

  int sdpi_bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int s = 2 + static_cast<int>(credit::uniform01(engine) * 7);
    const credit::ProbVec p(dirichlet(engine, s));
    const credit::ProbVec q(dirichlet(engine, s));
    credit::Kernel::Matrix m(s, s);
    for (int i = 0; i < s; ++i) {
      m.row(i) = dirichlet(engine, s).transpose();
    }
    const credit::Kernel k(m);
    const double before = credit::chi2(p, q);
    const double after = credit::chi2(credit::propagate(p, k), credit::propagate(q, k));
    sdpi_bad += after <= before * (1.0 + 1e-12) + 1e-15 ? 0 : 1;
  }
  c.check(sdpi_bad == 0, "SDPI monotonicity on 1000 random (P, Q, K) triples");

  double tensor_gap = 0.0;
  const credit::ProbVec p{0.3, 0.7};
  const credit::ProbVec q{0.6, 0.4};
  for (int n = 1; n <= 5; ++n) {
    Eigen::VectorXd pn(1 << n);
    Eigen::VectorXd qn(1 << n);
    for (int idx = 0; idx < (1 << n); ++idx) {
      pn[idx] = 1.0;
      qn[idx] = 1.0;
      for (int bit = 0; bit < n; ++bit) {
        pn[idx] *= p[(idx >> bit) & 1];
        qn[idx] *= q[(idx >> bit) & 1];
      }
    }
    const double brute = credit::chi2(credit::ProbVec(pn), credit::ProbVec(qn));
    tensor_gap = std::max(tensor_gap, std::abs(credit::tensorize_chi2(credit::chi2(p, q), n) - brute));
  }
  c.check(tensor_gap <= 1e-10, fmt("tensorization vs explicit product, n <= 5: max gap %.3g", tensor_gap));

  double mult_gap = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> etas(20);
    for (double& e : etas) {
      e = 0.2 + 0.8 * credit::uniform01(engine);
    }
    std::array<int, 3> idx{};
    for (int& i : idx) {
      i = static_cast<int>(credit::uniform01(engine) * 21);
    }
    std::sort(idx.begin(), idx.end());
    mult_gap = std::max(mult_gap, std::abs(credit::attenuation(etas, idx[0], idx[2]) -
                                           credit::attenuation(etas, idx[0], idx[1]) * credit::attenuation(etas, idx[1], idx[2])));
  }
  c.check(mult_gap <= 1e-14, fmt("attenuation multiplicativity: max gap %.3g", mult_gap));

  int refine_bad = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int h = 2 + static_cast<int>(credit::uniform01(engine) * 29);
    std::vector<int> times;
    for (int t = 1; t < h; ++t) {
      if (credit::uniform01(engine) < 0.2) {
        times.push_back(t);
      }
    }
    const credit::Schedule base(h, times);
    const int extra = 1 + static_cast<int>(credit::uniform01(engine) * (h - 1));
    if (std::find(times.begin(), times.end(), extra) != times.end()) {
      continue;
    }
    times.insert(std::upper_bound(times.begin(), times.end(), extra), extra);
    const credit::Schedule refined(h, times);
    refine_bad += credit::worst_case_sample_lb(refined, 0.9, 1.0, 0.1).bound <=
                          credit::worst_case_sample_lb(base, 0.9, 1.0, 0.1).bound
                      ? 0
                      : 1;
  }
  c.check(refine_bad == 0, "monotone refinement of worst_case_sample_lb on 300 random schedules");

  const std::vector<credit::ExperimentParams> params{credit::DecayConfig{},   credit::WidthConfig{},    credit::InspectionConfig{},
                                                     credit::HorizonExperimentConfig{}, credit::MismatchConfig{}, credit::OracleConfig{}};
  const std::array<credit::ExperimentKind, 6> kinds{credit::ExperimentKind::kDecay,   credit::ExperimentKind::kWidth,
                                                    credit::ExperimentKind::kInspection, credit::ExperimentKind::kHorizon,
                                                    credit::ExperimentKind::kMismatch, credit::ExperimentKind::kOracle};
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    credit::ExperimentConfig config;
    config.kind = kinds[i];
    config.master_seed = 31337;
    config.params = params[i];
    const std::string one = csv_of(credit::run_experiment(config, {1}));
    const std::string eight = csv_of(credit::run_experiment(config, {8}));
    c.check(one == eight, std::string("bit-identical CSV at 1 and 8 threads: ") + credit::to_string(kinds[i]));
  }
  const double t = seconds_since(start);
  c.check(t < 120.0, fmt("runtime %.2f s < 120 s", t));
}

}  // namespace

int main() {
  const std::array<std::function<void(Criterion&)>, 10> checks{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                               criterion6, criterion7, criterion8, criterion9, criterion10};
  int failures = 0;
  for (int i = 0; i < 10; ++i) {
    Criterion c{i + 1, {}};
    try {
      checks[static_cast<std::size_t>(i)](c);
    } catch (const std::exception& e) {
      c.check(false, std::string("threw: ") + e.what());
    }
    std::printf("criterion %d: %s\n", c.id, c.ok ? "PASS" : "FAIL");
    for (const auto& line : c.details) {
      std::printf("%s\n", line.c_str());
    }
    failures += c.ok ? 0 : 1;
  }
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
