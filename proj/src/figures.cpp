#include "effdim/figures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "effdim/entropy.hpp"

namespace effdim {

namespace {

std::vector<double> grid(double start, double end, double step) {
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double x = start + static_cast<double>(k) * step;
    if (x > end - 1e-12) break;
    out.push_back(x);
  }
  out.push_back(end);
  return out;
}

FigureTable tabulate(std::string id, std::vector<std::string> columns, double start, double end, double step,
                     double transition, const std::function<std::vector<double>(double)>& row) {
  FigureTable table;
  table.id = std::move(id);
  table.columns = std::move(columns);
  std::vector<double> xs = grid(start, end, step);
  xs.push_back(transition);
  std::stable_sort(xs.begin(), xs.end());
  for (double x : xs) {
    std::vector<double> values{x};
    for (double v : row(x)) values.push_back(v);
    table.rows.push_back(std::move(values));
    table.transition.push_back(x == transition);
  }
  return table;
}

}  // namespace

double fig1_transition() {
  double lo = 0.5;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (critical_profile(mid).t_star < 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

FigureTable figure_data(std::string_view which, double step) {
  if (!(step > 0.0 && step <= 0.01)) throw std::invalid_argument(fmt::format("grid step {} outside (0, 0.01]", step));
  if (which == "fig1") {
    return tabulate("fig1", {"s", "worst", "lower"}, 0.5, 1.0, step, fig1_transition(), [](double s) {
      return std::vector<double>{worst_distance(s, 0.5), entropy_inv(std::max(0.0, s - 0.5))};
    });
  }
  if (which == "fig2") {
    const double t_star = critical_profile(0.5).t_star;
    return tabulate("fig2", {"t", "worst", "lower"}, 0.0, 0.5, step, t_star, [](double t) {
      return std::vector<double>{worst_distance(0.5, t), entropy_inv(std::max(0.0, 0.5 - t))};
    });
  }
  if (which == "fig3") {
    const CriticalProfile profile = critical_profile(0.5);
    const double ratio = *profile.ratio;
    return tabulate("fig3", {"d", "f", "floor", "chord"}, 0.0, 0.5, step, profile.c, [ratio](double d) {
      return std::vector<double>{f_envelope(0.5, d), std::max(0.0, -0.5 + binary_entropy(d)), ratio * d};
    });
  }
  throw std::invalid_argument(fmt::format("unknown figure '{}' (expected fig1, fig2 or fig3)", which));
}

std::string figure_csv(const FigureTable& table) {
  std::string out;
  for (const auto& c : table.columns) out += c + ",";
  out += "transition\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (double v : table.rows[i]) out += fmt::format("{:.6g},", v);
    out += table.transition[i] ? "1\n" : "0\n";
  }
  return out;
}

}  // namespace effdim
