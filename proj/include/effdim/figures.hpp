#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace effdim {

struct FigureTable {
  std::string id;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<bool> transition;  ///< per row: the case-transition point
};

/// fig1: (s, Worst(s, 1/2), H^{-1}(s - 1/2)) for s in [1/2, 1].
/// fig2: (t, Worst(1/2, t), H^{-1}(1/2 - t)) for t in [0, 1/2].
/// fig3: (d, f(d), max(0, s-1+H(d)), ratio d) at s = 1/2 for d in [0, 1/2].
/// Grid points are start + k*step plus the interval end; the transition point
/// is inserted as its own flagged row. Throws std::invalid_argument for an
/// unknown id or a step outside (0, 0.01].
FigureTable figure_data(std::string_view which, double step);

/// s in [1/2, 1] with 1 - H(1 - 2^{s-1}) = 1/2, where Worst(s, 1/2) changes branch.
double fig1_transition();

/// Header row, 6 significant digits, trailing 0/1 transition column.
std::string figure_csv(const FigureTable& table);

}  // namespace effdim
