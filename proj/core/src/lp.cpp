#include "relayrate/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "relayrate/errors.hpp"

namespace relayrate {

namespace {

constexpr double kPivotTol = 1e-11;

void check_shape(const LinearProgram& lp) {
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  if (n < 1 || m < 1 || lp.rhs.size() != lp.constraints.size()) {
    throw Error(Errc::LengthMismatch, "inconsistent LP dimensions");
  }
  for (const auto& row : lp.constraints) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(Errc::LengthMismatch, "constraint row width mismatch");
    }
  }
  for (double v : lp.objective) {
    if (!std::isfinite(v)) {
      throw Error(Errc::NumericalBreakdown, "non-finite objective");
    }
  }
  for (double v : lp.rhs) {
    if (!std::isfinite(v)) {
      throw Error(Errc::NumericalBreakdown, "non-finite rhs");
    }
  }
}

// Dense simplex tableau over columns [structural | slack/surplus | artificial],
// kept as B^{ -1 }[A | b] with an explicit basis list.
struct Tableau {
  int rows = 0;
  int cols = 0;  // without rhs
  std::vector<std::vector<double>> t;  // rows x (cols + 1)
  std::vector<int> basis;              // basic column per row

  double& rhs(int i) { return t[i][cols]; }

  void pivot(int row, int col) {
    const double p = t[row][col];
    for (double& v : t[row]) v /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == row) continue;
      const double factor = t[i][col];
      if (factor == 0.0) continue;
      for (int j = 0; j <= cols; ++j) t[i][j] -= factor * t[row][j];
    }
    basis[row] = col;
  }
};

// Bland's rule: entering = lowest-index column with reduced cost < -tol;
// leaving = lowest basic index among min-ratio rows.  Returns false when no
// entering column exists (current basis optimal).  Throws on unboundedness
// via *unbounded_col.
bool simplex_iterate(Tableau& tab, const std::vector<double>& cost,
                     const std::vector<char>& allowed, double tol,
                     int* unbounded_col) {
  // Reduced costs from the current basis.
  int entering = -1;
  for (int j = 0; j < tab.cols; ++j) {
    if (!allowed[j]) continue;
    double z = cost[j];
    for (int i = 0; i < tab.rows; ++i) {
      const double c_b = cost[tab.basis[i]];
      if (c_b != 0.0) z -= c_b * tab.t[i][j];
    }
    if (z < -tol) {
      entering = j;
      break;
    }
  }
  if (entering < 0) return false;

  int leaving = -1;
  double best_ratio = 0.0;
  for (int i = 0; i < tab.rows; ++i) {
    const double a = tab.t[i][entering];
    if (a <= kPivotTol) continue;
    const double ratio = tab.rhs(i) / a;
    if (leaving < 0 || ratio < best_ratio - kPivotTol ||
        (std::abs(ratio - best_ratio) <= kPivotTol &&
         tab.basis[i] < tab.basis[leaving])) {
      leaving = i;
      best_ratio = ratio;
    }
  }
  if (leaving < 0) {
    *unbounded_col = entering;
    return false;
  }
  tab.pivot(leaving, entering);
  return true;
}

void run_simplex(Tableau& tab, const std::vector<double>& cost,
                 const std::vector<char>& allowed, double tol,
                 int* unbounded_col) {
  *unbounded_col = -1;
  const long max_iters = 20000L + 200L * (tab.rows + tab.cols);
  for (long iter = 0; iter < max_iters; ++iter) {
    if (!simplex_iterate(tab, cost, allowed, tol, unbounded_col)) return;
  }
  throw Error(Errc::NumericalBreakdown, "simplex iteration limit exceeded");
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol) {
  check_shape(lp);
  const int n = lp.num_vars();
  const int m = lp.num_rows();

  // Row i becomes  A_i x - s_i = b_i  (artificial needed) when b_i >= 0, or
  // -A_i x + s_i = -b_i  (s_i starts basic) when b_i < 0.
  std::vector<char> needs_artificial(m, 0);
  int num_artificials = 0;
  for (int i = 0; i < m; ++i) {
    if (lp.rhs[i] >= 0.0) {
      needs_artificial[i] = 1;
      ++num_artificials;
    }
  }

  Tableau tab;
  tab.rows = m;
  tab.cols = n + m + num_artificials;
  tab.t.assign(m, std::vector<double>(tab.cols + 1, 0.0));
  tab.basis.assign(m, -1);

  int art = n + m;
  for (int i = 0; i < m; ++i) {
    const double sign = needs_artificial[i] ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) tab.t[i][j] = sign * lp.constraints[i][j];
    tab.t[i][n + i] = -sign;
    tab.rhs(i) = sign * lp.rhs[i];
    if (needs_artificial[i]) {
      tab.t[i][art] = 1.0;
      tab.basis[i] = art++;
    } else {
      tab.basis[i] = n + i;
    }
  }

  std::vector<char> allowed(tab.cols, 1);
  int unbounded_col = -1;

  if (num_artificials > 0) {
    std::vector<double> phase1(tab.cols, 0.0);
    for (int j = n + m; j < tab.cols; ++j) phase1[j] = 1.0;
    run_simplex(tab, phase1, allowed, tol, &unbounded_col);

    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] >= n + m) infeasibility += tab.rhs(i);
    }
    if (infeasibility > tol * (1.0 + std::abs(infeasibility))) {
      return LpSolution{LpStatus::Infeasible, {}, 0.0, {}};
    }

    // Drive artificials out of the basis; rows that cannot pivot are
    // redundant and dropped.
    for (int i = static_cast<int>(tab.basis.size()) - 1; i >= 0; --i) {
      if (tab.basis[i] < n + m) continue;
      int col = -1;
      for (int j = 0; j < n + m; ++j) {
        if (std::abs(tab.t[i][j]) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        tab.t.erase(tab.t.begin() + i);
        tab.basis.erase(tab.basis.begin() + i);
        --tab.rows;
      }
    }
    for (int j = n + m; j < tab.cols; ++j) allowed[j] = 0;
  }

  std::vector<double> phase2(tab.cols, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  run_simplex(tab, phase2, allowed, tol, &unbounded_col);

  if (unbounded_col >= 0) {
    // Recession direction: entering variable grows, basics adjust.
    std::vector<double> full(tab.cols, 0.0);
    full[unbounded_col] = 1.0;
    for (int i = 0; i < tab.rows; ++i) {
      full[tab.basis[i]] = -tab.t[i][unbounded_col];
    }
    std::vector<double> ray(full.begin(), full.begin() + n);
    return LpSolution{LpStatus::Unbounded, {}, 0.0, std::move(ray)};
  }

  std::vector<double> x(n, 0.0);
  for (int i = 0; i < tab.rows; ++i) {
    if (tab.basis[i] < n) x[tab.basis[i]] = tab.rhs(i);
  }
  double value = 0.0;
  for (int j = 0; j < n; ++j) value += lp.objective[j] * x[j];
  return LpSolution{LpStatus::Optimal, std::move(x), value, {}};
}

namespace {

// Solves square system M y = r by Gaussian elimination with partial
// pivoting; returns false when singular.
bool solve_square(std::vector<std::vector<double>> mat, std::vector<double> r,
                  std::vector<double>* out) {
  const int n = static_cast<int>(r.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int i = col + 1; i < n; ++i) {
      if (std::abs(mat[i][col]) > std::abs(mat[pivot][col])) pivot = i;
    }
    if (std::abs(mat[pivot][col]) < 1e-9) return false;
    std::swap(mat[pivot], mat[col]);
    std::swap(r[pivot], r[col]);
    for (int i = col + 1; i < n; ++i) {
      const double f = mat[i][col] / mat[col][col];
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) mat[i][j] -= f * mat[col][j];
      r[i] -= f * r[col];
    }
  }
  out->assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double v = r[i];
    for (int j = i + 1; j < n; ++j) v -= mat[i][j] * (*out)[j];
    (*out)[i] = v / mat[i][i];
  }
  return true;
}

// One-dimensional null space of a (n-1) x n system, when the rows have full
// rank; returns false otherwise.
bool null_direction(std::vector<std::vector<double>> mat,
                    std::vector<double>* out) {
  const int rows = static_cast<int>(mat.size());
  const int n = rows + 1;
  std::vector<int> pivot_col(rows, -1);
  int col = 0;
  for (int row = 0; row < rows; ++row) {
    int best = -1;
    while (col < n) {
      best = row;
      for (int i = row + 1; i < rows; ++i) {
        if (std::abs(mat[i][col]) > std::abs(mat[best][col])) best = i;
      }
      if (std::abs(mat[best][col]) >= 1e-9) break;
      ++col;
    }
    if (col >= n) return false;  // rank deficient
    std::swap(mat[best], mat[row]);
    for (int i = 0; i < rows; ++i) {
      if (i == row) continue;
      const double f = mat[i][col] / mat[row][col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) mat[i][j] -= f * mat[row][j];
    }
    pivot_col[row] = col++;
  }
  int free_col = -1;
  for (int j = 0, r = 0; j < n; ++j) {
    if (r < rows && pivot_col[r] == j) {
      ++r;
    } else {
      free_col = j;
      break;
    }
  }
  if (free_col < 0) return false;
  out->assign(n, 0.0);
  (*out)[free_col] = 1.0;
  for (int row = 0; row < rows; ++row) {
    (*out)[pivot_col[row]] = -mat[row][free_col] / mat[row][pivot_col[row]];
  }
  double norm = 0.0;
  for (double v : *out) norm = std::max(norm, std::abs(v));
  for (double& v : *out) v /= norm;
  return true;
}

template <typename Fn>
void for_each_combination(int total, int pick, Fn&& fn) {
  if (pick == 0) return;
  std::vector<int> idx(pick);
  for (int i = 0; i < pick; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = pick - 1;
    while (i >= 0 && idx[i] == total - pick + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < pick; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

VertexList enumerate_vertices(const LinearProgram& lp, double tol) {
  check_shape(lp);
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  if (n > 8 || m > 40) {
    throw Error(Errc::DimensionTooLarge,
                "vertex enumeration limited to 8 variables / 40 constraints");
  }

  // All facets: the m constraint rows followed by the n nonnegativity rows.
  std::vector<std::vector<double>> normals = lp.constraints;
  std::vector<double> offsets = lp.rhs;
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    normals.push_back(std::move(e));
    offsets.push_back(0.0);
  }
  const int total = m + n;

  auto feasible = [&](const std::vector<double>& x) {
    for (int i = 0; i < total; ++i) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) lhs += normals[i][j] * x[j];
      if (lhs < offsets[i] - tol) return false;
    }
    return true;
  };

  VertexList out;
  for_each_combination(total, n, [&](const std::vector<int>& idx) {
    std::vector<std::vector<double>> mat;
    std::vector<double> r;
    mat.reserve(n);
    for (int i : idx) {
      mat.push_back(normals[i]);
      r.push_back(offsets[i]);
    }
    std::vector<double> x;
    if (!solve_square(std::move(mat), std::move(r), &x)) return;
    if (!feasible(x)) return;
    for (const auto& v : out.vertices) {
      double dist = 0.0;
      for (int j = 0; j < n; ++j) dist = std::max(dist, std::abs(v.x[j] - x[j]));
      if (dist <= tol) return;  // duplicate basic point
    }
    double value = 0.0;
    for (int j = 0; j < n; ++j) value += lp.objective[j] * x[j];
    out.vertices.push_back({std::move(x), value});
  });

  if (out.vertices.empty()) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // Candidate extreme rays of the recession cone from (n-1)-subsets of the
  // facet normals; an improving feasible direction certifies unboundedness.
  auto try_ray = [&](std::vector<double> d) {
    for (double sign : {1.0, -1.0}) {
      bool ok = true;
      for (int i = 0; i < total && ok; ++i) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += normals[i][j] * d[j] * sign;
        if (lhs < -1e-9) ok = false;
      }
      if (!ok) continue;
      double slope = 0.0;
      for (int j = 0; j < n; ++j) slope += lp.objective[j] * d[j] * sign;
      if (slope < -1e-9) {
        out.status = LpStatus::Unbounded;
        out.ray.resize(n);
        for (int j = 0; j < n; ++j) out.ray[j] = d[j] * sign;
        return true;
      }
    }
    return false;
  };

  bool unbounded = false;
  if (n == 1) {
    unbounded = try_ray({1.0});
  } else {
    for_each_combination(total, n - 1, [&](const std::vector<int>& idx) {
      if (unbounded) return;
      std::vector<std::vector<double>> mat;
      mat.reserve(n - 1);
      for (int i : idx) mat.push_back(normals[i]);
      std::vector<double> d;
      if (!null_direction(std::move(mat), &d)) return;
      unbounded = try_ray(std::move(d));
    });
  }
  if (unbounded) return out;

  out.status = LpStatus::Optimal;
  out.best_index = 0;
  out.min_value = out.vertices[0].value;
  for (std::size_t i = 1; i < out.vertices.size(); ++i) {
    if (out.vertices[i].value < out.min_value) {
      out.min_value = out.vertices[i].value;
      out.best_index = i;
    }
  }
  return out;
}

}  // namespace relayrate
