#pragma once

#include <cstddef>
#include <vector>

namespace relayrate {

// minimize objective . x  subject to  constraints x >= rhs,  x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> constraints;  // m rows of n coefficients
  std::vector<double> rhs;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(constraints.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;     // when Optimal
  double value = 0.0;        // objective . x when Optimal
  std::vector<double> ray;   // improving recession direction when Unbounded
};

// Two-phase dense tableau simplex with Bland's anti-cycling rule.
// Deterministic: identical inputs produce bit-identical outputs.
LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-9);

// Brute-force vertex enumeration: solves every n-subset of the constraint
// rows (nonnegativity facets included) as an equality system and keeps the
// feasible solutions.  Independent of the simplex path; intended as an
// oracle for small programs (num_vars <= 8, num_rows <= 40).
struct VertexList {
  struct Vertex {
    std::vector<double> x;
    double value = 0.0;
  };

  LpStatus status = LpStatus::Infeasible;
  std::vector<Vertex> vertices;   // deduplicated basic feasible points
  std::size_t best_index = 0;     // argmin objective, when Optimal
  double min_value = 0.0;
  std::vector<double> ray;        // improving extreme ray when Unbounded
};

VertexList enumerate_vertices(const LinearProgram& lp, double tol = 1e-7);

}  // namespace relayrate
