#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "depthbench/point_cloud.h"

namespace depthbench {

/// Dense square cost matrix, row-major. Row = source point, column = target.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t n, std::vector<double> costs);

  /// Pairwise Euclidean distances between two equal-size point sets.
  static CostMatrix euclidean(std::span<const Point3> sources, std::span<const Point3> targets);

  std::size_t size() const { return n_; }
  double operator()(std::size_t row, std::size_t col) const { return costs_[row * n_ + col]; }
  std::span<const double> row(std::size_t r) const { return {costs_.data() + r * n_, n_}; }
  double max_cost() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> costs_;
};

/// A bijection from sources to targets and its total cost.
struct Assignment {
  std::vector<std::size_t> target_of;  ///< target_of[source] = target
  double cost = 0.0;

  double mean_cost() const {
    return target_of.empty() ? 0.0 : cost / static_cast<double>(target_of.size());
  }
};

/// Sum of cost(i, target_of[i]) in source order, compensated.
double assignment_cost(const CostMatrix& cost, std::span<const std::size_t> target_of);

/// Provably optimal assignment (Hungarian method with potentials), O(n^3).
Assignment hungarian(const CostMatrix& cost);

struct AuctionSchedule {
  double start_epsilon = 0.0;
  /// Scaling stops after the first phase run with epsilon below this value.
  double final_epsilon = 0.0;
  double divisor = 4.0;
};

/// Forward auction with epsilon scaling (Gauss-Seidel bidding, FIFO order,
/// lowest-index tie break). The result is a feasible bijection whose cost is
/// within n * final epsilon of the optimum. Throws ConvergenceError if a phase
/// exceeds its bid budget.
Assignment auction(const CostMatrix& cost, const AuctionSchedule& schedule);

}  // namespace depthbench
