#include "depthbench/assignment.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "depthbench/errors.h"
#include "depthbench/summation.h"

namespace depthbench {

namespace {
constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
}  // namespace

CostMatrix::CostMatrix(std::size_t n, std::vector<double> costs) : n_(n), costs_(std::move(costs)) {
  if (costs_.size() != n_ * n_) throw InvalidArgument("CostMatrix: expected n*n entries");
}

CostMatrix CostMatrix::euclidean(std::span<const Point3> sources, std::span<const Point3> targets) {
  if (sources.size() != targets.size()) {
    throw InvalidArgument("CostMatrix: point sets differ in size (" + std::to_string(sources.size()) +
                          " vs " + std::to_string(targets.size()) + ")");
  }
  const std::size_t n = sources.size();
  std::vector<double> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[i * n + j] = std::sqrt(squared_distance(sources[i], targets[j]));
  }
  return CostMatrix(n, std::move(c));
}

double CostMatrix::max_cost() const {
  return costs_.empty() ? 0.0 : *std::max_element(costs_.begin(), costs_.end());
}

double assignment_cost(const CostMatrix& cost, std::span<const std::size_t> target_of) {
  CompensatedSum s;
  for (std::size_t i = 0; i < target_of.size(); ++i) s.add(cost(i, target_of[i]));
  return s.value();
}

Assignment hungarian(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  Assignment result;
  if (n == 0) return result;

  // Shortest augmenting path with row/column potentials; 1-based with a
  // virtual column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  result.target_of.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) result.target_of[row_of[j] - 1] = j - 1;
  result.cost = assignment_cost(cost, result.target_of);
  return result;
}

Assignment auction(const CostMatrix& cost, const AuctionSchedule& schedule) {
  const std::size_t n = cost.size();
  Assignment result;
  if (n == 0) return result;
  if (!(schedule.final_epsilon > 0.0) || !(schedule.divisor > 1.0)) {
    throw InvalidArgument("auction: final epsilon must be positive and divisor > 1");
  }

  const double spread = cost.max_cost();
  std::vector<std::size_t> owner(n, kUnassigned);   // object -> person
  std::vector<std::size_t> target(n, kUnassigned);  // person -> object
  if (spread == 0.0) {
    for (std::size_t i = 0; i < n; ++i) target[i] = i;
    result.target_of = std::move(target);
    result.cost = 0.0;
    return result;
  }

  std::vector<double> price(n, 0.0);
  double epsilon = schedule.start_epsilon > 0.0 ? schedule.start_epsilon : spread / 8.0;
  for (;;) {
    std::fill(owner.begin(), owner.end(), kUnassigned);
    std::fill(target.begin(), target.end(), kUnassigned);
    std::deque<std::size_t> unassigned(n);
    for (std::size_t i = 0; i < n; ++i) unassigned[i] = i;

    // Every bid raises a price by at least epsilon, and no price can climb
    // more than about twice the spread above the cheapest unbid object.
    const double budget = 4.0 * static_cast<double>(n) * (spread / epsilon + 2.0);
    std::size_t bids = 0;

    while (!unassigned.empty()) {
      const std::size_t person = unassigned.front();
      unassigned.pop_front();

      const auto row = cost.row(person);
      double best = -std::numeric_limits<double>::infinity();
      double second = best;
      std::size_t best_object = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const double value = -row[j] - price[j];
        if (value > best) {
          second = best;
          best = value;
          best_object = j;
        } else if (value > second) {
          second = value;
        }
      }
      const double increment = (n == 1 ? 0.0 : best - second) + epsilon;
      price[best_object] += increment;

      if (owner[best_object] != kUnassigned) {
        target[owner[best_object]] = kUnassigned;
        unassigned.push_back(owner[best_object]);
      }
      owner[best_object] = person;
      target[person] = best_object;

      if (static_cast<double>(++bids) > budget) {
        throw ConvergenceError("auction: phase with epsilon " + std::to_string(epsilon) +
                               " exceeded its bid budget of " + std::to_string(budget));
      }
    }

    if (epsilon < schedule.final_epsilon) break;
    epsilon /= schedule.divisor;
  }

  result.target_of = std::move(target);
  result.cost = assignment_cost(cost, result.target_of);
  return result;
}

}  // namespace depthbench
