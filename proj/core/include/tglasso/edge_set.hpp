#pragma once

#include <set>
#include <utility>

#include "tglasso/matrix_kernels.hpp"

namespace tglasso {

/// Undirected graph on p nodes; edges stored as (i, j) with i < j.
class EdgeSet {
public:
  using Edge = std::pair<Index, Index>;

  EdgeSet() = default;
  explicit EdgeSet(Index p) : p_(p) {}

  /// Adds {i, j}. Throws InvalidParams on a self-loop or out-of-range node.
  void add(Index i, Index j);
  [[nodiscard]] bool contains(Index i, Index j) const;

  [[nodiscard]] Index p() const noexcept { return p_; }
  [[nodiscard]] std::size_t size() const noexcept { return edges_.size(); }
  [[nodiscard]] bool empty() const noexcept { return edges_.empty(); }
  [[nodiscard]] const std::set<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] auto begin() const { return edges_.begin(); }
  [[nodiscard]] auto end() const { return edges_.end(); }

  /// Number of unordered node pairs, p (p - 1) / 2.
  [[nodiscard]] std::size_t pair_count() const noexcept {
    return static_cast<std::size_t>(p_) * static_cast<std::size_t>(p_ > 0 ? p_ - 1 : 0) / 2;
  }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

private:
  Index p_ = 0;
  std::set<Edge> edges_;
};

}  // namespace tglasso
