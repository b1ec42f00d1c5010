#pragma once

#include <string>
#include <vector>

#include "schubert/partition.hpp"

namespace schubert {

/// Standard Young tableau: an injective filling of the diagram of `shape`
/// by 1..n, increasing along rows and columns.
class StandardTableau {
 public:
  StandardTableau() = default;
  /// Construct from row-lists of entries; validated.
  explicit StandardTableau(std::vector<std::vector<int>> rows);

  const Partition& shape() const { return shape_; }
  int n() const { return shape_.size(); }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  /// Row containing entry a (1-indexed).
  int row_of(int a) const;
  /// Column containing entry a (1-indexed).
  int column_of(int a) const;

  /// Content (column - row) of the box containing each of 1..n.
  std::vector<int> content_vector() const;

  /// Tableau holding the entries 1..k only.
  StandardTableau restrict(int k) const;

  /// The unique extension placing n+1 so the shape becomes `target`.
  StandardTableau with_entry_added(int row) const;

  bool operator==(const StandardTableau& o) const { return rows_ == o.rows_; }
  bool operator!=(const StandardTableau& o) const { return !(*this == o); }

  std::string to_string() const;  ///< "[1 3 | 2]"

 private:
  Partition shape_;
  std::vector<std::vector<int>> rows_;
};

/// All standard tableaux of shape mu, ordered lexicographically by content
/// vector (deterministic certificate order).
std::vector<StandardTableau> enumerate_syt(const Partition& mu);

/// The tableau of shape mu with the given content vector, if any.
/// Contents determine the tableau uniquely when one exists.
const StandardTableau* find_by_contents(const std::vector<StandardTableau>& tableaux,
                                        const std::vector<int>& contents);

}  // namespace schubert
