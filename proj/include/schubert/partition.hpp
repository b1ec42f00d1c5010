#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace schubert {

/// Integer partition, stored without trailing zeros.  The box bounds (r, d)
/// are contextual and passed to the operations that need them.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int rows() const { return static_cast<int>(parts_.size()); }
  /// Part i (1-indexed); zero beyond the last row.
  int part(int i) const;
  int size() const;  ///< |mu|, the number of boxes
  bool empty() const { return parts_.empty(); }

  bool fits_in_box(int r, int cols) const;
  bool contains(const Partition& other) const;

  /// Rows where a box may be added keeping a valid partition (1-indexed).
  std::vector<int> addable_rows() const;
  /// Rows where a box may be removed keeping a valid partition (1-indexed).
  std::vector<int> removable_rows() const;
  Partition with_box_added(int row) const;
  Partition with_box_removed(int row) const;

  /// Content (column - row) of the box added in `row`, 1-indexed rows/columns.
  int added_box_content(int row) const { return part(row) + 1 - row; }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

  std::string to_string() const;  ///< "(2,1)"

 private:
  std::vector<int> parts_;  // weakly decreasing, no trailing zeros
  void normalize();
};

/// The 180-degree rotated complement of mu in the r x (d-r) box.
Partition complement(const Partition& mu, int r, int d);

/// l_i = number of boxes of mu strictly below row i, for i = 1..r-1.
std::vector<int> l_vector(const Partition& mu, int r);

/// Number of standard tableaux of shape mu (chain-counting recursion).
long long syt_count(const Partition& mu);

/// All partitions of n fitting in `max_rows` rows (and, if >= 0, `max_cols` columns).
std::vector<Partition> partitions_of(int n, int max_rows, int max_cols = -1);

}  // namespace schubert
