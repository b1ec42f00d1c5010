#include "schubert/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "schubert/errors.hpp"

namespace schubert {

Partition::Partition(std::initializer_list<int> parts) : parts_(parts) { normalize(); }
Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) { normalize(); }

void Partition::normalize() {
  for (size_t i = 1; i < parts_.size(); ++i)
    if (parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
  for (int p : parts_)
    if (p < 0) throw DomainError("partition parts must be nonnegative");
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

int Partition::part(int i) const {
  if (i < 1) throw DomainError("partition rows are 1-indexed");
  return i <= rows() ? parts_[i - 1] : 0;
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool Partition::fits_in_box(int r, int cols) const {
  return rows() <= r && (parts_.empty() || parts_[0] <= cols);
}

bool Partition::contains(const Partition& other) const {
  for (int i = 1; i <= other.rows(); ++i)
    if (part(i) < other.part(i)) return false;
  return true;
}

std::vector<int> Partition::addable_rows() const {
  std::vector<int> out;
  for (int i = 1; i <= rows() + 1; ++i)
    if (i == 1 || part(i) < part(i - 1)) out.push_back(i);
  return out;
}

std::vector<int> Partition::removable_rows() const {
  std::vector<int> out;
  for (int i = 1; i <= rows(); ++i)
    if (part(i) > part(i + 1)) out.push_back(i);
  return out;
}

Partition Partition::with_box_added(int row) const {
  if (row < 1 || row > rows() + 1 || (row > 1 && part(row) >= part(row - 1)))
    throw DomainError("cannot add a box in row " + std::to_string(row));
  std::vector<int> p = parts_;
  if (row > rows()) p.push_back(1); else p[row - 1] += 1;
  return Partition(std::move(p));
}

Partition Partition::with_box_removed(int row) const {
  if (row < 1 || row > rows() || part(row) <= part(row + 1))
    throw DomainError("cannot remove a box in row " + std::to_string(row));
  std::vector<int> p = parts_;
  p[row - 1] -= 1;
  return Partition(std::move(p));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

Partition complement(const Partition& mu, int r, int d) {
  if (d <= r) throw DomainError("need d > r for the r x (d-r) box");
  if (!mu.fits_in_box(r, d - r))
    throw DomainError("partition " + mu.to_string() + " does not fit in the " +
                      std::to_string(r) + " x " + std::to_string(d - r) + " box");
  std::vector<int> p(r);
  for (int i = 1; i <= r; ++i) p[i - 1] = (d - r) - mu.part(r + 1 - i);
  return Partition(std::move(p));
}

std::vector<int> l_vector(const Partition& mu, int r) {
  if (mu.rows() > r) throw DomainError("partition has more than r rows");
  std::vector<int> l(std::max(0, r - 1));
  for (int i = 1; i < r; ++i) {
    int s = 0;
    for (int j = i + 1; j <= mu.rows(); ++j) s += mu.part(j);
    l[i - 1] = s;
  }
  return l;
}

long long syt_count(const Partition& mu) {
  static std::map<std::vector<int>, long long> memo;
  if (mu.empty()) return 1;
  auto it = memo.find(mu.parts());
  if (it != memo.end()) return it->second;
  long long total = 0;
  for (int row : mu.removable_rows()) total += syt_count(mu.with_box_removed(row));
  memo[mu.parts()] = total;
  return total;
}

static void gen_partitions(int n, int max_part, int max_rows, std::vector<int>& cur,
                           std::vector<Partition>& out) {
  if (n == 0) {
    out.emplace_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) >= max_rows) return;
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(n - p, p, max_rows, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions_of(int n, int max_rows, int max_cols) {
  std::vector<Partition> out;
  std::vector<int> cur;
  int cap = max_cols < 0 ? n : std::min(n, max_cols);
  if (n == 0) out.emplace_back();
  else gen_partitions(n, cap, max_rows, cur, out);
  return out;
}

}  // namespace schubert
