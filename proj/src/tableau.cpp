#include "schubert/tableau.hpp"

#include <algorithm>
#include <sstream>

#include "schubert/errors.hpp"

namespace schubert {

StandardTableau::StandardTableau(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
  std::vector<int> parts;
  for (const auto& row : rows_) parts.push_back(static_cast<int>(row.size()));
  shape_ = Partition(parts);
  if (shape_.rows() != static_cast<int>(rows_.size()))
    throw DomainError("tableau rows must have weakly decreasing, positive lengths");

  int n = shape_.size();
  std::vector<bool> seen(n + 1, false);
  for (size_t i = 0; i < rows_.size(); ++i) {
    for (size_t j = 0; j < rows_[i].size(); ++j) {
      int e = rows_[i][j];
      if (e < 1 || e > n || seen[e]) throw DomainError("tableau entries must be exactly 1..n");
      seen[e] = true;
      if (j > 0 && rows_[i][j - 1] >= e) throw DomainError("tableau rows must strictly increase");
      if (i > 0 && rows_[i - 1][j] >= e) throw DomainError("tableau columns must strictly increase");
    }
  }
}

int StandardTableau::row_of(int a) const {
  for (size_t i = 0; i < rows_.size(); ++i)
    for (int e : rows_[i])
      if (e == a) return static_cast<int>(i) + 1;
  throw DomainError("entry not in tableau");
}

int StandardTableau::column_of(int a) const {
  for (const auto& row : rows_)
    for (size_t j = 0; j < row.size(); ++j)
      if (row[j] == a) return static_cast<int>(j) + 1;
  throw DomainError("entry not in tableau");
}

std::vector<int> StandardTableau::content_vector() const {
  std::vector<int> c(n());
  for (size_t i = 0; i < rows_.size(); ++i)
    for (size_t j = 0; j < rows_[i].size(); ++j)
      c[rows_[i][j] - 1] = static_cast<int>(j) - static_cast<int>(i);
  return c;
}

StandardTableau StandardTableau::restrict(int k) const {
  if (k < 1 || k > n()) throw DomainError("restriction index out of range");
  std::vector<std::vector<int>> out;
  for (const auto& row : rows_) {
    std::vector<int> r;
    for (int e : row)
      if (e <= k) r.push_back(e);
    if (!r.empty()) out.push_back(std::move(r));
  }
  return StandardTableau(std::move(out));
}

StandardTableau StandardTableau::with_entry_added(int row) const {
  std::vector<std::vector<int>> out = rows_;
  int next = n() + 1;
  if (row == static_cast<int>(out.size()) + 1) out.push_back({next});
  else if (row >= 1 && row <= static_cast<int>(out.size())) out[row - 1].push_back(next);
  else throw DomainError("cannot add entry in row " + std::to_string(row));
  return StandardTableau(std::move(out));
}

std::string StandardTableau::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (i) os << " | ";
    for (size_t j = 0; j < rows_[i].size(); ++j) os << (j ? " " : "") << rows_[i][j];
  }
  os << ']';
  return os.str();
}

static void grow(const Partition& mu, const StandardTableau& partial,
                 std::vector<StandardTableau>& out) {
  if (partial.n() == mu.size()) {
    out.push_back(partial);
    return;
  }
  for (int row : partial.shape().addable_rows()) {
    Partition bigger = partial.shape().with_box_added(row);
    if (mu.contains(bigger)) grow(mu, partial.with_entry_added(row), out);
  }
}

std::vector<StandardTableau> enumerate_syt(const Partition& mu) {
  std::vector<StandardTableau> out;
  if (mu.empty()) {
    out.emplace_back();
    return out;
  }
  grow(mu, StandardTableau(std::vector<std::vector<int>>{{1}}), out);
  std::sort(out.begin(), out.end(), [](const StandardTableau& a, const StandardTableau& b) {
    return a.content_vector() < b.content_vector();
  });
  return out;
}

const StandardTableau* find_by_contents(const std::vector<StandardTableau>& tableaux,
                                        const std::vector<int>& contents) {
  for (const auto& t : tableaux)
    if (t.content_vector() == contents) return &t;
  return nullptr;
}

}  // namespace schubert
