#include "schubert/weightspace.hpp"

#include <algorithm>
#include <map>

#include "schubert/errors.hpp"

namespace schubert {

static void enumerate_words(std::vector<int>& counts, Word& prefix, int remaining,
                            std::vector<Word>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    --counts[i];
    prefix.push_back(static_cast<int>(i) + 1);
    enumerate_words(counts, prefix, remaining - 1, out);
    prefix.pop_back();
    ++counts[i];
  }
}

std::vector<Word> words_of_content(const std::vector<int>& counts, int n) {
  int total = 0;
  for (int c : counts) {
    if (c < 0) throw DomainError("negative letter count");
    total += c;
  }
  if (total != n) throw DomainError("letter counts do not sum to the word length");
  std::vector<Word> out;
  std::vector<int> work = counts;
  Word prefix;
  enumerate_words(work, prefix, n, out);
  return out;
}

std::vector<Word> raise_word(const Word& w, int i) {
  std::vector<Word> out;
  for (size_t p = 0; p < w.size(); ++p) {
    if (w[p] != i + 1) continue;
    Word v = w;
    v[p] = i;
    out.push_back(std::move(v));
  }
  return out;
}

int SingularWeightBasis::word_index(const Word& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w) throw DomainError("word not in the weight space");
  return static_cast<int>(it - words.begin());
}

// Exact kernel of the sl2 raising operator on words over {1,2} with the given
// letter counts: basis rows over the lexicographic small-word list.
static Mat<Rat> sl2_kernel(int n1, int n2, std::vector<Word>& small_words) {
  small_words = words_of_content({n1, n2}, n1 + n2);
  if (n2 == 0) return {{Rat(1)}};
  std::vector<Word> targets = words_of_content({n1 + 1, n2 - 1}, n1 + n2);
  Mat<Rat> e1 = zero_matrix<Rat>(static_cast<int>(targets.size()),
                                 static_cast<int>(small_words.size()));
  for (size_t j = 0; j < small_words.size(); ++j)
    for (const Word& rw : raise_word(small_words[j], 1)) {
      auto it = std::lower_bound(targets.begin(), targets.end(), rw);
      e1[it - targets.begin()][j] = e1[it - targets.begin()][j] + Rat(1);
    }
  return kernel(e1);
}

SingularWeightBasis singular_weight_basis(int n, int r, const Partition& mu) {
  if (mu.size() != n) throw DomainError("mu must be a partition of n");
  if (mu.rows() > r) throw DomainError("mu has more than r rows: weight space is empty");
  if (r < 1) throw DomainError("r must be positive");

  SingularWeightBasis b;
  b.n = n;
  b.r = r;
  b.mu = mu;
  std::vector<int> counts(r, 0);
  for (int i = 1; i <= mu.rows(); ++i) counts[i - 1] = mu.part(i);
  b.words = words_of_content(counts, n);

  // Kernel of E_1 through the product split: E_1 only touches the letters
  // {1,2}, so ker E_1 is spanned by sl2 kernel vectors on the {1,2}-subword
  // placed into every arrangement of the letters >= 3.
  const int m = counts[0] + (r >= 2 ? counts[1] : 0);
  std::vector<Word> small_words;
  Mat<Rat> small_ker = sl2_kernel(counts[0], r >= 2 ? counts[1] : 0, small_words);

  // Arrangements: words over {placeholder = 1, letters 3..r shifted to 2..r-1}.
  std::vector<int> arr_counts;
  arr_counts.push_back(m);
  for (int i = 3; i <= r; ++i) arr_counts.push_back(counts[i - 1]);
  std::vector<Word> arrangements = words_of_content(arr_counts, n);

  Mat<Rat> basis;
  for (const Word& arr : arrangements) {
    for (const auto& kv : small_ker) {
      std::vector<Rat> full(b.words.size(), Rat(0));
      for (size_t sj = 0; sj < small_words.size(); ++sj) {
        if (kv[sj] == 0) continue;
        Word w(n);
        int pos = 0;
        for (int p = 0; p < n; ++p)
          w[p] = (arr[p] == 1) ? small_words[sj][pos++] : arr[p] + 1;
        full[b.word_index(w)] = kv[sj];
      }
      basis.push_back(std::move(full));
    }
  }

  // Intersect with ker E_i for i >= 2: exact kernel of E_i applied to the
  // current basis, rows indexed by the target words actually reached.
  for (int i = 2; i < r; ++i) {
    std::map<Word, int> row_of;
    Mat<Rat> ei_b;
    for (size_t j = 0; j < basis.size(); ++j)
      for (size_t wi = 0; wi < b.words.size(); ++wi) {
        if (basis[j][wi] == 0) continue;
        for (const Word& rw : raise_word(b.words[wi], i)) {
          auto [it, inserted] = row_of.try_emplace(rw, static_cast<int>(ei_b.size()));
          if (inserted) ei_b.emplace_back(basis.size(), Rat(0));
          ei_b[it->second][j] = ei_b[it->second][j] + basis[j][wi];
        }
      }
    if (ei_b.empty()) continue;  // letter i+1 absent: E_i vanishes on the space
    Mat<Rat> combos = kernel(ei_b);
    Mat<Rat> next;
    for (const auto& c : combos) {
      std::vector<Rat> v(b.words.size(), Rat(0));
      for (size_t j = 0; j < basis.size(); ++j) {
        if (c[j] == 0) continue;
        for (size_t wi = 0; wi < b.words.size(); ++wi) v[wi] += c[j] * basis[j][wi];
      }
      next.push_back(std::move(v));
    }
    basis = std::move(next);
  }

  b.pivots = rref(basis);
  if (b.pivots.size() != basis.size())
    throw DomainError("singular weight basis construction produced dependent vectors");
  b.vectors = std::move(basis);
  return b;
}

}  // namespace schubert
