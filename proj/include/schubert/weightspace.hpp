#pragma once

#include <vector>

#include "schubert/linalg.hpp"
#include "schubert/partition.hpp"
#include "schubert/scalar.hpp"

namespace schubert {

/// Tensor word: letters in 1..r, one per tensor factor.
using Word = std::vector<int>;

/// All words of length n over 1..r with letter i appearing counts[i-1] times,
/// in lexicographic order.
std::vector<Word> words_of_content(const std::vector<int>& counts, int n);

/// Images of w under the raising operator E_i = sum_a e_{i,i+1}^{(a)}: one
/// word per position carrying the letter i+1, that letter lowered to i.
std::vector<Word> raise_word(const Word& w, int i);

/// Exact basis of the singular vectors of weight mu in (C^r)^{otimes n}: the
/// joint kernel of the raising operators E_1..E_{r-1} inside the weight-mu
/// subspace.  Stored in reduced row echelon form over the lexicographic word
/// basis, so coordinates against the basis are read off the pivot columns.
struct SingularWeightBasis {
  int n = 0;
  int r = 0;
  Partition mu;
  std::vector<Word> words;  ///< weight-mu words, lexicographic
  Mat<Rat> vectors;         ///< rows = basis vectors, reduced echelon form
  std::vector<int> pivots;  ///< pivot word index of each basis vector

  int dim() const { return static_cast<int>(vectors.size()); }
  int word_index(const Word& w) const;

  /// Coordinates of a vector that lies in the span (entries at the pivots).
  std::vector<Rat> coordinates(const std::vector<Rat>& v) const {
    std::vector<Rat> out;
    out.reserve(pivots.size());
    for (int p : pivots) out.push_back(v[p]);
    return out;
  }
};

SingularWeightBasis singular_weight_basis(int n, int r, const Partition& mu);

}  // namespace schubert
