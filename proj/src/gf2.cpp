#include "lwheel/gf2.hpp"

#include <algorithm>
#include <utility>

#include "lwheel/errors.hpp"

namespace lwheel {

GF2Matrix::GF2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

GF2Matrix::GF2Matrix(std::initializer_list<std::initializer_list<int>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  *this = GF2Matrix(rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw InputError("GF2Matrix: ragged row initializer");
    std::size_t c = 0;
    for (int value : row) set(r, c++, value != 0);
    ++r;
  }
}

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void GF2Matrix::set(std::size_t r, std::size_t c, bool value) {
  std::uint64_t& word = bits_[r * words_ + c / 64];
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  if (value) {
    word |= mask;
  } else {
    word &= ~mask;
  }
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

std::size_t gf2_rank(const GF2Matrix& m) {
  std::vector<std::uint64_t> bits = m.bits_;
  const std::size_t words = m.words_;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols_ && rank < m.rows_; ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t mask = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < m.rows_ && !(bits[pivot * words + w] & mask)) ++pivot;
    if (pivot == m.rows_) continue;
    if (pivot != rank) {
      std::swap_ranges(bits.begin() + pivot * words, bits.begin() + (pivot + 1) * words,
                       bits.begin() + rank * words);
    }
    const std::uint64_t* prow = bits.data() + rank * words;
    for (std::size_t r = rank + 1; r < m.rows_; ++r) {
      std::uint64_t* row = bits.data() + r * words;
      if (!(row[w] & mask)) continue;
      // Words left of w are already zero in the pivot row.
      for (std::size_t i = w; i < words; ++i) row[i] ^= prow[i];
    }
    ++rank;
  }
  return rank;
}

bool is_fuzzy_triangular(const GF2Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("is_fuzzy_triangular: matrix is not square");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.get(i, i)) return false;
    bool column_above_zero = true;
    bool row_left_zero = true;
    for (std::size_t j = 0; j < i; ++j) {
      if (m.get(j, i)) column_above_zero = false;
      if (m.get(i, j)) row_left_zero = false;
    }
    if (!column_above_zero && !row_left_zero) return false;
  }
  return true;
}

}  // namespace lwheel
