#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace lwheel {

/// Dense binary matrix, row-major, one bit per entry packed into 64-bit words.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols);
  GF2Matrix(std::initializer_list<std::initializer_list<int>> rows);

  static GF2Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value);

  GF2Matrix transpose() const;

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  friend std::size_t gf2_rank(const GF2Matrix& m);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Rank over GF(2) by Gaussian elimination on row words. Works on a copy.
std::size_t gf2_rank(const GF2Matrix& m);

/// Square m with m(0,0) = 1 and, for every later i, m(i,i) = 1 and either the
/// column above the diagonal entry or the row left of it is all zero.
/// Throws InputError for non-square input. The 0x0 matrix counts as fuzzy
/// triangular.
bool is_fuzzy_triangular(const GF2Matrix& m);

}  // namespace lwheel
