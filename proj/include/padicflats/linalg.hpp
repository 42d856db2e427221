#pragma once

#include <cstddef>
#include <vector>

#include "padicflats/padic.hpp"

namespace padicflats {

/// Dense row-major matrix over Z/p^m.
class PadicMatrix {
 public:
  PadicMatrix(PadicContext ctx, std::size_t rows, std::size_t cols);
  /// Entries are reduced mod p^m; `values.size()` must equal rows * cols.
  PadicMatrix(PadicContext ctx, std::size_t rows, std::size_t cols, std::vector<BigInt> values);

  static PadicMatrix identity(PadicContext ctx, std::size_t n);
  static PadicMatrix from_rows(PadicContext ctx, const std::vector<std::vector<long>>& rows);

  const PadicContext& context() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const BigInt& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  PadicApprox at(std::size_t r, std::size_t c) const { return {ctx_, (*this)(r, c)}; }
  void set(std::size_t r, std::size_t c, const BigInt& value);

  const std::vector<BigInt>& entries() const { return entries_; }

  PadicMatrix operator*(const PadicMatrix& other) const;
  PadicMatrix transposed() const;

  friend bool operator==(const PadicMatrix&, const PadicMatrix&) = default;

 private:
  PadicContext ctx_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<BigInt> entries_;
};

/// M == left * diag(p^u_1, ..., p^u_k) * right (mod p^m), with left and right
/// invertible mod p and u nondecreasing.
struct SmithDecomposition {
  std::vector<int> exponents;
  PadicMatrix left;
  PadicMatrix right;

  PadicMatrix reconstruct() const;
};

/// Pi_k = (1 - 1/p)(1 - 1/p^2)...(1 - 1/p^k), Pi_0 = 1.
class VolumeTable {
 public:
  explicit VolumeTable(std::uint64_t prime, int cached = 32);

  std::uint64_t prime() const { return prime_; }
  /// Computed past the cache on demand.
  ExactRational pi(int k) const;
  const std::vector<ExactRational>& cached() const { return pi_; }

 private:
  std::uint64_t prime_;
  std::vector<ExactRational> pi_;
};

/// det(M) mod p^m. Throws NotSquare.
PadicApprox det_residue(const PadicMatrix& m);

/// Throws NotSquare, or SingularAtPrecision when some exponent would be >= m
/// (a zero pivot mod p^m). A zero determinant residue alone is allowed:
/// diag(2, 4) mod 8 has exponents (1, 2).
/// Pivots on a minimum-valuation entry, ties broken by lowest (row, col).
SmithDecomposition smith_decompose(const PadicMatrix& m);

/// lambda(GL_n(Z_p)) = Pi_n.
ExactRational gl_volume(int n, const VolumeTable& table);

/// lambda{ M in Z_p^{n x n} : |det M|_p = p^-ell }.
ExactRational det_level_volume(int n, int ell, const VolumeTable& table);

/// mu(G_{k,n}) = Pi_{n+1} / (Pi_{k+1} Pi_{n-k}), 0 <= k < n.
ExactRational grassmannian_volume(int k, int n, const VolumeTable& table);

}  // namespace padicflats
