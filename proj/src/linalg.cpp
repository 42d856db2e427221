#include "padicflats/linalg.hpp"

#include <span>
#include <string>

#include "padicflats/elimination.hpp"
#include "padicflats/residue_ring.hpp"

namespace padicflats {

PadicMatrix::PadicMatrix(PadicContext ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
}

PadicMatrix::PadicMatrix(PadicContext ctx, std::size_t rows, std::size_t cols,
                         std::vector<BigInt> values)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), entries_(std::move(values)) {
  if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
  if (entries_.size() != rows * cols) {
    throw LengthMismatch("expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(entries_.size()));
  }
  for (auto& e : entries_) {
    mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), ctx_.modulus().get_mpz_t());
  }
}

PadicMatrix PadicMatrix::identity(PadicContext ctx, std::size_t n) {
  PadicMatrix id(std::move(ctx), n, n);
  for (std::size_t i = 0; i < n; ++i) id.entries_[i * n + i] = 1;
  return id;
}

PadicMatrix PadicMatrix::from_rows(PadicContext ctx, const std::vector<std::vector<long>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InvalidArgument("empty matrix");
  std::vector<BigInt> values;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw LengthMismatch("ragged matrix rows");
    for (long v : row) values.emplace_back(v);
  }
  return {std::move(ctx), rows.size(), rows.front().size(), std::move(values)};
}

void PadicMatrix::set(std::size_t r, std::size_t c, const BigInt& value) {
  mpz_fdiv_r(entries_[r * cols_ + c].get_mpz_t(), value.get_mpz_t(), ctx_.modulus().get_mpz_t());
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& other) const {
  if (!(ctx_ == other.ctx_)) throw InvalidArgument("matrix contexts differ");
  if (cols_ != other.rows_) throw InvalidArgument("matrix dimensions do not agree");
  PadicMatrix out(ctx_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < other.cols_; ++j) {
      BigInt acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(i, k) * other(k, j);
      out.set(i, j, acc);
    }
  }
  return out;
}

PadicMatrix PadicMatrix::transposed() const {
  PadicMatrix out(ctx_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.entries_[j * rows_ + i] = (*this)(i, j);
  }
  return out;
}

PadicMatrix SmithDecomposition::reconstruct() const {
  const auto& ctx = left.context();
  const std::size_t n = exponents.size();
  PadicMatrix diag(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) diag.set(i, i, ctx.power(exponents[i]));
  return left * diag * right;
}

VolumeTable::VolumeTable(std::uint64_t prime, int cached) : prime_(prime) {
  if (!is_prime(prime)) throw InvalidArgument("p = " + std::to_string(prime) + " is not prime");
  pi_.reserve(cached + 1);
  pi_.emplace_back(1);
  for (int k = 1; k <= cached; ++k) {
    pi_.push_back(pi_.back() * (1 - rational_power(prime, -k)));
  }
}

ExactRational VolumeTable::pi(int k) const {
  if (k < 0) throw InvalidArgument("Pi_k needs k >= 0");
  if (static_cast<std::size_t>(k) < pi_.size()) return pi_[k];
  ExactRational value = pi_.back();
  for (int j = static_cast<int>(pi_.size()); j <= k; ++j) value *= 1 - rational_power(prime_, -j);
  return value;
}

PadicApprox det_residue(const PadicMatrix& m) {
  if (!m.is_square()) throw NotSquare("determinant of a non-square matrix");
  const auto& ctx = m.context();
  const std::size_t n = m.rows();
  if (WordRing::fits(ctx.prime(), ctx.precision())) {
    WordRing ring(ctx);
    std::vector<std::uint64_t> a;
    a.reserve(n * n);
    for (const auto& e : m.entries()) a.push_back(e.get_ui());
    auto out = eliminate_determinant(ring, std::span(a), n, true);
    return {ctx, ring.to_big(out.residue)};
  }
  BigRing ring(ctx);
  std::vector<BigInt> a = m.entries();
  auto out = eliminate_determinant(ring, std::span(a), n, true);
  return {ctx, out.residue};
}

SmithDecomposition smith_decompose(const PadicMatrix& m) {
  if (!m.is_square()) throw NotSquare("Smith decomposition of a non-square matrix");
  const auto& ctx = m.context();
  const std::size_t n = m.rows();
  BigRing ring(ctx);
  std::vector<BigInt> a = m.entries();
  std::vector<BigInt> L(n * n), R(n * n);
  for (std::size_t i = 0; i < n; ++i) L[i * n + i] = R[i * n + i] = 1;
  // Invariant: m == L * a * R (mod p^m).
  auto A = [&](std::size_t r, std::size_t c) -> BigInt& { return a[r * n + c]; };

  std::vector<int> exponents(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t br = n, bc = n;
    int bv = ring.precision();
    for (std::size_t r = s; r < n; ++r) {
      for (std::size_t c = s; c < n; ++c) {
        const int v = ring.valuation(A(r, c));
        if (v < bv) {
          bv = v;
          br = r;
          bc = c;
        }
      }
    }
    if (br == n) throw SingularAtPrecision("a Smith exponent reaches the precision; it is not determined mod p^m");
    if (br != s) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(br, j), A(s, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(L[i * n + br], L[i * n + s]);
    }
    if (bc != s) {
      for (std::size_t i = 0; i < n; ++i) std::swap(A(i, bc), A(i, s));
      for (std::size_t j = 0; j < n; ++j) std::swap(R[bc * n + j], R[s * n + j]);
    }
    const BigInt unit = ring.shift_down(A(s, s), bv);
    const BigInt unit_inv = ring.unit_inverse(unit);
    for (std::size_t r = s + 1; r < n; ++r) {
      if (A(r, s) == 0) continue;
      const BigInt c = ring.mul(ring.shift_down(A(r, s), bv), unit_inv);
      // row_r -= c * row_s  on a;  column s of L += c * column r.
      for (std::size_t j = s; j < n; ++j) A(r, j) = ring.sub(A(r, j), ring.mul(c, A(s, j)));
      for (std::size_t i = 0; i < n; ++i) L[i * n + s] = ring.add(L[i * n + s], ring.mul(c, L[i * n + r]));
    }
    for (std::size_t j = s + 1; j < n; ++j) {
      if (A(s, j) == 0) continue;
      const BigInt c = ring.mul(ring.shift_down(A(s, j), bv), unit_inv);
      // col_j -= c * col_s  on a;  row s of R += c * row j.
      for (std::size_t i = s; i < n; ++i) A(i, j) = ring.sub(A(i, j), ring.mul(c, A(i, s)));
      for (std::size_t k = 0; k < n; ++k) R[s * n + k] = ring.add(R[s * n + k], ring.mul(c, R[j * n + k]));
    }
    exponents[s] = bv;
    // Absorb the unit part of the pivot into the right factor.
    for (std::size_t k = 0; k < n; ++k) R[s * n + k] = ring.mul(unit, R[s * n + k]);
  }
  return {std::move(exponents), PadicMatrix(ctx, n, n, std::move(L)),
          PadicMatrix(ctx, n, n, std::move(R))};
}

ExactRational gl_volume(int n, const VolumeTable& table) {
  if (n < 1) throw InvalidArgument("gl_volume needs n >= 1");
  return table.pi(n);
}

ExactRational det_level_volume(int n, int ell, const VolumeTable& table) {
  if (n < 1 || ell < 0) throw InvalidArgument("det_level_volume needs n >= 1 and ell >= 0");
  return table.pi(n) * rational_power(table.prime(), -ell) * table.pi(n + ell - 1) /
         (table.pi(ell) * table.pi(n - 1));
}

ExactRational grassmannian_volume(int k, int n, const VolumeTable& table) {
  if (k < 0 || k >= n) throw InvalidArgument("grassmannian_volume needs 0 <= k < n");
  return table.pi(n + 1) / (table.pi(k + 1) * table.pi(n - k));
}

}  // namespace padicflats
