#pragma once

// Shape of the random Jacobian of the restriction map at the coordinate flat
// {x_{k+1} = ... = x_n = 0}, in the standard affine chart of G_{k,n}.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "padicflats/linalg.hpp"
#include "padicflats/padic.hpp"
#include "padicflats/polynomial.hpp"

namespace padicflats {

/// (n, k, d_1..d_nu): k-flats in projective n-space on Z(f_1..f_nu).
struct DegreeProfile {
  int n = 0;
  int k = 0;
  std::vector<int> degrees;

  /// Throws InvalidArgument unless 0 <= k < n and every degree is >= 1.
  void validate() const;
  /// (k+1)(n-k)
  std::size_t dimension() const;
  std::string to_string() const;

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

/// sum_j C(k + d_j, d_j) == (k+1)(n-k).
bool check_codim(const DegreeProfile& profile);

/// One independent coefficient xi^{(block)}_alpha, alpha indexing x_0..x_n.
struct TemplateVariable {
  int block;
  Exponents alpha;
  /// "x<block+1>_<alpha digits>"
  std::string label() const;
};

class JacobianTemplate {
 public:
  static constexpr int kZero = -1;

  const DegreeProfile& profile() const { return profile_; }
  /// D = (k+1)(n-k)
  std::size_t size() const { return size_; }
  std::size_t var_count() const { return variables_.size(); }
  const std::vector<TemplateVariable>& variables() const { return variables_; }

  /// Variable index of a cell, or kZero.
  int cell(std::size_t row, std::size_t col) const { return cells_[row * size_ + col]; }
  std::span<const int> cells() const { return cells_; }

  /// Block index and monomial u (in y_0..y_k) of a row.
  const std::pair<int, Exponents>& row_label(std::size_t row) const { return rows_[row]; }
  /// (s, i): outer coordinate s in 1..n-k, inner coordinate i in 0..k.
  const std::pair<int, int>& column_label(std::size_t col) const { return cols_[col]; }

  /// {"profile":..., "size":D, "var_count":..., "variables":[...], "cells":[[...]]}
  std::string to_json() const;

 private:
  friend JacobianTemplate build_template(const DegreeProfile& profile);

  DegreeProfile profile_;
  std::size_t size_ = 0;
  std::vector<int> cells_;
  std::vector<TemplateVariable> variables_;
  std::vector<std::pair<int, Exponents>> rows_;
  std::vector<std::pair<int, int>> cols_;
};

/// Rows: blocks in order, monomials u of degree d_j in descending lex order.
/// Columns: s-major, then i. Cell ((j,u),(s,i)) is xi^{(j)} at u - e_i + e_{k+s}
/// when u_i >= 1, else zero. Variables are numbered block, then s, then the
/// degree d_j - 1 part in descending lex order. Throws NotAdmissible.
JacobianTemplate build_template(const DegreeProfile& profile);

/// Each variable occupies exactly k+1 cells, in distinct rows and distinct
/// columns, and no two rows have the same pattern.
bool check_repetition(const JacobianTemplate& t);

/// det J for the cubic surface (n=3, k=1, d=3) in the template variables
/// x1..x6: (x1 x6 - x3 x4)^2 - (x1 x5 - x2 x4)(x2 x6 - x3 x5).
IntPolynomial cubic_det_polynomial();
/// det J for two quadrics in P^4 (n=4, k=1, d=(2,2)): k1 k4 - k2 k3, with k_r
/// the 3x3 minor deleting row r of [a1 b1 c1; a2 b2 c2; a1' b1' c1'; a2' b2' c2']
/// (template variables a1 a2 b1 b2 c1 c2 a1' a2' b1' b2' c1' c2').
IntPolynomial quadrics_det_polynomial();

/// Throws LengthMismatch unless draws.size() == var_count.
PadicMatrix instantiate(const JacobianTemplate& t, std::span<const PadicApprox> draws);

/// Allocation-free instantiation into a caller-owned D x D buffer.
template <class T>
void instantiate_into(const JacobianTemplate& t, std::span<const T> draws, std::span<T> out,
                      const T& zero) {
  const auto cells = t.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out[i] = cells[i] == JacobianTemplate::kZero ? zero : draws[static_cast<std::size_t>(cells[i])];
  }
}

}  // namespace padicflats
