#include "padicflats/jacobian.hpp"

#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace padicflats {

void DegreeProfile::validate() const {
  if (k < 0 || k >= n) {
    throw InvalidArgument("profile needs 0 <= k < n (n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
  }
  if (degrees.empty()) throw InvalidArgument("profile needs at least one degree");
  for (int d : degrees) {
    if (d < 1) throw InvalidArgument("degrees must be >= 1");
  }
}

std::size_t DegreeProfile::dimension() const {
  return static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(n - k);
}

std::string DegreeProfile::to_string() const {
  std::ostringstream out;
  out << "(n=" << n << ", k=" << k << ", degrees=[";
  for (std::size_t i = 0; i < degrees.size(); ++i) out << (i ? "," : "") << degrees[i];
  out << "])";
  return out.str();
}

bool check_codim(const DegreeProfile& profile) {
  if (profile.k < 0 || profile.k >= profile.n || profile.degrees.empty()) return false;
  std::size_t total = 0;
  for (int d : profile.degrees) {
    if (d < 1) return false;
    total += binomial(profile.k + d, d);
  }
  return total == profile.dimension();
}

std::string TemplateVariable::label() const {
  return "x" + std::to_string(block + 1) + "_" + exponent_label(alpha);
}

JacobianTemplate build_template(const DegreeProfile& profile) {
  profile.validate();
  if (!check_codim(profile)) {
    throw NotAdmissible("profile " + profile.to_string() +
                        " violates sum_j C(k+d_j, d_j) = (k+1)(n-k)");
  }
  const int n = profile.n;
  const int k = profile.k;
  const int outer = n - k;

  JacobianTemplate t;
  t.profile_ = profile;
  t.size_ = profile.dimension();

  std::map<std::pair<int, Exponents>, int> ids;
  for (int j = 0; j < static_cast<int>(profile.degrees.size()); ++j) {
    const auto lower = monomials(profile.degrees[j] - 1, k + 1);
    for (int s = 1; s <= outer; ++s) {
      for (const auto& beta : lower) {
        Exponents alpha(n + 1, 0);
        std::copy(beta.begin(), beta.end(), alpha.begin());
        alpha[k + s] = 1;
        ids.emplace(std::pair{j, alpha}, static_cast<int>(t.variables_.size()));
        t.variables_.push_back({j, std::move(alpha)});
      }
    }
  }

  for (int s = 1; s <= outer; ++s) {
    for (int i = 0; i <= k; ++i) t.cols_.emplace_back(s, i);
  }
  for (int j = 0; j < static_cast<int>(profile.degrees.size()); ++j) {
    for (auto& u : monomials(profile.degrees[j], k + 1)) t.rows_.emplace_back(j, std::move(u));
  }

  t.cells_.assign(t.size_ * t.size_, JacobianTemplate::kZero);
  for (std::size_t r = 0; r < t.size_; ++r) {
    const auto& [block, u] = t.rows_[r];
    for (std::size_t c = 0; c < t.size_; ++c) {
      const auto [s, i] = t.cols_[c];
      if (u[i] == 0) continue;
      Exponents alpha(n + 1, 0);
      std::copy(u.begin(), u.end(), alpha.begin());
      alpha[i] -= 1;
      alpha[k + s] = 1;
      t.cells_[r * t.size_ + c] = ids.at({block, alpha});
    }
  }
  return t;
}

std::string JacobianTemplate::to_json() const {
  nlohmann::ordered_json doc;
  doc["profile"] = {{"n", profile_.n}, {"k", profile_.k}, {"degrees", profile_.degrees}};
  doc["size"] = size_;
  doc["var_count"] = variables_.size();
  auto vars = nlohmann::ordered_json::array();
  for (const auto& v : variables_) vars.push_back(v.label());
  doc["variables"] = std::move(vars);
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < size_; ++r) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < size_; ++c) {
      const int id = cell(r, c);
      row.push_back(id == kZero ? std::string("0") : variables_[id].label());
    }
    rows.push_back(std::move(row));
  }
  doc["cells"] = std::move(rows);
  return doc.dump();
}

PadicMatrix instantiate(const JacobianTemplate& t, std::span<const PadicApprox> draws) {
  if (draws.size() != t.var_count()) {
    throw LengthMismatch("template needs " + std::to_string(t.var_count()) + " draws, got " +
                         std::to_string(draws.size()));
  }
  if (draws.empty()) throw LengthMismatch("no draws supplied");
  const auto& ctx = draws.front().context();
  std::vector<BigInt> values(t.size() * t.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int id = t.cells()[i];
    if (id == JacobianTemplate::kZero) continue;
    if (!(draws[id].context() == ctx)) throw InvalidArgument("draws use different contexts");
    values[i] = draws[id].residue();
  }
  return {ctx, t.size(), t.size(), std::move(values)};
}

bool check_repetition(const JacobianTemplate& t) {
  const std::size_t reps = static_cast<std::size_t>(t.profile().k) + 1;
  std::vector<std::set<std::size_t>> rows(t.var_count()), cols(t.var_count());
  std::vector<std::size_t> hits(t.var_count(), 0);
  for (std::size_t r = 0; r < t.size(); ++r) {
    for (std::size_t c = 0; c < t.size(); ++c) {
      const int id = t.cell(r, c);
      if (id == JacobianTemplate::kZero) continue;
      ++hits[id];
      rows[id].insert(r);
      cols[id].insert(c);
    }
  }
  for (std::size_t v = 0; v < t.var_count(); ++v) {
    if (hits[v] != reps || rows[v].size() != reps || cols[v].size() != reps) return false;
  }
  std::set<std::vector<int>> patterns;
  const auto cells = t.cells();
  for (std::size_t r = 0; r < t.size(); ++r) {
    patterns.emplace(cells.begin() + r * t.size(), cells.begin() + (r + 1) * t.size());
  }
  return patterns.size() == t.size();
}

IntPolynomial cubic_det_polynomial() {
  auto x = [](int i) { return IntPolynomial::variable(6, i - 1); };
  const IntPolynomial a = x(1) * x(6) - x(3) * x(4);
  const IntPolynomial b = x(1) * x(5) - x(2) * x(4);
  const IntPolynomial c = x(2) * x(6) - x(3) * x(5);
  return a * a - b * c;
}

IntPolynomial quadrics_det_polynomial() {
  auto x = [](int i) { return IntPolynomial::variable(12, i); };
  // Stack rows: (a1 b1 c1), (a2 b2 c2), (a1' b1' c1'), (a2' b2' c2').
  const int stack[4][3] = {{0, 2, 4}, {1, 3, 5}, {6, 8, 10}, {7, 9, 11}};
  auto minor = [&](int skip) {
    int r[3], n = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) r[n++] = i;
    }
    auto e = [&](int row, int col) { return x(stack[r[row]][col]); };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  };
  return minor(0) * minor(3) - minor(1) * minor(2);
}

}  // namespace padicflats
