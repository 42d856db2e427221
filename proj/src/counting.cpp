#include "padicflats/counting.hpp"

#include <set>
#include <span>
#include <string>

#include "padicflats/elimination.hpp"
#include "padicflats/linalg.hpp"
#include "padicflats/parallel.hpp"
#include "padicflats/residue_ring.hpp"

namespace padicflats {

namespace {

std::uint64_t checked_total(std::uint64_t q, std::size_t len, std::uint64_t guard) {
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < len; ++i) {
    total *= q;
    if (total > guard) {
      throw TooLarge("enumeration of " + std::to_string(q) + "^" + std::to_string(len) +
                     " tuples exceeds the guard of " + std::to_string(guard));
    }
  }
  return static_cast<std::uint64_t>(total);
}

/// Calls visit(worker, tuple) for every tuple in [0, q)^len, odometer order
/// with the first coordinate fastest, split over workers.
template <class Visit>
void enumerate_tuples(std::uint64_t q, std::size_t len, std::uint64_t guard, unsigned workers,
                      Visit&& visit) {
  const std::uint64_t total = checked_total(q, len, guard);
  parallel_chunks(total, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) return;
    std::vector<std::uint64_t> tuple(len);
    std::uint64_t rest = begin;
    for (auto& x : tuple) {
      x = rest % q;
      rest /= q;
    }
    for (std::uint64_t i = begin; i < end; ++i) {
      visit(w, std::span<const std::uint64_t>(tuple));
      for (auto& x : tuple) {
        if (++x < q) break;
        x = 0;
      }
    }
  });
}

bool has_unit(std::span<const std::uint64_t> tuple, std::uint64_t p) {
  for (auto x : tuple) {
    if (x % p != 0) return true;
  }
  return false;
}

std::uint64_t sum(const std::vector<std::uint64_t>& parts) {
  std::uint64_t s = 0;
  for (auto x : parts) s += x;
  return s;
}

BigInt big(std::uint64_t x) { return BigInt(static_cast<unsigned long>(x)); }

BigInt require_integer(const ExactRational& q) {
  if (q.get_den() != 1) throw InvalidArgument("closed form is not an integer: " + to_fraction_string(q));
  return q.get_num();
}

template <class Minors>
MinorMapReport minor_fibers(std::uint64_t p, int n, std::size_t vars, int target_coords,
                            std::uint64_t guard, Minors&& minors) {
  const WordRing ring(p, n);
  const unsigned pool = resolve_workers(0);
  std::vector<std::map<ProjectivePoint, std::uint64_t>> parts(pool);
  std::vector<std::uint64_t> domain(pool, 0);
  enumerate_tuples(ring.modulus(), vars, guard, pool,
                   [&](unsigned w, std::span<const std::uint64_t> x) {
                     std::vector<std::uint64_t> k = minors(ring, x);
                     bool all_zero = true;
                     for (auto v : k) all_zero = all_zero && v == 0;
                     if (all_zero) return;
                     ++domain[w];
                     ++parts[w][ProjectivePoint::normalize(std::move(k), p, n)];
                   });
  MinorMapReport report;
  report.prime = p;
  report.exponent = n;
  report.target_coords = target_coords;
  report.domain_size = sum(domain);
  for (auto& part : parts) {
    for (auto& [pt, c] : part) report.fiber_sizes[pt] += c;
  }
  return report;
}

}  // namespace

ProjectivePoint ProjectivePoint::normalize(std::vector<std::uint64_t> tuple, std::uint64_t p, int n) {
  const WordRing ring(p, n);
  int m1 = n;
  std::size_t lead = tuple.size();
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    tuple[i] %= ring.modulus();
    const int v = ring.valuation(tuple[i]);
    if (v < m1) {
      m1 = v;
      lead = i;
    }
  }
  if (lead == tuple.size()) throw InvalidArgument("the zero tuple is not a projective point");
  // Scaling by u^-1 mod p^n; only its class mod p^{n-m1} matters for the
  // coordinates, all of which are divisible by p^m1.
  const auto inv = ring.unit_inverse(ring.shift_down(tuple[lead], m1));
  for (auto& x : tuple) x = ring.mul(x, inv);
  return {p, n, std::move(tuple), m1};
}

std::uint64_t MinorMapReport::fiber_total() const {
  std::uint64_t s = 0;
  for (const auto& [pt, c] : fiber_sizes) s += c;
  return s;
}

bool MinorMapReport::fibers_match(const std::function<BigInt(int)>& formula) const {
  for (const auto& [pt, c] : fiber_sizes) {
    if (big(c) != formula(pt.min_valuation)) return false;
  }
  return true;
}

bool MinorMapReport::depends_only_on_min_valuation() const {
  std::map<int, std::set<std::uint64_t>> by_m1;
  for (const auto& [pt, c] : fiber_sizes) by_m1[pt.min_valuation].insert(c);
  for (const auto& [m1, sizes] : by_m1) {
    if (sizes.size() != 1) return false;
  }
  return true;
}

bool MinorMapReport::surjective() const {
  return big(fiber_sizes.size()) == projective_point_count(target_coords, prime, exponent);
}

ValuationHistogram det_histogram_all_matrices(int n, std::uint64_t p, int m, std::uint64_t guard) {
  if (n < 1) throw InvalidArgument("matrix size must be >= 1");
  const WordRing ring(p, m);
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const unsigned pool = resolve_workers(0);
  std::vector<std::vector<std::uint64_t>> parts(pool, std::vector<std::uint64_t>(m + 1, 0));
  std::vector<std::vector<std::uint64_t>> buffers(pool, std::vector<std::uint64_t>(nn));
  enumerate_tuples(ring.modulus(), nn, guard, pool, [&](unsigned w, std::span<const std::uint64_t> x) {
    auto& buffer = buffers[w];
    std::copy(x.begin(), x.end(), buffer.begin());
    const auto out = eliminate_determinant(ring, std::span<std::uint64_t>(buffer), n, false);
    ++parts[w][out.valuation];
  });
  ValuationHistogram hist{p, m, std::vector<std::uint64_t>(m + 1, 0)};
  for (const auto& part : parts) {
    for (int v = 0; v <= m; ++v) hist.counts[v] += part[v];
  }
  return hist;
}

std::uint64_t count_gl(int n, std::uint64_t p, int m, std::uint64_t guard) {
  return det_histogram_all_matrices(n, p, m, guard).counts[0];
}

std::uint64_t count_det_level(int n, std::uint64_t p, int m, int ell, std::uint64_t guard) {
  if (ell < 0 || ell >= m) throw InvalidArgument("count_det_level needs 0 <= ell < m");
  return det_histogram_all_matrices(n, p, m, guard).counts[ell];
}

std::uint64_t count_A(int k, std::uint64_t p, std::uint64_t guard) {
  if (k < 1) throw InvalidArgument("count_A needs k >= 1");
  const WordRing ring(p, k);
  const unsigned pool = resolve_workers(0);
  std::vector<std::uint64_t> parts(pool, 0);
  enumerate_tuples(ring.modulus(), 3, guard, pool, [&](unsigned w, std::span<const std::uint64_t> x) {
    if (has_unit(x, p) && ring.mul(x[1], x[1]) == ring.mul(x[0], x[2])) ++parts[w];
  });
  return sum(parts);
}

std::uint64_t count_B(int k, std::uint64_t p, std::uint64_t guard) {
  if (k < 1) throw InvalidArgument("count_B needs k >= 1");
  const WordRing ring(p, k);
  const unsigned pool = resolve_workers(0);
  std::vector<std::uint64_t> parts(pool, 0);
  enumerate_tuples(ring.modulus(), 4, guard, pool, [&](unsigned w, std::span<const std::uint64_t> x) {
    if (has_unit(x, p) && ring.mul(x[0], x[3]) == ring.mul(x[1], x[2])) ++parts[w];
  });
  return sum(parts);
}

std::uint64_t count_singular_2x2(std::uint64_t p, int n, std::uint64_t guard) {
  if (n < 1) throw InvalidArgument("count_singular_2x2 needs n >= 1");
  const WordRing ring(p, n);
  const unsigned pool = resolve_workers(0);
  std::vector<std::uint64_t> parts(pool, 0);
  enumerate_tuples(ring.modulus(), 4, guard, pool, [&](unsigned w, std::span<const std::uint64_t> x) {
    if (ring.mul(x[0], x[3]) == ring.mul(x[1], x[2])) ++parts[w];
  });
  return sum(parts);
}

MinorMapReport minor_fibers_3x2(std::uint64_t p, int n, std::uint64_t guard) {
  return minor_fibers(p, n, 6, 3, guard, [](const WordRing& r, std::span<const std::uint64_t> x) {
    // x[0..2] first column, x[3..5] second column.
    return std::vector<std::uint64_t>{
        r.sub(r.mul(x[0], x[4]), r.mul(x[1], x[3])),
        r.sub(r.mul(x[0], x[5]), r.mul(x[2], x[3])),
        r.sub(r.mul(x[1], x[5]), r.mul(x[2], x[4])),
    };
  });
}

MinorMapReport minor_fibers_4x3(std::uint64_t p, int n, std::uint64_t guard) {
  return minor_fibers(p, n, 12, 4, guard, [](const WordRing& r, std::span<const std::uint64_t> x) {
    auto det3 = [&](int a, int b, int c) {
      const auto* u = &x[3 * a];
      const auto* v = &x[3 * b];
      const auto* w = &x[3 * c];
      auto t1 = r.mul(u[0], r.sub(r.mul(v[1], w[2]), r.mul(v[2], w[1])));
      auto t2 = r.mul(u[1], r.sub(r.mul(v[0], w[2]), r.mul(v[2], w[0])));
      auto t3 = r.mul(u[2], r.sub(r.mul(v[0], w[1]), r.mul(v[1], w[0])));
      return r.add(r.sub(t1, t2), t3);
    };
    return std::vector<std::uint64_t>{det3(1, 2, 3), det3(0, 2, 3), det3(0, 1, 3), det3(0, 1, 2)};
  });
}

std::uint64_t count_full_rank(int rows, int cols, std::uint64_t p, std::uint64_t guard) {
  if (rows < 1 || cols < 1) throw InvalidArgument("count_full_rank needs positive dimensions");
  const WordRing field(p, 1);
  const std::size_t r = rows, c = cols;
  const std::size_t want = std::min(r, c);
  const unsigned pool = resolve_workers(0);
  std::vector<std::uint64_t> parts(pool, 0);
  std::vector<std::vector<std::uint64_t>> buffers(pool, std::vector<std::uint64_t>(r * c));
  enumerate_tuples(p, r * c, guard, pool, [&](unsigned w, std::span<const std::uint64_t> x) {
    auto& a = buffers[w];
    std::copy(x.begin(), x.end(), a.begin());
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
      std::size_t piv = rank;
      while (piv < r && a[piv * c + col] == 0) ++piv;
      if (piv == r) continue;
      for (std::size_t j = 0; j < c; ++j) std::swap(a[piv * c + j], a[rank * c + j]);
      const auto inv = field.unit_inverse(a[rank * c + col]);
      for (std::size_t i = rank + 1; i < r; ++i) {
        const auto f = field.mul(a[i * c + col], inv);
        if (f == 0) continue;
        for (std::size_t j = col; j < c; ++j) a[i * c + j] = field.sub(a[i * c + j], field.mul(f, a[rank * c + j]));
      }
      ++rank;
    }
    if (rank == want) ++parts[w];
  });
  return sum(parts);
}

std::uint64_t count_balls_cover(const std::vector<std::vector<std::uint64_t>>& residues,
                                std::uint64_t p, int source_precision, int m) {
  if (m < 0 || m > source_precision) throw InvalidArgument("count_balls_cover needs 0 <= m <= m'");
  const BigInt q = int_power(p, static_cast<unsigned>(m));
  const std::uint64_t mod = q.get_ui();
  std::set<std::vector<std::uint64_t>> images;
  for (auto tuple : residues) {
    for (auto& x : tuple) x = mod == 0 ? 0 : x % mod;
    images.insert(std::move(tuple));
  }
  return images.size();
}

BigInt gl_count_formula(int n, std::uint64_t p, int m) {
  const VolumeTable table(p);
  return require_integer(ExactRational(int_power(p, static_cast<unsigned>(m * n * n))) * gl_volume(n, table));
}

BigInt det_level_count_formula(int n, std::uint64_t p, int m, int ell) {
  const VolumeTable table(p);
  return require_integer(ExactRational(int_power(p, static_cast<unsigned>(m * n * n))) *
                         det_level_volume(n, ell, table));
}

BigInt A_formula(int k, std::uint64_t p) {
  return int_power(p, 2 * k) - int_power(p, 2 * k - 2);
}

BigInt B_formula(int k, std::uint64_t p) {
  return int_power(p, 3 * k) + int_power(p, 3 * k - 1) - int_power(p, 3 * k - 2) - int_power(p, 3 * k - 3);
}

BigInt singular_2x2_formula(std::uint64_t p, int n) {
  return int_power(p, 3 * n) + int_power(p, 3 * n - 1) - int_power(p, 2 * n - 1);
}

BigInt fiber_3x2_formula(std::uint64_t p, int n, int m1) {
  const BigInt P = big(p);
  return int_power(p, 4 * n - 3 - m1) * (P - 1) * (P + 1) * (int_power(p, m1 + 1) - 1);
}

BigInt fiber_4x3_formula(std::uint64_t p, int n, int m1) {
  return int_power(p, 9 * n - 6 - m1) * (int_power(p, 3) - 1) * (int_power(p, m1 + 1) - 1) *
         (int_power(p, m1 + 2) - 1);
}

BigInt projective_point_count(int r, std::uint64_t p, int n) {
  // Points whose coordinates share exactly p^m correspond to unit points of
  // P^{r-1}(Z/p^{n-m}).
  BigInt total = 0;
  for (int m = 0; m < n; ++m) {
    const int k = n - m;
    const BigInt unit_tuples = int_power(p, r * k) - int_power(p, r * (k - 1));
    total += unit_tuples / (int_power(p, k - 1) * (big(p) - 1));
  }
  return total;
}

}  // namespace padicflats
