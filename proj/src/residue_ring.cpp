#include "padicflats/residue_ring.hpp"

namespace padicflats {

bool WordRing::fits(std::uint64_t p, int m) {
  if (p < 2 || m < 1) return false;
  unsigned __int128 q = 1;
  for (int k = 0; k < m; ++k) {
    q *= p;
    if (q >= kMaxModulus) return false;
  }
  return true;
}

WordRing::WordRing(std::uint64_t p, int m) : p_(p), m_(m) {
  if (!fits(p, m)) {
    throw InvalidArgument("modulus p^m does not fit the word-sized residue ring");
  }
  powers_.reserve(m + 1);
  std::uint64_t q = 1;
  for (int k = 0; k <= m; ++k) {
    powers_.push_back(q);
    q *= p;
  }
}

WordRing::value_type WordRing::unit_inverse(value_type u) const {
  // Extended Euclid on signed 128-bit values.
  __int128 r0 = static_cast<__int128>(modulus()), r1 = static_cast<__int128>(u % modulus());
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    const __int128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    const __int128 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw NotInvertible("residue is not a unit");
  if (t0 < 0) t0 += static_cast<__int128>(modulus());
  return static_cast<value_type>(t0);
}

WordRing::value_type WordRing::from_big(const BigInt& a) const {
  BigInt r;
  BigInt mod = static_cast<unsigned long>(modulus());
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
  return r.get_ui();
}

}  // namespace padicflats
