#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace adlv {

// All arithmetic is exact: machine integers where values are provably small
// (alcove bookkeeping) and GMP rationals everywhere a division appears.
using Int = long;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

inline bool is_integer(const Rat& q) {
  return mpz_cmp_ui(q.get_den().get_mpz_t(), 1) == 0;
}

// Floor division with b > 0; a may be negative.
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  return (a % b < 0) ? q - 1 : q;
}

Rat parse_rat(const std::string& s);      // "p", "-p", or "p/q"
std::string rat_str(const Rat& q);        // canonical "p" or "p/q"
std::string rat_fixed6(const Rat& q);     // fixed-point, 6 decimals, half-up

bool all_zero(const RatVec& v);
std::string ratvec_str(const RatVec& v);  // "(a,b,...)" with p/q entries

}  // namespace adlv
