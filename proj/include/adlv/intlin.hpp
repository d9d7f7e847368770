#pragma once

#include <optional>

#include "adlv/rational.hpp"

namespace adlv {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;  // row-major
using RMat = std::vector<RatVec>;

IMat imat_identity(int n);
IMat imat_mul(const IMat& a, const IMat& b);
IVec imat_apply(const IMat& a, const IVec& v);
RatVec imat_apply(const IMat& a, const RatVec& v);
IMat imat_transpose(const IMat& a);

Int ivec_dot(const IVec& a, const IVec& b);
Rat ivec_dot(const IVec& form, const RatVec& v);
IVec ivec_add(const IVec& a, const IVec& b);
IVec ivec_sub(const IVec& a, const IVec& b);
IVec ivec_neg(const IVec& a);
bool ivec_is_zero(const IVec& a);
std::string ivec_str(const IVec& v);  // "(a,b,...)"

RatVec ratvec_add(const RatVec& a, const RatVec& b);
RatVec ratvec_sub(const RatVec& a, const RatVec& b);
RatVec ratvec_scale(const RatVec& a, const Rat& c);
RatVec to_ratvec(const IVec& v);

// Smith normal form: u * a * v = diag(d) with d[i] >= 0 and d[i] | d[i+1].
// u, v are unimodular; rank = number of nonzero d[i].
struct Smith {
  IMat u, v;
  std::vector<Int> d;  // length min(rows, cols)
  int rank = 0;
};
Smith smith_normal_form(IMat a);

// Solves a * x = b over the integers (any shape); returns one solution.
std::optional<IVec> solve_integer(const IMat& a, const IVec& b);

// Square rational solve / inverse / determinant; nullopt when singular.
std::optional<RatVec> solve_rational(RMat a, RatVec b);
std::optional<RMat> invert_rational(const RMat& a);
Rat det_rational(RMat a);
RMat rmat_from(const IMat& a);

}  // namespace adlv
