#include "adlv/intlin.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>

#include "adlv/error.hpp"

namespace adlv {

Rat parse_rat(const std::string& s) {
  if (s.empty())
    fail("ParseError", "empty rational literal");
  std::string t = s;
  size_t slash = t.find('/');
  std::string num = (slash == std::string::npos) ? t : t.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : t.substr(slash + 1);
  auto ok = [](const std::string& p) {
    if (p.empty()) return false;
    size_t i = (p[0] == '-' || p[0] == '+') ? 1 : 0;
    if (i == p.size()) return false;
    for (; i < p.size(); ++i)
      if (!isdigit((unsigned char)p[i])) return false;
    return true;
  };
  if (!ok(num) || !ok(den))
    fail("ParseError", "bad rational literal '" + s + "'");
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
    fail("ParseError", "bad rational literal '" + s + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    fail("ParseError", "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << q.get_num();
  if (!is_integer(q))
    os << '/' << q.get_den();
  return os.str();
}

std::string rat_fixed6(const Rat& q) {
  // round(q * 10^6) half away from zero, rendered with a fixed decimal point
  mpz_class scaled_num = q.get_num() * 2000000;
  mpz_class den2 = q.get_den() * 2;
  mpz_class r;
  mpz_class adjust = den2 / 2;
  if (sgn(scaled_num) < 0)
    adjust = -adjust;
  r = (scaled_num + adjust) / den2;
  bool neg = sgn(r) < 0;
  mpz_class a = abs(r);
  mpz_class ip = a / 1000000, fp = a % 1000000;
  std::string f = fp.get_str();
  f.insert(0, 6 - f.size(), '0');
  return (neg ? "-" : "") + ip.get_str() + "." + f;
}

bool all_zero(const RatVec& v) {
  for (const Rat& q : v)
    if (q != 0) return false;
  return true;
}

std::string ratvec_str(const RatVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += rat_str(v[i]);
  }
  return s + ")";
}

IMat imat_identity(int n) {
  IMat m(n, IVec(n, 0));
  for (int i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  IMat m(r, IVec(c, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < k; ++j) {
      Int aij = a[i][j];
      if (aij == 0) continue;
      for (size_t l = 0; l < c; ++l)
        m[i][l] += aij * b[j][l];
    }
  return m;
}

IVec imat_apply(const IMat& a, const IVec& v) {
  IVec r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      r[i] += a[i][j] * v[j];
  return r;
}

RatVec imat_apply(const IMat& a, const RatVec& v) {
  RatVec r(a.size(), Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (a[i][j] != 0)
        r[i] += Rat((long)a[i][j]) * v[j];
  return r;
}

IMat imat_transpose(const IMat& a) {
  if (a.empty()) return {};
  IMat t(a[0].size(), IVec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j)
      t[j][i] = a[i][j];
  return t;
}

Int ivec_dot(const IVec& a, const IVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

Rat ivec_dot(const IVec& form, const RatVec& v) {
  Rat s(0);
  for (size_t i = 0; i < form.size(); ++i)
    if (form[i] != 0)
      s += Rat((long)form[i]) * v[i];
  return s;
}

IVec ivec_add(const IVec& a, const IVec& b) {
  IVec r(a);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] += b[i];
  return r;
}

IVec ivec_sub(const IVec& a, const IVec& b) {
  IVec r(a);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] -= b[i];
  return r;
}

IVec ivec_neg(const IVec& a) {
  IVec r(a);
  for (Int& x : r)
    x = -x;
  return r;
}

bool ivec_is_zero(const IVec& a) {
  for (Int x : a)
    if (x != 0) return false;
  return true;
}

std::string ivec_str(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ")";
}

RatVec ratvec_add(const RatVec& a, const RatVec& b) {
  RatVec r(a);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] += b[i];
  return r;
}

RatVec ratvec_sub(const RatVec& a, const RatVec& b) {
  RatVec r(a);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] -= b[i];
  return r;
}

RatVec ratvec_scale(const RatVec& a, const Rat& c) {
  RatVec r(a);
  for (Rat& q : r)
    q *= c;
  return r;
}

RatVec to_ratvec(const IVec& v) {
  RatVec r;
  r.reserve(v.size());
  for (Int x : v)
    r.emplace_back((long)x);
  return r;
}

namespace {

void row_swap(IMat& m, int i, int j) { std::swap(m[i], m[j]); }

void col_swap(IMat& m, int i, int j) {
  for (auto& row : m)
    std::swap(row[i], row[j]);
}

// row[i] += c * row[j]
void row_add(IMat& m, int i, int j, Int c) {
  for (size_t k = 0; k < m[i].size(); ++k)
    m[i][k] += c * m[j][k];
}

void col_add(IMat& m, int i, int j, Int c) {
  for (auto& row : m)
    row[i] += c * row[j];
}

}  // namespace

Smith smith_normal_form(IMat a) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  Smith s;
  s.u = imat_identity(rows);
  s.v = imat_identity(cols);
  int t = 0;
  while (t < rows && t < cols) {
    // pick the nonzero entry of smallest magnitude in the remaining block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi < 0 || std::abs(a[i][j]) < best)) {
          pi = i; pj = j; best = std::abs(a[i][j]);
        }
    if (pi < 0) break;
    row_swap(a, t, pi); row_swap(s.u, t, pi);
    col_swap(a, t, pj); col_swap(s.v, t, pj);
    bool clean = true;
    for (int i = t + 1; i < rows; ++i)
      if (a[i][t] != 0) {
        Int c = -(a[i][t] / a[t][t]);
        row_add(a, i, t, c); row_add(s.u, i, t, c);
        if (a[i][t] != 0) clean = false;
      }
    for (int j = t + 1; j < cols; ++j)
      if (a[t][j] != 0) {
        Int c = -(a[t][j] / a[t][t]);
        col_add(a, j, t, c); col_add(s.v, j, t, c);
        if (a[t][j] != 0) clean = false;
      }
    if (!clean) continue;  // smaller remainders exist; re-pick pivot
    // divisibility: fold any entry the pivot does not divide into column t
    bool fold = false;
    for (int i = t + 1; i < rows && !fold; ++i)
      for (int j = t + 1; j < cols && !fold; ++j)
        if (a[i][j] % a[t][t] != 0) {
          col_add(a, t, j, 1); col_add(s.v, t, j, 1);
          fold = true;
        }
    if (fold) continue;
    if (a[t][t] < 0) {
      for (size_t k = 0; k < a[t].size(); ++k) a[t][k] = -a[t][k];
      for (size_t k = 0; k < s.u[t].size(); ++k) s.u[t][k] = -s.u[t][k];
    }
    ++t;
  }
  s.d.assign(std::min(rows, cols), 0);
  for (int i = 0; i < (int)s.d.size(); ++i)
    s.d[i] = a[i][i];
  s.rank = t;
  return s;
}

std::optional<IVec> solve_integer(const IMat& a, const IVec& b) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  if ((int)b.size() != rows)
    fail("DatumMismatch", "solve_integer: shape mismatch");
  Smith s = smith_normal_form(a);
  IVec ub = imat_apply(s.u, b);
  IVec z(cols, 0);
  for (int i = 0; i < rows; ++i) {
    Int d = (i < (int)s.d.size()) ? s.d[i] : 0;
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % d != 0) return std::nullopt;
      z[i] = ub[i] / d;
    }
  }
  return imat_apply(s.v, z);
}

std::optional<RatVec> solve_rational(RMat a, RatVec b) {
  int n = (int)a.size();
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) { p = r; break; }
    if (p < 0) return std::nullopt;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    Rat inv = Rat(1) / a[c][c];
    for (int j = c; j < n; ++j) a[c][j] *= inv;
    b[c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  return b;
}

std::optional<RMat> invert_rational(const RMat& a) {
  int n = (int)a.size();
  RMat inv(n, RatVec(n, Rat(0)));
  for (int k = 0; k < n; ++k) {
    RatVec e(n, Rat(0));
    e[k] = 1;
    auto col = solve_rational(a, e);
    if (!col) return std::nullopt;
    for (int i = 0; i < n; ++i)
      inv[i][k] = (*col)[i];
  }
  return inv;
}

Rat det_rational(RMat a) {
  int n = (int)a.size();
  Rat det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) { p = r; break; }
    if (p < 0) return Rat(0);
    if (p != c) {
      std::swap(a[c], a[p]);
      det = -det;
    }
    det *= a[c][c];
    Rat inv = Rat(1) / a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rat f = a[r][c] * inv;
      for (int j = c; j < n; ++j)
        a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

RMat rmat_from(const IMat& a) {
  RMat r;
  r.reserve(a.size());
  for (const IVec& row : a)
    r.push_back(to_ratvec(row));
  return r;
}

}  // namespace adlv
