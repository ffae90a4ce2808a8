#include "g235/g2.hpp"

#include <functional>
#include <sstream>

#include "g235/errors.hpp"

namespace g235 {

// --- QSqrt2 -----------------------------------------------------------------

QSqrt2 QSqrt2::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in Q(sqrt 2)");
  Rational n = norm();
  return {a_ / n, -b_ / n};
}

double QSqrt2::to_double() const { return a_.get_d() + b_.get_d() * 1.4142135623730951; }

std::string QSqrt2::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string bs = b_ == 1 ? "" : b_ == -1 ? "-" : b_.get_str() + "*";
  if (sgn(a_) == 0) return bs + "sqrt(2)";
  std::string out = a_.get_str();
  if (sgn(b_) > 0) return out + " + " + bs + "sqrt(2)";
  Rational nb = -b_;
  return out + " - " + (nb == 1 ? std::string() : nb.get_str() + "*") + "sqrt(2)";
}

// --- parameters ---------------------------------------------------------------

namespace {

template <class F>
G2Params zip(const G2Params& p, const G2Params& q, F f) {
  G2Params out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.A[i][j] = f(p.A[i][j], q.A[i][j]);
    out.X[i] = f(p.X[i], q.X[i]);
    out.Y[i] = f(p.Y[i], q.Y[i]);
    out.Z[i] = f(p.Z[i], q.Z[i]);
    out.W[i] = f(p.W[i], q.W[i]);
  }
  out.r = f(p.r, q.r);
  out.s = f(p.s, q.s);
  return out;
}

std::string vec_string(const Vec2& v) { return "(" + v[0].to_string() + ", " + v[1].to_string() + ")"; }

}  // namespace

G2Params operator+(const G2Params& p, const G2Params& q) {
  return zip(p, q, [](const QSqrt2& a, const QSqrt2& b) { return a + b; });
}

G2Params operator-(const G2Params& p, const G2Params& q) {
  return zip(p, q, [](const QSqrt2& a, const QSqrt2& b) { return a - b; });
}

G2Params operator*(const QSqrt2& c, const G2Params& p) {
  return zip(p, p, [&](const QSqrt2& a, const QSqrt2&) { return c * a; });
}

bool G2Params::is_zero() const { return *this == G2Params{}; }

std::string G2Params::to_string() const {
  std::ostringstream os;
  os << "A=[" << vec_string(A[0]) << ", " << vec_string(A[1]) << "] X=" << vec_string(X) << " Y=" << vec_string(Y)
     << " Z=" << vec_string(Z) << " W=" << vec_string(W) << " r=" << r.to_string() << " s=" << s.to_string();
  return os.str();
}

// --- Mat7 ---------------------------------------------------------------------

Mat7 Mat7::transpose() const {
  Mat7 t;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

QSqrt2 Mat7::trace() const {
  QSqrt2 t;
  for (int i = 0; i < 7; ++i) t += (*this)(i, i);
  return t;
}

bool Mat7::is_zero() const {
  for (const auto& e : m_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

Mat7 operator+(const Mat7& x, const Mat7& y) {
  Mat7 r;
  for (std::size_t k = 0; k < 49; ++k) r.m_[k] = x.m_[k] + y.m_[k];
  return r;
}

Mat7 operator-(const Mat7& x, const Mat7& y) {
  Mat7 r;
  for (std::size_t k = 0; k < 49; ++k) r.m_[k] = x.m_[k] - y.m_[k];
  return r;
}

Mat7 operator*(const Mat7& x, const Mat7& y) {
  Mat7 r;
  for (int i = 0; i < 7; ++i) {
    for (int k = 0; k < 7; ++k) {
      const QSqrt2& a = x(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < 7; ++j) {
        if (!y(k, j).is_zero()) r(i, j) += a * y(k, j);
      }
    }
  }
  return r;
}

// --- embedding ------------------------------------------------------------------

Mat7 g2_embed(const G2Params& p) {
  const QSqrt2 rt2 = QSqrt2::sqrt2();
  const QSqrt2 inv_rt2{0, Rational(1, 2)};
  const QSqrt2 tr = p.A[0][0] + p.A[1][1];
  Mat7 m;
  // row 0: tr A | Z | s | W | 0
  m(0, 0) = tr;
  m(0, 3) = p.s;
  for (int i = 0; i < 2; ++i) {
    m(0, 1 + i) = p.Z[static_cast<std::size_t>(i)];
    m(0, 4 + i) = p.W[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < 2; ++i) {
    auto u = static_cast<std::size_t>(i);
    // rows 1-2: X | A | sqrt2 J Z^t | s/sqrt2 J | -W^t
    m(1 + i, 0) = p.X[u];
    for (int j = 0; j < 2; ++j) m(1 + i, 1 + j) = p.A[u][static_cast<std::size_t>(j)];
    m(1 + i, 6) = -p.W[u];
    // rows 4-5: Y | -r/sqrt2 J | sqrt2 J X | -A^t | -Z^t
    m(4 + i, 0) = p.Y[u];
    for (int j = 0; j < 2; ++j) m(4 + i, 4 + j) = -p.A[static_cast<std::size_t>(j)][u];
    m(4 + i, 6) = -p.Z[u];
    // row 6: 0 | -Y^t | r | -X^t | -tr A
    m(6, 1 + i) = -p.Y[u];
    m(6, 4 + i) = -p.X[u];
  }
  // J v = (-v1, v0), v^t J = (v1, -v0)
  m(1, 3) = -(rt2 * p.Z[1]);
  m(2, 3) = rt2 * p.Z[0];
  m(1, 5) = -(inv_rt2 * p.s);
  m(2, 4) = inv_rt2 * p.s;
  // row 3: r | -sqrt2 X^t J | 0 | -sqrt2 Z J | s
  m(3, 0) = p.r;
  m(3, 1) = -(rt2 * p.X[1]);
  m(3, 2) = rt2 * p.X[0];
  m(3, 4) = -(rt2 * p.Z[1]);
  m(3, 5) = rt2 * p.Z[0];
  m(3, 6) = p.s;
  m(4, 2) = inv_rt2 * p.r;
  m(5, 1) = -(inv_rt2 * p.r);
  m(4, 3) = -(rt2 * p.X[1]);
  m(5, 3) = rt2 * p.X[0];
  m(6, 3) = p.r;
  m(6, 6) = -tr;
  return m;
}

G2Params g2_recover(const Mat7& m) {
  G2Params p;
  for (int i = 0; i < 2; ++i) {
    auto u = static_cast<std::size_t>(i);
    p.X[u] = m(1 + i, 0);
    p.Y[u] = m(4 + i, 0);
    p.Z[u] = m(0, 1 + i);
    p.W[u] = m(0, 4 + i);
    for (int j = 0; j < 2; ++j) p.A[u][static_cast<std::size_t>(j)] = m(1 + i, 1 + j);
  }
  p.r = m(3, 0);
  p.s = m(0, 3);
  Mat7 back = g2_embed(p);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      if (!(back(i, j) == m(i, j))) {
        throw ClosureError("matrix leaves the algebra at entry (" + std::to_string(i) + ", " + std::to_string(j) +
                           "): " + m(i, j).to_string() + " vs " + back(i, j).to_string());
      }
    }
  }
  return p;
}

G2Params g2_bracket(const G2Params& p, const G2Params& q) {
  Mat7 a = g2_embed(p);
  Mat7 b = g2_embed(q);
  return g2_recover(a * b - b * a);
}

Mat7 gram_matrix() {
  Mat7 g;
  const QSqrt2 half{Rational(1, 2)};
  for (auto [i, j] : {std::pair{0, 6}, std::pair{1, 4}, std::pair{2, 5}}) {
    g(i, j) = half;
    g(j, i) = half;
  }
  g(3, 3) = QSqrt2(-1);
  return g;
}

Mat7 preserved_gram_matrix() {
  Mat7 g = gram_matrix();
  g(3, 3) = QSqrt2(Rational(-1, 2));
  return g;
}

QSqrt2 pairing_B(const G2Params& u, const G2Params& v) {
  Mat7 a = g2_embed(u);
  Mat7 b = g2_embed(v);
  QSqrt2 t;
  for (int i = 0; i < 7; ++i) {
    for (int k = 0; k < 7; ++k) {
      if (!a(i, k).is_zero() && !b(k, i).is_zero()) t += a(i, k) * b(k, i);
    }
  }
  return QSqrt2(Rational(1, 6)) * t;
}

QSqrt2 conformal_product(const LowerPart& u, const LowerPart& v) {
  QSqrt2 out = -(u.r * v.r);
  for (std::size_t i = 0; i < 2; ++i) out += u.X[i] * v.Y[i] + u.Y[i] * v.X[i];
  return out;
}

// --- grading --------------------------------------------------------------------

G2Params component(const G2Params& p, int degree) {
  G2Params out;
  switch (degree) {
    case -3: out.Y = p.Y; break;
    case -2: out.r = p.r; break;
    case -1: out.X = p.X; break;
    case 0: out.A = p.A; break;
    case 1: out.Z = p.Z; break;
    case 2: out.s = p.s; break;
    case 3: out.W = p.W; break;
    default: break;
  }
  return out;
}

GradedDecomposition graded(const G2Params& p) {
  GradedDecomposition g;
  for (int d = -3; d <= 3; ++d) g.parts[static_cast<std::size_t>(d + 3)] = component(p, d);
  return g;
}

G2Params filtration(const G2Params& p, int i) {
  G2Params out;
  for (int d = std::max(i, -3); d <= 3; ++d) out = out + component(p, d);
  return out;
}

int basis_degree(int k) {
  static const std::array<int, 14> deg{-3, -3, -2, -1, -1, 0, 0, 0, 0, 1, 1, 2, 3, 3};
  return deg.at(static_cast<std::size_t>(k));
}

G2Params basis_element(int k) {
  G2Params p;
  const QSqrt2 one(1);
  switch (k) {
    case 0: p.Y[0] = one; break;
    case 1: p.Y[1] = one; break;
    case 2: p.r = one; break;
    case 3: p.X[0] = one; break;
    case 4: p.X[1] = one; break;
    case 5: p.A[0][0] = one; break;
    case 6: p.A[0][1] = one; break;
    case 7: p.A[1][0] = one; break;
    case 8: p.A[1][1] = one; break;
    case 9: p.Z[0] = one; break;
    case 10: p.Z[1] = one; break;
    case 11: p.s = one; break;
    case 12: p.W[0] = one; break;
    case 13: p.W[1] = one; break;
    default: throw InvariantViolation("basis index out of range");
  }
  return p;
}

int embedded_rank(int degree) {
  std::vector<std::array<QSqrt2, 49>> rows;
  for (int k = 0; k < 14; ++k) {
    if (basis_degree(k) != degree) continue;
    Mat7 m = g2_embed(basis_element(k));
    std::array<QSqrt2, 49> row;
    for (int i = 0; i < 49; ++i) row[static_cast<std::size_t>(i)] = m(i / 7, i % 7);
    rows.push_back(row);
  }
  int rank = 0;
  for (std::size_t col = 0; col < 49 && static_cast<std::size_t>(rank) < rows.size(); ++col) {
    auto r0 = static_cast<std::size_t>(rank);
    std::size_t piv = r0;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r0], rows[piv]);
    QSqrt2 inv = rows[r0][col].inverse();
    for (std::size_t r = r0 + 1; r < rows.size(); ++r) {
      if (rows[r][col].is_zero()) continue;
      QSqrt2 f = rows[r][col] * inv;
      for (std::size_t c = col; c < 49; ++c) rows[r][c] -= f * rows[r0][c];
    }
    ++rank;
  }
  return rank;
}

// --- random draws ---------------------------------------------------------------

QSqrt2 random_scalar(std::mt19937_64& rng, bool rational_only) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<int> coin(0, 1);
  Rational a(num(rng), den(rng));
  a.canonicalize();
  Rational b(0);
  if (!rational_only && coin(rng) == 1) {
    b = Rational(num(rng), den(rng));
    b.canonicalize();
  }
  return {a, b};
}

G2Params random_params(std::mt19937_64& rng) {
  G2Params p;
  for (int d = -3; d <= 3; ++d) p = p + random_component(rng, d);
  return p;
}

G2Params random_component(std::mt19937_64& rng, int degree) {
  G2Params p;
  auto v = [&] { return Vec2{random_scalar(rng), random_scalar(rng)}; };
  switch (degree) {
    case -3: p.Y = v(); break;
    case -2: p.r = random_scalar(rng); break;
    case -1: p.X = v(); break;
    case 0: p.A = {v(), v()}; break;
    case 1: p.Z = v(); break;
    case 2: p.s = random_scalar(rng); break;
    case 3: p.W = v(); break;
    default: break;
  }
  return p;
}

// --- self-tests -----------------------------------------------------------------

namespace {

QSqrt2 nonzero_scalar(std::mt19937_64& rng) {
  for (;;) {
    QSqrt2 s = random_scalar(rng);
    if (!s.is_zero()) return s;
  }
}

// Runs `draws` trials; a trial returns an empty string on success.
G2Check run_check(const std::string& name, int draws, const std::function<std::string()>& trial) {
  G2Check c;
  c.name = name;
  for (int i = 0; i < draws; ++i) {
    std::string msg;
    try {
      msg = trial();
    } catch (const Error& e) {
      msg = e.what();
    }
    ++c.draws;
    if (!msg.empty()) {
      if (c.failures == 0) c.first_failure = "draw " + std::to_string(i) + ": " + msg;
      ++c.failures;
    }
  }
  return c;
}

std::string expect_equal(const G2Params& lhs, const G2Params& rhs) {
  if (lhs == rhs) return {};
  return "lhs " + lhs.to_string() + " rhs " + rhs.to_string();
}

std::string expect_equal(const QSqrt2& lhs, const QSqrt2& rhs) {
  if (lhs == rhs) return {};
  return "lhs " + lhs.to_string() + " rhs " + rhs.to_string();
}

G2Report finish(std::vector<G2Check> checks) {
  G2Report rep;
  rep.checks = std::move(checks);
  rep.pass = !rep.checks.empty();
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass();
  for (int d = -3; d <= 3; ++d) rep.dims[static_cast<std::size_t>(d + 3)] = embedded_rank(d);
  return rep;
}

}  // namespace

G2Report check_identities(std::uint64_t seed, int draws) {
  std::mt19937_64 rng(seed);
  std::vector<G2Check> checks;

  checks.push_back(run_check("sX", draws, [&] {
    G2Params s = random_component(rng, 2);
    G2Params x = random_component(rng, -1);
    G2Params y = random_component(rng, -3);
    QSqrt2 xy = x.X[0] * y.Y[0] + x.X[1] * y.Y[1];
    return expect_equal(pairing_B(g2_bracket(s, x), g2_bracket(s, y)), QSqrt2(2) * s.s * s.s * xy);
  }));

  checks.push_back(run_check("sX_unit", draws, [&] {
    G2Params s = random_component(rng, 2);
    G2Params x = random_component(rng, -1);
    G2Params y = random_component(rng, -3);
    QSqrt2 xy = x.X[0] * y.Y[0] + x.X[1] * y.Y[1];
    return expect_equal(pairing_B(g2_bracket(s, x), g2_bracket(s, y)), s.s * s.s * xy);
  }));

  checks.push_back(run_check("sr", draws, [&] {
    G2Params s = random_component(rng, 2);
    G2Params r1 = random_component(rng, -2);
    G2Params r2 = random_component(rng, -2);
    QSqrt2 rhs = QSqrt2(Rational(1, 4)) * s.s * s.s * r1.r * r2.r;
    return expect_equal(pairing_B(s, r1) * pairing_B(s, r2), rhs);
  }));

  checks.push_back(run_check("ZXX", draws, [&] {
    G2Params z = random_component(rng, 1);
    G2Params x1 = random_component(rng, -1);
    G2Params x2 = random_component(rng, -1);
    G2Params lhs = g2_bracket(g2_bracket(z, x1), x2);
    G2Params rhs = pairing_B(z, x1) * x2 - QSqrt2(3) * pairing_B(z, x2) * x1;
    return expect_equal(lhs, rhs);
  }));

  checks.push_back(run_check("ZXX2", draws, [&] {
    G2Params z = random_component(rng, 1);
    G2Params x1 = random_component(rng, -1);
    G2Params x2 = random_component(rng, -1);
    G2Params lhs = g2_bracket(z, g2_bracket(x1, x2));
    G2Params rhs = QSqrt2(4) * (pairing_B(z, x1) * x2 - pairing_B(z, x2) * x1);
    return expect_equal(lhs, rhs);
  }));

  // r0 is the g_{-2} element dual to s: B(r0, s) = r0 s / 2 = 1
  auto dual_r0 = [](const G2Params& s) {
    G2Params r0;
    r0.r = QSqrt2(2) / s.s;
    return r0;
  };

  checks.push_back(run_check("r0", draws, [&] {
    G2Params s;
    s.s = nonzero_scalar(rng);
    G2Params r0 = dual_r0(s);
    G2Params x = random_component(rng, -1);
    if (!(pairing_B(r0, s) == QSqrt2(1))) return std::string("B(r0, s) != 1");
    return expect_equal(g2_bracket(s, g2_bracket(r0, x)), QSqrt2(3) * x);
  }));

  checks.push_back(run_check("r0B", draws, [&] {
    G2Params s;
    s.s = nonzero_scalar(rng);
    G2Params r0 = dual_r0(s);
    G2Params x = random_component(rng, -1);
    G2Params x2 = random_component(rng, -1);
    QSqrt2 b = pairing_B(g2_bracket(s, x), g2_bracket(s, g2_bracket(r0, x2)));
    return expect_equal(b * r0, QSqrt2(6) * g2_bracket(x, x2));
  }));

  checks.push_back(run_check("r0B_half", draws, [&] {
    G2Params s;
    s.s = nonzero_scalar(rng);
    G2Params r0 = dual_r0(s);
    G2Params x = random_component(rng, -1);
    G2Params x2 = random_component(rng, -1);
    QSqrt2 b = pairing_B(g2_bracket(s, x), g2_bracket(s, g2_bracket(r0, x2)));
    return expect_equal(b * r0, QSqrt2(3) * g2_bracket(x, x2));
  }));

  return finish(std::move(checks));
}

G2Report check_invariants(std::uint64_t seed, int draws) {
  std::mt19937_64 rng(seed);
  std::vector<G2Check> checks;

  checks.push_back(run_check("closure", draws, [&] {
    g2_bracket(random_params(rng), random_params(rng));
    return std::string();
  }));

  {
    G2Check grading;
    grading.name = "grading";
    for (int i = -3; i <= 3; ++i) {
      for (int j = -3; j <= 3; ++j) {
        G2Check c = run_check("", draws, [&] {
          G2Params b = g2_bracket(random_component(rng, i), random_component(rng, j));
          if (b == component(b, i + j)) return std::string();
          return "[g" + std::to_string(i) + ", g" + std::to_string(j) + "] = " + b.to_string();
        });
        grading.draws += c.draws;
        if (c.failures > 0 && grading.failures == 0) grading.first_failure = c.first_failure;
        grading.failures += c.failures;
      }
    }
    checks.push_back(grading);
  }

  checks.push_back(run_check("jacobi", draws, [&] {
    G2Params a = random_params(rng), b = random_params(rng), c = random_params(rng);
    G2Params j = g2_bracket(a, g2_bracket(b, c)) + g2_bracket(b, g2_bracket(c, a)) + g2_bracket(c, g2_bracket(a, b));
    return j.is_zero() ? std::string() : "Jacobi sum " + j.to_string();
  }));

  for (auto [name, g] : {std::pair{"so34", gram_matrix()}, std::pair{"so34_half_x3", preserved_gram_matrix()}}) {
    checks.push_back(run_check(name, draws, [&] {
      Mat7 m = g2_embed(random_params(rng));
      Mat7 c = m.transpose() * g + g * m;
      for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) {
          if (!c(i, j).is_zero()) {
            return "(M^t G + G M)(" + std::to_string(i) + ", " + std::to_string(j) + ") = " + c(i, j).to_string();
          }
        }
      }
      return std::string();
    }));
  }

  {
    int i = 0;
    checks.push_back(run_check("duality", 3, [&] {
      ++i;
      std::vector<G2Params> up, down;
      for (int k = 0; k < 14; ++k) {
        if (basis_degree(k) == i) up.push_back(basis_element(k));
        if (basis_degree(k) == -i) down.push_back(basis_element(k));
      }
      if (up.size() != down.size()) return std::string("dimension mismatch");
      QSqrt2 det = up.size() == 1
                       ? pairing_B(up[0], down[0])
                       : pairing_B(up[0], down[0]) * pairing_B(up[1], down[1]) -
                             pairing_B(up[0], down[1]) * pairing_B(up[1], down[0]);
      return det.is_zero() ? "pairing g" + std::to_string(i) + " x g-" + std::to_string(i) + " degenerate"
                           : std::string();
    }));
  }

  {
    G2Check trace;
    trace.name = "trace_graded";
    for (int i = -3; i <= 3; ++i) {
      for (int j = -3; j <= 3; ++j) {
        if (i + j == 0) continue;
        G2Check c = run_check("", draws, [&] {
          QSqrt2 b = pairing_B(random_component(rng, i), random_component(rng, j));
          return b.is_zero() ? std::string() : "B(g" + std::to_string(i) + ", g" + std::to_string(j) + ") != 0";
        });
        trace.draws += c.draws;
        if (c.failures > 0 && trace.failures == 0) trace.first_failure = c.first_failure;
        trace.failures += c.failures;
      }
    }
    checks.push_back(trace);
  }

  checks.push_back(run_check("pairing_XZ", draws, [&] {
    G2Params x = random_component(rng, -1), z = random_component(rng, 1);
    return expect_equal(pairing_B(x, z), z.Z[0] * x.X[0] + z.Z[1] * x.X[1]);
  }));
  checks.push_back(run_check("pairing_rs", draws, [&] {
    G2Params r = random_component(rng, -2), s = random_component(rng, 2);
    return expect_equal(pairing_B(r, s), QSqrt2(Rational(1, 2)) * r.r * s.s);
  }));
  checks.push_back(run_check("pairing_YW", draws, [&] {
    G2Params y = random_component(rng, -3), w = random_component(rng, 3);
    return expect_equal(pairing_B(y, w), QSqrt2(Rational(1, 3)) * (w.W[0] * y.Y[0] + w.W[1] * y.Y[1]));
  }));

  {
    int d = -4;
    checks.push_back(run_check("dimensions", 7, [&] {
      ++d;
      int r = embedded_rank(d);
      int want = kGradingDims[static_cast<std::size_t>(d + 3)];
      return r == want ? std::string()
                       : "dim g" + std::to_string(d) + " = " + std::to_string(r) + ", want " + std::to_string(want);
    }));
  }

  return finish(std::move(checks));
}

}  // namespace g235
