#include <doctest.h>

#include "g235/distribution.hpp"
#include "support.hpp"

using namespace g235;
using namespace fixtures;

namespace {

double max_abs(const VectorField& v, const Point& pt) {
  double m = 0.0;
  for (int i = 0; i < kDim; ++i) m = std::max(m, std::abs(evaluate(v[i], pt)));
  return m;
}

VectorField random_field(Gen& gen) {
  VectorField v;
  for (auto& c : v.c) c = gen.polynomial(2);
  return v;
}

}  // namespace

TEST_SUITE("lie bracket") {
  TEST_CASE("examples") {
    Point pt{0.4, -1.2, 0.3, 0.9, 2.0};
    VectorField dx = VectorField::coordinate(0), dy = VectorField::coordinate(1);
    CHECK(max_abs(lie_bracket(dx, dy), pt) == 0.0);
    VectorField xdy = x() * dy;
    VectorField b = lie_bracket(xdy, dx);
    CHECK(evaluate(b[1], pt) == doctest::Approx(-1.0));
    CHECK(max_abs(b - (Expr(-1) * dy), pt) == 0.0);
  }

  TEST_CASE("bracket of the Monge fields against symbolic differentiation") {
    Gen gen(21);
    for (int n = 0; n < 10; ++n) {
      Expr F = gen.polynomial(3);
      Distribution d = monge_distribution({F}, {});
      VectorField b = lie_bracket(d.xi, d.eta);
      VectorField expect = VectorField::coordinate(2) + differentiate(F, 3) * VectorField::coordinate(4);
      for (int k = 0; k < 5; ++k) CHECK(max_abs(b - expect, gen.point()) < 1e-12);
    }
  }

  TEST_CASE("antisymmetry and Jacobi") {
    Gen gen(22);
    for (int n = 0; n < 10; ++n) {
      VectorField a = random_field(gen), b = random_field(gen), c = random_field(gen);
      Point pt = gen.point();
      CHECK(max_abs(lie_bracket(a, b) + lie_bracket(b, a), pt) < 1e-12);
      VectorField j = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
                      lie_bracket(c, lie_bracket(a, b));
      double scale = std::max({1.0, max_abs(a, pt), max_abs(b, pt), max_abs(c, pt)});
      CHECK(max_abs(j, pt) / (scale * scale * scale) < 1e-9);
    }
  }
}

TEST_SUITE("genericity") {
  TEST_CASE("the flat model at the base point") {
    auto rep = check_generic(hilbert_cartan({}), {kHilbertCartanBase});
    REQUIRE(rep.entries.size() == 1);
    const auto& e = rep.entries[0];
    CHECK(e.rank_h == 2);
    CHECK(e.rank_h2 == 3);
    CHECK(e.rank_full == 5);
    CHECK(rep.pass);
  }

  TEST_CASE("coordinate planes are integrable") {
    Distribution d{Chart::monge(), VectorField::coordinate(0), VectorField::coordinate(1), {}};
    auto rep = check_generic(d, {Point{}});
    CHECK_FALSE(rep.pass);
    CHECK(rep.entries[0].rank_h2 == 2);
  }

  TEST_CASE("a point where the growth stalls is flagged") {
    // F = q^3 is generic exactly where q != 0
    Distribution d = monge_distribution({pow(q(), 3)}, {});
    auto rep = check_generic(d, {Point{0, 0, 0, 1, 0}, Point{0.5, 0, 0, 0, 0}});
    CHECK(rep.entries[0].pass);
    CHECK_FALSE(rep.entries[1].pass);
    CHECK(rep.entries[1].abs_det < kDegenerateDet);
    CHECK_FALSE(rep.pass);
  }

  TEST_CASE("linear F never grows to five") {
    auto rep = check_generic(monge_distribution({q()}, {}), {Point{0.1, 0.2, 0.3, 0.4, 0.5}});
    CHECK_FALSE(rep.pass);
    CHECK(rep.entries[0].rank_full < 5);
  }

  TEST_CASE("perturbed model at random points") {
    Gen gen(23);
    auto pts = gen.points(10);
    CHECK(check_generic(perturbed({}), pts).pass);
  }
}

TEST_SUITE("adapted frame") {
  TEST_CASE("flat model brackets") {
    AdaptedFrame fr = adapted_frame(hilbert_cartan({kHilbertCartanBase}));
    Gen gen(24);
    for (int n = 0; n < 5; ++n) {
      Point pt = gen.point();
      // f3 = [xi, eta] = d_p + 2q d_z with this bracket order
      VectorField f3 = VectorField::coordinate(2) + (Expr(2) * q()) * VectorField::coordinate(4);
      CHECK(max_abs(fr.f[2] - f3, pt) < 1e-14);
      CHECK(max_abs(fr.f[3] - Expr(2) * VectorField::coordinate(4), pt) < 1e-14);
      CHECK(max_abs(fr.f[4] + VectorField::coordinate(1), pt) < 1e-14);
      CHECK(evaluate(fr.det, pt) != 0.0);
    }
  }

  TEST_CASE("constant coordinate fields are rejected") {
    Distribution d{Chart::monge(), VectorField::coordinate(0), VectorField::coordinate(1), {Point{}}};
    CHECK_THROWS_AS(adapted_frame(d), DegeneracyError);
  }

  TEST_CASE("coordinates in the frame reproduce the field") {
    Gen gen(25);
    AdaptedFrame fr = adapted_frame(perturbed({}));
    for (int n = 0; n < 5; ++n) {
      VectorField v = random_field(gen);
      VectorField back = fr.combine(fr.coords(v));
      CHECK(max_abs(back - v, gen.point(0.5)) < 1e-10);
    }
  }
}

TEST_SUITE("gr3 coordinates") {
  TEST_CASE("examples") {
    AdaptedFrame fr = adapted_frame(perturbed({}));
    Point pt{0.2, 0.1, -0.3, 0.8, 0.5};
    auto c = solve_in_gr3(fr.f[3], fr);
    CHECK(evaluate(c.c1, pt) == doctest::Approx(1.0));
    CHECK(std::abs(evaluate(c.c2, pt)) < 1e-12);
    c = solve_in_gr3(Expr(2) * fr.f[3] + Expr(3) * fr.f[4] + fr.f[0], fr);
    CHECK(evaluate(c.c1, pt) == doctest::Approx(2.0));
    CHECK(evaluate(c.c2, pt) == doctest::Approx(3.0));
    c = solve_in_gr3(fr.f[2], fr);
    CHECK(std::abs(evaluate(c.c1, pt)) < 1e-12);
    CHECK(std::abs(evaluate(c.c2, pt)) < 1e-12);
  }

  TEST_CASE("brackets of sections of H stay in the rank-3 bundle") {
    // [a f1 + b f2, c f1 + d f2] = (ad - bc) f3 mod H: the Levi bracket is tensorial
    Gen gen(26);
    AdaptedFrame fr = adapted_frame(perturbed({}));
    for (int n = 0; n < 10; ++n) {
      Expr a = gen.polynomial(2), b = gen.polynomial(2), c = gen.polynomial(2), d = gen.polynomial(2);
      VectorField u = a * fr.f[0] + b * fr.f[1], v = c * fr.f[0] + d * fr.f[1];
      auto k = fr.coords(lie_bracket(u, v));
      Point pt = gen.point(0.5);
      CHECK(std::abs(evaluate(k[3], pt)) < 1e-9);
      CHECK(std::abs(evaluate(k[4], pt)) < 1e-9);
      CHECK(rel_diff(evaluate(k[2], pt), evaluate(a * d - b * c, pt)) < 1e-9);
    }
  }
}
