#include <doctest.h>

#include <Eigen/Dense>

#include "g235/metric.hpp"
#include "support.hpp"

using namespace g235;
using namespace fixtures;

namespace {

const std::vector<Point> kPerturbedPoints{{0.3, -0.2, 0.1, 0.7, 0.4}, {-0.5, 0.4, 0.2, 1.1, -0.3}};

Pipeline flat() { return run_pipeline(hilbert_cartan({kHilbertCartanBase})); }
Pipeline bumpy() { return run_pipeline(perturbed(kPerturbedPoints)); }

double max_abs(const VectorField& v, const Point& pt) {
  double m = 0.0;
  for (int i = 0; i < kDim; ++i) m = std::max(m, std::abs(evaluate(v[i], pt)));
  return m;
}

double max_abs(const HField& h, const Point& pt) {
  return std::max(std::abs(evaluate(h.a, pt)), std::abs(evaluate(h.b, pt)));
}

HField random_hfield(Gen& gen) { return {gen.polynomial(2), gen.polynomial(2)}; }

VectorField random_field(Gen& gen) {
  VectorField v;
  for (auto& c : v.c) c = gen.polynomial(2);
  return v;
}

HField pi_of(const Pipeline& p, const VectorField& zeta, Decomposition* out = nullptr) {
  auto& d = *p.diff;
  Decomposition z = decompose(zeta, p.data.frame, p.data.ext, p.data.reeb, d);
  if (out) *out = z;
  return project_minus1(z, p.data.phi, p.data.psi, p.data.reeb, d, p.data.constants);
}

}  // namespace

TEST_SUITE("reeb field") {
  TEST_CASE("normalized against the contact form") {
    for (const auto& p : {flat(), bumpy()}) {
      const auto& r = p.data.reeb;
      for (const auto& pt : p.data.dist.samples) {
        CHECK(evaluate(r.coords[2] * p.data.alpha.scale, pt) == doctest::Approx(1.0));
        CHECK(evaluate(r.coords[3], pt) == 0.0);
        CHECK(evaluate(r.coords[4], pt) == 0.0);
      }
    }
  }

  TEST_CASE("flat model value at the base point") {
    Pipeline p = flat();
    std::array<double, kDim> expect{0, 0, 1, 0, 2};
    for (int i = 0; i < kDim; ++i) CHECK(evaluate(p.data.reeb.r[i], kHilbertCartanBase) == doctest::Approx(expect[static_cast<std::size_t>(i)]));
  }

  TEST_CASE("the induced connection keeps phi parallel") {
    for (const auto& p : {flat(), bumpy()}) {
      auto lambda = gr2_derivative(p.data.conn, p.data.frame, *p.diff);
      for (const auto& pt : p.data.dist.samples) {
        CHECK(std::abs(evaluate(lambda[0], pt)) < 1e-12);
        CHECK(std::abs(evaluate(lambda[1], pt)) < 1e-12);
      }
    }
  }

  TEST_CASE("moving r inside H breaks parallelism") {
    Pipeline p = bumpy();
    auto& d = *p.diff;
    auto coords = p.data.reeb.coords;
    coords[0] = coords[0] + Expr(Rational(1, 10));
    ReebField moved = make_section(p.data.frame, coords, d);
    PartialConnection conn = partial_connection(p.data.frame, moved, d);
    auto lambda = gr2_derivative(conn, p.data.frame, d);
    double worst = 0.0;
    for (const auto& pt : p.data.dist.samples) worst = std::max(worst, std::abs(evaluate(lambda[1], pt)));
    CHECK(worst > 1e-3);
  }

  TEST_CASE("torsion vanishes on random sections of H") {
    Gen gen(31);
    Pipeline p = bumpy();
    for (int n = 0; n < 5; ++n) {
      HField a = random_hfield(gen), b = random_hfield(gen);
      auto res = torsion_residual(p.data, a, b, *p.diff);
      for (const auto& pt : p.data.dist.samples) {
        for (const auto& c : res) CHECK(std::abs(evaluate(c, pt)) < 1e-9);
      }
    }
  }

  TEST_CASE("a vanishing contact form is rejected") {
    CHECK_THROWS_AS(make_contact_form(Expr(0), {}), InvariantViolation);
    CHECK_THROWS_AS(make_contact_form(x(), {Point{}}), InvariantViolation);
    CHECK_NOTHROW(make_contact_form(Expr(1) + pow(x(), 2), {Point{}}));
  }
}

TEST_SUITE("extended form") {
  TEST_CASE("values on the defining frame") {
    for (const auto& p : {flat(), bumpy()}) {
      const auto& r = p.data.reeb;
      const std::array<VectorField, kDim> cols{p.data.frame.f[0], p.data.frame.f[1], r.r, r.r_bracket[0],
                                               r.r_bracket[1]};
      for (const auto& pt : p.data.dist.samples) {
        for (std::size_t k = 0; k < kDim; ++k) {
          double expect = k == 2 ? 1.0 : 0.0;
          CHECK(std::abs(evaluate(apply_form(p.data.ext, cols[k]), pt) - expect) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("agrees with a dense numeric solve") {
    Pipeline p = bumpy();
    const auto& r = p.data.reeb;
    const std::array<VectorField, kDim> cols{p.data.frame.f[0], p.data.frame.f[1], r.r, r.r_bracket[0],
                                             r.r_bracket[1]};
    for (const auto& pt : p.data.dist.samples) {
      Eigen::Matrix<double, kDim, kDim> m;
      for (int i = 0; i < kDim; ++i) {
        for (int k = 0; k < kDim; ++k) m(i, k) = evaluate(cols[static_cast<std::size_t>(k)][i], pt);
      }
      Eigen::Matrix<double, kDim, 1> e3 = Eigen::Matrix<double, kDim, 1>::Zero();
      e3(2) = 1.0;
      Eigen::Matrix<double, kDim, 1> w = m.transpose().fullPivLu().solve(e3);
      for (int i = 0; i < kDim; ++i) CHECK(rel_diff(w(i), evaluate(p.data.ext.c[static_cast<std::size_t>(i)], pt)) < 1e-12);
    }
  }

  TEST_CASE("r lies in the kernel of its exterior derivative against H") {
    for (const auto& p : {flat(), bumpy()}) {
      TwoForm dw = exterior_derivative(p.data.ext, *p.diff);
      for (const auto& pt : p.data.dist.samples) {
        for (int i = 0; i < 2; ++i) {
          CHECK(std::abs(evaluate(two_form_apply(dw, p.data.reeb.r, p.data.frame.f[static_cast<std::size_t>(i)]), pt)) < 1e-12);
        }
        // d w(f1, f2) = -w([f1, f2]) = -scale
        double w12 = evaluate(two_form_apply(dw, p.data.frame.f[0], p.data.frame.f[1]), pt);
        CHECK(w12 == doctest::Approx(-evaluate(p.data.alpha.scale, pt)));
      }
    }
  }
}

TEST_SUITE("decomposition") {
  TEST_CASE("examples") {
    Pipeline p = bumpy();
    Decomposition z;
    HField pi = pi_of(p, p.data.reeb.r_bracket[0], &z);
    for (const auto& pt : p.data.dist.samples) {
      CHECK(evaluate(z.zeta1.a, pt) == doctest::Approx(1.0));
      CHECK(std::abs(evaluate(z.zeta1.b, pt)) < 1e-12);
      CHECK(std::abs(evaluate(z.a0, pt)) < 1e-12);
      CHECK(max_abs(z.zeta2, pt) < 1e-12);
    }

    // pi on the Reeb field is zero
    pi = pi_of(p, p.data.reeb.r, &z);
    for (const auto& pt : p.data.dist.samples) {
      CHECK(evaluate(z.a0, pt) == doctest::Approx(1.0));
      CHECK(max_abs(pi, pt) < 1e-12);
    }
  }

  TEST_CASE("pi restricts to the identity on H") {
    Gen gen(32);
    Pipeline p = bumpy();
    for (int n = 0; n < 5; ++n) {
      HField h = random_hfield(gen);
      HField pi = pi_of(p, to_vector_field(h, p.data.frame));
      for (const auto& pt : p.data.dist.samples) CHECK(max_abs(pi - h, pt) < 1e-10);
    }
  }

  TEST_CASE("the pieces reassemble the field and pi is idempotent") {
    Gen gen(33);
    Pipeline p = bumpy();
    auto& d = *p.diff;
    const auto& fr = p.data.frame;
    for (int n = 0; n < 5; ++n) {
      VectorField zeta = random_field(gen);
      Decomposition z;
      HField pi = pi_of(p, zeta, &z);
      VectorField back = lie_bracket(p.data.reeb.r, to_vector_field(z.zeta1, fr), d) + z.a0 * p.data.reeb.r +
                         to_vector_field(z.zeta2, fr);
      HField pi2 = pi_of(p, to_vector_field(pi, fr));
      for (const auto& pt : p.data.dist.samples) {
        double scale = std::max(1.0, max_abs(zeta, pt));
        CHECK(max_abs(back - zeta, pt) / scale < 1e-9);
        for (const auto& res : z.residual) CHECK(std::abs(evaluate(res, pt)) / scale < 1e-9);
        CHECK(max_abs(pi2 - pi, pt) / scale < 1e-9);
      }
    }
  }

  TEST_CASE("pi kills the isotropic complement") {
    Pipeline p = bumpy();
    for (const auto& v : isotropic_complement(p.data)) {
      Decomposition z;
      HField pi = pi_of(p, v, &z);
      for (const auto& pt : p.data.dist.samples) {
        CHECK(max_abs(pi, pt) < 1e-9);
        CHECK(std::abs(evaluate(z.a0, pt)) < 1e-9);
      }
    }
  }
}

TEST_SUITE("rescaling") {
  TEST_CASE("f = 0 changes nothing") {
    Pipeline p = bumpy();
    auto& d = *p.diff;
    Expr f(0);
    ReebField r = rescaled_reeb(f, p.data, d);
    ExtendedForm w = rescaled_extension(f, p.data, d);
    for (const auto& pt : p.data.dist.samples) {
      CHECK(max_abs(r.r - p.data.reeb.r, pt) < 1e-14);
      for (std::size_t i = 0; i < kDim; ++i) CHECK(std::abs(evaluate(w.c[i] - p.data.ext.c[i], pt)) < 1e-14);
      for (std::size_t i = 0; i < kDim; ++i) {
        HField pi = rescaled_projection(f, p.data.coord_decomp[i], p.data.coord_proj[i], p.data, d);
        CHECK(max_abs(pi - p.data.coord_proj[i], pt) < 1e-14);
      }
    }
  }

  TEST_CASE("a constant f only scales r and w") {
    Pipeline p = bumpy();
    auto& d = *p.diff;
    Expr f(Rational(7, 10));
    double e = std::exp(0.7);
    ReebField r = rescaled_reeb(f, p.data, d);
    ExtendedForm w = rescaled_extension(f, p.data, d);
    for (const auto& pt : p.data.dist.samples) {
      CHECK(max_abs(r.r - exp(Expr(Rational(-7, 10))) * p.data.reeb.r, pt) < 1e-13);
      for (std::size_t i = 0; i < kDim; ++i) {
        CHECK(rel_diff(evaluate(w.c[i], pt), e * evaluate(p.data.ext.c[i], pt)) < 1e-13);
      }
    }
  }

  TEST_CASE("the closed forms match an independent run") {
    Gen gen(34);
    Distribution dist = perturbed(kPerturbedPoints);
    for (int n = 0; n < 3; ++n) {
      Expr f = gen.polynomial(2);
      Pipeline base = run_pipeline(dist);
      Pipeline resc = run_pipeline(dist, rescaled_form(base.data.alpha, f));
      auto res = compare_rescaling_laws(base, resc, f, dist.samples);
      CHECK(res.reeb < 1e-9);
      CHECK(res.extension < 1e-9);
      CHECK(res.projection < 1e-9);
    }
  }

  TEST_CASE("delta sees f only through its derivatives along H") {
    // l = (z - z0) - q0^2 (x - x0) has dl = 0 on H at the flat base point
    Pipeline run = flat();
    auto& d = *run.diff;
    const Point& pt = kHilbertCartanBase;
    Expr f = x() * p() + pow(q(), 2) * Expr(Rational(1, 3));
    Expr l = z() - x();
    HField a = rescaling_delta(f, run.data, d), b = rescaling_delta(f + l, run.data, d);
    CHECK(max_abs(a - b, pt) < 1e-14);
    HField c = rescaling_delta(f + x(), run.data, d);
    CHECK(max_abs(a - c, pt) > 1e-3);
  }
}

TEST_SUITE("sign flip") {
  TEST_CASE("negating alpha negates r and w and keeps pi") {
    Distribution dist = perturbed(kPerturbedPoints);
    Pipeline a = run_pipeline(dist);
    Pipeline b = run_pipeline(dist, negated_form(a.data.alpha));
    for (const auto& pt : dist.samples) {
      CHECK(max_abs(a.data.reeb.r + b.data.reeb.r, pt) < 1e-12);
      for (std::size_t i = 0; i < kDim; ++i) {
        CHECK(std::abs(evaluate(a.data.ext.c[i] + b.data.ext.c[i], pt)) < 1e-12);
        CHECK(max_abs(a.data.coord_decomp[i].zeta1 + b.data.coord_decomp[i].zeta1, pt) < 1e-12);
        CHECK(max_abs(a.data.coord_decomp[i].zeta2 - b.data.coord_decomp[i].zeta2, pt) < 1e-12);
        CHECK(max_abs(a.data.coord_proj[i] - b.data.coord_proj[i], pt) < 1e-10);
      }
    }
  }
}

TEST_SUITE("constants") {
  TEST_CASE("get, set and unknown keys") {
    Constants k;
    CHECK(k.is_standard());
    CHECK(Constants::keys().size() == 8);
    CHECK(k.get("phi_weight") == Rational(-2, 5));
    CHECK(k.get("psi_weight") == Rational(7, 5));
    CHECK(k.get("metric_aa") == Rational(-4, 3));
    k.set("psi_half", Rational(1, 3));
    CHECK(k.psi_half == Rational(1, 3));
    CHECK_FALSE(k.is_standard());
    CHECK_THROWS_AS(k.get("nope"), InvariantViolation);
    CHECK_THROWS_AS(k.set("nope", Rational(1)), InvariantViolation);
  }
}
