#include "momograd/directions.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <cmath>

using namespace momograd;
using testutil::rand_matrix;
using testutil::rand_vector;

namespace {

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

}  // namespace

TEST_CASE("gamma rule") {
  MmgParams params;
  DirectionState state;

  SUBCASE("constant rule always returns 1") {
    params.gamma_rule = GammaRule::Constant;
    state.k = 3;
    state.prev_x = vec1(0);
    state.prev_v = vec1(0);
    CHECK(compute_gamma(state, vec1(9), vec1(9), params) == 1.0);
  }

  SUBCASE("spectral quotient") {
    params.gamma_rule = GammaRule::BarzilaiBorwein;

    // k = 0 has no history: gamma_0 = 1.
    CHECK(compute_gamma(state, vec1(1), vec1(1), params) == 1.0);

    state.k = 1;
    Vector px(2), pv(2), cx(2), cv(2);
    px << 0, 0;
    pv << 0, 0;
    cx << 2, 0;  // q = x^k - x^{k-1} = (2, 0)
    cv << 1, 0;  // h = v^k - v^{k-1} = (1, 0)
    state.prev_x = px;
    state.prev_v = pv;
    CHECK(compute_gamma(state, cx, cv, params) == doctest::Approx(2.0));

    // Tiny quotient falls back to 1, as does an undefined one.
    cx << 1e-22, 0;
    CHECK(compute_gamma(state, cx, cv, params) == 1.0);
    CHECK(compute_gamma(state, px, pv, params) == 1.0);

    // Huge quotient is capped but stays >= gamma_star.
    cx << 1e9, 0;
    cv << 1e-3, 0;
    const double g = compute_gamma(state, cx, cv, params);
    CHECK(g == doctest::Approx(params.gamma_max));
    CHECK(g >= params.gamma_star);
  }
}

TEST_CASE("phi and beta arithmetic") {
  CHECK(compute_phi(3, 5, 2, 2, 1) == doctest::Approx(7.0));
  CHECK(compute_phi(0, 0, 0, 1, 1) == doctest::Approx(1.0));
  CHECK(compute_phi(-4, 2, 1, 1, 1) == doctest::Approx(-1.0));

  CHECK(compute_beta(-4, 2, 8) == doctest::Approx(0.25));
  CHECK(compute_beta(-4, 2, 0) == 0.0);
  CHECK(compute_beta(-1, 1, 1) == doctest::Approx(1.0));
}

TEST_CASE("memory direction at k = 0 is gamma_0 v") {
  SubproblemSolution cur;
  cur.v = Vector(2);
  cur.v << -3, 1;
  Jacobian jf(2, 2);
  jf << 1, 0.5, 0.5, 1;  // psi(jf, v) = max(-2.5, -0.5) < 0
  const auto r = memory_direction(Vector::Zero(2), cur, jf, DirectionState{}, MmgParams{});
  CHECK(r.gamma == 1.0);
  CHECK(r.betas.empty());
  CHECK((r.d - cur.v).norm() == 0.0);
}

TEST_CASE("one memory step on the quadratic pair reproduces hand arithmetic") {
  // F = (x^2 - 4, (x - 1)^2) at x = 2 with one stored direction d0 = -2.
  Jacobian jf(2, 1);
  jf << 4, 2;
  SubproblemSolution cur;
  cur.v = vec1(-2);
  cur.theta = -2;
  const double psi_v = psi(jf, cur.v);  // -4
  CHECK(psi_v == doctest::Approx(-4.0));

  DirectionState state;
  state.advance(vec1(3), vec1(-2), -4, vec1(-2), -4, 1);
  REQUIRE(state.k == 1);
  REQUIRE(state.history.size() == 1);

  MmgParams params;
  params.memory = 1;
  const auto r = memory_direction(vec1(2), cur, jf, state, params);

  // phi = (psi(x, d0) + ||JF|| ||d0|| + zeta) / gamma = (-4 + 4*2 + 1e-4) / 1
  const double phi = 4.0 + 1e-4;
  const double beta = 4.0 / phi;
  REQUIRE(r.betas.size() == 1);
  CHECK(r.gamma == 1.0);
  CHECK(r.betas[0] == doctest::Approx(beta).epsilon(1e-14));
  CHECK(r.d[0] == doctest::Approx(-2.0 - 2.0 * beta).epsilon(1e-14));

  // Sufficient descent with gamma* = 1e-10.
  CHECK(psi(jf, r.d) <= 0.5 * params.gamma_star * psi_v);
}

TEST_CASE("memory direction guarantees sufficient descent for any history") {
  SplitMix64 rng(9001);
  for (int t = 0; t < 400; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 4);
    const int n = 1 + static_cast<int>(rng.next() % 5);
    const Jacobian jf = rand_matrix(rng, m, n, -10, 10);
    const auto sub = solve_dual(jf);
    // Directions are only ever requested at non-critical iterates (the
    // solver stops on |theta| <= eps first), so mirror that precondition.
    if (sub.theta > -1e-6) continue;

    MmgParams params;
    params.memory = 1 + static_cast<int>(rng.next() % 5);
    params.gamma_rule = (rng.next() % 2) ? GammaRule::BarzilaiBorwein : GammaRule::Constant;

    DirectionState state;
    const int steps = static_cast<int>(rng.next() % 4);
    for (int s = 0; s < steps; ++s) {
      // Arbitrary stored directions: the guarantee cannot depend on them.
      state.advance(rand_vector(rng, n, -5, 5), rand_vector(rng, n, -5, 5),
                    rng.uniform(-10, -0.1), rand_vector(rng, n, -5, 5), rng.uniform(-10, 10),
                    params.memory);
    }

    const double psi_v = psi(jf, sub.v);
    const auto r = memory_direction(rand_vector(rng, n, -5, 5), sub, jf, state, params);
    CHECK(psi(jf, r.d) <= 0.5 * params.gamma_star * psi_v + 1e-12);
    CHECK(r.gamma >= params.gamma_star);
    for (double b : r.betas) CHECK(b >= 0.0);
    CHECK(static_cast<int>(r.betas.size()) == std::min(state.k, params.memory));
  }
}

TEST_CASE("history buffer keeps the newest min(k, N) directions") {
  DirectionState state;
  const int memory = 2;
  for (int k = 0; k < 4; ++k) {
    state.advance(vec1(k), vec1(0), -1, vec1(10 + k), -1, memory);
    CHECK(state.k == k + 1);
    CHECK(static_cast<int>(state.history.size()) == std::min(k + 1, memory));
    CHECK(state.history.front()[0] == doctest::Approx(10 + k));
  }
  CHECK(state.history.back()[0] == doctest::Approx(12));
}

TEST_CASE("baseline directions") {
  // J = (sqrt 2): v = -sqrt2, psi_v = -2. Previous data chosen by hand.
  Jacobian jf(1, 1);
  jf << std::sqrt(2.0);
  SubproblemSolution cur;
  cur.v = vec1(-std::sqrt(2.0));
  cur.theta = -1;

  DirectionState state;
  state.advance(vec1(1), vec1(-2), -4, vec1(-2), -4, 1);

  SUBCASE("SD ignores history") {
    const auto r = baseline_direction(CgKind::SD, cur, jf, state);
    CHECK((r.d - cur.v).norm() == 0.0);
    CHECK(r.betas.empty());
  }

  SUBCASE("FR ratio of consecutive psi_v") {
    const auto r = baseline_direction(CgKind::FR, cur, jf, state);
    REQUIRE(r.betas.size() == 1);
    CHECK(r.betas[0] == doctest::Approx(0.5));  // (-2)/(-4)
    CHECK(r.d[0] == doctest::Approx(cur.v[0] + 0.5 * (-2.0)));
  }

  SUBCASE("CD divides by previous psi_d") {
    const auto r = baseline_direction(CgKind::CD, cur, jf, state);
    REQUIRE(r.betas.size() == 1);
    CHECK(r.betas[0] == doctest::Approx(0.5));  // (-2)/(-4)
  }

  SUBCASE("HS quotient of differences, clipped at zero") {
    const auto r = baseline_direction(CgKind::HS, cur, jf, state);
    REQUIRE(r.betas.size() == 1);
    const double expected =
        (-2.0 - (-4.0)) / (psi(jf, vec1(-2.0)) - (-4.0));  // 2 / (4 - 2 sqrt 2)
    CHECK(r.betas[0] == doctest::Approx(expected));
  }

  SUBCASE("k = 0 always returns v") {
    for (auto kind : {CgKind::SD, CgKind::FR, CgKind::CD, CgKind::HS}) {
      const auto r = baseline_direction(kind, cur, jf, DirectionState{});
      CHECK((r.d - cur.v).norm() == 0.0);
    }
  }
}

TEST_CASE("HS zero denominator falls back to beta = 0") {
  Jacobian jf(1, 1);
  jf << 1;
  SubproblemSolution cur;
  cur.v = vec1(-1);  // psi_v = -1

  DirectionState state;
  // prev psi_v = -3, prev psi_d = psi(x^k, d_prev) = -2 makes the HS
  // denominator exactly zero.
  state.advance(vec1(1), vec1(-1), -3, vec1(-2), -2, 1);

  const auto r = baseline_direction(CgKind::HS, cur, jf, state);
  REQUIRE(r.betas.size() == 1);
  CHECK(r.betas[0] == 0.0);
  CHECK((r.d - cur.v).norm() == 0.0);
}

TEST_CASE("baselines never emit a non-descent direction") {
  SplitMix64 rng(4242);
  for (int t = 0; t < 400; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 4);
    const int n = 1 + static_cast<int>(rng.next() % 5);
    const Jacobian jf = rand_matrix(rng, m, n, -10, 10);
    const auto sub = solve_dual(jf);
    if (sub.theta > -1e-6) continue;  // criticality gate fires before directions

    DirectionState state;
    state.advance(rand_vector(rng, n, -5, 5), rand_vector(rng, n, -5, 5), rng.uniform(-10, -0.1),
                  rand_vector(rng, n, -5, 5), rng.uniform(-10, -0.01), 1);

    for (auto kind : {CgKind::SD, CgKind::FR, CgKind::CD, CgKind::HS}) {
      const auto r = baseline_direction(kind, sub, jf, state);
      CHECK(psi(jf, r.d) < 0.0);
      for (double b : r.betas) CHECK(b >= 0.0);
    }
  }
}
