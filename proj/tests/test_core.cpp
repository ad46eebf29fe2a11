#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qwalk/core.hpp"
#include "qwalk/errors.hpp"
#include "test_support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

void check_close(Complex actual, Complex expected, double tol) {
  CHECK_MESSAGE(std::abs(actual - expected) <= tol, "actual ", actual, " expected ", expected);
}

}  // namespace

TEST_CASE("cos_sin_2pi is exact at quarter turns and matches libm elsewhere") {
  CHECK(cos_sin_2pi(0.25).cos == 0.0);
  CHECK(cos_sin_2pi(0.25).sin == 1.0);
  CHECK(cos_sin_2pi(0.5).cos == -1.0);
  CHECK(cos_sin_2pi(0.75).sin == -1.0);
  CHECK(cos_sin_2pi(1.0).cos == 1.0);

  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double phi = random_phase(rng);
    const auto cs = cos_sin_2pi(phi);
    CHECK(std::abs(cs.cos - std::cos(2 * std::numbers::pi * phi)) <= 1e-15);
    CHECK(std::abs(cs.sin - std::sin(2 * std::numbers::pi * phi)) <= 1e-15);
  }
}

TEST_CASE("build_wojcik_coin_field") {
  const double h = 1.0 / kSqrt2;

  SUBCASE("phi = 1/4 puts i times Hadamard at the origin") {
    const auto field = CoinField::wojcik(0.25);
    const Matrix2 d = field.defect_coin().matrix();
    check_close(d.a, kI * h, 1e-15);
    check_close(d.b, kI * h, 1e-15);
    check_close(d.c, kI * h, 1e-15);
    check_close(d.d, -kI * h, 1e-15);
    CHECK(field.bulk_coin() == Coin::hadamard());
    CHECK(field.coin_at(7) == Coin::hadamard());
    CHECK(field.coin_at(-3) == Coin::hadamard());
    CHECK(field.phase() == 0.25);
  }
  SUBCASE("phi = 1/2 gives minus Hadamard") {
    const Matrix2 d = CoinField::wojcik(0.5).coin_at(0).matrix();
    check_close(d.a, -h, 1e-15);
    check_close(d.d, h, 1e-15);
  }
  SUBCASE("phi outside (0,1) is a domain error") {
    CHECK_THROWS_AS(CoinField::wojcik(0.0), DomainError);
    CHECK_THROWS_AS(CoinField::wojcik(1.0), DomainError);
    CHECK_THROWS_AS(CoinField::wojcik(-0.2), DomainError);
    CHECK_THROWS_AS(CoinField::wojcik(std::nan("")), DomainError);
  }
}

TEST_CASE("Coin rejects non-unitary matrices") {
  CHECK_THROWS_AS(Coin(Matrix2{1.0, 1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(Coin(Matrix2{1.0 + 1e-9, 0.0, 0.0, 1.0}), DomainError);
  CHECK_NOTHROW(Coin(Matrix2{0.0, 1.0, 1.0, 0.0}));
}

TEST_CASE("split_coin") {
  const double h = 1.0 / kSqrt2;

  SUBCASE("Hadamard") {
    const auto s = split_coin(Coin::hadamard());
    CHECK(s.p == Matrix2{h, h, 0.0, 0.0});
    CHECK(s.q == Matrix2{0.0, 0.0, h, -h});
  }
  SUBCASE("identity") {
    const auto s = split_coin(Coin::identity());
    CHECK(s.p == Matrix2{1.0, 0.0, 0.0, 0.0});
    CHECK(s.q == Matrix2{0.0, 0.0, 0.0, 1.0});
  }
  SUBCASE("reconstruction is bit-identical for random unitaries") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 500; ++k) {
      const Coin u(random_unitary(rng));
      const auto s = split_coin(u);
      CHECK(s.sum() == u.matrix());
      CHECK(s.p.c == 0.0);
      CHECK(s.p.d == 0.0);
      CHECK(s.q.a == 0.0);
      CHECK(s.q.b == 0.0);
    }
  }
}

TEST_CASE("step from an origin-localized left state") {
  const double phi = 0.3;
  const Complex w = unit_phase(phi);
  const auto field = CoinField::wojcik(phi);
  const auto s0 = WalkState::localized(8, {1.0, 0.0});

  const auto s1 = step(s0, field);
  CHECK(s1.time() == 1);
  check_close(s1.at(-1).left, w / kSqrt2, 1e-15);
  check_close(s1.at(-1).right, 0.0, 0.0);
  check_close(s1.at(1).left, 0.0, 0.0);
  check_close(s1.at(1).right, w / kSqrt2, 1e-15);
  for (int x = -8; x <= 8; ++x) {
    if (x == -1 || x == 1) continue;
    CHECK(s1.at(x).weight() == 0.0);
  }
}

TEST_CASE("evolve reproduces two hand steps") {
  const double phi = 0.3;
  const Complex w = unit_phase(phi);
  const auto field = CoinField::wojcik(phi);
  const auto s2 = evolve(WalkState::localized(8, {1.0, 0.0}), field, 2);

  // psi_2(-2) = P_{-1} psi_1(-1), psi_2(0) = P_1 psi_1(1) + Q_{-1} psi_1(-1), psi_2(2) = Q_1 psi_1(1)
  CHECK(s2.time() == 2);
  check_close(s2.at(-2).left, w / 2.0, 1e-15);
  check_close(s2.at(-2).right, 0.0, 1e-15);
  check_close(s2.at(0).left, w / 2.0, 1e-15);
  check_close(s2.at(0).right, w / 2.0, 1e-15);
  check_close(s2.at(2).left, 0.0, 1e-15);
  check_close(s2.at(2).right, -w / 2.0, 1e-15);
  CHECK(s2.at(-1).weight() == 0.0);
  CHECK(s2.at(1).weight() == 0.0);
}

TEST_CASE("evolve edge cases") {
  const auto field = CoinField::wojcik(0.4);
  std::mt19937_64 rng(3);
  const auto s = random_state(rng, 20, 5);

  CHECK(max_site_diff(evolve(s, field, 0), s) == 0.0);
  CHECK(evolve(s, field, 0).time() == s.time());
  CHECK_THROWS_AS(evolve(s, field, -1), DomainError);

  const WalkState zero(10);
  const auto z1 = step(zero, field);
  CHECK(total_norm(z1) == 0.0);
  CHECK_FALSE(z1.boundary_leak());
}

TEST_CASE("step agrees with the component-wise reference rule") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto field = CoinField::wojcik(random_phase(rng));
    const auto s = random_state(rng, 12, 10);
    CHECK(max_site_diff(step(s, field), reference_step(s, field)) <= 1e-15);
  }
}

TEST_CASE("unitarity: norm is conserved for interior-supported states") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto field = CoinField::wojcik(random_phase(rng));
    const auto s = random_state(rng, 40, 20);
    const double before = total_norm(s);
    const auto after = step(s, field);
    CHECK(std::abs(total_norm(after) - before) <= 1e-12 * before);
    CHECK_FALSE(after.boundary_leak());
  }

  SUBCASE("1000 steps from the origin") {
    const auto field = CoinField::wojcik(0.25);
    const auto s0 = WalkState::localized(1100, {1.0 / kSqrt2, kI / kSqrt2});
    const auto s = evolve(s0, field, 1000);
    CHECK(s.time() == 1000);
    CHECK_FALSE(s.boundary_leak());
    CHECK(std::abs(total_norm(s) - 1.0) <= 1e-12);
  }
}

TEST_CASE("linearity of step") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto field = CoinField::wojcik(random_phase(rng));
    const auto psi = random_state(rng, 15, 12);
    const auto phi = random_state(rng, 15, 12);
    const Complex a = random_complex(rng);
    const Complex b = random_complex(rng);

    WalkState combo(15);
    for (int x = -15; x <= 15; ++x) combo.set(x, a * psi.at(x) + b * phi.at(x));

    const auto lhs = step(combo, field);
    const auto sp = step(psi, field);
    const auto sq = step(phi, field);
    WalkState rhs(15);
    for (int x = -15; x <= 15; ++x) rhs.set(x, a * sp.at(x) + b * sq.at(x));
    CHECK(max_site_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("locality: a perturbation at x0 only changes x0 - 1 and x0 + 1") {
  std::mt19937_64 rng(31);
  const auto field = CoinField::wojcik(0.37);
  const auto base = random_state(rng, 20, 15);
  for (int x0 : {-10, -1, 0, 1, 9}) {
    WalkState bumped = base;
    bumped.set(x0, base.at(x0) + Amplitude{0.5, -0.25});
    const auto a = step(base, field);
    const auto b = step(bumped, field);
    for (int x = -20; x <= 20; ++x) {
      if (x == x0 - 1 || x == x0 + 1) continue;
      CHECK(a.at(x) == b.at(x));
    }
    CHECK(a.at(x0 - 1).left != b.at(x0 - 1).left);
    CHECK(a.at(x0 + 1).right != b.at(x0 + 1).right);
  }
}

TEST_CASE("measure and total_norm") {
  WalkState s(3);
  s.set(1, {0.6, 0.8 * kI});
  s.set(0, {1.0 / kSqrt2, kI / kSqrt2});
  const auto m = measure(s);
  CHECK(m.half_width == 3);
  CHECK(m.values.size() == 7);
  CHECK(m.at(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.at(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.at(-2) == 0.0);
  CHECK(m.at(17) == 0.0);

  CHECK(total_norm(WalkState::localized(4, {1.0, 0.0})) == 1.0);
  CHECK(total_norm(WalkState(4)) == 0.0);

  std::mt19937_64 rng(37);
  const auto r = random_state(rng, 10, 8);
  WalkState doubled(10);
  for (int x = -10; x <= 10; ++x) doubled.set(x, Complex(2.0) * r.at(x));
  CHECK(total_norm(doubled) == doctest::Approx(4.0 * total_norm(r)).epsilon(1e-15));
}

TEST_CASE("measure is invariant under a global phase") {
  std::mt19937_64 rng(41);
  const auto r = random_state(rng, 10, 10);
  const Complex g = std::polar(1.0, 1.234);
  WalkState rotated(10);
  for (int x = -10; x <= 10; ++x) rotated.set(x, g * r.at(x));
  const auto m1 = measure(r);
  const auto m2 = measure(rotated);
  for (int x = -10; x <= 10; ++x) {
    CHECK(std::abs(m1.at(x) - m2.at(x)) <= 1e-15 * m1.at(x));
  }
}

TEST_CASE("boundary leak detection") {
  const auto field = CoinField::wojcik(0.25);
  const auto s0 = WalkState::localized(5, {1.0, 0.0});
  // Reaches |x| = 4 = L - 1 after four steps with weight far above 1e-14.
  CHECK_FALSE(evolve(s0, field, 3).boundary_leak());
  CHECK(evolve(s0, field, 4).boundary_leak());
  // Sticky once raised.
  CHECK(evolve(s0, field, 9).boundary_leak());

  CHECK_THROWS_AS(time_averaged_measure(s0, field, 10), BoundaryLeakError);
}

TEST_CASE("time_averaged_measure") {
  const Amplitude origin{1.0 / kSqrt2, kI / kSqrt2};

  SUBCASE("T = 1 is the initial measure") {
    const auto s0 = WalkState::localized(4, origin);
    const auto avg = time_averaged_measure(s0, CoinField::wojcik(0.25), 1);
    CHECK(avg.values == measure(s0).values);
  }
  SUBCASE("T < 1 is rejected") {
    CHECK_THROWS_AS(time_averaged_measure(WalkState(3), CoinField::wojcik(0.25), 0), DomainError);
  }
  SUBCASE("average of the first two measures") {
    const auto field = CoinField::wojcik(0.3);
    const auto s0 = WalkState::localized(10, origin);
    const auto avg = time_averaged_measure(s0, field, 2);
    const auto m0 = measure(s0);
    const auto m1 = measure(step(s0, field));
    for (int x = -10; x <= 10; ++x) CHECK(avg.at(x) == doctest::Approx((m0.at(x) + m1.at(x)) / 2));
  }
  SUBCASE("localization depends on the origin state") {
    const int T = 2000;
    const auto field = CoinField::wojcik(0.25);
    // Bound states at phi = 1/4 sit on beta = -i alpha with |theta_s|^2 = 1/5. Each of the
    // pair (lambda, -lambda) has origin share 1/(1 + 2 Gamma r/(1 - r)) = 0.4 and overlap
    // 0.4 with [1, -i]/sqrt2, so the long-time origin average tends to 2 * 0.4 * 0.4.
    const auto bound = WalkState::localized(T + 8, {1.0 / kSqrt2, -kI / kSqrt2});
    CHECK(std::abs(time_averaged_measure(bound, field, T).at(0) - 0.32) <= 1e-3);
    // [1, i]/sqrt2 is orthogonal to both bound states: no localization.
    const auto free = WalkState::localized(T + 8, origin);
    CHECK(time_averaged_measure(free, field, T).at(0) < 0.01);

    const auto hadamard = CoinField::homogeneous(Coin::hadamard());
    double previous = 1.0;
    for (int t : {250, 500, 1000, 2000}) {
      const double v = time_averaged_measure(free, hadamard, t).at(0);
      CHECK(v < previous);
      previous = v;
    }
    CHECK(previous < 0.02);
  }
}

TEST_CASE("multi-defect fields through the per-site constructor") {
  std::mt19937_64 rng(43);
  std::map<int, Coin> sites;
  sites.emplace(-3, Coin(random_unitary(rng)));
  sites.emplace(0, Coin(random_unitary(rng)));
  sites.emplace(4, Coin(random_unitary(rng)));
  const auto field = CoinField::with_sites(Coin::hadamard(), sites);
  CHECK(field.coin_at(4) == sites.at(4));
  CHECK(field.coin_at(0) == sites.at(0));
  CHECK(field.coin_at(1) == Coin::hadamard());
  CHECK_FALSE(field.phase().has_value());

  const auto s0 = random_state(rng, 80, 3);
  const auto s = evolve(s0, field, 60);
  CHECK(std::abs(total_norm(s) - total_norm(s0)) <= 1e-12 * total_norm(s0));
  CHECK(max_site_diff(step(s0, field), reference_step(s0, field)) <= 1e-15);
}
