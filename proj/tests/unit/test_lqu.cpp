#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "errors.hpp"
#include "lqu.hpp"
#include "oracles.hpp"

using namespace su2lqu;
using namespace su2lqu::lqu;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;

namespace {

const double kSqrt3 = std::sqrt(3.0);

HermitianMatrix local_on_b(std::size_t dim_a, const HermitianMatrix& local) {
  return HermitianMatrix(linalg::kron(ComplexMatrix::identity(dim_a), local.matrix()));
}

}  // namespace

TEST_CASE("generator bases are traceless and trace-orthonormal") {
  for (const auto& basis : {GeneratorBasis::pauli(), GeneratorBasis::gell_mann()}) {
    for (std::size_t a = 0; a < basis.size(); ++a) {
      CHECK(std::abs(basis[a].matrix().trace()) <= 1e-14);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const Complex t = (basis[a].matrix() * basis[b].matrix()).trace();
        CHECK(std::abs(t - Complex(a == b ? 2.0 : 0.0)) <= 1e-12);
      }
    }
  }
  CHECK(GeneratorBasis::for_local_dim(2).size() == 3);
  CHECK(GeneratorBasis::for_local_dim(3).size() == 8);
  CHECK_THROWS_AS(GeneratorBasis::for_local_dim(4), DomainError);
}

TEST_CASE("observable_from_direction") {
  const auto sz = observable_from_direction(GeneratorBasis::pauli(), ObservableDirection({0, 0, 1}));
  CHECK(sz(0, 0) == Complex(1.0));
  CHECK(sz(1, 1) == Complex(-1.0));

  const auto k1 = observable_from_direction(GeneratorBasis::gell_mann(),
                                            ObservableDirection({0, 0, 0.5, 0, 0, 0, 0, kSqrt3 / 2}));
  const double d1[] = {1.0, 0.0, -1.0};
  CHECK((k1.matrix() - ComplexMatrix::diagonal(d1)).max_abs() < 1e-15);

  const auto k2 = observable_from_direction(GeneratorBasis::gell_mann(),
                                            ObservableDirection({0, 0, -kSqrt3 / 2, 0, 0, 0, 0, 0.5}));
  const double d2[] = {-1.0 / kSqrt3, 2.0 / kSqrt3, -1.0 / kSqrt3};
  CHECK((k2.matrix() - ComplexMatrix::diagonal(d2)).max_abs() < 1e-15);

  CHECK_THROWS_AS(observable_from_direction(GeneratorBasis::pauli(),
                                            ObservableDirection({0, 0, 0, 1})),
                  DomainError);
  CHECK_THROWS_AS(ObservableDirection({1, 1, 0}), DomainError);
  CHECK(ObservableDirection::normalized({3, 0, 4})[2] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(stationary_direction(1)[2] == 0.5);
  CHECK(stationary_direction(2)[7] == 0.5);
}

TEST_CASE("skew information: commuting pairs vanish") {
  const auto mixed = states::build_state_spin_half(Spin::one(), 1.0 / 3.0);
  const auto root = states::sqrt_density_matrix(mixed);
  std::mt19937_64 rng(4);
  const auto k = testing::random_hermitian(6, rng);
  CHECK(skew_information(root, k) <= 1e-12);

  // Diagonal pairs commute exactly.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> rd(5), kd(5);
    double s = 0.0;
    for (auto& x : rd) s += (x = u(rng));
    for (auto& x : rd) x /= s;
    for (auto& x : kd) x = 2.0 * u(rng) - 1.0;
    const auto rho = HermitianMatrix(ComplexMatrix::diagonal(rd));
    const auto kk = HermitianMatrix(ComplexMatrix::diagonal(kd));
    CHECK(linalg::commutator(rho, kk).max_abs() <= 1e-14);
    CHECK(skew_information(linalg::matrix_sqrt_psd(rho), kk) <= 1e-12);
  }
}

TEST_CASE("skew information on pure states is the variance") {
  ComplexMatrix up(2);
  up(0, 0) = 1.0;
  const auto sx = GeneratorBasis::pauli()[0];
  CHECK(std::abs(skew_information(HermitianMatrix(up), sx) - 1.0) < 1e-15);

  std::mt19937_64 rng(12);
  for (std::size_t n : {2u, 3u, 6u, 9u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto psi = testing::random_unit_vector(n, rng);
      const auto rho = testing::pure_state(psi);
      const auto k = testing::random_hermitian(n, rng);
      const double mean = testing::expectation(psi, k.matrix()).real();
      const double second = testing::expectation(psi, k.matrix() * k.matrix()).real();
      // A pure state is its own square root.
      CHECK(std::abs(skew_information(rho, k) - (second - mean * mean)) <= 1e-10);
    }
  }
}

TEST_CASE("skew information is nonnegative and the local form matches the dense one") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto psd = testing::random_psd(8, rng, trial % 2 == 0 ? 0 : 3);
    const auto root = linalg::matrix_sqrt_psd(psd);
    const auto local = testing::random_hermitian(2, rng);
    const double dense = skew_information(root, local_on_b(4, local));
    CHECK(dense >= -1e-12);
    CHECK(std::abs(local_skew_information(root, local) - dense) <= 1e-10 * std::max(1.0, dense));
  }
  CHECK_THROWS_AS(skew_information(HermitianMatrix::identity(4), HermitianMatrix::identity(3)),
                  DomainError);
}

TEST_CASE("multiply_local matches the explicit Kronecker product") {
  std::mt19937_64 rng(8);
  const auto m = testing::random_matrix(9, rng);
  const auto local = testing::random_matrix(3, rng);
  const auto big = linalg::kron(ComplexMatrix::identity(3), local);
  CHECK((multiply_local_right(m, local) - m * big).max_abs() < 1e-12);
  CHECK((multiply_local_left(local, m) - big * m).max_abs() < 1e-12);
}

TEST_CASE("W matrix: isotropy, diagonal identity, maximally mixed and Werner endpoints") {
  for (int jt = 1; jt <= 11; ++jt) {
    const Spin j = Spin::from_twice(jt);
    for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
      const auto s = states::build_state_spin_half(j, p);
      const auto root = states::sqrt_density_matrix(s);
      const auto w = w_matrix(root, j);
      CAPTURE(jt);
      CAPTURE(p);
      CHECK(w.isotropy_residual() <= 1e-10);
      for (int i = 0; i < 3; ++i) {
        const double skew = local_skew_information(root, GeneratorBasis::pauli()[i]);
        CHECK(std::abs(w(i, i) - (1.0 - skew)) <= 1e-12);
        CHECK(w(i, i) >= -1e-10);
        CHECK(w(i, i) <= 1.0 + 1e-10);
      }
    }
  }
  const auto mixed = states::build_state_spin_half(Spin::one(), 1.0 / 3.0);
  CHECK(std::abs(w_matrix(states::sqrt_density_matrix(mixed), Spin::one()).max_eigenvalue() - 1.0) <
        1e-14);
  const auto werner = states::build_state_spin_half(Spin::half(), 1.0);
  CHECK(std::abs(w_matrix(states::sqrt_density_matrix(werner), Spin::half()).max_eigenvalue()) < 1e-14);

  const auto spin_one = states::build_state_spin_one(Spin::one(), 0.2, 0.2);
  CHECK_THROWS_AS(w_matrix(states::sqrt_density_matrix(spin_one), Spin::one()), DomainError);
  CHECK_THROWS_AS(lqu_w_matrix(spin_one), DomainError);
  CHECK_THROWS_AS(WMatrix(linalg::RealMatrix3{{{1, 0.5, 0}, {0, 1, 0}, {0, 0, 1}}}), DomainError);
}

TEST_CASE("spin-1/2 partner: closed formula values") {
  CHECK(std::abs(lqu_formula_spin_half(Spin::half(), 1.0) - 1.0) <= 1e-15);
  CHECK(std::abs(lqu_formula_spin_half(Spin::one(), 0.8) - 0.29716851115623294) <= 1e-14);
  CHECK(std::abs(lqu_formula_spin_half(Spin::from_twice(5), 0.3) - 0.01975814614551294) <= 1e-14);
  for (int jt = 1; jt <= 40; ++jt) {
    const Spin j = Spin::from_twice(jt);
    CHECK(lqu_formula_spin_half(j, j.value() / (2.0 * j.value() + 1.0)) <= 1e-15);
  }
  // U(P) - U(1 - P) = 4 (2P - 1) / (3 (2j + 1)): the curve turns symmetric only as j grows.
  for (int jt : {1, 5, 101, 201}) {
    const Spin j = Spin::from_twice(jt);
    for (int k = 0; k <= 20; ++k) {
      const double p = k / 20.0;
      const double gap = lqu_formula_spin_half(j, p) - lqu_formula_spin_half(j, 1.0 - p);
      CHECK(std::abs(gap - 4.0 * (2.0 * p - 1.0) / (3.0 * (jt + 1.0))) <= 1e-13);
    }
  }
  CHECK_THROWS_AS(lqu_formula_spin_half(Spin::half(), 1.1), DomainError);
  CHECK_THROWS_AS(lqu_formula_spin_half(Spin::from_twice(0), 0.5), DomainError);
}

TEST_CASE("spin-1/2 partner: three routes agree") {
  for (int jt : {1, 2, 3, 5, 10, 101}) {
    const Spin j = Spin::from_twice(jt);
    for (int k = 0; k <= 20; k += 2) {
      const double p = k / 20.0;
      const auto s = states::build_state_spin_half(j, p);
      const double closed = lqu_closed(s).value;
      CAPTURE(jt);
      CAPTURE(p);
      CHECK(closed >= 0.0);
      CHECK(closed <= 1.0 + 1e-12);
      CHECK(std::abs(lqu_w_matrix(s).value - closed) <= 1e-10);
      if (jt <= 10) {
        const auto numeric = lqu_numeric(s);
        CHECK(numeric.method == Method::numeric_min);
        REQUIRE(numeric.direction.has_value());
        CHECK(numeric.direction->size() == 3);
        CHECK(std::abs(numeric.value - closed) <= 1e-6);
      }
    }
  }
}

TEST_CASE("spin-1 partner: frozen reference values") {
  struct Row {
    int jt;
    double p, q, branch1, branch2;
  };
  const Row rows[] = {
      {5, 0.2, 0.5, 0.025103133616955337, 0.022522712158117946},
      {3, 0.5, 0.1, 0.14189387361265182, 0.10257472230642618},
      {20, 0.3, 0.3, 0.0013256610304827918, 0.0012164652105166084},
      {2, 1.0, 0.0, 2.0 / 3.0, 2.0 / 3.0},
      {2, 0.0, 0.0, 1.0 / 6.0, 0.43333333333333335},
      {2, 0.0, 1.0, 0.5, 0.5},
  };
  for (const auto& r : rows) {
    const auto s = states::build_state_spin_one(Spin::from_twice(r.jt), r.p, r.q);
    const auto v = stationary_direction_values(s);
    CAPTURE(r.jt);
    CAPTURE(r.p);
    CAPTURE(r.q);
    CHECK(std::abs(v.branch1 - r.branch1) <= 1e-12);
    CHECK(std::abs(v.branch2 - r.branch2) <= 1e-12);
    CHECK(std::abs(v.branch1_direct - v.branch1) <= 1e-12);
    CHECK(std::abs(v.branch2_direct - v.branch2) <= 1e-12);
    const double closed = lqu_formula_spin_one(Spin::from_twice(r.jt), r.p, r.q);
    CHECK(closed == std::min(v.branch1, v.branch2));
  }
}

TEST_CASE("spin-1 partner: maximally mixed point and errors") {
  const auto s = states::build_state_spin_one(Spin::one(), 1.0 / 9.0, 3.0 / 9.0);
  const auto v = stationary_direction_values(s);
  CHECK(v.branch1 <= 1e-15);
  CHECK(v.branch2 <= 1e-15);
  CHECK(lqu_closed(s).value <= 1e-15);
  CHECK(lqu_numeric(s).value <= 1e-12);
  CHECK_THROWS_AS(stationary_direction_values(states::build_state_spin_half(Spin::one(), 0.5)),
                  DomainError);
  CHECK_THROWS_AS(lqu_formula_spin_one(Spin::half(), 0.5, 0.5), DomainError);
}

TEST_CASE("spin-1 partner: numeric minimum never undercuts the formula") {
  for (int jt : {2, 3, 5}) {
    const Spin j = Spin::from_twice(jt);
    for (int a = 0; a <= 10; a += 2)
      for (int b = 0; a + b <= 10; b += 2) {
        const double p = a / 10.0, q = b / 10.0;
        const auto s = states::build_state_spin_one(j, p, q);
        const double closed = lqu_closed(s).value;
        const auto numeric = lqu_numeric(s);
        CAPTURE(jt);
        CAPTURE(p);
        CAPTURE(q);
        CHECK(numeric.value >= closed - 1e-6);
        CHECK(std::abs(numeric.value - closed) <= 1e-6);
        REQUIRE(numeric.direction.has_value());
        CHECK(numeric.direction->size() == 8);
        const auto k = observable_from_direction(GeneratorBasis::gell_mann(), *numeric.direction);
        const double recomputed = local_skew_information(states::sqrt_density_matrix(s), k);
        CHECK(std::abs(recomputed - numeric.value) <= 1e-10);
      }
  }
}

TEST_CASE("numeric route without warm starts still finds the minimum") {
  NumericOptions options;
  options.stationary_warm_starts = false;
  const auto s = states::build_state_spin_one(Spin::from_twice(3), 0.5, 0.1);
  CHECK(std::abs(lqu_numeric(s, options).value - 0.10257472230642618) <= 1e-6);
}

TEST_CASE("sphere minimizer") {
  SUBCASE("Rayleigh quotient reaches the smallest eigenvalue") {
    const double diag[] = {3.0, -2.0, 0.5, 1.0};
    const SphereObjective f = [&](std::span<const double> x, std::span<double> g) {
      double v = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        v += diag[i] * x[i] * x[i];
        g[i] = 2.0 * diag[i] * x[i];
      }
      return v;
    };
    const auto best = minimize_on_sphere(f, halton_sphere_points(4, 8));
    CHECK(best.converged);
    CHECK(std::abs(best.value + 2.0) < 1e-10);
    CHECK(std::abs(std::abs(best.point[1]) - 1.0) < 1e-5);
  }
  SUBCASE("iteration cap raises with the best value") {
    const SphereObjective f = [](std::span<const double> x, std::span<double> g) {
      g[0] = 2.0 * x[0];
      g[1] = -2.0 * x[1];
      return x[0] * x[0] - x[1] * x[1];
    };
    SphereMinimizerOptions options;
    options.max_iterations = 1;
    options.value_tolerance = 0.0;
    options.gradient_tolerance = 0.0;
    try {
      (void)minimize_on_sphere(f, {{1.0, 0.1}}, options);
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      CHECK(e.residual() < 1.0);
    }
  }
  SUBCASE("Halton starts are deterministic and unit length") {
    const auto a = halton_sphere_points(8, 64);
    const auto b = halton_sphere_points(8, 64);
    CHECK(a == b);
    REQUIRE(a.size() == 64);
    for (const auto& x : a) {
      double s = 0.0;
      for (double c : x) s += c * c;
      CHECK(std::abs(s - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("skew information is homogeneous of degree two in the direction") {
  const auto s = states::build_state_spin_one(Spin::from_twice(3), 0.4, 0.3);
  const auto root = states::sqrt_density_matrix(s);
  const auto basis = GeneratorBasis::gell_mann();
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> n(8);
  for (auto& x : n) x = gauss(rng);
  // Euler: n . grad I = 2 I for a quadratic form.
  auto value = [&](const std::vector<double>& c) {
    ComplexMatrix k(3);
    for (std::size_t i = 0; i < 8; ++i) k += basis[i].matrix() * Complex(c[i]);
    return local_skew_information(root, HermitianMatrix(k));
  };
  const double h = 1e-5;
  std::vector<double> grad(8);
  for (std::size_t i = 0; i < 8; ++i) {
    auto up = n, down = n;
    up[i] += h;
    down[i] -= h;
    grad[i] = (value(up) - value(down)) / (2.0 * h);
  }
  double euler = 0.0;
  for (std::size_t i = 0; i < 8; ++i) euler += grad[i] * n[i];
  CHECK(std::abs(euler - 2.0 * value(n)) < 1e-7);
}
