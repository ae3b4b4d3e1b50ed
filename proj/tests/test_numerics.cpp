#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "latticewave/numerics.hpp"

using namespace latticewave;
using namespace latticewave::numerics;

constexpr double kPi = std::numbers::pi;

TEST_CASE("find_root: cubic") {
    auto f = [](double x) { return x * x * x - 2.0 * x - 2.0; };
    const double r = find_root(f, 1.0, 2.0, {1e-14, 1e-15, 200});
    CHECK(r == doctest::Approx(1.7692923542386314).epsilon(1e-13));
}

TEST_CASE("find_root: no bracket throws") {
    auto f = [](double x) { return x * x + 1.0; };
    CHECK_THROWS_AS(find_root(f, -1.0, 1.0, {}), NoBracket);
}

TEST_CASE("find_roots_scan: sine roots") {
    auto f = [](double x) { return std::sin(x); };
    auto roots = find_roots_scan(f, 0.1, 10.0, 200, {1e-14, 1e-15, 200});
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(roots[1] == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(roots[2] == doctest::Approx(3 * kPi).epsilon(1e-12));
}

TEST_CASE("integrate: smooth") {
    auto f = [](double x) { return Complex(std::exp(x), std::sin(x)); };
    const Complex v = integrate(f, 0.0, 1.0, Tolerance{1e-13, 1e-15, 200});
    CHECK(v.real() == doctest::Approx(1.7182818284590452).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
}

TEST_CASE("integrate: kink with breakpoint") {
    auto f = [](double x) { return Complex(std::abs(x - 1.0 / 3.0), 0.0); };
    const Complex v =
        integrate(f, 0.0, 1.0, {1.0 / 3.0}, {1e-13, 1e-15, 200});
    // exact: (1/3)^2/2 + (2/3)^2/2
    CHECK(v.real() == doctest::Approx(5.0 / 18.0).epsilon(1e-12));
}

TEST_CASE("integrate: oscillatory") {
    auto f = [](double x) { return Complex(std::sin(50.0 * x), 0.0); };
    const Complex v = integrate(f, 0.0, kPi, Tolerance{1e-12, 1e-14, 400});
    const double exact = (1.0 - std::cos(50.0 * kPi)) / 50.0;
    CHECK(v.real() == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("sum_symmetric: pi coth(pi)") {
    auto f = [](int m) { return Complex(1.0 / (m * m + 1.0), 0.0); };
    auto s = sum_symmetric(f, {1e-9, 1e-12, 200});
    CHECK(s.value.real() == doctest::Approx(3.1533480949371623).epsilon(1e-8));
    CHECK(s.terms_used > 10);
}

TEST_CASE("sum_symmetric: alternating lattice identity") {
    // sum_m q^2/(q^2 - (x + 2 pi m)^2) = -q sin(q) / (2 (cos q - cos x))
    const double q = 1.3, x = 0.7;
    auto f = [&](int m) {
        const double d = x + 2.0 * kPi * m;
        return Complex(q * q / (q * q - d * d), 0.0);
    };
    auto s = sum_symmetric(f, {1e-12, 1e-14, 200});
    const double exact =
        -q * std::sin(q) / (2.0 * (std::cos(q) - std::cos(x)));
    CHECK(s.value.real() == doctest::Approx(exact).epsilon(1e-9));
}
