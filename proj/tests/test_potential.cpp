#include <sstream>

#include "doctest.h"
#include "pendnet/potential.hpp"

using namespace pendnet;

TEST_CASE("double-well evaluation and derivatives") {
    auto g = InteractionPotential::double_well();
    CHECK(g.eval(0, 0) == doctest::Approx(0.25));
    CHECK(g.eval(0.4, 0, 1, 0) == doctest::Approx(-2 * 0.4 + 4 * 0.4 * 0.4 * 0.4));
    CHECK(g.eval(0.4, 0, 1, 0) == doctest::Approx(-0.544));
    CHECK(g.eval(0, 0, 1, 1) == 0.0);  // G_11(0,0) = 0 for any even polynomial
    CHECK(g.eval(0.3, 0.7, 1, 1) == 0.0);  // no mixed term at all here
    CHECK(g.eval(0.5, 0, 2, 0) == doctest::Approx(-2 + 12 * 0.25));
    // well minimum at x^2 = 1/2 touches zero
    CHECK(g.eval(1.0 / std::sqrt(2.0), 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mixed-term derivatives follow the power rule") {
    InteractionPotential g({{1, 1, 0.5}});  // 0.5 x^2 y^2
    CHECK(g.eval(2, 3) == doctest::Approx(0.5 * 4 * 9));
    CHECK(g.eval(2, 3, 1, 0) == doctest::Approx(2 * 0.5 * 2 * 9));
    CHECK(g.eval(2, 3, 1, 1) == doctest::Approx(0.5 * 2 * 2 * 2 * 3));
    CHECK(g.eval(2, 3, 2, 0) == doctest::Approx(0.5 * 2 * 9));
    CHECK(g.eval(0, 0, 1, 1) == 0.0);
}

TEST_CASE("nonnegativity sampling") {
    CHECK(InteractionPotential::double_well().nonnegative_sampled());
    CHECK(InteractionPotential::harmonic().nonnegative_sampled());
    InteractionPotential neg({{0, 0, -1.0}});
    CHECK_FALSE(neg.nonnegative_sampled());
}

TEST_CASE("potential file parsing") {
    std::istringstream in("# double well\n0 0 0.25\n1 0 -1\n2 0 1\n");
    auto g = InteractionPotential::parse(in);
    CHECK(g.eval(0.3, 0.0) ==
          doctest::Approx(InteractionPotential::double_well().eval(0.3, 0.0)));
    CHECK(g.coefficient(1, 0) == -1.0);
    CHECK(g.coefficient(0, 1) == 0.0);

    CHECK(InteractionPotential::named_or_file("harmonic").eval(2.0, 0.0) == doctest::Approx(2.0));
    CHECK_THROWS(InteractionPotential::named_or_file("/no/such/file"));
}
