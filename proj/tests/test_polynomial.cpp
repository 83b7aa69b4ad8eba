#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "polycert/polynomial.hpp"

using namespace polycert;

namespace {
Polynomial px(int n, int i) { return Polynomial::variable(n, i); }
}  // namespace

TEST_CASE("index set enumeration") {
    CHECK(exponents_exact_degree(3, 2).size() == 6);  // C(4,2)
    CHECK(exponents_up_to_degree(2, 1).size() == 3);
    CHECK(exponents_up_to_degree(4, 4).size() == 70);  // C(8,4)
    CHECK(binomial(8, 4) == 70);

    // graded lex: degree first, then lexicographic
    auto e = exponents_up_to_degree(2, 2);
    REQUIRE(e.size() == 6);
    CHECK(e[0] == Exponent{0, 0});
    CHECK(e[1] == Exponent{0, 1});
    CHECK(e[2] == Exponent{1, 0});
    CHECK(e[3] == Exponent{0, 2});
    CHECK(e[4] == Exponent{1, 1});
    CHECK(e[5] == Exponent{2, 0});

    auto box = exponents_in_box({2, 1});
    CHECK(box.size() == 6);
}

TEST_CASE("poly_mul basics") {
    const int n = 2;
    Polynomial x1 = px(n, 0), x2 = px(n, 1);
    Polynomial s = x1 + x2;

    Polynomial sq = s * s;
    CHECK(sq.coefficient({2, 0}) == Catch::Approx(1.0));
    CHECK(sq.coefficient({1, 1}) == Catch::Approx(2.0));
    CHECK(sq.coefficient({0, 2}) == Catch::Approx(1.0));

    Polynomial one = Polynomial::constant(n, 1.0);
    Polynomial p = oracles::random_polynomial(n, 3, 11);
    Polynomial p_one = p * one;
    for (const auto& [e, c] : p.terms()) CHECK(p_one.coefficient(e) == Catch::Approx(c));

    // (x1^2 - x1 x2 + x2^2)(x1 + x2) = x1^3 + x2^3
    Polynomial q(n);
    q.add_term({2, 0}, 1.0);
    q.add_term({1, 1}, -1.0);
    q.add_term({0, 2}, 1.0);
    Polynomial cube = q * s;
    CHECK(cube.coefficient({3, 0}) == Catch::Approx(1.0));
    CHECK(cube.coefficient({0, 3}) == Catch::Approx(1.0));
    CHECK(cube.term_count() == 2);

    SECTION("agrees with pointwise product at random points") {
        Polynomial a = oracles::random_polynomial(3, 3, 5);
        Polynomial b = oracles::random_polynomial(3, 2, 7);
        Polynomial ab = a * b;
        for (const auto& pt : oracles::random_simplex_points(3, 100, 13)) {
            const double lhs = ab.evaluate(pt);
            const double rhs = a.evaluate(pt) * b.evaluate(pt);
            CHECK(lhs == Catch::Approx(rhs).margin(1e-10 * (1.0 + std::abs(rhs))));
        }
    }

    CHECK_THROWS(px(2, 0) * px(3, 0));
}

TEST_CASE("evaluate") {
    Polynomial f = px(2, 0) * px(2, 0) + px(2, 1);  // x1^2 + x2
    CHECK(f.evaluate(std::vector<double>{2.0, 1.0}) == Catch::Approx(5.0));

    Polynomial zero(2);
    CHECK(zero.evaluate(std::vector<double>{3.0, -4.0}) == 0.0);

    // Motzkin at (1,1,1) is zero: x1^4 x2^2 + x1^2 x2^4 - 3 x1^2 x2^2 x3^2 + x3^6
    Polynomial m(3);
    m.add_term({4, 2, 0}, 1.0);
    m.add_term({2, 4, 0}, 1.0);
    m.add_term({2, 2, 2}, -3.0);
    m.add_term({0, 0, 6}, 1.0);
    CHECK(m.evaluate(std::vector<double>{1.0, 1.0, 1.0}) == Catch::Approx(0.0).margin(1e-14));

    CHECK_THROWS(f.evaluate(std::vector<double>{1.0}));
}

TEST_CASE("homogenize") {
    const int n = 2;
    // x1 + 1 homogenized to degree 1 over two variables -> 2 x1 + x2
    Polynomial f = px(n, 0) + Polynomial::constant(n, 1.0);
    Polynomial h = homogenize(f, 1);
    CHECK(h.coefficient({1, 0}) == Catch::Approx(2.0));
    CHECK(h.coefficient({0, 1}) == Catch::Approx(1.0));

    Polynomial sq = px(n, 0) * px(n, 0);
    Polynomial hsq = homogenize(sq, 2);
    CHECK(hsq.term_count() == 1);
    CHECK(hsq.coefficient({2, 0}) == Catch::Approx(1.0));

    // x1^2 + x2 -> x1^2 + x2(x1+x2); check by evaluation on the simplex
    Polynomial g = px(n, 0) * px(n, 0) + px(n, 1);
    Polynomial hg = homogenize(g, 2);
    CHECK(hg.is_homogeneous());
    for (const auto& pt : oracles::random_simplex_points(n, 100, 3)) {
        CHECK(hg.evaluate(pt) ==
              Catch::Approx(g.evaluate(pt)).margin(1e-10 * (1.0 + std::abs(g.evaluate(pt)))));
    }

    CHECK_THROWS(homogenize(g, 1));
}

TEST_CASE("affine_substitute") {
    // identity
    Polynomial p = oracles::random_polynomial(2, 3, 17);
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
    Polynomial q = affine_substitute(p, id, zero);
    for (const auto& [e, c] : p.terms()) CHECK(q.coefficient(e) == Catch::Approx(c));

    // z1 = 4x1 - 2, z2 = 2x2 - 1 applied to z1^2 + z2 gives 16x1^2 - 16x1 + 2x2 + 3
    Polynomial f(2);
    f.add_term({2, 0}, 1.0);
    f.add_term({0, 1}, 1.0);
    Eigen::MatrixXd m(2, 2);
    m << 4, 0, 0, 2;
    Eigen::VectorXd b(2);
    b << -2, -1;
    Polynomial g = affine_substitute(f, m, b);
    CHECK(g.coefficient({2, 0}) == Catch::Approx(16.0));
    CHECK(g.coefficient({1, 0}) == Catch::Approx(-16.0));
    CHECK(g.coefficient({0, 1}) == Catch::Approx(2.0));
    CHECK(g.coefficient({0, 0}) == Catch::Approx(3.0));

    // z^2 with z = 2y + 1 -> 4y^2 + 4y + 1
    Polynomial zsq(1);
    zsq.add_term({2}, 1.0);
    Eigen::MatrixXd m1(1, 1);
    m1 << 2;
    Eigen::VectorXd b1(1);
    b1 << 1;
    Polynomial y = affine_substitute(zsq, m1, b1);
    CHECK(y.coefficient({2}) == Catch::Approx(4.0));
    CHECK(y.coefficient({1}) == Catch::Approx(4.0));
    CHECK(y.coefficient({0}) == Catch::Approx(1.0));
}

TEST_CASE("simplex_multiply") {
    const int n = 2;
    Polynomial q(n);
    q.add_term({2, 0}, 1.0);
    q.add_term({1, 1}, -1.0);
    q.add_term({0, 2}, 1.0);

    SECTION("e = 0 is the identity") {
        Polynomial r = simplex_multiply(q, 0);
        CHECK(r.term_count() == q.term_count());
    }
    SECTION("known expansions") {
        Polynomial r = simplex_multiply(q, 1);
        CHECK(r.coefficient({3, 0}) == Catch::Approx(1.0));
        CHECK(r.coefficient({0, 3}) == Catch::Approx(1.0));
        CHECK(r.term_count() == 2);

        Polynomial s = px(n, 0) + px(n, 1);
        Polynomial c = simplex_multiply(s, 2);
        CHECK(c.coefficient({3, 0}) == Catch::Approx(1.0));
        CHECK(c.coefficient({2, 1}) == Catch::Approx(3.0));
        CHECK(c.coefficient({1, 2}) == Catch::Approx(3.0));
        CHECK(c.coefficient({0, 3}) == Catch::Approx(1.0));
    }
    SECTION("value preserved on the simplex") {
        Polynomial h = homogenize(oracles::random_polynomial(3, 2, 23), 2);
        Polynomial r = simplex_multiply(h, 3);
        for (const auto& pt : oracles::random_simplex_points(3, 50, 29)) {
            const double expect = h.evaluate(pt);
            CHECK(r.evaluate(pt) == Catch::Approx(expect).margin(1e-10 * (1.0 + std::abs(expect))));
        }
    }
    SECTION("non-homogeneous input rejected") {
        Polynomial bad = px(n, 0) + Polynomial::constant(n, 1.0);
        CHECK_THROWS(simplex_multiply(bad, 1));
    }
}

TEST_CASE("matrix polynomials") {
    Eigen::MatrixXd a(2, 2), c(2, 2);
    a << 1, 2, 3, 4;
    c << 0, 1, 1, 0;
    MatrixPolynomial p(1, Eigen::MatrixXd::Zero(2, 2));
    p.add_term({0}, a);
    p.add_term({2}, c);
    const Eigen::MatrixXd val = p.evaluate(std::vector<double>{2.0});
    CHECK(val(0, 0) == Catch::Approx(1.0));
    CHECK(val(0, 1) == Catch::Approx(2.0 + 4.0));

    MatrixPolynomial pt = transpose(p);
    CHECK(pt.coefficient({0})(0, 1) == Catch::Approx(3.0));

    MatrixPolynomial h = homogenize(p, 2);
    CHECK(h.is_homogeneous());
}

TEST_CASE("derivative and prune") {
    Polynomial f = oracles::random_polynomial(2, 4, 31);
    Polynomial dfdx = f.derivative(0);
    const double h = 1e-6;
    std::vector<double> p0{0.3, 0.4}, p1{0.3 + h, 0.4}, p2{0.3 - h, 0.4};
    const double fd = (f.evaluate(p1) - f.evaluate(p2)) / (2 * h);
    CHECK(dfdx.evaluate(p0) == Catch::Approx(fd).margin(1e-5));

    Polynomial tiny = Polynomial::constant(1, 1.0);
    tiny.add_term({1}, 1e-15);
    tiny.prune();
    CHECK(tiny.term_count() == 1);
}
