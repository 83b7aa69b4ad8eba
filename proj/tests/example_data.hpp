#pragma once

#include <Eigen/Dense>
#include <vector>

#include "polycert/polynomial.hpp"

// System data for the benchmark problems exercised by the unit and
// acceptance suites. The JSON fixtures under fixtures/ carry the same data
// for the CLI; test_cli cross-checks the two copies against each other.
namespace example_data {

inline Eigen::MatrixXd mat4(std::initializer_list<double> v) {
    Eigen::MatrixXd m(4, 4);
    int k = 0;
    for (double x : v) m(k / 4, k % 4) = x, ++k;
    return m;
}

// Benchmark 1: eta-margin family A(alpha, eta) = sum (A0 + Ai eta) alpha_i
// over the unit simplex; reported margin 2.224.
struct EtaFamily {
    Eigen::MatrixXd a0;
    std::vector<Eigen::MatrixXd> ai;
};

inline EtaFamily example1() {
    EtaFamily f;
    f.a0 = mat4({-2.4, -0.6, -1.7, 3.1,   //
                 0.7, -2.1, -2.6, -3.6,   //
                 0.5, 2.4, -5.0, -1.6,    //
                 -0.6, 2.9, -2.0, -0.6});
    f.ai = {mat4({1.1, -0.6, -0.3, -0.1,  //
                  -0.8, 0.2, -1.1, 2.8,   //
                  -1.9, 0.8, -1.1, 2.0,   //
                  -2.4, -3.1, -3.7, -0.1}),
            mat4({0.9, 3.4, 1.7, 1.5,     //
                  -3.4, -1.4, 1.3, 1.4,   //
                  1.1, 2.0, -1.5, -3.4,   //
                  -0.4, 0.5, 2.3, 1.5}),
            mat4({-1.0, -1.4, -0.7, -0.7,  //
                  2.1, 0.6, -0.1, -2.1,    //
                  0.4, -1.4, 1.3, 0.7,     //
                  1.5, 0.9, 0.4, -0.5})};
    return f;
}

// Benchmark 2: homogeneous cubic A(alpha) on the shrinking simplex family
// T_L = conv of the permutations of (1, L, L); reported bound -0.0504.
inline polycert::MatrixPolynomial example2_a() {
    using polycert::MatrixPolynomial;
    const Eigen::MatrixXd a1 = mat4({-0.57, -0.44, 0.33, -0.07,  //
                                     -0.48, -0.60, 0.30, 0,      //
                                     -0.22, -1.12, 0.08, -0.24,  //
                                     1.51, -0.42, 0.67, -1.00});
    const Eigen::MatrixXd a2 = mat4({-0.09, -0.16, 0.3, -1.13,  //
                                     -0.15, -0.17, -0.02, 0.82,  //
                                     0.14, 0.06, 0.02, -1,       //
                                     0.488, 0.32, 0.97, -0.71});
    const Eigen::MatrixXd a3 = mat4({-0.70, -0.29, -0.18, 0.31,  //
                                     0.41, -0.76, -0.30, -0.12,  //
                                     -0.05, 0.35, -0.59, 0.91,   //
                                     1.64, 0.82, 0.01, -1});
    const Eigen::MatrixXd a4 = mat4({0.72, 0.34, -0.64, 0.31,    //
                                     -0.21, -0.51, 0.59, 0.07,   //
                                     0.27, 0.49, -0.84, -0.94,   //
                                     -1.89, -0.66, 0.27, 0.41});
    const Eigen::MatrixXd a5 = mat4({-0.51, -0.47, -1.38, 0.17,  //
                                     1.18, -0.62, -0.29, 0.35,   //
                                     -0.65, 0.01, -1.44, -0.04,  //
                                     -0.74, -1.22, 0.60, -1.47});
    const Eigen::MatrixXd a6 = mat4({-0.201, -0.19, -0.55, 0.07,  //
                                     0.803, -0.42, -0.20, 0.24,   //
                                     -0.440, 0.01, -0.98, -0.03,  //
                                     0, -0.83, 0.41, -1});
    MatrixPolynomial a(3, Eigen::MatrixXd::Zero(4, 4));
    a.add_term({3, 0, 0}, a1);
    a.add_term({2, 1, 0}, a2);
    a.add_term({1, 0, 2}, a3);
    a.add_term({1, 1, 1}, a4);
    a.add_term({0, 3, 0}, a5);
    a.add_term({0, 0, 3}, a6);
    return a;
}

// Benchmark 3a: A(alpha) = A0 + A1 a1^2 + A2 a1 a2 a3 + A3 a1^2 a2 a3^2 on
// [-1,1] x [-0.5,0.5] x [-0.1,0.1]; feasible at gamma=0.1, e=1, d_q=(1,1,1).
inline polycert::MatrixPolynomial example3a_a() {
    using polycert::MatrixPolynomial;
    const Eigen::MatrixXd a0 = mat4({-3.0, 0, -1.7, 3.0,     //
                                     -0.2, -2.9, -1.7, -2.6,  //
                                     0.6, 2.6, -5.8, -2.6,    //
                                     -0.7, 2.9, -3.3, -2.1});
    const Eigen::MatrixXd a1 = mat4({2.2, -5.4, -0.8, -2.2,  //
                                     4.4, 1.4, -3.0, 0.8,    //
                                     -2.4, -2.2, 1.4, 6.0,   //
                                     -2.4, -4.4, -6.4, 0.18});
    const Eigen::MatrixXd a2 = mat4({-8.0, -13.5, -0.5, -3.0,  //
                                     18.0, -2.0, 0.5, -11.5,   //
                                     5.5, -10.0, 3.5, 9.0,     //
                                     13.0, 7.5, 5.0, -4.0});
    const Eigen::MatrixXd a3 = mat4({3.0, 7.5, 2.5, -8.0,   //
                                     1.0, 0.5, 1.0, 1.5,    //
                                     -0.5, -1.0, 1.0, 6.0,  //
                                     -2.5, -6.0, 8.5, 14.25});
    MatrixPolynomial a(3, Eigen::MatrixXd::Zero(4, 4));
    a.add_term({0, 0, 0}, a0);
    a.add_term({2, 0, 0}, a1);
    a.add_term({1, 1, 1}, a2);
    a.add_term({2, 1, 2}, a3);
    return a;
}

inline Eigen::VectorXd example3a_radii() {
    Eigen::VectorXd r(3);
    r << 1.0, 0.5, 0.1;
    return r;
}

// Benchmark 3b: affine A(alpha) = A0 + sum Ai alpha_i on [-r, r]^4;
// reported radius bounds 0.494 / 0.508 / 0.615 / 0.731 / 0.840.
inline polycert::MatrixPolynomial example3b_a() {
    using polycert::MatrixPolynomial;
    const Eigen::MatrixXd a0 = mat4({-3.0, 0, -1.7, 3.0,      //
                                     -0.2, -2.9, -1.7, -2.6,  //
                                     0.6, 2.6, -5.8, -2.6,    //
                                     -0.7, 2.9, -3.3, -2.4});
    const Eigen::MatrixXd a1 = mat4({1.1, -2.7, -0.4, -1.1,  //
                                     2.2, 0.7, -1.5, 0.4,    //
                                     -1.2, -1.1, 0.7, 3.0,   //
                                     -1.2, -2.2, -3.2, -1.4});
    const Eigen::MatrixXd a2 = mat4({1.6, 2.7, 0.1, 0.6,     //
                                     -3.6, 0.4, -0.1, 2.3,   //
                                     -1.1, 2, -0.7, -1.8,    //
                                     -2.6, -1.5, -1.0, 0.8});
    const Eigen::MatrixXd a3 = mat4({-0.6, 1.5, 0.5, -1.6,   //
                                     0.2, -0.1, 0.2, 0.3,    //
                                     -0.1, -0.2, -0.2, 1.2,  //
                                     -0.5, -1.2, 1.7, -0.1});
    const Eigen::MatrixXd a4 = mat4({-0.4, -0.1, -0.3, 0.1,  //
                                     0.1, 0.3, 0.2, 0.0,     //
                                     0.0, 0.2, -0.3, 0.1,    //
                                     0.1, -0.2, -0.2, 0.0});
    MatrixPolynomial a(4, Eigen::MatrixXd::Zero(4, 4));
    a.add_term({0, 0, 0, 0}, a0);
    a.add_term({1, 0, 0, 0}, a1);
    a.add_term({0, 1, 0, 0}, a2);
    a.add_term({0, 0, 1, 0}, a3);
    a.add_term({0, 0, 0, 1}, a4);
    return a;
}

// Benchmark 4: planar polynomial vector field with a diamond polytope and
// its quadrant decomposition; LP-certified piecewise quartic at d=4.
inline std::vector<polycert::Polynomial> example4_field() {
    using polycert::Polynomial;
    Polynomial f1(2), f2(2);
    f1.add_term({0, 1}, 1.0);  // x2
    f2.add_term({1, 0}, -2.0);
    f2.add_term({0, 1}, -1.0);
    f2.add_term({1, 2}, 1.0);
    f2.add_term({5, 0}, -1.0);
    f2.add_term({1, 4}, 1.0);
    f2.add_term({0, 5}, 1.0);
    return {f1, f2};
}

// Benchmark 5: reverse-time Van der Pol, dx/dt = A(x) x.
inline polycert::MatrixPolynomial example5_a() {
    using polycert::MatrixPolynomial;
    Eigen::MatrixXd c0(2, 2), c2(2, 2);
    c0 << 0, -1, 1, -1;
    c2 << 0, 0, 0, 1;
    MatrixPolynomial a(2, Eigen::MatrixXd::Zero(2, 2));
    a.add_term({0, 0}, c0);
    a.add_term({2, 0}, c2);
    return a;
}

}  // namespace example_data
