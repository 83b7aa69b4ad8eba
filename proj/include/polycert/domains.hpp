#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace polycert {

// Standard unit simplex { x : sum x_i = 1, x_i >= 0 } in n variables.
struct Simplex {
    int n = 1;
};

// Box { z : |z_i - center_i| <= radius_i }. Centers default to the origin.
struct Hypercube {
    Eigen::VectorXd radii;
    Eigen::VectorXd centers;

    Hypercube() = default;
    explicit Hypercube(Eigen::VectorXd r)
        : radii(std::move(r)), centers(Eigen::VectorXd::Zero(radii.size())) {
        validate();
    }
    Hypercube(Eigen::VectorXd r, Eigen::VectorXd c) : radii(std::move(r)), centers(std::move(c)) {
        if (centers.size() != radii.size())
            throw std::invalid_argument("hypercube: centers/radii length mismatch");
        validate();
    }
    static Hypercube symmetric(int n, double r) {
        return Hypercube(Eigen::VectorXd::Constant(n, r));
    }

    int n() const { return static_cast<int>(radii.size()); }
    bool contains(const Eigen::VectorXd& z, double tol = 0.0) const {
        for (int i = 0; i < n(); ++i)
            if (std::abs(z(i) - centers(i)) > radii(i) + tol) return false;
        return true;
    }

  private:
    void validate() const {
        for (int i = 0; i < radii.size(); ++i)
            if (!(radii(i) > 0.0)) throw std::invalid_argument("hypercube: radii must be positive");
    }
};

// One affine facet inequality w^T x + u >= 0.
struct Facet {
    Eigen::VectorXd w;
    double u = 0.0;

    double eval(const Eigen::VectorXd& x) const { return w.dot(x) + u; }
};

// Convex polytope { x : w_i^T x + u_i >= 0 }.
struct Polytope {
    int n_vars = 0;
    std::vector<Facet> facets;

    Polytope() = default;
    Polytope(int n, std::vector<Facet> f) : n_vars(n), facets(std::move(f)) {
        for (const auto& fc : facets)
            if (fc.w.size() != n_vars) throw std::invalid_argument("polytope: facet dim mismatch");
    }
    static Polytope interval(double lo, double hi) {
        Polytope p;
        p.n_vars = 1;
        p.facets.push_back({Eigen::VectorXd::Constant(1, 1.0), -lo});
        p.facets.push_back({Eigen::VectorXd::Constant(1, -1.0), hi});
        return p;
    }

    int n_facets() const { return static_cast<int>(facets.size()); }
    bool contains(const Eigen::VectorXd& x, double tol = 0.0) const {
        for (const auto& f : facets)
            if (f.eval(x) < -tol) return false;
        return true;
    }
};

}  // namespace polycert
