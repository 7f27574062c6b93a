#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace vfcm {

using Real = double;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

/// Axis-aligned box in R^3.
struct Box3 {
    Vec3 lo = Vec3::Constant(std::numeric_limits<Real>::max());
    Vec3 hi = Vec3::Constant(-std::numeric_limits<Real>::max());

    void expand(const Vec3& p) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    void expand(const Box3& b) {
        lo = lo.cwiseMin(b.lo);
        hi = hi.cwiseMax(b.hi);
    }
    bool contains(const Vec3& p, Real tol = 0.0) const {
        return (p.array() >= lo.array() - tol).all() &&
               (p.array() <= hi.array() + tol).all();
    }
    Vec3 center() const { return 0.5 * (lo + hi); }
    Vec3 extent() const { return hi - lo; }
    Real diagonal() const { return (hi - lo).norm(); }
    Real volume() const { return (hi - lo).prod(); }
    Box3 inflated(Real margin) const {
        return {lo.array() - margin, hi.array() + margin};
    }
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace vfcm
