#include <vfcm/elasticity.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace vfcm {

void ElasticityTensor::require_symmetric(Real rel_tol) const {
    const Real scale = std::max(max_abs(), Real(1e-300));
    if ((C - C.transpose()).cwiseAbs().maxCoeff() > rel_tol * scale)
        throw InvalidArgument("elasticity tensor is not symmetric");
}

bool ElasticityTensor::is_positive_definite() const {
    Eigen::SelfAdjointEigenSolver<Mat6> es(0.5 * (C + C.transpose()));
    return es.eigenvalues().minCoeff() > 0.0;
}

std::string symmetry_name(SymmetryClass s) {
    switch (s) {
        case SymmetryClass::Isotropic: return "isotropic";
        case SymmetryClass::Cubic: return "cubic";
        case SymmetryClass::Tetragonal: return "tetragonal";
        case SymmetryClass::Orthotropic: return "orthotropic";
        case SymmetryClass::None: return "none";
    }
    return "none";
}

ElasticityTensor isotropic_to_voigt(const IsotropicMaterial& m, const std::string& unit) {
    m.validate();
    const Real la = m.lambda(), mu = m.mu();
    ElasticityTensor t;
    t.unit = unit;
    t.C.setZero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.C(i, j) = (i == j) ? la + 2 * mu : la;
    for (int i = 3; i < 6; ++i) t.C(i, i) = mu;
    return t;
}

void bond_matrices(Real angle_deg, Mat6& M, Mat6& N) {
    const Real a = angle_deg * M_PI / 180.0;
    const Real c = std::cos(a), s = std::sin(a);
    const Real c2 = c * c, s2 = s * s;
    const Real s2a = std::sin(2 * a), c2a = std::cos(2 * a);

    M.setZero();
    M(0, 0) = c2;  M(0, 1) = s2;  M(0, 3) = s2a;
    M(1, 0) = s2;  M(1, 1) = c2;  M(1, 3) = -s2a;
    M(2, 2) = 1.0;
    M(3, 0) = -0.5 * s2a;  M(3, 1) = 0.5 * s2a;  M(3, 3) = c2a;
    M(4, 4) = c;  M(4, 5) = -s;
    M(5, 4) = s;  M(5, 5) = c;

    N = M;
    N(0, 3) = 0.5 * s2a;
    N(1, 3) = -0.5 * s2a;
    N(3, 0) = -s2a;
    N(3, 1) = s2a;
}

ElasticityTensor rotate_tensor(const ElasticityTensor& C, Real angle_deg) {
    Mat6 M, N;
    bond_matrices(angle_deg, M, N);
    ElasticityTensor out;
    out.unit = C.unit;
    const Mat6 raw = M * C.C * N.inverse();
    out.C = 0.5 * (raw + raw.transpose());
    return out;
}

namespace {

struct Cmp {
    const Mat6& C;
    Real tol, scale;
    bool zero(Real a) const { return std::abs(a) <= tol * scale; }
    bool eq(Real a, Real b) const {
        return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-6 * scale});
    }
};

bool is_orthotropic(const Cmp& c) {
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j)
            if (!c.zero(c.C(i, j))) return false;
    return c.zero(c.C(3, 4)) && c.zero(c.C(3, 5)) && c.zero(c.C(4, 5));
}

// shear index pairing: 3 = 12, 4 = 23, 5 = 13
bool is_tetragonal_about(const Cmp& c, int axis) {
    switch (axis) {
        case 0:  // x: yy==zz, xy==xz couplings, shears 12==13
            return c.eq(c.C(1, 1), c.C(2, 2)) && c.eq(c.C(0, 1), c.C(0, 2)) &&
                   c.eq(c.C(3, 3), c.C(5, 5));
        case 1:  // y: xx==zz, xy==yz, shears 12==23
            return c.eq(c.C(0, 0), c.C(2, 2)) && c.eq(c.C(0, 1), c.C(1, 2)) &&
                   c.eq(c.C(3, 3), c.C(4, 4));
        default:  // z: xx==yy, xz==yz, shears 23==13
            return c.eq(c.C(0, 0), c.C(1, 1)) && c.eq(c.C(0, 2), c.C(1, 2)) &&
                   c.eq(c.C(4, 4), c.C(5, 5));
    }
}

bool is_cubic(const Cmp& c) {
    return c.eq(c.C(0, 0), c.C(1, 1)) && c.eq(c.C(1, 1), c.C(2, 2)) &&
           c.eq(c.C(0, 1), c.C(0, 2)) && c.eq(c.C(0, 2), c.C(1, 2)) &&
           c.eq(c.C(3, 3), c.C(4, 4)) && c.eq(c.C(4, 4), c.C(5, 5));
}

}  // namespace

SymmetryClass classify_symmetry(const ElasticityTensor& t, Real tol) {
    t.require_symmetric(1e-6);
    const Cmp c{t.C, tol, std::max(t.max_abs(), Real(1e-300))};
    if (!is_orthotropic(c)) return SymmetryClass::None;
    if (is_cubic(c)) {
        if (c.eq(t.C(3, 3), 0.5 * (t.C(0, 0) - t.C(0, 1)))) return SymmetryClass::Isotropic;
        return SymmetryClass::Cubic;
    }
    for (int axis = 0; axis < 3; ++axis)
        if (is_tetragonal_about(c, axis)) return SymmetryClass::Tetragonal;
    return SymmetryClass::Orthotropic;
}

GibsonAshbyFactors gibson_ashby(Real phi) {
    if (!(phi >= 0.0 && phi < 1.0))
        throw InvalidArgument("gibson_ashby: porosity outside [0, 1)");
    return {std::pow(1.0 - phi, 1.5), (1.0 - phi) * (1.0 - phi)};
}

std::string tensor_to_text(const ElasticityTensor& t) {
    std::string out;
    char buf[64];
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", t.C(i, j));
            out += buf;
            out += (j == 5) ? "\n" : " ";
        }
    }
    return out;
}

ElasticityTensor tensor_from_text(const std::string& text, const std::string& unit) {
    std::istringstream in(text);
    ElasticityTensor t;
    t.unit = unit;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (!(in >> t.C(i, j))) throw IoError("tensor text: expected 36 numbers");
    return t;
}

}  // namespace vfcm
