#pragma once

#include <vfcm/types.hpp>

#include <string>

namespace vfcm {

/// Linear elastic, thermally expanding isotropic material.
/// E in the unit given by the surrounding context (kN/cm^2 in the shielding
/// tile data), kappa in W/(cm K), alpha_th in 1/K.
struct IsotropicMaterial {
    Real E = 1.0;
    Real nu = 0.0;
    Real kappa = 0.0;
    Real alpha_th = 0.0;

    void validate() const {
        if (!(E > 0)) throw InvalidArgument("material: E must be positive");
        if (!(nu > -1.0 && nu < 0.5)) throw InvalidArgument("material: nu outside (-1, 0.5)");
        if (kappa < 0) throw InvalidArgument("material: kappa must be nonnegative");
    }
    Real lambda() const { return E * nu / ((1 + nu) * (1 - 2 * nu)); }
    Real mu() const { return E / (2 * (1 + nu)); }
};

/// Symmetric 6x6 stiffness in Voigt order (11, 22, 33, 12, 23, 13) with
/// engineering shear strains. Carries a unit tag; mixing tags is an error.
struct ElasticityTensor {
    Mat6 C = Mat6::Zero();
    std::string unit = "kN/cm^2";

    void require_symmetric(Real rel_tol = 1e-9) const;
    bool is_positive_definite() const;
    Real max_abs() const { return C.cwiseAbs().maxCoeff(); }
    void require_same_unit(const ElasticityTensor& other) const {
        if (unit != other.unit)
            throw InvalidArgument("elasticity tensors mix units: " + unit + " vs " + other.unit);
    }
};

enum class SymmetryClass { Isotropic, Cubic, Tetragonal, Orthotropic, None };

std::string symmetry_name(SymmetryClass s);

/// Standard Lame construction, engineering-shear Voigt convention
/// (C44 = C55 = C66 = mu).
ElasticityTensor isotropic_to_voigt(const IsotropicMaterial& m,
                                    const std::string& unit = "kN/cm^2");

/// Bond stress (M) and strain (N) transformation matrices for a rotation of
/// `angle_deg` about the z axis, in the Voigt order above.
void bond_matrices(Real angle_deg, Mat6& M, Mat6& N);

/// C' = M C N^-1; the result is symmetrized.
ElasticityTensor rotate_tensor(const ElasticityTensor& C, Real angle_deg);

/// Strictest symmetry class whose equality constraints hold within the
/// relative tolerance. Tetragonal is tested about all three axes.
SymmetryClass classify_symmetry(const ElasticityTensor& C, Real tol = 1e-6);

/// Gibson-Ashby porosity scaling factors.
struct GibsonAshbyFactors {
    Real kappa_r = 1.0;
    Real E_r = 1.0;
};
GibsonAshbyFactors gibson_ashby(Real phi);

/// 6x6 whitespace-separated text block (row per line).
std::string tensor_to_text(const ElasticityTensor& C);
ElasticityTensor tensor_from_text(const std::string& text,
                                  const std::string& unit = "kN/cm^2");

}  // namespace vfcm
