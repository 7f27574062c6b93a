#pragma once

#include <vfcm/elasticity.hpp>
#include <vfcm/knots.hpp>

#include <string>
#include <vector>

namespace vfcm {

/// Gridded map (rod diameter x rotation angle) -> effective elasticity
/// tensor, with per-coefficient interpolating splines. The angle axis is
/// filled analytically by Bond rotation of the unrotated samples.
class EffectiveTensorTable {
public:
    static std::vector<Real> default_angles();  // 0..90 deg, step 7.5

    /// `samples`: (diameter, unrotated tensor) pairs, distinct diameters.
    static EffectiveTensorTable build(
        const std::vector<std::pair<Real, ElasticityTensor>>& samples,
        std::vector<Real> angles = default_angles());

    /// Coefficient-wise spline evaluation; symmetrized; the 13-coefficient
    /// sparsity pattern enforced. Out-of-range diameter is a DomainError.
    ElasticityTensor query(Real diameter, Real angle_deg) const;

    /// Piecewise-linear variant (bracketing guarantees for monotone data).
    ElasticityTensor query_linear(Real diameter, Real angle_deg) const;

    const std::vector<Real>& diameters() const { return diameters_; }
    const std::vector<Real>& angles() const { return angles_; }
    const ElasticityTensor& at(int i_diameter, int j_angle) const;
    const std::string& unit() const { return unit_; }

    std::string to_json_string() const;
    static EffectiveTensorTable from_json_string(const std::string& text);
    void save(const std::string& path) const;
    static EffectiveTensorTable load(const std::string& path);

private:
    void fit_interpolants();
    ElasticityTensor assemble(const Vec6& diag_etc, const VectorXd& coeffs) const;

    std::vector<Real> diameters_;
    std::vector<Real> angles_;
    std::vector<ElasticityTensor> entries_;  // row-major: i_diameter * n_angles + j_angle
    std::string unit_ = "kN/cm^2";

    // interpolation state: 21 upper-triangle coefficient surfaces
    KnotVector kd_, ka_;
    MatrixXd coef_;  // 21 x (n_d * n_a), lexicographic (diameter fastest)
};

}  // namespace vfcm
