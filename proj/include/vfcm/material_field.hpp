#pragma once

#include <vfcm/vmodel.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace vfcm {

struct FitResult {
    VectorXd mu;               // one material coordinate per control point
    Real residual_l2 = 0.0;    // over the sample grid
    Real residual_max = 0.0;
    long n_samples = 0;        // total grid points
};

/// Least-squares fit of a material function onto the spline's basis.
///
/// Samples lie on a uniform endpoint-inclusive parameter grid with
/// `n_per_direction` points per direction; f receives the physical point
/// V(u). Clamped-end coefficients are pinned to the sampled values at the
/// parameter-interval ends (clamped ends interpolate); interior coefficients
/// minimize the residual. Solved separably per direction with rank-revealing
/// QR; a rank-deficient direction is reported by name.
FitResult fit_least_squares(const TrivariateSpline& sp,
                            const std::function<Real(const Vec3&)>& f,
                            int n_per_direction);

/// Copy of sp with one additional material channel holding mu.
TrivariateSpline with_channel(const TrivariateSpline& sp, const std::string& name,
                              const VectorXd& mu);

/// Binds physical properties to spline channels, with constant fallbacks.
/// Constant-mode cells ignore channels entirely.
class MaterialField {
public:
    MaterialField() = default;
    MaterialField(std::map<std::string, std::string> property_to_channel,
                  std::optional<IsotropicMaterial> fallback)
        : bindings_(std::move(property_to_channel)), fallback_(fallback) {}

    /// All resolvable properties at a resolved (cell, parameter) pair.
    std::map<std::string, Real> sample(const VCell& cell, const Vec3& param) const;

    /// E/nu/kappa/alpha_th resolved through channels or fallbacks; throws
    /// naming the property when a required binding is missing.
    IsotropicMaterial material_at(const VCell& cell, const Vec3& param) const;

    const std::map<std::string, std::string>& bindings() const { return bindings_; }

private:
    std::optional<Real> value_of(const VCell& cell, const Vec3& param,
                                 const std::string& property) const;

    std::map<std::string, std::string> bindings_;
    std::optional<IsotropicMaterial> fallback_;
};

}  // namespace vfcm
