#pragma once

#include <vfcm/knots.hpp>
#include <vfcm/types.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace vfcm {

/// Tensor-product B-spline mapping a Dim-dimensional parameter box into
/// R^(3+s): three geometric coordinates followed by s material channels.
/// Control points are stored densely in lexicographic order, direction 0
/// fastest. Immutable by convention: all operations return new splines.
template <int Dim>
struct TensorSpline {
    std::array<KnotVector, Dim> knots;
    std::array<int, Dim> dims{};           // basis counts per direction
    MatrixXd ctrl;                          // (3+s) x (prod dims)
    std::vector<std::string> channel_names; // size s

    int channels() const { return static_cast<int>(ctrl.rows()) - 3; }
    int point_dim() const { return static_cast<int>(ctrl.rows()); }
    long num_points() const { return ctrl.cols(); }

    long index(const std::array<int, Dim>& idx) const {
        long lin = 0, stride = 1;
        for (int d = 0; d < Dim; ++d) {
            lin += stride * idx[d];
            stride *= dims[d];
        }
        return lin;
    }

    /// Throws InvalidArgument when grid dims and knot vectors disagree.
    void validate() const;
};

using CurveSpline = TensorSpline<1>;
using SurfaceSpline = TensorSpline<2>;
using TrivariateSpline = TensorSpline<3>;

template <int Dim>
using ParamPoint = Eigen::Matrix<Real, Dim, 1>;

// ------------------------------------------------------------ evaluation

/// Full evaluation: geometry plus material channels.
template <int Dim>
VectorXd eval(const TensorSpline<Dim>& sp, const ParamPoint<Dim>& t);

template <int Dim>
Vec3 eval_geom(const TensorSpline<Dim>& sp, const ParamPoint<Dim>& t);

/// Value and all first partials; dvalue is (3+s) x Dim.
template <int Dim>
void eval_with_partials(const TensorSpline<Dim>& sp, const ParamPoint<Dim>& t,
                        VectorXd& value, MatrixXd& dvalue);

/// 3x3 Jacobian of the geometric map (columns: d x / d u_i).
Mat3 jacobian(const TrivariateSpline& sp, const Vec3& t);

// ------------------------------------------------------------ refinement

/// Insert knot t into direction `dir` with the given multiplicity. The
/// evaluated map is unchanged. Resulting multiplicity must stay <= degree+1.
template <int Dim>
TensorSpline<Dim> knot_insert(const TensorSpline<Dim>& sp, int dir, Real t,
                              int multiplicity = 1);

/// Raise the degree in direction `dir` to `target_degree` (pointwise exact).
template <int Dim>
TensorSpline<Dim> degree_elevate(const TensorSpline<Dim>& sp, int dir,
                                 int target_degree);

// ------------------------------------------------------------ structure

/// The six restriction surfaces, ordered umin, umax, vmin, vmax, wmin, wmax.
/// Material channels are retained.
std::array<SurfaceSpline, 6> boundary_faces(const TrivariateSpline& sp);

/// Control-point bounding box (contains the image by the hull property).
template <int Dim>
Box3 ctrl_bbox(const TensorSpline<Dim>& sp);

/// Sampled regularity check: det(J) keeps one sign and stays above
/// min_det_rel * (bbox diag / parameter span)^3 on a per-span sample lattice.
bool is_regular(const TrivariateSpline& sp, int samples_per_span = 4,
                Real min_det_rel = 1e-10);

// ------------------------------------------------------------ inversion

struct InvertOptions {
    int max_iter = 30;
    Real tol_geom = -1.0;  // < 0: 1e-10 * control bbox diagonal
};

struct InvertResult {
    bool found = false;
    Vec3 param = Vec3::Zero();
    int iterations = 0;
};

/// Newton inversion of the geometric map with damped steps clamped to the
/// knot box. Material channels never participate. `found == false` after
/// max_iter, on persistent residual growth, or when iterates leave the knot
/// box with an outward residual.
InvertResult invert_point(const TrivariateSpline& sp, const Vec3& x,
                          const Vec3& guess, const InvertOptions& opts = {});

// ------------------------------------------------------------ interpolation

/// Clamped spline through the columns of `values` at strictly increasing
/// `sites` (knots by site averaging). Exact collocation, degree <= n-1.
CurveSpline interpolate_curve(const std::vector<Real>& sites,
                              const MatrixXd& values, int degree);

/// Tensor-product interpolation through a grid of values (lexicographic,
/// u fastest: column j*nu+i holds the value at (su[i], sv[j])).
SurfaceSpline interpolate_surface(const std::vector<Real>& su,
                                  const std::vector<Real>& sv,
                                  const MatrixXd& values, int degree_u,
                                  int degree_v);

// ------------------------------------------------------------ constructors

/// Trilinear box [lo, hi] (one span per direction).
TrivariateSpline make_box(const Vec3& lo, const Vec3& hi);

/// Bilinear square patch from four corner points (p00, p10, p01, p11).
SurfaceSpline make_bilinear_patch(const Vec3& p00, const Vec3& p10,
                                  const Vec3& p01, const Vec3& p11);

// ------------------------------------------------------------ JSON I/O

template <int Dim>
std::string to_json_string(const TensorSpline<Dim>& sp);

template <int Dim>
TensorSpline<Dim> spline_from_json_string(const std::string& text);

template <int Dim>
void save_spline(const TensorSpline<Dim>& sp, const std::string& path);

template <int Dim>
TensorSpline<Dim> load_spline(const std::string& path);

}  // namespace vfcm
