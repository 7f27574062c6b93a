#pragma once

#include <vfcm/elasticity.hpp>
#include <vfcm/fcm_mesh.hpp>
#include <vfcm/quadrature.hpp>
#include <vfcm/tessellate.hpp>

#include <Eigen/Sparse>

#include <functional>
#include <memory>

namespace vfcm {

using SpMat = Eigen::SparseMatrix<double>;

/// alpha(x): 1 in the physical domain, 10^-q in the fictitious domain.
struct IndicatorField {
    MembershipOracle oracle;
    int q = 8;
    Real alpha_fict() const { return std::pow(10.0, -Real(q)); }
};

enum class CellClass : std::uint8_t { Inside, Outside, Cut };

/// Per-cell classification from a samples^3 lattice (corners included).
std::vector<CellClass> classify_cells(const FiniteCellMesh& mesh,
                                      const MembershipOracle& oracle,
                                      int samples_per_axis = 5, int threads = 2);

/// Material lookups receive the resolved membership query (prevailing cell
/// and parameter for the inverse engine) plus the physical point.
using ElasticityAt = std::function<Mat6(const PointQuery&, const Vec3&)>;
using ScalarAt = std::function<Real(const PointQuery&, const Vec3&)>;

struct BoundaryCondition {
    enum class Kind { PenaltyDirichlet, Traction, HeatDirichlet, HeatFlux };
    Kind kind = Kind::PenaltyDirichlet;
    SurfaceSpline support;                         // explicit integrable surface
    std::array<bool, 3> components{false, false, false};
    std::function<Vec3(const Vec3&)> vec_value;    // Dirichlet data / traction
    std::function<Real(const Vec3&)> scalar_value; // heat variants
    Real beta = -1.0;                              // < 0: options default
};

/// Strong (eliminated) homogeneous constraint on a bbox face; conforming
/// meshes only.
struct StrongFaceBc {
    int face = 0;       // 0..5: xmin, xmax, ymin, ymax, zmin, zmax
    int component = 0;  // 0..ncomp-1
};

struct AssemblyOptions {
    int quad_points = 0;    // Gauss points per axis; 0 -> p+1
    int octree_depth = 4;
    int threads = 2;
    Real default_beta = -1.0;  // < 0: 1e8 * E_ref / min cell extent
    Real E_ref = 1.0;          // stiffness scale for the beta default
    Mat6 fallback_elasticity = Mat6::Identity();  // fictitious reference
    Real fallback_kappa = 1.0;
    bool material_needs_query = true;  // false: skip queries on inside cells
    int surface_gauss = 0;             // 0 -> p+2
    int classify_samples = 5;
};

struct LinearSystem {
    std::shared_ptr<const FiniteCellMesh> mesh;
    int ncomp = 3;
    SpMat K_upper;       // alpha-weighted stiffness (upper triangle)
    SpMat K_pen_upper;   // penalty terms (upper triangle)
    VectorXd rhs;
    std::vector<long> strong_dofs;  // eliminated (homogeneous) dofs
    std::vector<CellClass> classes;
    long n_quad_points = 0;
    Real beta_used = 0.0;
    int q_used = 8;

    long n_dofs() const { return mesh->num_scalar_dofs() * ncomp; }
};

LinearSystem assemble_elasticity(const FiniteCellMesh& mesh, const IndicatorField& indicator,
                                 const ElasticityAt& material,
                                 const std::vector<BoundaryCondition>& bcs,
                                 const AssemblyOptions& opts = {},
                                 const std::vector<StrongFaceBc>& strong = {});

LinearSystem assemble_heat(const FiniteCellMesh& mesh, const IndicatorField& indicator,
                           const ScalarAt& kappa, const std::vector<BoundaryCondition>& bcs,
                           const AssemblyOptions& opts = {},
                           const std::vector<StrongFaceBc>& strong = {});

/// Discrete field over the mesh (displacement ncomp=3, temperature ncomp=1).
struct SolutionField {
    std::shared_ptr<const FiniteCellMesh> mesh;
    int ncomp = 3;
    VectorXd u;
    Real energy = 0.0;  // 1/2 u^T K_stiff u

    /// Values and spatial gradient (ncomp x 3) at x; DomainError outside.
    void eval(const Vec3& x, VectorXd& vals, MatrixXd& grad) const;

    /// Engineering-shear Voigt strain (ncomp == 3).
    Vec6 strain(const Vec3& x) const;

    Real scalar(const Vec3& x) const;      // ncomp == 1
    Vec3 scalar_gradient(const Vec3& x) const;
};

struct SolveReport {
    long n_dofs = 0;
    long n_free_dofs = 0;
    Real residual_rel = 0.0;
    std::string solver;
    Real seconds = 0.0;
};

/// Direct sparse factorization (CHOLMOD when available, SimplicialLDLT
/// otherwise). Failure raises NumericalError with a conditioning diagnostic
/// including alpha, q and beta.
SolutionField solve(const LinearSystem& sys, SolveReport* report = nullptr);

/// Load vector from a thermal prestrain eps_th = alpha_th (theta - theta_ref) I
/// entering the elasticity right-hand side. Same mesh as the heat solution.
VectorXd thermal_load(const FiniteCellMesh& mesh, const IndicatorField& indicator,
                      const ElasticityAt& material, const ScalarAt& alpha_th,
                      const SolutionField& theta, Real theta_ref,
                      const AssemblyOptions& opts = {});

/// 1/2 u^T K_stiff u (penalty terms excluded).
Real strain_energy(const SolutionField& sol, const LinearSystem& sys);

Vec6 stress_from_strain(const Mat6& C, const Vec6& eps, const Vec6& eps_th = Vec6::Zero());
Real von_mises(const Vec6& sigma);

/// Integration of a surface spline against a callback fn(x, dA). Surface
/// panels are split at mesh planes for axis-aligned rectangles and
/// uniformly (about two panels per cell) otherwise.
void for_each_surface_point(const SurfaceSpline& s, const FiniteCellMesh& mesh, int gauss,
                            const std::function<void(const Vec3&, Real)>& fn);

}  // namespace vfcm
