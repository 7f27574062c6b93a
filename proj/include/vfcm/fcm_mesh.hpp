#pragma once

#include <vfcm/types.hpp>

#include <array>
#include <vector>

namespace vfcm {

/// 1D hierarchic shape functions on [-1, 1]: two nodal hats plus integrated
/// Legendre modes (index k >= 2 vanishes at both ends). Fills values and
/// derivatives for indices 0..p.
void shape_functions_1d(int p, Real xi, Real* N, Real* dN);

/// Cartesian extended-domain grid with tensor-product hierarchic shape
/// functions of uniform degree p and C0 entity-based dof coupling.
class FiniteCellMesh {
public:
    FiniteCellMesh() = default;
    FiniteCellMesh(const Box3& bbox, std::array<int, 3> divisions, int degree);

    const Box3& bbox() const { return bbox_; }
    const std::array<int, 3>& divisions() const { return div_; }
    int degree() const { return p_; }
    Vec3 cell_extent() const { return h_; }

    long num_cells() const { return long(div_[0]) * div_[1] * div_[2]; }
    long num_scalar_dofs() const { return n_scalar_; }
    int modes_per_cell() const { return (p_ + 1) * (p_ + 1) * (p_ + 1); }

    std::array<int, 3> cell_coords(long flat) const {
        const int i = static_cast<int>(flat % div_[0]);
        const int j = static_cast<int>((flat / div_[0]) % div_[1]);
        const int k = static_cast<int>(flat / (long(div_[0]) * div_[1]));
        return {i, j, k};
    }
    long cell_flat(int i, int j, int k) const {
        return i + long(div_[0]) * (j + long(div_[1]) * k);
    }
    Box3 cell_box(long flat) const;

    /// Cell that contains x (clamped to the grid). DomainError outside bbox.
    long locate(const Vec3& x) const;

    /// Scalar dof ids for the (p+1)^3 tensor modes of a cell, local index
    /// a + (p+1)*(b + (p+1)*c), a fastest.
    void cell_scalar_dofs(long flat, std::vector<long>& out) const;

    /// Scalar dofs supported on one bbox face (0..5: xmin,xmax,ymin,...).
    std::vector<long> boundary_face_scalar_dofs(int face) const;

    /// Grid position of a vertex dof (for periodic tying).
    Vec3 vertex_position(int i, int j, int k) const;

    // entity layout (exposed for the periodic constraint builder)
    long vertex_dof(int i, int j, int k) const;
    long edge_dof(int axis, int i, int j, int k, int mode) const;
    long face_dof(int normal, int i, int j, int k, int mode) const;
    int edge_modes() const { return p_ - 1; }
    int face_modes() const { return (p_ - 1) * (p_ - 1); }

private:
    Box3 bbox_;
    std::array<int, 3> div_{0, 0, 0};
    int p_ = 1;
    Vec3 h_ = Vec3::Zero();
    long n_scalar_ = 0;
    std::array<long, 8> offsets_{};  // vertices, edge x/y/z, face x/y/z, volume
};

}  // namespace vfcm
