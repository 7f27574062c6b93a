#pragma once

#include <vfcm/types.hpp>

#include <functional>
#include <vector>

namespace vfcm {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule1d {
    VectorXd points;
    VectorXd weights;
};

/// Cached rule with n points (exact through degree 2n-1).
const GaussRule1d& gauss_rule(int n);

using MembershipFn = std::function<bool(const Vec3&)>;

/// Balanced space-tree over one cut cell: sub-boxes whose sample lattice is
/// mixed are subdivided until `depth`; every leaf carries a tensor Gauss
/// rule at assembly time. Leaf volumes partition the cell exactly.
struct QuadratureOctree {
    std::vector<Box3> leaves;
    int depth = 0;
};

QuadratureOctree build_octree(const Box3& cell, const MembershipFn& inside, int depth);

/// Tensor Gauss points of a box; calls fn(x, w) with physical weights.
void for_each_gauss_point(const Box3& box, int points_per_axis,
                          const std::function<void(const Vec3&, Real)>& fn);

}  // namespace vfcm
