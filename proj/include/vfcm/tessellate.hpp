#pragma once

#include <vfcm/quadrature.hpp>
#include <vfcm/vmodel.hpp>

#include <memory>
#include <string>
#include <vector>

namespace vfcm {

struct NonWatertightError : NumericalError {
    explicit NonWatertightError(const std::string& msg, std::vector<std::string> offending = {})
        : NumericalError(msg), faces(std::move(offending)) {}
    std::vector<std::string> faces;
};

/// Axis-aligned kd-tree over triangles; surface-area-heuristic splits,
/// straddling triangles referenced on both sides, leaf size 8.
class TriangleKdTree {
public:
    void build(const std::vector<Vec3>& vertices, const std::vector<std::array<int, 3>>& tris);

    /// Indices of triangles whose boxes intersect the ray (deduplicated).
    void ray_candidates(const Vec3& orig, const Vec3& dir, std::vector<int>& out,
                        std::vector<unsigned>& stamp, unsigned stamp_id) const;

    std::size_t num_nodes() const { return nodes_.size(); }

private:
    struct Node {
        Box3 box;
        int left = -1, right = -1;  // children; leaf if left < 0
        int begin = 0, end = 0;     // triangle reference range when leaf
    };
    int build_node(const std::vector<int>& tris, const std::vector<Box3>& tri_boxes,
                   int depth);
    std::vector<Node> nodes_;
    std::vector<int> refs_;
    std::vector<Box3> tri_boxes_;
};

/// Watertight triangulated boundary with its spatial index.
struct TriBoundary {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;  // outward oriented
    TriangleKdTree kdtree;
    int resolution = 0;  // samples per knot span used to build it
    Box3 bbox;

    Real area() const;
    /// Signed volume via the divergence theorem (positive for outward
    /// orientation).
    Real volume() const;
};

/// Tessellate the boundary of a union-of-cells model: interior faces are
/// removed by signature matching, remaining faces sampled `resolution`
/// points per knot span. Throws NonWatertightError when the result is not
/// an oriented 2-manifold, listing the offending face pairs.
TriBoundary tessellate(const VModel& vm, int resolution);

/// Parity ray test with deterministic pseudo-random directions. Grazing
/// hits (barycentric coordinates within 1e-12 of an edge) trigger a re-cast,
/// at most 8 attempts, then a majority vote of 3 extra rays.
bool point_inclusion_ray(const TriBoundary& tb, const Vec3& x, std::uint64_t seed = 0);

/// Binary little-endian STL.
void export_stl(const TriBoundary& tb, const std::string& path);

// ------------------------------------------------------------- oracle

enum class EngineKind { Inverse, Ray };

/// One membership interface over both engines. `worker()` hands out a
/// callable with its own mutable state (inversion cache / ray scratch), so
/// each thread takes one.
class MembershipOracle {
public:
    static MembershipOracle inverse_engine(std::shared_ptr<const VModel> vm);
    static MembershipOracle ray_engine(std::shared_ptr<const TriBoundary> tb,
                                       std::uint64_t seed = 0);

    EngineKind kind() const { return kind_; }
    const VModel* vmodel() const { return vm_.get(); }
    const TriBoundary* boundary() const { return tb_.get(); }

    MembershipFn worker() const;

    /// Worker that also reports the prevailing cell and parameter point
    /// (inverse engine; ray engine yields membership only).
    std::function<PointQuery(const Vec3&)> query_worker() const;

private:
    EngineKind kind_ = EngineKind::Inverse;
    std::shared_ptr<const VModel> vm_;
    std::shared_ptr<const TriBoundary> tb_;
    std::uint64_t seed_ = 0;
};

}  // namespace vfcm
