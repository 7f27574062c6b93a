#pragma once

#include <vfcm/elasticity.hpp>
#include <vfcm/spline.hpp>

#include <unordered_map>
#include <vector>

namespace vfcm {

/// How a V-cell provides material data at a queried point.
struct MaterialMode {
    enum class Kind { FromChannels, Constant, Homogenized };
    Kind kind = Kind::FromChannels;
    IsotropicMaterial constant{};
    std::string table;  // handle to an effective-tensor table (homogenized)
};

/// One non-singular trivariate patch of a V-model.
struct VCell {
    TrivariateSpline spline;
    int id = 0;
    MaterialMode mode;
    Box3 bbox;  // control hull, used as membership pre-filter

    VCell() = default;
    VCell(TrivariateSpline sp, int cell_id, MaterialMode m = {});
};

/// Boolean expression over cell memberships. The first operand of a node is
/// the prevailing one for material queries in overlap regions.
struct CsgNode {
    enum class Op { Cell, Union, Intersection, Difference };
    Op op = Op::Cell;
    int cell = -1;
    std::vector<CsgNode> kids;

    static CsgNode leaf(int cell_id) {
        CsgNode n;
        n.op = Op::Cell;
        n.cell = cell_id;
        return n;
    }
    static CsgNode make(Op o, std::vector<CsgNode> children) {
        CsgNode n;
        n.op = o;
        n.kids = std::move(children);
        return n;
    }
    bool pure_union() const;
    void collect_cells(std::vector<int>& out) const;
};

/// Per-worker warm-start hints for the Newton inversion. Entries are hints
/// only; results never depend on them. Counters feed the cache benchmark.
struct InversionCache {
    std::unordered_map<int, Vec3> hint;
    long queries = 0;
    long newton_iterations = 0;
};

struct PointQuery {
    bool inside = false;
    int cell = -1;  // prevailing cell when inside
    Vec3 param = Vec3::Zero();
};

/// A set of V-cells plus CSG membership semantics. Immutable after build;
/// concurrent queries take a per-worker InversionCache.
class VModel {
public:
    VModel() = default;
    explicit VModel(std::vector<VCell> cells, Real tol_geom = -1.0);
    VModel(std::vector<VCell> cells, CsgNode csg, Real tol_geom = -1.0);

    const std::vector<VCell>& cells() const { return cells_; }
    const CsgNode& csg() const { return csg_; }
    Real tol_geom() const { return tol_geom_; }
    Box3 bbox() const { return bbox_; }
    const VCell& cell_by_id(int id) const;
    bool empty() const { return cells_.empty(); }

    /// Inverse-mapping membership with CSG semantics. On success the hit
    /// carries the prevailing cell and its parameter point.
    PointQuery query(const Vec3& x, InversionCache& cache) const;
    bool contains(const Vec3& x, InversionCache& cache) const {
        return query(x, cache).inside;
    }

private:
    PointQuery query_node(const CsgNode& n, const Vec3& x, InversionCache& cache) const;
    PointQuery query_cell(const VCell& c, const Vec3& x, InversionCache& cache) const;
    void finalize();

    std::vector<VCell> cells_;
    CsgNode csg_ = CsgNode::make(CsgNode::Op::Union, {});
    Real tol_geom_ = 0.0;
    Box3 bbox_;
    std::unordered_map<int, std::size_t> by_id_;
};

// ---------------------------------------------------------- primitives

/// Linear extrusion of a surface along `vector` (w direction, knots 0 0 1 1).
VCell make_extrusion(const SurfaceSpline& surface, const Vec3& vector, int id = 0);

/// Linear blend between two compatible surfaces (auto-unified knots/degrees).
VCell make_ruled(const SurfaceSpline& s0, const SurfaceSpline& s1, int id = 0);

/// Solid of revolution about an axis; one cell per sector of at most 90
/// degrees, circular arcs approximated by quadratic segments of at most
/// `max_segment_deg`.
std::vector<VCell> make_revolution(const SurfaceSpline& profile,
                                   const Vec3& axis_point, const Vec3& axis_dir,
                                   Real angle_deg, Real max_segment_deg = 10.0);

/// Five-patch cylinder: square core plus four extruded ring quadrants,
/// axis z, base at z = 0. Quarter arcs are two cubic Bezier spans.
std::vector<VCell> make_cylinder(Real radius, Real height);

/// Seven-patch sphere: center cuboid plus six ruled cap solids.
std::vector<VCell> make_sphere_cells(Real radius, int cap_samples = 16);

// ---------------------------------------------------------- JSON I/O

std::string to_json_string(const VModel& vm);
VModel vmodel_from_json_string(const std::string& text);
void save_vmodel(const VModel& vm, const std::string& path);
VModel load_vmodel(const std::string& path);

}  // namespace vfcm
