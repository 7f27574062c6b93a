#include <vfcm/vmodel.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace vfcm {

VCell::VCell(TrivariateSpline sp, int cell_id, MaterialMode m)
    : spline(std::move(sp)), id(cell_id), mode(std::move(m)) {
    spline.validate();
    if (!is_regular(spline))
        throw InvalidArgument("VCell " + std::to_string(cell_id) +
                              ": spline is geometrically singular");
    bbox = ctrl_bbox(spline);
}

bool CsgNode::pure_union() const {
    if (op == Op::Cell) return true;
    if (op != Op::Union) return false;
    for (const auto& k : kids)
        if (!k.pure_union()) return false;
    return true;
}

void CsgNode::collect_cells(std::vector<int>& out) const {
    if (op == Op::Cell) {
        out.push_back(cell);
        return;
    }
    for (const auto& k : kids) k.collect_cells(out);
}

VModel::VModel(std::vector<VCell> cells, Real tol_geom)
    : cells_(std::move(cells)), tol_geom_(tol_geom) {
    std::vector<CsgNode> leaves;
    for (const auto& c : cells_) leaves.push_back(CsgNode::leaf(c.id));
    csg_ = CsgNode::make(CsgNode::Op::Union, std::move(leaves));
    finalize();
}

VModel::VModel(std::vector<VCell> cells, CsgNode csg, Real tol_geom)
    : cells_(std::move(cells)), csg_(std::move(csg)), tol_geom_(tol_geom) {
    finalize();
}

void VModel::finalize() {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (by_id_.count(cells_[i].id))
            throw InvalidArgument("VModel: duplicate cell id " + std::to_string(cells_[i].id));
        by_id_[cells_[i].id] = i;
        bbox_.expand(cells_[i].bbox);
    }
    std::vector<int> refs;
    csg_.collect_cells(refs);
    for (int id : refs)
        if (!by_id_.count(id))
            throw InvalidArgument("VModel: csg references unknown cell " + std::to_string(id));
    if (tol_geom_ <= 0.0)
        tol_geom_ = cells_.empty() ? 1e-12 : 1e-10 * bbox_.diagonal();
}

const VCell& VModel::cell_by_id(int id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end())
        throw InvalidArgument("VModel: unknown cell id " + std::to_string(id));
    return cells_[it->second];
}

PointQuery VModel::query_cell(const VCell& c, const Vec3& x, InversionCache& cache) const {
    PointQuery q;
    if (!c.bbox.contains(x, tol_geom_)) return q;

    Vec3 guess;
    auto it = cache.hint.find(c.id);
    if (it != cache.hint.end()) {
        guess = it->second;
    } else {
        for (int d = 0; d < 3; ++d)
            guess[d] = 0.5 * (c.spline.knots[d].front() + c.spline.knots[d].back());
    }
    InvertOptions opts;
    opts.tol_geom = tol_geom_;
    const InvertResult r = invert_point(c.spline, x, guess, opts);
    ++cache.queries;
    cache.newton_iterations += r.iterations;
    if (r.found) {
        cache.hint[c.id] = r.param;
        q.inside = true;
        q.cell = c.id;
        q.param = r.param;
    }
    return q;
}

PointQuery VModel::query_node(const CsgNode& n, const Vec3& x, InversionCache& cache) const {
    switch (n.op) {
        case CsgNode::Op::Cell:
            return query_cell(cell_by_id(n.cell), x, cache);
        case CsgNode::Op::Union: {
            for (const auto& k : n.kids) {
                PointQuery q = query_node(k, x, cache);
                if (q.inside) return q;  // first operand prevails
            }
            return {};
        }
        case CsgNode::Op::Intersection: {
            if (n.kids.empty()) return {};
            PointQuery q0 = query_node(n.kids.front(), x, cache);
            if (!q0.inside) return {};
            for (std::size_t i = 1; i < n.kids.size(); ++i)
                if (!query_node(n.kids[i], x, cache).inside) return {};
            return q0;
        }
        case CsgNode::Op::Difference: {
            if (n.kids.empty()) return {};
            PointQuery q0 = query_node(n.kids.front(), x, cache);
            if (!q0.inside) return {};
            for (std::size_t i = 1; i < n.kids.size(); ++i)
                if (query_node(n.kids[i], x, cache).inside) return {};
            return q0;
        }
    }
    return {};
}

PointQuery VModel::query(const Vec3& x, InversionCache& cache) const {
    if (cells_.empty()) return {};
    if (!bbox_.contains(x, tol_geom_)) return {};
    return query_node(csg_, x, cache);
}

// --------------------------------------------------------------- helpers

namespace {

// Raise both splines to common degrees and a common knot vector per
// direction (exact refinements only).
template <int Dim>
void unify(TensorSpline<Dim>& a, TensorSpline<Dim>& b) {
    for (int d = 0; d < Dim; ++d) {
        const int p = std::max(a.knots[d].degree(), b.knots[d].degree());
        a = degree_elevate(a, d, p);
        b = degree_elevate(b, d, p);
        const Real a0 = a.knots[d].front(), a1 = a.knots[d].back();
        if (std::abs(a0 - b.knots[d].front()) > 0 || std::abs(a1 - b.knots[d].back()) > 0)
            throw InvalidArgument("unify: parameter ranges differ");
        // union multiplicities of interior knots
        auto mults = [&](const KnotVector& kv) {
            std::vector<std::pair<Real, int>> m;
            for (Real t : kv.interior_breakpoints()) m.emplace_back(t, kv.multiplicity(t));
            return m;
        };
        for (const auto& [t, mult] : mults(b.knots[d])) {
            const int have = a.knots[d].multiplicity(t);
            if (mult > have) a = knot_insert(a, d, t, mult - have);
        }
        for (const auto& [t, mult] : mults(a.knots[d])) {
            const int have = b.knots[d].multiplicity(t);
            if (mult > have) b = knot_insert(b, d, t, mult - have);
        }
    }
}

// Cubic two-span Bezier approximation of the arc radius R from angle a0 to
// a1 (radians, |a1-a0| <= pi/2), in the xy plane at z. Max radial error
// ~4.2e-6 R for a quarter circle.
MatrixXd arc_ctrl_cubic(Real R, Real a0, Real a1) {
    const Real mid = 0.5 * (a0 + a1);
    MatrixXd P(3, 7);
    auto seg = [&](Real t0, Real t1, int col) {
        const Real k = (4.0 / 3.0) * std::tan((t1 - t0) / 4.0) * R;
        const Vec3 p0(R * std::cos(t0), R * std::sin(t0), 0);
        const Vec3 p3(R * std::cos(t1), R * std::sin(t1), 0);
        const Vec3 tan0(-std::sin(t0), std::cos(t0), 0);
        const Vec3 tan1(-std::sin(t1), std::cos(t1), 0);
        P.col(col + 0) = p0;
        P.col(col + 1) = p0 + k * tan0;
        P.col(col + 2) = p3 - k * tan1;
        P.col(col + 3) = p3;
    };
    seg(a0, mid, 0);
    seg(mid, a1, 3);  // shares the midpoint column
    return P;
}

KnotVector arc_knots_cubic() {
    return KnotVector(3, {0, 0, 0, 0, 0.5, 0.5, 0.5, 1, 1, 1, 1});
}

// Straight segment a->b as a cubic two-span curve with affine
// parameterization (control points at equal parameter fractions).
MatrixXd line_ctrl_cubic(const Vec3& a, const Vec3& b) {
    MatrixXd P(3, 7);
    for (int i = 0; i < 7; ++i) P.col(i) = a + (b - a) * (Real(i) / 6.0);
    return P;
}

SurfaceSpline surface_from_grid(const std::array<KnotVector, 2>& kv,
                                const std::vector<MatrixXd>& rows) {
    SurfaceSpline s;
    s.knots = kv;
    s.dims = {static_cast<int>(rows[0].cols()), static_cast<int>(rows.size())};
    s.ctrl.resize(3, long(s.dims[0]) * s.dims[1]);
    for (int j = 0; j < s.dims[1]; ++j)
        for (int i = 0; i < s.dims[0]; ++i) s.ctrl.col(long(j) * s.dims[0] + i) = rows[j].col(i);
    return s;
}

}  // namespace

VCell make_extrusion(const SurfaceSpline& surface, const Vec3& vector, int id) {
    if (vector.norm() == 0.0) throw InvalidArgument("make_extrusion: zero vector");
    TrivariateSpline sp;
    sp.knots = {surface.knots[0], surface.knots[1], KnotVector(1, {0, 0, 1, 1})};
    sp.dims = {surface.dims[0], surface.dims[1], 2};
    sp.channel_names = surface.channel_names;
    const long n = surface.ctrl.cols();
    sp.ctrl.resize(surface.ctrl.rows(), 2 * n);
    sp.ctrl.leftCols(n) = surface.ctrl;
    sp.ctrl.rightCols(n) = surface.ctrl;
    sp.ctrl.block(0, n, 3, n).colwise() += vector;
    return VCell(std::move(sp), id);
}

VCell make_ruled(const SurfaceSpline& s0_in, const SurfaceSpline& s1_in, int id) {
    SurfaceSpline s0 = s0_in, s1 = s1_in;
    unify(s0, s1);
    if (s0.dims != s1.dims || s0.ctrl.rows() != s1.ctrl.rows())
        throw InvalidArgument("make_ruled: incompatible surfaces");
    TrivariateSpline sp;
    sp.knots = {s0.knots[0], s0.knots[1], KnotVector(1, {0, 0, 1, 1})};
    sp.dims = {s0.dims[0], s0.dims[1], 2};
    sp.channel_names = s0.channel_names;
    const long n = s0.ctrl.cols();
    sp.ctrl.resize(s0.ctrl.rows(), 2 * n);
    sp.ctrl.leftCols(n) = s0.ctrl;
    sp.ctrl.rightCols(n) = s1.ctrl;
    return VCell(std::move(sp), id);  // degenerate blends rejected by the cell check
}

std::vector<VCell> make_revolution(const SurfaceSpline& profile, const Vec3& axis_point,
                                   const Vec3& axis_dir, Real angle_deg,
                                   Real max_segment_deg) {
    if (angle_deg <= 0) throw InvalidArgument("make_revolution: angle must be positive");
    if (axis_dir.norm() == 0) throw InvalidArgument("make_revolution: zero axis");

    // orthonormal frame with e3 along the axis
    const Vec3 e3 = axis_dir.normalized();
    Vec3 seed = std::abs(e3.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = (seed - seed.dot(e3) * e3).normalized();
    const Vec3 e2 = e3.cross(e1);
    Mat3 R;
    R.col(0) = e1;
    R.col(1) = e2;
    R.col(2) = e3;

    // profile in the axis frame
    MatrixXd q(3, profile.ctrl.cols());
    Real min_r2 = std::numeric_limits<Real>::max();
    for (long c = 0; c < profile.ctrl.cols(); ++c) {
        q.col(c) = R.transpose() * (profile.ctrl.col(c).head<3>() - axis_point);
        min_r2 = std::min(min_r2, q.col(c).head<2>().squaredNorm());
    }
    const Real scale = ctrl_bbox(profile).diagonal();
    if (min_r2 < 1e-20 * scale * scale)
        throw InvalidArgument("make_revolution: profile touches the axis");

    const Real total = angle_deg * M_PI / 180.0;
    const int n_sectors = static_cast<int>(std::ceil(angle_deg / 90.0 - 1e-12));
    std::vector<VCell> cells;
    for (int s = 0; s < n_sectors; ++s) {
        const Real t0 = total * s / n_sectors;
        const Real t1 = total * (s + 1) / n_sectors;
        const Real span_deg = (t1 - t0) * 180.0 / M_PI;
        const int n_seg = std::max(1, static_cast<int>(std::ceil(span_deg / max_segment_deg)));

        // quadratic interpolation of (cos, sin) per sector
        const int n_sites = 2 * n_seg + 1;
        std::vector<Real> sites(n_sites);
        MatrixXd vals(3, n_sites);
        for (int i = 0; i < n_sites; ++i) {
            sites[i] = Real(i) / (n_sites - 1);
            const Real a = t0 + (t1 - t0) * sites[i];
            vals.col(i) = Vec3(std::cos(a), std::sin(a), 0.0);
        }
        const CurveSpline arc = interpolate_curve(sites, vals, 2);

        TrivariateSpline sp;
        sp.knots = {profile.knots[0], profile.knots[1], arc.knots[0]};
        sp.dims = {profile.dims[0], profile.dims[1], arc.dims[0]};
        sp.channel_names = profile.channel_names;
        sp.ctrl.resize(profile.ctrl.rows(), profile.ctrl.cols() * arc.dims[0]);
        for (int k = 0; k < arc.dims[0]; ++k) {
            const Real ca = arc.ctrl(0, k), sa = arc.ctrl(1, k);
            for (long c = 0; c < profile.ctrl.cols(); ++c) {
                const Vec3 p = q.col(c);
                const Vec3 rotated(ca * p.x() - sa * p.y(), sa * p.x() + ca * p.y(), p.z());
                const long col = k * profile.ctrl.cols() + c;
                sp.ctrl.col(col).head<3>() = R * rotated + axis_point;
                if (sp.ctrl.rows() > 3)
                    sp.ctrl.col(col).tail(sp.ctrl.rows() - 3) =
                        profile.ctrl.col(c).tail(sp.ctrl.rows() - 3);
            }
        }
        cells.emplace_back(std::move(sp), s);
    }
    return cells;
}

std::vector<VCell> make_cylinder(Real radius, Real height) {
    if (!(radius > 0 && height > 0))
        throw InvalidArgument("make_cylinder: radius and height must be positive");
    const Real a = 0.5 * radius;  // core half-width

    std::vector<VCell> cells;

    // core: box with the edge knot structure matching the ring quadrants
    {
        TrivariateSpline core = make_box({-a, -a, 0}, {a, a, height});
        for (int d = 0; d < 2; ++d) {
            core = degree_elevate(core, d, 3);
            core = knot_insert(core, d, 0.5);
        }
        cells.emplace_back(std::move(core), 0);
    }

    // +y quadrant as planar ring surface extruded in z, then rotated copies
    const KnotVector arc_kv = arc_knots_cubic();
    const MatrixXd inner = line_ctrl_cubic({-a, a, 0}, {a, a, 0});
    const MatrixXd outer = arc_ctrl_cubic(radius, 0.75 * M_PI, 0.25 * M_PI);
    const SurfaceSpline ring =
        surface_from_grid({arc_kv, KnotVector(1, {0, 0, 1, 1})}, {inner, outer});

    for (int qd = 0; qd < 4; ++qd) {
        SurfaceSpline rq = ring;
        for (long c = 0; c < rq.ctrl.cols(); ++c) {
            Vec3 p = rq.ctrl.col(c).head<3>();
            for (int r = 0; r < qd; ++r) p = Vec3(p.y(), -p.x(), p.z());  // -90 deg turns
            rq.ctrl.col(c).head<3>() = p;
        }
        cells.push_back(make_extrusion(rq, Vec3(0, 0, height), 1 + qd));
    }
    return cells;
}

std::vector<VCell> make_sphere_cells(Real radius, int cap_samples) {
    if (!(radius > 0)) throw InvalidArgument("make_sphere_cells: radius must be positive");
    const Real a = 0.5 * radius;  // core half-width
    std::vector<VCell> cells;
    {
        TrivariateSpline core = make_box({-a, -a, -a}, {a, a, a});
        cells.emplace_back(std::move(core), 0);
    }
    // one cap per cube face: ruled solid between the face and the radial
    // projection of the face onto the sphere
    const int n = cap_samples;
    std::vector<Real> sites(n);
    for (int i = 0; i < n; ++i) sites[i] = Real(i) / (n - 1);

    int id = 1;
    for (int dir = 0; dir < 3; ++dir) {
        for (int side = -1; side <= 1; side += 2) {
            const int da = (dir + 1) % 3, db = (dir + 2) % 3;
            Vec3 base = Vec3::Zero();
            base[dir] = side * a;
            auto face_point = [&](Real u, Real v) {
                Vec3 p = base;
                p[da] = a * (2 * u - 1);
                p[db] = a * (2 * v - 1);
                return p;
            };
            MatrixXd grid(3, long(n) * n);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                    grid.col(long(j) * n + i) =
                        radius * face_point(sites[i], sites[j]).normalized();
            const SurfaceSpline cap = interpolate_surface(sites, sites, grid, 3, 3);
            const SurfaceSpline face = make_bilinear_patch(
                face_point(0, 0), face_point(1, 0), face_point(0, 1), face_point(1, 1));
            cells.push_back(make_ruled(face, cap, id++));
        }
    }
    return cells;
}

// --------------------------------------------------------------- JSON I/O

namespace {

nlohmann::json mode_to_json(const MaterialMode& m) {
    nlohmann::json j;
    switch (m.kind) {
        case MaterialMode::Kind::FromChannels:
            j["type"] = "from-channels";
            break;
        case MaterialMode::Kind::Constant:
            j["type"] = "constant";
            j["E"] = m.constant.E;
            j["nu"] = m.constant.nu;
            j["kappa"] = m.constant.kappa;
            j["alpha_th"] = m.constant.alpha_th;
            break;
        case MaterialMode::Kind::Homogenized:
            j["type"] = "homogenized";
            j["table"] = m.table;
            break;
    }
    return j;
}

MaterialMode mode_from_json(const nlohmann::json& j) {
    MaterialMode m;
    const std::string type = j.value("type", "from-channels");
    if (type == "from-channels") {
        m.kind = MaterialMode::Kind::FromChannels;
    } else if (type == "constant") {
        m.kind = MaterialMode::Kind::Constant;
        m.constant.E = j.at("E").get<Real>();
        m.constant.nu = j.at("nu").get<Real>();
        m.constant.kappa = j.value("kappa", 0.0);
        m.constant.alpha_th = j.value("alpha_th", 0.0);
    } else if (type == "homogenized") {
        m.kind = MaterialMode::Kind::Homogenized;
        m.table = j.at("table").get<std::string>();
    } else {
        throw IoError("vmodel json: unknown material mode " + type);
    }
    return m;
}

nlohmann::json csg_to_json(const CsgNode& n) {
    nlohmann::json j;
    switch (n.op) {
        case CsgNode::Op::Cell:
            j["cell"] = n.cell;
            return j;
        case CsgNode::Op::Union: j["op"] = "union"; break;
        case CsgNode::Op::Intersection: j["op"] = "intersection"; break;
        case CsgNode::Op::Difference: j["op"] = "difference"; break;
    }
    for (const auto& k : n.kids) j["args"].push_back(csg_to_json(k));
    return j;
}

CsgNode csg_from_json(const nlohmann::json& j) {
    if (j.contains("cell")) return CsgNode::leaf(j["cell"].get<int>());
    const std::string op = j.at("op").get<std::string>();
    CsgNode n;
    if (op == "union") n.op = CsgNode::Op::Union;
    else if (op == "intersection") n.op = CsgNode::Op::Intersection;
    else if (op == "difference") n.op = CsgNode::Op::Difference;
    else throw IoError("vmodel json: unknown csg op " + op);
    for (const auto& k : j.value("args", nlohmann::json::array())) n.kids.push_back(csg_from_json(k));
    return n;
}

}  // namespace

std::string to_json_string(const VModel& vm) {
    nlohmann::json j;
    j["tol_geom"] = vm.tol_geom();
    for (const auto& c : vm.cells()) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["material_mode"] = mode_to_json(c.mode);
        jc["spline"] = nlohmann::json::parse(to_json_string(c.spline));
        j["cells"].push_back(std::move(jc));
    }
    j["csg"] = csg_to_json(vm.csg());
    return j.dump(2);
}

VModel vmodel_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("vmodel json: ") + e.what());
    }
    std::vector<VCell> cells;
    for (const auto& jc : j.value("cells", nlohmann::json::array())) {
        cells.emplace_back(spline_from_json_string<3>(jc.at("spline").dump()),
                           jc.at("id").get<int>(), mode_from_json(jc.value("material_mode", nlohmann::json{})));
    }
    const Real tol = j.value("tol_geom", -1.0);
    if (j.contains("csg")) return VModel(std::move(cells), csg_from_json(j["csg"]), tol);
    return VModel(std::move(cells), tol);
}

void save_vmodel(const VModel& vm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << to_json_string(vm) << "\n";
}

VModel load_vmodel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return vmodel_from_json_string(text);
}

}  // namespace vfcm
