#include <vfcm/tessellate.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <unordered_map>

namespace vfcm {

namespace {

constexpr int kLeafSize = 8;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Vec3 random_direction(std::uint64_t seed, int attempt) {
    const std::uint64_t h1 = splitmix64(seed * 0x100000001b3ull + attempt);
    const std::uint64_t h2 = splitmix64(h1);
    const Real z = 2.0 * (Real(h1 >> 11) / Real(1ull << 53)) - 1.0;
    const Real phi = 2.0 * M_PI * (Real(h2 >> 11) / Real(1ull << 53));
    const Real r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

Real box_surface_area(const Box3& b) {
    const Vec3 e = b.extent().cwiseMax(0.0);
    return 2.0 * (e.x() * e.y() + e.y() * e.z() + e.z() * e.x());
}

struct RaySeg {
    Vec3 orig, dir, inv;
};

bool ray_box(const RaySeg& r, const Box3& b, Real& t0, Real& t1) {
    t0 = 0.0;
    t1 = std::numeric_limits<Real>::max();
    for (int d = 0; d < 3; ++d) {
        Real lo = (b.lo[d] - r.orig[d]) * r.inv[d];
        Real hi = (b.hi[d] - r.orig[d]) * r.inv[d];
        if (r.inv[d] < 0) std::swap(lo, hi);
        t0 = std::max(t0, lo);
        t1 = std::min(t1, hi);
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace

// ------------------------------------------------------------- kd-tree

void TriangleKdTree::build(const std::vector<Vec3>& vertices,
                           const std::vector<std::array<int, 3>>& tris) {
    nodes_.clear();
    refs_.clear();
    tri_boxes_.resize(tris.size());
    std::vector<int> all(tris.size());
    for (std::size_t t = 0; t < tris.size(); ++t) {
        all[t] = static_cast<int>(t);
        Box3 b;
        for (int k = 0; k < 3; ++k) b.expand(vertices[tris[t][k]]);
        tri_boxes_[t] = b;
    }
    if (!tris.empty()) build_node(all, tri_boxes_, 0);
}

int TriangleKdTree::build_node(const std::vector<int>& tris,
                               const std::vector<Box3>& tri_boxes, int depth) {
    const int me = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Box3 box;
    for (int t : tris) box.expand(tri_boxes[t]);
    nodes_[me].box = box;

    const int n = static_cast<int>(tris.size());
    auto make_leaf = [&] {
        nodes_[me].begin = static_cast<int>(refs_.size());
        refs_.insert(refs_.end(), tris.begin(), tris.end());
        nodes_[me].end = static_cast<int>(refs_.size());
        return me;
    };
    if (n <= kLeafSize || depth > 32) return make_leaf();

    // SAH over sampled candidate planes on each axis
    Real best_cost = Real(n) * box_surface_area(box);
    int best_axis = -1;
    Real best_split = 0;
    for (int axis = 0; axis < 3; ++axis) {
        const Real lo = box.lo[axis], hi = box.hi[axis];
        if (hi - lo <= 0) continue;
        const int n_cand = std::min(16, n);
        for (int c = 1; c <= n_cand; ++c) {
            const Real split = lo + (hi - lo) * Real(c) / Real(n_cand + 1);
            int nl = 0, nr = 0;
            Box3 bl, br;
            for (int t : tris) {
                const Box3& tb = tri_boxes[t];
                if (tb.lo[axis] < split) { ++nl; bl.expand(tb); }
                if (tb.hi[axis] > split) { ++nr; br.expand(tb); }
            }
            if (nl == 0 || nr == 0 || nl == n || nr == n) continue;
            const Real cost = 0.3 * box_surface_area(box) +
                              Real(nl) * box_surface_area(bl) + Real(nr) * box_surface_area(br);
            if (cost < best_cost) {
                best_cost = cost;
                best_axis = axis;
                best_split = split;
            }
        }
    }
    if (best_axis < 0) return make_leaf();

    // straddling triangles are referenced on both sides
    std::vector<int> left, right;
    for (int t : tris) {
        const Box3& tb = tri_boxes[t];
        if (tb.lo[best_axis] < best_split) left.push_back(t);
        if (tb.hi[best_axis] > best_split) right.push_back(t);
    }
    if (left.size() + right.size() >= 2 * tris.size()) return make_leaf();  // no gain

    nodes_[me].left = build_node(left, tri_boxes, depth + 1);
    nodes_[me].right = build_node(right, tri_boxes, depth + 1);
    return me;
}

void TriangleKdTree::ray_candidates(const Vec3& orig, const Vec3& dir, std::vector<int>& out,
                                    std::vector<unsigned>& stamp, unsigned stamp_id) const {
    out.clear();
    if (nodes_.empty()) return;
    RaySeg r{orig, dir, dir.cwiseInverse()};
    std::vector<int> stack{0};
    Real t0, t1;
    while (!stack.empty()) {
        const Node& n = nodes_[stack.back()];
        stack.pop_back();
        if (!ray_box(r, n.box, t0, t1)) continue;
        if (n.left < 0) {
            for (int i = n.begin; i < n.end; ++i) {
                const int t = refs_[i];
                if (stamp[t] != stamp_id) {
                    stamp[t] = stamp_id;
                    out.push_back(t);
                }
            }
        } else {
            stack.push_back(n.left);
            stack.push_back(n.right);
        }
    }
}

// ----------------------------------------------------------- tessellate

Real TriBoundary::area() const {
    Real a = 0;
    for (const auto& t : triangles)
        a += 0.5 * (vertices[t[1]] - vertices[t[0]]).cross(vertices[t[2]] - vertices[t[0]]).norm();
    return a;
}

Real TriBoundary::volume() const {
    Real v = 0;
    for (const auto& t : triangles)
        v += vertices[t[0]].dot(vertices[t[1]].cross(vertices[t[2]])) / 6.0;
    return v;
}

namespace {

struct FaceGrid {
    int cell_id;
    int face;  // 0..5 within the cell
    std::vector<Vec3> points;  // nu x nv samples, u fastest
    int nu = 0, nv = 0;
    Vec3 centroid = Vec3::Zero();
    Real area = 0;
    Box3 box;
    Vec3 outward = Vec3::Zero();  // outward normal estimate at the grid center
};

Real point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Ericson, Real-Time Collision Detection 5.1.5
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const Real d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return (p - a).norm();
    const Vec3 bp = p - b;
    const Real d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return (p - b).norm();
    const Real vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return (p - (a + ab * (d1 / (d1 - d3)))).norm();
    const Vec3 cp = p - c;
    const Real d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return (p - c).norm();
    const Real vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return (p - (a + ac * (d2 / (d2 - d6)))).norm();
    const Real va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
        const Real w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (p - (b + w * (c - b))).norm();
    }
    const Real denom = 1.0 / (va + vb + vc);
    return (p - (a + ab * (vb * denom) + ac * (vc * denom))).norm();
}

std::vector<Real> span_samples(const KnotVector& kv, int res) {
    std::vector<Real> s;
    const auto bps = kv.breakpoints();
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const int n_seg = res - 1;
        for (int i = 0; i < n_seg; ++i)
            s.push_back(bps[k] + (bps[k + 1] - bps[k]) * Real(i) / n_seg);
    }
    s.push_back(bps.back());
    return s;
}

FaceGrid sample_face(const VCell& cell, int face, int res) {
    const auto faces = boundary_faces(cell.spline);
    const SurfaceSpline& f = faces[face];
    FaceGrid g;
    g.cell_id = cell.id;
    g.face = face;
    const auto su = span_samples(f.knots[0], res);
    const auto sv = span_samples(f.knots[1], res);
    g.nu = static_cast<int>(su.size());
    g.nv = static_cast<int>(sv.size());
    g.points.reserve(std::size_t(g.nu) * g.nv);
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const Vec3 p = eval_geom(f, {su[i], sv[j]});
            g.points.push_back(p);
            g.box.expand(p);
        }
    // area and centroid of the sampled quad mesh
    Vec3 weighted = Vec3::Zero();
    for (int j = 0; j + 1 < g.nv; ++j)
        for (int i = 0; i + 1 < g.nu; ++i) {
            const Vec3& a = g.points[j * g.nu + i];
            const Vec3& b = g.points[j * g.nu + i + 1];
            const Vec3& c = g.points[(j + 1) * g.nu + i + 1];
            const Vec3& d = g.points[(j + 1) * g.nu + i];
            const Real a1 = 0.5 * (b - a).cross(c - a).norm();
            const Real a2 = 0.5 * (c - a).cross(d - a).norm();
            g.area += a1 + a2;
            weighted += a1 * (a + b + c) / 3.0 + a2 * (a + c + d) / 3.0;
        }
    g.centroid = weighted / std::max(g.area, Real(1e-300));

    // outward normal via the volume jacobian at the face center
    const int dir = face / 2, side = face % 2;
    Vec3 t;
    for (int d = 0; d < 3; ++d)
        t[d] = 0.5 * (cell.spline.knots[d].front() + cell.spline.knots[d].back());
    t[dir] = side ? cell.spline.knots[dir].back() : cell.spline.knots[dir].front();
    const Mat3 J = jacobian(cell.spline, t);
    Vec3 grad = J.inverse().row(dir);
    g.outward = (side ? grad : Vec3(-grad)).normalized();
    return g;
}

}  // namespace

TriBoundary tessellate(const VModel& vm, int resolution) {
    if (resolution < 2) throw InvalidArgument("tessellate: resolution must be >= 2 samples/span");
    if (vm.empty()) throw InvalidArgument("tessellate: empty model");
    if (!vm.csg().pure_union())
        throw InvalidArgument(
            "tessellate: only union-of-cells models have a face-matched boundary; "
            "intersection/difference trees are evaluated at membership level only");

    const Real diag = vm.bbox().diagonal();
    const Real match_tol = 1e-7 * diag;
    const Real weld_tol = 1e-9 * diag;

    // sample all faces, then drop interior pairs by geometric signature
    std::vector<FaceGrid> grids;
    for (const auto& cell : vm.cells())
        for (int f = 0; f < 6; ++f) grids.push_back(sample_face(cell, f, resolution));

    auto signature_match = [&](const FaceGrid& a, const FaceGrid& b) {
        return (a.centroid - b.centroid).norm() <= match_tol &&
               std::abs(a.area - b.area) <= match_tol * std::max(diag, a.area / diag) &&
               (a.box.lo - b.box.lo).norm() <= match_tol &&
               (a.box.hi - b.box.hi).norm() <= match_tol;
    };
    std::vector<bool> interior(grids.size(), false);
    for (std::size_t i = 0; i < grids.size(); ++i)
        for (std::size_t j = i + 1; j < grids.size(); ++j) {
            if (interior[i] || interior[j] || grids[i].cell_id == grids[j].cell_id) continue;
            if (signature_match(grids[i], grids[j])) interior[i] = interior[j] = true;
        }

    // partially-shared faces survive signature matching but leave coincident
    // sheets in the boundary: detect quad centers of one kept face lying on
    // another cell's kept face
    {
        std::vector<std::string> pairs;
        for (std::size_t i = 0; i < grids.size() && pairs.size() < 8; ++i) {
            if (interior[i]) continue;
            for (std::size_t j = 0; j < grids.size(); ++j) {
                if (j == i || interior[j] || grids[i].cell_id == grids[j].cell_id) continue;
                const Box3 jbox = grids[j].box.inflated(match_tol);
                const bool boxes_touch =
                    (grids[i].box.lo.array() <= jbox.hi.array()).all() &&
                    (jbox.lo.array() <= grids[i].box.hi.array()).all();
                if (!boxes_touch) continue;
                bool offending = false;
                const FaceGrid& a = grids[i];
                const FaceGrid& b = grids[j];
                for (int qj = 0; qj + 1 < a.nv && !offending; ++qj)
                    for (int qi = 0; qi + 1 < a.nu && !offending; ++qi) {
                        const Vec3 center = 0.25 * (a.points[qj * a.nu + qi] +
                                                    a.points[qj * a.nu + qi + 1] +
                                                    a.points[(qj + 1) * a.nu + qi] +
                                                    a.points[(qj + 1) * a.nu + qi + 1]);
                        if (!jbox.contains(center, 0.0)) continue;
                        for (int tj = 0; tj + 1 < b.nv && !offending; ++tj)
                            for (int ti = 0; ti + 1 < b.nu && !offending; ++ti) {
                                const Vec3& p0 = b.points[tj * b.nu + ti];
                                const Vec3& p1 = b.points[tj * b.nu + ti + 1];
                                const Vec3& p2 = b.points[(tj + 1) * b.nu + ti + 1];
                                const Vec3& p3 = b.points[(tj + 1) * b.nu + ti];
                                if (point_triangle_distance(center, p0, p1, p2) <= match_tol ||
                                    point_triangle_distance(center, p0, p2, p3) <= match_tol)
                                    offending = true;
                            }
                    }
                if (offending)
                    pairs.push_back("cell " + std::to_string(a.cell_id) + " face " +
                                    std::to_string(a.face) + " overlaps cell " +
                                    std::to_string(b.cell_id) + " face " + std::to_string(b.face));
            }
        }
        if (!pairs.empty()) {
            std::string msg = "tessellate: cells do not meet at exactly shared faces;";
            for (const auto& s : pairs) msg += " [" + s + "]";
            throw NonWatertightError(msg, pairs);
        }
    }

    // weld vertices and emit outward-oriented triangles
    TriBoundary tb;
    tb.resolution = resolution;
    struct QKey {
        std::int64_t a, b, c;
        bool operator==(const QKey&) const = default;
    };
    struct QKeyHash {
        std::size_t operator()(const QKey& k) const {
            std::uint64_t h = splitmix64(static_cast<std::uint64_t>(k.a));
            h = splitmix64(h ^ static_cast<std::uint64_t>(k.b));
            h = splitmix64(h ^ static_cast<std::uint64_t>(k.c));
            return static_cast<std::size_t>(h);
        }
    };
    std::unordered_map<QKey, int, QKeyHash> weld;
    auto quantize = [&](const Vec3& p) {
        return QKey{static_cast<std::int64_t>(std::llround(p.x() / weld_tol)),
                    static_cast<std::int64_t>(std::llround(p.y() / weld_tol)),
                    static_cast<std::int64_t>(std::llround(p.z() / weld_tol))};
    };
    auto vertex_id = [&](const Vec3& p) {
        const QKey base = quantize(p);
        // coincident points may quantize to a neighboring cell; search the
        // 27-cell neighborhood for a vertex within the weld tolerance
        for (std::int64_t da = -1; da <= 1; ++da)
            for (std::int64_t db = -1; db <= 1; ++db)
                for (std::int64_t dc = -1; dc <= 1; ++dc) {
                    auto it = weld.find(QKey{base.a + da, base.b + db, base.c + dc});
                    if (it != weld.end() && (tb.vertices[it->second] - p).norm() <= weld_tol)
                        return it->second;
                }
        const int id = static_cast<int>(tb.vertices.size());
        tb.vertices.push_back(p);
        tb.bbox.expand(p);
        weld.emplace(base, id);
        return id;
    };
    std::vector<std::string> tri_source;  // per-triangle provenance for error reports
    for (std::size_t gi = 0; gi < grids.size(); ++gi) {
        if (interior[gi]) continue;
        const FaceGrid& g = grids[gi];
        const std::string src = "cell " + std::to_string(g.cell_id) + " face " + std::to_string(g.face);
        for (int j = 0; j + 1 < g.nv; ++j)
            for (int i = 0; i + 1 < g.nu; ++i) {
                const Vec3& a = g.points[j * g.nu + i];
                const Vec3& b = g.points[j * g.nu + i + 1];
                const Vec3& c = g.points[(j + 1) * g.nu + i + 1];
                const Vec3& d = g.points[(j + 1) * g.nu + i];
                for (const auto& tri : {std::array<Vec3, 3>{a, b, c}, std::array<Vec3, 3>{a, c, d}}) {
                    const Vec3 n = (tri[1] - tri[0]).cross(tri[2] - tri[0]);
                    if (n.norm() <= 1e-30) continue;  // collapsed sample quad
                    std::array<int, 3> ids{vertex_id(tri[0]), vertex_id(tri[1]), vertex_id(tri[2])};
                    if (n.dot(g.outward) < 0) std::swap(ids[1], ids[2]);
                    tb.triangles.push_back(ids);
                    tri_source.push_back(src);
                }
            }
    }

    // watertightness: every directed edge matched by its reverse exactly once
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : tb.triangles)
        for (int e = 0; e < 3; ++e) {
            const int u = t[e], v = t[(e + 1) % 3];
            edge_count[{u, v}] += 1;
        }
    std::vector<std::string> offending;
    for (std::size_t ti = 0; ti < tb.triangles.size() && offending.size() < 16; ++ti) {
        const auto& t = tb.triangles[ti];
        for (int e = 0; e < 3; ++e) {
            const int u = t[e], v = t[(e + 1) % 3];
            if (edge_count[{u, v}] != 1 || edge_count[{v, u}] != 1) {
                offending.push_back(tri_source[ti]);
                break;
            }
        }
    }
    if (!offending.empty()) {
        std::sort(offending.begin(), offending.end());
        offending.erase(std::unique(offending.begin(), offending.end()), offending.end());
        std::string msg = "tessellate: boundary is not watertight; offending faces:";
        for (const auto& s : offending) msg += " [" + s + "]";
        throw NonWatertightError(msg, offending);
    }

    tb.kdtree.build(tb.vertices, tb.triangles);
    return tb;
}

// ------------------------------------------------------------- ray test

namespace {

enum class HitKind { Miss, Hit, Grazing };

HitKind intersect(const Vec3& orig, const Vec3& dir, const Vec3& v0, const Vec3& v1,
                  const Vec3& v2, Real scale) {
    const Vec3 e1 = v1 - v0, e2 = v2 - v0;
    const Vec3 p = dir.cross(e2);
    const Real det = e1.dot(p);
    const Real eps_par = 1e-14 * e1.norm() * e2.norm();
    if (std::abs(det) <= eps_par) {
        // parallel ray: only matters if it grazes the triangle plane
        const Real dist = std::abs((orig - v0).dot(e1.cross(e2).normalized()));
        return dist <= 1e-9 * scale ? HitKind::Grazing : HitKind::Miss;
    }
    const Real inv = 1.0 / det;
    const Vec3 tv = orig - v0;
    const Real u = tv.dot(p) * inv;
    const Vec3 q = tv.cross(e1);
    const Real v = dir.dot(q) * inv;
    const Real t = e2.dot(q) * inv;
    constexpr Real btol = 1e-12;
    if (u < -btol || v < -btol || u + v > 1.0 + btol) return HitKind::Miss;
    if (t <= 0) {
        return (t > -1e-12 && u >= -btol && v >= -btol) ? HitKind::Grazing : HitKind::Miss;
    }
    if (u <= btol || v <= btol || u + v >= 1.0 - btol || t <= 1e-12)
        return HitKind::Grazing;  // edge/vertex graze or on-surface origin
    return HitKind::Hit;
}

}  // namespace

bool point_inclusion_ray(const TriBoundary& tb, const Vec3& x, std::uint64_t seed) {
    if (!tb.bbox.contains(x, 0.0)) return false;
    const Real scale = tb.bbox.diagonal();
    thread_local std::vector<unsigned> stamp;
    thread_local unsigned stamp_id = 0;
    thread_local std::vector<int> candidates;
    if (stamp.size() < tb.triangles.size()) stamp.assign(tb.triangles.size(), 0u);

    auto cast = [&](int attempt, bool& grazed) {
        const Vec3 dir = random_direction(seed + 0x9e37u, attempt);
        ++stamp_id;
        if (stamp_id == 0) {
            stamp.assign(stamp.size(), 0u);
            stamp_id = 1;
        }
        tb.kdtree.ray_candidates(x, dir, candidates, stamp, stamp_id);
        int crossings = 0;
        grazed = false;
        for (int t : candidates) {
            const auto& tri = tb.triangles[t];
            switch (intersect(x, dir, tb.vertices[tri[0]], tb.vertices[tri[1]],
                              tb.vertices[tri[2]], scale)) {
                case HitKind::Hit: ++crossings; break;
                case HitKind::Grazing: grazed = true; break;
                case HitKind::Miss: break;
            }
            if (grazed) break;
        }
        return crossings;
    };

    for (int attempt = 0; attempt < 8; ++attempt) {
        bool grazed = false;
        const int crossings = cast(attempt, grazed);
        if (!grazed) return (crossings % 2) == 1;
    }
    // persistent grazing: majority vote of 3 extra rays, parity as cast
    int votes = 0;
    for (int attempt = 8; attempt < 11; ++attempt) {
        bool grazed = false;
        const int crossings = cast(attempt, grazed);
        votes += (crossings % 2) == 1 ? 1 : 0;
    }
    return votes >= 2;
}

void export_stl(const TriBoundary& tb, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    char header[80] = {};
    std::strncpy(header, "vfcm tessellated boundary", sizeof(header) - 1);
    out.write(header, 80);
    const std::uint32_t n = static_cast<std::uint32_t>(tb.triangles.size());
    out.write(reinterpret_cast<const char*>(&n), 4);
    for (const auto& t : tb.triangles) {
        const Vec3 a = tb.vertices[t[0]], b = tb.vertices[t[1]], c = tb.vertices[t[2]];
        const Vec3 nrm = (b - a).cross(c - a).normalized();
        float buf[12] = {
            float(nrm.x()), float(nrm.y()), float(nrm.z()),
            float(a.x()), float(a.y()), float(a.z()),
            float(b.x()), float(b.y()), float(b.z()),
            float(c.x()), float(c.y()), float(c.z()),
        };
        out.write(reinterpret_cast<const char*>(buf), sizeof(buf));
        const std::uint16_t attr = 0;
        out.write(reinterpret_cast<const char*>(&attr), 2);
    }
}

// ------------------------------------------------------------- oracle

MembershipOracle MembershipOracle::inverse_engine(std::shared_ptr<const VModel> vm) {
    MembershipOracle o;
    o.kind_ = EngineKind::Inverse;
    o.vm_ = std::move(vm);
    return o;
}

MembershipOracle MembershipOracle::ray_engine(std::shared_ptr<const TriBoundary> tb,
                                              std::uint64_t seed) {
    MembershipOracle o;
    o.kind_ = EngineKind::Ray;
    o.tb_ = std::move(tb);
    o.seed_ = seed;
    return o;
}

MembershipFn MembershipOracle::worker() const {
    if (kind_ == EngineKind::Inverse) {
        auto vm = vm_;
        auto cache = std::make_shared<InversionCache>();
        return [vm, cache](const Vec3& x) { return vm->contains(x, *cache); };
    }
    auto tb = tb_;
    const std::uint64_t seed = seed_;
    return [tb, seed](const Vec3& x) { return point_inclusion_ray(*tb, x, seed); };
}

std::function<PointQuery(const Vec3&)> MembershipOracle::query_worker() const {
    if (kind_ == EngineKind::Inverse) {
        auto vm = vm_;
        auto cache = std::make_shared<InversionCache>();
        return [vm, cache](const Vec3& x) { return vm->query(x, *cache); };
    }
    auto tb = tb_;
    const std::uint64_t seed = seed_;
    return [tb, seed](const Vec3& x) {
        PointQuery q;
        q.inside = point_inclusion_ray(*tb, x, seed);
        return q;
    };
}

}  // namespace vfcm
