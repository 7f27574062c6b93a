#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vfcm/quadrature.hpp>
#include <vfcm/vmodel.hpp>

#include <cmath>
#include <random>

using namespace vfcm;

namespace {

std::mt19937_64 rng(777);
Real urand(Real lo, Real hi) { return std::uniform_real_distribution<Real>(lo, hi)(rng); }

// quadrature oracle: volume of the spline image via |det J|
Real spline_volume(const TrivariateSpline& sp, int gauss = 6) {
    const GaussRule1d& g = gauss_rule(gauss);
    Real vol = 0.0;
    std::array<std::vector<Real>, 3> bps;
    for (int d = 0; d < 3; ++d) bps[d] = sp.knots[d].breakpoints();
    for (std::size_t su = 0; su + 1 < bps[0].size(); ++su)
        for (std::size_t sv = 0; sv + 1 < bps[1].size(); ++sv)
            for (std::size_t sw = 0; sw + 1 < bps[2].size(); ++sw) {
                const Vec3 lo(bps[0][su], bps[1][sv], bps[2][sw]);
                const Vec3 hi(bps[0][su + 1], bps[1][sv + 1], bps[2][sw + 1]);
                const Vec3 h = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
                for (int i = 0; i < gauss; ++i)
                    for (int j = 0; j < gauss; ++j)
                        for (int k = 0; k < gauss; ++k) {
                            const Vec3 t = c + h.cwiseProduct(Vec3(g.points[i], g.points[j], g.points[k]));
                            const Real w = g.weights[i] * g.weights[j] * g.weights[k] * h.prod();
                            vol += w * std::abs(jacobian(sp, t).determinant());
                        }
            }
    return vol;
}

// the shielding-tile surface from the curved-tile example
SurfaceSpline example2_surface() {
    const Real xs[16] = {0, 0, 0, 0, 4, 4, 7, 7, 8, 8, 14, 14, 12, 12, 21, 21};
    const Real ys[16] = {0, 10, 20, 30, 0, 10, 20, 30, 0, 10, 20, 30, 0, 10, 20, 30};
    const Real zs[16] = {0, 0, 7, 7, 0, 0, 7, 7, 0, 0, 0, 0, 0, 0, 0, 0};
    SurfaceSpline s;
    s.knots = {KnotVector(2, {0, 0, 0, 0.5, 1, 1, 1}), KnotVector(2, {0, 0, 0, 0.5, 1, 1, 1})};
    s.dims = {4, 4};
    s.ctrl.resize(3, 16);
    for (int g = 0; g < 4; ++g)
        for (int k = 0; k < 4; ++k)
            s.ctrl.col(long(k) * 4 + g) = Vec3(xs[4 * g + k], ys[4 * g + k], zs[4 * g + k]);
    return s;
}

}  // namespace

TEST_CASE("make_extrusion: unit square to unit cube") {
    const SurfaceSpline sq = make_bilinear_patch({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0});
    const VCell cube = make_extrusion(sq, Vec3(0, 0, 1));
    CHECK(cube.spline.knots[2].degree() == 1);
    CHECK(cube.spline.knots[2].values() == std::vector<Real>{0, 0, 1, 1});
    CHECK((eval_geom(cube.spline, Vec3(0.2, 0.3, 0.9)) - Vec3(0.2, 0.3, 0.9)).norm() < 1e-14);
    CHECK(spline_volume(cube.spline) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(make_extrusion(sq, Vec3::Zero()), InvalidArgument);
}

TEST_CASE("make_extrusion: curved shielding-tile surface") {
    const SurfaceSpline s = example2_surface();
    const VCell tile = make_extrusion(s, Vec3(0, 0, 5));
    CHECK(tile.spline.knots[2].degree() == 1);
    CHECK(tile.spline.knots[2].values() == std::vector<Real>{0, 0, 1, 1});

    // top/bottom faces reproduce the source surface (offset by the vector)
    const auto faces = boundary_faces(tile.spline);
    for (int i = 0; i < 30; ++i) {
        const Eigen::Vector2d t(urand(0, 1), urand(0, 1));
        const Vec3 src = eval_geom(s, t);
        CHECK((eval_geom(faces[4], t) - src).norm() < 1e-12);
        CHECK((eval_geom(faces[5], t) - (src + Vec3(0, 0, 5))).norm() < 1e-12);
    }

    // the extrusion volume must equal projected base area times height
    const Real area = [&] {
        const GaussRule1d& g = gauss_rule(8);
        Real a = 0.0;
        for (Real bu : {0.0, 0.5})
            for (Real bv : {0.0, 0.5})
                for (int i = 0; i < 8; ++i)
                    for (int j = 0; j < 8; ++j) {
                        const Eigen::Vector2d t(bu + 0.25 * (g.points[i] + 1),
                                                bv + 0.25 * (g.points[j] + 1));
                        VectorXd val;
                        MatrixXd dv;
                        eval_with_partials(s, t, val, dv);
                        const Vec3 du = dv.col(0).head<3>(), dvv = dv.col(1).head<3>();
                        // extrusion along z: projected area element
                        a += 0.25 * 0.25 * g.weights[i] * g.weights[j] *
                             std::abs(du.x() * dvv.y() - du.y() * dvv.x());
                    }
        return a;
    }();
    CHECK(spline_volume(tile.spline, 8) == doctest::Approx(area * 5.0).epsilon(1e-10));
}

TEST_CASE("make_ruled: prism, degenerate rejection, midpoint blend") {
    const SurfaceSpline s0 = make_bilinear_patch({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0});
    const SurfaceSpline s1 = make_bilinear_patch({0.2, 0.1, 1}, {1.2, 0.1, 1}, {0.2, 1.1, 1}, {1.2, 1.1, 1});
    const VCell prism = make_ruled(s0, s1);
    for (int i = 0; i < 50; ++i) {
        const Real u = urand(0, 1), v = urand(0, 1);
        const Vec3 a = eval_geom(s0, {u, v}), b = eval_geom(s1, {u, v});
        CHECK((eval_geom(prism.spline, Vec3(u, v, 0.5)) - 0.5 * (a + b)).norm() < 1e-12);
    }
    CHECK_THROWS(make_ruled(s0, s0));  // degenerate blend is singular
}

TEST_CASE("make_ruled: unifies mismatched degrees and knots") {
    const SurfaceSpline s0 = make_bilinear_patch({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0});
    SurfaceSpline s1 = make_bilinear_patch({0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1});
    s1 = degree_elevate(s1, 0, 2);
    s1 = knot_insert(s1, 1, 0.3);
    const VCell cell = make_ruled(s0, s1);
    CHECK(spline_volume(cell.spline) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("make_revolution: sector counts and Pappus volume") {
    // profile: unit square in the xz plane, offset 2 from the z axis
    const SurfaceSpline profile =
        make_bilinear_patch({2, 0, 0}, {3, 0, 0}, {2, 0, 1}, {3, 0, 1});

    CHECK(make_revolution(profile, Vec3::Zero(), Vec3::UnitZ(), 90.0).size() == 1);
    auto cells = make_revolution(profile, Vec3::Zero(), Vec3::UnitZ(), 360.0);
    CHECK(cells.size() == 4);

    Real vol = 0.0;
    for (const auto& c : cells) vol += spline_volume(c.spline, 8);
    const Real pappus = 2 * M_PI * 2.5 * 1.0;  // centroid radius 2.5, area 1
    CHECK(std::abs(vol - pappus) / pappus < 1e-3);

    CHECK_THROWS_AS(make_revolution(profile, Vec3::Zero(), Vec3::UnitZ(), 0.0), InvalidArgument);
    const SurfaceSpline crossing =
        make_bilinear_patch({-1, 0, 0}, {1, 0, 0}, {-1, 0, 1}, {1, 0, 1});
    CHECK_THROWS_AS(make_revolution(crossing, Vec3::Zero(), Vec3::UnitZ(), 90.0), InvalidArgument);
}

TEST_CASE("make_cylinder: five cells, volume, non-overlap, axis point") {
    const Real R = 1.3, H = 2.0;
    auto cells = make_cylinder(R, H);
    REQUIRE(cells.size() == 5);

    Real vol = 0.0;
    for (const auto& c : cells) vol += spline_volume(c.spline, 6);
    CHECK(std::abs(vol - M_PI * R * R * H) / (M_PI * R * R * H) < 1e-3);

    VModel vm(cells);
    InversionCache cache;

    // axis point: inside exactly one cell (the core)
    int count = 0;
    for (const auto& c : cells) {
        InversionCache cc;
        VModel single({c});
        if (single.contains(Vec3(0, 0, H / 2), cc)) ++count;
    }
    CHECK(count == 1);

    // pairwise non-overlap except within tolerance of the shared interfaces
    const Real a = 0.5 * R;
    int bad = 0;
    for (int i = 0; i < 2000; ++i) {
        const Vec3 x(urand(-R, R), urand(-R, R), urand(0, H));
        int hits = 0;
        for (const auto& c : cells) {
            InversionCache cc;
            VModel single({c});
            if (single.contains(x, cc)) ++hits;
        }
        if (hits >= 2) {
            const Real d = std::min({std::abs(std::abs(x.x()) - a), std::abs(std::abs(x.y()) - a),
                                     std::abs(std::abs(x.x()) - std::abs(x.y()))});
            if (d > 1e-7 * R) ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("point_inclusion_inverse: cube basics and bbox pre-filter") {
    VModel cube({VCell(make_box({0, 0, 0}, {1, 1, 1}), 0)});
    InversionCache cache;
    const PointQuery q = cube.query(Vec3(0.5, 0.5, 0.5), cache);
    REQUIRE(q.inside);
    CHECK(q.cell == 0);
    CHECK((q.param - Vec3(0.5, 0.5, 0.5)).norm() < 1e-10);

    // far outside the bbox: rejected without Newton iterations
    InversionCache cold;
    CHECK_FALSE(cube.contains(Vec3(5, 5, 5), cold));
    CHECK(cold.newton_iterations == 0);
    CHECK(cold.queries == 0);
}

TEST_CASE("point_inclusion_inverse: cylinder vs analytic classification") {
    const Real R = 1.0, H = 1.0;
    VModel vm(make_cylinder(R, H));
    InversionCache cache;
    const Real band = 5e-6 * R + vm.tol_geom();
    int mismatches_outside_band = 0;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 x(urand(-R, R), urand(-R, R), urand(0, H));
        const Real r = std::hypot(x.x(), x.y());
        const bool analytic = r <= R;
        const bool got = vm.contains(x, cache);
        if (got != analytic) {
            const Real dist = std::min({std::abs(R - r), std::abs(x.z()), std::abs(H - x.z())});
            if (dist > band) ++mismatches_outside_band;
        }
    }
    CHECK(mismatches_outside_band == 0);
}

TEST_CASE("inversion cache lowers mean Newton iterations on a raster scan") {
    VModel vm(make_cylinder(1.0, 1.0));
    InversionCache warm;
    long cold_iters = 0, cold_queries = 0;
    for (int j = 0; j < 40; ++j)
        for (int i = 0; i < 40; ++i) {
            const Vec3 x(-1.0 + 2.0 * i / 39.0, -1.0 + 2.0 * j / 39.0, 0.5);
            vm.contains(x, warm);
            InversionCache cold;
            vm.contains(x, cold);
            cold_iters += cold.newton_iterations;
            cold_queries += cold.queries;
        }
    REQUIRE(cold_queries > 0);
    const Real warm_mean = Real(warm.newton_iterations) / Real(warm.queries);
    const Real cold_mean = Real(cold_iters) / Real(cold_queries);
    CHECK(warm_mean < cold_mean);
}

TEST_CASE("csg: difference, intersection, empty model, algebra") {
    std::vector<VCell> cells;
    cells.emplace_back(make_box({0, 0, 0}, {1, 1, 1}), 0);
    auto cyl = make_cylinder(0.3, 1.0);
    for (auto& c : cyl) {
        c.id += 1;
        cells.push_back(c);
    }
    // shift cylinder to the cube center axis
    for (std::size_t i = 1; i < cells.size(); ++i)
        cells[i].spline.ctrl.row(0).array() += 0.5,
        cells[i].spline.ctrl.row(1).array() += 0.5,
        cells[i].bbox = ctrl_bbox(cells[i].spline);

    CsgNode cube = CsgNode::leaf(0);
    CsgNode cylu = CsgNode::make(CsgNode::Op::Union,
                                 {CsgNode::leaf(1), CsgNode::leaf(2), CsgNode::leaf(3),
                                  CsgNode::leaf(4), CsgNode::leaf(5)});
    VModel diff(cells, CsgNode::make(CsgNode::Op::Difference, {cube, cylu}));
    VModel inter(cells, CsgNode::make(CsgNode::Op::Intersection, {cube, cylu}));
    VModel uni(cells, CsgNode::make(CsgNode::Op::Union, {cube, cylu}));
    VModel cube_only(std::vector<VCell>{cells[0]});
    VModel cyl_only(std::vector<VCell>(cells.begin() + 1, cells.end()));

    InversionCache c1, c2, c3, c4, c5;
    CHECK_FALSE(diff.contains(Vec3(0.5, 0.5, 0.5), c1));  // on the drilled axis
    CHECK(diff.contains(Vec3(0.05, 0.05, 0.5), c1));

    // pointwise boolean algebra against the component models
    for (int i = 0; i < 500; ++i) {
        const Vec3 x(urand(-0.2, 1.2), urand(-0.2, 1.2), urand(-0.2, 1.2));
        const bool a = cube_only.contains(x, c2);
        const bool b = cyl_only.contains(x, c3);
        CHECK(uni.contains(x, c4) == (a || b));
        CHECK(inter.contains(x, c5) == (a && b));
        CHECK(diff.contains(x, c1) == (a && !b));
    }

    VModel empty;
    InversionCache ce;
    CHECK_FALSE(empty.contains(Vec3(0.5, 0.5, 0.5), ce));
}

TEST_CASE("vmodel json round trip") {
    std::vector<VCell> cells;
    MaterialMode constant;
    constant.kind = MaterialMode::Kind::Constant;
    constant.constant = {11600.0, 0.36, 0.216, 8.6e-6};
    cells.emplace_back(make_box({0, 0, 0}, {1, 1, 1}), 0, constant);
    cells.emplace_back(make_box({1, 0, 0}, {2, 1, 1}), 1);
    VModel vm(cells, CsgNode::make(CsgNode::Op::Union, {CsgNode::leaf(0), CsgNode::leaf(1)}), 1e-9);

    const VModel back = vmodel_from_json_string(to_json_string(vm));
    CHECK(back.cells().size() == 2);
    CHECK(back.tol_geom() == vm.tol_geom());
    CHECK(back.cells()[0].mode.kind == MaterialMode::Kind::Constant);
    CHECK(back.cells()[0].mode.constant.E == 11600.0);
    InversionCache c;
    CHECK(back.contains(Vec3(1.5, 0.5, 0.5), c));
    CHECK_FALSE(back.contains(Vec3(2.5, 0.5, 0.5), c));
}
