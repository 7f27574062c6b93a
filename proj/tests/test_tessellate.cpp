#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vfcm/tessellate.hpp>

#include <cstdio>
#include <random>

using namespace vfcm;

namespace {

std::mt19937_64 rng(4242);
Real urand(Real lo, Real hi) { return std::uniform_real_distribution<Real>(lo, hi)(rng); }

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
    const Vec3 proj = a + ab * (vb * denom) + ac * (vc * denom);
    return (p - proj).norm();
}

Real distance_to_mesh(const TriBoundary& tb, const Vec3& p) {
    Real best = std::numeric_limits<Real>::max();
    for (const auto& t : tb.triangles)
        best = std::min(best, point_triangle_distance(p, tb.vertices[t[0]], tb.vertices[t[1]],
                                                      tb.vertices[t[2]]));
    return best;
}

}  // namespace

TEST_CASE("tessellate: cube gives 12 triangles at resolution 2") {
    VModel cube({VCell(make_box({0, 0, 0}, {1, 1, 1}), 0)});
    const TriBoundary tb = tessellate(cube, 2);
    CHECK(tb.triangles.size() == 12);
    CHECK(tb.vertices.size() == 8);
    CHECK(tb.volume() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tb.area() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK_THROWS_AS(tessellate(cube, 1), InvalidArgument);
}

TEST_CASE("tessellate: two-cell union removes the shared face") {
    std::vector<VCell> cells;
    cells.emplace_back(make_box({0, 0, 0}, {1, 1, 1}), 0);
    cells.emplace_back(make_box({1, 0, 0}, {2, 1, 1}), 1);
    const TriBoundary tb = tessellate(VModel(cells), 2);
    CHECK(tb.volume() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tb.area() == doctest::Approx(10.0).epsilon(1e-12));  // interior 2x removed
}

TEST_CASE("tessellate: cylinder area converges, Hausdorff drops with resolution") {
    const Real R = 1.0, H = 2.0;
    VModel vm(make_cylinder(R, H));
    const TriBoundary tb16 = tessellate(vm, 16);
    const Real analytic = 2 * M_PI * R * (R + H);
    CHECK(std::abs(tb16.area() - analytic) / analytic < 1e-2);
    CHECK(tb16.volume() == doctest::Approx(M_PI * R * R * H).epsilon(1e-2));

    // sampled Hausdorff distance to the true lateral surface
    auto hausdorff = [&](const TriBoundary& tb) {
        Real worst = 0;
        for (int i = 0; i < 60; ++i) {
            const Real a = 2 * M_PI * i / 60.0;
            for (Real z : {0.3, 1.1, 1.9}) {
                worst = std::max(worst,
                                 distance_to_mesh(tb, Vec3(R * std::cos(a), R * std::sin(a), z)));
            }
        }
        return worst;
    };
    const Real h4 = hausdorff(tessellate(vm, 4));
    const Real h8 = hausdorff(tessellate(vm, 8));
    const Real h16 = hausdorff(tb16);
    CHECK(h8 < h4);
    CHECK(h16 < h8);
}

TEST_CASE("tessellate: sphere composite is watertight with the right volume") {
    VModel vm(make_sphere_cells(1.0));
    CHECK(vm.cells().size() == 7);
    const TriBoundary tb = tessellate(vm, 8);
    const Real analytic = 4.0 / 3.0 * M_PI;
    CHECK(std::abs(tb.volume() - analytic) / analytic < 1e-3);
}

TEST_CASE("tessellate: partially matched faces are reported") {
    std::vector<VCell> cells;
    cells.emplace_back(make_box({0, 0, 0}, {1, 1, 1}), 0);
    cells.emplace_back(make_box({0.5, 0, 1}, {1.5, 1, 2}), 1);  // T-junction on top
    CHECK_THROWS_AS(tessellate(VModel(cells), 2), NonWatertightError);
}

TEST_CASE("tessellate: difference trees are refused") {
    std::vector<VCell> cells;
    cells.emplace_back(make_box({0, 0, 0}, {1, 1, 1}), 0);
    cells.emplace_back(make_box({0.25, 0.25, 0.25}, {0.75, 0.75, 0.75}), 1);
    VModel vm(cells, CsgNode::make(CsgNode::Op::Difference,
                                   {CsgNode::leaf(0), CsgNode::leaf(1)}));
    CHECK_THROWS_AS(tessellate(vm, 4), InvalidArgument);
}

TEST_CASE("point_inclusion_ray: cube basics") {
    VModel cube({VCell(make_box({0, 0, 0}, {1, 1, 1}), 0)});
    const TriBoundary tb = tessellate(cube, 2);
    CHECK(point_inclusion_ray(tb, Vec3(0.5, 0.5, 0.5)));
    CHECK_FALSE(point_inclusion_ray(tb, Vec3(1.0 + 1e-6, 0.5, 0.5)));
    CHECK_FALSE(point_inclusion_ray(tb, Vec3(2, 2, 2)));
    // near-corner and near-edge probes exercise the re-cast path
    CHECK(point_inclusion_ray(tb, Vec3(1e-9, 1e-9, 1e-9)));
    CHECK(point_inclusion_ray(tb, Vec3(0.5, 1e-9, 1e-9)));
}

TEST_CASE("engines agree on the cube") {
    auto vm = std::make_shared<VModel>(
        std::vector<VCell>{VCell(make_box({0, 0, 0}, {1, 1, 1}), 0)});
    auto tb = std::make_shared<TriBoundary>(tessellate(*vm, 2));
    auto inv = MembershipOracle::inverse_engine(vm).worker();
    auto ray = MembershipOracle::ray_engine(tb).worker();
    for (int i = 0; i < 1000; ++i) {
        const Vec3 x(urand(-0.3, 1.3), urand(-0.3, 1.3), urand(-0.3, 1.3));
        CHECK(inv(x) == ray(x));
    }
}

TEST_CASE("engines agree on the cylinder away from the boundary band") {
    const Real R = 1.0, H = 1.0;
    auto vm = std::make_shared<VModel>(make_cylinder(R, H));
    auto tb = std::make_shared<TriBoundary>(tessellate(*vm, 16));
    auto inv = MembershipOracle::inverse_engine(vm).worker();
    auto ray = MembershipOracle::ray_engine(tb).worker();

    // chord sagitta of the tessellated quarter arcs (2 spans, res-1 segments)
    const Real chord_angle = (M_PI / 4) / 15.0;
    const Real sagitta = R * (1.0 - std::cos(0.5 * chord_angle));
    const Real band = sagitta + 5e-6 * R + vm->tol_geom();

    int disagreements = 0, outside_band = 0;
    const int N = 10000;
    for (int i = 0; i < N; ++i) {
        const Vec3 x(urand(-R, R), urand(-R, R), urand(0, H));
        const bool a = inv(x), b = ray(x);
        if (a != b) {
            ++disagreements;
            const Real r = std::hypot(x.x(), x.y());
            const Real dist = std::min({std::abs(R - r), std::abs(x.z()), std::abs(H - x.z())});
            if (dist > band) ++outside_band;
        }
    }
    CHECK(outside_band == 0);
    CHECK(Real(disagreements) / N < 1e-3);
}

TEST_CASE("stl export") {
    VModel cube({VCell(make_box({0, 0, 0}, {1, 1, 1}), 0)});
    const TriBoundary tb = tessellate(cube, 2);
    const std::string path = "/tmp/vfcm_test_cube.stl";
    export_stl(tb, path);
    std::FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    char header[80];
    REQUIRE(std::fread(header, 1, 80, f) == 80);
    std::uint32_t n = 0;
    REQUIRE(std::fread(&n, 4, 1, f) == 1);
    CHECK(n == 12);
    std::fseek(f, 0, SEEK_END);
    CHECK(std::ftell(f) == 84 + 50 * 12);
    std::fclose(f);
    std::remove(path.c_str());
}
