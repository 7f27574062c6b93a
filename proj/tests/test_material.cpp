#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vfcm/material_field.hpp>
#include <vfcm/tensor_table.hpp>

#include <cmath>
#include <random>

using namespace vfcm;

namespace {

std::mt19937_64 rng(1234);
Real urand(Real lo, Real hi) { return std::uniform_real_distribution<Real>(lo, hi)(rng); }

// the graded cuboid: unit cross-section, length 3, cubic in z with the
// knot layout used throughout the examples
TrivariateSpline graded_cuboid() {
    TrivariateSpline sp = make_box({0, 0, 0}, {1, 1, 3});
    sp = degree_elevate(sp, 2, 3);
    for (Real t : {0.2, 0.4, 0.6, 0.8}) sp = knot_insert(sp, 2, t);
    return sp;
}

ElasticityTensor tile1() {
    ElasticityTensor t;
    t.unit = "MPa";
    t.C << 7895.81, 432.89, 432.89, 0, 0, 0,
           432.89, 7895.81, 432.89, 0, 0, 0,
           432.89, 432.89, 7895.81, 0, 0, 0,
           0, 0, 0, 200.71, 0, 0,
           0, 0, 0, 0, 200.71, 0,
           0, 0, 0, 0, 0, 200.71;
    return t;
}

ElasticityTensor tile2() {
    ElasticityTensor t;
    t.unit = "MPa";
    t.C << 18246.81, 1026.56, 1026.56, 0, 0, 0,
           1026.56, 11066.80, 659.81, 0, 0, 0,
           1026.56, 659.81, 11066.80, 0, 0, 0,
           0, 0, 0, 769.49, 0, 0,
           0, 0, 0, 0, 590.69, 0,
           0, 0, 0, 0, 0, 769.49;
    return t;
}

ElasticityTensor tile3() {
    ElasticityTensor t;
    t.unit = "MPa";
    t.C << 33809.00, 2037.73, 2037.73, 0, 0, 0,
           2037.73, 14770.28, 997.14, 0, 0, 0,
           2037.73, 997.14, 14771.08, 0, 0, 0,
           0, 0, 0, 2022.10, 0, 0,
           0, 0, 0, 0, 1375.86, 0,
           0, 0, 0, 0, 0, 2022.17;
    return t;
}

}  // namespace

TEST_CASE("fit_least_squares: constants are reproduced exactly") {
    const TrivariateSpline sp = graded_cuboid();
    const auto fit = fit_least_squares(sp, [](const Vec3&) { return 42.5; }, 20);
    for (long i = 0; i < fit.mu.size(); ++i) CHECK(fit.mu[i] == doctest::Approx(42.5).epsilon(1e-10));
    CHECK(fit.residual_max < 1e-9);
}

TEST_CASE("fit_least_squares: functions in the spline space are recovered") {
    TrivariateSpline sp = graded_cuboid();
    VectorXd mu_true(sp.num_points());
    for (long i = 0; i < mu_true.size(); ++i) mu_true[i] = urand(-2, 2);
    const TrivariateSpline withf = with_channel(sp, "m", mu_true);
    auto f = [&](const Vec3& x) {
        // invert z -> w (the map is affine: z = 3w), then evaluate the channel
        const VectorXd v = eval(withf, Vec3(x.x(), x.y(), x.z() / 3.0));
        return v[3];
    };
    const auto fit = fit_least_squares(sp, f, 25);
    CHECK((fit.mu - mu_true).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("fit_least_squares: graded-cuboid coefficients match the printed vector") {
    const TrivariateSpline sp = graded_cuboid();
    auto E_of = [](const Vec3& x) { return 1e5 + 5e4 * std::sin(M_PI * x.z()); };
    const auto fit = fit_least_squares(sp, E_of, 100);

    const Real expected_w[8] = {100000, 131438, 185772, 46415, 46415, 185772, 131438, 100000};
    REQUIRE(fit.mu.size() == 2 * 2 * 8);
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i) {
                const Real v = fit.mu[4 * k + 2 * j + i];
                CHECK(std::abs(v - expected_w[k]) < 0.5);
            }
}

TEST_CASE("fit_least_squares: residual on nested grids never grows") {
    const TrivariateSpline sp = graded_cuboid();
    auto f = [](const Vec3& x) { return std::exp(0.3 * x.z()) + 0.2 * x.x(); };  // outside the space
    const auto coarse = fit_least_squares(sp, f, 13);
    const auto fine = fit_least_squares(sp, f, 25);  // nested: contains the 13-grid

    // compare both fits on the finer grid
    const TrivariateSpline a = with_channel(sp, "m", coarse.mu);
    const TrivariateSpline b = with_channel(sp, "m", fine.mu);
    Real ra = 0, rb = 0;
    for (int k = 0; k < 25; ++k)
        for (int j = 0; j < 25; ++j)
            for (int i = 0; i < 25; ++i) {
                const Vec3 t(i / 24.0, j / 24.0, k / 24.0);
                const Vec3 x = eval_geom(sp, t);
                ra += std::pow(eval(a, t)[3] - f(x), 2);
                rb += std::pow(eval(b, t)[3] - f(x), 2);
            }
    CHECK(rb <= ra + 1e-12);
    CHECK_THROWS_AS(fit_least_squares(sp, f, 7), InvalidArgument);  // fewer than 8 w-basis
}

TEST_CASE("sample_material: constants, channels, joint retrieval") {
    MaterialMode constant;
    constant.kind = MaterialMode::Kind::Constant;
    constant.constant = {634.0, 0.17, 2.3e-3, 6.5e-7};
    const VCell cc(make_box({0, 0, 0}, {1, 1, 1}), 0, constant);
    MaterialField field({}, std::nullopt);
    CHECK(field.material_at(cc, Vec3(0.5, 0.5, 0.5)).E == 634.0);
    CHECK(field.sample(cc, Vec3(0.1, 0.2, 0.3)).at("kappa") == 2.3e-3);

    // channel-bound cell with E and nu channels
    TrivariateSpline sp = graded_cuboid();
    auto E_of = [](const Vec3& x) { return 1e5 + 5e4 * std::sin(M_PI * x.z()); };
    sp = with_channel(sp, "E", fit_least_squares(sp, E_of, 40).mu);
    sp = with_channel(sp, "nu", VectorXd::Constant(sp.num_points(), 0.3));
    const VCell cell(sp, 1);
    MaterialField bound({{"E", "E"}, {"nu", "nu"}}, std::nullopt);

    // independent basis-sum oracle for the E channel at w = 0.5
    const Vec3 p(0.5, 0.5, 0.5);
    int span;
    Real N[32];
    sp.knots[2].basis(0.5, span, N);
    Real expect = 0;
    for (int k = 0; k <= 3; ++k) {
        std::array<int, 3> g{0, 0, span - 3 + k};
        expect += N[k] * sp.ctrl(3, sp.index(g));
    }
    const auto props = bound.sample(cell, p);
    CHECK(props.at("E") == doctest::Approx(expect).epsilon(1e-12));
    CHECK(props.at("nu") == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(bound.material_at(cell, p).nu == doctest::Approx(0.3));

    MaterialField unbound({}, std::nullopt);
    CHECK_THROWS_AS(unbound.material_at(cell, p), InvalidArgument);
}

TEST_CASE("gibson_ashby: factors and the scaled silica modulus") {
    const auto unity = gibson_ashby(0.0);
    CHECK(unity.E_r == 1.0);
    CHECK(unity.kappa_r == 1.0);

    const auto porous = gibson_ashby(0.7);
    CHECK(porous.E_r == doctest::Approx(0.09).epsilon(1e-14));
    CHECK(porous.kappa_r == doctest::Approx(0.1643167672515498).epsilon(1e-9));

    // solid silica back-solved from the tabulated porous modulus
    const Real solid_E = 634.0 / 0.09;
    CHECK(porous.E_r * solid_E == doctest::Approx(634.0).epsilon(1e-12));
    CHECK(porous.E_r * 7044.4 == doctest::Approx(634.0).epsilon(1e-4));

    CHECK_THROWS_AS(gibson_ashby(-0.1), InvalidArgument);
    CHECK_THROWS_AS(gibson_ashby(1.0), InvalidArgument);
}

TEST_CASE("isotropic_to_voigt") {
    const ElasticityTensor simple = isotropic_to_voigt({1.0, 0.0, 0, 0});
    CHECK((simple.C.diagonal() - (Vec6() << 1, 1, 1, 0.5, 0.5, 0.5).finished()).norm() < 1e-14);
    CHECK(std::abs(simple.C(0, 1)) < 1e-15);

    const ElasticityTensor steel = isotropic_to_voigt({210.0, 0.3, 0, 0}, "GPa");
    CHECK(steel.C(0, 0) == doctest::Approx(282.6923076923).epsilon(1e-9));
    CHECK(steel.unit == "GPa");
    CHECK(classify_symmetry(steel, 1e-9) == SymmetryClass::Isotropic);
    // isotropy is inside the cubic class: relaxing C44 breaks it down to cubic
    ElasticityTensor cubic = steel;
    cubic.C(3, 3) = cubic.C(4, 4) = cubic.C(5, 5) = 50.0;
    CHECK(classify_symmetry(cubic, 1e-9) == SymmetryClass::Cubic);
}

TEST_CASE("bond_matrices: identity, 90-degree swap, inverse pair") {
    Mat6 M, N;
    bond_matrices(0.0, M, N);
    CHECK((M - Mat6::Identity()).norm() < 1e-14);
    CHECK((N - Mat6::Identity()).norm() < 1e-14);

    bond_matrices(90.0, M, N);
    Vec6 s;
    s << 3, 7, 1, 0, 0, 0;
    const Vec6 r = M * s;
    CHECK(r[0] == doctest::Approx(7.0));
    CHECK(r[1] == doctest::Approx(3.0));

    Mat6 Mm, Nm;
    bond_matrices(-33.0, Mm, Nm);
    bond_matrices(33.0, M, N);
    CHECK((M * Mm - Mat6::Identity()).norm() < 1e-12);
    CHECK((N * Nm - Mat6::Identity()).norm() < 1e-12);
}

TEST_CASE("rotate_tensor: tile-2 90-degree swaps and appendix statements") {
    const ElasticityTensor C2 = tile2();
    const ElasticityTensor R = rotate_tensor(C2, 90.0);
    CHECK(R.C(0, 0) == doctest::Approx(11066.80).epsilon(1e-9));
    CHECK(R.C(1, 1) == doctest::Approx(18246.81).epsilon(1e-9));
    CHECK(R.C(2, 2) == doctest::Approx(11066.80).epsilon(1e-9));  // C33 unchanged
    CHECK(R.C(4, 4) == doctest::Approx(769.49).epsilon(1e-9));    // C55 <- C66
    CHECK(R.C(5, 5) == doctest::Approx(590.69).epsilon(1e-9));    // C66 <- C55
    CHECK(R.C(0, 2) == doctest::Approx(659.81).epsilon(1e-9));    // C13 <- C23
    CHECK(R.C(1, 2) == doctest::Approx(1026.56).epsilon(1e-9));   // C23 <- C13

    // isotropic tensors are rotation invariant
    const ElasticityTensor iso = isotropic_to_voigt({100.0, 0.3, 0, 0});
    for (Real a : {13.0, 45.0, 71.5})
        CHECK((rotate_tensor(iso, a).C - iso.C).cwiseAbs().maxCoeff() < 1e-9 * iso.max_abs());

    // cubic tile rotated 45 deg: columns/rows 3, 5, 6 unchanged
    const ElasticityTensor C1 = tile1();
    const ElasticityTensor R1 = rotate_tensor(C1, 45.0);
    for (int idx : {2, 4, 5})
        for (int k = 0; k < 6; ++k) {
            CHECK(R1.C(idx, k) == doctest::Approx(C1.C(idx, k)).epsilon(1e-9));
            CHECK(R1.C(k, idx) == doctest::Approx(C1.C(k, idx)).epsilon(1e-9));
        }
    // C14 and C24 of equal magnitude, opposite sign (for all angles; at
    // 22.5 deg the coupling is extremal, at 45 deg it crosses zero)
    for (Real a : {10.0, 22.5, 30.0, 60.0}) {
        const ElasticityTensor Ra = rotate_tensor(C1, a);
        CHECK(Ra.C(0, 3) == doctest::Approx(-Ra.C(1, 3)).epsilon(1e-9));
    }
    CHECK(std::abs(rotate_tensor(C1, 22.5).C(0, 3)) > 1.0);
}

TEST_CASE("rotate_tensor: group property, full turn, strain energy invariance") {
    const ElasticityTensor C = tile3();
    const ElasticityTensor a = rotate_tensor(rotate_tensor(C, 25.0), 17.0);
    const ElasticityTensor b = rotate_tensor(C, 42.0);
    CHECK((a.C - b.C).cwiseAbs().maxCoeff() < 1e-9 * C.max_abs());
    CHECK((rotate_tensor(C, 360.0).C - C.C).cwiseAbs().maxCoeff() < 1e-9 * C.max_abs());

    Mat6 M, N;
    bond_matrices(33.0, M, N);
    const ElasticityTensor Cr = rotate_tensor(C, 33.0);
    for (int i = 0; i < 20; ++i) {
        Vec6 eps;
        for (int k = 0; k < 6; ++k) eps[k] = urand(-1, 1);
        const Vec6 eps_r = N * eps;
        const Real e0 = eps.dot(C.C * eps);
        const Real e1 = eps_r.dot(Cr.C * eps_r);
        CHECK(std::abs(e0 - e1) < 1e-9 * std::abs(e0));
    }
}

TEST_CASE("classify_symmetry on the printed tile tensors") {
    CHECK(classify_symmetry(tile1(), 1e-4) == SymmetryClass::Cubic);
    CHECK(classify_symmetry(tile2(), 1e-4) == SymmetryClass::Tetragonal);
    CHECK(classify_symmetry(tile3(), 1e-4) == SymmetryClass::Tetragonal);

    // perturbation well beyond tol degrades the class
    ElasticityTensor p = tile1();
    p.C(1, 1) *= 1.0 + 10 * 1e-4;
    p.C = 0.5 * (p.C + p.C.transpose());
    const auto cls = classify_symmetry(p, 1e-4);
    CHECK((cls == SymmetryClass::Tetragonal || cls == SymmetryClass::Orthotropic ||
           cls == SymmetryClass::None));
    CHECK(classify_symmetry(p, 1e-4) != SymmetryClass::Cubic);

    // class of a rotated cubic tensor is stable under further 90-deg turns
    const ElasticityTensor r45 = rotate_tensor(tile1(), 45.0);
    const auto c45 = classify_symmetry(r45, 1e-4);
    for (Real a : {90.0, 180.0, 270.0})
        CHECK(classify_symmetry(rotate_tensor(r45, a), 1e-4) == c45);
}

TEST_CASE("tensor table: build, node reproduction, analytic angle axis") {
    const std::vector<std::pair<Real, ElasticityTensor>> samples = {
        {0.2, tile1()}, {0.3, tile2()}, {0.4, tile3()}};
    const EffectiveTensorTable table = EffectiveTensorTable::build(samples);

    CHECK(table.diameters() == std::vector<Real>{0.2, 0.3, 0.4});
    CHECK(table.angles().size() == 13);
    CHECK(table.angles()[3] == doctest::Approx(22.5));

    // the stored 0-degree cell reproduces the tile-1 printed value
    CHECK(table.at(0, 0).C(0, 0) == doctest::Approx(7895.81).epsilon(1e-12));

    // node queries reproduce stored tensors
    for (int i : {0, 1, 2})
        for (int j : {0, 6, 12}) {
            const ElasticityTensor q = table.query(table.diameters()[i], table.angles()[j]);
            CHECK((q.C - table.at(i, j).C).cwiseAbs().maxCoeff() < 1e-8 * table.at(i, j).max_abs());
        }

    // angle dimension is analytic: interpolation at a node diameter matches
    // direct rotation to 1e-9
    const ElasticityTensor direct = rotate_tensor(tile2(), 22.5);
    const ElasticityTensor interp = table.query(0.3, 22.5);
    CHECK((interp.C - direct.C).cwiseAbs().maxCoeff() < 1e-9 * direct.max_abs());

    CHECK_THROWS_AS(table.query(0.15, 0.0), DomainError);
    CHECK_THROWS_AS(table.query(0.45, 0.0), DomainError);
    CHECK_THROWS_AS(EffectiveTensorTable::build({{0.2, tile1()}, {0.2, tile2()}}),
                    InvalidArgument);
}

TEST_CASE("tensor table: linear bracketing and positive definiteness sweep") {
    const std::vector<std::pair<Real, ElasticityTensor>> samples = {
        {0.2, tile1()}, {0.3, tile2()}, {0.4, tile3()}};
    const EffectiveTensorTable table = EffectiveTensorTable::build(samples);

    // componentwise bracketing for the linear mode at angle 0
    const ElasticityTensor q = table.query_linear(0.25, 0.0);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) {
            const Real lo = std::min(tile1().C(r, c), tile2().C(r, c));
            const Real hi = std::max(tile1().C(r, c), tile2().C(r, c));
            CHECK(q.C(r, c) >= lo - 1e-9);
            CHECK(q.C(r, c) <= hi + 1e-9);
        }

    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const Real d = 0.2 + 0.2 * i / 19.0;
            const Real a = 90.0 * j / 19.0;
            CAPTURE(d);
            CAPTURE(a);
            CHECK(table.query(d, a).is_positive_definite());
        }
}

TEST_CASE("tensor table: json round trip and unit guard") {
    const EffectiveTensorTable table =
        EffectiveTensorTable::build({{0.2, tile1()}, {0.4, tile3()}});
    const EffectiveTensorTable back =
        EffectiveTensorTable::from_json_string(table.to_json_string());
    CHECK(back.unit() == "MPa");
    CHECK((back.query(0.3, 45.0).C - table.query(0.3, 45.0).C).cwiseAbs().maxCoeff() < 1e-9);

    ElasticityTensor other = tile3();
    other.unit = "GPa";
    CHECK_THROWS_AS(EffectiveTensorTable::build({{0.2, tile1()}, {0.4, other}}),
                    InvalidArgument);
}

TEST_CASE("tensor text block round trip") {
    const std::string text = tensor_to_text(tile2());
    const ElasticityTensor back = tensor_from_text(text, "MPa");
    CHECK((back.C - tile2().C).cwiseAbs().maxCoeff() == 0.0);
}
