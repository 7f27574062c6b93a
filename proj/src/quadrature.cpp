#include <vfcm/quadrature.hpp>

#include <cmath>
#include <map>
#include <mutex>

namespace vfcm {

namespace {

GaussRule1d compute_gauss(int n) {
    GaussRule1d r;
    r.points.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton on P_n starting from the Chebyshev-like estimate
        Real x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        Real pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const Real dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.points[i] = -x;
        r.points[n - 1 - i] = x;
        const Real w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n == 1) {
        r.points[0] = 0.0;
        r.weights[0] = 2.0;
    }
    return r;
}

std::map<int, GaussRule1d> g_rules;
std::mutex g_rules_mutex;

bool box_is_mixed(const Box3& box, const MembershipFn& inside) {
    // 3^3 lattice including the corners
    bool first = true, ref = false;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) {
                const Vec3 x = box.lo + 0.5 * Vec3(i, j, k).cwiseProduct(box.extent());
                const bool in = inside(x);
                if (first) {
                    ref = in;
                    first = false;
                } else if (in != ref) {
                    return true;
                }
            }
    return false;
}

void subdivide(const Box3& box, const MembershipFn& inside, int depth,
               std::vector<Box3>& leaves) {
    if (depth == 0 || !box_is_mixed(box, inside)) {
        leaves.push_back(box);
        return;
    }
    const Vec3 mid = box.center();
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i) {
                Box3 child;
                child.lo = Vec3(i ? mid.x() : box.lo.x(), j ? mid.y() : box.lo.y(),
                                k ? mid.z() : box.lo.z());
                child.hi = Vec3(i ? box.hi.x() : mid.x(), j ? box.hi.y() : mid.y(),
                                k ? box.hi.z() : mid.z());
                subdivide(child, inside, depth - 1, leaves);
            }
}

}  // namespace

const GaussRule1d& gauss_rule(int n) {
    if (n < 1) throw InvalidArgument("gauss_rule: need at least one point");
    std::lock_guard<std::mutex> lock(g_rules_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, compute_gauss(n)).first;
    return it->second;
}

QuadratureOctree build_octree(const Box3& cell, const MembershipFn& inside, int depth) {
    if (depth < 0) throw InvalidArgument("build_octree: negative depth");
    QuadratureOctree tree;
    tree.depth = depth;
    subdivide(cell, inside, depth, tree.leaves);
    return tree;
}

void for_each_gauss_point(const Box3& box, int n,
                          const std::function<void(const Vec3&, Real)>& fn) {
    const GaussRule1d& r = gauss_rule(n);
    const Vec3 h = 0.5 * box.extent();
    const Vec3 c = box.center();
    const Real jac = h.prod();
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const Vec3 x = c + h.cwiseProduct(Vec3(r.points[i], r.points[j], r.points[k]));
                fn(x, r.weights[i] * r.weights[j] * r.weights[k] * jac);
            }
}

}  // namespace vfcm
