#include <vfcm/spline.hpp>

#include <algorithm>
#include <cmath>

namespace vfcm {

namespace {

// Pascal-triangle binomials, enough for degree elevation bookkeeping.
Real binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    Real r = 1.0;
    for (int i = 0; i < k; ++i) r = r * Real(n - i) / Real(i + 1);
    return r;
}

// --------------------------------------------------------------- 1D cores
// The 1D algorithms operate on a control matrix with one point per column.

struct Curve1d {
    KnotVector kv;
    MatrixXd pts;  // point_dim x n
};

Curve1d insert_knot_1d(const Curve1d& c, Real t, int times) {
    const int p = c.kv.degree();
    if (!c.kv.in_range(t))
        throw DomainError("knot_insert: value outside knot range");
    Curve1d cur = c;
    for (int rep = 0; rep < times; ++rep) {
        const auto& U = cur.kv.values();
        const int s = cur.kv.multiplicity(t);
        if (s >= p + 1)
            throw InvalidArgument("knot_insert: multiplicity would exceed degree+1");
        const int k = cur.kv.find_span(t);
        const int n = cur.kv.num_basis();
        MatrixXd Q(cur.pts.rows(), n + 1);
        for (int i = 0; i <= k - p; ++i) Q.col(i) = cur.pts.col(i);
        for (int i = k - p + 1; i <= k - s; ++i) {
            const Real denom = U[i + p] - U[i];
            const Real a = (denom > 0) ? (t - U[i]) / denom : 0.0;
            Q.col(i) = a * cur.pts.col(i) + (1.0 - a) * cur.pts.col(i - 1);
        }
        for (int i = k - s + 1; i <= n; ++i) Q.col(i) = cur.pts.col(i - 1);
        std::vector<Real> V = U;
        V.insert(V.begin() + (k + 1), t);
        cur = Curve1d{KnotVector(p, std::move(V)), std::move(Q)};
    }
    return cur;
}

// Degree elevation by `t` (Piegl & Tiller A5.9). Exact: the evaluated curve
// is unchanged and interior continuity is preserved.
Curve1d elevate_1d(const Curve1d& c, int t) {
    if (t <= 0) return c;
    const int p = c.kv.degree();
    const auto& U = c.kv.values();
    const int n = c.kv.num_basis() - 1;
    const int m = n + p + 1;
    const int ph = p + t;
    const int ph2 = ph / 2;
    const int rows = static_cast<int>(c.pts.rows());

    // Bezier elevation coefficients
    MatrixXd bezalfs = MatrixXd::Zero(ph + 1, p + 1);
    bezalfs(0, 0) = bezalfs(ph, p) = 1.0;
    for (int i = 1; i <= ph2; ++i) {
        const Real inv = 1.0 / binomial(ph, i);
        const int mpi = std::min(p, i);
        for (int j = std::max(0, i - t); j <= mpi; ++j)
            bezalfs(i, j) = inv * binomial(p, j) * binomial(t, i - j);
    }
    for (int i = ph2 + 1; i <= ph - 1; ++i) {
        const int mpi = std::min(p, i);
        for (int j = std::max(0, i - t); j <= mpi; ++j)
            bezalfs(i, j) = bezalfs(ph - i, p - j);
    }

    const int max_new = (n + 1) * (t + 1) + ph + 1;
    MatrixXd Q(rows, max_new);
    std::vector<Real> Uh(max_new + ph + 2, 0.0);

    int mh = ph, kind = ph + 1, r = -1, a = p, b = p + 1, cind = 1;
    Real ua = U[0];
    Q.col(0) = c.pts.col(0);
    for (int i = 0; i <= ph; ++i) Uh[i] = ua;

    MatrixXd bpts(rows, p + 1), ebpts(rows, ph + 1), nextbpts(rows, p - 1 > 0 ? p - 1 : 1);
    std::vector<Real> alfs(p > 0 ? p : 1);
    for (int i = 0; i <= p; ++i) bpts.col(i) = c.pts.col(i);

    while (b < m) {
        const int i0 = b;
        while (b < m && U[b] == U[b + 1]) ++b;
        const int mul = b - i0 + 1;
        mh += mul + t;
        const Real ub = U[b];
        const int oldr = r;
        r = p - mul;
        const int lbz = (oldr > 0) ? (oldr + 2) / 2 : 1;
        const int rbz = (r > 0) ? ph - (r + 1) / 2 : ph;
        if (r > 0) {
            // insert u = ub to turn the segment into Bezier form
            const Real numer = ub - ua;
            for (int k = p; k > mul; --k) alfs[k - mul - 1] = numer / (U[a + k] - ua);
            for (int j = 1; j <= r; ++j) {
                const int save = r - j;
                const int s = mul + j;
                for (int k = p; k >= s; --k)
                    bpts.col(k) = alfs[k - s] * bpts.col(k) + (1.0 - alfs[k - s]) * bpts.col(k - 1);
                nextbpts.col(save) = bpts.col(p);
            }
        }
        // elevate the Bezier segment
        for (int i = lbz; i <= ph; ++i) {
            ebpts.col(i).setZero();
            const int mpi = std::min(p, i);
            for (int j = std::max(0, i - t); j <= mpi; ++j)
                ebpts.col(i) += bezalfs(i, j) * bpts.col(j);
        }
        if (oldr > 1) {
            // remove the knot ua oldr-1 times
            int first = kind - 2, last = kind;
            const Real den = ub - ua;
            const Real bet = (ub - Uh[kind - 1]) / den;
            for (int tr = 1; tr < oldr; ++tr) {
                int i = first, j = last, kj = j - kind + 1;
                while (j - i > tr) {
                    if (i < cind) {
                        const Real alf = (ub - Uh[i]) / (ua - Uh[i]);
                        Q.col(i) = alf * Q.col(i) + (1.0 - alf) * Q.col(i - 1);
                    }
                    if (j >= lbz) {
                        if (j - tr <= kind - ph + oldr) {
                            const Real gam = (ub - Uh[j - tr]) / den;
                            ebpts.col(kj) = gam * ebpts.col(kj) + (1.0 - gam) * ebpts.col(kj + 1);
                        } else {
                            ebpts.col(kj) = bet * ebpts.col(kj) + (1.0 - bet) * ebpts.col(kj + 1);
                        }
                    }
                    ++i; --j; --kj;
                }
                --first; ++last;
            }
        }
        if (a != p) {
            for (int i = 0; i < ph - oldr; ++i) { Uh[kind] = ua; ++kind; }
        }
        for (int j = lbz; j <= rbz; ++j) { Q.col(cind) = ebpts.col(j); ++cind; }
        if (b < m) {
            for (int j = 0; j < r; ++j) bpts.col(j) = nextbpts.col(j);
            for (int j = r; j <= p; ++j) bpts.col(j) = c.pts.col(b - p + j);
            a = b; ++b; ua = ub;
        } else {
            for (int i = 0; i <= ph; ++i) Uh[kind + i] = ub;
        }
    }
    const int nh = mh - ph;  // number of control points
    Uh.resize(nh + ph + 1);
    MatrixXd pts = Q.leftCols(nh);
    return Curve1d{KnotVector(ph, std::move(Uh)), std::move(pts)};
}

// Apply a 1D transform to every control line along direction `dir`.
template <int Dim, typename F>
TensorSpline<Dim> apply_along(const TensorSpline<Dim>& sp, int dir, F&& op) {
    if (dir < 0 || dir >= Dim) throw InvalidArgument("spline: bad direction");
    const int nd = sp.dims[dir];
    long stride = 1;
    for (int d = 0; d < dir; ++d) stride *= sp.dims[d];
    const long total = sp.num_points();
    const long nlines = total / nd;

    // Enumerate base offsets of lines along dir.
    std::vector<long> bases;
    bases.reserve(nlines);
    std::array<int, Dim> idx{};
    for (long pt = 0; pt < total; ++pt) {
        if (idx[dir] == 0) {
            long lin = 0, s = 1;
            for (int d = 0; d < Dim; ++d) { lin += s * idx[d]; s *= sp.dims[d]; }
            bases.push_back(lin);
        }
        for (int d = 0; d < Dim; ++d) {
            if (++idx[d] < sp.dims[d]) break;
            idx[d] = 0;
        }
    }

    // Transform the first line to learn the output size.
    Curve1d first{sp.knots[dir], MatrixXd(sp.ctrl.rows(), nd)};
    for (int i = 0; i < nd; ++i) first.pts.col(i) = sp.ctrl.col(bases[0] + i * stride);
    Curve1d out0 = op(first);
    const int nd_new = out0.kv.num_basis();

    TensorSpline<Dim> out;
    out.knots = sp.knots;
    out.knots[dir] = out0.kv;
    out.dims = sp.dims;
    out.dims[dir] = nd_new;
    out.channel_names = sp.channel_names;
    long total_new = 1;
    for (int d = 0; d < Dim; ++d) total_new *= out.dims[d];
    out.ctrl.resize(sp.ctrl.rows(), total_new);

    // New base offsets follow the same enumeration order (only dims[dir]
    // changed, and lines are enumerated with idx[dir] == 0).
    const long stride_new = stride;
    std::vector<long> bases_new;
    bases_new.reserve(nlines);
    std::array<int, Dim> jdx{};
    for (long pt = 0, tot = total_new; pt < tot; ++pt) {
        if (jdx[dir] == 0) {
            long lin = 0, s = 1;
            for (int d = 0; d < Dim; ++d) { lin += s * jdx[d]; s *= out.dims[d]; }
            bases_new.push_back(lin);
        }
        for (int d = 0; d < Dim; ++d) {
            if (++jdx[d] < out.dims[d]) break;
            jdx[d] = 0;
        }
    }

    for (long li = 0; li < nlines; ++li) {
        Curve1d line{sp.knots[dir], MatrixXd(sp.ctrl.rows(), nd)};
        for (int i = 0; i < nd; ++i) line.pts.col(i) = sp.ctrl.col(bases[li] + i * stride);
        Curve1d res = (li == 0) ? out0 : op(line);
        for (int i = 0; i < nd_new; ++i)
            out.ctrl.col(bases_new[li] + i * stride_new) = res.pts.col(i);
    }
    return out;
}

}  // namespace

template <int Dim>
void TensorSpline<Dim>::validate() const {
    long total = 1;
    for (int d = 0; d < Dim; ++d) {
        if (knots[d].num_basis() != dims[d])
            throw InvalidArgument("spline: grid dims do not match knot vectors");
        total *= dims[d];
    }
    if (ctrl.cols() != total || ctrl.rows() < 3)
        throw InvalidArgument("spline: control grid size mismatch");
    if (static_cast<int>(channel_names.size()) != channels())
        throw InvalidArgument("spline: channel name count mismatch");
}

template <int Dim>
VectorXd eval(const TensorSpline<Dim>& sp, const ParamPoint<Dim>& t) {
    std::array<int, Dim> span{};
    std::array<std::array<Real, 32>, Dim> basis{};
    for (int d = 0; d < Dim; ++d) sp.knots[d].basis(t[d], span[d], basis[d].data());

    VectorXd out = VectorXd::Zero(sp.ctrl.rows());
    std::array<int, Dim> idx{};
    while (true) {
        Real w = 1.0;
        std::array<int, Dim> g{};
        for (int d = 0; d < Dim; ++d) {
            w *= basis[d][idx[d]];
            g[d] = span[d] - sp.knots[d].degree() + idx[d];
        }
        out += w * sp.ctrl.col(sp.index(g));
        int d = 0;
        for (; d < Dim; ++d) {
            if (++idx[d] <= sp.knots[d].degree()) break;
            idx[d] = 0;
        }
        if (d == Dim) break;
    }
    return out;
}

template <int Dim>
Vec3 eval_geom(const TensorSpline<Dim>& sp, const ParamPoint<Dim>& t) {
    return eval(sp, t).template head<3>();
}

template <int Dim>
void eval_with_partials(const TensorSpline<Dim>& sp, const ParamPoint<Dim>& t,
                        VectorXd& value, MatrixXd& dvalue) {
    std::array<int, Dim> span{};
    std::array<MatrixXd, Dim> ders;
    for (int d = 0; d < Dim; ++d) sp.knots[d].basis_derivs(t[d], 1, span[d], ders[d]);

    value = VectorXd::Zero(sp.ctrl.rows());
    dvalue = MatrixXd::Zero(sp.ctrl.rows(), Dim);
    std::array<int, Dim> idx{};
    while (true) {
        Real w = 1.0;
        std::array<int, Dim> g{};
        for (int d = 0; d < Dim; ++d) {
            w *= ders[d](0, idx[d]);
            g[d] = span[d] - sp.knots[d].degree() + idx[d];
        }
        const auto col = sp.ctrl.col(sp.index(g));
        value += w * col;
        for (int dd = 0; dd < Dim; ++dd) {
            Real wd = 1.0;
            for (int d = 0; d < Dim; ++d) wd *= ders[d](d == dd ? 1 : 0, idx[d]);
            dvalue.col(dd) += wd * col;
        }
        int d = 0;
        for (; d < Dim; ++d) {
            if (++idx[d] <= sp.knots[d].degree()) break;
            idx[d] = 0;
        }
        if (d == Dim) break;
    }
}

Mat3 jacobian(const TrivariateSpline& sp, const Vec3& t) {
    VectorXd v;
    MatrixXd dv;
    eval_with_partials(sp, t, v, dv);
    return dv.topRows(3);
}

template <int Dim>
TensorSpline<Dim> knot_insert(const TensorSpline<Dim>& sp, int dir, Real t,
                              int multiplicity) {
    if (multiplicity < 1) throw InvalidArgument("knot_insert: multiplicity < 1");
    return apply_along(sp, dir, [&](const Curve1d& c) { return insert_knot_1d(c, t, multiplicity); });
}

template <int Dim>
TensorSpline<Dim> degree_elevate(const TensorSpline<Dim>& sp, int dir,
                                 int target_degree) {
    const int p = sp.knots[dir].degree();
    if (target_degree < p)
        throw InvalidArgument("degree_elevate: target below current degree");
    if (target_degree == p) return sp;
    return apply_along(sp, dir, [&](const Curve1d& c) { return elevate_1d(c, target_degree - p); });
}

std::array<SurfaceSpline, 6> boundary_faces(const TrivariateSpline& sp) {
    std::array<SurfaceSpline, 6> faces;
    for (int dir = 0; dir < 3; ++dir) {
        const int da = (dir == 0) ? 1 : 0;
        const int db = (dir == 2) ? 1 : 2;
        for (int side = 0; side < 2; ++side) {
            SurfaceSpline f;
            f.knots = {sp.knots[da], sp.knots[db]};
            f.dims = {sp.dims[da], sp.dims[db]};
            f.channel_names = sp.channel_names;
            f.ctrl.resize(sp.ctrl.rows(), long(sp.dims[da]) * sp.dims[db]);
            std::array<int, 3> g{};
            g[dir] = side == 0 ? 0 : sp.dims[dir] - 1;
            for (int jb = 0; jb < sp.dims[db]; ++jb)
                for (int ja = 0; ja < sp.dims[da]; ++ja) {
                    g[da] = ja;
                    g[db] = jb;
                    f.ctrl.col(long(jb) * sp.dims[da] + ja) = sp.ctrl.col(sp.index(g));
                }
            faces[2 * dir + side] = std::move(f);
        }
    }
    return faces;
}

template <int Dim>
Box3 ctrl_bbox(const TensorSpline<Dim>& sp) {
    Box3 b;
    for (long i = 0; i < sp.ctrl.cols(); ++i) b.expand(sp.ctrl.col(i).template head<3>());
    return b;
}

bool is_regular(const TrivariateSpline& sp, int samples_per_span, Real min_det_rel) {
    const Real scale = ctrl_bbox(sp).diagonal();
    Real span_prod = 1.0;
    for (int d = 0; d < 3; ++d) span_prod *= sp.knots[d].span_length();
    const Real det_floor = min_det_rel * std::pow(scale, 3) / span_prod;

    std::array<std::vector<Real>, 3> samples;
    for (int d = 0; d < 3; ++d) {
        auto bps = sp.knots[d].breakpoints();
        for (std::size_t s = 0; s + 1 < bps.size(); ++s)
            for (int i = 0; i <= samples_per_span; ++i)
                samples[d].push_back(bps[s] + (bps[s + 1] - bps[s]) * Real(i) / samples_per_span);
    }
    int sign = 0;
    for (Real u : samples[0])
        for (Real v : samples[1])
            for (Real w : samples[2]) {
                const Real det = jacobian(sp, Vec3(u, v, w)).determinant();
                if (std::abs(det) < det_floor) return false;
                const int s = det > 0 ? 1 : -1;
                if (sign == 0) sign = s;
                else if (s != sign) return false;
            }
    return true;
}

InvertResult invert_point(const TrivariateSpline& sp, const Vec3& x,
                          const Vec3& guess, const InvertOptions& opts) {
    const Real tol = opts.tol_geom > 0 ? opts.tol_geom : 1e-10 * ctrl_bbox(sp).diagonal();
    Vec3 lo, hi, span;
    for (int d = 0; d < 3; ++d) {
        lo[d] = sp.knots[d].front();
        hi[d] = sp.knots[d].back();
        span[d] = hi[d] - lo[d];
    }
    auto clamp_box = [&](Vec3 u) {
        for (int d = 0; d < 3; ++d) u[d] = std::clamp(u[d], lo[d], hi[d]);
        return u;
    };

    InvertResult res;
    Vec3 u = clamp_box(guess);
    Vec3 r = eval_geom(sp, u) - x;
    Real rn = r.norm();
    int growth = 0, perturbations = 0;

    for (int it = 0; it < opts.max_iter; ++it) {
        res.iterations = it;
        if (rn <= tol) {
            res.found = true;
            res.param = u;
            return res;
        }
        const Mat3 J = jacobian(sp, u);
        Eigen::PartialPivLU<Mat3> lu(J);
        Vec3 d = lu.solve(-r);
        if (!d.allFinite() || std::abs(lu.determinant()) < 1e-300) {
            // degenerate Jacobian: nudge the iterate and retry
            if (++perturbations > 3) return res;
            u = clamp_box(u + 1e-6 * span);
            r = eval_geom(sp, u) - x;
            rn = r.norm();
            continue;
        }
        // damped step, clamped to the knot box
        Real lambda = 1.0;
        Vec3 u_new;
        Real rn_new = rn;
        bool improved = false;
        for (int h = 0; h <= 10; ++h) {
            u_new = clamp_box(u + lambda * d);
            const Real cand = (eval_geom(sp, u_new) - x).norm();
            if (cand < rn) {
                rn_new = cand;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) {
            // stuck on the box boundary pointing outward, or a local minimum
            return res;
        }
        growth = (rn_new >= rn) ? growth + 1 : 0;
        if (growth >= 3) return res;
        u = u_new;
        rn = rn_new;
        r = eval_geom(sp, u) - x;
    }
    res.iterations = opts.max_iter;
    if (rn <= tol) {
        res.found = true;
        res.param = u;
    }
    return res;
}

namespace {

KnotVector averaged_knots(const std::vector<Real>& sites, int degree) {
    const int n = static_cast<int>(sites.size());
    std::vector<Real> U;
    U.reserve(n + degree + 1);
    for (int i = 0; i <= degree; ++i) U.push_back(sites.front());
    for (int j = 1; j <= n - degree - 1; ++j) {
        Real s = 0.0;
        for (int i = j; i < j + degree; ++i) s += sites[i];
        U.push_back(s / degree);
    }
    for (int i = 0; i <= degree; ++i) U.push_back(sites.back());
    return KnotVector(degree, std::move(U));
}

// Collocation solve: coefficients such that the spline matches `values`
// (one sample per column) at the sites.
MatrixXd collocate(const KnotVector& kv, const std::vector<Real>& sites,
                   const MatrixXd& values) {
    const int n = static_cast<int>(sites.size());
    MatrixXd A = MatrixXd::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        int span;
        Real N[32];
        kv.basis(sites[r], span, N);
        for (int k = 0; k <= kv.degree(); ++k) A(r, span - kv.degree() + k) = N[k];
    }
    Eigen::PartialPivLU<MatrixXd> lu(A);
    return lu.solve(values.transpose()).transpose();
}

}  // namespace

CurveSpline interpolate_curve(const std::vector<Real>& sites, const MatrixXd& values,
                              int degree) {
    const int n = static_cast<int>(sites.size());
    if (values.cols() != n) throw InvalidArgument("interpolate_curve: size mismatch");
    if (degree >= n) throw InvalidArgument("interpolate_curve: degree too high");
    CurveSpline c;
    c.knots[0] = averaged_knots(sites, degree);
    c.dims[0] = n;
    c.ctrl = collocate(c.knots[0], sites, values);
    return c;
}

SurfaceSpline interpolate_surface(const std::vector<Real>& su,
                                  const std::vector<Real>& sv, const MatrixXd& values,
                                  int degree_u, int degree_v) {
    const int nu = static_cast<int>(su.size());
    const int nv = static_cast<int>(sv.size());
    if (values.cols() != long(nu) * nv)
        throw InvalidArgument("interpolate_surface: size mismatch");
    SurfaceSpline s;
    s.knots = {averaged_knots(su, degree_u), averaged_knots(sv, degree_v)};
    s.dims = {nu, nv};
    // direction u first, then v
    MatrixXd tmp(values.rows(), long(nu) * nv);
    for (int j = 0; j < nv; ++j) {
        MatrixXd row(values.rows(), nu);
        for (int i = 0; i < nu; ++i) row.col(i) = values.col(long(j) * nu + i);
        const MatrixXd c = collocate(s.knots[0], su, row);
        for (int i = 0; i < nu; ++i) tmp.col(long(j) * nu + i) = c.col(i);
    }
    s.ctrl.resize(values.rows(), long(nu) * nv);
    for (int i = 0; i < nu; ++i) {
        MatrixXd col(values.rows(), nv);
        for (int j = 0; j < nv; ++j) col.col(j) = tmp.col(long(j) * nu + i);
        const MatrixXd c = collocate(s.knots[1], sv, col);
        for (int j = 0; j < nv; ++j) s.ctrl.col(long(j) * nu + i) = c.col(j);
    }
    return s;
}

TrivariateSpline make_box(const Vec3& lo, const Vec3& hi) {
    TrivariateSpline sp;
    for (int d = 0; d < 3; ++d) {
        sp.knots[d] = KnotVector(1, {0.0, 0.0, 1.0, 1.0});
        sp.dims[d] = 2;
    }
    sp.ctrl.resize(3, 8);
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i)
                sp.ctrl.col(4 * k + 2 * j + i) = Vec3(i ? hi.x() : lo.x(),
                                                      j ? hi.y() : lo.y(),
                                                      k ? hi.z() : lo.z());
    return sp;
}

SurfaceSpline make_bilinear_patch(const Vec3& p00, const Vec3& p10,
                                  const Vec3& p01, const Vec3& p11) {
    SurfaceSpline f;
    f.knots = {KnotVector(1, {0, 0, 1, 1}), KnotVector(1, {0, 0, 1, 1})};
    f.dims = {2, 2};
    f.ctrl.resize(3, 4);
    f.ctrl.col(0) = p00;
    f.ctrl.col(1) = p10;
    f.ctrl.col(2) = p01;
    f.ctrl.col(3) = p11;
    return f;
}

// explicit instantiations
template struct TensorSpline<1>;
template struct TensorSpline<2>;
template struct TensorSpline<3>;

template VectorXd eval<1>(const TensorSpline<1>&, const ParamPoint<1>&);
template VectorXd eval<2>(const TensorSpline<2>&, const ParamPoint<2>&);
template VectorXd eval<3>(const TensorSpline<3>&, const ParamPoint<3>&);
template Vec3 eval_geom<1>(const TensorSpline<1>&, const ParamPoint<1>&);
template Vec3 eval_geom<2>(const TensorSpline<2>&, const ParamPoint<2>&);
template Vec3 eval_geom<3>(const TensorSpline<3>&, const ParamPoint<3>&);
template void eval_with_partials<1>(const TensorSpline<1>&, const ParamPoint<1>&, VectorXd&, MatrixXd&);
template void eval_with_partials<2>(const TensorSpline<2>&, const ParamPoint<2>&, VectorXd&, MatrixXd&);
template void eval_with_partials<3>(const TensorSpline<3>&, const ParamPoint<3>&, VectorXd&, MatrixXd&);
template TensorSpline<1> knot_insert<1>(const TensorSpline<1>&, int, Real, int);
template TensorSpline<2> knot_insert<2>(const TensorSpline<2>&, int, Real, int);
template TensorSpline<3> knot_insert<3>(const TensorSpline<3>&, int, Real, int);
template TensorSpline<1> degree_elevate<1>(const TensorSpline<1>&, int, int);
template TensorSpline<2> degree_elevate<2>(const TensorSpline<2>&, int, int);
template TensorSpline<3> degree_elevate<3>(const TensorSpline<3>&, int, int);
template Box3 ctrl_bbox<1>(const TensorSpline<1>&);
template Box3 ctrl_bbox<2>(const TensorSpline<2>&);
template Box3 ctrl_bbox<3>(const TensorSpline<3>&);

}  // namespace vfcm
