#include <vfcm/material_field.hpp>

#include <Eigen/QR>

namespace vfcm {

namespace {

constexpr const char* kDirNames[3] = {"u", "v", "w"};

// Endpoint-constrained least-squares operator mapping n samples to m
// coefficients: first/last coefficient take the end samples, the interior
// minimizes the residual (rank-revealing QR).
MatrixXd fit_operator(const KnotVector& kv, const std::vector<Real>& sites, int dir) {
    const int n = static_cast<int>(sites.size());
    const int m = kv.num_basis();
    MatrixXd A = MatrixXd::Zero(n, m);
    for (int r = 0; r < n; ++r) {
        int span;
        Real N[32];
        kv.basis(sites[r], span, N);
        for (int k = 0; k <= kv.degree(); ++k) A(r, span - kv.degree() + k) = N[k];
    }
    MatrixXd P = MatrixXd::Zero(m, n);
    P(0, 0) = 1.0;
    P(m - 1, n - 1) = 1.0;
    if (m > 2) {
        const MatrixXd Ai = A.middleCols(1, m - 2);
        Eigen::ColPivHouseholderQR<MatrixXd> qr(Ai);
        if (qr.rank() < m - 2)
            throw NumericalError(std::string("fit_least_squares: rank-deficient sample matrix in ") +
                                 kDirNames[dir] + "-direction");
        // rhs for unit samples: y - A_first y_first - A_last y_last
        MatrixXd rhs = MatrixXd::Identity(n, n);
        rhs -= A.col(0) * MatrixXd::Identity(n, n).row(0);
        rhs -= A.col(m - 1) * MatrixXd::Identity(n, n).row(n - 1);
        P.middleRows(1, m - 2) = qr.solve(rhs);
    }
    return P;
}

// Apply an (m x n) operator along direction `dir` of a tensor stored
// lexicographically (direction 0 fastest) with extents `ext`.
VectorXd apply_along(const VectorXd& data, std::array<long, 3>& ext, int dir, const MatrixXd& op) {
    const long n = op.cols(), m = op.rows();
    if (ext[dir] != n) throw InvalidArgument("apply_along: extent mismatch");
    std::array<long, 3> out_ext = ext;
    out_ext[dir] = m;
    long stride = 1;
    for (int d = 0; d < dir; ++d) stride *= ext[d];
    const long nlines = data.size() / n;
    VectorXd out(nlines * m);

    std::array<long, 3> idx{0, 0, 0};
    const long total = data.size();
    std::vector<long> bases_in, bases_out;
    for (long p = 0; p < total; ++p) {
        if (idx[dir] == 0) {
            long lin_in = 0, lin_out = 0, s_in = 1, s_out = 1;
            for (int d = 0; d < 3; ++d) {
                lin_in += s_in * idx[d];
                lin_out += s_out * idx[d];
                s_in *= ext[d];
                s_out *= out_ext[d];
            }
            bases_in.push_back(lin_in);
            bases_out.push_back(lin_out);
        }
        for (int d = 0; d < 3; ++d) {
            if (++idx[d] < ext[d]) break;
            idx[d] = 0;
        }
    }
    VectorXd line(n);
    for (std::size_t li = 0; li < bases_in.size(); ++li) {
        for (long i = 0; i < n; ++i) line[i] = data[bases_in[li] + i * stride];
        const VectorXd res = op * line;
        for (long i = 0; i < m; ++i) out[bases_out[li] + i * stride] = res[i];
    }
    ext = out_ext;
    return out;
}

}  // namespace

FitResult fit_least_squares(const TrivariateSpline& sp,
                            const std::function<Real(const Vec3&)>& f,
                            int n_per_direction) {
    const int n = n_per_direction;
    for (int d = 0; d < 3; ++d)
        if (n < sp.dims[d])
            throw InvalidArgument("fit_least_squares: fewer samples than basis functions in " +
                                  std::string(kDirNames[d]) + "-direction");

    std::array<std::vector<Real>, 3> sites;
    for (int d = 0; d < 3; ++d) {
        sites[d].resize(n);
        const Real t0 = sp.knots[d].front(), t1 = sp.knots[d].back();
        for (int i = 0; i < n; ++i) sites[d][i] = t0 + (t1 - t0) * Real(i) / (n - 1);
    }

    // sample the target on the grid (physical coordinates via the map)
    VectorXd F(long(n) * n * n);
    long c = 0;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                F[c++] = f(eval_geom(sp, Vec3(sites[0][i], sites[1][j], sites[2][k])));

    std::array<MatrixXd, 3> ops;
    for (int d = 0; d < 3; ++d) ops[d] = fit_operator(sp.knots[d], sites[d], d);

    std::array<long, 3> ext{n, n, n};
    VectorXd mu = F;
    for (int d = 0; d < 3; ++d) mu = apply_along(mu, ext, d, ops[d]);

    // residual on the sample grid: synthesize the fitted values
    std::array<MatrixXd, 3> eval_ops;
    for (int d = 0; d < 3; ++d) {
        MatrixXd A = MatrixXd::Zero(n, sp.dims[d]);
        for (int r = 0; r < n; ++r) {
            int span;
            Real N[32];
            sp.knots[d].basis(sites[d][r], span, N);
            for (int k = 0; k <= sp.knots[d].degree(); ++k)
                A(r, span - sp.knots[d].degree() + k) = N[k];
        }
        eval_ops[d] = A;
    }
    std::array<long, 3> ext2{sp.dims[0], sp.dims[1], sp.dims[2]};
    VectorXd fitted = mu;
    for (int d = 0; d < 3; ++d) fitted = apply_along(fitted, ext2, d, eval_ops[d]);

    FitResult res;
    res.mu = mu;
    res.n_samples = F.size();
    res.residual_l2 = (fitted - F).norm();
    res.residual_max = (fitted - F).cwiseAbs().maxCoeff();
    return res;
}

TrivariateSpline with_channel(const TrivariateSpline& sp, const std::string& name,
                              const VectorXd& mu) {
    if (mu.size() != sp.num_points())
        throw InvalidArgument("with_channel: coefficient count mismatch");
    TrivariateSpline out = sp;
    out.ctrl.resize(sp.ctrl.rows() + 1, sp.ctrl.cols());
    out.ctrl.topRows(sp.ctrl.rows()) = sp.ctrl;
    out.ctrl.row(sp.ctrl.rows()) = mu.transpose();
    out.channel_names.push_back(name);
    return out;
}

std::optional<Real> MaterialField::value_of(const VCell& cell, const Vec3& param,
                                            const std::string& property) const {
    if (cell.mode.kind == MaterialMode::Kind::Constant) {
        const auto& m = cell.mode.constant;
        if (property == "E") return m.E;
        if (property == "nu") return m.nu;
        if (property == "kappa") return m.kappa;
        if (property == "alpha_th") return m.alpha_th;
        return std::nullopt;
    }
    auto binding = bindings_.find(property);
    if (binding != bindings_.end()) {
        const auto& names = cell.spline.channel_names;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == binding->second) {
                const VectorXd v = eval(cell.spline, param);
                return v[3 + static_cast<long>(i)];
            }
        }
        throw InvalidArgument("material: cell " + std::to_string(cell.id) +
                              " has no channel '" + binding->second + "' bound to " + property);
    }
    if (fallback_) {
        if (property == "E") return fallback_->E;
        if (property == "nu") return fallback_->nu;
        if (property == "kappa") return fallback_->kappa;
        if (property == "alpha_th") return fallback_->alpha_th;
    }
    return std::nullopt;
}

std::map<std::string, Real> MaterialField::sample(const VCell& cell, const Vec3& param) const {
    std::map<std::string, Real> out;
    for (const char* p : {"E", "nu", "kappa", "alpha_th"}) {
        const auto v = value_of(cell, param, p);
        if (v) out[p] = *v;
    }
    // channels without a standard name are reported verbatim
    if (cell.mode.kind == MaterialMode::Kind::FromChannels && cell.spline.channels() > 0) {
        const VectorXd v = eval(cell.spline, param);
        for (std::size_t i = 0; i < cell.spline.channel_names.size(); ++i)
            out.emplace(cell.spline.channel_names[i], v[3 + static_cast<long>(i)]);
    }
    return out;
}

IsotropicMaterial MaterialField::material_at(const VCell& cell, const Vec3& param) const {
    IsotropicMaterial m;
    const auto need = [&](const char* p) {
        const auto v = value_of(cell, param, p);
        if (!v)
            throw InvalidArgument(std::string("material: property '") + p +
                                  "' unbound for cell " + std::to_string(cell.id));
        return *v;
    };
    m.E = need("E");
    m.nu = need("nu");
    const auto kappa = value_of(cell, param, "kappa");
    const auto alpha = value_of(cell, param, "alpha_th");
    m.kappa = kappa.value_or(0.0);
    m.alpha_th = alpha.value_or(0.0);
    return m;
}

}  // namespace vfcm
