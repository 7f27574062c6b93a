#include <vfcm/tensor_table.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>

namespace vfcm {

namespace {

// upper-triangle enumeration of a symmetric 6x6
constexpr int kNumCoef = 21;
inline int coef_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * 6 - i * (i - 1) / 2 + (j - i);
}

KnotVector averaged_knots_or_line(const std::vector<Real>& sites, int degree) {
    const int n = static_cast<int>(sites.size());
    std::vector<Real> U;
    for (int i = 0; i <= degree; ++i) U.push_back(sites.front());
    for (int j = 1; j <= n - degree - 1; ++j) {
        Real s = 0.0;
        for (int i = j; i < j + degree; ++i) s += sites[i];
        U.push_back(s / degree);
    }
    for (int i = 0; i <= degree; ++i) U.push_back(sites.back());
    return KnotVector(degree, std::move(U));
}

MatrixXd collocation_matrix(const KnotVector& kv, const std::vector<Real>& sites) {
    const int n = static_cast<int>(sites.size());
    MatrixXd A = MatrixXd::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        int span;
        Real N[32];
        kv.basis(sites[r], span, N);
        for (int k = 0; k <= kv.degree(); ++k) A(r, span - kv.degree() + k) = N[k];
    }
    return A;
}

Real eval_1d(const KnotVector& kv, const VectorXd& coef, Real t) {
    int span;
    Real N[32];
    kv.basis(t, span, N);
    Real v = 0;
    for (int k = 0; k <= kv.degree(); ++k) v += N[k] * coef[span - kv.degree() + k];
    return v;
}

}  // namespace

std::vector<Real> EffectiveTensorTable::default_angles() {
    std::vector<Real> a;
    for (int i = 0; i <= 12; ++i) a.push_back(7.5 * i);
    return a;
}

EffectiveTensorTable EffectiveTensorTable::build(
    const std::vector<std::pair<Real, ElasticityTensor>>& samples, std::vector<Real> angles) {
    if (samples.size() < 2)
        throw InvalidArgument("tensor table: need at least two diameter samples");
    if (angles.size() < 2) throw InvalidArgument("tensor table: need at least two angles");

    auto sorted = samples;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].first == sorted[i - 1].first)
            throw InvalidArgument("tensor table: duplicate diameter " +
                                  std::to_string(sorted[i].first));
        sorted[i].second.require_same_unit(sorted[0].second);
    }

    EffectiveTensorTable t;
    t.unit_ = sorted[0].second.unit;
    for (const auto& [d, C] : sorted) t.diameters_.push_back(d);
    t.angles_ = std::move(angles);
    std::sort(t.angles_.begin(), t.angles_.end());

    // the angle axis requires no further homogenization runs: it is filled
    // by Bond rotation of the unrotated tensors
    for (const auto& [d, C] : sorted)
        for (Real a : t.angles_) t.entries_.push_back(rotate_tensor(C, a));
    t.fit_interpolants();
    return t;
}

void EffectiveTensorTable::fit_interpolants() {
    const int nd = static_cast<int>(diameters_.size());
    const int na = static_cast<int>(angles_.size());
    const int pd = std::min(3, nd - 1);
    const int pa = std::min(3, na - 1);
    kd_ = averaged_knots_or_line(diameters_, pd);
    ka_ = averaged_knots_or_line(angles_, pa);

    MatrixXd values(kNumCoef, long(nd) * na);
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < na; ++j) {
            const Mat6& C = entries_[i * na + j].C;
            for (int r = 0; r < 6; ++r)
                for (int c = r; c < 6; ++c)
                    values(coef_index(r, c), long(j) * nd + i) = C(r, c);
        }
    // collocate along diameters, then angles
    const Eigen::PartialPivLU<MatrixXd> lu_d(collocation_matrix(kd_, diameters_));
    const Eigen::PartialPivLU<MatrixXd> lu_a(collocation_matrix(ka_, angles_));
    coef_.resize(kNumCoef, long(nd) * na);
    for (int j = 0; j < na; ++j) {
        MatrixXd col(kNumCoef, nd);
        for (int i = 0; i < nd; ++i) col.col(i) = values.col(long(j) * nd + i);
        const MatrixXd c = lu_d.solve(col.transpose()).transpose();
        for (int i = 0; i < nd; ++i) coef_.col(long(j) * nd + i) = c.col(i);
    }
    for (int i = 0; i < nd; ++i) {
        MatrixXd row(kNumCoef, na);
        for (int j = 0; j < na; ++j) row.col(j) = coef_.col(long(j) * nd + i);
        const MatrixXd c = lu_a.solve(row.transpose()).transpose();
        for (int j = 0; j < na; ++j) coef_.col(long(j) * nd + i) = c.col(j);
    }
}

const ElasticityTensor& EffectiveTensorTable::at(int i, int j) const {
    return entries_.at(std::size_t(i) * angles_.size() + j);
}

namespace {

void enforce_pattern(Mat6& C) {
    // 13 independent coefficients: dense 4x4 normal/12-shear block plus the
    // coupled 23/13 shear pair; the rest vanishes for z-rotated orthotropy
    const Real tol = 1e-9 * C.cwiseAbs().maxCoeff();
    for (int i = 0; i < 4; ++i)
        for (int j = 4; j < 6; ++j) {
            if (std::abs(C(i, j)) < tol) C(i, j) = C(j, i) = 0.0;
        }
}

}  // namespace

ElasticityTensor EffectiveTensorTable::query(Real diameter, Real angle_deg) const {
    if (diameter < diameters_.front() || diameter > diameters_.back())
        throw DomainError("tensor table: diameter " + std::to_string(diameter) +
                          " outside the sampled range (no extrapolation)");
    if (angle_deg < angles_.front() || angle_deg > angles_.back())
        throw DomainError("tensor table: angle " + std::to_string(angle_deg) +
                          " outside the sampled range");
    const int nd = static_cast<int>(diameters_.size());
    const int na = static_cast<int>(angles_.size());

    ElasticityTensor out;
    out.unit = unit_;
    for (int r = 0; r < 6; ++r)
        for (int c = r; c < 6; ++c) {
            // tensor-product evaluation of the coefficient surface
            VectorXd along_d(nd);
            for (int i = 0; i < nd; ++i) {
                VectorXd slice(na);
                for (int j = 0; j < na; ++j) slice[j] = coef_(coef_index(r, c), long(j) * nd + i);
                along_d[i] = eval_1d(ka_, slice, angle_deg);
            }
            const Real v = eval_1d(kd_, along_d, diameter);
            out.C(r, c) = out.C(c, r) = v;
        }
    enforce_pattern(out.C);
    return out;
}

ElasticityTensor EffectiveTensorTable::query_linear(Real diameter, Real angle_deg) const {
    if (diameter < diameters_.front() || diameter > diameters_.back())
        throw DomainError("tensor table: diameter outside the sampled range");
    if (angle_deg < angles_.front() || angle_deg > angles_.back())
        throw DomainError("tensor table: angle outside the sampled range");
    auto bracket = [](const std::vector<Real>& v, Real x) {
        std::size_t i = 1;
        while (i + 1 < v.size() && x > v[i]) ++i;
        const Real t = (x - v[i - 1]) / (v[i] - v[i - 1]);
        return std::pair<std::size_t, Real>(i - 1, t);
    };
    const auto [id, td] = bracket(diameters_, diameter);
    const auto [ia, ta] = bracket(angles_, angle_deg);
    const std::size_t na = angles_.size();
    ElasticityTensor out;
    out.unit = unit_;
    out.C = (1 - td) * (1 - ta) * entries_[id * na + ia].C +
            td * (1 - ta) * entries_[(id + 1) * na + ia].C +
            (1 - td) * ta * entries_[id * na + ia + 1].C +
            td * ta * entries_[(id + 1) * na + ia + 1].C;
    return out;
}

std::string EffectiveTensorTable::to_json_string() const {
    nlohmann::json j;
    j["unit"] = unit_;
    j["diameters"] = diameters_;
    j["angles_deg"] = angles_;
    for (const auto& e : entries_) {
        std::vector<Real> flat(36);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) flat[r * 6 + c] = e.C(r, c);
        j["entries"].push_back(flat);
    }
    return j.dump(2);
}

EffectiveTensorTable EffectiveTensorTable::from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("tensor table json: ") + e.what());
    }
    EffectiveTensorTable t;
    t.unit_ = j.value("unit", std::string("kN/cm^2"));
    t.diameters_ = j.at("diameters").get<std::vector<Real>>();
    t.angles_ = j.at("angles_deg").get<std::vector<Real>>();
    const auto entries = j.at("entries");
    if (entries.size() != t.diameters_.size() * t.angles_.size())
        throw IoError("tensor table json: entry count mismatch");
    for (const auto& e : entries) {
        const auto flat = e.get<std::vector<Real>>();
        if (flat.size() != 36) throw IoError("tensor table json: entry is not 6x6");
        ElasticityTensor C;
        C.unit = t.unit_;
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) C.C(r, c) = flat[r * 6 + c];
        t.entries_.push_back(C);
    }
    t.fit_interpolants();
    return t;
}

void EffectiveTensorTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << to_json_string() << "\n";
}

EffectiveTensorTable EffectiveTensorTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_string(text);
}

}  // namespace vfcm
