#include <vfcm/knots.hpp>

#include <algorithm>
#include <cmath>

namespace vfcm {

KnotVector::KnotVector(int degree, std::vector<Real> values)
    : degree_(degree), values_(std::move(values)) {
    if (degree_ < 0)
        throw InvalidArgument("knot vector: negative degree");
    const int n = static_cast<int>(values_.size()) - degree_ - 1;
    if (n < degree_ + 1)
        throw InvalidArgument("knot vector: too few knots for degree " +
                              std::to_string(degree_));
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] < values_[i - 1])
            throw InvalidArgument("knot vector: values must be nondecreasing");
    for (int i = 0; i <= degree_; ++i) {
        if (values_[i] != values_.front() ||
            values_[values_.size() - 1 - i] != values_.back())
            throw InvalidArgument("knot vector: ends must be clamped (multiplicity degree+1)");
    }
    if (values_.front() == values_.back())
        throw InvalidArgument("knot vector: empty parameter range");
    // interior multiplicity check
    int run = 1;
    for (std::size_t i = degree_ + 1; i + degree_ + 1 < values_.size(); ++i) {
        run = (values_[i] == values_[i - 1]) ? run + 1 : 1;
        if (run > degree_ + 1)
            throw InvalidArgument("knot vector: interior multiplicity exceeds degree+1");
    }
}

KnotVector KnotVector::clamped_uniform(int degree, int num_basis, Real t0, Real t1) {
    if (num_basis < degree + 1)
        throw InvalidArgument("clamped_uniform: num_basis < degree+1");
    std::vector<Real> v;
    v.reserve(num_basis + degree + 1);
    const int n_int = num_basis - degree - 1;
    for (int i = 0; i <= degree; ++i) v.push_back(t0);
    for (int i = 1; i <= n_int; ++i)
        v.push_back(t0 + (t1 - t0) * Real(i) / Real(n_int + 1));
    for (int i = 0; i <= degree; ++i) v.push_back(t1);
    return KnotVector(degree, std::move(v));
}

int KnotVector::find_span(Real t) const {
    // snap measurement-noise overshoot; genuinely outside values still throw
    const Real snap = 1e-12 * span_length();
    if (!in_range(t, snap))
        throw DomainError("parameter " + std::to_string(t) + " outside knot range [" +
                          std::to_string(front()) + ", " + std::to_string(back()) + "]");
    t = std::clamp(t, front(), back());
    const int n = num_basis();
    if (t >= values_[n]) return n - 1;  // right end: last nonempty span
    int lo = degree_, hi = n;
    while (true) {
        const int mid = (lo + hi) / 2;
        if (t < values_[mid])
            hi = mid;
        else if (t >= values_[mid + 1])
            lo = mid;
        else
            return mid;
    }
}

int KnotVector::multiplicity(Real t) const {
    return static_cast<int>(std::count(values_.begin(), values_.end(), t));
}

void KnotVector::basis(Real t, int& span, Real* N) const {
    span = find_span(t);
    t = std::clamp(t, front(), back());
    const int p = degree_;
    Real left[32], right[32];
    N[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = t - values_[span + 1 - j];
        right[j] = values_[span + j] - t;
        Real saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const Real temp = N[r] / (right[r + 1] + left[j - r]);
            N[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        N[j] = saved;
    }
}

void KnotVector::basis_derivs(Real t, int nder, int& span, MatrixXd& ders) const {
    span = find_span(t);
    t = std::clamp(t, front(), back());
    const int p = degree_;
    const int nd = std::min(nder, p);
    ders.setZero(nder + 1, p + 1);

    MatrixXd ndu(p + 1, p + 1);
    Real left[32], right[32];
    ndu(0, 0) = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = t - values_[span + 1 - j];
        right[j] = values_[span + j] - t;
        Real saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu(j, r) = right[r + 1] + left[j - r];
            const Real temp = ndu(r, j - 1) / ndu(j, r);
            ndu(r, j) = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu(j, j) = saved;
    }
    for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

    MatrixXd a(2, p + 1);
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a(0, 0) = 1.0;
        for (int k = 1; k <= nd; ++k) {
            Real d = 0.0;
            const int rk = r - k, pk = p - k;
            if (r >= k) {
                a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
                d = a(s2, 0) * ndu(rk, pk);
            }
            const int j1 = (rk >= -1) ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
                d += a(s2, j) * ndu(rk + j, pk);
            }
            if (r <= pk) {
                a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
                d += a(s2, k) * ndu(r, pk);
            }
            ders(k, r) = d;
            std::swap(s1, s2);
        }
    }
    Real f = p;
    for (int k = 1; k <= nd; ++k) {
        for (int j = 0; j <= p; ++j) ders(k, j) *= f;
        f *= (p - k);
    }
}

std::vector<Real> KnotVector::greville() const {
    std::vector<Real> g(num_basis());
    for (int i = 0; i < num_basis(); ++i) {
        Real s = 0.0;
        for (int j = 1; j <= degree_; ++j) s += values_[i + j];
        g[i] = (degree_ > 0) ? s / degree_ : 0.5 * (values_[i] + values_[i + 1]);
    }
    return g;
}

std::vector<Real> KnotVector::interior_breakpoints() const {
    std::vector<Real> b;
    for (std::size_t i = degree_ + 1; i + degree_ + 1 < values_.size(); ++i)
        if (b.empty() || values_[i] != b.back()) b.push_back(values_[i]);
    return b;
}

std::vector<Real> KnotVector::breakpoints() const {
    std::vector<Real> b{front()};
    for (Real t : interior_breakpoints()) b.push_back(t);
    b.push_back(back());
    return b;
}

}  // namespace vfcm
