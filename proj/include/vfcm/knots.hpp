#pragma once

#include <vfcm/types.hpp>

#include <vector>

namespace vfcm {

/// Clamped (open) knot vector together with the polynomial degree it serves.
///
/// Invariants enforced at construction: nondecreasing values, first and last
/// knot of multiplicity degree+1, interior multiplicity <= degree+1, and at
/// least degree+1 basis functions.
class KnotVector {
public:
    KnotVector() = default;
    KnotVector(int degree, std::vector<Real> values);

    /// Clamped knot vector with uniformly spaced interior knots such that
    /// `num_basis` basis functions span [t0, t1].
    static KnotVector clamped_uniform(int degree, int num_basis, Real t0 = 0.0,
                                      Real t1 = 1.0);

    int degree() const { return degree_; }
    int num_basis() const { return static_cast<int>(values_.size()) - degree_ - 1; }
    const std::vector<Real>& values() const { return values_; }
    Real front() const { return values_.front(); }
    Real back() const { return values_.back(); }
    Real span_length() const { return back() - front(); }
    bool in_range(Real t, Real tol = 0.0) const {
        return t >= front() - tol && t <= back() + tol;
    }

    /// Index k with values[k] <= t < values[k+1] (last span closed on the
    /// right). Throws DomainError outside the knot range.
    int find_span(Real t) const;

    /// Multiplicity of t among the knots (exact comparison).
    int multiplicity(Real t) const;

    /// Nonzero basis functions at t: fills `out[0..degree]` for indices
    /// span-degree .. span. Cox-de Boor recursion.
    void basis(Real t, int& span, Real* out) const;

    /// Basis values and the first `nder` derivatives: ders is
    /// (nder+1) x (degree+1), row 0 holding the values.
    void basis_derivs(Real t, int nder, int& span, MatrixXd& ders) const;

    /// Greville abscissae (one per basis function).
    std::vector<Real> greville() const;

    /// Distinct interior breakpoints (no end knots).
    std::vector<Real> interior_breakpoints() const;

    /// All distinct breakpoints including the ends.
    std::vector<Real> breakpoints() const;

private:
    int degree_ = 0;
    std::vector<Real> values_;
};

}  // namespace vfcm
