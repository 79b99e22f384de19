// Copyright 2026 The symshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "symshadow/analytic_variance.hpp"

#include <cmath>
#include <string>

#include "symshadow/linalg.hpp"

namespace symshadow {

namespace {

void validate(Family family, int d, int s) {
    if (family != Family::AIII && family != Family::BDI) {
        throw Error(ErrorCode::InvalidParameters,
                    "variance coefficients exist for AIII and BDI only, got " + std::string(to_string(family)));
    }
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "variance coefficients need d >= 2");
    if (std::abs(s) > d || (d - s) % 2 != 0) {
        throw Error(ErrorCode::InvalidParameters,
                    "invalid signature s=" + std::to_string(s) + " for d=" + std::to_string(d) + " (need |s| <= d, s = d mod 2)");
    }
}

// The formulas are written once over a generic number type so that the
// double and exact paths cannot drift apart.
template <typename T>
struct Formulas {
    T c1, c2, c3, lambda_D, lambda_O;
};

template <typename T>
Formulas<T> evaluate(Family family, T d, T s) {
    const T s2 = s * s;
    const T s4 = s2 * s2;
    Formulas<T> f;
    if (family == Family::AIII) {
        const T dp1 = d + T(1);
        f.c1 = (s2 - d * d) * (s2 - (d + T(2)) * (d + T(2))) * (d * d * d + T(8) * d * d + T(2) * d * s2 + T(7) * d + T(6) * s2 - T(36)) /
               (d * d * (d - T(1)) * dp1 * dp1 * (d + T(2)) * (d + T(3)) * (d + T(4)) * (d + T(5)));
        f.c2 = -(s2 - d * d) *
               (d * d * d + T(2) * d * d * s2 + T(7) * d * d + d * s4 + T(2) * d * s2 + T(20) * d + T(3) * s4 - T(20) * s2 + T(32)) /
               (d * d * (d - T(1)) * dp1 * dp1 * (d + T(3)) * (d + T(4)) * (d + T(5)));
        f.c3 = (s2 - T(1)) * (s2 + T(3) * d - T(2) * s) * (s2 + T(3) * d + T(2) * s) /
               (d * d * (d - T(1)) * dp1 * dp1 * (d + T(5)));
        f.lambda_O = (-s4 - T(2) * s2 * (d - T(2)) + d * d * (d * d + T(2) * d - T(4))) /
                     (d * d * (d - T(1)) * dp1 * (d + T(3)));
        f.lambda_D = (s4 + T(2) * s2 * (d - T(2)) + d * (d * d + T(3) * d - T(3))) / (d * (d - T(1)) * dp1 * (d + T(3)));
    } else {
        const T common = d * (d - T(1)) * (d + T(1)) * (d + T(2)) * (d + T(3));
        f.c1 = (d - s) * (d + s) * (d - s + T(4)) * (d + s + T(4)) *
               (d * d * d + T(19) * d * d + T(2) * d * s2 + T(82) * d + T(12) * s2 - T(48)) /
               (common * (d + T(4)) * (d + T(6)) * (d + T(8)) * (d + T(10)));
        f.c2 = (d - s) * (d + s) *
               (T(3) * d * d * d + T(6) * d * d * s2 + T(24) * d * d + d * s4 + T(44) * d * s2 - T(12) * d + T(6) * s4 - T(96)) /
               (common * (d + T(6)) * (d + T(8)) * (d + T(10)));
        f.c3 = (T(15) * d * d * d + T(45) * d * d * s2 + T(15) * d * s4 + T(30) * d * s2 - T(60) * d + s4 * s2 + T(10) * s4 - T(56) * s2) /
               (common * (d + T(10)));
        f.lambda_O = T(2) * (d * d - s2) * (d * d + T(6) * d + s2 - T(4)) /
                     (d * (d - T(1)) * (d + T(1)) * (d + T(2)) * (d + T(6)));
        f.lambda_D = (s4 - T(4) * s2 + T(2) * d * d * d + T(15) * d * d - T(12) + d * (T(6) * s2 - T(8))) /
                     ((d - T(1)) * (d + T(1)) * (d + T(2)) * (d + T(6)));
    }
    return f;
}

// Rational with integer promotion, so the template above reads naturally.
struct Q {
    Rational r;
    Q() : Q(0) {}
    Q(int v) : r(Rational::make(v, 1)) {}  // NOLINT(google-explicit-constructor)
    Q(Rational v) : r(v) {}                // NOLINT(google-explicit-constructor)
    friend Q operator+(Q a, Q b) { return a.r + b.r; }
    friend Q operator-(Q a, Q b) { return a.r - b.r; }
    friend Q operator*(Q a, Q b) { return a.r * b.r; }
    friend Q operator/(Q a, Q b) { return a.r / b.r; }
    Q operator-() const { return Rational::make(-r.num, r.den); }
};

double re_trace(const ComplexMatrix& m) { return m.trace().real(); }

ComplexMatrix traceless(const ComplexMatrix& o) {
    ComplexMatrix o0 = o;
    o0.diagonal().array() -= o.trace() / static_cast<double>(o.rows());
    return o0;
}

void check_inputs(const ComplexMatrix& rho, const ComplexMatrix& o, const SpaceSpec& spec, Family expected) {
    if (spec.family != expected) {
        throw Error(ErrorCode::InvalidParameters, std::string("expected a ") + std::string(to_string(expected)) +
                                                      " space, got " + describe(spec));
    }
    require_dim(rho, spec.d, "state");
    require_dim(o, spec.d, "observable");
    if (!is_hermitian(o, 1e-10)) throw Error(ErrorCode::InvalidParameters, "observable is not Hermitian");
}

}  // namespace

VarianceCoefficients coefficients(Family family, int d, int s) {
    validate(family, d, s);
    const auto f = evaluate<double>(family, d, s);
    return {family, d, s, f.c1, f.c2, f.c3, f.lambda_D, f.lambda_O};
}

ExactVarianceCoefficients coefficients_exact(Family family, int d, int s) {
    validate(family, d, s);
    const auto f = evaluate<Q>(family, Q(d), Q(s));
    return {f.c1.r, f.c2.r, f.c3.r, f.lambda_D.r, f.lambda_O.r};
}

double second_moment_aiii(const ComplexMatrix& rho, const ComplexMatrix& o, const SpaceSpec& spec) {
    check_inputs(rho, o, spec, Family::AIII);
    const VarianceCoefficients c = coefficients(Family::AIII, spec.d, spec.s);
    const ComplexMatrix x = ChannelInverse(spec).apply(traceless(o));
    const ComplexMatrix dx = dephase(x);
    const ComplexMatrix x2 = x * x;
    return c.c1 * (re_trace(x2) + 2.0 * re_trace(rho * x2)) +
           c.c2 * (2.0 * re_trace(dephase(rho) * x2) + 2.0 * re_trace(rho * (dx * x + x * dx)) + re_trace(dx * dx)) +
           c.c3 * re_trace(rho * dx * dx);
}

double second_moment_bdi(const ComplexMatrix& rho, const ComplexMatrix& o, const SpaceSpec& spec) {
    check_inputs(rho, o, spec, Family::BDI);
    const VarianceCoefficients c = coefficients(Family::BDI, spec.d, spec.s);
    const ComplexMatrix x = ChannelInverse(spec).apply(traceless(o));
    const ComplexMatrix xt = 0.5 * (x + x.transpose());
    const ComplexMatrix rt = 0.5 * (rho + rho.transpose());
    const ComplexMatrix dx = dephase(x);
    const ComplexMatrix xt2 = xt * xt;
    return c.c1 * (2.0 * re_trace(xt2) + 8.0 * re_trace(rt * xt2)) +
           c.c2 * (4.0 * re_trace(dephase(rho) * xt2) + 4.0 * re_trace(rt * (dx * xt + xt * dx)) + re_trace(dx * dx)) +
           c.c3 * re_trace(rt * dx * dx);
}

double analytic_second_moment(const ComplexMatrix& rho, const ComplexMatrix& o, const SpaceSpec& spec) {
    if (spec.family == Family::AIII) return second_moment_aiii(rho, o, spec);
    if (spec.family == Family::BDI) return second_moment_bdi(rho, o, spec);
    throw Error(ErrorCode::InvalidParameters, "no closed-form second moment for " + describe(spec));
}

double unitary_leading_term(const ComplexMatrix& rho, const ComplexMatrix& o) {
    const ComplexMatrix o0 = traceless(o);
    const ComplexMatrix o2 = o0 * o0;
    return re_trace(o2) + 2.0 * re_trace(rho * o2);
}

double orthogonal_leading_term(const ComplexMatrix& rho, const ComplexMatrix& o) {
    const ComplexMatrix o0 = traceless(o);
    const ComplexMatrix ot = 0.5 * (o0 + o0.transpose());
    const ComplexMatrix rt = 0.5 * (rho + rho.transpose());
    const ComplexMatrix o2 = ot * ot;
    return 0.5 * re_trace(o2) + 2.0 * re_trace(rt * o2);
}

double diagonal_bound(const ComplexMatrix& o, double c) {
    const ComplexMatrix od = dephase(traceless(o));
    const double d = static_cast<double>(o.rows());
    const double two_norm_sq = od.squaredNorm();
    const double inf_norm = od.diagonal().cwiseAbs().maxCoeff();
    return std::pow(c, -4) / d * two_norm_sq + std::pow(c, -2) * inf_norm * inf_norm;
}

}  // namespace symshadow
