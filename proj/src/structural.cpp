#include "slgreen/structural.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slgreen {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

Minors abs_minors(const TransmissionSpec& t) {
    const auto& r0 = t.beta[0];
    const auto& r1 = t.beta[1];
    auto m = [&](int i, int j) { return std::abs(r0[i] * r1[j]) + std::abs(r0[j] * r1[i]); };
    return {m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)};
}

}  // namespace

double plucker_defect_ulps(const TransmissionSpec& t) {
    const Minors m = minors(t);
    const Minors am = abs_minors(t);
    const double defect = std::abs(m.d13 * m.d24 - m.d14 * m.d23 - m.d12 * m.d34);
    const double bound = eps * (am.d13 * am.d24 + am.d14 * am.d23 + am.d12 * am.d34);
    if (bound == 0.0) return defect == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return defect / bound;
}

double jump_roundtrip_ulps(const Minors& m, State s) {
    const State back = jump_backward(m, jump_forward(m, s));
    const double err = std::max(std::abs(back.y - s.y), std::abs(back.yp - s.yp));
    // |F| and |B| entrywise.
    const double f00 = std::abs(m.d23 / m.d12), f01 = std::abs(m.d24 / m.d12);
    const double f10 = std::abs(m.d13 / m.d12), f11 = std::abs(m.d14 / m.d12);
    const double b00 = std::abs(m.d14 / m.d34), b01 = std::abs(m.d24 / m.d34);
    const double b10 = std::abs(m.d13 / m.d34), b11 = std::abs(m.d23 / m.d34);
    const double fu = f00 * std::abs(s.y) + f01 * std::abs(s.yp);
    const double fv = f10 * std::abs(s.y) + f11 * std::abs(s.yp);
    const double bound = eps * std::max(b00 * fu + b01 * fv, b10 * fu + b11 * fv);
    if (bound == 0.0) return err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return err / bound;
}

}  // namespace slgreen
