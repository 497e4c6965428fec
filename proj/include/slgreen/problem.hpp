#pragma once

#include "slgreen/expression.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace slgreen {

enum class Side { Left, Right };
enum class Mode { Strict, Lenient };

const char* to_string(Side side);
const char* to_string(Mode mode);

/// Coefficients of one eigenparameter-dependent boundary condition.
///
/// Left (x = a):   c0 y - c1 y' - λ (c0p y - c1p y') = 0   with (c0, c1, c0p, c1p) = (α10, α11, α'10, α'11)
/// Right (x = b):  c0 y - c1 y' + λ (c0p y - c1p y') = 0   with (c0, c1, c0p, c1p) = (α20, α21, α'20, α'21)
struct BoundaryCoeffs {
    double c0 = 0.0;
    double c1 = 0.0;
    double c0p = 0.0;
    double c1p = 0.0;

    /// det [[c1, c0], [c1p, c0p]]
    double theta() const { return c1 * c0p - c0 * c1p; }
    /// λ-independent condition: the primed row vanishes.
    bool degenerate() const { return c0p == 0.0 && c1p == 0.0; }
    bool all_zero() const { return c0 == 0.0 && c1 == 0.0 && degenerate(); }
};

/// 2x2 minors of the transmission matrix; dij uses columns i and j (1-based).
struct Minors {
    double d12 = 0.0;
    double d13 = 0.0;
    double d14 = 0.0;
    double d23 = 0.0;
    double d24 = 0.0;
    double d34 = 0.0;
};

/// Rows j = 1, 2; columns (β⁻j0, β⁻j1, β⁺j0, β⁺j1).
struct TransmissionSpec {
    std::array<std::array<double, 4>, 2> beta{};
};

Minors minors(const TransmissionSpec& t);

struct IntegratorSettings {
    int steps_per_side = 2000;
};

struct ProblemConfig {
    double a = 0.0;
    double c = 0.5;
    double b = 1.0;
    double p_minus = 1.0;
    double p_plus = 1.0;
    Expr q_minus;
    Expr q_plus;
    BoundaryCoeffs left;
    BoundaryCoeffs right;
    TransmissionSpec transmission;
    Mode mode = Mode::Lenient;
    IntegratorSettings integrator;

    double theta1() const { return left.theta(); }
    double theta2() const { return right.theta(); }
    Minors minors() const { return slgreen::minors(transmission); }
};

enum class CheckStatus { Pass, Warn, Fail };
const char* to_string(CheckStatus s);

struct ValidationCheck {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    Minors minors;
    double theta1 = 0.0;
    double theta2 = 0.0;

    bool ok() const;
    std::vector<std::string> warnings() const;
    std::vector<std::string> failures() const;
};

/// Checks the standing assumptions. Pure; never throws on numerical content.
ValidationReport validate(const ProblemConfig& config);

/// Interval and boundary weights of the modified inner product.
///
/// JumpConsistent pairs the weights with the transmission maps actually used to
/// continue solutions across c (det = Δ34/Δ12): Δ34/p⁻, Δ12/p⁺, Δ34/θ1, Δ12/θ2.
/// AsPrinted uses Δ12/p⁻, Δ34/p⁺, Δ12/(p⁻θ1), Δ34/(p⁺θ2); the two agree when
/// Δ12 = Δ34 and p± = 1.
enum class Weighting { JumpConsistent, AsPrinted };

struct HWeights {
    double left = 0.0;
    double right = 0.0;
    double bound1 = 0.0;  // 0 when the left component is disabled
    double bound2 = 0.0;
    bool active1 = false;
    bool active2 = false;
};

/// A validated problem with coefficient tables sampled on the integration grid.
///
/// Each side carries N+1 nodes and q sampled at 2N+1 half-step points, which is
/// every abscissa a fixed-step RK4 sweep touches in either direction.
class Problem {
public:
    explicit Problem(ProblemConfig config, Weighting weighting = Weighting::JumpConsistent);

    const ProblemConfig& config() const { return config_; }
    const ValidationReport& report() const { return report_; }
    const Minors& minors() const { return report_.minors; }
    Weighting weighting() const { return weighting_; }
    const HWeights& weights() const { return weights_; }

    int steps() const { return config_.integrator.steps_per_side; }
    double lo(Side s) const { return s == Side::Left ? config_.a : config_.c; }
    double hi(Side s) const { return s == Side::Left ? config_.c : config_.b; }
    double p(Side s) const { return s == Side::Left ? config_.p_minus : config_.p_plus; }
    const Expr& q(Side s) const { return s == Side::Left ? config_.q_minus : config_.q_plus; }
    double step(Side s) const { return (hi(s) - lo(s)) / steps(); }

    std::span<const double> nodes(Side s) const { return s == Side::Left ? x_left_ : x_right_; }
    std::span<const double> q_table(Side s) const { return s == Side::Left ? q_left_ : q_right_; }

private:
    ProblemConfig config_;
    ValidationReport report_;
    Weighting weighting_;
    HWeights weights_;
    std::vector<double> x_left_, x_right_;
    std::vector<double> q_left_, q_right_;
};

HWeights h_weights(const ProblemConfig& config, Weighting weighting);

}  // namespace slgreen
