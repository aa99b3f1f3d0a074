#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucs/pmf.hpp"

namespace ucs::region {

// System of linear inequalities coeff . vars >= constant. Equalities are
// stored as inequality pairs.
class LinearInequalitySystem {
public:
    struct Row {
        std::vector<double> coeff;
        double constant = 0.0;
    };

    explicit LinearInequalitySystem(std::vector<std::string> vars);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t var_index(const std::string& name) const;

    void add_ge(std::vector<double> coeff, double constant);
    void add_le(std::vector<double> coeff, double constant);
    void add_eq(std::vector<double> coeff, double constant);

    // Smallest row slack coeff.point - constant; membership means >= -tol.
    double min_slack(std::span<const double> point) const;
    bool contains(std::span<const double> point, double tol = 1e-9) const;

private:
    std::vector<std::string> vars_;
    std::vector<Row> rows_;
};

// Fourier-Motzkin projection onto the variables not listed in `drop`.
// Redundant rows are pruned by pairwise dominance only.
LinearInequalitySystem fme_eliminate(const LinearInequalitySystem& system,
                                     const std::vector<std::string>& drop);

struct RatePoint {
    double r1 = 0.0, r2 = 0.0, c = 0.0;
};

struct LpResult {
    double value = 0.0;
    std::vector<double> argmin;
};

// Minimizes the all-ones objective (for rate systems: R1 + R2 + C) by
// enumerating active-constraint vertex candidates. Throws on infeasible
// or unbounded systems.
LpResult min_sum_rate(const LinearInequalitySystem& system);

struct MarkovReport {
    bool holds = false;
    double max_deviation = 0.0;
};

// Verifies the chain A - B - C: p(c | a, b) = p(c | b) whenever p(a,b) > 0.
MarkovReport markov_verify(const prob::JointPmf& joint,
                           std::span<const std::size_t> group_a,
                           std::span<const std::size_t> group_b,
                           std::span<const std::size_t> group_c,
                           double tol = 1e-9);

// Auxiliary joint over (Q, W1, W2, X1, X2, Y) with W alphabets equal to the
// residues of F_p. Validation covers the two Markov chains and the
// cardinality condition |W_i| <= |X_i|.
class AuxPmf {
public:
    static constexpr std::size_t kQ = 0, kW1 = 1, kW2 = 2, kX1 = 3, kX2 = 4, kY = 5;

    AuxPmf(prob::JointPmf joint, std::uint32_t p);

    const prob::JointPmf& joint() const { return joint_; }
    std::uint32_t field_size() const { return p_; }
    bool chains_verified() const { return chains_verified_; }
    double max_chain_deviation() const { return max_chain_dev_; }

    // Marginal over (X1, X2, Y).
    prob::JointPmf target() const;
    // Joint extended with Z = W1 + W2 mod p as a seventh variable.
    const prob::JointPmf& with_z() const { return with_z_; }

private:
    prob::JointPmf joint_;
    prob::JointPmf with_z_;
    std::uint32_t p_;
    bool chains_verified_ = false;
    double max_chain_dev_ = 0.0;
};

// Right-hand-side constants of the rate-region inequalities.
struct BetaConstants {
    double r1 = 0.0;       // R1 bound
    double r2 = 0.0;       // R2 bound
    double r1c = 0.0;      // R1 + C bound
    double r2c = 0.0;      // R2 + C bound
    double sum = 0.0;      // R1 + R2 + C bound
};

BetaConstants beta_constants(const AuxPmf& aux);

// Region over (R1, R2, C): the five information inequalities plus
// nonnegativity.
LinearInequalitySystem beta_region(const AuxPmf& aux);

struct LongFormConstants {
    double s1 = 0.0, s2 = 0.0;       // covering bounds on S_i
    double s1c1 = 0.0, s2c2 = 0.0;   // bounds on S_i + C_i
    double sum = 0.0;                // bound on S1 + S2 + C1 + C2
    double packing = 0.0;            // bound on S_i - R_i
};

LongFormConstants long_form_constants(const AuxPmf& aux);

// Full system over (R1, R2, C, S1, S2, C1, C2).
LinearInequalitySystem long_form_region(const AuxPmf& aux);

// Binary-noise composition a(1-b) + b(1-a).
double bsc_convolve(double a, double b);

// Doubly symmetric binary source with flip p_flip, target Y = X1 + X2 + noise
// with noise parameter q_flip, test channels W_i = X_i + Bern(theta_i), and
// the induced output channel on Z = W1 + W2. Trivial time-sharing variable.
AuxPmf example1_aux(double p_flip, double q_flip, double theta1, double theta2);

struct Example1Result {
    double min_sum = 0.0;
    double argmin_theta = 0.0;
    struct SweepPoint {
        double theta;
        double sum_rate;  // NaN when infeasible
        bool feasible;
    };
    std::vector<SweepPoint> sweep;
};

// Minimum of R1 + R2 + C over the symmetric family theta1 = theta2 = theta,
// by grid search plus golden-section refinement.
Example1Result example1_structured_min(double p_flip, double q_flip,
                                       std::size_t grid_points = 10000);

// Sum-rate lower bound I(X1 X2 Y; W1 W2 | Q) of the unstructured region.
double unstructured_sum_bound(const AuxPmf& aux);
Example1Result example1_unstructured_sum_min(double p_flip, double q_flip,
                                             std::size_t grid_points = 10000);

} // namespace ucs::region
