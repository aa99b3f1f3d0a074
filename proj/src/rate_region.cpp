#include "ucs/rate_region.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace ucs::region {

namespace {

constexpr double kCoeffTol = 1e-9;
constexpr double kBox = 1e6; // synthetic bounds used only inside the LP

void normalize_row(LinearInequalitySystem::Row& row) {
    double scale = 0.0;
    for (double c : row.coeff) scale = std::max(scale, std::abs(c));
    if (scale < kCoeffTol) {
        for (double& c : row.coeff) c = 0.0;
        return;
    }
    for (double& c : row.coeff) {
        c /= scale;
        if (std::abs(c) < kCoeffTol) c = 0.0;
    }
    row.constant /= scale;
}

bool same_direction(const LinearInequalitySystem::Row& a, const LinearInequalitySystem::Row& b) {
    for (std::size_t i = 0; i < a.coeff.size(); ++i)
        if (std::abs(a.coeff[i] - b.coeff[i]) > 1e-9) return false;
    return true;
}

// Gaussian solve of a square system; returns false when near-singular.
bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs,
                  std::vector<double>& out) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) < 1e-10) return false;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / m[i][i];
    return true;
}

} // namespace

LinearInequalitySystem::LinearInequalitySystem(std::vector<std::string> vars)
    : vars_(std::move(vars)) {
    if (vars_.empty()) throw std::invalid_argument("system needs at least one variable");
}

std::size_t LinearInequalitySystem::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    throw std::invalid_argument("unknown variable " + name);
}

void LinearInequalitySystem::add_ge(std::vector<double> coeff, double constant) {
    if (coeff.size() != vars_.size()) throw std::invalid_argument("row arity mismatch");
    Row row{std::move(coeff), constant};
    normalize_row(row);
    rows_.push_back(std::move(row));
}

void LinearInequalitySystem::add_le(std::vector<double> coeff, double constant) {
    for (double& c : coeff) c = -c;
    add_ge(std::move(coeff), -constant);
}

void LinearInequalitySystem::add_eq(std::vector<double> coeff, double constant) {
    add_ge(coeff, constant);
    add_le(std::move(coeff), constant);
}

double LinearInequalitySystem::min_slack(std::span<const double> point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("point arity mismatch");
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& row : rows_) {
        double v = -row.constant;
        for (std::size_t i = 0; i < point.size(); ++i) v += row.coeff[i] * point[i];
        worst = std::min(worst, v);
    }
    return worst;
}

bool LinearInequalitySystem::contains(std::span<const double> point, double tol) const {
    return min_slack(point) >= -tol;
}

LinearInequalitySystem fme_eliminate(const LinearInequalitySystem& system,
                                     const std::vector<std::string>& drop) {
    std::vector<std::size_t> drop_idx;
    for (const auto& name : drop) drop_idx.push_back(system.var_index(name));

    std::vector<LinearInequalitySystem::Row> rows = system.rows();

    auto prune = [&](std::vector<LinearInequalitySystem::Row>& rs) {
        std::vector<LinearInequalitySystem::Row> kept;
        for (auto& row : rs) {
            normalize_row(row);
            bool zero = true;
            for (double c : row.coeff)
                if (c != 0.0) { zero = false; break; }
            if (zero && row.constant <= kCoeffTol) continue; // trivially true
            bool dominated = false;
            for (auto& other : kept) {
                if (!same_direction(row, other)) continue;
                other.constant = std::max(other.constant, row.constant);
                dominated = true;
                break;
            }
            if (!dominated) kept.push_back(std::move(row));
        }
        rs = std::move(kept);
    };

    std::vector<std::size_t> pending = drop_idx;
    while (!pending.empty()) {
        // eliminate the variable with the fewest pos*neg combinations
        std::size_t best_pos = 0;
        std::size_t best_score = std::numeric_limits<std::size_t>::max();
        for (std::size_t pi = 0; pi < pending.size(); ++pi) {
            std::size_t pos = 0, neg = 0;
            for (const auto& row : rows) {
                if (row.coeff[pending[pi]] > kCoeffTol) ++pos;
                else if (row.coeff[pending[pi]] < -kCoeffTol) ++neg;
            }
            const std::size_t score = pos * neg + pos + neg;
            if (score < best_score) { best_score = score; best_pos = pi; }
        }
        const std::size_t var = pending[best_pos];
        pending.erase(pending.begin() + best_pos);

        std::vector<LinearInequalitySystem::Row> zero_rows, pos_rows, neg_rows;
        for (auto& row : rows) {
            if (row.coeff[var] > kCoeffTol) pos_rows.push_back(std::move(row));
            else if (row.coeff[var] < -kCoeffTol) neg_rows.push_back(std::move(row));
            else { row.coeff[var] = 0.0; zero_rows.push_back(std::move(row)); }
        }
        std::vector<LinearInequalitySystem::Row> next = std::move(zero_rows);
        for (const auto& rp : pos_rows) {
            for (const auto& rn : neg_rows) {
                const double lambda = -rn.coeff[var]; // > 0
                const double mu = rp.coeff[var];      // > 0
                LinearInequalitySystem::Row combo;
                combo.coeff.assign(rp.coeff.size(), 0.0);
                for (std::size_t i = 0; i < combo.coeff.size(); ++i)
                    combo.coeff[i] = lambda * rp.coeff[i] + mu * rn.coeff[i];
                combo.coeff[var] = 0.0;
                combo.constant = lambda * rp.constant + mu * rn.constant;
                next.push_back(std::move(combo));
            }
        }
        prune(next);
        rows = std::move(next);
    }

    // project away the dropped columns
    std::vector<std::string> keep_names;
    std::vector<std::size_t> keep_cols;
    for (std::size_t i = 0; i < system.vars().size(); ++i) {
        if (std::find(drop_idx.begin(), drop_idx.end(), i) == drop_idx.end()) {
            keep_names.push_back(system.vars()[i]);
            keep_cols.push_back(i);
        }
    }
    LinearInequalitySystem out(keep_names);
    for (const auto& row : rows) {
        std::vector<double> coeff(keep_cols.size());
        for (std::size_t i = 0; i < keep_cols.size(); ++i) coeff[i] = row.coeff[keep_cols[i]];
        out.add_ge(std::move(coeff), row.constant);
    }
    return out;
}

LpResult min_sum_rate(const LinearInequalitySystem& system) {
    const std::size_t v = system.vars().size();
    if (v > 4) throw std::invalid_argument("vertex-enumeration LP supports at most 4 variables");

    // Work rows plus a synthetic box so every nonempty region has vertices.
    std::vector<LinearInequalitySystem::Row> rows = system.rows();
    for (std::size_t i = 0; i < v; ++i) {
        LinearInequalitySystem::Row lo, hi;
        lo.coeff.assign(v, 0.0);
        hi.coeff.assign(v, 0.0);
        lo.coeff[i] = 1.0;
        lo.constant = -kBox;
        hi.coeff[i] = -1.0;
        hi.constant = -kBox;
        rows.push_back(lo);
        rows.push_back(hi);
    }

    auto feasible = [&](const std::vector<double>& pt) {
        for (const auto& row : rows) {
            double s = -row.constant;
            for (std::size_t i = 0; i < v; ++i) s += row.coeff[i] * pt[i];
            if (s < -1e-7 * std::max(1.0, std::abs(row.constant))) return false;
        }
        return true;
    };

    const std::size_t m = rows.size();
    std::vector<std::size_t> pick(v, 0);
    LpResult best;
    best.value = std::numeric_limits<double>::infinity();

    // all v-subsets of rows
    std::vector<std::size_t> idx(v);
    for (std::size_t i = 0; i < v; ++i) idx[i] = i;
    auto advance = [&]() {
        std::size_t i = v;
        while (i-- > 0) {
            if (idx[i] + (v - i) <= m) {
                ++idx[i];
                for (std::size_t j = i + 1; j < v; ++j) idx[j] = idx[j - 1] + 1;
                if (idx[v - 1] < m) return true;
            }
        }
        return false;
    };

    std::vector<std::vector<double>> mat(v, std::vector<double>(v));
    std::vector<double> rhs(v), pt;
    for (;;) {
        for (std::size_t i = 0; i < v; ++i) {
            mat[i] = rows[idx[i]].coeff;
            rhs[i] = rows[idx[i]].constant;
        }
        if (solve_square(mat, rhs, pt) && feasible(pt)) {
            double obj = 0.0;
            for (double c : pt) obj += c;
            if (obj < best.value) {
                best.value = obj;
                best.argmin = pt;
            }
        }
        if (!advance()) break;
    }

    if (!std::isfinite(best.value))
        throw std::runtime_error("infeasible inequality system");
    if (best.value < -kBox / 2.0)
        throw std::runtime_error("objective unbounded below");
    return best;
}

MarkovReport markov_verify(const prob::JointPmf& joint,
                           std::span<const std::size_t> group_a,
                           std::span<const std::size_t> group_b,
                           std::span<const std::size_t> group_c,
                           double tol) {
    std::vector<std::size_t> all(group_a.begin(), group_a.end());
    all.insert(all.end(), group_b.begin(), group_b.end());
    all.insert(all.end(), group_c.begin(), group_c.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("markov_verify: groups must be disjoint");

    const prob::JointPmf sub = joint.marginal(all);
    // positions of the groups inside the marginal
    auto locate = [&](std::span<const std::size_t> g) {
        std::vector<std::size_t> pos;
        for (auto d : g)
            pos.push_back(static_cast<std::size_t>(
                std::lower_bound(all.begin(), all.end(), d) - all.begin()));
        return pos;
    };
    const auto pa = locate(group_a), pb = locate(group_b), pc = locate(group_c);

    auto block_index = [&](const std::vector<std::size_t>& idx,
                           const std::vector<std::size_t>& pos) {
        std::size_t f = 0;
        for (auto p : pos) f = f * sub.dim_size(p) + idx[p];
        return f;
    };
    std::size_t na = 1, nb = 1, nc = 1;
    for (auto p : pa) na *= sub.dim_size(p);
    for (auto p : pb) nb *= sub.dim_size(p);
    for (auto p : pc) nc *= sub.dim_size(p);

    std::vector<double> p_abc(na * nb * nc, 0.0);
    std::vector<std::size_t> idx;
    for (std::size_t f = 0; f < sub.table_size(); ++f) {
        if (sub.probs()[f] == 0.0) continue;
        sub.decode_index(f, idx);
        const std::size_t a = block_index(idx, pa);
        const std::size_t b = block_index(idx, pb);
        const std::size_t c = block_index(idx, pc);
        p_abc[(a * nb + b) * nc + c] += sub.probs()[f];
    }

    std::vector<double> p_ab(na * nb, 0.0), p_bc(nb * nc, 0.0), p_b(nb, 0.0);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t c = 0; c < nc; ++c) {
                const double v = p_abc[(a * nb + b) * nc + c];
                p_ab[a * nb + b] += v;
                p_bc[b * nc + c] += v;
                p_b[b] += v;
            }

    MarkovReport rep;
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) {
            if (p_ab[a * nb + b] <= 0.0) continue;
            for (std::size_t c = 0; c < nc; ++c) {
                const double lhs = p_abc[(a * nb + b) * nc + c] / p_ab[a * nb + b];
                const double rhs = p_b[b] > 0.0 ? p_bc[b * nc + c] / p_b[b] : 0.0;
                rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - rhs));
            }
        }
    rep.holds = rep.max_deviation <= tol;
    return rep;
}

AuxPmf::AuxPmf(prob::JointPmf joint, std::uint32_t p)
    : joint_(std::move(joint)),
      with_z_(joint_.with_mod_sum(kW1, kW2, p)),
      p_(p) {
    if (joint_.dims() != 6)
        throw std::invalid_argument("aux joint must have six variables (Q, W1, W2, X1, X2, Y)");
    prob::require_residue_alphabet(joint_.alphabets()[kW1], p, "W1");
    prob::require_residue_alphabet(joint_.alphabets()[kW2], p, "W2");
    if (joint_.dim_size(kW1) > joint_.dim_size(kX1) || joint_.dim_size(kW2) > joint_.dim_size(kX2))
        throw std::invalid_argument("cardinality condition |W_i| <= |X_i| violated");

    const std::size_t w1[] = {kW1}, qx1[] = {kQ, kX1}, x2w2[] = {kX2, kW2};
    const std::size_t w1x1[] = {kW1, kX1}, qx2[] = {kQ, kX2}, w2[] = {kW2};
    const std::size_t xs[] = {kX1, kX2}, qws[] = {kQ, kW1, kW2}, y[] = {kY};
    const MarkovReport enc1 = markov_verify(joint_, w1, qx1, x2w2);
    const MarkovReport enc2 = markov_verify(joint_, w1x1, qx2, w2);
    const MarkovReport dec = markov_verify(joint_, xs, qws, y);
    max_chain_dev_ = std::max({enc1.max_deviation, enc2.max_deviation, dec.max_deviation});
    chains_verified_ = enc1.holds && enc2.holds && dec.holds;
}

prob::JointPmf AuxPmf::target() const {
    const std::size_t keep[] = {kX1, kX2, kY};
    return joint_.marginal(keep);
}

namespace {
constexpr std::size_t kZ = 6; // index of the appended sum variable
}

BetaConstants beta_constants(const AuxPmf& aux) {
    if (!aux.chains_verified())
        throw std::invalid_argument("aux joint violates the Markov chains beyond tolerance");
    const prob::JointPmf& j = aux.with_z();
    const std::size_t q[] = {AuxPmf::kQ};
    const std::size_t w1[] = {AuxPmf::kW1}, w2[] = {AuxPmf::kW2};
    const std::size_t x1[] = {AuxPmf::kX1}, x2[] = {AuxPmf::kX2};
    const std::size_t xs[] = {AuxPmf::kX1, AuxPmf::kX2};
    const std::size_t y[] = {AuxPmf::kY};
    const std::size_t z[] = {kZ};
    const std::size_t w2q[] = {AuxPmf::kW2, AuxPmf::kQ};
    const std::size_t w1q[] = {AuxPmf::kW1, AuxPmf::kQ};
    const std::size_t xsq[] = {AuxPmf::kX1, AuxPmf::kX2, AuxPmf::kQ};
    const std::size_t ws[] = {AuxPmf::kW1, AuxPmf::kW2};

    const double i_zw2 = prob::mutual_information(j, z, w2, q);
    const double i_zw1 = prob::mutual_information(j, z, w1, q);

    BetaConstants c;
    c.r1 = prob::mutual_information(j, x1, w1, w2q) + i_zw2;
    c.r2 = prob::mutual_information(j, x2, w2, w1q) + i_zw1;
    c.r1c = prob::mutual_information(j, xs, w1, w2q) +
            prob::mutual_information(j, y, w1, xsq) + i_zw2;
    c.r2c = prob::mutual_information(j, xs, w2, w1q) +
            prob::mutual_information(j, y, w2, xsq) + i_zw1;
    // Sum constraint matching the projection of the long-form system: the
    // joint term I(Y; W1 W2 | X1 X2 Q) is what the pairwise rows leave behind.
    c.sum = prob::mutual_information(j, xs, w1, w2q) +
            prob::mutual_information(j, xs, w2, w1q) +
            prob::mutual_information(j, y, ws, xsq) + i_zw1 + i_zw2;
    return c;
}

LinearInequalitySystem beta_region(const AuxPmf& aux) {
    const BetaConstants c = beta_constants(aux);
    LinearInequalitySystem sys({"R1", "R2", "C"});
    sys.add_ge({1, 0, 0}, c.r1);
    sys.add_ge({0, 1, 0}, c.r2);
    sys.add_ge({1, 0, 1}, c.r1c);
    sys.add_ge({0, 1, 1}, c.r2c);
    sys.add_ge({1, 1, 1}, c.sum);
    sys.add_ge({1, 0, 0}, 0.0);
    sys.add_ge({0, 1, 0}, 0.0);
    sys.add_ge({0, 0, 1}, 0.0);
    return sys;
}

LongFormConstants long_form_constants(const AuxPmf& aux) {
    if (!aux.chains_verified())
        throw std::invalid_argument("aux joint violates the Markov chains beyond tolerance");
    const prob::JointPmf& j = aux.with_z();
    const double logp = std::log2(static_cast<double>(aux.field_size()));
    const std::size_t q[] = {AuxPmf::kQ};
    const std::size_t w1[] = {AuxPmf::kW1}, w2[] = {AuxPmf::kW2};
    const std::size_t x1[] = {AuxPmf::kX1}, x2[] = {AuxPmf::kX2};
    const std::size_t xy[] = {AuxPmf::kX1, AuxPmf::kX2, AuxPmf::kY};
    const std::size_t ws[] = {AuxPmf::kW1, AuxPmf::kW2};
    const std::size_t z[] = {kZ};

    LongFormConstants c;
    c.s1 = prob::mutual_information(j, x1, w1, q) - prob::conditional_entropy(j, w1, q) + logp;
    c.s2 = prob::mutual_information(j, x2, w2, q) - prob::conditional_entropy(j, w2, q) + logp;
    c.s1c1 = prob::mutual_information(j, xy, w1, q) - prob::conditional_entropy(j, w1, q) + logp;
    c.s2c2 = prob::mutual_information(j, xy, w2, q) - prob::conditional_entropy(j, w2, q) + logp;
    c.sum = prob::mutual_information(j, ws, xy, q) - prob::conditional_entropy(j, ws, q) + 2.0 * logp;
    c.packing = logp - prob::conditional_entropy(j, z, q);
    return c;
}

LinearInequalitySystem long_form_region(const AuxPmf& aux) {
    const LongFormConstants c = long_form_constants(aux);
    // variable order: R1 R2 C S1 S2 C1 C2
    LinearInequalitySystem sys({"R1", "R2", "C", "S1", "S2", "C1", "C2"});
    sys.add_ge({0, 0, 0, 1, 0, 0, 0}, c.s1);
    sys.add_ge({0, 0, 0, 0, 1, 0, 0}, c.s2);
    sys.add_ge({0, 0, 0, 1, 0, 1, 0}, c.s1c1);
    sys.add_ge({0, 0, 0, 0, 1, 0, 1}, c.s2c2);
    sys.add_ge({0, 0, 0, 1, 1, 1, 1}, c.sum);
    sys.add_eq({-1, 1, 0, 1, -1, 0, 0}, 0.0);          // S1 - R1 = S2 - R2
    sys.add_le({-1, 0, 0, 1, 0, 0, 0}, c.packing);     // S1 - R1 <= log p - H(Z|Q)
    sys.add_le({0, -1, 0, 0, 1, 0, 0}, c.packing);
    sys.add_ge({1, 0, 0, 0, 0, 0, 0}, 0.0);            // 0 <= R1
    sys.add_ge({-1, 0, 0, 1, 0, 0, 0}, 0.0);           // R1 <= S1
    sys.add_ge({0, 1, 0, 0, 0, 0, 0}, 0.0);
    sys.add_ge({0, -1, 0, 0, 1, 0, 0}, 0.0);
    sys.add_ge({0, 0, 1, 0, 0, -1, -1}, 0.0);          // C1 + C2 <= C
    sys.add_ge({0, 0, 1, 0, 0, 0, 0}, 0.0);
    sys.add_ge({0, 0, 0, 0, 0, 1, 0}, 0.0);
    sys.add_ge({0, 0, 0, 0, 0, 0, 1}, 0.0);
    return sys;
}

double bsc_convolve(double a, double b) {
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0)
        throw std::invalid_argument("bsc_convolve arguments out of [0,1]");
    return a * (1.0 - b) + b * (1.0 - a);
}

AuxPmf example1_aux(double p_flip, double q_flip, double theta1, double theta2) {
    if (p_flip < 0.0 || p_flip > 0.5) throw std::invalid_argument("p_flip out of [0, 0.5]");
    if (q_flip < 0.0 || q_flip > 0.5) throw std::invalid_argument("q_flip out of [0, 0.5]");
    if (theta1 < 0.0 || theta1 > 0.5 || theta2 < 0.0 || theta2 > 0.5)
        throw std::invalid_argument("theta out of [0, 0.5]");
    const double theta_bar = bsc_convolve(theta1, theta2);
    if (theta_bar > q_flip + 1e-12)
        throw std::invalid_argument("infeasible test channels: combined noise exceeds target noise");
    const double q_prime = theta_bar >= q_flip ? 0.0
                          : (q_flip - theta_bar) / (1.0 - 2.0 * theta_bar);

    auto bsc = [](double f, std::size_t in, std::size_t out) {
        return in == out ? 1.0 - f : f;
    };

    const prob::Alphabet bits = {"0", "1"};
    std::vector<prob::Alphabet> alphas = {{"q0"}, bits, bits, bits, bits, bits};
    // dims: Q W1 W2 X1 X2 Y, row-major with Y fastest
    std::vector<double> table;
    table.reserve(32);
    for (std::size_t w1 = 0; w1 < 2; ++w1)
        for (std::size_t w2 = 0; w2 < 2; ++w2)
            for (std::size_t x1 = 0; x1 < 2; ++x1)
                for (std::size_t x2 = 0; x2 < 2; ++x2)
                    for (std::size_t y = 0; y < 2; ++y) {
                        const std::size_t z = (w1 + w2) % 2;
                        table.push_back(0.5 * bsc(p_flip, x1, x2) * bsc(theta1, x1, w1) *
                                        bsc(theta2, x2, w2) * bsc(q_prime, z, y));
                    }
    return AuxPmf(prob::JointPmf(std::move(alphas), std::move(table)), 2);
}

namespace {

double example1_theta_max(double q_flip) {
    // largest symmetric theta with convolve(theta, theta) <= q_flip
    if (q_flip <= 0.0) return 0.0;
    return (1.0 - std::sqrt(1.0 - 2.0 * q_flip)) / 2.0;
}

Example1Result minimize_over_theta(double p_flip, double q_flip, std::size_t grid_points,
                                   const std::function<double(const AuxPmf&)>& objective) {
    const double theta_max = example1_theta_max(q_flip);
    Example1Result res;
    res.min_sum = std::numeric_limits<double>::infinity();

    auto evaluate = [&](double theta) {
        const AuxPmf aux = example1_aux(p_flip, q_flip, theta, theta);
        return objective(aux);
    };

    const std::size_t points = theta_max == 0.0 ? 1 : std::max<std::size_t>(grid_points, 2);
    for (std::size_t i = 0; i < points; ++i) {
        const double theta = points == 1 ? 0.0
                             : theta_max * static_cast<double>(i) / static_cast<double>(points - 1);
        Example1Result::SweepPoint pt{theta, std::numeric_limits<double>::quiet_NaN(), false};
        try {
            pt.sum_rate = evaluate(theta);
            pt.feasible = true;
        } catch (const std::invalid_argument&) {
        }
        if (pt.feasible && pt.sum_rate < res.min_sum) {
            res.min_sum = pt.sum_rate;
            res.argmin_theta = theta;
        }
        res.sweep.push_back(pt);
    }

    if (points > 2) {
        // golden-section refinement around the best grid point
        const double step = theta_max / static_cast<double>(points - 1);
        double lo = std::max(0.0, res.argmin_theta - step);
        double hi = std::min(theta_max, res.argmin_theta + step);
        const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        double f1 = evaluate(x1), f2 = evaluate(x2);
        for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
            if (f1 <= f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = evaluate(x1);
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = evaluate(x2);
            }
        }
        const double theta = (lo + hi) / 2.0;
        const double val = evaluate(theta);
        if (val < res.min_sum) {
            res.min_sum = val;
            res.argmin_theta = theta;
        }
    }
    return res;
}

} // namespace

Example1Result example1_structured_min(double p_flip, double q_flip, std::size_t grid_points) {
    return minimize_over_theta(p_flip, q_flip, grid_points, [](const AuxPmf& aux) {
        return min_sum_rate(beta_region(aux)).value;
    });
}

double unstructured_sum_bound(const AuxPmf& aux) {
    const prob::JointPmf& j = aux.joint();
    const std::size_t q[] = {AuxPmf::kQ};
    const std::size_t xy[] = {AuxPmf::kX1, AuxPmf::kX2, AuxPmf::kY};
    const std::size_t ws[] = {AuxPmf::kW1, AuxPmf::kW2};
    return prob::mutual_information(j, xy, ws, q);
}

Example1Result example1_unstructured_sum_min(double p_flip, double q_flip,
                                             std::size_t grid_points) {
    return minimize_over_theta(p_flip, q_flip, grid_points, unstructured_sum_bound);
}

} // namespace ucs::region
