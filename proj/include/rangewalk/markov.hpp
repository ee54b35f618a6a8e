#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rangewalk {

using Matrix = std::vector<std::vector<double>>;

class ChainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t max_chain_states = 16;
inline constexpr double row_sum_tolerance = 1e-12;
inline constexpr double stationary_residual_tolerance = 1e-10;

/// Throws ChainError unless `transition` is square with entries in [0,1] and unit row sums.
inline void require_stochastic(const Matrix& transition)
{
    const std::size_t n = transition.size();
    if (n == 0)
        throw ChainError("transition matrix is empty");
    if (n > max_chain_states)
        throw ChainError("transition matrix has more than 16 states");
    for (std::size_t i = 0; i < n; ++i) {
        if (transition[i].size() != n)
            throw ChainError("transition matrix is not square");
        double sum = 0;
        for (double v : transition[i]) {
            if (!(v >= 0.0 && v <= 1.0))
                throw ChainError("transition entry outside [0,1] in row " + std::to_string(i));
            sum += v;
        }
        if (std::fabs(sum - 1.0) > row_sum_tolerance)
            throw ChainError("row " + std::to_string(i) + " does not sum to 1");
    }
}

/// Every state reaches every other along positive-probability edges.
inline bool is_irreducible(const Matrix& transition)
{
    const std::size_t n = transition.size();
    for (std::size_t start = 0; start < n; ++start) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const std::size_t s = stack.back();
            stack.pop_back();
            for (std::size_t t = 0; t < n; ++t) {
                if (transition[s][t] > 0.0 && !seen[t]) {
                    seen[t] = true;
                    ++reached;
                    stack.push_back(t);
                }
            }
        }
        if (reached != n)
            return false;
    }
    return true;
}

/// max_j |(πP)_j − π_j|
inline double stationary_residual(const Matrix& transition, const std::vector<double>& pi)
{
    const std::size_t n = transition.size();
    double worst = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double v = 0;
        for (std::size_t i = 0; i < n; ++i)
            v += pi[i] * transition[i][j];
        worst = std::max(worst, std::fabs(v - pi[j]));
    }
    return worst;
}

/// Unique π with πP = π and Σπ = 1 for an irreducible stochastic matrix.
/// Solved directly: (Pᵀ − I)π = 0 with one balance row swapped for the normalization.
inline std::vector<double> stationary_distribution(const Matrix& transition)
{
    require_stochastic(transition);
    if (!is_irreducible(transition))
        throw ChainError("chain is reducible: stationary distribution is not unique");

    const auto n = static_cast<Eigen::Index>(transition.size());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = transition[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - (i == j ? 1.0 : 0.0);
    a.row(n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;
    Eigen::VectorXd x = a.fullPivLu().solve(b);

    std::vector<double> pi(transition.size());
    double sum = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        pi[static_cast<std::size_t>(i)] = std::max(0.0, x(i));
        sum += pi[static_cast<std::size_t>(i)];
    }
    for (double& v : pi)
        v /= sum;
    if (stationary_residual(transition, pi) > stationary_residual_tolerance)
        throw ChainError("stationary solve did not reach the residual tolerance");
    return pi;
}

/// Finite-state Markov chain whose states are increments in {−1, 0, +1}.
struct MarkovIncrementChain {
    std::vector<int> increments;
    Matrix transition;
    /// Law of the first increment. Empty means the stationary distribution.
    std::vector<double> initial;

    void validate() const
    {
        if (increments.size() != transition.size())
            throw ChainError("one increment per chain state is required");
        for (int s : increments)
            if (s < -1 || s > 1)
                throw ChainError("chain increments must lie in {-1,0,1}");
        require_stochastic(transition);
        if (!is_irreducible(transition))
            throw ChainError("chain is reducible");
        if (!initial.empty()) {
            if (initial.size() != increments.size())
                throw ChainError("initial distribution has the wrong size");
            double sum = 0;
            for (double v : initial) {
                if (!(v >= 0.0 && v <= 1.0))
                    throw ChainError("initial probability outside [0,1]");
                sum += v;
            }
            if (std::fabs(sum - 1.0) > row_sum_tolerance)
                throw ChainError("initial distribution does not sum to 1");
        }
    }

    /// E_π[ξ] under the stationary law.
    double stationary_mean() const
    {
        const auto pi = stationary_distribution(transition);
        double mean = 0;
        for (std::size_t i = 0; i < pi.size(); ++i)
            mean += pi[i] * increments[i];
        return mean;
    }

    /// Two states {+1, −1} with switching probabilities.
    static MarkovIncrementChain two_state(double up_to_down, double down_to_up)
    {
        return {{+1, -1}, {{1.0 - up_to_down, up_to_down}, {down_to_up, 1.0 - down_to_up}}, {}};
    }

    /// I.i.d. increments: every row equals (p_up, p_stay, p_down) over states {+1, 0, −1}.
    /// States with zero probability are dropped so the chain stays irreducible.
    static MarkovIncrementChain iid(double p_up, double p_stay, double p_down)
    {
        MarkovIncrementChain chain;
        std::vector<double> row;
        const double probs[3] = {p_up, p_stay, p_down};
        const int steps[3] = {+1, 0, -1};
        for (int i = 0; i < 3; ++i) {
            if (probs[i] > 0.0) {
                chain.increments.push_back(steps[i]);
                row.push_back(probs[i]);
            }
        }
        chain.transition.assign(row.size(), row);
        return chain;
    }
};

} // namespace rangewalk
