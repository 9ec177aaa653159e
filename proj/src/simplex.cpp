#include "mcsp/simplex.hpp"

#include "mcsp/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcsp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kRatioTieTol = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarState : unsigned char { basic, at_lower, at_upper };

class BoundedSimplex {
  public:
    BoundedSimplex(const IpModel& model, const LpOptions& options)
        : opts_(options),
          m_(model.num_constraints()),
          structural_(model.num_vars()),
          total_(structural_ + m_) {
        col_ptr_.assign(static_cast<std::size_t>(total_) + 1, 0);
        lower_.assign(static_cast<std::size_t>(total_), 0.0);
        upper_.assign(static_cast<std::size_t>(total_), 1.0);
        cost_.assign(static_cast<std::size_t>(total_), 0.0);

        // Rows with negative rhs are negated so the artificial start is feasible.
        std::vector<double> row_sign(static_cast<std::size_t>(m_), 1.0);
        for (int r = 0; r < m_; ++r)
            if (model.constraints[static_cast<std::size_t>(r)].rhs < 0) row_sign[static_cast<std::size_t>(r)] = -1.0;

        std::vector<std::vector<IpTerm>> by_col(static_cast<std::size_t>(total_));
        for (int r = 0; r < m_; ++r)
            for (const auto& term : model.constraints[static_cast<std::size_t>(r)].terms)
                by_col[static_cast<std::size_t>(term.var)].push_back({r, row_sign[static_cast<std::size_t>(r)] * term.coeff});
        for (int j = 0; j < structural_; ++j) {
            const auto& v = model.variables[static_cast<std::size_t>(j)];
            lower_[static_cast<std::size_t>(j)] = v.lower;
            upper_[static_cast<std::size_t>(j)] = v.upper;
            cost_[static_cast<std::size_t>(j)] = v.objective;
        }
        // artificial j + structural_ pairs with row j
        for (int r = 0; r < m_; ++r) {
            by_col[static_cast<std::size_t>(structural_ + r)].push_back({r, 1.0});
            upper_[static_cast<std::size_t>(structural_ + r)] = kInf;
        }
        for (int j = 0; j < total_; ++j)
            col_ptr_[static_cast<std::size_t>(j) + 1] =
                col_ptr_[static_cast<std::size_t>(j)] + static_cast<long>(by_col[static_cast<std::size_t>(j)].size());
        row_ind_.resize(static_cast<std::size_t>(col_ptr_.back()));
        val_.resize(static_cast<std::size_t>(col_ptr_.back()));
        for (int j = 0; j < total_; ++j) {
            auto at = col_ptr_[static_cast<std::size_t>(j)];
            for (const auto& t : by_col[static_cast<std::size_t>(j)]) {
                row_ind_[static_cast<std::size_t>(at)] = t.var;
                val_[static_cast<std::size_t>(at)] = t.coeff;
                ++at;
            }
        }

        rhs_.resize(m_);
        for (int r = 0; r < m_; ++r)
            rhs_(r) = row_sign[static_cast<std::size_t>(r)] * model.constraints[static_cast<std::size_t>(r)].rhs;

        max_iters_ = options.max_iters > 0
                         ? options.max_iters
                         : std::max<long>(5000, 60L * (m_ + structural_));
    }

    LpSolution run() {
        start_basis();

        // Phase I: minimize the artificial mass.
        phase_cost_.assign(static_cast<std::size_t>(total_), 0.0);
        for (int r = 0; r < m_; ++r) phase_cost_[static_cast<std::size_t>(structural_ + r)] = 1.0;
        const auto st1 = iterate();
        if (st1 == LpStatus::iteration_limit) return finish(LpStatus::iteration_limit);
        if (current_objective() > 1e3 * opts_.tol_feas * (1 + m_))
            return finish(LpStatus::infeasible);

        // Pin all artificials at zero for phase II; basic ones stay at level 0.
        for (int r = 0; r < m_; ++r) {
            const auto a = static_cast<std::size_t>(structural_ + r);
            upper_[a] = 0.0;
            if (state_[a] == VarState::at_upper) state_[a] = VarState::at_lower;
        }
        refactor();

        for (int j = 0; j < total_; ++j) phase_cost_[static_cast<std::size_t>(j)] = cost_[static_cast<std::size_t>(j)];
        stall_ = 0;
        const auto st2 = iterate();
        return finish(st2);
    }

  private:
    void start_basis() {
        state_.assign(static_cast<std::size_t>(total_), VarState::at_lower);
        basis_.resize(static_cast<std::size_t>(m_));
        binv_ = Eigen::MatrixXd::Identity(m_, m_);
        xb_ = rhs_;
        for (int r = 0; r < m_; ++r) {
            basis_[static_cast<std::size_t>(r)] = structural_ + r;
            state_[static_cast<std::size_t>(structural_ + r)] = VarState::basic;
        }
    }

    double current_objective() const {
        double obj = 0.0;
        for (int r = 0; r < m_; ++r) obj += phase_cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] * xb_(r);
        for (int j = 0; j < total_; ++j)
            if (state_[static_cast<std::size_t>(j)] == VarState::at_upper)
                obj += phase_cost_[static_cast<std::size_t>(j)] * upper_[static_cast<std::size_t>(j)];
        return obj;
    }

    double column_dot(int j, const Eigen::VectorXd& y) const {
        double acc = 0.0;
        for (auto p = col_ptr_[static_cast<std::size_t>(j)]; p < col_ptr_[static_cast<std::size_t>(j) + 1]; ++p)
            acc += val_[static_cast<std::size_t>(p)] * y(row_ind_[static_cast<std::size_t>(p)]);
        return acc;
    }

    Eigen::VectorXd ftran(int j) const {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
        for (auto p = col_ptr_[static_cast<std::size_t>(j)]; p < col_ptr_[static_cast<std::size_t>(j) + 1]; ++p)
            w += val_[static_cast<std::size_t>(p)] * binv_.col(row_ind_[static_cast<std::size_t>(p)]);
        return w;
    }

    void refactor() {
        Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
        for (int r = 0; r < m_; ++r) {
            const int j = basis_[static_cast<std::size_t>(r)];
            for (auto p = col_ptr_[static_cast<std::size_t>(j)]; p < col_ptr_[static_cast<std::size_t>(j) + 1]; ++p)
                basis_matrix(row_ind_[static_cast<std::size_t>(p)], r) = val_[static_cast<std::size_t>(p)];
        }
        binv_ = basis_matrix.partialPivLu().inverse();

        Eigen::VectorXd effective = rhs_;
        for (int j = 0; j < total_; ++j) {
            if (state_[static_cast<std::size_t>(j)] != VarState::at_upper) continue;
            const double u = upper_[static_cast<std::size_t>(j)];
            if (u == 0.0) continue;
            for (auto p = col_ptr_[static_cast<std::size_t>(j)]; p < col_ptr_[static_cast<std::size_t>(j) + 1]; ++p)
                effective(row_ind_[static_cast<std::size_t>(p)]) -= val_[static_cast<std::size_t>(p)] * u;
        }
        xb_ = binv_ * effective;
    }

    LpStatus iterate() {
        double last_obj = current_objective();
        Eigen::VectorXd cb(m_);
        while (true) {
            if (iterations_ >= max_iters_) return LpStatus::iteration_limit;
            if (iterations_ > 0 && iterations_ % 1000 == 0) refactor();

            for (int r = 0; r < m_; ++r) cb(r) = phase_cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])];
            const Eigen::VectorXd y = binv_.transpose() * cb;

            int entering = -1;
            double best_score = opts_.tol_opt;
            for (int j = 0; j < total_; ++j) {
                const auto js = static_cast<std::size_t>(j);
                if (state_[js] == VarState::basic || lower_[js] >= upper_[js]) continue;
                const double d = phase_cost_[js] - column_dot(j, y);
                const double score = state_[js] == VarState::at_lower ? -d : d;
                if (score > best_score) {
                    best_score = score;
                    entering = j;
                    if (bland_) break; // smallest favorable index
                }
            }
            if (entering < 0) return LpStatus::optimal;

            const auto ej = static_cast<std::size_t>(entering);
            const int dir = state_[ej] == VarState::at_lower ? 1 : -1;
            const Eigen::VectorXd w = ftran(entering);

            // Ratio test: entering moves by t >= 0, basics respond with -dir*t*w.
            double t_best = upper_[ej] - lower_[ej];
            int leave_row = -1;
            double leave_pivot = 0.0;
            bool leave_to_upper = false;
            for (int r = 0; r < m_; ++r) {
                const double wr = w(r);
                if (std::abs(wr) <= kPivotTol) continue;
                const auto bvar = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
                const double rate = -dir * wr;
                double t_r;
                bool to_upper;
                if (rate < 0) {
                    t_r = (xb_(r) - lower_[bvar]) / -rate;
                    to_upper = false;
                } else {
                    if (upper_[bvar] == kInf) continue;
                    t_r = (upper_[bvar] - xb_(r)) / rate;
                    to_upper = true;
                }
                if (t_r < 0) t_r = 0; // basic slightly outside its bound
                const bool better =
                    t_r < t_best - kRatioTieTol ||
                    (t_r < t_best + kRatioTieTol && leave_row >= 0 &&
                     (bland_ ? basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave_row)]
                             : std::abs(wr) > std::abs(leave_pivot)));
                if (better) {
                    t_best = t_r;
                    leave_row = r;
                    leave_pivot = wr;
                    leave_to_upper = to_upper;
                }
            }
            if (t_best == kInf)
                throw Error(ErrorKind::internal, "unbounded LP direction in a bounded model");

            ++iterations_;
            if (leave_row < 0) {
                // Bound flip, no basis change.
                xb_ -= dir * t_best * w;
                state_[ej] = state_[ej] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
            } else {
                const double enter_value =
                    (dir > 0 ? lower_[ej] : upper_[ej]) + dir * t_best;
                xb_ -= dir * t_best * w;
                const auto leaving = static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave_row)]);
                state_[leaving] = leave_to_upper ? VarState::at_upper : VarState::at_lower;
                // Once an artificial leaves the basis it is pinned at zero.
                if (static_cast<int>(leaving) >= structural_) upper_[leaving] = 0.0;

                basis_[static_cast<std::size_t>(leave_row)] = entering;
                state_[ej] = VarState::basic;
                xb_(leave_row) = enter_value;

                Eigen::RowVectorXd prow = binv_.row(leave_row);
                Eigen::VectorXd u = w / leave_pivot;
                u(leave_row) = 1.0 - 1.0 / leave_pivot;
                binv_.noalias() -= u * prow;
            }

            const double obj = current_objective();
            if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
                last_obj = obj;
                stall_ = 0;
            } else if (!bland_ && ++stall_ > stall_limit()) {
                bland_ = true;
                bland_engaged_ = true;
            }
        }
    }

    long stall_limit() const { return std::max<long>(200, 2L * m_); }

    LpSolution finish(LpStatus status) {
        LpSolution sol;
        sol.status = status;
        sol.iterations = iterations_;
        sol.bland_engaged = bland_engaged_;
        if (status != LpStatus::optimal) return sol;

        refactor(); // clean basis representation before extraction
        std::vector<double> full(static_cast<std::size_t>(total_), 0.0);
        for (int j = 0; j < total_; ++j)
            full[static_cast<std::size_t>(j)] = state_[static_cast<std::size_t>(j)] == VarState::at_upper
                                                    ? upper_[static_cast<std::size_t>(j)]
                                                    : lower_[static_cast<std::size_t>(j)];
        for (int r = 0; r < m_; ++r) full[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = xb_(r);

        sol.values.assign(full.begin(), full.begin() + structural_);
        double obj = 0.0;
        for (int j = 0; j < structural_; ++j) {
            auto& v = sol.values[static_cast<std::size_t>(j)];
            v = std::clamp(v, lower_[static_cast<std::size_t>(j)], upper_[static_cast<std::size_t>(j)]);
            obj += cost_[static_cast<std::size_t>(j)] * v;
        }
        sol.objective = obj;
        return sol;
    }

    LpOptions opts_;
    int m_;
    int structural_;
    int total_;
    std::vector<long> col_ptr_;
    std::vector<int> row_ind_;
    std::vector<double> val_;
    std::vector<double> lower_, upper_, cost_, phase_cost_;
    Eigen::VectorXd rhs_, xb_;
    Eigen::MatrixXd binv_;
    std::vector<int> basis_;
    std::vector<VarState> state_;
    long iterations_ = 0;
    long max_iters_ = 0;
    long stall_ = 0;
    bool bland_ = false;
    bool bland_engaged_ = false;
};

} // namespace

LpSolution solve_lp(const IpModel& model, const LpOptions& options) {
    if (model.num_vars() < 1)
        throw Error(ErrorKind::invalid_parameter, "model has no variables");
    for (const auto& v : model.variables)
        if (v.lower < 0.0 || v.upper > 1.0 || v.lower > v.upper)
            throw Error(ErrorKind::invalid_parameter, "variable bounds outside [0, 1]: " + v.name);
    BoundedSimplex simplex(model, options);
    return simplex.run();
}

} // namespace mcsp
