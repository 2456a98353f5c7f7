#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace xva::convert {

// Perfect-fit calibration system b(c, q, theta(c, q)) = 0, evaluated at the
// calibrated point, with the derivative blocks the conversion formulas need.
// Second-derivative tensors are stored as slices along the differentiation
// index of the name: d2b_dc_dtheta[j](r, l) = d2 b_r / dtheta_l dc_j.
struct CalibrationResiduals {
    Eigen::VectorXd b;
    Eigen::MatrixXd db_dtheta; // n x n_theta
    Eigen::MatrixXd db_dc;     // n x n_c
    Eigen::MatrixXd db_dq;     // n x n_q
    std::vector<Eigen::MatrixXd> d2b_dtheta_dtheta; // size n_theta
    std::vector<Eigen::MatrixXd> d2b_dc_dtheta;     // size n_c
    std::vector<Eigen::MatrixXd> d2b_dc_dc;         // size n_c
    std::vector<Eigen::MatrixXd> d2b_dq_dtheta;     // size n_q
    std::vector<Eigen::MatrixXd> d2b_dq_dc;         // size n_q

    static CalibrationResiduals linear_cds(std::size_t n, double lgd,
                                           const Eigen::VectorXd& residual_at_point);
};

// Implicit-function conversion around one calibrated point. One factorization
// of db/dtheta is shared by every first-order propagation and by both Hessian
// addend assemblies.
class ImplicitConversion {
  public:
    explicit ImplicitConversion(CalibrationResiduals res);

    double condition_number() const { return condition_; }
    const CalibrationResiduals& residuals() const { return res_; }

    const Eigen::MatrixXd& dtheta_dc() const { return dtheta_dc_; }
    const Eigen::MatrixXd& dtheta_dq() const { return dtheta_dq_; }

    // p_theta dtheta/dc (the reusable first-order propagation map).
    Eigen::RowVectorXd to_credit(const Eigen::RowVectorXd& p_theta) const;
    // p_theta dtheta/dq + p_psi dpsi/dq.
    Eigen::RowVectorXd to_rates(const Eigen::RowVectorXd& p_theta,
                                const Eigen::RowVectorXd& p_psi,
                                const Eigen::MatrixXd& dpsi_dq) const;

    // d2P/dc2 from the model gradient and Hessian in theta; symmetrized.
    Eigen::MatrixXd market_gamma(const Eigen::RowVectorXd& p_theta,
                                 const Eigen::MatrixXd& p_theta_theta) const;

    // d2P/dc dq, with p_psi_theta(k, i) = d2p/dtheta_k dpsi_i.
    Eigen::MatrixXd market_cross_gamma(const Eigen::RowVectorXd& p_theta,
                                       const Eigen::MatrixXd& p_theta_theta,
                                       const Eigen::MatrixXd& p_psi_theta,
                                       const Eigen::MatrixXd& dpsi_dq) const;

  private:
    Eigen::RowVectorXd solve_left(const Eigen::RowVectorXd& v) const; // v M^{-1}
    Eigen::MatrixXd curvature_block(const std::vector<Eigen::MatrixXd>& d2b_dm_dtheta,
                                    const std::vector<Eigen::MatrixXd>& d2b_dm_dc,
                                    const Eigen::MatrixXd& dtheta_dm,
                                    const Eigen::RowVectorXd& p_theta) const;

    CalibrationResiduals res_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_, lu_t_;
    Eigen::MatrixXd dtheta_dc_, dtheta_dq_;
    double condition_ = 0.0;
};

// Directional finite-difference conversions; `calibrate` maps quotes to the
// model vector theta.
using CalibrationMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

double first_order_fd_direction(const Eigen::RowVectorXd& p_theta, const CalibrationMap& calibrate,
                                const Eigen::VectorXd& m, const Eigen::VectorXd& direction,
                                double h);

// Directional second-order row: d2P/dm2 . mu, assembled from two first-order
// propagations as bar_alpha(p_aa [alpha(m+h mu) - alpha(m)] - p_a, m)
//                + bar_alpha(p_a, m + h mu).
Eigen::RowVectorXd second_order_fd_direction(
    const Eigen::RowVectorXd& p_theta, const Eigen::MatrixXd& p_theta_theta,
    const std::function<CalibrationResiduals(const Eigen::VectorXd&)>& residuals_at,
    const CalibrationMap& calibrate, const Eigen::VectorXd& m, const Eigen::VectorXd& direction,
    double h);

} // namespace xva::convert
