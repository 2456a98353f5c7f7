#include "xva/convert/conversion.hpp"

#include "xva/common/require.hpp"

namespace xva::convert {

CalibrationResiduals CalibrationResiduals::linear_cds(std::size_t n, double lgd,
                                                      const Eigen::VectorXd& residual_at_point) {
    XVA_REQUIRE(lgd > 0.0 && lgd <= 1.0, "linear_cds: lgd " << lgd << " outside (0,1]");
    CalibrationResiduals r;
    r.b = residual_at_point;
    r.db_dtheta = lgd * Eigen::MatrixXd::Identity(n, n);
    r.db_dc = -Eigen::MatrixXd::Identity(n, n);
    r.db_dq = Eigen::MatrixXd::Zero(n, 0);
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(n, n);
    r.d2b_dtheta_dtheta.assign(n, zero);
    r.d2b_dc_dtheta.assign(n, zero);
    r.d2b_dc_dc.assign(n, zero);
    return r;
}

ImplicitConversion::ImplicitConversion(CalibrationResiduals res) : res_(std::move(res)) {
    const auto n = res_.db_dtheta.rows();
    XVA_REQUIRE(res_.db_dtheta.cols() == n, "implicit conversion: db/dtheta not square");
    XVA_REQUIRE(res_.b.size() == n, "implicit conversion: residual size mismatch");
    XVA_REQUIRE(res_.b.lpNorm<Eigen::Infinity>() <= 1e-10,
                "implicit conversion: residual |b| = " << res_.b.lpNorm<Eigen::Infinity>()
                                                       << " not at a calibrated point");
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(res_.db_dtheta);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    condition_ = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    XVA_REQUIRE(smin > 1e-14 * smax, "implicit conversion: db/dtheta singular (condition number "
                                         << condition_ << ")");
    lu_.compute(res_.db_dtheta);
    lu_t_.compute(res_.db_dtheta.transpose());
    dtheta_dc_ = -lu_.solve(res_.db_dc);
    dtheta_dq_ = res_.db_dq.cols() > 0 ? Eigen::MatrixXd(-lu_.solve(res_.db_dq))
                                       : Eigen::MatrixXd::Zero(n, 0);
}

Eigen::RowVectorXd ImplicitConversion::solve_left(const Eigen::RowVectorXd& v) const {
    // v M^{-1} = (M^T \ v^T)^T
    return lu_t_.solve(v.transpose()).transpose();
}

Eigen::RowVectorXd ImplicitConversion::to_credit(const Eigen::RowVectorXd& p_theta) const {
    return -solve_left(p_theta) * res_.db_dc;
}

Eigen::RowVectorXd ImplicitConversion::to_rates(const Eigen::RowVectorXd& p_theta,
                                                const Eigen::RowVectorXd& p_psi,
                                                const Eigen::MatrixXd& dpsi_dq) const {
    Eigen::RowVectorXd out = p_psi * dpsi_dq;
    if (res_.db_dq.cols() > 0) out += p_theta * dtheta_dq_;
    return out;
}

Eigen::MatrixXd ImplicitConversion::curvature_block(
    const std::vector<Eigen::MatrixXd>& d2b_dm_dtheta,
    const std::vector<Eigen::MatrixXd>& d2b_dm_dc, const Eigen::MatrixXd& dtheta_dm,
    const Eigen::RowVectorXd& p_theta) const {
    const std::size_t n_m = d2b_dm_dtheta.size();
    const Eigen::RowVectorXd w = solve_left(p_theta); // p_theta M^{-1}
    const Eigen::Index n_theta = res_.db_dtheta.cols();
    const Eigen::Index n_c = res_.db_dc.cols();
    Eigen::MatrixXd block(n_m, n_c);
    for (std::size_t j = 0; j < n_m; ++j) {
        const Eigen::VectorXd s_j = dtheta_dm.col(j);
        // direction-j derivatives of db/dc and db/dtheta
        Eigen::MatrixXd dA = d2b_dm_dc[j];
        for (Eigen::Index m = 0; m < n_c; ++m) dA.col(m) += res_.d2b_dc_dtheta[m] * s_j;
        Eigen::MatrixXd dM = d2b_dm_dtheta[j];
        for (Eigen::Index k = 0; k < n_theta; ++k) dM += s_j(k) * res_.d2b_dtheta_dtheta[k];
        block.row(j) = -(w * (dA + dM * dtheta_dc_));
    }
    return block;
}

Eigen::MatrixXd ImplicitConversion::market_gamma(const Eigen::RowVectorXd& p_theta,
                                                 const Eigen::MatrixXd& p_theta_theta) const {
    Eigen::MatrixXd gamma = dtheta_dc_.transpose() * p_theta_theta * dtheta_dc_;
    gamma += curvature_block(res_.d2b_dc_dtheta, res_.d2b_dc_dc, dtheta_dc_, p_theta);
    return 0.5 * (gamma + gamma.transpose());
}

Eigen::MatrixXd ImplicitConversion::market_cross_gamma(const Eigen::RowVectorXd& p_theta,
                                                       const Eigen::MatrixXd& p_theta_theta,
                                                       const Eigen::MatrixXd& p_psi_theta,
                                                       const Eigen::MatrixXd& dpsi_dq) const {
    // cross(i, j) = d2P / dc_i dq_j
    Eigen::MatrixXd cross = dtheta_dc_.transpose() * p_psi_theta * dpsi_dq;
    if (res_.db_dq.cols() > 0) {
        cross += dtheta_dc_.transpose() * p_theta_theta * dtheta_dq_;
        if (!res_.d2b_dq_dtheta.empty())
            cross += curvature_block(res_.d2b_dq_dtheta, res_.d2b_dq_dc, dtheta_dq_, p_theta)
                         .transpose();
    }
    return cross;
}

double first_order_fd_direction(const Eigen::RowVectorXd& p_theta, const CalibrationMap& calibrate,
                                const Eigen::VectorXd& m, const Eigen::VectorXd& direction,
                                double h) {
    XVA_REQUIRE(h > 0.0, "first_order_fd_direction: step must be positive");
    const Eigen::VectorXd increment = (calibrate(m + h * direction) - calibrate(m)) / h;
    return (p_theta * increment).value();
}

Eigen::RowVectorXd second_order_fd_direction(
    const Eigen::RowVectorXd& p_theta, const Eigen::MatrixXd& p_theta_theta,
    const std::function<CalibrationResiduals(const Eigen::VectorXd&)>& residuals_at,
    const CalibrationMap& calibrate, const Eigen::VectorXd& m, const Eigen::VectorXd& direction,
    double h) {
    XVA_REQUIRE(h > 0.0, "second_order_fd_direction: step must be positive");
    const Eigen::VectorXd dalpha = calibrate(m + h * direction) - calibrate(m);
    const ImplicitConversion base(residuals_at(m));
    const ImplicitConversion bumped(residuals_at(m + h * direction));
    const Eigen::RowVectorXd lhs = (p_theta_theta * dalpha).transpose() - p_theta;
    return (base.to_credit(lhs) + bumped.to_credit(p_theta)) / h;
}

} // namespace xva::convert
