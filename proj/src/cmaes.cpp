// SPDX-License-Identifier: Apache-2.0
//
// CMA-ES following Hansen's tutorial (arXiv:1604.00772), default parameters,
// with rank-one and rank-mu updates and cumulative step-size adaptation.
#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "rodeo/error.hpp"
#include "rodeo/rng.hpp"
#include "rodeo/search.hpp"

namespace rodeo {

CmaesResult cmaes_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& mean0, double sigma0, const CmaesOptions& options,
                           std::uint64_t seed) {
  const auto n = mean0.size();
  if (n == 0) throw DomainError("cmaes needs at least one dimension");
  if (!(sigma0 > 0.0)) throw DomainError("cmaes needs a positive initial step");
  const double dn = static_cast<double>(n);

  const std::size_t lambda =
      options.population ? options.population : 4 + static_cast<std::size_t>(3.0 * std::log(dn));
  const std::size_t mu = lambda / 2;
  Eigen::VectorXd w(static_cast<Eigen::Index>(mu));
  for (std::size_t i = 0; i < mu; ++i)
    w(static_cast<Eigen::Index>(i)) = std::log((lambda + 1.0) / 2.0) - std::log(i + 1.0);
  w /= w.sum();
  const double mueff = 1.0 / w.squaredNorm();

  const double cc = (4.0 + mueff / dn) / (dn + 4.0 + 2.0 * mueff / dn);
  const double cs = (mueff + 2.0) / (dn + mueff + 5.0);
  const double c1 = 2.0 / ((dn + 1.3) * (dn + 1.3) + mueff);
  const double cmu =
      std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((dn + 2.0) * (dn + 2.0) + mueff));
  const double damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (dn + 1.0)) - 1.0) + cs;
  const double chi_n = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));

  Rng rng(seed);
  Eigen::VectorXd mean = mean0;
  double sigma = sigma0;
  Eigen::VectorXd pc = Eigen::VectorXd::Zero(n), ps = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd C = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd D = Eigen::VectorXd::Ones(n);

  CmaesResult best;
  best.x = mean0;
  best.value = f(mean0);
  best.evaluations = 1;

  std::deque<double> history; // best value per generation
  const std::size_t history_len = 10 + static_cast<std::size_t>(std::ceil(30.0 * dn / lambda));
  std::vector<Eigen::VectorXd> z(lambda), y(lambda);
  std::vector<double> fit(lambda);
  std::vector<std::size_t> order(lambda);

  for (std::size_t gen = 1;; ++gen) {
    if (best.evaluations + lambda > options.max_evaluations) {
      best.stop = CmaesStop::budget;
      return best;
    }
    for (std::size_t k = 0; k < lambda; ++k) {
      z[k].resize(n);
      for (Eigen::Index i = 0; i < n; ++i) z[k](i) = rng.normal();
      y[k] = B * D.asDiagonal() * z[k];
      const Eigen::VectorXd x = mean + sigma * y[k];
      fit[k] = f(x);
      ++best.evaluations;
      if (fit[k] < best.value) {
        best.value = fit[k];
        best.x = x;
      }
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fit[a] < fit[b]; });

    Eigen::VectorXd yw = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < mu; ++i) yw += w(static_cast<Eigen::Index>(i)) * y[order[i]];
    mean += sigma * yw;

    // C^{-1/2} yw = B D^{-1} B^T yw
    const Eigen::VectorXd cinv_yw = B * D.cwiseInverse().asDiagonal() * (B.transpose() * yw);
    ps = (1.0 - cs) * ps + std::sqrt(cs * (2.0 - cs) * mueff) * cinv_yw;
    const double ps_norm = ps.norm();
    const bool hsig = ps_norm / std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * gen)) / chi_n <
                      1.4 + 2.0 / (dn + 1.0);
    pc = (1.0 - cc) * pc + (hsig ? std::sqrt(cc * (2.0 - cc) * mueff) : 0.0) * yw;

    Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < mu; ++i)
      rank_mu += w(static_cast<Eigen::Index>(i)) * y[order[i]] * y[order[i]].transpose();
    const double delta_h = hsig ? 0.0 : cc * (2.0 - cc);
    C = (1.0 - c1 - cmu + c1 * delta_h) * C + c1 * pc * pc.transpose() + cmu * rank_mu;
    sigma *= std::exp((cs / damps) * (ps_norm / chi_n - 1.0));

    C = 0.5 * (C + C.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    if (es.info() != Eigen::Success) {
      best.stop = CmaesStop::condition;
      return best;
    }
    B = es.eigenvectors();
    D = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt();

    history.push_back(fit[order[0]]);
    if (history.size() > history_len) history.pop_front();
    if (history.size() == history_len) {
      const auto [lo, hi] = std::minmax_element(history.begin(), history.end());
      const double range = *hi - *lo;
      if (range <= options.tol_fun * std::max(std::abs(best.value), 1e-300) &&
          fit[order.back()] - fit[order[0]] <= options.tol_fun * std::max(std::abs(best.value), 1e-300)) {
        best.stop = CmaesStop::tol_fun;
        return best;
      }
    }
    if (sigma * C.diagonal().cwiseSqrt().maxCoeff() < options.tol_x) {
      best.stop = CmaesStop::tol_x;
      return best;
    }
    if (D.maxCoeff() > 1e7 * D.minCoeff()) {
      best.stop = CmaesStop::condition;
      return best;
    }
    if (gen > 100 + 200 * static_cast<std::size_t>(dn * dn) / lambda + 50 * history_len) {
      // Generation cap; with sensible budgets tol_fun or tol_x fires first.
      best.stop = CmaesStop::stagnation;
      return best;
    }
  }
}

} // namespace rodeo
