// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "rodeo/error.hpp"
#include "rodeo/hamiltonians.hpp"
#include "rodeo/schedules.hpp"

using namespace rodeo;
using std::numbers::pi;

namespace {

// Independent full-space builders. Bit 1 = spin down, site 0 = MSB.
int spin(std::uint32_t b, int site, int L) { return ((b >> (L - 1 - site)) & 1u) ? -1 : 1; }
std::uint32_t flip(std::uint32_t b, int site, int L) { return b ^ (1u << (L - 1 - site)); }

Eigen::MatrixXd full_xx(int L, double J, bool periodic) {
  const std::uint32_t dim = 1u << L;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const int bonds = periodic && L > 2 ? L : L - 1;
  for (std::uint32_t b = 0; b < dim; ++b)
    for (int i = 0; i < bonds; ++i) {
      const int j = (i + 1) % L;
      if (spin(b, i, L) != spin(b, j, L)) h(flip(flip(b, i, L), j, L), b) += J;
    }
  return h;
}

Eigen::MatrixXd full_tfim(int L, double J, double hx) {
  const std::uint32_t dim = 1u << L;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const int bonds = L > 2 ? L : L - 1;
  for (std::uint32_t b = 0; b < dim; ++b) {
    for (int i = 0; i < bonds; ++i) h(b, b) -= J * spin(b, i, L) * spin(b, (i + 1) % L, L);
    for (int i = 0; i < L; ++i) h(flip(b, i, L), b) -= hx;
  }
  return h;
}

// Lanczos with full reorthogonalization; returns the lowest Ritz value.
double lanczos_ground(const Eigen::MatrixXd& h, int steps, std::uint64_t seed) {
  const auto n = h.rows();
  std::mt19937_64 g(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd q(n, steps + 1);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = nd(g);
  q.col(0) = v.normalized();
  std::vector<double> a, b;
  int m = 0;
  for (; m < steps; ++m) {
    Eigen::VectorXd w = h * q.col(m);
    for (int k = 0; k <= m; ++k) w -= q.col(k).dot(w) * q.col(k);
    for (int k = 0; k <= m; ++k) w -= q.col(k).dot(w) * q.col(k);
    a.push_back(q.col(m).dot(h * q.col(m)));
    const double beta = w.norm();
    if (beta < 1e-13) {
      ++m;
      break;
    }
    b.push_back(beta);
    q.col(m + 1) = w / beta;
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = a[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = b[i];
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t).eigenvalues()(0);
}

// All N-particle energies of the open XX chain from free fermions.
std::vector<double> xx_free_fermion_spectrum(int L, double J) {
  std::vector<double> eps(L);
  for (int k = 1; k <= L; ++k) eps[k - 1] = 2.0 * J * std::cos(pi * k / (L + 1));
  std::vector<double> out;
  for (std::uint32_t mask = 0; mask < (1u << L); ++mask) {
    if (std::popcount(mask) != L / 2) continue;
    double e = 0.0;
    for (int k = 0; k < L; ++k)
      if (mask >> k & 1u) e += eps[k];
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

HamiltonianSpec xx(int L) {
  HamiltonianSpec s;
  s.model = SpinModel::xx;
  s.length = L;
  return s;
}

HamiltonianSpec tfim(int L, double h) {
  HamiltonianSpec s;
  s.model = SpinModel::tfim;
  s.length = L;
  s.field = h;
  return s;
}

} // namespace

TEST_CASE("XX two-site block") {
  const auto h = build_sector_hamiltonian(xx(2));
  REQUIRE(h.rows() == 2);
  CHECK(h(0, 0) == 0.0);
  CHECK(h(0, 1) == 1.0);
  CHECK(h(1, 0) == 1.0);
  const auto e = eigendecompose(h);
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("sector dimensions and validation") {
  CHECK(sector_basis(xx(10)).size() == 252);
  CHECK(sector_basis(tfim(10, 1.0)).size() == 512);
  CHECK_THROWS_AS(build_sector_hamiltonian(xx(9)), DomainError);
  CHECK_THROWS_AS(build_sector_hamiltonian(xx(kMaxChainLength + 2)), Error);
  auto b = sector_basis(xx(4));
  CHECK(std::is_sorted(b.begin(), b.end()));
}

TEST_CASE("XX sector spectrum equals free-fermion spectrum") {
  for (int L : {4, 6, 10}) {
    const auto eig = eigendecompose(build_sector_hamiltonian(xx(L)));
    const auto ff = xx_free_fermion_spectrum(L, 1.0);
    REQUIRE(static_cast<std::size_t>(eig.eigenvalues.size()) == ff.size());
    for (std::size_t i = 0; i < ff.size(); ++i) CHECK(eig.eigenvalues(i) == doctest::Approx(ff[i]).epsilon(1e-10));
  }
}

TEST_CASE("XX ground energy against Lanczos on the full space") {
  HamiltonianSpec s = xx(10);
  const auto eig = eigendecompose(build_sector_hamiltonian(s));
  // Full-space ground state of the XX chain sits in the zero-magnetization sector.
  CHECK(std::abs(lanczos_ground(full_xx(10, 1.0, false), 120, 1) - eig.ground_energy()) < 1e-10);
}

TEST_CASE("XX particle-hole symmetry") {
  const auto e = eigendecompose(build_sector_hamiltonian(xx(10))).eigenvalues;
  const auto n = e.size();
  for (Eigen::Index i = 0; i < n; ++i) CHECK(std::abs(e(i) + e(n - 1 - i)) < 1e-10);
}

TEST_CASE("full-space matrices match independent builders") {
  for (int L : {4, 6, 8}) {
    HamiltonianSpec s = xx(L);
    s.sector = Sector::full;
    CHECK((build_sector_hamiltonian(s) - full_xx(L, 1.0, false)).cwiseAbs().maxCoeff() < 1e-14);
    HamiltonianSpec t = tfim(L, 0.7);
    t.sector = Sector::full;
    CHECK((build_sector_hamiltonian(t) - full_tfim(L, 1.0, 0.7)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("symmetries: S^z closure for XX, [H, P] = 0 for TFIM") {
  for (int L : {4, 6, 8}) {
    const auto hx = full_xx(L, 1.0, false);
    for (Eigen::Index i = 0; i < hx.rows(); ++i)
      for (Eigen::Index j = 0; j < hx.cols(); ++j)
        if (hx(i, j) != 0.0)
          CHECK(std::popcount(static_cast<std::uint32_t>(i)) == std::popcount(static_cast<std::uint32_t>(j)));
    HamiltonianSpec t = tfim(L, 1.3);
    t.sector = Sector::full;
    const auto h = build_sector_hamiltonian(t);
    const std::uint32_t dim = 1u << L;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint32_t b = 0; b < dim; ++b) p(b ^ (dim - 1), b) = 1.0;
    CHECK((h * p - p * h).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("TFIM parity sectors reproduce the full spectrum") {
  HamiltonianSpec full = tfim(8, 1.0);
  full.sector = Sector::full;
  auto all = eigendecompose(build_sector_hamiltonian(full)).eigenvalues;
  HamiltonianSpec even = tfim(8, 1.0), odd = tfim(8, 1.0);
  even.sector = Sector::even_parity;
  odd.sector = Sector::odd_parity;
  const auto ee = eigendecompose(build_sector_hamiltonian(even)).eigenvalues;
  const auto eo = eigendecompose(build_sector_hamiltonian(odd)).eigenvalues;
  std::vector<double> merged(ee.data(), ee.data() + ee.size());
  merged.insert(merged.end(), eo.data(), eo.data() + eo.size());
  std::sort(merged.begin(), merged.end());
  REQUIRE(merged.size() == static_cast<std::size_t>(all.size()));
  for (std::size_t i = 0; i < merged.size(); ++i) CHECK(merged[i] == doctest::Approx(all(i)).epsilon(1e-10));
}

TEST_CASE("TFIM ground energy against Lanczos, finite gap") {
  for (double h : {1.0, 3.0}) {
    const auto eig = eigendecompose(build_sector_hamiltonian(tfim(10, h)));
    CHECK(std::abs(lanczos_ground(full_tfim(10, 1.0, h), 150, 2) - eig.ground_energy()) < 1e-10);
    CHECK(eig.gap() > 0.0);
    CHECK(full_spectrum_gap(tfim(10, h)) > 0.0);
    CHECK(full_spectrum_gap(tfim(10, h)) <= eig.gap() + 1e-12);
  }
}

TEST_CASE("eigendecompose input checks") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  const auto e = eigendecompose(m);
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(eigendecompose(m), DomainError);
}

TEST_CASE("initial states") {
  const auto spec = xx(10);
  const auto eig = eigendecompose(build_sector_hamiltonian(spec));
  const auto e1 = make_initial_state(spec, {InitialKind::basis_index, 1, {}});
  const double w = std::pow(eig.eigenvectors.col(0).dot(e1.vector), 2);
  CHECK(w >= 5e-8);
  CHECK(w <= 9e-8);

  const auto fusion = make_initial_state(spec, {InitialKind::fusion, 0, {}});
  CHECK(fusion.vector.norm() == doctest::Approx(1.0));
  // Reproducible regression value of the block construction (see README).
  CHECK(std::pow(eig.eigenvectors.col(0).dot(fusion.vector), 2) == doctest::Approx(0.4369).epsilon(1e-3));
  CHECK_THROWS_AS(make_initial_state(tfim(6, 1.0), {InitialKind::fusion, 0, {}}), DomainError);

  // |+>^L expanded from parity representatives is uniform over all 2^L states.
  const auto t = tfim(8, 1.0);
  const auto plus = make_initial_state(t, {InitialKind::plus_projected, 0, {}});
  const auto reps = sector_basis(t);
  for (Eigen::Index i = 0; i < plus.vector.size(); ++i)
    CHECK(plus.vector(i) / std::sqrt(2.0) == doctest::Approx(std::pow(2.0, -4.0)));
  CHECK(reps.size() == 128);

  const auto custom = make_initial_state(xx(4), {InitialKind::custom, 0, {1, 1, 0, 0, 0, 0}});
  CHECK(custom.vector(0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK_THROWS_AS(make_initial_state(xx(4), {InitialKind::custom, 0, {1, 1}}), DomainError);
}

TEST_CASE("rodeo fidelity on spin chains") {
  const auto spec = xx(10);
  const auto eig = eigendecompose(build_sector_hamiltonian(spec));
  InitialState ground{InitialKind::custom, eig.eigenvectors.col(0)};
  const auto r = ra_fidelity(eig, ground, eig.ground_energy(), superiteration_schedule({2.0, 5, 7.0}));
  CHECK(*r.fidelity == doctest::Approx(1.0));
  CHECK(r.zeta < 1e-20);

  const auto e1 = make_initial_state(spec, {InitialKind::basis_index, 1, {}});
  const auto r0 = ra_fidelity(eig, e1, eig.ground_energy(), TimeSchedule{});
  CHECK(*r0.fidelity == doctest::Approx(7.208e-8).epsilon(1e-3));

  DiscreteSpectrum toy{{0.0, 0.8}, {0.3, 0.7}};
  const auto rt = ra_fidelity(toy, 0.0, 1e-12, TimeSchedule({pi / 0.8}));
  CHECK(*rt.fidelity == doctest::Approx(1.0));
}
